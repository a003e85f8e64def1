//! Protograph and quasi-cyclic matrix assembly.
//!
//! Replica `r` of the protograph occupies columns `[r*kappa, (r+1)*kappa)`;
//! component `H_k` sits at vertical block offset `k` within the replica, so
//! base edge `(i, j)` with partition value `k` lands at row `(r + k) * gamma + i`.
//!
//! Lifting uses `sigma` = identity with columns cyclically shifted one unit to
//! the left, i.e. `sigma^x` has a one at `(c + x mod Z, c)` for every column `c`.

use super::assignment::{Assignment, Stage};
use super::base::BaseCode;
use super::instance::CodeInstance;
use super::scheme::CouplingScheme;
use super::sparse::SparseMatrix;
use crate::error::{Error, Result};

pub fn assemble_protograph(base: &BaseCode, partition: &Assignment, scheme: &CouplingScheme) -> Result<SparseMatrix> {
    if partition.stage() != Stage::Partition {
        return Err(Error::InvalidAssignment("expected a partition assignment".into()));
    }
    partition.validate(base, scheme)?;
    let m = scheme.memory();
    let l = scheme.coupling_length();
    if l < m + 1 {
        return Err(Error::CouplingTooShort {
            length: l,
            required: m + 1,
        });
    }
    let (gamma, kappa) = (base.gamma(), base.kappa());
    let mut h = SparseMatrix::new(gamma * (l + m), kappa * l);
    for r in 0..l {
        for (i, j) in base.edges() {
            let k = partition.value(i, j)? as usize;
            h.insert((r + k) * gamma + i, r * kappa + j);
        }
    }
    Ok(h)
}

/// `sigma^shift` as a dense `z x z` block.
pub fn circulant(z: usize, shift: usize) -> Vec<Vec<u8>> {
    let mut d = vec![vec![0u8; z]; z];
    for c in 0..z {
        d[(c + shift) % z][c] = 1;
    }
    d
}

pub fn assemble_qc(instance: &CodeInstance) -> Result<SparseMatrix> {
    let base = instance.base();
    let scheme = instance.scheme();
    instance.lift().validate(base, scheme)?;
    let proto = assemble_protograph(base, instance.partition(), scheme)?;
    let z = scheme.lifting_degree() as usize;
    let (gamma, kappa) = (base.gamma(), base.kappa());
    let mut h = SparseMatrix::new(proto.num_rows() * z, proto.num_cols() * z);
    for (pc, rows) in proto.cols().iter().enumerate() {
        for &pr in rows {
            let shift = instance.lift().value(pr % gamma, pc % kappa)? as usize;
            for c in 0..z {
                h.insert(pr * z + (c + shift) % z, pc * z + c);
            }
        }
    }
    Ok(h)
}
