//! Base codes, coupling schemes, assignments and matrix assembly.

mod alist;
mod assemble;
mod assignment;
mod base;
mod instance;
mod scheme;
mod sparse;

pub use alist::{export_alist, parse_alist};
pub use assemble::{assemble_protograph, assemble_qc, circulant};
pub use assignment::{Assignment, Stage};
pub use base::BaseCode;
pub use instance::{
    export_instance_json, export_instance_json_tagged, import_instance_json, CodeInstance, SCHEMA_VERSION,
};
pub use scheme::CouplingScheme;
pub use sparse::SparseMatrix;
