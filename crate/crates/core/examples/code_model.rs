// Edge-spreading and lifting of a 2x3 base matrix by hand.

use qcsc::code::{
    assemble_protograph, assemble_qc, export_alist, export_instance_json, Assignment, BaseCode, CodeInstance,
    CouplingScheme, Stage,
};

fn main() -> qcsc::Result<()> {
    let base = BaseCode::all_ones(2, 3)?;
    let scheme = CouplingScheme::uniform(1, 3, 4)?;
    let partition = Assignment::from_dense(Stage::Partition, &base, &[vec![0, 1, 0], vec![1, 0, 1]])?;
    let lift = Assignment::from_dense(Stage::Lift, &base, &[vec![0, 1, 2], vec![3, 0, 1]])?;

    let proto = assemble_protograph(&base, &partition, &scheme)?;
    println!("protograph {}x{}:", proto.num_rows(), proto.num_cols());
    for row in proto.to_dense() {
        println!("  {}", row.iter().map(|v| v.to_string()).collect::<Vec<_>>().join(" "));
    }

    let inst = CodeInstance::new(base, scheme, partition, lift, None)?;
    let h = assemble_qc(&inst)?;
    println!("lifted matrix {}x{} with {} ones", h.num_rows(), h.num_cols(), h.ones());
    println!("alist header: {}", export_alist(&h).lines().next().unwrap_or_default());
    println!("{}", export_instance_json(&inst));
    Ok(())
}
