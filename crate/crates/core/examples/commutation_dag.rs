//! Which rows may be implemented next, with and without reordering.

use pauli_synth::{build_dag, OrderingMode, PauliWord};

fn main() -> Result<(), Box<dyn std::error::Error>> {
    let word = PauliWord::parse(&[
        ("XXI", 0.1),
        ("ZZI", 0.2),
        ("IZZ", 0.3),
        ("IXX", 0.4),
        ("ZIZ", 0.5),
    ])?;
    let mut dag = build_dag(&word);
    println!("edges (anticommuting, earlier -> later): {:?}", dag.edges());
    println!("front layer: {:?}", dag.front_layer());
    println!("any row in modify mode: {:?}", dag.available_actions(OrderingMode::Modifying));

    while !dag.front_layer().is_empty() {
        let next = dag.front_layer()[0];
        dag.remove(next, OrderingMode::Preserving)?;
        println!("removed {next}, front layer now {:?}", dag.front_layer());
    }
    Ok(())
}
