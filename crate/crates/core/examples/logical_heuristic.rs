//! One implementation step with the all-to-all heuristic.

use pauli_synth::heuristics::logical_greedy_implement;
use pauli_synth::{build_dag, OrderingMode, PauliWord};

fn main() -> Result<(), Box<dyn std::error::Error>> {
    let word = PauliWord::parse(&[("ZYXZ", 0.3), ("ZZII", 0.2), ("XXXX", 0.1)])?;
    let dag = build_dag(&word);
    let (out, _) = logical_greedy_implement(&word, &dag, OrderingMode::Preserving, 0)?;

    println!("blocks: {:?}", out.blocks());
    println!("rotations:");
    for r in out.implemented() {
        println!("  row {} as Rz on q{} ({:.3})", r.orig_index, r.qubit, r.angle);
    }
    println!("leading CNOTs: {}", out.leading_circuit.cnot_count());
    println!("residual word:");
    for (p, theta, orig) in out.reduced_word.iter() {
        println!("  [{orig}] {p} {theta}");
    }
    Ok(())
}
