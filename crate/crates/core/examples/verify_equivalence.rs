//! Checking a synthesized circuit against the dense rotation product.

use pauli_synth::oracle::{circuit_unitary, equal_up_to_phase, word_unitary};
use pauli_synth::{search, OrderingMode, PauliWord, SearchConfig};

fn main() -> Result<(), Box<dyn std::error::Error>> {
    let word = PauliWord::parse(&[("XZZX", 0.25), ("YXXY", 0.5), ("ZIZI", -0.1), ("IXIY", 0.7)])?;
    for mode in [OrderingMode::Preserving, OrderingMode::Modifying] {
        let out = search(&word, &SearchConfig { iterations: 30, mode, ..Default::default() })?;
        let got = circuit_unitary(&out.best.circuit)?;
        let original: Vec<usize> = (0..word.len()).collect();
        let as_given = equal_up_to_phase(&word_unitary(&word, &original)?, &got, 1e-9)?;
        let as_ordered = equal_up_to_phase(&word_unitary(&word, &out.best.order)?, &got, 1e-9)?;
        println!(
            "{:>8}: order {:?}, matches original product: {as_given}, matches product in order: {as_ordered}",
            mode.as_str(),
            out.best.order
        );
    }
    Ok(())
}
