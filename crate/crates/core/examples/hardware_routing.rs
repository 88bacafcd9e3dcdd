//! Restricting CNOTs to a coupling graph.
//!
//! Usage: `hardware_routing [rows cols]` (default 2 3).

use pauli_synth::harness::random_word;
use pauli_synth::{search, Gate, HardwareContext, Heuristic, SearchConfig};
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

fn main() -> Result<(), Box<dyn std::error::Error>> {
    let dims: Vec<usize> = std::env::args().skip(1).map(|a| a.parse()).collect::<Result<_, _>>()?;
    let (rows, cols) = match dims.as_slice() {
        [r, c] => (*r, *c),
        _ => (2, 3),
    };
    let ctx = HardwareContext::grid(rows, cols);
    let n = ctx.num_qubits();
    let word = random_word(n, 8, 0.6, &mut ChaCha8Rng::seed_from_u64(1))?;

    for (name, heuristic) in [("logical", Heuristic::Logical), ("hardware", Heuristic::Hardware(ctx.clone()))] {
        let cfg = SearchConfig { iterations: 20, heuristic, ..Default::default() };
        let best = search(&word, &cfg)?.best;
        let off_graph = best
            .leading
            .gates()
            .iter()
            .filter(|g| matches!(g, Gate::CX(a, b) if !ctx.is_coupled(*a, *b)))
            .count();
        println!(
            "{name:>8}: {} leading CNOTs, {off_graph} on uncoupled pairs",
            best.cnots_leading
        );
    }
    Ok(())
}
