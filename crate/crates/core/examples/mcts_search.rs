//! Anytime improvement of the CNOT count with more search iterations.

use pauli_synth::harness::random_word;
use pauli_synth::{search, OrderingMode, SearchConfig};
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

fn main() -> Result<(), Box<dyn std::error::Error>> {
    let word = random_word(6, 14, 0.6, &mut ChaCha8Rng::seed_from_u64(42))?;
    for mode in [OrderingMode::Preserving, OrderingMode::Modifying] {
        let cfg = SearchConfig { iterations: 200, mode, seed: 7, ..Default::default() };
        let out = search(&word, &cfg)?;
        let curve = &out.best_per_iteration;
        println!(
            "{:>8}: 1 iter {} CNOTs, 200 iters {} CNOTs (found at iteration {}, {} orders archived)",
            mode.as_str(),
            curve[0],
            curve[curve.len() - 1],
            out.best.discovered_at,
            out.archive_size
        );
        println!("          order {:?}", out.best.order);
    }
    Ok(())
}
