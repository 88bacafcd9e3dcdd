//! Resynthesizing a Clifford from its tableau.

use pauli_synth::tableau::synthesize_naive;
use pauli_synth::{synthesize, CliffordGate, Tableau};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

fn main() -> Result<(), Box<dyn std::error::Error>> {
    let n = 6;
    let mut rng = ChaCha8Rng::seed_from_u64(3);
    let mut t = Tableau::identity(n);
    let mut input_cnots = 0;
    for _ in 0..60 {
        let q = rng.gen_range(0..n);
        let g = match rng.gen_range(0..3) {
            0 => CliffordGate::H(q),
            1 => CliffordGate::S(q),
            _ => {
                input_cnots += 1;
                CliffordGate::CX(q, (q + rng.gen_range(1..n)) % n)
            }
        };
        t.apply(g)?;
    }
    let c = synthesize(&t)?;
    assert_eq!(Tableau::from_circuit(&c)?, t);
    println!("random sequence: {input_cnots} CNOTs");
    println!("naive elimination: {} CNOTs", synthesize_naive(&t)?.cnot_count());
    println!("greedy elimination: {} CNOTs, {} gates", c.cnot_count(), c.len());
    for q in 0..n {
        println!("  X{q} -> {}   Z{q} -> {}", t.x_image(q), t.z_image(q));
    }
    Ok(())
}
