//! Building a circuit by hand and printing it as OpenQASM 2.0.

use pauli_synth::{Circuit, Gate};

fn main() -> Result<(), Box<dyn std::error::Error>> {
    let mut c = Circuit::new(3);
    for g in [
        Gate::H(0),
        Gate::CX(0, 1),
        Gate::CX(1, 2),
        Gate::Rz(2, 0.5),
        Gate::CX(1, 2),
        Gate::CX(0, 1),
        Gate::H(0),
    ] {
        c.push(g)?;
    }
    let stats = c.stats();
    eprintln!("cnots={} depth={} gates={}", stats.cnots, stats.depth, stats.gates);
    print!("{}", c.to_qasm());
    Ok(())
}
