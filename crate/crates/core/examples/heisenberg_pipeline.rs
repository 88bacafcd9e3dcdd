//! The full driver on a generated Heisenberg lattice: file in, QASM and report out.
//!
//! Usage: `heisenberg_pipeline [rows cols iterations]` (default 2 3 50).

use pauli_synth::harness::{generate_heisenberg, run, write_hamiltonian, Args};

fn main() -> Result<(), Box<dyn std::error::Error>> {
    let nums: Vec<usize> = std::env::args().skip(1).map(|a| a.parse()).collect::<Result<_, _>>()?;
    let (rows, cols, iterations) = match nums.as_slice() {
        [r, c, i] => (*r, *c, *i),
        _ => (2, 3, 50),
    };
    let word = generate_heisenberg(rows, cols, 1.0, 0.05)?;
    let dir = std::env::temp_dir().join(format!("heisenberg_{rows}x{cols}"));
    std::fs::create_dir_all(&dir)?;
    let input = dir.join("hamiltonian.txt");
    std::fs::write(&input, write_hamiltonian(&word))?;

    let mut args = Args::for_file(&input);
    args.iterations = iterations;
    args.verify = word.num_qubits() <= 10;
    args.out = Some(dir.join("circuit.qasm"));
    args.report = Some(dir.join("report.json"));
    let report = run(&args)?;
    println!(
        "{} strings on {} qubits: {} CNOTs ({} leading), depth {}, verified {:?}",
        report.num_strings, report.num_qubits, report.cnots, report.cnots_leading, report.depth, report.verified
    );
    println!("artifacts in {}", dir.display());
    Ok(())
}
