use rand::Rng;

use crate::error::{Error, Result};
use crate::pauli::{Pauli, PauliString, PauliWord};

/// Nearest-neighbour edges of a `rows x cols` lattice, site `r * cols + c`,
/// each site's right neighbour before its lower one.
pub fn lattice_edges(rows: usize, cols: usize) -> Vec<(usize, usize)> {
    let mut edges = Vec::new();
    for r in 0..rows {
        for c in 0..cols {
            let u = r * cols + c;
            if c + 1 < cols {
                edges.push((u, u + 1));
            }
            if r + 1 < rows {
                edges.push((u, u + cols));
            }
        }
    }
    edges
}

/// `XX`, `YY`, `ZZ` on every lattice edge with angle `j * theta`, one qubit
/// per site.
pub fn generate_heisenberg(rows: usize, cols: usize, j: f64, theta: f64) -> Result<PauliWord> {
    let n = rows * cols;
    if n < 2 {
        return Err(Error::Input(format!("a {rows}x{cols} lattice has fewer than two sites")));
    }
    let mut word = PauliWord::new(n);
    for (u, v) in lattice_edges(rows, cols) {
        for letter in [Pauli::X, Pauli::Y, Pauli::Z] {
            let mut p = PauliString::identity(n);
            p.set_letter(u, letter);
            p.set_letter(v, letter);
            word.push(p, j * theta)?;
        }
    }
    Ok(word)
}

/// `k` strings on `n` qubits; each qubit is non-identity with probability
/// `density` and every string has weight at least one. Signs are random and
/// angles uniform in `[-1, 1)`.
pub fn random_word<R: Rng + ?Sized>(n: usize, k: usize, density: f64, rng: &mut R) -> Result<PauliWord> {
    if n == 0 {
        return Err(Error::Input("need at least one qubit".into()));
    }
    if !(0.0..=1.0).contains(&density) {
        return Err(Error::Input(format!("density {density} outside [0, 1]")));
    }
    let mut word = PauliWord::new(n);
    for _ in 0..k {
        let mut p = PauliString::identity(n);
        for q in 0..n {
            if rng.gen_bool(density) {
                p.set_letter(q, Pauli::ALL[rng.gen_range(1..4)]);
            }
        }
        if p.is_identity() {
            let q = rng.gen_range(0..n);
            p.set_letter(q, Pauli::ALL[rng.gen_range(1..4)]);
        }
        p.set_sign(rng.gen_bool(0.5));
        word.push(p, rng.gen_range(-1.0..1.0))?;
    }
    Ok(word)
}
