//! Stabilizer tableaux for the trailing Clifford and a greedy resynthesizer.
//!
//! A tableau stores the images of `X_q` and `Z_q` under conjugation by the
//! Clifford `U` it represents: `P -> U P U^dagger`. Appending a gate `g` to
//! the circuit conjugates every image by `g`.

use crate::circuit::{Circuit, Gate};
use crate::error::{Error, Result};
use crate::pauli::{CliffordGate, Pauli, PauliString};

#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Tableau {
    n: usize,
    /// `images[q]` is the image of `X_q`, `images[n + q]` that of `Z_q`.
    images: Vec<PauliString>,
}

impl Tableau {
    pub fn identity(n: usize) -> Self {
        let mut images = Vec::with_capacity(2 * n);
        for q in 0..n {
            images.push(PauliString::single(n, q, Pauli::X));
        }
        for q in 0..n {
            images.push(PauliString::single(n, q, Pauli::Z));
        }
        Tableau { n, images }
    }

    /// Validates symplectic structure.
    pub fn from_images(x_images: Vec<PauliString>, z_images: Vec<PauliString>) -> Result<Self> {
        let n = x_images.len();
        if z_images.len() != n {
            return Err(Error::InvalidTableau(format!(
                "{n} X images but {} Z images",
                z_images.len()
            )));
        }
        if let Some(p) = x_images.iter().chain(&z_images).find(|p| p.num_qubits() != n) {
            return Err(Error::Dimension {
                expected: n,
                found: p.num_qubits(),
            });
        }
        let mut images = x_images;
        images.extend(z_images);
        let t = Tableau { n, images };
        t.check_valid()?;
        Ok(t)
    }

    /// Tableau of a Clifford-only circuit.
    pub fn from_circuit(c: &Circuit) -> Result<Self> {
        let mut t = Tableau::identity(c.num_qubits());
        for g in c.gates() {
            let g = g
                .as_clifford()
                .ok_or_else(|| Error::InvalidGate("Rz is not a Clifford gate".into()))?;
            t.apply(g)?;
        }
        Ok(t)
    }

    pub fn num_qubits(&self) -> usize {
        self.n
    }

    pub fn x_image(&self, q: usize) -> &PauliString {
        &self.images[q]
    }

    pub fn z_image(&self, q: usize) -> &PauliString {
        &self.images[self.n + q]
    }

    pub fn is_identity(&self) -> bool {
        *self == Tableau::identity(self.n)
    }

    pub fn apply(&mut self, g: CliffordGate) -> Result<()> {
        g.validate(self.n)?;
        self.conjugate(g);
        Ok(())
    }

    fn conjugate(&mut self, g: CliffordGate) {
        for p in &mut self.images {
            p.conjugate(g);
        }
    }

    /// `X_q`/`Z_q` images anticommute; every other pair commutes.
    pub fn check_valid(&self) -> Result<()> {
        let n = self.n;
        for a in 0..2 * n {
            for b in a + 1..2 * n {
                let expect_anti = b == a + n;
                let anti = !self.images[a].commutes_unchecked(&self.images[b]);
                if anti != expect_anti {
                    return Err(Error::InvalidTableau(format!(
                        "generators {a} and {b} {}",
                        if anti { "anticommute" } else { "commute" }
                    )));
                }
            }
        }
        Ok(())
    }
}

/// Conjugates every generator image by `g`.
pub fn tableau_apply(t: &Tableau, g: CliffordGate) -> Result<Tableau> {
    let mut out = t.clone();
    out.apply(g)?;
    Ok(out)
}

/// Inverse of the product of `blocks`, as the literal gate sequence: the
/// blocks reversed, each daggered.
pub fn inverse_sequence(blocks: &[CliffordGate]) -> Vec<CliffordGate> {
    blocks.iter().rev().map(|g| g.dagger()).collect()
}

/// Tableau of the tail Clifford that undoes `blocks` (given in
/// implementation order).
pub fn accumulate_tail(n: usize, blocks: &[CliffordGate]) -> Result<Tableau> {
    let mut t = Tableau::identity(n);
    for g in inverse_sequence(blocks) {
        t.apply(g)?;
    }
    Ok(t)
}

/// Emits `g`, updating the working tableau.
struct Reducer {
    t: Tableau,
    ops: Vec<CliffordGate>,
}

impl Reducer {
    fn push(&mut self, g: CliffordGate) {
        self.t.conjugate(g);
        self.ops.push(g);
    }

    fn cnots(&self) -> usize {
        self.ops.iter().filter(|g| g.is_cx()).count()
    }

    /// Maps the `X_q` image to `+-X_q` and the `Z_q` image to `+-Z_q`.
    /// Qubits reduced earlier carry identity in both images and are untouched.
    fn reduce_qubit(&mut self, q: usize) {
        let n = self.t.n;
        let a = self.t.images[q].clone();
        for k in a.support() {
            match a.letter(k) {
                Pauli::Z => self.push(CliffordGate::H(k)),
                Pauli::Y => self.push(CliffordGate::Sdg(k)),
                _ => {}
            }
        }
        let support = self.t.images[q].support();
        if self.t.images[q].letter(q).is_identity() {
            self.push(CliffordGate::CX(support[0], q));
        }
        for k in self.t.images[q].support() {
            if k != q {
                self.push(CliffordGate::CX(q, k));
            }
        }

        if self.t.images[n + q].letter(q) == Pauli::Y {
            self.push(CliffordGate::H(q));
            self.push(CliffordGate::S(q));
            self.push(CliffordGate::H(q));
        }
        let b = self.t.images[n + q].clone();
        for k in b.support() {
            if k == q {
                continue;
            }
            match b.letter(k) {
                Pauli::X => self.push(CliffordGate::H(k)),
                Pauli::Y => {
                    self.push(CliffordGate::Sdg(k));
                    self.push(CliffordGate::H(k));
                }
                _ => {}
            }
            self.push(CliffordGate::CX(k, q));
        }
        debug_assert_eq!(self.t.images[q].support(), vec![q]);
        debug_assert_eq!(self.t.images[n + q].letter(q), Pauli::Z);
        debug_assert_eq!(self.t.images[n + q].weight(), 1);
    }

    /// Residual support of the still-unreduced generators off their own qubit.
    fn off_diagonal(&self, remaining: &[usize]) -> usize {
        let n = self.t.n;
        remaining
            .iter()
            .map(|&r| {
                let off = |p: &PauliString| p.weight() - usize::from(!p.letter(r).is_identity());
                off(&self.t.images[r]) + off(&self.t.images[n + r])
            })
            .sum()
    }

    fn fix_signs(&mut self) {
        let n = self.t.n;
        for q in 0..n {
            if self.t.images[q].sign() {
                self.push(CliffordGate::Z(q));
            }
            if self.t.images[n + q].sign() {
                self.push(CliffordGate::X(q));
            }
        }
    }

    /// The circuit realizing the original tableau is the inverse of the
    /// reduction sequence.
    fn into_circuit(self) -> Circuit {
        debug_assert!(self.t.is_identity());
        let mut c = Circuit::new(self.t.n);
        for g in inverse_sequence(&self.ops) {
            c.push_unchecked(Gate::from(g));
        }
        c
    }
}

/// Reduces qubits in index order.
pub fn synthesize_naive(t: &Tableau) -> Result<Circuit> {
    t.check_valid()?;
    let mut r = Reducer {
        t: t.clone(),
        ops: Vec::new(),
    };
    for q in 0..t.n {
        r.reduce_qubit(q);
    }
    r.fix_signs();
    Ok(r.into_circuit())
}

/// At each step reduces the qubit with the lowest cost: CNOTs added plus half
/// the off-diagonal support left on the remaining generators.
fn synthesize_greedy(t: &Tableau) -> Result<Circuit> {
    t.check_valid()?;
    let mut r = Reducer {
        t: t.clone(),
        ops: Vec::new(),
    };
    let mut remaining: Vec<usize> = (0..t.n).collect();
    while !remaining.is_empty() {
        let mut best: Option<(usize, usize, Reducer)> = None;
        for (k, &q) in remaining.iter().enumerate() {
            let mut trial = Reducer {
                t: r.t.clone(),
                ops: Vec::new(),
            };
            trial.reduce_qubit(q);
            let rest: Vec<usize> = remaining.iter().copied().filter(|&x| x != q).collect();
            // doubled to stay in integers
            let cost = 2 * trial.cnots() + trial.off_diagonal(&rest);
            if best.as_ref().is_none_or(|(c, _, _)| cost < *c) {
                best = Some((cost, k, trial));
            }
        }
        let (_, k, trial) = best.expect("remaining is non-empty");
        r.t = trial.t;
        r.ops.extend(trial.ops);
        remaining.remove(k);
    }
    r.fix_signs();
    Ok(r.into_circuit())
}

/// Greedy symplectic elimination. Returns a circuit whose tableau equals `t`
/// exactly, signs included; never uses more CNOTs than [`synthesize_naive`].
pub fn synthesize(t: &Tableau) -> Result<Circuit> {
    let greedy = synthesize_greedy(t)?;
    let naive = synthesize_naive(t)?;
    Ok(if naive.cnot_count() < greedy.cnot_count() {
        naive
    } else {
        greedy
    })
}
