//! Dense-matrix ground truth for small qubit counts.
//!
//! Qubit 0 is the least-significant tensor factor. Complex arithmetic is
//! local to this module so the oracle shares no code path with the
//! bit-vector conjugation it checks.

use std::ops::{Add, Mul, Neg, Sub};

use crate::circuit::{Circuit, Gate};
use crate::error::{Error, Result};
use crate::pauli::{Pauli, PauliString, PauliWord};

pub const MAX_QUBITS: usize = 10;

#[derive(Clone, Copy, Debug, PartialEq, Default)]
pub struct C64 {
    pub re: f64,
    pub im: f64,
}

impl C64 {
    pub const ZERO: C64 = C64 { re: 0.0, im: 0.0 };
    pub const ONE: C64 = C64 { re: 1.0, im: 0.0 };
    pub const I: C64 = C64 { re: 0.0, im: 1.0 };

    pub fn new(re: f64, im: f64) -> Self {
        C64 { re, im }
    }

    /// `exp(i phi)`.
    pub fn cis(phi: f64) -> Self {
        C64::new(phi.cos(), phi.sin())
    }

    pub fn conj(self) -> Self {
        C64::new(self.re, -self.im)
    }

    pub fn norm(self) -> f64 {
        self.re.hypot(self.im)
    }

    pub fn scale(self, s: f64) -> Self {
        C64::new(self.re * s, self.im * s)
    }
}

impl Add for C64 {
    type Output = C64;
    fn add(self, o: C64) -> C64 {
        C64::new(self.re + o.re, self.im + o.im)
    }
}

impl Sub for C64 {
    type Output = C64;
    fn sub(self, o: C64) -> C64 {
        C64::new(self.re - o.re, self.im - o.im)
    }
}

impl Mul for C64 {
    type Output = C64;
    fn mul(self, o: C64) -> C64 {
        C64::new(
            self.re * o.re - self.im * o.im,
            self.re * o.im + self.im * o.re,
        )
    }
}

impl Neg for C64 {
    type Output = C64;
    fn neg(self) -> C64 {
        C64::new(-self.re, -self.im)
    }
}

/// Row-major `2^n x 2^n` complex matrix.
#[derive(Clone, Debug, PartialEq)]
pub struct DenseUnitary {
    n: usize,
    dim: usize,
    data: Vec<C64>,
}

fn check_cap(n: usize) -> Result<()> {
    if n > MAX_QUBITS {
        return Err(Error::TooLarge { n, cap: MAX_QUBITS });
    }
    Ok(())
}

impl DenseUnitary {
    pub fn identity(n: usize) -> Result<Self> {
        check_cap(n)?;
        let dim = 1 << n;
        let mut data = vec![C64::ZERO; dim * dim];
        for i in 0..dim {
            data[i * dim + i] = C64::ONE;
        }
        Ok(DenseUnitary { n, dim, data })
    }

    fn zeros(n: usize) -> Self {
        let dim = 1 << n;
        DenseUnitary {
            n,
            dim,
            data: vec![C64::ZERO; dim * dim],
        }
    }

    pub fn num_qubits(&self) -> usize {
        self.n
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn get(&self, r: usize, c: usize) -> C64 {
        self.data[r * self.dim + c]
    }

    fn set(&mut self, r: usize, c: usize, v: C64) {
        self.data[r * self.dim + c] = v;
    }

    pub fn matmul(&self, other: &DenseUnitary) -> Result<DenseUnitary> {
        if self.dim != other.dim {
            return Err(Error::Dimension {
                expected: self.n,
                found: other.n,
            });
        }
        let d = self.dim;
        let mut out = DenseUnitary::zeros(self.n);
        for r in 0..d {
            for k in 0..d {
                let a = self.data[r * d + k];
                if a == C64::ZERO {
                    continue;
                }
                for c in 0..d {
                    out.data[r * d + c] = out.data[r * d + c] + a * other.data[k * d + c];
                }
            }
        }
        Ok(out)
    }

    pub fn adjoint(&self) -> DenseUnitary {
        let d = self.dim;
        let mut out = DenseUnitary::zeros(self.n);
        for r in 0..d {
            for c in 0..d {
                out.data[c * d + r] = self.data[r * d + c].conj();
            }
        }
        out
    }

    pub fn scaled(&self, s: C64) -> DenseUnitary {
        DenseUnitary {
            n: self.n,
            dim: self.dim,
            data: self.data.iter().map(|&v| v * s).collect(),
        }
    }

    pub fn max_abs_diff(&self, other: &DenseUnitary) -> f64 {
        self.data
            .iter()
            .zip(&other.data)
            .map(|(a, b)| (*a - *b).norm())
            .fold(0.0, f64::max)
    }

    /// `max |U U^dagger - I|`.
    pub fn unitarity_error(&self) -> f64 {
        let prod = self.matmul(&self.adjoint()).expect("same dimension");
        prod.max_abs_diff(&DenseUnitary::identity(self.n).expect("within cap"))
    }

    /// Left-multiplies by a single-qubit matrix `[[a, b], [c, d]]` on `q`.
    fn apply_1q(&mut self, q: usize, m: [C64; 4]) {
        let bit = 1 << q;
        let d = self.dim;
        for r0 in 0..d {
            if r0 & bit != 0 {
                continue;
            }
            let r1 = r0 | bit;
            for c in 0..d {
                let (v0, v1) = (self.data[r0 * d + c], self.data[r1 * d + c]);
                self.data[r0 * d + c] = m[0] * v0 + m[1] * v1;
                self.data[r1 * d + c] = m[2] * v0 + m[3] * v1;
            }
        }
    }

    fn apply_cx(&mut self, ctrl: usize, targ: usize) {
        let (cb, tb) = (1 << ctrl, 1 << targ);
        let d = self.dim;
        for r in 0..d {
            if r & cb != 0 && r & tb == 0 {
                let s = r | tb;
                for c in 0..d {
                    self.data.swap(r * d + c, s * d + c);
                }
            }
        }
    }

    /// `self <- G self` for a circuit gate `G`.
    pub fn apply_gate(&mut self, g: &Gate) {
        let h = std::f64::consts::FRAC_1_SQRT_2;
        let z = C64::ZERO;
        let one = C64::ONE;
        match *g {
            Gate::H(q) => {
                let s = C64::new(h, 0.0);
                self.apply_1q(q, [s, s, s, -s]);
            }
            Gate::S(q) => self.apply_1q(q, [one, z, z, C64::I]),
            Gate::Sdg(q) => self.apply_1q(q, [one, z, z, -C64::I]),
            Gate::X(q) => self.apply_1q(q, [z, one, one, z]),
            Gate::Z(q) => self.apply_1q(q, [one, z, z, -one]),
            Gate::CX(c, t) => self.apply_cx(c, t),
            Gate::Rz(q, l) => self.apply_1q(q, [C64::cis(-l / 2.0), z, z, C64::cis(l / 2.0)]),
        }
    }
}

/// Kronecker product of the letters times `(-1)^sign`.
pub fn pauli_matrix(p: &PauliString) -> Result<DenseUnitary> {
    let n = p.num_qubits();
    check_cap(n)?;
    let mut out = DenseUnitary::zeros(n);
    let mut xmask = 0usize;
    for q in 0..n {
        if p.x(q) {
            xmask |= 1 << q;
        }
    }
    let global = if p.sign() { -C64::ONE } else { C64::ONE };
    for col in 0..out.dim {
        // P|col> = phase |col ^ xmask>
        let mut phase = global;
        for q in 0..n {
            let b = (col >> q) & 1;
            let f = match p.letter(q) {
                Pauli::I | Pauli::X => C64::ONE,
                Pauli::Z => {
                    if b == 1 {
                        -C64::ONE
                    } else {
                        C64::ONE
                    }
                }
                Pauli::Y => {
                    if b == 1 {
                        -C64::I
                    } else {
                        C64::I
                    }
                }
            };
            phase = phase * f;
        }
        out.set(col ^ xmask, col, phase);
    }
    Ok(out)
}

/// `exp(-i theta P) = cos(theta) I - i sin(theta) P`.
pub fn rotation_matrix(p: &PauliString, theta: f64) -> Result<DenseUnitary> {
    let pm = pauli_matrix(p)?;
    let mut out = DenseUnitary::identity(p.num_qubits())?.scaled(C64::new(theta.cos(), 0.0));
    let s = C64::new(0.0, -theta.sin());
    for (o, v) in out.data.iter_mut().zip(&pm.data) {
        *o = *o + s * *v;
    }
    Ok(out)
}

/// Product of gate matrices in execution order, times `exp(i global_phase)`.
pub fn circuit_unitary(c: &Circuit) -> Result<DenseUnitary> {
    let mut u = DenseUnitary::identity(c.num_qubits())?;
    for g in c.gates() {
        u.apply_gate(g);
    }
    Ok(u.scaled(C64::cis(c.global_phase)))
}

/// True iff `a^dagger b = lambda I` for a unit-modulus `lambda`, within `tol`.
pub fn equal_up_to_phase(a: &DenseUnitary, b: &DenseUnitary, tol: f64) -> Result<bool> {
    let m = a.adjoint().matmul(b)?;
    let lambda = m.get(0, 0);
    if (lambda.norm() - 1.0).abs() > tol {
        return Ok(false);
    }
    for r in 0..m.dim {
        for c in 0..m.dim {
            let expect = if r == c { lambda } else { C64::ZERO };
            if (m.get(r, c) - expect).norm() > tol {
                return Ok(false);
            }
        }
    }
    Ok(true)
}

/// Rotation product with `order[0]` applied first (rightmost factor).
/// `order` lists original indices and must be a permutation of the word's.
pub fn word_unitary(w: &PauliWord, order: &[usize]) -> Result<DenseUnitary> {
    let mut sorted = order.to_vec();
    sorted.sort_unstable();
    let mut expect = w.orig_indices().to_vec();
    expect.sort_unstable();
    if sorted != expect {
        return Err(Error::Input(format!(
            "order {order:?} is not a permutation of the word's rows"
        )));
    }
    let mut u = DenseUnitary::identity(w.num_qubits())?;
    for &o in order {
        let pos = w.position(o).expect("checked permutation");
        u = rotation_matrix(w.row(pos), w.theta(pos))?.matmul(&u)?;
    }
    Ok(u)
}

/// Product in the word's current row order.
pub fn word_unitary_in_order(w: &PauliWord) -> Result<DenseUnitary> {
    word_unitary(w, w.orig_indices())
}

#[cfg(test)]
mod tests {
    use super::*;

    fn p(s: &str) -> PauliString {
        s.parse().unwrap()
    }

    #[test]
    fn basic_paulis() {
        let i = pauli_matrix(&p("I")).unwrap();
        assert_eq!(i, DenseUnitary::identity(1).unwrap());
        let z = pauli_matrix(&p("Z")).unwrap();
        assert_eq!(z.get(0, 0), C64::ONE);
        assert_eq!(z.get(1, 1), -C64::ONE);
        let y = pauli_matrix(&p("Y")).unwrap();
        assert_eq!(y.get(0, 1), -C64::I);
        assert_eq!(y.get(1, 0), C64::I);
    }

    #[test]
    fn xz_is_hermitian_involution() {
        let m = pauli_matrix(&p("XZ")).unwrap();
        assert_eq!(m.adjoint(), m);
        let sq = m.matmul(&m).unwrap();
        assert_eq!(sq, DenseUnitary::identity(2).unwrap());
        // qubit 0 is least significant: Z acts on bit 0
        assert_eq!(m.get(2, 0), C64::ONE);
        assert_eq!(m.get(3, 1), -C64::ONE);
    }

    #[test]
    fn rotations() {
        let r = rotation_matrix(&p("ZX"), 0.0).unwrap();
        assert!(r.max_abs_diff(&DenseUnitary::identity(2).unwrap()) < 1e-15);
        let r = rotation_matrix(&p("Z"), std::f64::consts::FRAC_PI_2).unwrap();
        assert!((r.get(0, 0) - (-C64::I)).norm() < 1e-15);
        assert!((r.get(1, 1) - C64::I).norm() < 1e-15);
    }

    #[test]
    fn circuits() {
        assert_eq!(
            circuit_unitary(&Circuit::new(2)).unwrap(),
            DenseUnitary::identity(2).unwrap()
        );
        let hh = Circuit::from_gates(1, vec![Gate::H(0), Gate::H(0)]).unwrap();
        assert!(circuit_unitary(&hh)
            .unwrap()
            .max_abs_diff(&DenseUnitary::identity(1).unwrap())
            < 1e-15);
        // staircase for exp(-i theta ZZ)
        let theta = 0.37;
        let c = Circuit::from_gates(
            2,
            vec![Gate::CX(0, 1), Gate::Rz(1, 2.0 * theta), Gate::CX(0, 1)],
        )
        .unwrap();
        let u = circuit_unitary(&c).unwrap();
        let target = rotation_matrix(&p("ZZ"), theta).unwrap();
        assert!(u.max_abs_diff(&target) < 1e-12);
    }

    #[test]
    fn phase_equivalence() {
        let u = rotation_matrix(&p("XY"), 0.4).unwrap();
        assert!(equal_up_to_phase(&u, &u, 1e-9).unwrap());
        assert!(equal_up_to_phase(&u, &u.scaled(-C64::ONE), 1e-9).unwrap());
        assert!(equal_up_to_phase(&u, &u.scaled(C64::cis(1.1)), 1e-9).unwrap());
        let i = DenseUnitary::identity(1).unwrap();
        let z = pauli_matrix(&p("Z")).unwrap();
        assert!(!equal_up_to_phase(&i, &z, 1e-9).unwrap());
        assert!(equal_up_to_phase(&i, &DenseUnitary::identity(2).unwrap(), 1e-9).is_err());
    }

    #[test]
    fn cap_enforced() {
        assert!(matches!(
            DenseUnitary::identity(11),
            Err(Error::TooLarge { n: 11, cap: 10 })
        ));
        assert!(pauli_matrix(&PauliString::identity(11)).is_err());
    }

    #[test]
    fn word_products() {
        let w = PauliWord::parse(&[("XZ", 0.3)]).unwrap();
        assert_eq!(
            word_unitary(&w, &[0]).unwrap(),
            rotation_matrix(w.row(0), 0.3).unwrap()
        );
        let w = PauliWord::parse(&[("XI", 0.3), ("IZ", 0.5)]).unwrap();
        let a = word_unitary(&w, &[0, 1]).unwrap();
        let b = word_unitary(&w, &[1, 0]).unwrap();
        assert!(a.max_abs_diff(&b) < 1e-14);
        assert!(word_unitary(&w, &[0]).is_err());
        assert!(word_unitary(&w, &[0, 0]).is_err());
    }
}
