//! Clifford+Rz circuits, gate statistics and OpenQASM 2.0 emission.
//!
//! Gates are stored in execution order. The matrix of a circuit is the
//! right-to-left product of its gate matrices (last gate leftmost).
//! `Rz(l)` is `diag(exp(-i l/2), exp(i l/2))`.

use std::fmt::Write as _;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::pauli::CliffordGate;

#[derive(Clone, Copy, Debug, PartialEq)]
pub enum Gate {
    H(usize),
    S(usize),
    Sdg(usize),
    X(usize),
    Z(usize),
    /// Control, target.
    CX(usize, usize),
    /// Qubit, angle in radians.
    Rz(usize, f64),
}

impl Gate {
    pub fn qubits(&self) -> (usize, Option<usize>) {
        match *self {
            Gate::H(q) | Gate::S(q) | Gate::Sdg(q) | Gate::X(q) | Gate::Z(q) | Gate::Rz(q, _) => {
                (q, None)
            }
            Gate::CX(c, t) => (c, Some(t)),
        }
    }

    pub fn is_cx(&self) -> bool {
        matches!(self, Gate::CX(..))
    }

    pub fn as_clifford(&self) -> Option<CliffordGate> {
        match *self {
            Gate::H(q) => Some(CliffordGate::H(q)),
            Gate::S(q) => Some(CliffordGate::S(q)),
            Gate::Sdg(q) => Some(CliffordGate::Sdg(q)),
            Gate::X(q) => Some(CliffordGate::X(q)),
            Gate::Z(q) => Some(CliffordGate::Z(q)),
            Gate::CX(c, t) => Some(CliffordGate::CX(c, t)),
            Gate::Rz(..) => None,
        }
    }
}

impl From<CliffordGate> for Gate {
    fn from(g: CliffordGate) -> Self {
        match g {
            CliffordGate::H(q) => Gate::H(q),
            CliffordGate::S(q) => Gate::S(q),
            CliffordGate::Sdg(q) => Gate::Sdg(q),
            CliffordGate::X(q) => Gate::X(q),
            CliffordGate::Z(q) => Gate::Z(q),
            CliffordGate::CX(c, t) => Gate::CX(c, t),
        }
    }
}

#[derive(Clone, Debug, PartialEq)]
pub struct Circuit {
    n: usize,
    gates: Vec<Gate>,
    /// Radians; the circuit matrix carries an extra factor `exp(i global_phase)`.
    pub global_phase: f64,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct CircuitStats {
    pub cnots: usize,
    pub depth: usize,
    pub gates: usize,
}

impl Circuit {
    pub fn new(n: usize) -> Self {
        Circuit {
            n,
            gates: Vec::new(),
            global_phase: 0.0,
        }
    }

    pub fn from_gates(n: usize, gates: Vec<Gate>) -> Result<Self> {
        let mut c = Circuit::new(n);
        for g in gates {
            c.push(g)?;
        }
        Ok(c)
    }

    pub fn num_qubits(&self) -> usize {
        self.n
    }

    pub fn gates(&self) -> &[Gate] {
        &self.gates
    }

    pub fn len(&self) -> usize {
        self.gates.len()
    }

    pub fn is_empty(&self) -> bool {
        self.gates.is_empty()
    }

    pub fn push(&mut self, g: Gate) -> Result<()> {
        let (a, b) = g.qubits();
        for q in std::iter::once(a).chain(b) {
            if q >= self.n {
                return Err(Error::QubitIndex { index: q, n: self.n });
            }
        }
        if b == Some(a) {
            return Err(Error::InvalidGate(format!("CX with control == target == {a}")));
        }
        self.gates.push(g);
        Ok(())
    }

    pub(crate) fn push_unchecked(&mut self, g: Gate) {
        debug_assert!(g.qubits().0 < self.n);
        self.gates.push(g);
    }

    pub fn extend(&mut self, other: &Circuit) -> Result<()> {
        if other.n != self.n {
            return Err(Error::Dimension {
                expected: self.n,
                found: other.n,
            });
        }
        self.gates.extend_from_slice(&other.gates);
        self.global_phase += other.global_phase;
        Ok(())
    }

    pub fn cnot_count(&self) -> usize {
        self.gates.iter().filter(|g| g.is_cx()).count()
    }

    /// Longest chain of gates sharing a qubit; every gate costs one layer.
    pub fn depth(&self) -> usize {
        let mut level = vec![0usize; self.n];
        let mut depth = 0;
        for g in &self.gates {
            let (a, b) = g.qubits();
            let l = match b {
                Some(b) => level[a].max(level[b]) + 1,
                None => level[a] + 1,
            };
            level[a] = l;
            if let Some(b) = b {
                level[b] = l;
            }
            depth = depth.max(l);
        }
        depth
    }

    pub fn stats(&self) -> CircuitStats {
        CircuitStats {
            cnots: self.cnot_count(),
            depth: self.depth(),
            gates: self.len(),
        }
    }

    /// Clifford gates in order, skipping `Rz`.
    pub fn clifford_gates(&self) -> Vec<CliffordGate> {
        self.gates.iter().filter_map(Gate::as_clifford).collect()
    }

    pub fn to_qasm(&self) -> String {
        emit_qasm(self)
    }
}

/// `a` followed by `b`; phases add.
pub fn compose(a: &Circuit, b: &Circuit) -> Result<Circuit> {
    let mut out = a.clone();
    out.extend(b)?;
    Ok(out)
}

fn fmt_angle(v: f64) -> String {
    // Shortest representation that round-trips to the same f64.
    format!("{v:?}")
}

/// OpenQASM 2.0 text: one register `q[n]`, gates in order, and the global
/// phase as a comment.
pub fn emit_qasm(c: &Circuit) -> String {
    let mut out = String::new();
    out.push_str("OPENQASM 2.0;\n");
    out.push_str("include \"qelib1.inc\";\n");
    let _ = writeln!(out, "// global phase: {}", fmt_angle(c.global_phase));
    let _ = writeln!(out, "qreg q[{}];", c.n);
    for g in &c.gates {
        let _ = match *g {
            Gate::H(q) => writeln!(out, "h q[{q}];"),
            Gate::S(q) => writeln!(out, "s q[{q}];"),
            Gate::Sdg(q) => writeln!(out, "sdg q[{q}];"),
            Gate::X(q) => writeln!(out, "x q[{q}];"),
            Gate::Z(q) => writeln!(out, "z q[{q}];"),
            Gate::CX(a, b) => writeln!(out, "cx q[{a}],q[{b}];"),
            Gate::Rz(q, angle) => writeln!(out, "rz({}) q[{q}];", fmt_angle(angle)),
        };
    }
    out
}
