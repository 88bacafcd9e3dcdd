use std::fs;
use std::path::Path;

use crate::error::{Error, Result};
use crate::heuristics::HardwareContext;
use crate::pauli::{parse_string, PauliWord};

/// Parses `<letters> <angle>` lines; `#` starts a comment. Row `k` of the
/// result has original index `k`.
pub fn parse_hamiltonian_str(text: &str) -> Result<PauliWord> {
    let mut word: Option<PauliWord> = None;
    for (lineno, raw) in text.lines().enumerate() {
        let line = raw.split('#').next().unwrap_or("").trim();
        if line.is_empty() {
            continue;
        }
        let fail = |message: String| Error::Parse {
            position: lineno + 1,
            message,
        };
        let mut fields = line.split_whitespace();
        let letters = fields.next().expect("line is non-empty");
        let angle = fields
            .next()
            .ok_or_else(|| fail(format!("missing angle after {letters:?}")))?;
        if let Some(extra) = fields.next() {
            return Err(fail(format!("unexpected field {extra:?}")));
        }
        let p = parse_string(letters).map_err(|e| fail(e.to_string()))?;
        let theta: f64 = angle
            .parse()
            .map_err(|_| fail(format!("bad angle {angle:?}")))?;
        if !theta.is_finite() {
            return Err(fail(format!("angle {angle} is not finite")));
        }
        let w = word.get_or_insert_with(|| PauliWord::new(p.num_qubits()));
        if p.num_qubits() != w.num_qubits() {
            return Err(fail(format!(
                "string has {} qubits, expected {}",
                p.num_qubits(),
                w.num_qubits()
            )));
        }
        w.push(p, theta)?;
    }
    word.ok_or_else(|| Error::Input("hamiltonian has no rows".into()))
}

pub fn parse_hamiltonian(path: impl AsRef<Path>) -> Result<PauliWord> {
    let path = path.as_ref();
    let text = fs::read_to_string(path).map_err(|e| Error::Io(format!("{}: {e}", path.display())))?;
    parse_hamiltonian_str(&text)
}

/// Inverse of [`parse_hamiltonian_str`]; angles round-trip exactly.
pub fn write_hamiltonian(word: &PauliWord) -> String {
    let mut out = String::new();
    for (p, theta, _) in word.iter() {
        out.push_str(&format!("{p} {theta:?}\n"));
    }
    out
}

/// First line `n`, then one `i j` edge per line. The graph must be connected.
pub fn parse_coupling_str(text: &str) -> Result<HardwareContext> {
    let mut n: Option<usize> = None;
    let mut edges = Vec::new();
    for (lineno, raw) in text.lines().enumerate() {
        let line = raw.split('#').next().unwrap_or("").trim();
        if line.is_empty() {
            continue;
        }
        let fail = |message: String| Error::Parse {
            position: lineno + 1,
            message,
        };
        let nums: Vec<usize> = line
            .split_whitespace()
            .map(|f| f.parse().map_err(|_| fail(format!("bad integer {f:?}"))))
            .collect::<Result<_>>()?;
        match (n, nums.as_slice()) {
            (None, [count]) => n = Some(*count),
            (None, _) => return Err(fail("first line must hold the qubit count".into())),
            (Some(count), [a, b]) => {
                for &q in [a, b] {
                    if q >= count {
                        return Err(Error::QubitIndex { index: q, n: count });
                    }
                }
                if a == b {
                    return Err(fail(format!("self-loop on qubit {a}")));
                }
                edges.push((*a, *b));
            }
            (Some(_), _) => return Err(fail("expected two qubit indices".into())),
        }
    }
    let n = n.ok_or_else(|| Error::Input("coupling file is empty".into()))?;
    HardwareContext::new(n, &edges)
}

pub fn parse_coupling(path: impl AsRef<Path>) -> Result<HardwareContext> {
    let path = path.as_ref();
    let text = fs::read_to_string(path).map_err(|e| Error::Io(format!("{}: {e}", path.display())))?;
    parse_coupling_str(&text)
}
