//! Bit-packed Pauli strings and words with exact Clifford conjugation.
//!
//! A Pauli string on `n` qubits is stored as an x-side bit vector, a z-side
//! bit vector and a sign bit. Per qubit: `X = [1|0]`, `Y = [1|1]`,
//! `Z = [0|1]`, `I = [0|0]`. Bits are packed 64 qubits to a word.
//!
//! In text form the leftmost letter is the highest-index qubit, so `"ZYXZ"`
//! has `Z` on qubit 3 and `Z` on qubit 0.

use std::fmt;
use std::str::FromStr;

use crate::error::{Error, Result};

const WORD_BITS: usize = 64;

fn words_for(n: usize) -> usize {
    n.div_ceil(WORD_BITS)
}

/// Single-qubit Pauli letter.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Pauli {
    I,
    X,
    Y,
    Z,
}

impl Pauli {
    pub const ALL: [Pauli; 4] = [Pauli::I, Pauli::X, Pauli::Y, Pauli::Z];

    pub fn from_bits(x: bool, z: bool) -> Self {
        match (x, z) {
            (false, false) => Pauli::I,
            (true, false) => Pauli::X,
            (true, true) => Pauli::Y,
            (false, true) => Pauli::Z,
        }
    }

    pub fn bits(self) -> (bool, bool) {
        match self {
            Pauli::I => (false, false),
            Pauli::X => (true, false),
            Pauli::Y => (true, true),
            Pauli::Z => (false, true),
        }
    }

    pub fn from_char(c: char) -> Option<Self> {
        match c {
            'I' => Some(Pauli::I),
            'X' => Some(Pauli::X),
            'Y' => Some(Pauli::Y),
            'Z' => Some(Pauli::Z),
            _ => None,
        }
    }

    pub fn to_char(self) -> char {
        match self {
            Pauli::I => 'I',
            Pauli::X => 'X',
            Pauli::Y => 'Y',
            Pauli::Z => 'Z',
        }
    }

    pub fn is_identity(self) -> bool {
        self == Pauli::I
    }
}

impl fmt::Display for Pauli {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.to_char())
    }
}

/// Clifford gates used for conjugation. `X` and `Z` only appear in sign-fixing
/// layers of resynthesized tails.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum CliffordGate {
    H(usize),
    S(usize),
    Sdg(usize),
    X(usize),
    Z(usize),
    /// Control, target.
    CX(usize, usize),
}

impl CliffordGate {
    pub fn dagger(self) -> Self {
        match self {
            CliffordGate::S(q) => CliffordGate::Sdg(q),
            CliffordGate::Sdg(q) => CliffordGate::S(q),
            g => g,
        }
    }

    pub fn is_cx(self) -> bool {
        matches!(self, CliffordGate::CX(..))
    }

    pub fn qubits(self) -> (usize, Option<usize>) {
        match self {
            CliffordGate::H(q)
            | CliffordGate::S(q)
            | CliffordGate::Sdg(q)
            | CliffordGate::X(q)
            | CliffordGate::Z(q) => (q, None),
            CliffordGate::CX(c, t) => (c, Some(t)),
        }
    }

    /// Checks qubit indices against `n` and rejects `CX(i, i)`.
    pub fn validate(self, n: usize) -> Result<()> {
        let (a, b) = self.qubits();
        if a >= n {
            return Err(Error::QubitIndex { index: a, n });
        }
        if let Some(b) = b {
            if b >= n {
                return Err(Error::QubitIndex { index: b, n });
            }
            if a == b {
                return Err(Error::InvalidGate(format!("CX with control == target == {a}")));
            }
        }
        Ok(())
    }
}

impl fmt::Display for CliffordGate {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            CliffordGate::H(q) => write!(f, "H({q})"),
            CliffordGate::S(q) => write!(f, "S({q})"),
            CliffordGate::Sdg(q) => write!(f, "Sdg({q})"),
            CliffordGate::X(q) => write!(f, "X({q})"),
            CliffordGate::Z(q) => write!(f, "Z({q})"),
            CliffordGate::CX(c, t) => write!(f, "CX({c},{t})"),
        }
    }
}

#[derive(Clone, PartialEq, Eq, Hash)]
pub struct PauliString {
    n: usize,
    x: Vec<u64>,
    z: Vec<u64>,
    sign: bool,
}

impl PauliString {
    pub fn identity(n: usize) -> Self {
        PauliString {
            n,
            x: vec![0; words_for(n)],
            z: vec![0; words_for(n)],
            sign: false,
        }
    }

    /// Builds a string from letters indexed by qubit (`letters[q]` acts on qubit `q`).
    pub fn from_letters(letters: &[Pauli], sign: bool) -> Self {
        let mut p = PauliString::identity(letters.len());
        for (q, &l) in letters.iter().enumerate() {
            p.set_letter(q, l);
        }
        p.sign = sign;
        p
    }

    pub fn single(n: usize, q: usize, letter: Pauli) -> Self {
        let mut p = PauliString::identity(n);
        p.set_letter(q, letter);
        p
    }

    pub fn num_qubits(&self) -> usize {
        self.n
    }

    #[inline]
    pub fn x(&self, q: usize) -> bool {
        (self.x[q / WORD_BITS] >> (q % WORD_BITS)) & 1 == 1
    }

    #[inline]
    pub fn z(&self, q: usize) -> bool {
        (self.z[q / WORD_BITS] >> (q % WORD_BITS)) & 1 == 1
    }

    #[inline]
    fn set_x(&mut self, q: usize, v: bool) {
        let (w, b) = (q / WORD_BITS, q % WORD_BITS);
        self.x[w] = (self.x[w] & !(1 << b)) | ((v as u64) << b);
    }

    #[inline]
    fn set_z(&mut self, q: usize, v: bool) {
        let (w, b) = (q / WORD_BITS, q % WORD_BITS);
        self.z[w] = (self.z[w] & !(1 << b)) | ((v as u64) << b);
    }

    /// `true` means a leading minus sign.
    pub fn sign(&self) -> bool {
        self.sign
    }

    pub fn set_sign(&mut self, sign: bool) {
        self.sign = sign;
    }

    pub fn letter(&self, q: usize) -> Pauli {
        Pauli::from_bits(self.x(q), self.z(q))
    }

    pub fn set_letter(&mut self, q: usize, letter: Pauli) {
        let (x, z) = letter.bits();
        self.set_x(q, x);
        self.set_z(q, z);
    }

    pub fn letters(&self) -> Vec<Pauli> {
        (0..self.n).map(|q| self.letter(q)).collect()
    }

    /// Number of qubits carrying a non-identity letter.
    pub fn weight(&self) -> usize {
        self.x
            .iter()
            .zip(&self.z)
            .map(|(x, z)| (x | z).count_ones() as usize)
            .sum()
    }

    pub fn is_identity(&self) -> bool {
        self.weight() == 0
    }

    /// Qubits with non-identity letters, ascending.
    pub fn support(&self) -> Vec<usize> {
        let mut out = Vec::with_capacity(self.weight());
        for (w, (x, z)) in self.x.iter().zip(&self.z).enumerate() {
            let mut bits = x | z;
            while bits != 0 {
                let b = bits.trailing_zeros() as usize;
                out.push(w * WORD_BITS + b);
                bits &= bits - 1;
            }
        }
        out
    }

    pub fn commutes(&self, other: &PauliString) -> Result<bool> {
        if self.n != other.n {
            return Err(Error::Dimension {
                expected: self.n,
                found: other.n,
            });
        }
        Ok(self.commutes_unchecked(other))
    }

    /// Symplectic product parity; callers guarantee equal qubit counts.
    pub(crate) fn commutes_unchecked(&self, other: &PauliString) -> bool {
        let mut parity = 0u32;
        for w in 0..self.x.len() {
            parity ^= ((self.x[w] & other.z[w]) ^ (self.z[w] & other.x[w])).count_ones() & 1;
        }
        parity == 0
    }

    /// Conjugates in place: `P <- g P g^dagger`.
    pub fn apply_gate(&mut self, g: CliffordGate) -> Result<()> {
        g.validate(self.n)?;
        self.conjugate(g);
        Ok(())
    }

    pub fn conjugated(&self, g: CliffordGate) -> Result<PauliString> {
        let mut p = self.clone();
        p.apply_gate(g)?;
        Ok(p)
    }

    /// Unchecked conjugation. All right-hand sides read pre-update values.
    pub(crate) fn conjugate(&mut self, g: CliffordGate) {
        match g {
            CliffordGate::H(q) => {
                let (x, z) = (self.x(q), self.z(q));
                self.set_x(q, z);
                self.set_z(q, x);
                self.sign ^= x & z;
            }
            CliffordGate::S(q) => {
                let (x, z) = (self.x(q), self.z(q));
                self.set_z(q, z ^ x);
                self.sign ^= x & z;
            }
            CliffordGate::Sdg(q) => {
                let (x, z) = (self.x(q), self.z(q));
                self.set_z(q, z ^ x);
                self.sign ^= x & !z;
            }
            CliffordGate::X(q) => {
                self.sign ^= self.z(q);
            }
            CliffordGate::Z(q) => {
                self.sign ^= self.x(q);
            }
            CliffordGate::CX(c, t) => {
                let (xc, zc, xt, zt) = (self.x(c), self.z(c), self.x(t), self.z(t));
                self.set_x(t, xt ^ xc);
                self.set_z(c, zc ^ zt);
                self.sign ^= xc & zt & !(xt ^ zc);
            }
        }
    }
}

impl fmt::Display for PauliString {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.sign {
            write!(f, "-")?;
        }
        for q in (0..self.n).rev() {
            write!(f, "{}", self.letter(q))?;
        }
        Ok(())
    }
}

impl fmt::Debug for PauliString {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "PauliString({self})")
    }
}

impl FromStr for PauliString {
    type Err = Error;

    /// Accepts `[+-]?[IXYZ]+`; the leftmost letter is qubit `n - 1`.
    fn from_str(text: &str) -> Result<Self> {
        let (sign, body, offset) = match text.chars().next() {
            Some('-') => (true, &text[1..], 1),
            Some('+') => (false, &text[1..], 1),
            _ => (false, text, 0),
        };
        if body.is_empty() {
            return Err(Error::Parse {
                position: offset,
                message: "expected at least one Pauli letter".into(),
            });
        }
        let mut letters = Vec::with_capacity(body.len());
        for (i, c) in body.chars().enumerate() {
            match Pauli::from_char(c) {
                Some(l) => letters.push(l),
                None => {
                    return Err(Error::Parse {
                        position: offset + i,
                        message: format!("unexpected character {c:?}"),
                    })
                }
            }
        }
        letters.reverse();
        Ok(PauliString::from_letters(&letters, sign))
    }
}

/// Parses the text form of a Pauli string.
pub fn parse_string(text: &str) -> Result<PauliString> {
    text.parse()
}

/// An ordered sequence of Pauli rotations `exp(-i theta P)`.
///
/// `orig_index` remembers each row's position in the input sequence so that
/// rows can be removed as they are implemented.
#[derive(Clone, Debug, PartialEq)]
pub struct PauliWord {
    n: usize,
    rows: Vec<PauliString>,
    thetas: Vec<f64>,
    orig_index: Vec<usize>,
}

impl PauliWord {
    pub fn new(n: usize) -> Self {
        PauliWord {
            n,
            rows: Vec::new(),
            thetas: Vec::new(),
            orig_index: Vec::new(),
        }
    }

    /// Builds a word with `orig_index = 0..K`.
    pub fn from_rows(n: usize, rows: Vec<(PauliString, f64)>) -> Result<Self> {
        let mut w = PauliWord::new(n);
        for (p, theta) in rows {
            w.push(p, theta)?;
        }
        Ok(w)
    }

    /// Parses `(text, theta)` pairs; all strings must have equal length.
    pub fn parse(rows: &[(&str, f64)]) -> Result<Self> {
        let parsed = rows
            .iter()
            .map(|(t, th)| Ok((parse_string(t)?, *th)))
            .collect::<Result<Vec<_>>>()?;
        let n = parsed.first().map(|(p, _)| p.num_qubits()).unwrap_or(0);
        PauliWord::from_rows(n, parsed)
    }

    /// Appends a row whose original index is the next unused position.
    pub fn push(&mut self, p: PauliString, theta: f64) -> Result<()> {
        if p.num_qubits() != self.n {
            return Err(Error::Dimension {
                expected: self.n,
                found: p.num_qubits(),
            });
        }
        let idx = self.orig_index.iter().max().map(|m| m + 1).unwrap_or(0);
        self.rows.push(p);
        self.thetas.push(theta);
        self.orig_index.push(idx);
        Ok(())
    }

    pub fn num_qubits(&self) -> usize {
        self.n
    }

    pub fn len(&self) -> usize {
        self.rows.len()
    }

    pub fn is_empty(&self) -> bool {
        self.rows.is_empty()
    }

    pub fn rows(&self) -> &[PauliString] {
        &self.rows
    }

    pub fn row(&self, pos: usize) -> &PauliString {
        &self.rows[pos]
    }

    pub fn theta(&self, pos: usize) -> f64 {
        self.thetas[pos]
    }

    pub fn thetas(&self) -> &[f64] {
        &self.thetas
    }

    pub fn orig_index(&self, pos: usize) -> usize {
        self.orig_index[pos]
    }

    pub fn orig_indices(&self) -> &[usize] {
        &self.orig_index
    }

    /// Current position of the row with original index `orig`.
    pub fn position(&self, orig: usize) -> Option<usize> {
        self.orig_index.iter().position(|&o| o == orig)
    }

    /// Removes the row at `pos`, returning `(row, theta, orig_index)`.
    pub fn remove(&mut self, pos: usize) -> (PauliString, f64, usize) {
        (
            self.rows.remove(pos),
            self.thetas.remove(pos),
            self.orig_index.remove(pos),
        )
    }

    /// Conjugates every row by `g`; angles and indices are untouched.
    pub fn apply_gate(&mut self, g: CliffordGate) -> Result<()> {
        g.validate(self.n)?;
        self.conjugate(g);
        Ok(())
    }

    pub(crate) fn conjugate(&mut self, g: CliffordGate) {
        for r in &mut self.rows {
            r.conjugate(g);
        }
    }

    pub fn iter(&self) -> impl Iterator<Item = (&PauliString, f64, usize)> + '_ {
        self.rows
            .iter()
            .zip(&self.thetas)
            .zip(&self.orig_index)
            .map(|((r, &t), &o)| (r, t, o))
    }
}

/// Row-wise conjugation returning a new word.
pub fn apply_gate_word(g: CliffordGate, w: &PauliWord) -> Result<PauliWord> {
    let mut out = w.clone();
    out.apply_gate(g)?;
    Ok(out)
}
