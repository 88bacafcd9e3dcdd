//! Synthesis of Pauli-rotation sequences into CNOT-lean circuits.
//!
//! A word of rotations `exp(-i theta P)` is compiled by repeatedly choosing a
//! row, conjugating the whole residual word by Clifford blocks until that row
//! is a single-qubit `Z`, emitting an `Rz`, and finally undoing the
//! accumulated Clifford with a resynthesized tail. Tree search picks the
//! order in which rows are implemented.

pub mod circuit;
pub mod error;
pub mod harness;
pub mod heuristics;
pub mod mcts;
pub mod oracle;
pub mod ordering;
pub mod pauli;
pub mod tableau;

pub use circuit::{compose, emit_qasm, Circuit, Gate};
pub use error::{Error, Result};
pub use heuristics::{HardwareContext, Heuristic, ReductionHeuristic};
pub use mcts::{search, SearchConfig, SearchOutcome, Solution};
pub use ordering::{build_dag, CommutationDag, OrderingMode};
pub use pauli::{CliffordGate, Pauli, PauliString, PauliWord};
pub use tableau::{synthesize, Tableau};
