//! File formats, instance generators and the compiler driver.

mod cli;
mod generate;
mod io;

pub use cli::{run, run_in_memory, Args, EmitFormat, HeuristicName, RunOutput, RunReport, REPORT_SCHEMA};
pub use generate::{generate_heisenberg, lattice_edges, random_word};
pub use io::{parse_coupling, parse_coupling_str, parse_hamiltonian, parse_hamiltonian_str, write_hamiltonian};
pub use crate::heuristics::all_pairs_distance;
