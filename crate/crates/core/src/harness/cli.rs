use std::fs;
use std::path::PathBuf;
use std::time::Instant;

use clap::{Parser, ValueEnum};
use serde::Serialize;

use crate::error::{Error, Result};
use crate::heuristics::Heuristic;
use crate::mcts::{search, SearchConfig, SolutionSource};
use crate::oracle::{circuit_unitary, equal_up_to_phase, word_unitary, MAX_QUBITS};
use crate::ordering::OrderingMode;
use crate::pauli::PauliWord;

use super::io::{parse_coupling, parse_hamiltonian};

pub const REPORT_SCHEMA: u32 = 1;

const VERIFY_TOL: f64 = 1e-9;

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum HeuristicName {
    Logical,
    Hardware,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum EmitFormat {
    Qasm,
    None,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
enum ModeArg {
    Preserve,
    Modify,
}

/// Compile a sequence of Pauli rotations into a CNOT-lean circuit.
#[derive(Clone, Debug, Parser)]
#[command(name = "synth", version)]
pub struct Args {
    /// Lines of `<pauli-letters> <angle>`; `#` starts a comment.
    pub hamiltonian: PathBuf,
    #[arg(long, value_enum, default_value = "preserve")]
    mode: ModeArg,
    #[arg(long, value_enum, default_value = "logical")]
    pub heuristic: HeuristicName,
    /// Coupling graph, required by the hardware heuristic.
    #[arg(long)]
    pub coupling: Option<PathBuf>,
    #[arg(long, default_value_t = 1)]
    pub iterations: usize,
    /// UCT exploration factor.
    #[arg(long, default_value_t = std::f64::consts::SQRT_2)]
    pub mu: f64,
    #[arg(long, default_value_t = 0)]
    pub seed: u64,
    #[arg(long, value_enum, default_value = "qasm")]
    pub emit: EmitFormat,
    /// QASM destination; stdout when absent.
    #[arg(long)]
    pub out: Option<PathBuf>,
    /// JSON report destination.
    #[arg(long)]
    pub report: Option<PathBuf>,
    /// Check the circuit against the dense rotation product.
    #[arg(long)]
    pub verify: bool,
    /// Emit the literal inverse of the leading Clifford instead of resynthesizing it.
    #[arg(long)]
    pub no_tail_opt: bool,
    /// Print `iter,best_cnots,elapsed_ms` to stderr every iteration.
    #[arg(long)]
    pub progress: bool,
}

impl Args {
    pub fn mode(&self) -> OrderingMode {
        match self.mode {
            ModeArg::Preserve => OrderingMode::Preserving,
            ModeArg::Modify => OrderingMode::Modifying,
        }
    }

    pub fn set_mode(&mut self, mode: OrderingMode) {
        self.mode = match mode {
            OrderingMode::Preserving => ModeArg::Preserve,
            OrderingMode::Modifying => ModeArg::Modify,
        };
    }

    /// Defaults for everything but the input file.
    pub fn for_file(path: impl Into<PathBuf>) -> Self {
        Args::parse_from([std::ffi::OsString::from("synth"), path.into().into_os_string()])
    }
}

#[derive(Clone, Debug, Serialize)]
pub struct RunReport {
    pub schema: u32,
    pub num_qubits: usize,
    pub num_strings: usize,
    pub cnots: usize,
    pub depth: usize,
    pub gates: usize,
    pub cnots_leading: usize,
    pub cnots_tail: usize,
    pub iterations: usize,
    pub seed: u64,
    pub mu: f64,
    pub mode: OrderingMode,
    pub heuristic: HeuristicName,
    pub tail_opt: bool,
    /// Original indices in implementation order.
    pub order: Vec<usize>,
    pub source: SolutionSource,
    pub discovered_at: usize,
    pub best_per_iteration: Vec<usize>,
    pub elapsed_ms: Vec<f64>,
    pub total_elapsed_ms: f64,
    pub verified: Option<bool>,
}

#[derive(Clone, Debug)]
pub struct RunOutput {
    pub report: RunReport,
    pub qasm: String,
}

/// Runs the pipeline on an already parsed word without touching the
/// filesystem beyond the coupling file.
pub fn run_in_memory(args: &Args, word: &PauliWord) -> Result<RunOutput> {
    let n = word.num_qubits();
    let heuristic = match (args.heuristic, &args.coupling) {
        (HeuristicName::Logical, _) => Heuristic::Logical,
        (HeuristicName::Hardware, Some(path)) => {
            let ctx = parse_coupling(path)?;
            if ctx.num_qubits() != n {
                return Err(Error::Dimension {
                    expected: n,
                    found: ctx.num_qubits(),
                });
            }
            Heuristic::Hardware(ctx)
        }
        (HeuristicName::Hardware, None) => {
            return Err(Error::Input("--heuristic hardware requires --coupling".into()))
        }
    };
    if args.verify && n > MAX_QUBITS {
        return Err(Error::TooLarge { n, cap: MAX_QUBITS });
    }
    let cfg = SearchConfig {
        iterations: args.iterations,
        mu: args.mu,
        seed: args.seed,
        mode: args.mode(),
        heuristic,
        tail_opt: !args.no_tail_opt,
        progress: args.progress,
    };
    let start = Instant::now();
    let outcome = search(word, &cfg)?;
    let total_elapsed_ms = start.elapsed().as_secs_f64() * 1e3;
    let best = &outcome.best;
    log::info!(
        "{} CNOTs ({} leading) after {} iterations",
        best.total_cnots(),
        best.cnots_leading,
        args.iterations
    );

    let verified = if args.verify {
        let expect = word_unitary(word, &best.order)?;
        let got = circuit_unitary(&best.circuit)?;
        Some(equal_up_to_phase(&expect, &got, VERIFY_TOL)?)
    } else {
        None
    };
    let stats = best.circuit.stats();
    let report = RunReport {
        schema: REPORT_SCHEMA,
        num_qubits: n,
        num_strings: word.len(),
        cnots: stats.cnots,
        depth: stats.depth,
        gates: stats.gates,
        cnots_leading: best.cnots_leading,
        cnots_tail: best.tail.cnot_count(),
        iterations: args.iterations,
        seed: args.seed,
        mu: args.mu,
        mode: args.mode(),
        heuristic: args.heuristic,
        tail_opt: !args.no_tail_opt,
        order: best.order.clone(),
        source: best.source,
        discovered_at: best.discovered_at,
        best_per_iteration: outcome.best_per_iteration,
        elapsed_ms: outcome.elapsed_ms,
        total_elapsed_ms,
        verified,
    };
    Ok(RunOutput {
        report,
        qasm: best.circuit.to_qasm(),
    })
}

/// Parses the input, searches, and writes the QASM and report artifacts.
pub fn run(args: &Args) -> Result<RunReport> {
    let word = parse_hamiltonian(&args.hamiltonian)?;
    let out = run_in_memory(args, &word)?;
    if args.emit == EmitFormat::Qasm {
        match &args.out {
            Some(path) => fs::write(path, &out.qasm)?,
            None => print!("{}", out.qasm),
        }
    }
    let json = serde_json::to_string_pretty(&out.report).map_err(|e| Error::Io(e.to_string()))?;
    match &args.report {
        Some(path) => fs::write(path, json + "\n")?,
        None => eprintln!(
            "cnots={} depth={} gates={}",
            out.report.cnots, out.report.depth, out.report.gates
        ),
    }
    if out.report.verified == Some(false) {
        log::error!("circuit does not match the rotation product");
    }
    Ok(out.report)
}
