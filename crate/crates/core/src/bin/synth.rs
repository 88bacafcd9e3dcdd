use std::process::ExitCode;

use clap::Parser;
use pauli_synth::harness::{run, Args};

fn main() -> ExitCode {
    env_logger::Builder::from_env(env_logger::Env::new().filter_or("SYNTH_LOG", "warn")).init();
    let args = Args::parse();
    match run(&args) {
        Ok(report) if report.verified == Some(false) => ExitCode::from(3),
        Ok(_) => ExitCode::SUCCESS,
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(2)
        }
    }
}
