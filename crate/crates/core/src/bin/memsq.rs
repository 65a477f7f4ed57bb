use std::path::PathBuf;
use std::process::ExitCode;

use clap::Parser;
use memsq::cli::run;
use memsq::Error;

/// Runs a MEMS membrane experiment described by a config file.
#[derive(Parser)]
#[command(name = "memsq", version)]
struct Args {
    /// Path to the key = value run configuration.
    config: PathBuf,
    /// Output directory; overrides the config's `output` key.
    #[arg(long)]
    out: Option<PathBuf>,
    /// Worker threads for sweeps.
    #[arg(long)]
    workers: Option<usize>,
}

fn main() -> ExitCode {
    let args = Args::parse();
    match run(&args.config, args.out.as_deref(), args.workers) {
        Ok(summary) => match summary.failed {
            None => {
                println!("{}", summary.status);
                ExitCode::SUCCESS
            }
            Some(reason) => {
                eprintln!("numerical failure: {reason}");
                ExitCode::from(3)
            }
        },
        Err(e @ (Error::Config(_) | Error::Io(_))) => {
            eprintln!("error: {e}");
            ExitCode::from(2)
        }
        Err(e) => {
            eprintln!("numerical failure: {e}");
            ExitCode::from(3)
        }
    }
}
