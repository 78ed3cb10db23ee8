//! `luinv`: Bloch decompositions, LU-invariant fingerprints and comparisons.
//!
//! Exit codes: 0 success / inconclusive, 1 distinct, 2 data error, 64 usage.

use std::fs;
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use clap::{Parser, Subcommand};
use lu_invariants::orbit::orbit_check;
use lu_invariants::report::{
    render_decomposition, render_fingerprint, render_orbit, render_verdict, Format,
};
use lu_invariants::states::{random_density, read_state, write_state};
use lu_invariants::{
    compare, fingerprint, Error, InvariantSettings, RngSeed, VerdictStatus, DEFAULT_TOLERANCE,
};

const EXIT_DISTINCT: u8 = 1;
const EXIT_DATA: u8 = 2;
const EXIT_USAGE: u8 = 64;

#[derive(Parser, Debug)]
#[command(
    name = "luinv",
    version,
    about = "Local-unitary invariants of bipartite and tripartite mixed states"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Print the Bloch coefficient blocks of a state.
    Decompose {
        state: PathBuf,
        #[arg(long)]
        out: Option<PathBuf>,
        #[arg(long, default_value = "json")]
        format: Format,
        /// Also emit the three unfoldings of the tripartite correlation tensor.
        #[arg(long)]
        unfoldings: bool,
    },
    /// Print the invariant fingerprint of a state.
    Invariants {
        state: PathBuf,
        #[arg(long)]
        max_alpha: Option<usize>,
        #[arg(long, value_parser = clap::value_parser!(u64).range(1..))]
        max_beta: Option<u64>,
        #[arg(long)]
        out: Option<PathBuf>,
        #[arg(long, default_value = "json")]
        format: Format,
    },
    /// Compare the fingerprints of two states.
    Compare {
        a: PathBuf,
        b: PathBuf,
        #[arg(long, default_value_t = DEFAULT_TOLERANCE, value_parser = parse_tolerance)]
        tol: f64,
        #[arg(long, default_value = "text")]
        format: Format,
    },
    /// Write a random state drawn from the Ginibre-induced ensemble.
    Random {
        #[arg(long, value_delimiter = ',', required = true)]
        dims: Vec<usize>,
        #[arg(long, value_parser = clap::value_parser!(u64).range(1..))]
        rank: Option<u64>,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        #[arg(long)]
        out: PathBuf,
    },
    /// Check fingerprint agreement along random local-unitary orbits.
    OrbitCheck {
        state: PathBuf,
        #[arg(long, value_parser = clap::value_parser!(u64).range(1..))]
        trials: u64,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        #[arg(long, default_value_t = DEFAULT_TOLERANCE, value_parser = parse_tolerance)]
        tol: f64,
        #[arg(long, default_value = "text")]
        format: Format,
    },
}

fn parse_tolerance(s: &str) -> Result<f64, String> {
    let tol: f64 = s.parse().map_err(|e| format!("{e}"))?;
    if tol.is_finite() && tol >= 0.0 {
        Ok(tol)
    } else {
        Err(format!(
            "tolerance must be finite and non-negative, got {s}"
        ))
    }
}

enum Failure {
    Usage(String),
    Data(Error),
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        Failure::Data(e)
    }
}

fn emit(text: &str, out: Option<&Path>) -> Result<(), Failure> {
    match out {
        Some(path) => fs::write(path, text).map_err(|source| {
            Failure::Data(Error::Io {
                path: path.to_path_buf(),
                source,
            })
        }),
        None => {
            print!("{text}");
            Ok(())
        }
    }
}

fn run(command: Command) -> Result<u8, Failure> {
    match command {
        Command::Decompose {
            state,
            out,
            format,
            unfoldings,
        } => {
            let state = read_state(&state)?;
            emit(
                &render_decomposition(&state, unfoldings, format)?,
                out.as_deref(),
            )?;
            Ok(0)
        }
        Command::Invariants {
            state,
            max_alpha,
            max_beta,
            out,
            format,
        } => {
            let settings = InvariantSettings {
                max_alpha,
                max_beta: max_beta.map(|b| b as usize),
            };
            let state = read_state(&state)?;
            let fp = fingerprint(&state, &settings)?;
            emit(&render_fingerprint(&fp, format), out.as_deref())?;
            Ok(0)
        }
        Command::Compare { a, b, tol, format } => {
            let settings = InvariantSettings::default();
            let fa = fingerprint(&read_state(&a)?, &settings)?;
            let fb = fingerprint(&read_state(&b)?, &settings)?;
            let verdict = compare(&fa, &fb, tol)?;
            print!("{}", render_verdict(&verdict, &fa.metadata, format));
            Ok(match verdict.status {
                VerdictStatus::Inconclusive => 0,
                VerdictStatus::Distinct => EXIT_DISTINCT,
            })
        }
        Command::Random {
            dims,
            rank,
            seed,
            out,
        } => {
            if dims.len() != 2 && dims.len() != 3 {
                return Err(Failure::Usage(format!(
                    "--dims needs 2 or 3 local dimensions, got {}",
                    dims.len()
                )));
            }
            if dims.iter().any(|&d| d < 2) {
                return Err(Failure::Usage("--dims entries must be at least 2".into()));
            }
            let side: usize = dims.iter().product();
            let rank = rank.map_or(side, |r| r as usize);
            if rank > side {
                return Err(Failure::Usage(format!("--rank {rank} exceeds {side}")));
            }
            let state = random_density(&dims, rank, RngSeed(seed))?;
            write_state(&state, &out)?;
            Ok(0)
        }
        Command::OrbitCheck {
            state,
            trials,
            seed,
            tol,
            format,
        } => {
            let state = read_state(&state)?;
            let summary = orbit_check(
                &state,
                trials as usize,
                RngSeed(seed),
                tol,
                &InvariantSettings::default(),
            )?;
            print!("{}", render_orbit(&summary, format));
            Ok(match summary.status {
                VerdictStatus::Inconclusive => 0,
                VerdictStatus::Distinct => EXIT_DISTINCT,
            })
        }
    }
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => {
            let _ = e.print();
            return if e.use_stderr() {
                ExitCode::from(EXIT_USAGE)
            } else {
                ExitCode::SUCCESS
            };
        }
    };
    match run(cli.command) {
        Ok(code) => ExitCode::from(code),
        Err(Failure::Usage(msg)) => {
            eprintln!("error: {msg}");
            ExitCode::from(EXIT_USAGE)
        }
        Err(Failure::Data(e)) => {
            eprintln!("error: {e}");
            ExitCode::from(EXIT_DATA)
        }
    }
}
