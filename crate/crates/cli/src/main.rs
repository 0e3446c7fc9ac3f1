mod cache;
mod commands;
mod config;

use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Parser, Subcommand};
use qtrep::{Bipartition, StrictPartition};

use crate::commands::CliError;
use crate::config::{Config, OutputFormat, DEFAULT_MAX_SIZE, MAX_SIZE_CAP};

#[derive(Parser, Debug)]
#[command(name = "qtrep", version, about = "Exact invariants of tensor modules over q(∞)")]
struct Cli {
    /// Truncation bound on |λ| and |μ| for table-filling commands
    #[arg(long, global = true, default_value_t = DEFAULT_MAX_SIZE, value_parser = parse_bound)]
    size_bound: usize,
    /// Worker threads for table fills (default: all cores)
    #[arg(long, global = true)]
    threads: Option<usize>,
    /// Print JSON instead of tables
    #[arg(long, global = true)]
    json: bool,
    /// Structure-constant cache file (QTREP_CACHE takes precedence)
    #[arg(long, global = true)]
    cache: Option<PathBuf>,
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand, Debug)]
pub enum Command {
    /// Coefficients f^μ_{λν}; all μ when μ is omitted
    Lr {
        #[arg(allow_hyphen_values = true)]
        lambda: StrictPartition,
        #[arg(allow_hyphen_values = true)]
        nu: StrictPartition,
        #[arg(allow_hyphen_values = true)]
        mu: Option<StrictPartition>,
    },
    /// dim Hom(Z(src), Z(dst))
    Homdim {
        #[arg(allow_hyphen_values = true)]
        src: Bipartition,
        #[arg(allow_hyphen_values = true)]
        dst: Bipartition,
    },
    /// Socle layers of Z(λ, μ)
    Socle {
        #[arg(allow_hyphen_values = true)]
        bp: Bipartition,
        #[arg(long, default_value_t = 2)]
        depth: usize,
    },
    /// Decomposition of Z(a) ⊗ Z(b)
    Tensor {
        #[arg(allow_hyphen_values = true)]
        a: Bipartition,
        #[arg(allow_hyphen_values = true)]
        b: Bipartition,
    },
    /// Blocks of the labels inside the truncation
    Blocks {
        /// Use only Ext¹ edges between labels inside the truncation
        #[arg(long)]
        confined: bool,
    },
    /// Koszul grading check on the truncation
    Koszul,
    /// Diagrams in D(p, q, r) with their elementary factorizations
    Diagrams {
        p: usize,
        q: usize,
        r: usize,
        /// Also check linear independence of the realized operators at this rank
        #[arg(long)]
        rank: Option<usize>,
    },
    /// Run a built-in check suite: diagrams, lr, trep or all
    Verify { suite: String },
}

fn parse_bound(s: &str) -> Result<usize, String> {
    let n: usize = s.parse().map_err(|_| format!("{s:?} is not a number"))?;
    if n > MAX_SIZE_CAP {
        return Err(format!("{n} exceeds the supported bound {MAX_SIZE_CAP}"));
    }
    Ok(n)
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let config = Config {
        cache_path: config::resolve_cache_path(cli.cache),
        max_size: cli.size_bound,
        num_threads: cli.threads,
        output: if cli.json { OutputFormat::Json } else { OutputFormat::Table },
    };
    match commands::run(&config, &cli.command) {
        Ok(text) => {
            print!("{text}");
            ExitCode::SUCCESS
        }
        Err(CliError::CheckFailed { output }) => {
            print!("{output}");
            ExitCode::from(1)
        }
        Err(err) => {
            eprintln!("error: {err}");
            ExitCode::from(match err {
                CliError::Usage(_) => 2,
                _ => 1,
            })
        }
    }
}
