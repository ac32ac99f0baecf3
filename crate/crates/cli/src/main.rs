//! `colourlie`: checks and constructions on colour Lie algebra structure documents.
//!
//! Exit status: 0 when every record passes, 1 when any record fails, 2 on input errors.

use std::path::{Path, PathBuf};
use std::process::ExitCode;

use clap::{Parser, Subcommand};
use colour_lie::commands::{self, Output};
use colour_lie::covariants::{Identity, Mode, DEFAULT_BUDGET};
use colour_lie::doc::Loaded;
use colour_lie::{Error, FieldDescriptor, Result};

#[derive(Parser)]
#[command(name = "colourlie", version, about = "Exact checks for colour Lie algebras and ε-orthogonal representations")]
struct Cli {
    /// Worker threads for the parallel verification pool.
    #[arg(long, global = true)]
    threads: Option<usize>,
    /// Write the JSON payload here instead of standard output.
    #[arg(long, global = true)]
    output: Option<PathBuf>,
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Validate every declared object.
    Check { file: PathBuf },
    /// Emit the moment map of a representation.
    Moment {
        file: PathBuf,
        #[arg(long)]
        rep: Option<String>,
    },
    /// Run both specialness criteria.
    Special {
        file: PathBuf,
        #[arg(long)]
        rep: Option<String>,
    },
    /// Build g ⊕ V from μ + φ and report the three equivalent conditions.
    Extend {
        file: PathBuf,
        #[arg(long)]
        rep: Option<String>,
        #[arg(long)]
        phi: Option<String>,
    },
    /// Build g ⊕ sl₂ ⊕ V⊗k² with k² of degrees ±gamma.
    ExtendSl2 {
        file: PathBuf,
        #[arg(long)]
        rep: Option<String>,
        /// Degree of the odd generator, e.g. "[1]".
        #[arg(long)]
        gamma: String,
    },
    /// Emit ψ and Q and check their alternative formulas.
    Covariants {
        file: PathBuf,
        #[arg(long)]
        rep: Option<String>,
    },
    /// Verify the Mathews identities.
    Mathews {
        file: PathBuf,
        #[arg(long)]
        rep: Option<String>,
        /// a, b, c, d or all.
        #[arg(long, default_value = "all")]
        identity: String,
        /// Check N random canonical tuples for the identities of arity ≥ 9.
        #[arg(long)]
        sample: Option<usize>,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        /// Largest number of canonical tuples allowed in full mode.
        #[arg(long, default_value_t = DEFAULT_BUDGET)]
        budget: usize,
    },
    /// Emit a built-in example as a structure document.
    Catalog {
        name: String,
        variant: Option<String>,
        /// 0 for ℚ, otherwise a prime p ≥ 5.
        #[arg(long, default_value_t = 0)]
        prime: u64,
    },
}

fn load(path: &Path) -> Result<Loaded> {
    let text = std::fs::read_to_string(path).map_err(|e| Error::Document(format!("{}: {e}", path.display())))?;
    commands::load_file(&text)
}

fn run(cli: &Cli) -> Result<Output> {
    match &cli.command {
        Command::Check { file } => Ok(commands::cmd_check(&load(file)?)),
        Command::Moment { file, rep } => commands::cmd_moment(&load(file)?, rep.as_deref()),
        Command::Special { file, rep } => commands::cmd_special(&load(file)?, rep.as_deref()),
        Command::Extend { file, rep, phi } => commands::cmd_extend(&load(file)?, rep.as_deref(), phi.as_deref()),
        Command::ExtendSl2 { file, rep, gamma } => {
            let g = commands::parse_degree(gamma)?;
            commands::cmd_extend_sl2(&load(file)?, rep.as_deref(), &g)
        }
        Command::Covariants { file, rep } => commands::cmd_covariants(&load(file)?, rep.as_deref()),
        Command::Mathews { file, rep, identity, sample, seed, budget } => {
            let doc = load(file)?;
            let ids = match identity.as_str() {
                "all" => Identity::ALL.to_vec(),
                s => s.split(',').map(Identity::parse).collect::<Result<Vec<_>>>()?,
            };
            let mut out = Output::default();
            for id in ids {
                let mode = match sample {
                    Some(n) if id.arity() >= 9 => Mode::Sampled { n: *n, seed: *seed },
                    _ => Mode::Full { budget: *budget },
                };
                let part = commands::cmd_mathews(&doc, rep.as_deref(), &[id], mode)?;
                out.report.lines.extend(part.report.lines);
                out.report.records.extend(part.report.records);
            }
            Ok(out)
        }
        Command::Catalog { name, variant, prime } => {
            let field = if *prime == 0 { FieldDescriptor::Rational } else { FieldDescriptor::prime(*prime)? };
            commands::cmd_catalog(name, variant.as_deref(), field)
        }
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    if let Some(n) = cli.threads {
        if let Err(e) = rayon::ThreadPoolBuilder::new().num_threads(n).build_global() {
            eprintln!("error: {e}");
            return ExitCode::from(2);
        }
    }
    let out = match run(&cli) {
        Ok(o) => o,
        Err(e) => {
            eprintln!("error: {e}");
            return ExitCode::from(2);
        }
    };
    // report lines go to stderr only when the payload occupies stdout
    let payload_on_stdout = out.json.is_some() && cli.output.is_none();
    for line in &out.report.lines {
        if payload_on_stdout {
            eprintln!("{line}");
        } else {
            println!("{line}");
        }
    }
    if let Some(json) = &out.json {
        match &cli.output {
            Some(path) => {
                if let Err(e) = std::fs::write(path, json) {
                    eprintln!("error: {}: {e}", path.display());
                    return ExitCode::from(2);
                }
            }
            None => print!("{json}"),
        }
    }
    ExitCode::from(out.exit_code() as u8)
}
