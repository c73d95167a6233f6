//! `dukan`: batch front end for exact Dold-Kan / Dwyer-Kan computations.
//!
//! Exit status: 0 success, 1 mathematical or validation failure, 2 I/O or
//! parse failure.

mod commands;
mod report;

use std::io::Write;
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use clap::{Parser, Subcommand, ValueEnum};
use dukan_core::dwyerkan::GenParams;
use dukan_core::json::Object;
use sha2::{Digest, Sha256};

use report::{max_entry_bits, CliError, Report};

const MAX_BITS_VAR: &str = "DUKAN_MAX_ENTRY_BITS";

#[derive(Parser, Debug)]
#[command(name = "dukan", version, about = "Exact Dold-Kan and Dwyer-Kan correspondences over ℤ")]
struct Cli {
    /// Write output here instead of stdout.
    #[arg(long, global = true)]
    out: Option<PathBuf>,
    #[arg(long, global = true, value_enum, default_value_t = Format::Json)]
    format: Format,
    #[command(subcommand)]
    command: Command,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
enum Format {
    Json,
    Text,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Normalized (du)chain complex of a simplicial or duplicial object, with homology.
    Chains { input: PathBuf },
    /// Dold-Kan nerve of a chain complex, or Dwyer-Kan nerve of a duchain complex.
    Nerve {
        input: PathBuf,
        #[arg(long)]
        trunc: usize,
    },
    /// Paracyclic and cyclic verdicts per degree.
    Classify { input: PathBuf },
    /// Invariant factors of the homology of a complex or of the normalized chains of an object.
    Homology { input: PathBuf },
    /// Checks every identity the input is supposed to satisfy.
    Verify { input: PathBuf },
    /// B → N′(B) → C(N′(B)), compared with B.
    Roundtrip {
        /// Duchain input; omit with --gen.
        input: Option<PathBuf>,
        #[arg(long)]
        trunc: usize,
        /// Generate the input (truncation trunc + 1) instead of reading it.
        #[arg(long, requires = "seed", conflicts_with = "input")]
        gen: bool,
        #[arg(long)]
        seed: Option<u64>,
        #[arg(long, default_value_t = 3)]
        max_rank: usize,
        /// Negate δ[N] in the reference complex (mutation check).
        #[arg(long, hide = true)]
        flip_delta: Option<usize>,
    },
    /// Random duchain complex, deterministic in the seed.
    Gen {
        #[arg(long)]
        seed: u64,
        #[arg(long)]
        trunc: usize,
        #[arg(long)]
        max_rank: usize,
        /// Bound on drawn entries before kernel composition.
        #[arg(long, default_value_t = 2)]
        entry_bound: i64,
    },
}

fn read_input(path: &Path) -> Result<(Object, String), CliError> {
    let bytes = std::fs::read(path).map_err(|e| CliError::Input(format!("{}: {e}", path.display())))?;
    let digest = format!("sha256:{:x}", Sha256::digest(&bytes));
    let text = std::str::from_utf8(&bytes).map_err(|_| CliError::Input(format!("{}: not UTF-8", path.display())))?;
    Ok((Object::from_json(text)?, digest))
}

fn max_bits() -> Result<Option<u64>, CliError> {
    match std::env::var(MAX_BITS_VAR) {
        Ok(v) => v
            .trim()
            .parse()
            .map(Some)
            .map_err(|_| CliError::Input(format!("{MAX_BITS_VAR}={v:?} is not a bit count"))),
        Err(_) => Ok(None),
    }
}

fn emit(out: Option<&Path>, text: &str) -> Result<(), CliError> {
    match out {
        Some(p) => std::fs::write(p, text).map_err(|e| CliError::Input(format!("{}: {e}", p.display()))),
        None => std::io::stdout()
            .write_all(text.as_bytes())
            .map_err(|e| CliError::Input(e.to_string())),
    }
}

fn render_json(v: &serde_json::Value) -> String {
    let mut s = serde_json::to_string_pretty(v).expect("values serialize");
    s.push('\n');
    s
}

fn run_command(cli: &Cli, report: &mut Report) -> Result<(), CliError> {
    let mut load = |path: &Path| -> Result<Object, CliError> {
        let (o, digest) = read_input(path)?;
        report.input_digest = Some(digest);
        Ok(o)
    };
    match &cli.command {
        Command::Chains { input } => {
            let o = load(input)?;
            commands::chains(report, o)
        }
        Command::Nerve { input, trunc } => {
            let o = load(input)?;
            commands::nerve(report, o, *trunc)
        }
        Command::Classify { input } => {
            let o = load(input)?;
            commands::classify_cmd(report, o)
        }
        Command::Homology { input } => {
            let o = load(input)?;
            commands::homology(report, o)
        }
        Command::Verify { input } => {
            let o = load(input)?;
            commands::verify(report, o)
        }
        Command::Roundtrip {
            input,
            trunc,
            gen,
            seed,
            max_rank,
            flip_delta,
        } => {
            let b = if *gen {
                let seed = seed.expect("clap enforces --seed");
                let params = GenParams {
                    trunc: trunc + 1,
                    max_rank: *max_rank,
                    entry_bound: 2,
                };
                report.note("seed", seed);
                match commands::generate(seed, params) {
                    Object::Duchain(b) => b,
                    _ => unreachable!("generator yields duchains"),
                }
            } else {
                let path = input
                    .as_ref()
                    .ok_or_else(|| CliError::Input("roundtrip needs an input file or --gen".into()))?;
                commands::roundtrip_input(load(path)?)?
            };
            commands::roundtrip(report, &b, *trunc, *flip_delta)
        }
        Command::Gen { .. } => unreachable!("handled separately"),
    }
}

fn run(cli: &Cli) -> Result<i32, CliError> {
    let cap = max_bits()?;
    if let Command::Gen {
        seed,
        trunc,
        max_rank,
        entry_bound,
    } = &cli.command
    {
        let params = GenParams {
            trunc: *trunc,
            max_rank: *max_rank,
            entry_bound: *entry_bound,
        };
        let o = commands::generate(*seed, params);
        let v = o.to_value();
        if let Some(cap) = cap {
            let bits = max_entry_bits(&v);
            if bits > cap {
                return Err(CliError::Math(format!("entries reach {bits} bits, over {MAX_BITS_VAR}={cap}")));
            }
        }
        let text = match (&o, cli.format) {
            (Object::Duchain(b), Format::Text) => commands::describe_duchain(b),
            _ => render_json(&v),
        };
        emit(cli.out.as_deref(), &text)?;
        return Ok(0);
    }

    let mut report = Report {
        command: std::iter::once("dukan".to_owned()).chain(std::env::args().skip(1)).collect(),
        ..Report::default()
    };
    match run_command(cli, &mut report) {
        Ok(()) => {}
        Err(e @ CliError::Input(_)) => return Err(e),
        Err(CliError::Math(m)) => report.error = Some(m),
    }
    if let Some(cap) = cap {
        let mut body = report.to_value();
        body["command"] = serde_json::Value::Null;
        let bits = max_entry_bits(&body);
        if bits > cap {
            report.degrees.clear();
            report.failures.clear();
            report.object = None;
            report.error = Some(format!("entries reach {bits} bits, over {MAX_BITS_VAR}={cap}"));
        }
    }
    let text = match cli.format {
        Format::Json => render_json(&report.to_value()),
        Format::Text => report.to_text(),
    };
    emit(cli.out.as_deref(), &text)?;
    Ok(if report.passed() { 0 } else { 1 })
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(&cli) {
        Ok(code) => ExitCode::from(code as u8),
        Err(e) => {
            eprintln!("dukan: {}", e.message());
            ExitCode::from(e.exit_code() as u8)
        }
    }
}
