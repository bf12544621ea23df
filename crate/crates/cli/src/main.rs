//! `hjelmslev`: generation, construction, transformation and verification
//! of Hjelmslev planes over the INC, OA and CHOICES text formats.
//!
//! Exit codes: 0 success, 1 verification failure, 2 input or format error.

use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand};

mod commands;

#[derive(Parser)]
#[command(name = "hjelmslev", version, about = "Build and check 2-uniform Hjelmslev planes")]
struct Cli {
    /// Worker threads for the verification loops (default: all cores).
    /// Never changes output bytes.
    #[arg(long, global = true)]
    threads: Option<usize>,

    /// Human-readable notes on standard error.
    #[arg(long, short, global = true)]
    verbose: bool,

    #[command(subcommand)]
    command: Command,
}

#[derive(Args)]
pub struct Seeds {
    /// Neighbourhood affine plane(s); one file is used for every point.
    #[arg(long = "affine", required = true)]
    pub affine: Vec<PathBuf>,
    /// Orthogonal array(s); one file is used for every line.
    #[arg(long = "oa", required = true)]
    pub oa: Vec<PathBuf>,
    /// `canonical`, `random` (with --seed) or a CHOICES file.
    #[arg(long, default_value = "canonical")]
    pub choices: String,
    #[arg(long)]
    pub seed: Option<u64>,
    /// Write the ledger actually used.
    #[arg(long)]
    pub emit_choices: Option<PathBuf>,
}

#[derive(Subcommand)]
pub enum Command {
    /// Desarguesian projective plane PG(2, m).
    GenPp {
        #[arg(long)]
        order: usize,
        /// Irreducible modulus, coefficients lowest first (e.g. "1 1 1").
        #[arg(long)]
        modulus: Option<String>,
        #[arg(short)]
        o: PathBuf,
    },
    /// Affine plane: a projective plane with one line deleted.
    GenAp {
        #[arg(long)]
        projective: PathBuf,
        #[arg(long, default_value_t = 0)]
        line: usize,
        #[arg(short)]
        o: PathBuf,
    },
    /// Orthogonal array from an affine plane's parallel classes.
    GenOa {
        #[arg(long)]
        affine: PathBuf,
        /// Keep only the first k columns (default m+1).
        #[arg(long)]
        columns: Option<usize>,
        #[arg(short)]
        o: PathBuf,
    },
    /// Adds one column to an OA(2, m, m).
    CompleteOa {
        #[arg(long)]
        oa: PathBuf,
        #[arg(short)]
        o: PathBuf,
    },
    /// Projective Hjelmslev plane from a projective base plane.
    ConstructPh {
        #[arg(long)]
        base: PathBuf,
        #[command(flatten)]
        seeds: Seeds,
        #[arg(short)]
        o: PathBuf,
    },
    /// Affine Hjelmslev plane from an affine base plane.
    ConstructAh {
        #[arg(long)]
        base: PathBuf,
        #[command(flatten)]
        seeds: Seeds,
        #[arg(short)]
        o: PathBuf,
    },
    /// Removes one line neighbourhood (and its points) from a projective
    /// Hjelmslev plane.
    Truncate {
        input: PathBuf,
        /// Line neighbourhood index, in order of smallest member line.
        #[arg(long)]
        line: usize,
        #[arg(short)]
        o: PathBuf,
    },
    /// Rebuilds an affine Hjelmslev plane from its seeds and ledger and
    /// extends it to a projective one.
    Extend {
        #[arg(long)]
        base: PathBuf,
        #[command(flatten)]
        seeds: Seeds,
        /// Neighbourhood planes for the new points (default: the first --affine).
        #[arg(long)]
        new_affine: Vec<PathBuf>,
        /// Array for the line at infinity (default: completion of the first --oa).
        #[arg(long)]
        infinity_oa: Option<PathBuf>,
        #[arg(short)]
        o: PathBuf,
    },
    /// Checks a structure; prints a report.
    Verify {
        input: PathBuf,
        #[arg(long, group = "kind")]
        ph: bool,
        #[arg(long, group = "kind")]
        ah: bool,
        #[arg(long, group = "kind")]
        uniform: bool,
    },
    /// The neighbourhood of a point with its restricted lines.
    Restrict {
        input: PathBuf,
        #[arg(long)]
        point: usize,
        #[arg(short)]
        o: Option<PathBuf>,
    },
    /// Isomorphism-screening invariants.
    Fingerprint { input: PathBuf },
    /// Counts and canonical digest.
    Info { input: PathBuf },
}

pub enum Failure {
    Input(String),
    Verification,
}

impl From<hjelmslev_core::Error> for Failure {
    fn from(e: hjelmslev_core::Error) -> Self {
        Failure::Input(e.to_string())
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    if let Some(n) = cli.threads {
        if n == 0 {
            eprintln!("error: --threads must be positive");
            return ExitCode::from(2);
        }
        if let Err(e) = hjelmslev_core::par::init_threads(n) {
            eprintln!("error: {e}");
            return ExitCode::from(2);
        }
    }
    match commands::run(cli.command, cli.verbose) {
        Ok(()) => ExitCode::SUCCESS,
        Err(Failure::Verification) => ExitCode::from(1),
        Err(Failure::Input(msg)) => {
            eprintln!("error: {msg}");
            ExitCode::from(2)
        }
    }
}
