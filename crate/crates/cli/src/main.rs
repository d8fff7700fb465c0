mod commands;
mod config;
mod report;

use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand};

use crate::config::Defaults;
use crate::report::{Format, Report};

#[derive(Debug, Parser)]
#[command(name = "cylrsk", version, about = "Cylindrical dual RSK and periodic TASEP kernels")]
pub struct Cli {
    /// JSON file overriding the numerical defaults (tol, k_cap, quad, radius, seed).
    #[arg(long, global = true)]
    config: Option<PathBuf>,
    /// Write the report here instead of stdout.
    #[arg(long, global = true)]
    out: Option<PathBuf>,
    #[arg(long, global = true, value_enum, default_value_t = Format::Json)]
    format: Format,
    #[command(subcommand)]
    command: Command,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Cylindrical insertion and its inverse.
    #[command(subcommand, name = "cyl-rsk")]
    CylRsk(PairCommand),
    /// Classical dual RSK and its inverse.
    #[command(subcommand)]
    Rsk(PairCommand),
    #[command(subcommand)]
    Tasep(TasepCommand),
    /// Gelfand-Tsetlin and lattice-path encodings.
    #[command(subcommand)]
    Gt(GtCommand),
    /// Flagged Schur inversion and broken-tableau cancellation.
    #[command(subcommand)]
    Schur(SchurCommand),
    /// Transition probability formulas.
    #[command(subcommand)]
    Kernels(KernelCommand),
    /// The acceptance suite.
    #[command(subcommand)]
    Verify(VerifyCommand),
}

#[derive(Debug, Subcommand)]
pub enum PairCommand {
    /// Forward map from an innovation array.
    Run(InputArgs),
    /// Inverse map back to the innovation array.
    Invert(InputArgs),
}

#[derive(Debug, Args)]
pub struct InputArgs {
    #[arg(long)]
    pub input: PathBuf,
}

#[derive(Debug, Subcommand)]
pub enum TasepCommand {
    /// Discrete-time ring TASEP coupled with cylindrical insertion.
    Simulate {
        #[arg(long)]
        n: usize,
        #[arg(long)]
        l: usize,
        #[arg(long)]
        steps: usize,
        /// Jump probability, one value or one per particle.
        #[arg(long, value_delimiter = ',', default_value = "0.5")]
        rate: Vec<f64>,
        #[arg(long)]
        seed: Option<u64>,
    },
    /// Continuous-time transition probability by uniformization.
    Oracle {
        #[command(flatten)]
        pair: ConfigPair,
        #[arg(long)]
        t: f64,
        /// Ring length; the line when absent.
        #[arg(long)]
        l: Option<usize>,
        #[arg(long)]
        tol: Option<f64>,
    },
}

#[derive(Debug, Args)]
pub struct ConfigPair {
    /// Initial configuration, strictly decreasing.
    #[arg(long, value_delimiter = ',', allow_hyphen_values = true, required = true)]
    pub y: Vec<i64>,
    /// Target configuration, strictly decreasing.
    #[arg(long, value_delimiter = ',', allow_hyphen_values = true, required = true)]
    pub x: Vec<i64>,
}

#[derive(Debug, Subcommand)]
pub enum GtCommand {
    /// Tableau (`N`, `L`, `P0`) to pattern.
    Encode(InputArgs),
    /// Pattern back to the tableau.
    Decode(InputArgs),
    /// Pattern to path family, or back with `--invert`.
    Paths {
        #[arg(long)]
        input: PathBuf,
        #[arg(long)]
        invert: bool,
    },
}

#[derive(Debug, Subcommand)]
pub enum SchurCommand {
    /// Checks determinant = enumeration and the inversion sum for all pairs in a box.
    VerifyInversion {
        #[arg(long)]
        n: usize,
        #[arg(long = "box", value_delimiter = ',', required = true)]
        bound: Vec<usize>,
    },
    /// Signed sums over all flagged fillings of `z/x`.
    BrokenSum {
        #[arg(long)]
        n: usize,
        #[arg(long, value_delimiter = ',', required = true)]
        z: Vec<i64>,
        #[arg(long, value_delimiter = ',', required = true)]
        x: Vec<i64>,
    },
}

#[derive(Debug, Args)]
pub struct KernelArgs {
    #[command(flatten)]
    pub pair: ConfigPair,
    #[arg(long)]
    pub t: f64,
    #[arg(long)]
    pub tol: Option<f64>,
}

#[derive(Debug, Args)]
pub struct RingArgs {
    #[command(flatten)]
    pub kernel: KernelArgs,
    #[arg(long)]
    pub n: usize,
    #[arg(long)]
    pub l: usize,
    #[arg(long)]
    pub k_cap: Option<usize>,
}

#[derive(Debug, Subcommand)]
pub enum KernelCommand {
    /// Line determinant formula.
    Schutz(KernelArgs),
    /// Ring formula as a sum over winding vectors.
    Periodic(RingArgs),
    /// Ring formula as a contour integral over Bethe roots.
    Bethe {
        #[command(flatten)]
        ring: RingArgs,
        #[arg(long)]
        radius: Option<f64>,
        #[arg(long)]
        quad: Option<usize>,
    },
    /// Identity and limit sweeps.
    Limits {
        #[arg(long, value_enum)]
        check: commands::LimitCheck,
    },
}

#[derive(Debug, Subcommand)]
pub enum VerifyCommand {
    All {
        #[arg(long)]
        quick: bool,
        #[arg(long)]
        seed: Option<u64>,
    },
    /// Same as `all --quick`.
    Quick {
        #[arg(long)]
        seed: Option<u64>,
    },
}

/// Caps rayon's pool at `CYLRSK_THREADS` when set.
fn init_threads() -> anyhow::Result<()> {
    if let Ok(v) = std::env::var("CYLRSK_THREADS") {
        let n: usize = v
            .parse()
            .map_err(|_| anyhow::anyhow!("CYLRSK_THREADS must be a positive integer"))?;
        rayon::ThreadPoolBuilder::new().num_threads(n).build_global()?;
    }
    Ok(())
}

fn run(cli: Cli) -> anyhow::Result<bool> {
    init_threads()?;
    let defaults = Defaults::load(cli.config.as_deref())?;
    let mut report = Report::new(cli.format, cli.out.as_deref())?;
    let ok = commands::dispatch(cli.command, &defaults, &mut report)?;
    report.finish()?;
    Ok(ok)
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(c) => c,
        Err(e) => {
            let code = if e.use_stderr() { 2 } else { 0 };
            let _ = e.print();
            return ExitCode::from(code);
        }
    };
    match run(cli) {
        Ok(true) => ExitCode::SUCCESS,
        Ok(false) => ExitCode::from(1),
        Err(e) => {
            eprintln!("error: {e:#}");
            ExitCode::from(2)
        }
    }
}
