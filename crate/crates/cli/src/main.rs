//! `gausssep` command-line front end.

mod commands;
mod error;
mod input;

use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};
use gausssep::sampling::SamplingMode;
use gausssep::sweep::{Axis, SweepParam};
use gausssep::Tolerances;

use crate::error::CliError;
use crate::input::Format;

#[derive(Parser)]
#[command(
    name = "gausssep",
    version,
    about = "Physicality, separability and P-representability of two-mode Gaussian states"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Args)]
struct TolArgs {
    /// A criterion holds when its margin is at least -tol_psd.
    #[arg(long, default_value_t = 1e-10)]
    tol_psd: f64,
    /// Relative Hermiticity / layout tolerance for matrix inputs.
    #[arg(long, default_value_t = 1e-12)]
    tol_herm: f64,
    /// Closed-form denominators below this are treated as degenerate.
    #[arg(long, default_value_t = 1e-12)]
    tol_sing: f64,
}

impl TolArgs {
    fn tolerances(&self) -> Tolerances {
        Tolerances {
            psd: self.tol_psd,
            herm: self.tol_herm,
            sing: self.tol_sing,
        }
    }
}

#[derive(Args)]
struct InputArgs {
    /// State records: `{"id"?, "params": {n1, n2, m1?, m2?, ms?, mc?}}` with
    /// complex moments as `[re, im]`, or `{"id"?, "matrix": 4x4 of [re, im]}`.
    #[arg(long)]
    input: PathBuf,
    #[arg(long, value_enum, default_value_t = Format::Jsonl)]
    format: Format,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum MethodArg {
    /// Closed-form bounds, falling back to eigenvalues on degenerate bounds.
    Closed,
    /// Smallest eigenvalue of each shifted matrix.
    Eig,
    /// Both, with a disagreement report; exits 5 on a disagreement.
    Both,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum ModeArg {
    Construct,
    Reject,
}

impl From<ModeArg> for SamplingMode {
    fn from(m: ModeArg) -> Self {
        match m {
            ModeArg::Construct => SamplingMode::Construct,
            ModeArg::Reject => SamplingMode::Reject,
        }
    }
}

fn parse_axis(s: &str) -> Result<Axis, String> {
    let parts: Vec<&str> = s.split(':').collect();
    let [param, min, max, steps] = parts[..] else {
        return Err(format!("expected PARAM:MIN:MAX:STEPS, got {s:?}"));
    };
    let param: SweepParam = param.parse().map_err(|e: gausssep::Error| e.to_string())?;
    let num = |x: &str| x.parse::<f64>().map_err(|e| format!("{x:?}: {e}"));
    let steps = steps
        .parse::<usize>()
        .map_err(|e| format!("{steps:?}: {e}"))?;
    Ok(Axis::new(param, num(min)?, num(max)?, steps))
}

#[derive(Args)]
pub struct SweepArgs {
    /// JSON sweep spec `{n1, m1?, m2?, ms?, mc?, axis1, axis2?}`; defaults to
    /// the S/P fold comparison grid (m1 = 0.5, m2 = 1, mc in [0, 1.2], n1 in
    /// [0.75, 1.5]).
    #[arg(long)]
    spec: Option<PathBuf>,
    #[arg(long)]
    n1: Option<f64>,
    #[arg(long)]
    m1: Option<f64>,
    #[arg(long)]
    m2: Option<f64>,
    #[arg(long)]
    ms: Option<f64>,
    #[arg(long)]
    mc: Option<f64>,
    /// Outer axis as PARAM:MIN:MAX:STEPS, PARAM one of n1, m1, m2, ms, mc.
    #[arg(long, value_parser = parse_axis)]
    axis1: Option<Axis>,
    /// Inner axis as PARAM:MIN:MAX:STEPS.
    #[arg(long, value_parser = parse_axis, conflicts_with = "no_axis2")]
    axis2: Option<Axis>,
    /// Sweep a single axis.
    #[arg(long)]
    no_axis2: bool,
    #[arg(long)]
    output: Option<PathBuf>,
    #[command(flatten)]
    tol: TolArgs,
}

#[derive(Subcommand)]
enum Command {
    /// Classify each input state; one JSON line per state.
    Classify {
        #[command(flatten)]
        input: InputArgs,
        #[arg(long, value_enum, default_value_t = MethodArg::Closed)]
        method: MethodArg,
        #[arg(long)]
        output: Option<PathBuf>,
        #[command(flatten)]
        tol: TolArgs,
    },
    /// Tabulate the n2 folds over a parameter grid as CSV.
    ///
    /// Columns: axis1[,axis2],n2_min_physical,n2_min_separable,n2_min_prep,prep_below_sep_flag.
    /// A header row is always written. Degenerate folds are written as nan;
    /// the flag is 1 where the P-fold lies strictly below the S-fold.
    Sweep(SweepArgs),
    /// Sample physical states and compare both classification routes.
    ///
    /// Writes one JSON line per state and a final `{"summary": ...}` line;
    /// exits 5 on a disagreement or a P-representable entangled state.
    Sample {
        #[arg(long)]
        count: usize,
        #[arg(long, env = "GAUSSSEP_SEED", default_value_t = 0)]
        seed: u64,
        #[arg(long, value_enum, default_value_t = ModeArg::Construct)]
        mode: ModeArg,
        #[arg(long)]
        output: Option<PathBuf>,
        #[command(flatten)]
        tol: TolArgs,
    },
    /// Print the four local symplectic invariants of each state.
    Invariants {
        #[command(flatten)]
        input: InputArgs,
        #[arg(long)]
        output: Option<PathBuf>,
        #[command(flatten)]
        tol: TolArgs,
    },
    /// Apply a local symplectic, or reduce to an invariant form.
    Transform {
        #[command(flatten)]
        input: InputArgs,
        #[arg(long, default_value_t = 0.0, allow_hyphen_values = true)]
        theta1: f64,
        #[arg(long, default_value_t = 0.0, allow_hyphen_values = true)]
        phi1: f64,
        #[arg(long, default_value_t = 0.0, allow_hyphen_values = true)]
        vphi1: f64,
        #[arg(long, default_value_t = 0.0, allow_hyphen_values = true)]
        theta2: f64,
        #[arg(long, default_value_t = 0.0, allow_hyphen_values = true)]
        phi2: f64,
        #[arg(long, default_value_t = 0.0, allow_hyphen_values = true)]
        vphi2: f64,
        /// Ignore the angles and apply the invariant-form reduction; exits 4
        /// if any state cannot be reduced.
        #[arg(long)]
        reduce: bool,
        #[arg(long)]
        output: Option<PathBuf>,
        #[command(flatten)]
        tol: TolArgs,
    },
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let result = match cli.command {
        Command::Classify {
            input,
            method,
            output,
            tol,
        } => commands::classify(
            &input.input,
            input.format,
            method,
            output.as_deref(),
            &tol.tolerances(),
        ),
        Command::Sweep(args) => commands::sweep(&args),
        Command::Sample {
            count,
            seed,
            mode,
            output,
            tol,
        } => commands::sample(
            count,
            seed,
            mode.into(),
            output.as_deref(),
            &tol.tolerances(),
        ),
        Command::Invariants { input, output, tol } => commands::invariants(
            &input.input,
            input.format,
            output.as_deref(),
            &tol.tolerances(),
        ),
        Command::Transform {
            input,
            theta1,
            phi1,
            vphi1,
            theta2,
            phi2,
            vphi2,
            reduce,
            output,
            tol,
        } => {
            let angles = gausssep::symplectic::LocalAngles {
                theta1,
                phi1,
                vphi1,
                theta2,
                phi2,
                vphi2,
            };
            commands::transform(
                &input.input,
                input.format,
                (!reduce).then_some(angles),
                output.as_deref(),
                &tol.tolerances(),
            )
        }
    };
    match result {
        Ok(()) | Err(CliError::BrokenPipe) => ExitCode::SUCCESS,
        Err(e) => {
            eprintln!("gausssep: {e}");
            e.exit_code()
        }
    }
}
