//! Command-line arguments.

use std::path::PathBuf;

use clap::{Args, Parser, Subcommand};
use khseq::complex::Ring;

#[derive(Debug, Parser)]
#[command(name = "khseq", version, about = "Khovanov homology of strongly invertible knots and the Tate spectral sequence")]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
    /// Also write the report as JSON to this path.
    #[arg(long, global = true, value_name = "PATH")]
    pub json: Option<PathBuf>,
    /// Size of the worker pool (default: available parallelism).
    #[arg(long, global = true, value_name = "N")]
    pub threads: Option<usize>,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Khovanov homology of the intravergent lift.
    Kh(Common),
    /// Annular Khovanov homology of both quotients.
    Akh(Common),
    /// The closures of the tangle: both quotients and the kink closure.
    Quotients(Input),
    /// Crossing counts, Δ, W and W − Δ.
    Invariants(Input),
    /// Ranks of f⁺ and f⁻ on annular homology.
    Fplus(Common),
    /// Homology of the pair cone, grouped by the quantum grading it predicts.
    Cone(Common),
    /// Collapsed Tate homology and the truncated spectral sequence per quantum grading.
    Tate(Common),
    /// Checks the spectral sequence statement in every quantum grading.
    Verify(Common),
    /// State-sum polynomials against homology Euler characteristics.
    Euler(Common),
    /// Applies the axis wrap move and prints the new tangle.
    Wrap(WrapArgs),
}

#[derive(Debug, Args)]
pub struct Input {
    /// Tangle file (text, or the JSON mirror when the name ends in `.json`).
    pub file: PathBuf,
}

#[derive(Debug, Args)]
pub struct Common {
    #[command(flatten)]
    pub input: Input,
    /// Coefficient ring.
    #[arg(long, default_value = "F2")]
    pub ring: Ring,
    /// Smallest quantum grading of Kh(K) to compute.
    #[arg(long, value_name = "J", allow_negative_numbers = true)]
    pub qmin: Option<i32>,
    /// Largest quantum grading of Kh(K) to compute.
    #[arg(long, value_name = "J", allow_negative_numbers = true)]
    pub qmax: Option<i32>,
    /// Lower bound on the truncation window of the Tate spectral sequence.
    #[arg(long, value_name = "N", default_value_t = 0)]
    pub window: usize,
}

#[derive(Debug, Args)]
pub struct WrapArgs {
    #[command(flatten)]
    pub input: Input,
    /// Undo a wrap instead.
    #[arg(long)]
    pub unwrap: bool,
    /// Number of moves.
    #[arg(long, default_value_t = 1, value_name = "N")]
    pub times: usize,
    /// Write the resulting tangle to this path.
    #[arg(long, value_name = "PATH")]
    pub output: Option<PathBuf>,
}
