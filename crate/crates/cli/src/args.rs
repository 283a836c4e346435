use std::path::PathBuf;

use clap::{Args, Parser, Subcommand, ValueEnum};

#[derive(Debug, Parser)]
#[command(name = "slicebound", version, about = "Volume bounds for sections of convex bodies in John position")]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
    #[command(flatten)]
    pub opts: Options,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Check that the input resolves the identity.
    Validate,
    /// Project the decomposition onto the subspace and lift it.
    Project,
    /// Evaluate bounds on the section.
    Bound,
    /// Compare bounds with oracle estimates.
    Verify {
        #[arg(value_enum, default_value_t = VerifyTarget::Section)]
        target: VerifyTarget,
    },
    /// Emit a canonical fixture.
    Construct {
        #[arg(value_enum)]
        family: Family,
        /// Ambient dimension.
        #[arg(long)]
        n: Option<usize>,
        /// Section dimension; adds a leading-coordinate subspace.
        #[arg(long)]
        k: Option<usize>,
    },
    /// Bounds and oracle estimates over random configurations, one CSV row each.
    Sweep(SweepArgs),
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum VerifyTarget {
    Section,
    Parseval,
    Wills,
    MeanWidth,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Family {
    Hadamard,
    Cube,
    Simplex,
    CrossPolytope,
    StandardBasis,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum OracleMode {
    Mc,
    Exact,
    Both,
}

impl OracleMode {
    pub fn uses_mc(self) -> bool {
        matches!(self, OracleMode::Mc | OracleMode::Both)
    }

    pub fn uses_exact(self) -> bool {
        matches!(self, OracleMode::Exact | OracleMode::Both)
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Json,
    Csv,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum BodyKind {
    Symmetric,
    Nonsymmetric,
    Kp,
}

#[derive(Debug, Clone, Args)]
pub struct Options {
    /// Fixture or bare decomposition (JSON).
    #[arg(long, global = true)]
    pub input: Option<PathBuf>,
    /// Subspace as inline JSON or a path; overrides the fixture's.
    #[arg(long, global = true)]
    pub subspace: Option<String>,
    /// Comma-separated bound names, or `all`.
    #[arg(long, global = true, default_value = "all")]
    pub bounds: String,
    /// Oracle used by `verify` and `sweep` (default: both for verify, mc for sweep).
    #[arg(long, value_enum, global = true)]
    pub oracle: Option<OracleMode>,
    /// Monte-Carlo sample count (at least 1000).
    #[arg(long, global = true, default_value_t = 200_000)]
    pub samples: u64,
    /// Seed for every random draw; required whenever Monte-Carlo runs.
    #[arg(long, global = true, env = "SLICEBOUND_SEED")]
    pub seed: Option<u64>,
    /// Operator-norm slack for identity-resolution checks [default: 1e-8]
    #[arg(long, global = true)]
    pub tol_identity: Option<f64>,
    /// Relative cutoff on |P_H v_j| for an index to count as supported [default: 1e-9]
    #[arg(long, global = true)]
    pub tol_proj: Option<f64>,
    /// Allowed deviation of |v_j| from 1 [default: 1e-9]
    #[arg(long, global = true)]
    pub tol_unit: Option<f64>,
    /// Evaluate bounds even when their hypotheses fail (exit code stays 2).
    #[arg(long, global = true)]
    pub force: bool,
    /// Write here instead of stdout.
    #[arg(long, global = true)]
    pub output: Option<PathBuf>,
    /// Output format (default: csv for sweep, json otherwise).
    #[arg(long, value_enum, global = true)]
    pub format: Option<Format>,
    /// Override the fixture's body kind.
    #[arg(long, value_enum, global = true)]
    pub body: Option<BodyKind>,
    /// Exponent of the K_p ball; implies `--body kp`.
    #[arg(long, global = true)]
    pub p: Option<f64>,
    /// K_p coefficients: one value for all, or a comma-separated list.
    #[arg(long, global = true, value_delimiter = ',')]
    pub alpha: Vec<f64>,
    /// Dilation for the Wills functional.
    #[arg(long, global = true, default_value_t = 1.0)]
    pub lambda: f64,
}

#[derive(Debug, Clone, Args)]
pub struct SweepArgs {
    /// Number of random configurations.
    #[arg(long)]
    pub count: usize,
    /// Section dimension.
    #[arg(long)]
    pub k: usize,
    /// Built-in body used when no `--input` is given.
    #[arg(long, value_enum)]
    pub family: Option<SweepFamily>,
    /// Ambient dimension of the built-in body.
    #[arg(long)]
    pub n: Option<usize>,
    /// Support size for `--family profiles`.
    #[arg(long)]
    pub m0: Option<usize>,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum SweepFamily {
    Cube,
    CrossPolytope,
    Simplex,
    Hadamard,
    /// Random projected systems with every `ctilde_j >= 1/2` (bounds only, no oracle).
    Profiles,
}
