//! Command-line driver for the slicebound workspace.
//!
//! [`run`] executes one parsed command line and reports how it ended; the
//! binary turns that into the process exit code (0 success, 1 structural
//! error, 2 failed hypothesis).

pub mod args;
mod commands;
mod context;
mod error;
pub mod fixture;
pub mod output;
pub mod sweep;
pub mod verify;

pub use args::Cli;
pub use commands::construct_fixture;
pub use context::{BoundSelection, Context};
pub use error::{CliError, Result};

use args::Command;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Status {
    Success,
    /// The input failed validation; the report was still written.
    Invalid,
    /// A requested bound's hypothesis failed; values computed under `--force` were still written.
    GateFailure,
}

impl Status {
    pub fn exit_code(self) -> i32 {
        match self {
            Status::Success => 0,
            Status::Invalid => 1,
            Status::GateFailure => 2,
        }
    }
}

pub fn run(cli: &Cli) -> Result<Status> {
    let ctx = Context::new(&cli.opts)?;
    match &cli.command {
        Command::Validate => commands::validate(&ctx),
        Command::Project => commands::project(&ctx),
        Command::Bound => commands::bound(&ctx),
        Command::Verify { target } => verify::verify(&ctx, *target),
        Command::Construct { family, n, k } => commands::construct(&ctx, *family, *n, *k),
        Command::Sweep(args) => sweep::sweep(&ctx, args),
    }
}
