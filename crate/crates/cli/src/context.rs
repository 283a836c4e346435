//! Resolved command-line options shared by every command.

use std::path::Path;

use slicebound_bounds::BoundName;
use slicebound_decomp::{Subspace, Tolerances};
use slicebound_oracle::MIN_SAMPLES;

use crate::args::{BodyKind, Format, OracleMode, Options};
use crate::error::{CliError, Result};
use crate::fixture::{parse_subspace_arg, BodySpec, Fixture, Section};

/// Which bounds were asked for. `All` tolerates failed hypotheses in the exit code
/// unless `--force` is set; an explicit list does not.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum BoundSelection {
    All,
    Listed(Vec<BoundName>),
}

impl BoundSelection {
    pub fn parse(arg: &str) -> Result<Self> {
        if arg.trim() == "all" {
            return Ok(BoundSelection::All);
        }
        let names = arg
            .split(',')
            .map(str::trim)
            .filter(|s| !s.is_empty())
            .map(|s| s.parse::<BoundName>())
            .collect::<std::result::Result<Vec<_>, _>>()?;
        if names.is_empty() {
            return Err(CliError::usage(format!(
                "--bounds is empty; valid names: all, {}",
                BoundName::valid_names()
            )));
        }
        Ok(BoundSelection::Listed(names))
    }

    pub fn names(&self) -> Vec<BoundName> {
        match self {
            BoundSelection::All => BoundName::ALL.to_vec(),
            BoundSelection::Listed(names) => names.clone(),
        }
    }
}

pub struct Context<'a> {
    pub opts: &'a Options,
    pub tol: Tolerances,
    pub bounds: BoundSelection,
}

impl<'a> Context<'a> {
    pub fn new(opts: &'a Options) -> Result<Self> {
        let mut tol = Tolerances::default();
        for (value, slot, flag) in [
            (opts.tol_identity, &mut tol.identity, "--tol-identity"),
            (opts.tol_proj, &mut tol.proj, "--tol-proj"),
            (opts.tol_unit, &mut tol.unit, "--tol-unit"),
        ] {
            if let Some(v) = value {
                if !(v.is_finite() && v > 0.0) {
                    return Err(CliError::usage(format!("{flag} must be positive, got {v}")));
                }
                *slot = v;
            }
        }
        if !(opts.lambda.is_finite() && opts.lambda > 0.0) {
            return Err(CliError::usage(format!("--lambda must be positive, got {}", opts.lambda)));
        }
        Ok(Self {
            opts,
            tol,
            bounds: BoundSelection::parse(&opts.bounds)?,
        })
    }

    pub fn output(&self) -> Option<&Path> {
        self.opts.output.as_deref()
    }

    pub fn format(&self, default: Format) -> Format {
        self.opts.format.unwrap_or(default)
    }

    pub fn oracle(&self, default: OracleMode) -> OracleMode {
        self.opts.oracle.unwrap_or(default)
    }

    /// Seed and sample count for a Monte-Carlo run, enforcing both preconditions.
    pub fn mc_params(&self) -> Result<(u64, u64)> {
        let seed = self
            .opts
            .seed
            .ok_or_else(|| CliError::usage("Monte-Carlo needs a seed: pass --seed or set SLICEBOUND_SEED"))?;
        if self.opts.samples < MIN_SAMPLES {
            return Err(CliError::usage(format!(
                "--samples must be at least {MIN_SAMPLES} for Monte-Carlo, got {}",
                self.opts.samples
            )));
        }
        Ok((seed, self.opts.samples))
    }

    pub fn seed(&self) -> Result<u64> {
        self.opts
            .seed
            .ok_or_else(|| CliError::usage("random draws need a seed: pass --seed or set SLICEBOUND_SEED"))
    }

    pub fn fixture(&self) -> Result<Fixture> {
        let path = self
            .opts
            .input
            .as_deref()
            .ok_or_else(|| CliError::usage("this command needs --input"))?;
        let mut fixture = Fixture::load(path)?;
        if let Some(arg) = &self.opts.subspace {
            fixture.subspace = Some(parse_subspace_arg(arg)?);
        }
        fixture.body = self.body(&fixture)?;
        Ok(fixture)
    }

    /// Body kind after applying `--body`, `--p` and `--alpha`.
    pub fn body(&self, fixture: &Fixture) -> Result<BodySpec> {
        let fixture_kp = match &fixture.body {
            BodySpec::Kp { p, alphas } => Some((*p, alphas.clone())),
            _ => None,
        };
        let wants_kp = self.opts.p.is_some() || self.opts.body == Some(BodyKind::Kp);
        if !wants_kp {
            if !self.opts.alpha.is_empty() && fixture_kp.is_none() {
                return Err(CliError::usage("--alpha only applies to K_p bodies; add --p"));
            }
            return Ok(match self.opts.body {
                Some(BodyKind::Symmetric) => BodySpec::Symmetric,
                Some(BodyKind::Nonsymmetric) => BodySpec::Nonsymmetric,
                _ => match (fixture_kp, self.opts.alpha.is_empty()) {
                    (Some((p, _)), false) => BodySpec::Kp {
                        p,
                        alphas: Some(self.alphas(fixture.decomposition.len())),
                    },
                    _ => fixture.body.clone(),
                },
            });
        }
        let p = match (self.opts.p, &fixture_kp) {
            (Some(p), _) => p,
            (None, Some((p, _))) => *p,
            (None, None) => return Err(CliError::usage("--body kp needs --p")),
        };
        let alphas = if self.opts.alpha.is_empty() {
            fixture_kp.and_then(|(_, a)| a)
        } else {
            Some(self.alphas(fixture.decomposition.len()))
        };
        Ok(BodySpec::Kp { p, alphas })
    }

    fn alphas(&self, m: usize) -> Vec<f64> {
        match self.opts.alpha.as_slice() {
            [single] => vec![*single; m],
            list => list.to_vec(),
        }
    }

    pub fn section(&self, fixture: &Fixture) -> Result<(Subspace, Section)> {
        let subspace = fixture.subspace()?;
        let section = Section::build(&fixture.decomposition, &fixture.body, &subspace, &self.tol)?;
        Ok((subspace, section))
    }
}
