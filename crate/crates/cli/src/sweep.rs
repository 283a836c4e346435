//! Random configurations evaluated in parallel, emitted in row order.
//!
//! CSV columns, in order:
//! `row, config_digest, body, n, k, m0`, one value column per bound name
//! (in [`BoundName::ALL`] order), `oracle_method, oracle_mean, oracle_std_error`,
//! one `ratio_<name>` column per volume bound (bound / oracle mean), then `gate_failures`.
//! Empty cells mean "not applicable" or "hypothesis failed".

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;
use serde::Serialize;
use slicebound_bodies::{cross_polytope_ball, cube_decomposition, hadamard_decomposition, simplex_decomposition};
use slicebound_bounds::{BoundInputs, BoundName, BoundReport};
use slicebound_decomp::{JohnDecomposition, ProjectionProfile, Subspace};

use crate::args::{Format, OracleMode, SweepArgs, SweepFamily};
use crate::context::Context;
use crate::error::{CliError, Result};
use crate::fixture::{BodySpec, Section};
use crate::output::{fmt_opt, write_csv, write_json};
use crate::verify::volume_oracle;
use crate::Status;

#[derive(Debug, Clone)]
pub struct SweepRow {
    pub row: usize,
    pub config_digest: String,
    pub body: &'static str,
    pub n: usize,
    pub k: usize,
    pub m0: usize,
    pub values: Vec<(BoundName, Option<f64>)>,
    pub oracle_method: Option<&'static str>,
    pub oracle_mean: Option<f64>,
    pub oracle_std_error: Option<f64>,
    pub gate_failures: usize,
}

impl SweepRow {
    pub fn value(&self, name: BoundName) -> Option<f64> {
        self.values.iter().find(|(n, _)| *n == name).and_then(|(_, v)| *v)
    }

    pub fn ratio(&self, name: BoundName) -> Option<f64> {
        Some(self.value(name)? / self.oracle_mean?)
    }
}

fn volume_bounds() -> impl Iterator<Item = BoundName> {
    BoundName::ALL.into_iter().filter(|b| b.quantity() == "volume")
}

pub fn header() -> Vec<String> {
    let mut h: Vec<String> = ["row", "config_digest", "body", "n", "k", "m0"].map(String::from).to_vec();
    h.extend(BoundName::ALL.iter().map(|b| b.to_string()));
    h.extend(["oracle_method", "oracle_mean", "oracle_std_error"].map(String::from));
    h.extend(volume_bounds().map(|b| format!("ratio_{b}")));
    h.push("gate_failures".into());
    h
}

fn csv_row(r: &SweepRow) -> Vec<String> {
    let mut cells = vec![
        r.row.to_string(),
        r.config_digest.clone(),
        r.body.to_owned(),
        r.n.to_string(),
        r.k.to_string(),
        r.m0.to_string(),
    ];
    cells.extend(BoundName::ALL.iter().map(|&b| fmt_opt(r.value(b))));
    cells.push(r.oracle_method.unwrap_or_default().to_owned());
    cells.push(fmt_opt(r.oracle_mean));
    cells.push(fmt_opt(r.oracle_std_error));
    cells.extend(volume_bounds().map(|b| fmt_opt(r.ratio(b))));
    cells.push(r.gate_failures.to_string());
    cells
}

/// What each row draws from.
enum Source {
    Body { decomp: JohnDecomposition, body: BodySpec },
    Profiles { m0: usize },
}

fn source(ctx: &Context, args: &SweepArgs) -> Result<Source> {
    if ctx.opts.input.is_some() {
        let fixture = ctx.fixture()?;
        return Ok(Source::Body {
            body: fixture.body,
            decomp: fixture.decomposition,
        });
    }
    let family = args
        .family
        .ok_or_else(|| CliError::usage("sweep needs --input or --family"))?;
    let need_n = || args.n.ok_or_else(|| CliError::usage("sweep --family needs --n"));
    Ok(match family {
        SweepFamily::Cube => Source::Body {
            decomp: cube_decomposition(need_n()?)?,
            body: BodySpec::Symmetric,
        },
        SweepFamily::Hadamard => Source::Body {
            decomp: hadamard_decomposition(args.k, need_n()?)?,
            body: BodySpec::Symmetric,
        },
        SweepFamily::Simplex => Source::Body {
            decomp: simplex_decomposition(need_n()?)?,
            body: BodySpec::Nonsymmetric,
        },
        SweepFamily::CrossPolytope => {
            let ball = cross_polytope_ball(need_n()?)?;
            Source::Body {
                body: BodySpec::Kp {
                    p: ball.p(),
                    alphas: Some(ball.alphas().to_vec()),
                },
                decomp: ball.decomp().clone(),
            }
        }
        SweepFamily::Profiles => {
            let m0 = args.m0.unwrap_or(2 * args.k);
            if m0 < args.k || m0 > 2 * args.k {
                return Err(CliError::usage(format!(
                    "profiles need k <= m0 <= 2k so that every ctilde_j >= 1/2 fits; got k = {}, m0 = {m0}",
                    args.k
                )));
            }
            Source::Profiles { m0 }
        }
    })
}

/// Random `ctilde` in `[1/2, 1]^m0` summing to `k`, by mass transfers from the uniform point;
/// weights `c_j` drawn in `[ctilde_j, 1]` with `n = m0`.
pub fn random_profile<R: Rng>(rng: &mut R, m0: usize, k: usize) -> Result<ProjectionProfile> {
    let mut tilde = vec![k as f64 / m0 as f64; m0];
    for _ in 0..8 * m0 {
        let i = rng.random_range(0..m0);
        let j = rng.random_range(0..m0);
        if i == j {
            continue;
        }
        let room = (tilde[i] - 0.5).min(1.0 - tilde[j]);
        let amount = rng.random::<f64>() * room;
        tilde[i] -= amount;
        tilde[j] += amount;
    }
    let weights = tilde.iter().map(|&t| t + (1.0 - t) * rng.random::<f64>()).collect();
    Ok(ProjectionProfile::new(m0, k, weights, tilde)?)
}

fn row_rng(seed: u64, row: usize) -> ChaCha8Rng {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    rng.set_stream(row as u64);
    rng
}

fn summarize(row: usize, body: &'static str, n: usize, k: usize, m0: usize, report: &BoundReport) -> SweepRow {
    SweepRow {
        row,
        config_digest: report.metadata.inputs_digest.clone(),
        body,
        n,
        k,
        m0,
        values: BoundName::ALL.iter().map(|&b| (b, report.value(b))).collect(),
        oracle_method: None,
        oracle_mean: None,
        oracle_std_error: None,
        gate_failures: report.gate_failures().count(),
    }
}

fn evaluate_row(ctx: &Context, source: &Source, k: usize, row: usize, seed: u64, mode: OracleMode) -> Result<SweepRow> {
    let mut rng = row_rng(seed, row);
    let names = ctx.bounds.names();
    match source {
        Source::Profiles { m0 } => {
            let profile = random_profile(&mut rng, *m0, k)?;
            let mut inputs = BoundInputs::symmetric(&profile);
            inputs.lambda = ctx.opts.lambda;
            let report = BoundReport::evaluate(&names, &inputs, ctx.opts.force, ctx.tol);
            Ok(summarize(row, "profile", *m0, k, *m0, &report))
        }
        Source::Body { decomp, body } => {
            let subspace = Subspace::random(decomp.dim(), k, &mut rng)?;
            let mc_seed: u64 = rng.random();
            let section = Section::build(decomp, body, &subspace, &ctx.tol)?;
            let report = BoundReport::evaluate(&names, &section.inputs(ctx.opts.lambda), ctx.opts.force, ctx.tol);
            let mut out = summarize(row, body.label(), decomp.dim(), k, section.support_size(), &report);
            let mc = mode.uses_mc().then_some((mc_seed, ctx.opts.samples));
            let oracle = volume_oracle(&section, mode, mc)?;
            if let Some((mean, se, method)) = oracle.reference() {
                out.oracle_method = Some(method);
                out.oracle_mean = Some(mean);
                // Keep the sampling error visible even when the exact value is the reference.
                out.oracle_std_error = Some(oracle.mc.map_or(se, |m| m.std_error));
            }
            Ok(out)
        }
    }
}

/// Rows `0..count`, computed concurrently and returned in index order.
pub fn sweep_rows(ctx: &Context, args: &SweepArgs) -> Result<Vec<SweepRow>> {
    let source = source(ctx, args)?;
    let mode = ctx.oracle(OracleMode::Mc);
    let seed = ctx.seed()?;
    if matches!(source, Source::Body { .. }) && mode.uses_mc() {
        ctx.mc_params()?;
    }
    (0..args.count)
        .into_par_iter()
        .map(|row| evaluate_row(ctx, &source, args.k, row, seed, mode))
        .collect()
}

#[derive(Serialize)]
struct JsonRow<'a> {
    row: usize,
    config_digest: &'a str,
    body: &'a str,
    n: usize,
    k: usize,
    m0: usize,
    values: std::collections::BTreeMap<&'static str, Option<f64>>,
    oracle_method: Option<&'a str>,
    oracle_mean: Option<f64>,
    oracle_std_error: Option<f64>,
    ratios: std::collections::BTreeMap<&'static str, Option<f64>>,
    gate_failures: usize,
}

pub fn sweep(ctx: &Context, args: &SweepArgs) -> Result<Status> {
    let rows = sweep_rows(ctx, args)?;
    match ctx.format(Format::Csv) {
        Format::Csv => {
            let cells: Vec<Vec<String>> = rows.iter().map(csv_row).collect();
            write_csv(&header(), &cells, ctx.output())?;
        }
        Format::Json => {
            let json: Vec<JsonRow> = rows
                .iter()
                .map(|r| JsonRow {
                    row: r.row,
                    config_digest: &r.config_digest,
                    body: r.body,
                    n: r.n,
                    k: r.k,
                    m0: r.m0,
                    values: r.values.iter().map(|(b, v)| (b.as_str(), *v)).collect(),
                    oracle_method: r.oracle_method,
                    oracle_mean: r.oracle_mean,
                    oracle_std_error: r.oracle_std_error,
                    ratios: volume_bounds().map(|b| (b.as_str(), r.ratio(b))).collect(),
                    gate_failures: r.gate_failures,
                })
                .collect();
            write_json(&json, ctx.output())?;
        }
    }
    Ok(Status::Success)
}
