use std::collections::BTreeMap;

use serde::Serialize;
use slicebound_bodies::{
    cross_polytope_ball, cube_decomposition, hadamard_decomposition, simplex_decomposition,
    standard_basis_decomposition,
};
use slicebound_bounds::BoundReport;
use slicebound_decomp::{lift, SubspaceSpec, ValidationReport};

use crate::args::{Family, Format};
use crate::context::{BoundSelection, Context};
use crate::error::{CliError, Result};
use crate::fixture::{BodySpec, Fixture, Section};
use crate::output::{fmt_f64, fmt_opt, write_csv, write_json};
use crate::Status;

#[derive(Serialize)]
struct ValidateOutput<'a> {
    valid: bool,
    dim: usize,
    vectors: usize,
    centered: bool,
    report: &'a ValidationReport,
}

pub fn validate(ctx: &Context) -> Result<Status> {
    let fixture = ctx.fixture()?;
    let d = &fixture.decomposition;
    let report = d.validate(&ctx.tol);
    match ctx.format(Format::Json) {
        Format::Json => write_json(
            &ValidateOutput {
                valid: report.passed(),
                dim: d.dim(),
                vectors: d.len(),
                centered: d.centered(),
                report: &report,
            },
            ctx.output(),
        )?,
        Format::Csv => {
            let header = ["check", "residual", "tolerance", "passed"].map(String::from);
            let rows: Vec<Vec<String>> = report
                .checks
                .iter()
                .map(|c| vec![c.name.clone(), fmt_f64(c.residual), fmt_f64(c.tolerance), c.passed.to_string()])
                .collect();
            write_csv(&header, &rows, ctx.output())?;
        }
    }
    Ok(if report.passed() { Status::Success } else { Status::Invalid })
}

#[derive(Serialize)]
struct LiftSummary {
    complement_dim: usize,
    complement_rank: usize,
    frame_residual: f64,
    embedding_residual: f64,
    complement_residual: f64,
}

#[derive(Serialize)]
#[serde(tag = "body", rename_all = "snake_case")]
enum ProjectOutput {
    Symmetric {
        #[serde(flatten)]
        projection: ProjectionSummary,
    },
    Kp {
        p: f64,
        alphas: Vec<f64>,
        #[serde(flatten)]
        projection: ProjectionSummary,
    },
    Nonsymmetric {
        base_dim: usize,
        section_dim: usize,
        kappa: Vec<f64>,
        min_kappa: f64,
        identity_residual: f64,
        apex_residual: f64,
        delta_sum_residual: f64,
        kappa_sum_residual: f64,
    },
}

#[derive(Serialize)]
struct ProjectionSummary {
    ambient_dim: usize,
    dim: usize,
    m0: usize,
    support: Vec<usize>,
    weights: Vec<f64>,
    tilde_weights: Vec<f64>,
    thresholds: Vec<f64>,
    near_threshold: Vec<usize>,
    identity_residual: f64,
    trace_residual: f64,
    valid: bool,
    #[serde(skip_serializing_if = "Option::is_none")]
    lift: Option<LiftSummary>,
    #[serde(skip_serializing_if = "Option::is_none")]
    lift_error: Option<String>,
}

fn summarize(proj: &slicebound_decomp::ProjectedDecomposition, ctx: &Context) -> ProjectionSummary {
    let (lift, lift_error) = match lift(proj, &ctx.tol) {
        Ok(l) => (
            Some(LiftSummary {
                complement_dim: l.complement_dim(),
                complement_rank: l.complement_rank(),
                frame_residual: l.frame_residual(),
                embedding_residual: l.embedding_residual(),
                complement_residual: l.complement_residual(),
            }),
            None,
        ),
        Err(e) => (None, Some(e.to_string())),
    };
    ProjectionSummary {
        ambient_dim: proj.ambient_dim(),
        dim: proj.dim(),
        m0: proj.m0(),
        support: proj.support().to_vec(),
        weights: proj.weights().to_vec(),
        tilde_weights: proj.tilde_weights().to_vec(),
        thresholds: proj.thresholds().to_vec(),
        near_threshold: proj.near_threshold().to_vec(),
        identity_residual: proj.identity_residual(),
        trace_residual: proj.trace_residual(),
        valid: proj.is_valid(&ctx.tol),
        lift,
        lift_error,
    }
}

pub fn project(ctx: &Context) -> Result<Status> {
    if ctx.format(Format::Json) == Format::Csv {
        return Err(CliError::usage("project writes JSON only"));
    }
    let fixture = ctx.fixture()?;
    let (_, section) = ctx.section(&fixture)?;
    let out = match &section {
        Section::Symmetric(proj) => ProjectOutput::Symmetric {
            projection: summarize(proj, ctx),
        },
        Section::Kp(kp) => ProjectOutput::Kp {
            p: kp.p(),
            alphas: kp.alphas().to_vec(),
            projection: summarize(kp.projection(), ctx),
        },
        Section::Nonsymmetric(nl) => ProjectOutput::Nonsymmetric {
            base_dim: nl.base_dim(),
            section_dim: nl.section_dim(),
            kappa: nl.kappa().to_vec(),
            min_kappa: nl.min_kappa(),
            identity_residual: nl.identity_residual(),
            apex_residual: nl.apex_residual(),
            delta_sum_residual: nl.delta_sum_residual(),
            kappa_sum_residual: nl.kappa_sum_residual(),
        },
    };
    write_json(&out, ctx.output())?;
    Ok(Status::Success)
}

/// Exit status for a finished report: explicit requests and forced runs report failed hypotheses.
pub fn report_status(ctx: &Context, report: &BoundReport) -> Status {
    let counts = match ctx.bounds {
        BoundSelection::Listed(_) => true,
        BoundSelection::All => ctx.opts.force,
    };
    if counts && report.gate_failures().next().is_some() {
        Status::GateFailure
    } else {
        Status::Success
    }
}

pub fn evaluate_report(ctx: &Context, section: &Section) -> BoundReport {
    BoundReport::evaluate(
        &ctx.bounds.names(),
        &section.inputs(ctx.opts.lambda),
        ctx.opts.force,
        ctx.tol,
    )
}

#[derive(Serialize)]
struct BoundOutput<'a> {
    body: &'static str,
    ambient_dim: usize,
    dim: usize,
    m0: usize,
    /// Bound name to value; `null` where the hypothesis failed without `--force`.
    values: BTreeMap<&'static str, Option<f64>>,
    report: &'a BoundReport,
}

pub const BOUND_CSV_HEADER: [&str; 9] = [
    "name",
    "direction",
    "quantity",
    "value",
    "gate_satisfied",
    "forced",
    "required_condition",
    "inputs_digest",
    "note",
];

pub fn bound_csv_rows(report: &BoundReport) -> Vec<Vec<String>> {
    let mut rows: Vec<Vec<String>> = report
        .entries
        .iter()
        .map(|e| {
            vec![
                e.name.to_string(),
                format!("{:?}", e.direction).to_lowercase(),
                e.name.quantity().to_owned(),
                fmt_opt(e.value),
                e.gate.satisfied.to_string(),
                e.forced.to_string(),
                e.gate.required_condition.clone(),
                e.inputs_digest.clone(),
                String::new(),
            ]
        })
        .collect();
    rows.extend(report.skipped.iter().map(|s| {
        vec![
            s.name.to_string(),
            format!("{:?}", s.name.direction()).to_lowercase(),
            s.name.quantity().to_owned(),
            String::new(),
            String::new(),
            String::new(),
            String::new(),
            String::new(),
            s.reason.clone(),
        ]
    }));
    rows
}

pub fn bound(ctx: &Context) -> Result<Status> {
    let fixture = ctx.fixture()?;
    let (_, section) = ctx.section(&fixture)?;
    let report = evaluate_report(ctx, &section);
    match ctx.format(Format::Json) {
        Format::Json => {
            let values = report.entries.iter().map(|e| (e.name.as_str(), e.value)).collect();
            write_json(
                &BoundOutput {
                    body: fixture.body.label(),
                    ambient_dim: section.ambient_dim(),
                    dim: section.dim(),
                    m0: section.support_size(),
                    values,
                    report: &report,
                },
                ctx.output(),
            )?;
        }
        Format::Csv => write_csv(&BOUND_CSV_HEADER.map(String::from), &bound_csv_rows(&report), ctx.output())?,
    }
    Ok(report_status(ctx, &report))
}

fn require(value: Option<usize>, flag: &str, family: &str) -> Result<usize> {
    value.ok_or_else(|| CliError::usage(format!("construct {family} needs {flag}")))
}

fn leading(k: usize) -> SubspaceSpec {
    SubspaceSpec::Coordinate {
        coordinate: (0..k).collect(),
    }
}

pub fn construct_fixture(family: Family, n: Option<usize>, k: Option<usize>) -> Result<Fixture> {
    let fixture = match family {
        Family::Hadamard => {
            let k = require(k, "--k", "hadamard")?;
            let n = require(n, "--n", "hadamard")?;
            Fixture {
                name: Some(format!("hadamard k={k} n={n}")),
                subspace: Some(leading(k)),
                ..Fixture::new(hadamard_decomposition(k, n)?)
            }
        }
        Family::Cube | Family::StandardBasis | Family::Simplex | Family::CrossPolytope => {
            let n = require(n, "--n", "this family")?;
            let (name, decomposition, body) = match family {
                Family::Cube => ("cube", cube_decomposition(n)?, BodySpec::Symmetric),
                Family::StandardBasis => ("standard-basis", standard_basis_decomposition(n)?, BodySpec::Symmetric),
                Family::Simplex => ("simplex", simplex_decomposition(n)?, BodySpec::Nonsymmetric),
                _ => {
                    let ball = cross_polytope_ball(n)?;
                    let body = BodySpec::Kp {
                        p: ball.p(),
                        alphas: Some(ball.alphas().to_vec()),
                    };
                    ("cross-polytope", ball.decomp().clone(), body)
                }
            };
            Fixture {
                name: Some(format!("{name} n={n}")),
                decomposition,
                subspace: k.map(leading),
                body,
            }
        }
    };
    Ok(fixture)
}

pub fn construct(ctx: &Context, family: Family, n: Option<usize>, k: Option<usize>) -> Result<Status> {
    if ctx.format(Format::Json) == Format::Csv {
        return Err(CliError::usage("construct writes JSON only"));
    }
    write_json(&construct_fixture(family, n, k)?, ctx.output())?;
    Ok(Status::Success)
}
