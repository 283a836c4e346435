//! Bounds against ground truth.

use serde::Serialize;
use slicebound_bounds::{BoundName, BoundReport, Direction};
use slicebound_decomp::lift;
use slicebound_oracle::{
    exact_volume_smallk, mc_kp_section, mc_volume, parseval_check_with, v1_oracle, wills_oracle, McEstimate,
    OracleError, ParsevalCheck, ParsevalOptions, MAX_EXACT_DIM,
};

use crate::args::{Format, OracleMode, VerifyTarget};
use crate::commands::{evaluate_report, report_status};
use crate::context::Context;
use crate::error::{CliError, Result};
use crate::fixture::Section;
use crate::output::{fmt_f64, write_csv, write_json};
use crate::Status;

/// How many standard errors a bound may sit on the wrong side of a Monte-Carlo estimate.
pub const SIGMAS: f64 = 3.0;
/// Relative slack against exact references.
pub const EXACT_REL_TOL: f64 = 1e-9;
/// Absolute slack against the discretized mean-width oracle.
pub const MEAN_WIDTH_TOL: f64 = 1e-3;
/// Allowed `|lhs - rhs|` for the Parseval identity.
pub const PARSEVAL_TOL: f64 = 1e-6;

#[derive(Debug, Clone, Default, Serialize)]
pub struct VolumeOracle {
    #[serde(skip_serializing_if = "Option::is_none")]
    pub exact: Option<f64>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub mc: Option<McEstimate>,
    /// `|mc - exact| <= 3 sigma`, when both ran.
    #[serde(skip_serializing_if = "Option::is_none")]
    pub mc_agrees_with_exact: Option<bool>,
    #[serde(skip_serializing_if = "Vec::is_empty")]
    pub unavailable: Vec<String>,
}

impl VolumeOracle {
    /// Reference value and its standard error; exact wins when present.
    pub fn reference(&self) -> Option<(f64, f64, &'static str)> {
        match (self.exact, &self.mc) {
            (Some(v), _) => Some((v, 0.0, "exact")),
            (None, Some(m)) => Some((m.mean, m.std_error, "mc")),
            _ => None,
        }
    }
}

/// Section volume by the requested routes. Unavailable routes are noted, not fatal.
pub fn volume_oracle(section: &Section, mode: OracleMode, mc: Option<(u64, u64)>) -> Result<VolumeOracle> {
    let mut out = VolumeOracle::default();
    let poly = section.polytope();
    if mode.uses_exact() {
        match &poly {
            Some(p) if p.dim <= MAX_EXACT_DIM => out.exact = Some(exact_volume_smallk(p)?),
            Some(p) => out
                .unavailable
                .push(format!("exact volume is limited to dimension {MAX_EXACT_DIM}, section has {}", p.dim)),
            None => out.unavailable.push("exact volume needs a polytope; K_p sections use Monte-Carlo".into()),
        }
    }
    if mode.uses_mc() {
        let (seed, samples) = mc.ok_or_else(|| CliError::usage("Monte-Carlo parameters missing"))?;
        let est = match (&poly, section) {
            (Some(p), _) => mc_volume(p, samples, seed)?,
            (None, Section::Kp(kp)) => mc_kp_section(kp, samples, seed)?,
            (None, _) => unreachable!("symmetric and non-symmetric sections are polytopes"),
        };
        if let Some(exact) = out.exact {
            out.mc_agrees_with_exact = Some(est.agrees_with(exact, SIGMAS));
        }
        out.mc = Some(est);
    }
    Ok(out)
}

#[derive(Debug, Clone, Serialize)]
pub struct Comparison {
    pub bound: BoundName,
    pub direction: Direction,
    pub value: f64,
    pub reference: f64,
    pub std_error: f64,
    pub reference_method: &'static str,
    /// `value / reference`.
    pub ratio: f64,
    pub consistent: bool,
}

/// Upper bounds must not fall below `reference - slack`, lower bounds must not exceed `reference + slack`.
pub fn compare(
    report: &BoundReport,
    quantity: &str,
    reference: f64,
    std_error: f64,
    method: &'static str,
    extra_slack: f64,
) -> Vec<Comparison> {
    let slack = SIGMAS * std_error + EXACT_REL_TOL * reference.abs() + extra_slack;
    report
        .entries
        .iter()
        .filter(|e| e.name.quantity() == quantity)
        .filter_map(|e| e.value.map(|v| (e, v)))
        .map(|(e, value)| Comparison {
            bound: e.name,
            direction: e.direction,
            value,
            reference,
            std_error,
            reference_method: method,
            ratio: value / reference,
            consistent: match e.direction {
                Direction::Upper => value >= reference - slack,
                Direction::Lower => value <= reference + slack,
            },
        })
        .collect()
}

#[derive(Serialize)]
struct VerifyOutput<'a> {
    target: &'static str,
    body: &'static str,
    dim: usize,
    consistent: bool,
    #[serde(skip_serializing_if = "Option::is_none")]
    volume: Option<&'a VolumeOracle>,
    #[serde(skip_serializing_if = "Option::is_none")]
    wills: Option<McEstimate>,
    #[serde(skip_serializing_if = "Option::is_none")]
    mean_width: Option<f64>,
    comparisons: &'a [Comparison],
    report: &'a BoundReport,
}

const COMPARISON_HEADER: [&str; 8] = [
    "bound",
    "direction",
    "value",
    "reference",
    "std_error",
    "reference_method",
    "ratio",
    "consistent",
];

fn comparison_rows(comparisons: &[Comparison]) -> Vec<Vec<String>> {
    comparisons
        .iter()
        .map(|c| {
            vec![
                c.bound.to_string(),
                format!("{:?}", c.direction).to_lowercase(),
                fmt_f64(c.value),
                fmt_f64(c.reference),
                fmt_f64(c.std_error),
                c.reference_method.to_owned(),
                fmt_f64(c.ratio),
                c.consistent.to_string(),
            ]
        })
        .collect()
}

fn polytope_or_err(section: &Section, what: &str) -> Result<slicebound_bodies::HPolytopeSection> {
    section
        .polytope()
        .ok_or_else(|| CliError::usage(format!("verify {what} needs a polytope body (symmetric or nonsymmetric)")))
}

pub fn verify(ctx: &Context, target: VerifyTarget) -> Result<Status> {
    let fixture = ctx.fixture()?;
    let (_, section) = ctx.section(&fixture)?;
    if target == VerifyTarget::Parseval {
        return verify_parseval(ctx, &section);
    }
    let mut report = evaluate_report(ctx, &section);
    let mut volume = None;
    let mut wills = None;
    let mut mean_width = None;
    let comparisons = match target {
        VerifyTarget::Section => {
            let mode = ctx.oracle(OracleMode::Both);
            let mc = if mode.uses_mc() { Some(ctx.mc_params()?) } else { None };
            let oracle = volume_oracle(&section, mode, mc)?;
            if let Some((seed, samples)) = mc {
                report.metadata.seeds.push(seed);
                report.metadata.samples = Some(samples);
            }
            let comps = match oracle.reference() {
                Some((reference, se, method)) => compare(&report, "volume", reference, se, method, 0.0),
                None => Vec::new(),
            };
            volume = Some(oracle);
            comps
        }
        VerifyTarget::Wills => {
            let poly = polytope_or_err(&section, "wills")?;
            let (seed, samples) = ctx.mc_params()?;
            let est = wills_oracle(&poly, ctx.opts.lambda, samples, seed)?;
            report.metadata.seeds.push(seed);
            report.metadata.samples = Some(samples);
            wills = Some(est);
            compare(&report, "wills_functional", est.mean, est.std_error, "mc", 0.0)
        }
        VerifyTarget::MeanWidth => {
            let poly = polytope_or_err(&section, "mean-width")?;
            let v1 = v1_oracle(&poly)?;
            mean_width = Some(v1);
            compare(&report, "first_intrinsic_volume", v1, 0.0, "sphere_average", MEAN_WIDTH_TOL)
        }
        VerifyTarget::Parseval => unreachable!(),
    };
    match ctx.format(Format::Json) {
        Format::Json => write_json(
            &VerifyOutput {
                target: target_name(target),
                body: fixture.body.label(),
                dim: section.dim(),
                consistent: comparisons.iter().all(|c| c.consistent),
                volume: volume.as_ref(),
                wills,
                mean_width,
                comparisons: &comparisons,
                report: &report,
            },
            ctx.output(),
        )?,
        Format::Csv => write_csv(
            &COMPARISON_HEADER.map(String::from),
            &comparison_rows(&comparisons),
            ctx.output(),
        )?,
    }
    Ok(report_status(ctx, &report))
}

fn target_name(target: VerifyTarget) -> &'static str {
    match target {
        VerifyTarget::Section => "section",
        VerifyTarget::Parseval => "parseval",
        VerifyTarget::Wills => "wills",
        VerifyTarget::MeanWidth => "mean_width",
    }
}

#[derive(Serialize)]
struct ParsevalOutput {
    target: &'static str,
    /// `agrees`, `disagrees`, or `unasserted` when the identity's hypotheses fail.
    status: &'static str,
    tolerance: f64,
    #[serde(skip_serializing_if = "Option::is_none")]
    discrepancy: Option<f64>,
    #[serde(skip_serializing_if = "Option::is_none")]
    check: Option<ParsevalCheck>,
    #[serde(skip_serializing_if = "Option::is_none")]
    detail: Option<String>,
}

fn verify_parseval(ctx: &Context, section: &Section) -> Result<Status> {
    let Section::Symmetric(proj) = section else {
        return Err(CliError::usage("verify parseval needs a symmetric body"));
    };
    let lifted = lift(proj, &ctx.tol)?;
    // Only the k > 3 volume and the d >= 3 angular average are sampled.
    let needs_mc = proj.dim() > MAX_EXACT_DIM || lifted.complement_dim() >= 3;
    let mut opts = ParsevalOptions::default();
    if needs_mc {
        let (seed, samples) = ctx.mc_params()?;
        opts.seed = seed;
        opts.samples = samples;
    }
    let (out, status) = match parseval_check_with(proj, &opts) {
        Ok(check) => {
            let agrees = check.agrees(PARSEVAL_TOL);
            (
                ParsevalOutput {
                    target: "parseval",
                    status: if agrees { "agrees" } else { "disagrees" },
                    tolerance: PARSEVAL_TOL,
                    discrepancy: Some(check.discrepancy()),
                    check: Some(check),
                    detail: None,
                },
                Status::Success,
            )
        }
        Err(OracleError::Gate(detail)) => (
            ParsevalOutput {
                target: "parseval",
                status: "unasserted",
                tolerance: PARSEVAL_TOL,
                discrepancy: None,
                check: None,
                detail: Some(detail),
            },
            Status::GateFailure,
        ),
        Err(e) => return Err(e.into()),
    };
    match ctx.format(Format::Json) {
        Format::Json => write_json(&out, ctx.output())?,
        Format::Csv => {
            let header = ["status", "lhs", "lhs_std_error", "rhs", "rhs_error", "discrepancy", "tolerance"]
                .map(String::from);
            let row = match &out.check {
                Some(c) => vec![
                    out.status.to_owned(),
                    fmt_f64(c.lhs),
                    fmt_f64(c.lhs_std_error),
                    fmt_f64(c.rhs),
                    fmt_f64(c.rhs_error),
                    fmt_f64(c.discrepancy()),
                    fmt_f64(PARSEVAL_TOL),
                ],
                None => vec![out.status.to_owned(), String::new(), String::new(), String::new(), String::new(), String::new(), fmt_f64(PARSEVAL_TOL)],
            };
            write_csv(&header, &[row], ctx.output())?;
        }
    }
    Ok(status)
}
