//! Input files: a decomposition plus an optional subspace and body kind.

use std::fs;
use std::path::Path;

use serde::{Deserialize, Serialize};
use serde_json::Value;
use slicebound_bodies::{nonsym_section_polytope, section_polytope, HPolytopeSection, KpBall, KpSection};
use slicebound_bounds::BoundInputs;
use slicebound_decomp::{
    lift_nonsymmetric, project, JohnDecomposition, NonsymLift, ProjectedDecomposition, Subspace, SubspaceSpec,
    Tolerances,
};

use crate::error::{CliError, Result};

/// Which convex body the decomposition describes.
#[derive(Debug, Clone, Default, PartialEq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "snake_case", deny_unknown_fields)]
pub enum BodySpec {
    /// `{x : |<x, v_j>| <= 1}`.
    #[default]
    Symmetric,
    /// `{x : <x, v_j> <= 1}` for a centered system.
    Nonsymmetric,
    /// Unit ball of `(sum_j alpha_j |<x, v_j>|^p)^(1/p)`; `alphas` default to 1.
    Kp {
        p: f64,
        #[serde(default, skip_serializing_if = "Option::is_none")]
        alphas: Option<Vec<f64>>,
    },
}

impl BodySpec {
    pub fn label(&self) -> &'static str {
        match self {
            BodySpec::Symmetric => "symmetric",
            BodySpec::Nonsymmetric => "nonsymmetric",
            BodySpec::Kp { .. } => "kp",
        }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct Fixture {
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub name: Option<String>,
    pub decomposition: JohnDecomposition,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub subspace: Option<SubspaceSpec>,
    #[serde(default)]
    pub body: BodySpec,
}

impl Fixture {
    pub fn new(decomposition: JohnDecomposition) -> Self {
        Self {
            name: None,
            decomposition,
            subspace: None,
            body: BodySpec::Symmetric,
        }
    }

    /// Accepts either a full fixture object or a bare decomposition
    /// (`{"dim", "vectors", "weights", "centered"}`).
    pub fn from_json(text: &str, origin: &str) -> Result<Self> {
        let value: Value = serde_json::from_str(text).map_err(|e| CliError::Json {
            origin: origin.to_owned(),
            message: e.to_string(),
        })?;
        let is_fixture = value.as_object().is_some_and(|o| o.contains_key("decomposition"));
        if is_fixture {
            serde_path_to_error::deserialize(value).map_err(|e| CliError::json(origin, e))
        } else {
            let decomposition = serde_path_to_error::deserialize(value).map_err(|e| CliError::json(origin, e))?;
            Ok(Self::new(decomposition))
        }
    }

    pub fn load(path: &Path) -> Result<Self> {
        let origin = path.display().to_string();
        let text = fs::read_to_string(path).map_err(|e| CliError::io(&origin, e))?;
        Self::from_json(&text, &origin)
    }

    pub fn subspace(&self) -> Result<Subspace> {
        let n = self.decomposition.dim();
        Ok(match &self.subspace {
            Some(spec) => spec.build(n)?,
            None => Subspace::full(n)?,
        })
    }
}

/// `--subspace` takes inline JSON or a path to a JSON file.
pub fn parse_subspace_arg(arg: &str) -> Result<SubspaceSpec> {
    let trimmed = arg.trim_start();
    let (text, origin) = if trimmed.starts_with('[') || trimmed.starts_with('{') {
        (arg.to_owned(), "--subspace".to_owned())
    } else {
        let text = fs::read_to_string(arg).map_err(|e| CliError::io(arg, e))?;
        (text, arg.to_owned())
    };
    let mut de = serde_json::Deserializer::from_str(&text);
    serde_path_to_error::deserialize(&mut de).map_err(|e| CliError::json(&origin, e))
}

/// A body cut by a subspace, ready for bounds and oracles.
#[derive(Debug, Clone)]
pub enum Section {
    Symmetric(ProjectedDecomposition),
    Kp(KpSection),
    Nonsymmetric(NonsymLift),
}

impl Section {
    pub fn build(decomp: &JohnDecomposition, body: &BodySpec, subspace: &Subspace, tol: &Tolerances) -> Result<Self> {
        Ok(match body {
            BodySpec::Symmetric => Section::Symmetric(project(decomp, subspace, tol)?),
            BodySpec::Nonsymmetric => Section::Nonsymmetric(lift_nonsymmetric(decomp, subspace, tol)?),
            BodySpec::Kp { p, alphas } => {
                let alphas = alphas.clone().unwrap_or_else(|| vec![1.0; decomp.len()]);
                let ball = KpBall::new(decomp.clone(), *p, alphas)?;
                Section::Kp(ball.section(subspace, tol)?)
            }
        })
    }

    pub fn inputs(&self, lambda: f64) -> BoundInputs<'_> {
        let mut inputs = match self {
            Section::Symmetric(proj) => BoundInputs::symmetric(proj.profile()),
            Section::Kp(section) => BoundInputs::kp(section),
            Section::Nonsymmetric(nl) => BoundInputs::nonsym(nl),
        };
        inputs.lambda = lambda;
        inputs
    }

    pub fn dim(&self) -> usize {
        match self {
            Section::Symmetric(proj) => proj.dim(),
            Section::Kp(section) => section.dim(),
            Section::Nonsymmetric(nl) => nl.section_dim(),
        }
    }

    pub fn ambient_dim(&self) -> usize {
        match self {
            Section::Symmetric(proj) => proj.ambient_dim(),
            Section::Kp(section) => section.projection().ambient_dim(),
            Section::Nonsymmetric(nl) => nl.base_dim(),
        }
    }

    /// Number of directions that survive the projection.
    pub fn support_size(&self) -> usize {
        match self {
            Section::Symmetric(proj) => proj.m0(),
            Section::Kp(section) => section.projection().m0(),
            Section::Nonsymmetric(nl) => nl.kappa().len(),
        }
    }

    /// The section as an H-polytope, when the body is one.
    pub fn polytope(&self) -> Option<HPolytopeSection> {
        match self {
            Section::Symmetric(proj) => Some(section_polytope(proj)),
            Section::Nonsymmetric(nl) => Some(nonsym_section_polytope(nl)),
            Section::Kp(_) => None,
        }
    }
}
