use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Serialize};
use sha2::{Digest, Sha256};
use slicebound_bodies::KpSection;
use slicebound_decomp::{NonsymLift, ProjectionProfile, Tolerances};

use crate::error::{BoundError, Result};
use crate::gate::Gate;
use crate::kp::*;
use crate::nonsym::*;
use crate::symmetric::*;
use crate::wills::*;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum BoundName {
    SymmetricCase1,
    SymmetricCase1Coarse,
    SymmetricCase2,
    AbOld,
    WillsVolume,
    WillsVolumeMajorized,
    WillsFunctional,
    MeanWidth,
    K1Upper,
    K1Intermediate,
    K1Lower,
    KpUpper,
    KpLower,
    NonsymFourier,
    NonsymHyperplane,
}

/// Whether a bound caps the section volume from above or below.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Direction {
    Upper,
    Lower,
}

impl BoundName {
    pub const ALL: [BoundName; 15] = [
        BoundName::SymmetricCase1,
        BoundName::SymmetricCase1Coarse,
        BoundName::SymmetricCase2,
        BoundName::AbOld,
        BoundName::WillsVolume,
        BoundName::WillsVolumeMajorized,
        BoundName::WillsFunctional,
        BoundName::MeanWidth,
        BoundName::K1Upper,
        BoundName::K1Intermediate,
        BoundName::K1Lower,
        BoundName::KpUpper,
        BoundName::KpLower,
        BoundName::NonsymFourier,
        BoundName::NonsymHyperplane,
    ];

    pub fn as_str(self) -> &'static str {
        match self {
            BoundName::SymmetricCase1 => "symmetric_case1",
            BoundName::SymmetricCase1Coarse => "symmetric_case1_coarse",
            BoundName::SymmetricCase2 => "symmetric_case2",
            BoundName::AbOld => "ab_old",
            BoundName::WillsVolume => "wills_volume",
            BoundName::WillsVolumeMajorized => "wills_volume_majorized",
            BoundName::WillsFunctional => "wills_functional",
            BoundName::MeanWidth => "mean_width",
            BoundName::K1Upper => "k1_upper",
            BoundName::K1Intermediate => "k1_intermediate",
            BoundName::K1Lower => "k1_lower",
            BoundName::KpUpper => "kp_upper",
            BoundName::KpLower => "kp_lower",
            BoundName::NonsymFourier => "nonsym_fourier",
            BoundName::NonsymHyperplane => "nonsym_hyperplane",
        }
    }

    pub fn direction(self) -> Direction {
        match self {
            BoundName::K1Lower | BoundName::KpLower => Direction::Lower,
            _ => Direction::Upper,
        }
    }

    /// What the value bounds: section volume, Wills functional, or first intrinsic volume.
    pub fn quantity(self) -> &'static str {
        match self {
            BoundName::WillsFunctional => "wills_functional",
            BoundName::MeanWidth => "first_intrinsic_volume",
            _ => "volume",
        }
    }

    pub fn valid_names() -> String {
        Self::ALL.map(BoundName::as_str).join(", ")
    }
}

impl fmt::Display for BoundName {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

impl FromStr for BoundName {
    type Err = BoundError;

    fn from_str(s: &str) -> Result<Self> {
        Self::ALL
            .into_iter()
            .find(|b| b.as_str() == s)
            .ok_or_else(|| BoundError::UnknownBound {
                name: s.to_owned(),
                valid: Self::valid_names(),
            })
    }
}

/// Everything a bound may draw on. Missing pieces make the corresponding bounds inapplicable.
#[derive(Debug, Clone, Copy)]
pub struct BoundInputs<'a> {
    pub profile: Option<&'a ProjectionProfile>,
    pub kp: Option<&'a KpSection>,
    pub nonsym: Option<&'a NonsymLift>,
    /// Dilation for the Wills functional bound.
    pub lambda: f64,
}

impl Default for BoundInputs<'_> {
    fn default() -> Self {
        Self {
            profile: None,
            kp: None,
            nonsym: None,
            lambda: 1.0,
        }
    }
}

impl<'a> BoundInputs<'a> {
    pub fn symmetric(profile: &'a ProjectionProfile) -> Self {
        Self {
            profile: Some(profile),
            ..Self::default()
        }
    }

    pub fn kp(section: &'a KpSection) -> Self {
        Self {
            kp: Some(section),
            ..Self::default()
        }
    }

    pub fn nonsym(nl: &'a NonsymLift) -> Self {
        Self {
            nonsym: Some(nl),
            ..Self::default()
        }
    }

    fn need_profile(&self, bound: BoundName) -> Result<&'a ProjectionProfile> {
        self.profile.ok_or(BoundError::MissingInput {
            bound: bound.as_str(),
            input: "a projected decomposition",
        })
    }

    fn need_kp(&self, bound: BoundName) -> Result<&'a KpSection> {
        self.kp.ok_or(BoundError::MissingInput {
            bound: bound.as_str(),
            input: "a K_p ball section",
        })
    }

    fn need_nonsym(&self, bound: BoundName) -> Result<&'a NonsymLift> {
        self.nonsym.ok_or(BoundError::MissingInput {
            bound: bound.as_str(),
            input: "a non-symmetric lift",
        })
    }

    fn digest_bytes(&self) -> Vec<u8> {
        let mut bytes = Vec::new();
        let mut push = |tag: &str, values: &mut dyn Iterator<Item = f64>| {
            bytes.extend_from_slice(tag.as_bytes());
            for v in values {
                bytes.extend_from_slice(&v.to_le_bytes());
            }
        };
        if let Some(p) = self.profile {
            push("profile", &mut [p.ambient_dim() as f64, p.dim() as f64].into_iter());
            push("c", &mut p.weights().iter().copied());
            push("ct", &mut p.tilde_weights().iter().copied());
        }
        if let Some(kp) = self.kp {
            let p = kp.projection().profile();
            push("kp", &mut [kp.p(), p.ambient_dim() as f64, p.dim() as f64].into_iter());
            push("c", &mut p.weights().iter().copied());
            push("ct", &mut p.tilde_weights().iter().copied());
            push("alpha", &mut kp.alphas().iter().copied());
        }
        if let Some(nl) = self.nonsym {
            push("nonsym", &mut [nl.base_dim() as f64, nl.section_dim() as f64].into_iter());
            push("delta", &mut nl.lifted_weights().iter().copied());
            push("kappa", &mut nl.kappa().iter().copied());
        }
        push("lambda", &mut std::iter::once(self.lambda));
        bytes
    }
}

fn hex_digest(data: &[u8]) -> String {
    Sha256::digest(data).iter().map(|b| format!("{b:02x}")).collect()
}

/// SHA-256 of the numeric inputs a report was computed from.
pub fn inputs_digest(inputs: &BoundInputs<'_>) -> String {
    hex_digest(&inputs.digest_bytes())
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct BoundEntry {
    pub name: BoundName,
    pub direction: Direction,
    /// `None` when the gate failed and evaluation was not forced.
    pub value: Option<f64>,
    pub gate: Gate,
    pub forced: bool,
    pub inputs_digest: String,
}

pub fn gate_for(name: BoundName, inputs: &BoundInputs<'_>) -> Result<Gate> {
    use BoundName::*;
    Ok(match name {
        SymmetricCase1 | SymmetricCase1Coarse | WillsVolumeMajorized => half_weight_gate(inputs.need_profile(name)?),
        SymmetricCase2 => {
            let p = inputs.need_profile(name)?;
            symmetric_case2_gate(p.ambient_dim(), p.dim())
        }
        AbOld | WillsVolume | MeanWidth => {
            inputs.need_profile(name)?;
            Gate::always("none")
        }
        WillsFunctional => {
            inputs.need_profile(name)?;
            wills_functional_gate(inputs.lambda)
        }
        K1Upper | K1Intermediate | K1Lower => k1_gate(inputs.need_kp(name)?),
        KpUpper | KpLower => {
            inputs.need_kp(name)?;
            Gate::always("1 <= p <= 2")
        }
        NonsymFourier => kappa_gate(inputs.need_nonsym(name)?),
        NonsymHyperplane => {
            let nl = inputs.need_nonsym(name)?;
            Gate::check("dim F = n - 1", nl.section_dim() + 1 == nl.base_dim()).and(kappa_gate(nl))
        }
    })
}

/// The formula of `name` evaluated regardless of its gate.
pub fn formula_for(name: BoundName, inputs: &BoundInputs<'_>) -> Result<f64> {
    use BoundName::*;
    match name {
        SymmetricCase1 | WillsVolumeMajorized => symmetric_case1_formula(inputs.need_profile(name)?),
        SymmetricCase1Coarse => symmetric_case1_coarse_formula(inputs.need_profile(name)?),
        SymmetricCase2 => {
            let p = inputs.need_profile(name)?;
            Ok(symmetric_case2_formula(p.ambient_dim(), p.dim()))
        }
        AbOld => bound_ab_old(inputs.need_profile(name)?),
        WillsVolume => bound_volume_via_wills(inputs.need_profile(name)?),
        WillsFunctional => bound_wills_functional(inputs.need_profile(name)?, inputs.lambda),
        MeanWidth => bound_mean_width(inputs.need_profile(name)?),
        K1Upper => k1_upper_formula(inputs.need_kp(name)?),
        K1Intermediate => k1_intermediate_formula(inputs.need_kp(name)?),
        K1Lower => k1_lower_formula(inputs.need_kp(name)?),
        KpUpper => bound_kp_upper(inputs.need_kp(name)?),
        KpLower => bound_kp_lower(inputs.need_kp(name)?),
        NonsymFourier => nonsym_fourier_formula(inputs.need_nonsym(name)?),
        NonsymHyperplane => bound_nonsym_hyperplane(inputs.need_nonsym(name)?.base_dim()),
    }
}

/// Evaluate one bound. A failed gate yields `value: None` unless `force` is set.
pub fn evaluate(name: BoundName, inputs: &BoundInputs<'_>, force: bool) -> Result<BoundEntry> {
    let gate = gate_for(name, inputs)?;
    let run = gate.satisfied || force;
    let value = if run { Some(formula_for(name, inputs)?) } else { None };
    let mut bytes = name.as_str().as_bytes().to_vec();
    bytes.extend(inputs.digest_bytes());
    Ok(BoundEntry {
        name,
        direction: name.direction(),
        value,
        forced: !gate.satisfied && force,
        gate,
        inputs_digest: hex_digest(&bytes),
    })
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Skipped {
    pub name: BoundName,
    pub reason: String,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ReportMetadata {
    pub tolerances: Tolerances,
    #[serde(default)]
    pub seeds: Vec<u64>,
    #[serde(default)]
    pub samples: Option<u64>,
    pub lambda: f64,
    pub force: bool,
    pub inputs_digest: String,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct BoundReport {
    pub entries: Vec<BoundEntry>,
    #[serde(default)]
    pub skipped: Vec<Skipped>,
    pub metadata: ReportMetadata,
}

impl BoundReport {
    /// Evaluate `names` in order. Bounds whose inputs are missing or whose
    /// regime excludes the configuration are listed under `skipped`.
    pub fn evaluate(names: &[BoundName], inputs: &BoundInputs<'_>, force: bool, tolerances: Tolerances) -> Self {
        let mut entries = Vec::new();
        let mut skipped = Vec::new();
        for &name in names {
            match evaluate(name, inputs, force) {
                Ok(entry) => entries.push(entry),
                Err(e) => skipped.push(Skipped {
                    name,
                    reason: e.to_string(),
                }),
            }
        }
        Self {
            entries,
            skipped,
            metadata: ReportMetadata {
                tolerances,
                seeds: Vec::new(),
                samples: None,
                lambda: inputs.lambda,
                force,
                inputs_digest: inputs_digest(inputs),
            },
        }
    }

    pub fn get(&self, name: BoundName) -> Option<&BoundEntry> {
        self.entries.iter().find(|e| e.name == name)
    }

    pub fn value(&self, name: BoundName) -> Option<f64> {
        self.get(name).and_then(|e| e.value)
    }

    pub fn gate_failures(&self) -> impl Iterator<Item = &BoundEntry> {
        self.entries.iter().filter(|e| !e.gate.satisfied)
    }
}
