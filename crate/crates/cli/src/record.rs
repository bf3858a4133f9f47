//! Result record written by every verb except `pyramid`.

use herald::Complex64;
use serde::{Deserialize, Serialize};

use crate::config::{ExperimentConfig, PolarizerSpec};

/// Rounds to 15 significant digits.
pub fn r15(x: f64) -> f64 {
    if !x.is_finite() || x == 0.0 {
        return x;
    }
    format!("{x:.14e}").parse().unwrap_or(x)
}

pub fn pair(c: Complex64) -> [f64; 2] {
    [r15(c.re), r15(c.im)]
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ResultRecord {
    pub tool: String,
    pub version: String,
    pub command: String,
    /// Configuration as run: angles in radians, flag overrides applied.
    pub input: ExperimentConfig,
    /// Normalized Dicke coefficients `d_0 ..= d_n`, global phase fixed so the
    /// first nonzero one is real and positive.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub dicke: Option<Vec<[f64; 2]>>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub polarizers: Option<Vec<PolarizerSpec>>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub verification: Option<Verification>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub entanglement: Option<Entanglement>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub classification: Option<Classification>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub fidelity: Option<Fidelity>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub sweep: Option<Vec<SweepPoint>>,
}

impl ResultRecord {
    pub fn new(command: &str, input: ExperimentConfig) -> Self {
        Self {
            tool: "herald".into(),
            version: env!("CARGO_PKG_VERSION").into(),
            command: command.into(),
            input,
            dicke: None,
            polarizers: None,
            verification: None,
            entanglement: None,
            classification: None,
            fidelity: None,
            sweep: None,
        }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Verification {
    /// Degree of the synthesis polynomial; the remaining polarizers are sigma+.
    pub degree: usize,
    pub round_trip_fidelity: f64,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Entanglement {
    pub tangle: f64,
    pub tangle_closed_form: f64,
    pub entropies: [f64; 3],
    /// Pairs (0,1), (0,2), (1,2).
    pub pair_concurrences: [f64; 3],
    pub class: String,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Classification {
    pub distinct_orientations: usize,
    pub predicted_class: String,
    pub measured_class: String,
    pub agreement: bool,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Fidelity {
    pub mean_fidelity: f64,
    pub standard_error: f64,
    pub sample_count: usize,
    pub excluded: usize,
    /// `config` or `ideal` (the lossless forward state).
    pub target: String,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct SweepPoint {
    pub window_width: f64,
    pub mean_fidelity: f64,
    pub standard_error: f64,
    pub sample_count: usize,
    pub excluded: usize,
}

pub fn sweep_csv(points: &[SweepPoint]) -> String {
    let mut out = String::from("window_width,mean_fidelity,standard_error,sample_count,excluded\n");
    for p in points {
        out.push_str(&format!(
            "{:.14e},{:.14e},{:.14e},{},{}\n",
            p.window_width, p.mean_fidelity, p.standard_error, p.sample_count, p.excluded
        ));
    }
    out
}
