//! Experiment configuration file (JSON).
//!
//! Complex numbers are `[re, im]` pairs. Angles are radians unless the
//! command line asks for degrees, in which case they are converted once on
//! load and the echoed configuration holds radians.

use herald::window::{DetectionGeometry, DEFAULT_WAVELENGTH};
use herald::{Complex64, Polarizer, PolarizerConfig, SymmetricState};
use serde::{Deserialize, Serialize};

use crate::CliError;

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(untagged, deny_unknown_fields)]
pub enum PolarizerSpec {
    Linear { theta: f64 },
    Elliptical { alpha: [f64; 2], beta: [f64; 2] },
}

impl PolarizerSpec {
    pub fn to_polarizer(self) -> Result<Polarizer, CliError> {
        match self {
            PolarizerSpec::Linear { theta } => {
                if !theta.is_finite() {
                    return Err(CliError::Config(format!("angle {theta} is not finite")));
                }
                Ok(Polarizer::linear(theta))
            }
            PolarizerSpec::Elliptical { alpha, beta } => Polarizer::new(
                Complex64::new(alpha[0], alpha[1]),
                Complex64::new(beta[0], beta[1]),
            )
            .map_err(|e| CliError::Config(format!("polarizer {alpha:?}/{beta:?}: {e}"))),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct GeometrySpec {
    /// Explicit mean positions in metres; otherwise a chain along z with
    /// `spacing`.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub emitter_positions: Option<Vec<[f64; 3]>>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub spacing: Option<f64>,
    #[serde(default)]
    pub transverse_sigma: f64,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub wavelength: Option<f64>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub detector_directions: Option<Vec<[f64; 3]>>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub axis: Option<[f64; 3]>,
    #[serde(default)]
    pub window_halfangle: f64,
}

impl GeometrySpec {
    pub fn build(&self, n: usize) -> Result<DetectionGeometry, CliError> {
        let wavelength = self.wavelength.unwrap_or(DEFAULT_WAVELENGTH);
        let spacing = match (&self.emitter_positions, self.spacing) {
            (Some(_), Some(_)) => {
                return Err(CliError::Config("give either emitter_positions or spacing, not both".into()))
            }
            (Some(_), None) => 0.0,
            (None, Some(s)) => s,
            (None, None) => return Err(CliError::Config("geometry needs emitter_positions or spacing".into())),
        };
        let mut geom =
            DetectionGeometry::ion_chain(n, spacing, self.transverse_sigma, wavelength, self.window_halfangle)
                .map_err(|e| CliError::Config(e.to_string()))?;
        if let Some(pos) = &self.emitter_positions {
            geom.emitter_positions = pos.clone();
        }
        if let Some(axis) = self.axis {
            if self.detector_directions.is_none() {
                return Err(CliError::Config("a custom axis needs explicit detector_directions".into()));
            }
            geom.axis = axis;
        }
        if let Some(dirs) = &self.detector_directions {
            geom.detector_directions = dirs.clone();
        }
        if geom.n() != n {
            return Err(CliError::Config(format!("geometry has {} emitters for n = {n}", geom.n())));
        }
        geom.validate().map_err(|e| CliError::Config(e.to_string()))?;
        Ok(geom)
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ExperimentConfig {
    pub n: usize,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub polarizers: Option<Vec<PolarizerSpec>>,
    /// Dicke coefficients `d_0 ..= d_n`.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub target: Option<Vec<[f64; 2]>>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub geometry: Option<GeometrySpec>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub seed: Option<u64>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub samples: Option<usize>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub sweep: Option<SweepSpec>,
}

/// Evenly spaced full window widths from `start` to `stop`, inclusive.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct SweepSpec {
    pub start: f64,
    pub stop: f64,
    pub count: usize,
}

impl SweepSpec {
    /// Parses `START:STOP:COUNT`.
    pub fn parse(text: &str) -> Result<Self, CliError> {
        let bad = || CliError::Config(format!("sweep `{text}` is not START:STOP:COUNT"));
        let parts: Vec<&str> = text.split(':').collect();
        if parts.len() != 3 {
            return Err(bad());
        }
        Ok(Self {
            start: parts[0].trim().parse().map_err(|_| bad())?,
            stop: parts[1].trim().parse().map_err(|_| bad())?,
            count: parts[2].trim().parse().map_err(|_| bad())?,
        })
    }

    pub fn validate(&self) -> Result<(), CliError> {
        let ok = |w: f64| w.is_finite() && (0.0..=2.0 * std::f64::consts::PI).contains(&w);
        if self.count == 0 || !ok(self.start) || !ok(self.stop) {
            return Err(CliError::Config(format!(
                "sweep {}:{}:{} needs count >= 1 and widths in [0, 2 pi]",
                self.start, self.stop, self.count
            )));
        }
        Ok(())
    }

    pub fn widths(&self) -> Vec<f64> {
        if self.count == 1 {
            return vec![self.start];
        }
        let step = (self.stop - self.start) / (self.count - 1) as f64;
        (0..self.count).map(|i| self.start + step * i as f64).collect()
    }
}

impl ExperimentConfig {
    pub fn parse(text: &str) -> Result<Self, CliError> {
        let cfg: Self = serde_json::from_str(text).map_err(|e| CliError::Config(e.to_string()))?;
        if cfg.n == 0 {
            return Err(CliError::Config("n must be at least 1".into()));
        }
        Ok(cfg)
    }

    /// Rewrites every angle from degrees to radians.
    pub fn degrees_to_radians(&mut self) {
        if let Some(ps) = &mut self.polarizers {
            for p in ps.iter_mut() {
                if let PolarizerSpec::Linear { theta } = p {
                    *theta = theta.to_radians();
                }
            }
        }
        if let Some(g) = &mut self.geometry {
            g.window_halfangle = g.window_halfangle.to_radians();
        }
        if let Some(s) = &mut self.sweep {
            s.start = s.start.to_radians();
            s.stop = s.stop.to_radians();
        }
    }

    pub fn polarizer_config(&self) -> Result<PolarizerConfig, CliError> {
        let specs = self
            .polarizers
            .as_ref()
            .ok_or_else(|| CliError::Config("configuration has no polarizers".into()))?;
        if specs.len() != self.n {
            return Err(CliError::Config(format!("{} polarizers for n = {}", specs.len(), self.n)));
        }
        let ps = specs
            .iter()
            .map(|s| s.to_polarizer())
            .collect::<Result<Vec<_>, _>>()?;
        PolarizerConfig::new(ps).map_err(|e| CliError::Config(e.to_string()))
    }

    pub fn target_state(&self) -> Result<Option<SymmetricState>, CliError> {
        let Some(t) = &self.target else { return Ok(None) };
        if t.len() != self.n + 1 {
            return Err(CliError::Config(format!(
                "target has {} coefficients, expected n + 1 = {}",
                t.len(),
                self.n + 1
            )));
        }
        SymmetricState::new(t.iter().map(|c| Complex64::new(c[0], c[1])).collect())
            .map(Some)
            .map_err(|_| CliError::Config("target state is zero".into()))
    }

    pub fn geometry(&self) -> Result<DetectionGeometry, CliError> {
        self.geometry
            .as_ref()
            .ok_or_else(|| CliError::Config("configuration has no geometry".into()))?
            .build(self.n)
    }
}
