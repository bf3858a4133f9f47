//! Monte-Carlo fidelity of the heralded state when detectors accept a finite
//! azimuthal window and the emitters jitter around their trap positions.
//!
//! With emitters at `r_j` and a photon detected along the unit vector `n`,
//! emitter `j`'s term in the detection operator picks up the far-field phase
//! `exp(i k r_j . n)`, `k = 2 pi / wavelength`. The ideal operator is
//! recovered whenever these phases agree for every emitter.

use std::f64::consts::{FRAC_PI_2, PI};

use num_complex::Complex64 as C64;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rand_distr::StandardNormal;
use rayon::prelude::*;

use crate::cascade::PolarizerConfig;
use crate::error::{Error, Result};
use crate::polarizer::Polarizer;
use crate::register::EmitterRegister;
use crate::state::{QubitState, SymmetricState};

pub type Vec3 = [f64; 3];

/// Default emission wavelength in metres (a typical trapped-ion dipole line).
pub const DEFAULT_WAVELENGTH: f64 = 493e-9;

/// Samples per independently seeded substream.
const CHUNK: usize = 256;

fn dot(a: &Vec3, b: &Vec3) -> f64 {
    a[0] * b[0] + a[1] * b[1] + a[2] * b[2]
}

fn cross(a: &Vec3, b: &Vec3) -> Vec3 {
    [
        a[1] * b[2] - a[2] * b[1],
        a[2] * b[0] - a[0] * b[2],
        a[0] * b[1] - a[1] * b[0],
    ]
}

fn scaled(a: &Vec3, s: f64) -> Vec3 {
    [a[0] * s, a[1] * s, a[2] * s]
}

fn add(a: &Vec3, b: &Vec3) -> Vec3 {
    [a[0] + b[0], a[1] + b[1], a[2] + b[2]]
}

fn norm(a: &Vec3) -> f64 {
    dot(a, a).sqrt()
}

/// Rotation of `v` by `angle` about the unit vector `axis` (Rodrigues).
fn rotate(v: &Vec3, axis: &Vec3, angle: f64) -> Vec3 {
    let (s, c) = angle.sin_cos();
    let kxv = cross(axis, v);
    let along = scaled(axis, dot(axis, v) * (1.0 - c));
    add(&add(&scaled(v, c), &scaled(&kxv, s)), &along)
}

/// Two unit vectors spanning the plane orthogonal to `axis`.
fn transverse_basis(axis: &Vec3) -> (Vec3, Vec3) {
    let helper = if axis[0].abs() < 0.9 { [1.0, 0.0, 0.0] } else { [0.0, 1.0, 0.0] };
    let u = cross(axis, &helper);
    let u = scaled(&u, norm(&u).recip());
    let v = cross(axis, &u);
    (u, v)
}

/// Emitter and detector layout for the Monte-Carlo estimate. Lengths in
/// metres, angles in radians.
#[derive(Debug, Clone, PartialEq)]
pub struct DetectionGeometry {
    /// Mean emitter positions.
    pub emitter_positions: Vec<Vec3>,
    /// Unit vector along the emitter chain; confinement jitter and the
    /// azimuthal window are both taken about this axis.
    pub axis: Vec3,
    /// Standard deviation of each transverse position component.
    pub transverse_sigma: f64,
    pub wavelength: f64,
    /// Nominal detection direction of each detector (unit vectors).
    pub detector_directions: Vec<Vec3>,
    /// Half of the azimuthal acceptance window.
    pub window_halfangle: f64,
}

impl DetectionGeometry {
    /// `n` emitters on the z axis with the given spacing, centred on the
    /// origin, and `n` detectors in the xy plane.
    ///
    /// Detectors sit at azimuths spread evenly over a quarter turn. Keeping
    /// all pairwise azimuth differences at or below `pi/2` means widening the
    /// window can only increase the path-dependent phase spread.
    pub fn ion_chain(
        n: usize,
        spacing: f64,
        transverse_sigma: f64,
        wavelength: f64,
        window_halfangle: f64,
    ) -> Result<Self> {
        if n == 0 {
            return Err(Error::InvalidGeometry("no emitters".into()));
        }
        let centre = (n as f64 - 1.0) / 2.0;
        let emitter_positions = (0..n)
            .map(|j| [0.0, 0.0, (j as f64 - centre) * spacing])
            .collect();
        let detector_directions = (0..n)
            .map(|m| {
                let phi = if n == 1 {
                    0.0
                } else {
                    (m as f64 / (n as f64 - 1.0) - 0.5) * FRAC_PI_2
                };
                [phi.cos(), phi.sin(), 0.0]
            })
            .collect();
        let geom = Self {
            emitter_positions,
            axis: [0.0, 0.0, 1.0],
            transverse_sigma,
            wavelength,
            detector_directions,
            window_halfangle,
        };
        geom.validate()?;
        Ok(geom)
    }

    pub fn n(&self) -> usize {
        self.emitter_positions.len()
    }

    pub fn validate(&self) -> Result<()> {
        let bad = |msg: String| Err(Error::InvalidGeometry(msg));
        if self.emitter_positions.is_empty() {
            return bad("no emitters".into());
        }
        if self.detector_directions.len() != self.emitter_positions.len() {
            return bad(format!(
                "{} detectors for {} emitters",
                self.detector_directions.len(),
                self.emitter_positions.len()
            ));
        }
        if !(self.wavelength > 0.0 && self.wavelength.is_finite()) {
            return bad(format!("wavelength {} must be positive", self.wavelength));
        }
        if !(self.window_halfangle >= 0.0 && self.window_halfangle <= PI) {
            return bad(format!("window half-angle {} outside [0, pi]", self.window_halfangle));
        }
        if !(self.transverse_sigma >= 0.0 && self.transverse_sigma.is_finite()) {
            return bad(format!("transverse sigma {} must be >= 0", self.transverse_sigma));
        }
        if self.emitter_positions.iter().flatten().any(|x| !x.is_finite()) {
            return bad("non-finite emitter position".into());
        }
        for d in self.detector_directions.iter().chain(std::iter::once(&self.axis)) {
            if (norm(d) - 1.0).abs() > 1e-9 {
                return bad(format!("{d:?} is not a unit vector"));
            }
        }
        Ok(())
    }

    pub fn wavenumber(&self) -> f64 {
        2.0 * PI / self.wavelength
    }
}

/// Detection operator with per-emitter far-field phases:
/// `sum_j exp(i k r_j . n) (alpha |+>_j<e| + beta |->_j<e|)`.
#[derive(Debug, Clone, PartialEq)]
pub struct PositionalDetection {
    pub polarizer: Polarizer,
    pub weights: Vec<C64>,
}

impl PositionalDetection {
    pub fn apply(&self, reg: &EmitterRegister) -> Result<EmitterRegister> {
        reg.apply_weighted_detection(&self.polarizer, &self.weights)
    }
}

pub fn positional_detection_operator(
    polarizer: Polarizer,
    direction: &Vec3,
    positions: &[Vec3],
    wavelength: f64,
) -> Result<PositionalDetection> {
    if (norm(direction) - 1.0).abs() > 1e-9 {
        return Err(Error::InvalidGeometry(format!("{direction:?} is not a unit vector")));
    }
    let k = 2.0 * PI / wavelength;
    let weights = positions
        .iter()
        .map(|r| C64::from_polar(1.0, k * dot(r, direction)))
        .collect();
    Ok(PositionalDetection { polarizer, weights })
}

/// Mean fidelity with its standard error.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct FidelityEstimate {
    pub mean_fidelity: f64,
    /// Sample standard deviation over `sqrt(sample_count)`.
    pub standard_error: f64,
    /// Samples that entered the mean.
    pub sample_count: usize,
    /// Samples dropped because the heralded state vanished.
    pub excluded: usize,
}

#[derive(Debug, Clone, Copy, Default)]
struct Moments {
    count: usize,
    mean: f64,
    m2: f64,
    excluded: usize,
}

impl Moments {
    fn push(&mut self, x: f64) {
        self.count += 1;
        let delta = x - self.mean;
        self.mean += delta / self.count as f64;
        self.m2 += delta * (x - self.mean);
    }

    fn merge(self, other: Moments) -> Moments {
        let count = self.count + other.count;
        if count == 0 {
            return Moments {
                excluded: self.excluded + other.excluded,
                ..Default::default()
            };
        }
        let delta = other.mean - self.mean;
        let w = other.count as f64 / count as f64;
        Moments {
            count,
            mean: self.mean + delta * w,
            m2: self.m2 + other.m2 + delta * delta * self.count as f64 * w,
            excluded: self.excluded + other.excluded,
        }
    }
}

/// Heralded state for one realization of positions and directions, or `None`
/// when it vanishes.
fn sampled_state(
    cfg: &PolarizerConfig,
    positions: &[Vec3],
    directions: &[Vec3],
    wavelength: f64,
) -> Result<Option<QubitState>> {
    let mut reg = EmitterRegister::excited(cfg.n());
    for (p, dir) in cfg.polarizers().iter().zip(directions) {
        let op = positional_detection_operator(*p, dir, positions, wavelength)?;
        reg = match op.apply(&reg) {
            Ok(r) => r,
            Err(Error::NoExcitedPopulation) => return Ok(None),
            Err(e) => return Err(e),
        };
    }
    match reg.to_qubits().and_then(|q| q.normalized()) {
        Ok(q) => Ok(Some(q)),
        Err(Error::ZeroState) => Ok(None),
        Err(e) => Err(e),
    }
}

fn run_chunk(
    cfg: &PolarizerConfig,
    geom: &DetectionGeometry,
    target: &QubitState,
    seed: u64,
    chunk: usize,
    count: usize,
) -> Result<Moments> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    rng.set_stream(chunk as u64);
    let (u, v) = transverse_basis(&geom.axis);
    let mut moments = Moments::default();
    let mut positions = geom.emitter_positions.clone();
    let mut offsets = vec![0.0; geom.detector_directions.len()];
    let mut directions = geom.detector_directions.clone();
    for _ in 0..count {
        // the draw sequence never depends on sigma or the window width, so
        // equal seeds pair samples across geometries
        for (r, mean) in positions.iter_mut().zip(&geom.emitter_positions) {
            let a: f64 = rng.sample(StandardNormal);
            let b: f64 = rng.sample(StandardNormal);
            let s = geom.transverse_sigma;
            *r = add(mean, &add(&scaled(&u, a * s), &scaled(&v, b * s)));
        }
        for x in offsets.iter_mut() {
            *x = rng.random_range(-1.0..=1.0);
        }
        // antithetic pair: the window offsets and their mirror image, so
        // terms odd in the window width cancel within each sample
        let mirrored: &[f64] = if geom.window_halfangle > 0.0 { &[1.0, -1.0] } else { &[1.0] };
        let mut sum = 0.0;
        let mut vanished = false;
        for &sign in mirrored {
            for ((d, nominal), x) in directions.iter_mut().zip(&geom.detector_directions).zip(&offsets) {
                *d = rotate(nominal, &geom.axis, sign * x * geom.window_halfangle);
            }
            match sampled_state(cfg, &positions, &directions, geom.wavelength)? {
                Some(psi) => sum += target.inner(&psi)?.norm_sqr().min(1.0),
                None => vanished = true,
            }
        }
        if vanished {
            moments.excluded += 1;
        } else {
            moments.push(sum / mirrored.len() as f64);
        }
    }
    Ok(moments)
}

/// Averages the fidelity to `target` over `samples` draws of emitter
/// positions and detection directions. Deterministic for a given seed,
/// independent of the thread count.
///
/// Each sample evaluates its window offsets and their negation and counts the
/// mean of the two, which removes the first-order window noise from paired
/// comparisons.
pub fn estimate_fidelity(
    cfg: &PolarizerConfig,
    geom: &DetectionGeometry,
    target: &SymmetricState,
    samples: usize,
    seed: u64,
) -> Result<FidelityEstimate> {
    geom.validate()?;
    if samples == 0 {
        return Err(Error::InvalidArgument("need at least one sample".into()));
    }
    if cfg.n() != geom.n() || target.n() != cfg.n() {
        return Err(Error::DimensionMismatch {
            expected: cfg.n(),
            found: if cfg.n() != geom.n() { geom.n() } else { target.n() },
        });
    }
    let target = target.to_qubits();
    let chunks = samples.div_ceil(CHUNK);
    let parts: Vec<Moments> = (0..chunks)
        .into_par_iter()
        .map(|c| {
            let count = CHUNK.min(samples - c * CHUNK);
            run_chunk(cfg, geom, &target, seed, c, count)
        })
        .collect::<Result<_>>()?;
    let total = parts.into_iter().fold(Moments::default(), Moments::merge);
    let standard_error = if total.count > 1 {
        (total.m2 / (total.count - 1) as f64).sqrt() / (total.count as f64).sqrt()
    } else {
        0.0
    };
    Ok(FidelityEstimate {
        mean_fidelity: total.mean,
        standard_error,
        sample_count: total.count,
        excluded: total.excluded,
    })
}
