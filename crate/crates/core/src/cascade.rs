//! Final heralded state for a polarizer configuration, in closed form, plus
//! the intermediate-state pyramid of the detection cascade.
//!
//! Each of the `N!` detector-to-emitter assignments contributes to the ket
//! with minus-set `S` the product of `beta_i` over the `k = |S|` detectors
//! landing on `S` and `alpha_i` over the rest. Grouping by the detector
//! subset gives `k! (N-k)!` copies of the elementary symmetric sum
//! `e_k = [z^k] prod_i (alpha_i + beta_i z)`, so `d_k` is proportional to
//! `e_k / sqrt(C(N, k))`.

use std::collections::BTreeMap;
use std::fmt::Write as _;

use num_complex::Complex64 as C64;

use crate::error::{Error, Result};
use crate::polarizer::{LinearAngle, Polarizer};
use crate::register::{Ket, Level};
use crate::state::{binomial, SymmetricState};

/// Ordered detector polarizers, detector 1 first.
#[derive(Debug, Clone, PartialEq)]
pub struct PolarizerConfig {
    polarizers: Vec<Polarizer>,
}

impl PolarizerConfig {
    pub fn new(polarizers: Vec<Polarizer>) -> Result<Self> {
        if polarizers.is_empty() {
            return Err(Error::InvalidArgument("a configuration needs at least one polarizer".into()));
        }
        Ok(Self { polarizers })
    }

    /// Linear polarizers at the given angles (radians).
    pub fn linear(angles: &[f64]) -> Result<Self> {
        Self::new(angles.iter().map(|t| LinearAngle::new(*t).polarizer()).collect())
    }

    pub fn n(&self) -> usize {
        self.polarizers.len()
    }

    pub fn polarizers(&self) -> &[Polarizer] {
        &self.polarizers
    }

    /// Reordered copy: detector `m` of the result uses polarizer `order[m]`.
    pub fn reordered(&self, order: &[usize]) -> Result<Self> {
        if order.len() != self.n() {
            return Err(Error::DimensionMismatch {
                expected: self.n(),
                found: order.len(),
            });
        }
        Self::new(order.iter().map(|&i| self.polarizers[i]).collect())
    }
}

/// Coefficients of `prod_i (alpha_i + beta_i z)`, constant term first.
pub fn product_polynomial(cfg: &PolarizerConfig) -> Vec<C64> {
    let mut e = Vec::with_capacity(cfg.n() + 1);
    e.push(C64::new(1.0, 0.0));
    for p in cfg.polarizers() {
        e.push(C64::new(0.0, 0.0));
        for k in (1..e.len()).rev() {
            e[k] = e[k] * p.alpha() + e[k - 1] * p.beta();
        }
        e[0] *= p.alpha();
    }
    e
}

/// Unnormalized Dicke coefficients of the symmetrized product
/// `(1/N!) sum_sigma eps_sigma(1) (x) ... (x) eps_sigma(N)`, i.e.
/// `c_k = e_k / sqrt(C(N, k))`.
///
/// These differ from the raw cascade amplitudes by the constant `N!`. With
/// this convention the 3-tangle closed form in [`crate::measures`] holds with
/// `norm = 1 / ||c||`.
pub fn symmetrized_coefficients(cfg: &PolarizerConfig) -> Vec<C64> {
    let n = cfg.n();
    product_polynomial(cfg)
        .into_iter()
        .enumerate()
        .map(|(k, e)| e / binomial(n, k).sqrt())
        .collect()
}

/// Normalized final state `|psi_f>` in the Dicke basis.
pub fn dicke_coefficients(cfg: &PolarizerConfig) -> Result<SymmetricState> {
    SymmetricState::new(symmetrized_coefficients(cfg))
}

/// Intermediate register state after `step` detections.
#[derive(Debug, Clone, PartialEq)]
pub struct PyramidLevel {
    pub step: usize,
    pub terms: BTreeMap<Ket, C64>,
}

/// One transition of the pyramid: detector `step` (1-based) moves an excited
/// emitter of `parent` to `+` (weight `alpha_step`) or `-` (`beta_step`).
#[derive(Debug, Clone, PartialEq)]
pub struct PyramidEdge {
    pub step: usize,
    pub parent: Ket,
    pub child: Ket,
    pub weight: C64,
}

/// All levels of the detection cascade with the transitions between them.
#[derive(Debug, Clone, PartialEq)]
pub struct Pyramid {
    pub levels: Vec<PyramidLevel>,
    pub edges: Vec<PyramidEdge>,
}

impl Pyramid {
    pub fn final_level(&self) -> &PyramidLevel {
        self.levels.last().expect("pyramid has at least the initial level")
    }

    /// Normalized Dicke coefficients of the last level.
    pub fn final_state(&self) -> Result<SymmetricState> {
        let last = self.final_level();
        let n = last.terms.keys().next().map_or(0, Ket::len);
        let mut sums = vec![C64::new(0.0, 0.0); n + 1];
        for (ket, amp) in &last.terms {
            if ket.count(Level::Excited) > 0 {
                return Err(Error::ResidualExcitation(amp.norm_sqr()));
            }
            sums[ket.count(Level::Minus)] += amp;
        }
        SymmetricState::new(
            sums.into_iter()
                .enumerate()
                .map(|(k, s)| s / binomial(n, k).sqrt())
                .collect(),
        )
    }

    /// Indented listing, one block per level.
    pub fn to_text(&self) -> String {
        let mut out = String::new();
        for level in &self.levels {
            let indent = "  ".repeat(level.step);
            let _ = writeln!(out, "{indent}level {} ({} kets)", level.step, level.terms.len());
            for (ket, amp) in &level.terms {
                let _ = writeln!(out, "{indent}  |{ket}>  {:+.6e} {:+.6e}i", amp.re, amp.im);
            }
        }
        out
    }

    /// Edge list as `level,parent_ket,child_ket,amp_re,amp_im` CSV, with
    /// header.
    pub fn edges_csv(&self) -> String {
        let mut out = String::from("level,parent_ket,child_ket,amp_re,amp_im\n");
        for e in &self.edges {
            let _ = writeln!(
                out,
                "{},{},{},{:.14e},{:.14e}",
                e.step, e.parent, e.child, e.weight.re + 0.0, e.weight.im + 0.0
            );
        }
        out
    }
}

/// Runs the cascade ket by ket from `|e, ..., e>`, keeping the full sum of
/// path amplitudes at every level.
pub fn build_pyramid(cfg: &PolarizerConfig) -> Result<Pyramid> {
    let n = cfg.n();
    let mut levels = Vec::with_capacity(n + 1);
    let mut edges = Vec::new();
    let mut current = BTreeMap::new();
    current.insert(Ket(vec![Level::Excited; n]), C64::new(1.0, 0.0));
    levels.push(PyramidLevel {
        step: 0,
        terms: current.clone(),
    });
    for (m, p) in cfg.polarizers().iter().enumerate() {
        let mut next: BTreeMap<Ket, C64> = BTreeMap::new();
        for (ket, amp) in &current {
            for j in (0..n).filter(|&j| ket.0[j] == Level::Excited) {
                for (level, weight) in [(Level::Plus, p.alpha()), (Level::Minus, p.beta())] {
                    let mut child = ket.clone();
                    child.0[j] = level;
                    *next.entry(child.clone()).or_default() += amp * weight;
                    edges.push(PyramidEdge {
                        step: m + 1,
                        parent: ket.clone(),
                        child,
                        weight,
                    });
                }
            }
        }
        next.retain(|_, a| a.norm_sqr() > 0.0);
        if next.is_empty() {
            return Err(Error::ZeroState);
        }
        levels.push(PyramidLevel {
            step: m + 1,
            terms: next.clone(),
        });
        current = next;
    }
    Ok(Pyramid { levels, edges })
}

/// Quantum-path bookkeeping for one final ket.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct PathCount {
    /// Detector-to-emitter assignments reaching the ket (always `N!`).
    pub orderings: u128,
    /// Distinct amplitude products `prod beta_S prod alpha_rest`, one per
    /// choice of the detectors that saw a `sigma_minus` photon: `C(N, k)`.
    pub distinct_products: u128,
    /// Orderings sharing each product: `k! (N-k)!`.
    pub multiplicity: u128,
}

fn factorial(n: usize) -> u128 {
    (1..=n as u128).product()
}

pub fn path_count(ket: &Ket) -> Result<PathCount> {
    if ket.count(Level::Excited) > 0 || ket.is_empty() {
        return Err(Error::InvalidKet(ket.to_string()));
    }
    let n = ket.len();
    let k = ket.count(Level::Minus);
    let multiplicity = factorial(k) * factorial(n - k);
    let orderings = factorial(n);
    Ok(PathCount {
        orderings,
        distinct_products: orderings / multiplicity,
        multiplicity,
    })
}
