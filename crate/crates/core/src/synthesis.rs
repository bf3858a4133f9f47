//! Inverse design: polarizer settings that herald a chosen symmetric state.
//!
//! The final state's Dicke coefficients are, up to a constant, those of
//! `prod_i (alpha_i + beta_i z)` rescaled by `sqrt(C(N, k))`. Reading that
//! backwards, the polynomial
//!
//! ```text
//! P(z) = sum_{k=0}^{K} (-1)^{K-k} sqrt(C(N,k) / C(N,K)) d_k z^k
//! ```
//!
//! has roots `alpha_i / beta_i` for `K` of the polarizers; the remaining
//! `N - K` polarizers are `sigma_plus` (`beta = 0`).

use std::f64::consts::{FRAC_1_SQRT_2, FRAC_PI_2, PI};

use num_complex::Complex64 as C64;

use crate::cascade::PolarizerConfig;
use crate::error::{Error, Result};
use crate::polarizer::Polarizer;
use crate::roots::polynomial_roots;
use crate::state::{binomial, QubitState, SymmetricState};

/// Dicke coefficients at or below this magnitude do not raise the degree.
pub const DEGREE_TOL: f64 = 1e-12;

/// Polynomial whose roots are the orientation ratios `alpha / beta`.
#[derive(Debug, Clone, PartialEq)]
pub struct SynthesisPolynomial {
    n: usize,
    coeffs: Vec<C64>,
}

impl SynthesisPolynomial {
    pub fn from_target(target: &SymmetricState) -> Result<Self> {
        let n = target.n();
        let d = target.coeffs();
        let degree = (0..=n)
            .rev()
            .find(|&k| d[k].norm() > DEGREE_TOL)
            .ok_or(Error::ZeroTarget)?;
        let top = binomial(n, degree);
        let coeffs = (0..=degree)
            .map(|k| {
                let sign = if (degree - k) % 2 == 0 { 1.0 } else { -1.0 };
                d[k] * sign * (binomial(n, k) / top).sqrt()
            })
            .collect();
        Ok(Self { n, coeffs })
    }

    /// Number of qubits of the target.
    pub fn n(&self) -> usize {
        self.n
    }

    /// `K`: the number of polarizers that are not `sigma_plus`.
    pub fn degree(&self) -> usize {
        self.coeffs.len() - 1
    }

    /// Coefficients `p_0 ..= p_K`.
    pub fn coeffs(&self) -> &[C64] {
        &self.coeffs
    }

    pub fn roots(&self) -> Result<Vec<C64>> {
        polynomial_roots(&self.coeffs)
    }
}

/// Polarizer configuration whose heralded state is `target`.
pub fn synthesize(target: &SymmetricState) -> Result<PolarizerConfig> {
    let poly = SynthesisPolynomial::from_target(target)?;
    let mut polarizers: Vec<Polarizer> = poly
        .roots()?
        .into_iter()
        .map(Polarizer::from_ratio)
        .collect();
    polarizers.resize(poly.n(), Polarizer::sigma_plus());
    PolarizerConfig::new(polarizers)
}

fn require_n(n: usize, min: usize) -> Result<()> {
    if n < min {
        return Err(Error::InvalidArgument(format!("need at least {min} emitters, got {n}")));
    }
    Ok(())
}

/// Linear polarizer angles heralding `(|+...+> + e^{i phi} |-...->)/sqrt2`.
///
/// `theta_k = [pi/(2n)] + phi/(2n) + (k-1) pi/n`, where the bracketed offset
/// is present only for even `n`.
pub fn ghz_angles(n: usize, phi: f64) -> Vec<f64> {
    let nf = n as f64;
    let offset = if n.is_multiple_of(2) { PI / (2.0 * nf) } else { 0.0 };
    (0..n)
        .map(|k| offset + phi / (2.0 * nf) + k as f64 * PI / nf)
        .collect()
}

pub fn ghz_config(n: usize, phi: f64) -> Result<PolarizerConfig> {
    require_n(n, 2)?;
    PolarizerConfig::linear(&ghz_angles(n, phi))
}

/// All polarizers linear at `phi/2`, heralding the product state
/// `|1_phi>^{(x) n}` with `|1_phi> = (|+> + e^{i phi}|->)/sqrt2`.
pub fn s_config(n: usize, phi: f64) -> Result<PolarizerConfig> {
    require_n(n, 1)?;
    PolarizerConfig::linear(&vec![phi / 2.0; n])
}

/// Angles for the W state with a single `|1_phi>` among `|0_phi>`'s, where
/// `|0_phi> = (|+> - e^{i phi}|->)/sqrt2`.
///
/// A linear polarizer at `theta` heralds `|1_{2 theta}>` on a single
/// emitter, so `|0_phi> = |1_{phi+pi}>` needs `theta = (phi + pi)/2` on
/// `n - 1` detectors and the orthogonal orientation `theta -/+ pi/2` on the
/// last one. `sign` picks which of the two equivalent orthogonal angles is
/// reported.
pub fn w_angles(n: usize, phi: f64, sign: i8) -> Vec<f64> {
    let common = (phi + PI) / 2.0;
    let last = if sign < 0 { common + FRAC_PI_2 } else { common - FRAC_PI_2 };
    let mut angles = vec![common; n.saturating_sub(1)];
    angles.push(last);
    angles
}

pub fn w_config(n: usize, phi: f64, sign: i8) -> Result<PolarizerConfig> {
    require_n(n, 2)?;
    PolarizerConfig::linear(&w_angles(n, phi, sign))
}

fn one_phi(phi: f64) -> [C64; 2] {
    [C64::new(FRAC_1_SQRT_2, 0.0), C64::from_polar(FRAC_1_SQRT_2, phi)]
}

fn zero_phi(phi: f64) -> [C64; 2] {
    [C64::new(FRAC_1_SQRT_2, 0.0), -C64::from_polar(FRAC_1_SQRT_2, phi)]
}

/// `(|+...+> + e^{i phi}|-...->)/sqrt2`.
pub fn ghz_state(n: usize, phi: f64) -> Result<SymmetricState> {
    require_n(n, 1)?;
    let mut d = vec![C64::new(0.0, 0.0); n + 1];
    d[0] = C64::new(FRAC_1_SQRT_2, 0.0);
    d[n] = C64::from_polar(FRAC_1_SQRT_2, phi);
    SymmetricState::new(d)
}

/// `|1_phi, ..., 1_phi>`.
pub fn separable_state(n: usize, phi: f64) -> Result<SymmetricState> {
    require_n(n, 1)?;
    QubitState::product(&vec![one_phi(phi); n]).to_symmetric()
}

/// `(|1_phi 0_phi ... 0_phi> + ... + |0_phi ... 0_phi 1_phi>)/sqrt(n)`.
pub fn w_state(n: usize, phi: f64) -> Result<SymmetricState> {
    require_n(n, 1)?;
    let mut sum = QubitState::new(n, vec![C64::new(0.0, 0.0); 1 << n])?;
    for j in 0..n {
        let factors: Vec<[C64; 2]> = (0..n)
            .map(|i| if i == j { one_phi(phi) } else { zero_phi(phi) })
            .collect();
        sum = sum.add(&QubitState::product(&factors))?;
    }
    sum.to_symmetric()
}
