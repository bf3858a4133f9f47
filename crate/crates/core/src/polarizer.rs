//! Detector polarization settings.
//!
//! A polarizer is a Jones vector `alpha * sigma_plus + beta * sigma_minus`.
//! Only its projective class (the ratio `alpha : beta`) changes the heralded
//! state; the overall phase and scale drop out after normalization.

use std::f64::consts::{FRAC_1_SQRT_2, PI};
use std::fmt;

use num_complex::Complex64 as C64;

use crate::error::{Error, Result};

/// Tolerance on `|alpha1 beta2 - alpha2 beta1|` below which two polarizers
/// count as the same orientation.
pub const ORIENT_TOL: f64 = 1e-9;

/// Normalized complex polarization vector on the circular basis.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Polarizer {
    alpha: C64,
    beta: C64,
}

impl Polarizer {
    /// Builds a polarizer from unnormalized amplitudes on `sigma_plus` and
    /// `sigma_minus`.
    pub fn new(alpha: C64, beta: C64) -> Result<Self> {
        let norm = (alpha.norm_sqr() + beta.norm_sqr()).sqrt();
        if norm == 0.0 || !norm.is_finite() {
            return Err(Error::ZeroVector);
        }
        Ok(Self {
            alpha: alpha / norm,
            beta: beta / norm,
        })
    }

    pub fn sigma_plus() -> Self {
        Self {
            alpha: C64::new(1.0, 0.0),
            beta: C64::new(0.0, 0.0),
        }
    }

    pub fn sigma_minus() -> Self {
        Self {
            alpha: C64::new(0.0, 0.0),
            beta: C64::new(1.0, 0.0),
        }
    }

    /// Linear polarizer at angle `theta` (radians).
    pub fn linear(theta: f64) -> Self {
        LinearAngle::new(theta).polarizer()
    }

    /// Polarizer whose ratio `alpha / beta` equals `ratio`.
    ///
    /// The infinite ratio is not representable here; use [`Polarizer::sigma_plus`].
    pub fn from_ratio(ratio: C64) -> Self {
        let norm = (1.0 + ratio.norm_sqr()).sqrt();
        Self {
            alpha: ratio / norm,
            beta: C64::new(1.0 / norm, 0.0),
        }
    }

    pub fn alpha(&self) -> C64 {
        self.alpha
    }

    pub fn beta(&self) -> C64 {
        self.beta
    }

    /// Same orientation with an extra global phase `gamma`.
    pub fn with_phase(&self, gamma: f64) -> Self {
        let p = C64::from_polar(1.0, gamma);
        Self {
            alpha: self.alpha * p,
            beta: self.beta * p,
        }
    }

    /// `|alpha_p beta_q - alpha_q beta_p|`, the sine of half the Bloch-sphere
    /// angle between the two orientations. Zero iff projectively equal.
    pub fn separation(&self, other: &Polarizer) -> f64 {
        (self.alpha * other.beta - other.alpha * self.beta).norm()
    }

    /// Projective equality within [`ORIENT_TOL`].
    pub fn same_orientation(&self, other: &Polarizer) -> bool {
        self.separation(other) <= ORIENT_TOL
    }
}

impl fmt::Display for Polarizer {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(
            f,
            "({:.6}{:+.6}i) s+ + ({:.6}{:+.6}i) s-",
            self.alpha.re, self.alpha.im, self.beta.re, self.beta.im
        )
    }
}

/// Free-function form of [`Polarizer::same_orientation`].
pub fn same_orientation(p: &Polarizer, q: &Polarizer) -> bool {
    p.same_orientation(q)
}

/// Orientation of a linear polarizer, reduced to `[0, pi)`.
#[derive(Debug, Clone, Copy, PartialEq, PartialOrd)]
pub struct LinearAngle(f64);

impl LinearAngle {
    pub fn new(theta: f64) -> Self {
        let mut t = theta.rem_euclid(PI);
        // rem_euclid can round up to exactly PI for tiny negative inputs
        if t >= PI {
            t = 0.0;
        }
        Self(t)
    }

    pub fn radians(&self) -> f64 {
        self.0
    }

    /// `(e^{-i theta} sigma_plus + e^{i theta} sigma_minus) / sqrt(2)`.
    pub fn polarizer(&self) -> Polarizer {
        Polarizer {
            alpha: C64::from_polar(FRAC_1_SQRT_2, -self.0),
            beta: C64::from_polar(FRAC_1_SQRT_2, self.0),
        }
    }
}

impl From<LinearAngle> for Polarizer {
    fn from(angle: LinearAngle) -> Self {
        angle.polarizer()
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use std::f64::consts::FRAC_PI_4;

    #[test]
    fn normalizes_input() {
        let p = Polarizer::new(C64::new(2.0, 0.0), C64::new(0.0, 0.0)).unwrap();
        assert_eq!(p.alpha(), C64::new(1.0, 0.0));
        assert_eq!(p.beta(), C64::new(0.0, 0.0));

        let p = Polarizer::new(C64::new(3.0, 1.0), C64::new(-2.0, 0.5)).unwrap();
        assert!((p.alpha().norm_sqr() + p.beta().norm_sqr() - 1.0).abs() < 1e-12);
    }

    #[test]
    fn zero_vector_rejected() {
        assert_eq!(
            Polarizer::new(C64::new(0.0, 0.0), C64::new(0.0, 0.0)),
            Err(Error::ZeroVector)
        );
    }

    #[test]
    fn phase_pair_matches_linear_angle() {
        let p = Polarizer::new(C64::from_polar(1.0, -FRAC_PI_4), C64::from_polar(1.0, FRAC_PI_4))
            .unwrap();
        let q = LinearAngle::new(FRAC_PI_4).polarizer();
        assert!((p.alpha() - q.alpha()).norm() < 1e-15);
        assert!((p.beta() - q.beta()).norm() < 1e-15);
        assert!((q.alpha() - C64::from_polar(FRAC_1_SQRT_2, -FRAC_PI_4)).norm() < 1e-15);
    }

    #[test]
    fn orientation_predicate() {
        let sp = Polarizer::sigma_plus();
        assert!(same_orientation(&sp, &sp));
        assert!(!same_orientation(&Polarizer::linear(0.0), &Polarizer::linear(PI / 2.0)));
        let p = Polarizer::new(C64::new(0.3, -0.7), C64::new(1.1, 0.2)).unwrap();
        assert!(same_orientation(&p, &p.with_phase(2.1)));
        // theta and theta + pi are the same linear polarizer
        assert!(same_orientation(&Polarizer::linear(0.4), &Polarizer::linear(0.4 + PI)));
    }

    #[test]
    fn angle_reduction() {
        assert!((LinearAngle::new(-0.25).radians() - (PI - 0.25)).abs() < 1e-15);
        assert_eq!(LinearAngle::new(PI).radians(), 0.0);
        assert_eq!(LinearAngle::new(-1e-300).radians(), 0.0);
    }
}
