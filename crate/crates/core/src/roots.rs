//! Roots of complex polynomials as eigenvalues of the balanced companion
//! matrix.

use nalgebra::{DMatrix, Schur};
use num_complex::Complex64 as C64;

use crate::error::{Error, Result};

const RADIX: f64 = 2.0;
const POLISH_STEPS: usize = 3;

/// Evaluates `sum_k coeffs[k] z^k` and its derivative (Horner).
pub fn eval_with_derivative(coeffs: &[C64], z: C64) -> (C64, C64) {
    let mut p = C64::new(0.0, 0.0);
    let mut dp = C64::new(0.0, 0.0);
    for c in coeffs.iter().rev() {
        dp = dp * z + p;
        p = p * z + c;
    }
    (p, dp)
}

fn l1(z: C64) -> f64 {
    z.re.abs() + z.im.abs()
}

/// Parlett-Reinsch diagonal similarity scaling by powers of two.
fn balance(m: &mut DMatrix<C64>) {
    let n = m.nrows();
    let mut done = false;
    while !done {
        done = true;
        for i in 0..n {
            let mut r = 0.0;
            let mut c = 0.0;
            for j in (0..n).filter(|&j| j != i) {
                c += l1(m[(j, i)]);
                r += l1(m[(i, j)]);
            }
            if c == 0.0 || r == 0.0 {
                continue;
            }
            let s = c + r;
            let mut f = 1.0;
            let mut g = r / RADIX;
            while c < g {
                f *= RADIX;
                c *= RADIX * RADIX;
            }
            g = r * RADIX;
            while c > g {
                f /= RADIX;
                c /= RADIX * RADIX;
            }
            if (c + r) / f < 0.95 * s {
                done = false;
                let inv = f.recip();
                for j in 0..n {
                    m[(i, j)] *= inv;
                    m[(j, i)] *= f;
                }
            }
        }
    }
}

/// All roots of `sum_k coeffs[k] z^k` (constant term first), with
/// multiplicity. The leading coefficient must be nonzero.
pub fn polynomial_roots(coeffs: &[C64]) -> Result<Vec<C64>> {
    let degree = coeffs.len().saturating_sub(1);
    let lead = *coeffs
        .last()
        .ok_or_else(|| Error::InvalidArgument("empty polynomial".into()))?;
    if lead.norm() == 0.0 {
        return Err(Error::InvalidArgument("leading coefficient is zero".into()));
    }
    // exact zero roots are split off; the companion matrix of z^m is
    // nilpotent and the QR iteration need not converge on it
    let zeros = coeffs.iter().take_while(|c| c.norm() == 0.0).count();
    let mut roots = vec![C64::new(0.0, 0.0); zeros];
    let coeffs = &coeffs[zeros..];
    let degree = degree - zeros;
    match degree {
        0 => return Ok(roots),
        1 => {
            roots.push(-coeffs[0] / lead);
            return Ok(roots);
        }
        _ => {}
    }

    let mut companion = DMatrix::<C64>::zeros(degree, degree);
    for i in 1..degree {
        companion[(i, i - 1)] = C64::new(1.0, 0.0);
    }
    for (i, c) in coeffs[..degree].iter().enumerate() {
        companion[(i, degree - 1)] = -c / lead;
    }
    balance(&mut companion);

    let eigen = Schur::try_new(companion, f64::EPSILON, 10_000)
        .and_then(|s| s.eigenvalues())
        .ok_or(Error::RootFindingFailure(degree))?;
    let mut found: Vec<C64> = eigen.iter().copied().collect();
    if found.iter().any(|z| !z.re.is_finite() || !z.im.is_finite()) {
        return Err(Error::RootFindingFailure(degree));
    }

    // Newton refinement, kept only while the residual shrinks.
    for z in found.iter_mut() {
        for _ in 0..POLISH_STEPS {
            let (p, dp) = eval_with_derivative(coeffs, *z);
            if dp.norm() == 0.0 {
                break;
            }
            let candidate = *z - p / dp;
            if eval_with_derivative(coeffs, candidate).0.norm() < p.norm() {
                *z = candidate;
            } else {
                break;
            }
        }
    }
    roots.extend(found);
    Ok(roots)
}
