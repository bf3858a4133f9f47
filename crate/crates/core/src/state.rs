//! Symmetric (Dicke-basis) and full qubit-basis state vectors.
//!
//! Qubit kets are indexed little-endian: bit `j` of the index is qubit `j`,
//! with `0 = |+>` and `1 = |->`. Dicke index `k` counts the `|->` qubits.

use num_complex::Complex64 as C64;

use crate::error::{Error, Result};

/// Tolerance used when deciding that a projected state leaks norm.
pub const PROJECTION_TOL: f64 = 1e-10;

/// Binomial coefficient as `f64`. Exact for every size used here.
pub fn binomial(n: usize, k: usize) -> f64 {
    if k > n {
        return 0.0;
    }
    let k = k.min(n - k);
    (0..k).fold(1.0, |acc, i| acc * (n - i) as f64 / (i + 1) as f64).round()
}

/// Label of the Dicke state `|D_n(k)>`: equal superposition of the
/// `C(n, k)` kets with exactly `k` qubits in `|->`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct DickeIndex {
    n: usize,
    k: usize,
}

impl DickeIndex {
    pub fn new(n: usize, k: usize) -> Result<Self> {
        if k > n {
            return Err(Error::InvalidArgument(format!("Dicke index k={k} exceeds n={n}")));
        }
        Ok(Self { n, k })
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn k(&self) -> usize {
        self.k
    }

    pub fn multiplicity(&self) -> f64 {
        binomial(self.n, self.k)
    }

    /// Amplitude carried by each of its computational kets.
    pub fn ket_amplitude(&self) -> f64 {
        self.multiplicity().sqrt().recip()
    }

    /// Indices of the computational kets in the expansion.
    pub fn kets(&self) -> impl Iterator<Item = usize> + '_ {
        (0..1usize << self.n).filter(move |i| i.count_ones() as usize == self.k)
    }
}

/// Normalized state of the symmetric subspace, stored as Dicke coefficients
/// `d_0 ..= d_n`.
#[derive(Debug, Clone, PartialEq)]
pub struct SymmetricState {
    coeffs: Vec<C64>,
}

impl SymmetricState {
    /// Normalizes `coeffs` (listed `k = 0..=n`). Fails on an empty or zero
    /// vector.
    pub fn new(coeffs: Vec<C64>) -> Result<Self> {
        Self::with_norm(coeffs).map(|(s, _)| s)
    }

    /// Like [`SymmetricState::new`], also returning the normalization factor
    /// `1 / ||coeffs||` that was applied.
    pub fn with_norm(mut coeffs: Vec<C64>) -> Result<(Self, f64)> {
        if coeffs.is_empty() {
            return Err(Error::InvalidArgument("empty coefficient list".into()));
        }
        let norm = coeffs.iter().map(|c| c.norm_sqr()).sum::<f64>().sqrt();
        if norm == 0.0 || !norm.is_finite() {
            return Err(Error::ZeroState);
        }
        let inv = norm.recip();
        coeffs.iter_mut().for_each(|c| *c *= inv);
        Ok((Self { coeffs }, inv))
    }

    pub fn dicke(index: DickeIndex) -> Self {
        let mut coeffs = vec![C64::new(0.0, 0.0); index.n + 1];
        coeffs[index.k] = C64::new(1.0, 0.0);
        Self { coeffs }
    }

    /// Number of qubits.
    pub fn n(&self) -> usize {
        self.coeffs.len() - 1
    }

    pub fn coeffs(&self) -> &[C64] {
        &self.coeffs
    }

    pub fn coeff(&self, k: usize) -> C64 {
        self.coeffs[k]
    }

    /// Copy with the global phase fixed so the first nonzero coefficient is
    /// real and positive.
    pub fn canonicalize(&self) -> Self {
        let lead = self.coeffs.iter().find(|c| c.norm() > PROJECTION_TOL);
        match lead {
            Some(c) => {
                let rot = c.conj() / c.norm();
                Self {
                    coeffs: self.coeffs.iter().map(|x| x * rot).collect(),
                }
            }
            None => self.clone(),
        }
    }

    /// `<self|other>`.
    pub fn inner(&self, other: &SymmetricState) -> Result<C64> {
        if self.n() != other.n() {
            return Err(Error::DimensionMismatch {
                expected: self.n(),
                found: other.n(),
            });
        }
        Ok(self
            .coeffs
            .iter()
            .zip(&other.coeffs)
            .map(|(a, b)| a.conj() * b)
            .sum())
    }

    /// Expansion over the `2^n` computational kets.
    pub fn to_qubits(&self) -> QubitState {
        let n = self.n();
        let amps = (0..1usize << n)
            .map(|i| {
                let k = i.count_ones() as usize;
                self.coeffs[k] / binomial(n, k).sqrt()
            })
            .collect();
        QubitState { n, amps }
    }
}

/// `|<a|b>|^2`, insensitive to global phase.
pub fn fidelity(a: &SymmetricState, b: &SymmetricState) -> Result<f64> {
    Ok(a.inner(b)?.norm_sqr().min(1.0))
}

/// State vector over `2^n` computational kets. Not necessarily normalized.
#[derive(Debug, Clone, PartialEq)]
pub struct QubitState {
    n: usize,
    amps: Vec<C64>,
}

impl QubitState {
    pub fn new(n: usize, amps: Vec<C64>) -> Result<Self> {
        if amps.len() != 1usize << n {
            return Err(Error::DimensionMismatch {
                expected: 1 << n,
                found: amps.len(),
            });
        }
        Ok(Self { n, amps })
    }

    /// Tensor product of single-qubit vectors `[<+|q>, <-|q>]`, qubit 0 first.
    pub fn product(factors: &[[C64; 2]]) -> Self {
        let n = factors.len();
        let amps = (0..1usize << n)
            .map(|i| {
                factors
                    .iter()
                    .enumerate()
                    .map(|(j, f)| f[(i >> j) & 1])
                    .product()
            })
            .collect();
        Self { n, amps }
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn amps(&self) -> &[C64] {
        &self.amps
    }

    pub fn norm(&self) -> f64 {
        self.amps.iter().map(|a| a.norm_sqr()).sum::<f64>().sqrt()
    }

    pub fn normalized(&self) -> Result<Self> {
        let norm = self.norm();
        if norm == 0.0 || !norm.is_finite() {
            return Err(Error::ZeroState);
        }
        Ok(Self {
            n: self.n,
            amps: self.amps.iter().map(|a| a / norm).collect(),
        })
    }

    pub fn add(&self, other: &QubitState) -> Result<Self> {
        if self.n != other.n {
            return Err(Error::DimensionMismatch {
                expected: self.n,
                found: other.n,
            });
        }
        Ok(Self {
            n: self.n,
            amps: self.amps.iter().zip(&other.amps).map(|(a, b)| a + b).collect(),
        })
    }

    pub fn inner(&self, other: &QubitState) -> Result<C64> {
        if self.n != other.n {
            return Err(Error::DimensionMismatch {
                expected: self.n,
                found: other.n,
            });
        }
        Ok(self
            .amps
            .iter()
            .zip(&other.amps)
            .map(|(a, b)| a.conj() * b)
            .sum())
    }

    /// Relabels qubits: qubit `j` of `self` becomes qubit `perm[j]`.
    pub fn permute(&self, perm: &[usize]) -> Result<Self> {
        if perm.len() != self.n {
            return Err(Error::DimensionMismatch {
                expected: self.n,
                found: perm.len(),
            });
        }
        let mut amps = vec![C64::new(0.0, 0.0); self.amps.len()];
        for (i, a) in self.amps.iter().enumerate() {
            let j = (0..self.n).fold(0, |acc, q| acc | (((i >> q) & 1) << perm[q]));
            amps[j] = *a;
        }
        Ok(Self { n: self.n, amps })
    }

    /// Orthogonal projection onto the Dicke basis.
    ///
    /// Fails with [`Error::AsymmetricResidue`] when the projection loses more
    /// than [`PROJECTION_TOL`] of the norm (relative to the squared norm).
    pub fn to_symmetric(&self) -> Result<SymmetricState> {
        let n = self.n;
        let mut sums = vec![C64::new(0.0, 0.0); n + 1];
        for (i, a) in self.amps.iter().enumerate() {
            sums[i.count_ones() as usize] += a;
        }
        let coeffs: Vec<C64> = sums
            .into_iter()
            .enumerate()
            .map(|(k, s)| s / binomial(n, k).sqrt())
            .collect();
        let total = self.norm().powi(2);
        if total == 0.0 {
            return Err(Error::ZeroState);
        }
        let kept: f64 = coeffs.iter().map(|c| c.norm_sqr()).sum();
        let lost = (total - kept) / total;
        if lost > PROJECTION_TOL {
            return Err(Error::AsymmetricResidue(lost));
        }
        SymmetricState::new(coeffs)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use std::f64::consts::FRAC_1_SQRT_2;

    fn c(re: f64, im: f64) -> C64 {
        C64::new(re, im)
    }

    #[test]
    fn binomials() {
        assert_eq!(binomial(5, 2), 10.0);
        assert_eq!(binomial(8, 0), 1.0);
        assert_eq!(binomial(3, 4), 0.0);
        assert_eq!(binomial(20, 10), 184756.0);
    }

    #[test]
    fn dicke_expansion() {
        let idx = DickeIndex::new(4, 2).unwrap();
        assert_eq!(idx.kets().count(), 6);
        let q = SymmetricState::dicke(idx).to_qubits();
        for i in 0..16usize {
            let expect = if i.count_ones() == 2 { 1.0 / 6f64.sqrt() } else { 0.0 };
            assert!((q.amps()[i] - c(expect, 0.0)).norm() < 1e-15);
        }
        assert!(DickeIndex::new(2, 3).is_err());
    }

    #[test]
    fn fidelity_basics() {
        let x = SymmetricState::new(vec![c(0.3, 0.1), c(-0.2, 0.5), c(0.0, 1.0)]).unwrap();
        assert!((fidelity(&x, &x).unwrap() - 1.0).abs() < 1e-14);
        let a = SymmetricState::dicke(DickeIndex::new(3, 0).unwrap());
        let b = SymmetricState::dicke(DickeIndex::new(3, 3).unwrap());
        assert_eq!(fidelity(&a, &b).unwrap(), 0.0);
        let two = SymmetricState::dicke(DickeIndex::new(2, 0).unwrap());
        assert!(matches!(
            fidelity(&a, &two),
            Err(Error::DimensionMismatch { .. })
        ));
    }

    #[test]
    fn ghz_vs_product_overlap() {
        // GHZ_3 = (D0 + D3)/sqrt2 ; S_3 = (|+> + |->)^3 / 2^{3/2}, built in the
        // qubit basis and projected.
        let ghz = SymmetricState::new(vec![c(1.0, 0.0), c(0.0, 0.0), c(0.0, 0.0), c(1.0, 0.0)])
            .unwrap();
        let one = [c(FRAC_1_SQRT_2, 0.0), c(FRAC_1_SQRT_2, 0.0)];
        let s = QubitState::product(&[one, one, one]).to_symmetric().unwrap();
        assert!((fidelity(&ghz, &s).unwrap() - 0.25).abs() < 1e-14);
    }

    #[test]
    fn canonical_phase() {
        let s = SymmetricState::new(vec![c(0.0, 0.0), c(0.0, -2.0), c(1.0, 1.0)]).unwrap();
        let t = s.canonicalize();
        assert!(t.coeff(1).im.abs() < 1e-15 && t.coeff(1).re > 0.0);
        assert!((fidelity(&s, &t).unwrap() - 1.0).abs() < 1e-14);
        // the relative phase survives
        let rel_s = s.coeff(2) / s.coeff(1);
        let rel_t = t.coeff(2) / t.coeff(1);
        assert!((rel_s - rel_t).norm() < 1e-14);
    }

    #[test]
    fn asymmetric_state_rejected() {
        // |+,-> alone is not symmetric
        let q = QubitState::new(2, vec![c(0.0, 0.0), c(1.0, 0.0), c(0.0, 0.0), c(0.0, 0.0)])
            .unwrap();
        assert!(matches!(q.to_symmetric(), Err(Error::AsymmetricResidue(_))));
        let sym = QubitState::new(
            2,
            vec![c(0.0, 0.0), c(FRAC_1_SQRT_2, 0.0), c(FRAC_1_SQRT_2, 0.0), c(0.0, 0.0)],
        )
        .unwrap();
        let d = sym.to_symmetric().unwrap();
        assert!((d.coeff(1) - c(1.0, 0.0)).norm() < 1e-14);
    }

    #[test]
    fn permutation_relabels_qubits() {
        // |-,+,+> (index 1) with perm [2,0,1] -> qubit 0 goes to slot 2 -> index 4
        let mut amps = vec![c(0.0, 0.0); 8];
        amps[1] = c(1.0, 0.0);
        let q = QubitState::new(3, amps).unwrap().permute(&[2, 0, 1]).unwrap();
        assert_eq!(q.amps()[4], c(1.0, 0.0));
    }
}
