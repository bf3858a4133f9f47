//! Entanglement measures of heralded states and the three-qubit class
//! monitor.
//!
//! Class criteria for three qubits: nonzero 3-tangle means GHZ class; zero
//! tangle with some nonzero single-qubit entropy means W class; everything
//! vanishing means a separable state.

use std::fmt;

use nalgebra::DMatrix;
use num_complex::Complex64 as C64;

use crate::cascade::{symmetrized_coefficients, PolarizerConfig};
use crate::error::{Error, Result};
use crate::polarizer::Polarizer;
use crate::state::QubitState;

/// Threshold separating numerically zero tangle/entropy from nonzero.
pub const CLASS_TOL: f64 = 1e-7;

/// Slack allowed before a measure outside `[0, 1]` counts as an error.
const RANGE_SLACK: f64 = 1e-9;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum EntanglementClass {
    /// Fully separable.
    S,
    W,
    Ghz,
}

impl fmt::Display for EntanglementClass {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            EntanglementClass::S => "S",
            EntanglementClass::W => "W",
            EntanglementClass::Ghz => "GHZ",
        })
    }
}

/// Class predicted from the number of distinct polarizer orientations.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct ClassPrediction {
    pub distinct_orientations: usize,
    pub predicted_class: EntanglementClass,
}

/// Measured entanglement of a three-qubit state.
#[derive(Debug, Clone, PartialEq)]
pub struct EntanglementReport {
    pub tangle: f64,
    /// Von Neumann entropy (bits) of each single-qubit reduced state.
    pub entropies: [f64; 3],
    /// Concurrences of the pairs (0,1), (0,2), (1,2).
    pub pair_concurrences: [f64; 3],
    pub inferred_class: EntanglementClass,
}

pub const PAIRS: [(usize, usize); 3] = [(0, 1), (0, 2), (1, 2)];

fn check_arity(n: usize, expected: usize) -> Result<()> {
    if n != expected {
        return Err(Error::WrongArity { expected, found: n });
    }
    Ok(())
}

fn clamp_unit(value: f64) -> Result<f64> {
    if !(-RANGE_SLACK..=1.0 + RANGE_SLACK).contains(&value) || value.is_nan() {
        return Err(Error::InvalidArgument(format!(
            "measure {value} outside [0, 1]"
        )));
    }
    Ok(value.clamp(0.0, 1.0))
}

/// 3-tangle from the polarizer settings alone:
/// `4/27 * norm^4 * prod_{i<j} |alpha_i beta_j - alpha_j beta_i|^2`.
///
/// `norm` normalizes the symmetrized-product coefficients of
/// [`symmetrized_coefficients`]; with the raw cascade amplitudes (larger by
/// `N! = 6`) the prefactor would be off by `6^4`.
pub fn tangle_closed_form(cfg: &PolarizerConfig) -> Result<f64> {
    check_arity(cfg.n(), 3)?;
    let c = symmetrized_coefficients(cfg);
    let norm_sqr: f64 = c.iter().map(|x| x.norm_sqr()).sum();
    if norm_sqr == 0.0 || !norm_sqr.is_finite() {
        return Err(Error::ZeroState);
    }
    let p = cfg.polarizers();
    let cross: f64 = PAIRS
        .iter()
        .map(|&(i, j)| p[i].separation(&p[j]).powi(2))
        .product();
    clamp_unit(4.0 / 27.0 * cross / (norm_sqr * norm_sqr))
}

/// Cayley hyperdeterminant of a `2x2x2` amplitude tensor, `a[i]` with bit
/// `j` of `i` the index of qubit `j`.
pub fn hyperdeterminant(a: &[C64]) -> Result<C64> {
    check_arity(a.len(), 8)?;
    let t = |x: usize, y: usize, z: usize| a[x | (y << 1) | (z << 2)];
    let (a000, a001, a010, a011) = (t(0, 0, 0), t(0, 0, 1), t(0, 1, 0), t(0, 1, 1));
    let (a100, a101, a110, a111) = (t(1, 0, 0), t(1, 0, 1), t(1, 1, 0), t(1, 1, 1));
    let squares = a000 * a000 * a111 * a111
        + a001 * a001 * a110 * a110
        + a010 * a010 * a101 * a101
        + a100 * a100 * a011 * a011;
    let pairs = a000 * a111 * a011 * a100
        + a000 * a111 * a101 * a010
        + a000 * a111 * a110 * a001
        + a011 * a100 * a101 * a010
        + a011 * a100 * a110 * a001
        + a101 * a010 * a110 * a001;
    let quads = a000 * a110 * a101 * a011 + a111 * a001 * a010 * a100;
    Ok(squares - 2.0 * pairs + 4.0 * quads)
}

/// Residual 3-tangle `4 |Det(psi)|` of the normalized state.
pub fn tangle_hyperdeterminant(state: &QubitState) -> Result<f64> {
    check_arity(state.n(), 3)?;
    let psi = state.normalized()?;
    clamp_unit(4.0 * hyperdeterminant(psi.amps())?.norm())
}

fn check_qubit(state: &QubitState, q: usize) -> Result<()> {
    if q >= state.n() {
        return Err(Error::IndexOutOfRange {
            index: q,
            n: state.n(),
        });
    }
    Ok(())
}

/// Reduced density matrix of qubit `q` as `[[r00, r01], [r10, r11]]`.
pub fn single_qubit_rdm(state: &QubitState, q: usize) -> Result<[[C64; 2]; 2]> {
    check_qubit(state, q)?;
    let psi = state.normalized()?;
    let a = psi.amps();
    let bit = 1usize << q;
    let mut rho = [[C64::new(0.0, 0.0); 2]; 2];
    for i in (0..a.len()).filter(|i| i & bit == 0) {
        let (x0, x1) = (a[i], a[i | bit]);
        rho[0][0] += x0 * x0.conj();
        rho[0][1] += x0 * x1.conj();
        rho[1][0] += x1 * x0.conj();
        rho[1][1] += x1 * x1.conj();
    }
    Ok(rho)
}

fn entropy_bits(eigs: &[f64]) -> f64 {
    eigs.iter()
        .filter(|&&l| l > 0.0)
        .map(|&l| -l * l.log2())
        .sum::<f64>()
        .max(0.0)
}

/// Von Neumann entropy, in bits, of qubit `q`'s reduced state.
pub fn single_qubit_entropy(state: &QubitState, q: usize) -> Result<f64> {
    let rho = single_qubit_rdm(state, q)?;
    let trace = rho[0][0].re + rho[1][1].re;
    let det = (rho[0][0] * rho[1][1] - rho[0][1] * rho[1][0]).re;
    let disc = (trace * trace - 4.0 * det).max(0.0).sqrt();
    let hi = 0.5 * (trace + disc);
    // small eigenvalue from the determinant, which keeps its relative accuracy
    let lo = if hi > 0.0 { (det / hi).max(0.0) } else { 0.0 };
    Ok(entropy_bits(&[hi, lo]))
}

/// Wootters concurrence of the reduced state of qubits `i` and `j`.
///
/// Tracing out the other qubits leaves `rho = sum_c |v_c><v_c|` with
/// `|v_c>` the unnormalized conditional states. The Wootters values
/// `lambda` are the singular values of `T_cd = <v_c| sy(x)sy |v_d*>`, so
/// nothing is square-rooted from a near-zero eigenvalue.
pub fn pair_concurrence(state: &QubitState, i: usize, j: usize) -> Result<f64> {
    check_qubit(state, i)?;
    check_qubit(state, j)?;
    if i == j {
        return Err(Error::InvalidArgument("concurrence needs two distinct qubits".into()));
    }
    let psi = state.normalized()?;
    let a = psi.amps();
    let n = psi.n();
    let (bi, bj) = (1usize << i, 1usize << j);
    let rest: Vec<usize> = (0..1usize << n).filter(|x| x & (bi | bj) == 0).collect();
    // |v_c> in the order |00>, |01>, |10>, |11> (qubit i first)
    let vectors: Vec<[C64; 4]> = rest
        .iter()
        .map(|&r| [a[r], a[r | bj], a[r | bi], a[r | bi | bj]])
        .collect();
    // sy (x) sy |x*> = (x11*, -x10*, -x01*, x00*)
    let flip = |v: &[C64; 4]| [v[3].conj(), -v[2].conj(), -v[1].conj(), v[0].conj()];
    let m = vectors.len();
    let t = DMatrix::from_fn(m, m, |c, d| {
        let w = flip(&vectors[d]);
        (0..4).map(|x| vectors[c][x].conj() * w[x]).sum::<C64>()
    });
    let mut lambdas: Vec<f64> = t.singular_values().iter().copied().collect();
    lambdas.sort_by(|x, y| y.total_cmp(x));
    let first = lambdas.first().copied().unwrap_or(0.0);
    let rest_sum: f64 = lambdas.iter().skip(1).sum();
    clamp_unit((first - rest_sum).max(0.0))
}

/// Full three-qubit report and the class it implies.
pub fn entanglement_report(state: &QubitState) -> Result<EntanglementReport> {
    check_arity(state.n(), 3)?;
    let tangle = tangle_hyperdeterminant(state)?;
    let mut entropies = [0.0; 3];
    for (q, e) in entropies.iter_mut().enumerate() {
        *e = single_qubit_entropy(state, q)?;
    }
    let mut pair_concurrences = [0.0; 3];
    for (slot, &(i, j)) in pair_concurrences.iter_mut().zip(&PAIRS) {
        *slot = pair_concurrence(state, i, j)?;
    }
    let inferred_class = if tangle > CLASS_TOL {
        EntanglementClass::Ghz
    } else if entropies.iter().any(|&e| e > CLASS_TOL) {
        EntanglementClass::W
    } else {
        EntanglementClass::S
    };
    Ok(EntanglementReport {
        tangle,
        entropies,
        pair_concurrences,
        inferred_class,
    })
}

pub fn classify_from_state(state: &QubitState) -> Result<EntanglementClass> {
    entanglement_report(state).map(|r| r.inferred_class)
}

/// Number of projectively distinct orientations, grouping greedily by
/// [`Polarizer::same_orientation`].
pub fn distinct_orientations(polarizers: &[Polarizer]) -> usize {
    let mut reps: Vec<&Polarizer> = Vec::new();
    for p in polarizers {
        if !reps.iter().any(|r| r.same_orientation(p)) {
            reps.push(p);
        }
    }
    reps.len()
}

pub fn classify_from_config(cfg: &PolarizerConfig) -> Result<ClassPrediction> {
    check_arity(cfg.n(), 3)?;
    let distinct = distinct_orientations(cfg.polarizers());
    let predicted_class = match distinct {
        1 => EntanglementClass::S,
        2 => EntanglementClass::W,
        _ => EntanglementClass::Ghz,
    };
    Ok(ClassPrediction {
        distinct_orientations: distinct,
        predicted_class,
    })
}
