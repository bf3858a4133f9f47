//! Brute-force state of `n` three-level emitters.
//!
//! Every amplitude over `{e, +, -}^n` is stored explicitly, so this is the
//! reference the closed-form routines are checked against. Emitter `j` is
//! base-3 digit `j` of the index (emitter 0 least significant), with digit
//! values `e = 0`, `+ = 1`, `- = 2`; the all-excited state is index 0.

use std::fmt;

use num_complex::Complex64 as C64;

use crate::error::{Error, Result};
use crate::polarizer::Polarizer;
use crate::state::{QubitState, SymmetricState, PROJECTION_TOL};

/// Internal level of one emitter.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Level {
    Excited = 0,
    Plus = 1,
    Minus = 2,
}

impl Level {
    fn from_digit(d: usize) -> Self {
        match d {
            0 => Level::Excited,
            1 => Level::Plus,
            _ => Level::Minus,
        }
    }

    pub fn symbol(self) -> char {
        match self {
            Level::Excited => 'e',
            Level::Plus => '+',
            Level::Minus => '-',
        }
    }

    pub fn from_symbol(c: char) -> Option<Self> {
        match c {
            'e' | 'E' => Some(Level::Excited),
            '+' => Some(Level::Plus),
            '-' => Some(Level::Minus),
            _ => None,
        }
    }
}

/// Computational ket of the emitter register, emitter 0 first.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Ket(pub Vec<Level>);

impl Ket {
    pub fn from_index(n: usize, mut index: usize) -> Self {
        let mut levels = Vec::with_capacity(n);
        for _ in 0..n {
            levels.push(Level::from_digit(index % 3));
            index /= 3;
        }
        Ket(levels)
    }

    pub fn index(&self) -> usize {
        self.0.iter().rev().fold(0, |acc, l| acc * 3 + *l as usize)
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn count(&self, level: Level) -> usize {
        self.0.iter().filter(|l| **l == level).count()
    }
}

impl std::str::FromStr for Ket {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        s.chars()
            .filter(|c| !matches!(c, ',' | ' ' | '|' | '>' | '<'))
            .map(|c| Level::from_symbol(c).ok_or_else(|| Error::InvalidKet(s.to_string())))
            .collect::<Result<Vec<_>>>()
            .map(Ket)
    }
}

impl fmt::Display for Ket {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for l in &self.0 {
            write!(f, "{}", l.symbol())?;
        }
        Ok(())
    }
}

/// Full `3^n` amplitude vector.
#[derive(Debug, Clone, PartialEq)]
pub struct EmitterRegister {
    n: usize,
    amps: Vec<C64>,
}

impl EmitterRegister {
    /// `|e, ..., e>`.
    pub fn excited(n: usize) -> Self {
        let mut amps = vec![C64::new(0.0, 0.0); 3usize.pow(n as u32)];
        amps[0] = C64::new(1.0, 0.0);
        Self { n, amps }
    }

    pub fn new(n: usize, amps: Vec<C64>) -> Result<Self> {
        let dim = 3usize.pow(n as u32);
        if amps.len() != dim {
            return Err(Error::DimensionMismatch {
                expected: dim,
                found: amps.len(),
            });
        }
        Ok(Self { n, amps })
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn amps(&self) -> &[C64] {
        &self.amps
    }

    pub fn amplitude(&self, ket: &Ket) -> C64 {
        self.amps[ket.index()]
    }

    pub fn norm(&self) -> f64 {
        self.amps.iter().map(|a| a.norm_sqr()).sum::<f64>().sqrt()
    }

    /// Nonzero components as `(ket, amplitude)`, in index order.
    pub fn terms(&self) -> impl Iterator<Item = (Ket, C64)> + '_ {
        self.amps
            .iter()
            .enumerate()
            .filter(|(_, a)| a.norm_sqr() > 0.0)
            .map(|(i, a)| (Ket::from_index(self.n, i), *a))
    }

    pub fn scale(&self, factor: C64) -> Self {
        Self {
            n: self.n,
            amps: self.amps.iter().map(|a| a * factor).collect(),
        }
    }

    pub fn add(&self, other: &EmitterRegister) -> Result<Self> {
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

    /// Relabels emitters: emitter `j` becomes emitter `perm[j]`.
    pub fn permute(&self, perm: &[usize]) -> Result<Self> {
        if perm.len() != self.n {
            return Err(Error::DimensionMismatch {
                expected: self.n,
                found: perm.len(),
            });
        }
        let mut amps = vec![C64::new(0.0, 0.0); self.amps.len()];
        for (i, a) in self.amps.iter().enumerate() {
            let ket = Ket::from_index(self.n, i);
            let mut moved = ket.0.clone();
            for (j, l) in ket.0.iter().enumerate() {
                moved[perm[j]] = *l;
            }
            amps[Ket(moved).index()] = *a;
        }
        Ok(Self { n: self.n, amps })
    }

    /// Applies `alpha sum_j |+>_j<e| + beta sum_j |->_j<e|`. The result is
    /// left unnormalized.
    pub fn apply_detection(&self, p: &Polarizer) -> Result<Self> {
        self.apply_weighted_detection(p, &vec![C64::new(1.0, 0.0); self.n])
    }

    /// Detection where emitter `j`'s term carries the extra factor
    /// `weights[j]` (e.g. a far-field propagation phase).
    pub fn apply_weighted_detection(&self, p: &Polarizer, weights: &[C64]) -> Result<Self> {
        if weights.len() != self.n {
            return Err(Error::DimensionMismatch {
                expected: self.n,
                found: weights.len(),
            });
        }
        let mut out = vec![C64::new(0.0, 0.0); self.amps.len()];
        let (alpha, beta) = (p.alpha(), p.beta());
        for (i, &a) in self.amps.iter().enumerate() {
            if a.norm_sqr() == 0.0 {
                continue;
            }
            let mut rest = i;
            let mut place = 1;
            for w in weights {
                if rest % 3 == 0 {
                    let aw = a * w;
                    out[i + place] += alpha * aw;
                    out[i + 2 * place] += beta * aw;
                }
                rest /= 3;
                place *= 3;
            }
        }
        if out.iter().all(|a| a.norm_sqr() == 0.0) {
            return Err(Error::NoExcitedPopulation);
        }
        Ok(Self {
            n: self.n,
            amps: out,
        })
    }

    /// Amplitudes over `{+, -}^n`, qubit `j` = emitter `j`, `+ -> 0`,
    /// `- -> 1`. Fails if more than [`PROJECTION_TOL`] of the squared norm
    /// sits on kets with an excited emitter.
    pub fn to_qubits(&self) -> Result<QubitState> {
        let total = self.norm().powi(2);
        if total == 0.0 {
            return Err(Error::ZeroState);
        }
        let n = self.n;
        let mut qubits = vec![C64::new(0.0, 0.0); 1 << n];
        let mut kept = 0.0;
        for (q, slot) in qubits.iter_mut().enumerate() {
            // digit 1 for '+', 2 for '-'
            let idx = (0..n)
                .rev()
                .fold(0, |acc, j| acc * 3 + 1 + ((q >> j) & 1));
            *slot = self.amps[idx];
            kept += slot.norm_sqr();
        }
        let residual = (total - kept) / total;
        if residual > PROJECTION_TOL {
            return Err(Error::ResidualExcitation(residual));
        }
        QubitState::new(n, qubits)
    }

    /// Dicke coefficients of a fully de-excited register, normalized.
    pub fn project_symmetric(&self) -> Result<SymmetricState> {
        self.to_qubits()?.to_symmetric()
    }
}

/// Free-function form of [`EmitterRegister::apply_detection`].
pub fn apply_detection(reg: &EmitterRegister, p: &Polarizer) -> Result<EmitterRegister> {
    reg.apply_detection(p)
}

/// Free-function form of [`EmitterRegister::project_symmetric`].
pub fn project_symmetric(reg: &EmitterRegister) -> Result<SymmetricState> {
    reg.project_symmetric()
}
