#![allow(dead_code)]

use herald::{Complex64 as C64, EmitterRegister, Polarizer, PolarizerConfig, SymmetricState};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rand_distr::StandardNormal;

pub fn rng(seed: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed)
}

pub fn gaussian_c64<R: Rng>(rng: &mut R) -> C64 {
    C64::new(rng.sample(StandardNormal), rng.sample(StandardNormal))
}

/// Uniformly distributed (Haar) polarizer.
pub fn random_polarizer<R: Rng>(rng: &mut R) -> Polarizer {
    Polarizer::new(gaussian_c64(rng), gaussian_c64(rng)).unwrap()
}

pub fn random_config<R: Rng>(rng: &mut R, n: usize) -> PolarizerConfig {
    PolarizerConfig::new((0..n).map(|_| random_polarizer(rng)).collect()).unwrap()
}

pub fn random_target<R: Rng>(rng: &mut R, n: usize) -> SymmetricState {
    SymmetricState::new((0..=n).map(|_| gaussian_c64(rng)).collect()).unwrap()
}

/// Brute-force cascade: apply every detection to the full register and
/// project at the end.
pub fn register_cascade(cfg: &PolarizerConfig) -> EmitterRegister {
    cfg.polarizers()
        .iter()
        .fold(EmitterRegister::excited(cfg.n()), |reg, p| {
            reg.apply_detection(p).unwrap()
        })
}

pub fn oracle_state(cfg: &PolarizerConfig) -> SymmetricState {
    register_cascade(cfg).project_symmetric().unwrap()
}

/// All permutations of `0..n` (Heap's algorithm).
pub fn permutations(n: usize) -> Vec<Vec<usize>> {
    fn heap(k: usize, a: &mut Vec<usize>, out: &mut Vec<Vec<usize>>) {
        if k <= 1 {
            out.push(a.clone());
            return;
        }
        heap(k - 1, a, out);
        for i in 0..k - 1 {
            if k.is_multiple_of(2) {
                a.swap(i, k - 1);
            } else {
                a.swap(0, k - 1);
            }
            heap(k - 1, a, out);
        }
    }
    let mut a: Vec<usize> = (0..n).collect();
    let mut out = Vec::new();
    heap(n, &mut a, &mut out);
    out
}
