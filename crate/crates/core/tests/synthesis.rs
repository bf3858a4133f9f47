mod common;

use common::*;
use herald::cascade::dicke_coefficients;
use herald::state::fidelity;
use herald::synthesis::{synthesize, SynthesisPolynomial};
use herald::{Complex64 as C64, SymmetricState};
use rand::Rng;

#[test]
fn random_round_trips() {
    let mut r = rng(11);
    for _ in 0..200 {
        let n = r.random_range(1..=8);
        let target = random_target(&mut r, n);
        let cfg = synthesize(&target).unwrap();
        assert_eq!(cfg.n(), n);
        let f = fidelity(&dicke_coefficients(&cfg).unwrap(), &target).unwrap();
        assert!(f >= 1.0 - 1e-8, "n={n} fidelity {f}");
    }
}

#[test]
fn synthesis_is_idempotent_in_state_space() {
    let mut r = rng(12);
    for _ in 0..100 {
        let n = r.random_range(2..=8);
        let target = random_target(&mut r, n);
        let once = dicke_coefficients(&synthesize(&target).unwrap()).unwrap();
        let twice = dicke_coefficients(&synthesize(&once).unwrap()).unwrap();
        assert!(fidelity(&once, &twice).unwrap() >= 1.0 - 1e-8);
    }
}

#[test]
fn global_phase_does_not_move_orientations() {
    let mut r = rng(13);
    for _ in 0..50 {
        let n = r.random_range(2..=6);
        let target = random_target(&mut r, n);
        let phase = C64::from_polar(1.0, r.random_range(0.0..std::f64::consts::TAU));
        let rotated = SymmetricState::new(target.coeffs().iter().map(|d| d * phase).collect()).unwrap();
        let a = synthesize(&target).unwrap();
        let b = synthesize(&rotated).unwrap();
        // same multiset of orientations
        let mut rest: Vec<_> = b.polarizers().to_vec();
        for p in a.polarizers() {
            let i = rest
                .iter()
                .position(|q| p.separation(q) < 1e-9)
                .expect("orientation moved under a global phase");
            rest.remove(i);
        }
    }
}

#[test]
fn truncated_degree_adds_sigma_plus() {
    let mut r = rng(14);
    for _ in 0..50 {
        let n = r.random_range(2..=8);
        let degree = r.random_range(0..n);
        let mut d: Vec<C64> = (0..=n).map(|_| gaussian_c64(&mut r)).collect();
        d.iter_mut().skip(degree + 1).for_each(|x| *x = C64::new(0.0, 0.0));
        let target = SymmetricState::new(d).unwrap();
        assert_eq!(SynthesisPolynomial::from_target(&target).unwrap().degree(), degree);
        let cfg = synthesize(&target).unwrap();
        let plus = cfg.polarizers().iter().filter(|p| p.beta().norm() == 0.0).count();
        assert_eq!(plus, n - degree);
        assert!(fidelity(&dicke_coefficients(&cfg).unwrap(), &target).unwrap() >= 1.0 - 1e-8);
    }
}

#[test]
fn printed_sign_convention_is_the_working_one() {
    // flipping the alternating sign (roots -alpha/beta) breaks the round trip
    let mut r = rng(15);
    let target = random_target(&mut r, 5);
    let poly = SynthesisPolynomial::from_target(&target).unwrap();
    let flipped: Vec<_> = poly
        .roots()
        .unwrap()
        .into_iter()
        .map(|z| herald::Polarizer::from_ratio(-z))
        .collect();
    let cfg = herald::PolarizerConfig::new(flipped).unwrap();
    assert!(fidelity(&dicke_coefficients(&cfg).unwrap(), &target).unwrap() < 0.999);
}
