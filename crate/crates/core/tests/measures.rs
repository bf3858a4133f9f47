mod common;

use common::*;
use herald::cascade::dicke_coefficients;
use herald::measures::*;
use herald::synthesis::{ghz_config, s_config, w_config};
use herald::{Complex64 as C64, Polarizer, PolarizerConfig, QubitState};
use nalgebra::{DMatrix, SymmetricEigen};
use rand::Rng;

/// Wootters concurrence via the eigenvalues of sqrt(rho) rho~ sqrt(rho),
/// from the explicitly traced two-qubit density matrix.
fn concurrence_by_density_matrix(psi: &QubitState, i: usize, j: usize) -> f64 {
    let a = psi.normalized().unwrap();
    let a = a.amps();
    let idx = |bi: usize, bj: usize, r: usize| r | (bi << i) | (bj << j);
    let rest: Vec<usize> = (0..8).filter(|r| r & ((1 << i) | (1 << j)) == 0).collect();
    let rho = DMatrix::from_fn(4, 4, |row, col| {
        let (ri, rj) = (row >> 1, row & 1);
        let (ci, cj) = (col >> 1, col & 1);
        rest.iter()
            .map(|&r| a[idx(ri, rj, r)] * a[idx(ci, cj, r)].conj())
            .sum::<C64>()
    });
    let sy = DMatrix::from_row_slice(
        2,
        2,
        &[C64::new(0.0, 0.0), C64::new(0.0, -1.0), C64::new(0.0, 1.0), C64::new(0.0, 0.0)],
    );
    let yy = sy.kronecker(&sy);
    let tilde = &yy * rho.map(|z| z.conj()) * &yy;
    let eig = SymmetricEigen::new(rho.clone());
    let sqrt_vals = eig.eigenvalues.map(|l| C64::new(l.max(0.0).sqrt(), 0.0));
    let sqrt_rho = &eig.eigenvectors * DMatrix::from_diagonal(&sqrt_vals) * eig.eigenvectors.adjoint();
    let m = &sqrt_rho * tilde * &sqrt_rho;
    let m = (&m + m.adjoint()) * C64::new(0.5, 0.0);
    let mut l: Vec<f64> = SymmetricEigen::new(m).eigenvalues.iter().map(|x| x.max(0.0).sqrt()).collect();
    l.sort_by(|x, y| y.total_cmp(x));
    (l[0] - l[1] - l[2] - l[3]).max(0.0)
}

fn random_state(r: &mut impl Rng) -> QubitState {
    QubitState::new(3, (0..8).map(|_| gaussian_c64(r)).collect())
        .unwrap()
        .normalized()
        .unwrap()
}

#[test]
fn concurrence_matches_density_matrix_route() {
    let mut r = rng(21);
    for _ in 0..200 {
        let psi = random_state(&mut r);
        for (i, j) in PAIRS {
            let a = pair_concurrence(&psi, i, j).unwrap();
            let b = concurrence_by_density_matrix(&psi, i, j);
            assert!((a - b).abs() < 1e-6, "{a} vs {b}");
        }
    }
}

#[test]
fn tangle_obeys_monogamy_identity() {
    // tau = C^2_{A(BC)} - C^2_{AB} - C^2_{AC}, with C^2_{A(BC)} = 4 det rho_A
    let mut r = rng(22);
    for _ in 0..200 {
        let psi = random_state(&mut r);
        for (a, b, c) in [(0, 1, 2), (1, 0, 2), (2, 0, 1)] {
            let rho = single_qubit_rdm(&psi, a).unwrap();
            let det = (rho[0][0] * rho[1][1] - rho[0][1] * rho[1][0]).re;
            let ckw = 4.0 * det
                - pair_concurrence(&psi, a.min(b), a.max(b)).unwrap().powi(2)
                - pair_concurrence(&psi, a.min(c), a.max(c)).unwrap().powi(2);
            assert!((ckw - tangle_hyperdeterminant(&psi).unwrap()).abs() < 1e-10);
        }
    }
}

#[test]
fn tangle_is_local_unitary_invariant() {
    let mut r = rng(23);
    let psi = random_state(&mut r);
    let tau = tangle_hyperdeterminant(&psi).unwrap();
    // random unitary on qubit 1: [[a, -b*], [b, a*]]
    let (a, b) = {
        let p = random_polarizer(&mut r);
        (p.alpha(), p.beta())
    };
    let amps = psi.amps();
    let mut out = vec![C64::new(0.0, 0.0); 8];
    for i in (0..8).filter(|i| i & 2 == 0) {
        let (x0, x1) = (amps[i], amps[i | 2]);
        out[i] = a * x0 - b.conj() * x1;
        out[i | 2] = b * x0 + a.conj() * x1;
    }
    let moved = QubitState::new(3, out).unwrap();
    assert!((tangle_hyperdeterminant(&moved).unwrap() - tau).abs() < 1e-12);
}

#[test]
fn closed_form_tangle_matches_hyperdeterminant() {
    let mut r = rng(24);
    for _ in 0..300 {
        let cfg = random_config(&mut r, 3);
        let state = dicke_coefficients(&cfg).unwrap().to_qubits();
        let a = tangle_closed_form(&cfg).unwrap();
        let b = tangle_hyperdeterminant(&state).unwrap();
        assert!((a - b).abs() <= 1e-8);
    }
}

#[test]
fn named_recipes_classify() {
    for phi in [0.0, 0.9, 2.5] {
        let cases = [
            (ghz_config(3, phi).unwrap(), EntanglementClass::Ghz),
            (w_config(3, phi, 1).unwrap(), EntanglementClass::W),
            (s_config(3, phi).unwrap(), EntanglementClass::S),
        ];
        for (cfg, class) in cases {
            assert_eq!(classify_from_config(&cfg).unwrap().predicted_class, class);
            let state = dicke_coefficients(&cfg).unwrap().to_qubits();
            assert_eq!(classify_from_state(&state).unwrap(), class);
        }
    }
}

#[test]
fn vanishing_and_entropy_collapse_rules() {
    let mut r = rng(25);
    for _ in 0..100 {
        let p = random_polarizer(&mut r);
        let q = random_polarizer(&mut r);
        let g = r.random_range(0.0..std::f64::consts::TAU);
        // two equal: tangle zero, entropies nonzero
        let cfg = PolarizerConfig::new(vec![p, q, p.with_phase(g)]).unwrap();
        let report = entanglement_report(&dicke_coefficients(&cfg).unwrap().to_qubits()).unwrap();
        assert!(tangle_closed_form(&cfg).unwrap() <= 1e-12);
        assert!(report.tangle <= 1e-12);
        assert!(report.entropies.iter().all(|e| *e > CLASS_TOL));
        // third one joins: entropies vanish
        let cfg = PolarizerConfig::new(vec![p, p.with_phase(1.0), p.with_phase(g)]).unwrap();
        let report = entanglement_report(&dicke_coefficients(&cfg).unwrap().to_qubits()).unwrap();
        assert!(report.entropies.iter().all(|e| *e < 1e-10), "{:?}", report.entropies);
        // all distinct: tangle nonzero
        let cfg = PolarizerConfig::new(vec![p, q, random_polarizer(&mut r)]).unwrap();
        assert!(tangle_closed_form(&cfg).unwrap() > 0.0);
    }
}

#[test]
fn tangle_degenerates_continuously() {
    // rotate the third GHZ polarizer onto the first
    let angles = [0.0, std::f64::consts::PI / 3.0, 2.0 * std::f64::consts::PI / 3.0];
    let mut last = f64::INFINITY;
    let steps = 60;
    for s in 0..=steps {
        let t = s as f64 / steps as f64;
        let theta3 = angles[2] + t * (std::f64::consts::PI - angles[2]);
        let cfg = PolarizerConfig::linear(&[angles[0], angles[1], theta3]).unwrap();
        let tau = tangle_closed_form(&cfg).unwrap();
        let oracle = tangle_hyperdeterminant(&dicke_coefficients(&cfg).unwrap().to_qubits()).unwrap();
        assert!((tau - oracle).abs() < 1e-10);
        assert!(tau <= last + 1e-12, "tangle rose from {last} to {tau} at step {s}");
        last = tau;
    }
    assert!(last < 1e-12);
}

#[test]
fn sigma_basis_states() {
    let cfg = PolarizerConfig::new(vec![Polarizer::sigma_plus(); 3]).unwrap();
    let state = dicke_coefficients(&cfg).unwrap().to_qubits();
    assert_eq!(classify_from_state(&state).unwrap(), EntanglementClass::S);
    assert_eq!(classify_from_config(&cfg).unwrap().distinct_orientations, 1);
}
