use std::fmt::Write as _;

use herald::measures::{self, tangle_closed_form};
use herald::synthesis::SynthesisPolynomial;
use herald::{
    build_pyramid, dicke_coefficients, estimate_fidelity, fidelity, synthesize, EntanglementReport,
    SymmetricState,
};

use crate::config::{ExperimentConfig, PolarizerSpec};
use crate::record::{
    pair, r15, Classification, Entanglement, Fidelity, ResultRecord, SweepPoint, Verification,
};
use crate::CliError;

pub const PYRAMID_MAX_N: usize = 6;
pub const DEFAULT_SAMPLES: usize = 10_000;
pub const DEFAULT_SEED: u64 = 0;

fn dicke_pairs(state: &SymmetricState) -> Vec<[f64; 2]> {
    state.canonicalize().coeffs().iter().map(|&c| pair(c)).collect()
}

fn entanglement_block(report: &EntanglementReport, closed_form: f64) -> Entanglement {
    Entanglement {
        tangle: r15(report.tangle),
        tangle_closed_form: r15(closed_form),
        entropies: report.entropies.map(r15),
        pair_concurrences: report.pair_concurrences.map(r15),
        class: report.inferred_class.to_string(),
    }
}

pub fn simulate(cfg: ExperimentConfig) -> Result<ResultRecord, CliError> {
    let pc = cfg.polarizer_config()?;
    let state = dicke_coefficients(&pc)?;
    let mut rec = ResultRecord::new("simulate", cfg);
    if pc.n() == 3 {
        let report = measures::entanglement_report(&state.to_qubits())?;
        rec.entanglement = Some(entanglement_block(&report, tangle_closed_form(&pc)?));
    }
    rec.dicke = Some(dicke_pairs(&state));
    Ok(rec)
}

pub fn synthesize_cmd(cfg: ExperimentConfig) -> Result<ResultRecord, CliError> {
    let target = cfg
        .target_state()?
        .ok_or_else(|| CliError::Config("configuration has no target".into()))?;
    let degree = SynthesisPolynomial::from_target(&target)?.degree();
    let pc = synthesize(&target)?;
    let produced = dicke_coefficients(&pc)?;
    let f = fidelity(&target, &produced)?;
    let mut rec = ResultRecord::new("synthesize", cfg);
    rec.polarizers = Some(
        pc.polarizers()
            .iter()
            .map(|p| PolarizerSpec::Elliptical { alpha: pair(p.alpha()), beta: pair(p.beta()) })
            .collect(),
    );
    rec.verification = Some(Verification { degree, round_trip_fidelity: r15(f) });
    rec.dicke = Some(dicke_pairs(&produced));
    Ok(rec)
}

/// Returns the record and whether the two classifications agree.
pub fn classify(cfg: ExperimentConfig) -> Result<(ResultRecord, bool), CliError> {
    let pc = cfg.polarizer_config()?;
    if pc.n() != 3 {
        return Err(CliError::Config(format!("classify needs n = 3, got {}", pc.n())));
    }
    let prediction = measures::classify_from_config(&pc)?;
    let state = dicke_coefficients(&pc)?;
    let report = measures::entanglement_report(&state.to_qubits())?;
    let agreement = prediction.predicted_class == report.inferred_class;
    let mut rec = ResultRecord::new("classify", cfg);
    rec.dicke = Some(dicke_pairs(&state));
    rec.entanglement = Some(entanglement_block(&report, tangle_closed_form(&pc)?));
    rec.classification = Some(Classification {
        distinct_orientations: prediction.distinct_orientations,
        predicted_class: prediction.predicted_class.to_string(),
        measured_class: report.inferred_class.to_string(),
        agreement,
    });
    Ok((rec, agreement))
}

/// Text tree and edge-list CSV.
pub fn pyramid(cfg: &ExperimentConfig) -> Result<(String, String), CliError> {
    let pc = cfg.polarizer_config()?;
    if pc.n() > PYRAMID_MAX_N {
        return Err(CliError::Config(format!(
            "pyramid output is limited to n <= {PYRAMID_MAX_N}, got {}",
            pc.n()
        )));
    }
    let p = build_pyramid(&pc)?;
    let mut text = p.to_text();
    let _ = writeln!(text, "final state (k = 0..{}):", pc.n());
    for (k, c) in dicke_coefficients(&pc)?.coeffs().iter().enumerate() {
        let _ = writeln!(text, "  d_{k} = {:+.14e} {:+.14e}i", c.re, c.im);
    }
    Ok((text, p.edges_csv()))
}

pub fn fidelity_cmd(mut cfg: ExperimentConfig) -> Result<ResultRecord, CliError> {
    let samples = *cfg.samples.get_or_insert(DEFAULT_SAMPLES);
    let seed = *cfg.seed.get_or_insert(DEFAULT_SEED);
    if samples == 0 {
        return Err(CliError::Config("samples must be at least 1".into()));
    }
    let pc = cfg.polarizer_config()?;
    let mut geom = cfg.geometry()?;
    let (target, source) = match cfg.target_state()? {
        Some(t) => (t, "config"),
        None => (dicke_coefficients(&pc)?, "ideal"),
    };
    let est = estimate_fidelity(&pc, &geom, &target, samples, seed)?;
    let sweep = match cfg.sweep {
        Some(spec) => {
            let mut points = Vec::with_capacity(spec.count);
            for w in spec.widths() {
                geom.window_halfangle = w / 2.0;
                let e = estimate_fidelity(&pc, &geom, &target, samples, seed)?;
                points.push(SweepPoint {
                    window_width: r15(w),
                    mean_fidelity: r15(e.mean_fidelity),
                    standard_error: r15(e.standard_error),
                    sample_count: e.sample_count,
                    excluded: e.excluded,
                });
            }
            Some(points)
        }
        None => None,
    };
    let mut rec = ResultRecord::new("fidelity", cfg);
    rec.fidelity = Some(Fidelity {
        mean_fidelity: r15(est.mean_fidelity),
        standard_error: r15(est.standard_error),
        sample_count: est.sample_count,
        excluded: est.excluded,
        target: source.into(),
    });
    rec.sweep = sweep;
    Ok(rec)
}
