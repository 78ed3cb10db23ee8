//! Randomized self-check: fingerprints must agree along LU orbits.

use std::collections::BTreeMap;

use serde::Serialize;

use crate::adjoint::{conjugate, haar_su_from_rng, LocalUnitary};
use crate::compare::{compare, VerdictStatus};
use crate::fingerprint::InvariantSettings;
use crate::invariants::fingerprint;
use crate::states::{DensityMatrix, RngSeed};
use crate::{Error, Result};

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct OrbitSummary {
    pub trials: usize,
    pub seed: u64,
    pub tolerance: f64,
    pub status: VerdictStatus,
    pub distinct_trials: Vec<usize>,
    /// Largest `|Δ|` seen per family label (`T1.i`, `T2.ii`, …).
    pub max_abs_delta: BTreeMap<String, f64>,
}

/// Local unitaries for one trial, drawn from `seed + trial`.
pub fn trial_locals(dims: &[usize], seed: RngSeed, trial: usize) -> Result<Vec<LocalUnitary>> {
    let mut rng = seed.offset(trial as u64).rng();
    dims.iter()
        .map(|&d| haar_su_from_rng(d, &mut rng))
        .collect()
}

pub fn orbit_check(
    state: &DensityMatrix,
    trials: usize,
    seed: RngSeed,
    tol: f64,
    settings: &InvariantSettings,
) -> Result<OrbitSummary> {
    if trials == 0 {
        return Err(Error::InvalidArgument("trials must be at least 1".into()));
    }
    let reference = fingerprint(state, settings)?;
    let mut max_abs_delta: BTreeMap<String, f64> = BTreeMap::new();
    for (key, _) in reference.entries() {
        max_abs_delta.entry(key.family_label()).or_insert(0.0);
    }
    let mut distinct_trials = Vec::new();
    for trial in 0..trials {
        let locals = trial_locals(state.dims(), seed, trial)?;
        let rotated = fingerprint(&conjugate(state, &locals)?, settings)?;
        for ((key, a), (_, b)) in reference.entries().iter().zip(rotated.entries()) {
            let slot = max_abs_delta.entry(key.family_label()).or_insert(0.0);
            *slot = slot.max((a - b).abs());
        }
        if compare(&reference, &rotated, tol)?.status == VerdictStatus::Distinct {
            distinct_trials.push(trial);
        }
    }
    Ok(OrbitSummary {
        trials,
        seed: seed.0,
        tolerance: tol,
        status: if distinct_trials.is_empty() {
            VerdictStatus::Inconclusive
        } else {
            VerdictStatus::Distinct
        },
        distinct_trials,
        max_abs_delta,
    })
}
