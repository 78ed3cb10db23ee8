//! Fingerprint comparison.
//!
//! Equal fingerprints are necessary for LU equivalence but not sufficient, so
//! a comparison either certifies the states as distinct or is inconclusive.

use serde::Serialize;

use crate::fingerprint::InvariantFingerprint;
use crate::{Error, Result};

pub const DEFAULT_TOLERANCE: f64 = 1e-9;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "UPPERCASE")]
pub enum VerdictStatus {
    Distinct,
    Inconclusive,
}

impl std::fmt::Display for VerdictStatus {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.write_str(match self {
            VerdictStatus::Distinct => "DISTINCT",
            VerdictStatus::Inconclusive => "INCONCLUSIVE",
        })
    }
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct Witness {
    pub key: String,
    pub value_a: f64,
    pub value_b: f64,
    pub abs_delta: f64,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct Verdict {
    pub status: VerdictStatus,
    pub tolerance: f64,
    pub witnesses: Vec<Witness>,
}

/// Mixed absolute/relative test `|a - b| ≤ tol · max(1, |a|, |b|)`.
pub fn within_tolerance(a: f64, b: f64, tol: f64) -> bool {
    (a - b).abs() <= tol * 1f64.max(a.abs()).max(b.abs())
}

pub fn compare(a: &InvariantFingerprint, b: &InvariantFingerprint, tol: f64) -> Result<Verdict> {
    if !(tol.is_finite() && tol >= 0.0) {
        return Err(Error::InvalidArgument(format!(
            "tolerance {tol} must be finite and non-negative"
        )));
    }
    if a.metadata != b.metadata {
        let why = if a.metadata.dims != b.metadata.dims {
            format!("dims {:?} vs {:?}", a.metadata.dims, b.metadata.dims)
        } else if a.metadata.settings != b.metadata.settings {
            "power settings differ".to_string()
        } else {
            "metadata differs".to_string()
        };
        return Err(Error::Incomparable(why));
    }
    if a.len() != b.len() || a.entries().iter().zip(b.entries()).any(|(x, y)| x.0 != y.0) {
        return Err(Error::Incomparable("entry keys differ".into()));
    }
    let witnesses: Vec<Witness> = a
        .entries()
        .iter()
        .zip(b.entries())
        .filter(|((_, va), (_, vb))| !within_tolerance(*va, *vb, tol))
        .map(|((key, va), (_, vb))| Witness {
            key: key.to_string(),
            value_a: *va,
            value_b: *vb,
            abs_delta: (va - vb).abs(),
        })
        .collect();
    let status = if witnesses.is_empty() {
        VerdictStatus::Inconclusive
    } else {
        VerdictStatus::Distinct
    };
    Ok(Verdict {
        status,
        tolerance: tol,
        witnesses,
    })
}
