//! Invariant families and fingerprint assembly.

pub mod bipartite;
pub mod tripartite;

use nalgebra::{DMatrix, DVector};

use crate::fingerprint::{InvariantFingerprint, InvariantSettings};
use crate::linalg::gram_krylov;
use crate::states::DensityMatrix;
use crate::{Error, Result};

pub use bipartite::fingerprint2;
pub use tripartite::fingerprint3;

/// Fingerprint of a two- or three-party state.
pub fn fingerprint(
    state: &DensityMatrix,
    settings: &InvariantSettings,
) -> Result<InvariantFingerprint> {
    match state.parties() {
        2 => fingerprint2(state, settings),
        3 => fingerprint3(state, settings),
        n => Err(Error::PartyCount {
            expected: "2 or 3".into(),
            found: n,
        }),
    }
}

pub(crate) fn check_settings(settings: &InvariantSettings) -> Result<()> {
    if settings.max_beta == Some(0) {
        return Err(Error::InvalidArgument("max_beta must be at least 1".into()));
    }
    Ok(())
}

/// `(⟨x, (R Rᵗ)^a x⟩, ⟨x, (R Rᵗ)^a y⟩)` for `a = 0..=max_alpha`, where the
/// second sequence is only produced when `y` is given.
pub(crate) fn krylov_forms(
    r: &DMatrix<f64>,
    x: &DVector<f64>,
    y: Option<&DVector<f64>>,
    max_alpha: usize,
) -> (Vec<f64>, Vec<f64>) {
    let krylov = gram_krylov(r, x, max_alpha);
    let xx = krylov.iter().map(|v| v.dot(x)).collect();
    let xy = match y {
        Some(y) => krylov.iter().map(|v| v.dot(y)).collect(),
        None => Vec::new(),
    };
    (xx, xy)
}

pub(crate) fn shape_error(what: &str, found: (usize, usize), expected: (usize, usize)) -> Error {
    Error::Shape(format!(
        "{what} is {}x{}, expected {}x{}",
        found.0, found.1, expected.0, expected.1
    ))
}
