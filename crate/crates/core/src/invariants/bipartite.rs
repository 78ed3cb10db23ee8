//! Two-party invariants.
//!
//! For `(S, T, R)` with `S' = O₁ᵗS`, `T' = O₂ᵗT`, `R' = O₁ᵗRO₂`:
//!
//! - (i)   `Sᵗ(RRᵗ)^α S` and `Sᵗ(RRᵗ)^α RT`, `α = 0..=d₁²-2`
//! - (ii)  `Tᵗ(RᵗR)^α T`, `α = 0..=d₂²-2`
//! - (iii) `tr(RRᵗ)^β`, `β = 1..=d₁²-1`
//! - (iv)  `det R` when `d₁ = d₂`

use nalgebra::{DMatrix, DVector};

use super::{check_settings, krylov_forms, shape_error};
use crate::bloch::{decompose2, CONVENTION};
use crate::fingerprint::{
    Family, FingerprintMetadata, InvariantFingerprint, InvariantKey, InvariantSettings, Power,
};
use crate::linalg::singular_power_sums;
use crate::states::DensityMatrix;
use crate::Result;

pub type Entries = Vec<(InvariantKey, f64)>;

const THEOREM: u8 = 1;

fn key(family: Family, tag: &str, power: Power) -> InvariantKey {
    InvariantKey::new(THEOREM, family, tag, power)
}

/// Family (i): `Sᵗ(RRᵗ)^α S` (tag `SS`) and `Sᵗ(RRᵗ)^α RT` (tag `SRT`).
pub fn family_i(
    s: &DVector<f64>,
    r: &DMatrix<f64>,
    t: &DVector<f64>,
    max_alpha: usize,
) -> Result<Entries> {
    if r.shape() != (s.len(), t.len()) {
        return Err(shape_error("R", r.shape(), (s.len(), t.len())));
    }
    let rt = r * t;
    let (ss, srt) = krylov_forms(r, s, Some(&rt), max_alpha);
    let mut out: Entries = ss
        .into_iter()
        .enumerate()
        .map(|(a, v)| (key(Family::I, "SS", Power::Alpha(a)), v))
        .collect();
    out.extend(
        srt.into_iter()
            .enumerate()
            .map(|(a, v)| (key(Family::I, "SRT", Power::Alpha(a)), v)),
    );
    Ok(out)
}

/// Family (ii): `Tᵗ(RᵗR)^α T` (tag `TT`).
pub fn family_ii(t: &DVector<f64>, r: &DMatrix<f64>, max_alpha: usize) -> Result<Entries> {
    if r.ncols() != t.len() {
        return Err(shape_error("R", r.shape(), (r.nrows(), t.len())));
    }
    let (tt, _) = krylov_forms(&r.transpose(), t, None, max_alpha);
    Ok(tt
        .into_iter()
        .enumerate()
        .map(|(a, v)| (key(Family::Ii, "TT", Power::Alpha(a)), v))
        .collect())
}

/// Family (iii): `tr(RRᵗ)^β` from the singular values of `R`.
pub fn family_iii(r: &DMatrix<f64>, max_beta: usize) -> Result<Entries> {
    Ok(singular_power_sums(r, max_beta)
        .into_iter()
        .enumerate()
        .map(|(b, v)| (key(Family::Iii, "", Power::Beta(b + 1)), v))
        .collect())
}

/// Family (iv): `det R`, absent when `R` is not square.
pub fn family_iv(r: &DMatrix<f64>) -> Option<(InvariantKey, f64)> {
    r.is_square()
        .then(|| (key(Family::Iv, "", Power::Det), r.clone().determinant()))
}

pub fn fingerprint2(
    state: &DensityMatrix,
    settings: &InvariantSettings,
) -> Result<InvariantFingerprint> {
    check_settings(settings)?;
    let bloch = decompose2(state)?;
    let [d1, d2] = bloch.dims;
    let alpha1 = settings.alpha_or(d1 * d1 - 2);
    let alpha2 = settings.alpha_or(d2 * d2 - 2);
    let beta = settings.beta_or(d1 * d1 - 1);

    let mut entries = family_i(&bloch.s, &bloch.r, &bloch.t, alpha1)?;
    entries.extend(family_ii(&bloch.t, &bloch.r, alpha2)?);
    entries.extend(family_iii(&bloch.r, beta)?);
    let mut not_applicable = Vec::new();
    match family_iv(&bloch.r) {
        Some(entry) => entries.push(entry),
        None => not_applicable.push(key(Family::Iv, "", Power::Det).to_string()),
    }

    let metadata = FingerprintMetadata {
        dims: state.dims().to_vec(),
        convention: CONVENTION.to_string(),
        settings: *settings,
        ranges: vec![
            settings.alpha_range("T1.i", d1 * d1 - 2, "d1^2-2"),
            settings.alpha_range("T1.ii", d2 * d2 - 2, "d2^2-2"),
            settings.beta_range("T1.iii", d1 * d1 - 1, "d1^2-1"),
        ],
        not_applicable,
    };
    Ok(InvariantFingerprint::new(metadata, entries))
}
