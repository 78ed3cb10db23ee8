//! Three-party invariants.
//!
//! Built from the unfoldings `R_{m|np}` (complement in ascending order) and
//! the two-body blocks `T_mn`, which transform either as vectors
//! (`vec T' = (Oᵐ⊗Oⁿ)ᵗ vec T`) or as matrices (`T' = (Oᵐ)ᵗ T Oⁿ`).
//!
//! `T2.*` entries use the unfoldings; `T3.*` entries
//! use the matrix view of `T`. Tags name the contracted blocks, e.g.
//! `S1RT23` is `S₁ᵗ(R_{1|23}R_{1|23}ᵗ)^α R_{1|23} vec(T₂₃)`.

use nalgebra::DMatrix;

use super::bipartite::Entries;
use super::{check_settings, krylov_forms};
use crate::bloch::{decompose3, vec, BlochTripartite, CONVENTION};
use crate::fingerprint::{
    Family, FingerprintMetadata, InvariantFingerprint, InvariantKey, InvariantSettings, Power,
    PowerRange,
};
use crate::linalg::singular_power_sums;
use crate::states::DensityMatrix;
use crate::Result;

/// 1-based pivot with its ascending complement pair.
const PIVOTS: [(usize, usize, usize); 3] = [(1, 2, 3), (2, 1, 3), (3, 1, 2)];
/// Two-body pairs in storage order.
const PAIRS: [(usize, usize); 3] = [(1, 2), (1, 3), (2, 3)];
/// `S_m` paired with `T_{m,next}` cyclically; `T31 = T13ᵗ`.
const CYCLIC: [(usize, usize); 3] = [(1, 2), (2, 3), (3, 1)];

fn side(bloch: &BlochTripartite, party: usize) -> usize {
    let d = bloch.dims[party - 1];
    d * d - 1
}

/// `T2.i` entries, over all three pivots.
pub fn theorem2_family_i(bloch: &BlochTripartite, settings: &InvariantSettings) -> Result<Entries> {
    Ok(theorem2_family_i_ranged(bloch, settings)?.0)
}

fn theorem2_family_i_ranged(
    bloch: &BlochTripartite,
    settings: &InvariantSettings,
) -> Result<(Entries, Vec<PowerRange>)> {
    let mut out = Entries::new();
    let mut ranges = Vec::new();
    for (m, n, p) in PIVOTS {
        let unfolding = bloch.r.unfold(m)?;
        let s = &bloch.s[m - 1];
        let t = vec(&bloch.t(n, p)?);
        let rt = &unfolding * &t;

        let alpha = settings.alpha_range(&format!("T2.i.S{m}"), side(bloch, m) - 1, "d_m^2-2");
        let (ss, srt) = krylov_forms(&unfolding, s, Some(&rt), alpha.last);
        push_alpha(&mut out, 2, Family::I, &format!("S{m}S{m}"), ss);
        push_alpha(&mut out, 2, Family::I, &format!("S{m}RT{n}{p}"), srt);
        ranges.push(alpha);

        let alpha = settings.alpha_range(
            &format!("T2.i.T{n}{p}"),
            side(bloch, n) * side(bloch, p) - 2,
            "(d_n^2-1)(d_p^2-1)-2",
        );
        let (tt, _) = krylov_forms(&unfolding.transpose(), &t, None, alpha.last);
        push_alpha(&mut out, 2, Family::I, &format!("T{n}{p}T{n}{p}"), tt);
        ranges.push(alpha);
    }
    Ok((out, ranges))
}

/// `T2.ii` entries: power sums of squared singular values of each
/// unfolding and of each two-body block.
pub fn theorem2_family_ii(
    bloch: &BlochTripartite,
    settings: &InvariantSettings,
) -> Result<Entries> {
    Ok(theorem2_family_ii_ranged(bloch, settings)?.0)
}

fn theorem2_family_ii_ranged(
    bloch: &BlochTripartite,
    settings: &InvariantSettings,
) -> Result<(Entries, Vec<PowerRange>)> {
    let mut out = Entries::new();
    let mut ranges = Vec::new();
    for (m, n, p) in PIVOTS {
        let tag = format!("R{m}|{n}{p}");
        let beta = settings.beta_range(&format!("T2.ii.{tag}"), side(bloch, m), "d_m^2-1");
        let unfolding = bloch.r.unfold(m)?;
        push_beta(&mut out, &tag, singular_power_sums(&unfolding, beta.last));
        ranges.push(beta);
    }
    for (m, n) in PAIRS {
        let tag = format!("T{m}{n}");
        let beta = settings.beta_range(
            &format!("T2.ii.{tag}"),
            side(bloch, m) * side(bloch, n) - 1,
            "(d_m^2-1)(d_n^2-1)-1",
        );
        push_beta(
            &mut out,
            &tag,
            singular_power_sums(&bloch.t(m, n)?, beta.last),
        );
        ranges.push(beta);
    }
    Ok((out, ranges))
}

/// `T3.*` entries: `S_mᵗ(T_mn T_mnᵗ)^α S_m` for the cyclic pairs
/// `(1,2), (2,3), (3,1)` and `det T_mn` for every square block.
pub fn theorem3_family(bloch: &BlochTripartite, settings: &InvariantSettings) -> Result<Entries> {
    Ok(theorem3_family_ranged(bloch, settings)?.0)
}

fn theorem3_family_ranged(
    bloch: &BlochTripartite,
    settings: &InvariantSettings,
) -> Result<(Entries, Vec<PowerRange>, Vec<String>)> {
    let mut out = Entries::new();
    let mut ranges = Vec::new();
    let mut not_applicable = Vec::new();
    for (m, n) in CYCLIC {
        let t = bloch.t(m, n)?;
        let tag = format!("S{m}T{m}{n}");
        let alpha = settings.alpha_range(&format!("T3.i.{tag}"), side(bloch, m) - 1, "d_m^2-2");
        let (ss, _) = krylov_forms(&t, &bloch.s[m - 1], None, alpha.last);
        push_alpha(&mut out, 3, Family::I, &tag, ss);
        ranges.push(alpha);
    }
    for (m, n) in PAIRS {
        let t: DMatrix<f64> = bloch.t(m, n)?;
        let key = InvariantKey::new(3, Family::Ii, format!("T{m}{n}"), Power::Det);
        if t.is_square() {
            out.push((key, t.determinant()));
        } else {
            not_applicable.push(key.to_string());
        }
    }
    Ok((out, ranges, not_applicable))
}

fn push_alpha(out: &mut Entries, theorem: u8, family: Family, tag: &str, values: Vec<f64>) {
    out.extend(
        values
            .into_iter()
            .enumerate()
            .map(|(a, v)| (InvariantKey::new(theorem, family, tag, Power::Alpha(a)), v)),
    );
}

fn push_beta(out: &mut Entries, tag: &str, values: Vec<f64>) {
    out.extend(
        values
            .into_iter()
            .enumerate()
            .map(|(b, v)| (InvariantKey::new(2, Family::Ii, tag, Power::Beta(b + 1)), v)),
    );
}

pub fn fingerprint3(
    state: &DensityMatrix,
    settings: &InvariantSettings,
) -> Result<InvariantFingerprint> {
    check_settings(settings)?;
    let bloch = decompose3(state)?;
    let (mut entries, mut ranges) = theorem2_family_i_ranged(&bloch, settings)?;
    let (e2, r2) = theorem2_family_ii_ranged(&bloch, settings)?;
    let (e3, r3, not_applicable) = theorem3_family_ranged(&bloch, settings)?;
    entries.extend(e2);
    entries.extend(e3);
    ranges.extend(r2);
    ranges.extend(r3);
    let metadata = FingerprintMetadata {
        dims: state.dims().to_vec(),
        convention: CONVENTION.to_string(),
        settings: *settings,
        ranges,
        not_applicable,
    };
    Ok(InvariantFingerprint::new(metadata, entries))
}
