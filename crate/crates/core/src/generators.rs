//! Generalized Gell-Mann basis of su(d).
//!
//! The basis is ordered as: symmetric off-diagonal generators `E_jk + E_kj`
//! (j < k, lexicographic), antisymmetric ones `-i E_jk + i E_kj` (same order),
//! then the `d - 1` diagonal generators. Every generator satisfies
//! `tr(λ_a λ_b) = 2 δ_ab`.

use nalgebra::DMatrix;

use crate::{Error, Result, C64};

/// Hermiticity tolerance for matrices handed to [`expand_coefficient`].
pub const HERMITIAN_TOL: f64 = 1e-10;
/// Largest imaginary part tolerated in `tr(A λ)` for Hermitian `A`.
pub const COEFFICIENT_IMAG_TOL: f64 = 1e-12;

/// One nonzero entry `(row, col, value)` of a generator.
pub type SparseEntry = (usize, usize, C64);

#[derive(Debug, Clone, PartialEq)]
pub struct GeneratorBasis {
    dim: usize,
    matrices: Vec<DMatrix<C64>>,
    sparse: Vec<Vec<SparseEntry>>,
}

impl GeneratorBasis {
    pub fn dim(&self) -> usize {
        self.dim
    }

    /// Number of generators, `d² - 1`.
    pub fn len(&self) -> usize {
        self.matrices.len()
    }

    pub fn is_empty(&self) -> bool {
        self.matrices.is_empty()
    }

    pub fn matrices(&self) -> &[DMatrix<C64>] {
        &self.matrices
    }

    pub fn get(&self, index: usize) -> Option<&DMatrix<C64>> {
        self.matrices.get(index)
    }

    /// Nonzero entries of generator `index`. At most `d` entries each.
    pub fn sparse(&self, index: usize) -> &[SparseEntry] {
        &self.sparse[index]
    }

    /// `tr(A λ_index)` evaluated from the sparse generator.
    pub(crate) fn trace_with(&self, a: &DMatrix<C64>, index: usize) -> C64 {
        // tr(A λ) = Σ_{r,c} A[c,r] λ[r,c]
        self.sparse[index]
            .iter()
            .map(|&(r, c, v)| a[(c, r)] * v)
            .sum()
    }
}

/// Builds the canonical generator basis of SU(d).
pub fn build_basis(d: usize) -> Result<GeneratorBasis> {
    if d < 2 {
        return Err(Error::DimensionTooSmall(d));
    }
    let mut sparse: Vec<Vec<SparseEntry>> = Vec::with_capacity(d * d - 1);
    let one = C64::new(1.0, 0.0);
    let i = C64::new(0.0, 1.0);

    for j in 0..d {
        for k in (j + 1)..d {
            sparse.push(vec![(j, k, one), (k, j, one)]);
        }
    }
    for j in 0..d {
        for k in (j + 1)..d {
            sparse.push(vec![(j, k, -i), (k, j, i)]);
        }
    }
    for l in 1..d {
        let lf = l as f64;
        let norm = (2.0 / (lf * (lf + 1.0))).sqrt();
        let mut entries: Vec<SparseEntry> = (0..l).map(|m| (m, m, C64::new(norm, 0.0))).collect();
        entries.push((l, l, C64::new(-lf * norm, 0.0)));
        sparse.push(entries);
    }

    let matrices = sparse
        .iter()
        .map(|entries| {
            let mut m = DMatrix::<C64>::zeros(d, d);
            for &(r, c, v) in entries {
                m[(r, c)] = v;
            }
            m
        })
        .collect();

    Ok(GeneratorBasis {
        dim: d,
        matrices,
        sparse,
    })
}

pub(crate) fn hermitian_deviation(a: &DMatrix<C64>) -> f64 {
    let n = a.nrows();
    let mut worst = 0.0f64;
    for r in 0..n {
        for c in r..n {
            worst = worst.max((a[(r, c)] - a[(c, r)].conj()).norm());
        }
    }
    worst
}

/// Orthonormal expansion coefficient `tr(A λ_index) / 2` of a Hermitian `A`.
///
/// `index` is 0-based. Together with `tr(A)/d` for the identity component the
/// coefficients reconstruct `A = tr(A)/d · I + Σ_a c_a λ_a`.
pub fn expand_coefficient(a: &DMatrix<C64>, basis: &GeneratorBasis, index: usize) -> Result<f64> {
    let d = basis.dim();
    if a.nrows() != d || a.ncols() != d {
        return Err(Error::DimensionMismatch {
            what: "matrix side",
            expected: d,
            found: if a.nrows() != d { a.nrows() } else { a.ncols() },
        });
    }
    if index >= basis.len() {
        return Err(Error::IndexOutOfRange {
            index,
            dim: d,
            size: basis.len(),
        });
    }
    let deviation = hermitian_deviation(a);
    if deviation > HERMITIAN_TOL {
        return Err(Error::NotHermitian { deviation });
    }
    let tr = basis.trace_with(a, index);
    if tr.im.abs() > COEFFICIENT_IMAG_TOL {
        return Err(Error::ImaginaryResidue {
            residue: tr.im.abs(),
            limit: COEFFICIENT_IMAG_TOL,
            context: format!("coefficient {index}"),
        });
    }
    Ok(tr.re / 2.0)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn c(re: f64, im: f64) -> C64 {
        C64::new(re, im)
    }

    #[test]
    fn rejects_small_dimension() {
        assert!(matches!(build_basis(1), Err(Error::DimensionTooSmall(1))));
        assert!(build_basis(0).is_err());
        let msg = build_basis(1).unwrap_err().to_string();
        assert!(msg.contains("dimension must be at least 2"));
    }

    #[test]
    fn qubit_basis_is_pauli() {
        let b = build_basis(2).unwrap();
        let sx = DMatrix::from_row_slice(2, 2, &[c(0., 0.), c(1., 0.), c(1., 0.), c(0., 0.)]);
        let sy = DMatrix::from_row_slice(2, 2, &[c(0., 0.), c(0., -1.), c(0., 1.), c(0., 0.)]);
        let sz = DMatrix::from_row_slice(2, 2, &[c(1., 0.), c(0., 0.), c(0., 0.), c(-1., 0.)]);
        assert_eq!(b.matrices(), &[sx, sy, sz]);
    }

    #[test]
    fn basis_is_orthonormal_and_traceless() {
        for d in 2..=5 {
            let b = build_basis(d).unwrap();
            assert_eq!(b.len(), d * d - 1);
            for (ia, la) in b.matrices().iter().enumerate() {
                assert!(la.trace().norm() <= 1e-14);
                assert!(hermitian_deviation(la) <= 1e-14);
                for (ib, lb) in b.matrices().iter().enumerate() {
                    let tr = (la * lb).trace();
                    let expected = if ia == ib { 2.0 } else { 0.0 };
                    assert!(
                        (tr - c(expected, 0.0)).norm() <= 1e-13,
                        "d={d} ({ia},{ib}) {tr}"
                    );
                }
            }
        }
    }

    #[test]
    fn deterministic() {
        assert_eq!(build_basis(4).unwrap(), build_basis(4).unwrap());
    }

    #[test]
    fn coefficient_examples() {
        let b = build_basis(3).unwrap();
        for k in 0..b.len() {
            assert_eq!(expand_coefficient(&b.matrices()[k], &b, k).unwrap(), 1.0);
            assert_eq!(
                expand_coefficient(&DMatrix::identity(3, 3), &b, k).unwrap(),
                0.0
            );
        }
        let b2 = build_basis(2).unwrap();
        let a = &b2.matrices()[0] + b2.matrices()[2].scale(2.0);
        assert_eq!(expand_coefficient(&a, &b2, 2).unwrap(), 2.0);
        assert_eq!(expand_coefficient(&a, &b2, 0).unwrap(), 1.0);
    }

    #[test]
    fn coefficient_errors() {
        let b = build_basis(2).unwrap();
        let mut a = DMatrix::<C64>::identity(2, 2);
        a[(0, 1)] = c(1.0, 0.0);
        assert!(matches!(
            expand_coefficient(&a, &b, 0),
            Err(Error::NotHermitian { .. })
        ));
        assert!(matches!(
            expand_coefficient(&DMatrix::identity(2, 2), &b, 3),
            Err(Error::IndexOutOfRange { .. })
        ));
        assert!(expand_coefficient(&DMatrix::identity(3, 3), &b, 0).is_err());
        // Hermitian within 1e-10 but with an anti-Hermitian part that leaks
        // into the trace above the residue limit.
        let mut a = DMatrix::<C64>::zeros(2, 2);
        a[(0, 1)] = c(0.0, 4e-11);
        a[(1, 0)] = c(0.0, 4e-11);
        assert!(matches!(
            expand_coefficient(&a, &b, 0),
            Err(Error::ImaginaryResidue { .. })
        ));
    }
}
