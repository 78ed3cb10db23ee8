//! Small real linear-algebra kernels shared by the invariant families.

use nalgebra::{DMatrix, DVector};

/// Krylov sequence `v_0 = start`, `v_{a+1} = (R Rᵗ) v_a` for `a < max_power`.
///
/// Each step is two mat-vecs; `R Rᵗ` is never formed.
pub fn gram_krylov(r: &DMatrix<f64>, start: &DVector<f64>, max_power: usize) -> Vec<DVector<f64>> {
    let mut out = Vec::with_capacity(max_power + 1);
    out.push(start.clone());
    for _ in 0..max_power {
        let last = out.last().expect("nonempty");
        let next = r * (r.tr_mul(last));
        out.push(next);
    }
    out
}

/// `Σ σ_i^{2β}` over the singular values of `m`, for `β = 1..=max_beta`.
/// This equals `tr((M Mᵗ)^β)`.
pub fn singular_power_sums(m: &DMatrix<f64>, max_beta: usize) -> Vec<f64> {
    let squares: Vec<f64> = if m.is_empty() {
        Vec::new()
    } else {
        m.singular_values().iter().map(|s| s * s).collect()
    };
    (1..=max_beta)
        .map(|beta| squares.iter().map(|s| s.powi(beta as i32)).sum())
        .collect()
}

/// `tr((M Mᵗ)^β)` by repeated matrix products.
pub fn trace_power_by_products(m: &DMatrix<f64>, beta: usize) -> f64 {
    let gram = m * m.transpose();
    let mut acc = DMatrix::<f64>::identity(gram.nrows(), gram.ncols());
    for _ in 0..beta {
        acc = &acc * &gram;
    }
    acc.trace()
}

/// Coefficients `c_0, …, c_{n-1}` of the monic characteristic polynomial
/// `p(x) = xⁿ + c_{n-1} x^{n-1} + … + c_0` of a symmetric matrix, built from
/// its eigenvalues.
pub fn symmetric_char_poly(m: &DMatrix<f64>) -> Vec<f64> {
    let n = m.nrows();
    let eig = m.clone().symmetric_eigenvalues();
    // poly[k] is the coefficient of x^k; start with p(x) = 1.
    let mut poly = vec![0.0; n + 1];
    poly[0] = 1.0;
    for (deg, mu) in eig.iter().enumerate() {
        for k in (1..=deg + 1).rev() {
            poly[k] = poly[k - 1] - mu * poly[k];
        }
        poly[0] *= -mu;
    }
    poly.truncate(n);
    poly
}

/// Relative Cayley–Hamilton residual for `M = R Rᵗ` applied to `start`.
///
/// With `n = rows(R)`, compares the Krylov vector `Mⁿ s` to
/// `-Σ_{k<n} c_k M^k s`. The residual is scaled by the larger of `‖Mⁿ s‖`
/// and `Σ |c_k| ‖M^k s‖`, the magnitude of the terms that cancel.
pub fn cayley_hamilton_residual(r: &DMatrix<f64>, start: &DVector<f64>) -> f64 {
    let n = r.nrows();
    let krylov = gram_krylov(r, start, n);
    let coeffs = symmetric_char_poly(&(r * r.transpose()));
    let mut combo = DVector::<f64>::zeros(n);
    let mut scale = krylov[n].norm();
    let mut terms = 0.0;
    for (k, c) in coeffs.iter().enumerate() {
        combo -= &krylov[k] * *c;
        terms += c.abs() * krylov[k].norm();
    }
    scale = scale.max(terms);
    let residual = (&krylov[n] - combo).norm();
    if scale == 0.0 {
        residual
    } else {
        residual / scale
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn char_poly_of_diagonal() {
        // (x-1)(x-2)(x-3) = x³ - 6x² + 11x - 6
        let m = DMatrix::from_diagonal(&DVector::from_vec(vec![1.0, 2.0, 3.0]));
        let c = symmetric_char_poly(&m);
        let expected = [-6.0, 11.0, -6.0];
        for (a, b) in c.iter().zip(expected) {
            assert!((a - b).abs() < 1e-12, "{c:?}");
        }
    }

    #[test]
    fn power_sums_match_products() {
        let m = DMatrix::from_row_slice(2, 3, &[0.3, -0.1, 0.2, 0.05, 0.4, -0.25]);
        let sums = singular_power_sums(&m, 4);
        for (beta, s) in sums.iter().enumerate() {
            let direct = trace_power_by_products(&m, beta + 1);
            assert!((s - direct).abs() < 1e-14);
        }
    }

    #[test]
    fn krylov_never_needs_explicit_powers() {
        let r = DMatrix::from_row_slice(2, 2, &[0.5, 0.0, 0.0, 0.25]);
        let s = DVector::from_vec(vec![1.0, 1.0]);
        let k = gram_krylov(&r, &s, 2);
        assert_eq!(k[2], DVector::from_vec(vec![0.0625, 0.25f64.powi(4)]));
    }

    #[test]
    fn residual_zero_vector() {
        let r = DMatrix::from_row_slice(2, 2, &[0.5, 0.1, 0.0, 0.25]);
        assert_eq!(cayley_hamilton_residual(&r, &DVector::zeros(2)), 0.0);
    }
}
