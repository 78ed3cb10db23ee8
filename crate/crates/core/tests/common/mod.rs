#![allow(dead_code)]

pub mod cli;

use lu_invariants::states::pure_state;
use lu_invariants::{DensityMatrix, C64};
use nalgebra::DMatrix;

pub fn c(re: f64) -> C64 {
    C64::new(re, 0.0)
}

/// Dense Kronecker product, written out index by index.
pub fn kron(a: &DMatrix<C64>, b: &DMatrix<C64>) -> DMatrix<C64> {
    let (ar, ac) = a.shape();
    let (br, bc) = b.shape();
    DMatrix::from_fn(ar * br, ac * bc, |r, col| {
        a[(r / br, col / bc)] * b[(r % br, col % bc)]
    })
}

pub fn kron_all(ops: &[DMatrix<C64>]) -> DMatrix<C64> {
    ops.iter()
        .skip(1)
        .fold(ops[0].clone(), |acc, op| kron(&acc, op))
}

/// `tr(ρ · ⊗ops)` by explicit dense product.
pub fn trace_oracle(rho: &DMatrix<C64>, ops: &[DMatrix<C64>]) -> C64 {
    (rho * kron_all(ops)).trace()
}

pub fn pauli(k: usize) -> DMatrix<C64> {
    let z = c(0.0);
    let i = C64::new(0.0, 1.0);
    match k {
        0 => DMatrix::from_row_slice(2, 2, &[z, c(1.0), c(1.0), z]),
        1 => DMatrix::from_row_slice(2, 2, &[z, -i, i, z]),
        2 => DMatrix::from_row_slice(2, 2, &[c(1.0), z, z, c(-1.0)]),
        _ => DMatrix::identity(2, 2),
    }
}

pub fn basis_ket(side: usize, index: usize) -> Vec<C64> {
    let mut v = vec![c(0.0); side];
    v[index] = c(1.0);
    v
}

pub fn bell() -> DensityMatrix {
    let s = std::f64::consts::FRAC_1_SQRT_2;
    pure_state(&[c(s), c(0.0), c(0.0), c(s)], &[2, 2])
        .unwrap()
        .with_label("bell")
}

pub fn product00() -> DensityMatrix {
    pure_state(&basis_ket(4, 0), &[2, 2])
        .unwrap()
        .with_label("product00")
}

pub fn ghz() -> DensityMatrix {
    let mut v = vec![c(0.0); 8];
    v[0] = c(1.0);
    v[7] = c(1.0);
    pure_state(&v, &[2, 2, 2]).unwrap().with_label("ghz")
}

pub fn w_state() -> DensityMatrix {
    let mut v = vec![c(0.0); 8];
    v[1] = c(1.0);
    v[2] = c(1.0);
    v[4] = c(1.0);
    pure_state(&v, &[2, 2, 2]).unwrap().with_label("w")
}

pub fn product000() -> DensityMatrix {
    pure_state(&basis_ket(8, 0), &[2, 2, 2]).unwrap()
}

pub fn assert_close(a: f64, b: f64, tol: f64, what: &str) {
    assert!((a - b).abs() <= tol, "{what}: {a} vs {b} (tol {tol})");
}

/// Haar local unitaries and their adjoint rotations for `dims`, from `seed`.
pub fn random_locals(
    dims: &[usize],
    seed: u64,
) -> (Vec<lu_invariants::LocalUnitary>, Vec<DMatrix<f64>>) {
    let mut rng = lu_invariants::RngSeed(seed).rng();
    let locals: Vec<_> = dims
        .iter()
        .map(|&d| lu_invariants::haar_su_from_rng(d, &mut rng).unwrap())
        .collect();
    let rotations = locals
        .iter()
        .map(|u| {
            let basis = lu_invariants::build_basis(u.dim()).unwrap();
            lu_invariants::adjoint_of(u, &basis).unwrap().into_matrix()
        })
        .collect();
    (locals, rotations)
}

/// Max deviation of `S' = O₁ᵗS`, `T' = O₂ᵗT`, `R' = O₁ᵗRO₂` for one random draw.
pub fn bipartite_law_defect(dims: &[usize], seed: u64) -> f64 {
    use lu_invariants::{conjugate, decompose2, random_density, RngSeed};
    let side: usize = dims.iter().product();
    let rho = random_density(dims, side, RngSeed(seed ^ 0x5eed)).unwrap();
    let (locals, o) = random_locals(dims, seed);
    let b = decompose2(&rho).unwrap();
    let b2 = decompose2(&conjugate(&rho, &locals).unwrap()).unwrap();
    let ds = (&b2.s - o[0].transpose() * &b.s).amax();
    let dt = (&b2.t - o[1].transpose() * &b.t).amax();
    let dr = (&b2.r - o[0].transpose() * &b.r * &o[1]).amax();
    ds.max(dt).max(dr)
}

/// Max deviation over the nine three-party transformation relations:
/// three `S`, three `T` (matrix form) and three unfoldings of `R`.
pub fn tripartite_law_defect(dims: &[usize], seed: u64) -> f64 {
    use lu_invariants::{conjugate, decompose3, random_density, RngSeed};
    let side: usize = dims.iter().product();
    let rho = random_density(dims, side, RngSeed(seed ^ 0x5eed)).unwrap();
    let (locals, o) = random_locals(dims, seed);
    let b = decompose3(&rho).unwrap();
    let b2 = decompose3(&conjugate(&rho, &locals).unwrap()).unwrap();
    let mut worst = 0.0f64;
    for ((s2, s), o) in b2.s.iter().zip(&b.s).zip(&o) {
        worst = worst.max((s2 - o.transpose() * s).amax());
    }
    for (m, n) in [(1, 2), (1, 3), (2, 3)] {
        let expected = o[m - 1].transpose() * b.t(m, n).unwrap() * &o[n - 1];
        worst = worst.max((b2.t(m, n).unwrap() - expected).amax());
    }
    for (m, n, p) in [(1, 2, 3), (2, 1, 3), (3, 1, 2)] {
        let rest = o[n - 1].kronecker(&o[p - 1]);
        let expected = o[m - 1].transpose() * b.r.unfold(m).unwrap() * rest;
        worst = worst.max((b2.r.unfold(m).unwrap() - expected).amax());
    }
    worst
}
