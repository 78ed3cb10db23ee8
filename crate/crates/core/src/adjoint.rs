//! Local unitaries and the real rotations they induce on Bloch coefficients.
//!
//! For `U ∈ SU(d)`, conjugation permutes the generators linearly:
//! `U λ_i U† = Σ_j O_ij λ_j` with `O ∈ SO(d² - 1)`. Bloch vectors then
//! transform as `S' = Oᵗ S`.

use nalgebra::DMatrix;
use rand::Rng;
use rand_distr::{Distribution, StandardNormal};

use crate::generators::GeneratorBasis;
use crate::states::{validate, DensityMatrix, RngSeed};
use crate::{Error, Result, C64};

pub const UNITARY_TOL: f64 = 1e-10;
pub const ORTHOGONAL_TOL: f64 = 1e-10;
pub const ROTATION_DET_TOL: f64 = 1e-8;
const ADJOINT_IMAG_TOL: f64 = 1e-11;

/// An element of SU(d).
#[derive(Debug, Clone, PartialEq)]
pub struct LocalUnitary {
    matrix: DMatrix<C64>,
}

impl LocalUnitary {
    pub fn new(matrix: DMatrix<C64>) -> Result<Self> {
        let d = matrix.nrows();
        if d != matrix.ncols() {
            return Err(Error::Shape(format!(
                "unitary must be square, got {}x{}",
                matrix.nrows(),
                matrix.ncols()
            )));
        }
        if d < 2 {
            return Err(Error::DimensionTooSmall(d));
        }
        let gram = &matrix * matrix.adjoint() - DMatrix::<C64>::identity(d, d);
        let deviation = gram.iter().map(|z| z.norm()).fold(0.0, f64::max);
        if deviation > UNITARY_TOL {
            return Err(Error::NotSpecialUnitary(format!(
                "max |U U^dagger - I| = {deviation:e}"
            )));
        }
        let det = matrix.determinant();
        let deviation = (det - C64::new(1.0, 0.0)).norm();
        if deviation > UNITARY_TOL {
            return Err(Error::NotSpecialUnitary(format!(
                "|det U - 1| = {deviation:e}"
            )));
        }
        Ok(LocalUnitary { matrix })
    }

    pub fn identity(d: usize) -> Result<Self> {
        Self::new(DMatrix::identity(d, d))
    }

    pub fn dim(&self) -> usize {
        self.matrix.nrows()
    }

    pub fn matrix(&self) -> &DMatrix<C64> {
        &self.matrix
    }

    /// Group product `self · other`.
    pub fn compose(&self, other: &LocalUnitary) -> Result<LocalUnitary> {
        LocalUnitary::new(&self.matrix * &other.matrix)
    }
}

/// Real `(d²-1) × (d²-1)` rotation induced by a local unitary.
#[derive(Debug, Clone, PartialEq)]
pub struct AdjointRotation {
    dim: usize,
    matrix: DMatrix<f64>,
}

impl AdjointRotation {
    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn matrix(&self) -> &DMatrix<f64> {
        &self.matrix
    }

    pub fn into_matrix(self) -> DMatrix<f64> {
        self.matrix
    }

    /// `max |OᵗO - I|`.
    pub fn orthogonality_defect(&self) -> f64 {
        let n = self.matrix.nrows();
        (self.matrix.transpose() * &self.matrix - DMatrix::<f64>::identity(n, n)).amax()
    }
}

/// `O_ij = tr(λ_j U λ_i U†) / 2`.
pub fn adjoint_of(u: &LocalUnitary, basis: &GeneratorBasis) -> Result<AdjointRotation> {
    if basis.dim() != u.dim() {
        return Err(Error::DimensionMismatch {
            what: "basis dimension",
            expected: u.dim(),
            found: basis.dim(),
        });
    }
    let n = basis.len();
    let um = u.matrix();
    let ud = um.adjoint();
    let mut o = DMatrix::<f64>::zeros(n, n);
    for (i, lambda) in basis.matrices().iter().enumerate() {
        let rotated = um * lambda * &ud;
        for j in 0..n {
            let tr = basis.trace_with(&rotated, j);
            if tr.im.abs() > ADJOINT_IMAG_TOL {
                return Err(Error::ImaginaryResidue {
                    residue: tr.im.abs(),
                    limit: ADJOINT_IMAG_TOL,
                    context: format!("adjoint entry ({i},{j})"),
                });
            }
            o[(i, j)] = tr.re / 2.0;
        }
    }
    let rotation = AdjointRotation {
        dim: u.dim(),
        matrix: o,
    };
    let defect = rotation.orthogonality_defect();
    if defect > ORTHOGONAL_TOL {
        return Err(Error::NotSpecialOrthogonal(format!(
            "max |O^t O - I| = {defect:e}"
        )));
    }
    let det = rotation.matrix.determinant();
    if (det - 1.0).abs() > ROTATION_DET_TOL {
        return Err(Error::NotSpecialOrthogonal(format!("det O = {det}")));
    }
    Ok(rotation)
}

/// Haar-random element of SU(d) from the given generator.
///
/// QR of a complex Ginibre matrix, with the phases of `diag(R)` pushed into
/// `Q`, then divided by the principal `d`-th root of its determinant.
pub fn haar_su_from_rng<R: Rng + ?Sized>(d: usize, rng: &mut R) -> Result<LocalUnitary> {
    if d < 2 {
        return Err(Error::DimensionTooSmall(d));
    }
    let scale = std::f64::consts::FRAC_1_SQRT_2;
    let mut z = DMatrix::<C64>::zeros(d, d);
    for r in 0..d {
        for c in 0..d {
            let re: f64 = StandardNormal.sample(rng);
            let im: f64 = StandardNormal.sample(rng);
            z[(r, c)] = C64::new(re * scale, im * scale);
        }
    }
    let qr = z.qr();
    let (mut q, r) = qr.unpack();
    for c in 0..d {
        let diag = r[(c, c)];
        let phase = if diag.norm() > 0.0 {
            diag / diag.norm()
        } else {
            C64::new(1.0, 0.0)
        };
        for row in 0..d {
            q[(row, c)] *= phase;
        }
    }
    let det = q.determinant();
    // Principal root: arg in (-π/d, π/d].
    let root = C64::from_polar(1.0, det.arg() / d as f64);
    let u = q.map(|x| x / root);
    LocalUnitary::new(u)
}

/// Haar-random element of SU(d), deterministic in `seed`.
pub fn haar_su(d: usize, seed: RngSeed) -> Result<LocalUnitary> {
    haar_su_from_rng(d, &mut seed.rng())
}

/// Kronecker product of the local unitaries.
pub fn tensor_product(locals: &[LocalUnitary]) -> DMatrix<C64> {
    locals
        .iter()
        .fold(DMatrix::<C64>::identity(1, 1), |acc, u| {
            acc.kronecker(u.matrix())
        })
}

/// `(⊗ U_m) ρ (⊗ U_m)†`.
pub fn conjugate(state: &DensityMatrix, locals: &[LocalUnitary]) -> Result<DensityMatrix> {
    if locals.len() != state.parties() {
        return Err(Error::PartyCount {
            expected: state.parties().to_string(),
            found: locals.len(),
        });
    }
    for (u, &d) in locals.iter().zip(state.dims()) {
        if u.dim() != d {
            return Err(Error::DimensionMismatch {
                what: "local unitary dimension",
                expected: d,
                found: u.dim(),
            });
        }
    }
    let k = tensor_product(locals);
    let rho = &k * state.matrix() * k.adjoint();
    let out = validate(rho, state.dims())?;
    Ok(match state.label() {
        Some(label) => out.with_label(label),
        None => out,
    })
}
