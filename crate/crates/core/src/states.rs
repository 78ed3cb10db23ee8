//! Density matrices of two- and three-party systems: validation, random
//! generation and the JSON state file format.

use std::fmt::Write as _;
use std::fs;
use std::path::Path;

use nalgebra::DMatrix;
use rand::SeedableRng;
use rand_chacha::ChaCha20Rng;
use rand_distr::{Distribution, StandardNormal};
use serde::Deserialize;

use crate::generators::hermitian_deviation;
use crate::{Error, Result, C64};

/// Tolerance for Hermiticity, unit trace and positivity of external input.
pub const VALIDATION_TOL: f64 = 1e-10;

/// Seed for every random generator in the crate.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Default)]
pub struct RngSeed(pub u64);

impl RngSeed {
    pub fn rng(self) -> ChaCha20Rng {
        ChaCha20Rng::seed_from_u64(self.0)
    }

    pub fn offset(self, by: u64) -> RngSeed {
        RngSeed(self.0.wrapping_add(by))
    }
}

impl From<u64> for RngSeed {
    fn from(seed: u64) -> Self {
        RngSeed(seed)
    }
}

/// A validated density matrix on `d₁ ⊗ … ⊗ d_n`, `n ∈ {2, 3}`.
#[derive(Debug, Clone, PartialEq)]
pub struct DensityMatrix {
    dims: Vec<usize>,
    data: DMatrix<C64>,
    label: Option<String>,
}

impl DensityMatrix {
    pub fn dims(&self) -> &[usize] {
        &self.dims
    }

    pub fn parties(&self) -> usize {
        self.dims.len()
    }

    /// Total Hilbert-space dimension `Π d_m`.
    pub fn side(&self) -> usize {
        self.data.nrows()
    }

    pub fn matrix(&self) -> &DMatrix<C64> {
        &self.data
    }

    pub fn label(&self) -> Option<&str> {
        self.label.as_deref()
    }

    pub fn with_label(mut self, label: impl Into<String>) -> Self {
        self.label = Some(label.into());
        self
    }

    /// `tr(ρ²)`.
    pub fn purity(&self) -> f64 {
        (&self.data * &self.data).trace().re
    }

    /// Eigenvalues in ascending order.
    pub fn spectrum(&self) -> Vec<f64> {
        let mut ev: Vec<f64> = self
            .data
            .clone()
            .symmetric_eigenvalues()
            .iter()
            .copied()
            .collect();
        ev.sort_by(f64::total_cmp);
        ev
    }
}

fn check_dims(dims: &[usize]) -> Result<usize> {
    if dims.len() != 2 && dims.len() != 3 {
        return Err(Error::PartyCount {
            expected: "2 or 3".into(),
            found: dims.len(),
        });
    }
    if let Some(&d) = dims.iter().find(|&&d| d < 2) {
        return Err(Error::DimensionTooSmall(d));
    }
    Ok(dims.iter().product())
}

/// Checks the density-matrix invariants and wraps the matrix unchanged.
pub fn validate(matrix: DMatrix<C64>, dims: &[usize]) -> Result<DensityMatrix> {
    let side = check_dims(dims)?;
    if matrix.nrows() != side || matrix.ncols() != side {
        return Err(Error::DimensionMismatch {
            what: "matrix side",
            expected: side,
            found: if matrix.nrows() != side {
                matrix.nrows()
            } else {
                matrix.ncols()
            },
        });
    }
    if matrix
        .iter()
        .any(|z| !z.re.is_finite() || !z.im.is_finite())
    {
        return Err(Error::InvalidArgument(
            "matrix has non-finite entries".into(),
        ));
    }
    let deviation = hermitian_deviation(&matrix);
    if deviation > VALIDATION_TOL {
        return Err(Error::NotHermitian { deviation });
    }
    let deviation = (matrix.trace() - C64::new(1.0, 0.0)).norm();
    if deviation > VALIDATION_TOL {
        return Err(Error::TraceNotUnit { deviation });
    }
    let min_eig = matrix
        .clone()
        .symmetric_eigenvalues()
        .iter()
        .copied()
        .fold(f64::INFINITY, f64::min);
    if min_eig < -VALIDATION_TOL {
        return Err(Error::NotPositive {
            deviation: -min_eig,
        });
    }
    Ok(DensityMatrix {
        dims: dims.to_vec(),
        data: matrix,
        label: None,
    })
}

/// Ginibre-induced random state `G G† / tr(G G†)` with `G` of shape `D × rank`.
pub fn random_density(dims: &[usize], rank: usize, seed: RngSeed) -> Result<DensityMatrix> {
    let side = check_dims(dims)?;
    if rank == 0 || rank > side {
        return Err(Error::RankOutOfRange { rank, max: side });
    }
    let mut rng = seed.rng();
    let scale = std::f64::consts::FRAC_1_SQRT_2;
    let mut g = DMatrix::<C64>::zeros(side, rank);
    for r in 0..side {
        for c in 0..rank {
            let re: f64 = StandardNormal.sample(&mut rng);
            let im: f64 = StandardNormal.sample(&mut rng);
            g[(r, c)] = C64::new(re * scale, im * scale);
        }
    }
    let mut rho = &g * g.adjoint();
    rho = (&rho + rho.adjoint()).scale(0.5);
    let tr = rho.trace().re;
    rho.unscale_mut(tr);
    validate(rho, dims)
}

/// Projector onto a normalized pure state.
pub fn pure_state(amplitudes: &[C64], dims: &[usize]) -> Result<DensityMatrix> {
    let side = check_dims(dims)?;
    if amplitudes.len() != side {
        return Err(Error::DimensionMismatch {
            what: "state vector length",
            expected: side,
            found: amplitudes.len(),
        });
    }
    let v = nalgebra::DVector::from_column_slice(amplitudes);
    let norm = v.norm();
    if norm == 0.0 {
        return Err(Error::InvalidArgument("zero state vector".into()));
    }
    let v = v.unscale(norm);
    validate(&v * v.adjoint(), dims)
}

/// Maximally mixed state `I / D`.
pub fn maximally_mixed(dims: &[usize]) -> Result<DensityMatrix> {
    let side = check_dims(dims)?;
    validate(
        DMatrix::<C64>::identity(side, side).unscale(side as f64),
        dims,
    )
}

/// Reorders the tensor factors: party `m` of the result is party `perm[m]`
/// of the input.
pub fn permute_parties(state: &DensityMatrix, perm: &[usize]) -> Result<DensityMatrix> {
    let n = state.parties();
    let mut seen = vec![false; n];
    if perm.len() != n
        || perm
            .iter()
            .any(|&p| p >= n || std::mem::replace(&mut seen[p], true))
    {
        return Err(Error::InvalidArgument(format!(
            "{perm:?} is not a permutation of {n} parties"
        )));
    }
    let old_dims = state.dims();
    let new_dims: Vec<usize> = perm.iter().map(|&p| old_dims[p]).collect();
    let side = state.side();
    let old_index = |new: usize| -> usize {
        let mut digits = vec![0; n];
        let mut rest = new;
        for m in (0..n).rev() {
            digits[m] = rest % new_dims[m];
            rest /= new_dims[m];
        }
        let mut old_digits = vec![0; n];
        for m in 0..n {
            old_digits[perm[m]] = digits[m];
        }
        old_digits
            .iter()
            .zip(old_dims)
            .fold(0, |acc, (&x, &d)| acc * d + x)
    };
    let map: Vec<usize> = (0..side).map(old_index).collect();
    let data = DMatrix::from_fn(side, side, |r, c| state.matrix()[(map[r], map[c])]);
    validate(data, &new_dims)
}

#[derive(Deserialize)]
#[serde(deny_unknown_fields)]
struct StateFile {
    dims: Vec<usize>,
    matrix: Vec<Vec<[f64; 2]>>,
    #[serde(default)]
    label: Option<String>,
}

/// Parses the JSON state format from a string.
pub fn parse_state(text: &str) -> Result<DensityMatrix> {
    let file: StateFile = serde_json::from_str(text).map_err(|e| Error::Parse {
        location: format!("line {} column {}", e.line(), e.column()),
        message: e.to_string(),
    })?;
    if file.dims.len() != 2 && file.dims.len() != 3 {
        return Err(Error::Parse {
            location: "dims".into(),
            message: format!(
                "expected 2 or 3 local dimensions, found {}",
                file.dims.len()
            ),
        });
    }
    if let Some((m, d)) = file.dims.iter().enumerate().find(|(_, &d)| d < 2) {
        return Err(Error::Parse {
            location: format!("dims[{m}]"),
            message: format!("local dimension {d} is below 2"),
        });
    }
    let side: usize = file.dims.iter().product();
    if file.matrix.len() != side {
        return Err(Error::Parse {
            location: "matrix".into(),
            message: format!("matrix side {} ≠ {}", file.matrix.len(), side),
        });
    }
    let mut data = DMatrix::<C64>::zeros(side, side);
    for (r, row) in file.matrix.iter().enumerate() {
        if row.len() != side {
            return Err(Error::Parse {
                location: format!("matrix[{r}]"),
                message: format!("row has {} entries, expected {}", row.len(), side),
            });
        }
        for (c, &[re, im]) in row.iter().enumerate() {
            if !re.is_finite() || !im.is_finite() {
                return Err(Error::Parse {
                    location: format!("matrix[{r}][{c}]"),
                    message: "non-finite number".into(),
                });
            }
            data[(r, c)] = C64::new(re, im);
        }
    }
    let state = validate(data, &file.dims)?;
    Ok(match file.label {
        Some(label) => state.with_label(label),
        None => state,
    })
}

/// Reads a state file.
pub fn read_state(path: impl AsRef<Path>) -> Result<DensityMatrix> {
    let path = path.as_ref();
    let text = fs::read_to_string(path).map_err(|source| Error::Io {
        path: path.to_path_buf(),
        source,
    })?;
    parse_state(&text)
}

pub(crate) fn json_number(x: f64) -> String {
    // serde_json prints the shortest representation that round-trips.
    serde_json::to_string(&x).expect("finite float")
}

/// Serializes a state to the JSON state format, one matrix row per line.
pub fn state_to_string(state: &DensityMatrix) -> String {
    let mut out = String::from("{\n");
    let dims: Vec<String> = state.dims().iter().map(|d| d.to_string()).collect();
    let _ = writeln!(out, "  \"dims\": [{}],", dims.join(", "));
    if let Some(label) = state.label() {
        let _ = writeln!(
            out,
            "  \"label\": {},",
            serde_json::to_string(label).expect("string")
        );
    }
    out.push_str("  \"matrix\": [\n");
    let side = state.side();
    for r in 0..side {
        let row: Vec<String> = (0..side)
            .map(|c| {
                let z = state.matrix()[(r, c)];
                format!("[{}, {}]", json_number(z.re), json_number(z.im))
            })
            .collect();
        let sep = if r + 1 == side { "" } else { "," };
        let _ = writeln!(out, "    [{}]{}", row.join(", "), sep);
    }
    out.push_str("  ]\n}\n");
    out
}

pub fn write_state(state: &DensityMatrix, path: impl AsRef<Path>) -> Result<()> {
    let path = path.as_ref();
    fs::write(path, state_to_string(state)).map_err(|source| Error::Io {
        path: path.to_path_buf(),
        source,
    })
}
