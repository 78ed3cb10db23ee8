//! Bloch decomposition of two- and three-party states.
//!
//! Coefficients are normalized so that the expansion is an exact identity:
//!
//! ```text
//! ρ = I/(d₁d₂) + Σ S_i λ_i⊗I + Σ T_j I⊗λ_j + Σ R_ij λ_i⊗λ_j
//! ```
//!
//! which gives `S_i = tr(ρ λ_i⊗I)/(2d₂)`, `T_j = tr(ρ I⊗λ_j)/(2d₁)` and
//! `R_ij = tr(ρ λ_i⊗λ_j)/4`. The three-party case follows the same pattern:
//! each generator slot contributes a factor 2 and each identity slot a factor
//! equal to its dimension.

use nalgebra::{DMatrix, DVector};

use crate::generators::{build_basis, GeneratorBasis, SparseEntry};
use crate::states::{validate, DensityMatrix};
use crate::{Error, Result, C64};

/// Largest imaginary part tolerated in a raw coefficient trace.
pub const TRACE_IMAG_TOL: f64 = 1e-11;

/// Normalization tag recorded in every fingerprint.
pub const CONVENTION: &str = "bloch-exact: S=tr/(2·Πd_other), T=tr/(4·d_other), R=tr/2^n";

#[derive(Debug, Clone, PartialEq)]
pub struct BlochBipartite {
    pub dims: [usize; 2],
    pub s: DVector<f64>,
    pub t: DVector<f64>,
    pub r: DMatrix<f64>,
}

/// Three-index correlation array `R_ijk`, stored with `k` fastest.
#[derive(Debug, Clone, PartialEq)]
pub struct CorrelationTensor {
    shape: [usize; 3],
    data: Vec<f64>,
}

impl CorrelationTensor {
    pub fn zeros(shape: [usize; 3]) -> Self {
        CorrelationTensor {
            shape,
            data: vec![0.0; shape.iter().product()],
        }
    }

    pub fn shape(&self) -> [usize; 3] {
        self.shape
    }

    pub fn as_slice(&self) -> &[f64] {
        &self.data
    }

    fn offset(&self, i: usize, j: usize, k: usize) -> usize {
        (i * self.shape[1] + j) * self.shape[2] + k
    }

    pub fn get(&self, i: usize, j: usize, k: usize) -> f64 {
        self.data[self.offset(i, j, k)]
    }

    pub fn set(&mut self, i: usize, j: usize, k: usize, value: f64) {
        let at = self.offset(i, j, k);
        self.data[at] = value;
    }

    /// Matricization with `pivot` (1, 2 or 3) as the row index. The remaining
    /// two indices form the column in ascending party order, first one major,
    /// matching the Kronecker layout of `O^n ⊗ O^p`.
    pub fn unfold(&self, pivot: usize) -> Result<DMatrix<f64>> {
        let [n1, n2, n3] = self.shape;
        Ok(match pivot {
            1 => DMatrix::from_fn(n1, n2 * n3, |i, c| self.get(i, c / n3, c % n3)),
            2 => DMatrix::from_fn(n2, n1 * n3, |j, c| self.get(c / n3, j, c % n3)),
            3 => DMatrix::from_fn(n3, n1 * n2, |k, c| self.get(c / n2, c % n2, k)),
            p => return Err(Error::InvalidPivot(p)),
        })
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct BlochTripartite {
    pub dims: [usize; 3],
    /// Local vectors `S¹, S², S³`.
    pub s: [DVector<f64>; 3],
    pub t12: DMatrix<f64>,
    pub t13: DMatrix<f64>,
    pub t23: DMatrix<f64>,
    pub r: CorrelationTensor,
}

impl BlochTripartite {
    /// Two-body block `T_mn` for 1-based parties `m ≠ n`. Descending pairs
    /// such as `T31` are transposes of the stored ascending ones.
    pub fn t(&self, m: usize, n: usize) -> Result<DMatrix<f64>> {
        Ok(match (m, n) {
            (1, 2) => self.t12.clone(),
            (1, 3) => self.t13.clone(),
            (2, 3) => self.t23.clone(),
            (2, 1) => self.t12.transpose(),
            (3, 1) => self.t13.transpose(),
            (3, 2) => self.t23.transpose(),
            _ => return Err(Error::InvalidArgument(format!("no two-body block T{m}{n}"))),
        })
    }
}

#[derive(Clone, Copy)]
enum Factor<'a> {
    Identity(usize),
    Generator(usize, &'a [SparseEntry]),
}

/// Visits the nonzero entries of `⊗ factors` as `(row, col, value)`.
fn for_each_kron_entry(factors: &[Factor<'_>], f: &mut impl FnMut(usize, usize, C64)) {
    fn go(
        factors: &[Factor<'_>],
        row: usize,
        col: usize,
        value: C64,
        f: &mut impl FnMut(usize, usize, C64),
    ) {
        let Some((first, rest)) = factors.split_first() else {
            f(row, col, value);
            return;
        };
        match *first {
            Factor::Identity(d) => {
                for a in 0..d {
                    go(rest, row * d + a, col * d + a, value, f);
                }
            }
            Factor::Generator(d, entries) => {
                for &(r, c, v) in entries {
                    go(rest, row * d + r, col * d + c, value * v, f);
                }
            }
        }
    }
    go(factors, 0, 0, C64::new(1.0, 0.0), f);
}

struct Slots<'a> {
    bases: Vec<&'a GeneratorBasis>,
}

impl<'a> Slots<'a> {
    fn new(bases: Vec<&'a GeneratorBasis>) -> Self {
        Slots { bases }
    }

    /// Factors for a choice of generator (or identity) per slot.
    fn factors(&self, choice: &[Option<usize>]) -> Vec<Factor<'a>> {
        choice
            .iter()
            .zip(&self.bases)
            .map(|(c, b)| match c {
                None => Factor::Identity(b.dim()),
                Some(a) => Factor::Generator(b.dim(), b.sparse(*a)),
            })
            .collect()
    }
}

/// Real part of `tr(ρ · ⊗factors)`, checking the imaginary residue.
fn real_trace(rho: &DMatrix<C64>, factors: &[Factor<'_>]) -> Result<f64> {
    let mut acc = C64::new(0.0, 0.0);
    for_each_kron_entry(factors, &mut |r, c, v| acc += rho[(c, r)] * v);
    if acc.im.abs() > TRACE_IMAG_TOL {
        return Err(Error::ImaginaryResidue {
            residue: acc.im.abs(),
            limit: TRACE_IMAG_TOL,
            context: "Bloch coefficient trace".into(),
        });
    }
    Ok(acc.re)
}

fn add_term(rho: &mut DMatrix<C64>, factors: &[Factor<'_>], coefficient: f64) {
    if coefficient == 0.0 {
        return;
    }
    for_each_kron_entry(factors, &mut |r, c, v| rho[(r, c)] += v * coefficient);
}

fn require_parties(state: &DensityMatrix, n: usize) -> Result<()> {
    if state.parties() != n {
        return Err(Error::PartyCount {
            expected: n.to_string(),
            found: state.parties(),
        });
    }
    Ok(())
}

/// Bipartite Bloch coefficients `(S, T, R)`.
pub fn decompose2(state: &DensityMatrix) -> Result<BlochBipartite> {
    require_parties(state, 2)?;
    let dims = [state.dims()[0], state.dims()[1]];
    let (b1, b2) = (build_basis(dims[0])?, build_basis(dims[1])?);
    let slots = Slots::new(vec![&b1, &b2]);
    let rho = state.matrix();
    let (n1, n2) = (b1.len(), b2.len());

    let mut s = DVector::zeros(n1);
    for i in 0..n1 {
        s[i] = real_trace(rho, &slots.factors(&[Some(i), None]))? / (2.0 * dims[1] as f64);
    }
    let mut t = DVector::zeros(n2);
    for j in 0..n2 {
        t[j] = real_trace(rho, &slots.factors(&[None, Some(j)]))? / (2.0 * dims[0] as f64);
    }
    let mut r = DMatrix::zeros(n1, n2);
    for i in 0..n1 {
        for j in 0..n2 {
            r[(i, j)] = real_trace(rho, &slots.factors(&[Some(i), Some(j)]))? / 4.0;
        }
    }
    Ok(BlochBipartite { dims, s, t, r })
}

/// Tripartite Bloch coefficients.
pub fn decompose3(state: &DensityMatrix) -> Result<BlochTripartite> {
    require_parties(state, 3)?;
    let dims = [state.dims()[0], state.dims()[1], state.dims()[2]];
    let bases = [
        build_basis(dims[0])?,
        build_basis(dims[1])?,
        build_basis(dims[2])?,
    ];
    let slots = Slots::new(bases.iter().collect());
    let rho = state.matrix();
    let sizes = [bases[0].len(), bases[1].len(), bases[2].len()];

    let s = [0usize, 1, 2].map(|m| {
        let others: usize = (0..3).filter(|&x| x != m).map(|x| dims[x]).product();
        let mut v = DVector::zeros(sizes[m]);
        for a in 0..sizes[m] {
            let mut choice = [None; 3];
            choice[m] = Some(a);
            v[a] = real_trace(rho, &slots.factors(&choice))? / (2.0 * others as f64);
        }
        Ok::<_, Error>(v)
    });
    let [s1, s2, s3] = s;
    let s = [s1?, s2?, s3?];

    let pair = |m: usize, n: usize| -> Result<DMatrix<f64>> {
        let p = 3 - m - n;
        let mut t = DMatrix::zeros(sizes[m], sizes[n]);
        for a in 0..sizes[m] {
            for b in 0..sizes[n] {
                let mut choice = [None; 3];
                choice[m] = Some(a);
                choice[n] = Some(b);
                t[(a, b)] = real_trace(rho, &slots.factors(&choice))? / (4.0 * dims[p] as f64);
            }
        }
        Ok(t)
    };
    let t12 = pair(0, 1)?;
    let t13 = pair(0, 2)?;
    let t23 = pair(1, 2)?;

    let mut r = CorrelationTensor::zeros(sizes);
    for i in 0..sizes[0] {
        for j in 0..sizes[1] {
            for k in 0..sizes[2] {
                let v = real_trace(rho, &slots.factors(&[Some(i), Some(j), Some(k)]))? / 8.0;
                r.set(i, j, k, v);
            }
        }
    }
    Ok(BlochTripartite {
        dims,
        s,
        t12,
        t13,
        t23,
        r,
    })
}

/// Matricization `R_{pivot|rest}` of the correlation tensor.
pub fn unfold(bloch: &BlochTripartite, pivot: usize) -> Result<DMatrix<f64>> {
    bloch.r.unfold(pivot)
}

/// Inverse of [`CorrelationTensor::unfold`].
pub fn refold(matrix: &DMatrix<f64>, pivot: usize, shape: [usize; 3]) -> Result<CorrelationTensor> {
    let [n1, n2, n3] = shape;
    let expected = match pivot {
        1 => (n1, n2 * n3),
        2 => (n2, n1 * n3),
        3 => (n3, n1 * n2),
        p => return Err(Error::InvalidPivot(p)),
    };
    if matrix.shape() != expected {
        return Err(Error::Shape(format!(
            "unfolding {}x{} does not match pivot {pivot} of shape {shape:?}",
            matrix.nrows(),
            matrix.ncols()
        )));
    }
    let mut r = CorrelationTensor::zeros(shape);
    for i in 0..n1 {
        for j in 0..n2 {
            for k in 0..n3 {
                let v = match pivot {
                    1 => matrix[(i, j * n3 + k)],
                    2 => matrix[(j, i * n3 + k)],
                    _ => matrix[(k, i * n2 + j)],
                };
                r.set(i, j, k, v);
            }
        }
    }
    Ok(r)
}

/// Row-major flattening, first index major.
pub fn vec(t: &DMatrix<f64>) -> DVector<f64> {
    DVector::from_iterator(t.len(), t.transpose().iter().copied())
}

fn check_len(what: &str, found: usize, expected: usize) -> Result<()> {
    if found != expected {
        return Err(Error::Shape(format!(
            "{what} has length {found}, expected {expected}"
        )));
    }
    Ok(())
}

fn check_shape(what: &str, m: &DMatrix<f64>, rows: usize, cols: usize) -> Result<()> {
    if m.shape() != (rows, cols) {
        return Err(Error::Shape(format!(
            "{what} is {}x{}, expected {rows}x{cols}",
            m.nrows(),
            m.ncols()
        )));
    }
    Ok(())
}

/// Assembles the state from bipartite coefficients and validates it.
pub fn reconstruct2(bloch: &BlochBipartite) -> Result<DensityMatrix> {
    let [d1, d2] = bloch.dims;
    let (b1, b2) = (build_basis(d1)?, build_basis(d2)?);
    let (n1, n2) = (b1.len(), b2.len());
    check_len("S", bloch.s.len(), n1)?;
    check_len("T", bloch.t.len(), n2)?;
    check_shape("R", &bloch.r, n1, n2)?;

    let slots = Slots::new(vec![&b1, &b2]);
    let side = d1 * d2;
    let mut rho = DMatrix::<C64>::identity(side, side).unscale(side as f64);
    for i in 0..n1 {
        add_term(&mut rho, &slots.factors(&[Some(i), None]), bloch.s[i]);
    }
    for j in 0..n2 {
        add_term(&mut rho, &slots.factors(&[None, Some(j)]), bloch.t[j]);
    }
    for i in 0..n1 {
        for j in 0..n2 {
            add_term(
                &mut rho,
                &slots.factors(&[Some(i), Some(j)]),
                bloch.r[(i, j)],
            );
        }
    }
    validate(rho, &bloch.dims)
}

/// Assembles the state from tripartite coefficients and validates it.
pub fn reconstruct3(bloch: &BlochTripartite) -> Result<DensityMatrix> {
    let dims = bloch.dims;
    let bases = [
        build_basis(dims[0])?,
        build_basis(dims[1])?,
        build_basis(dims[2])?,
    ];
    let sizes = [bases[0].len(), bases[1].len(), bases[2].len()];
    for (m, (s, &size)) in bloch.s.iter().zip(&sizes).enumerate() {
        check_len(&format!("S{}", m + 1), s.len(), size)?;
    }
    check_shape("T12", &bloch.t12, sizes[0], sizes[1])?;
    check_shape("T13", &bloch.t13, sizes[0], sizes[2])?;
    check_shape("T23", &bloch.t23, sizes[1], sizes[2])?;
    if bloch.r.shape() != sizes {
        return Err(Error::Shape(format!(
            "R has shape {:?}, expected {sizes:?}",
            bloch.r.shape()
        )));
    }

    let slots = Slots::new(bases.iter().collect());
    let side: usize = dims.iter().product();
    let mut rho = DMatrix::<C64>::identity(side, side).unscale(side as f64);
    for m in 0..3 {
        for a in 0..sizes[m] {
            let mut choice = [None; 3];
            choice[m] = Some(a);
            add_term(&mut rho, &slots.factors(&choice), bloch.s[m][a]);
        }
    }
    for (m, n, t) in [(0, 1, &bloch.t12), (0, 2, &bloch.t13), (1, 2, &bloch.t23)] {
        for a in 0..sizes[m] {
            for b in 0..sizes[n] {
                let mut choice = [None; 3];
                choice[m] = Some(a);
                choice[n] = Some(b);
                add_term(&mut rho, &slots.factors(&choice), t[(a, b)]);
            }
        }
    }
    for i in 0..sizes[0] {
        for j in 0..sizes[1] {
            for k in 0..sizes[2] {
                add_term(
                    &mut rho,
                    &slots.factors(&[Some(i), Some(j), Some(k)]),
                    bloch.r.get(i, j, k),
                );
            }
        }
    }
    validate(rho, &dims)
}
