//! Dense complex linear algebra over small Hilbert spaces.
//!
//! Tensor products use the big-endian convention: the first factor is the
//! most significant digit of a composite index, so
//! `(a ⊗ b)[(i·rb + k), (j·cb + l)] = a[i,j]·b[k,l]`.

use nalgebra::{DMatrix, DVector};
use num_complex::Complex64;

use crate::error::{Error, Result};
use crate::tolerance;

pub type C64 = Complex64;
pub type ComplexMatrix = DMatrix<Complex64>;
pub type ComplexVector = DVector<Complex64>;

pub const ZERO: C64 = C64::new(0.0, 0.0);
pub const ONE: C64 = C64::new(1.0, 0.0);
pub const I: C64 = C64::new(0.0, 1.0);

pub fn c(re: f64, im: f64) -> C64 {
    C64::new(re, im)
}

pub fn identity(d: usize) -> ComplexMatrix {
    ComplexMatrix::identity(d, d)
}

pub fn zeros(rows: usize, cols: usize) -> ComplexMatrix {
    ComplexMatrix::zeros(rows, cols)
}

/// Pauli matrices indexed as σ₀ = I, σ₁ = X, σ₂ = Y, σ₃ = Z.
pub fn pauli(index: usize) -> ComplexMatrix {
    match index {
        0 => identity(2),
        1 => ComplexMatrix::from_row_slice(2, 2, &[ZERO, ONE, ONE, ZERO]),
        2 => ComplexMatrix::from_row_slice(2, 2, &[ZERO, -I, I, ZERO]),
        3 => ComplexMatrix::from_row_slice(2, 2, &[ONE, ZERO, ZERO, -ONE]),
        _ => panic!("Pauli index {index} out of range"),
    }
}

/// `m·σ` for a real 3-vector `m`.
pub fn bloch_operator(m: [f64; 3]) -> ComplexMatrix {
    pauli(1) * c(m[0], 0.0) + pauli(2) * c(m[1], 0.0) + pauli(3) * c(m[2], 0.0)
}

pub fn hadamard() -> ComplexMatrix {
    let s = std::f64::consts::FRAC_1_SQRT_2;
    ComplexMatrix::from_row_slice(2, 2, &[c(s, 0.0), c(s, 0.0), c(s, 0.0), c(-s, 0.0)])
}

/// Computational basis ket `|index⟩` in dimension `d`.
pub fn basis_ket(d: usize, index: usize) -> ComplexVector {
    let mut v = ComplexVector::zeros(d);
    v[index] = ONE;
    v
}

pub fn ket(entries: &[C64]) -> ComplexVector {
    ComplexVector::from_column_slice(entries)
}

/// `|+⟩ = (|0⟩ + |1⟩)/√2`.
pub fn ket_plus() -> ComplexVector {
    let s = std::f64::consts::FRAC_1_SQRT_2;
    ket(&[c(s, 0.0), c(s, 0.0)])
}

/// `|−⟩ = (|0⟩ − |1⟩)/√2`.
pub fn ket_minus() -> ComplexVector {
    let s = std::f64::consts::FRAC_1_SQRT_2;
    ket(&[c(s, 0.0), c(-s, 0.0)])
}

/// `|Φ⁺⟩ = Σₙ |n⟩|n⟩/√d`.
pub fn max_entangled(d: usize) -> ComplexVector {
    let mut v = ComplexVector::zeros(d * d);
    let amp = c(1.0 / (d as f64).sqrt(), 0.0);
    for n in 0..d {
        v[n * d + n] = amp;
    }
    v
}

pub fn projector(v: &ComplexVector) -> ComplexMatrix {
    v * v.adjoint()
}

/// Column vector `|v⟩` viewed as a `d×1` matrix.
pub fn column(v: &ComplexVector) -> ComplexMatrix {
    ComplexMatrix::from_column_slice(v.len(), 1, v.as_slice())
}

/// Entry-wise complex conjugate in the computational basis.
pub fn conjugate(v: &ComplexVector) -> ComplexVector {
    v.map(|z| z.conj())
}

pub fn max_abs(m: &ComplexMatrix) -> f64 {
    m.iter().fold(0.0_f64, |acc, z| acc.max(z.norm()))
}

pub fn max_abs_diff(a: &ComplexMatrix, b: &ComplexMatrix) -> f64 {
    assert_eq!(a.shape(), b.shape(), "shape mismatch in max_abs_diff");
    a.iter()
        .zip(b.iter())
        .fold(0.0_f64, |acc, (x, y)| acc.max((x - y).norm()))
}

pub fn trace(m: &ComplexMatrix) -> C64 {
    m.diagonal().iter().sum()
}

pub fn hermiticity_defect(m: &ComplexMatrix) -> f64 {
    if !m.is_square() {
        return f64::INFINITY;
    }
    max_abs_diff(m, &m.adjoint())
}

pub fn hermitian_part(m: &ComplexMatrix) -> ComplexMatrix {
    (m + m.adjoint()) * c(0.5, 0.0)
}

pub fn is_finite(m: &ComplexMatrix) -> bool {
    m.iter().all(|z| z.re.is_finite() && z.im.is_finite())
}

/// Vectorization of a list of operators into the columns of one matrix.
fn stack_vectorized(ops: &[ComplexMatrix]) -> ComplexMatrix {
    let len = ops.first().map_or(0, |m| m.len());
    let mut out = zeros(len, ops.len());
    for (k, m) in ops.iter().enumerate() {
        for (idx, z) in m.iter().enumerate() {
            out[(idx, k)] = *z;
        }
    }
    out
}

/// Dimension of the linear span of a family of equally shaped operators,
/// counted as the number of Gram eigenvalues above [`tolerance::RANK`].
pub fn span_rank(ops: &[ComplexMatrix]) -> usize {
    if ops.is_empty() {
        return 0;
    }
    let v = stack_vectorized(ops);
    // V V† and V† V share their nonzero spectrum; use the smaller one.
    let gram = if v.nrows() <= v.ncols() {
        &v * v.adjoint()
    } else {
        v.adjoint() * &v
    };
    let gram = hermitian_part(&gram);
    gram.symmetric_eigenvalues()
        .iter()
        .filter(|&&l| l > tolerance::RANK)
        .count()
}

// ---------------------------------------------------------------------------
// Subsystem bookkeeping
// ---------------------------------------------------------------------------

/// Ordered tensor-factor dimensions of a composite space.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SubsystemDims(Vec<usize>);

impl SubsystemDims {
    pub fn new(dims: Vec<usize>) -> Result<Self> {
        if dims.is_empty() || dims.contains(&0) {
            return Err(Error::Dimension(format!(
                "subsystem dimensions must be positive, got {dims:?}"
            )));
        }
        Ok(SubsystemDims(dims))
    }

    pub fn dims(&self) -> &[usize] {
        &self.0
    }

    pub fn total(&self) -> usize {
        self.0.iter().product()
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    fn strides(&self) -> Vec<usize> {
        let mut strides = vec![1; self.0.len()];
        for k in (0..self.0.len().saturating_sub(1)).rev() {
            strides[k] = strides[k + 1] * self.0[k + 1];
        }
        strides
    }

    fn digits(&self, mut index: usize) -> Vec<usize> {
        let mut out = vec![0; self.0.len()];
        for k in (0..self.0.len()).rev() {
            out[k] = index % self.0[k];
            index /= self.0[k];
        }
        out
    }

    fn check_square(&self, m: &ComplexMatrix) -> Result<()> {
        if !m.is_square() || m.nrows() != self.total() {
            return Err(Error::Dimension(format!(
                "matrix is {}x{} but subsystems {:?} span {}",
                m.nrows(),
                m.ncols(),
                self.0,
                self.total()
            )));
        }
        Ok(())
    }
}

impl TryFrom<&[usize]> for SubsystemDims {
    type Error = Error;
    fn try_from(dims: &[usize]) -> Result<Self> {
        SubsystemDims::new(dims.to_vec())
    }
}

pub fn tensor(a: &ComplexMatrix, b: &ComplexMatrix) -> ComplexMatrix {
    a.kronecker(b)
}

pub fn tensor_all(factors: &[ComplexMatrix]) -> ComplexMatrix {
    factors
        .iter()
        .skip(1)
        .fold(factors[0].clone(), |acc, f| acc.kronecker(f))
}

pub fn tensor_vec(a: &ComplexVector, b: &ComplexVector) -> ComplexVector {
    a.kronecker(b)
}

/// Traces out every factor not listed in `keep`.
pub fn partial_trace(m: &ComplexMatrix, dims: &SubsystemDims, keep: &[usize]) -> Result<ComplexMatrix> {
    dims.check_square(m)?;
    let n = dims.len();
    if let Some(&bad) = keep.iter().find(|&&k| k >= n) {
        return Err(Error::Dimension(format!("subsystem {bad} out of range for {n} factors")));
    }
    let mut keep: Vec<usize> = keep.to_vec();
    keep.sort_unstable();
    keep.dedup();
    let traced: Vec<usize> = (0..n).filter(|k| !keep.contains(k)).collect();

    // An empty selection is a one-dimensional factor.
    let select = |which: &[usize]| {
        let mut ds: Vec<usize> = which.iter().map(|&k| dims.0[k]).collect();
        if ds.is_empty() {
            ds.push(1);
        }
        SubsystemDims(ds)
    };
    let kept_dims = select(&keep);
    let traced_dims = select(&traced);
    let strides = dims.strides();

    let compose = |kept_idx: usize, traced_idx: usize| -> usize {
        let kd = kept_dims.digits(kept_idx);
        let td = traced_dims.digits(traced_idx);
        let mut full = 0;
        for (slot, &k) in keep.iter().enumerate() {
            full += kd[slot] * strides[k];
        }
        for (slot, &k) in traced.iter().enumerate() {
            full += td[slot] * strides[k];
        }
        full
    };

    let dk = kept_dims.total();
    let dt = traced_dims.total();
    let mut out = zeros(dk, dk);
    for r in 0..dk {
        for col in 0..dk {
            let mut acc = ZERO;
            for t in 0..dt {
                acc += m[(compose(r, t), compose(col, t))];
            }
            out[(r, col)] = acc;
        }
    }
    Ok(out)
}

/// Transposes the factor `on`, leaving all other factors untouched.
pub fn partial_transpose(m: &ComplexMatrix, dims: &SubsystemDims, on: usize) -> Result<ComplexMatrix> {
    dims.check_square(m)?;
    if on >= dims.len() {
        return Err(Error::Dimension(format!(
            "subsystem {on} out of range for {} factors",
            dims.len()
        )));
    }
    let stride = dims.strides()[on];
    let d = dims.0[on];
    let total = dims.total();
    let mut out = zeros(total, total);
    for r in 0..total {
        let dr = (r / stride) % d;
        for col in 0..total {
            let dc = (col / stride) % d;
            let r2 = r - dr * stride + dc * stride;
            let c2 = col - dc * stride + dr * stride;
            out[(r2, c2)] = m[(r, col)];
        }
    }
    Ok(out)
}

// ---------------------------------------------------------------------------
// Spectral routines
// ---------------------------------------------------------------------------

/// Eigendecomposition of a Hermitian matrix with eigenvalues in descending order.
#[derive(Clone, Debug)]
pub struct HermEig {
    pub values: Vec<f64>,
    /// Column `k` is the eigenvector for `values[k]`.
    pub vectors: ComplexMatrix,
}

impl HermEig {
    pub fn vector(&self, k: usize) -> ComplexVector {
        self.vectors.column(k).into_owned()
    }

    pub fn min_value(&self) -> f64 {
        self.values.last().copied().unwrap_or(0.0)
    }
}

/// Hermitian eigensolver (Householder tridiagonalization + implicit QR).
pub fn herm_eig(m: &ComplexMatrix) -> Result<HermEig> {
    if !m.is_square() {
        return Err(Error::Dimension(format!("{}x{} is not square", m.nrows(), m.ncols())));
    }
    let defect = hermiticity_defect(m);
    if defect > tolerance::HERMITIAN * m.nrows().max(1) as f64 {
        return Err(Error::NotHermitian { defect });
    }
    Ok(herm_eig_unchecked(&hermitian_part(m)))
}

/// Same as [`herm_eig`] without the Hermiticity check; the caller vouches for it.
pub(crate) fn herm_eig_unchecked(m: &ComplexMatrix) -> HermEig {
    let eig = m.clone().symmetric_eigen();
    let mut order: Vec<usize> = (0..eig.eigenvalues.len()).collect();
    order.sort_by(|&a, &b| eig.eigenvalues[b].total_cmp(&eig.eigenvalues[a]));
    let values = order.iter().map(|&k| eig.eigenvalues[k]).collect();
    let mut vectors = zeros(m.nrows(), m.ncols());
    for (slot, &k) in order.iter().enumerate() {
        vectors.set_column(slot, &eig.eigenvectors.column(k));
    }
    HermEig { values, vectors }
}

pub(crate) fn hermitian_eigenvalues(m: &ComplexMatrix) -> Vec<f64> {
    hermitian_part(m).symmetric_eigenvalues().iter().copied().collect()
}

/// Sum of singular values.
pub fn trace_norm(m: &ComplexMatrix) -> f64 {
    if m.is_square() && hermiticity_defect(m) <= tolerance::HERMITIAN {
        return hermitian_eigenvalues(m).iter().map(|l| l.abs()).sum();
    }
    m.clone().singular_values().iter().sum()
}

/// Shannon entropy in bits of a spectrum, with `0·log 0 = 0` and
/// non-positive entries ignored.
pub fn entropy_of_spectrum(values: &[f64]) -> f64 {
    values
        .iter()
        .filter(|&&l| l > 0.0)
        .map(|&l| -l * l.log2())
        .sum()
}

/// von Neumann entropy of a Hermitian PSD matrix; tiny negative eigenvalues
/// are treated as zero.
pub(crate) fn entropy_of_matrix(m: &ComplexMatrix) -> f64 {
    entropy_of_spectrum(&hermitian_eigenvalues(m))
}

// ---------------------------------------------------------------------------
// Density matrices
// ---------------------------------------------------------------------------

/// A validated quantum state: Hermitian, trace one, positive semidefinite.
#[derive(Clone, Debug, PartialEq)]
pub struct DensityMatrix {
    matrix: ComplexMatrix,
}

impl DensityMatrix {
    pub fn new(m: ComplexMatrix) -> Result<Self> {
        if !m.is_square() || m.nrows() == 0 {
            return Err(Error::Dimension(format!(
                "density matrix must be square, got {}x{}",
                m.nrows(),
                m.ncols()
            )));
        }
        if !is_finite(&m) {
            return Err(Error::NonFinite);
        }
        let defect = hermiticity_defect(&m);
        if defect > tolerance::HERMITIAN {
            return Err(Error::NotHermitian { defect });
        }
        let tr = trace(&m);
        if (tr.re - 1.0).abs() > tolerance::TRACE || tr.im.abs() > tolerance::TRACE {
            return Err(Error::NotNormalized { trace: tr.re });
        }
        let h = hermitian_part(&m);
        let eig = herm_eig_unchecked(&h);
        let min = eig.min_value();
        if min < -tolerance::PSD {
            return Err(Error::NotPositive { min_eigenvalue: min });
        }
        let matrix = if min < 0.0 {
            let clamped: Vec<f64> = eig.values.iter().map(|&l| l.max(0.0)).collect();
            let mut rebuilt = zeros(h.nrows(), h.ncols());
            for (k, &l) in clamped.iter().enumerate() {
                let v = eig.vector(k);
                rebuilt += projector(&v) * c(l, 0.0);
            }
            let t = trace(&rebuilt).re;
            rebuilt / c(t, 0.0)
        } else {
            h
        };
        Ok(DensityMatrix { matrix })
    }

    pub fn pure(psi: &ComplexVector) -> Result<Self> {
        let norm = psi.norm();
        if (norm - 1.0).abs() > tolerance::UNIT_NORM {
            return Err(Error::NotUnitVector { norm });
        }
        DensityMatrix::new(projector(psi))
    }

    pub fn maximally_mixed(d: usize) -> Self {
        DensityMatrix {
            matrix: identity(d) / c(d as f64, 0.0),
        }
    }

    pub fn dim(&self) -> usize {
        self.matrix.nrows()
    }

    pub fn matrix(&self) -> &ComplexMatrix {
        &self.matrix
    }

    pub fn into_matrix(self) -> ComplexMatrix {
        self.matrix
    }

    pub fn eigen(&self) -> HermEig {
        herm_eig_unchecked(&self.matrix)
    }

    pub fn tensor(&self, other: &DensityMatrix) -> DensityMatrix {
        DensityMatrix {
            matrix: tensor(&self.matrix, &other.matrix),
        }
    }

    pub fn partial_trace(&self, dims: &SubsystemDims, keep: &[usize]) -> Result<DensityMatrix> {
        DensityMatrix::new(partial_trace(&self.matrix, dims, keep)?)
    }

    pub fn transpose(&self) -> DensityMatrix {
        DensityMatrix {
            matrix: self.matrix.transpose(),
        }
    }
}

/// `S(ρ) = −Tr ρ log₂ ρ`.
pub fn von_neumann_entropy(rho: &DensityMatrix) -> f64 {
    entropy_of_matrix(rho.matrix())
}
