//! Dense complex matrices and a cyclic Jacobi eigensolver for Hermitian input.

use std::fmt;
use std::ops::{Index, IndexMut};

use num_complex::Complex64;

use crate::{Error, Result};

/// Hermiticity residual above which the eigensolver refuses its input.
pub const HERMITIAN_INPUT_TOL: f64 = 1e-8;
/// Default relative off-diagonal threshold of the Jacobi iteration.
pub const DEFAULT_EIGEN_TOL: f64 = 1e-13;
/// Default tolerance of [`validate_density`].
pub const DEFAULT_DENSITY_TOL: f64 = 1e-10;
/// Maximum number of full Jacobi sweeps.
pub const MAX_SWEEPS: usize = 100;

/// Row-major dense complex matrix with finite entries.
#[derive(Clone, PartialEq)]
pub struct ComplexMatrix {
    rows: usize,
    cols: usize,
    data: Vec<Complex64>,
}

impl ComplexMatrix {
    pub fn zeros(rows: usize, cols: usize) -> Self {
        Self {
            rows,
            cols,
            data: vec![Complex64::new(0.0, 0.0); rows * cols],
        }
    }

    pub fn identity(dim: usize) -> Self {
        let mut m = Self::zeros(dim, dim);
        for i in 0..dim {
            m[(i, i)] = Complex64::new(1.0, 0.0);
        }
        m
    }

    /// Diagonal matrix with real entries.
    pub fn from_real_diagonal(diag: &[f64]) -> Self {
        let mut m = Self::zeros(diag.len(), diag.len());
        for (i, &d) in diag.iter().enumerate() {
            m[(i, i)] = Complex64::new(d, 0.0);
        }
        m
    }

    /// Builds a matrix from row-major entries.
    pub fn from_row_major(rows: usize, cols: usize, data: Vec<Complex64>) -> Result<Self> {
        if rows == 0 || cols == 0 {
            return Err(Error::InvalidConfig("matrix dimensions must be positive".into()));
        }
        if data.len() != rows * cols {
            return Err(Error::DimensionMismatch {
                expected: rows * cols,
                found: data.len(),
            });
        }
        if data.iter().any(|z| !z.re.is_finite() || !z.im.is_finite()) {
            return Err(Error::InvalidConfig("matrix entries must be finite".into()));
        }
        Ok(Self { rows, cols, data })
    }

    /// Builds a matrix from real row-major entries.
    pub fn from_real_rows(rows: &[&[f64]]) -> Result<Self> {
        let n = rows.len();
        let m = rows.first().map_or(0, |r| r.len());
        if let Some(bad) = rows.iter().find(|r| r.len() != m) {
            return Err(Error::DimensionMismatch {
                expected: m,
                found: bad.len(),
            });
        }
        let data = rows
            .iter()
            .flat_map(|r| r.iter().map(|&x| Complex64::new(x, 0.0)))
            .collect();
        Self::from_row_major(n, m, data)
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn is_square(&self) -> bool {
        self.rows == self.cols
    }

    pub fn as_slice(&self) -> &[Complex64] {
        &self.data
    }

    pub fn trace(&self) -> Complex64 {
        (0..self.rows.min(self.cols)).map(|i| self[(i, i)]).sum()
    }

    pub fn frobenius_norm(&self) -> f64 {
        self.data.iter().map(|z| z.norm_sqr()).sum::<f64>().sqrt()
    }

    /// Largest `|m[i][j] − conj(m[j][i])|`; infinite for non-square input.
    pub fn hermiticity_residual(&self) -> f64 {
        if !self.is_square() {
            return f64::INFINITY;
        }
        let n = self.rows;
        let mut worst = 0.0_f64;
        for i in 0..n {
            for j in i..n {
                worst = worst.max((self[(i, j)] - self[(j, i)].conj()).norm());
            }
        }
        worst
    }

    /// Conjugate transpose.
    pub fn adjoint(&self) -> Self {
        let mut out = Self::zeros(self.cols, self.rows);
        for i in 0..self.rows {
            for j in 0..self.cols {
                out[(j, i)] = self[(i, j)].conj();
            }
        }
        out
    }

    pub fn matmul(&self, rhs: &Self) -> Result<Self> {
        if self.cols != rhs.rows {
            return Err(Error::DimensionMismatch {
                expected: self.cols,
                found: rhs.rows,
            });
        }
        let mut out = Self::zeros(self.rows, rhs.cols);
        for i in 0..self.rows {
            for k in 0..self.cols {
                let a = self[(i, k)];
                if a == Complex64::new(0.0, 0.0) {
                    continue;
                }
                for j in 0..rhs.cols {
                    out[(i, j)] += a * rhs[(k, j)];
                }
            }
        }
        Ok(out)
    }

    /// `U · self · U†`.
    pub fn conjugated_by(&self, u: &Self) -> Result<Self> {
        u.matmul(self)?.matmul(&u.adjoint())
    }

    pub fn scale(&self, factor: f64) -> Self {
        Self {
            rows: self.rows,
            cols: self.cols,
            data: self.data.iter().map(|z| z * factor).collect(),
        }
    }

    /// Entry-wise `self + factor · other`.
    pub fn add_scaled(&mut self, other: &Self, factor: f64) -> Result<()> {
        if self.rows != other.rows || self.cols != other.cols {
            return Err(Error::DimensionMismatch {
                expected: self.rows * self.cols,
                found: other.rows * other.cols,
            });
        }
        for (a, b) in self.data.iter_mut().zip(&other.data) {
            *a += b * factor;
        }
        Ok(())
    }

    /// Embeds the matrix in the top-left corner of a larger zero matrix.
    pub fn zero_padded(&self, dim: usize) -> Self {
        let mut out = Self::zeros(dim.max(self.rows), dim.max(self.cols));
        for i in 0..self.rows {
            for j in 0..self.cols {
                out[(i, j)] = self[(i, j)];
            }
        }
        out
    }
}

impl Index<(usize, usize)> for ComplexMatrix {
    type Output = Complex64;

    fn index(&self, (i, j): (usize, usize)) -> &Complex64 {
        &self.data[i * self.cols + j]
    }
}

impl IndexMut<(usize, usize)> for ComplexMatrix {
    fn index_mut(&mut self, (i, j): (usize, usize)) -> &mut Complex64 {
        &mut self.data[i * self.cols + j]
    }
}

impl fmt::Debug for ComplexMatrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "ComplexMatrix {}x{} [", self.rows, self.cols)?;
        for i in 0..self.rows {
            write!(f, "  ")?;
            for j in 0..self.cols {
                let z = self[(i, j)];
                write!(f, "{:+.6e}{:+.6e}i ", z.re, z.im)?;
            }
            writeln!(f)?;
        }
        write!(f, "]")
    }
}

/// `|v⟩⟨w|`: entry `(i, j)` is `v[i]·conj(w[j])`.
pub fn outer_product(v: &[Complex64], w: &[Complex64]) -> ComplexMatrix {
    let mut m = ComplexMatrix::zeros(v.len().max(1), w.len().max(1));
    for (i, vi) in v.iter().enumerate() {
        for (j, wj) in w.iter().enumerate() {
            m[(i, j)] = vi * wj.conj();
        }
    }
    m
}

/// Eigenvalues of a Hermitian matrix in descending order.
#[derive(Debug, Clone, PartialEq)]
pub struct HermitianSpectrum {
    pub eigenvalues: Vec<f64>,
    /// Off-diagonal Frobenius norm of the final rotated matrix.
    pub offdiag_residual: f64,
    /// Absolute threshold the residual was driven below (`tol · ‖m‖_F`).
    pub threshold: f64,
    pub sweeps: usize,
}

fn offdiag_norm(a: &[Complex64], n: usize) -> f64 {
    let mut acc = 0.0;
    for i in 0..n {
        for j in 0..n {
            if i != j {
                acc += a[i * n + j].norm_sqr();
            }
        }
    }
    acc.sqrt()
}

/// Cyclic Jacobi eigenvalues of a Hermitian matrix.
///
/// Pairs `(p, q)` are visited in row-major order with `p < q`. Each pivot is
/// first made real by a diagonal phase and then annihilated with a real plane
/// rotation, so the composite transformation is unitary. Iteration stops once
/// the off-diagonal Frobenius norm is at most `tol · ‖m‖_F`. Entries far below
/// that threshold are not rotated; their total weight cannot exceed a quarter
/// of it.
pub fn hermitian_eigenvalues(m: &ComplexMatrix, tol: f64) -> Result<HermitianSpectrum> {
    if !m.is_square() {
        return Err(Error::NonSquare {
            rows: m.rows,
            cols: m.cols,
        });
    }
    let residual = m.hermiticity_residual();
    if !(residual <= HERMITIAN_INPUT_TOL) {
        return Err(Error::NotHermitian { residual });
    }
    let n = m.rows;
    let norm = m.frobenius_norm();
    let threshold = tol * norm;
    let skip_below = threshold / (4.0 * n as f64);

    // Work on the exactly Hermitian part of the input.
    let mut a = m.data.clone();
    for i in 0..n {
        a[i * n + i] = Complex64::new(a[i * n + i].re, 0.0);
        for j in (i + 1)..n {
            let h = (a[i * n + j] + a[j * n + i].conj()) * 0.5;
            a[i * n + j] = h;
            a[j * n + i] = h.conj();
        }
    }

    let mut sweeps = 0;
    let mut off = offdiag_norm(&a, n);
    while off > threshold {
        if sweeps == MAX_SWEEPS {
            return Err(Error::NoConvergence {
                sweeps,
                offdiag: off,
            });
        }
        sweeps += 1;
        for p in 0..n {
            for q in (p + 1)..n {
                let apq = a[p * n + q];
                let r = apq.norm();
                if r <= skip_below || r == 0.0 {
                    continue;
                }
                rotate(&mut a, n, p, q, apq / r, r);
            }
        }
        off = offdiag_norm(&a, n);
    }

    let mut eigenvalues: Vec<f64> = (0..n).map(|i| a[i * n + i].re).collect();
    eigenvalues.sort_by(|x, y| y.total_cmp(x));
    Ok(HermitianSpectrum {
        eigenvalues,
        offdiag_residual: off,
        threshold,
        sweeps,
    })
}

/// Annihilates `a[p][q] = r·phase` with `A ← G† A G`, `G = diag(1, conj(phase)) · R(θ)`.
fn rotate(a: &mut [Complex64], n: usize, p: usize, q: usize, phase: Complex64, r: f64) {
    let app = a[p * n + p].re;
    let aqq = a[q * n + q].re;
    let tau = (aqq - app) / (2.0 * r);
    let t = if tau >= 0.0 {
        1.0 / (tau + (1.0 + tau * tau).sqrt())
    } else {
        -1.0 / (-tau + (1.0 + tau * tau).sqrt())
    };
    let c = 1.0 / (1.0 + t * t).sqrt();
    let s = t * c;
    let phase_conj = phase.conj();

    // Columns: A ← A G.
    for k in 0..n {
        let akp = a[k * n + p];
        let akq = a[k * n + q];
        a[k * n + p] = akp * c - akq * phase_conj * s;
        a[k * n + q] = akp * s + akq * phase_conj * c;
    }
    // Rows: A ← G† A.
    for k in 0..n {
        let apk = a[p * n + k];
        let aqk = a[q * n + k];
        a[p * n + k] = apk * c - aqk * phase * s;
        a[q * n + k] = apk * s + aqk * phase * c;
    }
    let zero = Complex64::new(0.0, 0.0);
    a[p * n + q] = zero;
    a[q * n + p] = zero;
    a[p * n + p] = Complex64::new(app - t * r, 0.0);
    a[q * n + q] = Complex64::new(aqq + t * r, 0.0);
}

/// A validated density matrix together with its clamped spectrum.
#[derive(Debug, Clone)]
pub struct DensityMatrix {
    entries: ComplexMatrix,
    eigenvalues: Vec<f64>,
    hermiticity_residual: f64,
    trace_residual: f64,
}

impl DensityMatrix {
    pub fn dim(&self) -> usize {
        self.entries.rows
    }

    pub fn entries(&self) -> &ComplexMatrix {
        &self.entries
    }

    /// Eigenvalues in descending order, small negatives clamped to zero.
    pub fn eigenvalues(&self) -> &[f64] {
        &self.eigenvalues
    }

    pub fn hermiticity_residual(&self) -> f64 {
        self.hermiticity_residual
    }

    pub fn trace_residual(&self) -> f64 {
        self.trace_residual
    }

    pub fn into_matrix(self) -> ComplexMatrix {
        self.entries
    }
}

/// Checks Hermiticity, unit trace and positivity, each within `tol`.
///
/// Eigenvalues in `[−tol, 0)` are clamped to zero; anything more negative is
/// rejected with [`Error::NotPositive`].
pub fn validate_density(m: &ComplexMatrix, tol: f64) -> Result<DensityMatrix> {
    if !m.is_square() {
        return Err(Error::NonSquare {
            rows: m.rows,
            cols: m.cols,
        });
    }
    let hermiticity_residual = m.hermiticity_residual();
    if !(hermiticity_residual <= tol) {
        return Err(Error::NotHermitian {
            residual: hermiticity_residual,
        });
    }
    let trace = m.trace().re;
    let trace_residual = (trace - 1.0).abs();
    if !(trace_residual <= tol) {
        return Err(Error::TraceNotOne { trace });
    }
    let spectrum = hermitian_eigenvalues(m, DEFAULT_EIGEN_TOL)?;
    let mut eigenvalues = spectrum.eigenvalues;
    if let Some(&lowest) = eigenvalues.last() {
        if lowest < -tol {
            return Err(Error::NotPositive { eigenvalue: lowest });
        }
    }
    for e in &mut eigenvalues {
        if *e < 0.0 {
            *e = 0.0;
        }
    }
    Ok(DensityMatrix {
        entries: m.clone(),
        eigenvalues,
        hermiticity_residual,
        trace_residual,
    })
}
