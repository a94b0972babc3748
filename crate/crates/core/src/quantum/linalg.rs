//! Dense complex operators on truncated mode spaces.
//!
//! Products skip exact zeros in both factors. The two-mode operators here
//! conserve `n1 - n2` and are block-sparse, so this keeps `N = 32`
//! (`1024 × 1024`) exponentials cheap without a BLAS dependency.

use ndarray::{Array1, Array2};
use num_complex::Complex64;

use crate::error::{Error, Result};

pub type C64 = Complex64;

const ZERO: C64 = C64::new(0.0, 0.0);

/// Default relative accuracy of [`matrix_exp`].
pub const DEFAULT_EXP_TOL: f64 = 1e-12;

/// A square complex matrix acting on a truncated Fock space.
#[derive(Debug, Clone, PartialEq)]
pub struct TruncatedOperator {
    entries: Array2<C64>,
}

impl TruncatedOperator {
    pub fn from_matrix(entries: Array2<C64>) -> Self {
        assert_eq!(entries.nrows(), entries.ncols(), "operators are square");
        TruncatedOperator { entries }
    }

    pub fn identity(dim: usize) -> Self {
        Self::from_matrix(Array2::eye(dim))
    }

    pub fn zeros(dim: usize) -> Self {
        Self::from_matrix(Array2::zeros((dim, dim)))
    }

    pub fn dim(&self) -> usize {
        self.entries.nrows()
    }

    pub fn entries(&self) -> &Array2<C64> {
        &self.entries
    }

    pub fn get(&self, row: usize, col: usize) -> C64 {
        self.entries[[row, col]]
    }

    /// Conjugate transpose.
    pub fn dagger(&self) -> Self {
        Self::from_matrix(self.entries.t().mapv(|z| z.conj()))
    }

    pub fn scaled(&self, factor: C64) -> Self {
        Self::from_matrix(self.entries.mapv(|z| z * factor))
    }

    pub fn plus(&self, other: &Self) -> Self {
        Self::from_matrix(&self.entries + &other.entries)
    }

    pub fn minus(&self, other: &Self) -> Self {
        Self::from_matrix(&self.entries - &other.entries)
    }

    /// Kronecker product `self ⊗ other`; row `(i, j)` of the result is
    /// `i * other.dim() + j` (first factor major).
    pub fn kron(&self, other: &Self) -> Self {
        let (n, m) = (self.dim(), other.dim());
        let mut out = Array2::zeros((n * m, n * m));
        for ((i, k), &a) in self.entries.indexed_iter() {
            if a == ZERO {
                continue;
            }
            for ((j, l), &b) in other.entries.indexed_iter() {
                if b != ZERO {
                    out[[i * m + j, k * m + l]] = a * b;
                }
            }
        }
        Self::from_matrix(out)
    }

    /// Matrix product `self · other`.
    pub fn compose(&self, other: &Self) -> Self {
        assert_eq!(self.dim(), other.dim());
        let n = self.dim();
        let rhs_rows: Vec<Vec<(usize, C64)>> = other
            .entries
            .outer_iter()
            .map(|row| row.iter().enumerate().filter(|(_, z)| **z != ZERO).map(|(j, z)| (j, *z)).collect())
            .collect();
        let mut out = Array2::zeros((n, n));
        for (i, lhs_row) in self.entries.outer_iter().enumerate() {
            let mut out_row = out.row_mut(i);
            for (k, &a) in lhs_row.iter().enumerate() {
                if a == ZERO {
                    continue;
                }
                for &(j, b) in &rhs_rows[k] {
                    out_row[j] += a * b;
                }
            }
        }
        Self::from_matrix(out)
    }

    pub fn apply(&self, v: &Array1<C64>) -> Array1<C64> {
        assert_eq!(self.dim(), v.len());
        let mut out = Array1::zeros(v.len());
        for ((i, k), &a) in self.entries.indexed_iter() {
            if a != ZERO {
                out[i] += a * v[k];
            }
        }
        out
    }

    /// Induced 1-norm (maximum absolute column sum).
    pub fn norm1(&self) -> f64 {
        self.entries
            .columns()
            .into_iter()
            .map(|col| col.iter().map(|z| z.norm()).sum::<f64>())
            .fold(0.0, f64::max)
    }

    /// Largest entry modulus of `self - other`.
    pub fn max_abs_diff(&self, other: &Self) -> f64 {
        self.entries
            .iter()
            .zip(other.entries.iter())
            .map(|(a, b)| (a - b).norm())
            .fold(0.0, f64::max)
    }

    fn is_finite(&self) -> bool {
        self.entries.iter().all(|z| z.re.is_finite() && z.im.is_finite())
    }
}

/// Matrix exponential by scaling and squaring of a Taylor series.
///
/// `M` is scaled by `2^-s` to norm at most 1/2, the series is summed until
/// its remainder bound guarantees a relative error of `tol` after the `s`
/// squarings, and the result is squared back. The error bound holds in any
/// submultiplicative norm, up to floating-point rounding.
pub fn matrix_exp(m: &TruncatedOperator, tol: f64) -> Result<TruncatedOperator> {
    const THETA: f64 = 0.5;
    const MAX_TERMS: usize = 200;
    const MAX_SQUARINGS: i32 = 1000;

    if !(tol.is_finite() && tol > 0.0) {
        return Err(Error::MatrixExp(format!("tolerance must be positive, got {tol}")));
    }
    if !m.is_finite() {
        return Err(Error::MatrixExp("matrix has non-finite entries".into()));
    }
    let norm = m.norm1();
    let squarings = if norm > THETA { (norm / THETA).log2().ceil() as i32 } else { 0 };
    if squarings > MAX_SQUARINGS {
        return Err(Error::MatrixExp(format!("norm {norm:e} too large to scale")));
    }
    let scale = 2f64.powi(-squarings);
    let x = m.scaled(C64::new(scale, 0.0));
    let x_norm = norm * scale;
    // relative Taylor error per factor, so that (1 + eta)^(2^s) - 1 <= tol
    let eta = tol * 2f64.powi(-squarings) / 2.0;

    let dim = m.dim();
    let mut sum = TruncatedOperator::identity(dim);
    let mut term = TruncatedOperator::identity(dim);
    // next_bound = x_norm^(k+1) / (k+1)!
    let mut next_bound = x_norm;
    let mut converged = x_norm == 0.0;
    for k in 1..=MAX_TERMS {
        if converged {
            break;
        }
        term = term.compose(&x).scaled(C64::new(1.0 / k as f64, 0.0));
        sum = sum.plus(&term);
        next_bound *= x_norm / (k + 1) as f64;
        let remainder = next_bound / (1.0 - x_norm / (k + 2) as f64);
        converged = remainder * x_norm.exp() <= eta;
    }
    if !converged {
        return Err(Error::MatrixExp(format!(
            "Taylor series did not reach tolerance {tol:e} within {MAX_TERMS} terms"
        )));
    }
    for _ in 0..squarings {
        sum = sum.compose(&sum);
    }
    if !sum.is_finite() {
        return Err(Error::MatrixExp("overflow while squaring".into()));
    }
    Ok(sum)
}

pub(crate) fn real(x: f64) -> C64 {
    C64::new(x, 0.0)
}
