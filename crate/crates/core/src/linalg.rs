//! Dense small-matrix numerics.
//!
//! Everything here is sized for the systems the homotopy tracer produces
//! (a few dozen rows at most): partial-pivoting LU, determinants, a
//! one-sided Jacobi SVD used for minimum-norm corrections, cyclic Jacobi
//! eigenvalues for symmetric matrices, and a central-difference Jacobian
//! used as a test oracle. All routines are deterministic.

use alloc::vec;
use alloc::vec::Vec;
use core::fmt;
use core::ops::{Index, IndexMut};

/// Relative pivot threshold below which a factorization is declared singular.
pub const PIVOT_TOL: f64 = 1e-12;
/// Singular values below `SVD_TRUNCATION * sigma_max` are treated as zero.
pub const SVD_TRUNCATION: f64 = 1e-10;
/// Allowed asymmetry for [`symmetric_eigenvalues`].
pub const SYMMETRY_TOL: f64 = 1e-10;

const MAX_JACOBI_SWEEPS: usize = 100;

#[derive(Debug, Clone, PartialEq)]
pub enum LinalgError {
    /// Shape of an argument does not fit the operation.
    DimensionMismatch { expected: (usize, usize), found: (usize, usize) },
    /// A constructor was handed NaN or an infinity.
    NonFinite,
    /// A pivot fell below `PIVOT_TOL * ||A||_inf`.
    Singular,
    /// Effective row rank after SVD truncation is below the row count.
    RankDeficient { rank: usize, rows: usize },
    NotSymmetric,
}

impl fmt::Display for LinalgError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            LinalgError::DimensionMismatch { expected, found } => write!(
                f,
                "dimension mismatch: expected {}x{}, found {}x{}",
                expected.0, expected.1, found.0, found.1
            ),
            LinalgError::NonFinite => write!(f, "matrix or vector contains a non-finite entry"),
            LinalgError::Singular => write!(f, "matrix is singular to working precision"),
            LinalgError::RankDeficient { rank, rows } => {
                write!(f, "matrix is rank deficient: rank {rank} < {rows} rows")
            }
            LinalgError::NotSymmetric => write!(f, "matrix is not symmetric"),
        }
    }
}

impl core::error::Error for LinalgError {}

/// Dense row-major matrix with finite entries.
#[derive(Debug, Clone, PartialEq)]
pub struct Matrix {
    rows: usize,
    cols: usize,
    data: Vec<f64>,
}

impl Matrix {
    pub fn new(rows: usize, cols: usize, data: Vec<f64>) -> Result<Self, LinalgError> {
        if data.len() != rows * cols {
            return Err(LinalgError::DimensionMismatch {
                expected: (rows, cols),
                found: (data.len(), 1),
            });
        }
        if data.iter().any(|v| !v.is_finite()) {
            return Err(LinalgError::NonFinite);
        }
        Ok(Matrix { rows, cols, data })
    }

    /// Builds a matrix from row slices; every row must have the same length.
    pub fn from_rows<R: AsRef<[f64]>>(rows: &[R]) -> Result<Self, LinalgError> {
        let nrows = rows.len();
        let ncols = rows.first().map_or(0, |r| r.as_ref().len());
        let mut data = Vec::with_capacity(nrows * ncols);
        for r in rows {
            let r = r.as_ref();
            if r.len() != ncols {
                return Err(LinalgError::DimensionMismatch {
                    expected: (nrows, ncols),
                    found: (nrows, r.len()),
                });
            }
            data.extend_from_slice(r);
        }
        Matrix::new(nrows, ncols, data)
    }

    pub fn zeros(rows: usize, cols: usize) -> Self {
        Matrix { rows, cols, data: vec![0.0; rows * cols] }
    }

    pub fn identity(n: usize) -> Self {
        let mut m = Matrix::zeros(n, n);
        for i in 0..n {
            m[(i, i)] = 1.0;
        }
        m
    }

    #[inline]
    pub fn rows(&self) -> usize {
        self.rows
    }

    #[inline]
    pub fn cols(&self) -> usize {
        self.cols
    }

    #[inline]
    pub fn is_square(&self) -> bool {
        self.rows == self.cols
    }

    pub fn as_slice(&self) -> &[f64] {
        &self.data
    }

    pub fn row(&self, i: usize) -> &[f64] {
        &self.data[i * self.cols..(i + 1) * self.cols]
    }

    pub fn column(&self, j: usize) -> Vec<f64> {
        (0..self.rows).map(|i| self[(i, j)]).collect()
    }

    pub fn transpose(&self) -> Matrix {
        let mut t = Matrix::zeros(self.cols, self.rows);
        for i in 0..self.rows {
            for j in 0..self.cols {
                t[(j, i)] = self[(i, j)];
            }
        }
        t
    }

    /// `self * v`.
    pub fn mul_vec(&self, v: &[f64]) -> Vec<f64> {
        assert_eq!(v.len(), self.cols, "mul_vec: length mismatch");
        (0..self.rows)
            .map(|i| self.row(i).iter().zip(v).map(|(a, b)| a * b).sum())
            .collect()
    }

    /// `self^t * v`.
    pub fn tr_mul_vec(&self, v: &[f64]) -> Vec<f64> {
        assert_eq!(v.len(), self.rows, "tr_mul_vec: length mismatch");
        let mut out = vec![0.0; self.cols];
        for i in 0..self.rows {
            let vi = v[i];
            for (o, a) in out.iter_mut().zip(self.row(i)) {
                *o += a * vi;
            }
        }
        out
    }

    pub fn mul(&self, other: &Matrix) -> Matrix {
        assert_eq!(self.cols, other.rows, "mul: inner dimension mismatch");
        let mut out = Matrix::zeros(self.rows, other.cols);
        for i in 0..self.rows {
            for k in 0..self.cols {
                let a = self[(i, k)];
                if a == 0.0 {
                    continue;
                }
                for j in 0..other.cols {
                    out[(i, j)] += a * other[(k, j)];
                }
            }
        }
        out
    }

    pub fn add(&self, other: &Matrix) -> Matrix {
        assert_eq!((self.rows, self.cols), (other.rows, other.cols));
        let data = self.data.iter().zip(&other.data).map(|(a, b)| a + b).collect();
        Matrix { rows: self.rows, cols: self.cols, data }
    }

    pub fn scale(&self, s: f64) -> Matrix {
        Matrix { rows: self.rows, cols: self.cols, data: self.data.iter().map(|v| v * s).collect() }
    }

    /// Maximum absolute row sum.
    pub fn norm_inf(&self) -> f64 {
        (0..self.rows)
            .map(|i| self.row(i).iter().map(|v| v.abs()).sum::<f64>())
            .fold(0.0, f64::max)
    }

    pub fn norm_frobenius(&self) -> f64 {
        libm::sqrt(self.data.iter().map(|v| v * v).sum())
    }

    /// Principal submatrix on the given (sorted) index set.
    pub fn principal_submatrix(&self, idx: &[usize]) -> Matrix {
        let k = idx.len();
        let mut m = Matrix::zeros(k, k);
        for (a, &i) in idx.iter().enumerate() {
            for (b, &j) in idx.iter().enumerate() {
                m[(a, b)] = self[(i, j)];
            }
        }
        m
    }

    /// Appends `col` as a new last column.
    pub fn hstack_column(&self, col: &[f64]) -> Matrix {
        assert_eq!(col.len(), self.rows);
        let mut out = Matrix::zeros(self.rows, self.cols + 1);
        for i in 0..self.rows {
            out.data[i * (self.cols + 1)..i * (self.cols + 1) + self.cols]
                .copy_from_slice(self.row(i));
            out[(i, self.cols)] = col[i];
        }
        out
    }

    /// Appends `row` as a new last row.
    pub fn vstack_row(&self, row: &[f64]) -> Matrix {
        assert_eq!(row.len(), self.cols);
        let mut data = self.data.clone();
        data.extend_from_slice(row);
        Matrix { rows: self.rows + 1, cols: self.cols, data }
    }
}

impl Index<(usize, usize)> for Matrix {
    type Output = f64;

    #[inline]
    fn index(&self, (i, j): (usize, usize)) -> &f64 {
        &self.data[i * self.cols + j]
    }
}

impl IndexMut<(usize, usize)> for Matrix {
    #[inline]
    fn index_mut(&mut self, (i, j): (usize, usize)) -> &mut f64 {
        &mut self.data[i * self.cols + j]
    }
}

pub fn norm_inf(v: &[f64]) -> f64 {
    v.iter().fold(0.0, |m, x| f64::max(m, x.abs()))
}

pub fn norm2(v: &[f64]) -> f64 {
    libm::sqrt(dot(v, v))
}

pub fn dot(a: &[f64], b: &[f64]) -> f64 {
    a.iter().zip(b).map(|(x, y)| x * y).sum()
}

/// LU factorization with partial (row) pivoting, `P A = L U`.
#[derive(Debug, Clone)]
pub struct Lu {
    lu: Matrix,
    perm: Vec<usize>,
    sign: f64,
    scale: f64,
}

impl Lu {
    /// Factors a square matrix. Never fails on singular input; zero pivot
    /// columns are skipped so the determinant still comes out as zero.
    pub fn factor(a: &Matrix) -> Result<Lu, LinalgError> {
        if !a.is_square() {
            return Err(LinalgError::DimensionMismatch {
                expected: (a.rows, a.rows),
                found: (a.rows, a.cols),
            });
        }
        let n = a.rows;
        let mut lu = a.clone();
        let mut perm: Vec<usize> = (0..n).collect();
        let mut sign = 1.0;
        for k in 0..n {
            // lowest index wins ties
            let mut p = k;
            let mut best = lu[(k, k)].abs();
            for i in k + 1..n {
                let v = lu[(i, k)].abs();
                if v > best {
                    best = v;
                    p = i;
                }
            }
            if p != k {
                for j in 0..n {
                    lu.data.swap(k * n + j, p * n + j);
                }
                perm.swap(k, p);
                sign = -sign;
            }
            let pivot = lu[(k, k)];
            if pivot == 0.0 {
                continue;
            }
            for i in k + 1..n {
                let f = lu[(i, k)] / pivot;
                lu[(i, k)] = f;
                if f != 0.0 {
                    for j in k + 1..n {
                        lu[(i, j)] -= f * lu[(k, j)];
                    }
                }
            }
        }
        Ok(Lu { lu, perm, sign, scale: a.norm_inf() })
    }

    pub fn determinant(&self) -> f64 {
        let n = self.lu.rows;
        (0..n).fold(self.sign, |d, i| d * self.lu[(i, i)])
    }

    /// True when some pivot is below the relative singularity threshold.
    pub fn is_singular(&self) -> bool {
        let tol = PIVOT_TOL * self.scale;
        self.scale == 0.0 || (0..self.lu.rows).any(|i| self.lu[(i, i)].abs() <= tol)
    }

    pub fn solve(&self, b: &[f64]) -> Result<Vec<f64>, LinalgError> {
        let n = self.lu.rows;
        if b.len() != n {
            return Err(LinalgError::DimensionMismatch { expected: (n, 1), found: (b.len(), 1) });
        }
        if self.is_singular() {
            return Err(LinalgError::Singular);
        }
        let mut x: Vec<f64> = self.perm.iter().map(|&p| b[p]).collect();
        for i in 0..n {
            let mut s = x[i];
            for j in 0..i {
                s -= self.lu[(i, j)] * x[j];
            }
            x[i] = s;
        }
        for i in (0..n).rev() {
            let mut s = x[i];
            for j in i + 1..n {
                s -= self.lu[(i, j)] * x[j];
            }
            x[i] = s / self.lu[(i, i)];
        }
        Ok(x)
    }
}

/// Solves `A x = b` for square `A`.
pub fn lu_solve(a: &Matrix, b: &[f64]) -> Result<Vec<f64>, LinalgError> {
    Lu::factor(a)?.solve(b)
}

/// Determinant through the LU factorization; zero for exactly singular input.
///
/// Panics if `a` is not square.
pub fn determinant(a: &Matrix) -> f64 {
    assert!(a.is_square(), "determinant of a non-square matrix");
    if a.rows == 0 {
        return 1.0;
    }
    Lu::factor(a).map(|lu| lu.determinant()).unwrap_or(0.0)
}

/// Column-orthogonalized form of `J^t` produced by one-sided Jacobi.
///
/// For `J` of shape `m x n` (`m <= n`), `J^t V = W` where `V` is orthogonal
/// (`m x m`) and the columns of `W` (`n x m`) are mutually orthogonal; their
/// norms are the singular values of `J`.
struct JacobiSvd {
    w: Matrix,
    v: Matrix,
    sigma: Vec<f64>,
}

fn one_sided_jacobi(j: &Matrix) -> JacobiSvd {
    let m = j.rows;
    let mut w = j.transpose();
    let n = w.rows;
    let mut v = Matrix::identity(m);
    for _ in 0..MAX_JACOBI_SWEEPS {
        let mut rotated = false;
        for p in 0..m {
            for q in p + 1..m {
                let (mut alpha, mut beta, mut gamma) = (0.0, 0.0, 0.0);
                for k in 0..n {
                    let (a, b) = (w[(k, p)], w[(k, q)]);
                    alpha += a * a;
                    beta += b * b;
                    gamma += a * b;
                }
                if gamma == 0.0 || gamma.abs() <= f64::EPSILON * libm::sqrt(alpha * beta) {
                    continue;
                }
                rotated = true;
                let zeta = (beta - alpha) / (2.0 * gamma);
                let t = zeta.signum() / (zeta.abs() + libm::sqrt(1.0 + zeta * zeta));
                let c = 1.0 / libm::sqrt(1.0 + t * t);
                let s = c * t;
                for k in 0..n {
                    let (a, b) = (w[(k, p)], w[(k, q)]);
                    w[(k, p)] = c * a - s * b;
                    w[(k, q)] = s * a + c * b;
                }
                for k in 0..m {
                    let (a, b) = (v[(k, p)], v[(k, q)]);
                    v[(k, p)] = c * a - s * b;
                    v[(k, q)] = s * a + c * b;
                }
            }
        }
        if !rotated {
            break;
        }
    }
    let sigma = (0..m).map(|k| libm::sqrt((0..n).map(|i| w[(i, k)] * w[(i, k)]).sum())).collect();
    JacobiSvd { w, v, sigma }
}

/// Singular values of `J` (`m <= n` rows), in descending order.
pub fn singular_values(j: &Matrix) -> Vec<f64> {
    let mut s = if j.rows <= j.cols {
        one_sided_jacobi(j).sigma
    } else {
        one_sided_jacobi(&j.transpose()).sigma
    };
    s.sort_by(|a, b| b.total_cmp(a));
    s
}

/// Minimum-norm solution `v = J^+ r` of the underdetermined system `J v = r`.
///
/// Computed from a one-sided Jacobi SVD with singular values below
/// `SVD_TRUNCATION * sigma_max` dropped. Full row rank is required.
pub fn pinv_apply(j: &Matrix, r: &[f64]) -> Result<Vec<f64>, LinalgError> {
    let (m, n) = (j.rows, j.cols);
    if m > n || r.len() != m {
        return Err(LinalgError::DimensionMismatch { expected: (m, n), found: (r.len(), n) });
    }
    let svd = one_sided_jacobi(j);
    let smax = svd.sigma.iter().copied().fold(0.0, f64::max);
    let cutoff = SVD_TRUNCATION * smax;
    let rank = svd.sigma.iter().filter(|&&s| smax > 0.0 && s > cutoff).count();
    if rank < m {
        return Err(LinalgError::RankDeficient { rank, rows: m });
    }
    let mut out = vec![0.0; n];
    for k in 0..m {
        let s2 = svd.sigma[k] * svd.sigma[k];
        let coef = (0..m).map(|i| svd.v[(i, k)] * r[i]).sum::<f64>() / s2;
        for (i, o) in out.iter_mut().enumerate() {
            *o += svd.w[(i, k)] * coef;
        }
    }
    Ok(out)
}

/// Eigenvalues of a symmetric matrix by cyclic Jacobi rotations, ascending.
pub fn symmetric_eigenvalues(s: &Matrix) -> Result<Vec<f64>, LinalgError> {
    if !s.is_square() {
        return Err(LinalgError::DimensionMismatch {
            expected: (s.rows, s.rows),
            found: (s.rows, s.cols),
        });
    }
    let n = s.rows;
    for i in 0..n {
        for j in i + 1..n {
            if (s[(i, j)] - s[(j, i)]).abs() > SYMMETRY_TOL {
                return Err(LinalgError::NotSymmetric);
            }
        }
    }
    let mut a = s.clone();
    // symmetrize the last few ulps away
    for i in 0..n {
        for j in i + 1..n {
            let avg = 0.5 * (a[(i, j)] + a[(j, i)]);
            a[(i, j)] = avg;
            a[(j, i)] = avg;
        }
    }
    let frob = a.norm_frobenius();
    for _ in 0..MAX_JACOBI_SWEEPS {
        let off: f64 = (0..n)
            .flat_map(|i| (0..n).filter(move |&j| j != i).map(move |j| (i, j)))
            .map(|(i, j)| a[(i, j)] * a[(i, j)])
            .sum();
        if libm::sqrt(off) <= 1e-15 * frob || off == 0.0 {
            break;
        }
        for p in 0..n {
            for q in p + 1..n {
                let apq = a[(p, q)];
                if apq == 0.0 {
                    continue;
                }
                let theta = (a[(q, q)] - a[(p, p)]) / (2.0 * apq);
                let t = theta.signum() / (theta.abs() + libm::sqrt(1.0 + theta * theta));
                let t = if theta == 0.0 { 1.0 } else { t };
                let c = 1.0 / libm::sqrt(1.0 + t * t);
                let sn = t * c;
                for k in 0..n {
                    let (akp, akq) = (a[(k, p)], a[(k, q)]);
                    a[(k, p)] = c * akp - sn * akq;
                    a[(k, q)] = sn * akp + c * akq;
                }
                for k in 0..n {
                    let (apk, aqk) = (a[(p, k)], a[(q, k)]);
                    a[(p, k)] = c * apk - sn * aqk;
                    a[(q, k)] = sn * apk + c * aqk;
                }
                a[(p, q)] = 0.0;
                a[(q, p)] = 0.0;
            }
        }
    }
    let mut eig: Vec<f64> = (0..n).map(|i| a[(i, i)]).collect();
    eig.sort_by(f64::total_cmp);
    Ok(eig)
}

/// Central-difference Jacobian of `f` at `y` with step `h`.
pub fn fd_jacobian<F>(f: F, y: &[f64], h: f64) -> Matrix
where
    F: Fn(&[f64]) -> Vec<f64>,
{
    let n = y.len();
    let m = f(y).len();
    let mut jac = Matrix::zeros(m, n);
    let mut probe = y.to_vec();
    for j in 0..n {
        probe[j] = y[j] + h;
        let plus = f(&probe);
        probe[j] = y[j] - h;
        let minus = f(&probe);
        probe[j] = y[j];
        for i in 0..m {
            jac[(i, j)] = (plus[i] - minus[i]) / (2.0 * h);
        }
    }
    jac
}
