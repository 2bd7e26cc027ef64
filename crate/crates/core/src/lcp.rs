use alloc::vec::Vec;
use core::fmt;

use crate::linalg::{LinalgError, Matrix};

/// Default scale grid for [`LcpInstance::strictly_feasible_point`].
pub const DEFAULT_SCAN: [f64; 7] = [0.1, 0.2, 0.5, 1.0, 2.0, 5.0, 10.0];

/// Lattice factors used after the plain `t * e` scan fails.
const PERTURBATIONS: [f64; 3] = [0.75, 1.0, 1.25];

/// Above this size the full `3^n` perturbation lattice is replaced by
/// single-coordinate perturbations.
const FULL_LATTICE_MAX_N: usize = 10;

#[derive(Debug, Clone, PartialEq)]
pub enum LcpError {
    /// `A` is not square or `q` has the wrong length.
    Shape { rows: usize, cols: usize, q_len: usize },
    Linalg(LinalgError),
    /// No strictly feasible point on the scan grid.
    NotFound,
    /// Enumeration guard for `2^n` algorithms.
    TooLarge { n: usize, max: usize },
}

impl fmt::Display for LcpError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            LcpError::Shape { rows, cols, q_len } => {
                write!(f, "A is {rows}x{cols} but q has length {q_len}; A must be square with matching q")
            }
            LcpError::Linalg(e) => write!(f, "{e}"),
            LcpError::NotFound => write!(f, "no strictly feasible point found on the scan grid"),
            LcpError::TooLarge { n, max } => write!(f, "n = {n} exceeds the enumeration limit {max}"),
        }
    }
}

impl core::error::Error for LcpError {}

impl From<LinalgError> for LcpError {
    fn from(e: LinalgError) -> Self {
        LcpError::Linalg(e)
    }
}

/// An LCP(q, A) instance.
#[derive(Debug, Clone, PartialEq)]
pub struct LcpInstance {
    a: Matrix,
    q: Vec<f64>,
}

/// A candidate point together with its slack and complementarity gap.
#[derive(Debug, Clone, PartialEq)]
pub struct LcpSolution {
    pub x: Vec<f64>,
    pub w: Vec<f64>,
    /// `max_i |x_i w_i|`.
    pub complementarity_gap: f64,
}

impl LcpSolution {
    pub fn is_valid(&self, tol: f64) -> bool {
        self.x.iter().all(|&v| v >= -tol)
            && self.w.iter().all(|&v| v >= -tol)
            && self.complementarity_gap <= tol
    }
}

impl LcpInstance {
    pub fn new(a: Matrix, q: Vec<f64>) -> Result<Self, LcpError> {
        if !a.is_square() || q.len() != a.rows() {
            return Err(LcpError::Shape { rows: a.rows(), cols: a.cols(), q_len: q.len() });
        }
        if q.iter().any(|v| !v.is_finite()) {
            return Err(LcpError::Linalg(LinalgError::NonFinite));
        }
        Ok(LcpInstance { a, q })
    }

    /// Convenience constructor from row slices.
    pub fn from_rows<R: AsRef<[f64]>>(rows: &[R], q: &[f64]) -> Result<Self, LcpError> {
        LcpInstance::new(Matrix::from_rows(rows)?, q.to_vec())
    }

    #[inline]
    pub fn n(&self) -> usize {
        self.q.len()
    }

    pub fn a(&self) -> &Matrix {
        &self.a
    }

    pub fn q(&self) -> &[f64] {
        &self.q
    }

    /// `w = A x + q`.
    pub fn compute_w(&self, x: &[f64]) -> Vec<f64> {
        let mut w = self.a.mul_vec(x);
        for (wi, qi) in w.iter_mut().zip(&self.q) {
            *wi += qi;
        }
        w
    }

    /// Verifies `x` with one symmetric tolerance for sign and complementarity.
    pub fn check_solution(&self, x: &[f64], tol: f64) -> (bool, LcpSolution) {
        let w = self.compute_w(x);
        let complementarity_gap = x.iter().zip(&w).fold(0.0, |m, (a, b)| f64::max(m, (a * b).abs()));
        let sol = LcpSolution { x: x.to_vec(), w, complementarity_gap };
        (sol.is_valid(tol), sol)
    }

    /// True iff `x > 0` and `A x + q > 0`.
    pub fn is_strictly_feasible(&self, x: &[f64]) -> bool {
        x.len() == self.n() && x.iter().all(|&v| v > 0.0) && self.compute_w(x).iter().all(|&v| v > 0.0)
    }

    /// Searches for `x > 0` with `A x + q > 0`.
    ///
    /// Tries `t * e` for each `t` in `scan`, then for each `t` the lattice of
    /// coordinate-wise factors `{0.75, 1, 1.25}^n` in lexicographic order.
    pub fn strictly_feasible_point(&self, scan: &[f64]) -> Result<Vec<f64>, LcpError> {
        let n = self.n();
        for &t in scan {
            let x = alloc::vec![t; n];
            if self.is_strictly_feasible(&x) {
                return Ok(x);
            }
        }
        for &t in scan {
            if n <= FULL_LATTICE_MAX_N {
                let total = 3usize.pow(n as u32);
                for code in 0..total {
                    let mut c = code;
                    let mut x = Vec::with_capacity(n);
                    for _ in 0..n {
                        x.push(t * PERTURBATIONS[c % 3]);
                        c /= 3;
                    }
                    x.reverse();
                    if self.is_strictly_feasible(&x) {
                        return Ok(x);
                    }
                }
            } else {
                for i in 0..n {
                    for f in [PERTURBATIONS[0], PERTURBATIONS[2]] {
                        let mut x = alloc::vec![t; n];
                        x[i] *= f;
                        if self.is_strictly_feasible(&x) {
                            return Ok(x);
                        }
                    }
                }
            }
        }
        Err(LcpError::NotFound)
    }
}
