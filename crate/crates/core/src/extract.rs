//! Turning a converged KKT-homotopy endpoint `(x, z1, z2)` into an LCP answer.
//!
//! At `lambda = 0` the multipliers split as `z1 = w - dw` and `z2 = x - dx`
//! with `w = A x + q`. The endpoint's `x` solves the LCP exactly when, for
//! every `i`, `dx_i dw_i = 0` or `z1_i + z2_i > 0`. A nonsingular
//! `diag(w) + diag(x) A^t` is a sufficient (not necessary) certificate.

use alloc::vec::Vec;

use crate::lcp::LcpInstance;
use crate::linalg::{determinant, norm_inf, Matrix};

/// Tolerance used for the strict inequalities and for verification.
pub const DEFAULT_TOL: f64 = 1e-6;

#[derive(Debug, Clone, PartialEq)]
pub struct ExtractionReport {
    pub x_bar: Vec<f64>,
    pub w_bar: Vec<f64>,
    pub z1_bar: Vec<f64>,
    pub z2_bar: Vec<f64>,
    /// `w_bar - z1_bar`.
    pub delta_w: Vec<f64>,
    /// `x_bar - z2_bar`.
    pub delta_x: Vec<f64>,
    pub iff_holds: bool,
    /// `det(diag(w_bar) + diag(x_bar) A^t)`.
    pub cert_det: f64,
    pub certified: bool,
    /// Infinity norm of the `lambda = 0` system at the raw endpoint.
    pub sys_residual: f64,
    pub lcp_verified: bool,
}

/// Infinity norm of `[(A + A^t) x + q - z1 - A^t z2 ; Z1 x ; Z2 (A x + q)]`.
pub fn residual_system_check(inst: &LcpInstance, y_bar: &[f64]) -> f64 {
    let n = inst.n();
    assert_eq!(y_bar.len(), 3 * n, "endpoint must have length 3n");
    let (x, rest) = y_bar.split_at(n);
    let (z1, z2) = rest.split_at(n);
    let a = inst.a();
    let ax = a.mul_vec(x);
    let atx = a.tr_mul_vec(x);
    let atz2 = a.tr_mul_vec(z2);
    let mut worst: f64 = 0.0;
    for i in 0..n {
        let w = ax[i] + inst.q()[i];
        let g = ax[i] + atx[i] + inst.q()[i] - z1[i] - atz2[i];
        worst = worst.max(g.abs()).max((z1[i] * x[i]).abs()).max((z2[i] * w).abs());
    }
    worst
}

/// `(det(diag(w) + diag(x) A^t), |det| > tol)` with `w = A x + q`.
pub fn nonsingularity_certificate(inst: &LcpInstance, x_bar: &[f64], tol: f64) -> (f64, bool) {
    let n = inst.n();
    let w = inst.compute_w(x_bar);
    let a = inst.a();
    let mut m = Matrix::zeros(n, n);
    for i in 0..n {
        for j in 0..n {
            m[(i, j)] = x_bar[i] * a[(j, i)];
        }
        m[(i, i)] += w[i];
    }
    let det = determinant(&m);
    (det, det.abs() > tol)
}

fn clamp_dust(v: &[f64], tol: f64) -> Vec<f64> {
    v.iter().map(|&t| if t < 0.0 && t > -tol { 0.0 } else { t }).collect()
}

/// Builds the full extraction report for an endpoint `y_bar = (x, z1, z2)`.
///
/// Slightly negative components (above `-tol`) are clamped to zero first.
pub fn extract(inst: &LcpInstance, y_bar: &[f64], tol: f64) -> ExtractionReport {
    let n = inst.n();
    let sys_residual = residual_system_check(inst, y_bar);
    let x_bar = clamp_dust(&y_bar[..n], tol);
    let z1_bar = clamp_dust(&y_bar[n..2 * n], tol);
    let z2_bar = clamp_dust(&y_bar[2 * n..], tol);
    let w_bar = inst.compute_w(&x_bar);
    let delta_w: Vec<f64> = w_bar.iter().zip(&z1_bar).map(|(w, z)| w - z).collect();
    let delta_x: Vec<f64> = x_bar.iter().zip(&z2_bar).map(|(x, z)| x - z).collect();
    let iff_holds =
        (0..n).all(|i| (delta_x[i] * delta_w[i]).abs() <= tol || z1_bar[i] + z2_bar[i] > tol);
    let (cert_det, certified) = nonsingularity_certificate(inst, &x_bar, tol);
    let (lcp_verified, _) = inst.check_solution(&x_bar, tol);
    ExtractionReport {
        x_bar,
        w_bar,
        z1_bar,
        z2_bar,
        delta_w,
        delta_x,
        iff_holds,
        cert_det,
        certified,
        sys_residual,
        lcp_verified,
    }
}

impl ExtractionReport {
    /// `max_i |w_i x_i - dw_i x_i|`, which vanishes when `Z1 x = 0`.
    pub fn decomposition_defect(&self) -> f64 {
        let v: Vec<f64> = (0..self.x_bar.len())
            .map(|i| self.w_bar[i] * self.x_bar[i] - self.delta_w[i] * self.x_bar[i])
            .collect();
        norm_inf(&v)
    }
}
