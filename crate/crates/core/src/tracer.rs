//! Predictor-corrector path tracing from `(y0, 1)` towards `lambda = 0`.
//!
//! Each outer iteration:
//!
//! 1. computes the unit tangent `xi = (s, -1) / ||(s, -1)||` with
//!    `s = (dH/dy)^{-1} dH/dlambda`, oriented by the sign of `det(dH/dy)`;
//! 2. takes an Euler step of length `a = l0^l` along it and applies one
//!    Gauss-Newton correction with the Moore-Penrose inverse of
//!    `[dH/dy | dH/dlambda]`; if the corrected `lambda` leaves `(0, 1)` or
//!    the corrected state leaves the open domain, the step is shrunk
//!    geometrically while the progress measure stays above `a0`;
//! 3. accepts the corrected point when its residual is below
//!    `residual_accept`, otherwise shrinks while `a > eps3`;
//! 4. on a failed step, stops with the candidate if `lambda` has stagnated
//!    below `eps2`, otherwise gives up;
//! 5. stops once an accepted `lambda <= eps1`.
//!
//! The orientation rule picks `xi` when `det(dH/dy)` has the same sign as at
//! the anchor. For the KKT homotopy the anchor determinant is positive, so
//! this is exactly "`xi` when the determinant is positive".

use alloc::vec::Vec;
use core::fmt;

use crate::homotopy::{HomotopyState, HomotopySystem};
use crate::linalg::{determinant, norm2, norm_inf, pinv_apply, LinalgError, Lu};

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct TracerConfig {
    /// Final `lambda` tolerance.
    pub eps1: f64,
    /// Stagnation tolerance used by the failure branch.
    pub eps2: f64,
    /// Smallest step length tried after a rejected corrector.
    pub eps3: f64,
    /// Step-length base, `a = l0^l`.
    pub l0: f64,
    /// Minimum progress before a `lambda`-infeasible step gives up. Kept at
    /// `eps1` by default: a larger floor stalls the ladder once `lambda` is
    /// below `a0 * |tau_lambda|`, short of the final tolerance.
    pub a0: f64,
    pub max_outer: usize,
    /// Residual bound for accepting a corrected point.
    pub residual_accept: f64,
}

impl TracerConfig {
    /// The literal `r <= 1` acceptance bound.
    pub const LOOSE_RESIDUAL: f64 = 1.0;

    pub fn with_loose_residual(mut self) -> Self {
        self.residual_accept = Self::LOOSE_RESIDUAL;
        self
    }

    pub fn validate(&self) -> Result<(), ConfigError> {
        let finite = [self.eps1, self.eps2, self.eps3, self.l0, self.a0, self.residual_accept]
            .iter()
            .all(|v| v.is_finite());
        if !finite {
            return Err(ConfigError("all tolerances must be finite"));
        }
        if !(0.0 < self.eps1 && self.eps1 < self.eps3 && self.eps3 < self.eps2) {
            return Err(ConfigError("tolerances must satisfy 0 < eps1 < eps3 < eps2"));
        }
        if !(self.l0 > 0.0 && self.l0 < 1.0) {
            return Err(ConfigError("l0 must lie in (0, 1)"));
        }
        if self.a0 <= 0.0 {
            return Err(ConfigError("a0 must be positive"));
        }
        if self.residual_accept <= 0.0 {
            return Err(ConfigError("residual_accept must be positive"));
        }
        Ok(())
    }
}

impl Default for TracerConfig {
    fn default() -> Self {
        TracerConfig {
            eps1: 1e-7,
            eps2: 1e-2,
            eps3: 1e-4,
            l0: 0.5,
            a0: 1e-7,
            max_outer: 1000,
            residual_accept: 1e-6,
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct ConfigError(pub &'static str);

impl fmt::Display for ConfigError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.0)
    }
}

impl core::error::Error for ConfigError {}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum DetSign {
    Positive,
    Negative,
    Zero,
}

impl DetSign {
    pub fn of(v: f64) -> Self {
        if v > 0.0 {
            DetSign::Positive
        } else if v < 0.0 {
            DetSign::Negative
        } else {
            DetSign::Zero
        }
    }

    pub fn symbol(self) -> &'static str {
        match self {
            DetSign::Positive => "+",
            DetSign::Negative => "-",
            DetSign::Zero => "0",
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum TraceEvent {
    Predictor,
    Corrector,
    Shrink,
    Accept,
}

impl TraceEvent {
    pub fn name(self) -> &'static str {
        match self {
            TraceEvent::Predictor => "predictor",
            TraceEvent::Corrector => "corrector",
            TraceEvent::Shrink => "shrink",
            TraceEvent::Accept => "accept",
        }
    }
}

/// One step of the tracer.
///
/// `Predictor` and `Corrector` carry the predicted and corrected points,
/// `Shrink` the rejected point together with the step length that failed,
/// `Accept` the new iterate. The first record is always the anchor.
#[derive(Debug, Clone, PartialEq)]
pub struct TraceRecord {
    pub outer_index: usize,
    pub y: Vec<f64>,
    pub lambda: f64,
    pub step_a: f64,
    /// `||H(y, lambda)||_inf`.
    pub residual: f64,
    /// Sign of `det(dH/dy)` at this record's point.
    pub det_sign: DetSign,
    pub event: TraceEvent,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum TracerStatus {
    Solved,
    /// Step-length control failed away from `lambda = 0`.
    Unable,
    MaxIter,
    SingularJacobian,
    /// The anchor is outside the system's domain.
    LeftDomain,
}

impl TracerStatus {
    pub fn name(self) -> &'static str {
        match self {
            TracerStatus::Solved => "solved",
            TracerStatus::Unable => "unable",
            TracerStatus::MaxIter => "max-iter",
            TracerStatus::SingularJacobian => "singular-jacobian",
            TracerStatus::LeftDomain => "left-domain",
        }
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct TracerResult {
    pub status: TracerStatus,
    /// Last accepted point, or the stagnated candidate when the failure
    /// branch stops with a solution.
    pub final_state: HomotopyState,
    pub final_residual: f64,
    pub trace: Vec<TraceRecord>,
    pub outer_iterations: usize,
}

#[derive(Debug, Clone, PartialEq)]
pub struct Tangent {
    /// Unit vector of length `dim + 1`; last entry is the `lambda` component.
    pub tau: Vec<f64>,
    pub det: f64,
}

/// Unit tangent at `st`, `xi` if `det(dH/dy) > 0` and `-xi` otherwise.
pub fn tangent<S: HomotopySystem + ?Sized>(sys: &S, st: &HomotopyState) -> Result<Tangent, LinalgError> {
    tangent_oriented(sys, st, 1.0)
}

/// Unit tangent oriented so that `det(dH/dy) * orientation > 0` keeps `xi`.
pub fn tangent_oriented<S: HomotopySystem + ?Sized>(
    sys: &S,
    st: &HomotopyState,
    orientation: f64,
) -> Result<Tangent, LinalgError> {
    let lu = Lu::factor(&sys.jacobian_y(st))?;
    let det = lu.determinant();
    let mut tau = lu.solve(&sys.jacobian_lambda(st))?;
    tau.push(-1.0);
    let nrm = norm2(&tau);
    let sign = if det * orientation > 0.0 { 1.0 } else { -1.0 };
    for t in tau.iter_mut() {
        *t *= sign / nrm;
    }
    Ok(Tangent { tau, det })
}

/// Euler step `(y, lambda) + a * tau`.
pub fn predictor(st: &HomotopyState, tau: &[f64], a: f64) -> HomotopyState {
    let aug: Vec<f64> = st.to_augmented().iter().zip(tau).map(|(v, t)| v + a * t).collect();
    HomotopyState::from_augmented(&aug)
}

/// One Gauss-Newton step: returns `(J^+ H, st - J^+ H)` with
/// `J = [dH/dy | dH/dlambda]` evaluated at `st`.
pub fn corrector<S: HomotopySystem + ?Sized>(
    sys: &S,
    st: &HomotopyState,
) -> Result<(Vec<f64>, HomotopyState), LinalgError> {
    let h = sys.eval(st);
    let delta = pinv_apply(&sys.jacobian_full(st), &h)?;
    let aug: Vec<f64> = st.to_augmented().iter().zip(&delta).map(|(v, d)| v - d).collect();
    Ok((delta, HomotopyState::from_augmented(&aug)))
}

/// `det [ dH/dy  dH/dlambda ; tau^t ]`.
pub fn bordered_determinant<S: HomotopySystem + ?Sized>(sys: &S, st: &HomotopyState, tau: &[f64]) -> f64 {
    determinant(&sys.jacobian_full(st).vstack_row(tau))
}

fn residual<S: HomotopySystem + ?Sized>(sys: &S, st: &HomotopyState) -> f64 {
    norm_inf(&sys.eval(st))
}

fn det_sign<S: HomotopySystem + ?Sized>(sys: &S, st: &HomotopyState) -> DetSign {
    DetSign::of(determinant(&sys.jacobian_y(st)))
}

fn record<S: HomotopySystem + ?Sized>(
    sys: &S,
    outer_index: usize,
    st: &HomotopyState,
    step_a: f64,
    event: TraceEvent,
) -> TraceRecord {
    TraceRecord {
        outer_index,
        y: st.y.clone(),
        lambda: st.lambda,
        step_a,
        residual: residual(sys, st),
        det_sign: det_sign(sys, st),
        event,
    }
}

enum Step {
    Accepted(HomotopyState, f64),
    Failed(Option<HomotopyState>),
}

/// Traces the path of `sys` from its anchor.
pub fn trace_path<S: HomotopySystem + ?Sized>(sys: &S, config: &TracerConfig) -> TracerResult {
    let anchor = sys.anchor_state();
    let anchor_residual = residual(sys, &anchor);
    let mut trace = Vec::new();
    let finish = |status, final_state: HomotopyState, final_residual, trace, outer_iterations| TracerResult {
        status,
        final_state,
        final_residual,
        trace,
        outer_iterations,
    };
    if !sys.domain_check(&anchor) {
        return finish(TracerStatus::LeftDomain, anchor, anchor_residual, trace, 0);
    }
    let anchor_det = determinant(&sys.jacobian_y(&anchor));
    trace.push(TraceRecord {
        outer_index: 0,
        y: anchor.y.clone(),
        lambda: anchor.lambda,
        step_a: 1.0,
        residual: anchor_residual,
        det_sign: DetSign::of(anchor_det),
        event: TraceEvent::Accept,
    });
    if anchor_det == 0.0 {
        return finish(TracerStatus::SingularJacobian, anchor, anchor_residual, trace, 0);
    }
    let orientation = anchor_det.signum();

    let mut current = anchor;
    let mut current_residual = anchor_residual;
    for outer in 1..=config.max_outer {
        let Ok(tan) = tangent_oriented(sys, &current, orientation) else {
            return finish(TracerStatus::SingularJacobian, current, current_residual, trace, outer);
        };

        let mut l: i32 = 0;
        let step = loop {
            let a = libm::pow(config.l0, l as f64);
            let pred = predictor(&current, &tan.tau, a);
            trace.push(record(sys, outer, &pred, a, TraceEvent::Predictor));

            let corr = match corrector(sys, &pred) {
                Ok((_, c)) => c,
                Err(_) => {
                    if a > config.eps3 {
                        trace.push(record(sys, outer, &pred, a, TraceEvent::Shrink));
                        l += 1;
                        continue;
                    }
                    break Step::Failed(None);
                }
            };

            if corr.lambda > 0.0 && corr.lambda < 1.0 && sys.domain_check(&corr) {
                let r = residual(sys, &corr);
                trace.push(record(sys, outer, &corr, a, TraceEvent::Corrector));
                if r <= config.residual_accept {
                    break Step::Accepted(corr, a);
                }
                if a > config.eps3 {
                    trace.push(record(sys, outer, &corr, a, TraceEvent::Shrink));
                    l += 1;
                    continue;
                }
                break Step::Failed(Some(corr));
            }

            let disp: Vec<f64> = corr
                .to_augmented()
                .iter()
                .zip(current.to_augmented())
                .map(|(c, p)| c - p)
                .collect();
            let progress = a.min(norm2(&disp));
            if progress > config.a0 {
                trace.push(record(sys, outer, &corr, a, TraceEvent::Shrink));
                l += 1;
                continue;
            }
            break Step::Failed(Some(corr));
        };

        match step {
            Step::Accepted(next, a) => {
                let rec = record(sys, outer, &next, a, TraceEvent::Accept);
                current_residual = rec.residual;
                trace.push(rec);
                current = next;
                if current.lambda.abs() <= config.eps1 {
                    return finish(TracerStatus::Solved, current, current_residual, trace, outer);
                }
            }
            Step::Failed(candidate) => {
                let candidate = candidate.unwrap_or_else(|| current.clone());
                let stagnated = (candidate.lambda - current.lambda).abs() < config.eps2;
                if stagnated && candidate.lambda.abs() < config.eps2 {
                    let cand_residual = residual(sys, &candidate);
                    if cand_residual <= config.residual_accept && candidate.lambda >= 0.0 {
                        return finish(TracerStatus::Solved, candidate, cand_residual, trace, outer);
                    }
                    if current.lambda.abs() < config.eps2 {
                        return finish(TracerStatus::Solved, current, current_residual, trace, outer);
                    }
                }
                // Retrying Step 1 from the same accepted point would replay this
                // exact iteration, so the non-stagnated branch ends here too.
                return finish(TracerStatus::Unable, current, current_residual, trace, outer);
            }
        }
    }
    finish(TracerStatus::MaxIter, current, current_residual, trace, config.max_outer)
}
