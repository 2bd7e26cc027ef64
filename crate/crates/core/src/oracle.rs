//! Exhaustive complementary-basis enumeration.
//!
//! Independent of every iterative solver in the crate; used as the ground
//! truth in tests and by the `oracle` CLI command.

use alloc::vec::Vec;

use crate::lcp::{LcpError, LcpInstance, LcpSolution};
use crate::linalg::{lu_solve, norm_inf};

/// Largest `n` accepted by the `2^n` enumerations.
pub const MAX_ENUMERATION_N: usize = 12;

/// Every complementary solution of the instance, degenerate ones included.
///
/// For each index set `alpha` the system `A[alpha, alpha] x_alpha = -q_alpha`
/// is solved with `x` zero off `alpha`; singular subsystems are skipped.
/// Points within `tol` of an earlier one (infinity norm) are merged.
/// Results are ordered by the bitmask of `alpha`.
pub fn brute_force_solutions(inst: &LcpInstance, tol: f64) -> Result<Vec<LcpSolution>, LcpError> {
    let n = inst.n();
    if n > MAX_ENUMERATION_N {
        return Err(LcpError::TooLarge { n, max: MAX_ENUMERATION_N });
    }
    let mut found: Vec<LcpSolution> = Vec::new();
    for mask in 0u32..(1u32 << n) {
        let alpha: Vec<usize> = (0..n).filter(|i| mask & (1 << i) != 0).collect();
        let mut x = alloc::vec![0.0; n];
        if !alpha.is_empty() {
            let sub = inst.a().principal_submatrix(&alpha);
            let rhs: Vec<f64> = alpha.iter().map(|&i| -inst.q()[i]).collect();
            let Ok(xa) = lu_solve(&sub, &rhs) else { continue };
            for (&i, v) in alpha.iter().zip(xa) {
                x[i] = v;
            }
        }
        let w = inst.compute_w(&x);
        if x.iter().any(|&v| v < -tol) || w.iter().any(|&v| v < -tol) {
            continue;
        }
        let dup = found.iter().any(|s| {
            let d: Vec<f64> = s.x.iter().zip(&x).map(|(a, b)| a - b).collect();
            norm_inf(&d) <= tol
        });
        if dup {
            continue;
        }
        let (_, sol) = inst.check_solution(&x, tol);
        found.push(sol);
    }
    Ok(found)
}
