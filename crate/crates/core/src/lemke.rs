//! Lemke's complementary pivoting with covering vector `e`.
//!
//! Works on the augmented system `w = q + e z0 + A z`. The first pivot
//! brings `z0` in at the most negative `q_i`; afterwards the entering
//! variable is always the complement of the one that just left. Ratio-test
//! ties prefer `z0` (so the run can finish) and otherwise the basic variable
//! with the lowest index.

use alloc::vec::Vec;

use crate::lcp::{LcpInstance, LcpSolution};

const PIVOT_TOL: f64 = 1e-12;
const TIE_TOL: f64 = 1e-12;

#[derive(Debug, Clone, PartialEq)]
pub enum LemkeOutcome {
    Solution(LcpSolution),
    /// The driving column had no positive entry.
    RayTermination,
    /// `max_pivots` was reached without termination.
    CycleLimit,
}

/// A pivot `(row, entering variable, leaving variable)`. Variables are
/// numbered `w_1..w_n = 0..n`, `z_1..z_n = n..2n`, `z0 = 2n`.
pub type Pivot = (usize, usize, usize);

#[derive(Debug, Clone, PartialEq)]
pub struct LemkeRun {
    pub outcome: LemkeOutcome,
    pub pivots: Vec<Pivot>,
}

struct Tableau {
    n: usize,
    width: usize,
    t: Vec<f64>,
    rhs: Vec<f64>,
    basis: Vec<usize>,
}

impl Tableau {
    fn new(inst: &LcpInstance) -> Self {
        let n = inst.n();
        let width = 2 * n + 1;
        let mut t = alloc::vec![0.0; n * width];
        for i in 0..n {
            t[i * width + i] = 1.0;
            for j in 0..n {
                t[i * width + n + j] = -inst.a()[(i, j)];
            }
            t[i * width + 2 * n] = -1.0;
        }
        Tableau { n, width, t, rhs: inst.q().to_vec(), basis: (0..n).collect() }
    }

    #[inline]
    fn at(&self, i: usize, j: usize) -> f64 {
        self.t[i * self.width + j]
    }

    fn pivot(&mut self, r: usize, c: usize) -> usize {
        let w = self.width;
        let p = self.at(r, c);
        for j in 0..w {
            self.t[r * w + j] /= p;
        }
        self.rhs[r] /= p;
        for i in 0..self.n {
            if i == r {
                continue;
            }
            let f = self.at(i, c);
            if f == 0.0 {
                continue;
            }
            for j in 0..w {
                self.t[i * w + j] -= f * self.t[r * w + j];
            }
            self.rhs[i] -= f * self.rhs[r];
            self.t[i * w + c] = 0.0;
        }
        core::mem::replace(&mut self.basis[r], c)
    }

    /// Minimum-ratio row for entering column `c`, or `None` on a ray.
    fn ratio_test(&self, c: usize) -> Option<usize> {
        let z0 = 2 * self.n;
        let colmax = (0..self.n).map(|i| self.at(i, c).abs()).fold(0.0, f64::max);
        let tol = PIVOT_TOL * colmax.max(1.0);
        let mut best: Option<(usize, f64)> = None;
        for i in 0..self.n {
            let a = self.at(i, c);
            if a <= tol {
                continue;
            }
            let ratio = self.rhs[i].max(0.0) / a;
            best = match best {
                None => Some((i, ratio)),
                Some((bi, br)) => {
                    let scale = br.abs().max(ratio.abs()).max(1.0);
                    if ratio < br - TIE_TOL * scale {
                        Some((i, ratio))
                    } else if (ratio - br).abs() <= TIE_TOL * scale {
                        let prefer_new = self.basis[i] == z0
                            || (self.basis[bi] != z0 && self.basis[i] < self.basis[bi]);
                        if prefer_new { Some((i, ratio)) } else { Some((bi, br)) }
                    } else {
                        Some((bi, br))
                    }
                }
            };
        }
        best.map(|(i, _)| i)
    }

    fn z_values(&self) -> Vec<f64> {
        let mut z = alloc::vec![0.0; self.n];
        for (i, &b) in self.basis.iter().enumerate() {
            if (self.n..2 * self.n).contains(&b) {
                z[b - self.n] = self.rhs[i].max(0.0);
            }
        }
        z
    }
}

/// Runs Lemke's method and records every pivot.
pub fn lemke_run(inst: &LcpInstance, max_pivots: usize) -> LemkeRun {
    let n = inst.n();
    let mut pivots = Vec::new();
    if inst.q().iter().all(|&v| v >= 0.0) {
        let (_, sol) = inst.check_solution(&alloc::vec![0.0; n], 0.0);
        return LemkeRun { outcome: LemkeOutcome::Solution(sol), pivots };
    }
    let mut tab = Tableau::new(inst);
    let z0 = 2 * n;
    let mut r = 0;
    for i in 1..n {
        if inst.q()[i] < inst.q()[r] {
            r = i;
        }
    }
    if max_pivots == 0 {
        return LemkeRun { outcome: LemkeOutcome::CycleLimit, pivots };
    }
    let mut leaving = tab.pivot(r, z0);
    pivots.push((r, z0, leaving));
    loop {
        let entering = if leaving < n { leaving + n } else { leaving - n };
        let Some(row) = tab.ratio_test(entering) else {
            return LemkeRun { outcome: LemkeOutcome::RayTermination, pivots };
        };
        if pivots.len() >= max_pivots {
            return LemkeRun { outcome: LemkeOutcome::CycleLimit, pivots };
        }
        leaving = tab.pivot(row, entering);
        pivots.push((row, entering, leaving));
        if leaving == z0 {
            let (_, sol) = inst.check_solution(&tab.z_values(), 0.0);
            return LemkeRun { outcome: LemkeOutcome::Solution(sol), pivots };
        }
    }
}

pub fn lemke_solve(inst: &LcpInstance, max_pivots: usize) -> LemkeOutcome {
    lemke_run(inst, max_pivots).outcome
}
