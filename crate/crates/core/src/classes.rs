//! Matrix classes used to label LCP instances.
//!
//! P, N and N0-exact-order tests enumerate all `2^n - 1` principal minors,
//! so they are limited to `n <= 12`. Copositivity is co-NP-hard in general;
//! the lattice tests here are three-valued and only answer `Yes` when a
//! sufficient condition backs up the sample.

use alloc::collections::BTreeMap;
use alloc::vec::Vec;

use crate::lcp::LcpError;
use crate::linalg::{determinant, symmetric_eigenvalues, Matrix};
use crate::oracle::MAX_ENUMERATION_N;

/// Sign threshold for principal minors.
pub const MINOR_TOL: f64 = 1e-10;
/// Threshold below which a sampled quadratic form counts as negative.
pub const COPOSITIVE_TOL: f64 = 1e-9;
pub const DEFAULT_GRID_DENSITY: usize = 30;

/// Principal minors keyed by their (sorted, 0-based) index set.
pub type PrincipalMinors = BTreeMap<Vec<usize>, f64>;

#[derive(Debug, Clone, PartialEq)]
pub enum CopositivityVerdict {
    Yes,
    /// A nonnegative `x` with `x^t A x < 0`.
    No { witness: Vec<f64> },
    Inconclusive,
}

impl CopositivityVerdict {
    pub fn label(&self) -> &'static str {
        match self {
            CopositivityVerdict::Yes => "yes",
            CopositivityVerdict::No { .. } => "no",
            CopositivityVerdict::Inconclusive => "inconclusive",
        }
    }

    pub fn is_yes(&self) -> bool {
        matches!(self, CopositivityVerdict::Yes)
    }

    pub fn is_no(&self) -> bool {
        matches!(self, CopositivityVerdict::No { .. })
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct ClassReport {
    pub is_p: bool,
    pub is_n: bool,
    pub is_psd: bool,
    pub n0_exact_order: Option<usize>,
    pub copositive: CopositivityVerdict,
    pub almost_c0: CopositivityVerdict,
    /// `(min, max)` principal minor for each order `1..=n`.
    pub minor_extremes: Vec<(f64, f64)>,
}

fn guard(a: &Matrix) -> Result<usize, LcpError> {
    let n = a.rows();
    if !a.is_square() {
        return Err(LcpError::Shape { rows: a.rows(), cols: a.cols(), q_len: a.rows() });
    }
    if n > MAX_ENUMERATION_N {
        return Err(LcpError::TooLarge { n, max: MAX_ENUMERATION_N });
    }
    Ok(n)
}

/// Determinant of every nonempty principal submatrix.
pub fn principal_minors(a: &Matrix) -> Result<PrincipalMinors, LcpError> {
    let n = guard(a)?;
    let mut out = BTreeMap::new();
    for mask in 1u32..(1u32 << n) {
        let idx: Vec<usize> = (0..n).filter(|i| mask & (1 << i) != 0).collect();
        let d = determinant(&a.principal_submatrix(&idx));
        out.insert(idx, d);
    }
    Ok(out)
}

pub fn is_p(a: &Matrix) -> Result<bool, LcpError> {
    Ok(principal_minors(a)?.values().all(|&d| d > MINOR_TOL))
}

pub fn is_n(a: &Matrix) -> Result<bool, LcpError> {
    Ok(principal_minors(a)?.values().all(|&d| d < -MINOR_TOL))
}

/// Positive semidefinite in the sense `x^t A x >= 0`, i.e. via `(A + A^t)/2`.
pub fn is_psd(a: &Matrix) -> bool {
    if a.rows() == 0 {
        return true;
    }
    let sym = a.add(&a.transpose()).scale(0.5);
    let eig = symmetric_eigenvalues(&sym).expect("symmetric part is symmetric");
    eig[0] >= -1e-9 * (1.0 + a.norm_inf())
}

/// Smallest `k` in `1..n` such that every principal minor of order at most
/// `n - k` is `<= 0` (each order-`(n-k)` submatrix is N0) and every minor of
/// higher order is positive.
pub fn n0_exact_order(a: &Matrix) -> Result<Option<usize>, LcpError> {
    let n = guard(a)?;
    let minors = principal_minors(a)?;
    let ok = |k: usize| {
        minors.iter().all(|(idx, &d)| {
            if idx.len() <= n - k {
                d <= MINOR_TOL
            } else {
                d > MINOR_TOL
            }
        })
    };
    Ok((1..n).find(|&k| ok(k)))
}

/// `(min, max)` minor per order.
pub fn minor_extremes(minors: &PrincipalMinors, n: usize) -> Vec<(f64, f64)> {
    let mut out = alloc::vec![(f64::INFINITY, f64::NEG_INFINITY); n];
    for (idx, &d) in minors {
        let e = &mut out[idx.len() - 1];
        e.0 = e.0.min(d);
        e.1 = e.1.max(d);
    }
    out
}

fn quad_form(a: &Matrix, x: &[f64]) -> f64 {
    let ax = a.mul_vec(x);
    x.iter().zip(&ax).map(|(u, v)| u * v).sum()
}

/// Calls `f` on every composition of `total` into `parts` nonnegative
/// integers, in lexicographic order, until it returns `false`.
fn for_each_composition(parts: usize, total: usize, f: &mut dyn FnMut(&[usize]) -> bool) {
    fn rec(buf: &mut Vec<usize>, parts: usize, left: usize, f: &mut dyn FnMut(&[usize]) -> bool) -> bool {
        if buf.len() + 1 == parts {
            buf.push(left);
            let go = f(buf);
            buf.pop();
            return go;
        }
        for v in 0..=left {
            buf.push(v);
            let go = rec(buf, parts, left - v, f);
            buf.pop();
            if !go {
                return false;
            }
        }
        true
    }
    if parts == 0 {
        return;
    }
    let mut buf = Vec::with_capacity(parts);
    rec(&mut buf, parts, total, f);
}

/// Number of lattice points the copositivity sample visits.
pub fn simplex_lattice_size(n: usize, density: usize) -> u128 {
    // C(density + n - 1, n - 1)
    let (top, k) = ((density + n - 1) as u128, (n.saturating_sub(1)) as u128);
    (0..k).fold(1u128, |acc, i| acc * (top - i) / (i + 1))
}

/// Samples `x^t A x` on the simplex lattice with spacing `1/grid_density`.
pub fn copositive_sampled(a: &Matrix, grid_density: usize) -> CopositivityVerdict {
    assert!(grid_density >= 2, "grid density must be at least 2");
    let n = a.rows();
    if n == 0 {
        return CopositivityVerdict::Yes;
    }
    let mut witness = None;
    let d = grid_density as f64;
    for_each_composition(n, grid_density, &mut |c| {
        let x: Vec<f64> = c.iter().map(|&k| k as f64 / d).collect();
        if quad_form(a, &x) < -COPOSITIVE_TOL {
            witness = Some(x);
            return false;
        }
        true
    });
    if let Some(w) = witness {
        return CopositivityVerdict::No { witness: w };
    }
    let sym = a.add(&a.transpose()).scale(0.5);
    if sym.as_slice().iter().all(|&v| v >= 0.0) || is_psd(a) {
        CopositivityVerdict::Yes
    } else {
        CopositivityVerdict::Inconclusive
    }
}

/// Copositive on every order-`(n-1)` principal submatrix but not on `A`.
///
/// A `No` with an empty witness means `A` itself sampled as copositive.
pub fn almost_c0_sampled(a: &Matrix, grid_density: usize) -> CopositivityVerdict {
    let n = a.rows();
    assert!(n >= 2, "almost-C0 needs n >= 2");
    let full = copositive_sampled(a, grid_density);
    if full.is_yes() {
        return CopositivityVerdict::No { witness: Vec::new() };
    }
    let mut all_sub_yes = true;
    for skip in 0..n {
        let idx: Vec<usize> = (0..n).filter(|&i| i != skip).collect();
        match copositive_sampled(&a.principal_submatrix(&idx), grid_density) {
            CopositivityVerdict::No { witness } => {
                let mut w = alloc::vec![0.0; n];
                for (&i, v) in idx.iter().zip(witness) {
                    w[i] = v;
                }
                return CopositivityVerdict::No { witness: w };
            }
            CopositivityVerdict::Inconclusive => all_sub_yes = false,
            CopositivityVerdict::Yes => {}
        }
    }
    if all_sub_yes && full.is_no() {
        CopositivityVerdict::Yes
    } else {
        CopositivityVerdict::Inconclusive
    }
}

/// Full report; `grid_density` drives both copositivity samples.
pub fn classify(a: &Matrix, grid_density: usize) -> Result<ClassReport, LcpError> {
    let n = guard(a)?;
    let minors = principal_minors(a)?;
    let is_p = minors.values().all(|&d| d > MINOR_TOL);
    let is_n = minors.values().all(|&d| d < -MINOR_TOL);
    let n0 = if is_p { None } else { n0_exact_order(a)? };
    Ok(ClassReport {
        is_p,
        is_n,
        is_psd: is_psd(a),
        n0_exact_order: n0,
        copositive: copositive_sampled(a, grid_density),
        almost_c0: if n >= 2 { almost_c0_sampled(a, grid_density) } else { CopositivityVerdict::Inconclusive },
        minor_extremes: minor_extremes(&minors, n),
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn m(rows: &[&[f64]]) -> Matrix {
        Matrix::from_rows(rows).unwrap()
    }

    fn ex41() -> Matrix {
        m(&[&[-1.0, 2.0], &[3.0, -1.0]])
    }

    fn ex44() -> Matrix {
        m(&[&[-1.0, 2.0, 1.0], &[1.0, -0.5, -0.25], &[-0.5, -1.0, -1.0]])
    }

    fn ex45() -> Matrix {
        m(&[&[1.0, -2.0, 0.0], &[0.0, 1.0, -2.0], &[-2.0, 0.0, 1.0]])
    }

    fn ex47() -> Matrix {
        m(&[
            &[0.0, 0.0, 0.0, 1.0, 2.0],
            &[0.0, 0.0, -1.0, -1.0, 2.0],
            &[0.0, -1.0, 0.0, -1.0, 1.0],
            &[1.0, -1.0, -1.0, 0.0, 0.0],
            &[2.0, 1.0, 0.0, 0.0, 0.0],
        ])
    }

    #[test]
    fn minors_examples() {
        let pm = principal_minors(&Matrix::identity(2)).unwrap();
        assert_eq!(pm.len(), 3);
        assert!(pm.values().all(|&d| d == 1.0));

        let pm = principal_minors(&ex41()).unwrap();
        assert_eq!(pm[&alloc::vec![0]], -1.0);
        assert_eq!(pm[&alloc::vec![1]], -1.0);
        assert!((pm[&alloc::vec![0, 1]] + 5.0).abs() < 1e-14);

        let pm = principal_minors(&m(&[&[1.0, 1.0], &[0.0, 0.0]])).unwrap();
        assert_eq!(pm[&alloc::vec![0]], 1.0);
        assert_eq!(pm[&alloc::vec![1]], 0.0);
        assert_eq!(pm[&alloc::vec![0, 1]], 0.0);

        assert!(matches!(principal_minors(&Matrix::identity(13)), Err(LcpError::TooLarge { .. })));
    }

    #[test]
    fn p_and_n() {
        assert!(is_n(&ex41()).unwrap());
        assert!(!is_p(&ex41()).unwrap());
        assert!(is_p(&Matrix::identity(4)).unwrap());
        assert!(!is_n(&ex44()).unwrap());
    }

    #[test]
    fn psd() {
        assert!(is_psd(&m(&[&[1.0, -1.0], &[-1.0, 1.0]])));
        assert!(!is_psd(&ex41()));
        assert!(is_psd(&Matrix::zeros(3, 3)));
    }

    #[test]
    fn n0_order() {
        assert_eq!(n0_exact_order(&ex47()).unwrap(), Some(2));
        assert_eq!(n0_exact_order(&Matrix::identity(3)).unwrap(), None);
        assert_eq!(n0_exact_order(&ex41()).unwrap(), None);
    }

    #[test]
    fn copositivity() {
        assert!(copositive_sampled(&m(&[&[0.0, 2.0], &[1.0, 3.0]]), 10).is_yes());
        assert!(copositive_sampled(&m(&[&[1.0, -1.0], &[-1.0, 1.0]]), 10).is_yes());
        match copositive_sampled(&ex45(), 20) {
            CopositivityVerdict::No { witness } => {
                assert!(witness.iter().all(|&v| v >= 0.0));
                assert!(quad_form(&ex45(), &witness) < 0.0);
            }
            other => panic!("expected No, got {other:?}"),
        }
    }

    #[test]
    fn almost_c0() {
        assert!(almost_c0_sampled(&ex45(), 30).is_yes());
        assert!(almost_c0_sampled(&Matrix::identity(3), 10).is_no());
        // negative diagonal: an order-1 submatrix already fails
        assert!(almost_c0_sampled(&ex44(), 30).is_no());
    }

    #[test]
    fn lattice_size() {
        assert_eq!(simplex_lattice_size(2, 10), 11);
        assert_eq!(simplex_lattice_size(5, 30), 46376);
        let mut count = 0;
        for_each_composition(3, 4, &mut |_| {
            count += 1;
            true
        });
        assert_eq!(count as u128, simplex_lattice_size(3, 4));
    }
}
