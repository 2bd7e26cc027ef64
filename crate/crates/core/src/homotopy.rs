//! Homotopy systems `H(y, lambda) = 0` for LCP(q, A).
//!
//! [`KktHomotopy`] deforms the KKT system of
//! `min x^t (A x + q)  s.t.  x >= 0, A x + q >= 0` into a trivial system at
//! `lambda = 1`. Its state is `y = (x, z1, z2)` where `z1`, `z2` are the
//! multipliers of the two sign constraints:
//!
//! ```text
//! (1 - l) [ (A + A^t) x + q - z1 - A^t z2 ] + l (x - x0)
//! Z1 x        - l Z1_0 x0
//! Z2 (Ax + q) - l Z2_0 (A x0 + q)
//! ```
//!
//! [`VariantHomotopy`] covers the four older `(x, y)` homotopies used for
//! PSD, N, P and P* matrices. All of them share the [`HomotopySystem`]
//! interface so the tracer does not care which one it follows.

use alloc::vec::Vec;
use core::fmt;

use crate::lcp::LcpInstance;
use crate::linalg::Matrix;

#[derive(Debug, Clone, PartialEq)]
pub enum HomotopyError {
    /// An initial vector has the wrong length.
    Dimension { what: &'static str, expected: usize, found: usize },
    /// The anchor is not strictly inside the feasible region.
    InfeasibleStart { what: &'static str },
}

impl fmt::Display for HomotopyError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            HomotopyError::Dimension { what, expected, found } => {
                write!(f, "{what} has length {found}, expected {expected}")
            }
            HomotopyError::InfeasibleStart { what } => {
                write!(f, "initial point is not strictly feasible: {what}")
            }
        }
    }
}

impl core::error::Error for HomotopyError {}

/// A point `(y, lambda)` on or near a homotopy path.
#[derive(Debug, Clone, PartialEq)]
pub struct HomotopyState {
    pub y: Vec<f64>,
    pub lambda: f64,
}

impl HomotopyState {
    pub fn new(y: Vec<f64>, lambda: f64) -> Self {
        HomotopyState { y, lambda }
    }

    /// `(y, lambda)` as one vector of length `dim + 1`.
    pub fn to_augmented(&self) -> Vec<f64> {
        let mut v = self.y.clone();
        v.push(self.lambda);
        v
    }

    pub fn from_augmented(v: &[f64]) -> Self {
        let (y, l) = v.split_at(v.len() - 1);
        HomotopyState { y: y.to_vec(), lambda: l[0] }
    }
}

/// Residual and derivatives of a homotopy.
pub trait HomotopySystem {
    /// Problem size `n` of the underlying LCP.
    fn n(&self) -> usize;

    /// Length of `y`.
    fn dim(&self) -> usize;

    /// The known solution `y0` at `lambda = 1`.
    fn anchor(&self) -> &[f64];

    fn eval(&self, st: &HomotopyState) -> Vec<f64>;

    /// `dH/dy`, a `dim x dim` matrix.
    fn jacobian_y(&self, st: &HomotopyState) -> Matrix;

    /// `dH/dlambda`, a vector of length `dim`.
    fn jacobian_lambda(&self, st: &HomotopyState) -> Vec<f64>;

    /// Open-domain membership: the region the traced path must stay in.
    fn domain_check(&self, st: &HomotopyState) -> bool;

    /// `[dH/dy | dH/dlambda]`, `dim x (dim + 1)`.
    fn jacobian_full(&self, st: &HomotopyState) -> Matrix {
        self.jacobian_y(st).hstack_column(&self.jacobian_lambda(st))
    }

    /// The `x` block of a state vector; every system stores it first.
    fn x_part<'a>(&self, y: &'a [f64]) -> &'a [f64] {
        &y[..self.n()]
    }

    fn anchor_state(&self) -> HomotopyState {
        HomotopyState::new(self.anchor().to_vec(), 1.0)
    }
}

impl<S: HomotopySystem + ?Sized> HomotopySystem for &S {
    fn n(&self) -> usize {
        (**self).n()
    }
    fn dim(&self) -> usize {
        (**self).dim()
    }
    fn anchor(&self) -> &[f64] {
        (**self).anchor()
    }
    fn eval(&self, st: &HomotopyState) -> Vec<f64> {
        (**self).eval(st)
    }
    fn jacobian_y(&self, st: &HomotopyState) -> Matrix {
        (**self).jacobian_y(st)
    }
    fn jacobian_lambda(&self, st: &HomotopyState) -> Vec<f64> {
        (**self).jacobian_lambda(st)
    }
    fn domain_check(&self, st: &HomotopyState) -> bool {
        (**self).domain_check(st)
    }
}

fn check_len(what: &'static str, v: &[f64], n: usize) -> Result<(), HomotopyError> {
    if v.len() != n {
        return Err(HomotopyError::Dimension { what, expected: n, found: v.len() });
    }
    Ok(())
}

fn all_positive(v: &[f64]) -> bool {
    v.iter().all(|&t| t > 0.0)
}

fn lambda_ok(l: f64) -> bool {
    l > 0.0 && l <= 1.0
}

/// The KKT homotopy with state `y = (x, z1, z2)` of length `3n`.
#[derive(Debug, Clone)]
pub struct KktHomotopy {
    inst: LcpInstance,
    sym: Matrix,
    x0: Vec<f64>,
    z1_0: Vec<f64>,
    z2_0: Vec<f64>,
    w0: Vec<f64>,
    anchor: Vec<f64>,
}

impl KktHomotopy {
    /// Requires `x0 > 0`, `A x0 + q > 0`, `z1_0 > 0`, `z2_0 > 0`.
    pub fn new(inst: LcpInstance, x0: Vec<f64>, z1_0: Vec<f64>, z2_0: Vec<f64>) -> Result<Self, HomotopyError> {
        let n = inst.n();
        check_len("x0", &x0, n)?;
        check_len("z1_0", &z1_0, n)?;
        check_len("z2_0", &z2_0, n)?;
        if !all_positive(&x0) {
            return Err(HomotopyError::InfeasibleStart { what: "x0 must be > 0" });
        }
        let w0 = inst.compute_w(&x0);
        if !all_positive(&w0) {
            return Err(HomotopyError::InfeasibleStart { what: "A x0 + q must be > 0" });
        }
        if !all_positive(&z1_0) || !all_positive(&z2_0) {
            return Err(HomotopyError::InfeasibleStart { what: "z1_0 and z2_0 must be > 0" });
        }
        let sym = inst.a().add(&inst.a().transpose());
        let mut anchor = x0.clone();
        anchor.extend_from_slice(&z1_0);
        anchor.extend_from_slice(&z2_0);
        Ok(KktHomotopy { inst, sym, x0, z1_0, z2_0, w0, anchor })
    }

    /// Anchor with `z1_0 = z2_0 = e`.
    pub fn with_unit_multipliers(inst: LcpInstance, x0: Vec<f64>) -> Result<Self, HomotopyError> {
        let n = inst.n();
        KktHomotopy::new(inst, x0, alloc::vec![1.0; n], alloc::vec![1.0; n])
    }

    pub fn instance(&self) -> &LcpInstance {
        &self.inst
    }

    pub fn x0(&self) -> &[f64] {
        &self.x0
    }

    fn split<'a>(&self, y: &'a [f64]) -> (&'a [f64], &'a [f64], &'a [f64]) {
        let n = self.inst.n();
        assert_eq!(y.len(), 3 * n, "KKT state must have length 3n");
        (&y[..n], &y[n..2 * n], &y[2 * n..])
    }

    /// `(A + A^t) x + q - z1 - A^t z2`, the gradient block of the KKT system.
    fn stationarity(&self, x: &[f64], z1: &[f64], z2: &[f64]) -> Vec<f64> {
        let sx = self.sym.mul_vec(x);
        let atz2 = self.inst.a().tr_mul_vec(z2);
        (0..x.len()).map(|i| sx[i] + self.inst.q()[i] - z1[i] - atz2[i]).collect()
    }
}

impl HomotopySystem for KktHomotopy {
    fn n(&self) -> usize {
        self.inst.n()
    }

    fn dim(&self) -> usize {
        3 * self.inst.n()
    }

    fn anchor(&self) -> &[f64] {
        &self.anchor
    }

    fn eval(&self, st: &HomotopyState) -> Vec<f64> {
        let n = self.n();
        let l = st.lambda;
        let (x, z1, z2) = self.split(&st.y);
        let g = self.stationarity(x, z1, z2);
        let w = self.inst.compute_w(x);
        let mut h = Vec::with_capacity(3 * n);
        h.extend((0..n).map(|i| (1.0 - l) * g[i] + l * (x[i] - self.x0[i])));
        h.extend((0..n).map(|i| z1[i] * x[i] - l * self.z1_0[i] * self.x0[i]));
        h.extend((0..n).map(|i| z2[i] * w[i] - l * self.z2_0[i] * self.w0[i]));
        h
    }

    fn jacobian_y(&self, st: &HomotopyState) -> Matrix {
        let n = self.n();
        let l = st.lambda;
        let a = self.inst.a();
        let (x, z1, z2) = self.split(&st.y);
        let w = self.inst.compute_w(x);
        let mut j = Matrix::zeros(3 * n, 3 * n);
        for i in 0..n {
            for k in 0..n {
                j[(i, k)] = (1.0 - l) * self.sym[(i, k)];
                j[(i, 2 * n + k)] = -(1.0 - l) * a[(k, i)];
                j[(2 * n + i, k)] = z2[i] * a[(i, k)];
            }
            j[(i, i)] += l;
            j[(i, n + i)] = -(1.0 - l);
            j[(n + i, i)] = z1[i];
            j[(n + i, n + i)] = x[i];
            j[(2 * n + i, 2 * n + i)] = w[i];
        }
        j
    }

    fn jacobian_lambda(&self, st: &HomotopyState) -> Vec<f64> {
        let n = self.n();
        let (x, z1, z2) = self.split(&st.y);
        let g = self.stationarity(x, z1, z2);
        let mut d = Vec::with_capacity(3 * n);
        d.extend((0..n).map(|i| (x[i] - self.x0[i]) - g[i]));
        d.extend((0..n).map(|i| -self.z1_0[i] * self.x0[i]));
        d.extend((0..n).map(|i| -self.z2_0[i] * self.w0[i]));
        d
    }

    fn domain_check(&self, st: &HomotopyState) -> bool {
        if st.y.len() != self.dim() || !lambda_ok(st.lambda) {
            return false;
        }
        let (x, z1, z2) = self.split(&st.y);
        all_positive(x) && all_positive(z1) && all_positive(z2) && all_positive(&self.inst.compute_w(x))
    }
}

/// Which of the older `(x, y)` homotopies to build.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum VariantKind {
    /// `(1-l)[Ax+q-y] + l(x-x0)`, `XYe - l e` (PSD matrices).
    YuPsd,
    /// `(1-l)[y-Ax-q] + l(x-x0)`, `Xy - l X0 y0` (N-matrices).
    ZhaoN,
    /// `(1-l)[y-Ax-q] - l(x-x0)`, `Xy - l X0 y0` (P-matrices).
    XuP,
    /// `(1-l)[Ax+q] - y + l y0`, `Xy - l X0 y0` (P*-matrices).
    WangPstar,
}

impl VariantKind {
    pub const ALL: [VariantKind; 4] = [VariantKind::YuPsd, VariantKind::ZhaoN, VariantKind::XuP, VariantKind::WangPstar];

    pub fn name(self) -> &'static str {
        match self {
            VariantKind::YuPsd => "yu-psd",
            VariantKind::ZhaoN => "zhao-n",
            VariantKind::XuP => "xu-p",
            VariantKind::WangPstar => "wang-pstar",
        }
    }

    pub fn from_name(s: &str) -> Option<Self> {
        VariantKind::ALL.into_iter().find(|k| k.name() == s)
    }
}

impl fmt::Display for VariantKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

/// One of the four older homotopies, state `(x, y)` of length `2n` where
/// `y` plays the role of the slack `A x + q`.
#[derive(Debug, Clone)]
pub struct VariantHomotopy {
    kind: VariantKind,
    inst: LcpInstance,
    x0: Vec<f64>,
    y0: Vec<f64>,
    x0y0: Vec<f64>,
    anchor: Vec<f64>,
}

impl VariantHomotopy {
    /// Builds the variant anchored at `(x0, y0)`.
    ///
    /// `YuPsd` always uses `y0 = 1 / x0` so that `X0 Y0 e = e` holds at the
    /// anchor. The other kinds use the given `y0`, or `A x0 + q` when absent.
    pub fn new(kind: VariantKind, inst: LcpInstance, x0: Vec<f64>, y0: Option<Vec<f64>>) -> Result<Self, HomotopyError> {
        let n = inst.n();
        check_len("x0", &x0, n)?;
        if !all_positive(&x0) {
            return Err(HomotopyError::InfeasibleStart { what: "x0 must be > 0" });
        }
        let y0 = match kind {
            VariantKind::YuPsd => x0.iter().map(|v| 1.0 / v).collect(),
            _ => match y0 {
                Some(v) => {
                    check_len("y0", &v, n)?;
                    v
                }
                None => inst.compute_w(&x0),
            },
        };
        if !all_positive(&y0) {
            return Err(HomotopyError::InfeasibleStart { what: "slack y0 must be > 0" });
        }
        let x0y0 = x0.iter().zip(&y0).map(|(a, b)| a * b).collect();
        let mut anchor = x0.clone();
        anchor.extend_from_slice(&y0);
        Ok(VariantHomotopy { kind, inst, x0, y0, x0y0, anchor })
    }

    pub fn kind(&self) -> VariantKind {
        self.kind
    }

    pub fn instance(&self) -> &LcpInstance {
        &self.inst
    }

    fn split<'a>(&self, y: &'a [f64]) -> (&'a [f64], &'a [f64]) {
        let n = self.inst.n();
        assert_eq!(y.len(), 2 * n, "variant state must have length 2n");
        y.split_at(n)
    }
}

impl HomotopySystem for VariantHomotopy {
    fn n(&self) -> usize {
        self.inst.n()
    }

    fn dim(&self) -> usize {
        2 * self.inst.n()
    }

    fn anchor(&self) -> &[f64] {
        &self.anchor
    }

    fn eval(&self, st: &HomotopyState) -> Vec<f64> {
        let n = self.n();
        let l = st.lambda;
        let (x, s) = self.split(&st.y);
        let r = self.inst.compute_w(x);
        let mut h = Vec::with_capacity(2 * n);
        h.extend((0..n).map(|i| match self.kind {
            VariantKind::YuPsd => (1.0 - l) * (r[i] - s[i]) + l * (x[i] - self.x0[i]),
            VariantKind::ZhaoN => (1.0 - l) * (s[i] - r[i]) + l * (x[i] - self.x0[i]),
            VariantKind::XuP => (1.0 - l) * (s[i] - r[i]) - l * (x[i] - self.x0[i]),
            VariantKind::WangPstar => (1.0 - l) * r[i] - s[i] + l * self.y0[i],
        }));
        h.extend((0..n).map(|i| match self.kind {
            VariantKind::YuPsd => x[i] * s[i] - l,
            _ => x[i] * s[i] - l * self.x0y0[i],
        }));
        h
    }

    fn jacobian_y(&self, st: &HomotopyState) -> Matrix {
        let n = self.n();
        let l = st.lambda;
        let a = self.inst.a();
        let (x, s) = self.split(&st.y);
        // d(block1)/dx = ca * A + cx * I,  d(block1)/dy = cy * I
        let (ca, cx, cy) = match self.kind {
            VariantKind::YuPsd => (1.0 - l, l, -(1.0 - l)),
            VariantKind::ZhaoN => (-(1.0 - l), l, 1.0 - l),
            VariantKind::XuP => (-(1.0 - l), -l, 1.0 - l),
            VariantKind::WangPstar => (1.0 - l, 0.0, -1.0),
        };
        let mut j = Matrix::zeros(2 * n, 2 * n);
        for i in 0..n {
            for k in 0..n {
                j[(i, k)] = ca * a[(i, k)];
            }
            j[(i, i)] += cx;
            j[(i, n + i)] = cy;
            j[(n + i, i)] = s[i];
            j[(n + i, n + i)] = x[i];
        }
        j
    }

    fn jacobian_lambda(&self, st: &HomotopyState) -> Vec<f64> {
        let n = self.n();
        let (x, s) = self.split(&st.y);
        let r = self.inst.compute_w(x);
        let mut d = Vec::with_capacity(2 * n);
        d.extend((0..n).map(|i| match self.kind {
            VariantKind::YuPsd => -(r[i] - s[i]) + (x[i] - self.x0[i]),
            VariantKind::ZhaoN => (r[i] - s[i]) + (x[i] - self.x0[i]),
            VariantKind::XuP => (r[i] - s[i]) - (x[i] - self.x0[i]),
            VariantKind::WangPstar => -r[i] + self.y0[i],
        }));
        d.extend((0..n).map(|i| match self.kind {
            VariantKind::YuPsd => -1.0,
            _ => -self.x0y0[i],
        }));
        d
    }

    fn domain_check(&self, st: &HomotopyState) -> bool {
        if st.y.len() != self.dim() || !lambda_ok(st.lambda) {
            return false;
        }
        let (x, s) = self.split(&st.y);
        all_positive(x) && all_positive(s)
    }
}
