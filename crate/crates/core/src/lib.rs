//! Solvers for the linear complementarity problem LCP(q, A):
//! find `x >= 0` with `w = A x + q >= 0` and `x^t w = 0`.
//!
//! The centrepiece is a homotopy built from the KKT conditions of the
//! quadratic program `min x^t (A x + q)` subject to `x >= 0, A x + q >= 0`.
//! Its zero set is traced from an interior anchor at `lambda = 1` down to
//! `lambda = 0` by a predictor-corrector scheme ([`tracer`]), and the
//! endpoint is turned into an LCP solution by [`extract`].
//!
//! Around it sit the four older homotopies (for PSD, N, P and P* matrices),
//! a Lemke pivoting baseline, a brute-force complementary-basis oracle and
//! matrix-class tests used to label instances.
//!
//! The crate is `no_std` (with `alloc`) when the default `std` feature is
//! disabled.

#![cfg_attr(not(feature = "std"), no_std)]

extern crate alloc;

pub mod classes;
pub mod extract;
pub mod homotopy;
pub mod lcp;
pub mod lemke;
pub mod linalg;
pub mod oracle;
pub mod tracer;

pub use classes::{ClassReport, CopositivityVerdict};
pub use extract::{extract, nonsingularity_certificate, residual_system_check, ExtractionReport};
pub use homotopy::{HomotopyError, HomotopyState, HomotopySystem, KktHomotopy, VariantHomotopy, VariantKind};
pub use lcp::{LcpError, LcpInstance, LcpSolution};
pub use lemke::{lemke_solve, LemkeOutcome};
pub use linalg::{LinalgError, Matrix};
pub use oracle::brute_force_solutions;
pub use tracer::{trace_path, TraceEvent, TraceRecord, TracerConfig, TracerResult, TracerStatus};
