//! A-priori error bounds for linear complementarity problems `LCP(M, q)`
//! whose matrix is a Nekrasov or B-Nekrasov matrix.
//!
//! The central quantity is
//!
//! ```text
//! max_{d in [0,1]^n} || (I - D + D M)^{-1} ||_inf,   D = diag(d),
//! ```
//!
//! which multiplies the residual `r(x) = min(x, Mx + q)` in the classical
//! error bound `||x - x*||_inf <= (...) * ||r(x)||_inf` for P-matrices.
//!
//! The crate provides:
//!
//! - [`linalg`]: a small dense matrix type with LU, inverse and norms.
//! - [`nekrasov`]: the `h`, `z`, `eta` recursions, the Kolotilina inverse
//!   bound, and the two Nekrasov bounds (epsilon-parameterized and
//!   parameter-free).
//! - [`bnekrasov`]: the `B+ + C` splitting, B-Nekrasov recognition, a class
//!   diagnostic, and the two B-Nekrasov bounds.
//! - [`lcp`]: residuals, an exhaustive complementary-basis solver, a
//!   principal-minor P-matrix test and error certificates.
//! - [`oracle`]: brute-force lower estimates of the maximum above and a
//!   harness for the lemma-level inequalities the bounds rest on.
//! - [`sweep`]: epsilon grids over the open intervals of the parameterized
//!   bounds.
//!
//! The crate is `no_std` and only needs `alloc`.

#![no_std]
#![forbid(unsafe_code)]

extern crate alloc;

#[cfg(test)]
extern crate std;

pub mod bnekrasov;
pub mod error;
pub mod fixtures;
pub mod lcp;
pub mod linalg;
pub mod nekrasov;
pub mod oracle;
pub mod report;
pub mod rng;
pub mod sweep;


pub use bnekrasov::{
    bplus_decompose, classify, gp_bnekrasov_bound, is_b_nekrasov, new_bnekrasov_bound,
    BPlusSplit, ClassificationReport,
};
pub use error::{Error, Result};
pub use lcp::{
    certify_error_bound, feasible_bases, is_p_matrix, residual, solve_lcp, ErrorCertificate,
    LcpInstance, LcpSolution,
};
pub use linalg::{comparison_matrix, inf_norm, inverse, lu_factor, LuFactors, Matrix};
pub use nekrasov::{
    eta_vector, gp_nekrasov_bound, h_vector, is_nekrasov, kolotilina_bound, new_nekrasov_bound,
    scaled_matrix, z_vector, NekrasovProfile,
};
pub use oracle::{
    lemma2_check, lemma_property_suite, norm_at_d, oracle_max_norm, LemmaReport, OracleEstimate,
};
pub use report::{BoundReport, Inapplicable, Theorem};
pub use sweep::{epsilon_sweep, Sweep, SweepRow};

/// Relative tolerance for every strict inequality in the crate (Nekrasov
/// margins, epsilon interval membership, diagonal dominance). Values that
/// are equal up to rounding are classified as failing the inequality.
pub const STRICT_TOL: f64 = 1e-12;
