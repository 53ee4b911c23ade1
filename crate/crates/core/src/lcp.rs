//! Small linear complementarity problems.
//!
//! `LCP(M, q)`: find `x >= 0` with `w = Mx + q >= 0` and `x^T w = 0`. The
//! solver enumerates complementary bases, which is exhaustive and therefore
//! also a uniqueness check; it is meant for `n <= 15`.

use alloc::vec;
use alloc::vec::Vec;

use crate::error::{Error, Result};
use crate::linalg::{lu_factor, vec_inf_norm, Matrix};
use crate::report::BoundReport;
use crate::rng::{stream, uniform_vec};

/// Largest `n` accepted by [`solve_lcp`] and [`feasible_bases`].
pub const MAX_LCP_N: usize = 15;
/// Largest `n` accepted by [`is_p_matrix`].
pub const MAX_P_TEST_N: usize = 12;
/// Sign tolerance for `x` and `w` when accepting a basis.
pub const FEASIBILITY_TOL: f64 = 1e-10;
/// Absolute slack added to the right-hand side of an error certificate.
pub const CERTIFICATE_SLACK: f64 = 1e-9;

#[derive(Debug, Clone, PartialEq)]
pub struct LcpInstance {
    pub m: Matrix,
    pub q: Vec<f64>,
}

impl LcpInstance {
    pub fn new(m: Matrix, q: Vec<f64>) -> Result<Self> {
        if q.len() != m.n() {
            return Err(Error::DimensionMismatch {
                expected: m.n(),
                found: q.len(),
            });
        }
        if let Some(i) = q.iter().position(|v| !v.is_finite()) {
            return Err(Error::NonFinite { row: i + 1, col: 1 });
        }
        Ok(Self { m, q })
    }

    pub fn n(&self) -> usize {
        self.m.n()
    }

    /// `Mx + q`.
    pub fn w(&self, x: &[f64]) -> Result<Vec<f64>> {
        let mut w = self.m.mul_vec(x)?;
        w.iter_mut().zip(&self.q).for_each(|(wi, qi)| *wi += qi);
        Ok(w)
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct LcpSolution {
    pub x_star: Vec<f64>,
    /// `M x* + q`.
    pub w_star: Vec<f64>,
    /// 0-based indices where `x*` is basic.
    pub basis: Vec<usize>,
    /// `|x*^T (M x* + q)|`.
    pub complementarity_gap: f64,
}

/// The natural residual `r(x) = min(x, Mx + q)`, componentwise.
pub fn residual(inst: &LcpInstance, x: &[f64]) -> Result<Vec<f64>> {
    let w = inst.w(x)?;
    Ok(x.iter().zip(&w).map(|(a, b)| a.min(*b)).collect())
}

/// Advances `idx` to the next k-subset of `0..n` in lexicographic order.
fn next_combination(idx: &mut [usize], n: usize) -> bool {
    let k = idx.len();
    let Some(i) = (0..k).rev().find(|&i| idx[i] < n - k + i) else {
        return false;
    };
    idx[i] += 1;
    for j in i + 1..k {
        idx[j] = idx[j - 1] + 1;
    }
    true
}

/// Calls `f` on every subset of `0..n`, by ascending size and then
/// lexicographically; stops early when `f` returns `true`.
fn for_each_subset(n: usize, mut f: impl FnMut(&[usize]) -> bool) {
    for k in 0..=n {
        let mut idx: Vec<usize> = (0..k).collect();
        loop {
            if f(&idx) {
                return;
            }
            if !next_combination(&mut idx, n) {
                break;
            }
        }
    }
}

/// Candidate solution for basis `alpha`, or `None` when `M_aa` is singular
/// or the candidate is infeasible.
fn try_basis(inst: &LcpInstance, alpha: &[usize]) -> Option<LcpSolution> {
    let n = inst.n();
    let mut x = vec![0.0; n];
    if !alpha.is_empty() {
        let lu = lu_factor(&inst.m.principal_submatrix(alpha));
        if lu.singular {
            return None;
        }
        let rhs: Vec<f64> = alpha.iter().map(|&i| -inst.q[i]).collect();
        let xa = lu.solve(&rhs).ok()?;
        for (&i, v) in alpha.iter().zip(xa) {
            x[i] = v;
        }
    }
    let w = inst.w(&x).ok()?;
    let feasible = x.iter().chain(&w).all(|&v| v >= -FEASIBILITY_TOL);
    if !feasible {
        return None;
    }
    let gap = x.iter().zip(&w).map(|(a, b)| a * b).sum::<f64>().abs();
    Some(LcpSolution {
        x_star: x,
        w_star: w,
        basis: alpha.to_vec(),
        complementarity_gap: gap,
    })
}

fn check_lcp_size(n: usize) -> Result<()> {
    if n > MAX_LCP_N {
        return Err(Error::DimensionTooLarge { n, max: MAX_LCP_N });
    }
    Ok(())
}

/// Solves `LCP(M, q)` by complementary-basis enumeration and returns the
/// solution of the first feasible basis (by size, then lexicographic).
pub fn solve_lcp(inst: &LcpInstance) -> Result<LcpSolution> {
    check_lcp_size(inst.n())?;
    let mut found = None;
    for_each_subset(inst.n(), |alpha| {
        found = try_basis(inst, alpha);
        found.is_some()
    });
    found.ok_or(Error::NoSolution)
}

/// Every feasible complementary basis. For a P-matrix and nondegenerate
/// `q` there is exactly one.
pub fn feasible_bases(inst: &LcpInstance) -> Result<Vec<LcpSolution>> {
    check_lcp_size(inst.n())?;
    let mut all = Vec::new();
    for_each_subset(inst.n(), |alpha| {
        all.extend(try_basis(inst, alpha));
        false
    });
    Ok(all)
}

/// Brute-force P-matrix test: every principal minor of order `k` must
/// exceed `1e-12 * scale^k` with `scale = max(1, max|m_ij|)`.
pub fn is_p_matrix(m: &Matrix) -> Result<bool> {
    let n = m.n();
    if n > MAX_P_TEST_N {
        return Err(Error::DimensionTooLarge {
            n,
            max: MAX_P_TEST_N,
        });
    }
    let scale = m.max_abs().max(1.0);
    let mut positive = true;
    for_each_subset(n, |alpha| {
        if alpha.is_empty() {
            return false;
        }
        let threshold = alpha.iter().fold(1e-12, |t, _| t * scale);
        let det = lu_factor(&m.principal_submatrix(alpha)).determinant();
        positive = det > threshold;
        !positive
    });
    Ok(positive)
}

/// One check of `||x - x*|| <= bound * ||r(x)||` at a trial point.
#[derive(Debug, Clone, PartialEq)]
pub struct ErrorCertificate {
    pub trial_x: Vec<f64>,
    /// `||r(x)||_inf`.
    pub residual_norm: f64,
    /// `||x - x*||_inf`.
    pub true_error: f64,
    pub bound_value: f64,
    /// `true_error <= bound_value * residual_norm + 1e-9`.
    pub holds: bool,
}

impl ErrorCertificate {
    /// Evaluates the certificate against an already computed solution.
    pub fn evaluate(
        inst: &LcpInstance,
        solution: &LcpSolution,
        x: &[f64],
        bound_value: f64,
    ) -> Result<Self> {
        let r = residual(inst, x)?;
        let residual_norm = vec_inf_norm(&r);
        let true_error = x
            .iter()
            .zip(&solution.x_star)
            .fold(0.0, |acc: f64, (a, b)| acc.max((a - b).abs()));
        Ok(Self {
            trial_x: x.to_vec(),
            residual_norm,
            true_error,
            bound_value,
            holds: true_error <= bound_value * residual_norm + CERTIFICATE_SLACK,
        })
    }
}

/// Solves the instance and checks the error bound at `x`.
///
/// `bound` must be applicable and must bound
/// `max_d ||(I - D + DM)^{-1}||_inf` (Kolotilina reports are refused).
pub fn certify_error_bound(
    inst: &LcpInstance,
    x: &[f64],
    bound: &BoundReport,
) -> Result<ErrorCertificate> {
    let value = match bound.value() {
        Some(v) if bound.theorem.bounds_lcp_constant() => v,
        _ => return Err(Error::InapplicableBound(bound.theorem)),
    };
    let solution = solve_lcp(inst)?;
    ErrorCertificate::evaluate(inst, &solution, x, value)
}

/// Trial point `index` of the run keyed by `seed`: uniform entries in
/// `[0, 3 (1 + ||x*||_inf)]`.
pub fn trial_point(x_star: &[f64], seed: u64, index: u64) -> Vec<f64> {
    let hi = 3.0 * (1.0 + vec_inf_norm(x_star));
    uniform_vec(&mut stream(seed, index), x_star.len(), 0.0, hi)
}
