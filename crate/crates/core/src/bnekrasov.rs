//! The `M = B+ + C` splitting and the B-Nekrasov bounds.
//!
//! `r_i+ = max{0, m_ij : j != i}`, `B+ = M - r+ 1^T`, `C = r+ 1^T`. `M` is
//! B-Nekrasov when `B+` is a Nekrasov matrix with positive diagonal.

use alloc::string::String;
use alloc::vec::Vec;
use core::fmt::Write;

use crate::error::{Error, Result};
use crate::lcp;
use crate::linalg::{comparison_matrix, inverse, Matrix};
use crate::nekrasov::{eta_margin_max, is_nekrasov, positive_nekrasov, strictly_inside};
use crate::report::{BoundReport, Inapplicable, Theorem};
use crate::STRICT_TOL;

/// Largest dimension for which [`classify`] runs the principal-minor test.
pub const P_MATRIX_MAX_N: usize = 12;

/// Entrywise tolerance for the nonnegativity of `<M>^{-1}` in the H-matrix test.
const H_INVERSE_TOL: f64 = -1e-10;

/// The splitting `M = B+ + C`.
#[derive(Debug, Clone, PartialEq)]
pub struct BPlusSplit {
    /// Z-matrix part.
    pub b_plus: Matrix,
    /// Rank-one nonnegative part; row `i` is constant `r_i+`.
    pub c: Matrix,
    pub r_plus: Vec<f64>,
}

/// Splits `M` into `B+ + C`. Needs `n >= 2`.
pub fn bplus_decompose(m: &Matrix) -> Result<BPlusSplit> {
    let n = m.n();
    if n < 2 {
        return Err(Error::DimensionTooSmall { n, min: 2 });
    }
    let r_plus: Vec<f64> = (0..n)
        .map(|i| {
            m.row(i)
                .iter()
                .enumerate()
                .filter(|&(j, _)| j != i)
                .fold(0.0, |acc: f64, (_, &v)| acc.max(v))
        })
        .collect();
    let mut b_plus = m.clone();
    let mut c = Matrix::zeros(n);
    for (i, &r) in r_plus.iter().enumerate() {
        for j in 0..n {
            b_plus[(i, j)] -= r;
            c[(i, j)] = r;
        }
    }
    Ok(BPlusSplit { b_plus, c, r_plus })
}

fn has_positive_diagonal(a: &Matrix) -> bool {
    (0..a.n()).all(|i| a.diag(i) > STRICT_TOL)
}

/// `B+` is Nekrasov with every diagonal entry above the strictness tolerance.
pub fn is_b_nekrasov(m: &Matrix) -> bool {
    match bplus_decompose(m) {
        Ok(split) => has_positive_diagonal(&split.b_plus) && is_nekrasov(&split.b_plus).is_nekrasov,
        Err(_) => false,
    }
}

fn is_sdd(a: &Matrix) -> bool {
    (0..a.n()).all(|i| {
        let d = a.diag(i).abs();
        d - a.off_diag_abs_sum(i) > STRICT_TOL * d.max(1.0)
    })
}

/// `<A>` is a nonsingular M-matrix: its inverse exists and is entrywise
/// nonnegative (up to `-1e-10`).
fn is_h_matrix(a: &Matrix) -> bool {
    match inverse(&comparison_matrix(a)) {
        Ok(inv) => inv.as_slice().iter().all(|&v| v >= H_INVERSE_TOL),
        Err(_) => false,
    }
}

/// Matrix-class diagnostics.
#[derive(Debug, Clone, PartialEq)]
pub struct ClassificationReport {
    pub is_sdd: bool,
    pub is_z_matrix: bool,
    pub is_nekrasov: bool,
    pub is_b_matrix: bool,
    pub is_b_nekrasov: bool,
    pub is_h_matrix: bool,
    /// `None` when `n` exceeds [`P_MATRIX_MAX_N`].
    pub is_p_matrix: Option<bool>,
    pub notes: String,
}

/// Runs every class test that is affordable for `M`.
///
/// A B-matrix is one whose `B+` is strictly diagonally dominant with
/// positive diagonal.
pub fn classify(m: &Matrix) -> ClassificationReport {
    let n = m.n();
    let mut notes = String::new();
    let split = bplus_decompose(m).ok();
    let (is_b_matrix, is_b_nekrasov) = match &split {
        Some(s) => {
            let pos = has_positive_diagonal(&s.b_plus);
            (pos && is_sdd(&s.b_plus), pos && is_nekrasov(&s.b_plus).is_nekrasov)
        }
        None => {
            notes.push_str("n < 2: B+ splitting undefined; ");
            (false, false)
        }
    };
    let is_p_matrix = if n <= P_MATRIX_MAX_N {
        lcp::is_p_matrix(m).ok()
    } else {
        let _ = write!(notes, "n = {n} > {P_MATRIX_MAX_N}: P-matrix test skipped; ");
        None
    };
    let profile = is_nekrasov(m);
    if let Some(row) = profile.zero_diagonal {
        let _ = write!(notes, "zero diagonal in row {row}; ");
    }
    let notes = String::from(notes.trim_end_matches("; "));
    ClassificationReport {
        is_sdd: is_sdd(m),
        is_z_matrix: m.is_z_matrix(),
        is_nekrasov: profile.is_nekrasov,
        is_b_matrix,
        is_b_nekrasov,
        is_h_matrix: is_h_matrix(m),
        is_p_matrix,
        notes,
    }
}

/// Upper end `1 - h_n(B+)/(m_nn - r_n+)` of the admissible epsilon interval
/// for [`gp_bnekrasov_bound`], when `M` is B-Nekrasov.
pub fn gp_bnekrasov_epsilon_upper(m: &Matrix) -> Option<f64> {
    let split = bplus_decompose(m).ok()?;
    if !has_positive_diagonal(&split.b_plus) {
        return None;
    }
    let profile = positive_nekrasov(&split.b_plus).ok()?;
    let n = m.n();
    Some(1.0 - profile.h[n - 1] / split.b_plus.diag(n - 1))
}

/// The epsilon-parameterized B-Nekrasov bound
///
/// ```text
/// (n - 1) max_i w_i / (min{delta, 1} min_i w_i)
/// ```
///
/// where `w_i = h_i(B+)/(m_ii - r_i+)` (`+ eps` for `i = n`), `B_bar = B+ W`
/// must be a strictly diagonally dominant Z-matrix, `beta_i` is the
/// dominance margin of row `i` of `B_bar` and `delta = min_i beta_i / w_i`.
///
/// Every row `i < n` needs some `k > i` with `m_ik < r_i+` strictly.
pub fn gp_bnekrasov_bound(m: &Matrix, epsilon: f64) -> BoundReport {
    let report = BoundReport::new(Theorem::GpBNekrasov, Some(epsilon));
    let n = m.n();
    let split = match bplus_decompose(m) {
        Ok(s) => s,
        Err(_) => return report.reject(Inapplicable::DimensionTooSmall),
    };
    let b = &split.b_plus;
    if !has_positive_diagonal(b) {
        return report.reject(Inapplicable::NotBNekrasov);
    }
    let profile = match positive_nekrasov(b) {
        Ok(p) => p,
        Err(_) => return report.reject(Inapplicable::NotBNekrasov),
    };
    if let Some(i) =
        (0..n - 1).find(|&i| !m.row(i)[i + 1..].iter().any(|&v| v < split.r_plus[i]))
    {
        return report.reject(Inapplicable::NoStrictEntry(i + 1));
    }
    let upper = 1.0 - profile.h[n - 1] / b.diag(n - 1);
    if !strictly_inside(epsilon, 0.0, upper) {
        return report.reject(Inapplicable::EpsilonOutOfRange);
    }

    let mut w: Vec<f64> = (0..n).map(|i| profile.h[i] / b.diag(i)).collect();
    w[n - 1] += epsilon;
    let report = report.with("r_plus", split.r_plus.clone()).with("h", profile.h);
    if let Some(i) = w.iter().position(|&wi| wi <= STRICT_TOL) {
        return report.with("w", w).reject(Inapplicable::WZero(i + 1));
    }

    let mut b_bar = b.clone();
    for i in 0..n {
        for j in 0..n {
            b_bar[(i, j)] *= w[j];
        }
    }
    let beta: Vec<f64> = (0..n)
        .map(|i| b_bar.diag(i) - b_bar.off_diag_abs_sum(i))
        .collect();
    let sdd = beta
        .iter()
        .enumerate()
        .all(|(i, &bi)| bi > STRICT_TOL * b_bar.diag(i).abs().max(1.0));
    if !b_bar.is_z_matrix() || !sdd {
        return report
            .with("w", w)
            .with("beta", beta)
            .reject(Inapplicable::BbarNotSddZ);
    }
    let delta: Vec<f64> = beta.iter().zip(&w).map(|(b, w)| b / w).collect();
    let delta_min = delta.iter().copied().fold(f64::INFINITY, f64::min);
    let max_w = w.iter().copied().fold(f64::NEG_INFINITY, f64::max);
    let min_w = w.iter().copied().fold(f64::INFINITY, f64::min);
    let value = (n - 1) as f64 * max_w / (delta_min.min(1.0) * min_w);
    report
        .with("w", w)
        .with("beta", beta)
        .with("delta", delta)
        .accept(value)
}

/// The parameter-free B-Nekrasov bound
/// `(n - 1) max_i eta_i(B+) / min{b_ii - h_i(B+), 1}`.
///
/// Not applicable for `n = 1`, where the factor `n - 1` would certify zero.
pub fn new_bnekrasov_bound(m: &Matrix) -> BoundReport {
    let report = BoundReport::new(Theorem::NewBNekrasov, None);
    let n = m.n();
    let split = match bplus_decompose(m) {
        Ok(s) => s,
        Err(_) => return report.reject(Inapplicable::DimensionTooSmall),
    };
    if !has_positive_diagonal(&split.b_plus) {
        return report.reject(Inapplicable::NotBNekrasov);
    }
    let profile = match positive_nekrasov(&split.b_plus) {
        Ok(p) => p,
        Err(_) => return report.reject(Inapplicable::NotBNekrasov),
    };
    let value = (n - 1) as f64 * eta_margin_max(&profile.eta, &profile.margins);
    report
        .with("r_plus", split.r_plus)
        .with("h", profile.h)
        .with("eta", profile.eta)
        .with("margins", profile.margins)
        .accept(value)
}
