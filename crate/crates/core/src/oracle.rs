//! Brute-force lower estimates of `max_{d in [0,1]^n} ||(I - D + DM)^{-1}||_inf`
//! and a harness for the inequalities the bounds are built from.
//!
//! The estimate evaluates every vertex of the cube and then uniformly random
//! interior points. It can only undershoot the true maximum, so it is used
//! to check that certified bounds dominate it, never as an equality.

use alloc::vec;
use alloc::vec::Vec;

use rand::distr::Open01;
use rand::Rng;

use crate::error::{Error, Result};
use crate::linalg::{inf_norm, inverse, Matrix};
use crate::nekrasov::{is_nekrasov, positive_nekrasov, scaled_matrix};
use crate::rng::{random_d, stream};

/// Largest dimension for which all `2^n` vertices are enumerated.
pub const MAX_ORACLE_N: usize = 20;
/// Default number of interior samples.
pub const DEFAULT_SAMPLES: usize = 10_000;

/// `||(I - D + DM)^{-1}||_inf`.
pub fn norm_at_d(m: &Matrix, d: &[f64]) -> Result<f64> {
    Ok(inf_norm(&inverse(&scaled_matrix(m, d)?)?))
}

#[derive(Debug, Clone, PartialEq)]
pub struct OracleEstimate {
    /// Largest norm seen; a lower bound on the true maximum.
    pub max_observed: f64,
    pub argmax_d: Vec<f64>,
    pub vertex_count: usize,
    pub interior_samples: usize,
    pub seed: u64,
}

/// Evaluates [`norm_at_d`] at all `2^n` vertices of `[0,1]^n` and at
/// `interior_samples` random points. Sample `k` is drawn from stream `k` of
/// `seed`; ties keep the earliest evaluation, so the result is reproducible.
pub fn oracle_max_norm(m: &Matrix, interior_samples: usize, seed: u64) -> Result<OracleEstimate> {
    let n = m.n();
    if n > MAX_ORACLE_N {
        return Err(Error::DimensionTooLarge {
            n,
            max: MAX_ORACLE_N,
        });
    }
    let vertex_count = 1usize << n;
    let mut best = OracleEstimate {
        max_observed: f64::NEG_INFINITY,
        argmax_d: Vec::new(),
        vertex_count,
        interior_samples,
        seed,
    };
    let mut consider = |d: Vec<f64>| -> Result<()> {
        let v = norm_at_d(m, &d)?;
        if v > best.max_observed {
            best.max_observed = v;
            best.argmax_d = d;
        }
        Ok(())
    };
    for mask in 0..vertex_count {
        consider((0..n).map(|i| ((mask >> i) & 1) as f64).collect())?;
    }
    for k in 0..interior_samples {
        consider(random_d(seed, k as u64, n))?;
    }
    Ok(best)
}

/// Which inequality a violation broke.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum LemmaCheck {
    /// `h_i(M~)/m~_ii <= h_i(M)/m_ii`.
    HRatio,
    /// `z_i(M~) <= eta_i(M)`.
    ZBelowEta,
    /// `z_i(M~)/m~_ii <= eta_i(M)/min{m_ii, 1}`.
    ZOverDiagonal,
    /// `M~` failed the Nekrasov test.
    NotNekrasov,
}

#[derive(Debug, Clone, PartialEq)]
pub struct LemmaViolation {
    pub trial: usize,
    pub d: Vec<f64>,
    pub check: LemmaCheck,
    /// 1-based row; 0 for [`LemmaCheck::NotNekrasov`].
    pub row: usize,
    pub lhs: f64,
    pub rhs: f64,
}

#[derive(Debug, Clone, PartialEq, Default)]
pub struct LemmaReport {
    /// Number of `d` vectors checked, including the forced `d = 1`.
    pub trials: usize,
    pub violations: Vec<LemmaViolation>,
}

impl LemmaReport {
    pub fn is_clean(&self) -> bool {
        self.violations.is_empty()
    }
}

const LEMMA_TOL: f64 = 1e-12;

/// Checks the scaled-matrix inequalities for `d = 1` and `trials` random
/// `d` in `[0,1]^n`:
///
/// - `M~ = I - D + DM` is Nekrasov,
/// - `h_i(M~)/m~_ii <= h_i(M)/m_ii`,
/// - `z_i(M~) <= eta_i(M)` and `z_i(M~)/m~_ii <= eta_i(M)/min{m_ii, 1}`.
///
/// Each right-hand side gets `1e-12 * max(1, rhs)` of slack.
pub fn lemma_property_suite(m: &Matrix, trials: usize, seed: u64) -> Result<LemmaReport> {
    let base = positive_nekrasov(m)
        .map_err(|_| Error::PreconditionFailed("matrix must be Nekrasov with positive diagonal"))?;
    let n = m.n();
    let mut report = LemmaReport::default();
    let ds = core::iter::once(vec![1.0; n]).chain((0..trials).map(|k| random_d(seed, k as u64, n)));
    for (trial, d) in ds.enumerate() {
        report.trials += 1;
        let mt = scaled_matrix(m, &d)?;
        let p = is_nekrasov(&mt);
        if !p.is_nekrasov {
            report.violations.push(LemmaViolation {
                trial,
                d: d.clone(),
                check: LemmaCheck::NotNekrasov,
                row: 0,
                lhs: f64::NAN,
                rhs: f64::NAN,
            });
            // The recursions may be undefined; skip the row checks.
            if p.zero_diagonal.is_some() {
                continue;
            }
        }
        for i in 0..n {
            let checks = [
                (LemmaCheck::HRatio, p.h[i] / mt.diag(i), base.h[i] / m.diag(i)),
                (LemmaCheck::ZBelowEta, p.z[i], base.eta[i]),
                (
                    LemmaCheck::ZOverDiagonal,
                    p.z[i] / mt.diag(i),
                    base.eta[i] / m.diag(i).min(1.0),
                ),
            ];
            for (check, lhs, rhs) in checks {
                // NaN on either side counts as a violation.
                let holds = lhs <= rhs + LEMMA_TOL * rhs.abs().max(1.0);
                if !holds {
                    report.violations.push(LemmaViolation {
                        trial,
                        d: d.clone(),
                        check,
                        row: i + 1,
                        lhs,
                        rhs,
                    });
                }
            }
        }
    }
    Ok(report)
}

/// Scalar inequalities behind the bounds: for `gamma > 0`, `eta >= 0`,
/// `x in [0, 1]`,
///
/// ```text
/// 1 / (1 - x + gamma x)      <= 1 / min{gamma, 1}
/// eta x / (1 - x + gamma x)  <= eta / gamma
/// ```
///
/// Returns the number of violated triples among `samples` random ones.
/// `gamma = u / (1 - u)` with `u` in `(0, 1)` covers both small and large
/// values.
pub fn lemma2_check(samples: usize, seed: u64) -> usize {
    (0..samples)
        .filter(|&k| {
            let mut rng = stream(seed, k as u64);
            let u: f64 = rng.sample(Open01);
            let gamma = u / (1.0 - u);
            let eta = 10.0 * rng.random::<f64>();
            let x = rng.random::<f64>();
            !lemma2_holds(gamma, eta, x)
        })
        .count()
}

/// Both scalar inequalities at one point, with `1e-12` relative slack.
pub fn lemma2_holds(gamma: f64, eta: f64, x: f64) -> bool {
    let denom = 1.0 - x + gamma * x;
    let first = 1.0 / denom;
    let first_rhs = 1.0 / gamma.min(1.0);
    let second = eta * x / denom;
    let second_rhs = eta / gamma;
    first <= first_rhs * (1.0 + LEMMA_TOL) && second <= second_rhs * (1.0 + LEMMA_TOL)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::fixtures::*;
    use approx::assert_abs_diff_eq;

    #[test]
    fn norm_at_d_examples() {
        assert_eq!(norm_at_d(&example_1(), &[0.0; 4]).unwrap(), 1.0);
        assert_eq!(norm_at_d(&Matrix::diagonal(&[2.0, 2.0]), &[1.0, 1.0]).unwrap(), 0.5);
        let v = norm_at_d(&example_2(), &[1.0; 4]).unwrap();
        assert_abs_diff_eq!(v, inf_norm(&inverse(&example_2()).unwrap()), epsilon = 0.0);
        assert!(v <= 15.0);
    }

    #[test]
    fn identity_oracle_is_one() {
        let est = oracle_max_norm(&Matrix::identity(3), 50, 1).unwrap();
        assert_eq!(est.max_observed, 1.0);
        assert_eq!(est.vertex_count, 8);
        // The first vertex wins every tie.
        assert_eq!(est.argmax_d, vec![0.0; 3]);
    }

    #[test]
    fn oracle_is_deterministic_and_reproducible() {
        let a = oracle_max_norm(&example_1(), 500, 42).unwrap();
        let b = oracle_max_norm(&example_1(), 500, 42).unwrap();
        assert_eq!(a, b);
        let again = norm_at_d(&example_1(), &a.argmax_d).unwrap();
        assert_abs_diff_eq!(again, a.max_observed, epsilon = 1e-12 * a.max_observed);
        assert!(a.max_observed >= inf_norm(&inverse(&example_1()).unwrap()));
        assert!(a.max_observed >= 1.0);
    }

    #[test]
    fn oracle_dimension_limit() {
        assert_eq!(
            oracle_max_norm(&Matrix::identity(21), 0, 0),
            Err(Error::DimensionTooLarge { n: 21, max: 20 })
        );
    }

    #[test]
    fn lemma_suite_clean_on_fixtures() {
        let r = lemma_property_suite(&example_1(), 200, 3).unwrap();
        assert_eq!(r.trials, 201);
        assert!(r.is_clean(), "{:?}", r.violations);
        let r = lemma_property_suite(&Matrix::diagonal(&[3.0; 3]), 50, 3).unwrap();
        assert!(r.is_clean());
    }

    #[test]
    fn lemma_suite_diagonal_keeps_h_zero() {
        let m = Matrix::diagonal(&[3.0; 3]);
        for k in 0..20 {
            let d = random_d(9, k, 3);
            let h = crate::nekrasov::h_vector(&scaled_matrix(&m, &d).unwrap()).unwrap();
            assert_eq!(h, vec![0.0; 3]);
        }
    }

    #[test]
    fn lemma_suite_precondition() {
        assert!(matches!(
            lemma_property_suite(&example_3(), 10, 0),
            Err(Error::PreconditionFailed(_))
        ));
    }

    #[test]
    fn lemma2_edges_and_samples() {
        for gamma in [1e-6, 0.5, 1.0, 2.0, 1e6] {
            for x in [0.0, 0.3, 1.0] {
                assert!(lemma2_holds(gamma, 3.0, x));
                assert!(lemma2_holds(gamma, 0.0, x));
            }
        }
        assert_eq!(lemma2_check(10_000, 5), 0);
    }
}
