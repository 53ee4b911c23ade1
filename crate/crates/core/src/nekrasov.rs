//! Nekrasov recursions and the two Nekrasov LCP bounds.
//!
//! For `A = [a_ij]`:
//!
//! ```text
//! h_1 = sum_{j != 1} |a_1j|
//! h_i = sum_{j < i} |a_ij| / |a_jj| * h_j + sum_{j > i} |a_ij|
//! z_1 = 1,  z_i   = sum_{j < i} |a_ij| / |a_jj| * z_j + 1
//! eta_1 = 1, eta_i = sum_{j < i} |a_ij| / min{|a_jj|, 1} * eta_j + 1
//! ```
//!
//! `A` is Nekrasov when `|a_ii| > h_i` for every row.

use alloc::vec::Vec;

use crate::error::{Error, Result};
use crate::linalg::Matrix;
use crate::report::{BoundReport, Inapplicable, Theorem};
use crate::STRICT_TOL;

/// Diagonal magnitudes at or below this are treated as zero divisors.
const ZERO_DIAG: f64 = 1e-300;

fn check_divisors(a: &Matrix) -> Result<()> {
    let n = a.n();
    match (0..n.saturating_sub(1)).find(|&j| a.diag(j).abs() <= ZERO_DIAG) {
        Some(j) => Err(Error::ZeroDiagonal(j + 1)),
        None => Ok(()),
    }
}

/// Runs `x_i = sum_{j<i} |a_ij| / denom(a_jj) * x_j + tail(i)`.
fn forward(a: &Matrix, denom: impl Fn(f64) -> f64, tail: impl Fn(usize) -> f64) -> Vec<f64> {
    let n = a.n();
    let mut x: Vec<f64> = Vec::with_capacity(n);
    for i in 0..n {
        let row = a.row(i);
        let lower: f64 = (0..i)
            .map(|j| row[j].abs() / denom(a.diag(j).abs()) * x[j])
            .sum();
        x.push(lower + tail(i));
    }
    x
}

/// The Nekrasov row values `h_1, ..., h_n`.
pub fn h_vector(a: &Matrix) -> Result<Vec<f64>> {
    check_divisors(a)?;
    Ok(forward(
        a,
        |d| d,
        |i| a.row(i)[i + 1..].iter().map(|v| v.abs()).sum(),
    ))
}

/// Kolotilina's auxiliary values `z_1, ..., z_n`.
pub fn z_vector(a: &Matrix) -> Result<Vec<f64>> {
    check_divisors(a)?;
    Ok(forward(a, |d| d, |_| 1.0))
}

/// The `eta` values: like [`z_vector`] with divisors clamped to `min{|m_jj|, 1}`.
pub fn eta_vector(m: &Matrix) -> Result<Vec<f64>> {
    check_divisors(m)?;
    Ok(forward(m, |d| d.min(1.0), |_| 1.0))
}

/// Everything the Nekrasov test computes.
#[derive(Debug, Clone, PartialEq)]
pub struct NekrasovProfile {
    pub h: Vec<f64>,
    pub z: Vec<f64>,
    pub eta: Vec<f64>,
    /// `|a_ii| - h_i`.
    pub margins: Vec<f64>,
    pub is_nekrasov: bool,
    /// 1-based row of a zero diagonal that stopped the recursion. When set,
    /// the vectors are empty.
    pub zero_diagonal: Option<usize>,
}

impl NekrasovProfile {
    /// `max_i z_i / margin_i`, the Kolotilina bound (meaningful only when
    /// `is_nekrasov`).
    fn kolotilina_value(&self) -> f64 {
        self.z
            .iter()
            .zip(&self.margins)
            .map(|(z, m)| z / m)
            .fold(f64::NEG_INFINITY, f64::max)
    }
}

/// Computes the Nekrasov profile of `a`. `is_nekrasov` requires
/// `|a_ii| - h_i > 1e-12 * max(1, |a_ii|)` in every row.
pub fn is_nekrasov(a: &Matrix) -> NekrasovProfile {
    let (h, z, eta) = match (h_vector(a), z_vector(a), eta_vector(a)) {
        (Ok(h), Ok(z), Ok(eta)) => (h, z, eta),
        (Err(Error::ZeroDiagonal(j)), ..) => {
            return NekrasovProfile {
                h: Vec::new(),
                z: Vec::new(),
                eta: Vec::new(),
                margins: Vec::new(),
                is_nekrasov: false,
                zero_diagonal: Some(j),
            }
        }
        _ => unreachable!("recursions share the same divisor check"),
    };
    let margins: Vec<f64> = h
        .iter()
        .enumerate()
        .map(|(i, hi)| a.diag(i).abs() - hi)
        .collect();
    let is_nekrasov = margins
        .iter()
        .enumerate()
        .all(|(i, &m)| m > STRICT_TOL * a.diag(i).abs().max(1.0));
    NekrasovProfile {
        h,
        z,
        eta,
        margins,
        is_nekrasov,
        zero_diagonal: None,
    }
}

/// Profile of a Nekrasov matrix with positive diagonal, or the reason it is not one.
pub(crate) fn positive_nekrasov(m: &Matrix) -> core::result::Result<NekrasovProfile, Inapplicable> {
    if (0..m.n()).any(|i| m.diag(i) <= 0.0) {
        return Err(Inapplicable::NonPositiveDiagonal);
    }
    let profile = is_nekrasov(m);
    if profile.is_nekrasov {
        Ok(profile)
    } else {
        Err(Inapplicable::NotNekrasov)
    }
}

/// `||A^{-1}||_inf <= max_i z_i(A) / (|a_ii| - h_i(A))` for Nekrasov `A`.
pub fn kolotilina_bound(a: &Matrix) -> BoundReport {
    let report = BoundReport::new(Theorem::Kolotilina, None);
    let profile = is_nekrasov(a);
    if !profile.is_nekrasov {
        return report.reject(Inapplicable::NotNekrasov);
    }
    let value = profile.kolotilina_value();
    report
        .with("h", profile.h)
        .with("z", profile.z)
        .with("margins", profile.margins)
        .accept(value)
}

/// `I - D + D M` with `D = diag(d)`, `d` in `[0, 1]^n`.
pub fn scaled_matrix(m: &Matrix, d: &[f64]) -> Result<Matrix> {
    let n = m.n();
    if d.len() != n {
        return Err(Error::DimensionMismatch {
            expected: n,
            found: d.len(),
        });
    }
    if let Some((i, &v)) = d.iter().enumerate().find(|(_, v)| !(0.0..=1.0).contains(*v)) {
        return Err(Error::Domain {
            index: i + 1,
            value: v,
        });
    }
    let mut out = m.clone();
    for (i, &di) in d.iter().enumerate() {
        for j in 0..n {
            out[(i, j)] = if i == j {
                1.0 - di + di * m[(i, j)]
            } else {
                di * m[(i, j)]
            };
        }
    }
    Ok(out)
}

/// True when `eps` lies in the open interval `(lo, hi)` with the crate's
/// strictness tolerance applied at both ends.
pub(crate) fn strictly_inside(eps: f64, lo: f64, hi: f64) -> bool {
    eps - lo > STRICT_TOL * lo.abs().max(1.0) && hi - eps > STRICT_TOL * hi.abs().max(1.0)
}

/// Upper end `1 - h_n(M)/m_nn` of the admissible epsilon interval for
/// [`gp_nekrasov_bound`], when `M` is Nekrasov with positive diagonal.
pub fn gp_nekrasov_epsilon_upper(m: &Matrix) -> Option<f64> {
    let profile = positive_nekrasov(m).ok()?;
    let n = m.n();
    Some(1.0 - profile.h[n - 1] / m.diag(n - 1))
}

/// The epsilon-parameterized Nekrasov bound
///
/// ```text
/// max{ max_i w_i / min_i s_i , max_i w_i / min_i w_i }
/// ```
///
/// with `w_i = h_i/m_ii` (`+ eps` for `i = n`), `s_i = sum_{j>i} |m_ij| (1 - w_j)`
/// and `s_n = eps * m_nn`. Requires `eps` in `(0, 1 - h_n/m_nn)` and a
/// nonzero entry right of the diagonal in every row but the last.
pub fn gp_nekrasov_bound(m: &Matrix, epsilon: f64) -> BoundReport {
    let report = BoundReport::new(Theorem::GpNekrasov, Some(epsilon));
    let n = m.n();
    if n < 2 {
        return report.reject(Inapplicable::DimensionTooSmall);
    }
    let profile = match positive_nekrasov(m) {
        Ok(p) => p,
        Err(why) => return report.reject(why),
    };
    if let Some(i) = (0..n - 1).find(|&i| m.row(i)[i + 1..].iter().all(|&v| v == 0.0)) {
        return report.reject(Inapplicable::ZeroUpperRow(i + 1));
    }
    let upper = 1.0 - profile.h[n - 1] / m.diag(n - 1);
    if !strictly_inside(epsilon, 0.0, upper) {
        return report.reject(Inapplicable::EpsilonOutOfRange);
    }

    let mut w: Vec<f64> = (0..n).map(|i| profile.h[i] / m.diag(i)).collect();
    w[n - 1] += epsilon;
    let mut s: Vec<f64> = (0..n - 1)
        .map(|i| {
            (i + 1..n)
                .map(|j| m[(i, j)].abs() * (1.0 - w[j]))
                .sum()
        })
        .collect();
    s.push(epsilon * m.diag(n - 1));

    let max_w = w.iter().copied().fold(f64::NEG_INFINITY, f64::max);
    let min_w = w.iter().copied().fold(f64::INFINITY, f64::min);
    let min_s = s.iter().copied().fold(f64::INFINITY, f64::min);
    let report = report.with("h", profile.h).with("w", w).with("s", s);
    if min_s <= STRICT_TOL || min_w <= 0.0 {
        return report.reject(Inapplicable::DegenerateS);
    }
    report.accept((max_w / min_s).max(max_w / min_w))
}

/// The parameter-free Nekrasov bound `max_i eta_i(M) / min{m_ii - h_i(M), 1}`.
///
/// Applies to every Nekrasov matrix with positive diagonal, including `n = 1`.
pub fn new_nekrasov_bound(m: &Matrix) -> BoundReport {
    let report = BoundReport::new(Theorem::NewNekrasov, None);
    let profile = match positive_nekrasov(m) {
        Ok(p) => p,
        Err(why) => return report.reject(why),
    };
    let value = eta_margin_max(&profile.eta, &profile.margins);
    report
        .with("h", profile.h)
        .with("eta", profile.eta)
        .with("margins", profile.margins)
        .accept(value)
}

/// `max_i eta_i / min{margin_i, 1}`.
pub(crate) fn eta_margin_max(eta: &[f64], margins: &[f64]) -> f64 {
    eta.iter()
        .zip(margins)
        .map(|(e, m)| e / m.min(1.0))
        .fold(f64::NEG_INFINITY, f64::max)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::fixtures::*;
    use crate::linalg::{inf_norm, inverse};
    use crate::rng::{random_d, random_nekrasov};
    use alloc::vec;
    use approx::assert_abs_diff_eq;
    use proptest::prelude::*;

    fn assert_vec(actual: &[f64], expected: &[f64], tol: f64) {
        assert_eq!(actual.len(), expected.len());
        for (a, e) in actual.iter().zip(expected) {
            assert_abs_diff_eq!(*a, *e, epsilon = tol);
        }
    }

    #[test]
    fn h_of_example_1() {
        let h = h_vector(&example_1()).unwrap();
        assert_vec(&h, &[1.1000, 0.6220, 0.2411, 0.3410], 5e-5);
    }

    #[test]
    fn h_of_example_4_bplus() {
        let b = crate::bnekrasov::bplus_decompose(&example_4()).unwrap().b_plus;
        let h = h_vector(&b).unwrap();
        assert_vec(&h, &[0.0, 3.0 / 5.0, 1.0 / 6.0, 1.0 / 24.0], 1e-12);
    }

    #[test]
    fn h_of_diagonal_is_zero() {
        let h = h_vector(&Matrix::diagonal(&[3.0, -2.0, 0.5])).unwrap();
        assert_eq!(h, vec![0.0; 3]);
    }

    #[test]
    fn zero_diagonal_is_an_error() {
        let a = Matrix::from_rows(&[[1.0, 1.0, 0.0], [0.0, 0.0, 1.0], [1.0, 1.0, 1.0]]).unwrap();
        assert_eq!(h_vector(&a), Err(Error::ZeroDiagonal(2)));
        assert_eq!(z_vector(&a), Err(Error::ZeroDiagonal(2)));
        assert_eq!(eta_vector(&a), Err(Error::ZeroDiagonal(2)));
        let p = is_nekrasov(&a);
        assert!(!p.is_nekrasov);
        assert_eq!(p.zero_diagonal, Some(2));
        // A zero in the last diagonal slot is never a divisor.
        let b = Matrix::from_rows(&[[1.0, 0.0], [0.0, 0.0]]).unwrap();
        assert_eq!(h_vector(&b).unwrap(), vec![0.0, 0.0]);
        assert!(!is_nekrasov(&b).is_nekrasov);
    }

    #[test]
    fn nekrasov_classification() {
        let p = is_nekrasov(&example_1());
        assert!(p.is_nekrasov);
        assert_eq!(p.z[0], 1.0);
        assert_eq!(p.eta[0], 1.0);
        assert!(!is_nekrasov(&example_3()).is_nekrasov);
        let id = is_nekrasov(&Matrix::identity(5));
        assert!(id.is_nekrasov);
        assert_eq!(id.h, vec![0.0; 5]);
    }

    #[test]
    fn boundary_margin_is_not_nekrasov() {
        // |a_11| == h_1 exactly.
        let a = Matrix::from_rows(&[[1.0, 1.0], [0.0, 1.0]]).unwrap();
        assert!(!is_nekrasov(&a).is_nekrasov);
    }

    #[test]
    fn z_examples() {
        assert_eq!(z_vector(&Matrix::diagonal(&[2.0, 3.0, 4.0])).unwrap(), vec![1.0; 3]);
        assert_vec(
            &z_vector(&example_2()).unwrap(),
            &[1.0, 3.0 / 2.0, 2.0, 13.0 / 5.0],
            1e-12,
        );
        let b = crate::bnekrasov::bplus_decompose(&example_3()).unwrap().b_plus;
        assert_vec(&z_vector(&b).unwrap(), &[1.0, 1.0, 3.0, 7.0 / 4.0], 1e-12);
    }

    #[test]
    fn eta_examples() {
        assert_vec(&eta_vector(&example_1()).unwrap(), &[1.0, 1.1, 1.61, 3.128], 1e-12);
        assert_vec(
            &eta_vector(&example_2()).unwrap(),
            &[1.0, 3.0 / 2.0, 2.0, 13.0 / 5.0],
            1e-12,
        );
        assert_eq!(eta_vector(&Matrix::diagonal(&[1.0, 2.0, 7.0])).unwrap(), vec![1.0; 3]);
    }

    #[test]
    fn kolotilina_examples() {
        assert_eq!(kolotilina_bound(&Matrix::identity(3)).value(), Some(1.0));
        let r = kolotilina_bound(&example_2());
        assert_abs_diff_eq!(r.value().unwrap(), 15.0, epsilon = 1e-9);
        let inv_norm = inf_norm(&inverse(&example_2()).unwrap());
        assert!(inv_norm <= r.value().unwrap());
        assert_eq!(
            kolotilina_bound(&example_3()).reason(),
            Some(Inapplicable::NotNekrasov)
        );
    }

    #[test]
    fn scaled_matrix_examples() {
        let m = example_1();
        assert_eq!(scaled_matrix(&m, &[1.0; 4]).unwrap(), m);
        assert_eq!(scaled_matrix(&m, &[0.0; 4]).unwrap(), Matrix::identity(4));
        let half = scaled_matrix(&m, &[0.5; 4]).unwrap();
        assert_eq!(half[(0, 0)], 3.0);
        assert_abs_diff_eq!(half[(0, 1)], -0.1, epsilon = 1e-15);
        assert_eq!(
            scaled_matrix(&m, &[0.5, 1.5, 0.0, 0.0]),
            Err(Error::Domain { index: 2, value: 1.5 })
        );
        assert!(matches!(
            scaled_matrix(&m, &[0.5, f64::NAN, 0.0, 0.0]),
            Err(Error::Domain { index: 2, .. })
        ));
        assert_eq!(
            scaled_matrix(&m, &[0.5; 3]),
            Err(Error::DimensionMismatch { expected: 4, found: 3 })
        );
    }

    #[test]
    fn gp_nekrasov_example_2_has_zero_upper_row() {
        let r = gp_nekrasov_bound(&example_2(), 0.01);
        assert_eq!(r.reason(), Some(Inapplicable::ZeroUpperRow(3)));
    }

    #[test]
    fn gp_nekrasov_example_1_weights() {
        let upper = gp_nekrasov_epsilon_upper(&example_1()).unwrap();
        assert_abs_diff_eq!(upper, 0.7158, epsilon = 5e-5);
        for eps in [0.01, 0.3, 0.7] {
            let r = gp_nekrasov_bound(&example_1(), eps);
            assert!(r.applicable());
            assert_vec(
                r.intermediate("w").unwrap(),
                &[0.2200, 0.3110, 0.1607, 0.2842 + eps],
                5e-5,
            );
        }
    }

    #[test]
    fn gp_nekrasov_blows_up_near_zero() {
        let r = gp_nekrasov_bound(&example_1(), 1e-6);
        assert!(r.value().unwrap() > 1e5);
    }

    #[test]
    fn gp_nekrasov_rejections() {
        let m = example_1();
        let upper = gp_nekrasov_epsilon_upper(&m).unwrap();
        for eps in [0.0, -0.1, upper, 1.0, f64::NAN] {
            assert_eq!(
                gp_nekrasov_bound(&m, eps).reason(),
                Some(Inapplicable::EpsilonOutOfRange)
            );
        }
        assert_eq!(
            gp_nekrasov_bound(&Matrix::identity(1), 0.5).reason(),
            Some(Inapplicable::DimensionTooSmall)
        );
        assert_eq!(
            gp_nekrasov_bound(&m.scale(-1.0), 0.1).reason(),
            Some(Inapplicable::NonPositiveDiagonal)
        );
        assert_eq!(
            gp_nekrasov_bound(&example_3(), 0.1).reason(),
            Some(Inapplicable::NotNekrasov)
        );
    }

    #[test]
    fn new_nekrasov_examples() {
        let r = new_nekrasov_bound(&example_1());
        assert_abs_diff_eq!(r.value().unwrap(), 3.6414, epsilon = 5e-5);
        assert_abs_diff_eq!(r.value().unwrap(), 3.128 / (1.2 - r.intermediate("h").unwrap()[3]), epsilon = 1e-12);
        assert_eq!(r.epsilon, None);
        assert_abs_diff_eq!(new_nekrasov_bound(&example_2()).value().unwrap(), 15.0, epsilon = 1e-9);
        assert_eq!(new_nekrasov_bound(&Matrix::identity(4)).value(), Some(1.0));
    }

    #[test]
    fn new_nekrasov_one_by_one() {
        let m = Matrix::from_rows(&[[0.25]]).unwrap();
        assert_eq!(new_nekrasov_bound(&m).value(), Some(4.0));
        let m = Matrix::from_rows(&[[3.0]]).unwrap();
        assert_eq!(new_nekrasov_bound(&m).value(), Some(1.0));
    }

    #[test]
    fn unit_diagonal_reduces_to_one_minus_h() {
        let m = example_2();
        let p = is_nekrasov(&m);
        let corollary = p
            .eta
            .iter()
            .zip(&p.h)
            .map(|(e, h)| e / (1.0 - h))
            .fold(f64::NEG_INFINITY, f64::max);
        assert_abs_diff_eq!(new_nekrasov_bound(&m).value().unwrap(), corollary, epsilon = 1e-12);
    }

    proptest! {
        #![proptest_config(ProptestConfig::with_cases(64))]

        #[test]
        fn random_nekrasov_is_nekrasov(n in 1usize..=8, seed in any::<u64>()) {
            prop_assert!(is_nekrasov(&random_nekrasov(n, seed)).is_nekrasov);
        }

        #[test]
        fn scaled_matrix_keeps_nekrasov_ratios(n in 1usize..=8, seed in any::<u64>(), k in 0u64..1000) {
            let m = random_nekrasov(n, seed);
            let d = random_d(seed ^ 0x5eed, k, n);
            let mt = scaled_matrix(&m, &d).unwrap();
            let pm = is_nekrasov(&m);
            let pt = is_nekrasov(&mt);
            prop_assert!(pt.is_nekrasov);
            for i in 0..n {
                prop_assert!(pt.h[i] / mt.diag(i) <= pm.h[i] / m.diag(i) + 1e-12);
                prop_assert!(pt.z[i] <= pm.eta[i] + 1e-12);
                prop_assert!(pt.z[i] / mt.diag(i) <= pm.eta[i] / m.diag(i).min(1.0) + 1e-12);
            }
        }

        #[test]
        fn new_bound_dominates_sampled_inverse_norms(n in 1usize..=6, seed in any::<u64>(), k in 0u64..1000) {
            let m = random_nekrasov(n, seed);
            let bound = new_nekrasov_bound(&m).value().unwrap();
            let d = random_d(seed, k, n);
            let norm = inf_norm(&inverse(&scaled_matrix(&m, &d).unwrap()).unwrap());
            prop_assert!(norm <= bound * (1.0 + 1e-9));
            let kol = kolotilina_bound(&m).value().unwrap();
            prop_assert!(inf_norm(&inverse(&m).unwrap()) <= kol * (1.0 + 1e-9));
        }

        #[test]
        fn gp_bound_dominates_when_applicable(n in 2usize..=6, seed in any::<u64>(), t in 0.01f64..0.99, k in 0u64..1000) {
            let m = random_nekrasov(n, seed);
            let upper = gp_nekrasov_epsilon_upper(&m).unwrap();
            let r = gp_nekrasov_bound(&m, t * upper);
            if let Some(bound) = r.value() {
                let d = random_d(seed, k, n);
                let norm = inf_norm(&inverse(&scaled_matrix(&m, &d).unwrap()).unwrap());
                prop_assert!(norm <= bound * (1.0 + 1e-9));
            }
        }
    }
}
