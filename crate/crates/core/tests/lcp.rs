use nekrasov_lcp::fixtures;
use nekrasov_lcp::lcp::trial_point;
use nekrasov_lcp::linalg::vec_inf_norm;
use nekrasov_lcp::rng::{stream, uniform_vec};
use nekrasov_lcp::*;

/// Projected Gauss-Seidel sweeps started at `x`.
fn projected_gauss_seidel(inst: &LcpInstance, mut x: Vec<f64>, iters: usize) -> Vec<f64> {
    let n = inst.n();
    for _ in 0..iters {
        for i in 0..n {
            let wi: f64 = inst.m.row(i).iter().zip(&x).map(|(a, b)| a * b).sum::<f64>() + inst.q[i];
            x[i] = (x[i] - wi / inst.m.diag(i)).max(0.0);
        }
    }
    x
}

fn best_bound(m: &Matrix) -> BoundReport {
    [new_nekrasov_bound(m), new_bnekrasov_bound(m)]
        .into_iter()
        .filter(BoundReport::applicable)
        .min_by(|a, b| a.value().unwrap().total_cmp(&b.value().unwrap()))
        .unwrap()
}

#[test]
fn example_2_solution_is_a_fixed_point_of_pgs() {
    let inst = LcpInstance::new(fixtures::example_2(), vec![-1.0; 4]).unwrap();
    let s = solve_lcp(&inst).unwrap();
    assert!(s.complementarity_gap <= 1e-9);
    let refined = projected_gauss_seidel(&inst, s.x_star.clone(), 500);
    let diff = refined
        .iter()
        .zip(&s.x_star)
        .fold(0.0f64, |acc, (a, b)| acc.max((a - b).abs()));
    assert!(diff <= 1e-9, "{diff}");
    for k in 0..100 {
        let x = trial_point(&s.x_star, 3, k);
        let c = ErrorCertificate::evaluate(&inst, &s, &x, 15.0).unwrap();
        assert!(c.holds, "{c:?}");
    }
}

#[test]
fn certificates_hold_on_fixtures() {
    let cases = [
        (fixtures::example_1(), vec![-1.0; 4]),
        (fixtures::example_2(), vec![-1.0; 4]),
        (fixtures::example_3(), vec![-1.0; 4]),
        (fixtures::example_4(), vec![-1.0, -2.0, -1.0, -2.0]),
    ];
    for (m, q) in cases {
        let bound = best_bound(&m);
        let inst = LcpInstance::new(m, q).unwrap();
        let s = solve_lcp(&inst).unwrap();
        for k in 0..100 {
            let x = trial_point(&s.x_star, 42, k);
            let c = certify_error_bound(&inst, &x, &bound).unwrap();
            assert!(c.holds, "{c:?}");
        }
    }
}

#[test]
fn p_matrix_fixtures_have_one_feasible_basis() {
    for (name, m) in fixtures::all() {
        assert!(is_p_matrix(&m).unwrap(), "{name}");
        for k in 0..20 {
            let q = uniform_vec(&mut stream(99, k), 4, -2.0, 2.0);
            let inst = LcpInstance::new(m.clone(), q.clone()).unwrap();
            let all = feasible_bases(&inst).unwrap();
            assert_eq!(all.len(), 1, "{name} q = {q:?}");
            let s = solve_lcp(&inst).unwrap();
            assert_eq!(s, all[0]);
            let r = residual(&inst, &s.x_star).unwrap();
            assert!(vec_inf_norm(&r) <= 1e-9 * (1.0 + vec_inf_norm(&q)));
        }
    }
}

#[test]
fn b_nekrasov_implies_p_on_small_random_perturbations() {
    // Shrinking the off-diagonal part of a B-Nekrasov fixture keeps it B-Nekrasov.
    for t in [1.0, 0.75, 0.5, 0.25] {
        let mut m = fixtures::example_3();
        for i in 0..4 {
            for j in 0..4 {
                if i != j {
                    m[(i, j)] *= t;
                }
            }
        }
        if is_b_nekrasov(&m) {
            assert!(is_p_matrix(&m).unwrap());
        }
    }
}
