mod common;

use common::*;
use sparse_recovery::convex::*;
use sparse_recovery::ensembles::{gen_matrix, EnsembleSpec, Family};
use sparse_recovery::rip::ric_exact;
use sparse_recovery::{DenseMatrix, Error};

fn gaussian(m: usize, d: usize, seed: u64) -> DenseMatrix {
    gen_matrix(&EnsembleSpec::new(Family::Gaussian, m, d, seed)).unwrap()
}

/// Lower bound on `min ‖z‖₁ s.t. ‖Φz − u‖ ≤ ε` from the dual direction `ν = u − Φx`.
fn dual_bound(phi: &DenseMatrix, u: &[f64], x: &[f64], eps: f64) -> f64 {
    let nu: Vec<f64> = u.iter().zip(matvec(phi, x)).map(|(a, b)| a - b).collect();
    let atn = phi.adjoint_matvec(&nu).unwrap();
    let inf = atn.iter().fold(0.0f64, |m, v| m.max(v.abs()));
    let un: f64 = u.iter().zip(&nu).map(|(a, b)| a * b).sum();
    (un - eps * norm2(&nu)) / inf
}

#[test]
fn bp_equality_examples() {
    let sq = DenseMatrix::from_rows(&[&[2.0, 1.0], &[1.0, 3.0]]).unwrap();
    let x = bp_equality(&sq, &[3.0, 5.0]).unwrap();
    let want = solve_dense(vec![vec![2.0, 1.0], vec![1.0, 3.0]], vec![3.0, 5.0]).unwrap();
    assert!(dist(x.values(), &want) < 1e-8);

    let a = DenseMatrix::from_rows(&[&[1.0, 0.0, 1.0], &[0.0, 1.0, 1.0]]).unwrap();
    let x = bp_equality(&a, &[1.0, 1.0]).unwrap();
    assert!(dist(x.values(), &[0.0, 0.0, 1.0]) < 1e-8);
    assert!((x.norm1() - 1.0).abs() < 1e-8);

    assert_eq!(bp_equality(&a, &[0.0, 0.0]).unwrap().nnz(), 0);
}

#[test]
fn bp_equality_rejects_inconsistent_measurements() {
    let a = DenseMatrix::from_rows(&[&[1.0, 1.0], &[2.0, 2.0]]).unwrap();
    assert_eq!(bp_equality(&a, &[1.0, 0.0]), Err(Error::Infeasible));
}

#[test]
fn lp_recast_shape_and_complementarity() {
    let phi = gaussian(5, 9, 3);
    let mut rng = TestRng::new(3);
    let x = sparse_normal(9, 2, &mut rng);
    let u = matvec(&phi, &x);
    let lp = l1_recast(&phi, &u).unwrap();
    assert_eq!(lp.variables(), 18);
    assert!(lp.objective[..9].iter().all(|&c| c == 0.0));
    assert!(lp.objective[9..].iter().all(|&c| c == 1.0));
    let sol = bp_equality_lp(&phi, &u).unwrap();
    for (z, t) in sol.z.iter().zip(&sol.t) {
        assert!(t - z.abs() <= 1e-7, "{t} vs {z}");
    }
    let w: Vec<f64> = sol.z.iter().chain(&sol.t).copied().collect();
    assert!(lp.violation(&w).unwrap() <= 1e-8);
    assert!((lp.objective_value(&w) - norm1(&sol.z)).abs() < 1e-7);
}

#[test]
fn bp_equality_matches_vertex_enumeration() {
    let mut rng = TestRng::new(17);
    let mut compared = 0;
    for d in 3..=10 {
        for m in 1..d.min(7) {
            for _ in 0..2 {
                let phi = gaussian(m, d, rng.next_u64());
                let k = 1 + rng.below(m);
                let x = sparse_normal(d, k, &mut rng);
                let u = matvec(&phi, &x);
                let Some(oracle) = bp_vertex_oracle(&phi, &u) else { continue };
                if !oracle.unique {
                    continue;
                }
                let got = bp_equality(&phi, &u).unwrap();
                assert!(dist(got.values(), &oracle.minimizer) <= 1e-6 * oracle.value.max(1.0), "d {d} m {m}");
                assert!(got.norm1() <= norm1(&x) + 1e-8);
                compared += 1;
            }
        }
    }
    assert!(compared > 40);
}

#[test]
fn bp_equality_recovers_all_sign_patterns_under_small_constant() {
    let mut rng = TestRng::new(4);
    let (d, s) = (10, 2);
    let phi = loop {
        let phi = perturbed_orthonormal(d, d, 0.05, &mut rng);
        let sub = sparse_recovery::DenseMatrix::new(
            d,
            d,
            phi.as_slice().to_vec(),
        )
        .unwrap();
        if ric_exact(&sub, 3 * s).unwrap().delta <= 0.2 {
            break sub;
        }
    };
    for support in combinations(d, s) {
        for signs in 0..(1 << s) {
            let mut x = vec![0.0; d];
            for (k, &j) in support.iter().enumerate() {
                x[j] = if signs >> k & 1 == 1 { -1.0 } else { 1.0 } * (1.0 + k as f64);
            }
            let got = bp_equality(&phi, &matvec(&phi, &x)).unwrap();
            assert!(dist(got.values(), &x) < 1e-7);
        }
    }
}

#[test]
fn bp_denoise_examples() {
    let phi = gaussian(6, 10, 1);
    let u = [0.3, -0.1, 0.2, 0.0, 0.1, -0.2];
    assert_eq!(bp_denoise(&phi, &u, norm2(&u)).unwrap().nnz(), 0);
    assert_eq!(bp_denoise(&phi, &u, 10.0).unwrap().nnz(), 0);
    let a = bp_denoise(&phi, &u, 0.0).unwrap();
    let b = bp_equality(&phi, &u).unwrap();
    assert!(dist(a.values(), b.values()) < 1e-8);
    assert!(bp_denoise(&phi, &u, -1.0).is_err());
}

#[test]
fn bp_denoise_is_feasible_and_certified_optimal() {
    for (m, d, seed) in [(6, 10, 2), (20, 40, 3), (40, 80, 4), (64, 128, 5)] {
        let phi = gaussian(m, d, seed);
        let mut rng = TestRng::new(seed);
        let x = sparse_normal(d, m / 5 + 1, &mut rng);
        let e: Vec<f64> = (0..m).map(|_| 0.05 * rng.normal()).collect();
        let u: Vec<f64> = matvec(&phi, &x).iter().zip(&e).map(|(a, b)| a + b).collect();
        for eps in [0.5 * norm2(&e), norm2(&e), 2.0 * norm2(&e)] {
            let z = bp_denoise(&phi, &u, eps).unwrap();
            let r = dist(&matvec(&phi, z.values()), &u);
            assert!(r <= eps + 1e-8, "infeasible by {}", r - eps);
            let lb = dual_bound(&phi, &u, z.values(), eps);
            assert!(z.norm1() - lb <= 1e-5 * lb, "gap {} at m={m}", (z.norm1() - lb) / lb);
        }
    }
}

#[test]
fn bp_denoise_approaches_bp_equality_as_noise_bound_vanishes() {
    let phi = gaussian(12, 30, 9);
    let mut rng = TestRng::new(9);
    let u = matvec(&phi, &sparse_normal(30, 3, &mut rng));
    let exact = bp_equality(&phi, &u).unwrap().norm1();
    let near = bp_denoise(&phi, &u, 1e-9).unwrap().norm1();
    assert!((near - exact).abs() <= 1e-5 * exact);
}

#[test]
fn bp_denoise_objective_is_nonincreasing_in_noise_bound() {
    let phi = gaussian(10, 24, 13);
    let mut rng = TestRng::new(13);
    let u: Vec<f64> = (0..10).map(|_| rng.normal()).collect();
    let mut last = f64::INFINITY;
    for k in 0..8 {
        let eps = 0.1 * k as f64 * norm2(&u) / 0.8 * 0.99;
        let v = bp_denoise(&phi, &u, eps).unwrap().norm1();
        assert!(v <= last * (1.0 + 1e-7), "eps {eps}: {v} > {last}");
        last = v;
    }
}

#[test]
fn bp_denoise_stability_constant_on_tiny_instance() {
    let phi = gaussian(6, 10, 21);
    let mut x = vec![0.0; 10];
    x[4] = 1.0;
    let e = sparse_recovery::ensembles::gen_noise(&sparse_recovery::ensembles::NoiseSpec {
        dim: 6,
        target_norm: 0.1,
        seed: 5,
    })
    .unwrap();
    let u: Vec<f64> = matvec(&phi, &x).iter().zip(&e).map(|(a, b)| a + b).collect();
    let z = bp_denoise(&phi, &u, 0.1).unwrap();
    let c = dist(z.values(), &x) / 0.1;
    println!("stability constant on the 6x10 instance: C = {c:.4}");
    assert!(c.is_finite() && c < 10.0);
}

#[test]
fn warm_start_does_not_change_the_answer() {
    let phi = gaussian(20, 40, 6);
    let mut rng = TestRng::new(6);
    let u: Vec<f64> = (0..20).map(|_| rng.normal()).collect();
    let eps = 0.3 * norm2(&u);
    let cold = bp_denoise(&phi, &u, eps).unwrap();
    for warm in [cold.values().to_vec(), vec![0.0; 40], vec![100.0; 40]] {
        let opts = BarrierOptions { warm_start: Some(warm), ..BarrierOptions::default() };
        let w = bp_denoise_with(&phi, &u, eps, &opts).unwrap();
        assert!((w.norm1() - cold.norm1()).abs() <= 1e-6 * cold.norm1());
    }
}

#[test]
fn reweighted_noiseless_fixed_point() {
    let phi = gaussian(30, 60, 14);
    let mut rng = TestRng::new(14);
    let x = sparse_normal(60, 4, &mut rng);
    let u = matvec(&phi, &x);
    let rep = reweighted_l1(&phi, &u, &RwConfig { max_iters: 3, ..RwConfig::new(0.0) }, Some(&x)).unwrap();
    let errs = rep.errors.unwrap();
    assert!(errs.iter().all(|&e| e < 1e-7), "{errs:?}");
    assert_eq!(rep.iterates.len(), 3);
}

#[test]
fn reweighted_zero_measurements() {
    let phi = gaussian(8, 16, 2);
    let rep = reweighted_l1(&phi, &[0.0; 8], &RwConfig::new(0.1), None).unwrap();
    assert!(rep.iterates.iter().all(|it| it.nnz() == 0));
    assert!(rep.errors.is_none());
}

#[test]
fn reweighted_improves_a_noisy_instance() {
    let phi = gaussian(40, 80, 15);
    let mut rng = TestRng::new(15);
    let x = sparse_normal(80, 8, &mut rng);
    let uc = matvec(&phi, &x);
    let noise = sparse_recovery::ensembles::relative_noise_scaled(&uc, 0.2, 3).unwrap();
    let u: Vec<f64> = uc.iter().zip(&noise.vector).map(|(a, b)| a + b).collect();
    let eps = effective_noise_level(noise.sigma, 40);
    let rep = reweighted_l1(&phi, &u, &RwConfig::new(eps), Some(&x)).unwrap();
    let errs = rep.errors.unwrap();
    assert_eq!(errs.len(), 9);
    for it in &rep.iterates {
        assert!(dist(&matvec(&phi, it.values()), &u) <= eps * (1.0 + 1e-8));
    }
    // The first solve is plain BP with the same ε.
    let plain = bp_denoise(&phi, &u, eps).unwrap();
    assert!((plain.norm1() - rep.iterates[0].norm1()).abs() < 1e-6 * plain.norm1());
}

#[test]
fn stability_schedule_values() {
    assert_eq!(StabilitySchedule::InverseThousandK.at(2), 1.0 / 2000.0);
    assert_eq!(StabilitySchedule::Constant(0.3).at(7), 0.3);
    let bad = RwConfig { schedule: StabilitySchedule::Constant(0.0), ..RwConfig::new(0.1) };
    assert!(bad.validate().is_err());
    assert!(RwConfig { max_iters: 0, ..RwConfig::new(0.1) }.validate().is_err());
    let s = effective_noise_level(2.0, 8);
    assert!((s - 2.0 * (8.0 + 2.0 * 16f64.sqrt()).sqrt()).abs() < 1e-12);
}

/// Independent evaluation of the recursion constants.
fn closed_forms(mu: f64, eps: f64, delta: f64) -> (f64, f64, f64, f64) {
    let rho = 2f64.sqrt() * delta / (1.0 - delta);
    let alpha = 2.0 * (1.0 + delta).sqrt() / (1.0 - delta);
    let e1 = 2.0 * alpha * eps / (1.0 - rho);
    let l = 2.0 * alpha * eps / (1.0 + (1.0 - 4.0 * alpha * eps / mu - 4.0 * alpha * eps * rho / mu).sqrt());
    (rho, alpha, e1, l)
}

#[test]
fn recursion_reference_values() {
    let b = rw_error_recursion(10.0, 0.1, 0.2, 1e-3).unwrap();
    assert!((b.rho - 0.35355339).abs() < 1e-8);
    assert!((b.alpha - 2.73861279).abs() < 1e-8);
    assert!((b.e[0] - 0.84728197).abs() < 1e-7);
    assert!((b.limit - 0.28484337).abs() < 1e-7);
}

#[test]
fn recursion_matches_closed_forms() {
    for &delta in &[0.0, 0.05, 0.1, 0.2, 0.3, 0.4] {
        for &eps in &[0.0, 0.01, 0.1, 0.3] {
            let (rho, alpha, e1, l) = closed_forms(10.0, eps, delta);
            let Ok(b) = rw_error_recursion(10.0, eps, delta, 1e-3) else {
                assert!(10.0 < 4.0 * alpha * eps / (1.0 - rho));
                continue;
            };
            assert!((b.rho - rho).abs() <= 1e-12 && (b.alpha - alpha).abs() <= 1e-12);
            assert!((b.e[0] - e1).abs() <= 1e-9);
            assert!((b.limit - l).abs() <= 1e-9);
            assert!(b.limit <= b.simple_bound() + 1e-12);
            // Fixed point of the recursion.
            let q = l / (10.0 - l);
            assert!(((1.0 + q) * alpha * eps / (1.0 - rho * q) - l).abs() <= 1e-9);
            assert!(b.e.windows(2).all(|w| w[1] <= w[0] + 1e-15));
            assert!(b.e.iter().all(|&v| v >= 0.0));
            assert!((b.e.last().unwrap() - l).abs() <= 1e-3);
            assert_eq!(b.iters_to_converge, b.e.len());
        }
    }
}

#[test]
fn recursion_edge_cases() {
    let z = rw_error_recursion(10.0, 0.0, 0.2, 1e-3).unwrap();
    assert_eq!(z.limit, 0.0);
    assert_eq!(z.e, vec![0.0]);
    assert_eq!(z.iters_to_converge, 1);
    assert!(matches!(rw_error_recursion(0.1, 0.5, 0.2, 1e-3), Err(Error::Hypothesis(_))));
    assert!(matches!(rw_error_recursion(10.0, 0.1, 0.5, 1e-3), Err(Error::Hypothesis(_))));
}

#[test]
fn recursion_iteration_counts_are_monotone_in_delta() {
    for &eps in &[0.01, 0.1, 0.5] {
        let mut last = 0;
        for k in 0..40 {
            let delta = 0.01 * k as f64;
            if let Ok(b) = rw_error_recursion(10.0, eps, delta, 1e-3) {
                assert!(b.iters_to_converge >= last, "eps {eps} delta {delta}");
                last = b.iters_to_converge;
            }
        }
    }
}

#[test]
fn tail_noise_level_formula() {
    let x = sparse_recovery::SparseVector::from_dense(vec![3.0, -1.0, 0.5, 0.0]);
    let got = tail_noise_level(&x, 1, 0.2).unwrap();
    let tail = [1.0f64, 0.5];
    let want = 1.2 * (norm2(&tail) + norm1(&tail)) + 0.2;
    assert!((got - want).abs() < 1e-12);
    assert!(tail_noise_level(&x, 0, 0.2).is_err());
}
