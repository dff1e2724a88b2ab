mod common;

use common::*;
use proptest::prelude::*;
use sparse_recovery::convex::bp_equality;
use sparse_recovery::ensembles::{dct_matrix, gen_matrix, EnsembleSpec, Family};
use sparse_recovery::greedy::{cosamp, omp, romp, CosampConfig, Halting};
use sparse_recovery::kaczmarz::project_row;
use sparse_recovery::linalg::least_squares;
use sparse_recovery::{LsConfig, SparseVector};

fn planted(d: usize) -> impl Strategy<Value = (Vec<f64>, usize)> {
    (1usize..=8).prop_flat_map(move |s| {
        (prop::sample::subsequence((0..d).collect::<Vec<_>>(), s), prop::collection::vec(0.5..3.0f64, s), prop::collection::vec(any::<bool>(), s))
            .prop_map(move |(supp, mags, signs)| {
                let mut x = vec![0.0; d];
                for ((i, m), neg) in supp.into_iter().zip(mags).zip(signs) {
                    x[i] = if neg { -m } else { m };
                }
                (x, s)
            })
    })
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn orthogonal_measurements_are_inverted_exactly((x, s) in planted(32)) {
        let phi = dct_matrix(32);
        let u = matvec(&phi, &x);
        prop_assert!(dist(omp(&phi, &u, s).unwrap().estimate.values(), &x) < 1e-8);
        prop_assert!(dist(romp(&phi, &u, s).unwrap().estimate.values(), &x) < 1e-8);
        let c = cosamp(&phi, &u, &CosampConfig::new(s, Halting::SampleNorm(1e-12))).unwrap();
        prop_assert!(dist(c.estimate.values(), &x) < 1e-8);
        prop_assert!(dist(bp_equality(&phi, &u).unwrap().values(), &x) < 1e-8);
    }

    #[test]
    fn greedy_supports_respect_their_caps((x, s) in planted(48), seed in any::<u64>()) {
        let phi = gen_matrix(&EnsembleSpec::new(Family::Gaussian, 24, 48, seed)).unwrap();
        let u = matvec(&phi, &x);
        let o = omp(&phi, &u, s).unwrap();
        prop_assert!(o.support.len() <= s && o.iterations <= s);
        let r = romp(&phi, &u, s).unwrap();
        prop_assert!(r.support.len() <= 2 * s && r.iterations <= s);
        let c = cosamp(&phi, &u, &CosampConfig::new(s, Halting::SampleNorm(1e-10))).unwrap();
        prop_assert!(c.estimate.nnz() <= s);
        prop_assert!(c.selected.iter().all(|om| om.len() <= 2 * s));
        for rep in [&o, &r] {
            prop_assert_eq!(rep.residual_history.len(), rep.iterations);
            prop_assert!(rep.residual_history.windows(2).all(|w| w[1] <= w[0] * (1.0 + 1e-10)));
        }
    }

    #[test]
    fn least_squares_residual_is_orthogonal_to_range(seed in any::<u64>(), u in prop::collection::vec(-2.0..2.0f64, 12)) {
        let a = gen_matrix(&EnsembleSpec::new(Family::Gaussian, 12, 5, seed)).unwrap();
        let sol = least_squares(&a, &u, &[0.0; 5], &LsConfig::default()).unwrap();
        let r: Vec<f64> = u.iter().zip(matvec(&a, &sol.z)).map(|(p, q)| p - q).collect();
        let g = a.adjoint_matvec(&r).unwrap();
        prop_assert!(norm2(&g) <= 1e-9 * (1.0 + norm2(&u)));
    }

    #[test]
    fn projection_is_idempotent(x in prop::collection::vec(-5.0..5.0f64, 6), a in prop::collection::vec(0.1..5.0f64, 6), b in -5.0..5.0f64) {
        let p = project_row(&x, &a, b).unwrap();
        let q = project_row(&p, &a, b).unwrap();
        prop_assert!(dist(&p, &q) <= 1e-12 * (1.0 + norm2(&p)));
    }

    #[test]
    fn pruning_keeps_the_largest_entries(v in prop::collection::vec(-5.0..5.0f64, 1..30), s in 0usize..30) {
        let p = SparseVector::from_dense(v.clone()).pruned(s);
        prop_assert_eq!(p.nnz(), s.min(v.iter().filter(|x| **x != 0.0).count()));
        let kept_min = p.support().iter().map(|i| v[i].abs()).fold(f64::INFINITY, f64::min);
        for (i, x) in v.iter().enumerate() {
            if !p.support().contains(i) {
                prop_assert!(x.abs() <= kept_min);
            } else {
                prop_assert_eq!(p.get(i), *x);
            }
        }
    }
}
