mod common;

use common::*;
use proptest::prelude::*;
use sparse_recovery::ensembles::{gen_matrix, EnsembleSpec, Family};
use sparse_recovery::greedy::{prune, regularize};
use sparse_recovery::linalg::top_k;
use sparse_recovery::rip::ric_exact;
use sparse_recovery::{IndexSet, SparseVector};

fn vector(max_len: usize) -> impl Strategy<Value = Vec<f64>> {
    prop::collection::vec(prop_oneof![3 => -10.0..10.0f64, 1 => Just(0.0)], 1..=max_len)
}

fn sparse(d: usize, s: usize) -> impl Strategy<Value = Vec<f64>> {
    (prop::sample::subsequence((0..d).collect::<Vec<_>>(), 0..=s), prop::collection::vec(-5.0..5.0f64, s))
        .prop_map(move |(supp, vals)| {
            let mut x = vec![0.0; d];
            for (i, v) in supp.into_iter().zip(vals) {
                x[i] = v;
            }
            x
        })
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(1000))]

    #[test]
    fn tail_is_bounded_by_scaled_l1(v in vector(40), t_frac in 0.0..1.0f64) {
        let t = 1 + (t_frac * v.len() as f64) as usize % v.len();
        let head = SparseVector::from_dense(v.clone()).pruned(t);
        let tail = dist(&v, head.values());
        prop_assert!(tail <= norm1(&v) / (2.0 * (t as f64).sqrt()) * (1.0 + 1e-12) + 1e-300);
    }

    #[test]
    fn regularized_subset_keeps_a_log_fraction_of_energy(v in vector(64).prop_filter("m >= 2", |v| v.len() >= 2)) {
        let m = v.len();
        let j0 = regularize(&IndexSet::full(m), &v);
        let on: Vec<f64> = j0.iter().map(|i| v[i]).collect();
        prop_assert!(norm2(&on) >= norm2(&v) / (2.5 * (m as f64).log2().sqrt()) * (1.0 - 1e-12));
        let (lo, hi) = on.iter().fold((f64::INFINITY, 0.0f64), |(lo, hi), x| (lo.min(x.abs()), hi.max(x.abs())));
        prop_assert!(hi <= 2.0 * lo);
    }

    #[test]
    fn pruning_at_most_doubles_distance(
        (x, b, s) in (1usize..8).prop_flat_map(|s| (sparse(24, s), prop::collection::vec(-5.0..5.0f64, 24), Just(s)))
    ) {
        let bs = prune(&SparseVector::from_dense(b.clone()), s);
        prop_assert!(bs.nnz() <= s);
        prop_assert!(dist(&x, bs.values()) <= 2.0 * dist(&x, &b) * (1.0 + 1e-12));
    }

    #[test]
    fn merged_support_has_at_most_three_s(
        (y, a, s) in (1usize..10).prop_flat_map(|s| (prop::collection::vec(-5.0..5.0f64, 40), sparse(40, s), Just(s)))
    ) {
        let omega = top_k(&y, 2 * s).unwrap();
        let t = omega.union(SparseVector::from_dense(a).support());
        prop_assert!(t.len() <= 3 * s);
        prop_assert!(omega.is_subset(&t));
    }

    #[test]
    fn energy_bound_with_exact_constants(seed in any::<u64>(), r in 1usize..4, x in prop::collection::vec(-3.0..3.0f64, 8)) {
        let phi = gen_matrix(&EnsembleSpec::new(Family::Gaussian, 5, 8, seed)).unwrap();
        let delta = ric_exact(&phi, r).unwrap().delta;
        let lhs = norm2(&matvec(&phi, &x));
        let rhs = (1.0 + delta).sqrt() * (norm2(&x) + norm1(&x) / (r as f64).sqrt());
        prop_assert!(lhs <= rhs * (1.0 + 1e-12) + 1e-300);
    }

    #[test]
    fn doubled_order_controls_higher_orders(seed in any::<u64>(), r in 1usize..4) {
        let phi = gen_matrix(&EnsembleSpec::new(Family::Gaussian, 6, 8, seed)).unwrap();
        let base = ric_exact(&phi, (2 * r).min(8)).unwrap().delta;
        for c in 1..=8 / r {
            let dc = ric_exact(&phi, c * r).unwrap().delta;
            prop_assert!(dc <= c as f64 * base + 1e-12, "c {} r {}: {} > {}", c, r, dc, c as f64 * base);
        }
    }
}
