mod common;

use common::*;
use sparse_recovery::ensembles::*;
use sparse_recovery::rip::ric_exact;
use sparse_recovery::Error;

#[test]
fn gaussian_golden_values() {
    // Counter stream 42 through Box–Muller, recomputed outside the crate.
    let spec = EnsembleSpec { normalize: false, ..EnsembleSpec::new(Family::Gaussian, 2, 2, 42) };
    let a = gen_matrix(&spec).unwrap();
    let golden = [0.4147197504315305, 0.6526812221519427, -0.8918862136277562, 1.3268335628141064];
    for (got, want) in a.as_slice().iter().zip(golden) {
        assert!((got - want).abs() <= 4.0 * f64::EPSILON * want.abs(), "{got} vs {want}");
    }
    let spec0 = EnsembleSpec { normalize: false, ..EnsembleSpec::new(Family::Gaussian, 1, 4, 0) };
    let golden0 = [-0.452757740217458, 0.20776603893419193, 2.650605812079669, -0.4904228253986477];
    for (got, want) in gen_matrix(&spec0).unwrap().as_slice().iter().zip(golden0) {
        assert!((got - want).abs() <= 4.0 * f64::EPSILON * want.abs(), "{got} vs {want}");
    }
}

#[test]
fn bernoulli_entries_are_scaled_signs() {
    for seed in 0..5 {
        let a = gen_matrix(&EnsembleSpec::new(Family::Bernoulli, 9, 20, seed)).unwrap();
        assert!(a.as_slice().iter().all(|&v| v == 1.0 / 3.0 || v == -1.0 / 3.0));
    }
}

#[test]
fn full_partial_dct_is_an_isometry() {
    let phi = gen_matrix(&EnsembleSpec::new(Family::PartialDct, 8, 8, 3)).unwrap();
    for r in 1..=4 {
        assert!(ric_exact(&phi, r).unwrap().delta < 1e-12);
    }
}

#[test]
fn partial_dct_rows_are_orthonormal_before_scaling() {
    for (m, d, seed) in [(5, 16, 1), (12, 32, 2), (32, 32, 3)] {
        let spec = EnsembleSpec { normalize: false, ..EnsembleSpec::new(Family::PartialDct, m, d, seed) };
        let a = gen_matrix(&spec).unwrap();
        for i in 0..m {
            for k in 0..m {
                let g: f64 = a.row(i).iter().zip(a.row(k)).map(|(x, y)| x * y).sum();
                assert!((g - if i == k { 1.0 } else { 0.0 }).abs() < 1e-10);
            }
        }
        assert!(a.as_slice().iter().all(|v| v.abs() <= (2.0 / d as f64).sqrt() + 1e-15));
    }
}

#[test]
fn partial_dct_rejects_more_rows_than_columns() {
    assert!(matches!(gen_matrix(&EnsembleSpec::new(Family::PartialDct, 9, 8, 0)), Err(Error::InvalidParameter(_))));
    assert!(gen_matrix(&EnsembleSpec::new(Family::Gaussian, 0, 8, 0)).is_err());
}

#[test]
fn generators_are_deterministic() {
    for family in [Family::Gaussian, Family::Bernoulli, Family::PartialDct] {
        let spec = EnsembleSpec::new(family, 10, 30, 99);
        let a = gen_matrix(&spec).unwrap();
        let b = gen_matrix(&spec).unwrap();
        assert!(a.as_slice().iter().zip(b.as_slice()).all(|(x, y)| x.to_bits() == y.to_bits()));
        let c = gen_matrix(&EnsembleSpec { seed: 100, ..spec }).unwrap();
        assert_ne!(a, c);
    }
    let s = SignalSpec::compressible(50, 7, 0.5, 4);
    assert_eq!(gen_signal(&s).unwrap(), gen_signal(&s).unwrap());
    let n = NoiseSpec { dim: 12, target_norm: 0.5, seed: 8 };
    assert_eq!(gen_noise(&n).unwrap(), gen_noise(&n).unwrap());
    assert_eq!(relative_noise(&[1.0, 2.0], 0.3, 5).unwrap(), relative_noise(&[1.0, 2.0], 0.3, 5).unwrap());
}

#[test]
fn gaussian_column_norms_concentrate() {
    for seed in 0..5 {
        let a = gen_matrix(&EnsembleSpec::new(Family::Gaussian, 64, 128, seed)).unwrap();
        let norms = a.column_norms_sq();
        let mean = norms.iter().sum::<f64>() / norms.len() as f64;
        assert!((0.8..=1.2).contains(&mean), "seed {seed}: {mean}");
    }
}

#[test]
fn signal_examples() {
    let z = gen_signal(&SignalSpec::flat(10, 0, 1)).unwrap();
    assert_eq!(z.nnz(), 0);
    let full = gen_signal(&SignalSpec::flat(10, 10, 1)).unwrap();
    assert!(full.values().iter().all(|&v| v == 1.0));
    let c = gen_signal(&SignalSpec::compressible(40, 5, 0.5, 2)).unwrap();
    let mut mags: Vec<f64> = c.values().iter().map(|v| v.abs()).filter(|&v| v > 0.0).collect();
    mags.sort_by(|a, b| b.total_cmp(a));
    let want = [1.0, 0.25, 1.0 / 9.0, 1.0 / 16.0, 1.0 / 25.0];
    for (g, w) in mags.iter().zip(want) {
        assert!((g - w).abs() < 1e-15);
    }
    assert!(gen_signal(&SignalSpec::flat(3, 4, 0)).is_err());
    assert!(gen_signal(&SignalSpec::compressible(3, 2, 1.5, 0)).is_err());
}

#[test]
fn signal_support_size_is_exact() {
    for seed in 0..30 {
        for s in [1, 5, 17] {
            let x = gen_signal(&SignalSpec::flat(64, s, seed).with_signs(SignMode::Random)).unwrap();
            assert_eq!(x.nnz(), s);
            assert_eq!(x.support().len(), s);
            assert!(x.values().iter().all(|v| *v == 0.0 || v.abs() == 1.0));
        }
    }
}

#[test]
fn noise_examples() {
    assert_eq!(gen_noise(&NoiseSpec { dim: 4, target_norm: 0.0, seed: 1 }).unwrap(), vec![0.0; 4]);
    let e = gen_noise(&NoiseSpec { dim: 30, target_norm: 0.5, seed: 1 }).unwrap();
    assert!((norm2(&e) - 0.5).abs() < 1e-12);
    assert!(gen_noise(&NoiseSpec { dim: 4, target_norm: -1.0, seed: 1 }).is_err());

    assert_eq!(relative_noise(&[3.0, 4.0], 0.0, 2).unwrap(), vec![0.0, 0.0]);
    let r = relative_noise(&[3.0, 4.0, 0.0], 0.2, 2).unwrap();
    assert!((norm2(&r) - 1.0).abs() < 1e-12);
    assert_eq!(relative_noise(&[0.0, 0.0], 0.2, 2), Err(Error::ZeroVector));
}

#[test]
fn scaled_noise_reports_its_entry_scale() {
    let u = [1.0, -2.0, 0.5, 3.0];
    let n = relative_noise_scaled(&u, 0.2, 6).unwrap();
    let g: Vec<f64> = n.vector.iter().map(|v| v / n.sigma).collect();
    let spec = NoiseSpec { dim: 4, target_norm: norm2(&g), seed: 6 };
    let again = gen_noise(&spec).unwrap();
    assert!(again.iter().zip(&g).all(|(a, b)| (a - b).abs() < 1e-12));
}
