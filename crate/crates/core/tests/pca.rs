use pcan_core::pca::{
    contributions, covariance, fit, max_residual, orthonormality_error, reconstruct, standardize_rows,
    symmetric_eigen, variance_explained, DensityMatrix,
};
use pcan_core::rng::stream;
use pcan_core::Matrix;
use proptest::prelude::*;
use rand::Rng;

fn names(prefix: &str, k: usize) -> Vec<String> {
    (0..k).map(|i| format!("{prefix}{i}")).collect()
}

/// Correlated random rows: a few latent factors plus noise.
fn random_density(p: usize, n: usize, seed: u64) -> DensityMatrix {
    let mut rng = stream(seed, &[]);
    let factors: Vec<Vec<f64>> = (0..3).map(|_| (0..n).map(|_| rng.gen::<f64>()).collect()).collect();
    let mut raw = Matrix::zeros(p, n);
    for j in 0..p {
        let w: Vec<f64> = (0..3).map(|_| rng.gen_range(-1.0..1.0)).collect();
        for i in 0..n {
            raw[(j, i)] = (0..3).map(|f| w[f] * factors[f][i]).sum::<f64>() + 0.3 * rng.gen::<f64>();
        }
    }
    standardize_rows(&raw, &names("c", p), &names("g", n), true).unwrap()
}

#[test]
fn exactness_on_random_standardized_matrices() {
    for seed in 0..50 {
        let d = random_density(9, 40, seed);
        let sigma = covariance(&d);
        let eig = symmetric_eigen(&sigma).unwrap();
        assert!(max_residual(&sigma, &eig) <= 1e-10);
        assert!(orthonormality_error(&eig.vectors) <= 1e-10);
        let trace_gap = (eig.values.iter().sum::<f64>() - sigma.trace()).abs();
        assert!(trace_gap <= 1e-10 * 9.0, "trace gap {trace_gap}");
        assert!((sigma.trace() - 9.0).abs() < 1e-10);

        let result = fit(&d, None).unwrap();
        for l in 0..9 {
            let s = result.score_column(l);
            let var = s.iter().map(|x| x * x).sum::<f64>() / 40.0;
            let lambda = result.eigenvalues[l];
            assert!((var - lambda).abs() <= 1e-8 * lambda.abs().max(1e-12), "component {l}: {var} vs {lambda}");
        }
        let back = reconstruct(&result, 9).unwrap();
        assert!(back.max_abs_diff(&d.values) <= 1e-10);
        assert!((result.variance_explained.iter().sum::<f64>() - 1.0).abs() < 1e-12);
    }
}

#[test]
fn descending_and_sign_normalized() {
    let d = random_density(9, 40, 99);
    let r = fit(&d, Some(3)).unwrap();
    assert_eq!(r.scores.cols(), 3);
    assert!(r.eigenvalues.windows(2).all(|w| w[0] >= w[1]));
    for l in 0..9 {
        let v = r.loading(l);
        let big = v.iter().cloned().fold(0.0f64, |m, x| if x.abs() > m.abs() { x } else { m });
        assert!(big > 0.0);
    }
}

#[test]
fn reconstruction_error_shrinks_with_rank() {
    let d = random_density(9, 40, 5);
    let r = fit(&d, None).unwrap();
    let mut last = f64::INFINITY;
    for rank in 0..=9 {
        let approx = reconstruct(&r, rank).unwrap();
        let err: f64 = approx
            .as_slice()
            .iter()
            .zip(d.values.as_slice())
            .map(|(a, b)| (a - b) * (a - b))
            .sum::<f64>()
            .sqrt();
        assert!(err <= last + 1e-12);
        last = err;
    }
}

#[test]
fn worked_standardization() {
    let raw = Matrix::from_rows(&[vec![0.0, 1.0, 2.0, 3.0], vec![5.0, 5.0, 5.0, 5.0]]).unwrap();
    let d = standardize_rows(&raw, &names("c", 2), &names("g", 4), true).unwrap();
    assert_eq!(d.p(), 1);
    assert_eq!(d.dropped_rows[0].name, "c1");
    let sd = 1.25f64.sqrt();
    let expect: Vec<f64> = [-1.5, -0.5, 0.5, 1.5].iter().map(|x| x / sd).collect();
    for (a, b) in d.values.row(0).iter().zip(&expect) {
        assert!((a - b).abs() < 1e-15);
    }
    assert!(variance_explained(&[3.0, 1.0], 1).unwrap() == 0.75);
    assert_eq!(contributions(&[3.0, -1.0]).unwrap(), vec![75.0, 25.0]);
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(40))]

    #[test]
    fn eigen_identities_hold_for_any_symmetric_matrix(
        p in 1usize..10,
        entries in prop::collection::vec(-100.0f64..100.0, 100),
    ) {
        let mut m = Matrix::zeros(p, p);
        for i in 0..p {
            for j in i..p {
                m[(i, j)] = entries[i * 10 + j];
                m[(j, i)] = entries[i * 10 + j];
            }
        }
        let e = symmetric_eigen(&m).unwrap();
        let scale = m.frobenius_norm().max(1.0);
        prop_assert!(max_residual(&m, &e) <= 1e-10 * scale);
        prop_assert!(orthonormality_error(&e.vectors) <= 1e-10);
        prop_assert!((e.values.iter().sum::<f64>() - m.trace()).abs() <= 1e-10 * scale);
    }
}
