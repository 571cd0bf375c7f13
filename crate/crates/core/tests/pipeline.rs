use pcan_core::census::density_vector;
use pcan_core::pca::abs_cosine;
use pcan_core::pipeline::{default_tau_k, spcan, PcanSettings};
use pcan_core::verify::designs::{er_sample, heterogeneous_block_sample};
use pcan_core::{default_configuration_set, pcan, NetworkSample};

#[test]
fn single_class_partition_reproduces_full_densities() {
    for seed in 0..20u64 {
        let n = 20 + (seed as usize * 7) % 40;
        let q = 0.1 + 0.04 * (seed % 10) as f64;
        let sample = er_sample(6 + seed as usize % 5, n, q, seed).unwrap();
        let settings = PcanSettings {
            k: Some(1),
            seed,
            ..PcanSettings::default()
        };
        let full = pcan(&sample, &settings).unwrap();
        let split = spcan(&sample, &settings).unwrap();
        assert_eq!(split.density.values.as_slice(), full.density.values.as_slice(), "seed {seed}");
        assert_eq!(split.density.row_names, full.density.row_names);
        assert_eq!(split.density.row_means, full.density.row_means);
        assert_eq!(split.pca.eigenvalues, full.pca.eigenvalues);
        assert_eq!(split.pca.scores, full.pca.scores);
    }
}

#[test]
fn spcan_is_deterministic_across_thread_counts() {
    let sample = er_sample(12, 80, 0.15, 3).unwrap();
    let settings = PcanSettings {
        seed: 42,
        ..PcanSettings::default()
    };
    let run = |threads: usize| {
        let pool = rayon::ThreadPoolBuilder::new().num_threads(threads).build().unwrap();
        pool.install(|| spcan(&sample, &settings).unwrap())
    };
    let (a, b) = (run(1), run(3));
    assert_eq!(a.density.values, b.density.values);
    assert_eq!(a.pca.loadings, b.pca.loadings);
    assert_eq!(a.plans, b.plans);
    let other = spcan(&sample, &PcanSettings { seed: 43, ..settings.clone() }).unwrap();
    assert_ne!(other.plans, a.plans);
}

#[test]
fn columns_are_means_over_the_stored_partitions() {
    let sample = er_sample(8, 100, 0.2, 11).unwrap();
    let configs = default_configuration_set();
    let out = spcan(&sample, &PcanSettings::default()).unwrap();
    assert_eq!((out.tau, out.k), (12, 8));
    let raw = out.density.unstandardize(&out.density.values);
    for (i, (g, plan)) in sample.graphs().iter().zip(&out.plans).enumerate() {
        assert!(plan.class_sizes().iter().all(|&s| s >= out.tau));
        let mut sum = vec![0.0; configs.len()];
        for class in plan.classes() {
            let sub = g.induced_subgraph(&class).unwrap();
            for (s, d) in sum.iter_mut().zip(density_vector(&sub, &configs, Default::default()).unwrap()) {
                *s += d;
            }
        }
        for (row, name) in out.density.row_names.iter().enumerate() {
            let j = configs.iter().position(|c| &c.name() == name).unwrap();
            let expect = sum[j] / out.k as f64;
            assert!((raw[(row, i)] - expect).abs() < 1e-12, "{name} graph {i}");
        }
    }
}

#[test]
fn first_component_separates_two_densities() {
    let low = er_sample(20, 50, 0.2, 1).unwrap();
    let high = er_sample(20, 50, 0.5, 2).unwrap();
    let graphs = low.graphs().iter().chain(high.graphs()).cloned().collect();
    let sample = NetworkSample::from_graphs(graphs).unwrap();
    let out = pcan(&sample, &PcanSettings { r: Some(2), ..PcanSettings::default() }).unwrap();
    let s = out.pca.score_column(0);
    let (a, b) = s.split_at(20);
    let (amin, amax) = a.iter().fold((f64::MAX, f64::MIN), |(l, h), &x| (l.min(x), h.max(x)));
    let (bmin, bmax) = b.iter().fold((f64::MAX, f64::MIN), |(l, h), &x| (l.min(x), h.max(x)));
    assert!(amax < bmin || bmax < amin, "score ranges overlap");
}

#[test]
fn all_components_by_default() {
    let sample = heterogeneous_block_sample(20, 40, 8).unwrap();
    let out = pcan(&sample, &PcanSettings::default()).unwrap();
    assert_eq!(out.pca.eigenvalues.len(), 9);
    assert_eq!(out.pca.scores.cols(), 9);
    assert!((out.pca.variance_explained.iter().sum::<f64>() - 1.0).abs() < 1e-12);
}

#[test]
fn defaults_follow_the_smallest_graph() {
    let mut graphs = er_sample(2, 264, 0.1, 0).unwrap().graphs().to_vec();
    graphs.push(er_sample(1, 400, 0.1, 1).unwrap().graphs()[0].clone());
    let sample = NetworkSample::from_graphs(graphs).unwrap();
    assert_eq!(default_tau_k(&sample, &default_configuration_set()).unwrap(), (12, 22));
}

#[test]
fn spcan_leading_loadings_track_pcan_on_er() {
    let sample = er_sample(60, 300, 0.1, 2024).unwrap();
    let full = pcan(&sample, &PcanSettings::default()).unwrap();
    let split = spcan(&sample, &PcanSettings { seed: 1, ..PcanSettings::default() }).unwrap();
    assert_eq!((split.tau, split.k), (12, 25));
    let names: Vec<String> = default_configuration_set().iter().map(|c| c.name()).collect();
    let place = |rows: &[String], v: Vec<f64>| -> Vec<f64> {
        names.iter().map(|n| rows.iter().position(|r| r == n).map_or(0.0, |i| v[i])).collect()
    };
    let a = place(&full.pca.row_names, full.pca.loading(0));
    let b = place(&split.pca.row_names, split.pca.loading(0));
    let cos = abs_cosine(&a, &b);
    println!("PC1 |cosine| = {cos:.4}; pcan rows {:?}", full.pca.row_names);
    assert!(cos >= 0.95, "cosine {cos}");
}
