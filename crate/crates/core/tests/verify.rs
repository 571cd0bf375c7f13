use pcan_core::verify::designs::er_sample;
use pcan_core::verify::*;
use pcan_core::{Kernel, SubgraphConfig};

fn configs3() -> Vec<SubgraphConfig> {
    vec![SubgraphConfig::star(1), SubgraphConfig::star(2), SubgraphConfig::triangle()]
}

#[test]
fn complete_graphs_have_exact_unit_mean() {
    let r = check_mean_density(&Kernel::constant(1.0).unwrap(), SubgraphConfig::cycle5(), 12, 3, 0).unwrap();
    assert_eq!(r.statistic, 1.0);
    assert_eq!(r.status, CheckStatus::Pass);
}

#[test]
fn isolate_has_no_moment_check() {
    assert!(check_mean_density(&Kernel::constant(0.5).unwrap(), SubgraphConfig::isolate(), 10, 5, 0).is_err());
}

#[test]
fn mean_density_on_sparse_er() {
    let r = check_mean_density(&Kernel::constant(0.3).unwrap(), SubgraphConfig::star(1), 40, 300, 4).unwrap();
    assert!(r.passed(), "{r:?}");
    assert!((r.reference - 0.3).abs() < 1e-15);
}

#[test]
fn single_class_estimators_coincide() {
    let r = check_subsample_mean(&Kernel::constant(0.3).unwrap(), SubgraphConfig::triangle(), 30, 1, 12, 20, 1).unwrap();
    assert_eq!(r.metric("mean_difference").unwrap().value, 0.0);
    assert!(r.passed());
}

#[test]
fn block_triangle_subsample_mean() {
    let k = two_block_kernel().unwrap();
    let r = check_subsample_mean(&k, SubgraphConfig::triangle(), 120, 5, 12, 200, 17).unwrap();
    assert!(r.passed(), "{r:?}");
}

#[test]
fn degenerate_kernels_are_skipped() {
    let one = Kernel::constant(1.0).unwrap();
    let r = check_clt_partition_mean(&one, SubgraphConfig::star(1), 10, &[2, 8], 20, 0).unwrap();
    assert_eq!(r.status, CheckStatus::Skipped);
    let r = check_clt_eigen(&one, &configs3(), 48, 4, 12, &[5, 10], 4, 0).unwrap();
    assert_eq!(r.status, CheckStatus::Skipped);
    let zero = Kernel::constant(0.0).unwrap();
    let r = check_clt_eigen(&zero, &configs3(), 48, 4, 12, &[5, 10], 4, 0).unwrap();
    assert_eq!(r.status, CheckStatus::Skipped);
}

#[test]
fn logistic_partition_mean_scales_with_classes() {
    let k = Kernel::logistic(0.3, 0.1).unwrap();
    let r = check_clt_partition_mean(&k, SubgraphConfig::triangle(), 20, &[10, 40], 400, 3).unwrap();
    let m = r.metric("variance_ratio").unwrap();
    assert!(m.pass(), "{m:?}");
    assert!(!r.metric("skewness").unwrap().required);
}

#[test]
fn single_class_comparison_is_exact() {
    let sample = er_sample(10, 40, 0.3, 5).unwrap();
    let opts = CompareOptions { k: Some(1), reps: 1, ..CompareOptions::default() };
    let r = compare_pcan_spcan(&sample, &opts).unwrap();
    assert_eq!(r.statistic, 1.0);
    let pc1 = r.metric("pc1_variance_bracket").unwrap();
    assert_eq!(pc1.lower, Some(pc1.value));
    assert_eq!(pc1.upper, Some(pc1.value));
}

#[test]
fn reports_are_reproducible_and_self_consistent() {
    let a = run_check(CheckName::SubsampleMean, SuiteBudget::Fast, 9).unwrap();
    let b = run_check(CheckName::SubsampleMean, SuiteBudget::Fast, 9).unwrap();
    assert_eq!(a.statistic, b.statistic);
    assert_eq!(a.metrics, b.metrics);
    assert_eq!(a.passed(), a.recompute_pass());
    let json = serde_json::to_string(&a).unwrap();
    let back: CheckReport = serde_json::from_str(&json).unwrap();
    assert_eq!(back.recompute_pass(), a.recompute_pass());
    let skipped = check_clt_partition_mean(&Kernel::constant(0.0).unwrap(), SubgraphConfig::star(1), 10, &[2, 8], 5, 0).unwrap();
    let back: CheckReport = serde_json::from_str(&serde_json::to_string(&skipped).unwrap()).unwrap();
    assert!(back.statistic.is_nan());
    assert_eq!(back.status, CheckStatus::Skipped);
}

#[test]
fn check_names_parse() {
    for name in CheckName::ALL {
        assert_eq!(name.as_str().parse::<CheckName>().unwrap(), name);
    }
    assert!("bogus".parse::<CheckName>().is_err());
}
