use std::time::Instant;

use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use super::stats::{excess_kurtosis, mean, median, min_max, skewness, std_error, variance};
use super::{CheckReport, Metric};
use crate::census::{default_configuration_set, density, CountMode, SubgraphConfig};
use crate::error::{Error, Result};
use crate::graph::NetworkSample;
use crate::krg::{kernel_moment, sample_graph, Kernel, KernelMoment, MomentBudget, MomentMethod};
use crate::pca::abs_cosine;
use crate::pipeline::{mean_density_vector, pcan, resolve_tau_k, spcan, PcanSettings};
use crate::rng::derive_seed;

/// Path component reserved for the moment's Monte Carlo stream.
const MOMENT_STREAM: u64 = u64::MAX;

fn moment(kernel: &Kernel, config: SubgraphConfig, seed: u64) -> Result<KernelMoment> {
    let budget = MomentBudget {
        seed: derive_seed(seed, &[MOMENT_STREAM]),
        ..MomentBudget::default()
    };
    kernel_moment(kernel, config, MomentMethod::Auto, &budget)
}

/// `diff / scale`, with `0/0 = 0`.
fn standardized(diff: f64, scale: f64) -> f64 {
    if diff == 0.0 {
        0.0
    } else {
        diff / scale
    }
}

fn require(cond: bool, msg: impl FnOnce() -> String) -> Result<()> {
    if cond {
        Ok(())
    } else {
        Err(Error::InvalidArgument(msg()))
    }
}

/// Mean copy density of `config` over `graphs` samples against the kernel
/// moment. Passes when `|mean - mu| <= 4 (sd / sqrt(N) + moment error)`.
pub fn check_mean_density(
    kernel: &Kernel,
    config: SubgraphConfig,
    n: usize,
    graphs: usize,
    seed: u64,
) -> Result<CheckReport> {
    let start = Instant::now();
    require(graphs >= 2, || format!("need at least 2 graphs, got {graphs}"))?;
    let mu = moment(kernel, config, seed)?;
    let densities: Vec<f64> = (0..graphs)
        .into_par_iter()
        .map(|i| {
            let g = sample_graph(n, kernel, derive_seed(seed, &[i as u64])).graph;
            density(&g, config, CountMode::Copies)
        })
        .collect::<Result<_>>()?;
    let m = mean(&densities);
    let se = std_error(&densities);
    let scale = se + mu.error_estimate;

    let mut report = CheckReport::new("mean_density", seed);
    report.statistic = m;
    report.reference = mu.value;
    report.z_or_ratio = standardized(m - mu.value, scale);
    report.metrics.push(Metric::at_most("abs_error", (m - mu.value).abs(), 4.0 * scale));
    report.replicates.insert("graphs".into(), graphs);
    report.notes.push(format!(
        "{config} on n = {n}, kernel {kernel}, moment by {:?} (error {:.3e})",
        mu.method, mu.error_estimate
    ));
    report.runtime_secs = start.elapsed().as_secs_f64();
    Ok(report.finish())
}

/// Full-graph density against the partition-averaged density over `reps`
/// independent graphs; both should estimate the kernel moment.
pub fn check_subsample_mean(
    kernel: &Kernel,
    config: SubgraphConfig,
    n: usize,
    k: usize,
    tau: usize,
    reps: usize,
    seed: u64,
) -> Result<CheckReport> {
    let start = Instant::now();
    require(reps >= 2, || format!("need at least 2 replicates, got {reps}"))?;
    resolve_tau_k(n, &[config], Some(tau), Some(k))?;
    let mu = moment(kernel, config, seed)?;
    let pairs: Vec<(f64, f64)> = (0..reps)
        .into_par_iter()
        .map(|r| {
            let r = r as u64;
            let g = sample_graph(n, kernel, derive_seed(seed, &[r, 0])).graph;
            let full = density(&g, config, CountMode::Copies)?;
            let (_, part) = mean_density_vector(&g, &[config], CountMode::Copies, k, tau, derive_seed(seed, &[r, 1]))?;
            Ok((full, part[0]))
        })
        .collect::<Result<_>>()?;
    let (full, part): (Vec<f64>, Vec<f64>) = pairs.into_iter().unzip();
    let (m_full, m_part) = (mean(&full), mean(&part));
    let (se_full, se_part) = (std_error(&full), std_error(&part));
    // Conservative: ignores the positive correlation between the two
    // estimators computed on the same graph.
    let combined = se_full.hypot(se_part);
    let err = mu.error_estimate;

    let mut report = CheckReport::new("subsample_mean", seed);
    report.statistic = m_part;
    report.reference = mu.value;
    report.z_or_ratio = standardized(m_part - mu.value, se_part + err);
    report.metrics = vec![
        Metric::at_most("mean_difference", (m_full - m_part).abs(), 4.0 * combined),
        Metric::at_most("full_vs_moment", (m_full - mu.value).abs(), 4.0 * (se_full + err)),
        Metric::at_most("partition_vs_moment", (m_part - mu.value).abs(), 4.0 * (se_part + err)),
    ];
    report.replicates.insert("graphs".into(), reps);
    report.notes.push(format!(
        "{config}, n = {n}, K = {k}, tau = {tau}, kernel {kernel}; full mean {m_full:.6}, partition mean {m_part:.6}"
    ));
    report.runtime_secs = start.elapsed().as_secs_f64();
    Ok(report.finish())
}

/// Variance scaling and shape of the partition mean with the class size
/// fixed at `n_per_part`, so graph `r` at `K` classes has `K n_per_part`
/// vertices.
pub fn check_clt_partition_mean(
    kernel: &Kernel,
    config: SubgraphConfig,
    n_per_part: usize,
    k_list: &[usize],
    reps: usize,
    seed: u64,
) -> Result<CheckReport> {
    let start = Instant::now();
    require(k_list.len() >= 2, || "need at least two values of K".into())?;
    require(reps >= 2, || format!("need at least 2 replicates, got {reps}"))?;
    let (k_first, k_last) = (k_list[0], k_list[k_list.len() - 1]);
    require(k_first < k_last, || format!("K list must increase, got {k_list:?}"))?;
    let mut report = CheckReport::new("clt_partition_mean", seed);

    let mut samples = Vec::with_capacity(k_list.len());
    for (j, &k) in k_list.iter().enumerate() {
        let n = k * n_per_part;
        resolve_tau_k(n, &[config], Some(n_per_part), Some(k))?;
        let values: Vec<f64> = (0..reps)
            .into_par_iter()
            .map(|r| {
                let path = [j as u64, r as u64];
                let g = sample_graph(n, kernel, derive_seed(seed, &path)).graph;
                let split = derive_seed(seed, &[j as u64, r as u64, 1]);
                let (_, m) = mean_density_vector(&g, &[config], CountMode::Copies, k, n_per_part, split)?;
                Ok(m[0])
            })
            .collect::<Result<_>>()?;
        report.replicates.insert(format!("reps_K{k}"), reps);
        samples.push(values);
    }

    let vars: Vec<f64> = samples.iter().map(|s| variance(s)).collect();
    for (&k, &v) in k_list.iter().zip(&vars) {
        report.notes.push(format!("K = {k}: var = {v:.6e}"));
    }
    if let Some((k, _)) = k_list.iter().zip(&vars).find(|(_, &v)| v.is_nan() || v <= 0.0) {
        report.runtime_secs = start.elapsed().as_secs_f64();
        return Ok(report.skipped(format!("degenerate: zero variance of the partition mean at K = {k}")));
    }
    let expected = k_last as f64 / k_first as f64;
    let ratio = vars[0] / vars[vars.len() - 1];
    report.statistic = ratio;
    report.reference = expected;
    report.z_or_ratio = ratio / expected;
    report.metrics.push(Metric::within("variance_ratio", ratio, 0.75 * expected, expected / 0.75));

    let last = &samples[samples.len() - 1];
    let (g1, g2) = (skewness(last), excess_kurtosis(last));
    let mut shape = vec![
        Metric::within("skewness", g1, -0.25, 0.25),
        Metric::within("excess_kurtosis", g2, -0.5, 0.5),
    ];
    if reps < 2000 {
        shape = shape.into_iter().map(Metric::informational).collect();
        report.notes.push("shape bands apply only with at least 2000 replicates".into());
    }
    report.metrics.extend(shape);
    report.notes.push(format!("{config}, class size {n_per_part}, kernel {kernel}"));
    report.runtime_secs = start.elapsed().as_secs_f64();
    Ok(report.finish())
}

struct EigenRun {
    gamma: f64,
    second: f64,
    vector: Vec<f64>,
    rows: Vec<String>,
    flagged: bool,
}

/// Sampling variability of the leading eigenvalue and eigenvector of the
/// unstandardized sPCAN covariance across sample sizes `n_list`.
///
/// `gamma_1` is not known in closed form; the pooled Monte Carlo mean at
/// each sample size stands in for it.
#[allow(clippy::too_many_arguments)]
pub fn check_clt_eigen(
    kernel: &Kernel,
    configs: &[SubgraphConfig],
    n: usize,
    k: usize,
    tau: usize,
    n_list: &[usize],
    reps: usize,
    seed: u64,
) -> Result<CheckReport> {
    let start = Instant::now();
    require(n_list.len() >= 2, || "need at least two sample sizes".into())?;
    require(n_list.iter().all(|&s| s >= 2), || "sample sizes must be at least 2".into())?;
    require(reps >= 2, || format!("need at least 2 replicates, got {reps}"))?;
    resolve_tau_k(n, configs, Some(tau), Some(k))?;
    let mut report = CheckReport::new("clt_eigen", seed);

    let mut per_size = Vec::with_capacity(n_list.len());
    for (j, &size) in n_list.iter().enumerate() {
        let runs: Vec<Result<EigenRun>> = (0..reps)
            .into_par_iter()
            .map(|r| {
                let base = derive_seed(seed, &[j as u64, r as u64]);
                let graphs = (0..size)
                    .map(|i| sample_graph(n, kernel, derive_seed(base, &[i as u64])).graph)
                    .collect();
                let sample = NetworkSample::from_graphs(graphs)?;
                let settings = PcanSettings {
                    configs: configs.to_vec(),
                    r: Some(1),
                    mode: CountMode::Copies,
                    unit_sd: false,
                    seed: derive_seed(base, &[u64::MAX]),
                    k: Some(k),
                    tau: Some(tau),
                };
                let out = spcan(&sample, &settings)?;
                let pca = out.pca;
                Ok(EigenRun {
                    gamma: pca.eigenvalues[0],
                    second: pca.eigenvalues.get(1).copied().unwrap_or(0.0),
                    vector: pca.loading(0),
                    rows: pca.row_names,
                    flagged: pca.near_degenerate.contains(&0),
                })
            })
            .collect();
        let mut ok = Vec::with_capacity(reps);
        for run in runs {
            match run {
                Ok(run) => ok.push(run),
                Err(Error::NothingToAnalyze) => {
                    report.runtime_secs = start.elapsed().as_secs_f64();
                    return Ok(report.skipped(
                        "assumption gamma_1 > gamma_2 violated: every density row has zero variance",
                    ));
                }
                Err(e) => return Err(e),
            }
        }
        report.replicates.insert(format!("reps_N{size}"), reps);
        per_size.push(ok);
    }

    let rows = &per_size[0][0].rows;
    if per_size.iter().flatten().any(|run| &run.rows != rows) {
        report.runtime_secs = start.elapsed().as_secs_f64();
        return Ok(report.skipped("configurations dropped for zero variance differ between replicates"));
    }

    let mut v = Vec::new();
    let mut spread = Vec::new();
    let mut gamma_bar = Vec::new();
    for (runs, &size) in per_size.iter().zip(n_list) {
        let gammas: Vec<f64> = runs.iter().map(|r| r.gamma).collect();
        let gaps: Vec<f64> = runs.iter().map(|r| r.gamma - r.second).collect();
        let flagged = runs.iter().filter(|r| r.flagged).count();
        let sd = variance(&gammas).sqrt();
        if 2 * flagged > runs.len() || mean(&gaps) < 3.0 * sd {
            report.runtime_secs = start.elapsed().as_secs_f64();
            return Ok(report.skipped(format!(
                "assumption gamma_1 > gamma_2 violated at N = {size}: mean gap {:.3e} vs sd(gamma_1) {sd:.3e}",
                mean(&gaps)
            )));
        }
        let g = mean(&gammas);
        gamma_bar.push(g);
        v.push(size as f64 * variance(&gammas));
        spread.push(size as f64 * eigenvector_spread(runs));
        report.notes.push(format!(
            "N = {size}: mean gamma_1 = {g:.6e}, N var = {:.6e}, N E|w - w_bar|^2 = {:.6e}",
            v[v.len() - 1],
            spread[spread.len() - 1]
        ));
    }

    let last = v.len() - 1;
    let reference = 2.0 * gamma_bar[last] * gamma_bar[last];
    report.statistic = v[last];
    report.reference = reference;
    report.z_or_ratio = v[last] / reference;
    report.metrics = vec![
        Metric::within("variance_stability", v[last] / v[0], 0.5, 2.0),
        Metric::within("variance_vs_2gamma2", v[last] / reference, 0.5, 2.0),
        Metric::within("eigenvector_stability", spread[last] / spread[0], 0.5, 2.0),
    ];
    report.notes.push(format!(
        "configs {}, n = {n}, K = {k}, tau = {tau}, kernel {kernel}; latents redrawn per replicate",
        names(configs)
    ));
    report.runtime_secs = start.elapsed().as_secs_f64();
    Ok(report.finish())
}

/// Mean squared distance of sign-aligned leading eigenvectors to their mean.
fn eigenvector_spread(runs: &[EigenRun]) -> f64 {
    let anchor = &runs[0].vector;
    let p = anchor.len();
    let aligned: Vec<Vec<f64>> = runs
        .iter()
        .map(|r| {
            let d: f64 = r.vector.iter().zip(anchor).map(|(a, b)| a * b).sum();
            let s = if d < 0.0 { -1.0 } else { 1.0 };
            r.vector.iter().map(|x| s * x).collect()
        })
        .collect();
    let center: Vec<f64> = (0..p).map(|i| aligned.iter().map(|w| w[i]).sum::<f64>() / runs.len() as f64).collect();
    aligned
        .iter()
        .map(|w| w.iter().zip(&center).map(|(a, b)| (a - b) * (a - b)).sum::<f64>())
        .sum::<f64>()
        / runs.len() as f64
}

fn names(configs: &[SubgraphConfig]) -> String {
    configs.iter().map(|c| c.name()).collect::<Vec<_>>().join(",")
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct CompareOptions {
    pub configs: Vec<SubgraphConfig>,
    pub mode: CountMode,
    pub unit_sd: bool,
    pub k: Option<usize>,
    pub tau: Option<usize>,
    pub reps: usize,
    pub seed: u64,
    pub min_cosine: f64,
    /// Required PCAN/sPCAN wall-clock ratio; enforced only when the smallest
    /// graph has at least [`CompareOptions::speed_min_vertices`] vertices.
    pub min_speed_ratio: f64,
    pub speed_min_vertices: usize,
}

impl Default for CompareOptions {
    fn default() -> Self {
        CompareOptions {
            configs: default_configuration_set(),
            mode: CountMode::Copies,
            unit_sd: true,
            k: None,
            tau: None,
            reps: 100,
            seed: 0,
            min_cosine: 0.9,
            min_speed_ratio: 1.0,
            speed_min_vertices: 500,
        }
    }
}

/// Runs PCAN once and sPCAN `reps` times on the same sample and compares
/// leading loadings, variance shares and wall-clock time.
pub fn compare_pcan_spcan(sample: &NetworkSample, opts: &CompareOptions) -> Result<CheckReport> {
    let start = Instant::now();
    require(opts.reps >= 1, || "need at least one sPCAN run".into())?;
    let settings = PcanSettings {
        configs: opts.configs.clone(),
        r: None,
        mode: opts.mode,
        unit_sd: opts.unit_sd,
        seed: opts.seed,
        k: opts.k,
        tau: opts.tau,
    };
    let (tau, k) = resolve_tau_k(sample.n_min(), &opts.configs, opts.tau, opts.k)?;

    let t0 = Instant::now();
    let full = pcan(sample, &settings)?;
    let pcan_secs = t0.elapsed().as_secs_f64();

    let all_names: Vec<String> = opts.configs.iter().map(|c| c.name()).collect();
    let reference = expand(&all_names, &full.pca.row_names, &full.pca.loading(0));
    let mut cosines = Vec::with_capacity(opts.reps);
    let mut shares: Vec<Vec<f64>> = Vec::with_capacity(opts.reps);
    let mut spcan_secs = Vec::with_capacity(opts.reps);
    // Sequential so each timing sees the whole worker pool.
    for rep in 0..opts.reps {
        let run_settings = PcanSettings {
            seed: derive_seed(opts.seed, &[rep as u64]),
            ..settings.clone()
        };
        let t = Instant::now();
        let out = spcan(sample, &run_settings)?;
        spcan_secs.push(t.elapsed().as_secs_f64());
        let loading = expand(&all_names, &out.pca.row_names, &out.pca.loading(0));
        cosines.push(abs_cosine(&reference, &loading));
        shares.push(out.pca.variance_explained.clone());
    }

    let med = median(&cosines);
    let speed = pcan_secs / mean(&spcan_secs);
    let mut report = CheckReport::new("compare_pcan_spcan", opts.seed);
    report.statistic = med;
    report.reference = opts.min_cosine;
    report.z_or_ratio = speed;
    report.metrics.push(Metric::at_least("median_pc1_cosine", med, opts.min_cosine));
    let mut speed_metric = Metric::at_least("speed_ratio", speed, opts.min_speed_ratio);
    if sample.n_min() < opts.speed_min_vertices {
        speed_metric = speed_metric.informational();
    }
    report.metrics.push(speed_metric);
    for l in 0..full.pca.variance_explained.len().min(2) {
        let spread: Vec<f64> = shares.iter().filter_map(|s| s.get(l).copied()).collect();
        let (lo, hi) = min_max(&spread);
        report.metrics.push(
            Metric::within(format!("pc{}_variance_bracket", l + 1), full.pca.variance_explained[l], lo, hi)
                .informational(),
        );
    }
    let (cmin, _) = min_max(&cosines);
    report.replicates.insert("spcan_runs".into(), opts.reps);
    report.replicates.insert("graphs".into(), sample.len());
    report.notes.push(format!(
        "tau = {tau}, K = {k}; PCAN {pcan_secs:.3} s, mean sPCAN {:.3} s; min PC1 cosine {cmin:.4}",
        mean(&spcan_secs)
    ));
    report.runtime_secs = start.elapsed().as_secs_f64();
    Ok(report.finish())
}

/// Places `values` (indexed by `present`) into the order of `all`, zero
/// where a row was dropped.
fn expand(all: &[String], present: &[String], values: &[f64]) -> Vec<f64> {
    all.iter()
        .map(|name| present.iter().position(|p| p == name).map_or(0.0, |i| values[i]))
        .collect()
}
