//! End-to-end embeddings: [`pcan`] on full-graph densities and [`spcan`] on
//! densities averaged over random vertex partitions.

use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::census::{density_vector, CountMode, SubgraphConfig};
use crate::error::{Error, Result};
use crate::graph::{partition, Graph, NetworkSample, PartitionPlan};
use crate::pca::{fit, standardize_rows, DensityMatrix, Matrix, PcaResult};
use crate::rng::derive_seed;

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct PcanSettings {
    pub configs: Vec<SubgraphConfig>,
    /// Components to score; `None` keeps all of them.
    pub r: Option<usize>,
    pub mode: CountMode,
    /// Scale each density row to unit standard deviation after centering.
    pub unit_sd: bool,
    /// Master seed for the partitions drawn by [`spcan`].
    pub seed: u64,
    /// Partition classes per graph; defaults to `floor(n_min / tau)`.
    pub k: Option<usize>,
    /// Minimum class size; defaults to twice the largest configuration.
    pub tau: Option<usize>,
}

impl Default for PcanSettings {
    fn default() -> Self {
        PcanSettings {
            configs: crate::census::default_configuration_set(),
            r: None,
            mode: CountMode::Copies,
            unit_sd: true,
            seed: 0,
            k: None,
            tau: None,
        }
    }
}

#[derive(Debug, Clone)]
pub struct PcanOutput {
    pub density: DensityMatrix,
    pub pca: PcaResult,
}

#[derive(Debug, Clone)]
pub struct SpcanOutput {
    pub density: DensityMatrix,
    pub pca: PcaResult,
    /// One plan per graph, in sample order.
    pub plans: Vec<PartitionPlan>,
    pub tau: usize,
    pub k: usize,
}

pub fn pcan(sample: &NetworkSample, settings: &PcanSettings) -> Result<PcanOutput> {
    check_sample(sample, &settings.configs)?;
    let columns: Vec<Vec<f64>> = sample
        .graphs()
        .par_iter()
        .zip(sample.ids())
        .map(|(g, id)| density_vector(g, &settings.configs, settings.mode).map_err(|e| name_graph(e, id)))
        .collect::<Result<_>>()?;
    let density = assemble(sample, &settings.configs, &columns, settings.unit_sd)?;
    let pca = fit(&density, settings.r)?;
    Ok(PcanOutput { density, pca })
}

pub fn spcan(sample: &NetworkSample, settings: &PcanSettings) -> Result<SpcanOutput> {
    check_sample(sample, &settings.configs)?;
    let (tau, k) = resolve_tau_k(sample.n_min(), &settings.configs, settings.tau, settings.k)?;
    let results: Vec<(PartitionPlan, Vec<f64>)> = sample
        .graphs()
        .par_iter()
        .zip(sample.ids())
        .enumerate()
        .map(|(i, (g, id))| {
            let seed = derive_seed(settings.seed, &[i as u64]);
            mean_density_vector(g, &settings.configs, settings.mode, k, tau, seed)
                .map_err(|e| name_graph(e, id))
        })
        .collect::<Result<_>>()?;
    let (plans, columns): (Vec<_>, Vec<_>) = results.into_iter().unzip();
    let density = assemble(sample, &settings.configs, &columns, settings.unit_sd)?;
    let pca = fit(&density, settings.r)?;
    Ok(SpcanOutput {
        density,
        pca,
        plans,
        tau,
        k,
    })
}

/// Partitions `g` into `k` classes of at least `tau` vertices and averages
/// the density vectors of the induced class subgraphs.
pub fn mean_density_vector(
    g: &Graph,
    configs: &[SubgraphConfig],
    mode: CountMode,
    k: usize,
    tau: usize,
    seed: u64,
) -> Result<(PartitionPlan, Vec<f64>)> {
    let (plan, parts) = partition(g, k, tau, seed)?;
    let mut sum = vec![0.0; configs.len()];
    for part in &parts {
        for (s, d) in sum.iter_mut().zip(density_vector(part, configs, mode)?) {
            *s += d;
        }
    }
    let mean = sum.into_iter().map(|s| s / k as f64).collect();
    Ok((plan, mean))
}

/// Default `(tau, K)`: `tau = 2 max |F|`, `K = floor(n_min / tau)`.
pub fn default_tau_k(sample: &NetworkSample, configs: &[SubgraphConfig]) -> Result<(usize, usize)> {
    default_tau_k_for(sample.n_min(), configs)
}

pub fn default_tau_k_for(n_min: usize, configs: &[SubgraphConfig]) -> Result<(usize, usize)> {
    resolve_tau_k(n_min, configs, None, None)
}

/// Fills in missing `tau`/`K` and checks `2 max|F| <= tau` and
/// `K tau <= n_min`.
pub fn resolve_tau_k(
    n_min: usize,
    configs: &[SubgraphConfig],
    tau: Option<usize>,
    k: Option<usize>,
) -> Result<(usize, usize)> {
    let max_nodes = configs.iter().map(|c| c.node_count()).max().unwrap_or(1);
    let tau = tau.unwrap_or(2 * max_nodes);
    let k = match k {
        Some(k) => k,
        None => n_min / tau.max(1),
    };
    if 2 * max_nodes > tau || k == 0 || k * tau > n_min {
        return Err(Error::Infeasible {
            max_nodes,
            tau,
            k,
            n_min,
        });
    }
    Ok((tau, k))
}

fn check_sample(sample: &NetworkSample, configs: &[SubgraphConfig]) -> Result<()> {
    if sample.len() < 2 {
        return Err(Error::invalid(format!("need at least 2 graphs, got {}", sample.len())));
    }
    if configs.is_empty() {
        return Err(Error::invalid("empty configuration list"));
    }
    Ok(())
}

fn name_graph(e: Error, id: &str) -> Error {
    match e {
        Error::ConfigTooLarge {
            config,
            needed,
            n,
            graph: None,
        } => Error::ConfigTooLarge {
            config,
            needed,
            n,
            graph: Some(id.to_owned()),
        },
        other => other,
    }
}

fn assemble(
    sample: &NetworkSample,
    configs: &[SubgraphConfig],
    columns: &[Vec<f64>],
    unit_sd: bool,
) -> Result<DensityMatrix> {
    let raw = Matrix::from_columns(columns)?;
    let names: Vec<String> = configs.iter().map(|c| c.name()).collect();
    standardize_rows(&raw, &names, sample.ids(), unit_sd)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::census::default_configuration_set;

    #[test]
    fn default_tau_k_examples() {
        let set = default_configuration_set();
        assert_eq!(default_tau_k_for(264, &set).unwrap(), (12, 22));
        assert_eq!(default_tau_k_for(60, &set).unwrap(), (12, 5));
        let err = default_tau_k_for(11, &set).unwrap_err();
        assert!(matches!(err, Error::Infeasible { max_nodes: 6, tau: 12, .. }));
        assert!(err.to_string().contains("2*max_j|F_j| <= tau"));
    }

    #[test]
    fn explicit_tau_k_checked() {
        let set = default_configuration_set();
        assert!(resolve_tau_k(100, &set, Some(10), Some(5)).is_err());
        assert!(resolve_tau_k(100, &set, Some(12), Some(9)).is_err());
        assert_eq!(resolve_tau_k(100, &set, Some(12), Some(8)).unwrap(), (12, 8));
    }

    #[test]
    fn identical_graphs_have_nothing_to_analyze() {
        let sample = NetworkSample::from_graphs(vec![Graph::cycle(8), Graph::cycle(8)]).unwrap();
        let err = pcan(&sample, &PcanSettings::default()).unwrap_err();
        assert!(matches!(err, Error::NothingToAnalyze));
    }

    #[test]
    fn single_graph_rejected() {
        let sample = NetworkSample::from_graphs(vec![Graph::cycle(8)]).unwrap();
        assert!(pcan(&sample, &PcanSettings::default()).is_err());
    }

    #[test]
    fn too_small_graph_is_named() {
        let sample = NetworkSample::from_graphs(vec![Graph::cycle(8), Graph::cycle(4)]).unwrap();
        let err = pcan(&sample, &PcanSettings::default()).unwrap_err();
        assert!(err.to_string().contains("g1"), "{err}");
    }
}
