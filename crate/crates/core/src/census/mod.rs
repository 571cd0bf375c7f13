//! Subgraph counts and densities for the nine-configuration census.
//!
//! The density of a configuration `F` in a graph on `n` vertices is its count
//! divided by `max_count(n, F)`, the number of copies of `F` in `K_n`. The
//! same normalizer is used in both count modes, so induced densities can stay
//! below 1 even on extremal graphs. Isolates are always counted as degree-0
//! vertices and normalized by `n`.

mod config;
mod count;
mod oracle;

pub use config::{
    default_configuration_set, parse_config_list, ConfigKind, CountMode, SubgraphConfig,
};
pub use count::Census;
pub use oracle::{automorphism_count, brute_force_count, ORACLE_MAX_VERTICES};

use crate::error::{Error, Result};
use crate::graph::Graph;

pub fn count(g: &Graph, config: SubgraphConfig, mode: CountMode) -> Result<u128> {
    Census::new(g).count(config, mode)
}

/// Copies of `config` in the complete graph on `n` vertices,
/// `n! / ((n - |F|)! |Aut(F)|)`; `n` for isolates.
pub fn max_count(n: usize, config: SubgraphConfig) -> Result<u128> {
    if n < config.node_count() {
        return Err(Error::ConfigTooLarge {
            config: config.name(),
            needed: config.node_count(),
            n,
            graph: None,
        });
    }
    if config.kind() == ConfigKind::Isolate {
        return Ok(n as u128);
    }
    let falling = (0..config.node_count()).fold(1u128, |acc, i| acc * (n - i) as u128);
    Ok(falling / config.aut_size() as u128)
}

#[inline]
pub(crate) fn ratio(count: u128, max: u128) -> f64 {
    if count == max {
        1.0
    } else {
        count as f64 / max as f64
    }
}

pub fn density(g: &Graph, config: SubgraphConfig, mode: CountMode) -> Result<f64> {
    let c = count(g, config, mode)?;
    Ok(ratio(c, max_count(g.n(), config)?))
}

/// Densities of `configs` in order, sharing intermediate counts.
pub fn density_vector(g: &Graph, configs: &[SubgraphConfig], mode: CountMode) -> Result<Vec<f64>> {
    let census = Census::new(g);
    configs
        .iter()
        .map(|&c| {
            let count = census.count(c, mode)?;
            Ok(ratio(count, max_count(g.n(), c)?))
        })
        .collect()
}

/// One row of a census table.
#[derive(Debug, Clone, PartialEq)]
pub struct CensusRow {
    pub config: SubgraphConfig,
    pub count: u128,
    pub max_count: u128,
    pub density: f64,
}

pub fn census_rows(g: &Graph, configs: &[SubgraphConfig], mode: CountMode) -> Result<Vec<CensusRow>> {
    let census = Census::new(g);
    configs
        .iter()
        .map(|&config| {
            let count = census.count(config, mode)?;
            let max_count = max_count(g.n(), config)?;
            Ok(CensusRow {
                config,
                count,
                max_count,
                density: ratio(count, max_count),
            })
        })
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn max_count_examples() {
        assert_eq!(max_count(5, SubgraphConfig::triangle()).unwrap(), 10);
        assert_eq!(max_count(4, SubgraphConfig::star(2)).unwrap(), 12);
        assert_eq!(max_count(4, SubgraphConfig::cycle4()).unwrap(), 3);
        assert_eq!(max_count(7, SubgraphConfig::isolate()).unwrap(), 7);
        assert!(max_count(3, SubgraphConfig::cycle4()).is_err());
        // n = 10^6 with six pattern vertices stays inside u128.
        assert!(max_count(1_000_000, SubgraphConfig::star(5)).is_ok());
    }

    #[test]
    fn density_examples() {
        for n in 3..8 {
            assert_eq!(density(&Graph::complete(n), SubgraphConfig::triangle(), CountMode::Copies).unwrap(), 1.0);
        }
        let d = density(&Graph::path(3), SubgraphConfig::star(1), CountMode::Copies).unwrap();
        assert_eq!(d, 2.0 / 3.0);
        for mode in [CountMode::Copies, CountMode::Induced] {
            assert_eq!(density(&Graph::empty(5), SubgraphConfig::isolate(), mode).unwrap(), 1.0);
        }
    }

    #[test]
    fn density_vector_examples() {
        let all = default_configuration_set();
        let k6 = density_vector(&Graph::complete(6), &all, CountMode::Copies).unwrap();
        assert_eq!(k6, vec![0.0, 1.0, 1.0, 1.0, 1.0, 1.0, 1.0, 1.0, 1.0]);
        let e6 = density_vector(&Graph::empty(6), &all, CountMode::Copies).unwrap();
        assert_eq!(e6, vec![1.0, 0.0, 0.0, 0.0, 0.0, 0.0, 0.0, 0.0, 0.0]);
        let err = density_vector(&Graph::complete(4), &all, CountMode::Copies).unwrap_err();
        assert!(matches!(err, Error::ConfigTooLarge { ref config, .. } if config == "star4"), "{err}");
    }
}
