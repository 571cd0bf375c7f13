use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Serialize};

use super::checks::*;
use super::designs::heterogeneous_block_sample;
use super::CheckReport;
use crate::census::SubgraphConfig;
use crate::error::{Error, Result};
use crate::krg::Kernel;
use crate::rng::derive_seed;

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum CheckName {
    MeanDensity,
    SubsampleMean,
    CltPartitionMean,
    CltEigen,
    ComparePcanSpcan,
}

impl CheckName {
    pub const ALL: [CheckName; 5] = [
        CheckName::MeanDensity,
        CheckName::SubsampleMean,
        CheckName::CltPartitionMean,
        CheckName::CltEigen,
        CheckName::ComparePcanSpcan,
    ];

    pub fn as_str(&self) -> &'static str {
        match self {
            CheckName::MeanDensity => "mean_density",
            CheckName::SubsampleMean => "subsample_mean",
            CheckName::CltPartitionMean => "clt_partition_mean",
            CheckName::CltEigen => "clt_eigen",
            CheckName::ComparePcanSpcan => "compare_pcan_spcan",
        }
    }
}

impl fmt::Display for CheckName {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

impl FromStr for CheckName {
    type Err = Error;

    fn from_str(s: &str) -> Result<CheckName> {
        CheckName::ALL
            .into_iter()
            .find(|c| c.as_str() == s.trim())
            .ok_or_else(|| Error::invalid(format!("unknown check `{s}`")))
    }
}

/// Monte Carlo budget for the default suite.
#[derive(Debug, Clone, Copy, Default, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum SuiteBudget {
    #[default]
    Full,
    /// Smaller replicate counts for smoke runs; bands are the same, so
    /// statistical power is lower.
    Fast,
}

/// Runs one check of the default suite. Each check draws from its own
/// sub-stream of `seed`.
pub fn run_check(name: CheckName, budget: SuiteBudget, seed: u64) -> Result<CheckReport> {
    let fast = budget == SuiteBudget::Fast;
    let seed = derive_seed(seed, &[name as u64]);
    match name {
        CheckName::MeanDensity => check_mean_density(
            &Kernel::constant(0.5)?,
            SubgraphConfig::triangle(),
            40,
            if fast { 200 } else { 500 },
            seed,
        ),
        CheckName::SubsampleMean => check_subsample_mean(
            &Kernel::constant(0.2)?,
            SubgraphConfig::star(1),
            120,
            10,
            12,
            if fast { 100 } else { 300 },
            seed,
        ),
        CheckName::CltPartitionMean => check_clt_partition_mean(
            &Kernel::constant(0.3)?,
            SubgraphConfig::star(1),
            20,
            if fast { &[10, 40] } else { &[25, 100] },
            if fast { 500 } else { 2000 },
            seed,
        ),
        CheckName::CltEigen => {
            let configs = [SubgraphConfig::star(1), SubgraphConfig::star(2), SubgraphConfig::triangle()];
            let (n, k, sizes, reps): (usize, usize, &[usize], usize) =
                if fast { (120, 10, &[50, 200], 150) } else { (240, 20, &[100, 400], 300) };
            check_clt_eigen(&two_block_kernel()?, &configs, n, k, 12, sizes, reps, seed)
        }
        CheckName::ComparePcanSpcan => {
            let (count, n, reps) = if fast { (30, 150, 20) } else { (60, 300, 100) };
            let sample = heterogeneous_block_sample(count, n, derive_seed(seed, &[0]))?;
            let opts = CompareOptions {
                tau: Some(12),
                k: Some(n / 12),
                reps,
                seed: derive_seed(seed, &[1]),
                ..CompareOptions::default()
            };
            compare_pcan_spcan(&sample, &opts)
        }
    }
}

/// Assortative two-block kernel used by the eigenvalue check.
pub fn two_block_kernel() -> Result<Kernel> {
    Kernel::equal_blocks(vec![vec![0.8, 0.1], vec![0.1, 0.8]])
}

pub fn run_suite(names: &[CheckName], budget: SuiteBudget, seed: u64) -> Result<Vec<CheckReport>> {
    names.iter().map(|&name| run_check(name, budget, seed)).collect()
}
