//! Monte Carlo checks of the estimators' statistical behavior on kernel-based
//! random graphs.
//!
//! Every check returns a [`CheckReport`] whose verdict is recomputable from
//! the stored metrics: each metric carries its observed value and the
//! interval it must fall in.

mod checks;
pub mod designs;
pub mod stats;
mod suite;

use std::collections::BTreeMap;

use serde::{Deserialize, Serialize};

pub use checks::{
    check_clt_eigen, check_clt_partition_mean, check_mean_density, check_subsample_mean,
    compare_pcan_spcan, CompareOptions,
};
pub use suite::{run_check, run_suite, two_block_kernel, CheckName, SuiteBudget};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum CheckStatus {
    Pass,
    Fail,
    /// The check's assumptions do not hold for the inputs (degenerate data).
    Skipped,
}

/// One tested quantity and the closed interval it must lie in. A missing
/// bound is unbounded on that side.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Metric {
    pub name: String,
    #[serde(with = "nan_as_null")]
    pub value: f64,
    pub lower: Option<f64>,
    pub upper: Option<f64>,
    /// Informational metrics are reported but do not decide the verdict.
    pub required: bool,
}

impl Metric {
    fn bounded(name: impl Into<String>, value: f64, lower: Option<f64>, upper: Option<f64>) -> Metric {
        Metric {
            name: name.into(),
            value,
            lower,
            upper,
            required: true,
        }
    }

    pub fn within(name: impl Into<String>, value: f64, lower: f64, upper: f64) -> Metric {
        Metric::bounded(name, value, Some(lower), Some(upper))
    }

    pub fn at_most(name: impl Into<String>, value: f64, upper: f64) -> Metric {
        Metric::bounded(name, value, None, Some(upper))
    }

    pub fn at_least(name: impl Into<String>, value: f64, lower: f64) -> Metric {
        Metric::bounded(name, value, Some(lower), None)
    }

    pub fn informational(mut self) -> Metric {
        self.required = false;
        self
    }

    pub fn pass(&self) -> bool {
        self.lower.is_none_or(|lo| lo <= self.value) && self.upper.is_none_or(|hi| self.value <= hi)
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct CheckReport {
    pub name: String,
    pub status: CheckStatus,
    /// Headline observed value; `NaN` (`null` in JSON) when skipped.
    #[serde(with = "nan_as_null")]
    pub statistic: f64,
    /// Theoretical value the headline statistic is compared with.
    #[serde(with = "nan_as_null")]
    pub reference: f64,
    /// Standardized discrepancy or ratio for the headline comparison.
    #[serde(with = "nan_as_null")]
    pub z_or_ratio: f64,
    pub metrics: Vec<Metric>,
    /// Monte Carlo sizes by role, e.g. `graphs` or `reps_K25`.
    pub replicates: BTreeMap<String, usize>,
    pub seed: u64,
    pub runtime_secs: f64,
    pub notes: Vec<String>,
}

impl CheckReport {
    pub(crate) fn new(name: &str, seed: u64) -> CheckReport {
        CheckReport {
            name: name.to_owned(),
            status: CheckStatus::Fail,
            statistic: f64::NAN,
            reference: f64::NAN,
            z_or_ratio: f64::NAN,
            metrics: Vec::new(),
            replicates: BTreeMap::new(),
            seed,
            runtime_secs: 0.0,
            notes: Vec::new(),
        }
    }

    pub(crate) fn skipped(mut self, reason: impl Into<String>) -> CheckReport {
        self.status = CheckStatus::Skipped;
        self.notes.push(reason.into());
        self
    }

    /// Sets the status from the metrics; skipped reports stay skipped.
    pub(crate) fn finish(mut self) -> CheckReport {
        if self.status != CheckStatus::Skipped {
            self.status = if self.recompute_pass() {
                CheckStatus::Pass
            } else {
                CheckStatus::Fail
            };
        }
        self
    }

    /// Verdict derived from the stored metrics alone.
    pub fn recompute_pass(&self) -> bool {
        self.metrics.iter().filter(|m| m.required).all(Metric::pass)
    }

    pub fn passed(&self) -> bool {
        self.status == CheckStatus::Pass
    }

    pub fn metric(&self, name: &str) -> Option<&Metric> {
        self.metrics.iter().find(|m| m.name == name)
    }
}

/// Non-finite values become `null`, and `null` reads back as `NaN`.
mod nan_as_null {
    use serde::{Deserialize, Deserializer, Serializer};

    pub fn serialize<S: Serializer>(x: &f64, s: S) -> Result<S::Ok, S::Error> {
        if x.is_finite() {
            s.serialize_f64(*x)
        } else {
            s.serialize_none()
        }
    }

    pub fn deserialize<'de, D: Deserializer<'de>>(d: D) -> Result<f64, D::Error> {
        Ok(Option::<f64>::deserialize(d)?.unwrap_or(f64::NAN))
    }
}
