use std::path::Path;
use std::process::ExitCode;
use std::time::Instant;

use anyhow::{Context, Result};
use clap::{Args, ValueEnum};
use pcan_core::graph::{load_manifest, PartitionMethod};
use pcan_core::pca::{contributions, DroppedRow};
use pcan_core::pipeline::{pcan, spcan, PcanSettings};
use pcan_core::{CountMode, DensityMatrix, NetworkSample, PartitionPlan, PcaResult};
use serde::Serialize;

use crate::output::{csv_writer, ensure_dir, float, join, write_json, write_text};
use crate::{Components, CountArgs, UsageError};

pub const SCHEMA_VERSION: u32 = 1;

#[derive(Clone, Copy, PartialEq, ValueEnum, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Algorithm {
    Pcan,
    Spcan,
}

#[derive(Args)]
pub struct EmbedArgs {
    #[command(flatten)]
    common: CountArgs,

    #[arg(long, value_enum, default_value_t = Algorithm::Pcan)]
    algo: Algorithm,

    /// Components to score: a positive integer or `all`.
    #[arg(long, default_value = "all")]
    r: Components,

    /// Minimum partition class size (sPCAN).
    #[arg(long)]
    tau: Option<usize>,

    /// Partition classes per graph (sPCAN).
    #[arg(long = "K", alias = "k")]
    k: Option<usize>,

    /// Seed for the sPCAN partitions.
    #[arg(long, default_value_t = 0)]
    seed: u64,

    /// Center density rows without scaling them to unit standard deviation.
    #[arg(long)]
    no_unit_sd: bool,

    /// Also write gnuplot scripts for the scree and score plots.
    #[arg(long)]
    gnuplot: bool,
}

#[derive(Serialize)]
struct SettingsEcho {
    configs: Vec<String>,
    mode: CountMode,
    /// Components retained after resolving `--r all`.
    r: usize,
    unit_sd: bool,
    seed: u64,
    tau: Option<usize>,
    #[serde(rename = "K")]
    k: Option<usize>,
}

#[derive(Serialize)]
struct Loadings {
    configs: Vec<String>,
    /// `components[l][j]`: weight of `configs[j]` in component `l + 1`.
    components: Vec<Vec<f64>>,
}

#[derive(Serialize)]
struct PartitionAudit {
    graph_id: String,
    method: PartitionMethod,
    attempts: usize,
    class_sizes: Vec<usize>,
}

#[derive(Serialize)]
struct ResultFile {
    schema_version: u32,
    algorithm: Algorithm,
    settings: SettingsEcho,
    graphs: usize,
    eigenvalues: Vec<f64>,
    variance_explained: Vec<f64>,
    loadings: Loadings,
    row_means: Vec<f64>,
    row_sds: Vec<f64>,
    dropped_rows: Vec<DroppedRow>,
    near_degenerate: Vec<usize>,
    partitions: Option<Vec<PartitionAudit>>,
    runtime_secs: f64,
}

pub fn run(args: EmbedArgs) -> Result<ExitCode> {
    let mut problems = Vec::new();
    if args.algo == Algorithm::Pcan && (args.tau.is_some() || args.k.is_some()) {
        problems.push("--tau and --K apply only to --algo spcan".to_string());
    }
    if args.tau == Some(0) || args.k == Some(0) {
        problems.push("--tau and --K must be positive".to_string());
    }
    if !problems.is_empty() {
        return Err(UsageError(problems).into());
    }

    let common = &args.common;
    let sample = load_manifest(&common.manifest)
        .with_context(|| format!("loading {}", common.manifest.display()))?;
    let settings = PcanSettings {
        configs: common.configs(),
        r: match args.r {
            Components::All => None,
            Components::Count(r) => Some(r),
        },
        mode: common.mode.into(),
        unit_sd: !args.no_unit_sd,
        seed: args.seed,
        k: args.k,
        tau: args.tau,
    };

    let start = Instant::now();
    let (density, pca, plans, tau, k) = match args.algo {
        Algorithm::Pcan => {
            let out = pcan(&sample, &settings)?;
            (out.density, out.pca, None, None, None)
        }
        Algorithm::Spcan => {
            let out = spcan(&sample, &settings)?;
            log::info!("sPCAN with tau = {}, K = {}", out.tau, out.k);
            (out.density, out.pca, Some(out.plans), Some(out.tau), Some(out.k))
        }
    };
    let runtime_secs = start.elapsed().as_secs_f64();

    let result = ResultFile {
        schema_version: SCHEMA_VERSION,
        algorithm: args.algo,
        settings: SettingsEcho {
            configs: settings.configs.iter().map(|c| c.name()).collect(),
            mode: settings.mode,
            r: pca.r,
            unit_sd: settings.unit_sd,
            seed: settings.seed,
            tau,
            k,
        },
        graphs: sample.len(),
        eigenvalues: pca.eigenvalues.clone(),
        variance_explained: pca.variance_explained.clone(),
        loadings: Loadings {
            configs: pca.row_names.clone(),
            components: (0..pca.p()).map(|l| pca.loading(l)).collect(),
        },
        row_means: density.row_means.clone(),
        row_sds: density.row_sds.clone(),
        dropped_rows: density.dropped_rows.clone(),
        near_degenerate: pca.near_degenerate.clone(),
        partitions: plans.as_deref().map(|plans| audit(&sample, plans)),
        runtime_secs,
    };

    let out = &common.out;
    ensure_dir(out)?;
    write_json(&join(out, "result.json"), &result)?;
    write_scores(&join(out, "scores.csv"), &sample, &pca)?;
    write_contributions(&join(out, "contributions.csv"), &pca)?;
    if args.gnuplot {
        write_gnuplot(out, &pca, &density)?;
    }
    Ok(ExitCode::SUCCESS)
}

fn audit(sample: &NetworkSample, plans: &[PartitionPlan]) -> Vec<PartitionAudit> {
    sample
        .ids()
        .iter()
        .zip(plans)
        .map(|(id, plan)| PartitionAudit {
            graph_id: id.clone(),
            method: plan.method,
            attempts: plan.attempts,
            class_sizes: plan.class_sizes(),
        })
        .collect()
}

fn write_scores(path: &Path, sample: &NetworkSample, pca: &PcaResult) -> Result<()> {
    let mut w = csv_writer(path)?;
    let mut header = vec!["graph_id".to_string(), "label".to_string()];
    header.extend((1..=pca.r).map(|l| format!("score_{l}")));
    w.write_record(&header)?;
    for (i, id) in sample.ids().iter().enumerate() {
        let label = sample.labels().map_or("", |l| l[i].as_str());
        let mut record = vec![id.clone(), label.to_string()];
        record.extend((0..pca.r).map(|l| float(pca.scores[(i, l)])));
        w.write_record(&record)?;
    }
    w.flush()?;
    Ok(())
}

fn write_contributions(path: &Path, pca: &PcaResult) -> Result<()> {
    let mut w = csv_writer(path)?;
    w.write_record(["config", "pc", "percent"])?;
    for l in 0..pca.r {
        let percent = contributions(&pca.loading(l))?;
        for (name, p) in pca.row_names.iter().zip(percent) {
            w.write_record([name.clone(), (l + 1).to_string(), float(p)])?;
        }
    }
    w.flush()?;
    Ok(())
}

fn write_gnuplot(out: &Path, pca: &PcaResult, density: &DensityMatrix) -> Result<()> {
    let mut w = csv_writer(&join(out, "scree.csv"))?;
    w.write_record(["pc", "eigenvalue", "variance_explained", "cumulative"])?;
    let mut cumulative = 0.0;
    for (l, (&e, &v)) in pca.eigenvalues.iter().zip(&pca.variance_explained).enumerate() {
        cumulative += v;
        w.write_record([(l + 1).to_string(), float(e), float(v), float(cumulative)])?;
    }
    w.flush()?;

    write_text(
        &join(out, "scree.gp"),
        "set datafile separator ','\n\
         set key autotitle columnhead\n\
         set xlabel 'component'\n\
         set ylabel 'share of variance'\n\
         set yrange [0:1]\n\
         set terminal pngcairo size 800,500\n\
         set output 'scree.png'\n\
         plot 'scree.csv' using 1:3 with linespoints title 'variance explained', \\\n\
         \x20    '' using 1:4 with linespoints title 'cumulative'\n",
    )?;
    let mut scores = String::from(
        "set datafile separator ','\n\
         set terminal pngcairo size 800,600\n\
         set output 'scores.png'\n",
    );
    if pca.r >= 2 {
        scores.push_str(
            "set xlabel 'PC1'\nset ylabel 'PC2'\n\
             plot 'scores.csv' every ::1 using 3:4 with points pt 7 title 'graphs'\n",
        );
    } else {
        scores.push_str(
            "set xlabel 'graph'\nset ylabel 'PC1'\n\
             plot 'scores.csv' every ::1 using 0:3 with points pt 7 title 'graphs'\n",
        );
    }
    write_text(&join(out, "scores.gp"), &scores)?;
    log::info!("gnuplot scripts for {} density rows written", density.p());
    Ok(())
}
