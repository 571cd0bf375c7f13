use std::fs::File;
use std::io::BufWriter;
use std::path::PathBuf;
use std::process::ExitCode;

use anyhow::{Context, Result};
use clap::Args;
use pcan_core::graph::write_edge_list;
use pcan_core::krg::{sample_graph, Kernel};
use pcan_core::rng::derive_seed;
use rayon::prelude::*;
use serde::Serialize;

use crate::output::{csv_writer, ensure_dir, join, write_json};

#[derive(Args)]
pub struct GenerateArgs {
    /// Kernel spec: constant:Q, block:ROW;ROW[@BREAKS], product:A,B or
    /// logistic:CENTER,SCALE. Example: block:0.8,0.1;0.1,0.8@0.5
    #[arg(long)]
    kernel: String,

    /// Vertices per graph.
    #[arg(long)]
    n: usize,

    /// Number of graphs.
    #[arg(long, default_value_t = 1)]
    count: usize,

    #[arg(long, default_value_t = 0)]
    seed: u64,

    /// Output directory, created if missing.
    #[arg(long, default_value = ".")]
    out: PathBuf,
}

#[derive(Serialize)]
struct Sidecar<'a> {
    kernel: &'a Kernel,
    kernel_spec: String,
    n: usize,
    /// Seed of this graph's stream, derived from the master seed and index.
    seed: u64,
    master_seed: u64,
    index: usize,
    latents: Vec<f64>,
}

pub fn run(args: GenerateArgs) -> Result<ExitCode> {
    let kernel: Kernel = args.kernel.parse().context("invalid --kernel")?;
    anyhow::ensure!(args.n >= 1, "--n must be at least 1");
    ensure_dir(&args.out)?;
    let width = args.count.saturating_sub(1).to_string().len().max(4);
    let names: Vec<String> = (0..args.count).map(|i| format!("graph_{i:0width$}")).collect();

    names.par_iter().enumerate().try_for_each(|(i, name)| -> Result<()> {
        let seed = derive_seed(args.seed, &[i as u64]);
        let sampled = sample_graph(args.n, &kernel, seed);
        let path = join(&args.out, &format!("{name}.edges"));
        let file = File::create(&path).with_context(|| format!("cannot write {}", path.display()))?;
        let mut w = BufWriter::new(file);
        write_edge_list(&sampled.graph, &mut w)?;
        let sidecar = Sidecar {
            kernel: &kernel,
            kernel_spec: kernel.to_string(),
            n: args.n,
            seed,
            master_seed: args.seed,
            index: i,
            latents: sampled.latents,
        };
        write_json(&join(&args.out, &format!("{name}.json")), &sidecar)
    })?;

    let mut manifest = csv_writer(&join(&args.out, "manifest.csv"))?;
    manifest.write_record(["id", "path"])?;
    for name in &names {
        manifest.write_record([name.clone(), format!("{name}.edges")])?;
    }
    manifest.flush()?;
    log::info!("wrote {} graphs to {}", args.count, args.out.display());
    Ok(ExitCode::SUCCESS)
}
