use std::process::ExitCode;

use anyhow::{Context, Result};
use clap::Args;
use pcan_core::census::census_rows;
use pcan_core::graph::load_manifest;
use pcan_core::CountMode;
use rayon::prelude::*;

use crate::output::{csv_writer, ensure_dir, float, join};
use crate::CountArgs;

#[derive(Args)]
pub struct CensusArgs {
    #[command(flatten)]
    common: CountArgs,
}

pub fn run(args: CensusArgs) -> Result<ExitCode> {
    let common = args.common;
    let configs = common.configs();
    let mode = CountMode::from(common.mode);
    let sample = load_manifest(&common.manifest)
        .with_context(|| format!("loading {}", common.manifest.display()))?;
    let tables = sample
        .graphs()
        .par_iter()
        .zip(sample.ids())
        .map(|(g, id)| census_rows(g, &configs, mode).with_context(|| format!("graph {id}")))
        .collect::<Result<Vec<_>>>()?;

    ensure_dir(&common.out)?;
    let path = join(&common.out, "census.csv");
    let mut w = csv_writer(&path)?;
    w.write_record(["graph_id", "config", "count", "max_count", "density"])?;
    for (id, rows) in sample.ids().iter().zip(&tables) {
        for row in rows {
            w.write_record([
                id.clone(),
                row.config.name(),
                row.count.to_string(),
                row.max_count.to_string(),
                float(row.density),
            ])?;
        }
    }
    w.flush()?;
    log::info!("wrote {}", path.display());
    Ok(ExitCode::SUCCESS)
}
