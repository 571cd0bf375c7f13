use std::path::PathBuf;
use std::process::ExitCode;

use anyhow::Result;
use clap::{ArgGroup, Args, ValueEnum};
use pcan_core::verify::{run_check, CheckName, CheckStatus, SuiteBudget};

use crate::output::{ensure_dir, join, write_json};

#[derive(Args)]
#[command(group(ArgGroup::new("which").required(true).args(["check", "all"])))]
pub struct VerifyArgs {
    /// Check to run; repeat for several.
    #[arg(long, value_enum)]
    check: Vec<CheckArg>,

    /// Run every check.
    #[arg(long)]
    all: bool,

    /// Reduced Monte Carlo budgets.
    #[arg(long)]
    fast: bool,

    #[arg(long, default_value_t = 0)]
    seed: u64,

    /// Also write one `<check>.json` per report here.
    #[arg(long)]
    out: Option<PathBuf>,
}

#[derive(Clone, Copy, PartialEq, ValueEnum)]
#[value(rename_all = "snake_case")]
enum CheckArg {
    MeanDensity,
    SubsampleMean,
    CltPartitionMean,
    CltEigen,
    ComparePcanSpcan,
}

impl From<CheckArg> for CheckName {
    fn from(c: CheckArg) -> CheckName {
        match c {
            CheckArg::MeanDensity => CheckName::MeanDensity,
            CheckArg::SubsampleMean => CheckName::SubsampleMean,
            CheckArg::CltPartitionMean => CheckName::CltPartitionMean,
            CheckArg::CltEigen => CheckName::CltEigen,
            CheckArg::ComparePcanSpcan => CheckName::ComparePcanSpcan,
        }
    }
}

pub fn run(args: VerifyArgs) -> Result<ExitCode> {
    let names: Vec<CheckName> = if args.all {
        CheckName::ALL.to_vec()
    } else {
        let mut names: Vec<CheckName> = args.check.iter().map(|&c| c.into()).collect();
        names.dedup();
        names
    };
    let budget = if args.fast { SuiteBudget::Fast } else { SuiteBudget::Full };
    if let Some(dir) = &args.out {
        ensure_dir(dir)?;
    }

    let mut reports = Vec::new();
    for name in names {
        log::info!("running {name}");
        let report = run_check(name, budget, args.seed)?;
        println!("{}", serde_json::to_string(&report)?);
        if let Some(dir) = &args.out {
            write_json(&join(dir, &format!("{name}.json")), &report)?;
        }
        reports.push(report);
    }

    println!();
    println!("{:<20} {:<8} {:>14} {:>14} {:>10}", "check", "status", "statistic", "reference", "seconds");
    for r in &reports {
        let status = match r.status {
            CheckStatus::Pass => "pass",
            CheckStatus::Fail => "FAIL",
            CheckStatus::Skipped => "skipped",
        };
        println!(
            "{:<20} {:<8} {:>14.6e} {:>14.6e} {:>10.2}",
            r.name, status, r.statistic, r.reference, r.runtime_secs
        );
    }
    let failed = reports.iter().any(|r| r.status == CheckStatus::Fail);
    Ok(if failed { ExitCode::from(1) } else { ExitCode::SUCCESS })
}
