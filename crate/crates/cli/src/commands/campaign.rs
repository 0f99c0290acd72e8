//! `campaign`: many drops over a distance grid, summarized and exported.

use std::process::ExitCode;

use canyon_core::harness::{export_campaign, ExportOptions};
use canyon_core::pathloss::{log_spaced_grid, LinkState};
use canyon_core::{run_campaign, CampaignConfig, StateSchedule};
use serde_json::json;

use super::{pathloss_config, resolve_env, table_with_overrides};
use crate::{CampaignArgs, CommandResult, Failure, Resolved, ScheduleArg};

pub fn run(resolved: &Resolved, args: &CampaignArgs) -> CommandResult {
    let source = resolve_env(&args.env).map_err(Failure::Input)?;
    let file = &resolved.file;
    let n_drops = args.n_drops.or(file.n_drops).unwrap_or(1000);

    let mut cfg = CampaignConfig::for_env(&source.label, source.env, n_drops, resolved.seed);
    cfg.pathloss = pathloss_config(resolved, &args.link);
    cfg.table = table_with_overrides(resolved).map_err(Failure::Input)?;
    if let Some(v) = file.intra_cluster_scale {
        cfg.synthesis.intra_cluster_scale = v;
    }
    if let Some(v) = file.normalize {
        cfg.synthesis.normalize = v;
    }
    if args.d_min.or(args.d_max).is_some()
        || args.grid_points.is_some()
        || file.d_min_m.or(file.d_max_m).is_some()
        || file.grid_points.is_some()
    {
        let d_min = args.d_min.or(file.d_min_m).unwrap_or(10.0);
        let d_max = args.d_max.or(file.d_max_m).unwrap_or(300.0);
        let points = args.grid_points.or(file.grid_points).unwrap_or(20);
        cfg.distances_m =
            log_spaced_grid(d_min, d_max, points).map_err(|e| Failure::Input(e.into()))?;
    }
    cfg.schedule = match args.schedule {
        ScheduleArg::Breakpoint => StateSchedule::Breakpoint,
        ScheduleArg::Los => StateSchedule::Always {
            state: LinkState::Los,
        },
        ScheduleArg::Nlos => StateSchedule::Always {
            state: LinkState::Nlos,
        },
    };
    if let Some(v) = args.ctf_points.or(file.ctf_points) {
        cfg.ctf_points = v;
    }
    if let Some(v) = args.ctf_span_hz.or(file.ctf_span_hz) {
        cfg.ctf_span_hz = v;
    }
    if let Some(v) = args.delay_bin_ns.or(file.delay_bin_ns) {
        cfg.delay_bin_ns = Some(v);
    }
    if args.write_drops && resolved.out.is_none() {
        return Err(Failure::Input(anyhow::anyhow!(
            "--write-drops needs --out to have somewhere to write"
        )));
    }

    let result = run_campaign(&cfg).map_err(|e| Failure::Runtime(e.into()))?;
    let summaries = result.summaries();

    let manifest = match &resolved.out {
        Some(dir) => {
            let opts = ExportOptions {
                write_drops: args.write_drops,
            };
            let manifest =
                export_campaign(&result, dir, &opts).map_err(|e| Failure::Runtime(e.into()))?;
            eprintln!(
                "wrote {} files to {}",
                manifest.files.len() + 1,
                dir.display()
            );
            Some(manifest)
        }
        None => None,
    };

    if resolved.format.wants_text() {
        println!(
            "campaign {}: {} drops, seed {}",
            cfg.scenario,
            result.records.len(),
            cfg.master_seed
        );
        println!(
            "{:<6} {:<26} {:>7} {:>12} {:>12} {:>12}",
            "state", "metric", "n", "mean", "p50", "p90"
        );
        for s in &summaries {
            println!(
                "{:<6} {:<26} {:>7} {:>12.4} {:>12.4} {:>12.4}",
                s.state.to_string(),
                s.metric.label(),
                s.n,
                s.mean,
                s.p50,
                s.p90
            );
        }
    }
    if resolved.format.wants_json() {
        let report = json!({
            "scenario": cfg.scenario,
            "n_drops": result.records.len(),
            "master_seed": cfg.master_seed,
            "summaries": summaries,
            "manifest": manifest,
        });
        println!(
            "{}",
            serde_json::to_string_pretty(&report).map_err(|e| Failure::Runtime(e.into()))?
        );
    }
    Ok(ExitCode::SUCCESS)
}
