//! `generate`: emit full channel realizations as files plus a summary.

use std::fmt::Write as _;
use std::process::ExitCode;

use canyon_core::pathloss::LinkState;
use canyon_core::stats::{pdp, rms_delay_spread};
use canyon_core::synthesis::{cir, generate_drop, ChannelDrop, SeedRecord, SynthesisConfig};
use canyon_core::Error as CoreError;
use serde_json::json;

use super::{ensure_out_dir, pathloss_config, resolve_env, table_with_overrides, write_artifact};
use crate::{CommandResult, Failure, GenerateArgs, Resolved, StateArg};

pub fn run(resolved: &Resolved, args: &GenerateArgs) -> CommandResult {
    let source = resolve_env(&args.env).map_err(Failure::Input)?;
    let pl_cfg = pathloss_config(resolved, &args.link);
    let table = table_with_overrides(resolved).map_err(Failure::Input)?;
    let mut syn_cfg = SynthesisConfig::default();
    if let Some(v) = resolved.file.intra_cluster_scale {
        syn_cfg.intra_cluster_scale = v;
    }
    if let Some(v) = resolved.file.normalize {
        syn_cfg.normalize = v;
    }
    let state = match args.state {
        StateArg::Los => LinkState::Los,
        StateArg::Nlos => LinkState::Nlos,
    };
    let dir = ensure_out_dir(&resolved.out, "generate").map_err(Failure::Input)?;

    let mut drops: Vec<ChannelDrop<f64>> = Vec::with_capacity(args.n_drops);
    for i in 0..args.n_drops as u64 {
        let seed = SeedRecord {
            master_seed: resolved.seed,
            drop_index: i,
        };
        let drop = generate_drop(
            &source.env,
            state,
            args.distance,
            &pl_cfg,
            &syn_cfg,
            &table,
            seed,
        )
        .map_err(|cause| {
            Failure::Runtime(
                CoreError::DropGeneration {
                    master_seed: seed.master_seed,
                    drop_index: seed.drop_index,
                    cause: Box::new(cause),
                }
                .into(),
            )
        })?;
        drops.push(drop);
    }

    let mut files = Vec::new();
    for drop in &drops {
        let name = format!("drop_{:04}.json", drop.seed.drop_index);
        let mut text = serde_json::to_string_pretty(drop).map_err(|e| Failure::Runtime(e.into()))?;
        text.push('\n');
        files.push(write_artifact(dir, &name, text.as_bytes()).map_err(Failure::Runtime)?);
    }
    files.push(
        write_artifact(dir, "mpcs.csv", mpcs_csv(&drops).as_bytes()).map_err(Failure::Runtime)?,
    );

    let mut sum_cl = 0.0;
    let mut sum_mpc = 0.0;
    let mut sum_ds = 0.0;
    for drop in &drops {
        sum_cl += drop.clusters.len() as f64;
        sum_mpc += drop.mpc_count() as f64;
        let taps = cir(drop);
        let profile = pdp(&taps, None).map_err(|e| Failure::Runtime(e.into()))?;
        sum_ds += rms_delay_spread(&profile).map_err(|e| Failure::Runtime(e.into()))?;
    }
    let n = drops.len().max(1) as f64;
    let (mean_cl, mean_mpc, mean_ds) = (sum_cl / n, sum_mpc / n, sum_ds / n);

    let manifest = json!({
        "scenario": source.label,
        "master_seed": resolved.seed,
        "n_drops": drops.len(),
        "files": files,
        "config": {
            "state": state.key(),
            "distance_m": args.distance,
            "env": source.env,
            "pathloss": pl_cfg,
            "synthesis": syn_cfg,
        },
        "summary": {
            "mean_n_clusters": mean_cl,
            "mean_n_mpcs": mean_mpc,
            "mean_rms_delay_spread_ns": mean_ds,
        },
    });
    let mut text =
        serde_json::to_string_pretty(&manifest).map_err(|e| Failure::Runtime(e.into()))?;
    text.push('\n');
    write_artifact(dir, "manifest.json", text.as_bytes()).map_err(Failure::Runtime)?;
    eprintln!("wrote {} files to {}", files.len() + 1, dir.display());

    if resolved.format.wants_text() {
        println!(
            "generated {} drop(s): mean n_clusters {:.4}, mean n_mpcs {:.4}, \
             mean rms delay spread {:.4} ns",
            drops.len(),
            mean_cl,
            mean_mpc,
            mean_ds
        );
    }
    if resolved.format.wants_json() {
        let report = json!({
            "n_drops": drops.len(),
            "mean_n_clusters": mean_cl,
            "mean_n_mpcs": mean_mpc,
            "mean_rms_delay_spread_ns": mean_ds,
        });
        println!(
            "{}",
            serde_json::to_string_pretty(&report).map_err(|e| Failure::Runtime(e.into()))?
        );
    }
    Ok(ExitCode::SUCCESS)
}

/// Every component of every drop, one CSV row each.
fn mpcs_csv(drops: &[ChannelDrop<f64>]) -> String {
    let mut out =
        String::from("drop_index,cluster_index,mpc_index,power_db,delay_ns,aoa_deg,eoa_deg,phase_rad\n");
    for drop in drops {
        for (ci, cluster) in drop.clusters.iter().enumerate() {
            for (mi, mpc) in cluster.mpcs.iter().enumerate() {
                writeln!(
                    out,
                    "{},{},{},{},{},{},{},{}",
                    drop.seed.drop_index,
                    ci,
                    mi,
                    mpc.power_db,
                    mpc.delay_ns,
                    mpc.aoa_deg,
                    mpc.eoa_deg,
                    mpc.phase_rad
                )
                .expect("writing to a string cannot fail");
            }
        }
    }
    out
}
