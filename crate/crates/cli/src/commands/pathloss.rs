//! `pathloss`: tabulate the loss model and its baseline over distance.

use std::process::ExitCode;

use canyon_core::harness::sweep_to_csv;
use canyon_core::pathloss::{sweep, sweep_over, SConvention};

use super::{ensure_out_dir, pathloss_config, resolve_env, write_artifact};
use crate::{CommandResult, Failure, PathLossArgs, Resolved};

pub fn run(resolved: &Resolved, args: &PathLossArgs) -> CommandResult {
    let source = resolve_env(&args.env).map_err(Failure::Input)?;
    let cfg = pathloss_config(resolved, &args.link);
    let convention = match cfg.s_convention {
        SConvention::Raw => "raw",
        SConvention::Normalized => "normalized",
    };
    eprintln!("s convention: {convention}");
    let file = &resolved.file;
    let table = match args.distance {
        Some(d) => sweep_over(&[d], &source.env, &cfg),
        None => {
            let d_min = args.d_min.or(file.d_min_m).unwrap_or(10.0);
            let d_max = args.d_max.or(file.d_max_m).unwrap_or(300.0);
            let points = args.points.or(file.grid_points).unwrap_or(20);
            sweep(d_min, d_max, points, &source.env, &cfg)
        }
    }
    .map_err(|e| Failure::Input(e.into()))?;
    let csv = sweep_to_csv(&table);
    let json = serde_json::to_string_pretty(&table).map_err(|e| Failure::Runtime(e.into()))?;
    match &resolved.out {
        Some(_) => {
            let dir = ensure_out_dir(&resolved.out, "pathloss").map_err(Failure::Input)?;
            if resolved.format.wants_text() {
                write_artifact(dir, "pathloss.csv", csv.as_bytes()).map_err(Failure::Runtime)?;
                eprintln!("wrote {}", dir.join("pathloss.csv").display());
            }
            if resolved.format.wants_json() {
                let mut text = json.clone();
                text.push('\n');
                write_artifact(dir, "pathloss.json", text.as_bytes()).map_err(Failure::Runtime)?;
                eprintln!("wrote {}", dir.join("pathloss.json").display());
            }
        }
        None => {
            if resolved.format.wants_text() {
                print!("{csv}");
            }
            if resolved.format.wants_json() {
                println!("{json}");
            }
        }
    }
    Ok(ExitCode::SUCCESS)
}
