//! `envfactor`: survey in, composite factor out.

use std::process::ExitCode;

use canyon_core::harness::classify;
use serde_json::json;

use super::{ensure_out_dir, resolve_env, write_artifact};
use crate::{CommandResult, EnvFactorArgs, Failure, Resolved};

pub fn run(resolved: &Resolved, args: &EnvFactorArgs) -> CommandResult {
    let source = resolve_env(&args.env).map_err(Failure::Input)?;
    let env = source.env;
    let class = classify(env.s)
        .map(|c| c.to_string())
        .unwrap_or_else(|| "out-of-range".to_string());
    let report = json!({
        "name": source.label,
        "mean_height_m": env.mean_height_m,
        "height_dispersion_m": env.height_dispersion_m,
        "density": env.density,
        "s": env.s,
        "s_norm": env.s_norm,
        "class": class,
    });
    if resolved.format.wants_text() {
        println!("environment: {}", source.label);
        println!("  mean building height  {:>12.4} m", env.mean_height_m);
        println!("  height dispersion     {:>12.4} m", env.height_dispersion_m);
        println!("  built-up density      {:>12.4}", env.density);
        println!("  composite factor      {:>12.4}", env.s);
        println!("  normalized factor     {:>12.4}", env.s_norm);
        println!("  class                 {:>12}", class);
    }
    if resolved.format.wants_json() {
        println!(
            "{}",
            serde_json::to_string_pretty(&report).map_err(|e| Failure::Runtime(e.into()))?
        );
    }
    if resolved.out.is_some() {
        let dir = ensure_out_dir(&resolved.out, "envfactor").map_err(Failure::Input)?;
        let mut text =
            serde_json::to_string_pretty(&report).map_err(|e| Failure::Runtime(e.into()))?;
        text.push('\n');
        write_artifact(dir, "envfactor.json", text.as_bytes()).map_err(Failure::Runtime)?;
        if resolved.verbose > 0 {
            eprintln!("wrote {}", dir.join("envfactor.json").display());
        }
    }
    Ok(ExitCode::SUCCESS)
}
