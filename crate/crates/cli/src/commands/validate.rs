//! `validate`: run the built-in self-checks and report per-check results.

use std::process::ExitCode;

use canyon_core::validation::{run_checks, CheckContext};

use super::{ensure_out_dir, table_with_overrides};
use crate::{CommandResult, Failure, Resolved, ValidateArgs};

pub fn run(resolved: &Resolved, args: &ValidateArgs) -> CommandResult {
    let ctx = CheckContext {
        table: table_with_overrides(resolved).map_err(Failure::Input)?,
        master_seed: resolved.seed,
    };
    let report = run_checks(&ctx, args.only.as_deref());
    if report.checks.is_empty() {
        return Err(Failure::Input(anyhow::anyhow!(
            "no checks match filter {:?}",
            args.only.as_deref().unwrap_or("")
        )));
    }

    if resolved.format.wants_text() {
        for check in &report.checks {
            let verdict = if check.passed { "PASS" } else { "FAIL" };
            println!("{verdict} {}/{}: {}", check.suite, check.name, check.details);
        }
        println!(
            "{} checks: {} passed, {} failed",
            report.checks.len(),
            report.n_passed,
            report.n_failed
        );
    }
    if resolved.format.wants_json() {
        println!(
            "{}",
            serde_json::to_string_pretty(&report).map_err(|e| Failure::Runtime(e.into()))?
        );
    }
    if resolved.out.is_some() {
        let dir = ensure_out_dir(&resolved.out, "validate").map_err(Failure::Input)?;
        let mut text =
            serde_json::to_string_pretty(&report).map_err(|e| Failure::Runtime(e.into()))?;
        text.push('\n');
        let path = dir.join("validation_report.json");
        std::fs::write(&path, text).map_err(|e| Failure::Runtime(anyhow::Error::new(e)))?;
        eprintln!("wrote {}", path.display());
    }
    Ok(if report.passed() {
        ExitCode::SUCCESS
    } else {
        ExitCode::from(1)
    })
}
