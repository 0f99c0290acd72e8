//! Subcommand implementations and the plumbing they share.

pub mod campaign;
pub mod envfactor;
pub mod generate;
pub mod pathloss;
pub mod validate;

use std::path::{Path, PathBuf};

use anyhow::Context;
use canyon_core::harness::{hex_sha256, FileDigest};
use canyon_core::morphology::{composite_factor, load_region, EnvFactor};
use canyon_core::pathloss::PathLossConfig;
use canyon_core::smallscale::{SmallScaleTable, S_NORM_FITTED};
use canyon_core::ScenarioPreset;

use crate::{EnvSource, LinkBudgetArgs, Resolved};

/// An environment factor plus the label it carries into outputs.
pub struct ResolvedEnv {
    pub env: EnvFactor<f64>,
    pub label: String,
}

/// Turn whichever environment source was given into a factor.
///
/// Warns on stderr when the normalized factor leaves the fitted range, since
/// every small-scale statistic is then an extrapolation.
pub fn resolve_env(source: &EnvSource) -> anyhow::Result<ResolvedEnv> {
    let resolved = if let Some(path) = &source.region {
        let region = load_region::<f64>(path)
            .with_context(|| format!("loading region file {}", path.display()))?;
        let env = composite_factor(&region)?;
        ResolvedEnv {
            env,
            label: region.name,
        }
    } else if let Some(s) = source.s {
        ResolvedEnv {
            env: EnvFactor::from_s(s),
            label: "custom".to_string(),
        }
    } else {
        let name = source.scenario.as_deref().expect("clap enforces the group");
        let preset = ScenarioPreset::<f64>::by_name(name)
            .with_context(|| format!("unknown scenario {name:?}, expected hcl, mcl, or lcl"))?;
        ResolvedEnv {
            env: preset.env,
            label: preset.name().to_string(),
        }
    };
    let (lo, hi) = S_NORM_FITTED;
    if resolved.env.s_norm < lo || resolved.env.s_norm > hi {
        eprintln!(
            "warning: normalized factor {:.3} is outside the fitted range ({:.3}, {:.3}); \
             small-scale statistics are extrapolated",
            resolved.env.s_norm, lo, hi
        );
    }
    Ok(resolved)
}

/// The distribution table with file and flag overrides applied.
///
/// Under `--verbose`, each applied override is echoed to stderr so runs are
/// auditable.
pub fn table_with_overrides(resolved: &Resolved) -> anyhow::Result<SmallScaleTable<f64>> {
    let mut table = SmallScaleTable::default();
    if !resolved.overrides.is_empty() {
        let applied = table.apply_overrides(&resolved.overrides)?;
        if resolved.verbose > 0 {
            for line in applied {
                eprintln!("table override: {line}");
            }
        }
    }
    Ok(table)
}

/// Write one output file and record its digest for a manifest.
pub fn write_artifact(dir: &Path, name: &str, bytes: &[u8]) -> anyhow::Result<FileDigest> {
    let path = dir.join(name);
    std::fs::write(&path, bytes).with_context(|| format!("writing {}", path.display()))?;
    Ok(FileDigest {
        name: name.to_string(),
        bytes: bytes.len() as u64,
        sha256: hex_sha256(bytes),
    })
}

/// Create the output directory if needed and hand back its path.
pub fn ensure_out_dir<'a>(out: &'a Option<PathBuf>, command: &str) -> anyhow::Result<&'a Path> {
    let dir = out
        .as_deref()
        .with_context(|| format!("{command} writes files, so --out is required"))?;
    std::fs::create_dir_all(dir)
        .with_context(|| format!("creating output directory {}", dir.display()))?;
    Ok(dir)
}

/// Path loss configuration: defaults, then the config file, then flags.
pub fn pathloss_config(resolved: &Resolved, link: &LinkBudgetArgs) -> PathLossConfig<f64> {
    let mut cfg = PathLossConfig::default();
    let file = &resolved.file;
    if let Some(v) = link.fc_ghz.or(file.carrier_frequency_ghz) {
        cfg.carrier_frequency_ghz = v;
    }
    if let Some(v) = link.rx_height_m.or(file.rx_height_m) {
        cfg.rx_height_m = v;
    }
    if let Some(v) = link.breakpoint_m.or(file.breakpoint_m) {
        cfg.breakpoint_m = v;
    }
    if let Some(v) = resolved.s_convention {
        cfg.s_convention = v;
    }
    cfg
}
