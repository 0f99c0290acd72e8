//! Optional JSON configuration file.
//!
//! Every field is optional; command-line flags win over file values, and the
//! file wins over built-in defaults. Unknown keys are rejected so a typo
//! cannot silently fall back to a default.

use std::collections::BTreeMap;
use std::path::Path;

use anyhow::Context;
use canyon_core::pathloss::SConvention;
use serde::Deserialize;

#[derive(Debug, Default, Clone, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct FileConfig {
    pub seed: Option<u64>,
    pub carrier_frequency_ghz: Option<f64>,
    pub rx_height_m: Option<f64>,
    pub breakpoint_m: Option<f64>,
    pub s_convention: Option<SConvention>,
    /// Distribution table overrides, `state.param.coefficient` keys.
    pub table_overrides: Option<BTreeMap<String, f64>>,
    pub n_drops: Option<usize>,
    pub d_min_m: Option<f64>,
    pub d_max_m: Option<f64>,
    pub grid_points: Option<usize>,
    pub ctf_points: Option<usize>,
    pub ctf_span_hz: Option<f64>,
    pub delay_bin_ns: Option<f64>,
    pub intra_cluster_scale: Option<f64>,
    pub normalize: Option<bool>,
}

impl FileConfig {
    pub fn load(path: &Path) -> anyhow::Result<Self> {
        let text = std::fs::read_to_string(path)
            .with_context(|| format!("reading configuration file {}", path.display()))?;
        serde_json::from_str(&text)
            .with_context(|| format!("parsing configuration file {}", path.display()))
    }
}
