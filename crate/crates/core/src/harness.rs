//! Simulation campaigns: scenario presets, link-state schedules, batches of
//! reproducible drops, metric summaries, and file exports.
//!
//! A campaign is a deterministic function of its configuration. Drops are
//! generated on independent random streams indexed by drop number, so the
//! thread count never changes the output, only the wall time.

use std::fmt;
use std::fmt::Write as _;
use std::fs;
use std::path::Path;

use rayon::prelude::*;
use serde::{Deserialize, Serialize};
use sha2::{Digest, Sha256};

use crate::error::{Error, Result};
use crate::morphology::EnvFactor;
use crate::pathloss::{self, LinkState, PathLossConfig, SweepTable};
use crate::real::Real;
use crate::smallscale::SmallScaleTable;
use crate::stats::{self, EmpiricalCdf};
use crate::synthesis::{self, ChannelDrop, SeedRecord, SynthesisConfig};

/// Canonical environment classes, densest first.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum ScenarioClass {
    Hcl,
    Mcl,
    Lcl,
}

impl ScenarioClass {
    pub const ALL: [ScenarioClass; 3] = [ScenarioClass::Hcl, ScenarioClass::Mcl, ScenarioClass::Lcl];

    pub fn key(self) -> &'static str {
        match self {
            ScenarioClass::Hcl => "hcl",
            ScenarioClass::Mcl => "mcl",
            ScenarioClass::Lcl => "lcl",
        }
    }

    /// Composite factor of the class representative.
    pub fn nominal_s(self) -> f64 {
        match self {
            ScenarioClass::Hcl => 45.0,
            ScenarioClass::Mcl => 30.0,
            ScenarioClass::Lcl => 15.0,
        }
    }

    /// Inclusive composite factor range the class covers.
    pub fn s_range(self) -> (f64, f64) {
        match self {
            ScenarioClass::Hcl => (40.0, 50.0),
            ScenarioClass::Mcl => (25.0, 35.0),
            ScenarioClass::Lcl => (10.0, 20.0),
        }
    }
}

impl fmt::Display for ScenarioClass {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            ScenarioClass::Hcl => "HCL",
            ScenarioClass::Mcl => "MCL",
            ScenarioClass::Lcl => "LCL",
        })
    }
}

/// Class whose composite range contains `s`, if any; the ranges leave gaps.
pub fn classify<R: Real>(s: R) -> Option<ScenarioClass> {
    let s = s.as_f64();
    ScenarioClass::ALL.into_iter().find(|c| {
        let (lo, hi) = c.s_range();
        (lo..=hi).contains(&s)
    })
}

/// A class representative ready to simulate.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct ScenarioPreset<R> {
    pub class: ScenarioClass,
    pub env: EnvFactor<R>,
}

impl<R: Real> ScenarioPreset<R> {
    pub fn of(class: ScenarioClass) -> Self {
        ScenarioPreset {
            class,
            env: EnvFactor::from_s(R::of(class.nominal_s())),
        }
    }

    pub fn hcl() -> Self {
        Self::of(ScenarioClass::Hcl)
    }

    pub fn mcl() -> Self {
        Self::of(ScenarioClass::Mcl)
    }

    pub fn lcl() -> Self {
        Self::of(ScenarioClass::Lcl)
    }

    /// Case-insensitive lookup by class key.
    pub fn by_name(name: &str) -> Option<Self> {
        ScenarioClass::ALL
            .into_iter()
            .find(|c| c.key().eq_ignore_ascii_case(name))
            .map(Self::of)
    }

    pub fn name(&self) -> &'static str {
        self.class.key()
    }
}

/// How the link state is assigned across the distance grid.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "mode", rename_all = "snake_case")]
pub enum StateSchedule {
    /// Line of sight below the corner distance, obstructed from it on.
    Breakpoint,
    /// The same state everywhere.
    Always { state: LinkState },
    /// One state per grid point, cycling with the grid.
    PerPoint { states: Vec<LinkState> },
}

impl StateSchedule {
    pub fn state_at<R: Real>(
        &self,
        grid_index: usize,
        distance_m: R,
        breakpoint_m: R,
    ) -> Result<LinkState> {
        match self {
            StateSchedule::Breakpoint => Ok(if distance_m < breakpoint_m {
                LinkState::Los
            } else {
                LinkState::Nlos
            }),
            StateSchedule::Always { state } => Ok(*state),
            StateSchedule::PerPoint { states } => {
                if states.is_empty() {
                    return Err(Error::EmptyInput {
                        what: "schedule states",
                    });
                }
                Ok(states[grid_index % states.len()])
            }
        }
    }
}

/// The standard sweep: 20 log-spaced points between 10 m and 300 m.
pub fn default_distance_grid<R: Real>() -> Vec<R> {
    pathloss::log_spaced_grid(R::of(10.0), R::of(300.0), 20)
        .expect("default grid parameters are valid")
}

/// Full description of a campaign; two equal configurations produce byte-equal
/// exports.
#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct CampaignConfig<R> {
    /// Label used in summaries and export file names.
    pub scenario: String,
    pub env: EnvFactor<R>,
    pub distances_m: Vec<R>,
    pub schedule: StateSchedule,
    pub n_drops: usize,
    pub master_seed: u64,
    pub pathloss: PathLossConfig<R>,
    pub synthesis: SynthesisConfig<R>,
    pub table: SmallScaleTable<R>,
    /// Width of the frequency grid the narrowband loss is averaged over, Hz.
    pub ctf_span_hz: R,
    pub ctf_points: usize,
    /// Delay binning for the delay spread; `None` keeps raw tap delays.
    pub delay_bin_ns: Option<R>,
}

impl<R: Real> CampaignConfig<R> {
    /// Campaign over a labelled environment with all knobs at their defaults.
    pub fn for_env(scenario: &str, env: EnvFactor<R>, n_drops: usize, master_seed: u64) -> Self {
        CampaignConfig {
            scenario: scenario.to_string(),
            env,
            distances_m: default_distance_grid(),
            schedule: StateSchedule::Breakpoint,
            n_drops,
            master_seed,
            pathloss: PathLossConfig::default(),
            synthesis: SynthesisConfig::default(),
            table: SmallScaleTable::default(),
            ctf_span_hz: R::of(30.0e6),
            ctf_points: 1024,
            delay_bin_ns: None,
        }
    }

    pub fn for_preset(preset: &ScenarioPreset<R>, n_drops: usize, master_seed: u64) -> Self {
        Self::for_env(preset.name(), preset.env, n_drops, master_seed)
    }
}

/// Per-drop metrics; the full realization is not retained.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct DropRecord<R> {
    pub drop_index: u64,
    pub distance_m: R,
    pub state: LinkState,
    pub path_loss_db: R,
    pub n_clusters: usize,
    pub n_mpcs: usize,
    pub rms_delay_spread_ns: R,
    pub aoa_spread: R,
    pub eoa_spread: R,
    /// Loss implied by the frequency response, large-scale plus fading.
    pub narrowband_pl_db: R,
}

/// Scalar metrics a campaign summarizes.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Metric {
    RmsDelaySpread,
    AoaSpread,
    EoaSpread,
    NarrowbandPathLoss,
    ClusterCount,
    MpcCount,
}

impl Metric {
    pub const ALL: [Metric; 6] = [
        Metric::RmsDelaySpread,
        Metric::AoaSpread,
        Metric::EoaSpread,
        Metric::NarrowbandPathLoss,
        Metric::ClusterCount,
        Metric::MpcCount,
    ];

    /// Short key used in export file names.
    pub fn key(self) -> &'static str {
        match self {
            Metric::RmsDelaySpread => "ds",
            Metric::AoaSpread => "asa",
            Metric::EoaSpread => "esa",
            Metric::NarrowbandPathLoss => "pl",
            Metric::ClusterCount => "ncl",
            Metric::MpcCount => "nmpc",
        }
    }

    pub fn label(self) -> &'static str {
        match self {
            Metric::RmsDelaySpread => "rms delay spread [ns]",
            Metric::AoaSpread => "azimuth spread",
            Metric::EoaSpread => "elevation spread",
            Metric::NarrowbandPathLoss => "narrowband path loss [dB]",
            Metric::ClusterCount => "cluster count",
            Metric::MpcCount => "multipath component count",
        }
    }

    pub fn value<R: Real>(self, record: &DropRecord<R>) -> R {
        match self {
            Metric::RmsDelaySpread => record.rms_delay_spread_ns,
            Metric::AoaSpread => record.aoa_spread,
            Metric::EoaSpread => record.eoa_spread,
            Metric::NarrowbandPathLoss => record.narrowband_pl_db,
            Metric::ClusterCount => R::of(record.n_clusters as f64),
            Metric::MpcCount => R::of(record.n_mpcs as f64),
        }
    }
}

impl fmt::Display for Metric {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.label())
    }
}

/// Location summary of one metric under one link state.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct MetricSummary<R> {
    pub metric: Metric,
    pub state: LinkState,
    pub n: usize,
    pub mean: R,
    pub p50: R,
    pub p90: R,
}

/// A finished campaign: the configuration that produced it plus one record
/// per drop, in drop order.
#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct CampaignResult<R> {
    pub config: CampaignConfig<R>,
    pub records: Vec<DropRecord<R>>,
}

impl<R: Real> CampaignResult<R> {
    /// Link states that actually occur, line of sight first.
    pub fn states_present(&self) -> Vec<LinkState> {
        LinkState::ALL
            .into_iter()
            .filter(|s| self.records.iter().any(|r| r.state == *s))
            .collect()
    }

    /// Metric values over all records, optionally restricted to one state.
    pub fn metric_values(&self, metric: Metric, state: Option<LinkState>) -> Vec<R> {
        self.records
            .iter()
            .filter(|r| state.is_none_or(|s| r.state == s))
            .map(|r| metric.value(r))
            .collect()
    }

    /// Empirical distribution of one metric under one state.
    pub fn metric_cdf(&self, metric: Metric, state: LinkState) -> Result<EmpiricalCdf<R>> {
        EmpiricalCdf::new(self.metric_values(metric, Some(state)))
    }

    /// Mean and quantiles of every metric for every state present.
    pub fn summaries(&self) -> Vec<MetricSummary<R>> {
        let mut out = Vec::new();
        for state in self.states_present() {
            for metric in Metric::ALL {
                let values = self.metric_values(metric, Some(state));
                let n = values.len();
                let mut mean = R::zero();
                for &v in &values {
                    mean += v;
                }
                mean = mean / R::of(n as f64);
                let cdf = EmpiricalCdf::new(values).expect("state is present");
                out.push(MetricSummary {
                    metric,
                    state,
                    n,
                    mean,
                    p50: cdf.quantile(R::of(0.5)).expect("valid level"),
                    p90: cdf.quantile(R::of(0.9)).expect("valid level"),
                });
            }
        }
        out
    }
}

/// The realization a campaign assigns to `drop_index`.
///
/// Drop `i` lands on grid point `i mod grid length`; the schedule picks the
/// state for that point.
pub fn campaign_drop<R: Real>(cfg: &CampaignConfig<R>, drop_index: u64) -> Result<ChannelDrop<R>> {
    let grid_index = (drop_index % cfg.distances_m.len() as u64) as usize;
    let distance_m = cfg.distances_m[grid_index];
    let state = cfg
        .schedule
        .state_at(grid_index, distance_m, cfg.pathloss.breakpoint_m)?;
    synthesis::generate_drop(
        &cfg.env,
        state,
        distance_m,
        &cfg.pathloss,
        &cfg.synthesis,
        &cfg.table,
        SeedRecord {
            master_seed: cfg.master_seed,
            drop_index,
        },
    )
}

/// Run every drop of a campaign, in parallel, in deterministic order.
pub fn run_campaign<R: Real>(cfg: &CampaignConfig<R>) -> Result<CampaignResult<R>> {
    validate_campaign(cfg)?;
    let grid = synthesis::frequency_grid(cfg.ctf_span_hz, cfg.ctf_points)?;
    let records = (0..cfg.n_drops as u64)
        .into_par_iter()
        .map(|i| {
            campaign_drop(cfg, i)
                .and_then(|drop| record_from_drop(cfg, &grid, &drop))
                .map_err(|e| Error::DropGeneration {
                    master_seed: cfg.master_seed,
                    drop_index: i,
                    cause: Box::new(e),
                })
        })
        .collect::<Result<Vec<_>>>()?;
    Ok(CampaignResult {
        config: cfg.clone(),
        records,
    })
}

fn validate_campaign<R: Real>(cfg: &CampaignConfig<R>) -> Result<()> {
    if cfg.distances_m.is_empty() {
        return Err(Error::EmptyInput {
            what: "distance grid",
        });
    }
    if cfg.n_drops == 0 {
        return Err(Error::InvalidArgument(
            "a campaign needs at least one drop".to_string(),
        ));
    }
    if let StateSchedule::PerPoint { states } = &cfg.schedule {
        if states.len() != cfg.distances_m.len() {
            return Err(Error::InvalidArgument(format!(
                "schedule lists {} states for {} grid points",
                states.len(),
                cfg.distances_m.len()
            )));
        }
    }
    Ok(())
}

fn record_from_drop<R: Real>(
    cfg: &CampaignConfig<R>,
    freq_grid: &[R],
    drop: &ChannelDrop<R>,
) -> Result<DropRecord<R>> {
    let taps = synthesis::cir(drop);
    let profile = stats::pdp(&taps, cfg.delay_bin_ns)?;
    let rms_delay_spread_ns = stats::rms_delay_spread(&profile)?;
    let weights: Vec<R> = drop
        .mpcs()
        .map(|m| synthesis::db_to_linear(m.power_db))
        .collect();
    let aoa: Vec<R> = drop.mpcs().map(|m| m.aoa_deg).collect();
    let eoa: Vec<R> = drop.mpcs().map(|m| m.eoa_deg).collect();
    let aoa_spread = stats::angular_spread(&aoa, &weights)?;
    let eoa_spread = stats::angular_spread(&eoa, &weights)?;
    let h = synthesis::transfer_function(&taps, freq_grid)?;
    let narrowband_pl_db = stats::pathloss_from_ctf(&h)?;
    Ok(DropRecord {
        drop_index: drop.seed.drop_index,
        distance_m: drop.distance_m,
        state: drop.state,
        path_loss_db: drop.path_loss_db,
        n_clusters: drop.clusters.len(),
        n_mpcs: drop.mpc_count(),
        rms_delay_spread_ns,
        aoa_spread,
        eoa_spread,
        narrowband_pl_db,
    })
}

/// Pointwise comparison of two path loss parameterizations.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct ComparisonRow<R> {
    pub d_m: R,
    pub reference_db: R,
    pub candidate_db: R,
    /// Candidate minus reference.
    pub delta_db: R,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ModelComparison<R> {
    pub state: LinkState,
    pub rows: Vec<ComparisonRow<R>>,
    /// Root mean square of the per-distance deltas, dB.
    pub rmse_db: R,
}

/// Evaluate two configurations over a distance grid and summarize the gap.
pub fn compare_models<R: Real>(
    distances_m: &[R],
    env: &EnvFactor<R>,
    state: LinkState,
    reference: &PathLossConfig<R>,
    candidate: &PathLossConfig<R>,
) -> Result<ModelComparison<R>> {
    if distances_m.is_empty() {
        return Err(Error::EmptyInput {
            what: "distance grid",
        });
    }
    let mut rows = Vec::with_capacity(distances_m.len());
    let mut sum_sq = R::zero();
    for &d in distances_m {
        let reference_db = pathloss::pl(d, env, state, reference)?;
        let candidate_db = pathloss::pl(d, env, state, candidate)?;
        let delta_db = candidate_db - reference_db;
        sum_sq += delta_db * delta_db;
        rows.push(ComparisonRow {
            d_m: d,
            reference_db,
            candidate_db,
            delta_db,
        });
    }
    let rmse_db = (sum_sq / R::of(distances_m.len() as f64)).sqrt();
    Ok(ModelComparison {
        state,
        rows,
        rmse_db,
    })
}

/// What [`export_campaign`] writes besides the records and CDF tables.
#[derive(Debug, Clone, Copy, Default, PartialEq, Eq, Serialize, Deserialize)]
pub struct ExportOptions {
    /// Also write every full realization as one JSON object per line.
    pub write_drops: bool,
}

/// Name, size, and content digest of one exported file.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct FileDigest {
    pub name: String,
    pub bytes: u64,
    pub sha256: String,
}

/// Index of one export: what was written and under which configuration.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ExportManifest {
    pub scenario: String,
    pub master_seed: u64,
    pub n_drops: usize,
    pub files: Vec<FileDigest>,
    pub config: serde_json::Value,
}

/// Write a campaign to `dir`: `records.csv`, one
/// `{scenario}_{state}_{metric}_cdf.csv` per state and metric, optionally
/// `drops.jsonl`, and finally `manifest.json` indexing everything else.
pub fn export_campaign<R: Real>(
    result: &CampaignResult<R>,
    dir: &Path,
    opts: &ExportOptions,
) -> Result<ExportManifest> {
    fs::create_dir_all(dir).map_err(|e| Error::io(dir, e))?;
    let mut files = Vec::new();
    files.push(write_file(
        dir,
        "records.csv",
        records_to_csv(&result.records).as_bytes(),
    )?);
    for state in result.states_present() {
        for metric in Metric::ALL {
            let cdf = result.metric_cdf(metric, state)?;
            let name = format!(
                "{}_{}_{}_cdf.csv",
                result.config.scenario,
                state.key(),
                metric.key()
            );
            files.push(write_file(dir, &name, cdf_to_csv(&cdf).as_bytes())?);
        }
    }
    if opts.write_drops {
        files.push(write_file(dir, "drops.jsonl", drops_jsonl(result)?.as_bytes())?);
    }
    let manifest = ExportManifest {
        scenario: result.config.scenario.clone(),
        master_seed: result.config.master_seed,
        n_drops: result.records.len(),
        files,
        config: serde_json::to_value(&result.config).map_err(|e| Error::json(None, e))?,
    };
    let path = dir.join("manifest.json");
    let mut text = serde_json::to_string_pretty(&manifest).map_err(|e| Error::json(None, e))?;
    text.push('\n');
    fs::write(&path, text).map_err(|e| Error::io(&path, e))?;
    Ok(manifest)
}

/// Every realization of the campaign, one JSON object per line, in drop order.
///
/// Drops are regenerated from their seeds, so the text is identical no matter
/// how the campaign itself was parallelized.
pub fn drops_jsonl<R: Real>(result: &CampaignResult<R>) -> Result<String> {
    let mut out = String::new();
    for i in 0..result.records.len() as u64 {
        let drop = campaign_drop(&result.config, i)?;
        let line = serde_json::to_string(&drop).map_err(|e| Error::json(None, e))?;
        out.push_str(&line);
        out.push('\n');
    }
    Ok(out)
}

/// Records in CSV form, one row per drop.
pub fn records_to_csv<R: Real>(records: &[DropRecord<R>]) -> String {
    let mut out = String::from(
        "drop_index,distance_m,state,path_loss_db,n_clusters,n_mpcs,\
         rms_delay_spread_ns,aoa_spread,eoa_spread,narrowband_pl_db\n",
    );
    for r in records {
        writeln!(
            out,
            "{},{},{},{},{},{},{},{},{},{}",
            r.drop_index,
            r.distance_m,
            r.state.key(),
            r.path_loss_db,
            r.n_clusters,
            r.n_mpcs,
            r.rms_delay_spread_ns,
            r.aoa_spread,
            r.eoa_spread,
            r.narrowband_pl_db
        )
        .expect("writing to a string cannot fail");
    }
    out
}

/// Empirical distribution in CSV form: sorted values with cumulative
/// probabilities `(i + 1) / n`.
pub fn cdf_to_csv<R: Real>(cdf: &EmpiricalCdf<R>) -> String {
    let n = cdf.len();
    let mut out = String::from("value,cum_prob\n");
    for (i, v) in cdf.values().iter().enumerate() {
        writeln!(out, "{},{}", v, R::of((i + 1) as f64) / R::of(n as f64))
            .expect("writing to a string cannot fail");
    }
    out
}

/// Path loss sweep in CSV form, model and baseline side by side.
pub fn sweep_to_csv<R: Real>(table: &SweepTable<R>) -> String {
    let mut out = String::from("d_m,pl_los_db,pl_nlos_db,baseline_los_db,baseline_nlos_db\n");
    for r in &table.rows {
        writeln!(
            out,
            "{},{},{},{},{}",
            r.d_m, r.pl_los_db, r.pl_nlos_db, r.baseline_los_db, r.baseline_nlos_db
        )
        .expect("writing to a string cannot fail");
    }
    out
}

fn write_file(dir: &Path, name: &str, bytes: &[u8]) -> Result<FileDigest> {
    let path = dir.join(name);
    fs::write(&path, bytes).map_err(|e| Error::io(&path, e))?;
    Ok(FileDigest {
        name: name.to_string(),
        bytes: bytes.len() as u64,
        sha256: hex_sha256(bytes),
    })
}

/// Lowercase hex SHA-256 of a byte string.
pub fn hex_sha256(bytes: &[u8]) -> String {
    let hash = Sha256::digest(bytes);
    let mut s = String::with_capacity(64);
    for b in hash {
        write!(s, "{b:02x}").expect("writing to a string cannot fail");
    }
    s
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::pathloss::PathLossCoefficients;

    fn small_campaign() -> CampaignConfig<f64> {
        let mut cfg = CampaignConfig::for_preset(&ScenarioPreset::mcl(), 6, 42);
        cfg.distances_m = vec![20.0, 50.0, 120.0];
        cfg.ctf_points = 16;
        cfg
    }

    #[test]
    fn classification_covers_the_ranges_and_their_gaps() {
        assert_eq!(classify(45.0), Some(ScenarioClass::Hcl));
        assert_eq!(classify(40.0), Some(ScenarioClass::Hcl));
        assert_eq!(classify(50.0), Some(ScenarioClass::Hcl));
        assert_eq!(classify(30.0), Some(ScenarioClass::Mcl));
        assert_eq!(classify(25.0), Some(ScenarioClass::Mcl));
        assert_eq!(classify(35.0), Some(ScenarioClass::Mcl));
        assert_eq!(classify(15.0), Some(ScenarioClass::Lcl));
        assert_eq!(classify(10.0), Some(ScenarioClass::Lcl));
        assert_eq!(classify(20.0), Some(ScenarioClass::Lcl));
        for s in [9.9, 20.1, 24.9, 35.1, 39.9, 50.1, -3.0] {
            assert_eq!(classify(s), None, "s = {s}");
        }
    }

    #[test]
    fn presets_sit_at_the_class_representatives() {
        assert_eq!(ScenarioPreset::<f64>::hcl().env.s, 45.0);
        assert_eq!(ScenarioPreset::<f64>::hcl().env.s_norm, 1.0);
        assert_eq!(ScenarioPreset::<f64>::mcl().env.s_norm, 0.0);
        assert_eq!(ScenarioPreset::<f64>::lcl().env.s_norm, -1.0);
        assert_eq!(
            ScenarioPreset::<f64>::by_name("HCL").unwrap().class,
            ScenarioClass::Hcl
        );
        assert_eq!(
            ScenarioPreset::<f64>::by_name("lcl").unwrap().class,
            ScenarioClass::Lcl
        );
        assert!(ScenarioPreset::<f64>::by_name("urban").is_none());
    }

    #[test]
    fn default_grid_spans_the_sweep_range() {
        let g: Vec<f64> = default_distance_grid();
        assert_eq!(g.len(), 20);
        assert!((g[0] - 10.0).abs() < 1e-9);
        assert!((g[19] - 300.0).abs() < 1e-9);
        assert!(g.windows(2).all(|w| w[1] > w[0]));
    }

    #[test]
    fn schedules_assign_states_as_documented() {
        let bp = StateSchedule::Breakpoint;
        assert_eq!(bp.state_at(0, 10.0, 50.0).unwrap(), LinkState::Los);
        assert_eq!(bp.state_at(0, 50.0, 50.0).unwrap(), LinkState::Nlos);
        assert_eq!(bp.state_at(0, 120.0, 50.0).unwrap(), LinkState::Nlos);
        let always = StateSchedule::Always {
            state: LinkState::Nlos,
        };
        assert_eq!(always.state_at(5, 10.0, 50.0).unwrap(), LinkState::Nlos);
        let per_point = StateSchedule::PerPoint {
            states: vec![LinkState::Los, LinkState::Nlos],
        };
        assert_eq!(per_point.state_at(0, 1.0, 50.0).unwrap(), LinkState::Los);
        assert_eq!(per_point.state_at(1, 1.0, 50.0).unwrap(), LinkState::Nlos);
        assert_eq!(per_point.state_at(2, 1.0, 50.0).unwrap(), LinkState::Los);
        let empty = StateSchedule::PerPoint { states: vec![] };
        assert!(empty.state_at(0, 1.0, 50.0).is_err());
    }

    #[test]
    fn campaign_cycles_the_grid_and_keeps_drop_order() {
        let cfg = small_campaign();
        let result = run_campaign(&cfg).unwrap();
        assert_eq!(result.records.len(), 6);
        for (i, r) in result.records.iter().enumerate() {
            assert_eq!(r.drop_index, i as u64);
            assert_eq!(r.distance_m, cfg.distances_m[i % 3]);
            assert!(r.n_clusters >= 1 && r.n_mpcs >= r.n_clusters);
            assert!(r.rms_delay_spread_ns >= 0.0);
            assert!(r.narrowband_pl_db.is_finite());
        }
        // breakpoint schedule: 20 m is the only grid point below the corner
        assert_eq!(result.records[0].state, LinkState::Los);
        assert_eq!(result.records[1].state, LinkState::Nlos);
        assert_eq!(result.records[2].state, LinkState::Nlos);
        assert_eq!(result.states_present(), vec![LinkState::Los, LinkState::Nlos]);
    }

    #[test]
    fn campaigns_do_not_depend_on_the_thread_count() {
        let cfg = small_campaign();
        let one = rayon::ThreadPoolBuilder::new()
            .num_threads(1)
            .build()
            .unwrap()
            .install(|| run_campaign(&cfg))
            .unwrap();
        let four = rayon::ThreadPoolBuilder::new()
            .num_threads(4)
            .build()
            .unwrap()
            .install(|| run_campaign(&cfg))
            .unwrap();
        assert_eq!(one.records, four.records);
        assert_eq!(
            records_to_csv(&one.records),
            records_to_csv(&four.records)
        );
    }

    #[test]
    fn bad_campaign_configs_are_rejected() {
        let mut cfg = small_campaign();
        cfg.n_drops = 0;
        assert!(run_campaign(&cfg).is_err());
        let mut cfg = small_campaign();
        cfg.distances_m.clear();
        assert!(run_campaign(&cfg).is_err());
        let mut cfg = small_campaign();
        cfg.schedule = StateSchedule::PerPoint {
            states: vec![LinkState::Los],
        };
        let err = run_campaign(&cfg).unwrap_err().to_string();
        assert!(err.contains("1 states for 3 grid points"), "got: {err}");
    }

    #[test]
    fn drop_errors_carry_their_seed_coordinates() {
        let mut cfg = small_campaign();
        cfg.distances_m = vec![20.0, -5.0];
        let err = run_campaign(&cfg).unwrap_err();
        match err {
            Error::DropGeneration {
                master_seed,
                drop_index,
                ..
            } => {
                assert_eq!(master_seed, 42);
                assert_eq!(drop_index % 2, 1);
            }
            other => panic!("unexpected error: {other}"),
        }
    }

    #[test]
    fn model_comparison_matches_the_hand_computed_gap() {
        let env = EnvFactor::from_s(30.0);
        let candidate = PathLossConfig::<f64>::default();
        let reference = PathLossConfig {
            coefficients: PathLossCoefficients::baseline(),
            ..candidate
        };
        let cmp = compare_models(
            &[10.0, 100.0],
            &env,
            LinkState::Los,
            &reference,
            &candidate,
        )
        .unwrap();
        assert!((cmp.rows[0].delta_db - -24.0).abs() < 1e-9);
        assert!((cmp.rows[1].delta_db - -9.0).abs() < 1e-9);
        let expected = 18.12456896039186;
        assert!((cmp.rmse_db - expected).abs() / expected < 1e-9, "got {}", cmp.rmse_db);
    }

    #[test]
    fn identical_comparisons_have_zero_rmse() {
        let env = EnvFactor::from_s(45.0);
        let cfg = PathLossConfig::<f64>::default();
        let cmp =
            compare_models(&[10.0, 100.0], &env, LinkState::Nlos, &cfg, &cfg).unwrap();
        assert_eq!(cmp.rmse_db, 0.0);
    }

    #[test]
    fn export_writes_indexed_byte_stable_files() {
        let cfg = small_campaign();
        let result = run_campaign(&cfg).unwrap();
        let dir_a = tempfile::tempdir().unwrap();
        let dir_b = tempfile::tempdir().unwrap();
        let opts = ExportOptions { write_drops: true };
        let manifest_a = export_campaign(&result, dir_a.path(), &opts).unwrap();
        let manifest_b = export_campaign(&result, dir_b.path(), &opts).unwrap();
        assert_eq!(manifest_a, manifest_b);

        // both states present: records + 12 CDFs + drops
        assert_eq!(manifest_a.files.len(), 1 + 12 + 1);
        assert!(manifest_a.files.iter().any(|f| f.name == "records.csv"));
        assert!(manifest_a
            .files
            .iter()
            .any(|f| f.name == "mcl_nlos_ds_cdf.csv"));
        assert!(manifest_a
            .files
            .iter()
            .any(|f| f.name == "mcl_los_pl_cdf.csv"));

        for f in &manifest_a.files {
            let path = dir_a.path().join(&f.name);
            let bytes = std::fs::read(&path).unwrap();
            assert_eq!(bytes.len() as u64, f.bytes, "{}", f.name);
            assert_eq!(hex_sha256(&bytes), f.sha256, "{}", f.name);
            let other = std::fs::read(dir_b.path().join(&f.name)).unwrap();
            assert_eq!(bytes, other, "{}", f.name);
        }

        let manifest_text =
            std::fs::read_to_string(dir_a.path().join("manifest.json")).unwrap();
        let parsed: ExportManifest = serde_json::from_str(&manifest_text).unwrap();
        assert_eq!(parsed, manifest_a);

        let drops = std::fs::read_to_string(dir_a.path().join("drops.jsonl")).unwrap();
        assert_eq!(drops.lines().count(), 6);
    }

    #[test]
    fn csv_headers_are_stable() {
        let records: Vec<DropRecord<f64>> = Vec::new();
        assert!(records_to_csv(&records).starts_with(
            "drop_index,distance_m,state,path_loss_db,n_clusters,n_mpcs,rms_delay_spread_ns,aoa_spread,eoa_spread,narrowband_pl_db\n"
        ));
        let env = EnvFactor::from_s(30.0);
        let table =
            pathloss::sweep(10.0, 300.0, 4, &env, &PathLossConfig::default()).unwrap();
        let csv = sweep_to_csv(&table);
        assert!(csv.starts_with("d_m,pl_los_db,pl_nlos_db,baseline_los_db,baseline_nlos_db\n"));
        assert_eq!(csv.lines().count(), 5);
    }

    #[test]
    fn summaries_cover_every_metric_for_every_state() {
        let result = run_campaign(&small_campaign()).unwrap();
        let summaries = result.summaries();
        assert_eq!(summaries.len(), 12);
        for s in &summaries {
            assert!(s.n >= 1);
            assert!(s.mean.is_finite());
            assert!(s.p50 <= s.p90);
        }
        let cdf = result
            .metric_cdf(Metric::MpcCount, LinkState::Nlos)
            .unwrap();
        assert_eq!(cdf.len(), 4);
    }
}
