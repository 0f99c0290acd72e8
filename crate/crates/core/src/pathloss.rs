//! Distance-dependent path loss for both propagation conditions.
//!
//! The composite environment factor steers slope and intercept of a
//! log-distance law; a configuration switch selects whether the raw or the
//! normalized factor enters the formulas. Zeroing the coupling coefficients
//! recovers the environment-independent baseline.

use std::fmt;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::morphology::EnvFactor;
use crate::real::Real;

/// Propagation condition between the terminals.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "UPPERCASE")]
pub enum LinkState {
    Los,
    Nlos,
}

impl LinkState {
    pub const ALL: [LinkState; 2] = [LinkState::Los, LinkState::Nlos];

    /// Lowercase key used in file names and override keys.
    pub fn key(self) -> &'static str {
        match self {
            LinkState::Los => "los",
            LinkState::Nlos => "nlos",
        }
    }
}

impl fmt::Display for LinkState {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            LinkState::Los => "LOS",
            LinkState::Nlos => "NLOS",
        })
    }
}

/// Which form of the environment factor enters the formulas.
#[derive(Debug, Clone, Copy, Default, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum SConvention {
    /// The composite factor as-is.
    #[default]
    Raw,
    /// The normalized composite factor.
    Normalized,
}

/// Environment-coupling coefficients.
///
/// Each coefficient multiplies the effective environment factor; setting all
/// four to zero yields the baseline log-distance model.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct PathLossCoefficients<R> {
    /// Adds to the line-of-sight distance slope.
    pub k_a: R,
    /// Adds to the line-of-sight intercept.
    pub k_b: R,
    /// Adds to the non-line-of-sight distance slope.
    pub k_c: R,
    /// Scales the non-line-of-sight corner correction.
    pub k_d: R,
}

impl<R: Real> Default for PathLossCoefficients<R> {
    fn default() -> Self {
        PathLossCoefficients {
            k_a: R::of(0.5),
            k_b: R::of(-1.3),
            k_c: R::of(9.1),
            k_d: R::of(-9.2),
        }
    }
}

impl<R: Real> PathLossCoefficients<R> {
    /// All-zero coupling: the environment-independent baseline.
    pub fn baseline() -> Self {
        PathLossCoefficients {
            k_a: R::zero(),
            k_b: R::zero(),
            k_c: R::zero(),
            k_d: R::zero(),
        }
    }
}

/// Everything the path loss formulas need besides distance and environment.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct PathLossConfig<R> {
    /// Carrier frequency, GHz.
    pub carrier_frequency_ghz: R,
    /// Receive antenna height above street level, metres.
    pub rx_height_m: R,
    /// Corner distance where the link turns non-line-of-sight, metres.
    pub breakpoint_m: R,
    pub coefficients: PathLossCoefficients<R>,
    pub s_convention: SConvention,
}

impl<R: Real> Default for PathLossConfig<R> {
    fn default() -> Self {
        PathLossConfig {
            carrier_frequency_ghz: R::of(5.8),
            rx_height_m: R::of(2.5),
            breakpoint_m: R::of(50.0),
            coefficients: PathLossCoefficients::default(),
            s_convention: SConvention::Raw,
        }
    }
}

/// The environment factor in the form the configuration selects.
pub fn effective_s<R: Real>(env: &EnvFactor<R>, cfg: &PathLossConfig<R>) -> R {
    match cfg.s_convention {
        SConvention::Raw => env.s,
        SConvention::Normalized => env.s_norm,
    }
}

/// Line-of-sight path loss in dB at `distance_m` for effective factor `s_eff`.
pub fn pl_los<R: Real>(distance_m: R, s_eff: R, cfg: &PathLossConfig<R>) -> Result<R> {
    check_positive("distance_m", distance_m)?;
    let k = &cfg.coefficients;
    Ok((R::of(20.0) + k.k_a * s_eff) * distance_m.log10()
        + (R::of(51.4) + k.k_b * s_eff)
        + R::of(21.0) * cfg.carrier_frequency_ghz.log10())
}

/// Non-line-of-sight path loss in dB at `distance_m` for effective factor
/// `s_eff`; uses the antenna height and corner distance from the config.
pub fn pl_nlos<R: Real>(distance_m: R, s_eff: R, cfg: &PathLossConfig<R>) -> Result<R> {
    check_positive("distance_m", distance_m)?;
    check_positive("breakpoint_m", cfg.breakpoint_m)?;
    let k = &cfg.coefficients;
    Ok((R::of(35.3) + k.k_c * s_eff) * distance_m.log10()
        + R::of(22.4)
        + R::of(21.3) * cfg.carrier_frequency_ghz.log10()
        - R::of(0.3) * (cfg.rx_height_m - R::of(1.5))
        + k.k_d * s_eff * cfg.breakpoint_m.log10())
}

/// Path loss for an environment and link state.
pub fn pl<R: Real>(
    distance_m: R,
    env: &EnvFactor<R>,
    state: LinkState,
    cfg: &PathLossConfig<R>,
) -> Result<R> {
    let s_eff = effective_s(env, cfg);
    match state {
        LinkState::Los => pl_los(distance_m, s_eff, cfg),
        LinkState::Nlos => pl_nlos(distance_m, s_eff, cfg),
    }
}

/// Environment-independent baseline: the same formulas with zero coupling.
pub fn pl_baseline<R: Real>(
    distance_m: R,
    state: LinkState,
    cfg: &PathLossConfig<R>,
) -> Result<R> {
    match state {
        LinkState::Los => pl_los(distance_m, R::zero(), cfg),
        LinkState::Nlos => pl_nlos(distance_m, R::zero(), cfg),
    }
}

/// One row of a path loss sweep.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct SweepRow<R> {
    pub d_m: R,
    pub pl_los_db: R,
    pub pl_nlos_db: R,
    pub baseline_los_db: R,
    pub baseline_nlos_db: R,
}

/// Model and baseline path loss tabulated over a distance grid.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct SweepTable<R> {
    pub rows: Vec<SweepRow<R>>,
}

/// Logarithmically spaced distance grid, endpoints included.
pub fn log_spaced_grid<R: Real>(d_min_m: R, d_max_m: R, n_points: usize) -> Result<Vec<R>> {
    check_positive("d_min_m", d_min_m)?;
    check_positive("d_max_m", d_max_m)?;
    if n_points < 2 {
        return Err(Error::InvalidArgument(format!(
            "a distance grid needs at least 2 points, got {n_points}"
        )));
    }
    if !(d_min_m < d_max_m) {
        return Err(Error::InvalidArgument(format!(
            "d_min_m ({d_min_m}) must be below d_max_m ({d_max_m})"
        )));
    }
    let lo = d_min_m.log10();
    let hi = d_max_m.log10();
    let step = (hi - lo) / R::of(n_points as f64 - 1.0);
    Ok((0..n_points)
        .map(|i| R::of(10.0).powf(lo + step * R::of(i as f64)))
        .collect())
}

/// Tabulate model and baseline path loss over a log-spaced grid.
pub fn sweep<R: Real>(
    d_min_m: R,
    d_max_m: R,
    n_points: usize,
    env: &EnvFactor<R>,
    cfg: &PathLossConfig<R>,
) -> Result<SweepTable<R>> {
    sweep_over(&log_spaced_grid(d_min_m, d_max_m, n_points)?, env, cfg)
}

/// Tabulate model and baseline path loss at explicit distances.
pub fn sweep_over<R: Real>(
    distances_m: &[R],
    env: &EnvFactor<R>,
    cfg: &PathLossConfig<R>,
) -> Result<SweepTable<R>> {
    if distances_m.is_empty() {
        return Err(Error::EmptyInput {
            what: "distance grid",
        });
    }
    let s_eff = effective_s(env, cfg);
    let rows = distances_m
        .iter()
        .map(|&d| {
            Ok(SweepRow {
                d_m: d,
                pl_los_db: pl_los(d, s_eff, cfg)?,
                pl_nlos_db: pl_nlos(d, s_eff, cfg)?,
                baseline_los_db: pl_baseline(d, LinkState::Los, cfg)?,
                baseline_nlos_db: pl_baseline(d, LinkState::Nlos, cfg)?,
            })
        })
        .collect::<Result<Vec<_>>>()?;
    Ok(SweepTable { rows })
}

fn check_positive<R: Real>(field: &'static str, value: R) -> Result<()> {
    if value > R::zero() && value.is_finite() {
        Ok(())
    } else {
        Err(Error::NonPositive {
            field,
            value: value.as_f64(),
        })
    }
}
