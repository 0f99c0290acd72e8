//! Stochastic channel simulator for street-canyon intersections.
//!
//! The model chain runs in five stages:
//!
//! 1. [`morphology`] reduces a surveyed region (building heights, footprints,
//!    ground area) to one composite environment factor.
//! 2. [`pathloss`] turns that factor, a distance, and a propagation condition
//!    into large-scale loss, with an environment-independent baseline for
//!    comparison.
//! 3. [`smallscale`] holds the fitted distribution table for cluster and
//!    component parameters, conditioned on the normalized factor, plus the
//!    samplers that draw from it.
//! 4. [`synthesis`] assembles full channel realizations: clusters, multipath
//!    components, impulse responses, array responses, frequency responses.
//! 5. [`stats`] and [`harness`] extract delay and angular spreads, run
//!    reproducible multi-drop campaigns, and export results with content
//!    digests; [`validation`] replays reference values against the live
//!    build.
//!
//! Everything numeric is generic over the scalar type through [`Real`];
//! `f64` is the reference precision, with `*64`/`*32` aliases at the crate
//! root for the common types. Randomness is fully explicit: every
//! realization is addressed by a `(master seed, drop index)` pair and drops
//! on different indices come from independent streams, so results are
//! reproducible bit for bit at any thread count.

pub mod error;
pub mod harness;
pub mod morphology;
pub mod pathloss;
pub mod real;
pub mod smallscale;
pub mod stats;
pub mod synthesis;
pub mod validation;

pub use error::{Error, Result};
pub use harness::{
    run_campaign, CampaignConfig, CampaignResult, DropRecord, Metric, ScenarioClass,
    ScenarioPreset, StateSchedule,
};
pub use morphology::{
    composite_factor, load_region, Building, EnvFactor, MorphologyConfig, ObservationRegion,
};
pub use pathloss::{LinkState, PathLossCoefficients, PathLossConfig, SConvention};
pub use real::Real;
pub use smallscale::SmallScaleTable;
pub use stats::{EmpiricalCdf, Pdp};
pub use synthesis::{generate_drop, ChannelDrop, SeedRecord, SynthesisConfig};

pub type EnvFactor64 = morphology::EnvFactor<f64>;
pub type EnvFactor32 = morphology::EnvFactor<f32>;
pub type ObservationRegion64 = morphology::ObservationRegion<f64>;
pub type ObservationRegion32 = morphology::ObservationRegion<f32>;
pub type PathLossConfig64 = pathloss::PathLossConfig<f64>;
pub type PathLossConfig32 = pathloss::PathLossConfig<f32>;
pub type SmallScaleTable64 = smallscale::SmallScaleTable<f64>;
pub type SmallScaleTable32 = smallscale::SmallScaleTable<f32>;
pub type SynthesisConfig64 = synthesis::SynthesisConfig<f64>;
pub type SynthesisConfig32 = synthesis::SynthesisConfig<f32>;
pub type ChannelDrop64 = synthesis::ChannelDrop<f64>;
pub type ChannelDrop32 = synthesis::ChannelDrop<f32>;
pub type Tap64 = synthesis::Tap<f64>;
pub type Tap32 = synthesis::Tap<f32>;
pub type Pdp64 = stats::Pdp<f64>;
pub type Pdp32 = stats::Pdp<f32>;
pub type EmpiricalCdf64 = stats::EmpiricalCdf<f64>;
pub type EmpiricalCdf32 = stats::EmpiricalCdf<f32>;
pub type CampaignConfig64 = harness::CampaignConfig<f64>;
pub type CampaignConfig32 = harness::CampaignConfig<f32>;
pub type CampaignResult64 = harness::CampaignResult<f64>;
pub type CampaignResult32 = harness::CampaignResult<f32>;
pub type DropRecord64 = harness::DropRecord<f64>;
pub type DropRecord32 = harness::DropRecord<f32>;
