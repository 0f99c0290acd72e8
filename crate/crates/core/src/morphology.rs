//! Environment morphology around an intersection.
//!
//! A surveyed observation region (building heights, footprints, total ground
//! area) is reduced to three descriptors and then to the single composite
//! factor that conditions everything downstream:
//!
//! * area-weighted mean building height,
//! * dispersion of heights about that mean,
//! * built-up area density,
//! * composite `s = 0.5 * height + 0.2 * dispersion + 0.8 * density` and its
//!   normalized form `s_norm = (s - 30) / 15`.

use std::cmp::Ordering;
use std::fs;
use std::path::Path;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::real::Real;

/// One surveyed building inside the observation region.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct Building<R> {
    /// Roof height above street level, metres.
    #[serde(rename = "height_m")]
    pub height: R,
    /// Ground footprint, square metres.
    #[serde(rename = "footprint_area_m2")]
    pub footprint_area: R,
}

/// A delineated survey area around one intersection.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ObservationRegion<R> {
    pub name: String,
    /// Total delineated ground area, square metres.
    #[serde(rename = "region_area_m2")]
    pub region_area: R,
    pub buildings: Vec<Building<R>>,
}

/// Weights and normalization constants of the composite factor.
///
/// The defaults are the calibrated values the rest of the model was fitted
/// against; override them only for sensitivity studies.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct MorphologyConfig<R> {
    pub height_weight: R,
    pub dispersion_weight: R,
    pub density_weight: R,
    /// Offset subtracted from the composite before scaling.
    pub s_offset: R,
    /// Scale dividing the offset composite.
    pub s_scale: R,
}

impl<R: Real> Default for MorphologyConfig<R> {
    fn default() -> Self {
        MorphologyConfig {
            height_weight: R::of(0.5),
            dispersion_weight: R::of(0.2),
            density_weight: R::of(0.8),
            s_offset: R::of(30.0),
            s_scale: R::of(15.0),
        }
    }
}

/// Composite environment descriptor for one observation region.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct EnvFactor<R> {
    /// Area-weighted mean building height, metres.
    pub mean_height_m: R,
    /// Dispersion of heights about the weighted mean, metres.
    pub height_dispersion_m: R,
    /// Built-up fraction of the region, dimensionless.
    pub density: R,
    /// Composite factor.
    pub s: R,
    /// Normalized composite factor.
    pub s_norm: R,
}

impl<R: Real> EnvFactor<R> {
    /// Build a factor straight from a composite value, without a survey.
    ///
    /// The descriptors are backfilled so the weighted sum reproduces `s`
    /// (all of it attributed to the height term); scenario presets use this.
    pub fn from_s(s: R) -> Self {
        Self::from_s_with(s, &MorphologyConfig::default())
    }

    /// See [`EnvFactor::from_s`], with explicit weights and normalization.
    pub fn from_s_with(s: R, cfg: &MorphologyConfig<R>) -> Self {
        EnvFactor {
            mean_height_m: s / cfg.height_weight,
            height_dispersion_m: R::zero(),
            density: R::zero(),
            s,
            s_norm: (s - cfg.s_offset) / cfg.s_scale,
        }
    }
}

/// Area-weighted mean building height, metres.
pub fn weighted_mean_height<R: Real>(region: &ObservationRegion<R>) -> Result<R> {
    let buildings = checked_sorted_buildings(region)?;
    let mut weighted = R::zero();
    let mut total_area = R::zero();
    for b in &buildings {
        weighted += b.height * b.footprint_area;
        total_area += b.footprint_area;
    }
    Ok(weighted / total_area)
}

/// Sample dispersion of building heights about the weighted mean, metres.
///
/// Footprints weight the mean but not the deviations; a single building has
/// zero dispersion by definition.
pub fn height_dispersion<R: Real>(region: &ObservationRegion<R>) -> Result<R> {
    let buildings = checked_sorted_buildings(region)?;
    if buildings.len() == 1 {
        return Ok(R::zero());
    }
    let mean = weighted_mean_height(region)?;
    let mut sum_sq = R::zero();
    for b in &buildings {
        let d = b.height - mean;
        sum_sq += d * d;
    }
    Ok((sum_sq / R::of(buildings.len() as f64 - 1.0)).sqrt())
}

/// Built-up fraction: total footprint area over region area, dimensionless.
///
/// A region with no buildings has density zero.
pub fn building_density<R: Real>(region: &ObservationRegion<R>) -> Result<R> {
    validate_region(region)?;
    let mut total = R::zero();
    for b in sorted_buildings(region) {
        total += b.footprint_area;
    }
    Ok(total / region.region_area)
}

/// Compute the composite environment factor with the default weights.
pub fn composite_factor<R: Real>(region: &ObservationRegion<R>) -> Result<EnvFactor<R>> {
    composite_factor_with(region, &MorphologyConfig::default())
}

/// Compute the composite environment factor with explicit weights.
pub fn composite_factor_with<R: Real>(
    region: &ObservationRegion<R>,
    cfg: &MorphologyConfig<R>,
) -> Result<EnvFactor<R>> {
    let mean_height_m = weighted_mean_height(region)?;
    let height_dispersion_m = height_dispersion(region)?;
    let density = building_density(region)?;
    let s = cfg.height_weight * mean_height_m
        + cfg.dispersion_weight * height_dispersion_m
        + cfg.density_weight * density;
    Ok(EnvFactor {
        mean_height_m,
        height_dispersion_m,
        density,
        s,
        s_norm: (s - cfg.s_offset) / cfg.s_scale,
    })
}

/// Load and validate an observation region from a JSON file.
pub fn load_region<R: Real>(path: &Path) -> Result<ObservationRegion<R>> {
    let text = fs::read_to_string(path).map_err(|e| Error::io(path, e))?;
    let region: ObservationRegion<R> =
        serde_json::from_str(&text).map_err(|e| Error::json(Some(path.to_path_buf()), e))?;
    validate_region(&region)?;
    Ok(region)
}

/// Check structural invariants, listing every offending field at once.
pub fn validate_region<R: Real>(region: &ObservationRegion<R>) -> Result<()> {
    let mut problems = Vec::new();
    if !(region.region_area > R::zero()) || !region.region_area.is_finite() {
        problems.push(format!(
            "region_area_m2 must be positive and finite, got {}",
            region.region_area
        ));
    }
    for (i, b) in region.buildings.iter().enumerate() {
        if !(b.height > R::zero()) || !b.height.is_finite() {
            problems.push(format!(
                "buildings[{i}].height_m must be positive and finite, got {}",
                b.height
            ));
        }
        if !(b.footprint_area > R::zero()) || !b.footprint_area.is_finite() {
            problems.push(format!(
                "buildings[{i}].footprint_area_m2 must be positive and finite, got {}",
                b.footprint_area
            ));
        }
    }
    if problems.is_empty() {
        Ok(())
    } else {
        Err(Error::InvalidRegion {
            name: region.name.clone(),
            problems,
        })
    }
}

/// Copy of the building list in (height, footprint) order.
///
/// Accumulations run over this order so results do not depend on how the
/// survey file happened to list the buildings.
fn sorted_buildings<R: Real>(region: &ObservationRegion<R>) -> Vec<Building<R>> {
    let mut buildings = region.buildings.clone();
    buildings.sort_by(|a, b| {
        (a.height, a.footprint_area)
            .partial_cmp(&(b.height, b.footprint_area))
            .unwrap_or(Ordering::Equal)
    });
    buildings
}

fn checked_sorted_buildings<R: Real>(region: &ObservationRegion<R>) -> Result<Vec<Building<R>>> {
    validate_region(region)?;
    if region.buildings.is_empty() {
        return Err(Error::EmptyRegion {
            name: region.name.clone(),
        });
    }
    Ok(sorted_buildings(region))
}
