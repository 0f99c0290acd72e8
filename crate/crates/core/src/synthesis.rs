//! Stochastic realization of one channel drop.
//!
//! A drop is built cluster by cluster: cluster centers are drawn from the
//! tabulated distributions, multipath components scatter around each center
//! with the same distribution family at a reduced scale, and every component
//! gets an independent uniform phase. The result feeds the impulse response,
//! the array response, and the frequency response.
//!
//! Determinism: a drop is a pure function of its inputs and a
//! `(master_seed, drop_index)` pair. The pair selects an independent
//! counter-mode stream, so drops can be generated in any order, on any
//! number of threads, with identical results.

use num_complex::Complex;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::morphology::EnvFactor;
use crate::pathloss::{self, LinkState, PathLossConfig};
use crate::real::Real;
use crate::smallscale::{
    sample, sample_count, truncate_nonnegative, DistFamily, DistributionSpec, SmallScaleTable,
};

/// Seeds that reproduce one drop exactly.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct SeedRecord {
    pub master_seed: u64,
    pub drop_index: u64,
}

impl SeedRecord {
    /// The independent random stream of this drop.
    pub fn rng(self) -> ChaCha8Rng {
        let mut rng = ChaCha8Rng::seed_from_u64(self.master_seed);
        rng.set_stream(self.drop_index);
        rng
    }
}

/// One multipath component.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct Mpc<R> {
    /// Component power relative to the drop total, dB.
    pub power_db: R,
    /// Excess delay, nanoseconds; never negative.
    pub delay_ns: R,
    /// Azimuth of arrival, degrees in [0, 360).
    pub aoa_deg: R,
    /// Elevation of arrival, degrees in [0, 180].
    pub eoa_deg: R,
    /// Phase, radians in [0, 2 pi).
    pub phase_rad: R,
}

/// Cluster center: the component-shaped tuple the offsets scatter around.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct ClusterCenter<R> {
    pub power_db: R,
    pub delay_ns: R,
    pub aoa_deg: R,
    pub eoa_deg: R,
}

/// One cluster: its center and its multipath components.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Cluster<R> {
    pub center: ClusterCenter<R>,
    pub mpcs: Vec<Mpc<R>>,
}

/// One stochastic channel realization.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ChannelDrop<R> {
    pub env: EnvFactor<R>,
    pub state: LinkState,
    pub distance_m: R,
    /// Large-scale path loss of this link, dB.
    pub path_loss_db: R,
    pub clusters: Vec<Cluster<R>>,
    /// Whether component powers were rescaled to unit linear sum.
    pub normalized: bool,
    pub seed: SeedRecord,
}

impl<R> ChannelDrop<R> {
    /// Iterate over every component of every cluster.
    pub fn mpcs(&self) -> impl Iterator<Item = &Mpc<R>> {
        self.clusters.iter().flat_map(|c| c.mpcs.iter())
    }

    pub fn mpc_count(&self) -> usize {
        self.clusters.iter().map(|c| c.mpcs.len()).sum()
    }
}

/// Knobs of the drop generator.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct SynthesisConfig<R> {
    /// Intra-cluster offset scale as a fraction of the tabulated scale.
    pub intra_cluster_scale: R,
    /// Rescale component powers so their linear sum is exactly one.
    pub normalize: bool,
}

impl<R: Real> Default for SynthesisConfig<R> {
    fn default() -> Self {
        SynthesisConfig {
            intra_cluster_scale: R::of(0.1),
            normalize: true,
        }
    }
}

/// Uniform rectangular receive array in the x-y plane.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct ArrayGeometry<R> {
    pub rows: usize,
    pub cols: usize,
    /// Element spacing in carrier wavelengths.
    pub spacing_wavelengths: R,
}

impl<R: Real> Default for ArrayGeometry<R> {
    fn default() -> Self {
        ArrayGeometry {
            rows: 4,
            cols: 8,
            spacing_wavelengths: R::of(0.5),
        }
    }
}

impl<R> ArrayGeometry<R> {
    pub fn elements(&self) -> usize {
        self.rows * self.cols
    }
}

/// One impulse response tap.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Tap<R> {
    pub delay_ns: R,
    pub amplitude: Complex<R>,
}

/// Generate one drop.
///
/// Draw order per drop: cluster count, then per cluster its center (power,
/// delay, azimuth, elevation), its component count, and per component the
/// four offsets followed by the phase. Delays are truncated to nonnegative
/// values by redrawing.
pub fn generate_drop<R: Real>(
    env: &EnvFactor<R>,
    state: LinkState,
    distance_m: R,
    pl_cfg: &PathLossConfig<R>,
    syn_cfg: &SynthesisConfig<R>,
    table: &SmallScaleTable<R>,
    seed: SeedRecord,
) -> Result<ChannelDrop<R>> {
    let path_loss_db = pathloss::pl(distance_m, env, state, pl_cfg)?;
    let params = table.param_set(env.s_norm, state)?;
    let kappa = syn_cfg.intra_cluster_scale;
    let mut rng = seed.rng();

    let n_clusters = sample_count(&params.n_cl, &mut rng);
    let mut clusters = Vec::with_capacity(n_clusters);
    for _ in 0..n_clusters {
        let center = ClusterCenter {
            power_db: sample(&params.power, &mut rng),
            delay_ns: truncate_nonnegative(&params.delay, &mut rng)?.0,
            aoa_deg: wrap_azimuth_deg(sample(&params.aoa, &mut rng)),
            eoa_deg: wrap_elevation_deg(sample(&params.eoa, &mut rng)),
        };
        let n_mpcs = sample_count(&params.n_mpc, &mut rng);
        let mut mpcs = Vec::with_capacity(n_mpcs);
        for _ in 0..n_mpcs {
            let power_db = offset_around(center.power_db, &params.power, kappa, &mut rng);
            let delay_ns = nonnegative_offset_around(center.delay_ns, &params.delay, kappa, &mut rng)?;
            let aoa_deg =
                wrap_azimuth_deg(offset_around(center.aoa_deg, &params.aoa, kappa, &mut rng));
            let eoa_deg =
                wrap_elevation_deg(offset_around(center.eoa_deg, &params.eoa, kappa, &mut rng));
            let phase_rad = uniform_phase(&mut rng);
            mpcs.push(Mpc {
                power_db,
                delay_ns,
                aoa_deg,
                eoa_deg,
                phase_rad,
            });
        }
        clusters.push(Cluster { center, mpcs });
    }

    let mut drop = ChannelDrop {
        env: *env,
        state,
        distance_m,
        path_loss_db,
        clusters,
        normalized: false,
        seed,
    };
    if syn_cfg.normalize {
        normalize_powers(&mut drop);
    }
    Ok(drop)
}

/// Scatter one value around a cluster center with the center's family at a
/// reduced scale.
///
/// Additive zero-location draws for normal and Laplace parameters; for
/// lognormal parameters the offset is applied in the log domain so the value
/// stays inside the family's positive support.
fn offset_around<R: Real, G: Rng + ?Sized>(
    center: R,
    spec: &DistributionSpec<R>,
    kappa: R,
    rng: &mut G,
) -> R {
    let offset_spec = DistributionSpec {
        family: match spec.family {
            DistFamily::Lognormal => DistFamily::Normal,
            family => family,
        },
        location: R::zero(),
        scale: kappa * spec.scale,
    };
    let draw = sample(&offset_spec, rng);
    match spec.family {
        DistFamily::Lognormal => center * draw.exp(),
        _ => center + draw,
    }
}

/// Like [`offset_around`], redrawing while the result would be negative.
fn nonnegative_offset_around<R: Real, G: Rng + ?Sized>(
    center: R,
    spec: &DistributionSpec<R>,
    kappa: R,
    rng: &mut G,
) -> Result<R> {
    let mut rejected = 0u32;
    loop {
        let x = offset_around(center, spec, kappa, rng);
        if x >= R::zero() {
            return Ok(x);
        }
        rejected += 1;
        if rejected >= crate::smallscale::MAX_TRUNCATION_REJECTIONS {
            return Err(Error::RejectionExhausted { attempts: rejected });
        }
    }
}

fn uniform_phase<R: Real, G: Rng + ?Sized>(rng: &mut G) -> R {
    R::of(std::f64::consts::TAU * rng.random::<f64>())
}

/// Fold an angle into [0, 360).
pub fn wrap_azimuth_deg<R: Real>(angle_deg: R) -> R {
    let full = R::of(360.0);
    ((angle_deg % full) + full) % full
}

/// Fold an angle into [0, 180] by reflecting the lower hemisphere.
pub fn wrap_elevation_deg<R: Real>(angle_deg: R) -> R {
    let folded = wrap_azimuth_deg(angle_deg);
    if folded > R::of(180.0) {
        R::of(360.0) - folded
    } else {
        folded
    }
}

/// Shift all component powers so their linear sum is exactly one.
///
/// Cluster centers shift by the same constant so center-relative offsets keep
/// their meaning. Applying the function twice is a no-op.
pub fn normalize_powers<R: Real>(drop: &mut ChannelDrop<R>) {
    let mut total = R::zero();
    for mpc in drop.mpcs() {
        total += db_to_linear(mpc.power_db);
    }
    let shift = R::of(10.0) * total.log10();
    for cluster in &mut drop.clusters {
        cluster.center.power_db = cluster.center.power_db - shift;
        for mpc in &mut cluster.mpcs {
            mpc.power_db = mpc.power_db - shift;
        }
    }
    drop.normalized = true;
}

/// Clone a drop with every component phase redrawn, keeping powers, delays,
/// and angles fixed.
pub fn redraw_phases<R: Real, G: Rng + ?Sized>(drop: &ChannelDrop<R>, rng: &mut G) -> ChannelDrop<R> {
    let mut out = drop.clone();
    for cluster in &mut out.clusters {
        for mpc in &mut cluster.mpcs {
            mpc.phase_rad = uniform_phase(rng);
        }
    }
    out
}

/// Scalar impulse response: one tap per component, sorted by delay.
///
/// Tap amplitude combines the component's share of the power and the
/// large-scale loss: `exp(j phase) * sqrt(10^(power/10) * 10^(-loss/10))`.
pub fn cir<R: Real>(drop: &ChannelDrop<R>) -> Vec<Tap<R>> {
    let mut taps: Vec<Tap<R>> = drop
        .mpcs()
        .map(|m| Tap {
            delay_ns: m.delay_ns,
            amplitude: Complex::from_polar(tap_gain(m.power_db, drop.path_loss_db), m.phase_rad),
        })
        .collect();
    sort_taps(&mut taps);
    taps
}

/// Per-element impulse responses for a rectangular array.
///
/// Element (m, n) is at index `m * cols + n`; all elements share the same
/// delays, with amplitudes rotated by the array response of each component's
/// direction of arrival.
pub fn cir_array<R: Real>(drop: &ChannelDrop<R>, geom: &ArrayGeometry<R>) -> Vec<Vec<Tap<R>>> {
    let mut elements = vec![Vec::with_capacity(drop.mpc_count()); geom.elements()];
    for m in drop.mpcs() {
        let base = Complex::from_polar(tap_gain(m.power_db, drop.path_loss_db), m.phase_rad);
        let steering = steering_vector(geom, m.aoa_deg, m.eoa_deg);
        for (taps, phase_factor) in elements.iter_mut().zip(steering) {
            taps.push(Tap {
                delay_ns: m.delay_ns,
                amplitude: base * phase_factor,
            });
        }
    }
    for taps in &mut elements {
        sort_taps(taps);
    }
    elements
}

/// Array response of a plane wave from (azimuth, elevation), element-major.
///
/// With the propagation direction `u = (sin e cos a, sin e sin a, cos e)`,
/// element (m, n) sees the phase `2 pi * spacing * (m u_x + n u_y)`.
pub fn steering_vector<R: Real>(
    geom: &ArrayGeometry<R>,
    aoa_deg: R,
    eoa_deg: R,
) -> Vec<Complex<R>> {
    let azimuth = aoa_deg.to_radians();
    let elevation = eoa_deg.to_radians();
    let u_x = elevation.sin() * azimuth.cos();
    let u_y = elevation.sin() * azimuth.sin();
    let per_spacing = R::of(2.0) * R::PI() * geom.spacing_wavelengths;
    let mut v = Vec::with_capacity(geom.elements());
    for m in 0..geom.rows {
        for n in 0..geom.cols {
            let phase = per_spacing * (R::of(m as f64) * u_x + R::of(n as f64) * u_y);
            v.push(Complex::from_polar(R::one(), phase));
        }
    }
    v
}

/// Frequency grid of `points` offsets spanning `span_hz`, centred on zero.
pub fn frequency_grid<R: Real>(span_hz: R, points: usize) -> Result<Vec<R>> {
    if points < 2 {
        return Err(Error::InvalidArgument(format!(
            "a frequency grid needs at least 2 points, got {points}"
        )));
    }
    if !(span_hz > R::zero()) {
        return Err(Error::NonPositive {
            field: "span_hz",
            value: span_hz.as_f64(),
        });
    }
    let half = span_hz / R::of(2.0);
    let step = span_hz / R::of(points as f64 - 1.0);
    Ok((0..points)
        .map(|i| R::of(i as f64) * step - half)
        .collect())
}

/// The default sounding grid: 1024 points across 30 MHz.
pub fn default_frequency_grid<R: Real>() -> Vec<R> {
    frequency_grid(R::of(30.0e6), 1024).expect("default grid parameters are valid")
}

/// Frequency response at the given offsets:
/// `H(f) = sum_k amplitude_k exp(-j 2 pi f delay_k)`.
pub fn transfer_function<R: Real>(
    taps: &[Tap<R>],
    freq_offsets_hz: &[R],
) -> Result<Vec<Complex<R>>> {
    if taps.is_empty() {
        return Err(Error::EmptyInput { what: "taps" });
    }
    if freq_offsets_hz.is_empty() {
        return Err(Error::EmptyInput {
            what: "frequency grid",
        });
    }
    let minus_two_pi = -R::of(2.0) * R::PI();
    let ns = R::of(1.0e-9);
    Ok(freq_offsets_hz
        .iter()
        .map(|&f| {
            let mut h = Complex::new(R::zero(), R::zero());
            for tap in taps {
                let phase = minus_two_pi * f * tap.delay_ns * ns;
                h = h + tap.amplitude * Complex::from_polar(R::one(), phase);
            }
            h
        })
        .collect())
}

#[inline]
fn tap_gain<R: Real>(power_db: R, path_loss_db: R) -> R {
    (db_to_linear(power_db) * db_to_linear(-path_loss_db)).sqrt()
}

/// `10^(db/10)`.
#[inline]
pub fn db_to_linear<R: Real>(db: R) -> R {
    R::of(10.0).powf(db / R::of(10.0))
}

fn sort_taps<R: Real>(taps: &mut [Tap<R>]) {
    taps.sort_by(|a, b| {
        a.delay_ns
            .partial_cmp(&b.delay_ns)
            .unwrap_or(std::cmp::Ordering::Equal)
    });
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::pathloss::SConvention;
    use rand::SeedableRng;
    use rand_chacha::ChaCha8Rng;

    fn mcl_env() -> EnvFactor<f64> {
        EnvFactor::from_s(30.0)
    }

    fn drop_at(seed: SeedRecord, state: LinkState) -> ChannelDrop<f64> {
        generate_drop(
            &mcl_env(),
            state,
            100.0,
            &PathLossConfig::default(),
            &SynthesisConfig::default(),
            &SmallScaleTable::default(),
            seed,
        )
        .unwrap()
    }

    #[test]
    fn drops_are_reproducible_and_streams_independent() {
        let seed = SeedRecord {
            master_seed: 3,
            drop_index: 17,
        };
        let a = drop_at(seed, LinkState::Nlos);
        let b = drop_at(seed, LinkState::Nlos);
        assert_eq!(a, b);
        let c = drop_at(
            SeedRecord {
                master_seed: 3,
                drop_index: 18,
            },
            LinkState::Nlos,
        );
        assert_ne!(a, c);
    }

    #[test]
    fn generated_drops_respect_structural_invariants() {
        for i in 0..50 {
            let drop = drop_at(
                SeedRecord {
                    master_seed: 11,
                    drop_index: i,
                },
                if i % 2 == 0 { LinkState::Los } else { LinkState::Nlos },
            );
            assert!(!drop.clusters.is_empty());
            for cluster in &drop.clusters {
                assert!(!cluster.mpcs.is_empty());
                assert!(cluster.center.delay_ns >= 0.0);
                for m in &cluster.mpcs {
                    assert!(m.delay_ns >= 0.0);
                    assert!((0.0..360.0).contains(&m.aoa_deg));
                    assert!((0.0..=180.0).contains(&m.eoa_deg));
                    assert!((0.0..std::f64::consts::TAU).contains(&m.phase_rad));
                }
            }
        }
    }

    #[test]
    fn normalization_shifts_two_equal_components_to_minus_3_db() {
        let mut drop = two_component_drop(0.0, 0.0, 20.0);
        normalize_powers(&mut drop);
        for m in drop.mpcs() {
            assert!((m.power_db - -3.010299956639812).abs() < 1e-12);
        }
        let total: f64 = drop.mpcs().map(|m| db_to_linear(m.power_db)).sum();
        assert!((total - 1.0).abs() < 1e-9);
        // idempotent
        let before: Vec<f64> = drop.mpcs().map(|m| m.power_db).collect();
        normalize_powers(&mut drop);
        let after: Vec<f64> = drop.mpcs().map(|m| m.power_db).collect();
        for (b, a) in before.iter().zip(&after) {
            assert!((b - a).abs() < 1e-12);
        }
    }

    #[test]
    fn generated_drops_are_normalized_by_default() {
        let drop = drop_at(
            SeedRecord {
                master_seed: 5,
                drop_index: 0,
            },
            LinkState::Los,
        );
        assert!(drop.normalized);
        let total: f64 = drop.mpcs().map(|m| db_to_linear(m.power_db)).sum();
        assert!((total - 1.0).abs() < 1e-9);
    }

    #[test]
    fn cir_tap_amplitude_combines_power_share_and_loss() {
        // single component at 0 dB with 20 dB loss: amplitude magnitude 0.1
        let drop = single_component_drop(0.0, 20.0, 0.0);
        let taps = cir(&drop);
        assert_eq!(taps.len(), 1);
        assert!((taps[0].amplitude.re - 0.1).abs() < 1e-15);
        assert!(taps[0].amplitude.im.abs() < 1e-15);
    }

    #[test]
    fn cir_taps_are_sorted_by_delay() {
        let drop = drop_at(
            SeedRecord {
                master_seed: 9,
                drop_index: 2,
            },
            LinkState::Nlos,
        );
        let taps = cir(&drop);
        assert_eq!(taps.len(), drop.mpc_count());
        for pair in taps.windows(2) {
            assert!(pair[0].delay_ns <= pair[1].delay_ns);
        }
    }

    #[test]
    fn normalized_cir_energy_is_the_inverse_linear_loss() {
        let drop = drop_at(
            SeedRecord {
                master_seed: 21,
                drop_index: 4,
            },
            LinkState::Los,
        );
        let energy: f64 = cir(&drop).iter().map(|t| t.amplitude.norm_sqr()).sum();
        let expected = db_to_linear(-drop.path_loss_db);
        assert!((energy / expected - 1.0).abs() < 1e-9);
    }

    #[test]
    fn steering_vector_matches_hand_values() {
        let geom = ArrayGeometry::<f64>::default();
        // element (0,0) always sees zero phase
        let v = steering_vector(&geom, 123.4, 57.8);
        assert_eq!(v.len(), 32);
        assert_eq!(v[0], Complex::new(1.0, 0.0));
        // wave along +y at half-wavelength spacing: adjacent columns pi apart
        let v = steering_vector(&geom, 90.0, 90.0);
        assert!((v[1].re - -1.0).abs() < 1e-12);
        assert!(v[1].im.abs() < 1e-12);
        // from zenith the in-plane projection vanishes: all elements in phase
        let v = steering_vector(&geom, 45.0, 0.0);
        for e in &v {
            assert!((e.re - 1.0).abs() < 1e-12);
        }
    }

    #[test]
    fn array_cir_shares_delays_and_rotates_amplitudes() {
        let drop = drop_at(
            SeedRecord {
                master_seed: 2,
                drop_index: 1,
            },
            LinkState::Los,
        );
        let geom = ArrayGeometry::default();
        let elements = cir_array(&drop, &geom);
        assert_eq!(elements.len(), 32);
        let scalar = cir(&drop);
        for taps in &elements {
            assert_eq!(taps.len(), scalar.len());
            for (a, s) in taps.iter().zip(&scalar) {
                assert_eq!(a.delay_ns, s.delay_ns);
                assert!((a.amplitude.norm() - s.amplitude.norm()).abs() < 1e-12);
            }
        }
        // element (0,0) is the scalar response itself
        for (a, s) in elements[0].iter().zip(&scalar) {
            assert!((a.amplitude - s.amplitude).norm() < 1e-12);
        }
    }

    #[test]
    fn two_tap_transfer_function_nulls_at_the_expected_offset() {
        let taps = vec![
            Tap {
                delay_ns: 0.0f64,
                amplitude: Complex::new(0.5, 0.0),
            },
            Tap {
                delay_ns: 33.3,
                amplitude: Complex::new(0.5, 0.0),
            },
        ];
        let null_hz = 1.0 / (2.0 * 33.3e-9);
        let h = transfer_function(&taps, &[0.0, null_hz]).unwrap();
        assert!((h[0].norm() - 1.0).abs() < 1e-12);
        assert!(h[1].norm() < 1e-9);
    }

    #[test]
    fn default_grid_spans_the_sounding_bandwidth() {
        let g: Vec<f64> = default_frequency_grid();
        assert_eq!(g.len(), 1024);
        assert_eq!(g[0], -15.0e6);
        assert!((g[1023] - 15.0e6).abs() < 1e-6);
        assert!(g.windows(2).all(|w| w[1] > w[0]));
    }

    #[test]
    fn empty_inputs_are_rejected() {
        assert!(transfer_function::<f64>(&[], &[0.0]).is_err());
        let taps = vec![Tap {
            delay_ns: 0.0,
            amplitude: Complex::new(1.0f64, 0.0),
        }];
        assert!(transfer_function(&taps, &[]).is_err());
        assert!(frequency_grid(30.0e6f64, 1).is_err());
        assert!(frequency_grid(-1.0f64, 16).is_err());
    }

    #[test]
    fn angle_wrapping_behaves() {
        assert_eq!(wrap_azimuth_deg(-1.0f64), 359.0);
        assert_eq!(wrap_azimuth_deg(360.0f64), 0.0);
        assert_eq!(wrap_azimuth_deg(725.0f64), 5.0);
        assert_eq!(wrap_elevation_deg(181.0f64), 179.0);
        assert_eq!(wrap_elevation_deg(-10.0f64), 10.0);
        assert_eq!(wrap_elevation_deg(180.0f64), 180.0);
        assert_eq!(wrap_elevation_deg(90.0f64), 90.0);
    }

    #[test]
    fn phase_redraw_keeps_everything_but_phases() {
        let drop = drop_at(
            SeedRecord {
                master_seed: 33,
                drop_index: 0,
            },
            LinkState::Nlos,
        );
        let mut rng = ChaCha8Rng::seed_from_u64(99);
        let redrawn = redraw_phases(&drop, &mut rng);
        assert_eq!(drop.clusters.len(), redrawn.clusters.len());
        let mut any_changed = false;
        for (a, b) in drop.mpcs().zip(redrawn.mpcs()) {
            assert_eq!(a.power_db, b.power_db);
            assert_eq!(a.delay_ns, b.delay_ns);
            assert_eq!(a.aoa_deg, b.aoa_deg);
            assert_eq!(a.eoa_deg, b.eoa_deg);
            any_changed |= a.phase_rad != b.phase_rad;
        }
        assert!(any_changed);
    }

    #[test]
    fn raw_s_and_normalized_s_reach_the_same_generator() {
        let cfg_raw = PathLossConfig::<f64>::default();
        let cfg_norm = PathLossConfig {
            s_convention: SConvention::Normalized,
            ..cfg_raw
        };
        let seed = SeedRecord {
            master_seed: 0,
            drop_index: 0,
        };
        let a = generate_drop(
            &mcl_env(),
            LinkState::Los,
            100.0,
            &cfg_raw,
            &SynthesisConfig::default(),
            &SmallScaleTable::default(),
            seed,
        )
        .unwrap();
        let b = generate_drop(
            &mcl_env(),
            LinkState::Los,
            100.0,
            &cfg_norm,
            &SynthesisConfig::default(),
            &SmallScaleTable::default(),
            seed,
        )
        .unwrap();
        // the convention changes only the large-scale loss, not the draws
        assert_ne!(a.path_loss_db, b.path_loss_db);
        assert_eq!(a.clusters, b.clusters);
    }

    fn single_component_drop(power_db: f64, loss_db: f64, phase: f64) -> ChannelDrop<f64> {
        ChannelDrop {
            env: mcl_env(),
            state: LinkState::Los,
            distance_m: 100.0,
            path_loss_db: loss_db,
            clusters: vec![Cluster {
                center: ClusterCenter {
                    power_db,
                    delay_ns: 10.0,
                    aoa_deg: 90.0,
                    eoa_deg: 90.0,
                },
                mpcs: vec![Mpc {
                    power_db,
                    delay_ns: 10.0,
                    aoa_deg: 90.0,
                    eoa_deg: 90.0,
                    phase_rad: phase,
                }],
            }],
            normalized: false,
            seed: SeedRecord {
                master_seed: 0,
                drop_index: 0,
            },
        }
    }

    fn two_component_drop(p1_db: f64, p2_db: f64, loss_db: f64) -> ChannelDrop<f64> {
        let mut drop = single_component_drop(p1_db, loss_db, 0.0);
        drop.clusters[0].mpcs.push(Mpc {
            power_db: p2_db,
            delay_ns: 43.3,
            aoa_deg: 100.0,
            eoa_deg: 85.0,
            phase_rad: 0.0,
        });
        drop
    }
}
