//! Runtime self-checks.
//!
//! `run_checks` replays reference computations, structural invariants, and
//! quick statistical tests against the live build, including any table
//! overrides in effect, and reports each check by name. The CLI exposes this
//! as its `validate` subcommand; the same registry backs scripted health
//! checks after configuration changes.

use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};

use crate::error::Error;
use crate::harness::{
    self, compare_models, records_to_csv, run_campaign, CampaignConfig, ScenarioPreset,
    StateSchedule,
};
use crate::morphology::{self, Building, EnvFactor, ObservationRegion};
use crate::pathloss::{self, LinkState, PathLossCoefficients, PathLossConfig, SConvention};
use crate::real::Real;
use crate::smallscale::{
    sample, sample_count, truncate_nonnegative, DistFamily, DistributionSpec, ParamKind,
    SmallScaleTable,
};
use crate::stats;
use crate::synthesis::{self, generate_drop, SeedRecord, SynthesisConfig};

/// Everything a check may depend on.
///
/// The table is the live one, overrides included, so a corrupted override
/// surfaces as named failures instead of silent nonsense downstream.
#[derive(Debug, Clone)]
pub struct CheckContext<R> {
    pub table: SmallScaleTable<R>,
    pub master_seed: u64,
}

impl<R: Real> Default for CheckContext<R> {
    fn default() -> Self {
        CheckContext {
            table: SmallScaleTable::default(),
            master_seed: 0,
        }
    }
}

/// Pass with details, or fail with a reason.
pub type CheckResult = std::result::Result<String, String>;

/// One named self-check.
pub struct Check<R: Real> {
    pub suite: &'static str,
    pub name: &'static str,
    pub run: fn(&CheckContext<R>) -> CheckResult,
}

impl<R: Real> Check<R> {
    pub fn full_name(&self) -> String {
        format!("{}/{}", self.suite, self.name)
    }
}

/// Outcome of one check.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct CheckReport {
    pub suite: String,
    pub name: String,
    pub passed: bool,
    pub details: String,
}

/// Outcome of a validation run.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct ValidationReport {
    pub checks: Vec<CheckReport>,
    pub n_passed: usize,
    pub n_failed: usize,
}

impl ValidationReport {
    pub fn passed(&self) -> bool {
        self.n_failed == 0
    }
}

/// Run the registry, optionally restricted to checks whose `suite/name`
/// contains `filter`.
pub fn run_checks<R: Real>(ctx: &CheckContext<R>, filter: Option<&str>) -> ValidationReport {
    let mut checks = Vec::new();
    for check in all_checks::<R>() {
        if let Some(f) = filter {
            if !check.full_name().contains(f) {
                continue;
            }
        }
        let outcome = (check.run)(ctx);
        checks.push(CheckReport {
            suite: check.suite.to_string(),
            name: check.name.to_string(),
            passed: outcome.is_ok(),
            details: match outcome {
                Ok(d) => d,
                Err(d) => d,
            },
        });
    }
    let n_passed = checks.iter().filter(|c| c.passed).count();
    let n_failed = checks.len() - n_passed;
    ValidationReport {
        checks,
        n_passed,
        n_failed,
    }
}

/// The full registry.
pub fn all_checks<R: Real>() -> Vec<Check<R>> {
    vec![
        Check { suite: "morphology", name: "weighted-mean-reference", run: check_weighted_mean },
        Check { suite: "morphology", name: "dispersion-reference", run: check_dispersion },
        Check { suite: "morphology", name: "composite-reference", run: check_composite },
        Check { suite: "morphology", name: "permutation-invariance", run: check_permutation },
        Check { suite: "pathloss", name: "los-reference", run: check_los_reference },
        Check { suite: "pathloss", name: "nlos-reference", run: check_nlos_reference },
        Check { suite: "pathloss", name: "baseline-zero-coupling", run: check_baseline },
        Check { suite: "pathloss", name: "distance-monotonicity", run: check_monotonicity },
        Check { suite: "smallscale", name: "table-parameter-sanity", run: check_table_sanity },
        Check { suite: "smallscale", name: "count-clamping", run: check_count_clamping },
        Check { suite: "smallscale", name: "truncation-guard", run: check_truncation_guard },
        Check { suite: "sampling", name: "ks-normal", run: check_ks_normal },
        Check { suite: "sampling", name: "ks-laplace", run: check_ks_laplace },
        Check { suite: "sampling", name: "ks-lognormal", run: check_ks_lognormal },
        Check { suite: "sampling", name: "phase-uniformity", run: check_phase_uniformity },
        Check { suite: "synthesis", name: "drop-determinism", run: check_drop_determinism },
        Check { suite: "synthesis", name: "normalization-unit-energy", run: check_unit_energy },
        Check { suite: "synthesis", name: "cir-energy-matches-loss", run: check_cir_energy },
        Check { suite: "synthesis", name: "angle-domains", run: check_angle_domains },
        Check { suite: "synthesis", name: "two-tap-null", run: check_two_tap_null },
        Check { suite: "synthesis", name: "steering-reference", run: check_steering },
        Check { suite: "stats", name: "delay-spread-reference", run: check_delay_spread },
        Check { suite: "stats", name: "angular-spread-reference", run: check_angular_spread },
        Check { suite: "stats", name: "ctf-loss-reference", run: check_ctf_loss },
        Check { suite: "stats", name: "ecdf-reference", run: check_ecdf },
        Check { suite: "harness", name: "digest-reference", run: check_digest },
        Check { suite: "harness", name: "comparison-rmse-reference", run: check_rmse },
        Check { suite: "harness", name: "thread-invariance", run: check_thread_invariance },
    ]
}

fn fail(e: Error) -> String {
    e.to_string()
}

fn approx(what: &str, got: f64, want: f64, tol: f64) -> std::result::Result<(), String> {
    if (got - want).abs() <= tol {
        Ok(())
    } else {
        Err(format!("{what}: got {got}, want {want} (tol {tol})"))
    }
}

fn region_of<R: Real>(buildings: &[(f64, f64)], area: f64) -> ObservationRegion<R> {
    ObservationRegion {
        name: "check".to_string(),
        region_area: R::of(area),
        buildings: buildings
            .iter()
            .map(|&(h, a)| Building {
                height: R::of(h),
                footprint_area: R::of(a),
            })
            .collect(),
    }
}

fn check_weighted_mean<R: Real>(_: &CheckContext<R>) -> CheckResult {
    let r = region_of::<R>(&[(10.0, 100.0), (30.0, 300.0)], 1000.0);
    let mean = morphology::weighted_mean_height(&r).map_err(fail)?;
    approx("weighted mean", mean.as_f64(), 25.0, 1e-12)?;
    Ok("mean 25.0 for the two-building reference region".to_string())
}

fn check_dispersion<R: Real>(_: &CheckContext<R>) -> CheckResult {
    let r = region_of::<R>(&[(10.0, 100.0), (30.0, 100.0)], 1000.0);
    let d = morphology::height_dispersion(&r).map_err(fail)?;
    approx("dispersion", d.as_f64(), 14.142135623730951, 1e-9)?;
    let single = region_of::<R>(&[(50.0, 100.0)], 1000.0);
    let z = morphology::height_dispersion(&single).map_err(fail)?;
    approx("single-building dispersion", z.as_f64(), 0.0, 0.0)?;
    Ok("dispersion sqrt(200) and single-building zero".to_string())
}

fn check_composite<R: Real>(_: &CheckContext<R>) -> CheckResult {
    let r = region_of::<R>(&[(10.0, 100.0), (30.0, 100.0)], 500.0);
    let f = morphology::composite_factor(&r).map_err(fail)?;
    approx("composite", f.s.as_f64(), 13.14842712474619, 1e-9)?;
    approx("normalized composite", f.s_norm.as_f64(), -1.1234381916835872, 1e-9)?;
    Ok(format!("composite {} as expected", f.s))
}

fn check_permutation<R: Real>(_: &CheckContext<R>) -> CheckResult {
    let a = region_of::<R>(&[(10.0, 100.0), (30.0, 100.0), (12.3, 77.7)], 500.0);
    let mut b = a.clone();
    b.buildings.reverse();
    let fa = morphology::composite_factor(&a).map_err(fail)?;
    let fb = morphology::composite_factor(&b).map_err(fail)?;
    if fa.s != fb.s || fa.height_dispersion_m != fb.height_dispersion_m {
        return Err(format!(
            "building order changed the composite: {} vs {}",
            fa.s, fb.s
        ));
    }
    Ok("composite is independent of building order".to_string())
}

fn check_los_reference<R: Real>(_: &CheckContext<R>) -> CheckResult {
    let unit = PathLossConfig::<R> {
        carrier_frequency_ghz: R::one(),
        ..PathLossConfig::default()
    };
    let v = pathloss::pl_los(R::of(10.0), R::zero(), &unit).map_err(fail)?;
    approx("neutral sight-line loss at 10 m", v.as_f64(), 71.4, 1e-12)?;
    let v = pathloss::pl_los(R::of(100.0), R::of(30.0), &PathLossConfig::default()).map_err(fail)?;
    approx("coupled sight-line loss at 100 m", v.as_f64(), 98.43198786482169, 1e-9)?;
    Ok("71.4 dB neutral and 98.432 dB coupled reference points".to_string())
}

fn check_nlos_reference<R: Real>(_: &CheckContext<R>) -> CheckResult {
    let unit = PathLossConfig::<R> {
        carrier_frequency_ghz: R::one(),
        rx_height_m: R::of(1.5),
        ..PathLossConfig::default()
    };
    let v = pathloss::pl_nlos(R::of(10.0), R::zero(), &unit).map_err(fail)?;
    approx("neutral obstructed loss at 10 m", v.as_f64(), 57.699999999999996, 1e-12)?;
    let cfg = PathLossConfig::<R>::default();
    let v = pathloss::pl_nlos(R::of(100.0), R::of(30.0), &cfg).map_err(fail)?;
    approx("coupled obstructed loss at 100 m", v.as_f64(), 186.04529506614938, 1e-9)?;
    let v = pathloss::pl_nlos(R::of(100.0), R::one(), &cfg).map_err(fail)?;
    approx("unit-factor obstructed loss at 100 m", v.as_f64(), 111.53049222299919, 1e-9)?;
    Ok("57.7, 186.045, 111.530 dB reference points".to_string())
}

fn check_baseline<R: Real>(_: &CheckContext<R>) -> CheckResult {
    let cfg = PathLossConfig::<R> {
        s_convention: SConvention::Normalized,
        ..PathLossConfig::default()
    };
    let env = EnvFactor::from_s(R::of(30.0));
    for d in [10.0, 50.0, 123.4, 300.0] {
        for state in LinkState::ALL {
            let a = pathloss::pl(R::of(d), &env, state, &cfg).map_err(fail)?;
            let b = pathloss::pl_baseline(R::of(d), state, &cfg).map_err(fail)?;
            if a != b {
                return Err(format!(
                    "{state} at {d} m: neutral environment {a} differs from baseline {b}"
                ));
            }
        }
    }
    Ok("a neutral environment reproduces the baseline exactly".to_string())
}

fn check_monotonicity<R: Real>(_: &CheckContext<R>) -> CheckResult {
    let cfg = PathLossConfig::<R>::default();
    let grid = pathloss::log_spaced_grid(R::one(), R::of(1000.0), 64).map_err(fail)?;
    for s in [10.0, 30.0, 50.0] {
        let mut last = (f64::NEG_INFINITY, f64::NEG_INFINITY);
        for &d in &grid {
            let los = pathloss::pl_los(d, R::of(s), &cfg).map_err(fail)?.as_f64();
            let nlos = pathloss::pl_nlos(d, R::of(s), &cfg).map_err(fail)?.as_f64();
            if los <= last.0 || nlos <= last.1 {
                return Err(format!("loss not increasing at d = {d} for factor {s}"));
            }
            last = (los, nlos);
        }
    }
    Ok("loss grows with distance for factors 10, 30, 50".to_string())
}

fn check_table_sanity<R: Real>(ctx: &CheckContext<R>) -> CheckResult {
    for state in LinkState::ALL {
        for t in [-1.0, 0.0, 1.0] {
            let set = ctx.table.param_set(R::of(t), state).map_err(fail)?;
            for kind in ParamKind::ALL {
                let spec = set.get(kind);
                if !spec.scale.as_f64().is_finite() || !spec.location.as_f64().is_finite() {
                    return Err(format!(
                        "{}.{} at normalized factor {t}: non-finite parameters",
                        state.key(),
                        kind.key()
                    ));
                }
            }
        }
    }
    Ok("all scales positive and finite across the fitted range".to_string())
}

fn check_count_clamping<R: Real>(ctx: &CheckContext<R>) -> CheckResult {
    let set = ctx.table.param_set(R::zero(), LinkState::Los).map_err(fail)?;
    let mut rng = ChaCha8Rng::seed_from_u64(ctx.master_seed.wrapping_add(101));
    let n = 4000usize;
    let mut total = 0u64;
    for _ in 0..n {
        let c = sample_count(&set.n_cl, &mut rng);
        if c < 1 {
            return Err(format!("count sampler produced {c}"));
        }
        total += c as u64;
    }
    let mean = total as f64 / n as f64;
    // discretized mean of the cluster count at the table midpoint
    approx("count mean", mean, 1.7615712411271622, 5.0 * 0.80 / (n as f64).sqrt())?;
    Ok(format!("all counts >= 1, mean {mean:.4}"))
}

fn check_truncation_guard<R: Real>(ctx: &CheckContext<R>) -> CheckResult {
    let hopeless = DistributionSpec {
        family: DistFamily::Normal,
        location: R::of(-1.0e9),
        scale: R::one(),
    };
    let mut rng = ChaCha8Rng::seed_from_u64(ctx.master_seed.wrapping_add(102));
    match truncate_nonnegative(&hopeless, &mut rng) {
        Err(Error::RejectionExhausted { .. }) => {}
        other => {
            return Err(format!(
                "hopeless truncation did not trip the rejection guard: {other:?}"
            ))
        }
    }
    let set = ctx.table.param_set(R::zero(), LinkState::Los).map_err(fail)?;
    let (v, rejected) = truncate_nonnegative(&set.delay, &mut rng).map_err(fail)?;
    if v < R::zero() {
        return Err(format!("truncated draw is negative: {v}"));
    }
    Ok(format!(
        "guard trips on an impossible target; a positive-support draw needed {rejected} rejections"
    ))
}

const KS_N: usize = 4000;
// one-sample 1% critical factor
const KS_CRIT: f64 = 1.6276236307187293;

fn ks_statistic(mut samples: Vec<f64>, cdf: impl Fn(f64) -> f64) -> f64 {
    samples.sort_by(|a, b| a.partial_cmp(b).expect("finite samples"));
    let n = samples.len() as f64;
    let mut d = 0.0f64;
    for (i, x) in samples.iter().enumerate() {
        let f = cdf(*x);
        d = d.max((f - i as f64 / n).abs());
        d = d.max((f - (i as f64 + 1.0) / n).abs());
    }
    d
}

fn erf(x: f64) -> f64 {
    // Abramowitz-Stegun 7.1.26, 1.5e-7 absolute accuracy
    let sign = x.signum();
    let x = x.abs();
    let t = 1.0 / (1.0 + 0.3275911 * x);
    let poly = t
        * (0.254829592
            + t * (-0.284496736 + t * (1.421413741 + t * (-1.453152027 + t * 1.061405429))));
    sign * (1.0 - poly * (-x * x).exp())
}

fn normal_cdf(x: f64, location: f64, scale: f64) -> f64 {
    0.5 * (1.0 + erf((x - location) / (scale * std::f64::consts::SQRT_2)))
}

fn laplace_cdf(x: f64, location: f64, scale: f64) -> f64 {
    if x < location {
        0.5 * ((x - location) / scale).exp()
    } else {
        1.0 - 0.5 * ((location - x) / scale).exp()
    }
}

fn ks_check<R: Real>(
    ctx: &CheckContext<R>,
    state: LinkState,
    kind: ParamKind,
    stream: u64,
    cdf_of: impl Fn(f64, f64) -> Box<dyn Fn(f64) -> f64>,
) -> CheckResult {
    let set = ctx.table.param_set(R::zero(), state).map_err(fail)?;
    let spec = *set.get(kind);
    let mut rng = ChaCha8Rng::seed_from_u64(ctx.master_seed.wrapping_add(stream));
    let samples: Vec<f64> = (0..KS_N).map(|_| sample(&spec, &mut rng).as_f64()).collect();
    let cdf = cdf_of(spec.location.as_f64(), spec.scale.as_f64());
    let d = ks_statistic(samples, cdf);
    let crit = KS_CRIT / (KS_N as f64).sqrt();
    if d < crit {
        Ok(format!(
            "{}.{}: statistic {d:.5} below the 1% critical value {crit:.5}",
            state.key(),
            kind.key()
        ))
    } else {
        Err(format!(
            "{}.{}: statistic {d:.5} exceeds the 1% critical value {crit:.5}",
            state.key(),
            kind.key()
        ))
    }
}

fn check_ks_normal<R: Real>(ctx: &CheckContext<R>) -> CheckResult {
    ks_check(ctx, LinkState::Los, ParamKind::Power, 201, |loc, scale| {
        Box::new(move |x| normal_cdf(x, loc, scale))
    })
}

fn check_ks_laplace<R: Real>(ctx: &CheckContext<R>) -> CheckResult {
    ks_check(ctx, LinkState::Nlos, ParamKind::Aoa, 202, |loc, scale| {
        Box::new(move |x| laplace_cdf(x, loc, scale))
    })
}

fn check_ks_lognormal<R: Real>(ctx: &CheckContext<R>) -> CheckResult {
    ks_check(ctx, LinkState::Los, ParamKind::Delay, 203, |loc, scale| {
        Box::new(move |x| if x <= 0.0 { 0.0 } else { normal_cdf(x.ln(), loc, scale) })
    })
}

fn check_phase_uniformity<R: Real>(ctx: &CheckContext<R>) -> CheckResult {
    let preset = ScenarioPreset::<R>::mcl();
    let cfg = PathLossConfig::default();
    let syn = SynthesisConfig::default();
    let mut phases = Vec::new();
    let mut drop_index = 0u64;
    while phases.len() < 18_000 {
        let drop = generate_drop(
            &preset.env,
            LinkState::Nlos,
            R::of(100.0),
            &cfg,
            &syn,
            &ctx.table,
            SeedRecord {
                master_seed: ctx.master_seed.wrapping_add(300),
                drop_index,
            },
        )
        .map_err(fail)?;
        phases.extend(drop.mpcs().map(|m| m.phase_rad.as_f64()));
        drop_index += 1;
    }
    let bins = 36usize;
    let mut counts = vec![0u64; bins];
    for p in &phases {
        let i = ((p / std::f64::consts::TAU) * bins as f64) as usize;
        counts[i.min(bins - 1)] += 1;
    }
    let expected = phases.len() as f64 / bins as f64;
    let chi2: f64 = counts
        .iter()
        .map(|&c| {
            let d = c as f64 - expected;
            d * d / expected
        })
        .sum();
    // 1% critical value at 35 degrees of freedom
    let crit = 57.3420734338592;
    if chi2 < crit {
        Ok(format!(
            "chi-square {chi2:.2} over {bins} bins below the 1% critical value {crit:.2}"
        ))
    } else {
        Err(format!(
            "chi-square {chi2:.2} over {bins} bins exceeds the 1% critical value {crit:.2}"
        ))
    }
}

fn reference_drop<R: Real>(
    ctx: &CheckContext<R>,
    state: LinkState,
    drop_index: u64,
) -> crate::error::Result<synthesis::ChannelDrop<R>> {
    generate_drop(
        &ScenarioPreset::<R>::mcl().env,
        state,
        R::of(100.0),
        &PathLossConfig::default(),
        &SynthesisConfig::default(),
        &ctx.table,
        SeedRecord {
            master_seed: ctx.master_seed.wrapping_add(400),
            drop_index,
        },
    )
}

fn check_drop_determinism<R: Real>(ctx: &CheckContext<R>) -> CheckResult {
    let a = reference_drop(ctx, LinkState::Nlos, 7).map_err(fail)?;
    let b = reference_drop(ctx, LinkState::Nlos, 7).map_err(fail)?;
    let (sa, sb) = (
        serde_json::to_string(&a).map_err(|e| e.to_string())?,
        serde_json::to_string(&b).map_err(|e| e.to_string())?,
    );
    if sa != sb {
        return Err("identical seeds produced different drops".to_string());
    }
    let c = reference_drop(ctx, LinkState::Nlos, 8).map_err(fail)?;
    let sc = serde_json::to_string(&c).map_err(|e| e.to_string())?;
    if sa == sc {
        return Err("different drop indices produced identical drops".to_string());
    }
    Ok("drops reproduce under their seed and differ across streams".to_string())
}

fn check_unit_energy<R: Real>(ctx: &CheckContext<R>) -> CheckResult {
    for i in 0..20 {
        let drop = reference_drop(ctx, if i % 2 == 0 { LinkState::Los } else { LinkState::Nlos }, i)
            .map_err(fail)?;
        let total: f64 = drop
            .mpcs()
            .map(|m| synthesis::db_to_linear(m.power_db).as_f64())
            .sum();
        if (total - 1.0).abs() > 1e-9 {
            return Err(format!("drop {i}: linear power sum {total} is not 1"));
        }
    }
    Ok("component powers sum to unity in 20 drops".to_string())
}

fn check_cir_energy<R: Real>(ctx: &CheckContext<R>) -> CheckResult {
    let drop = reference_drop(ctx, LinkState::Los, 3).map_err(fail)?;
    let energy: f64 = synthesis::cir(&drop)
        .iter()
        .map(|t| t.amplitude.norm_sqr().as_f64())
        .sum();
    let expected = synthesis::db_to_linear(-drop.path_loss_db).as_f64();
    if (energy / expected - 1.0).abs() > 1e-9 {
        return Err(format!(
            "impulse response energy {energy:e} does not match loss {expected:e}"
        ));
    }
    Ok("impulse response energy equals the inverse linear loss".to_string())
}

fn check_angle_domains<R: Real>(ctx: &CheckContext<R>) -> CheckResult {
    for i in 0..40 {
        let drop = reference_drop(ctx, if i % 2 == 0 { LinkState::Los } else { LinkState::Nlos }, i)
            .map_err(fail)?;
        for m in drop.mpcs() {
            let (aoa, eoa, tau, phi) = (
                m.aoa_deg.as_f64(),
                m.eoa_deg.as_f64(),
                m.delay_ns.as_f64(),
                m.phase_rad.as_f64(),
            );
            if !(0.0..360.0).contains(&aoa) {
                return Err(format!("drop {i}: azimuth {aoa} outside [0, 360)"));
            }
            if !(0.0..=180.0).contains(&eoa) {
                return Err(format!("drop {i}: elevation {eoa} outside [0, 180]"));
            }
            if tau < 0.0 {
                return Err(format!("drop {i}: negative delay {tau}"));
            }
            if !(0.0..std::f64::consts::TAU).contains(&phi) {
                return Err(format!("drop {i}: phase {phi} outside [0, 2 pi)"));
            }
        }
    }
    Ok("angles, delays, and phases stay in their domains in 40 drops".to_string())
}

fn check_two_tap_null<R: Real>(_: &CheckContext<R>) -> CheckResult {
    let taps = [
        synthesis::Tap {
            delay_ns: R::zero(),
            amplitude: num_complex::Complex::new(R::of(0.5), R::zero()),
        },
        synthesis::Tap {
            delay_ns: R::of(33.3),
            amplitude: num_complex::Complex::new(R::of(0.5), R::zero()),
        },
    ];
    let null_hz = R::of(1.0 / (2.0 * 33.3e-9));
    let h = synthesis::transfer_function(&taps, &[R::zero(), null_hz]).map_err(fail)?;
    approx("flat response at zero offset", h[0].norm().as_f64(), 1.0, 1e-9)?;
    approx("spectral null depth", h[1].norm().as_f64(), 0.0, 1e-6)?;
    Ok("two equal taps null at half the inverse delay split".to_string())
}

fn check_steering<R: Real>(_: &CheckContext<R>) -> CheckResult {
    let geom = synthesis::ArrayGeometry::<R>::default();
    let v = synthesis::steering_vector(&geom, R::of(90.0), R::of(90.0));
    if v.len() != 32 {
        return Err(format!("expected 32 elements, got {}", v.len()));
    }
    approx("reference element", v[0].re.as_f64(), 1.0, 1e-12)?;
    approx(
        "adjacent-column real part for a broadside wave",
        v[1].re.as_f64(),
        -1.0,
        1e-9,
    )?;
    let zenith = synthesis::steering_vector(&geom, R::of(45.0), R::zero());
    for e in &zenith {
        approx("zenith element", e.re.as_f64(), 1.0, 1e-9)?;
    }
    Ok("array response matches the half-wavelength reference points".to_string())
}

fn check_delay_spread<R: Real>(_: &CheckContext<R>) -> CheckResult {
    let profile = stats::Pdp {
        delay_ns: vec![R::zero(), R::of(100.0)],
        power_lin: vec![R::one(), R::of(3.0)],
    };
    let ds = stats::rms_delay_spread(&profile).map_err(fail)?;
    approx("delay spread", ds.as_f64(), 43.30127018922193, 1e-9)?;
    let shifted = stats::Pdp {
        delay_ns: vec![R::of(1.0e6), R::of(1.0e6 + 100.0)],
        power_lin: vec![R::one(), R::of(3.0)],
    };
    let ds2 = stats::rms_delay_spread(&shifted).map_err(fail)?;
    if (ds - ds2).abs().as_f64() / ds.as_f64() > 1e-6 {
        return Err(format!(
            "a constant delay offset moved the spread: {ds} vs {ds2}"
        ));
    }
    Ok("spread 43.301 ns, invariant to a constant delay offset".to_string())
}

fn check_angular_spread<R: Real>(_: &CheckContext<R>) -> CheckResult {
    let single = stats::angular_spread(&[R::of(45.0)], &[R::one()]).map_err(fail)?;
    approx("single direction", single.as_f64(), 0.0, 1e-9)?;
    let antipodal =
        stats::angular_spread(&[R::zero(), R::of(180.0)], &[R::one(), R::one()]).map_err(fail)?;
    approx("antipodal pair", antipodal.as_f64(), 1.0, 1e-9)?;
    let orthogonal =
        stats::angular_spread(&[R::zero(), R::of(90.0)], &[R::one(), R::one()]).map_err(fail)?;
    approx("orthogonal pair", orthogonal.as_f64(), 0.7071067811865476, 1e-9)?;
    Ok("0, 1, and sqrt(1/2) at the reference geometries".to_string())
}

fn check_ctf_loss<R: Real>(_: &CheckContext<R>) -> CheckResult {
    let h = [
        num_complex::Complex::new(R::one(), R::zero()),
        num_complex::Complex::new(R::zero(), R::zero()),
    ];
    let pl = stats::pathloss_from_ctf(&h).map_err(fail)?;
    approx("half-power response", pl.as_f64(), 3.010299956639812, 1e-9)?;
    Ok("3.0103 dB for a half-power response".to_string())
}

fn check_ecdf<R: Real>(_: &CheckContext<R>) -> CheckResult {
    let cdf = stats::EmpiricalCdf::new(vec![R::of(4.0), R::of(2.0), R::of(2.0)]).map_err(fail)?;
    approx("tied evaluation", cdf.eval(R::of(2.0)).as_f64(), 2.0 / 3.0, 1e-12)?;
    approx("upper tail", cdf.eval(R::of(4.0)).as_f64(), 1.0, 0.0)?;
    approx("lower tail", cdf.eval(R::one()).as_f64(), 0.0, 0.0)?;
    Ok("ties count together; tails evaluate to 0 and 1".to_string())
}

fn check_digest<R: Real>(_: &CheckContext<R>) -> CheckResult {
    let digest = harness::hex_sha256(b"abc");
    let want = "ba7816bf8f01cfea414140de5dae2223b00361a396177a9cb410ff61f20015ad";
    if digest != want {
        return Err(format!("digest of \"abc\" is {digest}, want {want}"));
    }
    Ok("content digest matches the published test vector".to_string())
}

fn check_rmse<R: Real>(_: &CheckContext<R>) -> CheckResult {
    let env = EnvFactor::<R>::from_s(R::of(30.0));
    let candidate = PathLossConfig::default();
    let reference = PathLossConfig {
        coefficients: PathLossCoefficients::baseline(),
        ..candidate
    };
    let cmp = compare_models(
        &[R::of(10.0), R::of(100.0)],
        &env,
        LinkState::Los,
        &reference,
        &candidate,
    )
    .map_err(fail)?;
    approx("model gap", cmp.rmse_db.as_f64(), 18.12456896039186, 1e-7)?;
    Ok("18.125 dB gap between coupled model and baseline".to_string())
}

fn check_thread_invariance<R: Real>(ctx: &CheckContext<R>) -> CheckResult {
    let preset = ScenarioPreset::<R>::mcl();
    let mut cfg = CampaignConfig::for_preset(&preset, 12, ctx.master_seed.wrapping_add(500));
    cfg.distances_m = vec![R::of(20.0), R::of(50.0), R::of(120.0)];
    cfg.schedule = StateSchedule::Breakpoint;
    cfg.ctf_points = 16;
    cfg.table = ctx.table.clone();
    let run_in = |threads: usize| {
        rayon::ThreadPoolBuilder::new()
            .num_threads(threads)
            .build()
            .map_err(|e| e.to_string())?
            .install(|| run_campaign(&cfg))
            .map_err(|e| e.to_string())
    };
    let one = run_in(1)?;
    let four = run_in(4)?;
    if records_to_csv(&one.records) != records_to_csv(&four.records) {
        return Err("thread count changed the campaign records".to_string());
    }
    Ok("1-thread and 4-thread campaigns agree byte for byte".to_string())
}
