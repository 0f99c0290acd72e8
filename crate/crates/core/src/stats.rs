//! Link-level statistics extracted from channel realizations.
//!
//! Everything here operates on plain slices or on the small [`Pdp`] and
//! [`EmpiricalCdf`] containers, so the functions work equally on synthetic
//! drops and on measurement-style data loaded from files.

use num_complex::Complex;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::real::Real;
use crate::synthesis::Tap;

/// Delay resolution of the reference sounder, nanoseconds.
pub const DELAY_BIN_PRESET_NS: f64 = 33.3;

/// Power delay profile: linear power per delay, sorted by delay.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Pdp<R> {
    pub delay_ns: Vec<R>,
    pub power_lin: Vec<R>,
}

impl<R: Real> Pdp<R> {
    pub fn len(&self) -> usize {
        self.delay_ns.len()
    }

    pub fn is_empty(&self) -> bool {
        self.delay_ns.is_empty()
    }

    pub fn total_power(&self) -> R {
        let mut total = R::zero();
        for &p in &self.power_lin {
            total += p;
        }
        total
    }
}

/// Power delay profile of a set of taps.
///
/// With `bin_ns` set, tap powers accumulate into bins of that width anchored
/// at zero delay, and each occupied bin is reported at its left edge. Without
/// it, taps at exactly equal delays merge and everything else stays as is.
pub fn pdp<R: Real>(taps: &[Tap<R>], bin_ns: Option<R>) -> Result<Pdp<R>> {
    if taps.is_empty() {
        return Err(Error::EmptyInput { what: "taps" });
    }
    let mut pairs: Vec<(R, R)> = match bin_ns {
        Some(bin) => {
            if !(bin > R::zero()) {
                return Err(Error::NonPositive {
                    field: "bin_ns",
                    value: bin.as_f64(),
                });
            }
            let mut bins = std::collections::BTreeMap::new();
            for tap in taps {
                let index = (tap.delay_ns / bin).floor().as_f64() as u64;
                *bins.entry(index).or_insert(R::zero()) += tap.amplitude.norm_sqr();
            }
            bins.into_iter()
                .map(|(i, p)| (R::of(i as f64) * bin, p))
                .collect()
        }
        None => {
            let mut pairs: Vec<(R, R)> = taps
                .iter()
                .map(|t| (t.delay_ns, t.amplitude.norm_sqr()))
                .collect();
            pairs.sort_by(|a, b| a.0.partial_cmp(&b.0).unwrap_or(std::cmp::Ordering::Equal));
            let mut merged: Vec<(R, R)> = Vec::with_capacity(pairs.len());
            for (delay, power) in pairs {
                match merged.last_mut() {
                    Some(last) if last.0 == delay => last.1 += power,
                    _ => merged.push((delay, power)),
                }
            }
            merged
        }
    };
    let (delay_ns, power_lin) = pairs.drain(..).unzip();
    Ok(Pdp { delay_ns, power_lin })
}

/// Root-mean-square width of a power delay profile, in the delay unit of the
/// profile.
///
/// Computed as the square root of the power-weighted central second moment,
/// with the mean removed before squaring so a constant delay offset cannot
/// leak into the result.
pub fn rms_delay_spread<R: Real>(pdp: &Pdp<R>) -> Result<R> {
    if pdp.is_empty() {
        return Err(Error::EmptyInput {
            what: "power delay profile",
        });
    }
    let total = pdp.total_power();
    if !(total > R::zero()) {
        return Err(Error::NonPositive {
            field: "total power",
            value: total.as_f64(),
        });
    }
    let mut mean = R::zero();
    for (&tau, &p) in pdp.delay_ns.iter().zip(&pdp.power_lin) {
        mean += p * tau;
    }
    mean = mean / total;
    let mut second = R::zero();
    for (&tau, &p) in pdp.delay_ns.iter().zip(&pdp.power_lin) {
        let d = tau - mean;
        second += p * d * d;
    }
    Ok((second / total).sqrt())
}

/// Power-weighted angular spread on the unit circle.
///
/// Angles map to unit phasors, and the spread is the square root of the
/// power-weighted mean squared distance to the weighted phasor mean:
/// `sqrt(sum_l p_l |e^(j a_l) - mu|^2)` with `mu = sum_l p_l e^(j a_l)` and
/// the weights normalized to unit sum. Dimensionless, 0 for a single
/// direction, 1 for two equal antipodal directions, at most sqrt(2).
pub fn angular_spread<R: Real>(angles_deg: &[R], power_lin: &[R]) -> Result<R> {
    if angles_deg.is_empty() {
        return Err(Error::EmptyInput { what: "angles" });
    }
    if angles_deg.len() != power_lin.len() {
        return Err(Error::InvalidArgument(format!(
            "{} angles but {} weights",
            angles_deg.len(),
            power_lin.len()
        )));
    }
    let mut total = R::zero();
    for &p in power_lin {
        total += p;
    }
    if !(total > R::zero()) {
        return Err(Error::NonPositive {
            field: "total power",
            value: total.as_f64(),
        });
    }
    let phasor = |deg: R| {
        let rad = deg.to_radians();
        Complex::new(rad.cos(), rad.sin())
    };
    let mut mu = Complex::new(R::zero(), R::zero());
    for (&a, &p) in angles_deg.iter().zip(power_lin) {
        mu = mu + phasor(a).scale(p / total);
    }
    let mut spread_sq = R::zero();
    for (&a, &p) in angles_deg.iter().zip(power_lin) {
        spread_sq += (p / total) * (phasor(a) - mu).norm_sqr();
    }
    Ok(spread_sq.sqrt())
}

/// Narrowband path loss implied by a frequency response, dB:
/// `-10 log10(mean |H|^2)`.
pub fn pathloss_from_ctf<R: Real>(h: &[Complex<R>]) -> Result<R> {
    if h.is_empty() {
        return Err(Error::EmptyInput {
            what: "frequency response",
        });
    }
    let mut mean = R::zero();
    for v in h {
        mean += v.norm_sqr();
    }
    mean = mean / R::of(h.len() as f64);
    if !(mean > R::zero()) {
        return Err(Error::NonPositive {
            field: "mean response power",
            value: mean.as_f64(),
        });
    }
    Ok(-R::of(10.0) * mean.log10())
}

/// Empirical distribution of a sample, with ties counted together.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct EmpiricalCdf<R> {
    sorted: Vec<R>,
}

impl<R: Real> EmpiricalCdf<R> {
    pub fn new(mut samples: Vec<R>) -> Result<Self> {
        if samples.is_empty() {
            return Err(Error::EmptyInput { what: "samples" });
        }
        samples.sort_by(|a, b| a.partial_cmp(b).unwrap_or(std::cmp::Ordering::Equal));
        Ok(EmpiricalCdf { sorted: samples })
    }

    pub fn len(&self) -> usize {
        self.sorted.len()
    }

    pub fn is_empty(&self) -> bool {
        self.sorted.is_empty()
    }

    /// Sample values in ascending order.
    pub fn values(&self) -> &[R] {
        &self.sorted
    }

    /// Fraction of samples less than or equal to `x`.
    pub fn eval(&self, x: R) -> R {
        let count = self.sorted.partition_point(|&s| s <= x);
        R::of(count as f64) / R::of(self.sorted.len() as f64)
    }

    /// Smallest sample whose cumulative fraction reaches `q`.
    pub fn quantile(&self, q: R) -> Result<R> {
        if !(R::zero()..=R::one()).contains(&q) {
            return Err(Error::InvalidArgument(format!(
                "quantile level must lie in [0, 1], got {q}"
            )));
        }
        let n = self.sorted.len();
        let rank = (q * R::of(n as f64)).ceil().as_f64() as usize;
        Ok(self.sorted[rank.clamp(1, n) - 1])
    }
}
