//! Monte Carlo evaluation of quantized-gain averages and the deterministic
//! quantized line-of-sight gain.
//!
//! Deviations are drawn per trial from independent, seedable streams: the
//! generator is keyed by `(seed, trial)`, so trial `t` produces the same
//! draws whether or not trials `0..t` were generated first. That keeps
//! sweeps reproducible and makes results independent of evaluation order.

use alloc::vec::Vec;

use num_complex::Complex64;
#[allow(unused_imports)]
use num_traits::Float;
use rand_chacha::ChaCha8Rng;
use rand_core::{RngCore, SeedableRng};

use crate::channel::{array_response, CarrierSpec, DistanceModel};
use crate::error::Error;
use crate::gain;
use crate::geometry::{ElementGrid, SphericalPoint};
use crate::ris::{self, DeviationVector, QuantizerSpec};

/// Inputs shared by the Monte Carlo routines: a surface, a carrier, the
/// focal point the phases are matched to, and the point the gain is
/// evaluated at.
#[derive(Debug, Clone, Copy)]
pub struct Scenario<'a> {
    pub grid: &'a ElementGrid,
    pub carrier: &'a CarrierSpec,
    pub focal: &'a SphericalPoint,
    pub eval: &'a SphericalPoint,
    pub model: DistanceModel,
}

/// Monte Carlo estimate with its sampling uncertainty.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct McResult {
    /// Sample mean of the array gain.
    pub mean: f64,
    /// Standard error of the mean.
    pub std_error: f64,
    pub trials: usize,
    pub seed: u64,
}

#[inline]
fn unit_f64(rng: &mut ChaCha8Rng) -> f64 {
    // 53 uniform mantissa bits onto [0, 1).
    (rng.next_u64() >> 11) as f64 * (1.0 / (1u64 << 53) as f64)
}

fn fill_deviations(out: &mut Vec<f64>, n: usize, quantizer: &QuantizerSpec, seed: u64, trial: u64) {
    let bound = quantizer.max_deviation();
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    rng.set_stream(trial);
    out.clear();
    out.extend((0..n).map(|_| (2.0 * unit_f64(&mut rng) - 1.0) * bound));
}

/// Draws `n` deviations uniformly from `[-π/2^b, π/2^b)` for the given
/// `(seed, trial)` key.
pub fn sample_deviations(
    n: usize,
    quantizer: &QuantizerSpec,
    seed: u64,
    trial: u64,
) -> DeviationVector {
    let mut out = Vec::with_capacity(n);
    fill_deviations(&mut out, n, quantizer, seed, trial);
    DeviationVector::new(out)
}

/// Averages the exact array gain over `trials` independent deviation draws.
///
/// Trials accumulate in index order, so the result is bit-reproducible for
/// a given `(scenario, quantizer, trials, seed)`.
pub fn mc_mean_gain(
    scenario: &Scenario<'_>,
    quantizer: &QuantizerSpec,
    trials: usize,
    seed: u64,
) -> Result<McResult, Error> {
    if trials < 2 {
        return Err(Error::InvalidArgument(
            "standard error needs at least two trials",
        ));
    }
    let summands = gain::unit_summands(
        scenario.grid,
        scenario.carrier,
        scenario.focal,
        scenario.eval,
        scenario.model,
    );

    let mut devs = Vec::with_capacity(summands.len());
    let mut mean = 0.0;
    let mut m2 = 0.0;
    for trial in 0..trials {
        fill_deviations(&mut devs, summands.len(), quantizer, seed, trial as u64);
        let g = gain::gain_from_summands(&summands, &devs);
        // Welford update keeps the two-pass accuracy in one pass.
        let count = (trial + 1) as f64;
        let d1 = g - mean;
        mean += d1 / count;
        m2 += d1 * (g - mean);
    }
    let variance = m2 / (trials - 1) as f64;
    Ok(McResult {
        mean,
        std_error: (variance / trials as f64).sqrt(),
        trials,
        seed,
    })
}

/// Deterministic array gain of a surface whose focus phases for
/// (`tx`, `focal`) were rounded to the quantizer levels, evaluated by
/// carrying the incident response through the quantized phases:
///
/// ```text
/// G = | Σ_n a_n(tx) e^{j φq_n} a_n(eval) |^2
/// ```
pub fn quantized_los_gain(
    grid: &ElementGrid,
    carrier: &CarrierSpec,
    tx: &SphericalPoint,
    focal: &SphericalPoint,
    eval: &SphericalPoint,
    quantizer: &QuantizerSpec,
    model: DistanceModel,
) -> f64 {
    let ideal = ris::focus_phases(grid, tx, focal, carrier, model);
    let (phases, _) = ris::quantize(&ideal, quantizer);
    let a_tx = array_response(grid, tx, carrier, model);
    let a_eval = array_response(grid, eval, carrier, model);
    let mut sum = Complex64::new(0.0, 0.0);
    for ((t, phi), e) in a_tx
        .entries()
        .iter()
        .zip(phases.iter())
        .zip(a_eval.entries())
    {
        sum += t * Complex64::from_polar(1.0, phi) * e;
    }
    sum.norm_sqr()
}
