//! Per-element phase control and b-bit quantization.
//!
//! Each surface element applies a programmable phase shift. The ideal shift
//! aligns its reflected path with the direct path at the receiver; a b-bit
//! controller can only realize `2^b` evenly spaced levels, so the applied
//! phase is the nearest level and the leftover deviation lies in
//! `[-π/2^b, π/2^b]`.

use alloc::vec::Vec;
use core::f64::consts::{PI, TAU};

use num_complex::Complex64;
#[allow(unused_imports)]
use num_traits::Float;

use crate::channel::{array_response, CarrierSpec, DistanceModel, LosChannel};
use crate::error::Error;
use crate::geometry::{ElementGrid, SphericalPoint};

/// Wraps an angle into `[0, 2π)`.
#[inline]
pub(crate) fn wrap_tau(x: f64) -> f64 {
    let r = x % TAU;
    if r < 0.0 {
        (r + TAU) % TAU
    } else {
        r
    }
}

/// Per-element phase configuration, each entry wrapped into `[0, 2π)`.
#[derive(Debug, Clone, PartialEq)]
pub struct PhaseVector(Vec<f64>);

impl PhaseVector {
    /// Wraps every entry into `[0, 2π)` and stores the result.
    pub fn new(phases: Vec<f64>) -> Self {
        Self(phases.into_iter().map(wrap_tau).collect())
    }

    pub fn as_slice(&self) -> &[f64] {
        &self.0
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn iter(&self) -> impl Iterator<Item = f64> + '_ {
        self.0.iter().copied()
    }
}

/// Per-element quantization deviations in radians.
#[derive(Debug, Clone, PartialEq)]
pub struct DeviationVector(Vec<f64>);

impl DeviationVector {
    pub fn new(deviations: Vec<f64>) -> Self {
        Self(deviations)
    }

    pub fn as_slice(&self) -> &[f64] {
        &self.0
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn iter(&self) -> impl Iterator<Item = f64> + '_ {
        self.0.iter().copied()
    }

    /// Largest absolute deviation, 0 for an empty vector.
    pub fn max_abs(&self) -> f64 {
        self.0.iter().fold(0.0, |m, d| m.max(d.abs()))
    }
}

/// Uniform phase quantizer with `b` bits per element.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct QuantizerSpec {
    bits: u32,
}

impl QuantizerSpec {
    /// Creates a quantizer with `bits >= 1` control bits per element.
    pub fn new(bits: u32) -> Result<Self, Error> {
        if bits == 0 {
            return Err(Error::InvalidArgument("quantizer needs at least one bit"));
        }
        if bits > 63 {
            return Err(Error::InvalidArgument("quantizer supports at most 63 bits"));
        }
        Ok(Self { bits })
    }

    pub fn bits(&self) -> u32 {
        self.bits
    }

    /// Number of realizable levels, `2^b`.
    pub fn level_count(&self) -> u64 {
        1u64 << self.bits
    }

    /// Spacing between adjacent levels, `2π / 2^b`.
    pub fn step(&self) -> f64 {
        TAU / self.level_count() as f64
    }

    /// Half the level spacing, `π / 2^b`; no deviation exceeds it.
    pub fn max_deviation(&self) -> f64 {
        PI / self.level_count() as f64
    }

    /// The realizable levels `{2π k / 2^b}` in ascending order.
    pub fn levels(&self) -> impl Iterator<Item = f64> {
        let step = self.step();
        (0..self.level_count()).map(move |k| k as f64 * step)
    }
}

/// Phases that align every reflected path with the direct path:
///
/// ```text
/// φ_n = arg(h_s) - arg(h_r,n h_t,n)   (mod 2π)
/// ```
///
/// where `incident` is the source-to-surface channel, `outgoing` the
/// surface-to-receiver channel and `direct` the direct-path coefficient
/// `h_s`. A zero `direct` keeps the convention `arg(0) = 0`, so the
/// reflected sum comes out real and positive.
pub fn ideal_phases(
    incident: &LosChannel,
    outgoing: &LosChannel,
    direct: Complex64,
) -> Result<PhaseVector, Error> {
    if incident.len() != outgoing.len() {
        return Err(Error::LengthMismatch {
            expected: incident.len(),
            actual: outgoing.len(),
        });
    }
    let target = direct.arg();
    let phases = incident
        .entries()
        .zip(outgoing.entries())
        .map(|(t, r)| wrap_tau(target - (r * t).arg()))
        .collect();
    Ok(PhaseVector(phases))
}

/// Ideal phases for a surface that focuses the field from `tx` onto
/// `focal`: `φ_n = -(arg a_n(tx) + arg a_n(focal)) mod 2π`, the
/// unit-coefficient, no-direct-path case of [`ideal_phases`].
pub fn focus_phases(
    grid: &ElementGrid,
    tx: &SphericalPoint,
    focal: &SphericalPoint,
    carrier: &CarrierSpec,
    model: DistanceModel,
) -> PhaseVector {
    let a_tx = array_response(grid, tx, carrier, model);
    let a_focal = array_response(grid, focal, carrier, model);
    let phases = a_tx
        .entries()
        .iter()
        .zip(a_focal.entries())
        .map(|(t, f)| wrap_tau(-(t * f).arg()))
        .collect();
    PhaseVector(phases)
}

/// Rounds every phase to the nearest quantizer level on the unit circle and
/// returns the quantized phases together with the deviations
/// `ε_n = quantized_n - ideal_n` (wrapped).
///
/// Exact midpoints between two levels round to the level below. The
/// deviation is computed in units of the level spacing, which keeps
/// `|ε_n| <= π/2^b` at any bit width.
pub fn quantize(phases: &PhaseVector, quantizer: &QuantizerSpec) -> (PhaseVector, DeviationVector) {
    let step = quantizer.step();
    let mut quantized = Vec::with_capacity(phases.len());
    let mut deviations = Vec::with_capacity(phases.len());
    for phase in phases.iter() {
        let t = phase / step;
        let k = if t - t.floor() == 0.5 {
            t.floor()
        } else {
            t.round()
        };
        let dev = (k - t) * step;
        quantized.push(wrap_tau(phase + dev));
        deviations.push(dev);
    }
    (PhaseVector(quantized), DeviationVector(deviations))
}
