//! Coherent channel sums and array gain.
//!
//! With per-element phases `φ_n` the effective end-to-end channel is
//!
//! ```text
//! h = h_s + Σ_n h_r,n e^{j φ_n} h_t,n
//! ```
//!
//! and the array gain toward an evaluation point, given quantization
//! deviations `ε_n` away from the phases that focus on `focal`, is
//!
//! ```text
//! G = | Σ_n conj(a_n(focal)) e^{j ε_n} a_n(eval) |^2
//! ```
//!
//! which peaks at `N^2` when the deviations vanish and the two points
//! coincide.

use alloc::vec::Vec;

use num_complex::Complex64;
#[allow(unused_imports)]
use num_traits::Float;

use crate::channel::{array_response, CarrierSpec, DistanceModel, LosChannel};
use crate::closedform;
use crate::error::Error;
use crate::geometry::{ElementGrid, SphericalPoint};
use crate::ris::{DeviationVector, PhaseVector, QuantizerSpec};

/// Effective channel coefficient through the surface plus the direct path.
pub fn channel_coefficient(
    direct: Complex64,
    incident: &LosChannel,
    outgoing: &LosChannel,
    phases: &PhaseVector,
) -> Result<Complex64, Error> {
    if incident.len() != outgoing.len() {
        return Err(Error::LengthMismatch {
            expected: incident.len(),
            actual: outgoing.len(),
        });
    }
    if phases.len() != incident.len() {
        return Err(Error::LengthMismatch {
            expected: incident.len(),
            actual: phases.len(),
        });
    }
    let mut sum = direct;
    for ((t, r), phi) in incident
        .entries()
        .zip(outgoing.entries())
        .zip(phases.iter())
    {
        sum += r * Complex64::from_polar(1.0, phi) * t;
    }
    Ok(sum)
}

/// Array gain toward `eval` for a surface focused on `focal`, with the given
/// per-element phase deviations.
pub fn exact_array_gain(
    grid: &ElementGrid,
    carrier: &CarrierSpec,
    focal: &SphericalPoint,
    eval: &SphericalPoint,
    deviations: &DeviationVector,
    model: DistanceModel,
) -> Result<f64, Error> {
    if deviations.len() != grid.len() {
        return Err(Error::LengthMismatch {
            expected: grid.len(),
            actual: deviations.len(),
        });
    }
    let summands = unit_summands(grid, carrier, focal, eval, model);
    Ok(gain_from_summands(&summands, deviations.as_slice()))
}

/// Average channel gain over uniform quantization deviations:
///
/// ```text
/// E[G] = scale (N^2 sinc^2(2^-b) + N (1 - sinc^2(2^-b)))
/// ```
///
/// `scale` carries the squared channel amplitudes (pass 1 for the pure
/// array gain). The `N^2` term is the coherent residue left by quantization
/// and the `N` term is the incoherent floor.
pub fn avg_channel_gain(n: usize, quantizer: &QuantizerSpec, scale: f64) -> f64 {
    let s = closedform::nsinc(0.5_f64.powi(quantizer.bits() as i32));
    scale * closedform::gain_mix(n as f64, s * s, 1.0)
}

/// Unit-modulus summands `conj(a_n(focal)) a_n(eval)`; the array gain is the
/// squared modulus of their deviation-weighted sum.
pub(crate) fn unit_summands(
    grid: &ElementGrid,
    carrier: &CarrierSpec,
    focal: &SphericalPoint,
    eval: &SphericalPoint,
    model: DistanceModel,
) -> Vec<Complex64> {
    let a_focal = array_response(grid, focal, carrier, model);
    let a_eval = array_response(grid, eval, carrier, model);
    a_focal
        .entries()
        .iter()
        .zip(a_eval.entries())
        .map(|(f, e)| f.conj() * e)
        .collect()
}

pub(crate) fn gain_from_summands(summands: &[Complex64], deviations: &[f64]) -> f64 {
    let mut sum = Complex64::new(0.0, 0.0);
    for (c, &eps) in summands.iter().zip(deviations) {
        sum += c * Complex64::from_polar(1.0, eps);
    }
    sum.norm_sqr()
}
