//! Carrier definition and line-of-sight channel models.
//!
//! The surface sees a source or observation point through a phase profile
//! over the elements. With element `n` at distance `d_n` from a point at
//! range `d`, the near-field array response collects the per-element excess
//! path lengths:
//!
//! ```text
//! a_n = exp(-j 2π (d_n - d) / λ)
//! ```
//!
//! A full line-of-sight channel is that response scaled by one complex
//! coefficient carrying amplitude and absolute phase.

use alloc::vec::Vec;
use core::f64::consts::PI;

use num_complex::Complex64;
#[allow(unused_imports)]
use num_traits::Float;

use crate::error::Error;
use crate::geometry::{self, ElementGrid, SphericalPoint};

/// Propagation speed of the carrier, in metres per second.
pub const SPEED_OF_LIGHT: f64 = 299_792_458.0;

/// Carrier frequency and derived wavelength.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct CarrierSpec {
    frequency_hz: f64,
    wavelength_m: f64,
}

impl CarrierSpec {
    /// Creates a carrier from its frequency in hertz.
    pub fn new(frequency_hz: f64) -> Result<Self, Error> {
        if !frequency_hz.is_finite() || frequency_hz <= 0.0 {
            return Err(Error::InvalidArgument(
                "carrier frequency must be positive and finite",
            ));
        }
        Ok(Self {
            frequency_hz,
            wavelength_m: SPEED_OF_LIGHT / frequency_hz,
        })
    }

    /// Creates a carrier from its frequency in gigahertz.
    pub fn from_ghz(frequency_ghz: f64) -> Result<Self, Error> {
        Self::new(frequency_ghz * 1.0e9)
    }

    pub fn frequency_hz(&self) -> f64 {
        self.frequency_hz
    }

    /// Wavelength in metres.
    pub fn wavelength(&self) -> f64 {
        self.wavelength_m
    }
}

/// Which element-distance formula feeds the response phases.
#[derive(Debug, Clone, Copy, Default, PartialEq, Eq)]
pub enum DistanceModel {
    /// Exact Euclidean distances.
    #[default]
    Exact,
    /// Second-order expansion around the array centre; see
    /// [`geometry::taylor_element_distance`].
    Taylor,
}

/// Near-field array response of the surface toward one point.
///
/// Every entry has unit modulus; only the excess path phase varies across
/// the elements.
#[derive(Debug, Clone, PartialEq)]
pub struct ArrayResponse {
    entries: Vec<Complex64>,
}

impl ArrayResponse {
    /// Builds a response from raw entries. Every entry must sit on the unit
    /// circle (modulus within 1e-9 of 1).
    pub fn from_entries(entries: Vec<Complex64>) -> Result<Self, Error> {
        if entries.iter().any(|a| (a.norm() - 1.0).abs() > 1e-9) {
            return Err(Error::InvalidArgument(
                "response entries must have unit modulus",
            ));
        }
        Ok(Self { entries })
    }

    pub fn entries(&self) -> &[Complex64] {
        &self.entries
    }

    pub fn len(&self) -> usize {
        self.entries.len()
    }

    pub fn is_empty(&self) -> bool {
        self.entries.is_empty()
    }
}

/// Builds the array response of `grid` toward `point`.
pub fn array_response(
    grid: &ElementGrid,
    point: &SphericalPoint,
    carrier: &CarrierSpec,
    model: DistanceModel,
) -> ArrayResponse {
    let k = 2.0 * PI / carrier.wavelength();
    let d = point.range();
    let entries = match model {
        DistanceModel::Exact => {
            let c = point.to_cartesian();
            grid.positions()
                .iter()
                .map(|&e| {
                    let dn = geometry::exact_from_cartesian(e, &c);
                    Complex64::from_polar(1.0, -k * (dn - d))
                })
                .collect()
        }
        DistanceModel::Taylor => {
            let (gy, gz) = point.direction_cosines();
            grid.positions()
                .iter()
                .map(|&e| {
                    let dn = geometry::taylor_from_parts(e, d, gy, gz);
                    Complex64::from_polar(1.0, -k * (dn - d))
                })
                .collect()
        }
    };
    ArrayResponse { entries }
}

/// Fraunhofer distance `2 D^2 / λ` of a square layout with aperture
/// diagonal `D`. Ranges well below it are in the radiating near field,
/// where focusing in depth is possible.
pub fn fraunhofer_distance(grid: &ElementGrid, carrier: &CarrierSpec) -> Result<f64, Error> {
    let diagonal = grid.aperture_diagonal()?;
    Ok(2.0 * diagonal * diagonal / carrier.wavelength())
}

/// Line-of-sight channel between the surface and one point: a scalar
/// coefficient times the array response.
#[derive(Debug, Clone, PartialEq)]
pub struct LosChannel {
    coefficient: Complex64,
    response: ArrayResponse,
}

impl LosChannel {
    pub fn new(coefficient: Complex64, response: ArrayResponse) -> Self {
        Self {
            coefficient,
            response,
        }
    }

    pub fn coefficient(&self) -> Complex64 {
        self.coefficient
    }

    pub fn response(&self) -> &ArrayResponse {
        &self.response
    }

    pub fn len(&self) -> usize {
        self.response.len()
    }

    pub fn is_empty(&self) -> bool {
        self.response.is_empty()
    }

    /// Channel entry for element `n`, `coefficient * a_n`.
    pub fn entry(&self, n: usize) -> Result<Complex64, Error> {
        self.response
            .entries
            .get(n)
            .map(|a| self.coefficient * a)
            .ok_or(Error::IndexOutOfBounds {
                index: n,
                len: self.response.len(),
            })
    }

    /// Iterates over all channel entries in element order.
    pub fn entries(&self) -> impl Iterator<Item = Complex64> + '_ {
        self.response
            .entries
            .iter()
            .map(move |a| self.coefficient * a)
    }
}
