//! Near-field gain models for reflecting surfaces with quantized phase
//! control.
//!
//! A large planar surface of passive elements reflects an incident carrier
//! toward a focal point by programming a per-element phase shift. With only
//! `b` bits per element the programmed phases sit on a `2^b`-level grid, and
//! the achievable array gain drops and ripples around the ideal pattern.
//! This crate models that effect three ways so the routes can be checked
//! against each other:
//!
//! * exact coherent sums over the surface ([`ris`], [`gain`]),
//! * closed-form average gains for focal-distance and focal-angle offsets
//!   ([`closedform`]),
//! * Monte Carlo averages over random quantization deviations
//!   ([`stochastic`]).
//!
//! Geometry helpers ([`geometry`], [`channel`]) build the element layouts
//! and line-of-sight responses the models share, and [`metrics`] extracts
//! peak locations and half-power widths from sampled gain curves.
//!
//! The crate is `no_std` compatible (with `alloc`) when built without the
//! default `std` feature.

#![cfg_attr(not(feature = "std"), no_std)]

extern crate alloc;

pub mod channel;
pub mod closedform;
pub mod error;
pub mod gain;
pub mod geometry;
pub mod metrics;
pub mod ris;
pub mod stochastic;

pub use error::Error;
