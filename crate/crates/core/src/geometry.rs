//! Element layouts and propagation geometry for a planar reflecting surface.
//!
//! The surface lies in the `x = 0` plane, centred on the origin. Element
//! positions form a uniform lattice along `y` (horizontal) and `z`
//! (vertical). Points in space are addressed by azimuth/elevation/range
//! relative to the surface centre, with boresight along `+x`:
//!
//! ```text
//! (x, y, z) = d (cos φ cos θ, sin φ cos θ, sin θ)
//! ```
//!
//! where `φ` is azimuth, `θ` elevation and `d` range in metres.

use alloc::vec::Vec;
use core::f64::consts::{FRAC_PI_2, PI};

#[allow(unused_imports)]
use num_traits::Float;

use crate::error::Error;

/// Position of one surface element in the array plane, in metres.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ElementPosition {
    pub y: f64,
    pub z: f64,
}

impl ElementPosition {
    /// Squared distance from the surface centre.
    #[inline]
    pub fn radius_sq(self) -> f64 {
        self.y * self.y + self.z * self.z
    }
}

/// Cartesian point, in metres.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct CartesianPoint {
    pub x: f64,
    pub y: f64,
    pub z: f64,
}

/// Point given by azimuth and elevation in radians and range in metres,
/// relative to the surface centre.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct SphericalPoint {
    azimuth: f64,
    elevation: f64,
    range: f64,
}

impl SphericalPoint {
    /// Creates a point from angles in radians and a range in metres.
    ///
    /// The range must be positive and finite, azimuth must lie in
    /// `[-pi, pi]` and elevation in `[-pi/2, pi/2]`.
    pub fn new(azimuth: f64, elevation: f64, range: f64) -> Result<Self, Error> {
        if !range.is_finite() || range <= 0.0 {
            return Err(Error::InvalidArgument("range must be positive and finite"));
        }
        if !azimuth.is_finite() || azimuth.abs() > PI {
            return Err(Error::InvalidArgument("azimuth must lie in [-pi, pi]"));
        }
        if !elevation.is_finite() || elevation.abs() > FRAC_PI_2 {
            return Err(Error::InvalidArgument(
                "elevation must lie in [-pi/2, pi/2]",
            ));
        }
        Ok(Self {
            azimuth,
            elevation,
            range,
        })
    }

    /// Creates a point from angles in degrees and a range in metres.
    pub fn from_degrees(azimuth_deg: f64, elevation_deg: f64, range: f64) -> Result<Self, Error> {
        Self::new(azimuth_deg.to_radians(), elevation_deg.to_radians(), range)
    }

    pub fn azimuth(&self) -> f64 {
        self.azimuth
    }

    pub fn elevation(&self) -> f64 {
        self.elevation
    }

    pub fn range(&self) -> f64 {
        self.range
    }

    /// Converts to Cartesian coordinates.
    pub fn to_cartesian(&self) -> CartesianPoint {
        let (sin_az, cos_az) = self.azimuth.sin_cos();
        let (sin_el, cos_el) = self.elevation.sin_cos();
        CartesianPoint {
            x: self.range * cos_az * cos_el,
            y: self.range * sin_az * cos_el,
            z: self.range * sin_el,
        }
    }

    /// Projections of the unit direction onto the array axes,
    /// `(sin φ cos θ, sin θ)`.
    #[inline]
    pub(crate) fn direction_cosines(&self) -> (f64, f64) {
        (
            self.azimuth.sin() * self.elevation.cos(),
            self.elevation.sin(),
        )
    }
}

/// Uniform planar array of reflecting elements.
///
/// Elements are stored row-major: index `n = i * cols + j` maps to row `i`
/// along `z` and column `j` along `y`. Both axes are centred, so the array
/// centroid sits at the origin and an even-sized axis has no element on the
/// zero line.
#[derive(Debug, Clone, PartialEq)]
pub struct ElementGrid {
    positions: Vec<ElementPosition>,
    rows: usize,
    cols: usize,
    spacing: f64,
}

impl ElementGrid {
    /// Builds a `rows x cols` uniform planar array with the given element
    /// spacing in metres.
    ///
    /// Column `j` sits at `y = (j - (cols - 1)/2) * spacing` and row `i` at
    /// `z = (i - (rows - 1)/2) * spacing`.
    pub fn upa(rows: usize, cols: usize, spacing: f64) -> Result<Self, Error> {
        if rows == 0 || cols == 0 {
            return Err(Error::InvalidArgument("element counts must be positive"));
        }
        if !spacing.is_finite() || spacing <= 0.0 {
            return Err(Error::InvalidArgument(
                "element spacing must be positive and finite",
            ));
        }
        let y0 = (cols as f64 - 1.0) / 2.0;
        let z0 = (rows as f64 - 1.0) / 2.0;
        let mut positions = Vec::with_capacity(rows * cols);
        for i in 0..rows {
            for j in 0..cols {
                positions.push(ElementPosition {
                    y: (j as f64 - y0) * spacing,
                    z: (i as f64 - z0) * spacing,
                });
            }
        }
        Ok(Self {
            positions,
            rows,
            cols,
            spacing,
        })
    }

    /// Number of elements.
    pub fn len(&self) -> usize {
        self.positions.len()
    }

    pub fn is_empty(&self) -> bool {
        self.positions.is_empty()
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    /// Element spacing in metres.
    pub fn spacing(&self) -> f64 {
        self.spacing
    }

    pub fn is_square(&self) -> bool {
        self.rows == self.cols
    }

    /// Element positions in index order.
    pub fn positions(&self) -> &[ElementPosition] {
        &self.positions
    }

    /// Diagonal of the bounding square, `sqrt(2 N) * spacing`, for a square
    /// layout of `N` elements.
    pub fn aperture_diagonal(&self) -> Result<f64, Error> {
        if !self.is_square() {
            return Err(Error::NonSquareGrid {
                rows: self.rows,
                cols: self.cols,
            });
        }
        Ok((2.0 * self.len() as f64).sqrt() * self.spacing)
    }

    /// Exact distance from element `n` to the point, by the 3-D norm.
    pub fn exact_distance(&self, n: usize, point: &SphericalPoint) -> Result<f64, Error> {
        let e = self.position(n)?;
        Ok(exact_element_distance(e, point))
    }

    /// Second-order distance approximation from element `n` to the point.
    /// See [`taylor_element_distance`].
    pub fn taylor_distance(&self, n: usize, point: &SphericalPoint) -> Result<f64, Error> {
        let e = self.position(n)?;
        Ok(taylor_element_distance(e, point))
    }

    fn position(&self, n: usize) -> Result<ElementPosition, Error> {
        self.positions
            .get(n)
            .copied()
            .ok_or(Error::IndexOutOfBounds {
                index: n,
                len: self.positions.len(),
            })
    }
}

/// Euclidean distance from a surface element at `(0, e.y, e.z)` to the point.
pub fn exact_element_distance(e: ElementPosition, point: &SphericalPoint) -> f64 {
    exact_from_cartesian(e, &point.to_cartesian())
}

/// Distance from a surface element to the point, truncated after the
/// second-order lateral term:
///
/// ```text
/// d_n = d - (sin φ cos θ y_n + sin θ z_n) + (y_n^2 + z_n^2) / (2 d)
/// ```
///
/// Accurate near boresight once the range clears a couple of aperture
/// diagonals; the dropped cross terms grow with the off-axis angle.
pub fn taylor_element_distance(e: ElementPosition, point: &SphericalPoint) -> f64 {
    let (gy, gz) = point.direction_cosines();
    taylor_from_parts(e, point.range(), gy, gz)
}

#[inline]
pub(crate) fn exact_from_cartesian(e: ElementPosition, c: &CartesianPoint) -> f64 {
    let dy = c.y - e.y;
    let dz = c.z - e.z;
    (c.x * c.x + dy * dy + dz * dz).sqrt()
}

#[inline]
pub(crate) fn taylor_from_parts(e: ElementPosition, range: f64, gy: f64, gz: f64) -> f64 {
    range - (gy * e.y + gz * e.z) + e.radius_sq() / (2.0 * range)
}
