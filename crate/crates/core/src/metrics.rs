//! Peak and half-power measurements on sampled gain curves.
//!
//! A [`GainCurve`] holds gain samples over a strictly increasing sweep
//! axis. The half-power extractor walks outward from the peak and linearly
//! interpolates the crossings of half the peak value; a side whose samples
//! never drop below the threshold is reported as unbounded rather than
//! clipped at the sweep edge.

use alloc::vec::Vec;

#[allow(unused_imports)]
use num_traits::Float;

use crate::error::Error;

/// What the sweep axis of a curve measures.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum AxisKind {
    /// Focal or observation range, metres.
    Distance,
    /// Azimuth, degrees.
    Azimuth,
    /// Elevation, degrees.
    Elevation,
}

/// Gain samples over a strictly increasing axis.
#[derive(Debug, Clone, PartialEq)]
pub struct GainCurve {
    axis: Vec<f64>,
    values: Vec<f64>,
    kind: AxisKind,
}

impl GainCurve {
    /// Pairs axis positions with gain values. Requires at least two
    /// samples, a strictly increasing finite axis and finite non-negative
    /// values.
    pub fn new(axis: Vec<f64>, values: Vec<f64>, kind: AxisKind) -> Result<Self, Error> {
        if axis.len() != values.len() {
            return Err(Error::LengthMismatch {
                expected: axis.len(),
                actual: values.len(),
            });
        }
        if axis.len() < 2 {
            return Err(Error::InvalidArgument("curve needs at least two samples"));
        }
        if axis.iter().any(|a| !a.is_finite()) || axis.windows(2).any(|w| w[0] >= w[1]) {
            return Err(Error::InvalidArgument(
                "axis must be finite and strictly increasing",
            ));
        }
        if values.iter().any(|v| !v.is_finite() || *v < 0.0) {
            return Err(Error::InvalidArgument(
                "values must be finite and non-negative",
            ));
        }
        Ok(Self { axis, values, kind })
    }

    pub fn axis(&self) -> &[f64] {
        &self.axis
    }

    pub fn values(&self) -> &[f64] {
        &self.values
    }

    pub fn kind(&self) -> AxisKind {
        self.kind
    }

    pub fn len(&self) -> usize {
        self.axis.len()
    }

    pub fn is_empty(&self) -> bool {
        self.axis.is_empty()
    }

    fn peak_index(&self) -> usize {
        // First maximal sample, so ties resolve to the smallest axis value.
        let mut best = 0;
        for (i, &v) in self.values.iter().enumerate() {
            if v > self.values[best] {
                best = i;
            }
        }
        best
    }

    /// Axis position of the largest sample; ties resolve to the smallest
    /// axis value.
    pub fn peak_location(&self) -> f64 {
        self.axis[self.peak_index()]
    }

    pub fn peak_value(&self) -> f64 {
        self.values[self.peak_index()]
    }

    /// Scales the curve so the peak value becomes 1. An all-zero curve has
    /// no peak to normalize to and is rejected.
    pub fn normalized(&self) -> Result<GainCurve, Error> {
        let peak = self.peak_value();
        if peak <= 0.0 {
            return Err(Error::InvalidArgument("cannot normalize an all-zero curve"));
        }
        Ok(GainCurve {
            axis: self.axis.clone(),
            values: self.values.iter().map(|v| v / peak).collect(),
            kind: self.kind,
        })
    }

    /// Centred moving average with an odd `window`; the window shrinks
    /// symmetrically toward the ends. Used to steady quantized curves whose
    /// deterministic ripple would otherwise jitter threshold crossings.
    pub fn smoothed(&self, window: usize) -> Result<GainCurve, Error> {
        if window == 0 || window.is_multiple_of(2) {
            return Err(Error::InvalidArgument("smoothing window must be odd"));
        }
        let half = window / 2;
        let n = self.values.len();
        let values = (0..n)
            .map(|i| {
                let lo = i.saturating_sub(half);
                let hi = (i + half).min(n - 1);
                let span = &self.values[lo..=hi];
                span.iter().sum::<f64>() / span.len() as f64
            })
            .collect();
        Ok(GainCurve {
            axis: self.axis.clone(),
            values,
            kind: self.kind,
        })
    }

    /// Half-power interval around the peak, linearly interpolating the
    /// crossings of `peak/2`. A side that never drops below the threshold
    /// before the sweep ends is unbounded.
    pub fn half_power_interval(&self) -> HalfPowerInterval {
        let peak = self.peak_index();
        let threshold = self.values[peak] / 2.0;

        let mut lower = None;
        for i in (0..peak).rev() {
            if self.values[i] < threshold {
                lower = Some(interpolate(
                    self.axis[i],
                    self.axis[i + 1],
                    self.values[i],
                    self.values[i + 1],
                    threshold,
                ));
                break;
            }
        }

        let mut upper = None;
        for i in peak + 1..self.len() {
            if self.values[i] < threshold {
                upper = Some(interpolate(
                    self.axis[i - 1],
                    self.axis[i],
                    self.values[i - 1],
                    self.values[i],
                    threshold,
                ));
                break;
            }
        }

        HalfPowerInterval { lower, upper }
    }
}

fn interpolate(x0: f64, x1: f64, v0: f64, v1: f64, target: f64) -> f64 {
    x0 + (target - v0) * (x1 - x0) / (v1 - v0)
}

/// Half-power crossings around a curve peak. `None` marks a side where the
/// curve never fell below half power inside the sweep.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct HalfPowerInterval {
    lower: Option<f64>,
    upper: Option<f64>,
}

impl HalfPowerInterval {
    pub fn lower(&self) -> Option<f64> {
        self.lower
    }

    pub fn upper(&self) -> Option<f64> {
        self.upper
    }

    pub fn is_bounded(&self) -> bool {
        self.lower.is_some() && self.upper.is_some()
    }

    /// Interval width, or `None` if either side is unbounded.
    pub fn width(&self) -> Option<f64> {
        match (self.lower, self.upper) {
            (Some(lo), Some(hi)) => Some(hi - lo),
            _ => None,
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::closedform::nsinc;
    use approx::assert_relative_eq;

    fn curve(axis: Vec<f64>, values: Vec<f64>) -> GainCurve {
        GainCurve::new(axis, values, AxisKind::Distance).unwrap()
    }

    #[test]
    fn triangle_curve_interval() {
        let c = curve(vec![0.0, 1.0, 2.0], vec![0.0, 1.0, 0.0]);
        let hp = c.half_power_interval();
        assert_relative_eq!(hp.lower().unwrap(), 0.5);
        assert_relative_eq!(hp.upper().unwrap(), 1.5);
        assert_relative_eq!(hp.width().unwrap(), 1.0);
        assert!(hp.is_bounded());
    }

    #[test]
    fn peak_ties_resolve_to_smallest_axis_value() {
        let c = curve(vec![0.0, 1.0, 2.0, 3.0], vec![1.0, 2.0, 2.0, 1.0]);
        assert_eq!(c.peak_location(), 1.0);
        assert_eq!(c.peak_value(), 2.0);
    }

    #[test]
    fn monotone_curves_are_unbounded_on_the_peak_side() {
        let rising = curve(vec![0.0, 1.0, 2.0], vec![0.1, 0.5, 1.0]);
        let hp = rising.half_power_interval();
        assert!(hp.lower().is_some());
        assert_eq!(hp.upper(), None);
        assert_eq!(hp.width(), None);

        let falling = curve(vec![0.0, 1.0, 2.0], vec![1.0, 0.5, 0.1]);
        let hp = falling.half_power_interval();
        assert_eq!(hp.lower(), None);
        assert!(hp.upper().is_some());

        let flat = curve(vec![0.0, 1.0, 2.0], vec![1.0, 1.0, 1.0]);
        let hp = flat.half_power_interval();
        assert!(!hp.is_bounded());
        assert_eq!(hp.lower(), None);
        assert_eq!(hp.upper(), None);
    }

    #[test]
    fn normalization_scales_peak_to_one() {
        let c = curve(vec![0.0, 1.0, 2.0], vec![2.0, 8.0, 4.0]);
        let n = c.normalized().unwrap();
        assert_eq!(n.peak_value(), 1.0);
        assert_relative_eq!(n.values()[0], 0.25);
        assert_relative_eq!(n.values()[2], 0.5);

        let zeros = curve(vec![0.0, 1.0], vec![0.0, 0.0]);
        assert!(zeros.normalized().is_err());
    }

    #[test]
    fn interval_is_invariant_under_scaling() {
        let axis: Vec<f64> = (0..200).map(|i| i as f64 * 0.01).collect();
        let values: Vec<f64> = axis.iter().map(|x| nsinc(x - 1.0).powi(2)).collect();
        let scaled: Vec<f64> = values.iter().map(|v| v * 1.0e3).collect();

        let a = curve(axis.clone(), values).half_power_interval();
        let b = curve(axis, scaled).half_power_interval();
        assert_relative_eq!(a.lower().unwrap(), b.lower().unwrap(), max_relative = 1e-12);
        assert_relative_eq!(a.upper().unwrap(), b.upper().unwrap(), max_relative = 1e-12);
    }

    #[test]
    fn interval_converges_under_axis_refinement() {
        let widths: Vec<f64> = [101usize, 1001]
            .iter()
            .map(|&points| {
                let axis: Vec<f64> = (0..points)
                    .map(|i| -2.0 + 4.0 * i as f64 / (points - 1) as f64)
                    .collect();
                let values: Vec<f64> = axis.iter().map(|x| nsinc(*x).powi(2)).collect();
                curve(axis, values).half_power_interval().width().unwrap()
            })
            .collect();
        assert!((widths[0] - widths[1]).abs() / widths[1] < 0.01);
    }

    #[test]
    fn smoothing_steadies_rippled_curves() {
        let axis: Vec<f64> = (0..400).map(|i| i as f64 * 0.01).collect();
        // Smooth lobe with a deterministic ripple whose period spans five
        // samples, the case the smoothing window is sized for.
        let period = 0.05;
        let clean: Vec<f64> = axis
            .iter()
            .map(|x| nsinc((x - 2.0) / 1.5).powi(2))
            .collect();
        let rippled: Vec<f64> = axis
            .iter()
            .zip(&clean)
            .map(|(x, v)| v * (1.0 + 0.05 * (core::f64::consts::TAU * x / period).sin()))
            .collect();

        let clean_width = curve(axis.clone(), clean)
            .half_power_interval()
            .width()
            .unwrap();
        let smoothed = curve(axis, rippled).smoothed(5).unwrap();
        let width = smoothed.half_power_interval().width().unwrap();
        assert!((width - clean_width).abs() / clean_width < 0.02);
    }

    #[test]
    fn smoothing_window_must_be_odd() {
        let c = curve(vec![0.0, 1.0, 2.0], vec![0.0, 1.0, 0.0]);
        assert!(c.smoothed(0).is_err());
        assert!(c.smoothed(4).is_err());
        let s = c.smoothed(1).unwrap();
        assert_eq!(s.values(), c.values());
    }

    #[test]
    fn smoothing_preserves_constant_curves() {
        let c = curve(vec![0.0, 1.0, 2.0, 3.0], vec![2.0, 2.0, 2.0, 2.0]);
        let s = c.smoothed(5).unwrap();
        for v in s.values() {
            assert_relative_eq!(*v, 2.0, max_relative = 1e-15);
        }
    }

    #[test]
    fn constructor_rejects_malformed_curves() {
        assert!(GainCurve::new(vec![0.0, 1.0], vec![1.0], AxisKind::Azimuth).is_err());
        assert!(GainCurve::new(vec![0.0], vec![1.0], AxisKind::Azimuth).is_err());
        assert!(GainCurve::new(vec![0.0, 0.0], vec![1.0, 1.0], AxisKind::Azimuth).is_err());
        assert!(GainCurve::new(vec![1.0, 0.5], vec![1.0, 1.0], AxisKind::Azimuth).is_err());
        assert!(GainCurve::new(vec![0.0, f64::NAN], vec![1.0, 1.0], AxisKind::Azimuth).is_err());
        assert!(GainCurve::new(vec![0.0, 1.0], vec![1.0, -0.1], AxisKind::Azimuth).is_err());
        assert!(
            GainCurve::new(vec![0.0, 1.0], vec![1.0, f64::INFINITY], AxisKind::Azimuth).is_err()
        );
    }

    #[test]
    fn exact_threshold_samples_are_kept_inside() {
        let c = curve(vec![0.0, 1.0, 2.0, 3.0, 4.0], vec![0.2, 0.5, 1.0, 0.5, 0.2]);
        let hp = c.half_power_interval();
        // Samples equal to the threshold belong to the interval; the
        // crossing interpolates to exactly those axis positions.
        assert_relative_eq!(hp.lower().unwrap(), 1.0);
        assert_relative_eq!(hp.upper().unwrap(), 3.0);
    }
}
