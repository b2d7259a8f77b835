//! Closed-form average gains under quantized phase control.
//!
//! Averaged over uniform quantization deviations, the array gain splits
//! into a coherent part damped by `sinc^2(2^-b)` and an incoherent floor:
//!
//! ```text
//! E[G] = N^2 sinc^2(2^-b) P + N (1 - sinc^2(2^-b))
//! ```
//!
//! The profile `P in [0, 1]` carries the focal mismatch. Focusing at the
//! wrong range leaves a Fresnel-integral depth profile [`depth_loss`] in
//! the normalized offset `δ = 1/d_r - 1/F`; focusing at the wrong angle
//! leaves separable `sinc^2` factors over the aperture ([`avg_gain_angle`]).

use core::f64::consts::{FRAC_PI_2, PI};

#[allow(unused_imports)]
use num_traits::Float;

use crate::channel::CarrierSpec;
use crate::error::Error;
use crate::geometry::SphericalPoint;
use crate::ris::QuantizerSpec;

/// Normalized sinc, `sin(πx) / (πx)`, with `nsinc(0) = 1`.
pub fn nsinc(x: f64) -> f64 {
    if x == 0.0 {
        return 1.0;
    }
    let t = PI * x;
    t.sin() / t
}

/// Coherent gain fraction left by a b-bit quantizer, `sinc^2(2^-b)`.
pub(crate) fn coherent_fraction(quantizer: &QuantizerSpec) -> f64 {
    let s = nsinc(0.5_f64.powi(quantizer.bits() as i32));
    s * s
}

/// Shared form of the averaged gain: coherent term plus incoherent floor.
pub(crate) fn gain_mix(n: f64, sinc_sq: f64, profile: f64) -> f64 {
    n * n * sinc_sq * profile + n * (1.0 - sinc_sq)
}

// ---------------------------------------------------------------------------
// Fresnel integrals.
//
// C(x) = ∫_0^x cos(π t^2 / 2) dt,  S(x) = ∫_0^x sin(π t^2 / 2) dt.
//
// The power series converge everywhere but cancel catastrophically as x
// grows (the largest term reaches ~e^(πx²/2) times the result), so plain
// f64 summation degrades past x ≈ 3. We run the series in double-double
// arithmetic, which keeps ~32 significant digits and holds full f64
// accuracy through the crossover at x = 4.2. Beyond it the divergent
// asymptotic expansions of the auxiliary functions f and g, truncated at
// their smallest term, are already accurate to ~1e-12 and improve fast.
// ---------------------------------------------------------------------------

/// Double-double value: the unevaluated sum `hi + lo` with `|lo| <= ulp(hi)`.
#[derive(Clone, Copy)]
struct Dd {
    hi: f64,
    lo: f64,
}

#[inline]
fn two_sum(a: f64, b: f64) -> Dd {
    let s = a + b;
    let bv = s - a;
    Dd {
        hi: s,
        lo: (a - (s - bv)) + (b - bv),
    }
}

#[inline]
fn quick_two_sum(a: f64, b: f64) -> Dd {
    let s = a + b;
    Dd {
        hi: s,
        lo: b - (s - a),
    }
}

#[inline]
fn two_prod(a: f64, b: f64) -> Dd {
    let p = a * b;
    Dd {
        hi: p,
        lo: a.mul_add(b, -p),
    }
}

impl Dd {
    const fn new(hi: f64, lo: f64) -> Self {
        Self { hi, lo }
    }

    fn from_f64(x: f64) -> Self {
        Self { hi: x, lo: 0.0 }
    }

    fn add(self, o: Dd) -> Dd {
        let s = two_sum(self.hi, o.hi);
        quick_two_sum(s.hi, s.lo + self.lo + o.lo)
    }

    fn mul(self, o: Dd) -> Dd {
        let p = two_prod(self.hi, o.hi);
        quick_two_sum(p.hi, p.lo + self.hi * o.lo + self.lo * o.hi)
    }

    fn mul_f64(self, x: f64) -> Dd {
        let p = two_prod(self.hi, x);
        quick_two_sum(p.hi, p.lo + self.lo * x)
    }

    fn div_f64(self, d: f64) -> Dd {
        let q0 = self.hi / d;
        let r = two_prod(q0, d);
        let rem = (self.hi - r.hi) - r.lo + self.lo;
        quick_two_sum(q0, rem / d)
    }

    fn neg(self) -> Dd {
        Dd {
            hi: -self.hi,
            lo: -self.lo,
        }
    }

    fn value(self) -> f64 {
        self.hi + self.lo
    }
}

/// π/2 to double-double precision.
const FRAC_PI_2_DD: Dd = Dd::new(FRAC_PI_2, 6.123233995736766e-17);

/// Power-series evaluation in double-double arithmetic, usable through the
/// crossover point.
fn fresnel_series(x: f64) -> (f64, f64) {
    let x4 = {
        let x2 = two_prod(x, x);
        x2.mul(x2)
    };
    // Common ratio -(π/2)^2 x^4 of both series, before the index factors.
    let ratio = FRAC_PI_2_DD.mul(FRAC_PI_2_DD).mul(x4).neg();

    // C(x) = Σ_k u_k x / (4k+1),  u_k = (-1)^k (π/2)^{2k} x^{4k} / (2k)!
    // S(x) = Σ_k v_k x / (4k+3),  v_k = (-1)^k (π/2)^{2k+1} x^{4k+2} / (2k+1)!
    let mut u = Dd::from_f64(1.0);
    let mut v = FRAC_PI_2_DD.mul(two_prod(x, x));
    let mut c = u.mul_f64(x);
    let mut s = v.mul_f64(x).div_f64(3.0);
    for k in 1..=90u32 {
        let kk = k as f64;
        u = u.mul(ratio).div_f64((2.0 * kk - 1.0) * (2.0 * kk));
        v = v.mul(ratio).div_f64((2.0 * kk) * (2.0 * kk + 1.0));
        c = c.add(u.mul_f64(x).div_f64(4.0 * kk + 1.0));
        s = s.add(v.mul_f64(x).div_f64(4.0 * kk + 3.0));
        if u.hi.abs() < 1e-34 && v.hi.abs() < 1e-34 {
            break;
        }
    }
    (c.value(), s.value())
}

/// Auxiliary-function evaluation for large arguments:
///
/// ```text
/// C(x) = 1/2 + f sin(πx²/2) - g cos(πx²/2)
/// S(x) = 1/2 - f cos(πx²/2) - g sin(πx²/2)
/// ```
///
/// with `f ~ Σ (-1)^m (4m-1)!! u^{2m} / (πx)` and
/// `g ~ Σ (-1)^m (4m+1)!! u^{2m+1} / (πx)` in `u = 1/(πx²)`, each summed to
/// its smallest term.
fn fresnel_asymptotic(x: f64) -> (f64, f64) {
    let u = 1.0 / (PI * x * x);
    let u2 = u * u;

    let mut f_sum = 1.0;
    let mut g_sum = 1.0;
    let mut f_term = 1.0_f64;
    let mut g_term = 1.0_f64;
    for m in 1..=40u32 {
        let mm = m as f64;
        let f_next = -f_term * (4.0 * mm - 3.0) * (4.0 * mm - 1.0) * u2;
        let g_next = -g_term * (4.0 * mm - 1.0) * (4.0 * mm + 1.0) * u2;
        let f_grown = f_next.abs() >= f_term.abs();
        let g_grown = g_next.abs() >= g_term.abs();
        if !f_grown {
            f_sum += f_next;
            f_term = f_next;
        }
        if !g_grown {
            g_sum += g_next;
            g_term = g_next;
        }
        if (f_grown || f_term.abs() < 1e-18) && (g_grown || g_term.abs() < 1e-18) {
            break;
        }
    }
    let f = f_sum / (PI * x);
    let g = g_sum * u / (PI * x);

    // Phase πx²/2 with a double-double correction folded into sin/cos.
    let t = FRAC_PI_2_DD.mul_f64(x * x);
    let (s0, c0) = t.hi.sin_cos();
    let sin_p = s0 + t.lo * c0;
    let cos_p = c0 - t.lo * s0;

    (0.5 + f * sin_p - g * cos_p, 0.5 - f * cos_p - g * sin_p)
}

/// Fresnel integrals `(C(x), S(x))`.
///
/// Both are odd in `x`. Absolute accuracy is ~1e-12 over `[0, 100]`; the
/// limit value 1/2 is returned once the oscillation phase `πx²/2` exceeds
/// f64 resolution.
pub fn fresnel(x: f64) -> (f64, f64) {
    if x.is_nan() {
        return (f64::NAN, f64::NAN);
    }
    let ax = x.abs();
    let (c, s) = if ax <= 4.2 {
        fresnel_series(ax)
    } else if ax < 1.0e8 {
        fresnel_asymptotic(ax)
    } else {
        (0.5, 0.5)
    };
    if x < 0.0 {
        (-c, -s)
    } else {
        (c, s)
    }
}

/// Focal-depth mismatch profile
///
/// ```text
/// A(x) = (C(√x)^2 + S(√x)^2)^2 / x^2
/// ```
///
/// extended evenly to negative `x`, with `A(0) = 1`. It decays from the
/// matched-focus peak toward `(πx)^-2`-scale sidelobes as the squared
/// normalized depth offset `x` grows.
pub fn depth_loss(x: f64) -> f64 {
    let ax = x.abs();
    if ax < 1e-8 {
        // Leading series terms; at this size the correction is below one ulp.
        return 1.0 - 2.0 * PI * PI / 45.0 * ax * ax;
    }
    let (c, s) = fresnel(ax.sqrt());
    let m = c * c + s * s;
    m * m / (ax * ax)
}

/// Normalized depth offset between a focal range and an observation range,
/// in reciprocal metres.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct DepthOffset(pub f64);

/// Depth offset `δ = 1/d_r - 1/F` between the focal range `F` and the
/// observation range `d_r`, both in metres.
pub fn depth_offset(focal_m: f64, receiver_m: f64) -> Result<DepthOffset, Error> {
    if !focal_m.is_finite() || focal_m <= 0.0 || !receiver_m.is_finite() || receiver_m <= 0.0 {
        return Err(Error::InvalidArgument(
            "distances must be positive and finite",
        ));
    }
    Ok(DepthOffset(1.0 / receiver_m - 1.0 / focal_m))
}

/// Direction mismatch between a focal point and an observation point,
/// projected on the two array axes.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct AngleOffsets {
    /// `sin φ_F cos θ_F - sin φ_r cos θ_r`, along the horizontal axis.
    pub lateral: f64,
    /// `sin θ_F - sin θ_r`, along the vertical axis.
    pub vertical: f64,
}

/// Axis-projected direction mismatch between `focal` and `receiver`.
/// Ranges play no role here; both offsets vanish when the directions agree.
pub fn angle_offsets(receiver: &SphericalPoint, focal: &SphericalPoint) -> AngleOffsets {
    let (ry, rz) = receiver.direction_cosines();
    let (fy, fz) = focal.direction_cosines();
    AngleOffsets {
        lateral: fy - ry,
        vertical: fz - rz,
    }
}

/// Average gain of an `N`-element square surface focused at depth offset
/// `δ` from the observation range:
///
/// ```text
/// E[G] = N^2 sinc^2(2^-b) A(d_F δ / 8) + N (1 - sinc^2(2^-b))
/// ```
///
/// where `d_F` is the Fraunhofer distance of the aperture.
pub fn avg_gain_depth(
    n: usize,
    quantizer: &QuantizerSpec,
    fraunhofer_m: f64,
    delta: DepthOffset,
) -> f64 {
    let profile = depth_loss(fraunhofer_m * delta.0 / 8.0);
    gain_mix(n as f64, coherent_fraction(quantizer), profile)
}

/// Average gain of an `N`-element square surface focused off-direction:
///
/// ```text
/// E[G] = N^2 sinc^2(2^-b) sinc^2(B Δ √N / λ) sinc^2(C Δ √N / λ)
///        + N (1 - sinc^2(2^-b))
/// ```
///
/// with `B`/`C` the lateral/vertical offsets and `Δ` the element spacing.
pub fn avg_gain_angle(
    n: usize,
    quantizer: &QuantizerSpec,
    spacing_m: f64,
    carrier: &CarrierSpec,
    offsets: AngleOffsets,
) -> f64 {
    let scale = spacing_m * (n as f64).sqrt() / carrier.wavelength();
    let p = nsinc(offsets.lateral * scale) * nsinc(offsets.vertical * scale);
    gain_mix(n as f64, coherent_fraction(quantizer), p * p)
}
