//! Acceptance suite: each test pins one headline behavior of the gain model
//! at its stated tolerance and prints a single pass line with the measured
//! quantity. Run with `cargo test --test acceptance -- --nocapture` to see
//! the measurements.

use std::f64::consts::PI;
use std::process::Command;

use risfocus_core::channel::{fraunhofer_distance, CarrierSpec, DistanceModel};
use risfocus_core::closedform::{
    avg_gain_angle, avg_gain_depth, depth_loss, depth_offset, fresnel, nsinc, AngleOffsets,
    DepthOffset,
};
use risfocus_core::gain::{avg_channel_gain, exact_array_gain};
use risfocus_core::geometry::{ElementGrid, SphericalPoint};
use risfocus_core::metrics::{AxisKind, GainCurve};
use risfocus_core::ris::{DeviationVector, QuantizerSpec};

use risfocus_cli::config::{resolve, Overlay, SweepKind};
use risfocus_cli::experiment::run;

fn column(table: &risfocus_cli::experiment::Table, name: &str) -> Vec<f64> {
    let idx = table
        .columns
        .iter()
        .position(|c| *c == name)
        .unwrap_or_else(|| panic!("missing column {name}"));
    table.rows.iter().map(|r| r[idx]).collect()
}

fn depth_experiment(preset: &str, points: usize) -> risfocus_cli::config::Experiment {
    let flags = Overlay {
        preset: Some(preset.to_owned()),
        points: Some(points),
        ..Overlay::default()
    };
    resolve(SweepKind::Depth, Overlay::default(), flags).unwrap()
}

#[test]
fn criterion_01_fraunhofer_distance_near_eleven_meters() {
    let carrier = CarrierSpec::from_ghz(28.0).unwrap();
    let grid = ElementGrid::upa(32, 32, 0.5 * carrier.wavelength()).unwrap();
    let d_f = fraunhofer_distance(&grid, &carrier).unwrap();
    let rel = (d_f / 10.8 - 1.0).abs();
    assert!(
        rel <= 0.03,
        "fraunhofer {d_f:.4} m is {rel:.3} away from 10.8 m"
    );
    println!(
        "criterion 01 pass: fraunhofer distance {d_f:.4} m, {:.2}% from 10.8 m",
        rel * 100.0
    );
}

#[test]
fn criterion_02_one_bit_average_gain_ratio() {
    let one_bit = QuantizerSpec::new(1).unwrap();
    let n = 1024usize;
    let avg = avg_channel_gain(n, &one_bit, 1.0);
    assert!(
        (avg / 425580.83426759293 - 1.0).abs() <= 1.0e-12,
        "one-bit average gain {avg:.6}"
    );
    let ratio = avg / (n as f64 * n as f64);
    assert!(
        (0.404..=0.407).contains(&ratio),
        "one-bit ratio {ratio:.6} for n = {n}"
    );
    // The ratio falls toward 4/pi^2 as the floor term vanishes with size.
    let limit = 4.0 / (PI * PI);
    let mut prev = f64::INFINITY;
    for side in [16usize, 32, 64, 128, 1024] {
        let m = side * side;
        let r = avg_channel_gain(m, &one_bit, 1.0) / (m as f64 * m as f64);
        assert!(
            r > limit && r < prev,
            "ratio sequence not decreasing at {m}"
        );
        prev = r;
    }
    assert!(prev - limit <= 1.0e-6, "limit gap {:.3e}", prev - limit);
    println!("criterion 02 pass: one-bit ratio {ratio:.6}, tends to 4/pi^2 = {limit:.6}");
}

#[test]
fn criterion_03_depth_beam_centered_with_expected_width() {
    let exp = depth_experiment("setup1a", 281);
    let out = run(&exp).unwrap();
    let axis = column(&out.table, "focal_distance_m");
    let step = axis[1] - axis[0];

    let closed = GainCurve::new(
        axis.clone(),
        column(&out.table, "closed_form"),
        AxisKind::Distance,
    )
    .unwrap();
    let peak = closed.peak_location();
    assert!(
        (peak - 0.6).abs() <= step + 1.0e-12,
        "closed-form peak at {peak:.4} m"
    );
    let width = closed.half_power_interval().width().expect("bounded beam");
    assert!(
        (0.85..=1.15).contains(&width),
        "closed-form half-power width {width:.4} m"
    );

    let quantized = GainCurve::new(
        axis,
        column(&out.table, "quantized_los"),
        AxisKind::Distance,
    )
    .unwrap();
    let qpeak = quantized.peak_location();
    assert!(
        (qpeak - 0.6).abs() <= 0.05,
        "quantized peak at {qpeak:.4} m"
    );
    let qwidth = quantized
        .half_power_interval()
        .width()
        .expect("bounded beam");
    assert!(
        (0.85..=1.15).contains(&qwidth),
        "quantized half-power width {qwidth:.4} m"
    );
    println!(
        "criterion 03 pass: depth beam peaks at {peak:.3} m, width {width:.3} m \
         (quantized: {qpeak:.3} m, {qwidth:.3} m)"
    );
}

#[test]
fn criterion_04_remote_receiver_beam_unbounded_above() {
    let exp = depth_experiment("setup1b", 281);
    let out = run(&exp).unwrap();
    let axis = column(&out.table, "focal_distance_m");
    let closed =
        GainCurve::new(axis, column(&out.table, "closed_form"), AxisKind::Distance).unwrap();
    let interval = closed.half_power_interval();
    assert!(
        interval.upper().is_none(),
        "upper edge {:?}",
        interval.upper()
    );
    assert!(!interval.is_bounded() && interval.width().is_none());
    let lower = interval.lower().expect("finite lower edge");
    assert!((lower - 0.5745).abs() <= 0.02, "lower edge {lower:.4} m");

    // The infinite-focus limit stays above half of the peak, so no upper
    // crossing exists at any focal distance, not just inside the window.
    let n = exp.grid.len();
    let q = &exp.quantizer;
    let limit = avg_gain_depth(n, q, exp.fraunhofer_m, DepthOffset(1.0 / 1.2));
    let peak = avg_gain_depth(n, q, exp.fraunhofer_m, DepthOffset(0.0));
    let ratio = limit / peak;
    assert!(
        (0.54..=0.58).contains(&ratio),
        "far-focus gain ratio {ratio:.4}"
    );
    println!(
        "criterion 04 pass: receiver at 1.2 m keeps gain above half peak beyond \
         {lower:.3} m (far-focus ratio {ratio:.3})"
    );
}

#[test]
fn criterion_05_angular_beamwidth_and_first_nulls() {
    let flags = Overlay {
        preset: Some("setup2".to_owned()),
        ..Overlay::default()
    };
    let exp = resolve(SweepKind::Angle, Overlay::default(), flags).unwrap();
    let out = run(&exp).unwrap();
    let axis = column(&out.table, "focal_azimuth_deg");
    let closed_vals = column(&out.table, "closed_form");
    let closed = GainCurve::new(axis.clone(), closed_vals.clone(), AxisKind::Azimuth).unwrap();
    let width = closed.half_power_interval().width().expect("bounded beam");
    assert!(
        (2.7..=3.6).contains(&width),
        "half-power width {width:.4} deg"
    );

    let quantized = GainCurve::new(
        axis.clone(),
        column(&out.table, "quantized_los"),
        AxisKind::Azimuth,
    )
    .unwrap();
    let qwidth = quantized
        .half_power_interval()
        .width()
        .expect("bounded beam");
    assert!(
        (2.7..=3.6).contains(&qwidth),
        "quantized width {qwidth:.4} deg"
    );

    // First nulls: the coherent term vanishes where the offset scale hits
    // one, leaving only the residual floor.
    let n = exp.grid.len() as f64;
    let s2 = nsinc(0.5).powi(2);
    let floor = n * (1.0 - s2);
    for sign in [-1.0, 1.0] {
        let (loc, val) = axis
            .iter()
            .zip(&closed_vals)
            .filter(|(a, _)| (sign * **a) > 2.5 && (sign * **a) < 4.5)
            .min_by(|a, b| a.1.total_cmp(b.1))
            .map(|(a, v)| (*a, *v))
            .unwrap();
        assert!(
            (loc.abs() - 3.58).abs() <= 0.1,
            "null at {loc:.3} deg (expected near {:.3})",
            sign * 3.58
        );
        assert!(
            val <= 1.05 * floor,
            "null value {val:.1} vs floor {floor:.1}"
        );
    }
    println!(
        "criterion 05 pass: angular beam {width:.3} deg wide (quantized {qwidth:.3}), \
         nulls within 0.1 deg of +-3.58"
    );
}

#[test]
fn criterion_06_monte_carlo_confirms_closed_form_across_sizes_and_bits() {
    for side in [8usize, 16, 32] {
        for bits in [1u32, 2, 3] {
            let flags = Overlay {
                rows: Some(side),
                cols: Some(side),
                bits: Some(bits),
                trials: Some(2000),
                ..Overlay::default()
            };
            let exp = resolve(SweepKind::McValidate, Overlay::default(), flags).unwrap();
            assert_eq!(exp.model, DistanceModel::Taylor);
            let out = run(&exp).unwrap();
            let (failed, total) = out.mc_failures.unwrap();
            assert_eq!(total, 20);
            assert!(
                failed <= 2,
                "{side}x{side}, {bits}-bit: {failed} of {total} points off"
            );
            // The matched-focus point carries the headline claim; it must
            // never be the one that fails.
            let pass = column(&out.table, "pass");
            let axis = column(&out.table, "focal_distance_m");
            let matched = axis
                .iter()
                .position(|f| (f - 0.6).abs() < 1.0e-9)
                .expect("0.6 m on the sweep grid");
            assert_eq!(
                pass[matched], 1.0,
                "{side}x{side}, {bits}-bit matched focus"
            );
        }
    }
    println!(
        "criterion 06 pass: monte carlo within three standard errors at >= 18 of 20 \
         points for sides 8/16/32 and 1/2/3 bits"
    );
}

#[test]
fn criterion_07_quantized_curve_rides_on_closed_form() {
    let exp = depth_experiment("setup1a", 200);
    let out = run(&exp).unwrap();
    let axis = column(&out.table, "focal_distance_m");
    let quantized = GainCurve::new(
        axis.clone(),
        column(&out.table, "quantized_los"),
        AxisKind::Distance,
    )
    .unwrap()
    .smoothed(5)
    .unwrap()
    .normalized()
    .unwrap();
    let closed = GainCurve::new(axis, column(&out.table, "closed_form"), AxisKind::Distance)
        .unwrap()
        .normalized()
        .unwrap();
    let worst = quantized
        .values()
        .iter()
        .zip(closed.values())
        .map(|(q, c)| (q - c).abs())
        .fold(0.0f64, f64::max);
    assert!(
        worst <= 0.05,
        "smoothed quantized curve departs by {worst:.4}"
    );
    println!(
        "criterion 07 pass: smoothed one-bit curve stays within {worst:.4} of the \
         closed form (limit 0.05)"
    );
}

/// Splittable counter-based generator for test scenarios; quality well beyond
/// what sampling a hundred geometry pairs needs.
fn splitmix(state: &mut u64) -> f64 {
    *state = state.wrapping_add(0x9e3779b97f4a7c15);
    let mut z = *state;
    z = (z ^ (z >> 30)).wrapping_mul(0xbf58476d1ce4e5b9);
    z = (z ^ (z >> 27)).wrapping_mul(0x94d049bb133111eb);
    z ^= z >> 31;
    (z >> 11) as f64 * (1.0 / (1u64 << 53) as f64)
}

#[test]
fn criterion_08_swap_symmetry_and_zero_offset_identities() {
    let carrier = CarrierSpec::from_ghz(28.0).unwrap();
    let grid = ElementGrid::upa(32, 32, 0.5 * carrier.wavelength()).unwrap();
    let zeros = DeviationVector::new(vec![0.0; grid.len()]);
    let mut state = 0x5eed_cafe_f00du64;
    let mut worst = 0.0f64;
    for _ in 0..100 {
        let a = 0.3 + 4.7 * splitmix(&mut state);
        let b = 0.3 + 4.7 * splitmix(&mut state);
        let az = -60.0 + 120.0 * splitmix(&mut state);
        let el = -30.0 + 60.0 * splitmix(&mut state);
        let p = SphericalPoint::from_degrees(az, el, a).unwrap();
        let q = SphericalPoint::from_degrees(az, el, b).unwrap();
        let g_ab = exact_array_gain(&grid, &carrier, &p, &q, &zeros, DistanceModel::Exact).unwrap();
        let g_ba = exact_array_gain(&grid, &carrier, &q, &p, &zeros, DistanceModel::Exact).unwrap();
        worst = worst.max((g_ab - g_ba).abs() / g_ab.max(g_ba));
    }
    assert!(worst <= 1.0e-12, "swap asymmetry {worst:.3e}");

    // With no offset both defocusing formulas must collapse onto the flat
    // average gain, exactly, for every bit depth and size.
    for side in [8usize, 16, 32] {
        let n = side * side;
        for bits in [1u32, 2, 3, 6] {
            let q = QuantizerSpec::new(bits).unwrap();
            let flat = avg_channel_gain(n, &q, 1.0);
            let depth = avg_gain_depth(n, &q, 10.96, DepthOffset(0.0));
            let angle = avg_gain_angle(
                n,
                &q,
                0.5 * carrier.wavelength(),
                &carrier,
                AngleOffsets {
                    lateral: 0.0,
                    vertical: 0.0,
                },
            );
            assert_eq!(flat.to_bits(), depth.to_bits(), "{side}x{side}, {bits}-bit");
            assert_eq!(flat.to_bits(), angle.to_bits(), "{side}x{side}, {bits}-bit");
        }
    }
    println!(
        "criterion 08 pass: focus/evaluation swap symmetric to {worst:.2e}, \
         zero-offset forms identical to the bit"
    );
}

fn simpson(f: &dyn Fn(f64) -> f64, a: f64, b: f64) -> f64 {
    (b - a) / 6.0 * (f(a) + 4.0 * f(0.5 * (a + b)) + f(b))
}

fn adaptive(f: &dyn Fn(f64) -> f64, a: f64, b: f64, whole: f64, tol: f64, depth: u32) -> f64 {
    let m = 0.5 * (a + b);
    let left = simpson(f, a, m);
    let right = simpson(f, m, b);
    let delta = left + right - whole;
    if depth == 0 || delta.abs() <= 15.0 * tol {
        left + right + delta / 15.0
    } else {
        adaptive(f, a, m, left, 0.5 * tol, depth - 1)
            + adaptive(f, m, b, right, 0.5 * tol, depth - 1)
    }
}

#[test]
fn criterion_09_fresnel_evaluator_and_profile_fidelity() {
    // Quadrature cross-check of the Fresnel pair on a thousand-point grid.
    let cos_int = |t: f64| (0.5 * PI * t * t).cos();
    let sin_int = |t: f64| (0.5 * PI * t * t).sin();
    let mut c_acc = 0.0;
    let mut s_acc = 0.0;
    let mut prev = 0.0;
    let mut worst = 0.0f64;
    for k in 1..=1000 {
        let x = k as f64 * 0.01;
        c_acc += adaptive(&cos_int, prev, x, simpson(&cos_int, prev, x), 5.0e-15, 48);
        s_acc += adaptive(&sin_int, prev, x, simpson(&sin_int, prev, x), 5.0e-15, 48);
        let (c, s) = fresnel(x);
        worst = worst.max((c - c_acc).abs()).max((s - s_acc).abs());
        prev = x;
    }
    assert!(
        worst <= 1.0e-10,
        "fresnel quadrature disagreement {worst:.3e}"
    );

    // The profile is continuous through its small-argument series switch.
    for x in [0.0, 1.0e-9, 9.9e-9, 1.0e-8, 1.1e-8, 1.0e-6, 1.0e-4] {
        assert!(
            (depth_loss(x) - 1.0).abs() <= 1.0e-6,
            "depth_loss({x}) far from 1"
        );
    }

    // Discrete-aperture sums track the continuum profile across the main
    // lobe and first sidelobes.
    let carrier = CarrierSpec::from_ghz(28.0).unwrap();
    let grid = ElementGrid::upa(32, 32, 0.5 * carrier.wavelength()).unwrap();
    let n = grid.len() as f64;
    let fraunhofer = fraunhofer_distance(&grid, &carrier).unwrap();
    let mut worst_rel = 0.0f64;
    for x in [-2.0, -1.0, -0.5, 0.25, 0.5, 1.0, 2.0] {
        let delta = 8.0 * x / fraunhofer;
        let (mut re, mut im) = (0.0, 0.0);
        for p in grid.positions() {
            let phase = PI * delta * p.radius_sq() / carrier.wavelength();
            re += phase.cos();
            im += phase.sin();
        }
        let discrete = (re * re + im * im) / (n * n);
        let rel = (discrete - depth_loss(x)).abs() / depth_loss(x);
        worst_rel = worst_rel.max(rel);
    }
    assert!(
        worst_rel <= 0.02,
        "discrete aperture off by {worst_rel:.3e}"
    );
    println!(
        "criterion 09 pass: fresnel within {worst:.2e} of quadrature, profile \
         continuous at zero, discrete aperture within {:.2}%",
        worst_rel * 100.0
    );
}

#[test]
fn criterion_10_beam_shape_independent_of_bit_depth() {
    let exp = depth_experiment("setup1a", 281);
    let n = exp.grid.len();
    let axis = exp.axis.clone();

    let curve_for = |bits: u32| -> (GainCurve, Vec<f64>) {
        let q = QuantizerSpec::new(bits).unwrap();
        let s2 = nsinc(0.5_f64.powi(bits as i32)).powi(2);
        let floor = n as f64 * (1.0 - s2);
        let scale = s2 * (n as f64) * (n as f64);
        let gains: Vec<f64> = axis
            .iter()
            .map(|&f| {
                let delta = depth_offset(f, 0.6).unwrap();
                avg_gain_depth(n, &q, exp.fraunhofer_m, delta)
            })
            .collect();
        let profile: Vec<f64> = gains.iter().map(|g| (g - floor) / scale).collect();
        (
            GainCurve::new(axis.clone(), gains, AxisKind::Distance).unwrap(),
            profile,
        )
    };

    let (one_bit, profile_one) = curve_for(1);
    let (three_bit, profile_three) = curve_for(3);
    assert_eq!(one_bit.peak_location(), three_bit.peak_location());

    // Stripped of the floor and the coherence factor, the shape is the same
    // function of focal distance at any bit depth.
    let worst = profile_one
        .iter()
        .zip(&profile_three)
        .map(|(a, b)| (a - b).abs())
        .fold(0.0f64, f64::max);
    assert!(worst <= 1.0e-12, "profiles differ by {worst:.3e}");

    let p1 = GainCurve::new(axis.clone(), profile_one, AxisKind::Distance).unwrap();
    let p3 = GainCurve::new(axis, profile_three, AxisKind::Distance).unwrap();
    let (i1, i3) = (p1.half_power_interval(), p3.half_power_interval());
    let lower_gap = (i1.lower().unwrap() - i3.lower().unwrap()).abs();
    let upper_gap = (i1.upper().unwrap() - i3.upper().unwrap()).abs();
    assert!(lower_gap <= 1.0e-12 && upper_gap <= 1.0e-12);
    println!(
        "criterion 10 pass: peak location and normalized beam shape identical for \
         1-bit and 3-bit control (max profile gap {worst:.2e})"
    );
}

#[test]
fn criterion_11_repeated_runs_reproduce_output_bytes() {
    let dir = tempfile::tempdir().unwrap();
    for (name, args) in [
        (
            "mc",
            vec![
                "mc-validate",
                "--points",
                "4",
                "--trials",
                "128",
                "--start",
                "0.5",
                "--stop",
                "0.8",
            ],
        ),
        (
            "depth",
            vec![
                "depth-sweep",
                "--points",
                "50",
                "--with-mc",
                "--trials",
                "64",
                "--format",
                "json",
            ],
        ),
    ] {
        let mut outputs = Vec::new();
        for run_idx in 0..2 {
            let path = dir.path().join(format!("{name}-{run_idx}.out"));
            let status = Command::new(env!("CARGO_BIN_EXE_risfocus"))
                .args(&args)
                .arg("--out")
                .arg(&path)
                .status()
                .unwrap();
            assert!(status.success(), "{name} run {run_idx} failed");
            outputs.push(std::fs::read(&path).unwrap());
        }
        assert!(!outputs[0].is_empty());
        assert_eq!(outputs[0], outputs[1], "{name} runs differ");
    }
    println!("criterion 11 pass: repeated seeded runs emit byte-identical files");
}
