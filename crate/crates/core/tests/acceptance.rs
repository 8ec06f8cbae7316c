//! Acceptance suite: one PASS/FAIL line per criterion, nonzero exit on any FAIL.

mod common;

use std::f64::consts::PI;
use std::panic::{catch_unwind, AssertUnwindSafe};
use std::process::Command;
use std::time::Instant;

use common::{builtin_surfaces, parse, random_ellipsoid, random_harmonic, rng, summary};
use horoaf::flow::{evolution_residuals, limit_p_to_q, trace_flow, uniform_times};
use horoaf::functionals::{
    check_inequality, check_remark_n2, relative_minkowski_residual, run_suite, Inequality, InequalityReport,
    REMARK_N2_CONSTANT,
};
use horoaf::hyperbolic::{lift_frame, normalized_mean_curvature};
use horoaf::search::{minimize_q, CounterexampleCertificate, SmoothedTriangleFamily};
use horoaf::sphere_grid::{unit_sphere_area, SphereGrid};
use horoaf::surface::SurfaceSpec;
use rand::Rng;

type Outcome = Result<String, String>;
type Criterion = (&'static str, fn() -> Outcome);

macro_rules! ensure {
    ($cond:expr, $($msg:tt)+) => {
        let ok: bool = $cond;
        if !ok {
            return Err(format!($($msg)+));
        }
    };
}

fn rel(a: f64, b: f64) -> f64 {
    ((a - b) / b).abs()
}

fn label(s: &SurfaceSpec, n: usize) -> String {
    format!("{} (n={n})", s.family_name())
}

fn c1_sphere_calibration() -> Outcome {
    let mut worst: f64 = 0.0;
    for n in 2..=4 {
        let omega = unit_sphere_area(n).unwrap();
        let grid = SphereGrid::build(n, 64).unwrap();
        for r in [0.25f64, 0.5, 1.0, 2.0] {
            let spec = SurfaceSpec::GeodesicSphere { radius: r };
            let e = spec.evaluate(&grid).unwrap();
            let h = lift_frame(&e).unwrap();
            let s = horoaf::functionals::summarize(&e, &h).unwrap();
            let m = (n - 1) as i32;
            let area = omega * r.sinh().powi(m);
            let cal_i = omega * r.cosh() * r.sinh().powi(m);
            for (got, want, what) in [(s.area, area, "area"), (s.cal_i, cal_i, "calI")] {
                let e = rel(got, want);
                worst = worst.max(e);
                ensure!(e <= 1e-9, "n={n} r={r}: {what} off by {e:e}");
            }
            for k in 0..n {
                let hk = normalized_mean_curvature(&h, k).unwrap();
                let want = (1.0 / r.tanh()).powi(k as i32);
                let e = hk.iter().map(|v| rel(*v, want)).fold(0.0, f64::max);
                ensure!(e <= 1e-9, "n={n} r={r}: H_{k} off by {e:e}");
            }
            let e = h.frames.iter().map(|f| rel(f.p, r.sinh())).fold(0.0, f64::max);
            ensure!(e <= 1e-9, "n={n} r={r}: p off by {e:e}");
            ensure!((s.p - 1.0).abs() <= 1e-9, "n={n} r={r}: P = {}", s.p);
            ensure!((s.q - 1.0).abs() <= 1e-10, "n={n} r={r}: Q = {}", s.q);
        }
    }
    Ok(format!("12 spheres, worst relative error {worst:.1e}"))
}

// The pointwise identity is algebraically exact, so its residual sits at
// roundoff on every grid; below this floor "decreasing" is vacuous.
const ROUNDOFF_FLOOR: f64 = 1e-12;

fn c2_identities() -> Outcome {
    let mut worst_id: f64 = 0.0;
    let mut worst_mink: f64 = 0.0;
    for (n, coarse, fine) in [(2, 64, 128), (3, 64, 128), (4, 32, 64)] {
        for spec in builtin_surfaces(n) {
            let a = summary(&spec, n, coarse);
            let b = summary(&spec, n, fine);
            let name = label(&spec, n);
            ensure!(b.max_identity_residual <= 1e-8, "{name}: identity residual {:e}", b.max_identity_residual);
            let (ma, mb) = (relative_minkowski_residual(&a), relative_minkowski_residual(&b));
            ensure!(mb <= 1e-5, "{name}: Minkowski residual {mb:e} at resolution {fine}");
            if coarse >= 64 {
                ensure!(ma <= 1e-5, "{name}: Minkowski residual {ma:e} at resolution {coarse}");
            }
            ensure!(
                mb < ma || mb <= ROUNDOFF_FLOOR,
                "{name}: Minkowski residual grew {ma:e} -> {mb:e}"
            );
            ensure!(
                b.max_identity_residual < a.max_identity_residual || b.max_identity_residual <= ROUNDOFF_FLOOR,
                "{name}: identity residual grew {:e} -> {:e}",
                a.max_identity_residual,
                b.max_identity_residual
            );
            worst_id = worst_id.max(b.max_identity_residual);
            worst_mink = worst_mink.max(mb);
        }
    }
    Ok(format!("12 surfaces, max identity residual {worst_id:.1e}, max Minkowski residual {worst_mink:.1e}"))
}

fn c3_evolution() -> Outcome {
    let grid = SphereGrid::build(3, 48).unwrap();
    let surfaces = &builtin_surfaces(3)[1..];
    let mut orders = Vec::new();
    let mut worst: f64 = 0.0;
    for spec in surfaces {
        let residual = |dt: f64| {
            let trace = trace_flow(spec, &grid, &[0.5 - dt, 0.5, 0.5 + dt]).unwrap();
            evolution_residuals(&trace).unwrap()[0]
        };
        let a = residual(1e-3);
        let b = residual(5e-4);
        ensure!(a.area <= 1e-4 && a.cal_i <= 1e-4, "{}: residuals {a:?}", spec.family_name());
        for (ra, rb, what) in [(a.area, b.area, "area"), (a.cal_i, b.cal_i, "calI")] {
            let order = (ra / rb).log2();
            ensure!((1.8..=2.2).contains(&order), "{}: {what} order {order:.3}", spec.family_name());
            orders.push(order);
        }
        worst = worst.max(a.area).max(a.cal_i);
    }
    let lo = orders.iter().cloned().fold(f64::INFINITY, f64::min);
    let hi = orders.iter().cloned().fold(0.0, f64::max);
    Ok(format!("3 surfaces, max residual {worst:.1e} at dt=1e-3, observed order {lo:.3}..{hi:.3}"))
}

fn c4_monotonicity() -> Outcome {
    let times = uniform_times(8.0, 0.05).unwrap();
    let mut count = 0;
    for (n, res) in [(2, 256), (3, 64), (4, 16)] {
        let grid = SphereGrid::build(n, res).unwrap();
        for spec in builtin_surfaces(n) {
            let name = label(&spec, n);
            let p: Vec<f64> = trace_flow(&spec, &grid, &times).unwrap().samples.iter().map(|s| s.p).collect();
            for w in p.windows(2) {
                ensure!(w[1] <= w[0] * (1.0 + 1e-10), "{name}: P rose {} -> {}", w[0], w[1]);
            }
            if spec.is_centered_sphere() {
                let dev = p.iter().map(|v| (v - 1.0).abs()).fold(0.0, f64::max);
                ensure!(dev <= 1e-9, "{name}: P deviates from 1 by {dev:e}");
            } else {
                ensure!(p.windows(2).all(|w| w[1] < w[0]), "{name}: P not strictly decreasing");
            }
            count += 1;
        }
    }
    Ok(format!("{count} surfaces over t in [0, 8], dt = 0.05"))
}

fn c5_limit() -> Outcome {
    let mut rates = Vec::new();
    let mut worst: f64 = 0.0;
    for (n, res) in [(2, 256), (3, 64), (4, 16)] {
        let grid = SphereGrid::build(n, res).unwrap();
        for spec in builtin_surfaces(n) {
            let name = label(&spec, n);
            let gaps: Vec<f64> =
                [3.0, 4.5, 6.0].iter().map(|t| limit_p_to_q(&spec, &grid, *t).unwrap().gap).collect();
            let q = summary(&spec, n, res).q;
            let r = gaps[2].abs() / q;
            ensure!(r <= 1e-4, "{name}: |P(6) - Q| = {r:e} Q");
            worst = worst.max(r);
            if !spec.is_centered_sphere() {
                for w in gaps.windows(2) {
                    let rate = (w[0] / w[1]).ln() / 1.5;
                    ensure!((1.8..=2.2).contains(&rate), "{name}: decay rate {rate:.3}");
                    rates.push(rate);
                }
            }
        }
    }
    let lo = rates.iter().cloned().fold(f64::INFINITY, f64::min);
    let hi = rates.iter().cloned().fold(0.0, f64::max);
    Ok(format!("12 surfaces, max gap {worst:.1e} Q at T=6, decay rate {lo:.3}..{hi:.3}"))
}

fn c6_theorem2() -> Outcome {
    let mut rng = rng(6);
    let weak = 4.0 / 9.0;
    let mut accepted = 0;
    let mut min_p = f64::INFINITY;
    let mut attempts = 0;
    while accepted < 24 && attempts < 200 {
        attempts += 1;
        let spec = if attempts % 2 == 0 {
            random_harmonic(&mut rng, 3, (0.3, 0.7), 0.08)
        } else {
            random_ellipsoid(&mut rng, 3, (0.2, 0.6))
        };
        let (Ok(_), Ok(_)) = (spec.evaluate(&SphereGrid::build(3, 8).unwrap()), spec.validate(3)) else {
            continue;
        };
        let coarse = summary(&spec, 3, 32);
        let fine = summary(&spec, 3, 64);
        if coarse.min_h1 < 1.0 || fine.min_h1 < 1.0 {
            continue;
        }
        for s in [&coarse, &fine] {
            let r = check_inequality(Inequality::Thm2, s).unwrap();
            ensure!(s.p > weak && r.holds_strictly(), "sample {attempts}: P = {} at resolution {}", s.p, s.resolution);
            min_p = min_p.min(s.p);
        }
        accepted += 1;
    }
    ensure!(accepted >= 20, "only {accepted} samples with H_1 >= 1");
    Ok(format!("{accepted} star-shaped samples with H_1 >= 1 at resolutions 32 and 64, min P = {min_p:.4} > 4/9"))
}

fn c7_theorem1() -> Outcome {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("cert.json");
    let start = Instant::now();
    let status = Command::new(env!("CARGO_BIN_EXE_horoaf"))
        .args(["search", "--budget", "400", "--resolution", "96", "--output"])
        .arg(&path)
        .status()
        .unwrap();
    let elapsed = start.elapsed().as_secs_f64();
    ensure!(status.success(), "search exited with {status}");
    ensure!(elapsed < 600.0, "search took {elapsed:.0} s");
    let cert = CounterexampleCertificate::load(&path).unwrap();
    ensure!(cert.q < 0.999 && cert.refinement_check.q < 0.999, "Q = {}", cert.q);
    ensure!(
        cert.min_lambda_scaled >= 1.001 && cert.refinement_check.min_lambda >= 1.001,
        "min lambda = {}",
        cert.min_lambda_scaled
    );
    ensure!(cert.scaled_p < 0.999 && cert.refinement_check.p < 0.999, "P = {}", cert.scaled_p);
    ensure!(cert.resolution == 96 && cert.refinement_check.resolution == 192, "resolutions");
    cert.reverify().map_err(|e| e.to_string())?;
    Ok(format!(
        "Q = {:.4}, P = {:.4}, min lambda = {:.4} at t0 = {:.2}; re-verified at 192; {elapsed:.1} s",
        cert.q, cert.scaled_p, cert.min_lambda_scaled, cert.t0
    ))
}

fn strict(reports: &[InequalityReport], name: &str, index: usize) -> Result<f64, String> {
    let r = reports
        .iter()
        .find(|r| r.name == name && r.index == Some(index))
        .ok_or_else(|| format!("{name}[{index}] not applicable"))?;
    ensure!(r.holds_strictly(), "{name}[{index}] margin {:e} within tolerance {:e}", r.margin, r.tolerance);
    Ok(r.relative_margin)
}

fn c8_theorem3() -> Outcome {
    let mut rng = rng(8);
    let mut min_margin = f64::INFINITY;
    let mut counts = [0usize; 2];
    for (slot, n, fine_res, checks) in [
        (0, 3, 48, &[("thm3", 0), ("crucial", 0), ("GWW", 1)][..]),
        (1, 4, 24, &[("thm3", 2), ("wang_xia", 0), ("crucial", 0), ("GWW", 1)][..]),
    ] {
        let mut attempts = 0;
        while counts[slot] < 10 && attempts < 100 {
            attempts += 1;
            let spec = if attempts % 2 == 0 {
                random_harmonic(&mut rng, n, (0.15, 0.3), 0.06)
            } else {
                random_ellipsoid(&mut rng, n, (0.12, 0.22))
            };
            let fine = summary(&spec, n, fine_res);
            if fine.min_lambda < 1.0 + 1e-6 {
                continue;
            }
            let coarse = summary(&spec, n, fine_res / 2);
            let reports = run_suite(&fine, Some(&coarse), Some(&spec)).unwrap();
            for (name, index) in checks {
                let m = strict(&reports, name, *index).map_err(|e| format!("n={n} sample {attempts}: {e}"))?;
                min_margin = min_margin.min(m);
            }
            counts[slot] += 1;
        }
    }
    ensure!(counts.iter().all(|c| *c >= 10), "h-convex samples found: {counts:?}");
    Ok(format!(
        "{} h-convex samples in n=3 and {} in n=4, min relative margin {min_margin:.1e}",
        counts[0], counts[1]
    ))
}

/// `∫|x|² ds` over the boundary of the centered equilateral triangle of side
/// `a`, by composite Simpson on each side.
fn triangle_boundary_integral(a: f64) -> f64 {
    let circ = a / 3f64.sqrt();
    let vertices: Vec<[f64; 2]> = (0..3)
        .map(|k| {
            let t = PI / 2.0 + 2.0 * PI * k as f64 / 3.0;
            [circ * t.cos(), circ * t.sin()]
        })
        .collect();
    let m = 2000;
    let mut total = 0.0;
    for k in 0..3 {
        let (p, q) = (vertices[k], vertices[(k + 1) % 3]);
        let len = ((q[0] - p[0]).powi(2) + (q[1] - p[1]).powi(2)).sqrt();
        let f = |s: f64| {
            let x = p[0] + s * (q[0] - p[0]);
            let y = p[1] + s * (q[1] - p[1]);
            x * x + y * y
        };
        let h = 1.0 / m as f64;
        let mut acc = f(0.0) + f(1.0);
        for i in 1..m {
            acc += f(i as f64 * h) * if i % 2 == 1 { 4.0 } else { 2.0 };
        }
        total += acc * h / 3.0 * len;
    }
    total
}

fn c9_remark_n2() -> Outcome {
    let mut rng = rng(9);
    let mut samples = 0;
    let mut min_q = f64::INFINITY;
    for i in 0..24 {
        let spec = match i % 4 {
            0 => random_ellipsoid(&mut rng, 2, (0.1, 0.6)),
            1 => random_harmonic(&mut rng, 2, (0.2, 0.6), 0.05),
            2 => parse(&format!("smoothed-simplex:p={},eps={}", rng.gen_range(3.0..60.0), rng.gen_range(0.005..0.3)), 2),
            _ => parse(
                &format!(
                    "smoothed-simplex:p={},eps={},weights={}/{}/{}",
                    rng.gen_range(3.0..30.0),
                    rng.gen_range(0.01..0.2),
                    rng.gen_range(0.6..1.6),
                    rng.gen_range(0.6..1.6),
                    rng.gen_range(0.6..1.6)
                ),
                2,
            ),
        };
        let s = summary(&spec, 2, 8192);
        ensure!(s.min_euclidean_sigma[1] > 0.0, "sample {i} is not convex");
        let r = &check_remark_n2(&s).unwrap()[0];
        ensure!(r.holds_strictly(), "sample {i}: Q = {} vs {REMARK_N2_CONSTANT}", s.q);
        min_q = min_q.min(s.q);
        samples += 1;
    }

    let grid = SphereGrid::build(2, 16384).unwrap();
    let best = minimize_q(&SmoothedTriangleFamily::default(), &grid, None, 200).unwrap();
    let gap = best.q - REMARK_N2_CONSTANT;
    ensure!(gap > 0.0 && gap <= 1e-2, "smoothed triangle Q = {} (gap {gap:e})", best.q);

    let a: f64 = 0.7;
    let oracle = a.powi(3) / 2.0;
    let integral = triangle_boundary_integral(a);
    let perimeter = 3.0 * a;
    ensure!((integral - oracle).abs() <= 1e-6, "boundary integral {integral} vs a^3/2 = {oracle}");
    ensure!((integral - perimeter.powi(3) / 54.0).abs() <= 1e-6, "boundary integral vs L^3/54");
    Ok(format!(
        "{samples} convex curves with min Q = {min_q:.4}; smoothed triangle Q = {:.5} (gap {gap:.1e}); triangle oracle error {:.1e}",
        best.q,
        (integral - oracle).abs()
    ))
}

fn c10_determinism() -> Outcome {
    let run = |threads: &str| {
        let out = Command::new(env!("CARGO_BIN_EXE_horoaf"))
            .env("HOROAF_THREADS", threads)
            .args(["verify", "--n", "3", "--surface", "smoothed-simplex:default", "--resolution", "48"])
            .output()
            .unwrap();
        assert!(out.status.success());
        out.stdout
    };
    let a = run("1");
    let b = run("4");
    let c = run("4");
    ensure!(a == b && b == c, "verify output differs between runs");
    Ok(format!("3 runs (1 and 4 threads), {} identical bytes", a.len()))
}

fn main() {
    let criteria: [Criterion; 10] = [
        ("sphere calibration", c1_sphere_calibration),
        ("identity suite", c2_identities),
        ("evolution equations", c3_evolution),
        ("monotonicity of P", c4_monotonicity),
        ("limit P -> Q", c5_limit),
        ("P > ((n-1)/n)^2 under H_1 >= 1", c6_theorem2),
        ("counterexample search", c7_theorem1),
        ("weighted even-k inequality and ingredients", c8_theorem3),
        ("planar bound on Q", c9_remark_n2),
        ("determinism", c10_determinism),
    ];
    let mut failures = 0;
    for (i, (name, f)) in criteria.iter().enumerate() {
        let start = Instant::now();
        let outcome = catch_unwind(AssertUnwindSafe(f)).unwrap_or_else(|_| Err("panicked".into()));
        let secs = start.elapsed().as_secs_f64();
        match outcome {
            Ok(detail) => println!("PASS {:>2} {name}: {detail} [{secs:.1}s]", i + 1),
            Err(detail) => {
                failures += 1;
                println!("FAIL {:>2} {name}: {detail} [{secs:.1}s]", i + 1);
            }
        }
    }
    println!("acceptance: {} passed, {failures} failed", criteria.len() - failures);
    if failures > 0 {
        std::process::exit(1);
    }
}
