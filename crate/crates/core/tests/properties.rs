mod common;

use horoaf::flow::{trace_flow, uniform_times};
use horoaf::functionals::euclidean_q;
use horoaf::sphere_grid::{unit_sphere_area, SphereGrid};
use horoaf::surface::{scale_frame, SurfaceSpec};
use proptest::prelude::*;

fn config() -> ProptestConfig {
    ProptestConfig { cases: 24, ..ProptestConfig::default() }
}

proptest! {
    #![proptest_config(config())]

    #[test]
    fn grid_integrates_constants_and_is_positive(n in 2usize..=4, res in 4usize..20) {
        let grid = SphereGrid::build(n, res).unwrap();
        let omega = unit_sphere_area(n).unwrap();
        prop_assert!(grid.weights().iter().all(|w| *w > 0.0));
        prop_assert!((grid.integrate(|_| 1.0) - omega).abs() < 1e-12 * omega);
        prop_assert!(grid.nodes().iter().all(|u| (u.norm() - 1.0).abs() < 1e-14));
        // Odd functions integrate to zero.
        prop_assert!(grid.integrate(|u| u[0] * u[0] * u[n - 1]).abs() < 1e-13);
    }

    #[test]
    fn rounding_shifts_every_radius(p in 3.0f64..12.0, eps in 0.02f64..0.3, delta in 0.01f64..0.2) {
        let grid = SphereGrid::build(3, 10).unwrap();
        let body = |rounding: f64| SurfaceSpec::SmoothedSimplex {
            vertices: horoaf::surface::regular_simplex_vertices(3),
            exponent: p,
            rounding,
            scale: 0.2,
        };
        let a = body(eps).evaluate(&grid).unwrap();
        let b = body(eps + delta).evaluate(&grid).unwrap();
        for (fa, fb) in a.frames.iter().zip(&b.frames) {
            let mut ra: Vec<f64> = fa.kappa.iter().map(|k| 1.0 / k).collect();
            let mut rb: Vec<f64> = fb.kappa.iter().map(|k| 1.0 / k).collect();
            ra.sort_by(f64::total_cmp);
            rb.sort_by(f64::total_cmp);
            for (x, y) in ra.iter().zip(&rb) {
                prop_assert!((y - x - 0.2 * delta).abs() < 1e-10, "{} {}", x, y);
            }
        }
    }

    #[test]
    fn q_is_scale_invariant(a in 0.1f64..0.5, b in 0.1f64..0.5, c in 0.1f64..0.5, s in 0.05f64..1.0) {
        let grid = SphereGrid::build(3, 16).unwrap();
        let spec = SurfaceSpec::CenteredEllipsoid { axes: vec![a, b, c] };
        let q = euclidean_q(&spec.evaluate(&grid).unwrap()).unwrap();
        let scaled = euclidean_q(&spec.scaled(s).unwrap().evaluate(&grid).unwrap()).unwrap();
        prop_assert!((q - scaled).abs() < 1e-12);
        prop_assert!(q >= 1.0 - 1e-12);
    }

    #[test]
    fn scaling_frames_matches_scaling_shapes(a in 0.1f64..0.5, b in 0.1f64..0.5, s in 0.1f64..1.0) {
        let grid = SphereGrid::build(3, 8).unwrap();
        let spec = SurfaceSpec::CenteredEllipsoid { axes: vec![a, b, 0.3] };
        let direct = spec.scaled(s).unwrap().evaluate(&grid).unwrap();
        let via = scale_frame(&spec.evaluate(&grid).unwrap(), s).unwrap();
        for (x, y) in direct.frames.iter().zip(&via.frames) {
            prop_assert!((x.x - y.x).norm() < 1e-14);
            prop_assert!((x.area_element - y.area_element).abs() < 1e-13 * x.area_element);
            for (k1, k2) in x.kappa.iter().zip(&y.kappa) {
                prop_assert!((k1 - k2).abs() < 1e-11 * k1);
            }
        }
    }

    #[test]
    fn p_never_increases_along_the_flow(
        big_r in 0.15f64..0.6,
        d in -0.05f64..0.05,
        q in -0.05f64..0.05,
        n in 2usize..=3,
    ) {
        let text = if n == 3 {
            format!("harmonic:R={big_r},dipole={d}/0/0,quadrupole={q}/{q}/{}", -2.0 * q)
        } else {
            format!("harmonic:R={big_r},dipole={d}/0,quadrupole={q}/{}", -q)
        };
        let spec = SurfaceSpec::parse(&text, n).unwrap();
        let grid = SphereGrid::build(n, if n == 2 { 64 } else { 16 }).unwrap();
        let trace = trace_flow(&spec, &grid, &uniform_times(6.0, 0.25).unwrap()).unwrap();
        for w in trace.samples.windows(2) {
            prop_assert!(w[1].p <= w[0].p * (1.0 + 1e-10));
            prop_assert!(w[1].area < w[0].area);
        }
    }

    #[test]
    fn spheres_have_p_and_q_one(r in 0.05f64..3.0, n in 2usize..=4) {
        let s = common::summary(&SurfaceSpec::GeodesicSphere { radius: r }, n, 8);
        prop_assert!((s.p - 1.0).abs() < 1e-9);
        prop_assert!((s.q - 1.0).abs() < 1e-10);
    }
}

#[test]
fn raw_and_normalized_forms_agree_in_sign() {
    use horoaf::functionals::{check_inequality, Inequality};
    let mut rng = common::rng(17);
    for _ in 0..20 {
        let spec = common::random_harmonic(&mut rng, 3, (0.2, 0.6), 0.1);
        let s = common::summary(&spec, 3, 24);
        for ineq in [Inequality::Conjecture, Inequality::Thm2] {
            let r = check_inequality(ineq, &s).unwrap();
            let [lhs, rhs] = r.raw.unwrap();
            assert_eq!((lhs - rhs).signum(), r.margin.signum(), "{r:?}");
        }
    }
}
