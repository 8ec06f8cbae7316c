//! Geodesic spheres against their closed forms: |Σ| = ω sinh^{n−1} r,
//! ℐ = ω cosh r sinh^{n−1} r, 𝒫 = 𝒬 = 1.

use horoaf::functionals::summarize;
use horoaf::hyperbolic::lift_frame;
use horoaf::sphere_grid::{unit_sphere_area, SphereGrid};
use horoaf::SurfaceSpec;

fn main() -> horoaf::Result<()> {
    println!("{:>2} {:>5} {:>12} {:>12} {:>10} {:>10}", "n", "r", "area err", "calI err", "P - 1", "Q - 1");
    for n in 2..=4 {
        let grid = SphereGrid::build(n, 32)?;
        let omega = unit_sphere_area(n)?;
        for r in [0.25f64, 0.5, 1.0, 2.0] {
            let e = SurfaceSpec::GeodesicSphere { radius: r }.evaluate(&grid)?;
            let s = summarize(&e, &lift_frame(&e)?)?;
            let area = omega * r.sinh().powi(n as i32 - 1);
            println!(
                "{n:>2} {r:>5} {:>12.2e} {:>12.2e} {:>10.1e} {:>10.1e}",
                (s.area - area) / area,
                (s.cal_i - area * r.cosh()) / (area * r.cosh()),
                s.p - 1.0,
                s.q - 1.0
            );
        }
    }
    Ok(())
}
