//! Quadrature on S^1, S^2 and S^3: node counts and a few exact integrals.

use horoaf::sphere_grid::{unit_sphere_area, SphereGrid};

fn main() -> horoaf::Result<()> {
    for n in 2..=4 {
        let grid = SphereGrid::build(n, 12)?;
        let d = grid.describe();
        let omega = unit_sphere_area(n)?;
        // ∫ u_n² = ω / n
        let second_moment = grid.integrate(|u| u[n - 1] * u[n - 1]);
        println!(
            "S^{}: {} nodes ({}), area {:.15} (exact {:.15}), ∫u_n² error {:.1e}",
            n - 1,
            d.nodes,
            d.rule,
            grid.integrate(|_| 1.0),
            omega,
            (second_moment - omega / n as f64).abs()
        );
    }
    Ok(())
}
