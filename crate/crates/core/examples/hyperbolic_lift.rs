//! Hyperbolic curvature of an ellipsoid at several scales: shrinking a body
//! towards the origin makes it horospherically convex.

use horoaf::functionals::summarize;
use horoaf::hyperbolic::{lift_frame, min_principal_curvature};
use horoaf::sphere_grid::SphereGrid;
use horoaf::SurfaceSpec;

fn main() -> horoaf::Result<()> {
    let grid = SphereGrid::build(3, 32)?;
    let base = SurfaceSpec::CenteredEllipsoid { axes: vec![0.6, 0.3, 0.45] };
    for s in [1.0, 0.7, 0.5, 0.3, 0.1] {
        let e = base.scaled(s)?.evaluate(&grid)?;
        let h = lift_frame(&e)?;
        let bounds = min_principal_curvature(&h);
        let summary = summarize(&e, &h)?;
        println!(
            "scale {s:.1}: min λ {:.4}  min H1 {:.4}  h-convex {}  identity residual {:.1e}",
            bounds.min_lambda,
            bounds.min_h1,
            bounds.horospherically_convex(),
            summary.max_identity_residual
        );
    }
    Ok(())
}
