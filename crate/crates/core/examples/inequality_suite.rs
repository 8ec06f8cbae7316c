//! Every applicable inequality on an h-convex ellipsoid in n = 4.

use horoaf::functionals::{run_suite, summarize};
use horoaf::hyperbolic::lift_frame;
use horoaf::sphere_grid::SphereGrid;
use horoaf::SurfaceSpec;

fn main() -> horoaf::Result<()> {
    let spec = SurfaceSpec::CenteredEllipsoid { axes: vec![0.2, 0.15, 0.18, 0.16] };
    let at = |res| -> horoaf::Result<_> {
        let e = spec.evaluate(&SphereGrid::build(4, res)?)?;
        summarize(&e, &lift_frame(&e)?)
    };
    let (fine, coarse) = (at(24)?, at(12)?);
    for r in run_suite(&fine, Some(&coarse), Some(&spec))? {
        let index = r.index.map(|i| format!("[{i}]")).unwrap_or_default();
        println!(
            "{:<16} lhs {:>12.6} rhs {:>12.6} margin {:>10.3e} {}",
            format!("{}{index}", r.name),
            r.lhs,
            r.rhs,
            r.margin,
            if r.holds { "holds" } else { "fails" }
        );
    }
    Ok(())
}
