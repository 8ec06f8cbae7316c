//! In the plane 𝒬 > (2π)²/54 for convex curves; smoothed equilateral
//! triangles approach the constant.

use horoaf::functionals::REMARK_N2_CONSTANT;
use horoaf::search::{minimize_q, q_of, SmoothedTriangleFamily};
use horoaf::sphere_grid::SphereGrid;
use horoaf::SurfaceSpec;

fn main() -> horoaf::Result<()> {
    let grid = SphereGrid::build(2, 16384)?;
    println!("(2π)²/54 = {REMARK_N2_CONSTANT:.6}");
    for text in ["circle:R=0.4", "ellipsoid:axes=0.5/0.2", "smoothed-simplex:p=8,eps=0.1", "smoothed-simplex:p=50,eps=0.01"] {
        println!("{text:<32} Q = {:.6}", q_of(&SurfaceSpec::parse(text, 2)?, &grid)?);
    }
    let best = minimize_q(&SmoothedTriangleFamily::default(), &grid, None, 200)?;
    println!(
        "optimized triangle: p = {:.1}, ε = {:.4}, Q = {:.6}, gap {:.2e}",
        best.params[0].exp(),
        best.params[1].exp(),
        best.q,
        best.q - REMARK_N2_CONSTANT
    );
    Ok(())
}
