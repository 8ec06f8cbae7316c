//! 𝒫 along the homothety flow of a smoothed tetrahedron, with the
//! evolution equations checked by central differences.

use horoaf::flow::{evolution_residuals, trace_flow, uniform_times};
use horoaf::sphere_grid::SphereGrid;
use horoaf::SurfaceSpec;

fn main() -> horoaf::Result<()> {
    let grid = SphereGrid::build(3, 48)?;
    let spec = SurfaceSpec::default_simplex(3);
    let trace = trace_flow(&spec, &grid, &uniform_times(8.0, 0.05)?)?;
    for s in trace.samples.iter().step_by(20) {
        println!("t {:>4.2}  area {:>10.6}  P {:.10}  min λ {:.4}", s.t, s.area, s.p, s.min_lambda);
    }
    let decreasing = trace.samples.windows(2).all(|w| w[1].p < w[0].p);
    println!("P strictly decreasing: {decreasing}");

    let fine = trace_flow(&spec, &grid, &[0.999, 1.0, 1.001])?;
    let r = evolution_residuals(&fine)?[0];
    println!("evolution residuals at t = 1, dt = 1e-3: area {:.1e}, calI {:.1e}", r.area, r.cal_i);
    Ok(())
}
