//! 𝒫(e^{−T} Σ) approaches 𝒬(Σ), with the gap shrinking like e^{−2T}.

use horoaf::flow::limit_p_to_q;
use horoaf::sphere_grid::SphereGrid;
use horoaf::SurfaceSpec;

fn main() -> horoaf::Result<()> {
    let grid = SphereGrid::build(3, 48)?;
    for spec in [
        SurfaceSpec::default_simplex(3),
        SurfaceSpec::CenteredEllipsoid { axes: vec![0.3, 0.2, 0.25] },
    ] {
        println!("{}", spec.family_name());
        let mut previous: Option<f64> = None;
        for t in [1.5, 3.0, 4.5, 6.0] {
            let probe = limit_p_to_q(&spec, &grid, t)?;
            let rate = previous.map(|g| format!("{:.3}", (g / probe.gap).ln() / 1.5)).unwrap_or_default();
            println!("  T {t:.1}  P {:.10}  Q {:.10}  gap {:.3e}  rate {rate}", probe.p_at_t, probe.q_at_zero, probe.gap);
            previous = Some(probe.gap);
        }
    }
    Ok(())
}
