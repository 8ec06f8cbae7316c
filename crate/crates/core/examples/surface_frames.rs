//! Euclidean frames of a few shapes given in the mini-language.

use horoaf::sphere_grid::SphereGrid;
use horoaf::SurfaceSpec;

fn main() -> horoaf::Result<()> {
    let grid = SphereGrid::build(3, 32)?;
    for text in [
        "ellipsoid:axes=0.3/0.2/0.25",
        "harmonic:R=0.3,zonal=0.05",
        "smoothed-simplex:default",
        "smoothed-simplex:p=6,eps=0.1,weights=1/1.2/0.8/1",
    ] {
        let spec = SurfaceSpec::parse(text, 3)?;
        let frames = spec.evaluate(&grid)?;
        let (kmin, kmax) = frames.frames.iter().fold((f64::INFINITY, 0.0f64), |(lo, hi), f| {
            (lo.min(f.kappa[0]), hi.max(f.kappa[f.kappa.len() - 1]))
        });
        println!(
            "{text:<48} area {:.6}  max|x| {:.4}  κ in [{kmin:.3}, {kmax:.3}]",
            frames.area(),
            frames.max_norm()
        );
    }
    println!("{}", serde_json::to_string(&SurfaceSpec::parse("ellipsoid:axes=0.3/0.2/0.25", 3)?)?);
    Ok(())
}
