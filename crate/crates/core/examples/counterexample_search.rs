//! Searches for a horospherically convex surface with 𝒫 < 1 and prints the
//! certificate. Pass a resolution and budget to override the defaults.

use horoaf::search::find_counterexample;
use horoaf::sphere_grid::SphereGrid;

fn main() -> horoaf::Result<()> {
    let mut args = std::env::args().skip(1).map(|a| a.parse::<usize>());
    let resolution = args.next().transpose().ok().flatten().unwrap_or(64);
    let budget = args.next().transpose().ok().flatten().unwrap_or(200);
    let cert = find_counterexample(&SphereGrid::build(3, resolution)?, budget)?;
    println!("{}", cert.to_json()?);
    eprintln!(
        "Q = {:.5}; at t0 = {:.2}: P = {:.5}, min λ = {:.4}",
        cert.q, cert.t0, cert.scaled_p, cert.min_lambda_scaled
    );
    cert.reverify()?;
    eprintln!("re-verified at resolutions {} and {}", cert.resolution, cert.refinement_check.resolution);
    Ok(())
}
