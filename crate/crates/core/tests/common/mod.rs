#![allow(dead_code, clippy::needless_range_loop)]

use horoaf::functionals::{summarize, FunctionalSummary};
use horoaf::hyperbolic::lift_frame;
use horoaf::sphere_grid::SphereGrid;
use horoaf::surface::SurfaceSpec;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

pub fn summary(spec: &SurfaceSpec, n: usize, resolution: usize) -> FunctionalSummary {
    let grid = SphereGrid::build(n, resolution).unwrap();
    let e = spec.evaluate(&grid).unwrap();
    summarize(&e, &lift_frame(&e).unwrap()).unwrap()
}

pub fn parse(text: &str, n: usize) -> SurfaceSpec {
    SurfaceSpec::parse(text, n).unwrap()
}

/// One member of every family, in dimension `n`.
pub fn builtin_surfaces(n: usize) -> Vec<SurfaceSpec> {
    let axes: Vec<f64> = [0.3, 0.2, 0.25, 0.22][..n].to_vec();
    vec![
        SurfaceSpec::GeodesicSphere { radius: 1.0 },
        SurfaceSpec::CenteredEllipsoid { axes },
        SurfaceSpec::zonal_perturbation(n, 0.3, 0.05),
        SurfaceSpec::default_simplex(n),
    ]
}

pub fn rng(seed: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed)
}

/// Radial graph `R (1 + b·u + uᵀAu)` with random small `b` and traceless `A`.
pub fn random_harmonic(rng: &mut ChaCha8Rng, n: usize, radius: (f64, f64), amplitude: f64) -> SurfaceSpec {
    let big_r = rng.gen_range(radius.0..radius.1);
    let dipole: Vec<f64> = (0..n).map(|_| rng.gen_range(-amplitude..amplitude)).collect();
    let mut q = vec![vec![0.0; n]; n];
    for i in 0..n {
        for j in i..n {
            let v = rng.gen_range(-amplitude..amplitude);
            q[i][j] = v;
        }
    }
    for i in 0..n {
        for j in 0..i {
            q[i][j] = q[j][i];
        }
    }
    let trace: f64 = (0..n).map(|i| q[i][i]).sum();
    for (i, row) in q.iter_mut().enumerate() {
        row[i] -= trace / n as f64;
    }
    SurfaceSpec::HarmonicPerturbedSphere { radius: big_r, dipole, quadrupole: q }
}

pub fn random_ellipsoid(rng: &mut ChaCha8Rng, n: usize, range: (f64, f64)) -> SurfaceSpec {
    SurfaceSpec::CenteredEllipsoid { axes: (0..n).map(|_| rng.gen_range(range.0..range.1)).collect() }
}
