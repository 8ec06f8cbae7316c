//! Counterexample search: minimize `𝒬` over a shape family, then shrink the
//! best body along the homothety flow until it is horospherically convex with
//! `𝒫 < 1`.

mod certificate;
mod nelder_mead;

pub use certificate::{CounterexampleCertificate, RefinementCheck, CERTIFICATE_MARGIN};
pub use nelder_mead::{Minimum, NelderMead};

use crate::error::{Error, Result};
use crate::functionals::{euclidean_q, summarize};
use crate::hyperbolic::lift_frame;
use crate::sphere_grid::SphereGrid;
use crate::surface::{regular_simplex_vertices, scale_frame, SurfaceSpec};

/// Smallest accepted evaluation budget.
pub const MIN_BUDGET: usize = 50;
/// Step of the flow scan.
pub const SCAN_STEP: f64 = 0.05;
/// The scan gives up past this time.
pub const SCAN_T_MAX: f64 = 20.0;
/// Largest `|x|` of the body after it is rescaled into the ball.
pub const BALL_FIT_RADIUS: f64 = 0.5;

/// A parametric set of surfaces with box-constrained parameters.
pub trait ShapeFamily: Sync {
    fn n(&self) -> usize;
    fn name(&self) -> &'static str;
    fn bounds(&self) -> Vec<(f64, f64)>;
    fn initial(&self) -> Vec<f64>;
    fn build(&self, params: &[f64]) -> Result<SurfaceSpec>;
}

/// Smoothed simplices with free exponent, rounding and per-vertex radial
/// weights: parameters `[p, ε, w_0, …, w_n]`.
#[derive(Debug, Clone)]
pub struct SmoothedSimplexFamily {
    pub n: usize,
    pub scale: f64,
}

impl SmoothedSimplexFamily {
    pub fn new(n: usize) -> Self {
        Self { n, scale: 0.25 }
    }
}

impl ShapeFamily for SmoothedSimplexFamily {
    fn n(&self) -> usize {
        self.n
    }

    fn name(&self) -> &'static str {
        "smoothed_simplex"
    }

    fn bounds(&self) -> Vec<(f64, f64)> {
        let mut b = vec![(3.0, 8.0), (0.02, 0.5)];
        b.extend(std::iter::repeat_n((0.5, 2.0), self.n + 1));
        b
    }

    fn initial(&self) -> Vec<f64> {
        let mut x = vec![4.0, 0.05];
        x.extend(std::iter::repeat_n(1.0, self.n + 1));
        x
    }

    fn build(&self, params: &[f64]) -> Result<SurfaceSpec> {
        let vertices = regular_simplex_vertices(self.n)
            .into_iter()
            .zip(&params[2..])
            .map(|(v, w)| v.into_iter().map(|c| c * w).collect())
            .collect();
        let spec = SurfaceSpec::SmoothedSimplex {
            vertices,
            exponent: params[0],
            rounding: params[1],
            scale: self.scale,
        };
        spec.validate(self.n)?;
        Ok(spec)
    }
}

/// Smoothed equilateral triangles in the plane, parametrized by
/// `[ln p, ln ε]` so that sharp corners are reachable.
#[derive(Debug, Clone)]
pub struct SmoothedTriangleFamily {
    pub scale: f64,
    pub max_exponent: f64,
    pub min_rounding: f64,
}

impl Default for SmoothedTriangleFamily {
    fn default() -> Self {
        Self { scale: 0.3, max_exponent: 200.0, min_rounding: 1e-3 }
    }
}

impl ShapeFamily for SmoothedTriangleFamily {
    fn n(&self) -> usize {
        2
    }

    fn name(&self) -> &'static str {
        "smoothed_triangle"
    }

    fn bounds(&self) -> Vec<(f64, f64)> {
        vec![(3f64.ln(), self.max_exponent.ln()), (self.min_rounding.ln(), 0.5f64.ln())]
    }

    fn initial(&self) -> Vec<f64> {
        vec![4f64.ln(), 0.05f64.ln()]
    }

    fn build(&self, params: &[f64]) -> Result<SurfaceSpec> {
        let spec = SurfaceSpec::SmoothedSimplex {
            vertices: regular_simplex_vertices(2),
            exponent: params[0].exp(),
            rounding: params[1].exp(),
            scale: self.scale,
        };
        spec.validate(2)?;
        Ok(spec)
    }
}

/// Centered ellipsoids with all semi-axes free, starting from a sphere.
#[derive(Debug, Clone)]
pub struct EllipsoidFamily {
    pub n: usize,
}

impl ShapeFamily for EllipsoidFamily {
    fn n(&self) -> usize {
        self.n
    }

    fn name(&self) -> &'static str {
        "centered_ellipsoid"
    }

    fn bounds(&self) -> Vec<(f64, f64)> {
        vec![(0.05, 0.6); self.n]
    }

    fn initial(&self) -> Vec<f64> {
        vec![0.3; self.n]
    }

    fn build(&self, params: &[f64]) -> Result<SurfaceSpec> {
        Ok(SurfaceSpec::CenteredEllipsoid { axes: params.to_vec() })
    }
}

/// Geodesic spheres, parametrized by hyperbolic radius. `𝒬 ≡ 1` here.
#[derive(Debug, Clone)]
pub struct GeodesicSphereFamily {
    pub n: usize,
}

impl ShapeFamily for GeodesicSphereFamily {
    fn n(&self) -> usize {
        self.n
    }

    fn name(&self) -> &'static str {
        "geodesic_sphere"
    }

    fn bounds(&self) -> Vec<(f64, f64)> {
        vec![(0.1, 3.0)]
    }

    fn initial(&self) -> Vec<f64> {
        vec![1.0]
    }

    fn build(&self, params: &[f64]) -> Result<SurfaceSpec> {
        Ok(SurfaceSpec::GeodesicSphere { radius: params[0] })
    }
}

/// `𝒬` of a surface on a grid.
pub fn q_of(surface: &SurfaceSpec, grid: &SphereGrid) -> Result<f64> {
    euclidean_q(&surface.evaluate(grid)?)
}

#[derive(Debug, Clone)]
pub struct QMinimum {
    pub params: Vec<f64>,
    pub surface: SurfaceSpec,
    pub q: f64,
    pub evaluations: usize,
}

/// Minimizes `𝒬` over `family` from `initial` (the family default if `None`).
/// Parameters whose surface fails to evaluate are treated as infeasible.
pub fn minimize_q(
    family: &dyn ShapeFamily,
    grid: &SphereGrid,
    initial: Option<&[f64]>,
    budget: usize,
) -> Result<QMinimum> {
    if grid.n() != family.n() {
        return Err(Error::WrongDimension { expected: family.n(), got: grid.n() });
    }
    if budget < MIN_BUDGET {
        return Err(Error::InvalidParameter(format!("budget must be at least {MIN_BUDGET}")));
    }
    let start = initial.map(<[f64]>::to_vec).unwrap_or_else(|| family.initial());
    let objective = |x: &[f64]| {
        family.build(x).and_then(|s| q_of(&s, grid)).unwrap_or(f64::INFINITY)
    };
    let best = NelderMead::new(family.bounds(), budget).minimize(objective, &start)?;
    Ok(QMinimum {
        surface: family.build(&best.x)?,
        params: best.x,
        q: best.value,
        evaluations: best.evaluations,
    })
}

/// `min λ` and `𝒫` of a surface on a grid.
pub(crate) fn scaled_state(surface: &SurfaceSpec, grid: &SphereGrid) -> Result<(f64, f64)> {
    let e = surface.evaluate(grid)?;
    let s = summarize(&e, &lift_frame(&e)?)?;
    Ok((s.min_lambda, s.p))
}

fn min_lambda_at(base: &crate::surface::EuclideanFrames, t: f64) -> Result<(f64, f64)> {
    let scaled = scale_frame(base, (-t).exp())?;
    let s = summarize(&scaled, &lift_frame(&scaled)?)?;
    Ok((s.min_lambda, s.p))
}

/// Runs the full pipeline over the smoothed simplex family.
pub fn find_counterexample(grid: &SphereGrid, budget: usize) -> Result<CounterexampleCertificate> {
    find_counterexample_in(&SmoothedSimplexFamily::new(grid.n()), grid, budget)
}

/// Minimizes `𝒬` over `family`, fits the optimum into the ball, scans the
/// homothety flow for the first time at which `min λ ≥ 1 + 1e−3` and
/// `𝒫 < 1 − 1e−3`, and re-verifies the result at twice the resolution.
pub fn find_counterexample_in(
    family: &dyn ShapeFamily,
    grid: &SphereGrid,
    budget: usize,
) -> Result<CounterexampleCertificate> {
    let best = minimize_q(family, grid, None, budget)?;
    if !(best.q < 1.0 - CERTIFICATE_MARGIN) {
        return Err(Error::BudgetExhausted { best_q: best.q });
    }

    let frames = best.surface.evaluate(grid)?;
    let scale = BALL_FIT_RADIUS / frames.max_norm();
    let fitted = best.surface.scaled(scale)?;
    let base = fitted.evaluate(grid)?;

    let steps = (SCAN_T_MAX / SCAN_STEP).round() as usize;
    let mut previous_t = 0.0;
    let mut onset = None;
    let mut t0 = None;
    for i in 0..=steps {
        let t = i as f64 * SCAN_STEP;
        let (min_lambda, p) = min_lambda_at(&base, t)?;
        if onset.is_none() && min_lambda >= 1.0 {
            onset = Some(if i == 0 { 0.0 } else { bisect_onset(&base, previous_t, t)? });
        }
        if min_lambda >= 1.0 + CERTIFICATE_MARGIN && p < 1.0 - CERTIFICATE_MARGIN {
            t0 = Some(t);
            break;
        }
        previous_t = t;
    }
    let t0 = t0.ok_or(Error::NotCertified { t_max: SCAN_T_MAX })?;

    let certificate = CounterexampleCertificate::assemble(
        grid,
        best.surface,
        scale,
        t0,
        onset.unwrap_or(t0),
    )?;
    certificate.reverify()?;
    Ok(certificate)
}

/// Time at which `min λ` first reaches 1, given `min λ(lo) < 1 ≤ min λ(hi)`.
fn bisect_onset(base: &crate::surface::EuclideanFrames, mut lo: f64, mut hi: f64) -> Result<f64> {
    for _ in 0..40 {
        let mid = 0.5 * (lo + hi);
        if min_lambda_at(base, mid)?.0 >= 1.0 {
            hi = mid;
        } else {
            lo = mid;
        }
    }
    Ok(hi)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn families_build_valid_surfaces() {
        let fam = SmoothedSimplexFamily::new(3);
        assert_eq!(fam.bounds().len(), 6);
        let spec = fam.build(&fam.initial()).unwrap();
        assert_eq!(spec.family_name(), "smoothed_simplex");
        let tri = SmoothedTriangleFamily::default();
        let spec = tri.build(&tri.initial()).unwrap();
        let SurfaceSpec::SmoothedSimplex { exponent, .. } = spec else { panic!() };
        assert!((exponent - 4.0).abs() < 1e-12);
    }

    #[test]
    fn ellipsoid_search_never_worse_than_sphere() {
        let grid = SphereGrid::build(3, 16).unwrap();
        let m = minimize_q(&EllipsoidFamily { n: 3 }, &grid, None, 60).unwrap();
        assert!(m.q <= 1.0 + 1e-12, "{}", m.q);
        assert!(m.evaluations <= 61);
    }

    #[test]
    fn rejects_small_budget_and_wrong_dimension() {
        let grid = SphereGrid::build(3, 8).unwrap();
        assert!(minimize_q(&EllipsoidFamily { n: 3 }, &grid, None, 10).is_err());
        assert!(matches!(
            minimize_q(&EllipsoidFamily { n: 2 }, &grid, None, 60),
            Err(Error::WrongDimension { .. })
        ));
    }

    #[test]
    fn sphere_family_is_not_certified() {
        let grid = SphereGrid::build(3, 8).unwrap();
        let r = find_counterexample_in(&GeodesicSphereFamily { n: 3 }, &grid, 50);
        assert!(matches!(r, Err(Error::BudgetExhausted { .. })));
    }
}
