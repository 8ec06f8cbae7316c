//! Hypersurfaces in the unit ball and their Euclidean differential geometry.
//!
//! Two parametrizations over the sphere grid are supported:
//!
//! * convex bodies through their support function `h`, where the node `u` is
//!   the outward normal, `x = ∇h(u)` and the principal radii are the
//!   eigenvalues of `∇²h + h·id` on `u^⊥`;
//! * star-shaped bodies through their radial function `r_e`, where `x = r_e(u) u`
//!   and curvatures come from the implicit description `|y| = r_e(y/|y|)`.
//!
//! Every frame also records the images of the tangent basis under the
//! parametrization, so that tangential derivatives can be recomputed
//! independently of the normal and curvature formulas.

pub mod radial;
pub mod spec;
pub mod support;

use arrayvec::ArrayVec;
use rayon::prelude::*;

use crate::error::{Error, Result};
use crate::numeric::{pairwise_sum, restrict, sym_eigenvalues, tangent_basis, Mat4, Tangential, Vec4};
use crate::sphere_grid::SphereGrid;

pub use radial::RadialFunction;
pub use spec::{regular_simplex_vertices, SurfaceSpec};
pub use support::SupportFunction;

/// Euclidean geometry of the surface at one grid node.
#[derive(Debug, Clone, PartialEq)]
pub struct EuclideanFrame {
    pub x: Vec4,
    /// Outward unit normal.
    pub normal: Vec4,
    /// Principal curvatures, ascending.
    pub kappa: Tangential,
    /// `δ(x, ν)`.
    pub support: f64,
    /// Area element including the grid weight.
    pub area_element: f64,
    /// Images of the grid tangent basis under the parametrization differential.
    pub tangents: ArrayVec<Vec4, 3>,
}

/// Frames of one surface on one grid, in grid-node order.
#[derive(Debug, Clone)]
pub struct EuclideanFrames {
    pub n: usize,
    pub resolution: usize,
    pub frames: Vec<EuclideanFrame>,
}

impl EuclideanFrames {
    pub fn len(&self) -> usize {
        self.frames.len()
    }

    pub fn is_empty(&self) -> bool {
        self.frames.is_empty()
    }

    pub fn max_norm(&self) -> f64 {
        self.frames.iter().map(|f| f.x.norm()).fold(0.0, f64::max)
    }

    pub fn area(&self) -> f64 {
        let terms: Vec<f64> = self.frames.iter().map(|f| f.area_element).collect();
        pairwise_sum(&terms)
    }

    /// `∫ f dA^δ` by pairwise summation.
    pub fn integrate(&self, f: impl Fn(&EuclideanFrame) -> f64) -> f64 {
        let terms: Vec<f64> = self.frames.iter().map(|fr| f(fr) * fr.area_element).collect();
        pairwise_sum(&terms)
    }

    fn check_in_ball(self) -> Result<Self> {
        let max_norm = self.max_norm();
        if max_norm >= 1.0 {
            return Err(Error::OutOfBall { max_norm });
        }
        Ok(self)
    }
}

/// Collects per-node results, reporting the error of the first failing node.
fn collect_frames(results: Vec<Result<EuclideanFrame>>, grid: &SphereGrid) -> Result<EuclideanFrames> {
    let frames = results.into_iter().collect::<Result<Vec<_>>>()?;
    Ok(EuclideanFrames { n: grid.n(), resolution: grid.resolution(), frames })
}

/// Frames of the convex body with support function `h`.
///
/// Fails with `NonConvex` when a principal radius is not positive and with
/// `OutOfBall` when the body is not inside the unit ball.
pub fn eval_support_body(h: &dyn SupportFunction, grid: &SphereGrid) -> Result<EuclideanFrames> {
    let n = grid.n();
    if h.dim() != n {
        return Err(Error::WrongDimension { expected: n, got: h.dim() });
    }
    let results: Vec<Result<EuclideanFrame>> = grid
        .nodes()
        .par_iter()
        .zip(grid.weights().par_iter())
        .enumerate()
        .map(|(node, (u, w))| {
            let jet = h.jet(u);
            let basis = tangent_basis(u, n);
            let radii = sym_eigenvalues(&restrict(&jet.hessian, &basis), n - 1);
            let min_radius = radii[0];
            if !(min_radius > 0.0) {
                return Err(Error::NonConvex { node, radius: min_radius });
            }
            let tangents = basis.iter().map(|e| jet.hessian * e).collect();
            Ok(EuclideanFrame {
                x: jet.gradient,
                normal: *u,
                kappa: radii.iter().rev().map(|r| 1.0 / r).collect(),
                support: jet.value,
                area_element: radii.iter().product::<f64>() * w,
                tangents,
            })
        })
        .collect();
    collect_frames(results, grid)?.check_in_ball()
}

/// Frames of the star-shaped surface `{ r_e(u) u }`.
pub fn eval_radial_graph(r: &dyn RadialFunction, grid: &SphereGrid) -> Result<EuclideanFrames> {
    let n = grid.n();
    if r.dim() != n {
        return Err(Error::WrongDimension { expected: n, got: r.dim() });
    }
    let results: Vec<Result<EuclideanFrame>> = grid
        .nodes()
        .par_iter()
        .zip(grid.weights().par_iter())
        .enumerate()
        .map(|(node, (u, w))| radial_frame(r, u, *w, n, node))
        .collect();
    let frames = collect_frames(results, grid)?;
    frames.check_in_ball()
}

fn radial_frame(r: &dyn RadialFunction, u: &Vec4, weight: f64, n: usize, node: usize) -> Result<EuclideanFrame> {
    let jet = r.jet(u);
    let rad = jet.value;
    if !(rad > 0.0) {
        return Err(Error::InvalidParameter(format!("radial function is not positive at node {node}")));
    }
    if rad >= 1.0 {
        return Err(Error::OutOfBall { max_norm: rad });
    }
    let proj = crate::numeric::eye(n) - u * u.transpose();
    let radial_slope = u.dot(&jet.gradient);
    // tangential gradient and covariant Hessian of r_e on the unit sphere
    let grad_t = proj * jet.gradient;
    let hess_t = proj * jet.hessian * proj - proj * radial_slope;
    // Hessian at u of the 0-homogeneous extension g(y) = r_e(y/|y|)
    let hess_g = hess_t - u * grad_t.transpose() - grad_t * u.transpose();

    // Surface = { F = 0 }, F(y) = |y| - g(y), evaluated at y = r u.
    let grad_f = u - grad_t / rad;
    let grad_f_norm = grad_f.norm();
    let hess_f: Mat4 = proj / rad - hess_g / (rad * rad);
    let normal = grad_f / grad_f_norm;
    let surface_basis = tangent_basis(&normal, n);
    let shape = restrict(&hess_f, &surface_basis) / grad_f_norm;
    let kappa = sym_eigenvalues(&shape, n - 1);

    let sphere_basis = tangent_basis(u, n);
    let tangents: ArrayVec<Vec4, 3> =
        sphere_basis.iter().map(|e| u * grad_t.dot(e) + e * rad).collect();
    let slope_sq = grad_t.norm_squared();
    let metric = (rad * rad + slope_sq).sqrt();
    if !(metric > 0.0) {
        return Err(Error::Degenerate { node });
    }
    Ok(EuclideanFrame {
        x: u * rad,
        normal,
        kappa,
        support: rad * rad / metric,
        area_element: rad.powi(n as i32 - 2) * metric * weight,
        tangents,
    })
}

/// Euclidean radius `tanh(r/2)` of the geodesic sphere of hyperbolic radius `r`.
pub fn hyperbolic_to_euclidean_radius(r: f64) -> Result<f64> {
    if !(r > 0.0) {
        return Err(Error::InvalidParameter(format!("hyperbolic radius must be positive, got {r}")));
    }
    Ok((0.5 * r).tanh())
}

/// Inverse of [`hyperbolic_to_euclidean_radius`], `2 artanh(R)` for `0 < R < 1`.
pub fn euclidean_to_hyperbolic_radius(big_r: f64) -> Result<f64> {
    if !(big_r > 0.0 && big_r < 1.0) {
        return Err(Error::InvalidParameter(format!("Euclidean radius must lie in (0, 1), got {big_r}")));
    }
    Ok(2.0 * big_r.atanh())
}

/// Frames of the homothetic image `s Σ`, computed exactly from those of `Σ`.
pub fn scale_frame(frames: &EuclideanFrames, s: f64) -> Result<EuclideanFrames> {
    if !(s > 0.0 && s <= 1.0) {
        return Err(Error::InvalidParameter(format!("scale must lie in (0, 1], got {s}")));
    }
    let area_factor = s.powi(frames.n as i32 - 1);
    let scaled = frames
        .frames
        .iter()
        .map(|f| EuclideanFrame {
            x: f.x * s,
            normal: f.normal,
            kappa: f.kappa.iter().map(|k| k / s).collect(),
            support: f.support * s,
            area_element: f.area_element * area_factor,
            tangents: f.tangents.iter().map(|t| t * s).collect(),
        })
        .collect();
    Ok(EuclideanFrames { n: frames.n, resolution: frames.resolution, frames: scaled })
}
