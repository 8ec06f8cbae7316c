//! Hyperbolic geometry of surfaces in the Poincaré ball.
//!
//! With `φ = 2/(1 − |x|²)` the metric is `φ² δ` and, for a surface with
//! Euclidean data `(κ, u^δ, dA^δ)`:
//!
//! ```text
//! λ_i = κ_i / φ + u^δ,   p = φ u^δ,   dA = φ^{n−1} dA^δ,   ρ = (1 + |x|²)/(1 − |x|²)
//! ```

use arrayvec::ArrayVec;
use nalgebra::{Matrix3, Vector3};
use rayon::prelude::*;

use crate::error::{Error, Result};
use crate::numeric::{binomial, elementary_symmetric, inverse_quadratic_form, Tangential, Vec4};
use crate::surface::EuclideanFrames;

/// Horospherical convexity threshold on `min λ`.
pub const H_CONVEX_TOL: f64 = 1e-9;

fn check_in_ball(x: &Vec4) -> Result<f64> {
    let sq = x.norm_squared();
    if sq >= 1.0 {
        return Err(Error::OutOfBall { max_norm: sq.sqrt() });
    }
    Ok(sq)
}

/// Conformal factor `2 / (1 − |x|²)`.
pub fn conformal_factor(x: &Vec4) -> Result<f64> {
    Ok(2.0 / (1.0 - check_in_ball(x)?))
}

/// Weight function `ρ = cosh(dist(0, x)) = (1 + |x|²)/(1 − |x|²)`.
pub fn rho(x: &Vec4) -> Result<f64> {
    let sq = check_in_ball(x)?;
    Ok((1.0 + sq) / (1.0 - sq))
}

/// Hyperbolic geometry at one node.
#[derive(Debug, Clone, PartialEq)]
pub struct HyperbolicFrame {
    pub rho: f64,
    /// `ρ − 1`, computed without cancellation.
    pub rho_minus_one: f64,
    /// Hyperbolic support function `p = <Dρ, ξ>`.
    pub p: f64,
    /// Hyperbolic principal curvatures, ascending.
    pub lambda: Tangential,
    pub area_element: f64,
    /// `σ_0..=σ_{n−1}` of `lambda`.
    pub sigma: ArrayVec<f64, 4>,
    /// `|∇ρ|²` in the induced hyperbolic metric, from the parametrization tangents.
    pub grad_rho_sq: f64,
    /// Conformal factor at the node.
    pub phi: f64,
}

impl HyperbolicFrame {
    /// `ρ² − 1 − p² − |∇ρ|²`, which vanishes identically on any hypersurface.
    pub fn identity_residual(&self) -> f64 {
        self.rho_minus_one * (self.rho + 1.0) - self.p * self.p - self.grad_rho_sq
    }
}

#[derive(Debug, Clone)]
pub struct HyperbolicFrames {
    pub n: usize,
    pub frames: Vec<HyperbolicFrame>,
}

/// Lifts Euclidean frames to hyperbolic ones.
pub fn lift_frame(euclidean: &EuclideanFrames) -> Result<HyperbolicFrames> {
    let n = euclidean.n;
    let lifted: Vec<Result<HyperbolicFrame>> = euclidean
        .frames
        .par_iter()
        .map(|f| {
            let sq = check_in_ball(&f.x)?;
            let denom = 1.0 - sq;
            let phi = 2.0 / denom;
            let lambda: Tangential = f.kappa.iter().map(|k| k / phi + f.support).collect();
            let sigma = elementary_symmetric(&lambda);

            // Tangential derivatives of ρ along the parametrization:
            // Dρ = φ² x (Euclidean gradient), G = Gram matrix of the tangents.
            let d_rho = f.x * (phi * phi);
            let m = f.tangents.len();
            let mut gram = Matrix3::zeros();
            let mut d = Vector3::zeros();
            for (i, ti) in f.tangents.iter().enumerate() {
                d[i] = d_rho.dot(ti);
                for (j, tj) in f.tangents.iter().enumerate() {
                    gram[(i, j)] = ti.dot(tj);
                }
            }
            let grad_sq_euclidean =
                inverse_quadratic_form(&gram, &d, m).ok_or(Error::Degenerate { node: 0 })?;

            Ok(HyperbolicFrame {
                rho: (1.0 + sq) / denom,
                rho_minus_one: 2.0 * sq / denom,
                p: phi * f.support,
                lambda,
                area_element: phi.powi(n as i32 - 1) * f.area_element,
                sigma,
                grad_rho_sq: grad_sq_euclidean / (phi * phi),
                phi,
            })
        })
        .collect();
    let frames = lifted.into_iter().collect::<Result<Vec<_>>>()?;
    Ok(HyperbolicFrames { n, frames })
}

impl HyperbolicFrames {
    pub fn len(&self) -> usize {
        self.frames.len()
    }

    pub fn is_empty(&self) -> bool {
        self.frames.is_empty()
    }

    pub fn max_identity_residual(&self) -> f64 {
        self.frames.iter().map(|f| f.identity_residual().abs()).fold(0.0, f64::max)
    }
}

/// Per-node `H_k = σ_k / C(n−1, k)`.
pub fn normalized_mean_curvature(frames: &HyperbolicFrames, k: usize) -> Result<Vec<f64>> {
    let m = frames.n - 1;
    if k > m {
        return Err(Error::InvalidParameter(format!("k = {k} exceeds n - 1 = {m}")));
    }
    let c = binomial(m, k);
    Ok(frames.frames.iter().map(|f| f.sigma[k] / c).collect())
}

/// Lower curvature bounds over all nodes.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct CurvatureBounds {
    pub min_lambda: f64,
    pub min_h1: f64,
}

impl CurvatureBounds {
    pub fn horospherically_convex(&self) -> bool {
        self.min_lambda >= 1.0 - H_CONVEX_TOL
    }

    pub fn h1_at_least_one(&self) -> bool {
        self.min_h1 >= 1.0 - H_CONVEX_TOL
    }
}

pub fn min_principal_curvature(frames: &HyperbolicFrames) -> CurvatureBounds {
    let m = (frames.n - 1) as f64;
    frames.frames.iter().fold(
        CurvatureBounds { min_lambda: f64::INFINITY, min_h1: f64::INFINITY },
        |acc, f| CurvatureBounds {
            min_lambda: acc.min_lambda.min(f.lambda[0]),
            min_h1: acc.min_h1.min(f.sigma[1] / m),
        },
    )
}
