//! Product quadrature grids on the unit sphere `S^{n-1}`.
//!
//! * `n = 2`: uniform angles.
//! * `n = 3`: Gauss–Legendre in the polar cosine times a uniform azimuth.
//! * `n = 4`: Gauss rule for `sin^2` in the first polar angle, Gauss–Legendre
//!   in the second polar cosine, uniform in the azimuth.
//!
//! A grid of resolution `N` integrates restrictions of ambient polynomials of
//! degree `< N` exactly, up to roundoff.

use std::f64::consts::PI;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::numeric::{gauss_chebyshev_second, gauss_legendre, pairwise_sum, Vec4};

pub const MIN_RESOLUTION: usize = 4;

/// Area of the unit sphere `S^{n-1} ⊂ R^n`, `2 π^{n/2} / Γ(n/2)`.
pub fn unit_sphere_area(n: usize) -> Result<f64> {
    if n < 2 {
        return Err(Error::UnsupportedDimension(n));
    }
    Ok(2.0 * PI.powf(n as f64 / 2.0) / gamma_half_integer(n))
}

/// `Γ(m / 2)` for a positive integer `m`.
fn gamma_half_integer(m: usize) -> f64 {
    let (mut value, mut arg) = if m.is_multiple_of(2) { (1.0, 1.0) } else { (PI.sqrt(), 0.5) };
    let target = m as f64 / 2.0;
    while arg < target {
        value *= arg;
        arg += 1.0;
    }
    value
}

/// Quadrature nodes and weights on `S^{n-1}`. Immutable once built.
#[derive(Debug, Clone)]
pub struct SphereGrid {
    n: usize,
    resolution: usize,
    nodes: Vec<Vec4>,
    weights: Vec<f64>,
}

/// Self-description embedded in every output document.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct GridDescription {
    pub n: usize,
    pub resolution: usize,
    pub nodes: usize,
    pub rule: String,
}

impl SphereGrid {
    pub fn build(n: usize, resolution: usize) -> Result<Self> {
        if !(2..=4).contains(&n) {
            return Err(Error::UnsupportedDimension(n));
        }
        if resolution < MIN_RESOLUTION {
            return Err(Error::ResolutionTooLow { got: resolution, min: MIN_RESOLUTION });
        }
        let (nodes, weights) = match n {
            2 => circle_rule(resolution),
            3 => sphere2_rule(resolution),
            _ => sphere3_rule(resolution),
        };
        Ok(Self { n, resolution, nodes, weights })
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn resolution(&self) -> usize {
        self.resolution
    }

    pub fn nodes(&self) -> &[Vec4] {
        &self.nodes
    }

    pub fn weights(&self) -> &[f64] {
        &self.weights
    }

    pub fn len(&self) -> usize {
        self.nodes.len()
    }

    pub fn is_empty(&self) -> bool {
        self.nodes.is_empty()
    }

    /// Quadrature of `f` over the sphere.
    pub fn integrate(&self, f: impl Fn(&Vec4) -> f64) -> f64 {
        let terms: Vec<f64> = self.nodes.iter().zip(&self.weights).map(|(u, w)| w * f(u)).collect();
        pairwise_sum(&terms)
    }

    pub fn describe(&self) -> GridDescription {
        let rule = match self.n {
            2 => "uniform",
            3 => "gauss-legendre x uniform",
            _ => "gauss-chebyshev2 x gauss-legendre x uniform",
        };
        GridDescription {
            n: self.n,
            resolution: self.resolution,
            nodes: self.len(),
            rule: rule.to_string(),
        }
    }
}

fn circle_rule(count: usize) -> (Vec<Vec4>, Vec<f64>) {
    let w = 2.0 * PI / count as f64;
    (0..count)
        .map(|k| {
            let a = 2.0 * PI * k as f64 / count as f64;
            (Vec4::new(a.cos(), a.sin(), 0.0, 0.0), w)
        })
        .unzip()
}

fn sphere2_rule(res: usize) -> (Vec<Vec4>, Vec<f64>) {
    let (z, wz) = gauss_legendre(res);
    let azimuths = 2 * res;
    let dphi = 2.0 * PI / azimuths as f64;
    let mut nodes = Vec::with_capacity(res * azimuths);
    let mut weights = Vec::with_capacity(res * azimuths);
    for (zi, wi) in z.iter().zip(&wz) {
        let rho = (1.0 - zi * zi).sqrt();
        for j in 0..azimuths {
            let phi = dphi * j as f64;
            nodes.push(Vec4::new(rho * phi.cos(), rho * phi.sin(), *zi, 0.0));
            weights.push(wi * dphi);
        }
    }
    (nodes, weights)
}

fn sphere3_rule(res: usize) -> (Vec<Vec4>, Vec<f64>) {
    // u = (t, s cos θ... ) with t = cos χ; measure sin^2 χ dχ = sqrt(1 - t^2) dt.
    let (t, wt) = gauss_chebyshev_second(res);
    let (z, wz) = gauss_legendre(res);
    let azimuths = 2 * res;
    let dphi = 2.0 * PI / azimuths as f64;
    let mut nodes = Vec::with_capacity(res * res * azimuths);
    let mut weights = Vec::with_capacity(res * res * azimuths);
    for (ti, wti) in t.iter().zip(&wt) {
        let s = (1.0 - ti * ti).sqrt();
        for (zj, wzj) in z.iter().zip(&wz) {
            let rho = (1.0 - zj * zj).sqrt();
            for k in 0..azimuths {
                let phi = dphi * k as f64;
                nodes.push(Vec4::new(*ti, s * zj, s * rho * phi.cos(), s * rho * phi.sin()));
                weights.push(wti * wzj * dphi);
            }
        }
    }
    (nodes, weights)
}
