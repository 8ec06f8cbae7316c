//! Radial functions of star-shaped bodies.

use crate::numeric::{Mat4, Vec4};

/// Value, gradient and Hessian of some smooth extension of a radial function
/// to a neighbourhood of the unit sphere. Only the tangential parts are used.
#[derive(Debug, Clone, Copy)]
pub struct RadialJet {
    pub value: f64,
    pub gradient: Vec4,
    pub hessian: Mat4,
}

/// Euclidean radial function `r_e: S^{n-1} -> (0, 1)` of a star-shaped surface
/// `{ r_e(u) u }`.
pub trait RadialFunction: Send + Sync {
    fn dim(&self) -> usize;
    fn jet(&self, u: &Vec4) -> RadialJet;
}

#[derive(Debug, Clone)]
pub struct ConstantRadius {
    pub n: usize,
    pub radius: f64,
}

impl RadialFunction for ConstantRadius {
    fn dim(&self) -> usize {
        self.n
    }

    fn jet(&self, _u: &Vec4) -> RadialJet {
        RadialJet { value: self.radius, gradient: Vec4::zeros(), hessian: Mat4::zeros() }
    }
}

/// Radial function of the centered ellipsoid, `(Σ y_i² / a_i²)^{-1/2}`.
#[derive(Debug, Clone)]
pub struct EllipsoidRadial {
    pub axes: Vec<f64>,
}

impl RadialFunction for EllipsoidRadial {
    fn dim(&self) -> usize {
        self.axes.len()
    }

    fn jet(&self, u: &Vec4) -> RadialJet {
        let mut q = Vec4::zeros();
        for (i, a) in self.axes.iter().enumerate() {
            q[i] = u[i] / (a * a);
        }
        let s = u.dot(&q);
        let value = s.powf(-0.5);
        let gradient = -q * s.powf(-1.5);
        let mut hessian = q * q.transpose() * (3.0 * s.powf(-2.5));
        for (i, a) in self.axes.iter().enumerate() {
            hessian[(i, i)] -= s.powf(-1.5) / (a * a);
        }
        RadialJet { value, gradient, hessian }
    }
}

/// `r_e(u) = R (1 + b·u + uᵀ A u)` with a dipole `b` and a traceless
/// symmetric quadrupole `A` (degree-1 and degree-2 spherical harmonics).
#[derive(Debug, Clone)]
pub struct HarmonicRadial {
    pub n: usize,
    pub radius: f64,
    pub dipole: Vec4,
    pub quadrupole: Mat4,
}

impl RadialFunction for HarmonicRadial {
    fn dim(&self) -> usize {
        self.n
    }

    fn jet(&self, u: &Vec4) -> RadialJet {
        let au = self.quadrupole * u;
        RadialJet {
            value: self.radius * (1.0 + self.dipole.dot(u) + u.dot(&au)),
            gradient: (self.dipole + au * 2.0) * self.radius,
            hessian: self.quadrupole * (2.0 * self.radius),
        }
    }
}
