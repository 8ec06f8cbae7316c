//! Support functions of convex bodies, with analytic derivatives.

use crate::numeric::{eye, Mat4, Vec4};

/// Value, gradient and Hessian of a positively 1-homogeneous function at a point.
#[derive(Debug, Clone, Copy)]
pub struct SupportJet {
    pub value: f64,
    pub gradient: Vec4,
    pub hessian: Mat4,
}

/// Support function `h` of a convex body in `R^n`, extended 1-homogeneously
/// to `R^n \ {0}`.
pub trait SupportFunction: Send + Sync {
    fn dim(&self) -> usize;
    fn jet(&self, y: &Vec4) -> SupportJet;

    fn value(&self, y: &Vec4) -> f64 {
        self.jet(y).value
    }
}

/// `h(y) = R |y|`.
#[derive(Debug, Clone)]
pub struct BallSupport {
    pub n: usize,
    pub radius: f64,
}

impl SupportFunction for BallSupport {
    fn dim(&self) -> usize {
        self.n
    }

    fn jet(&self, y: &Vec4) -> SupportJet {
        let norm = y.norm();
        let u = y / norm;
        SupportJet {
            value: self.radius * norm,
            gradient: u * self.radius,
            hessian: (eye(self.n) - u * u.transpose()) * (self.radius / norm),
        }
    }
}

/// Centered ellipsoid with semi-axes `a_i`: `h(y) = sqrt(Σ a_i² y_i²)`.
#[derive(Debug, Clone)]
pub struct EllipsoidSupport {
    pub axes: Vec<f64>,
}

impl SupportFunction for EllipsoidSupport {
    fn dim(&self) -> usize {
        self.axes.len()
    }

    fn jet(&self, y: &Vec4) -> SupportJet {
        let mut a2 = Mat4::zeros();
        for (i, a) in self.axes.iter().enumerate() {
            a2[(i, i)] = a * a;
        }
        let value = (y.transpose() * a2 * y)[0].sqrt();
        let gradient = a2 * y / value;
        let hessian = (a2 - gradient * gradient.transpose()) / value;
        SupportJet { value, gradient, hessian }
    }
}

/// `h(y) = s [ (Σ max(<y, v_i>, 0)^p)^{1/p} + ε |y| ]`.
///
/// Convex and 1-homogeneous; `C²` for `p ≥ 3`. The `ε |y|` term is a
/// Minkowski sum with a ball, which bounds every principal radius below by
/// `s ε`.
#[derive(Debug, Clone)]
pub struct SmoothedSimplexSupport {
    pub vertices: Vec<Vec4>,
    pub n: usize,
    pub exponent: f64,
    pub rounding: f64,
    pub scale: f64,
}

impl SupportFunction for SmoothedSimplexSupport {
    fn dim(&self) -> usize {
        self.n
    }

    fn jet(&self, y: &Vec4) -> SupportJet {
        let p = self.exponent;
        let mut powsum = 0.0;
        let mut amax: f64 = 0.0;
        for v in &self.vertices {
            amax = amax.max(v.dot(y));
        }
        // Normalize by the largest activation so the powers cannot overflow.
        let mut grad_acc = Vec4::zeros();
        let mut hess_acc = Mat4::zeros();
        for v in &self.vertices {
            let a = v.dot(y);
            if a <= 0.0 {
                continue;
            }
            let r = a / amax;
            powsum += r.powf(p);
            grad_acc += v * r.powf(p - 1.0);
            hess_acc += v * v.transpose() * r.powf(p - 2.0);
        }
        // N = amax * powsum^{1/p}; with G = Σ r^{p-1} v, Σ = powsum:
        // ∇N = Σ^{1/p - 1} G
        // ∇²N = (p - 1)/amax · [Σ^{1/p-1} Σ r^{p-2} v v^T − Σ^{1/p-2} G G^T]
        let norm_part = amax * powsum.powf(1.0 / p);
        let grad_norm = grad_acc * powsum.powf(1.0 / p - 1.0);
        let hess_norm = (hess_acc * powsum.powf(1.0 / p - 1.0)
            - grad_acc * grad_acc.transpose() * powsum.powf(1.0 / p - 2.0))
            * ((p - 1.0) / amax);

        let ball = BallSupport { n: self.n, radius: self.rounding }.jet(y);
        SupportJet {
            value: self.scale * (norm_part + ball.value),
            gradient: (grad_norm + ball.gradient) * self.scale,
            hessian: (hess_norm + ball.hessian) * self.scale,
        }
    }
}

/// Unit vertex directions of a regular simplex centered at the origin of `R^n`.
pub fn regular_simplex(n: usize) -> Vec<Vec4> {
    // Project e_0..e_n ⊂ R^{n+1} onto the sum-zero hyperplane, expressed in the
    // Helmert orthonormal basis of that hyperplane.
    let m = n + 1;
    let basis: Vec<Vec<f64>> = (1..m)
        .map(|k| {
            let kf = k as f64;
            let c = 1.0 / (kf * (kf + 1.0)).sqrt();
            (0..m)
                .map(|i| match i.cmp(&k) {
                    std::cmp::Ordering::Less => c,
                    std::cmp::Ordering::Equal => -kf * c,
                    std::cmp::Ordering::Greater => 0.0,
                })
                .collect()
        })
        .collect();
    (0..m)
        .map(|i| {
            let mut v = Vec4::zeros();
            for (j, b) in basis.iter().enumerate() {
                v[j] = b[i];
            }
            v / v.norm()
        })
        .collect()
}
