//! Small dense linear algebra and quadrature helpers.
//!
//! Ambient vectors live in `R^4` with unused trailing coordinates set to zero,
//! so one fixed-size type covers every supported dimension without heap
//! allocation per node.

use arrayvec::ArrayVec;
use nalgebra::{Matrix3, Matrix4, Vector3, Vector4};

pub type Vec4 = Vector4<f64>;
pub type Mat4 = Matrix4<f64>;

/// Largest supported ambient dimension.
pub const MAX_DIM: usize = 4;

/// Per-node list of up to `MAX_DIM - 1` tangential quantities.
pub type Tangential = ArrayVec<f64, 3>;

/// Identity on the first `n` coordinates, zero elsewhere.
pub fn eye(n: usize) -> Mat4 {
    let mut m = Mat4::zeros();
    for i in 0..n {
        m[(i, i)] = 1.0;
    }
    m
}

/// Pairwise (tree) summation. The result depends only on the order of
/// `values`, never on how the terms were produced.
pub fn pairwise_sum(values: &[f64]) -> f64 {
    const BLOCK: usize = 16;
    if values.len() <= BLOCK {
        return values.iter().sum();
    }
    let mid = values.len() / 2;
    pairwise_sum(&values[..mid]) + pairwise_sum(&values[mid..])
}

/// Gauss–Legendre nodes and weights on [-1, 1], nodes ascending.
pub fn gauss_legendre(count: usize) -> (Vec<f64>, Vec<f64>) {
    let mut nodes = vec![0.0; count];
    let mut weights = vec![0.0; count];
    let m = count.div_ceil(2);
    let nf = count as f64;
    for i in 0..m {
        // Tricomi initial guess, then Newton on P_n.
        let mut z = (std::f64::consts::PI * (i as f64 + 0.75) / (nf + 0.5)).cos();
        for _ in 0..100 {
            let (p, d) = legendre_with_derivative(count, z);
            let dz = p / d;
            z -= dz;
            if dz.abs() < 1e-16 {
                break;
            }
        }
        let (_, dp) = legendre_with_derivative(count, z);
        let w = 2.0 / ((1.0 - z * z) * dp * dp);
        nodes[i] = -z;
        nodes[count - 1 - i] = z;
        weights[i] = w;
        weights[count - 1 - i] = w;
    }
    if count % 2 == 1 {
        nodes[count / 2] = 0.0;
    }
    (nodes, weights)
}

fn legendre_with_derivative(n: usize, z: f64) -> (f64, f64) {
    let mut p0 = 1.0;
    let mut p1 = z;
    if n == 0 {
        return (1.0, 0.0);
    }
    for k in 2..=n {
        let kf = k as f64;
        let p2 = ((2.0 * kf - 1.0) * z * p1 - (kf - 1.0) * p0) / kf;
        p0 = p1;
        p1 = p2;
    }
    let d = n as f64 * (z * p1 - p0) / (z * z - 1.0);
    (p1, d)
}

/// Gauss rule for the weight `sqrt(1 - t^2)` on [-1, 1] (Chebyshev, second kind).
pub fn gauss_chebyshev_second(count: usize) -> (Vec<f64>, Vec<f64>) {
    let h = std::f64::consts::PI / (count as f64 + 1.0);
    (1..=count)
        .rev()
        .map(|k| {
            let a = k as f64 * h;
            (a.cos(), h * a.sin().powi(2))
        })
        .unzip()
}

/// Orthonormal basis of the orthogonal complement of the unit vector `u`
/// inside `R^n`.
///
/// Deterministic: Gram–Schmidt over the `n - 1` coordinate axes least aligned
/// with `u` (ties broken by index).
pub fn tangent_basis(u: &Vec4, n: usize) -> ArrayVec<Vec4, 3> {
    let mut axes: ArrayVec<usize, 4> = (0..n).collect();
    axes.sort_by(|&a, &b| u[a].abs().total_cmp(&u[b].abs()).then(a.cmp(&b)));
    let mut basis: ArrayVec<Vec4, 3> = ArrayVec::new();
    for &axis in axes.iter().take(n - 1) {
        let mut e = Vec4::zeros();
        e[axis] = 1.0;
        e -= u * u.dot(&e);
        for b in &basis {
            e -= b * b.dot(&e);
        }
        basis.push(e / e.norm());
    }
    basis
}

/// Gram matrix entries `basis_i^T m basis_j`, as the leading block of a 3x3 matrix.
pub fn restrict(m: &Mat4, basis: &[Vec4]) -> Matrix3<f64> {
    let mut r = Matrix3::zeros();
    for (i, bi) in basis.iter().enumerate() {
        let mb = m * bi;
        for (j, bj) in basis.iter().enumerate().skip(i) {
            let v = bj.dot(&mb);
            r[(i, j)] = v;
            r[(j, i)] = v;
        }
    }
    r
}

/// Eigenvalues (ascending) of the leading `dim x dim` block of a symmetric
/// matrix. Closed form for `dim <= 2`, symmetric QR for `dim = 3`.
pub fn sym_eigenvalues(m: &Matrix3<f64>, dim: usize) -> Tangential {
    let mut out = Tangential::new();
    match dim {
        1 => out.push(m[(0, 0)]),
        2 => {
            let (a, b, d) = (m[(0, 0)], m[(0, 1)], m[(1, 1)]);
            let mean = 0.5 * (a + d);
            let rad = (0.25 * (a - d) * (a - d) + b * b).sqrt();
            // Product form for the smaller root avoids cancellation.
            let hi = mean + rad.copysign(mean);
            let det = a * d - b * b;
            let lo = if hi != 0.0 { det / hi } else { 0.0 };
            let (x, y) = if lo <= hi { (lo, hi) } else { (hi, lo) };
            out.push(x);
            out.push(y);
        }
        3 => {
            let ev = m.symmetric_eigenvalues();
            let mut v = [ev[0], ev[1], ev[2]];
            v.sort_by(f64::total_cmp);
            out.extend(v);
        }
        _ => unreachable!("tangent dimension {dim} out of range"),
    }
    out
}

/// `d^T G^{-1} d` for a symmetric positive definite leading block `G` of size `dim`.
pub fn inverse_quadratic_form(g: &Matrix3<f64>, d: &Vector3<f64>, dim: usize) -> Option<f64> {
    let mut padded = *g;
    for i in dim..3 {
        for j in 0..3 {
            padded[(i, j)] = if i == j { 1.0 } else { 0.0 };
            padded[(j, i)] = if i == j { 1.0 } else { 0.0 };
        }
    }
    let chol = padded.cholesky()?;
    let y = chol.solve(d);
    Some(d.dot(&y))
}

pub fn binomial(n: usize, k: usize) -> f64 {
    if k > n {
        return 0.0;
    }
    (0..k).fold(1.0, |acc, i| acc * (n - i) as f64 / (i + 1) as f64)
}

/// Elementary symmetric polynomials `sigma_0..=sigma_m` of `values`, by
/// multiplying out `prod (1 + v t)` with the largest magnitudes first.
pub fn elementary_symmetric(values: &[f64]) -> ArrayVec<f64, 4> {
    let mut sorted: ArrayVec<f64, 3> = values.iter().copied().collect();
    sorted.sort_by(|a, b| b.abs().total_cmp(&a.abs()));
    let mut coeffs: ArrayVec<f64, 4> = ArrayVec::new();
    coeffs.push(1.0);
    for &v in &sorted {
        coeffs.push(0.0);
        for k in (1..coeffs.len()).rev() {
            coeffs[k] += v * coeffs[k - 1];
        }
    }
    coeffs
}
