//! Global quantities of a surface and the inequality checks built on them.
//!
//! All integrals are weighted sums over the same grid nodes, reduced by
//! pairwise summation so results do not depend on thread count.

use std::f64::consts::PI;
use std::fmt;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::hyperbolic::{min_principal_curvature, HyperbolicFrames, H_CONVEX_TOL};
use crate::numeric::{binomial, elementary_symmetric, pairwise_sum};
use crate::sphere_grid::unit_sphere_area;
use crate::surface::{EuclideanFrames, SurfaceSpec};

/// Relative tolerance used when deciding whether an inequality holds.
pub const TOL_REPORT: f64 = 1e-9;

/// Every integral the inequality checks need, for one surface on one grid.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct FunctionalSummary {
    pub n: usize,
    pub resolution: usize,
    /// Hyperbolic area `|Σ|`.
    pub area: f64,
    /// `ℐ = ∫ ρ dΣ`.
    #[serde(rename = "calI")]
    pub cal_i: f64,
    /// `∫ (ρ − 1) dΣ`, the cancellation-free form of `ℐ − |Σ|`.
    pub rho_minus_one_integral: f64,
    pub area_euclidean: f64,
    #[serde(rename = "Q")]
    pub q: f64,
    #[serde(rename = "P")]
    pub p: f64,
    pub rho_sq_integral: f64,
    pub p_sigma1_integral: f64,
    /// `∫ ρ H_k dΣ`, `k = 0..n−1`.
    #[serde(rename = "weighted_Hk")]
    pub weighted_hk: Vec<f64>,
    /// `∫ H_k dΣ`.
    #[serde(rename = "plain_Hk")]
    pub plain_hk: Vec<f64>,
    /// `∫ H_k / ρ dΣ`.
    #[serde(rename = "weighted_Hk_over_rho")]
    pub weighted_hk_over_rho: Vec<f64>,
    /// `∫ H_k^δ (dΣ)_δ` with Euclidean curvatures.
    #[serde(rename = "euclidean_Hk")]
    pub euclidean_hk: Vec<f64>,
    /// `∫ |x|² (dΣ)_δ`.
    pub x_sq_euclidean_integral: f64,
    /// `∫ |x|² dΣ` (hyperbolic measure).
    pub x_sq_integral: f64,
    pub min_lambda: f64,
    pub min_h1: f64,
    /// `min σ_k(κ^δ)` over nodes, `k = 0..n−1`.
    pub min_euclidean_sigma: Vec<f64>,
    pub max_identity_residual: f64,
}

fn sum_of(terms: impl Iterator<Item = f64>) -> f64 {
    let v: Vec<f64> = terms.collect();
    pairwise_sum(&v)
}

fn q_from_integrals(n: usize, omega: f64, area: f64, x_sq: f64) -> f64 {
    x_sq / (omega * (area / omega).powf((n as f64 + 1.0) / (n as f64 - 1.0)))
}

/// `𝒬` from Euclidean frames alone; the surface need not lie in the ball.
pub fn euclidean_q(euclidean: &EuclideanFrames) -> Result<f64> {
    let omega = unit_sphere_area(euclidean.n)?;
    Ok(q_from_integrals(
        euclidean.n,
        omega,
        euclidean.area(),
        euclidean.integrate(|f| f.x.norm_squared()),
    ))
}

/// Reduces matching Euclidean and hyperbolic frame sets to a summary.
pub fn summarize(euclidean: &EuclideanFrames, hyperbolic: &HyperbolicFrames) -> Result<FunctionalSummary> {
    if euclidean.len() != hyperbolic.len() {
        return Err(Error::MismatchedFrames { left: euclidean.len(), right: hyperbolic.len() });
    }
    if euclidean.n != hyperbolic.n {
        return Err(Error::WrongDimension { expected: euclidean.n, got: hyperbolic.n });
    }
    let n = euclidean.n;
    let m = n - 1;
    let omega = unit_sphere_area(n)?;
    let hf = &hyperbolic.frames;
    let ef = &euclidean.frames;

    let area = sum_of(hf.iter().map(|f| f.area_element));
    let rho_minus_one_integral = sum_of(hf.iter().map(|f| f.rho_minus_one * f.area_element));
    let rho_sq_integral = sum_of(hf.iter().map(|f| f.rho * f.rho * f.area_element));
    let p_sigma1_integral = sum_of(hf.iter().map(|f| f.p * f.sigma[1] * f.area_element));
    let x_sq_integral = sum_of(
        hf.iter().zip(ef).map(|(h, e)| e.x.norm_squared() * h.area_element),
    );

    let mut weighted_hk = Vec::with_capacity(n);
    let mut plain_hk = Vec::with_capacity(n);
    let mut weighted_hk_over_rho = Vec::with_capacity(n);
    for k in 0..=m {
        let c = binomial(m, k);
        weighted_hk.push(sum_of(hf.iter().map(|f| f.rho * f.sigma[k] / c * f.area_element)));
        plain_hk.push(sum_of(hf.iter().map(|f| f.sigma[k] / c * f.area_element)));
        weighted_hk_over_rho.push(sum_of(hf.iter().map(|f| f.sigma[k] / c / f.rho * f.area_element)));
    }
    let cal_i = weighted_hk[0];

    let area_euclidean = euclidean.area();
    let x_sq_euclidean_integral = euclidean.integrate(|f| f.x.norm_squared());
    let euclidean_sigma: Vec<_> = ef.iter().map(|f| elementary_symmetric(&f.kappa)).collect();
    let euclidean_hk = (0..=m)
        .map(|k| {
            let c = binomial(m, k);
            sum_of(euclidean_sigma.iter().zip(ef).map(|(s, f)| s[k] / c * f.area_element))
        })
        .collect();
    let min_euclidean_sigma = (0..=m)
        .map(|k| euclidean_sigma.iter().map(|s| s[k]).fold(f64::INFINITY, f64::min))
        .collect();

    let hyper_scale = omega * (area / omega).powf(n as f64 / (n as f64 - 1.0));
    let p = rho_minus_one_integral * (cal_i + area) / (hyper_scale * hyper_scale);
    let q = q_from_integrals(n, omega, area_euclidean, x_sq_euclidean_integral);
    let bounds = min_principal_curvature(hyperbolic);

    Ok(FunctionalSummary {
        n,
        resolution: euclidean.resolution,
        area,
        cal_i,
        rho_minus_one_integral,
        area_euclidean,
        q,
        p,
        rho_sq_integral,
        p_sigma1_integral,
        weighted_hk,
        plain_hk,
        weighted_hk_over_rho,
        euclidean_hk,
        x_sq_euclidean_integral,
        x_sq_integral,
        min_lambda: bounds.min_lambda,
        min_h1: bounds.min_h1,
        min_euclidean_sigma,
        max_identity_residual: hyperbolic.max_identity_residual(),
    })
}

/// `(n − 1) ℐ − ∫ p σ_1 dΣ`, zero on every closed hypersurface.
pub fn minkowski_residual(summary: &FunctionalSummary) -> f64 {
    (summary.n as f64 - 1.0) * summary.cal_i - summary.p_sigma1_integral
}

/// [`minkowski_residual`] relative to `(n − 1) ℐ`.
pub fn relative_minkowski_residual(summary: &FunctionalSummary) -> f64 {
    minkowski_residual(summary).abs() / ((summary.n as f64 - 1.0) * summary.cal_i)
}

/// A named inequality, with its curvature index where it has one.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Inequality {
    /// Euclidean `(∫H_k/ω)^{n−k} ≥ (∫H_{k−1}/ω)^{n−k−1}`.
    AfEuclidean { k: usize },
    /// `∫ρH_1 ≥ ω[(|Σ|/ω)^{(n−2)/(n−1)} + (|Σ|/ω)^{n/(n−1)}]`.
    Dlg,
    /// Weighted bound for `∫ρH_k`; proven for odd `k`, conjectured for even `k`.
    Gww { k: usize },
    /// The `k = 0` case of [`Inequality::Gww`], checked as `𝒫 ≥ 1`.
    Conjecture,
    /// `𝒫 > ((n−1)/n)²` for star-shaped surfaces with `H_1 ≥ 1`.
    Thm2,
    /// Weighted bound for even `k` with the `((n−1)/n)²` factor.
    Thm3 { k: usize },
    /// `∫H_{2j+2} ≥ |Σ|[1 + (|Σ|/ω)^{−2/(n−1)}]^{j+1}`.
    WangXia { j: usize },
    /// `∫ρH_{2j+2} − ∫H_{2j+2}/ρ ≥ ∫ρH_{2j}`.
    Crucial { j: usize },
}

impl fmt::Display for Inequality {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl Inequality {
    pub const NAMES: [&'static str; 8] =
        ["AF_euclidean", "dLG", "GWW", "conjecture", "thm2", "thm3", "wang_xia", "crucial"];

    /// Parses a name; `index` is `k` or `j` for the indexed inequalities.
    pub fn from_name(name: &str, index: Option<usize>) -> Result<Self> {
        let need = || {
            index.ok_or_else(|| Error::InvalidParameter(format!("inequality `{name}` needs an index")))
        };
        Ok(match name {
            "AF_euclidean" => Self::AfEuclidean { k: need()? },
            "dLG" => Self::Dlg,
            "GWW" => Self::Gww { k: need()? },
            "conjecture" => Self::Conjecture,
            "thm2" => Self::Thm2,
            "thm3" => Self::Thm3 { k: need()? },
            "wang_xia" => Self::WangXia { j: need()? },
            "crucial" => Self::Crucial { j: need()? },
            other => return Err(Error::UnknownInequality(other.to_string())),
        })
    }

    pub fn name(&self) -> &'static str {
        match self {
            Self::AfEuclidean { .. } => "AF_euclidean",
            Self::Dlg => "dLG",
            Self::Gww { .. } => "GWW",
            Self::Conjecture => "conjecture",
            Self::Thm2 => "thm2",
            Self::Thm3 { .. } => "thm3",
            Self::WangXia { .. } => "wang_xia",
            Self::Crucial { .. } => "crucial",
        }
    }

    pub fn index(&self) -> Option<usize> {
        match *self {
            Self::AfEuclidean { k } | Self::Gww { k } | Self::Thm3 { k } => Some(k),
            Self::WangXia { j } | Self::Crucial { j } => Some(j),
            Self::Dlg | Self::Conjecture | Self::Thm2 => None,
        }
    }

    /// Whether a numerical violation would contradict a theorem (as opposed
    /// to refuting a conjecture).
    pub fn is_proven(&self) -> bool {
        match self {
            Self::Conjecture => false,
            Self::Gww { k } => k % 2 == 1,
            _ => true,
        }
    }

    fn validate(&self, n: usize) -> Result<()> {
        let m = n - 1;
        let bad = |index| Err(Error::BadParity { name: self.name().to_string(), index, n });
        match *self {
            Self::AfEuclidean { k } if k == 0 || k > m => bad(k),
            Self::Gww { k } if k > m => bad(k),
            Self::Thm3 { k } if k % 2 == 1 || k > m => bad(k),
            Self::WangXia { j } | Self::Crucial { j } if 2 * j + 2 > m => bad(j),
            _ => Ok(()),
        }
    }
}

/// Outcome of one inequality on one surface.
///
/// `holds` is `margin > −tolerance`, with
/// `tolerance = 1e−9 · max(|lhs|, |rhs|) + quadrature error estimate`.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct InequalityReport {
    pub name: String,
    #[serde(skip_serializing_if = "Option::is_none", default)]
    pub index: Option<usize>,
    pub lhs: f64,
    pub rhs: f64,
    pub margin: f64,
    pub relative_margin: f64,
    pub holds: bool,
    /// False for conjectural statements, whose failure is a finding.
    pub proven: bool,
    pub tolerance: f64,
    /// Un-normalized sides, for inequalities checked in normalized form.
    #[serde(skip_serializing_if = "Option::is_none", default)]
    pub raw: Option<[f64; 2]>,
    pub surface: Option<SurfaceSpec>,
    pub resolution: usize,
}

impl InequalityReport {
    fn new(name: &str, index: Option<usize>, lhs: f64, rhs: f64, proven: bool, resolution: usize) -> Self {
        let mut report = Self {
            name: name.to_string(),
            index,
            lhs,
            rhs,
            margin: lhs - rhs,
            relative_margin: (lhs - rhs) / lhs.abs().max(rhs.abs()),
            holds: false,
            proven,
            tolerance: 0.0,
            raw: None,
            surface: None,
            resolution,
        };
        report.set_error_estimate(0.0);
        report
    }

    fn set_error_estimate(&mut self, error: f64) {
        self.tolerance = TOL_REPORT * self.lhs.abs().max(self.rhs.abs()) + error;
        self.holds = self.margin > -self.tolerance;
    }

    /// Widens the tolerance by the change of both sides relative to a
    /// coarser grid.
    pub fn with_refinement(mut self, coarse: &InequalityReport) -> Self {
        let error = (self.lhs - coarse.lhs).abs() + (self.rhs - coarse.rhs).abs();
        self.set_error_estimate(error);
        self
    }

    pub fn with_surface(mut self, surface: SurfaceSpec) -> Self {
        self.surface = Some(surface);
        self
    }

    /// Strictly positive margin beyond the tolerance.
    pub fn holds_strictly(&self) -> bool {
        self.margin > self.tolerance
    }
}

/// Evaluates one inequality on a summary.
pub fn check_inequality(ineq: Inequality, s: &FunctionalSummary) -> Result<InequalityReport> {
    let n = s.n;
    ineq.validate(n)?;
    let nf = n as f64;
    let m = nf - 1.0;
    let omega = unit_sphere_area(n)?;
    let ratio = s.area / omega;
    let weak = ((nf - 1.0) / nf).powi(2);
    let res = s.resolution;

    let report = match ineq {
        Inequality::AfEuclidean { k } => {
            let kf = k as f64;
            let lhs = (s.euclidean_hk[k] / omega).powf(nf - kf);
            let rhs = (s.euclidean_hk[k - 1] / omega).powf(nf - kf - 1.0);
            InequalityReport::new(ineq.name(), Some(k), lhs, rhs, true, res)
        }
        Inequality::Dlg => {
            let rhs = omega * (ratio.powf((nf - 2.0) / m) + ratio.powf(nf / m));
            InequalityReport::new(ineq.name(), None, s.weighted_hk[1], rhs, true, res)
        }
        Inequality::Gww { k } => {
            let e = (k + 1) as f64;
            let rhs = omega
                * (ratio.powf(2.0 * nf / (e * m)) + ratio.powf(2.0 * (nf - e) / (e * m))).powf(e / 2.0);
            InequalityReport::new(ineq.name(), Some(k), s.weighted_hk[k], rhs, ineq.is_proven(), res)
        }
        Inequality::Conjecture | Inequality::Thm2 => {
            let factor = if ineq == Inequality::Conjecture { 1.0 } else { weak };
            let raw_rhs = omega * (factor * ratio.powf(2.0 * nf / m) + ratio * ratio).sqrt();
            let mut r = InequalityReport::new(ineq.name(), None, s.p, factor, ineq.is_proven(), res);
            r.raw = Some([s.cal_i, raw_rhs]);
            r
        }
        Inequality::Thm3 { k } => {
            let e = (k + 1) as f64;
            let rhs = omega
                * (weak * ratio.powf(2.0 * nf / (e * m)) + ratio.powf(2.0 * (nf - e) / (e * m))).powf(e / 2.0);
            InequalityReport::new(ineq.name(), Some(k), s.weighted_hk[k], rhs, true, res)
        }
        Inequality::WangXia { j } => {
            let rhs = s.area * (1.0 + ratio.powf(-2.0 / m)).powi(j as i32 + 1);
            InequalityReport::new(ineq.name(), Some(j), s.plain_hk[2 * j + 2], rhs, true, res)
        }
        Inequality::Crucial { j } => {
            let lhs = s.weighted_hk[2 * j + 2] - s.weighted_hk_over_rho[2 * j + 2];
            InequalityReport::new(ineq.name(), Some(j), lhs, s.weighted_hk[2 * j], true, res)
        }
    };
    Ok(report)
}

/// Sharp planar constant `(2π)²/54` of the `n = 2` lower bound on `𝒬`.
pub const REMARK_N2_CONSTANT: f64 = 4.0 * PI * PI / 54.0;

/// The three readings of the `n = 2` bound:
///
/// * `remark_n2`: `𝒬 > (2π)²/54` (convex curves);
/// * `remark_n2_hyperbolic`: `ℐ > |Σ| (|Σ|²/54 + 1)^{1/2}` (curves with `κ ≥ 1`),
///   which is what `𝒫 > (2π)²/54` rearranges to;
/// * `remark_n2_literal`: the same right side against `∫|x|² dΣ`. Reported
///   for comparison only and never counted as a theorem.
pub fn check_remark_n2(s: &FunctionalSummary) -> Result<Vec<InequalityReport>> {
    if s.n != 2 {
        return Err(Error::WrongDimension { expected: 2, got: s.n });
    }
    let bound = s.area * (s.area * s.area / 54.0 + 1.0).sqrt();
    Ok(vec![
        InequalityReport::new("remark_n2", None, s.q, REMARK_N2_CONSTANT, true, s.resolution),
        InequalityReport::new("remark_n2_hyperbolic", None, s.cal_i, bound, true, s.resolution),
        InequalityReport::new("remark_n2_literal", None, s.x_sq_integral, bound, false, s.resolution),
    ])
}

/// Inequalities whose hypotheses the surface satisfies (plus the conjectural
/// ones, which are always reported).
pub fn applicable_inequalities(s: &FunctionalSummary) -> Vec<Inequality> {
    let n = s.n;
    let m = n - 1;
    let mut out = vec![Inequality::Conjecture];
    if n < 3 {
        return out;
    }
    for k in 1..=m {
        if s.min_euclidean_sigma[..=k].iter().all(|v| *v >= 0.0) {
            out.push(Inequality::AfEuclidean { k });
        }
    }
    if s.min_h1 > 0.0 {
        out.push(Inequality::Dlg);
    }
    if s.min_h1 >= 1.0 - H_CONVEX_TOL {
        out.push(Inequality::Thm2);
    }
    if s.min_lambda >= 1.0 - H_CONVEX_TOL {
        out.extend((0..=m).map(|k| Inequality::Gww { k }));
        out.extend((0..=m).step_by(2).map(|k| Inequality::Thm3 { k }));
        for j in 0..n {
            if 2 * j + 2 <= m {
                out.push(Inequality::WangXia { j });
                out.push(Inequality::Crucial { j });
            }
        }
    }
    out
}

/// Runs every applicable check on `fine`, using `coarse` (same surface, half
/// resolution) as the quadrature error estimate.
pub fn run_suite(
    fine: &FunctionalSummary,
    coarse: Option<&FunctionalSummary>,
    surface: Option<&SurfaceSpec>,
) -> Result<Vec<InequalityReport>> {
    let mut reports = Vec::new();
    let mut push = |fine_report: InequalityReport, coarse_report: Option<InequalityReport>| {
        let mut r = match coarse_report {
            Some(c) => fine_report.with_refinement(&c),
            None => fine_report,
        };
        r.surface = surface.cloned();
        reports.push(r);
    };
    for ineq in applicable_inequalities(fine) {
        let c = coarse.map(|c| check_inequality(ineq, c)).transpose()?;
        push(check_inequality(ineq, fine)?, c);
    }
    if fine.n == 2 {
        let coarse_remarks = coarse.map(check_remark_n2).transpose()?;
        for (i, r) in check_remark_n2(fine)?.into_iter().enumerate() {
            // The Euclidean form needs a convex curve, the hyperbolic one κ ≥ 1.
            let applicable = match i {
                0 => fine.min_euclidean_sigma[1] > 0.0,
                1 => fine.min_lambda >= 1.0 - H_CONVEX_TOL,
                _ => true,
            };
            if applicable {
                push(r, coarse_remarks.as_ref().map(|c| c[i].clone()));
            }
        }
    }
    Ok(reports)
}
