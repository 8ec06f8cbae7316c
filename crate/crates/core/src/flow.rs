//! The support function flow, realized exactly as the homothety
//! `Σ_t = e^{−t} Σ_0` of the ball.
//!
//! Both flows trace the same family of sets (they differ by a tangential
//! reparametrization), so every parametrization-invariant quantity along the
//! flow is obtained by rescaling the initial frames; no time stepping is done.

use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::functionals::summarize;
use crate::hyperbolic::lift_frame;
use crate::sphere_grid::SphereGrid;
use crate::surface::{scale_frame, EuclideanFrames, SurfaceSpec};

/// Quantities of `Σ_t` at one time.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct FlowSample {
    pub t: f64,
    pub s: f64,
    pub area: f64,
    #[serde(rename = "calI")]
    pub cal_i: f64,
    #[serde(rename = "P")]
    pub p: f64,
    pub rho_sq_integral: f64,
    pub min_lambda: f64,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct FlowTrace {
    pub n: usize,
    pub resolution: usize,
    pub samples: Vec<FlowSample>,
}

pub const CSV_HEADER: &str = "t,s,area,calI,P,rho_sq_integral,min_lambda";

impl FlowTrace {
    pub fn to_csv(&self) -> String {
        let mut out = String::from(CSV_HEADER);
        out.push('\n');
        for r in &self.samples {
            out.push_str(&format!(
                "{},{},{},{},{},{},{}\n",
                r.t, r.s, r.area, r.cal_i, r.p, r.rho_sq_integral, r.min_lambda
            ));
        }
        out
    }

    pub fn t_values(&self) -> Vec<f64> {
        self.samples.iter().map(|s| s.t).collect()
    }
}

/// `0, dt, 2 dt, …, t_max` (the last point rounded to the grid).
pub fn uniform_times(t_max: f64, dt: f64) -> Result<Vec<f64>> {
    if !(dt > 0.0 && t_max > 0.0) {
        return Err(Error::InvalidParameter("t_max and dt must be positive".into()));
    }
    let steps = (t_max / dt).round() as usize;
    Ok((0..=steps).map(|i| i as f64 * dt).collect())
}

/// Quantities of `e^{−t} Σ` for each `t`, from the frames of `Σ`.
pub fn trace_frames(base: &EuclideanFrames, t_values: &[f64]) -> Result<FlowTrace> {
    if t_values.iter().any(|t| *t < 0.0) || t_values.windows(2).any(|w| w[1] <= w[0]) {
        return Err(Error::InvalidParameter("times must be non-negative and increasing".into()));
    }
    let samples = t_values
        .par_iter()
        .map(|&t| {
            let s = (-t).exp();
            let scaled = scale_frame(base, s)?;
            let lifted = lift_frame(&scaled)?;
            let summary = summarize(&scaled, &lifted)?;
            Ok(FlowSample {
                t,
                s,
                area: summary.area,
                cal_i: summary.cal_i,
                p: summary.p,
                rho_sq_integral: summary.rho_sq_integral,
                min_lambda: summary.min_lambda,
            })
        })
        .collect::<Vec<Result<_>>>()
        .into_iter()
        .collect::<Result<Vec<_>>>()?;
    Ok(FlowTrace { n: base.n, resolution: base.resolution, samples })
}

pub fn trace_flow(surface: &SurfaceSpec, grid: &SphereGrid, t_values: &[f64]) -> Result<FlowTrace> {
    trace_frames(&surface.evaluate(grid)?, t_values)
}

/// Relative residuals of the two evolution equations at an interior time.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct EvolutionResidual {
    pub t: f64,
    /// `|D|Σ| + (n−1) ℐ| / ((n−1) ℐ)` with `D` the central difference.
    pub area: f64,
    /// `|Dℐ − (|Σ| − n ∫ρ²)| / |(|Σ| − n ∫ρ²)|`.
    pub cal_i: f64,
}

/// Central-difference check of `d|Σ|/dt = −(n−1)ℐ` and
/// `dℐ/dt = |Σ| − n ∫ρ² dΣ` at every interior time of a uniform trace.
pub fn evolution_residuals(trace: &FlowTrace) -> Result<Vec<EvolutionResidual>> {
    let s = &trace.samples;
    if s.len() < 3 {
        return Err(Error::InvalidParameter("need at least three times".into()));
    }
    let dt = s[1].t - s[0].t;
    if s.windows(2).any(|w| ((w[1].t - w[0].t) - dt).abs() > 1e-9 * dt.max(1.0)) {
        return Err(Error::NonUniformGrid);
    }
    let nf = trace.n as f64;
    Ok(s.windows(3)
        .map(|w| {
            let d_area = (w[2].area - w[0].area) / (2.0 * dt);
            let d_cal_i = (w[2].cal_i - w[0].cal_i) / (2.0 * dt);
            let area_rhs = -(nf - 1.0) * w[1].cal_i;
            let cal_i_rhs = w[1].area - nf * w[1].rho_sq_integral;
            EvolutionResidual {
                t: w[1].t,
                area: ((d_area - area_rhs) / area_rhs).abs(),
                cal_i: ((d_cal_i - cal_i_rhs) / cal_i_rhs).abs(),
            }
        })
        .collect())
}

/// `𝒫(Σ_T)` against its limit `𝒬(Σ_0)`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct LimitProbe {
    pub t: f64,
    pub p_at_t: f64,
    pub q_at_zero: f64,
    pub gap: f64,
}

pub fn limit_frames(base: &EuclideanFrames, t: f64) -> Result<LimitProbe> {
    if !(t >= 0.0) {
        return Err(Error::InvalidParameter("T must be non-negative".into()));
    }
    let q_at_zero = summarize(base, &lift_frame(base)?)?.q;
    let scaled = scale_frame(base, (-t).exp())?;
    let p_at_t = summarize(&scaled, &lift_frame(&scaled)?)?.p;
    Ok(LimitProbe { t, p_at_t, q_at_zero, gap: p_at_t - q_at_zero })
}

pub fn limit_p_to_q(surface: &SurfaceSpec, grid: &SphereGrid, t: f64) -> Result<LimitProbe> {
    limit_frames(&surface.evaluate(grid)?, t)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::sphere_grid::unit_sphere_area;
    use crate::surface::hyperbolic_to_euclidean_radius;

    #[test]
    fn sphere_trace_is_closed_form() {
        let r0: f64 = 1.2;
        let grid = SphereGrid::build(3, 8).unwrap();
        let trace = trace_flow(&SurfaceSpec::GeodesicSphere { radius: r0 }, &grid, &uniform_times(2.0, 0.25).unwrap())
            .unwrap();
        let big_r0 = hyperbolic_to_euclidean_radius(r0).unwrap();
        let omega = unit_sphere_area(3).unwrap();
        for s in &trace.samples {
            assert!((s.p - 1.0).abs() < 1e-9);
            let r = 2.0 * ((-s.t).exp() * big_r0).atanh();
            let area = omega * r.sinh().powi(2);
            assert!(((s.area - area) / area).abs() < 1e-9);
        }
    }

    #[test]
    fn csv_layout() {
        let grid = SphereGrid::build(2, 8).unwrap();
        let trace = trace_flow(&SurfaceSpec::GeodesicSphere { radius: 1.0 }, &grid, &[0.0, 0.5]).unwrap();
        let csv = trace.to_csv();
        let mut lines = csv.lines();
        assert_eq!(lines.next(), Some(CSV_HEADER));
        assert_eq!(lines.count(), 2);
    }

    #[test]
    fn rejects_bad_times() {
        let grid = SphereGrid::build(2, 8).unwrap();
        let spec = SurfaceSpec::GeodesicSphere { radius: 1.0 };
        assert!(trace_flow(&spec, &grid, &[0.5, 0.2]).is_err());
        assert!(trace_flow(&spec, &grid, &[-0.1, 0.2]).is_err());
        let trace = trace_flow(&spec, &grid, &[0.0, 0.1, 0.3]).unwrap();
        assert!(matches!(evolution_residuals(&trace), Err(Error::NonUniformGrid)));
        assert!(uniform_times(1.0, 0.0).is_err());
    }
}
