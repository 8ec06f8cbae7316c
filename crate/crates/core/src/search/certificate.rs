use std::path::Path;

use serde::{Deserialize, Serialize};

use super::{q_of, scaled_state};
use crate::error::{Error, Result};
use crate::sphere_grid::{GridDescription, SphereGrid};
use crate::surface::SurfaceSpec;

/// Distance from 1 that `𝒬`, `𝒫` and `min λ` must keep in a certificate.
pub const CERTIFICATE_MARGIN: f64 = 1e-3;

/// Stored values must be reproduced to this relative accuracy on re-check.
const REPRODUCTION_TOL: f64 = 1e-9;

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct RefinementCheck {
    pub resolution: usize,
    #[serde(rename = "Q")]
    pub q: f64,
    #[serde(rename = "P")]
    pub p: f64,
    pub min_lambda: f64,
}

/// A convex body `Γ` with `𝒬(Γ) < 1`, and a scale at which its homothetic
/// image is horospherically convex with `𝒫 < 1`.
///
/// The certified surface is `scaled_surface = (scale · e^{−t0}) Γ`; it is
/// derivable from `surface`, `scale` and `t0` alone.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct CounterexampleCertificate {
    pub tool_version: String,
    pub grid: GridDescription,
    pub surface: SurfaceSpec,
    #[serde(rename = "Q")]
    pub q: f64,
    /// Homothety that fits `surface` into the ball before the flow starts.
    pub scale: f64,
    pub t0: f64,
    pub scaled_surface: SurfaceSpec,
    #[serde(rename = "scaled_P")]
    pub scaled_p: f64,
    pub min_lambda_scaled: f64,
    /// First flow time at which `min λ ≥ 1`.
    pub h_convex_onset: f64,
    pub resolution: usize,
    pub refinement_check: RefinementCheck,
}

fn measure(surface: &SurfaceSpec, scaled: &SurfaceSpec, grid: &SphereGrid) -> Result<RefinementCheck> {
    let q = q_of(surface, grid)?;
    let (min_lambda, p) = scaled_state(scaled, grid)?;
    Ok(RefinementCheck { resolution: grid.resolution(), q, p, min_lambda })
}

fn margins_hold(r: &RefinementCheck) -> Result<()> {
    let m = CERTIFICATE_MARGIN;
    let checks = [
        (r.q < 1.0 - m, "Q"),
        (r.p < 1.0 - m, "scaled P"),
        (r.min_lambda >= 1.0 + m, "min lambda"),
    ];
    for (ok, what) in checks {
        if !ok {
            return Err(Error::CertificateUnstable(format!(
                "{what} misses its margin at resolution {}: Q = {}, P = {}, min lambda = {}",
                r.resolution, r.q, r.p, r.min_lambda
            )));
        }
    }
    Ok(())
}

fn close(a: f64, b: f64) -> bool {
    (a - b).abs() <= REPRODUCTION_TOL * a.abs().max(b.abs()).max(1.0)
}

impl CounterexampleCertificate {
    pub(super) fn assemble(
        grid: &SphereGrid,
        surface: SurfaceSpec,
        scale: f64,
        t0: f64,
        h_convex_onset: f64,
    ) -> Result<Self> {
        let scaled_surface = surface.scaled(scale * (-t0).exp())?;
        let base = measure(&surface, &scaled_surface, grid)?;
        let fine = SphereGrid::build(grid.n(), 2 * grid.resolution())?;
        let refinement_check = measure(&surface, &scaled_surface, &fine)?;
        Ok(Self {
            tool_version: format!("{} {}", env!("CARGO_PKG_NAME"), env!("CARGO_PKG_VERSION")),
            grid: grid.describe(),
            surface,
            q: base.q,
            scale,
            t0,
            scaled_surface,
            scaled_p: base.p,
            min_lambda_scaled: base.min_lambda,
            h_convex_onset,
            resolution: grid.resolution(),
            refinement_check,
        })
    }

    /// Recomputes every field from `surface`, `scale` and `t0` at both
    /// resolutions and checks the margins.
    pub fn reverify(&self) -> Result<()> {
        let n = self.grid.n;
        let expected = self.surface.scaled(self.scale * (-self.t0).exp())?;
        if expected != self.scaled_surface {
            return Err(Error::CertificateUnstable(
                "scaled_surface does not match surface, scale and t0".into(),
            ));
        }
        let stored = [
            RefinementCheck {
                resolution: self.resolution,
                q: self.q,
                p: self.scaled_p,
                min_lambda: self.min_lambda_scaled,
            },
            self.refinement_check.clone(),
        ];
        for s in &stored {
            let grid = SphereGrid::build(n, s.resolution)?;
            let fresh = measure(&self.surface, &self.scaled_surface, &grid)?;
            if !(close(fresh.q, s.q) && close(fresh.p, s.p) && close(fresh.min_lambda, s.min_lambda)) {
                return Err(Error::CertificateUnstable(format!(
                    "stored values not reproduced at resolution {}",
                    s.resolution
                )));
            }
            margins_hold(&fresh)?;
        }
        if self.refinement_check.resolution != 2 * self.resolution {
            return Err(Error::CertificateUnstable("refinement must use twice the resolution".into()));
        }
        Ok(())
    }

    pub fn to_json(&self) -> Result<String> {
        Ok(serde_json::to_string_pretty(self)?)
    }

    pub fn from_json(text: &str) -> Result<Self> {
        Ok(serde_json::from_str(text)?)
    }

    pub fn load(path: &Path) -> Result<Self> {
        Self::from_json(&std::fs::read_to_string(path)?)
    }
}
