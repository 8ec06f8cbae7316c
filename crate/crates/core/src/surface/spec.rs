//! Serializable shape descriptions and the `family:key=value,...` mini-language.

use serde::{Deserialize, Serialize};

use super::radial::{ConstantRadius, EllipsoidRadial, HarmonicRadial, RadialFunction};
use super::support::{
    regular_simplex, BallSupport, EllipsoidSupport, SmoothedSimplexSupport, SupportFunction,
};
use super::{eval_radial_graph, eval_support_body, hyperbolic_to_euclidean_radius, EuclideanFrames};
use crate::error::{Error, Result};
use crate::numeric::{Mat4, Vec4};
use crate::sphere_grid::SphereGrid;

/// A closed hypersurface in the ball model, described by its family and
/// numeric parameters. Serializes as `{"family": "...", ...}`.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(tag = "family", rename_all = "snake_case")]
pub enum SurfaceSpec {
    /// Geodesic sphere centered at the origin, of hyperbolic radius `radius`.
    GeodesicSphere { radius: f64 },
    CenteredEllipsoid { axes: Vec<f64> },
    /// Radial graph `R (1 + b·u + uᵀ A u)`; `A` must be symmetric and traceless.
    HarmonicPerturbedSphere { radius: f64, dipole: Vec<f64>, quadrupole: Vec<Vec<f64>> },
    /// Support function `s [ (Σ max(<u, v_i>, 0)^p)^{1/p} + ε ]`.
    SmoothedSimplex { vertices: Vec<Vec<f64>>, exponent: f64, rounding: f64, scale: f64 },
}

fn to_vec4(v: &[f64]) -> Vec4 {
    let mut out = Vec4::zeros();
    for (i, x) in v.iter().enumerate() {
        out[i] = *x;
    }
    out
}

/// Unit regular simplex directions in `R^n` as plain coordinate lists.
pub fn regular_simplex_vertices(n: usize) -> Vec<Vec<f64>> {
    regular_simplex(n).iter().map(|v| v.as_slice()[..n].to_vec()).collect()
}

fn invalid(msg: impl Into<String>) -> Error {
    Error::InvalidParameter(msg.into())
}

impl SurfaceSpec {
    /// Regular simplex directions with `p = 4`, `ε = 0.05`, `s = 0.3`.
    pub fn default_simplex(n: usize) -> Self {
        Self::SmoothedSimplex {
            vertices: regular_simplex_vertices(n),
            exponent: 4.0,
            rounding: 0.05,
            scale: 0.3,
        }
    }

    /// `R (1 + c (n u_n² − 1))`, the zonal quadrupole about the last axis.
    pub fn zonal_perturbation(n: usize, radius: f64, amplitude: f64) -> Self {
        let mut q = vec![vec![0.0; n]; n];
        for (i, row) in q.iter_mut().enumerate() {
            row[i] = if i == n - 1 { amplitude * (n as f64 - 1.0) } else { -amplitude };
        }
        Self::HarmonicPerturbedSphere { radius, dipole: vec![0.0; n], quadrupole: q }
    }

    pub fn family_name(&self) -> &'static str {
        match self {
            Self::GeodesicSphere { .. } => "geodesic_sphere",
            Self::CenteredEllipsoid { .. } => "centered_ellipsoid",
            Self::HarmonicPerturbedSphere { .. } => "harmonic_perturbed_sphere",
            Self::SmoothedSimplex { .. } => "smoothed_simplex",
        }
    }

    /// True for centered geodesic spheres, including degenerate ellipsoids
    /// and unperturbed harmonic spheres.
    pub fn is_centered_sphere(&self) -> bool {
        match self {
            Self::GeodesicSphere { .. } => true,
            Self::CenteredEllipsoid { axes } => axes.iter().all(|a| *a == axes[0]),
            Self::HarmonicPerturbedSphere { dipole, quadrupole, .. } => {
                dipole.iter().all(|x| *x == 0.0) && quadrupole.iter().flatten().all(|x| *x == 0.0)
            }
            Self::SmoothedSimplex { .. } => false,
        }
    }

    pub fn validate(&self, n: usize) -> Result<()> {
        if !(2..=4).contains(&n) {
            return Err(Error::UnsupportedDimension(n));
        }
        let check_len = |what: &str, len: usize| {
            if len != n {
                Err(invalid(format!("{what} has {len} entries, expected {n}")))
            } else {
                Ok(())
            }
        };
        match self {
            Self::GeodesicSphere { radius } => {
                if !(*radius > 0.0 && radius.is_finite()) {
                    return Err(invalid("geodesic sphere radius must be positive"));
                }
            }
            Self::CenteredEllipsoid { axes } => {
                check_len("axes", axes.len())?;
                if axes.iter().any(|a| !(*a > 0.0)) {
                    return Err(invalid("ellipsoid axes must be positive"));
                }
            }
            Self::HarmonicPerturbedSphere { radius, dipole, quadrupole } => {
                if !(*radius > 0.0) {
                    return Err(invalid("base radius must be positive"));
                }
                check_len("dipole", dipole.len())?;
                check_len("quadrupole", quadrupole.len())?;
                let mut trace = 0.0;
                for (i, row) in quadrupole.iter().enumerate() {
                    check_len("quadrupole row", row.len())?;
                    trace += row[i];
                    for (j, x) in row.iter().enumerate() {
                        if (x - quadrupole[j][i]).abs() > 1e-12 {
                            return Err(invalid("quadrupole must be symmetric"));
                        }
                    }
                }
                if trace.abs() > 1e-12 {
                    return Err(invalid("quadrupole must be traceless"));
                }
            }
            Self::SmoothedSimplex { vertices, exponent, rounding, scale } => {
                if vertices.len() != n + 1 {
                    return Err(invalid(format!("simplex needs {} vertices", n + 1)));
                }
                for v in vertices {
                    check_len("vertex", v.len())?;
                }
                if *exponent < 3.0 {
                    return Err(invalid("smoothing exponent must be at least 3"));
                }
                if !(*rounding > 0.0) || !(*scale > 0.0) {
                    return Err(invalid("rounding radius and scale must be positive"));
                }
                if !origin_interior(vertices, n) {
                    return Err(invalid("simplex vertices must positively span R^n"));
                }
            }
        }
        Ok(())
    }

    /// Support function, for convex families.
    pub fn support_function(&self, n: usize) -> Result<Option<Box<dyn SupportFunction>>> {
        self.validate(n)?;
        Ok(match self {
            Self::GeodesicSphere { radius } => Some(Box::new(BallSupport {
                n,
                radius: hyperbolic_to_euclidean_radius(*radius)?,
            })),
            Self::CenteredEllipsoid { axes } => Some(Box::new(EllipsoidSupport { axes: axes.clone() })),
            Self::HarmonicPerturbedSphere { .. } => None,
            Self::SmoothedSimplex { vertices, exponent, rounding, scale } => {
                Some(Box::new(SmoothedSimplexSupport {
                    vertices: vertices.iter().map(|v| to_vec4(v)).collect(),
                    n,
                    exponent: *exponent,
                    rounding: *rounding,
                    scale: *scale,
                }))
            }
        })
    }

    /// Radial function, for families with a closed-form one.
    pub fn radial_function(&self, n: usize) -> Result<Option<Box<dyn RadialFunction>>> {
        self.validate(n)?;
        Ok(match self {
            Self::GeodesicSphere { radius } => Some(Box::new(ConstantRadius {
                n,
                radius: hyperbolic_to_euclidean_radius(*radius)?,
            })),
            Self::CenteredEllipsoid { axes } => Some(Box::new(EllipsoidRadial { axes: axes.clone() })),
            Self::HarmonicPerturbedSphere { radius, dipole, quadrupole } => {
                let mut a = Mat4::zeros();
                for (i, row) in quadrupole.iter().enumerate() {
                    for (j, x) in row.iter().enumerate() {
                        a[(i, j)] = *x;
                    }
                }
                Some(Box::new(HarmonicRadial {
                    n,
                    radius: *radius,
                    dipole: to_vec4(dipole),
                    quadrupole: a,
                }))
            }
            Self::SmoothedSimplex { .. } => None,
        })
    }

    /// Euclidean frames on `grid`, through the support function when the
    /// family has one and through the radial graph otherwise.
    pub fn evaluate(&self, grid: &SphereGrid) -> Result<EuclideanFrames> {
        let n = grid.n();
        if let Some(h) = self.support_function(n)? {
            return eval_support_body(h.as_ref(), grid);
        }
        let r = self.radial_function(n)?.expect("every family has a support or radial function");
        eval_radial_graph(r.as_ref(), grid)
    }

    /// Image under the Euclidean homothety `x -> factor x`.
    pub fn scaled(&self, factor: f64) -> Result<Self> {
        if !(factor > 0.0) {
            return Err(invalid("scale factor must be positive"));
        }
        Ok(match self {
            Self::GeodesicSphere { radius } => {
                let big_r = hyperbolic_to_euclidean_radius(*radius)? * factor;
                Self::GeodesicSphere { radius: super::euclidean_to_hyperbolic_radius(big_r)? }
            }
            Self::CenteredEllipsoid { axes } => {
                Self::CenteredEllipsoid { axes: axes.iter().map(|a| a * factor).collect() }
            }
            Self::HarmonicPerturbedSphere { radius, dipole, quadrupole } => Self::HarmonicPerturbedSphere {
                radius: radius * factor,
                dipole: dipole.clone(),
                quadrupole: quadrupole.clone(),
            },
            Self::SmoothedSimplex { vertices, exponent, rounding, scale } => Self::SmoothedSimplex {
                vertices: vertices.clone(),
                exponent: *exponent,
                rounding: *rounding,
                scale: scale * factor,
            },
        })
    }

    /// Parses `family:key=value,...`. List values are separated by `/`.
    ///
    /// | family | keys |
    /// |---|---|
    /// | `geodesic-sphere`, `sphere`, `circle` | `r` (hyperbolic) or `R` (Euclidean) |
    /// | `ellipsoid` | `axes` |
    /// | `harmonic` | `R`, `dipole`, `quadrupole` (diagonal), `zonal` |
    /// | `smoothed-simplex` | `default`, `p`, `eps`, `s`, `weights` |
    pub fn parse(text: &str, n: usize) -> Result<Self> {
        let (family, rest) = text.split_once(':').unwrap_or((text, ""));
        let mut keys: Vec<(&str, &str)> = Vec::new();
        for item in rest.split(',').map(str::trim).filter(|s| !s.is_empty()) {
            match item.split_once('=') {
                Some((k, v)) => keys.push((k.trim(), v.trim())),
                None if item == "default" => {}
                None => return Err(Error::ShapeSyntax(format!("expected key=value, got `{item}`"))),
            }
        }
        let get = |key: &str| keys.iter().find(|(k, _)| *k == key).map(|(_, v)| *v);
        let num = |key: &str| -> Result<Option<f64>> {
            get(key)
                .map(|v| v.parse::<f64>().map_err(|_| Error::ShapeSyntax(format!("`{key}={v}` is not a number"))))
                .transpose()
        };
        let list = |key: &str| -> Result<Option<Vec<f64>>> {
            get(key)
                .map(|v| {
                    v.split('/')
                        .map(|x| {
                            x.trim()
                                .parse::<f64>()
                                .map_err(|_| Error::ShapeSyntax(format!("`{key}={v}` is not a number list")))
                        })
                        .collect()
                })
                .transpose()
        };
        for (k, _) in &keys {
            let known: &[&str] = match family {
                "geodesic-sphere" | "sphere" | "circle" => &["r", "R"],
                "ellipsoid" => &["axes"],
                "harmonic" => &["R", "dipole", "quadrupole", "zonal"],
                "smoothed-simplex" => &["p", "eps", "s", "weights"],
                _ => &[],
            };
            if !known.contains(k) {
                return Err(Error::ShapeSyntax(format!("unknown key `{k}` for `{family}`")));
            }
        }

        let spec = match family {
            "geodesic-sphere" | "sphere" | "circle" => {
                let radius = match (num("r")?, num("R")?) {
                    (Some(r), None) => r,
                    (None, Some(big_r)) => super::euclidean_to_hyperbolic_radius(big_r)?,
                    _ => return Err(Error::ShapeSyntax("give exactly one of r= or R=".into())),
                };
                Self::GeodesicSphere { radius }
            }
            "ellipsoid" => Self::CenteredEllipsoid {
                axes: list("axes")?.ok_or_else(|| Error::ShapeSyntax("ellipsoid needs axes=".into()))?,
            },
            "harmonic" => {
                let radius = num("R")?.ok_or_else(|| Error::ShapeSyntax("harmonic needs R=".into()))?;
                let dipole = list("dipole")?.unwrap_or_else(|| vec![0.0; n]);
                let mut quadrupole = vec![vec![0.0; n]; n];
                if let Some(diag) = list("quadrupole")? {
                    if diag.len() != n {
                        return Err(invalid(format!("quadrupole has {} entries, expected {n}", diag.len())));
                    }
                    for (i, d) in diag.iter().enumerate() {
                        quadrupole[i][i] += d;
                    }
                }
                if let Some(c) = num("zonal")? {
                    if let Self::HarmonicPerturbedSphere { quadrupole: z, .. } = Self::zonal_perturbation(n, radius, c)
                    {
                        for i in 0..n {
                            quadrupole[i][i] += z[i][i];
                        }
                    }
                }
                Self::HarmonicPerturbedSphere { radius, dipole, quadrupole }
            }
            "smoothed-simplex" => {
                let Self::SmoothedSimplex { mut vertices, exponent, rounding, scale } = Self::default_simplex(n)
                else {
                    unreachable!()
                };
                if let Some(w) = list("weights")? {
                    if w.len() != vertices.len() {
                        return Err(invalid(format!("weights needs {} entries", vertices.len())));
                    }
                    for (v, wi) in vertices.iter_mut().zip(&w) {
                        v.iter_mut().for_each(|x| *x *= wi);
                    }
                }
                Self::SmoothedSimplex {
                    vertices,
                    exponent: num("p")?.unwrap_or(exponent),
                    rounding: num("eps")?.unwrap_or(rounding),
                    scale: num("s")?.unwrap_or(scale),
                }
            }
            other => return Err(Error::ShapeSyntax(format!("unknown family `{other}`"))),
        };
        spec.validate(n)?;
        Ok(spec)
    }
}

/// Origin strictly inside the convex hull of `n + 1` vertices in `R^n`.
fn origin_interior(vertices: &[Vec<f64>], n: usize) -> bool {
    // Solve Σ_{i<n} c_i v_i = -v_n and require c > 0.
    let mut m = nalgebra::DMatrix::<f64>::zeros(n, n);
    let mut rhs = nalgebra::DVector::<f64>::zeros(n);
    for (j, v) in vertices.iter().take(n).enumerate() {
        for i in 0..n {
            m[(i, j)] = v[i];
        }
    }
    for i in 0..n {
        rhs[i] = -vertices[n][i];
    }
    match m.lu().solve(&rhs) {
        Some(c) => c.iter().all(|x| *x > 1e-12),
        None => false,
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn parses_mini_language() {
        let s = SurfaceSpec::parse("geodesic-sphere:r=1.0", 3).unwrap();
        assert_eq!(s, SurfaceSpec::GeodesicSphere { radius: 1.0 });
        let c = SurfaceSpec::parse("circle:R=0.5", 2).unwrap();
        let SurfaceSpec::GeodesicSphere { radius } = c else { panic!() };
        assert!((radius - 2.0 * 0.5f64.atanh()).abs() < 1e-15);
        let e = SurfaceSpec::parse("ellipsoid:axes=0.3/0.2/0.25", 3).unwrap();
        assert_eq!(e, SurfaceSpec::CenteredEllipsoid { axes: vec![0.3, 0.2, 0.25] });
        let h = SurfaceSpec::parse("harmonic:R=0.3,zonal=0.05", 3).unwrap();
        assert_eq!(h, SurfaceSpec::zonal_perturbation(3, 0.3, 0.05));
        let d = SurfaceSpec::parse("smoothed-simplex:default", 3).unwrap();
        assert_eq!(d, SurfaceSpec::default_simplex(3));
        let w = SurfaceSpec::parse("smoothed-simplex:p=6,eps=0.1,weights=1/2/1/1", 3).unwrap();
        let SurfaceSpec::SmoothedSimplex { exponent, rounding, vertices, .. } = w else { panic!() };
        assert_eq!((exponent, rounding), (6.0, 0.1));
        assert!((vertices[1].iter().map(|x| x * x).sum::<f64>().sqrt() - 2.0).abs() < 1e-14);
    }

    #[test]
    fn rejects_bad_shapes() {
        assert!(SurfaceSpec::parse("torus:R=1", 3).is_err());
        assert!(SurfaceSpec::parse("sphere:r=1,R=0.4", 3).is_err());
        assert!(SurfaceSpec::parse("sphere:x=1", 3).is_err());
        assert!(SurfaceSpec::parse("ellipsoid:axes=0.3/0.2", 3).is_err());
        assert!(SurfaceSpec::parse("ellipsoid:axes=0.3/-0.2/0.1", 3).is_err());
        assert!(SurfaceSpec::parse("harmonic:R=0.3,quadrupole=0.1/0/0", 3).is_err());
        assert!(SurfaceSpec::parse("smoothed-simplex:p=2", 3).is_err());
        let lopsided = SurfaceSpec::SmoothedSimplex {
            vertices: vec![vec![1.0, 0.0], vec![0.0, 1.0], vec![1.0, 1.0]],
            exponent: 4.0,
            rounding: 0.1,
            scale: 0.2,
        };
        assert!(lopsided.validate(2).is_err());
    }

    #[test]
    fn json_shape_format() {
        let s = SurfaceSpec::CenteredEllipsoid { axes: vec![0.3, 0.2, 0.25] };
        let text = serde_json::to_string(&s).unwrap();
        assert_eq!(text, r#"{"family":"centered_ellipsoid","axes":[0.3,0.2,0.25]}"#);
        let back: SurfaceSpec = serde_json::from_str(&text).unwrap();
        assert_eq!(back, s);
    }
}
