//! Numerical verification of weighted Alexandrov–Fenchel type inequalities
//! for hypersurfaces of hyperbolic space, in the Poincaré ball model.
//!
//! Pipeline: [`sphere_grid`] builds a quadrature on `S^{n−1}`; [`surface`]
//! evaluates a body on it (positions, normals, Euclidean curvatures);
//! [`hyperbolic`] lifts those frames to the ball metric; [`functionals`]
//! integrates and checks inequalities; [`flow`] follows the homothety flow;
//! [`search`] looks for horospherically convex surfaces with `𝒫 < 1`.

// Negated comparisons are used on purpose so that NaN fails validation.
#![allow(clippy::neg_cmp_op_on_partial_ord)]

pub mod cli;
pub mod error;
pub mod flow;
pub mod functionals;
pub mod hyperbolic;
pub mod numeric;
pub mod search;
pub mod sphere_grid;
pub mod surface;

pub use error::{Error, Result};
pub use functionals::{FunctionalSummary, Inequality, InequalityReport};
pub use sphere_grid::SphereGrid;
pub use surface::SurfaceSpec;
