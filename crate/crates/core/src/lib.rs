//! Polynomials on the unit circle under repeated differentiation, the
//! principal branch of `zeta - t tan(zeta) = theta`, the free unitary
//! Poisson law, truncated-series transforms, and a desk-scale experiment
//! harness tying them together.

pub mod eigen;
pub mod error;
pub mod experiments;
pub mod fixed;
pub mod poisson;
pub mod poly;
pub mod quad;
pub mod roots;
pub mod series;
pub mod trig;
pub mod util;
pub mod zeta;

pub use error::{Error, Result};
pub use poly::{apply_d, ffm_conv, laguerre, poly_from_angles, EmpiricalAngles, UnitPoly};
pub use roots::{laguerre_roots, roots_on_circle};
pub use zeta::{branch_data, r_func, r_taylor, v_func, y_axis, y_tilde_axis, zeta, BranchData, ZetaValue};
