//! Computations on germs of plane holomorphic foliations that become
//! regular after one blow-up.
//!
//! The crate is organised bottom-up:
//!
//! - [`series`]: truncated power series in one and two variables, the two
//!   norms on `ℂ{t}`, rescaling, blow-up substitution and curve division.
//! - [`involution`]: local involutions `i(0)=0, i'(0)=-1`, their finite-order
//!   approximations, and conjugation by Moebius maps fixing the origin.
//! - [`conjugation_path`]: the path `u ↦ h_u⁻¹∘f∘h_u` with `h_u = t + u t^m`
//!   and its derivative at `u = 0`.
//! - [`foliation`]: 1-forms, blow-up, the T₁ jet test, tangency detection,
//!   first integrals, and the tangency involution of a germ.
//! - [`rational`]: rational maps and families, critical data, monodromy by
//!   path lifting, critical-curve classification and the quintic certificate.

pub mod conjugation_path;
pub mod error;
pub mod foliation;
pub mod involution;
pub mod json;
pub mod poly;
pub mod rational;
pub mod series;
pub mod tolerance;

pub use error::{Error, Result};
pub use num_complex::Complex64;
pub use series::{Dual, DualSeries, Series, Series1, Series2};
pub use tolerance::Tolerances;
