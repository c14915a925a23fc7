//! Schur analysis for Fueter hyperholomorphic functions of axial type.
//!
//! Functions are carried as coefficient sequences `(F_n)` of the expansion
//! `f(x) = sum_n P_n(x) F_n` in the normalized Appell polynomials `P_n`, with
//! quaternion matrix coefficients. On top of that sit multiplier tests through
//! block Toeplitz sections, the Schur algorithm, state-space realizations,
//! Herglotz and Caratheodory multipliers, and the half-space Hardy space.

pub mod appell;
pub mod axseries;
pub mod error;
pub mod fueter;
pub mod halfspace;
pub mod herglotz;
pub mod quatlin;
pub mod realize;
pub mod schur;
pub mod toeplitz;

pub use error::{Error, Result};
pub use axseries::{AxialSeries, Ellipsoid, TailModel};
pub use quatlin::{ComplexMatrix, QuatMatrix, Quaternion};
