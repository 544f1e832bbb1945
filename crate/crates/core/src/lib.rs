//! Exact spectral data of affine Hecke algebras.
//!
//! The [`exactalg`] module provides the exact function type every other
//! module computes with; [`rootdata`] and [`spectral`] describe the algebra
//! and its Plancherel density; [`langlands`], [`degrees`] and [`stm`] build
//! the comparisons on top.

pub mod conventions;
pub mod degrees;
pub mod exactalg;
pub mod langlands;
pub mod lattice;
pub mod rootdata;
pub mod spectral;
pub mod stm;

pub use exactalg::{FactoredFunction, RatioClass, TorusPoint, Unit, Q};
pub use rootdata::{HeckeParams, RootDatum};
pub use spectral::{HeckeSpec, ResidualCoset};
