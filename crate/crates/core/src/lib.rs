//! Dirac operators for graded and degenerate affine Hecke algebras.

pub mod error;
pub mod field;
pub mod linalg;
pub mod rootsys;
pub mod group;
pub mod chartab;
pub mod weyl;
pub mod clifford;
pub mod spincover;
pub mod poly;
pub mod hecke;
pub mod hmod;
pub mod orbits;
pub mod setting;
pub mod dirac;

pub mod vogan;
pub mod suite;

pub use error::{Error, Result};
