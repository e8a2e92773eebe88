//! Exact computations with the decategorified and categorified evaluation
//! maps from extended affine to finite type A.
//!
//! Layers, bottom up: [`scalars`], [`linalg`], [`weyl`], [`hecke`],
//! [`evalmaps`], [`cellmods`], [`zigzag`], [`projcat`], [`homotopy`],
//! [`bireps`], then the reports and named checks in [`report`] and [`suites`].

pub mod error;
pub mod scalars;
pub mod linalg;
pub mod weyl;
pub mod hecke;
pub mod evalmaps;
pub mod cellmods;
pub mod zigzag;
pub mod projcat;
pub mod twocells;
pub mod homotopy;
pub mod bireps;
pub mod report;
pub mod suites;

pub use error::{Error, Result};
