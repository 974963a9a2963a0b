//! Geometry, Steklov spectrum and Morse index of higher-dimensional free
//! boundary minimal catenoids.

// `!(x > 0.0)` is used on purpose: it also rejects NaN.
#![allow(clippy::neg_cmp_op_on_partial_ord)]

pub mod asymptotics;
pub mod cli;
pub mod error;
pub mod geometry;
pub mod index;
pub mod kernels;
pub mod spectrum;
pub mod spheres;

pub use error::{Error, Result};
pub use kernels::SolverConfig;
