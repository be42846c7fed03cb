//! Exact-arithmetic library for finite-difference polynomial spaces,
//! their graded bases and Hilbert functions, Weyl-permutohedron volume
//! polynomials, and geometricity certificates.

pub mod diffops;
pub mod error;
pub mod geometricity;
pub mod gradedspace;
pub mod hull;
pub mod matrix;
pub mod mpoly;
pub mod rational;
pub mod rootsys;
pub mod verify;
pub mod volumes;

pub use error::{Error, Result};
pub use matrix::QMatrix;
pub use mpoly::MPoly;
pub use rational::Rat;
