//! Linearized Reed–Muller codes from multivariate skew (Ore) polynomials over
//! finite fields, with reduced-norm machinery and the algebraic-geometry
//! embedding used to bound their distance.

#![allow(clippy::needless_range_loop)]

pub mod code;
pub mod error;
pub mod eval;
pub mod field;
pub mod lag;
pub mod lattice;
pub mod linalg;
pub mod nrd;
pub mod ore;
pub mod poly;
pub mod sample;

pub use error::{Error, Result};
