//! PT-symmetry analysis of 2×2 matrix polynomials written in the Pauli basis,
//! `P(z) = c0(z)·σ0 + c1(z)·σ1 + c2(z)·σ2 + c3(z)·σ3`.
//!
//! The level set `{s = 0, h = k}` of the real fields of
//! `g = c1² + c2² + c3²` is computed as the roots of `g(z) − k`, classified
//! point by point ([`pt`]), fitted with an axis-aligned conic ([`conic`]) and
//! traced as contours ([`contour`]).

pub mod cli;
pub mod conic;
pub mod contour;
pub mod error;
pub mod exec;
pub mod field;
pub mod output;
pub mod pauli;
pub mod poly;
pub mod pt;

pub use error::{Error, Result};
pub use exec::Execution;
