//! Exact-arithmetic workbench for arithmetic dynamics over K = F_q(t) in
//! characteristic p: orbits, heights, preimage fields, ramification,
//! non-archimedean disc combinatorics, and diophantine approximation
//! exponents, all in exact field arithmetic.

pub mod algext;
pub mod berk;
pub mod dynmap;
pub mod error;
pub mod experiment;
pub mod ffcore;
pub mod laurent;
pub mod mapexpr;

pub use error::{Error, Result};
