//! Exact arithmetic kernel: finite fields, polynomials over F_q, the
//! rational function field K = F_q(t), places, heights, and polynomials in z
//! over K.

pub mod embed;
pub mod factor;
pub mod field;
pub mod kpoly;
pub mod poly;
pub mod ratfunc;

pub use embed::FieldEmbedding;
pub use field::{Field, Fq};
pub use kpoly::{BiPoly, KPoly};
pub use poly::Poly;
pub use ratfunc::{Place, RatFunc};
