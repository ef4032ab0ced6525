//! Series expansions at the place at infinity: truncated Laurent/Puiseux
//! series, Newton-polygon root expansion, continued fractions, approximation
//! exponents, and minimal-polynomial reconstruction.

pub mod cf;
pub mod exponent;
pub mod newton;
pub mod reconstruct;
pub mod series;

pub use cf::{continued_fraction, CfExpansion};
pub use exponent::{bound_audit, exponent_estimate, BoundAuditReport, ExponentReport};
pub use newton::{newton_puiseux_roots, NpConfig, PuiseuxRoot, RootFlags};
pub use reconstruct::minpoly_reconstruct;
pub use series::{poly_to_series, ratfunc_to_series, LaurentSeries, PREC_EXACT};
