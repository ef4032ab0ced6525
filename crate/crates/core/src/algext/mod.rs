//! Algebraic elements over K: bivariate factorization, arithmetic in simple
//! extensions, differential/Frobenius structure tests, and cross-ratio
//! constancy.

pub mod bivariate;
pub mod crossratio;
pub mod diffeq;
pub mod elem;

pub use bivariate::factor_bivariate;
pub use crossratio::{cross_ratio_exact, cross_ratio_of_roots, ConstancyStatus, ConstancyVerdict};
pub use diffeq::{
    frobenius_test, generator_derivative, riccati_test, FrobeniusRelation, RiccatiOutcome,
};
pub use elem::{AlgElem, ExtElem};
