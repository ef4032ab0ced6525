//! Dynamics of rational maps over K: iteration, critical structure, orbit
//! verdicts, heights, proximity, preimage fibers, and audit harnesses.

pub mod audit;
pub mod crit;
pub mod height;
pub mod map;
pub mod orbits;
pub mod preimage;
pub mod prox;

pub use audit::{
    inverse_bound_audit, limit_theorem_audit, search_nonpostcritical_map, InverseBoundReport,
    LimitReport, OrbitRow,
};
pub use crit::{
    critical_points, ramification_index, ramification_index_algebraic, CritDatum, CritPoint,
    CriticalSet,
};
pub use height::{canonical_height, escape_bound, height_discrepancy_bound};
pub use map::{ProjPoint, RationalMap};
pub use orbits::{
    bad_reduction_places, is_wandering, postcritical_test, OrbitConfig, PostcriticalVerdict,
    WanderingVerdict,
};
pub use preimage::{
    preimage_crossratio_audit, preimage_field_data, FactorCrReport, FactorCrStatus,
    FiberCrossRatioReport, FiberData, FiberPoint,
};
pub use prox::{proximity, proximity_to_root};
