//! Planar points, lens and lune regions, and the exact predicates built on
//! them.
//!
//! Boolean predicates (`lens_contains`, `lune_contains`, `segments_cross`,
//! orientation) are decided exactly: coordinates are lifted onto a common
//! integer lattice before comparing. Measurements (`dist`, `angle_at`) are
//! correctly rounded at the operands' precision.

mod arc;
pub(crate) mod exact;
mod point;
mod predicates;
mod region;

pub use arc::{
    arc_points, arc_points_skewed, circle_points, safe_epsilon, ArcSpan, ConstructionFrame, EpsilonBounds, LensPairs,
};
pub use exact::Lattice;
pub use point::{dist, dist_squared, Point};
pub(crate) use predicates::crosses_in;
pub use predicates::{angle_at, direction_angle, orientation, segments_cross, Orientation, Segment};
pub use region::{lens_contains, LensRegion, LuneRegion};

use thiserror::Error;

#[derive(Debug, Error, Clone, PartialEq)]
pub enum GeometryError {
    #[error("angle at a vertex is undefined when an arm coincides with the vertex")]
    DegenerateAngle,
    #[error("lens endpoints coincide")]
    DegenerateLens,
    #[error("lune requires 0 < delta < |pq|, got delta = {delta}, |pq| = {pq}")]
    InvalidLune { delta: String, pq: String },
    #[error("arc radius must satisfy 0 < delta' < delta")]
    InvalidArcRadius,
    #[error("cannot place {count} points with the required angular gap on this arc")]
    InfeasibleArc { count: usize },
    #[error("no positive safe epsilon (bound {which} is {value})")]
    InfeasibleEpsilon { which: &'static str, value: String },
    #[error("coordinate is not finite")]
    NonFinite,
    #[error("precision {0} is below the minimum of {min} bits", min = crate::MIN_PRECISION)]
    PrecisionTooLow(u32),
}
