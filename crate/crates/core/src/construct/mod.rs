//! The drawing algorithms. Each subtree is confined to a lune frame whose
//! children sit on an arc around the frame's apex; see [`ConstructionFrame`].

mod cover2;
mod degree5;
mod dispatch;
mod drawing;
mod engine;
mod outdeg3;
mod outdeg4;
mod part5;

pub use cover2::{construct_two_covering, draw_two_covering, CoverStats};
pub use degree5::{construct_degree5, draw_degree5, draw_degree5_embedded, Degree5Options};
pub use dispatch::{draw_instance, starting_precision, Algorithm, PRECISION_CEILING};
pub use drawing::{Construction, Drawing, DrawingMeta, FrameRecord};
pub use outdeg3::{construct_outdeg3_partition, draw_outdeg3_partition, outdeg3_order, slot_gaps};
pub use outdeg4::{construct_outdeg4_partition, draw_outdeg4_partition};
pub use part5::{construct_deg5_partition, draw_deg5_partition, Part5Construction};

use thiserror::Error;

use crate::geometry::GeometryError;
use crate::tree::ModelError;
use crate::verify::VerifyError;

#[derive(Debug, Error, Clone, PartialEq)]
pub enum ConstructError {
    #[error(transparent)]
    Model(#[from] ModelError),
    #[error(transparent)]
    Geometry(#[from] GeometryError),
    #[error(transparent)]
    Verify(#[from] VerifyError),
    #[error("coordinates exhaust {available} bits of precision; about {required_bits} bits are needed")]
    PrecisionExhausted { available: u32, required_bits: u32 },
    #[error("maximum degree {found} exceeds {max}")]
    DegreeTooLarge { max: usize, found: usize },
    #[error("this construction needs {0}")]
    WrongInput(String),
    #[error("both `{x}` and `{y}` have neighbours on both sides of the separating line")]
    UnfoldSides { x: String, y: String },
    #[error("could not place `{0}` without a crossing or collinearity")]
    Unplaceable(String),
}

/// Names of the constructions as recorded in drawing metadata.
pub mod names {
    pub const DEGREE5: &str = "deg5";
    pub const PART5: &str = "part5";
    pub const PART4: &str = "part4";
    pub const PART3: &str = "part3";
    pub const COVER2: &str = "cover2";
}

/// Working precision for a tree of the given height whose vertices carry at
/// most `slots` children per frame.
pub fn default_precision(height: usize, slots: usize) -> u32 {
    let per_level = (usize::BITS - (slots + 4).leading_zeros()) as usize;
    (64 + 3 * height * height * per_level).max(128) as u32
}

/// Runs `attempt` at `start` bits and, on precision exhaustion, again at the
/// reported requirement, up to `ceiling` bits.
pub fn with_escalation<T>(
    start: u32,
    ceiling: u32,
    mut attempt: impl FnMut(u32) -> Result<T, ConstructError>,
) -> Result<T, ConstructError> {
    let mut prec = start;
    loop {
        match attempt(prec) {
            Err(ConstructError::PrecisionExhausted { required_bits, available }) if available < ceiling => {
                prec = required_bits.max(available + 64).min(ceiling);
            }
            other => return other,
        }
    }
}
