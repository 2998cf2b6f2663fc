use thiserror::Error;

use crate::construct::ConstructError;
use crate::geometry::GeometryError;
use crate::io::FormatError;
use crate::proximity::ProximityError;
use crate::tree::ModelError;
use crate::verify::VerifyError;

pub type Result<T, E = Error> = std::result::Result<T, E>;

/// Umbrella error for callers that drive several modules at once.
#[derive(Debug, Error)]
pub enum Error {
    #[error(transparent)]
    Geometry(#[from] GeometryError),
    #[error(transparent)]
    Model(#[from] ModelError),
    #[error(transparent)]
    Construct(#[from] ConstructError),
    #[error(transparent)]
    Verify(#[from] VerifyError),
    #[error(transparent)]
    Proximity(#[from] ProximityError),
    #[error(transparent)]
    Format(#[from] FormatError),
}
