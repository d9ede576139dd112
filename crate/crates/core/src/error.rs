use thiserror::Error;

use crate::lattice::NVec;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("halfplane intersection is unbounded")]
    UnboundedRegion,
    #[error("polytope of the divisor is unbounded")]
    UnboundedPolytope,
    #[error("polygon has dimension {0}, expected 2")]
    DegeneratePolygon(i8),
    #[error("fan is invalid: {0}")]
    InvalidFan(String),
    #[error("fan not smooth")]
    FanNotSmooth,
    #[error("divisor is not ample")]
    NotAmple,
    #[error("direction ({}, {}) is not primitive", .0.x, .0.y)]
    NonPrimitiveDirection(NVec),
    #[error("cone is not pointed")]
    NotPointed,
    #[error("vector is not in the interior of the cone")]
    NotInInterior,
    #[error("maximal segment sits at an extreme level; one side is empty")]
    DegenerateSide,
    #[error("theta polygon is empty")]
    EmptyTheta,
    #[error("parameter out of range: {0}")]
    OutOfRange(String),
    #[error("bad divisor construction failed: {0}")]
    ConstructionFailed(String),
}

pub type Result<T> = std::result::Result<T, Error>;
