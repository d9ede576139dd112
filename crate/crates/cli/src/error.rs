use std::path::PathBuf;

use thiserror::Error;

#[derive(Debug, Error)]
pub enum CliError {
    #[error("{}: {source}", path.display())]
    Io {
        path: PathBuf,
        source: std::io::Error,
    },
    #[error("{0}")]
    Invalid(String),
    #[error(transparent)]
    Core(#[from] toricsg::Error),
}

impl CliError {
    pub fn invalid(msg: impl Into<String>) -> Self {
        CliError::Invalid(msg.into())
    }

    /// Stable machine-readable code.
    pub fn code(&self) -> &'static str {
        use toricsg::Error as E;
        match self {
            CliError::Io { .. } => "io",
            CliError::Invalid(_) => "invalid_input",
            CliError::Core(e) => match e {
                E::FanNotSmooth => "fan_not_smooth",
                E::InvalidFan(_) => "invalid_fan",
                E::NotAmple => "not_ample",
                E::NonPrimitiveDirection(_) => "non_primitive_direction",
                E::UnboundedPolytope | E::UnboundedRegion => "unbounded_polytope",
                E::DegeneratePolygon(_) => "degenerate_polygon",
                E::NotPointed => "cone_not_pointed",
                E::NotInInterior => "not_in_interior",
                E::DegenerateSide => "degenerate_side",
                E::EmptyTheta => "empty_theta",
                E::OutOfRange(_) => "out_of_range",
                E::ConstructionFailed(_) => "construction_failed",
            },
        }
    }

    /// Input problems exit with 2, everything else with 1.
    pub fn exit_code(&self) -> u8 {
        match self {
            CliError::Io { .. } => 1,
            CliError::Core(toricsg::Error::ConstructionFailed(_)) => 1,
            _ => 2,
        }
    }
}
