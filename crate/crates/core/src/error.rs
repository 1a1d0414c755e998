use thiserror::Error;

use crate::lattice::RootVector;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("ambient mismatch: expected (k={expected_k}, l={expected_l}), found (k={found_k}, l={found_l})")]
    AmbientMismatch {
        expected_k: usize,
        expected_l: usize,
        found_k: usize,
        found_l: usize,
    },

    #[error("invalid parameters: {0}")]
    InvalidParams(String),

    #[error("the zero vector has no root class")]
    ZeroVector,

    #[error("{0} is not a root")]
    NotARoot(RootVector),

    #[error("{0} is not a nonzero dot root")]
    NotADotRoot(RootVector),

    #[error("{root} is not in the dot root system of component {component}")]
    NotInComponent { root: RootVector, component: u8 },

    #[error("{0} is not a nonzero real root")]
    NotReal(RootVector),

    #[error("{0} is not a nonzero nonsingular dot root")]
    NotNonsingular(RootVector),

    #[error(
        "classification disagreement on {root}: table clause says {syntactic}, form says {metric}"
    )]
    ClassificationDisagreement {
        root: RootVector,
        syntactic: String,
        metric: String,
    },

    #[error("component {0} is empty for these parameters")]
    EmptyComponent(u8),

    #[error("no decomposition found for {0}")]
    NoDecomposition(RootVector),

    #[error("inequality system is infeasible: {0}")]
    Infeasible(String),

    #[error("functional must vanish on delta, found {0}")]
    DeltaNotZero(String),

    #[error("invalid shadow config: {0}")]
    Config(String),

    #[error("parse error: {0}")]
    Parse(String),
}

pub type Result<T> = std::result::Result<T, Error>;
