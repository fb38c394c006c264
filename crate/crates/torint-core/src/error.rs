use thiserror::Error;

/// Errors surfaced by lattice, duality and intersection operations.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("ambient rank mismatch: {left} vs {right}")]
    AmbientMismatch { left: usize, right: usize },

    #[error("vector length {found} does not match ambient rank {expected}")]
    LengthMismatch { expected: usize, found: usize },

    #[error("operands belong to different parent groups")]
    ParentMismatch,

    #[error("torsion coordinate {index} is not a residue modulo the torsion modulus")]
    TorsionCoordinateOutOfRange { index: usize },

    #[error("denominator of torsion coordinate {index} does not divide the torsion modulus")]
    TorsionDenominator { index: usize },

    #[error("lattice is not primitive")]
    NotPrimitive,

    #[error("subgroups do not have finite intersection")]
    InfiniteMeet,

    #[error("parent group has torsion")]
    TorsionParent,

    #[error("minor size {size} exceeds a {rows}x{cols} matrix")]
    MinorSize {
        size: usize,
        rows: usize,
        cols: usize,
    },

    #[error("identity component rank {component} exceeds ambient rank {ambient}")]
    ComponentRankTooLarge { component: usize, ambient: usize },

    #[error("operation requires at least one operand")]
    EmptyInput,

    #[error("enumeration too large: {0}")]
    TooLarge(String),

    #[error("invalid input: {0}")]
    Parse(String),
}

pub type Result<T> = std::result::Result<T, Error>;
