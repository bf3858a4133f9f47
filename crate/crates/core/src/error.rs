use thiserror::Error;

/// Errors raised by the simulation, synthesis and measurement routines.
#[derive(Debug, Clone, PartialEq, Error)]
pub enum Error {
    #[error("polarization vector is zero")]
    ZeroVector,
    #[error("no emitter left in the excited level: detection annihilates the register")]
    NoExcitedPopulation,
    #[error("register still holds excited-level amplitude {0:e}")]
    ResidualExcitation(f64),
    #[error("register leaks {0:e} of its norm outside the symmetric subspace")]
    AsymmetricResidue(f64),
    #[error("dimension mismatch: expected {expected}, found {found}")]
    DimensionMismatch { expected: usize, found: usize },
    #[error("polarizer configuration annihilates the state")]
    ZeroState,
    #[error("invalid ket: {0}")]
    InvalidKet(String),
    #[error("target state is zero")]
    ZeroTarget,
    #[error("root finder failed on a degree-{0} polynomial")]
    RootFindingFailure(usize),
    #[error("operation requires exactly {expected} qubits, got {found}")]
    WrongArity { expected: usize, found: usize },
    #[error("index {index} out of range for {n} qubits")]
    IndexOutOfRange { index: usize, n: usize },
    #[error("invalid detection geometry: {0}")]
    InvalidGeometry(String),
    #[error("invalid argument: {0}")]
    InvalidArgument(String),
}

pub type Result<T> = std::result::Result<T, Error>;
