use thiserror::Error;

/// Errors produced by the algebra, lattice and module routines.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("dimension mismatch: expected {expected}, got {got}")]
    DimensionMismatch { expected: usize, got: usize },
    #[error("invalid presentation: {0}")]
    InvalidPresentation(String),
    #[error("elements belong to different algebras")]
    AlgebraMismatch,
    #[error("incompatible scalar groups")]
    IncompatibleScalarGroups,
    #[error("zero input where a nonzero value is required")]
    ZeroInput,
    #[error("unsupported scalar group: {0}")]
    UnsupportedScalarGroup(String),
    #[error("pairing has a nontrivial radical")]
    NontrivialRadical,
    #[error("odd rank {0}")]
    OddRank(usize),
    #[error("invalid embedding: {0}")]
    InvalidEmbedding(String),
    #[error("module presentation is not cyclic")]
    NotCyclic,
    #[error("module presentation has no exact GK dimension")]
    NonExact,
    #[error("empty window")]
    EmptyWindow,
    #[error("character is not rational: {0}")]
    IrrationalCharacter(String),
    #[error("leading coefficient is not a unit")]
    NonUnitLeadingCoefficient,
    #[error("extreme coefficients are not units")]
    NonUnitExtremes,
    #[error("automorphisms differ")]
    AutomorphismMismatch,
    #[error("algebra center is larger than the base field")]
    CenterNotTrivial,
    #[error("sublattice is not isotropic")]
    NotIsotropic,
    #[error("invalid four-subgroup witness: {0}")]
    InvalidWitness(String),
    #[error("precondition failed: {0}")]
    Precondition(String),
    #[error("line {line}: {message}")]
    Parse { line: usize, message: String },
}

pub type Result<T> = std::result::Result<T, Error>;

impl Error {
    pub(crate) fn parse(line: usize, message: impl Into<String>) -> Self {
        Error::Parse { line, message: message.into() }
    }
}
