use thiserror::Error;

pub type Result<T> = std::result::Result<T, Error>;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("empty generator set (the zero ideal is not supported)")]
    EmptyGeneratorSet,
    #[error("dimension mismatch: expected {expected}, found {found}")]
    DimensionMismatch { expected: usize, found: usize },
    #[error("exponent must be positive")]
    NonPositiveExponent,
    #[error("empty list of ideals")]
    EmptyList,
    #[error("ideal is not squarefree")]
    NotSquarefree,
    #[error("prime must contain at least one variable")]
    EmptyPrime,
    #[error("invalid prime decomposition: {0}")]
    InvalidDecomposition(String),

    #[error("empty input point set")]
    EmptyInput,
    #[error("system of half-spaces is infeasible")]
    InfeasibleSystem,
    #[error("missing orthant constraint x{0} >= 0")]
    MissingOrthantConstraints(usize),
    #[error("half-space normal has a negative entry; only up-set polyhedra are supported")]
    NotUpSet,
    #[error("scale factor must be positive")]
    NonPositiveScale,
    #[error("polyhedron has no vertices")]
    NoVertices,
    #[error("point is not in the polyhedron")]
    PointNotInPolyhedron,
    #[error("box bound too small in coordinate {coordinate}")]
    BoundTooSmall { coordinate: usize },
    #[error("double description exceeded the vertex limit of {limit}")]
    TooManyVertices { limit: usize },
    #[error("integer overflow in lattice enumeration")]
    Overflow,

    #[error(
        "unsupported ideal class: symbolic polyhedra are available for squarefree ideals, \
         ideals given by a linear-power decomposition, and m-primary ideals"
    )]
    UnsupportedIdealClass,
    #[error("family not proven Noetherian: no stabilization found for c <= {c_max}")]
    NotProvenNoetherian { c_max: u64 },
    #[error("no Veronese-degree candidate passed verification")]
    NoCandidate,
    #[error("invalid family: {0}")]
    InvalidFamily(String),

    #[error("cannot read input: {0}")]
    Io(String),
    #[error("parse error at line {line}, column {column}: {message}")]
    Parse {
        line: usize,
        column: usize,
        message: String,
    },
    #[error("unknown variable `{name}` at line {line}, column {column}")]
    UnknownVariable { name: String, line: usize, column: usize },
    #[error("multiplicity must be positive at line {line}, column {column}")]
    NonPositiveMultiplicity { line: usize, column: usize },
}

impl Error {
    pub fn is_parse_error(&self) -> bool {
        matches!(
            self,
            Error::Io(_) | Error::Parse { .. } | Error::UnknownVariable { .. } | Error::NonPositiveMultiplicity { .. }
        )
    }
}
