use thiserror::Error;

/// Errors raised anywhere in the library.
///
/// Variants are grouped loosely by the layer that raises them; the CLI maps
/// them onto exit codes through [`Error::exit_code`].
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    // arithmetic
    #[error("scalars belong to different fields ({0} vs {1})")]
    FieldMismatch(String, String),
    #[error("division by zero")]
    DivisionByZero,
    #[error("{0} is not a prime below 2^31")]
    NotPrime(u64),
    #[error("cannot parse scalar {0:?}")]
    ParseScalar(String),
    #[error("rational literal {0:?} is not allowed over a prime field")]
    RationalLiteralInPrimeField(String),

    // linear algebra
    #[error("dimension mismatch: expected {expected}, found {found}")]
    DimensionMismatch { expected: usize, found: usize },

    // Lie algebra construction
    #[error("bracket [{0}, {1}] is assigned more than once")]
    DuplicateBracket(String, String),
    #[error("self-bracket [{0}, {0}] must be zero")]
    SelfBracketNonzero(String),
    #[error("Jacobi identity fails on ({0}, {1}, {2})")]
    JacobiViolation(String, String, String),
    #[error("unknown basis label {0:?}")]
    UnknownLabel(String),
    #[error("duplicate basis label {0:?}")]
    DuplicateLabel(String),
    #[error("subspace is not a subalgebra")]
    NotASubalgebra,
    #[error("subspace is not closed under the bracket")]
    NotClosed,
    #[error("subspace is not an ideal")]
    NotAnIdeal,
    #[error("acting matrices do not commute")]
    NonCommutingAction,
    #[error("acting matrix {0} is not semisimple (minimal polynomial has a repeated factor)")]
    NonSemisimpleAction(usize),
    #[error("ad x is not nilpotent")]
    NotNilpotent,
    #[error("exp(ad x) is not defined in characteristic {0}")]
    CharacteristicObstruction(u32),
    #[error("subspace is not invariant under the acting subalgebra")]
    NotInvariant,
    #[error("Fitting components do not form a direct sum")]
    DecompositionFailure,
    #[error("algebra is not solvable")]
    NonSolvable,

    // enumeration
    #[error("enumeration is impossible over an infinite field")]
    InfiniteFieldEnumeration,
    #[error("enumeration budget exceeded: {0}")]
    BudgetExceeded(String),
    #[error("unsupported: {0}")]
    Unsupported(String),
    #[error("theorem violation: {0}")]
    TheoremViolation(String),

    // workbench
    #[error("unknown catalog entry {0:?}")]
    UnknownCatalogName(String),
    #[error("bad parameters: {0}")]
    BadParameters(String),
    #[error("line {line}: {reason}")]
    Parse { line: usize, reason: String },
    #[error("line {line}: {source}")]
    AtLine {
        line: usize,
        #[source]
        source: Box<Error>,
    },
}

impl Error {
    /// Exit code used by the command-line front end.
    pub fn exit_code(&self) -> i32 {
        match self {
            Error::AtLine { source, .. } => source.exit_code(),
            Error::TheoremViolation(_) => 1,
            Error::InfiniteFieldEnumeration
            | Error::BudgetExceeded(_)
            | Error::Unsupported(_)
            | Error::NonSolvable => 3,
            _ => 2,
        }
    }

    pub(crate) fn at_line(self, line: usize) -> Error {
        match self {
            e @ (Error::Parse { .. } | Error::AtLine { .. }) => e,
            e => Error::AtLine {
                line,
                source: Box::new(e),
            },
        }
    }
}

pub type Result<T, E = Error> = std::result::Result<T, E>;
