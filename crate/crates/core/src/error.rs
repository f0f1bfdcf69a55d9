use thiserror::Error;

/// Errors raised by the algebraic routines and the decision engine.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("zero has no square class")]
    ZeroInput,
    #[error("factorization of {value} left a cofactor above the trial-division bound {bound}")]
    FactorizationOverflow { value: String, bound: u64 },
    #[error("{0} is not a prime")]
    NotPrime(u64),
    #[error("a Pfister form needs at least one slot")]
    EmptySlots,
    #[error("the quadratic form is degenerate")]
    DegenerateForm,
    #[error("dimension mismatch: expected {expected}, got {got}")]
    DimensionMismatch { expected: usize, got: usize },
    #[error("too many doubling parameters: {0} (at most 3)")]
    TooManyParams(usize),
    #[error("the rank-one algebra Q has no splitting question")]
    RankOneAlgebra,
    #[error("subform test passed but no doubling scalar c with |c| <= {bound} was found")]
    WitnessSearchExhausted { bound: u64 },
    #[error("hermitian form has nontrivial discriminant")]
    NontrivialDiscriminant,
    #[error("hermitian forms live over different quadratic algebras ({0} vs {1})")]
    MismatchedAlgebra(i64, i64),
    #[error("x^3 + {c2}x^2 + {c1}x + {c0} is reducible (root {root}); encode l = Q x Q(sqrt e) as partial:e or Q^3 as split")]
    ReduciblePolynomial {
        c0: i64,
        c1: i64,
        c2: i64,
        root: i64,
    },
    #[error("x^3 + {c2}x^2 + {c1}x + {c0} has a repeated root")]
    SingularPolynomial { c0: i64, c1: i64, c2: i64 },
    #[error("partial split cubic needs a nontrivial square class, got {0}")]
    TrivialPartialClass(i64),
    #[error("lambda is not invertible in l")]
    NonUnitLambda,
    #[error("maps are not composable: {0}")]
    NotComposable(String),
    #[error("element set is not a subgroup of W0")]
    NotAGroup,
    #[error("precondition violated: {0}")]
    PreconditionViolated(String),
    #[error("unknown lattice {0:?}")]
    UnknownLattice(String),
    #[error("crosscheck {rule} returned {got} but the verdict is {expected}")]
    CrossCheckDisagreement {
        rule: String,
        expected: String,
        got: String,
    },
    #[error("invalid Laurent scenario: {0}")]
    InvalidScenario(String),
    #[error("parse error: {0}")]
    Parse(String),
}

pub type Result<T> = std::result::Result<T, Error>;
