use thiserror::Error;

pub type Result<T> = std::result::Result<T, Error>;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("domain error: {0}")]
    Domain(String),
    #[error("{0} is inert in Z[i]")]
    InertPrime(String),
    #[error("2 is ramified in Z[i]")]
    Ramified,
    #[error("{0} is not a sum of two squares")]
    NoRepresentation(String),
    #[error("division by zero in a finite field")]
    DivisionByZero,
    #[error("curve is singular over the given field")]
    SingularCurve,
    #[error("curve has bad reduction at {0}")]
    BadReduction(String),
    #[error("trace structure violated: {0}")]
    StructureViolation(String),
    #[error("reductions at conjugate primes above {q} disagree: {left} vs {right}")]
    ConjugacyViolation { q: String, left: i64, right: i64 },
    #[error("gcd(A, B) = {0} is not 1")]
    NotPrimitive(String),
    #[error("no model available for {0}")]
    ModelUnavailable(String),
    #[error("newform identification failed: {0}")]
    Identification(String),
    #[error("two-squares eigenvalue law violated at q = {0}")]
    LawViolation(String),
    #[error("malformed data: {0}")]
    Parse(String),
    #[error("io error: {0}")]
    Io(String),
}

impl From<std::io::Error> for Error {
    fn from(e: std::io::Error) -> Self {
        Error::Io(e.to_string())
    }
}

pub(crate) fn domain(msg: impl Into<String>) -> Error {
    Error::Domain(msg.into())
}
