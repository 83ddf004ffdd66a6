use alloc::string::String;

pub type Result<T, E = Error> = core::result::Result<T, E>;

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum Error {
    #[error("{0} is not prime")]
    NotPrime(u64),
    #[error("{0} is not a prime power")]
    NotPrimePower(u64),
    #[error("guard exceeded: {what} needs {needed}, limit is {limit}")]
    GuardExceeded {
        what: &'static str,
        needed: u128,
        limit: u128,
    },
    #[error("dimension mismatch: {0}")]
    DimensionMismatch(String),
    #[error("operands live over different fields")]
    FieldMismatch,
    #[error("axiom violation: {0}")]
    AxiomViolation(String),
    #[error("incompatible descriptor: {0}")]
    Incompatible(String),
    #[error("invalid element {element} (order is {order})")]
    InvalidElement { element: u64, order: u64 },
    #[error("left ideal is not principal")]
    NotPrincipal,
    #[error("map is not well defined: {0}")]
    IllDefined(String),
    #[error("map is not injective")]
    NotInjective,
    #[error("image of the map is not the target code")]
    NotOnto,
    #[error("length mismatch: expected {expected}, got {got}")]
    LengthMismatch { expected: usize, got: usize },
    #[error("hypothesis unmet: {0}")]
    HypothesisUnmet(String),
    #[error("unsupported: {0}")]
    Unsupported(String),
    #[error("automorphism set is not closed under composition")]
    NotClosed,
    #[error("internal inconsistency: {0}")]
    Inconsistent(String),
}

impl Error {
    pub(crate) fn guard(what: &'static str, needed: u128, limit: u128) -> Self {
        Error::GuardExceeded { what, needed, limit }
    }
}
