use thiserror::Error;

pub type Result<T> = std::result::Result<T, Error>;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("characteristic {0} is not supported (need an odd prime)")]
    InvalidCharacteristic(u64),
    #[error("extension degree must be at least 1")]
    InvalidExtensionDegree,
    #[error("field of order {0} exceeds the supported size")]
    FieldTooLarge(u64),
    #[error("modulus is not a monic irreducible polynomial of the requested degree")]
    ReducibleModulus,
    #[error("operands live over different fields")]
    FieldMismatch,
    #[error("division by the zero polynomial")]
    DivisionByZero,
    #[error("operation undefined on the zero polynomial")]
    ZeroPolynomial,
    #[error("polynomial is not a polynomial in x^p")]
    NotPthPower,
    #[error("polynomials are not coprime")]
    NotCoprime,
    #[error("invalid field element {0:?}")]
    InvalidElement(String),
    #[error("parse error: {0}")]
    Parse(String),

    #[error("constant map: {0}")]
    ConstantMap(String),
    #[error("map is inseparable")]
    Inseparable,
    #[error("wild ramification at {point}: index {index}, wronskian valuation {valuation}")]
    WildRamification {
        point: String,
        index: u32,
        valuation: u32,
    },
    #[error("ramification audit failed: {0}")]
    AuditFailed(String),
    #[error("singular matrix")]
    SingularMatrix,
    #[error("precondition violated: {0}")]
    Precondition(String),

    #[error("invalid ramification profile: {0}")]
    InvalidProfile(String),
    #[error("index out of range: {0}")]
    IndexOutOfRange(String),
    #[error("recursion left the mid/high range at {0}")]
    RangeNotPreserved(String),
    #[error("integer overflow in exact count")]
    Overflow,

    #[error("enumeration budget exceeded: {needed} > {budget}")]
    BudgetExceeded { needed: u128, budget: u128 },
    #[error("rejection sampling exhausted: {0}")]
    SamplingExhausted(String),
    #[error("repeated point {0}")]
    RepeatedPoint(String),

    #[error("special fiber is already separable")]
    SpecialFiberSeparable,
    #[error("limit identity failed: {0}")]
    IdentityViolated(String),
    #[error("internal invariant violated: {0}")]
    Internal(String),
}

impl Error {
    /// Budget exhaustion is reported separately from invalid input by the CLI.
    pub fn is_budget(&self) -> bool {
        matches!(self, Error::BudgetExceeded { .. } | Error::FieldTooLarge(_))
    }
}
