use thiserror::Error;

pub type Result<T, E = Error> = std::result::Result<T, E>;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("{residue} is not a unit modulo {modulus}")]
    NotAUnit { residue: i64, modulus: u64 },

    #[error("order {0} is degenerate: at least 2 is required")]
    DegenerateOrder(u64),

    #[error("{p} is not a proper divisor of {n}")]
    NotADivisor { p: u64, n: u64 },

    #[error("{what} {value} exceeds the configured limit {limit}")]
    LimitExceeded {
        what: &'static str,
        value: u64,
        limit: u64,
    },

    #[error("{0} is not squarefree")]
    NotSquarefree(i64),

    #[error("{0} does not define a quadratic field")]
    DegenerateInput(i64),

    #[error("kronecker symbol (0|0) is undefined")]
    BothZero,

    #[error("cyclotomic orders differ: {left} vs {right}")]
    OrderMismatch { left: u64, right: u64 },

    #[error("{value} is out of range for order {n}")]
    OutOfRange { value: i64, n: u64 },

    #[error("invalid connection set: {0}")]
    InvalidSet(String),

    #[error("2^{r} integral sets exceed the enumeration budget {budget}; pass a limit")]
    TooManyOrbits { r: u64, budget: u64 },

    #[error("integer overflow in exact cyclotomic arithmetic")]
    ArithmeticOverflow,

    #[error("no floating-point lattice test for field {0}")]
    UnsupportedLattice(String),

    #[error("bad field spec `{spec}`: {reason}")]
    FieldSpec { spec: String, reason: String },
}

impl Error {
    /// True for errors caused by a configured resource bound rather than bad input.
    pub fn is_resource_limit(&self) -> bool {
        matches!(
            self,
            Error::LimitExceeded { .. } | Error::TooManyOrbits { .. } | Error::ArithmeticOverflow
        )
    }
}
