use thiserror::Error;

pub type Result<T, E = Error> = std::result::Result<T, E>;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("{0} is not prime")]
    NotPrime(u64),

    #[error("modulus {0} does not fit below 2^31")]
    ModulusTooLarge(u64),

    #[error("invalid parameters: {0}")]
    InvalidParams(String),

    #[error("{what} = {value} is outside [{lo}, {hi}]")]
    OutOfRange {
        what: &'static str,
        value: i64,
        lo: i64,
        hi: i64,
    },

    #[error("dimension mismatch: {0}")]
    DimensionMismatch(String),

    #[error("operands use different moduli ({0} vs {1})")]
    ModulusMismatch(u32, u32),

    #[error("matrix is not square ({rows}x{cols})")]
    NotSquare { rows: usize, cols: usize },

    #[error("matrix is singular")]
    Singular,

    #[error("{0} is not an integer")]
    IntegralityViolation(String),

    #[error("closed form is undefined for a={a}, b={b}, k={k} (requires a >= b)")]
    DegenerateFormula { a: u64, b: u64, k: u64 },

    #[error("consistency violation: {0}")]
    ConsistencyViolation(String),

    #[error("precondition violated: {0}")]
    Precondition(String),

    #[error("dimension {size} exceeds the dense size guard {guard}")]
    SizeGuard { size: usize, guard: usize },
}

pub(crate) fn check_range(what: &'static str, value: usize, lo: usize, hi: usize) -> Result<()> {
    if value < lo || value > hi {
        Err(Error::OutOfRange {
            what,
            value: value as i64,
            lo: lo as i64,
            hi: hi as i64,
        })
    } else {
        Ok(())
    }
}
