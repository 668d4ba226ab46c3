use thiserror::Error;

/// Errors raised by the library.
#[derive(Debug, Clone, PartialEq, Error)]
pub enum Error {
    #[error("negative T exponent {0}: Euler factors are polynomials in p^-s")]
    NegativeTExponent(i64),
    #[error("division by zero: variable `{0}` is zero and occurs with a negative exponent")]
    DivisionByZero(&'static str),
    #[error("unsupported weight {0}: expected an even integer >= 4")]
    UnsupportedWeight(i64),
    #[error("the space of level-one cusp forms of weight {0} is zero")]
    EmptySpace(u32),
    #[error("weight {0}: Hecke eigenvalues are not rational (T_2 does not split over Q)")]
    IrrationalEigenspace(u32),
    #[error("prime {p} exceeds the q-expansion precision {precision}")]
    InsufficientPrecision { p: u64, precision: usize },
    #[error("{0} is not prime")]
    NonPrime(u64),
    #[error("invalid input: {0}")]
    InvalidInput(String),
    #[error("index {index} out of range for genus {genus}")]
    IndexOutOfRange { index: usize, genus: usize },
    #[error("not a permutation of 1..={0}")]
    InvalidPermutation(usize),
    #[error("genus {genus} exceeds the cap {max}")]
    GenusTooLarge { genus: usize, max: usize },
    #[error("factor has negative multiplicities and is not a polynomial in T")]
    NotPolynomial,
    #[error("Re(s) = {re} is outside the half-plane Re(s) > {bound}")]
    OutOfConvergenceRegion { re: f64, bound: f64 },
    #[error("parse error: {0}")]
    Parse(String),
}

pub type Result<T> = std::result::Result<T, Error>;
