use thiserror::Error;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum Error {
    #[error("division by the zero polynomial")]
    DivisionByZero,
    #[error("polynomial order undefined: {0}")]
    OrderUndefined(&'static str),
    #[error("degree {0} exceeds the supported maximum of {1}")]
    DegreeTooLarge(usize, usize),
    #[error("polynomial is not irreducible")]
    NotIrreducible,
    #[error("field context is not primitive")]
    NotPrimitive,
    #[error("exponent {0} is congruent to 0: root 1 is degenerate")]
    DegenerateExponent(i64),
    #[error("cannot parse polynomial `{0}`")]
    Parse(String),
    #[error("generator polynomial does not divide X^{0} - 1")]
    NotDivisorOfCyclic(usize),
    #[error("generator polynomial has repeated factors")]
    RepeatedFactors,
    #[error("code length must be odd, got {0}")]
    EvenLength(usize),
    #[error("long-code condition 2^ceil(m/2) > 2e-1 violated for e={e}, m={m}")]
    LongCodeCondition { e: usize, m: usize },
    #[error("Melas code needs m >= 3 so that M1 differs from its reciprocal (m={0})")]
    MelasDegenerate(usize),
    #[error("invalid argument: {0}")]
    InvalidArgument(String),
    #[error("initial condition is all-zero")]
    ZeroInitialCondition,
    #[error("matrix is not of full row rank")]
    RankDeficient,
    #[error("work budget exceeded: {0}")]
    BudgetExceeded(String),
    #[error("factor root exponents are unresolved")]
    UnresolvedFactors,
    #[error("threshold below radius: no window of width < {b_prime} found after {iterations} steps")]
    ThresholdBelowRadius { b_prime: usize, iterations: usize },
    #[error("hypothesis not met: {0}")]
    Inapplicable(String),
}

pub type Result<T> = std::result::Result<T, Error>;
