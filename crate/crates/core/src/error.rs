use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("modulus {0} is out of range (need 3 <= n <= {max})", max = crate::modring::Modulus::MAX)]
    InvalidModulus(u64),
    #[error("gcd(0, 0) is undefined")]
    GcdOfZeros,
    #[error("{m} is not a unit modulo {n}")]
    NotAUnit { m: u64, n: u64 },
    #[error("sequence must have between 1 and {max} terms, got {len}", max = crate::zseq::MAX_LEN)]
    BadLength { len: usize },
    #[error("coefficient {x} is zero modulo {n}")]
    ZeroCoefficient { x: i64, n: u64 },
    #[error("sequence does not sum to zero modulo {n}")]
    NotZeroSum { n: u64 },
    #[error("sequence is not a minimal zero-sum sequence")]
    NotMinimal,
    #[error("operation needs a sequence of length 4, got {len}")]
    NotLengthFour { len: usize },
    #[error("invalid normal form (n={n}, a={a}, b={b}, c={c}): {reason}")]
    InvalidNormalForm {
        n: u64,
        a: u64,
        b: u64,
        c: u64,
        reason: &'static str,
    },
    #[error("not applicable: {0}")]
    NotApplicable(&'static str),
    #[error("construction produced multiplier {m}, which does not certify the sequence")]
    ConstructionFailed { m: u64 },
    #[error("{m} does not certify the sequence: weight {weight} != {n}")]
    NotACertificate { m: u64, weight: u64, n: u64 },
    #[error("invalid subgroup reduction: {0}")]
    InvalidReduction(&'static str),
}

pub type Result<T> = std::result::Result<T, Error>;
