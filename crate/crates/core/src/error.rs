use num_bigint::BigInt;
use thiserror::Error;

/// Errors for contract violations across the crate.
///
/// Variants are deliberately fine-grained so that callers (and the CLI)
/// can name the exact precondition that failed.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("{0} is not prime")]
    NotPrime(BigInt),
    #[error("{0} is not an odd prime")]
    NotOddPrime(BigInt),
    #[error("valuation of zero is undefined")]
    ZeroValuation,
    #[error("argument must exceed 1")]
    BelowRange,
    #[error("modulus divides the argument")]
    SharedModulus,

    #[error("zero element")]
    ZeroElement,
    #[error("gcd of (0, 0) is undefined")]
    ZeroGcd,
    #[error("element norm is divisible by 3")]
    RamifiedElement,
    #[error("zero denominator")]
    ZeroDenominator,
    #[error("unit denominator")]
    UnitDenominator,
    #[error("denominator norm is divisible by 3")]
    RamifiedDenominator,
    #[error("denominator norm {0} exceeds the factorization cap {1}")]
    FactorizationCap(BigInt, BigInt),

    #[error("form is not primitive")]
    NotPrimitive,
    #[error("form is not positive definite")]
    NotPositiveDefinite,
    #[error("discriminant must be negative")]
    NonNegativeDiscriminant,
    #[error("discriminants differ")]
    DiscriminantMismatch,
    #[error("residue marker requires 3 to divide the discriminant")]
    MarkerUndefined,
    #[error("no equivalent form with leading coefficient coprime to {0} within search bound {1}")]
    CoprimeSearchExhausted(BigInt, u32),

    #[error("form does not take the stated value at (x, y)")]
    EvaluationMismatch,
    #[error("3 divides the symbol denominator {0}")]
    DenominatorDivisibleBy3(BigInt),
    #[error("p is not congruent to 1 mod 3")]
    NotOneMod3,
    #[error("p shares a factor with 3*D*N(u)")]
    SharedFactor,
    #[error("D is not a quadratic residue mod p")]
    NotQuadraticResidue,
    #[error("class does not represent {0}")]
    NotRepresented(BigInt),
    #[error("no representation of {0} satisfies the coprimality condition")]
    NoAdmissibleRepresentation(BigInt),
    #[error("witness search exhausted for class {0}")]
    WitnessSearchExhausted(String),

    #[error("invalid element: {0}")]
    InvalidElement(String),
    #[error("consistency violation: {0}")]
    Contradiction(String),
    #[error("parse error: {0}")]
    Parse(String),
}

pub type Result<T> = std::result::Result<T, Error>;
