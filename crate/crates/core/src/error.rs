use thiserror::Error;

/// Errors raised by the arithmetic and curve pipelines.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("{0} is not a prime >= 5")]
    BadPrime(u64),
    #[error("zero polynomial has no factorization")]
    ZeroPolynomial,
    #[error("zero has no square class")]
    ZeroSquareClass,
    #[error("{ell} divides the numerator or denominator of the rational")]
    EllDividesRational { ell: u64 },
    #[error("modulus of degree {0} is not irreducible")]
    Reducible(usize),
    #[error("element has negative valuation {0} at the place")]
    NegativeValuation(i64),
    #[error("degenerate Weierstrass model: discriminant is zero")]
    Singular,
    #[error("curve has constant j-invariant")]
    Isotrivial,
    #[error("place has bad reduction; fiber count needs a good place")]
    BadPlace,
    #[error("unexpected valuation pattern (v(c4), v(c6), v(disc)) = ({v4:?}, {v6:?}, {vd})")]
    ValuationPattern { v4: Option<u64>, v6: Option<u64>, vd: u64 },
    #[error("sum of e_x deg x = {0} is not divisible by 12")]
    NonIntegralChi(u64),
    #[error("precondition failed: {0}")]
    Precondition(String),
    #[error("vector is isotropic")]
    Isotropic,
    #[error("matrix does not preserve the pairing")]
    NotOrthogonal,
    #[error("det(I + A) = 0")]
    ZassenhausInapplicable,
    #[error("parse error: {0}")]
    Parse(String),
    #[error("prime {p} is excluded for family {family}: {reason}")]
    ExcludedPrime { family: String, p: u64, reason: String },
    #[error("w = {w} is not in W(F_{p})")]
    NotInW { w: u64, p: u64 },
    #[error("field of order {0} exceeds the table budget")]
    FieldTooLarge(u128),
}

pub type Result<T> = std::result::Result<T, Error>;
