//! The two-element group F^x / (F^x)^2.

use super::ext::ExtField;
use super::fp::PrimeField;
use super::poly::Poly;
use crate::error::{Error, Result};
use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{Signed, ToPrimitive, Zero};
use serde::{Deserialize, Serialize};
use std::ops::Mul;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum SquareClass {
    Trivial,
    Nontrivial,
}

impl SquareClass {
    pub fn from_sign(s: i8) -> Self {
        if s > 0 {
            Self::Trivial
        } else {
            Self::Nontrivial
        }
    }

    pub fn sign(self) -> i8 {
        match self {
            Self::Trivial => 1,
            Self::Nontrivial => -1,
        }
    }

    pub fn is_trivial(self) -> bool {
        self == Self::Trivial
    }
}

impl Mul for SquareClass {
    type Output = Self;
    fn mul(self, rhs: Self) -> Self {
        Self::from_sign(self.sign() * rhs.sign())
    }
}

/// Class of a nonzero element of F_p.
pub fn square_class(field: PrimeField, a: u64) -> Result<SquareClass> {
    match field.legendre(a) {
        0 => Err(Error::ZeroSquareClass),
        s => Ok(SquareClass::from_sign(s)),
    }
}

/// Class of a nonzero element of an extension field.
pub fn square_class_ext(field: &ExtField, a: &Poly) -> Result<SquareClass> {
    match field.legendre(a) {
        0 => Err(Error::ZeroSquareClass),
        s => Ok(SquareClass::from_sign(s)),
    }
}

/// Residue of an integer mod `ell`.
pub fn bigint_mod(a: &BigInt, ell: u64) -> u64 {
    a.mod_floor(&BigInt::from(ell)).to_u64().expect("residue fits")
}

/// Class of `num/den` reduced mod `ell`. Both must be prime to `ell`.
pub fn square_class_of_rational(num: &BigInt, den: &BigInt, ell: u64) -> Result<SquareClass> {
    let field = PrimeField::new_any(ell)?;
    if ell == 2 {
        return Err(Error::BadPrime(ell));
    }
    if num.is_zero() {
        return Err(Error::ZeroSquareClass);
    }
    let n = bigint_mod(num, ell);
    let d = bigint_mod(den, ell);
    if n == 0 || d == 0 {
        return Err(Error::EllDividesRational { ell });
    }
    // num/den and num*den differ by the square den^2.
    square_class(field, field.mul(n, d))
}

/// Removes the largest even power of `ell` from `a`, returning the remaining
/// `ell`-adic valuation (0 or 1) and the cofactor prime to `ell`.
pub fn strip_even_power(a: &BigInt, ell: u64) -> (u32, BigInt) {
    let e = BigInt::from(ell);
    let mut v = 0u32;
    let mut x = a.abs();
    let sign = if a.is_negative() { -1 } else { 1 };
    while !x.is_zero() && (&x % &e).is_zero() {
        x /= &e;
        v += 1;
    }
    (v, x * sign)
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    #[test]
    fn examples() {
        let f11 = PrimeField::new(11).unwrap();
        assert_eq!(square_class(f11, 9).unwrap(), SquareClass::Trivial);
        let one = BigInt::from(1);
        assert_eq!(square_class_of_rational(&BigInt::from(50), &one, 7).unwrap(), SquareClass::Trivial);
        assert_eq!(square_class_of_rational(&BigInt::from(2), &one, 5).unwrap(), SquareClass::Nontrivial);
        assert_eq!(square_class(f11, 0), Err(Error::ZeroSquareClass));
        assert_eq!(
            square_class_of_rational(&BigInt::from(14), &one, 7),
            Err(Error::EllDividesRational { ell: 7 })
        );
    }

    #[test]
    fn multiplicative() {
        use SquareClass::*;
        assert_eq!(Nontrivial * Nontrivial, Trivial);
        assert_eq!(Trivial * Nontrivial, Nontrivial);
    }

    proptest! {
        #[test]
        fn invariant_under_rational_squares(
            rn in 1i64..10_000, rd in 1i64..10_000, sn in 1i64..1000, sd in 1i64..1000, neg in any::<bool>(),
            li in 0usize..5,
        ) {
            let ell = [5u64, 7, 11, 13, 17][li];
            let l = ell as i64;
            prop_assume!(rn % l != 0 && rd % l != 0 && sn % l != 0 && sd % l != 0);
            let sgn = if neg { -1 } else { 1 };
            let r = square_class_of_rational(&BigInt::from(sgn * rn), &BigInt::from(rd), ell).unwrap();
            let num = BigInt::from(sgn * rn) * BigInt::from(sn) * BigInt::from(sn);
            let den = BigInt::from(rd) * BigInt::from(sd) * BigInt::from(sd);
            prop_assert_eq!(square_class_of_rational(&num, &den, ell).unwrap(), r);
        }
    }
}
