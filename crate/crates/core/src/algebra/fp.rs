//! Prime fields F_p with p >= 5. Elements are plain residues in `[0, p)`.

use crate::error::{Error, Result};
use serde::{Deserialize, Serialize};

/// Deterministic primality test for 64-bit inputs (trial division; inputs here are small).
pub fn is_prime(n: u64) -> bool {
    if n < 2 {
        return false;
    }
    if n.is_multiple_of(2) {
        return n == 2;
    }
    let mut d = 3u64;
    while d.saturating_mul(d) <= n {
        if n.is_multiple_of(d) {
            return false;
        }
        d += 2;
    }
    true
}

/// Distinct prime divisors of `n`, ascending.
pub fn prime_factors(mut n: u64) -> Vec<u64> {
    let mut out = Vec::new();
    let mut d = 2u64;
    while d.saturating_mul(d) <= n {
        if n.is_multiple_of(d) {
            out.push(d);
            while n.is_multiple_of(d) {
                n /= d;
            }
        }
        d += if d == 2 { 1 } else { 2 };
    }
    if n > 1 {
        out.push(n);
    }
    out
}

/// The field F_p.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct PrimeField {
    p: u64,
}

impl PrimeField {
    /// Accepts only primes `p >= 5` below 2^31 (products then fit in a u64).
    pub fn new(p: u64) -> Result<Self> {
        if !(5..(1 << 31)).contains(&p) || !is_prime(p) {
            return Err(Error::BadPrime(p));
        }
        Ok(Self { p })
    }

    /// Same as [`PrimeField::new`] but also allows 2 and 3, for auxiliary moduli.
    pub fn new_any(p: u64) -> Result<Self> {
        if p >= (1 << 31) || !is_prime(p) {
            return Err(Error::BadPrime(p));
        }
        Ok(Self { p })
    }

    #[inline]
    pub fn p(&self) -> u64 {
        self.p
    }

    #[inline]
    pub fn from_i64(&self, a: i64) -> u64 {
        a.rem_euclid(self.p as i64) as u64
    }

    #[inline]
    pub fn from_i128(&self, a: i128) -> u64 {
        a.rem_euclid(self.p as i128) as u64
    }

    #[inline]
    pub fn add(&self, a: u64, b: u64) -> u64 {
        let s = a + b;
        if s >= self.p {
            s - self.p
        } else {
            s
        }
    }

    #[inline]
    pub fn sub(&self, a: u64, b: u64) -> u64 {
        if a >= b {
            a - b
        } else {
            a + self.p - b
        }
    }

    #[inline]
    pub fn neg(&self, a: u64) -> u64 {
        if a == 0 {
            0
        } else {
            self.p - a
        }
    }

    #[inline]
    pub fn mul(&self, a: u64, b: u64) -> u64 {
        a * b % self.p
    }

    pub fn pow(&self, mut a: u64, mut e: u64) -> u64 {
        let mut r = 1u64;
        a %= self.p;
        while e > 0 {
            if e & 1 == 1 {
                r = self.mul(r, a);
            }
            a = self.mul(a, a);
            e >>= 1;
        }
        r
    }

    /// Inverse of a nonzero element.
    pub fn inv(&self, a: u64) -> u64 {
        debug_assert!(!a.is_multiple_of(self.p), "inverse of zero");
        self.pow(a, self.p - 2)
    }

    /// Quadratic character: +1, -1, or 0.
    pub fn legendre(&self, a: u64) -> i8 {
        let a = a % self.p;
        if a == 0 {
            return 0;
        }
        if self.pow(a, (self.p - 1) / 2) == 1 {
            1
        } else {
            -1
        }
    }

    /// Smallest generator of F_p^x.
    pub fn primitive_root(&self) -> u64 {
        let n = self.p - 1;
        let fs = prime_factors(n);
        (2..self.p)
            .find(|&g| fs.iter().all(|&r| self.pow(g, n / r) != 1))
            .expect("F_p^x is cyclic")
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn rejects_small_and_composite() {
        assert!(PrimeField::new(3).is_err());
        assert!(PrimeField::new(9).is_err());
        assert!(PrimeField::new(5).is_ok());
    }

    #[test]
    fn legendre_small_cases() {
        let f5 = PrimeField::new(5).unwrap();
        assert_eq!(f5.legendre(4), 1);
        assert_eq!(f5.legendre(2), -1);
        let f7 = PrimeField::new(7).unwrap();
        assert_eq!(f7.legendre(0), 0);
    }

    #[test]
    fn legendre_is_multiplicative() {
        for p in [5u64, 7, 11, 13, 17] {
            let f = PrimeField::new(p).unwrap();
            for a in 1..p {
                for b in 1..p {
                    assert_eq!(f.legendre(f.mul(a, b)), f.legendre(a) * f.legendre(b));
                }
            }
        }
    }

    #[test]
    fn primitive_roots() {
        assert_eq!(PrimeField::new(7).unwrap().primitive_root(), 3);
        assert_eq!(PrimeField::new(11).unwrap().primitive_root(), 2);
        assert_eq!(prime_factors(360), vec![2, 3, 5]);
    }
}
