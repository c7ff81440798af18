//! Dense univariate polynomials over F_p.

use super::fp::PrimeField;
use std::fmt;

/// A polynomial over F_p with ascending coefficients and no trailing zeros.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct Poly {
    field: PrimeField,
    coeffs: Vec<u64>,
}

impl fmt::Debug for Poly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self)
    }
}

impl fmt::Display for Poly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return write!(f, "0");
        }
        let mut first = true;
        for (i, &c) in self.coeffs.iter().enumerate().rev() {
            if c == 0 {
                continue;
            }
            if !first {
                write!(f, " + ")?;
            }
            first = false;
            match (i, c) {
                (0, _) => write!(f, "{c}")?,
                (1, 1) => write!(f, "t")?,
                (1, _) => write!(f, "{c}t")?,
                (_, 1) => write!(f, "t^{i}")?,
                _ => write!(f, "{c}t^{i}")?,
            }
        }
        Ok(())
    }
}

impl Poly {
    pub fn new(field: PrimeField, mut coeffs: Vec<u64>) -> Self {
        let p = field.p();
        for c in coeffs.iter_mut() {
            *c %= p;
        }
        let mut out = Self { field, coeffs };
        out.trim();
        out
    }

    /// Reduces signed integer coefficients (ascending) mod p.
    pub fn from_ints(field: PrimeField, ints: &[i64]) -> Self {
        Self::new(field, ints.iter().map(|&a| field.from_i64(a)).collect())
    }

    pub fn zero(field: PrimeField) -> Self {
        Self { field, coeffs: Vec::new() }
    }

    pub fn one(field: PrimeField) -> Self {
        Self::constant(field, 1)
    }

    pub fn constant(field: PrimeField, c: u64) -> Self {
        Self::new(field, vec![c])
    }

    /// The variable `t`.
    pub fn t(field: PrimeField) -> Self {
        Self::new(field, vec![0, 1])
    }

    /// `t - a`.
    pub fn linear(field: PrimeField, a: u64) -> Self {
        Self::new(field, vec![field.neg(a % field.p()), 1])
    }

    pub fn monomial(field: PrimeField, c: u64, k: usize) -> Self {
        let mut v = vec![0; k + 1];
        v[k] = c;
        Self::new(field, v)
    }

    fn trim(&mut self) {
        while self.coeffs.last() == Some(&0) {
            self.coeffs.pop();
        }
    }

    #[inline]
    pub fn field(&self) -> PrimeField {
        self.field
    }

    #[inline]
    pub fn coeffs(&self) -> &[u64] {
        &self.coeffs
    }

    #[inline]
    pub fn coeff(&self, i: usize) -> u64 {
        self.coeffs.get(i).copied().unwrap_or(0)
    }

    #[inline]
    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    /// `None` for the zero polynomial.
    #[inline]
    pub fn degree(&self) -> Option<usize> {
        self.coeffs.len().checked_sub(1)
    }

    /// Degree with `deg 0 = 0`, for places where the distinction is irrelevant.
    #[inline]
    pub fn deg0(&self) -> usize {
        self.degree().unwrap_or(0)
    }

    pub fn leading(&self) -> u64 {
        self.coeffs.last().copied().unwrap_or(0)
    }

    pub fn is_monic(&self) -> bool {
        self.leading() == 1
    }

    pub fn is_constant(&self) -> bool {
        self.coeffs.len() <= 1
    }

    pub fn monic(&self) -> Self {
        if self.is_zero() {
            return self.clone();
        }
        let inv = self.field.inv(self.leading());
        self.scale(inv)
    }

    pub fn scale(&self, c: u64) -> Self {
        let f = self.field;
        Self::new(f, self.coeffs.iter().map(|&a| f.mul(a, c)).collect())
    }

    pub fn add(&self, other: &Self) -> Self {
        let f = self.field;
        let n = self.coeffs.len().max(other.coeffs.len());
        Self::new(f, (0..n).map(|i| f.add(self.coeff(i), other.coeff(i))).collect())
    }

    pub fn sub(&self, other: &Self) -> Self {
        let f = self.field;
        let n = self.coeffs.len().max(other.coeffs.len());
        Self::new(f, (0..n).map(|i| f.sub(self.coeff(i), other.coeff(i))).collect())
    }

    pub fn neg(&self) -> Self {
        let f = self.field;
        Self::new(f, self.coeffs.iter().map(|&a| f.neg(a)).collect())
    }

    pub fn mul(&self, other: &Self) -> Self {
        if self.is_zero() || other.is_zero() {
            return Self::zero(self.field);
        }
        let p = self.field.p();
        let mut acc = vec![0u128; self.coeffs.len() + other.coeffs.len() - 1];
        for (i, &a) in self.coeffs.iter().enumerate() {
            if a == 0 {
                continue;
            }
            for (j, &b) in other.coeffs.iter().enumerate() {
                acc[i + j] += (a * b) as u128;
            }
        }
        Self::new(self.field, acc.into_iter().map(|x| (x % p as u128) as u64).collect())
    }

    pub fn pow(&self, mut e: u64) -> Self {
        let mut base = self.clone();
        let mut r = Self::one(self.field);
        while e > 0 {
            if e & 1 == 1 {
                r = r.mul(&base);
            }
            e >>= 1;
            if e > 0 {
                base = base.mul(&base);
            }
        }
        r
    }

    /// Euclidean division; panics on a zero divisor.
    pub fn div_rem(&self, d: &Self) -> (Self, Self) {
        assert!(!d.is_zero(), "division by the zero polynomial");
        let f = self.field;
        let dd = d.coeffs.len() - 1;
        if self.coeffs.len() <= dd {
            return (Self::zero(f), self.clone());
        }
        let inv = f.inv(d.leading());
        let mut r = self.coeffs.clone();
        let mut q = vec![0u64; r.len() - dd];
        for k in (0..q.len()).rev() {
            let c = f.mul(r[k + dd], inv);
            q[k] = c;
            if c == 0 {
                continue;
            }
            for (j, &b) in d.coeffs.iter().enumerate() {
                r[k + j] = f.sub(r[k + j], f.mul(c, b));
            }
        }
        r.truncate(dd);
        (Self::new(f, q), Self::new(f, r))
    }

    pub fn rem(&self, d: &Self) -> Self {
        self.div_rem(d).1
    }

    /// Exact quotient; debug-asserts a zero remainder.
    pub fn div_exact(&self, d: &Self) -> Self {
        let (q, r) = self.div_rem(d);
        debug_assert!(r.is_zero(), "inexact division");
        q
    }

    pub fn mul_mod(&self, other: &Self, m: &Self) -> Self {
        self.mul(other).rem(m)
    }

    pub fn pow_mod(&self, mut e: u128, m: &Self) -> Self {
        let mut base = self.rem(m);
        let mut r = Self::one(self.field).rem(m);
        while e > 0 {
            if e & 1 == 1 {
                r = r.mul_mod(&base, m);
            }
            e >>= 1;
            if e > 0 {
                base = base.mul_mod(&base, m);
            }
        }
        r
    }

    /// Monic gcd (zero if both inputs are zero).
    pub fn gcd(&self, other: &Self) -> Self {
        let mut a = self.clone();
        let mut b = other.clone();
        while !b.is_zero() {
            let r = a.rem(&b);
            a = b;
            b = r;
        }
        a.monic()
    }

    pub fn derivative(&self) -> Self {
        let f = self.field;
        Self::new(
            f,
            self.coeffs.iter().enumerate().skip(1).map(|(i, &c)| f.mul(c, i as u64 % f.p())).collect(),
        )
    }

    pub fn eval(&self, x: u64) -> u64 {
        let f = self.field;
        self.coeffs.iter().rev().fold(0, |acc, &c| f.add(f.mul(acc, x), c))
    }

    /// `s^k f(1/s)` for `k >= deg f`.
    pub fn reversed(&self, k: usize) -> Self {
        assert!(self.is_zero() || self.deg0() <= k, "reversal degree too small");
        let mut v = vec![0u64; k + 1];
        for (i, &c) in self.coeffs.iter().enumerate() {
            v[k - i] = c;
        }
        Self::new(self.field, v)
    }

    /// `f(t + a)`.
    pub fn shift(&self, a: u64) -> Self {
        let lin = Self::new(self.field, vec![a, 1]);
        self.coeffs
            .iter()
            .rev()
            .fold(Self::zero(self.field), |acc, &c| acc.mul(&lin).add(&Self::constant(self.field, c)))
    }

    /// Composition `f(g)`.
    pub fn compose(&self, g: &Self) -> Self {
        self.coeffs
            .iter()
            .rev()
            .fold(Self::zero(self.field), |acc, &c| acc.mul(g).add(&Self::constant(self.field, c)))
    }

    /// Multiplicity of the irreducible `pi` in `self`; `None` for the zero polynomial.
    pub fn valuation(&self, pi: &Self) -> Option<u32> {
        if self.is_zero() {
            return None;
        }
        let mut v = 0;
        let mut cur = self.clone();
        loop {
            let (q, r) = cur.div_rem(pi);
            if !r.is_zero() {
                return Some(v);
            }
            v += 1;
            cur = q;
        }
    }

    /// Roots in F_p by exhaustive evaluation, with multiplicity ignored.
    pub fn roots_in_prime_field(&self) -> Vec<u64> {
        (0..self.field.p()).filter(|&a| self.eval(a) == 0).collect()
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn f(p: u64) -> PrimeField {
        PrimeField::new(p).unwrap()
    }

    #[test]
    fn division_identity() {
        let k = f(7);
        let a = Poly::from_ints(k, &[3, -1, 4, 1, 5]);
        let b = Poly::from_ints(k, &[2, 0, 1]);
        let (q, r) = a.div_rem(&b);
        assert_eq!(q.mul(&b).add(&r), a);
        assert!(r.deg0() < 2);
    }

    #[test]
    fn gcd_of_shared_factor() {
        let k = f(5);
        let x1 = Poly::linear(k, 1);
        let a = x1.mul(&Poly::linear(k, 2));
        let b = x1.mul(&Poly::linear(k, 3));
        assert_eq!(a.gcd(&b), x1);
    }

    #[test]
    fn reversal_and_shift() {
        let k = f(11);
        let a = Poly::from_ints(k, &[1, 2, 3]);
        assert_eq!(a.reversed(4), Poly::from_ints(k, &[0, 0, 3, 2, 1]));
        let s = a.shift(1);
        for x in 0..11 {
            assert_eq!(s.eval(x), a.eval((x + 1) % 11));
        }
    }

    #[test]
    fn valuation_counts_multiplicity() {
        let k = f(5);
        let t = Poly::t(k);
        let g = t.pow(2).mul(&Poly::linear(k, 1).pow(9));
        assert_eq!(g.valuation(&t), Some(2));
        assert_eq!(g.valuation(&Poly::linear(k, 1)), Some(9));
        assert_eq!(Poly::zero(k).valuation(&t), None);
    }
}
