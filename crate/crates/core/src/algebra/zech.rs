//! Table-driven F_{p^d} arithmetic in discrete-log form, for the point-counting hot loops.
//!
//! An element is the exponent `e` of a fixed generator `g` (so `g^e`), with
//! [`ZERO`] standing for 0. Multiplication adds exponents; addition uses the
//! Zech table `zech[e] = log(1 + g^e)`.

use super::factor::is_irreducible;
use super::fp::{prime_factors, PrimeField};
use super::poly::Poly;
use crate::error::{Error, Result};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

/// Log of the zero element.
pub const ZERO: u32 = u32::MAX;

/// Largest field order for which tables are built (three u32 tables of this size during construction).
pub const MAX_ORDER: u128 = 1 << 27;

const ZECH_SEED: u64 = 0x2ec4_7ab1;

#[derive(Debug)]
pub struct ZechField {
    p: u64,
    degree: usize,
    /// Order of the multiplicative group.
    n: u32,
    modulus: Poly,
    zech: Vec<u32>,
    const_log: Vec<u32>,
}

fn find_primitive_modulus(field: PrimeField, d: usize, n: u64) -> Poly {
    if d == 1 {
        return Poly::linear(field, field.primitive_root());
    }
    let fs = prime_factors(n);
    let mut rng = ChaCha8Rng::seed_from_u64(ZECH_SEED ^ (field.p() << 8) ^ d as u64);
    loop {
        let mut c: Vec<u64> = (0..d).map(|_| rng.gen_range(0..field.p())).collect();
        c.push(1);
        let m = Poly::new(field, c);
        if m.coeff(0) == 0 || !is_irreducible(&m) {
            continue;
        }
        let x = Poly::t(field);
        if fs.iter().all(|&r| x.pow_mod((n / r) as u128, &m) != Poly::one(field)) {
            return m;
        }
    }
}

impl ZechField {
    pub fn new(field: PrimeField, degree: usize) -> Result<Self> {
        assert!(degree >= 1);
        let p = field.p();
        let q = (p as u128).pow(degree as u32);
        if q > MAX_ORDER {
            return Err(Error::FieldTooLarge(q));
        }
        let q = q as u64;
        let n = q - 1;
        let modulus = find_primitive_modulus(field, degree, n);
        // Multiplication by x on base-p digit vectors: x * sum c_i x^i, reduced by the monic modulus.
        let red: Vec<u64> = (0..degree).map(|i| field.neg(modulus.coeff(i))).collect();
        let mut pw = vec![1u64; degree];
        for i in 1..degree {
            pw[i] = pw[i - 1] * p;
        }
        let mut exp = vec![0u32; n as usize];
        let mut log = vec![ZERO; q as usize];
        let mut digits = vec![0u64; degree];
        digits[0] = 1;
        for e in 0..n {
            let idx: u64 = digits.iter().zip(&pw).map(|(c, w)| c * w).sum();
            exp[e as usize] = idx as u32;
            debug_assert_eq!(log[idx as usize], ZERO, "generator is not primitive");
            log[idx as usize] = e as u32;
            let top = digits[degree - 1];
            for i in (1..degree).rev() {
                digits[i] = field.add(digits[i - 1], field.mul(top, red[i]));
            }
            digits[0] = field.mul(top, red[0]);
        }
        let zech: Vec<u32> = exp
            .iter()
            .map(|&idx| {
                let c0 = idx as u64 % p;
                let bumped = idx as u64 - c0 + (c0 + 1) % p;
                log[bumped as usize]
            })
            .collect();
        let const_log = (0..p).map(|a| log[a as usize]).collect();
        Ok(Self { p, degree, n: n as u32, modulus, zech, const_log })
    }

    #[inline]
    pub fn p(&self) -> u64 {
        self.p
    }

    #[inline]
    pub fn degree(&self) -> usize {
        self.degree
    }

    #[inline]
    pub fn order(&self) -> u64 {
        self.n as u64 + 1
    }

    /// Order of the multiplicative group.
    #[inline]
    pub fn group_order(&self) -> u32 {
        self.n
    }

    /// Minimal polynomial of the generator.
    pub fn modulus(&self) -> &Poly {
        &self.modulus
    }

    /// Log of a base-field residue.
    #[inline]
    pub fn from_base(&self, a: u64) -> u32 {
        self.const_log[(a % self.p) as usize]
    }

    #[inline]
    pub fn one(&self) -> u32 {
        0
    }

    #[inline]
    fn wrap(&self, e: u64) -> u32 {
        (e % self.n as u64) as u32
    }

    #[inline]
    pub fn mul(&self, a: u32, b: u32) -> u32 {
        if a == ZERO || b == ZERO {
            return ZERO;
        }
        let s = a as u64 + b as u64;
        if s >= self.n as u64 {
            (s - self.n as u64) as u32
        } else {
            s as u32
        }
    }

    #[inline]
    pub fn inv(&self, a: u32) -> u32 {
        debug_assert!(a != ZERO, "inverse of zero");
        if a == 0 {
            0
        } else {
            self.n - a
        }
    }

    #[inline]
    pub fn div(&self, a: u32, b: u32) -> u32 {
        self.mul(a, self.inv(b))
    }

    #[inline]
    pub fn neg(&self, a: u32) -> u32 {
        if a == ZERO {
            ZERO
        } else {
            self.mul(a, self.n / 2)
        }
    }

    #[inline]
    pub fn add(&self, a: u32, b: u32) -> u32 {
        if a == ZERO {
            return b;
        }
        if b == ZERO {
            return a;
        }
        let diff = if b >= a { b - a } else { b + self.n - a };
        let z = self.zech[diff as usize];
        if z == ZERO {
            ZERO
        } else {
            self.mul(a, z)
        }
    }

    #[inline]
    pub fn sub(&self, a: u32, b: u32) -> u32 {
        self.add(a, self.neg(b))
    }

    #[inline]
    pub fn square(&self, a: u32) -> u32 {
        self.mul(a, a)
    }

    pub fn pow(&self, a: u32, e: u64) -> u32 {
        if a == ZERO {
            return if e == 0 { 0 } else { ZERO };
        }
        self.wrap(a as u64 * (e % self.n as u64))
    }

    /// Quadratic character: the parity of the log.
    #[inline]
    pub fn chi(&self, a: u32) -> i8 {
        if a == ZERO {
            0
        } else if a.is_multiple_of(2) {
            1
        } else {
            -1
        }
    }

    /// A square root of a square, `None` for nonsquares.
    #[inline]
    pub fn sqrt(&self, a: u32) -> Option<u32> {
        if a == ZERO {
            Some(ZERO)
        } else if a.is_multiple_of(2) {
            Some(a / 2)
        } else {
            None
        }
    }

    /// Horner evaluation of a polynomial whose coefficients are given as logs (ascending).
    #[inline]
    pub fn eval_logs(&self, coeffs: &[u32], x: u32) -> u32 {
        coeffs.iter().rev().fold(ZERO, |acc, &c| self.add(self.mul(acc, x), c))
    }

    /// Logs of the coefficients of an F_p polynomial.
    pub fn poly_logs(&self, f: &Poly) -> Vec<u32> {
        f.coeffs().iter().map(|&c| self.from_base(c)).collect()
    }

    /// Frobenius `a -> a^p` on logs.
    #[inline]
    pub fn frobenius(&self, a: u32) -> u32 {
        if a == ZERO {
            ZERO
        } else {
            self.wrap(a as u64 * self.p)
        }
    }

    /// Representatives (as logs) of the elements generating exactly this field,
    /// one per Frobenius orbit, i.e. one per closed point of degree `d` on the
    /// affine line. For `d = 1` the zero element is included.
    pub fn orbit_representatives(&self) -> Vec<u32> {
        let d = self.degree;
        let n = self.n as u64;
        let mut out = Vec::new();
        if d == 1 {
            out.push(ZERO);
            out.extend(0..self.n);
            return out;
        }
        'outer: for e in 0..n {
            let mut cur = e;
            for i in 1..=d {
                cur = cur * self.p % n;
                if cur == e {
                    if i == d {
                        out.push(e as u32);
                    }
                    continue 'outer;
                }
                if cur < e {
                    continue 'outer;
                }
            }
        }
        out
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::factor::monic_irreducibles;

    #[test]
    fn arithmetic_matches_tables_f49() {
        let k = ZechField::new(PrimeField::new(7).unwrap(), 2).unwrap();
        assert_eq!(k.order(), 49);
        // (1 + 1) has the log of the base element 2.
        assert_eq!(k.add(0, 0), k.from_base(2));
        assert_eq!(k.add(k.from_base(3), k.from_base(4)), ZERO);
        assert_eq!(k.neg(0), k.from_base(6));
        for a in 0..k.group_order() {
            assert_eq!(k.mul(a, k.inv(a)), 0);
            assert_eq!(k.sub(a, a), ZERO);
        }
    }

    #[test]
    fn base_field_embedding_is_additive() {
        let f = PrimeField::new(5).unwrap();
        let k = ZechField::new(f, 3).unwrap();
        for a in 0..5 {
            for b in 0..5 {
                assert_eq!(k.add(k.from_base(a), k.from_base(b)), k.from_base((a + b) % 5));
                assert_eq!(k.mul(k.from_base(a), k.from_base(b)), k.from_base(a * b % 5));
            }
        }
    }

    #[test]
    fn orbit_counts_match_irreducible_counts() {
        for (p, d) in [(5u64, 1usize), (5, 2), (5, 3), (7, 2), (5, 4), (11, 2)] {
            let f = PrimeField::new(p).unwrap();
            let k = ZechField::new(f, d).unwrap();
            assert_eq!(k.orbit_representatives().len(), monic_irreducibles(f, d).len(), "p={p} d={d}");
        }
    }

    #[test]
    fn generator_is_root_of_modulus() {
        let k = ZechField::new(PrimeField::new(7).unwrap(), 3).unwrap();
        let logs = k.poly_logs(k.modulus());
        assert_eq!(k.eval_logs(&logs, 1), ZERO);
    }

    #[test]
    fn chi_agrees_with_base_legendre() {
        let f = PrimeField::new(11).unwrap();
        let k = ZechField::new(f, 1).unwrap();
        for a in 1..11 {
            assert_eq!(k.chi(k.from_base(a)), f.legendre(a));
        }
    }
}
