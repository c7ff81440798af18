//! Finite fields F_{p^d} = F_p[t]/(modulus); elements are reduced [`Poly`] values.

use super::factor::{is_irreducible, random_irreducible};
use super::fp::PrimeField;
use super::poly::Poly;
use crate::error::{Error, Result};

const EXT_SEED: u64 = 0xe47_f1e1d;

/// An extension field of F_p with an explicit irreducible modulus.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ExtField {
    base: PrimeField,
    modulus: Poly,
}

impl ExtField {
    /// Wraps a monic irreducible modulus.
    pub fn new(modulus: Poly) -> Result<Self> {
        if !is_irreducible(&modulus) {
            return Err(Error::Reducible(modulus.deg0()));
        }
        Ok(Self { base: modulus.field(), modulus: modulus.monic() })
    }

    /// A degree-`d` extension with a modulus chosen deterministically.
    pub fn build(base: PrimeField, d: usize) -> Self {
        let seed = EXT_SEED ^ (base.p() << 8) ^ d as u64;
        Self { base, modulus: random_irreducible(base, d, seed) }
    }

    pub fn base(&self) -> PrimeField {
        self.base
    }

    pub fn modulus(&self) -> &Poly {
        &self.modulus
    }

    pub fn degree(&self) -> usize {
        self.modulus.deg0()
    }

    pub fn order(&self) -> u128 {
        (self.base.p() as u128).pow(self.degree() as u32)
    }

    pub fn zero(&self) -> Poly {
        Poly::zero(self.base)
    }

    pub fn one(&self) -> Poly {
        Poly::one(self.base)
    }

    /// Image of the polynomial variable, i.e. a root of the modulus.
    pub fn generator(&self) -> Poly {
        Poly::t(self.base).rem(&self.modulus)
    }

    pub fn from_base(&self, c: u64) -> Poly {
        Poly::constant(self.base, c)
    }

    pub fn reduce(&self, a: &Poly) -> Poly {
        a.rem(&self.modulus)
    }

    pub fn add(&self, a: &Poly, b: &Poly) -> Poly {
        a.add(b)
    }

    pub fn sub(&self, a: &Poly, b: &Poly) -> Poly {
        a.sub(b)
    }

    pub fn neg(&self, a: &Poly) -> Poly {
        a.neg()
    }

    pub fn mul(&self, a: &Poly, b: &Poly) -> Poly {
        a.mul_mod(b, &self.modulus)
    }

    pub fn pow(&self, a: &Poly, e: u128) -> Poly {
        a.pow_mod(e, &self.modulus)
    }

    /// Inverse by the extended Euclidean algorithm; `None` for zero.
    pub fn inv(&self, a: &Poly) -> Option<Poly> {
        let a = self.reduce(a);
        if a.is_zero() {
            return None;
        }
        let (mut r0, mut r1) = (self.modulus.clone(), a);
        let (mut s0, mut s1) = (Poly::zero(self.base), Poly::one(self.base));
        while !r1.is_zero() {
            let (q, r) = r0.div_rem(&r1);
            let s = s0.sub(&q.mul(&s1));
            r0 = std::mem::replace(&mut r1, r);
            s0 = std::mem::replace(&mut s1, s);
        }
        // r0 is a nonzero constant.
        let c = self.base.inv(r0.coeff(0));
        Some(self.reduce(&s0.scale(c)))
    }

    pub fn div(&self, a: &Poly, b: &Poly) -> Option<Poly> {
        self.inv(b).map(|bi| self.mul(a, &bi))
    }

    pub fn frobenius(&self, a: &Poly) -> Poly {
        self.pow(a, self.base.p() as u128)
    }

    /// Norm to F_p, the product of the Galois conjugates.
    pub fn norm(&self, a: &Poly) -> u64 {
        let mut s = self.reduce(a);
        let mut acc = s.clone();
        for _ in 1..self.degree() {
            s = self.frobenius(&s);
            acc = self.mul(&acc, &s);
        }
        debug_assert!(acc.deg0() == 0);
        acc.coeff(0)
    }

    /// Quadratic character via the norm: chi_{p^d}(a) = chi_p(N(a)).
    pub fn legendre(&self, a: &Poly) -> i8 {
        self.base.legendre(self.norm(a))
    }

    /// The element whose base-p digits are `idx`, for exhaustive loops.
    pub fn element(&self, mut idx: u64) -> Poly {
        let p = self.base.p();
        let mut c = Vec::with_capacity(self.degree());
        for _ in 0..self.degree() {
            c.push(idx % p);
            idx /= p;
        }
        Poly::new(self.base, c)
    }

    /// Number of distinct roots in this field of the monic `X^3 + a X^2 + b X + c`.
    pub fn cubic_root_count(&self, a: &Poly, b: &Poly, c: &Poly) -> usize {
        let three = self.from_base(3);
        let disc = cubic_discriminant(self, a, b, c);
        if disc.is_zero() {
            // Repeated root; both roots are rational.
            let a2_3b = self.sub(&self.mul(a, a), &self.mul(&three, b));
            return if a2_3b.is_zero() { 1 } else { 2 };
        }
        let alg = CubicAlgebra { field: self, coef: [c.clone(), b.clone(), a.clone()] };
        let x = [self.zero(), self.one(), self.zero()];
        let mut h = x.clone();
        for _ in 0..self.degree() {
            h = alg.pow(&h, self.base.p());
        }
        if h == x {
            3
        } else if self.legendre(&disc) == 1 {
            0
        } else {
            1
        }
    }
}

/// Discriminant of the monic cubic `X^3 + a X^2 + b X + c`.
pub fn cubic_discriminant(k: &ExtField, a: &Poly, b: &Poly, c: &Poly) -> Poly {
    let m = |x: &Poly, y: &Poly| k.mul(x, y);
    let s = |v: i64| k.from_base(k.base().from_i64(v));
    // a^2 b^2 - 4 b^3 - 4 a^3 c - 27 c^2 + 18 a b c
    let t1 = m(&m(a, a), &m(b, b));
    let t2 = m(&s(-4), &m(&m(b, b), b));
    let t3 = m(&s(-4), &m(&m(&m(a, a), a), c));
    let t4 = m(&s(-27), &m(c, c));
    let t5 = m(&s(18), &m(&m(a, b), c));
    t1.add(&t2).add(&t3).add(&t4).add(&t5)
}

/// F_x[X] / (X^3 + a X^2 + b X + c), elements as `[c0, c1, c2]`.
struct CubicAlgebra<'a> {
    field: &'a ExtField,
    coef: [Poly; 3],
}

impl CubicAlgebra<'_> {
    fn mul(&self, u: &[Poly; 3], v: &[Poly; 3]) -> [Poly; 3] {
        let k = self.field;
        let mut prod: Vec<Poly> = vec![k.zero(); 5];
        for i in 0..3 {
            for j in 0..3 {
                prod[i + j] = k.add(&prod[i + j], &k.mul(&u[i], &v[j]));
            }
        }
        for deg in (3..5).rev() {
            let top = prod[deg].clone();
            for (i, ci) in self.coef.iter().enumerate() {
                prod[deg - 3 + i] = k.sub(&prod[deg - 3 + i], &k.mul(&top, ci));
            }
        }
        [prod[0].clone(), prod[1].clone(), prod[2].clone()]
    }

    fn pow(&self, u: &[Poly; 3], mut e: u64) -> [Poly; 3] {
        let k = self.field;
        let mut r = [k.one(), k.zero(), k.zero()];
        let mut b = u.clone();
        while e > 0 {
            if e & 1 == 1 {
                r = self.mul(&r, &b);
            }
            e >>= 1;
            if e > 0 {
                b = self.mul(&b, &b);
            }
        }
        r
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn degree_one_is_prime_field() {
        let k = ExtField::build(PrimeField::new(5).unwrap(), 1);
        assert_eq!(k.order(), 5);
        assert_eq!(k.legendre(&k.from_base(2)), -1);
    }

    #[test]
    fn frobenius_identity_f25() {
        let k = ExtField::build(PrimeField::new(5).unwrap(), 2);
        assert_eq!(k.order(), 25);
        for i in 0..25 {
            let a = k.element(i);
            assert_eq!(k.pow(&a, 25), a);
        }
    }

    #[test]
    fn group_order_f343() {
        let k = ExtField::build(PrimeField::new(7).unwrap(), 3);
        let a = k.element(123);
        assert_eq!(k.pow(&a, 342), k.one());
        let ai = k.inv(&a).unwrap();
        assert_eq!(k.mul(&a, &ai), k.one());
    }

    #[test]
    fn legendre_matches_euler_criterion() {
        let k = ExtField::build(PrimeField::new(7).unwrap(), 2);
        for i in 1..49 {
            let a = k.element(i);
            let e = k.pow(&a, 24);
            let expect = if e == k.one() { 1 } else { -1 };
            assert_eq!(k.legendre(&a), expect);
        }
    }

    #[test]
    fn cubic_roots_match_brute_force() {
        for (p, d) in [(5u64, 1usize), (7, 1), (5, 2), (7, 2)] {
            let k = ExtField::build(PrimeField::new(p).unwrap(), d);
            let q = k.order() as u64;
            for s in 0..60u64 {
                let a = k.element(s % q);
                let b = k.element((s * 7 + 3) % q);
                let c = k.element((s * 13 + 1) % q);
                let brute = (0..q)
                    .filter(|&i| {
                        let x = k.element(i);
                        let v = k.mul(&k.mul(&x, &x), &x)
                            .add(&k.mul(&a, &k.mul(&x, &x)))
                            .add(&k.mul(&b, &x))
                            .add(&c);
                        k.reduce(&v).is_zero()
                    })
                    .count();
                assert_eq!(k.cubic_root_count(&a, &b, &c), brute, "p={p} d={d} s={s}");
            }
        }
    }
}
