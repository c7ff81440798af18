//! Factorization over F_p: squarefree split, distinct-degree split, then
//! Cantor–Zassenhaus equal-degree splitting with a seeded generator.

use super::fp::{prime_factors, PrimeField};
use super::poly::Poly;
use crate::error::{Error, Result};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

const FACTOR_SEED: u64 = 0x5eed_fac7;

/// `f = leading * prod(factor^mult)` with monic irreducible factors in canonical order.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Factorization {
    pub leading: u64,
    pub factors: Vec<(Poly, u32)>,
}

impl Factorization {
    /// Multiplies everything back together.
    pub fn expand(&self, field: PrimeField) -> Poly {
        self.factors
            .iter()
            .fold(Poly::constant(field, self.leading), |acc, (g, m)| acc.mul(&g.pow(*m as u64)))
    }

    /// Product of the distinct irreducible factors.
    pub fn radical(&self, field: PrimeField) -> Poly {
        self.factors.iter().fold(Poly::one(field), |acc, (g, _)| acc.mul(g))
    }
}

/// Canonical ordering: by degree, then by coefficients from the top down.
pub fn canonical_cmp(a: &Poly, b: &Poly) -> std::cmp::Ordering {
    a.deg0()
        .cmp(&b.deg0())
        .then_with(|| a.coeffs().iter().rev().cmp(b.coeffs().iter().rev()))
}

/// `x^(p^k) mod m`, by `k` successive p-th powers.
fn frobenius_power(m: &Poly, k: usize) -> Poly {
    let p = m.field().p();
    let mut h = Poly::t(m.field()).rem(m);
    for _ in 0..k {
        h = h.pow_mod(p as u128, m);
    }
    h
}

/// Rabin's test.
pub fn is_irreducible(f: &Poly) -> bool {
    let n = match f.degree() {
        None | Some(0) => return false,
        Some(1) => return true,
        Some(n) => n,
    };
    let f = f.monic();
    let x = Poly::t(f.field());
    if frobenius_power(&f, n) != x.rem(&f) {
        return false;
    }
    prime_factors(n as u64).into_iter().all(|r| {
        let h = frobenius_power(&f, n / r as usize);
        h.sub(&x).gcd(&f).deg0() == 0
    })
}

fn squarefree_parts(f: &Poly) -> Vec<(Poly, u32)> {
    let field = f.field();
    let p = field.p() as usize;
    let mut out = Vec::new();
    let mut c = f.gcd(&f.derivative());
    let mut w = f.div_exact(&c).monic();
    let mut i = 1u32;
    while w.deg0() > 0 {
        let y = w.gcd(&c);
        let z = w.div_exact(&y);
        if z.deg0() > 0 {
            out.push((z.monic(), i));
        }
        i += 1;
        w = y;
        c = c.div_exact(&w);
    }
    if c.deg0() > 0 {
        // Only exponents divisible by p remain, and a^(1/p) = a in F_p.
        let root = Poly::new(field, c.coeffs().iter().step_by(p).copied().collect());
        for (g, m) in squarefree_parts(&root.monic()) {
            out.push((g, m * p as u32));
        }
    }
    out
}

fn distinct_degree(f: &Poly) -> Vec<(Poly, usize)> {
    let x = Poly::t(f.field());
    let p = f.field().p() as u128;
    let mut rest = f.clone();
    let mut h = x.rem(&rest);
    let mut out = Vec::new();
    let mut d = 1;
    while rest.deg0() >= 2 * d {
        h = h.pow_mod(p, &rest);
        let g = h.sub(&x).gcd(&rest);
        if g.deg0() > 0 {
            rest = rest.div_exact(&g);
            h = h.rem(&rest);
            out.push((g, d));
        }
        d += 1;
    }
    if rest.deg0() > 0 {
        let d = rest.deg0();
        out.push((rest, d));
    }
    out
}

fn equal_degree(g: &Poly, d: usize, rng: &mut ChaCha8Rng, out: &mut Vec<Poly>) {
    let n = g.deg0();
    if n == d {
        out.push(g.monic());
        return;
    }
    let field = g.field();
    let p = field.p();
    loop {
        let a = Poly::new(field, (0..n).map(|_| rng.gen_range(0..p)).collect());
        if a.deg0() == 0 {
            continue;
        }
        // a^((p^d - 1)/2) = (a * a^p * ... * a^(p^(d-1)))^((p-1)/2)
        let mut s = a.clone();
        let mut norm = a.clone();
        for _ in 1..d {
            s = s.pow_mod(p as u128, g);
            norm = norm.mul_mod(&s, g);
        }
        let b = norm.pow_mod(((p - 1) / 2) as u128, g).sub(&Poly::one(field));
        let h = b.gcd(g);
        if h.deg0() > 0 && h.deg0() < n {
            let other = g.div_exact(&h);
            equal_degree(&h, d, rng, out);
            equal_degree(&other.monic(), d, rng, out);
            return;
        }
    }
}

/// Complete factorization into monic irreducibles.
pub fn factor(f: &Poly) -> Result<Factorization> {
    if f.is_zero() {
        return Err(Error::ZeroPolynomial);
    }
    let field = f.field();
    let leading = f.leading();
    let mut rng = ChaCha8Rng::seed_from_u64(FACTOR_SEED);
    let mut factors = Vec::new();
    for (sq, mult) in squarefree_parts(&f.monic()) {
        for (block, d) in distinct_degree(&sq) {
            let mut irr = Vec::new();
            equal_degree(&block, d, &mut rng, &mut irr);
            factors.extend(irr.into_iter().map(|g| (g, mult)));
        }
    }
    factors.sort_by(|a, b| canonical_cmp(&a.0, &b.0));
    // Distinct squarefree layers never share factors, but merge defensively.
    let mut merged: Vec<(Poly, u32)> = Vec::with_capacity(factors.len());
    for (g, m) in factors {
        match merged.last_mut() {
            Some((h, k)) if *h == g => *k += m,
            _ => merged.push((g, m)),
        }
    }
    debug_assert_eq!(Factorization { leading, factors: merged.clone() }.expand(field), *f);
    Ok(Factorization { leading, factors: merged })
}

/// A monic irreducible of degree `d`, found by seeded random search.
pub fn random_irreducible(field: PrimeField, d: usize, seed: u64) -> Poly {
    assert!(d >= 1);
    if d == 1 {
        return Poly::t(field);
    }
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    loop {
        let mut c: Vec<u64> = (0..d).map(|_| rng.gen_range(0..field.p())).collect();
        c.push(1);
        let g = Poly::new(field, c);
        if is_irreducible(&g) {
            return g;
        }
    }
}

/// All monic irreducibles of degree `d` (brute force; for small `p^d`).
pub fn monic_irreducibles(field: PrimeField, d: usize) -> Vec<Poly> {
    let p = field.p();
    let total = p.pow(d as u32);
    let mut out = Vec::new();
    for idx in 0..total {
        let mut c = Vec::with_capacity(d + 1);
        let mut k = idx;
        for _ in 0..d {
            c.push(k % p);
            k /= p;
        }
        c.push(1);
        let g = Poly::new(field, c);
        if is_irreducible(&g) {
            out.push(g);
        }
    }
    out.sort_by(canonical_cmp);
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    fn f(p: u64) -> PrimeField {
        PrimeField::new(p).unwrap()
    }

    #[test]
    fn difference_of_squares() {
        let k = f(5);
        let fac = factor(&Poly::from_ints(k, &[-1, 0, 1])).unwrap();
        assert_eq!(fac.factors, vec![(Poly::linear(k, 4), 1), (Poly::linear(k, 1), 1)]);
    }

    #[test]
    fn t2_plus_1_mod_5() {
        let k = f(5);
        let fac = factor(&Poly::from_ints(k, &[1, 0, 1])).unwrap();
        let roots: Vec<u64> = fac.factors.iter().map(|(g, _)| k.neg(g.coeff(0))).collect();
        let mut roots = roots;
        roots.sort();
        assert_eq!(roots, vec![2, 3]);
    }

    #[test]
    fn t2_plus_2_mod_5_irreducible() {
        let k = f(5);
        let g = Poly::from_ints(k, &[2, 0, 1]);
        assert!(is_irreducible(&g));
        assert_eq!(factor(&g).unwrap().factors, vec![(g, 1)]);
    }

    #[test]
    fn zero_rejected() {
        assert_eq!(factor(&Poly::zero(f(7))), Err(Error::ZeroPolynomial));
    }

    #[test]
    fn pth_power_inputs() {
        let k = f(5);
        // (t^5 + t + 1)^5 * (t - 2)^3
        let g = Poly::from_ints(k, &[1, 1, 0, 0, 0, 1]).pow(5).mul(&Poly::linear(k, 2).pow(3));
        let fac = factor(&g).unwrap();
        assert_eq!(fac.expand(k), g);
        for (h, _) in &fac.factors {
            assert!(is_irreducible(h));
        }
    }

    #[test]
    fn necklace_counts() {
        let k = f(5);
        assert_eq!(monic_irreducibles(k, 2).len(), 10);
        assert_eq!(monic_irreducibles(k, 3).len(), 40);
    }

    proptest! {
        #![proptest_config(ProptestConfig::with_cases(96))]
        #[test]
        fn factor_reassembles(pi in 0usize..4, coeffs in proptest::collection::vec(-50i64..50, 1..13)) {
            let p = [5u64, 7, 11, 13][pi];
            let k = f(p);
            let g = Poly::from_ints(k, &coeffs);
            prop_assume!(!g.is_zero());
            let fac = factor(&g).unwrap();
            prop_assert_eq!(fac.expand(k), g);
            for (h, _) in &fac.factors {
                prop_assert!(is_irreducible(h));
                // No roots in proper subfields F_{p^e}, e | deg h.
                let d = h.deg0();
                for e in 1..d {
                    if d % e == 0 {
                        let x = Poly::t(k);
                        prop_assert_eq!(frobenius_power(h, e).sub(&x).gcd(h).deg0(), 0);
                    }
                }
            }
        }
    }
}
