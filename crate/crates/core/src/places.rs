//! Closed points of the projective line over F_p and valuations at them.

use crate::algebra::factor::{canonical_cmp, factor, monic_irreducibles};
use crate::algebra::{ExtField, Poly, PrimeField};
use crate::error::{Error, Result};
use serde::{Serialize, Serializer};
use std::fmt;

/// A closed point: a monic irreducible `pi`, or the point at infinity.
#[derive(Clone, PartialEq, Eq, Hash)]
pub enum Place {
    Finite(Poly),
    Infinity,
}

impl Place {
    pub fn finite(pi: Poly) -> Result<Self> {
        if !crate::algebra::is_irreducible(&pi) {
            return Err(Error::Reducible(pi.deg0()));
        }
        Ok(Self::Finite(pi.monic()))
    }

    /// The place `t = a`.
    pub fn at(field: PrimeField, a: u64) -> Self {
        Self::Finite(Poly::linear(field, a))
    }

    pub fn degree(&self) -> usize {
        match self {
            Self::Finite(pi) => pi.deg0(),
            Self::Infinity => 1,
        }
    }

    pub fn is_infinity(&self) -> bool {
        matches!(self, Self::Infinity)
    }

    /// For a degree-one finite place, the coordinate `a` of `t = a`.
    pub fn rational_point(&self) -> Option<u64> {
        match self {
            Self::Finite(pi) if pi.deg0() == 1 => Some(pi.field().neg(pi.coeff(0))),
            _ => None,
        }
    }
}

impl fmt::Display for Place {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Self::Infinity => write!(f, "inf"),
            Self::Finite(pi) => match self.rational_point() {
                Some(a) => write!(f, "t={a}"),
                None => write!(f, "({pi})"),
            },
        }
    }
}

impl fmt::Debug for Place {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}

impl Serialize for Place {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        s.serialize_str(&self.to_string())
    }
}

/// Ordering used everywhere places are listed: infinity first, then finite
/// places by degree and coefficients.
pub fn place_cmp(a: &Place, b: &Place) -> std::cmp::Ordering {
    use std::cmp::Ordering::*;
    match (a, b) {
        (Place::Infinity, Place::Infinity) => Equal,
        (Place::Infinity, _) => Less,
        (_, Place::Infinity) => Greater,
        (Place::Finite(x), Place::Finite(y)) => canonical_cmp(x, y),
    }
}

/// A reduced fraction with monic denominator.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct RationalFunction {
    num: Poly,
    den: Poly,
}

impl RationalFunction {
    pub fn new(num: Poly, den: Poly) -> Result<Self> {
        if den.is_zero() {
            return Err(Error::Precondition("zero denominator".into()));
        }
        let g = num.gcd(&den);
        let (num, den) = if g.deg0() > 0 { (num.div_exact(&g), den.div_exact(&g)) } else { (num, den) };
        let c = den.field().inv(den.leading());
        Ok(Self { num: num.scale(c), den: den.scale(c) })
    }

    pub fn from_poly(f: Poly) -> Self {
        let field = f.field();
        Self { num: f, den: Poly::one(field) }
    }

    pub fn num(&self) -> &Poly {
        &self.num
    }

    pub fn den(&self) -> &Poly {
        &self.den
    }

    pub fn is_zero(&self) -> bool {
        self.num.is_zero()
    }

    pub fn mul(&self, other: &Self) -> Self {
        Self::new(self.num.mul(&other.num), self.den.mul(&other.den)).expect("nonzero denominators")
    }

    pub fn add(&self, other: &Self) -> Self {
        let num = self.num.mul(&other.den).add(&other.num.mul(&self.den));
        Self::new(num, self.den.mul(&other.den)).expect("nonzero denominators")
    }
}

/// `v_x(f)` for a polynomial; `None` means `+infinity`.
pub fn poly_valuation(f: &Poly, x: &Place) -> Option<i64> {
    if f.is_zero() {
        return None;
    }
    Some(match x {
        Place::Finite(pi) => f.valuation(pi).expect("nonzero") as i64,
        Place::Infinity => -(f.deg0() as i64),
    })
}

/// `v_x(f)`; `None` means `+infinity`.
pub fn valuation(f: &RationalFunction, x: &Place) -> Option<i64> {
    let vn = poly_valuation(&f.num, x)?;
    let vd = poly_valuation(&f.den, x).expect("nonzero denominator");
    Some(vn - vd)
}

/// Every place of degree at most `d_max`, infinity first, then by degree.
pub fn enumerate_places(field: PrimeField, d_max: usize) -> Vec<Place> {
    let mut out = vec![Place::Infinity];
    for d in 1..=d_max {
        out.extend(monic_irreducibles(field, d).into_iter().map(Place::Finite));
    }
    out
}

/// Number of monic irreducibles of degree `d` over F_q (the necklace count).
pub fn irreducible_count(q: u64, d: usize) -> u64 {
    fn mobius(mut n: usize) -> i64 {
        let mut m = 1;
        let mut k = 2;
        while k * k <= n {
            if n.is_multiple_of(k) {
                n /= k;
                if n.is_multiple_of(k) {
                    return 0;
                }
                m = -m;
            }
            k += 1;
        }
        if n > 1 {
            m = -m;
        }
        m
    }
    let total: i128 = (1..=d)
        .filter(|e| d.is_multiple_of(*e))
        .map(|e| mobius(e) as i128 * (q as i128).pow((d / e) as u32))
        .sum();
    (total / d as i128) as u64
}

/// The residue field F_x. At infinity this is F_p, presented with modulus `t`.
pub fn residue_field(field: PrimeField, x: &Place) -> ExtField {
    match x {
        Place::Finite(pi) => ExtField::new(pi.clone()).expect("places carry irreducible polynomials"),
        Place::Infinity => ExtField::new(Poly::t(field)).expect("t is irreducible"),
    }
}

/// Image of `f` in the residue field at `x`.
pub fn reduce_at(f: &RationalFunction, x: &Place) -> Result<Poly> {
    let field = f.num.field();
    let k = residue_field(field, x);
    match valuation(f, x) {
        None => return Ok(k.zero()),
        Some(v) if v < 0 => return Err(Error::NegativeValuation(v)),
        Some(v) if v > 0 => return Ok(k.zero()),
        _ => {}
    }
    match x {
        Place::Infinity => {
            let c = field.mul(f.num.leading(), field.inv(f.den.leading()));
            Ok(k.from_base(c))
        }
        Place::Finite(pi) => {
            let vd = f.den.valuation(pi).expect("nonzero") as u64;
            let strip = pi.pow(vd);
            let n = f.num.div_exact(&strip);
            let d = f.den.div_exact(&strip);
            Ok(k.div(&k.reduce(&n), &k.reduce(&d)).expect("unit denominator"))
        }
    }
}

/// Distinct finite places dividing a nonzero polynomial, in canonical order.
pub fn places_dividing(f: &Poly) -> Result<Vec<Place>> {
    let fac = factor(f)?;
    let mut v: Vec<Place> = fac.factors.into_iter().map(|(g, _)| Place::Finite(g)).collect();
    v.sort_by(place_cmp);
    Ok(v)
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    fn k(p: u64) -> PrimeField {
        PrimeField::new(p).unwrap()
    }

    #[test]
    fn valuation_examples() {
        let f = k(5);
        let g = Poly::t(f).pow(2).mul(&Poly::linear(f, 1).pow(9));
        let r = RationalFunction::from_poly(g);
        assert_eq!(valuation(&r, &Place::at(f, 0)), Some(2));
        assert_eq!(valuation(&r, &Place::Infinity), Some(-11));
    }

    #[test]
    fn valuation_after_factoring() {
        let f = k(7);
        let num = Poly::from_ints(f, &[1, 0, 1]);
        let r = RationalFunction::new(num.clone(), Poly::linear(f, 2)).unwrap();
        let ps = places_dividing(&num).unwrap();
        assert!(!ps.is_empty());
        for x in ps {
            assert_eq!(valuation(&r, &x), Some(1));
        }
    }

    #[test]
    fn place_counts() {
        assert_eq!(enumerate_places(k(5), 1).len(), 6);
        assert_eq!(enumerate_places(k(5), 2).len(), 16);
        assert_eq!(enumerate_places(k(7), 1).len(), 8);
        for q in [5u64, 7, 11] {
            for d in 1..=4usize {
                if (q as u128).pow(d as u32) > 20_000 {
                    continue;
                }
                let actual = enumerate_places(k(q), d).len() - enumerate_places(k(q), d - 1).len();
                assert_eq!(actual as u64, irreducible_count(q, d), "q={q} d={d}");
            }
        }
        assert_eq!(irreducible_count(5, 2), 10);
    }

    #[test]
    fn reduction_examples() {
        let f = k(5);
        let t2 = RationalFunction::from_poly(Poly::t(f).pow(2));
        assert_eq!(reduce_at(&t2, &Place::at(f, 3)).unwrap(), Poly::constant(f, 4));
        let r = RationalFunction::new(Poly::from_ints(f, &[1, 0, 2]), Poly::from_ints(f, &[-1, 0, 1])).unwrap();
        assert_eq!(reduce_at(&r, &Place::Infinity).unwrap(), Poly::constant(f, 2));
        let pi = Poly::from_ints(f, &[2, 0, 1]);
        let x = Place::finite(pi.clone()).unwrap();
        let kx = residue_field(f, &x);
        assert_eq!(kx.order(), 25);
        let img = reduce_at(&RationalFunction::from_poly(Poly::t(f)), &x).unwrap();
        // img^2 + 2 = 0
        assert!(kx.add(&kx.mul(&img, &img), &kx.from_base(2)).is_zero());
        let bad = RationalFunction::new(Poly::one(f), Poly::t(f)).unwrap();
        assert_eq!(reduce_at(&bad, &Place::at(f, 0)), Err(Error::NegativeValuation(-1)));
    }

    fn arb_rf(p: u64) -> impl Strategy<Value = RationalFunction> {
        let f = k(p);
        (proptest::collection::vec(-20i64..20, 1..6), proptest::collection::vec(-20i64..20, 1..5)).prop_filter_map(
            "nonzero",
            move |(n, d)| {
                let n = Poly::from_ints(f, &n);
                let d = Poly::from_ints(f, &d);
                if n.is_zero() || d.is_zero() {
                    None
                } else {
                    RationalFunction::new(n, d).ok()
                }
            },
        )
    }

    proptest! {
        #![proptest_config(ProptestConfig::with_cases(64))]
        #[test]
        fn valuation_axioms(a in arb_rf(7), b in arb_rf(7)) {
            let f = k(7);
            for x in enumerate_places(f, 2) {
                let va = valuation(&a, &x).unwrap();
                let vb = valuation(&b, &x).unwrap();
                prop_assert_eq!(valuation(&a.mul(&b), &x), Some(va + vb));
                if let Some(vs) = valuation(&a.add(&b), &x) {
                    prop_assert!(vs >= va.min(vb));
                }
            }
        }

        #[test]
        fn product_formula(a in arb_rf(5)) {
            let mut support = places_dividing(&a.num().mul(a.den())).unwrap_or_default();
            support.push(Place::Infinity);
            let total: i64 = support.iter().map(|x| valuation(&a, x).unwrap() * x.degree() as i64).sum();
            prop_assert_eq!(total, 0);
        }
    }
}
