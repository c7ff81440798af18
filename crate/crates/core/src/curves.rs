//! Short Weierstrass models `y^2 = x^3 + a2 x^2 + a4 x + a6` over F_p(t).

use crate::algebra::{ExtField, Poly, PrimeField};
use crate::error::{Error, Result};
use crate::places::RationalFunction;
use serde::Serialize;

/// Integer coefficient lists (ascending in `t`), independent of the prime.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct IntegerModel {
    pub a2: Vec<i64>,
    pub a4: Vec<i64>,
    pub a6: Vec<i64>,
}

impl IntegerModel {
    pub fn reduce(&self, field: PrimeField) -> Result<WeierstrassCurve> {
        WeierstrassCurve::new(
            Poly::from_ints(field, &self.a2),
            Poly::from_ints(field, &self.a4),
            Poly::from_ints(field, &self.a6),
        )
    }
}

/// A nonsingular model with polynomial coefficients.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct WeierstrassCurve {
    a2: Poly,
    a4: Poly,
    a6: Poly,
    disc: Poly,
}

/// `(c4, c6, disc)` for the short model with an `x^2` term.
pub fn c_invariants(a2: &Poly, a4: &Poly, a6: &Poly) -> (Poly, Poly, Poly) {
    let f = a2.field();
    let k = |v: i64| f.from_i64(v);
    let a2sq = a2.mul(a2);
    let c4 = a2sq.scale(16).sub(&a4.scale(48));
    let c6 = a2sq.mul(a2).scale(k(-64)).add(&a2.mul(a4).scale(288)).sub(&a6.scale(864));
    let disc = a2sq
        .mul(a2)
        .mul(a6)
        .scale(k(-4))
        .add(&a2sq.mul(&a4.mul(a4)))
        .sub(&a4.mul(a4).mul(a4).scale(4))
        .sub(&a6.mul(a6).scale(27))
        .add(&a2.mul(a4).mul(a6).scale(18))
        .scale(16);
    (c4, c6, disc)
}

impl WeierstrassCurve {
    pub fn new(a2: Poly, a4: Poly, a6: Poly) -> Result<Self> {
        let field = a2.field();
        if a4.field() != field || a6.field() != field {
            return Err(Error::Precondition("coefficients over different fields".into()));
        }
        let (_, _, disc) = c_invariants(&a2, &a4, &a6);
        if disc.is_zero() {
            return Err(Error::Singular);
        }
        Ok(Self { a2, a4, a6, disc })
    }

    pub fn field(&self) -> PrimeField {
        self.a2.field()
    }

    pub fn a2(&self) -> &Poly {
        &self.a2
    }

    pub fn a4(&self) -> &Poly {
        &self.a4
    }

    pub fn a6(&self) -> &Poly {
        &self.a6
    }

    pub fn discriminant(&self) -> &Poly {
        &self.disc
    }

    /// `(c4, c6, disc, j)`.
    pub fn standard_quantities(&self) -> (Poly, Poly, Poly, RationalFunction) {
        let (c4, c6, disc) = c_invariants(&self.a2, &self.a4, &self.a6);
        let j = RationalFunction::new(c4.mul(&c4).mul(&c4), disc.clone()).expect("nonzero discriminant");
        (c4, c6, disc, j)
    }

    pub fn j_invariant(&self) -> RationalFunction {
        self.standard_quantities().3
    }

    pub fn is_isotrivial(&self) -> bool {
        let j = self.j_invariant();
        j.num().is_constant() && j.den().is_constant()
    }

    /// Errors unless `j` is non-constant.
    pub fn ensure_nonisotrivial(&self) -> Result<()> {
        if self.is_isotrivial() {
            Err(Error::Isotrivial)
        } else {
            Ok(())
        }
    }

    /// The quadratic twist by `d`: coefficients scaled by `d, d^2, d^3`.
    pub fn twist_by(&self, d: &Poly) -> Result<Self> {
        if d.is_zero() {
            return Err(Error::Precondition("twist by zero".into()));
        }
        let d2 = d.mul(d);
        Self::new(self.a2.mul(d), self.a4.mul(&d2), self.a6.mul(&d2.mul(d)))
    }

    /// The model in the coordinate `s = 1/t`, with `a_i(s) = s^(i k) a_i(1/s)`
    /// for the least `k` making everything polynomial. Infinity becomes `s = 0`.
    pub fn at_infinity(&self) -> Self {
        let up = |f: &Poly, w: usize| f.degree().map_or(0, |d| d.div_ceil(w));
        let k = up(&self.a2, 2).max(up(&self.a4, 4)).max(up(&self.a6, 6));
        let rev = |f: &Poly, w: usize| if f.is_zero() { f.clone() } else { f.reversed(w * k) };
        Self::new(rev(&self.a2, 2), rev(&self.a4, 4), rev(&self.a6, 6)).expect("reversal keeps the discriminant nonzero")
    }

    /// Text form: `p=..` then dense ascending coefficient lists.
    pub fn to_text(&self) -> String {
        let list = |f: &Poly| {
            let v: Vec<String> = f.coeffs().iter().map(|c| c.to_string()).collect();
            format!("[{}]", v.join(", "))
        };
        format!("p={}\na2={}\na4={}\na6={}\n", self.field().p(), list(&self.a2), list(&self.a4), list(&self.a6))
    }
}

fn parse_int_list(s: &str) -> Result<Vec<i64>> {
    let s = s.trim();
    let inner = s
        .strip_prefix('[')
        .and_then(|r| r.strip_suffix(']'))
        .ok_or_else(|| Error::Parse(format!("expected a bracketed list, got `{s}`")))?;
    if inner.trim().is_empty() {
        return Ok(Vec::new());
    }
    inner
        .split(',')
        .map(|x| x.trim().parse::<i64>().map_err(|e| Error::Parse(format!("bad integer `{}`: {e}", x.trim()))))
        .collect()
}

/// Parses the curve text format into the prime and the integer model.
pub fn parse_curve_text(text: &str) -> Result<(u64, IntegerModel)> {
    let mut p = None;
    let (mut a2, mut a4, mut a6) = (None, None, None);
    for (lineno, raw) in text.lines().enumerate() {
        let line = raw.split('#').next().unwrap_or("").trim();
        if line.is_empty() {
            continue;
        }
        let (key, val) = line
            .split_once('=')
            .ok_or_else(|| Error::Parse(format!("line {}: expected key=value", lineno + 1)))?;
        match key.trim() {
            "p" => p = Some(val.trim().parse::<u64>().map_err(|e| Error::Parse(format!("bad prime: {e}")))?),
            "a2" => a2 = Some(parse_int_list(val)?),
            "a4" => a4 = Some(parse_int_list(val)?),
            "a6" => a6 = Some(parse_int_list(val)?),
            other => return Err(Error::Parse(format!("line {}: unknown key `{other}`", lineno + 1))),
        }
    }
    let p = p.ok_or_else(|| Error::Parse("missing p=".into()))?;
    let model = IntegerModel {
        a2: a2.unwrap_or_default(),
        a4: a4.ok_or_else(|| Error::Parse("missing a4=".into()))?,
        a6: a6.ok_or_else(|| Error::Parse("missing a6=".into()))?,
    };
    Ok((p, model))
}

/// Evaluates the residues of the coefficients at a point of a field.
pub struct FiberModel {
    pub a2: Poly,
    pub a4: Poly,
    pub a6: Poly,
}

fn rhs(k: &ExtField, m: &FiberModel, x: &Poly) -> Poly {
    let x2 = k.mul(x, x);
    k.mul(&x2, x).add(&k.mul(&m.a2, &x2)).add(&k.mul(&m.a4, x)).add(&m.a6)
}

/// `q + 1 - #E(F_q)` by enumerating all pairs `(x, y)`.
pub fn trace_naive(k: &ExtField, m: &FiberModel) -> i64 {
    let q = k.order() as u64;
    let squares: Vec<Poly> = (0..q).map(|i| {
        let y = k.element(i);
        k.mul(&y, &y)
    }).collect();
    let mut points = 1i64;
    for i in 0..q {
        let v = rhs(k, m, &k.element(i));
        points += squares.iter().filter(|s| **s == v).count() as i64;
    }
    q as i64 + 1 - points
}

/// `-sum_x chi(x^3 + a2 x^2 + a4 x + a6)`.
pub fn trace_charsum(k: &ExtField, m: &FiberModel) -> i64 {
    let q = k.order() as u64;
    -(0..q).map(|i| k.legendre(&rhs(k, m, &k.element(i))) as i64).sum::<i64>()
}

#[cfg(test)]
mod tests {
    use super::*;

    fn f(p: u64) -> PrimeField {
        PrimeField::new(p).unwrap()
    }

    fn intro(p: u64) -> WeierstrassCurve {
        // a4 = 3(t^2-1)^3, a6 = -2(t^2-1)^5
        let k = f(p);
        let u = Poly::from_ints(k, &[-1, 0, 1]);
        WeierstrassCurve::new(Poly::zero(k), u.pow(3).scale(3), u.pow(5).scale(k.from_i64(-2))).unwrap()
    }

    #[test]
    fn intro_discriminant() {
        for p in [5u64, 7, 11, 13] {
            let k = f(p);
            let c = intro(p);
            // -2^6 3^3 t^2 (t-1)^9 (t+1)^9
            let expect = Poly::t(k).pow(2).mul(&Poly::from_ints(k, &[-1, 0, 1]).pow(9)).scale(k.from_i64(-1728));
            assert_eq!(c.discriminant(), &expect);
            // After the twist by t - m the discriminant gains (t - m)^6.
            let tw = c.twist_by(&Poly::linear(k, 2)).unwrap();
            assert_eq!(tw.discriminant(), &expect.mul(&Poly::linear(k, 2).pow(6)));
            assert!(!c.is_isotrivial());
        }
    }

    #[test]
    fn constant_curve_formulas() {
        let k = f(7);
        let c = WeierstrassCurve::new(Poly::zero(k), Poly::one(k), Poly::zero(k)).unwrap();
        assert_eq!(c.discriminant(), &Poly::constant(k, k.from_i64(-64)));
        let j = c.j_invariant();
        assert_eq!(j.num().coeff(0), 1728 % 7);
        assert!(c.is_isotrivial());
        assert_eq!(c.ensure_nonisotrivial(), Err(Error::Isotrivial));
    }

    #[test]
    fn double_twist_scales_discriminant() {
        let k = f(11);
        let c = intro(11);
        let d = Poly::from_ints(k, &[3, 1]);
        let cc = c.twist_by(&d).unwrap().twist_by(&d).unwrap();
        assert_eq!(cc.discriminant(), &c.discriminant().mul(&d.pow(12)));
        assert_eq!(cc.j_invariant(), c.j_invariant());
    }

    #[test]
    fn y2_x3_plus_x_over_f5() {
        let k = ExtField::build(f(5), 1);
        let m = FiberModel { a2: k.zero(), a4: k.one(), a6: k.zero() };
        assert_eq!(trace_naive(&k, &m), 2);
        assert_eq!(trace_charsum(&k, &m), 2);
    }

    #[test]
    fn naive_matches_charsum_in_extensions() {
        for (p, d) in [(5u64, 2usize), (7, 2), (5, 3)] {
            let k = ExtField::build(f(p), d);
            for s in 0..6u64 {
                let m = FiberModel { a2: k.element(s), a4: k.element(3 * s + 1), a6: k.element(7 * s + 2) };
                assert_eq!(trace_naive(&k, &m), trace_charsum(&k, &m));
            }
        }
    }

    #[test]
    fn text_round_trip() {
        let c = intro(5);
        let (p, model) = parse_curve_text(&c.to_text()).unwrap();
        assert_eq!(p, 5);
        assert_eq!(model.reduce(f(5)).unwrap(), c);
        assert!(parse_curve_text("p=5\na4=[1,2\n").is_err());
        assert!(parse_curve_text("q=5").is_err());
    }

    #[test]
    fn infinity_model_has_bounded_degrees() {
        let c = intro(7);
        let inf = c.at_infinity();
        // k = max(ceil(6/4), ceil(10/6)) = 2
        assert_eq!(inf.a4().deg0(), 8);
        assert_eq!(inf.a6().deg0(), 12);
    }
}
