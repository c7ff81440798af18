//! The explicit twist families, their claimed profiles, and instantiation at
//! `(p, w)`.
//!
//! A family is a base model `y^2 = x^3 + a2 x^2 + a4 x + a6` over `Z[t]`, an
//! auxiliary polynomial `f` with rational roots, and a rational map `h`. The
//! member at `w` is the twist of the base by `(t - h(w)) f(t)`.

mod catalog;
mod orders;
mod parse;
mod verify;

pub use catalog::FamilyId;
pub use orders::{
    order_certificate, witness_lfunctions, OrderCertificate, OrderWitness, WitnessOutcome, EXCLUDED_ORDERS, ORDER_WITNESSES,
};
pub use parse::parse_family_text;
pub use verify::{
    epsilon_law_check, family_lfunctions, verify_profile, CellReport, Check, CheckStatus, CriterionReport,
    EpsilonLawReport, FamilyLFunction, PlaceObservation, VerifyOptions,
};

use crate::algebra::{is_prime, Poly, PrimeField};
use crate::curves::{IntegerModel, WeierstrassCurve};
use crate::error::{Error, Result};
use crate::reduction::Kodaira;
use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};
use serde::Serialize;
use std::fmt;

/// Dense integer polynomial, ascending in the variable.
#[derive(Clone, Debug, PartialEq, Eq, Default)]
pub struct ZPoly(pub Vec<BigInt>);

impl ZPoly {
    pub fn from_i64(c: &[i64]) -> Self {
        let mut p = Self(c.iter().map(|&v| BigInt::from(v)).collect());
        p.trim();
        p
    }

    fn trim(&mut self) {
        while self.0.last().is_some_and(Zero::is_zero) {
            self.0.pop();
        }
    }

    pub fn is_zero(&self) -> bool {
        self.0.is_empty()
    }

    pub fn degree(&self) -> Option<usize> {
        self.0.len().checked_sub(1)
    }

    pub fn leading(&self) -> BigInt {
        self.0.last().cloned().unwrap_or_default()
    }

    pub fn add(&self, o: &Self) -> Self {
        let n = self.0.len().max(o.0.len());
        let z = BigInt::zero();
        let mut p = Self((0..n).map(|i| self.0.get(i).unwrap_or(&z) + o.0.get(i).unwrap_or(&z)).collect());
        p.trim();
        p
    }

    pub fn scale(&self, c: i64) -> Self {
        let mut p = Self(self.0.iter().map(|v| v * c).collect());
        p.trim();
        p
    }

    pub fn mul(&self, o: &Self) -> Self {
        if self.is_zero() || o.is_zero() {
            return Self::default();
        }
        let mut out = vec![BigInt::zero(); self.0.len() + o.0.len() - 1];
        for (i, a) in self.0.iter().enumerate() {
            for (j, b) in o.0.iter().enumerate() {
                out[i + j] += a * b;
            }
        }
        Self(out)
    }

    pub fn pow(&self, e: u32) -> Self {
        (0..e).fold(Self::from_i64(&[1]), |acc, _| acc.mul(self))
    }

    pub fn content(&self) -> BigInt {
        self.0.iter().fold(BigInt::zero(), |g, c| g.gcd(c))
    }

    pub fn eval(&self, x: &BigRational) -> BigRational {
        self.0.iter().rev().fold(BigRational::zero(), |acc, c| acc * x + BigRational::from_integer(c.clone()))
    }

    pub fn reduce(&self, field: PrimeField) -> Poly {
        let p = BigInt::from(field.p());
        Poly::new(field, self.0.iter().map(|c| c.mod_floor(&p).to_u64().unwrap_or(0)).collect())
    }

    pub fn to_i64(&self) -> Result<Vec<i64>> {
        self.0
            .iter()
            .map(|c| c.to_i64().ok_or_else(|| Error::Precondition(format!("coefficient {c} exceeds 64 bits"))))
            .collect()
    }
}

impl fmt::Display for ZPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self.0.iter().map(ToString::to_string).collect();
        write!(f, "[{}]", parts.join(", "))
    }
}

/// Reduces a rational modulo `p`; `None` when `p` divides the denominator.
pub fn rational_mod(r: &BigRational, field: PrimeField) -> Option<u64> {
    let p = BigInt::from(field.p());
    let den = r.denom().mod_floor(&p).to_u64()?;
    if den == 0 {
        return None;
    }
    let num = r.numer().mod_floor(&p).to_u64()?;
    Some(field.mul(num, field.inv(den)))
}

/// `h = alpha / beta` with coprime integer polynomials and `beta` of positive
/// leading coefficient.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct RationalMap {
    alpha: ZPoly,
    beta: ZPoly,
}

impl RationalMap {
    pub fn new(alpha: ZPoly, beta: ZPoly) -> Result<Self> {
        if beta.is_zero() {
            return Err(Error::Precondition("rational map with zero denominator".into()));
        }
        let g = alpha.content().gcd(&beta.content());
        let sign = if beta.leading().is_negative() { -1 } else { 1 };
        let div = |p: &ZPoly| {
            let mut q = ZPoly(p.0.iter().map(|c| c * sign / &g).collect());
            q.trim();
            q
        };
        let (alpha, beta) = (div(&alpha), div(&beta));
        if !rational_coprime(&alpha, &beta) {
            return Err(Error::Precondition(format!("numerator {alpha} and denominator {beta} share a factor")));
        }
        Ok(Self { alpha, beta })
    }

    pub fn from_i64(alpha: &[i64], beta: &[i64]) -> Result<Self> {
        Self::new(ZPoly::from_i64(alpha), ZPoly::from_i64(beta))
    }

    pub fn identity() -> Self {
        Self::from_i64(&[0, 1], &[1]).expect("u/1 is a valid map")
    }

    pub fn alpha(&self) -> &ZPoly {
        &self.alpha
    }

    pub fn beta(&self) -> &ZPoly {
        &self.beta
    }

    pub fn max_degree(&self) -> usize {
        self.alpha.degree().unwrap_or(0).max(self.beta.degree().unwrap_or(0))
    }

    pub fn is_constant(&self) -> bool {
        self.alpha.degree().unwrap_or(0) == 0 && self.beta.degree().unwrap_or(0) == 0
    }

    pub fn eval(&self, u: &BigRational) -> Option<BigRational> {
        let d = self.beta.eval(u);
        (!d.is_zero()).then(|| self.alpha.eval(u) / d)
    }

    /// `h(w)` in `F_p`, or `None` when `beta(w) = 0`.
    pub fn eval_mod(&self, field: PrimeField, w: u64) -> Option<u64> {
        let d = self.beta.reduce(field).eval(w);
        (d != 0).then(|| field.mul(self.alpha.reduce(field).eval(w), field.inv(d)))
    }
}

impl fmt::Display for RationalMap {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{} / {}", self.alpha, self.beta)
    }
}

/// Coprimality over Q via the Euclidean algorithm on rational coefficients.
fn rational_coprime(a: &ZPoly, b: &ZPoly) -> bool {
    let to_q = |p: &ZPoly| p.0.iter().map(|c| BigRational::from_integer(c.clone())).collect::<Vec<_>>();
    let trim = |v: &mut Vec<BigRational>| {
        while v.last().is_some_and(Zero::is_zero) {
            v.pop();
        }
    };
    let (mut x, mut y) = (to_q(a), to_q(b));
    trim(&mut x);
    trim(&mut y);
    while !y.is_empty() {
        while x.len() >= y.len() && !x.is_empty() {
            let c = x.last().unwrap() / y.last().unwrap();
            let shift = x.len() - y.len();
            for (i, v) in y.iter().enumerate() {
                x[i + shift] -= &c * v;
            }
            trim(&mut x);
        }
        std::mem::swap(&mut x, &mut y);
    }
    x.len() == 1
}

/// A point of the projective line over Q: infinity or a rational number.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Point {
    Infinity,
    Finite(BigRational),
}

impl Point {
    pub fn int(a: i64) -> Self {
        Self::Finite(BigRational::from_integer(a.into()))
    }

    pub fn ratio(a: i64, b: i64) -> Self {
        Self::Finite(BigRational::new(a.into(), b.into()))
    }
}

impl fmt::Display for Point {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Self::Infinity => write!(f, "inf"),
            Self::Finite(r) => write!(f, "{r}"),
        }
    }
}

impl Serialize for Point {
    fn serialize<S: serde::Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        s.serialize_str(&self.to_string())
    }
}

/// Roots of `f`: the values `map(i + shift)` for `i = 1..=count`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct RootSequence {
    pub map: RationalMap,
    pub shift: i64,
    pub count: usize,
}

impl RootSequence {
    pub fn roots(&self) -> Result<Vec<BigRational>> {
        (1..=self.count as i64)
            .map(|i| {
                let u = BigRational::from_integer((i + self.shift).into());
                self.map.eval(&u).ok_or_else(|| Error::Precondition(format!("root map has a pole at {u}")))
            })
            .collect()
    }
}

/// Claim about Tamagawa numbers at a place or class of places.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum TamagawaClaim {
    Unclaimed,
    OneOf(Vec<u32>),
    PowerOfTwo,
}

impl TamagawaClaim {
    pub fn exactly(c: u32) -> Self {
        Self::OneOf(vec![c])
    }

    pub fn admits(&self, c: u32) -> bool {
        match self {
            Self::Unclaimed => true,
            Self::OneOf(v) => v.contains(&c),
            Self::PowerOfTwo => c.is_power_of_two(),
        }
    }
}

/// The claimed Kodaira symbol(s) and Tamagawa number at one special point.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct PlaceClaim {
    pub point: Point,
    pub kodaira: Vec<Kodaira>,
    pub tamagawa: TamagawaClaim,
}

/// Which of the three square-class conditions the family is claimed to satisfy.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub enum Condition {
    A,
    B,
    C,
}

impl std::str::FromStr for Condition {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        match s.trim() {
            "A" => Ok(Self::A),
            "B" => Ok(Self::B),
            "C" => Ok(Self::C),
            other => Err(Error::Parse(format!("unknown condition `{other}`"))),
        }
    }
}

/// Restriction on `ell` beyond `ell >= 5` and `ell` not dividing script L:
/// integers that must be non-squares and squares modulo `ell`.
#[derive(Clone, Debug, Default, PartialEq, Eq, Serialize)]
pub struct EllRule {
    pub nonsquares: Vec<u64>,
    pub squares: Vec<u64>,
}

impl EllRule {
    pub fn admits(&self, ell: u64) -> bool {
        let Ok(f) = PrimeField::new(ell) else { return false };
        self.nonsquares.iter().all(|&a| f.legendre(a) == -1) && self.squares.iter().all(|&a| f.legendre(a) == 1)
    }
}

/// One Legendre symbol `(coef * (a + b m) * f(s))^exp` in a root-number law.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct LegendreFactor {
    pub coef: BigRational,
    pub linear: Option<(BigRational, BigRational)>,
    pub f_at: Option<BigRational>,
    pub exp: usize,
}

impl LegendreFactor {
    fn constant(c: i64, exp: usize) -> Self {
        Self { coef: BigRational::from_integer(c.into()), linear: None, f_at: None, exp }
    }

    /// `(c * (a + b m) * f(s))`, with `f_at = None` meaning no `f` value.
    fn at_m(c: i64, a: BigRational, b: i64, s: Option<BigRational>) -> Self {
        Self {
            coef: BigRational::from_integer(c.into()),
            linear: Some((a, BigRational::from_integer(b.into()))),
            f_at: s,
            exp: 1,
        }
    }
}

/// A closed-form root-number law: `sign * prod factors`, optionally claimed to
/// telescope to a constant.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct EpsilonLaw {
    pub sign: i8,
    pub factors: Vec<LegendreFactor>,
    pub claimed: Option<i8>,
}

/// Claimed invariants of every member of a family.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct ExpectedProfile {
    #[serde(rename = "N")]
    pub n: usize,
    pub chi: Option<i64>,
    pub gamma: u64,
    pub script_l: u64,
    #[serde(rename = "B")]
    pub b: i64,
    pub places: Vec<PlaceClaim>,
    /// Tamagawa numbers at the `I0*` places over the roots of `(t - m) f`.
    pub i0star_tamagawa: TamagawaClaim,
    /// Pairs of special points whose Tamagawa numbers must agree.
    pub equal_tamagawa: Vec<(Point, Point)>,
    pub c_power_of_four: bool,
    pub condition: Condition,
    /// The `I0*` count and `6B <= N` hypotheses are expected to fail.
    pub waive_hypotheses: bool,
}

/// A family with a fixed parameter `n`.
#[derive(Clone, Debug)]
pub struct FamilySpec {
    pub name: String,
    pub n: u32,
    pub base: (ZPoly, ZPoly, ZPoly),
    pub h: RationalMap,
    pub f_roots: RootSequence,
    pub profile: ExpectedProfile,
    pub epsilon_law: Option<EpsilonLaw>,
    pub ell_rule: EllRule,
}

/// A member `E_{h(w)}` over `F_p(t)`.
#[derive(Clone, Debug)]
pub struct Instance {
    pub p: u64,
    pub w: u64,
    pub m: u64,
    pub curve: WeierstrassCurve,
    /// `(t - m) f(t)` over `F_p`.
    pub twist: Poly,
}

impl FamilySpec {
    pub fn build(id: FamilyId, n: u32) -> Result<Self> {
        catalog::build(id, n)
    }

    pub fn by_name(name: &str, n: u32) -> Result<Self> {
        Self::build(name.parse()?, n)
    }

    pub fn base_model(&self) -> Result<IntegerModel> {
        Ok(IntegerModel { a2: self.base.0.to_i64()?, a4: self.base.1.to_i64()?, a6: self.base.2.to_i64()? })
    }

    /// Discriminant of the base model over `Z`.
    pub fn base_discriminant(&self) -> ZPoly {
        let (a2, a4, a6) = &self.base;
        let a2sq = a2.mul(a2);
        let a4sq = a4.mul(a4);
        a2sq.mul(a2)
            .mul(a6)
            .scale(-4)
            .add(&a2sq.mul(&a4sq))
            .add(&a4sq.mul(a4).scale(-4))
            .add(&a6.mul(a6).scale(-27))
            .add(&a2.mul(a4).mul(a6).scale(18))
            .scale(16)
    }

    /// Same with a copy of `h` replaced, keeping everything else.
    pub fn with_h(&self, h: RationalMap) -> Self {
        Self { h, ..self.clone() }
    }

    fn finite_specials(&self) -> impl Iterator<Item = &BigRational> {
        self.profile.places.iter().filter_map(|c| match &c.point {
            Point::Finite(r) => Some(r),
            Point::Infinity => None,
        })
    }

    /// Why `p` lies outside the range where the family's claims are asserted,
    /// or `None` if it does not.
    pub fn exclusion(&self, p: u64) -> Option<String> {
        if p < 5 || !is_prime(p) {
            return Some("not a prime >= 5".into());
        }
        let field = PrimeField::new(p).ok()?;
        let disc = self.base_discriminant();
        if (disc.leading() % BigInt::from(p)).is_zero() {
            return Some("p divides the leading coefficient of the base discriminant".into());
        }
        let mut specials = Vec::new();
        for s in self.finite_specials() {
            match rational_mod(s, field) {
                Some(v) if specials.contains(&v) => return Some(format!("special point {s} collides mod p")),
                Some(v) => specials.push(v),
                None => return Some(format!("special point {s} is undefined mod p")),
            }
        }
        let d = disc.reduce(field);
        let rad = d.div_exact(&d.gcd(&d.derivative()));
        if rad.deg0() != specials.len() || specials.iter().any(|&v| d.eval(v) != 0) {
            return Some("base discriminant mod p has extra or merged roots".into());
        }
        let roots = match self.f_roots.roots() {
            Ok(r) => r,
            Err(e) => return Some(e.to_string()),
        };
        let mut fvals: Vec<u64> = Vec::new();
        for r in &roots {
            match rational_mod(r, field) {
                None => return Some(format!("f is not defined mod p (root {r})")),
                Some(v) if fvals.contains(&v) => return Some("f is not separable mod p".into()),
                Some(v) if specials.contains(&v) => return Some(format!("f vanishes at a special point (root {r})")),
                Some(v) => fvals.push(v),
            }
        }
        None
    }

    /// The primes `5 <= p <= up_to` excluded for this family, with reasons.
    pub fn excluded_primes(&self, up_to: u64) -> Vec<(u64, String)> {
        (5..=up_to).filter(|&p| is_prime(p)).filter_map(|p| self.exclusion(p).map(|r| (p, r))).collect()
    }

    /// `f` over `F_p`; the caller must have checked the exclusion first.
    pub fn f_mod(&self, field: PrimeField) -> Result<Poly> {
        let mut f = Poly::one(field);
        for r in self.f_roots.roots()? {
            let v = rational_mod(&r, field).ok_or(Error::Precondition(format!("root {r} undefined mod p")))?;
            f = f.mul(&Poly::linear(field, v));
        }
        Ok(f)
    }

    pub fn base_curve(&self, field: PrimeField) -> Result<WeierstrassCurve> {
        WeierstrassCurve::new(self.base.0.reduce(field), self.base.1.reduce(field), self.base.2.reduce(field))
    }

    fn check_prime(&self, p: u64) -> Result<PrimeField> {
        if let Some(reason) = self.exclusion(p) {
            return Err(Error::ExcludedPrime { family: self.name.clone(), p, reason });
        }
        PrimeField::new(p)
    }

    /// `W(F_p)`: the `w` with `beta(w) != 0` and `Delta(h(w)) != 0`, paired with `h(w)`.
    pub fn w_set(&self, p: u64) -> Result<Vec<(u64, u64)>> {
        let field = self.check_prime(p)?;
        let disc = self.base_curve(field)?.discriminant().clone();
        let f = self.f_mod(field)?;
        Ok((0..p)
            .filter_map(|w| self.h.eval_mod(field, w).map(|m| (w, m)))
            .filter(|&(_, m)| disc.eval(m) != 0 && f.eval(m) != 0)
            .collect())
    }

    /// The member at `w`.
    pub fn instantiate(&self, p: u64, w: u64) -> Result<Instance> {
        let field = self.check_prime(p)?;
        let w = w % p;
        let m = self.h.eval_mod(field, w).ok_or(Error::NotInW { w, p })?;
        self.instantiate_at_m(field, w, m)
    }

    /// The twist by `(t - m) f` for an arbitrary `m` with `Delta(m) != 0`.
    pub fn instantiate_at_m(&self, field: PrimeField, w: u64, m: u64) -> Result<Instance> {
        let p = field.p();
        let base = self.base_curve(field)?;
        let f = self.f_mod(field)?;
        if base.discriminant().eval(m) == 0 || f.eval(m) == 0 {
            return Err(Error::NotInW { w, p });
        }
        let twist = Poly::linear(field, m).mul(&f);
        let curve = base.twist_by(&twist)?;
        curve.ensure_nonisotrivial()?;
        Ok(Instance { p, w, m, curve, twist })
    }

    /// Evaluates each factor of the root-number law at `m`; `None` when a
    /// factor vanishes or is undefined mod `p`.
    pub fn epsilon_law_value(&self, field: PrimeField, m: u64) -> Option<i8> {
        let law = self.epsilon_law.as_ref()?;
        let f = self.f_mod(field).ok()?;
        let mut value = law.sign;
        for fac in &law.factors {
            let mut v = rational_mod(&fac.coef, field)?;
            if let Some((a, b)) = &fac.linear {
                let lin = field.add(rational_mod(a, field)?, field.mul(rational_mod(b, field)?, m));
                v = field.mul(v, lin);
            }
            if let Some(s) = &fac.f_at {
                v = field.mul(v, f.eval(rational_mod(s, field)?));
            }
            let l = field.legendre(v);
            if l == 0 {
                return None;
            }
            if fac.exp % 2 == 1 {
                value *= l;
            }
        }
        Some(value)
    }

    /// Whether `ell` is one of the primes the family's condition is stated for.
    pub fn ell_admissible(&self, ell: u64) -> bool {
        ell >= 5 && is_prime(ell) && !self.profile.script_l.is_multiple_of(ell) && self.ell_rule.admits(ell)
    }
}

/// Sanity check used when building specs.
fn ensure_h_degree(h: &RationalMap) -> Result<()> {
    if h.max_degree() > 4 || h.is_constant() {
        return Err(Error::Precondition(format!("h = {h} must be non-constant of degree at most 4")));
    }
    Ok(())
}

fn rat(a: i64, b: i64) -> BigRational {
    BigRational::new(a.into(), b.into())
}

fn one() -> BigRational {
    BigRational::one()
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn rational_map_normalizes_sign_and_content() {
        let h = RationalMap::from_i64(&[2, 4], &[-2]).unwrap();
        assert_eq!(h.alpha(), &ZPoly::from_i64(&[-1, -2]));
        assert_eq!(h.beta(), &ZPoly::from_i64(&[1]));
        assert!(RationalMap::from_i64(&[-1, 0, 1], &[-1, 1]).is_err());
        let f = PrimeField::new(7).unwrap();
        let g = RationalMap::from_i64(&[1], &[0, 1]).unwrap();
        assert_eq!(g.eval_mod(f, 0), None);
        assert_eq!(g.eval_mod(f, 3), Some(5));
    }

    #[test]
    fn w_set_drops_special_points_and_roots_of_f() {
        let spec = FamilySpec::build(FamilyId::Odd1Mod8, 1).unwrap();
        // h = u; the specials are 0 and 1, and f has roots 2..=5.
        let ws: Vec<u64> = spec.w_set(11).unwrap().into_iter().map(|(w, _)| w).collect();
        assert_eq!(ws, vec![6, 7, 8, 9, 10]);
        assert!(matches!(spec.instantiate(11, 3), Err(Error::NotInW { w: 3, p: 11 })));
        assert!(matches!(spec.instantiate(11, 0), Err(Error::NotInW { .. })));
    }

    #[test]
    fn instance_twists_by_the_linear_factor_times_f() {
        let spec = FamilySpec::build(FamilyId::Odd1Mod8, 1).unwrap();
        let inst = spec.instantiate(11, 7).unwrap();
        assert_eq!(inst.m, 7);
        assert_eq!(inst.twist.degree(), Some(5));
        for root in [2, 3, 4, 5, 7] {
            assert_eq!(inst.twist.eval(root), 0);
        }
        let disc = inst.curve.discriminant();
        assert_eq!(disc.eval(7), 0);
        assert_ne!(disc.eval(6), 0);
    }

    #[test]
    fn excluded_primes_are_rejected() {
        let spec = FamilySpec::build(FamilyId::Odd5Mod8, 1).unwrap();
        let excluded: Vec<u64> = spec.excluded_primes(13).into_iter().map(|(p, _)| p).collect();
        assert!(!excluded.is_empty());
        for p in excluded {
            assert!(matches!(spec.instantiate(p, 1), Err(Error::ExcludedPrime { .. })));
        }
        assert!(matches!(spec.w_set(3), Err(Error::ExcludedPrime { .. })));
        assert!(matches!(spec.w_set(9), Err(Error::ExcludedPrime { .. })));
    }

    #[test]
    fn ell_rule_restricts_admissible_primes() {
        let spec = FamilySpec::build(FamilyId::Case3FiveNonsquare, 2).unwrap();
        let ells: Vec<u64> = (5..60).filter(|&l| spec.ell_admissible(l)).collect();
        for l in &ells {
            let field = PrimeField::new(*l).unwrap();
            assert_eq!(field.legendre(5), -1);
            assert_eq!(field.legendre(2), 1);
            assert_eq!(field.legendre(3), 1);
        }
        assert!(!ells.is_empty());
        assert!(!spec.ell_admissible(5));
    }
}
