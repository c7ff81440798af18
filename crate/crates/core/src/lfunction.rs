//! Global invariants, the L-function polynomial and the checks built on it.
//!
//! Coefficients come from the power sums `c_r = sum_x deg(x) * (alpha_x^(r/deg x) + ...)`
//! over places of degree dividing `r`, turned into `L` by Newton's identities.
//! Fiber traces of a base curve are tabulated once per prime and reused by
//! every quadratic twist `c (t - m) f(t)` of it.

use crate::algebra::zech::{ZechField, ZERO};
use crate::algebra::{square_class, Poly, PrimeField, SquareClass};
use crate::curves::WeierstrassCurve;
use crate::error::{Error, Result};
use crate::fibers::FiberCounter;
use crate::orthogonal::FlMatrix;
use crate::places::{enumerate_places, Place};
use crate::reduction::{discriminant_places, local_reduce, Kodaira, LocalReductionData, ReductionType};
use num_bigint::{BigInt, BigUint};
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};
use rayon::prelude::*;
use serde::ser::SerializeStruct;
use serde::{Serialize, Serializer};
use std::collections::BTreeMap;

/// Largest field order tabulated by default when expanding L.
pub const DEFAULT_BUDGET: u64 = 2_000_000;

/// `N, chi, gamma, script L, B, c_E, epsilon` and the Kodaira multiset.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct GlobalInvariants {
    pub q: u64,
    pub n: usize,
    pub chi: i64,
    pub gamma: BigUint,
    pub script_l: u64,
    pub b: i64,
    pub c: BigUint,
    pub epsilon: i8,
    /// Bad fibers as `(symbol, total degree)`, sorted by symbol.
    pub kod: Vec<(Kodaira, usize)>,
}

impl Serialize for GlobalInvariants {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        let mut st = s.serialize_struct("GlobalInvariants", 9)?;
        st.serialize_field("q", &self.q)?;
        st.serialize_field("N", &self.n)?;
        st.serialize_field("chi", &self.chi)?;
        st.serialize_field("gamma", &self.gamma.to_string())?;
        st.serialize_field("script_L", &self.script_l)?;
        st.serialize_field("B", &self.b)?;
        st.serialize_field("c_E", &self.c.to_string())?;
        st.serialize_field("epsilon", &self.epsilon)?;
        let kod: Vec<(String, usize)> = self.kod.iter().map(|(k, d)| (k.to_string(), *d)).collect();
        st.serialize_field("kod", &kod)?;
        st.end()
    }
}

impl GlobalInvariants {
    /// Assembles the invariants from local data covering every bad place.
    pub fn from_places(q: u64, places: &[LocalReductionData]) -> Result<Self> {
        let mut sum_f = 0i64;
        let mut sum_e = 0u64;
        let mut gamma = BigUint::one();
        let mut c = BigUint::one();
        let mut lambda_primes = std::collections::BTreeSet::new();
        let mut b = 0i64;
        let mut epsilon = 1i8;
        let mut kod: BTreeMap<Kodaira, usize> = BTreeMap::new();
        for x in places {
            let d = x.degree;
            sum_f += (x.row.f as usize * d) as i64;
            sum_e += x.row.e as u64 * d as u64;
            gamma *= BigUint::from(x.row.gamma).pow(d as u32);
            c *= BigUint::from(x.tamagawa);
            for ell in crate::algebra::prime_factors(x.row.lambda as u64) {
                if ell >= 5 {
                    lambda_primes.insert(ell);
                }
            }
            if !x.place.is_infinity() {
                b += (x.row.b as usize * d) as i64;
            }
            epsilon *= x.root_factor;
            if !x.kodaira.is_good() {
                *kod.entry(x.kodaira).or_default() += d;
            }
        }
        if !sum_e.is_multiple_of(12) {
            return Err(Error::NonIntegralChi(sum_e));
        }
        let n = sum_f - 4;
        if n < 0 {
            return Err(Error::Precondition(format!("conductor degree {sum_f} below 4")));
        }
        Ok(Self {
            q,
            n: n as usize,
            chi: (sum_e / 12) as i64,
            gamma,
            script_l: lambda_primes.iter().product(),
            b,
            c,
            epsilon,
            kod: kod.into_iter().collect(),
        })
    }
}

/// Local data at every bad place together with the invariants.
pub fn global_invariants(curve: &WeierstrassCurve) -> Result<GlobalInvariants> {
    curve.ensure_nonisotrivial()?;
    GlobalInvariants::from_places(curve.field().p(), &discriminant_places(curve)?)
}

/// `L(T) = sum a_i T^i` with `a_0 = 1`, over the constant field F_q.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct LFunctionPoly {
    q: u64,
    coeffs: Vec<BigInt>,
}

impl Serialize for LFunctionPoly {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        let mut st = s.serialize_struct("LFunctionPoly", 3)?;
        st.serialize_field("q", &self.q)?;
        st.serialize_field("degree", &self.degree())?;
        let c: Vec<String> = self.coeffs.iter().map(|a| a.to_string()).collect();
        st.serialize_field("coefficients", &c)?;
        st.end()
    }
}

impl LFunctionPoly {
    pub fn new(q: u64, coeffs: Vec<BigInt>) -> Result<Self> {
        if coeffs.first() != Some(&BigInt::one()) {
            return Err(Error::Precondition("L must have constant term 1".into()));
        }
        Ok(Self { q, coeffs })
    }

    pub fn from_i64(q: u64, coeffs: &[i64]) -> Result<Self> {
        Self::new(q, coeffs.iter().map(|&a| BigInt::from(a)).collect())
    }

    pub fn q(&self) -> u64 {
        self.q
    }

    /// Degree as stored (trailing zeros are kept so the degree stays `N`).
    pub fn degree(&self) -> usize {
        self.coeffs.len() - 1
    }

    pub fn coeffs(&self) -> &[BigInt] {
        &self.coeffs
    }

    pub fn coeff(&self, i: usize) -> &BigInt {
        &self.coeffs[i]
    }

    /// Coefficients of `L(T/q)`.
    pub fn normalized(&self) -> Vec<BigRational> {
        let q = BigInt::from(self.q);
        let mut den = BigInt::one();
        self.coeffs
            .iter()
            .map(|a| {
                let r = BigRational::new(a.clone(), den.clone());
                den *= &q;
                r
            })
            .collect()
    }

    /// `L(x/q)` for an integer `x`.
    pub fn value_at(&self, x: i64) -> BigRational {
        let mut acc = BigRational::zero();
        let mut pw = BigRational::one();
        let step = BigRational::new(BigInt::from(x), BigInt::from(self.q));
        for a in &self.coeffs {
            acc += &pw * BigRational::from_integer(a.clone());
            pw *= &step;
        }
        acc
    }

    /// `L(-T)`.
    pub fn reflect(&self) -> Self {
        let coeffs = self.coeffs.iter().enumerate().map(|(i, a)| if i % 2 == 1 { -a } else { a.clone() }).collect();
        Self { q: self.q, coeffs }
    }

    /// Coefficients of `L(T/q)` reduced mod `ell`.
    pub fn normalized_mod(&self, ell: u64) -> Result<Vec<u64>> {
        let f = PrimeField::new_any(ell)?;
        if self.q.is_multiple_of(ell) {
            return Err(Error::Precondition(format!("q is not invertible mod {ell}")));
        }
        let qinv = f.inv(self.q % ell);
        let mut pw = 1u64;
        Ok(self
            .coeffs
            .iter()
            .map(|a| {
                let r = f.mul(crate::algebra::square::bigint_mod(a, ell), pw);
                pw = f.mul(pw, qinv);
                r
            })
            .collect())
    }
}

impl std::fmt::Display for LFunctionPoly {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        let mut first = true;
        for (i, a) in self.coeffs.iter().enumerate() {
            if a.is_zero() {
                continue;
            }
            let mag = a.abs();
            let sign = if a.is_negative() { "-" } else { "+" };
            if first {
                if a.is_negative() {
                    write!(f, "-")?;
                }
            } else {
                write!(f, " {sign} ")?;
            }
            first = false;
            match i {
                0 => write!(f, "{mag}")?,
                _ => {
                    if !mag.is_one() {
                        write!(f, "{mag}")?;
                    }
                    write!(f, "T")?;
                    if i > 1 {
                        write!(f, "^{i}")?;
                    }
                }
            }
        }
        if first {
            write!(f, "0")?;
        }
        Ok(())
    }
}

/// A quadratic twist `c * (t - m)` (or just `c`) applied on top of a table's base.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct TwistSpec {
    pub constant: u64,
    pub root: Option<u64>,
}

impl TwistSpec {
    pub const IDENTITY: Self = Self { constant: 1, root: None };

    pub fn at(m: u64) -> Self {
        Self { constant: 1, root: Some(m) }
    }
}

/// Fiber traces of one level `F_{p^d}`, one entry per closed point of degree `d`
/// where the base and the auxiliary factor are both nonzero.
#[derive(Clone, Debug)]
struct Level {
    degree: usize,
    /// Trace of the base at the point, times the character of the factor.
    traces: Vec<i32>,
    /// Per entry, `words` bitset words: bit `m` set when `theta - m` is a square.
    squares: Vec<u64>,
    /// Same layout: bit `m` set when `theta = m` (degree one only).
    zeros: Vec<u64>,
}

/// Shared traces of `base` twisted by `factor`, for all points up to some degree.
#[derive(Clone, Debug)]
pub struct TraceTable {
    field: PrimeField,
    base: WeierstrassCurve,
    factor: Poly,
    words: usize,
    levels: Vec<Level>,
}

/// Whether every coefficient was expanded or the top half came from the
/// functional equation.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum ExpansionMode {
    Full,
    Half,
}

/// How many levels to tabulate for a degree-`n` L-function.
pub fn plan_levels(p: u64, n: usize, budget: u64) -> (ExpansionMode, usize) {
    let fits = |r: usize| (p as u128).checked_pow(r as u32).is_some_and(|v| v <= budget as u128);
    if fits(n) {
        (ExpansionMode::Full, n)
    } else {
        (ExpansionMode::Half, (n / 2 + 1).min(n))
    }
}

/// A redundant coefficient compared against its functional-equation prediction.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct OverlapCheck {
    pub index: usize,
    pub direct: BigInt,
    pub predicted: BigInt,
}

impl Serialize for OverlapCheck {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        let mut st = s.serialize_struct("OverlapCheck", 3)?;
        st.serialize_field("index", &self.index)?;
        st.serialize_field("direct", &self.direct.to_string())?;
        st.serialize_field("predicted", &self.predicted.to_string())?;
        st.end()
    }
}

#[derive(Clone, Debug, Serialize)]
pub struct LFunctionResult {
    pub poly: LFunctionPoly,
    pub mode: ExpansionMode,
    /// Empty in full mode.
    pub overlap: Vec<OverlapCheck>,
}

impl LFunctionResult {
    pub fn overlap_ok(&self) -> bool {
        self.overlap.iter().all(|c| c.direct == c.predicted)
    }
}

const CHUNK: usize = 2048;

impl TraceTable {
    pub fn new(base: WeierstrassCurve, factor: Poly) -> Result<Self> {
        if factor.is_zero() {
            return Err(Error::ZeroPolynomial);
        }
        let field = base.field();
        let words = (field.p() as usize).div_ceil(64);
        Ok(Self { field, base, factor, words, levels: Vec::new() })
    }

    pub fn base(&self) -> &WeierstrassCurve {
        &self.base
    }

    pub fn factor(&self) -> &Poly {
        &self.factor
    }

    pub fn max_level(&self) -> usize {
        self.levels.len()
    }

    /// Tabulates every level up to `r`.
    pub fn ensure_levels(&mut self, r: usize, seed: u64) -> Result<()> {
        while self.levels.len() < r {
            let d = self.levels.len() + 1;
            let level = self.build_level(d, seed)?;
            self.levels.push(level);
        }
        Ok(())
    }

    fn build_level(&self, d: usize, seed: u64) -> Result<Level> {
        let zf = ZechField::new(self.field, d)?;
        let p = self.field.p();
        let logs = |f: &Poly| zf.poly_logs(f);
        let (a2, a4, a6) = (logs(self.base.a2()), logs(self.base.a4()), logs(self.base.a6()));
        let disc = logs(self.base.discriminant());
        let factor = logs(&self.factor);
        let roots: Vec<u32> = (0..p).map(|m| zf.from_base(m)).collect();
        let words = self.words;
        let reps = zf.orbit_representatives();
        let chunks: Vec<(Vec<i32>, Vec<u64>, Vec<u64>)> = reps
            .par_chunks(CHUNK)
            .map(|chunk| {
                let counter = FiberCounter::new(&zf);
                let mut traces = Vec::with_capacity(chunk.len());
                let mut squares = Vec::with_capacity(chunk.len() * words);
                let mut zeros = Vec::with_capacity(chunk.len() * words);
                for &theta in chunk {
                    if zf.eval_logs(&disc, theta) == ZERO {
                        continue;
                    }
                    let fv = zf.eval_logs(&factor, theta);
                    if fv == ZERO {
                        continue;
                    }
                    let (x, y, z) = (zf.eval_logs(&a2, theta), zf.eval_logs(&a4, theta), zf.eval_logs(&a6, theta));
                    let tr = counter.trace(x, y, z, seed ^ theta as u64);
                    traces.push((tr * zf.chi(fv) as i64) as i32);
                    let mut sq = vec![0u64; words];
                    let mut zr = vec![0u64; words];
                    for (m, &rm) in roots.iter().enumerate() {
                        match zf.chi(zf.sub(theta, rm)) {
                            1 => sq[m / 64] |= 1 << (m % 64),
                            0 => zr[m / 64] |= 1 << (m % 64),
                            _ => {}
                        }
                    }
                    squares.extend(sq);
                    zeros.extend(zr);
                }
                (traces, squares, zeros)
            })
            .collect();
        let mut level = Level { degree: d, traces: Vec::new(), squares: Vec::new(), zeros: Vec::new() };
        for (t, s, z) in chunks {
            level.traces.extend(t);
            level.squares.extend(s);
            level.zeros.extend(z);
        }
        Ok(level)
    }

    /// The twisted curve `base^(c (t - m) factor)`.
    pub fn curve(&self, spec: &TwistSpec) -> Result<WeierstrassCurve> {
        let mut d = self.factor.scale(spec.constant % self.field.p());
        if let Some(m) = spec.root {
            d = d.mul(&Poly::linear(self.field, m));
        }
        self.base.twist_by(&d)
    }

    /// Power sums `c_1..c_r` (index 0 unused) of the twist, given its local
    /// data at every place dividing its discriminant and at infinity.
    pub fn power_sums(&self, spec: &TwistSpec, local: &[LocalReductionData], r: usize) -> Result<Vec<i128>> {
        if self.levels.len() < r {
            return Err(Error::Precondition(format!("table has {} levels, {r} needed", self.levels.len())));
        }
        let p = self.field.p();
        let chi_c = self.field.legendre(spec.constant % p);
        if chi_c == 0 {
            return Err(Error::Precondition("twist constant must be nonzero".into()));
        }
        let mut c = vec![0i128; r + 1];
        for level in &self.levels[..r] {
            let d = level.degree;
            let sign = if d % 2 == 1 { chi_c as i64 } else { 1 };
            let q = (p as i128).pow(d as u32);
            let root_bit = spec.root.map(|m| ((m % p) as usize / 64, 1u64 << ((m % p) % 64)));
            for (i, &tr) in level.traces.iter().enumerate() {
                let s = match root_bit {
                    None => 1,
                    Some((w, bit)) => {
                        let at = i * self.words + w;
                        if level.zeros[at] & bit != 0 {
                            continue;
                        }
                        if level.squares[at] & bit != 0 {
                            1
                        } else {
                            -1
                        }
                    }
                };
                add_good(&mut c, d, (sign * s * tr as i64) as i128, q);
            }
        }
        for x in local {
            let d = x.degree;
            if d > r {
                continue;
            }
            if x.reduction_type == ReductionType::Good {
                add_good(&mut c, d, x.a_x as i128, (p as i128).pow(d as u32));
            } else {
                let mut s = 1i128;
                for k in 1..=r / d {
                    s *= x.a_x as i128;
                    c[d * k] += d as i128 * s;
                }
            }
        }
        Ok(c)
    }

    /// The L-function of a twist, expanding `levels` coefficients directly.
    pub fn lfunction(
        &self,
        spec: &TwistSpec,
        local: &[LocalReductionData],
        inv: &GlobalInvariants,
        mode: ExpansionMode,
    ) -> Result<LFunctionResult> {
        let n = inv.n;
        let r = match mode {
            ExpansionMode::Full => n,
            ExpansionMode::Half => (n / 2 + 1).min(n),
        };
        let c = self.power_sums(spec, local, r)?;
        let direct = newton(&c)?;
        if mode == ExpansionMode::Full || r == n {
            return Ok(LFunctionResult {
                poly: LFunctionPoly::new(inv.q, direct)?,
                mode: ExpansionMode::Full,
                overlap: Vec::new(),
            });
        }
        let (coeffs, overlap) = fill_by_functional_equation(&direct, n, inv.q, inv.epsilon);
        Ok(LFunctionResult { poly: LFunctionPoly::new(inv.q, coeffs)?, mode, overlap })
    }
}

/// Adds `d * (alpha^k + beta^k)` to `c[d k]` where `alpha + beta = a`, `alpha beta = q`.
#[inline]
fn add_good(c: &mut [i128], d: usize, a: i128, q: i128) {
    let r = c.len() - 1;
    let (mut prev, mut cur) = (2i128, a);
    let mut k = 1;
    while d * k <= r {
        c[d * k] += d as i128 * cur;
        let next = a * cur - q * prev;
        prev = cur;
        cur = next;
        k += 1;
    }
}

/// `r L_r = sum_{i=1}^r c_i L_{r-i}`, exactly.
fn newton(c: &[i128]) -> Result<Vec<BigInt>> {
    let r = c.len() - 1;
    let mut l = vec![BigInt::one()];
    for k in 1..=r {
        let mut s = BigInt::zero();
        for i in 1..=k {
            s += BigInt::from(c[i]) * &l[k - i];
        }
        let (quo, rem) = s.div_rem(&BigInt::from(k));
        if !rem.is_zero() {
            return Err(Error::Precondition(format!("power sums are not integral at degree {k}")));
        }
        l.push(quo);
    }
    Ok(l)
}

/// Completes `a_0..a_R` to degree `n` with `a_j = eps q^(2j - n) a_(n - j)`,
/// returning the redundant direct coefficients checked against the fill.
fn fill_by_functional_equation(direct: &[BigInt], n: usize, q: u64, eps: i8) -> (Vec<BigInt>, Vec<OverlapCheck>) {
    let r = direct.len() - 1;
    let qb = BigInt::from(q);
    let predict = |j: usize, a: &BigInt| -> BigInt {
        let v = a * qb.pow((2 * j - n) as u32);
        if eps < 0 {
            -v
        } else {
            v
        }
    };
    let mut coeffs: Vec<BigInt> = direct.to_vec();
    for j in r + 1..=n {
        let v = predict(j, &coeffs[n - j]);
        coeffs.push(v);
    }
    let mut overlap = Vec::new();
    for j in n.div_ceil(2)..=r {
        if 2 * j == n {
            // The middle coefficient satisfies a = eps a.
            let predicted = if eps < 0 { -direct[j].clone() } else { direct[j].clone() };
            overlap.push(OverlapCheck { index: j, direct: direct[j].clone(), predicted });
        } else {
            overlap.push(OverlapCheck { index: j, direct: direct[j].clone(), predicted: predict(j, &direct[n - j]) });
        }
    }
    (coeffs, overlap)
}

/// Options for [`lfunction`].
#[derive(Clone, Copy, Debug)]
pub struct LFunctionOptions {
    /// Largest `p^d` to tabulate; decides between full and half expansion.
    pub budget: u64,
    pub seed: u64,
    /// Forces a mode regardless of the budget.
    pub mode: Option<ExpansionMode>,
}

impl Default for LFunctionOptions {
    fn default() -> Self {
        Self { budget: DEFAULT_BUDGET, seed: 0x1f_u64, mode: None }
    }
}

/// Invariants and L-function of a single curve.
pub fn lfunction(curve: &WeierstrassCurve, opts: &LFunctionOptions) -> Result<(GlobalInvariants, LFunctionResult)> {
    curve.ensure_nonisotrivial()?;
    let local = discriminant_places(curve)?;
    let inv = GlobalInvariants::from_places(curve.field().p(), &local)?;
    let (mode, r) = match opts.mode {
        Some(ExpansionMode::Full) => (ExpansionMode::Full, inv.n),
        Some(ExpansionMode::Half) => (ExpansionMode::Half, (inv.n / 2 + 1).min(inv.n)),
        None => plan_levels(curve.field().p(), inv.n, opts.budget),
    };
    let mut table = TraceTable::new(curve.clone(), Poly::one(curve.field()))?;
    table.ensure_levels(r, opts.seed)?;
    let res = table.lfunction(&TwistSpec::IDENTITY, &local, &inv, mode)?;
    Ok((inv, res))
}

/// Degree-`n` truncation of the Euler product over all places of degree
/// at most `n`, each analysed by [`local_reduce`]. Slow; used as an oracle.
pub fn lfunction_naive(curve: &WeierstrassCurve, n: usize) -> Result<LFunctionPoly> {
    let field = curve.field();
    let p = field.p();
    let mut series = vec![BigInt::zero(); n + 1];
    series[0] = BigInt::one();
    for x in enumerate_places(field, n) {
        let data = local_reduce(curve, &x)?;
        let d = x.degree();
        let a = BigInt::from(data.a_x);
        let q = BigInt::from(p).pow(d as u32);
        // Multiply by 1 / (1 - a T^d + q T^2d) (or 1 / (1 - a T^d) at bad places).
        for i in d..=n {
            let mut v = &a * &series[i - d];
            if data.reduction_type == ReductionType::Good && i >= 2 * d {
                v -= &q * &series[i - 2 * d];
            }
            series[i] += v;
        }
    }
    LFunctionPoly::new(p, series)
}

/// Outcome of the functional-equation check.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct FunctionalEquationReport {
    pub pass: bool,
    pub epsilon: i8,
    /// Least `i` with `a_(N - i) q^(2i) != eps q^N a_i`.
    pub first_mismatch: Option<usize>,
}

/// Checks `T^N L(T^-1 / q) = eps L(T / q)` coefficientwise.
pub fn check_functional_equation(l: &LFunctionPoly, epsilon: i8) -> FunctionalEquationReport {
    let n = l.degree();
    let q = BigInt::from(l.q());
    let qn = q.pow(n as u32);
    let first_mismatch = (0..=n).find(|&i| {
        let lhs = &l.coeffs[n - i] * q.pow(2 * i as u32);
        let rhs = &qn * &l.coeffs[i] * epsilon as i64;
        lhs != rhs
    });
    FunctionalEquationReport { pass: first_mismatch.is_none(), epsilon, first_mismatch }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum BsdOutcome {
    Pass,
    Fail,
    Inapplicable,
}

/// The special value's square class against `q^(chi - 1) c_E`, mod `ell`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct BsdReport {
    pub ell: u64,
    pub outcome: BsdOutcome,
    /// `ell`-adic valuation parities of the special value and of the target.
    pub ell_parity: Option<(u32, u32)>,
    pub value_class: Option<SquareClass>,
    pub target_class: Option<SquareClass>,
}

fn check_ell(inv: &GlobalInvariants, ell: u64) -> Result<PrimeField> {
    let f = PrimeField::new(ell).map_err(|_| Error::BadPrime(ell))?;
    if inv.q.is_multiple_of(ell) || inv.script_l.is_multiple_of(ell) {
        return Err(Error::Precondition(format!("ell = {ell} divides 6 q script_L")));
    }
    Ok(f)
}

/// `(ell-adic valuation mod 2, class of the ell-free part)` of an integer.
fn ell_class(a: &BigInt, ell: u64) -> Result<(u32, SquareClass)> {
    let (v, unit) = crate::algebra::square::strip_even_power(a, ell);
    let f = PrimeField::new_any(ell)?;
    Ok((v % 2, square_class(f, crate::algebra::square::bigint_mod(&unit, ell))?))
}

/// Even powers of `ell` are rational squares, so both sides are compared
/// after stripping them; an odd leftover must occur on both sides.
pub fn bsd_square_class_check(inv: &GlobalInvariants, l: &LFunctionPoly, ell: u64) -> Result<BsdReport> {
    check_ell(inv, ell)?;
    let n = l.degree();
    let q = BigInt::from(inv.q);
    // q^N L(1/q) = sum a_i q^(N - i); its class times q^N is the class of L(1/q).
    let s: BigInt = l.coeffs.iter().enumerate().map(|(i, a)| a * q.pow((n - i) as u32)).sum();
    if s.is_zero() {
        return Ok(BsdReport { ell, outcome: BsdOutcome::Inapplicable, ell_parity: None, value_class: None, target_class: None });
    }
    let value = if n % 2 == 1 { s * &q } else { s };
    let q_exp = (inv.chi - 1).rem_euclid(2) as u32;
    let target = BigInt::from(inv.c.clone()) * q.pow(q_exp);
    let (vv, vc) = ell_class(&value, ell)?;
    let (tv, tc) = ell_class(&target, ell)?;
    let outcome = if vv == tv && vc == tc { BsdOutcome::Pass } else { BsdOutcome::Fail };
    Ok(BsdReport { ell, outcome, ell_parity: Some((vv, tv)), value_class: Some(vc), target_class: Some(tc) })
}

/// Companion matrix over F_ell of the monic normalization of `L(T/q)`.
pub fn frobenius_matrix_mod_ell(l: &LFunctionPoly, ell: u64) -> Result<FlMatrix> {
    let f = PrimeField::new(ell).map_err(|_| Error::BadPrime(ell))?;
    let c = l.normalized_mod(ell)?;
    let n = l.degree();
    let lead = c[n];
    if lead == 0 {
        return Err(Error::Precondition(format!("leading coefficient vanishes mod {ell}")));
    }
    let inv = f.inv(lead);
    let lower: Vec<u64> = c[..n].iter().map(|&a| f.mul(a, inv)).collect();
    Ok(FlMatrix::companion(f, &lower))
}

/// Scalar identities satisfied by a matrix realizing Frobenius mod `ell`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct FrobeniusReport {
    pub ell: u64,
    /// `det(T I - A)` equals the monic normalization of `L(T/q)`.
    pub charpoly_ok: bool,
    /// `det A = (-1)^N eps`.
    pub det_ok: bool,
    /// Class of `2^N det(I - A)` against `2^N q^(chi-1) c_E`; `None` when a side vanishes mod `ell`.
    pub minus_spin_ok: Option<bool>,
    /// Class of `2^N det(I + A)` against `2^N q^(chi-1) c_E gamma`.
    pub plus_spin_ok: Option<bool>,
}

impl FrobeniusReport {
    pub fn pass(&self) -> bool {
        self.charpoly_ok && self.det_ok && self.minus_spin_ok != Some(false) && self.plus_spin_ok != Some(false)
    }
}

pub fn frobenius_checks(inv: &GlobalInvariants, l: &LFunctionPoly, ell: u64) -> Result<FrobeniusReport> {
    let f = check_ell(inv, ell)?;
    let a = frobenius_matrix_mod_ell(l, ell)?;
    let n = l.degree();
    let c = l.normalized_mod(ell)?;
    let inv_lead = f.inv(c[n]);
    let monic: Vec<u64> = c.iter().map(|&x| f.mul(x, inv_lead)).collect();
    let charpoly_ok = a.charpoly() == monic;
    let sign = if n.is_multiple_of(2) { 1 } else { -1 } * inv.epsilon as i64;
    let det_ok = a.det() == f.from_i64(sign);
    let two_n = f.pow(2, n as u64);
    let qc = f.mul(f.pow(inv.q % ell, (inv.chi - 1).rem_euclid(2) as u64), crate::algebra::square::bigint_mod(&inv.c.clone().into(), ell));
    let compare = |d: u64, target: u64| -> Option<bool> {
        if d == 0 || target == 0 {
            return None;
        }
        let lhs = square_class(f, f.mul(two_n, d)).ok()?;
        let rhs = square_class(f, f.mul(two_n, target)).ok()?;
        Some(lhs == rhs)
    };
    let id = FlMatrix::identity(f, n);
    let minus_spin_ok = compare(id.sub(&a).det(), qc);
    let gamma = crate::algebra::square::bigint_mod(&inv.gamma.clone().into(), ell);
    let plus_spin_ok = compare(id.add(&a).det(), f.mul(qc, gamma));
    Ok(FrobeniusReport { ell, charpoly_ok, det_ok, minus_spin_ok, plus_spin_ok })
}

/// Numerator and denominator of a rational as `i128`, for compact display.
pub fn rational_parts(r: &BigRational) -> Option<(i128, i128)> {
    Some((r.numer().to_i128()?, r.denom().to_i128()?))
}

/// The place list used by [`global_invariants`], exposed for reporting.
pub fn bad_place_data(curve: &WeierstrassCurve) -> Result<Vec<LocalReductionData>> {
    discriminant_places(curve)
}

/// Places of degree one where the twist root may sit: `t = m` for `m` in F_p.
pub fn rational_places(field: PrimeField) -> impl Iterator<Item = Place> {
    (0..field.p()).map(move |a| Place::at(field, a))
}

#[cfg(test)]
mod tests {
    use super::*;

    fn f(p: u64) -> PrimeField {
        PrimeField::new(p).unwrap()
    }

    pub(crate) fn intro_base(p: u64) -> WeierstrassCurve {
        let k = f(p);
        let u = Poly::from_ints(k, &[-1, 0, 1]);
        WeierstrassCurve::new(Poly::zero(k), u.pow(3).scale(3), u.pow(5).scale(k.from_i64(-2))).unwrap()
    }

    fn ints(l: &LFunctionPoly) -> Vec<i64> {
        l.coeffs().iter().map(|a| a.to_i64().unwrap()).collect()
    }

    #[test]
    fn newton_recovers_known_polynomial() {
        // (1 - 2T)(1 - 3T) = exp(-sum (2^r + 3^r) T^r / r)
        let c: Vec<i128> = (0..=3).map(|r| if r == 0 { 0 } else { -(2i128.pow(r) + 3i128.pow(r)) }).collect();
        let l = newton(&c).unwrap();
        assert_eq!(l, vec![BigInt::from(1), BigInt::from(-5), BigInt::from(6), BigInt::from(0)]);
    }

    #[test]
    fn intro_invariants() {
        for (p, m) in [(5u64, 2u64), (7, 3), (11, 4)] {
            let e = intro_base(p).twist_by(&Poly::linear(f(p), m)).unwrap();
            let inv = global_invariants(&e).unwrap();
            assert_eq!((inv.n, inv.chi, inv.b, inv.script_l), (5, 3, 2, 1));
            assert_eq!(inv.gamma, BigUint::one());
        }
    }

    #[test]
    fn engine_matches_naive_product() {
        for (p, m) in [(5u64, 2u64), (5, 3)] {
            let e = intro_base(p).twist_by(&Poly::linear(f(p), m)).unwrap();
            let (inv, res) = lfunction(&e, &LFunctionOptions::default()).unwrap();
            assert_eq!(res.mode, ExpansionMode::Full);
            let naive = lfunction_naive(&e, inv.n).unwrap();
            assert_eq!(res.poly, naive, "p={p} m={m}");
            assert!(check_functional_equation(&res.poly, inv.epsilon).pass);
        }
    }

    #[test]
    fn half_mode_reproduces_full() {
        let e = intro_base(7).twist_by(&Poly::linear(f(7), 3)).unwrap();
        let full = lfunction(&e, &LFunctionOptions { mode: Some(ExpansionMode::Full), ..Default::default() }).unwrap().1;
        let half = lfunction(&e, &LFunctionOptions { mode: Some(ExpansionMode::Half), ..Default::default() }).unwrap().1;
        assert_eq!(half.mode, ExpansionMode::Half);
        assert!(!half.overlap.is_empty() && half.overlap_ok());
        assert_eq!(full.poly, half.poly);
    }

    #[test]
    fn shared_table_matches_direct_twist() {
        let p = 7;
        let mut table = TraceTable::new(intro_base(p), Poly::one(f(p))).unwrap();
        table.ensure_levels(5, 1).unwrap();
        for m in 2..=5 {
            for constant in [1u64, 3] {
                let spec = TwistSpec { constant, root: Some(m) };
                let e = table.curve(&spec).unwrap();
                let local = discriminant_places(&e).unwrap();
                let inv = GlobalInvariants::from_places(p, &local).unwrap();
                let shared = table.lfunction(&spec, &local, &inv, ExpansionMode::Full).unwrap();
                let (_, direct) = lfunction(&e, &LFunctionOptions::default()).unwrap();
                assert_eq!(shared.poly, direct.poly, "m={m} c={constant}");
            }
        }
    }

    #[test]
    fn functional_equation_edge_cases() {
        let one = LFunctionPoly::from_i64(5, &[1]).unwrap();
        assert!(check_functional_equation(&one, 1).pass);
        assert!(!check_functional_equation(&one, -1).pass);
        let good = LFunctionPoly::from_i64(5, &[1, -2, 1, -5, 250, -3125]).unwrap();
        assert!(check_functional_equation(&good, -1).pass);
        let bad = LFunctionPoly::from_i64(5, &[1, -2, 2, -5, 250, -3125]).unwrap();
        let r = check_functional_equation(&bad, -1);
        assert!(!r.pass);
        assert!(matches!(r.first_mismatch, Some(2) | Some(3)));
        assert_eq!(ints(&good.reflect()), vec![1, 2, 1, 5, 250, 3125]);
    }

    #[test]
    fn zero_special_value_is_inapplicable() {
        let inv = GlobalInvariants {
            q: 5,
            n: 1,
            chi: 1,
            gamma: BigUint::one(),
            script_l: 1,
            b: 0,
            c: BigUint::one(),
            epsilon: -1,
            kod: Vec::new(),
        };
        // 1 - 5T vanishes at T = 1/5.
        let l = LFunctionPoly::from_i64(5, &[1, -5]).unwrap();
        assert_eq!(bsd_square_class_check(&inv, &l, 7).unwrap().outcome, BsdOutcome::Inapplicable);
        assert!(bsd_square_class_check(&inv, &l, 5).is_err());
    }
}
