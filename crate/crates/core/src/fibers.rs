//! Frobenius traces of fibers `y^2 = x^3 + a x^2 + b x + c` over F_{p^d}.
//!
//! Small fields use the character sum. Larger ones find `#E` by baby-step
//! giant-step on random points of the curve and of its nonsquare twist,
//! using `#E + #E' = 2Q + 2` to pin the count down.

use crate::algebra::zech::{ZechField, ZERO};
use crate::algebra::{ExtField, Poly};
use crate::curves::{trace_charsum, FiberModel};
use num_integer::Integer;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

/// Field orders up to this use the character sum directly.
pub const CHARSUM_MAX: u64 = 1000;

/// Attempts (random points) before falling back to the character sum.
const MAX_POINTS: usize = 48;

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
struct Pt {
    x: u32,
    y: u32,
}

/// Curve coefficients as logs.
#[derive(Clone, Copy, Debug)]
struct Coeffs {
    a: u32,
    b: u32,
    c: u32,
}

/// Trace computations over one table-driven field.
pub struct FiberCounter<'a> {
    k: &'a ZechField,
    q: u64,
    lo: u64,
    hi: u64,
    primes: Vec<u64>,
    two: u32,
    three: u32,
}

fn isqrt(n: u64) -> u64 {
    let mut r = (n as f64).sqrt() as u64;
    while r * r > n {
        r -= 1;
    }
    while (r + 1) * (r + 1) <= n {
        r += 1;
    }
    r
}

fn primes_up_to(n: u64) -> Vec<u64> {
    let n = n as usize;
    let mut sieve = vec![true; n + 1];
    let mut out = Vec::new();
    for i in 2..=n {
        if sieve[i] {
            out.push(i as u64);
            let mut j = i * i;
            while j <= n {
                sieve[j] = false;
                j += i;
            }
        }
    }
    out
}

impl<'a> FiberCounter<'a> {
    pub fn new(k: &'a ZechField) -> Self {
        let q = k.order();
        let w = isqrt(4 * q);
        let (lo, hi) = (q + 1 - w, q + 1 + w);
        let primes = primes_up_to(isqrt(2 * hi) + 2);
        Self { k, q, lo, hi, primes, two: k.from_base(2), three: k.from_base(3) }
    }

    pub fn field(&self) -> &ZechField {
        self.k
    }

    #[inline]
    fn rhs(&self, cv: Coeffs, x: u32) -> u32 {
        let k = self.k;
        let t = k.add(x, cv.a);
        let t = k.add(k.mul(t, x), cv.b);
        k.add(k.mul(t, x), cv.c)
    }

    /// `-sum_x chi(f(x))`.
    pub fn trace_charsum(&self, a: u32, b: u32, c: u32) -> i64 {
        let cv = Coeffs { a, b, c };
        let mut s = self.k.chi(self.rhs(cv, ZERO)) as i64;
        for x in 0..self.k.group_order() {
            s += self.k.chi(self.rhs(cv, x)) as i64;
        }
        -s
    }

    /// Trace of Frobenius; `seed` fixes the random points used.
    pub fn trace(&self, a: u32, b: u32, c: u32, seed: u64) -> i64 {
        if self.q <= CHARSUM_MAX {
            return self.trace_charsum(a, b, c);
        }
        self.trace_bsgs(a, b, c, seed).unwrap_or_else(|| self.trace_charsum(a, b, c))
    }

    /// Baby-step giant-step with the twist; `None` if the count stays ambiguous.
    pub fn trace_bsgs(&self, a: u32, b: u32, c: u32, seed: u64) -> Option<i64> {
        let k = self.k;
        let nu = 1; // the generator, a nonsquare
        let curve = Coeffs { a, b, c };
        let twist = Coeffs { a: k.mul(a, nu), b: k.mul(b, k.mul(nu, nu)), c: k.mul(c, k.pow(nu, 3)) };
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let (mut l_curve, mut l_twist) = (1u64, 1u64);
        for i in 0..MAX_POINTS {
            let on_twist = i % 2 == 1;
            let cv = if on_twist { twist } else { curve };
            let p = self.random_point(cv, &mut rng);
            let mult = self.multiple_of_order(cv, p)?;
            let ord = self.exact_order(cv, p, mult);
            if on_twist {
                l_twist = l_twist.lcm(&ord);
            } else {
                l_curve = l_curve.lcm(&ord);
            }
            if let Some(n) = self.unique_count(l_curve, l_twist) {
                return Some(self.q as i64 + 1 - n as i64);
            }
        }
        None
    }

    fn unique_count(&self, l_curve: u64, l_twist: u64) -> Option<u64> {
        let total = 2 * self.q + 2;
        let (step, other, flip) =
            if l_curve >= l_twist { (l_curve, l_twist, false) } else { (l_twist, l_curve, true) };
        if (self.hi - self.lo) / step > 100_000 {
            return None;
        }
        let mut found = None;
        let mut m = self.lo.div_ceil(step) * step;
        while m <= self.hi {
            let n = if flip { total - m } else { m };
            let n_twist = total - n;
            let ok = if flip { n % other == 0 } else { n_twist.is_multiple_of(other) };
            if ok {
                if found.is_some() {
                    return None;
                }
                found = Some(n);
            }
            m += step;
        }
        found
    }

    fn random_point(&self, cv: Coeffs, rng: &mut ChaCha8Rng) -> Pt {
        loop {
            let x = rng.gen_range(0..self.k.group_order());
            let r = self.rhs(cv, x);
            if let Some(y) = self.k.sqrt(r) {
                return Pt { x, y };
            }
        }
    }

    fn double(&self, cv: Coeffs, p: Pt) -> Option<Pt> {
        let k = self.k;
        if p.y == ZERO {
            return None;
        }
        let x2 = k.square(p.x);
        let num = k.add(k.add(k.mul(self.three, x2), k.mul(self.two, k.mul(cv.a, p.x))), cv.b);
        let lam = k.div(num, k.mul(self.two, p.y));
        let x3 = k.sub(k.sub(k.square(lam), cv.a), k.mul(self.two, p.x));
        let y3 = k.sub(k.mul(lam, k.sub(p.x, x3)), p.y);
        Some(Pt { x: x3, y: y3 })
    }

    fn add(&self, cv: Coeffs, p: Option<Pt>, q: Option<Pt>) -> Option<Pt> {
        let (p, q) = match (p, q) {
            (None, q) => return q,
            (p, None) => return p,
            (Some(p), Some(q)) => (p, q),
        };
        let k = self.k;
        if p.x == q.x {
            return if p.y == q.y { self.double(cv, p) } else { None };
        }
        let lam = k.div(k.sub(q.y, p.y), k.sub(q.x, p.x));
        let x3 = k.sub(k.sub(k.sub(k.square(lam), cv.a), p.x), q.x);
        let y3 = k.sub(k.mul(lam, k.sub(p.x, x3)), p.y);
        Some(Pt { x: x3, y: y3 })
    }

    fn scalar(&self, cv: Coeffs, p: Pt, mut n: u64) -> Option<Pt> {
        let mut acc = None;
        let mut base = Some(p);
        while n > 0 {
            if n & 1 == 1 {
                acc = self.add(cv, acc, base);
            }
            n >>= 1;
            if n > 0 {
                base = base.and_then(|b| self.double(cv, b));
            }
        }
        acc
    }

    /// Some positive multiple of the order of `p`.
    fn multiple_of_order(&self, cv: Coeffs, p: Pt) -> Option<u64> {
        let m = isqrt((self.hi - self.lo) / 2) + 1;
        let mut baby: Vec<(u32, u32, u64)> = Vec::with_capacity(m as usize);
        let mut cur = Some(p);
        for j in 1..=m {
            match cur {
                None => return Some(j),
                Some(pt) => baby.push((pt.x, pt.y, j)),
            }
            cur = self.add(cv, cur, Some(p));
        }
        baby.sort_unstable();
        for w in baby.windows(2) {
            if w[0].0 == w[1].0 {
                let (j1, j2) = (w[0].2, w[1].2);
                return Some(if w[0].1 == w[1].1 { j1.abs_diff(j2) } else { j1 + j2 });
            }
        }
        let s = 2 * m + 1;
        let giant = self.scalar(cv, p, s);
        let mut centre = self.lo + m;
        let mut r = self.scalar(cv, p, centre);
        while centre <= self.hi + m {
            match r {
                None => return Some(centre),
                Some(pt) => {
                    if let Ok(i) = baby.binary_search_by(|e| e.0.cmp(&pt.x)) {
                        let (_, y, j) = baby[i];
                        return Some(if y == pt.y { centre - j } else { centre + j });
                    }
                }
            }
            r = self.add(cv, r, giant);
            centre += s;
        }
        None
    }

    fn exact_order(&self, cv: Coeffs, p: Pt, multiple: u64) -> u64 {
        debug_assert!(self.scalar(cv, p, multiple).is_none());
        let mut ord = multiple;
        let mut rest = multiple;
        let mut divisors = Vec::new();
        for &r in &self.primes {
            if r * r > rest {
                break;
            }
            if rest.is_multiple_of(r) {
                divisors.push(r);
                while rest.is_multiple_of(r) {
                    rest /= r;
                }
            }
        }
        if rest > 1 {
            divisors.push(rest);
        }
        for r in divisors {
            while ord.is_multiple_of(r) && self.scalar(cv, p, ord / r).is_none() {
                ord /= r;
            }
        }
        ord
    }
}

/// Trace of the fiber over the residue field of `pi`, given the residues of the
/// coefficients there (polynomials of degree below `deg pi`).
pub fn trace_over_residue_field(k: &ExtField, model: &FiberModel) -> i64 {
    if k.order() as u64 <= CHARSUM_MAX {
        return trace_charsum(k, model);
    }
    let zf = ZechField::new(k.base(), k.degree()).expect("residue field within table budget");
    let pi_logs = zf.poly_logs(k.modulus());
    let theta = (0..zf.group_order())
        .find(|&e| zf.eval_logs(&pi_logs, e) == ZERO)
        .expect("an irreducible of degree d has a root in F_{p^d}");
    let lift = |a: &Poly| zf.eval_logs(&zf.poly_logs(a), theta);
    FiberCounter::new(&zf).trace(lift(&model.a2), lift(&model.a4), lift(&model.a6), theta as u64)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::PrimeField;

    #[test]
    fn bsgs_matches_charsum() {
        for (p, d) in [(7u64, 4usize), (11, 3), (5, 5), (13, 3), (31, 2)] {
            let k = ZechField::new(PrimeField::new(p).unwrap(), d).unwrap();
            let fc = FiberCounter::new(&k);
            let n = k.group_order();
            let mut checked = 0;
            for s in 0..40u32 {
                let (a, b, c) = ((s * 7919) % n, (s * 104_729 + 5) % n, (s * 15_485_863 + 11) % n);
                let a = if s % 3 == 0 { ZERO } else { a };
                // Skip singular fibers (zero discriminant of the cubic).
                let sing = {
                    let m = |x, y| k.mul(x, y);
                    let s4 = k.from_base(4);
                    let t1 = m(m(a, a), m(b, b));
                    let t2 = m(k.neg(s4), m(m(b, b), b));
                    let t3 = m(k.neg(s4), m(m(m(a, a), a), c));
                    let t4 = m(k.neg(k.from_base(27)), m(c, c));
                    let t5 = m(k.from_base(18), m(m(a, b), c));
                    k.add(k.add(k.add(t1, t2), k.add(t3, t4)), t5) == ZERO
                };
                if sing {
                    continue;
                }
                let slow = fc.trace_charsum(a, b, c);
                let fast = fc.trace_bsgs(a, b, c, s as u64).expect("count determined");
                assert_eq!(fast, slow, "p={p} d={d} s={s}");
                assert!((fast * fast) as u64 <= 4 * k.order());
                checked += 1;
            }
            assert!(checked > 30);
        }
    }

    #[test]
    fn ext_and_zech_agree() {
        let f = PrimeField::new(7).unwrap();
        let k = ExtField::build(f, 2);
        let model = FiberModel { a2: k.element(3), a4: k.element(10), a6: k.element(22) };
        let zf = ZechField::new(f, 2).unwrap();
        let pi_logs = zf.poly_logs(k.modulus());
        let theta = (0..zf.group_order()).find(|&e| zf.eval_logs(&pi_logs, e) == ZERO).unwrap();
        let lift = |a: &Poly| zf.eval_logs(&zf.poly_logs(a), theta);
        let t = FiberCounter::new(&zf).trace_charsum(lift(&model.a2), lift(&model.a4), lift(&model.a6));
        assert_eq!(t, trace_charsum(&k, &model));
    }
}
