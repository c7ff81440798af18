//! Matrices over F_l, orthogonal spaces, reflections and spinor norms.

use crate::algebra::{square_class, PrimeField, SquareClass};
use crate::error::{Error, Result};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::Serialize;

/// A square matrix over F_l, row-major.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FlMatrix {
    field: PrimeField,
    n: usize,
    data: Vec<u64>,
}

impl FlMatrix {
    pub fn zero(field: PrimeField, n: usize) -> Self {
        Self { field, n, data: vec![0; n * n] }
    }

    pub fn identity(field: PrimeField, n: usize) -> Self {
        Self::scalar(field, n, 1)
    }

    pub fn scalar(field: PrimeField, n: usize, c: u64) -> Self {
        let mut m = Self::zero(field, n);
        for i in 0..n {
            m.set(i, i, c % field.p());
        }
        m
    }

    pub fn from_rows(field: PrimeField, rows: &[Vec<i64>]) -> Self {
        let n = rows.len();
        let mut m = Self::zero(field, n);
        for (i, r) in rows.iter().enumerate() {
            assert_eq!(r.len(), n, "matrix must be square");
            for (j, &v) in r.iter().enumerate() {
                m.set(i, j, field.from_i64(v));
            }
        }
        m
    }

    /// Companion matrix of `T^n + c[n-1] T^(n-1) + ... + c[0]`.
    pub fn companion(field: PrimeField, lower: &[u64]) -> Self {
        let n = lower.len();
        let mut m = Self::zero(field, n);
        for i in 1..n {
            m.set(i, i - 1, 1);
        }
        for (i, &c) in lower.iter().enumerate() {
            m.set(i, n - 1, field.neg(c % field.p()));
        }
        m
    }

    pub fn field(&self) -> PrimeField {
        self.field
    }

    pub fn dim(&self) -> usize {
        self.n
    }

    #[inline]
    pub fn get(&self, i: usize, j: usize) -> u64 {
        self.data[i * self.n + j]
    }

    #[inline]
    pub fn set(&mut self, i: usize, j: usize, v: u64) {
        self.data[i * self.n + j] = v;
    }

    pub fn rows(&self) -> Vec<Vec<u64>> {
        self.data.chunks(self.n).map(|r| r.to_vec()).collect()
    }

    pub fn mul(&self, o: &Self) -> Self {
        let f = self.field;
        let n = self.n;
        let mut m = Self::zero(f, n);
        for i in 0..n {
            for k in 0..n {
                let a = self.get(i, k);
                if a == 0 {
                    continue;
                }
                for j in 0..n {
                    let v = f.add(m.get(i, j), f.mul(a, o.get(k, j)));
                    m.set(i, j, v);
                }
            }
        }
        m
    }

    pub fn add(&self, o: &Self) -> Self {
        let f = self.field;
        Self { field: f, n: self.n, data: self.data.iter().zip(&o.data).map(|(&a, &b)| f.add(a, b)).collect() }
    }

    pub fn sub(&self, o: &Self) -> Self {
        let f = self.field;
        Self { field: f, n: self.n, data: self.data.iter().zip(&o.data).map(|(&a, &b)| f.sub(a, b)).collect() }
    }

    pub fn neg(&self) -> Self {
        let f = self.field;
        Self { field: f, n: self.n, data: self.data.iter().map(|&a| f.neg(a)).collect() }
    }

    pub fn transpose(&self) -> Self {
        let mut m = Self::zero(self.field, self.n);
        for i in 0..self.n {
            for j in 0..self.n {
                m.set(j, i, self.get(i, j));
            }
        }
        m
    }

    pub fn mul_vec(&self, v: &[u64]) -> Vec<u64> {
        let f = self.field;
        (0..self.n).map(|i| (0..self.n).fold(0, |acc, j| f.add(acc, f.mul(self.get(i, j), v[j])))).collect()
    }

    pub fn pow(&self, mut e: u64) -> Self {
        let mut r = Self::identity(self.field, self.n);
        let mut b = self.clone();
        while e > 0 {
            if e & 1 == 1 {
                r = r.mul(&b);
            }
            e >>= 1;
            if e > 0 {
                b = b.mul(&b);
            }
        }
        r
    }

    pub fn is_identity(&self) -> bool {
        *self == Self::identity(self.field, self.n)
    }

    /// Determinant by Gaussian elimination.
    pub fn det(&self) -> u64 {
        let f = self.field;
        let n = self.n;
        let mut a = self.data.clone();
        let mut det = 1u64;
        for c in 0..n {
            let Some(piv) = (c..n).find(|&r| a[r * n + c] != 0) else {
                return 0;
            };
            if piv != c {
                for j in 0..n {
                    a.swap(piv * n + j, c * n + j);
                }
                det = f.neg(det);
            }
            let pv = a[c * n + c];
            det = f.mul(det, pv);
            let inv = f.inv(pv);
            for r in c + 1..n {
                let factor = f.mul(a[r * n + c], inv);
                if factor == 0 {
                    continue;
                }
                for j in c..n {
                    a[r * n + j] = f.sub(a[r * n + j], f.mul(factor, a[c * n + j]));
                }
            }
        }
        det
    }

    /// Characteristic polynomial `det(T I - A)`, ascending coefficients (monic, length n + 1),
    /// via reduction to Hessenberg form.
    pub fn charpoly(&self) -> Vec<u64> {
        let f = self.field;
        let n = self.n;
        let mut h = self.clone();
        // Similarity transform to upper Hessenberg form.
        for c in 0..n.saturating_sub(2) {
            let Some(piv) = (c + 1..n).find(|&r| h.get(r, c) != 0) else {
                continue;
            };
            if piv != c + 1 {
                for j in 0..n {
                    let (x, y) = (h.get(piv, j), h.get(c + 1, j));
                    h.set(piv, j, y);
                    h.set(c + 1, j, x);
                }
                for i in 0..n {
                    let (x, y) = (h.get(i, piv), h.get(i, c + 1));
                    h.set(i, piv, y);
                    h.set(i, c + 1, x);
                }
            }
            let inv = f.inv(h.get(c + 1, c));
            for r in c + 2..n {
                let u = f.mul(h.get(r, c), inv);
                if u == 0 {
                    continue;
                }
                for j in 0..n {
                    let v = f.sub(h.get(r, j), f.mul(u, h.get(c + 1, j)));
                    h.set(r, j, v);
                }
                for i in 0..n {
                    let v = f.add(h.get(i, c + 1), f.mul(u, h.get(i, r)));
                    h.set(i, c + 1, v);
                }
            }
        }
        // Recurrence on leading principal submatrices.
        let mut polys: Vec<Vec<u64>> = vec![vec![1]];
        for k in 1..=n {
            let hkk = h.get(k - 1, k - 1);
            let prev = &polys[k - 1];
            let mut next = vec![0u64; k + 1];
            for (i, &c) in prev.iter().enumerate() {
                next[i + 1] = f.add(next[i + 1], c);
                next[i] = f.sub(next[i], f.mul(hkk, c));
            }
            let mut prod = 1u64;
            for i in 1..k {
                prod = f.mul(prod, h.get(k - i, k - i - 1));
                let coef = f.mul(prod, h.get(k - i - 1, k - 1));
                if coef == 0 {
                    continue;
                }
                for (j, &c) in polys[k - i - 1].iter().enumerate() {
                    next[j] = f.sub(next[j], f.mul(coef, c));
                }
            }
            polys.push(next);
        }
        polys.pop().unwrap()
    }
}

/// A vector space over F_l with a nondegenerate symmetric pairing.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct OrthogonalSpace {
    gram: FlMatrix,
}

/// Position of a matrix relative to `Omega(V) < SO(V) < O(V)`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum Membership {
    InOmega,
    InSoNotOmega,
    NotInSo { spin: SquareClass },
}

impl OrthogonalSpace {
    pub fn new(gram: FlMatrix) -> Result<Self> {
        if gram.transpose() != gram {
            return Err(Error::Precondition("Gram matrix must be symmetric".into()));
        }
        if gram.det() == 0 {
            return Err(Error::Precondition("Gram matrix must be nondegenerate".into()));
        }
        Ok(Self { gram })
    }

    /// A random nondegenerate symmetric Gram matrix.
    pub fn random(field: PrimeField, n: usize, rng: &mut impl Rng) -> Self {
        loop {
            let mut g = FlMatrix::zero(field, n);
            for i in 0..n {
                for j in i..n {
                    let v = rng.gen_range(0..field.p());
                    g.set(i, j, v);
                    g.set(j, i, v);
                }
            }
            if let Ok(s) = Self::new(g) {
                return s;
            }
        }
    }

    pub fn field(&self) -> PrimeField {
        self.gram.field()
    }

    pub fn dim(&self) -> usize {
        self.gram.dim()
    }

    pub fn gram(&self) -> &FlMatrix {
        &self.gram
    }

    pub fn pair(&self, u: &[u64], v: &[u64]) -> u64 {
        let f = self.field();
        let gv = self.gram.mul_vec(v);
        u.iter().zip(&gv).fold(0, |acc, (&a, &b)| f.add(acc, f.mul(a, b)))
    }

    /// `x -> x - 2<x,v>/<v,v> v`.
    #[allow(clippy::needless_range_loop)]
    pub fn reflection(&self, v: &[u64]) -> Result<FlMatrix> {
        let f = self.field();
        let n = self.dim();
        let vv = self.pair(v, v);
        if vv == 0 {
            return Err(Error::Isotropic);
        }
        let c = f.mul(2, f.inv(vv));
        let gv = self.gram.mul_vec(v);
        let mut m = FlMatrix::identity(f, n);
        for i in 0..n {
            for j in 0..n {
                let val = f.sub(m.get(i, j), f.mul(c, f.mul(v[i], gv[j])));
                m.set(i, j, val);
            }
        }
        Ok(m)
    }

    pub fn is_orthogonal(&self, a: &FlMatrix) -> bool {
        a.transpose().mul(&self.gram).mul(a) == self.gram
    }

    /// Class of the Gram determinant.
    pub fn discriminant(&self) -> SquareClass {
        square_class(self.field(), self.gram.det()).expect("nondegenerate")
    }

    fn random_vector(&self, rng: &mut impl Rng) -> Vec<u64> {
        (0..self.dim()).map(|_| rng.gen_range(0..self.field().p())).collect()
    }

    /// A random element of O(V): a product of random reflections.
    pub fn random_orthogonal(&self, rng: &mut impl Rng) -> FlMatrix {
        let k = rng.gen_range(0..=2 * self.dim());
        let mut m = FlMatrix::identity(self.field(), self.dim());
        for _ in 0..k {
            let r = loop {
                if let Ok(r) = self.reflection(&self.random_vector(rng)) {
                    break r;
                }
            };
            m = r.mul(&m);
        }
        m
    }

    /// Spinor norm via the Wall form on `W = im(I - A)`: for `u = (I - A)x`,
    /// `v = (I - A)y` set `[u, v] = <u, y>`. The result is the class of
    /// `2^dim W * det[ , ]`, normalised so a reflection in `v` has norm `<v, v>`.
    pub fn spinor_norm(&self, a: &FlMatrix) -> Result<SquareClass> {
        if !self.is_orthogonal(a) {
            return Err(Error::NotOrthogonal);
        }
        let f = self.field();
        let n = self.dim();
        let m = FlMatrix::identity(f, n).sub(a);
        let pivots = pivot_columns(&m);
        let k = pivots.len();
        if k == 0 {
            return Ok(SquareClass::Trivial);
        }
        // [M e_i, M e_j] = <M e_i, e_j> = (M^T G)_{ij}
        let b = m.transpose().mul(&self.gram);
        let mut wall = FlMatrix::zero(f, k);
        for (r, &i) in pivots.iter().enumerate() {
            for (c, &j) in pivots.iter().enumerate() {
                wall.set(r, c, b.get(i, j));
            }
        }
        square_class(f, f.mul(f.pow(2, k as u64), wall.det()))
    }

    /// Spinor norm by writing `A` as a product of reflections (Cartan-Dieudonne).
    /// Each round finds an anisotropic `x` that `A` fixes, or one whose
    /// displacement `Ax - x` is anisotropic (splitting off that reflection),
    /// and restricts to `x^perp`. If neither exists, `A` is a rotation whose
    /// displacements are all isotropic; one extra reflection flips that.
    pub fn spinor_norm_by_reflections(&self, a: &FlMatrix, seed: u64) -> Result<SquareClass> {
        if !self.is_orthogonal(a) {
            return Err(Error::NotOrthogonal);
        }
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let mut space = self.clone();
        let mut m = a.clone();
        let mut class = SquareClass::Trivial;
        let mut flips = 0;
        while !m.is_identity() {
            let f = space.field();
            let found = space.find_splitting_vector(&m, &mut rng);
            let x = match found {
                Some(x) => x,
                None => {
                    flips += 1;
                    if flips > space.dim() + 1 {
                        return Err(Error::Precondition("no splitting vector found".into()));
                    }
                    let u = space.random_anisotropic(&mut rng);
                    class = class * square_class(f, space.pair(&u, &u))?;
                    m = space.reflection(&u)?.mul(&m);
                    continue;
                }
            };
            let mx = m.mul_vec(&x);
            let w: Vec<u64> = mx.iter().zip(&x).map(|(&p, &q)| f.sub(p, q)).collect();
            if w.iter().any(|&c| c != 0) {
                class = class * square_class(f, space.pair(&w, &w))?;
                m = space.reflection(&w)?.mul(&m);
            }
            (space, m) = space.restrict_to_complement(&x, &m);
        }
        Ok(class)
    }

    fn random_anisotropic(&self, rng: &mut impl Rng) -> Vec<u64> {
        loop {
            let u = self.random_vector(rng);
            if self.pair(&u, &u) != 0 {
                return u;
            }
        }
    }

    /// An anisotropic `x` with `Ax = x` or `Ax - x` anisotropic.
    fn find_splitting_vector(&self, m: &FlMatrix, rng: &mut impl Rng) -> Option<Vec<u64>> {
        let f = self.field();
        let n = self.dim();
        let good = |x: &Vec<u64>| {
            if self.pair(x, x) == 0 {
                return false;
            }
            let mx = m.mul_vec(x);
            let w: Vec<u64> = mx.iter().zip(x).map(|(&p, &q)| f.sub(p, q)).collect();
            w.iter().all(|&c| c == 0) || self.pair(&w, &w) != 0
        };
        let basis = (0..n).map(|i| (0..n).map(|j| (i == j) as u64).collect::<Vec<_>>());
        if let Some(x) = basis.chain((0..64).map(|_| self.random_vector(rng))).find(|x| good(x)) {
            return Some(x);
        }
        // Exhaust small spaces before declaring the exceptional case.
        let total = (f.p() as u128).checked_pow(n as u32).unwrap_or(u128::MAX);
        if total > 1 << 20 {
            return None;
        }
        (1..total as u64).map(|mut idx| {
            (0..n).map(|_| {
                let d = idx % f.p();
                idx /= f.p();
                d
            }).collect::<Vec<u64>>()
        }).find(|x| good(x))
    }

    /// Restricts `m` (which must fix the anisotropic `x`) to `x^perp`,
    /// in coordinates of a basis of that hyperplane.
    fn restrict_to_complement(&self, x: &[u64], m: &FlMatrix) -> (Self, FlMatrix) {
        let f = self.field();
        let n = self.dim();
        let gx = self.gram.mul_vec(x);
        // Basis of {y : <y, gx> = 0}: solve for the coordinate at a nonzero entry of gx.
        let piv = gx.iter().position(|&c| c != 0).expect("x anisotropic, so gx != 0");
        let inv = f.inv(gx[piv]);
        let basis: Vec<Vec<u64>> = (0..n)
            .filter(|&j| j != piv)
            .map(|j| {
                let mut y = vec![0u64; n];
                y[j] = 1;
                y[piv] = f.neg(f.mul(gx[j], inv));
                y
            })
            .collect();
        let k = n - 1;
        let mut gram = FlMatrix::zero(f, k);
        for i in 0..k {
            for j in 0..k {
                gram.set(i, j, self.pair(&basis[i], &basis[j]));
            }
        }
        // Basis vector j has coordinate 1 at position j (skipping piv), so the
        // coordinates of a vector of x^perp are its entries off `piv`.
        let mut restricted = FlMatrix::zero(f, k);
        for (c, y) in basis.iter().enumerate() {
            let my = m.mul_vec(y);
            for (r, j) in (0..n).filter(|&j| j != piv).enumerate() {
                restricted.set(r, c, my[j]);
            }
        }
        (Self { gram }, restricted)
    }

    /// Spinor norm as the class of `2^n det(I + A)`.
    pub fn spinor_zassenhaus(&self, a: &FlMatrix) -> Result<SquareClass> {
        if !self.is_orthogonal(a) {
            return Err(Error::NotOrthogonal);
        }
        zassenhaus_class(a)
    }

    pub fn omega_membership(&self, a: &FlMatrix) -> Result<Membership> {
        let spin = self.spinor_norm(a)?;
        let det = a.det();
        Ok(if det == 1 {
            if spin.is_trivial() {
                Membership::InOmega
            } else {
                Membership::InSoNotOmega
            }
        } else {
            Membership::NotInSo { spin }
        })
    }
}

/// Indices of a maximal independent set of columns, by elimination.
#[allow(clippy::needless_range_loop)]
fn pivot_columns(m: &FlMatrix) -> Vec<usize> {
    let f = m.field();
    let n = m.dim();
    let mut a = m.rows();
    let mut pivots = Vec::new();
    let mut row = 0;
    for c in 0..n {
        let Some(p) = (row..n).find(|&r| a[r][c] != 0) else {
            continue;
        };
        a.swap(p, row);
        let inv = f.inv(a[row][c]);
        for r in row + 1..n {
            let u = f.mul(a[r][c], inv);
            if u != 0 {
                for j in c..n {
                    a[r][j] = f.sub(a[r][j], f.mul(u, a[row][j]));
                }
            }
        }
        pivots.push(c);
        row += 1;
    }
    pivots
}

/// Class of `2^n det(I + A)` for any square matrix with `det(I + A) != 0`.
pub fn zassenhaus_class(a: &FlMatrix) -> Result<SquareClass> {
    let f = a.field();
    let n = a.dim();
    let d = FlMatrix::identity(f, n).add(a).det();
    if d == 0 {
        return Err(Error::ZassenhausInapplicable);
    }
    square_class(f, f.mul(f.pow(2, n as u64), d))
}

/// Result of testing `A^e != I` over a set of exponents.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct OrderReport {
    pub pass: bool,
    /// Exponents for which the test failed.
    pub failures: Vec<u64>,
}

/// Passes iff `A^e != I` for every listed `e`.
pub fn order_excludes(a: &FlMatrix, exponents: &[u64]) -> OrderReport {
    let failures: Vec<u64> = exponents.iter().copied().filter(|&e| a.pow(e).is_identity()).collect();
    OrderReport { pass: failures.is_empty(), failures }
}

/// The weaker unipotence variant: fails at `e` when `A^e` has characteristic
/// polynomial `(T - 1)^n`.
pub fn order_excludes_charpoly(a: &FlMatrix, exponents: &[u64]) -> OrderReport {
    let f = a.field();
    let n = a.dim();
    let unipotent: Vec<u64> = {
        // (T - 1)^n, ascending
        let mut c = vec![1u64];
        for _ in 0..n {
            let mut next = vec![0u64; c.len() + 1];
            for (i, &x) in c.iter().enumerate() {
                next[i + 1] = f.add(next[i + 1], x);
                next[i] = f.sub(next[i], x);
            }
            c = next;
        }
        c
    };
    let failures: Vec<u64> = exponents.iter().copied().filter(|&e| a.pow(e).charpoly() == unipotent).collect();
    OrderReport { pass: failures.is_empty(), failures }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn f(p: u64) -> PrimeField {
        PrimeField::new(p).unwrap()
    }

    #[test]
    fn standard_reflection() {
        let k = f(7);
        let v = OrthogonalSpace::new(FlMatrix::identity(k, 3)).unwrap();
        let r = v.reflection(&[1, 0, 0]).unwrap();
        assert_eq!(r, FlMatrix::from_rows(k, &[vec![-1, 0, 0], vec![0, 1, 0], vec![0, 0, 1]]));
        assert_eq!(v.reflection(&[0, 0, 0]), Err(Error::Isotropic));
    }

    #[test]
    fn reflection_properties() {
        let mut rng = ChaCha8Rng::seed_from_u64(1);
        for p in [5u64, 7, 11] {
            let sp = OrthogonalSpace::random(f(p), 4, &mut rng);
            for _ in 0..20 {
                let v = sp.random_vector(&mut rng);
                let Ok(r) = sp.reflection(&v) else { continue };
                assert!(r.mul(&r).is_identity());
                assert_eq!(r.det(), p - 1);
                let rv = r.mul_vec(&v);
                assert!(rv.iter().zip(&v).all(|(&a, &b)| (a + b) % p == 0));
                assert!(sp.is_orthogonal(&r));
                let vv = sp.pair(&v, &v);
                assert_eq!(sp.spinor_norm(&r).unwrap(), square_class(f(p), vv).unwrap());
                assert!(matches!(sp.omega_membership(&r).unwrap(), Membership::NotInSo { .. }));
            }
        }
    }

    #[test]
    fn identity_and_minus_identity() {
        let mut rng = ChaCha8Rng::seed_from_u64(2);
        let sp = OrthogonalSpace::random(f(11), 5, &mut rng);
        let i = FlMatrix::identity(f(11), 5);
        assert_eq!(sp.spinor_norm(&i).unwrap(), SquareClass::Trivial);
        assert_eq!(sp.spinor_zassenhaus(&i).unwrap(), SquareClass::Trivial);
        assert_eq!(sp.omega_membership(&i).unwrap(), Membership::InOmega);
        assert_eq!(sp.spinor_norm(&i.neg()).unwrap(), sp.discriminant());
        assert_eq!(sp.spinor_zassenhaus(&i.neg()), Err(Error::ZassenhausInapplicable));
    }

    #[test]
    fn charpoly_of_companion() {
        let k = f(13);
        let c = [3u64, 0, 7, 1, 12];
        let m = FlMatrix::companion(k, &c);
        let mut expect = c.to_vec();
        expect.push(1);
        assert_eq!(m.charpoly(), expect);
        // Similar matrices share the characteristic polynomial.
        let p = FlMatrix::from_rows(k, &[
            vec![1, 2, 0, 0, 1],
            vec![0, 1, 3, 0, 0],
            vec![0, 0, 1, 4, 0],
            vec![5, 0, 0, 1, 0],
            vec![0, 6, 0, 0, 1],
        ]);
        let pinv = inverse(&p);
        assert_eq!(pinv.mul(&m).mul(&p).charpoly(), expect);
        assert_eq!(m.det(), k.mul(k.pow(12, 5), 3));
    }

    fn inverse(a: &FlMatrix) -> FlMatrix {
        // Cayley-Hamilton: A^-1 = -(A^(n-1) + c_{n-1} A^(n-2) + ... + c_1) / c_0
        let k = a.field();
        let n = a.dim();
        let cp = a.charpoly();
        let mut acc = FlMatrix::zero(k, n);
        for i in (1..=n).rev() {
            acc = acc.mul(a).add(&FlMatrix::scalar(k, n, cp[i]));
        }
        let s = k.neg(k.inv(cp[0]));
        acc.mul(&FlMatrix::scalar(k, n, s))
    }

    #[test]
    fn order_tests() {
        let k = f(7);
        let r = FlMatrix::from_rows(k, &[vec![0, 1], vec![1, 0]]);
        assert_eq!(order_excludes(&r, &[2, 3]).failures, vec![2]);
        let u = FlMatrix::from_rows(k, &[vec![1, 1], vec![0, 1]]);
        assert!(order_excludes(&u, &[2, 3]).pass);
        assert_eq!(order_excludes_charpoly(&u, &[2, 3]).failures, vec![2, 3]);
    }

    #[test]
    fn zassenhaus_agrees_with_decomposition() {
        let mut rng = ChaCha8Rng::seed_from_u64(3);
        let (mut stalled, mut total) = (0, 0);
        for p in [5u64, 7, 11, 13] {
            for n in 2..=6 {
                let sp = OrthogonalSpace::random(f(p), n, &mut rng);
                for _ in 0..50 {
                    let a = sp.random_orthogonal(&mut rng);
                    let b = sp.random_orthogonal(&mut rng);
                    let sa = sp.spinor_norm(&a).unwrap();
                    if let Ok(z) = sp.spinor_zassenhaus(&a) {
                        assert_eq!(z, sa, "p={p} n={n}");
                    }
                    match sp.spinor_norm_by_reflections(&a, 9) {
                        Ok(r) => assert_eq!(r, sa, "p={p} n={n}"),
                        Err(_) => stalled += 1,
                    }
                    total += 1;
                    assert_eq!(sp.spinor_norm(&a.mul(&b)).unwrap(), sa * sp.spinor_norm(&b).unwrap());
                }
            }
        }
        assert_eq!(stalled, 0, "{stalled} of {total} decompositions stalled");
    }
}
