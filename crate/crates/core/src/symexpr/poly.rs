//! Sparse multivariate polynomials over the rationals.
//!
//! Terms live in a BTreeMap keyed by exponent vectors under graded
//! lexicographic order, so iteration order (and therefore printing) is
//! canonical. The gcd is computed exactly by a primitive
//! pseudo-remainder sequence, recursing on the coefficient ring; this
//! is what makes rational-function cancellation, and hence every zero
//! test in the engine, decisive.

use std::cmp::Ordering;
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};
use std::sync::Arc;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};

use super::rational::Rational;

/// An ordered set of coordinate names, shared by every polynomial and
/// expression built over it.
#[derive(Clone, Debug)]
pub struct CoordSet(Arc<Vec<String>>);

impl CoordSet {
    pub fn new<S: Into<String>>(names: Vec<S>) -> Self {
        CoordSet(Arc::new(names.into_iter().map(Into::into).collect()))
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn names(&self) -> &[String] {
        &self.0
    }

    pub fn name(&self, idx: usize) -> &str {
        &self.0[idx]
    }

    pub fn index_of(&self, name: &str) -> Option<usize> {
        self.0.iter().position(|n| n == name)
    }
}

impl PartialEq for CoordSet {
    fn eq(&self, other: &Self) -> bool {
        Arc::ptr_eq(&self.0, &other.0) || self.0 == other.0
    }
}

impl Eq for CoordSet {}

/// Exponent vector; entries align with the coordinate set.
#[derive(Clone, PartialEq, Eq, Hash, Debug)]
pub struct Monomial(pub Vec<u32>);

impl Monomial {
    pub fn unit(nvars: usize) -> Self {
        Monomial(vec![0; nvars])
    }

    pub fn var(nvars: usize, idx: usize) -> Self {
        let mut e = vec![0; nvars];
        e[idx] = 1;
        Monomial(e)
    }

    pub fn total_degree(&self) -> u32 {
        self.0.iter().sum()
    }

    pub fn is_unit(&self) -> bool {
        self.0.iter().all(|&e| e == 0)
    }

    fn mul(&self, other: &Monomial) -> Monomial {
        Monomial(
            self.0
                .iter()
                .zip(&other.0)
                // overflow is a hard error, never wraparound
                .map(|(a, b)| a.checked_add(*b).expect("monomial exponent overflow"))
                .collect(),
        )
    }

    fn divides(&self, other: &Monomial) -> bool {
        self.0.iter().zip(&other.0).all(|(a, b)| a <= b)
    }

    fn div(&self, other: &Monomial) -> Monomial {
        Monomial(self.0.iter().zip(&other.0).map(|(a, b)| a - b).collect())
    }
}

/// Graded lexicographic order: compare total degree first, then the
/// exponent vectors from the first (leftmost) coordinate.
impl Ord for Monomial {
    fn cmp(&self, other: &Self) -> Ordering {
        self.total_degree()
            .cmp(&other.total_degree())
            .then_with(|| {
                for (a, b) in self.0.iter().zip(&other.0) {
                    match a.cmp(b) {
                        Ordering::Equal => continue,
                        ord => return ord,
                    }
                }
                Ordering::Equal
            })
    }
}

impl PartialOrd for Monomial {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

#[derive(Clone, PartialEq, Eq)]
pub struct Polynomial {
    coords: CoordSet,
    /// Nonzero coefficients only, keyed by exponent vector.
    terms: std::collections::BTreeMap<Monomial, Rational>,
}

impl Polynomial {
    pub fn zero(coords: &CoordSet) -> Self {
        Polynomial {
            coords: coords.clone(),
            terms: Default::default(),
        }
    }

    pub fn constant(coords: &CoordSet, c: Rational) -> Self {
        let mut p = Polynomial::zero(coords);
        if !c.is_zero() {
            p.terms.insert(Monomial::unit(coords.len()), c);
        }
        p
    }

    pub fn one(coords: &CoordSet) -> Self {
        Polynomial::constant(coords, Rational::one())
    }

    pub fn from_int(coords: &CoordSet, n: i64) -> Self {
        Polynomial::constant(coords, Rational::from_int(n))
    }

    pub fn var(coords: &CoordSet, idx: usize) -> Self {
        assert!(idx < coords.len(), "coordinate index out of range");
        let mut p = Polynomial::zero(coords);
        p.terms
            .insert(Monomial::var(coords.len(), idx), Rational::one());
        p
    }

    pub fn coords(&self) -> &CoordSet {
        &self.coords
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn is_constant(&self) -> bool {
        self.terms.is_empty() || (self.terms.len() == 1 && self.terms.keys().next().unwrap().is_unit())
    }

    /// The value of a constant polynomial, if it is one.
    pub fn constant_value(&self) -> Option<Rational> {
        if self.is_zero() {
            Some(Rational::zero())
        } else if self.is_constant() {
            self.terms.values().next().cloned()
        } else {
            None
        }
    }

    pub fn num_terms(&self) -> usize {
        self.terms.len()
    }

    /// Terms in ascending graded-lex order.
    pub fn terms(&self) -> impl Iterator<Item = (&Monomial, &Rational)> {
        self.terms.iter()
    }

    pub fn total_degree(&self) -> Option<u32> {
        self.terms.keys().map(|m| m.total_degree()).max()
    }

    pub fn degree_in(&self, idx: usize) -> Option<u32> {
        self.terms.keys().map(|m| m.0[idx]).max()
    }

    pub fn uses_var(&self, idx: usize) -> bool {
        self.terms.keys().any(|m| m.0[idx] > 0)
    }

    /// Leading term under graded-lex order (largest monomial).
    pub fn leading(&self) -> Option<(&Monomial, &Rational)> {
        self.terms.iter().next_back()
    }

    pub fn leading_coeff(&self) -> Rational {
        self.leading().map(|(_, c)| c.clone()).unwrap_or_else(Rational::zero)
    }

    fn insert_term(&mut self, m: Monomial, c: Rational) {
        if c.is_zero() {
            return;
        }
        use std::collections::btree_map::Entry;
        match self.terms.entry(m) {
            Entry::Vacant(e) => {
                e.insert(c);
            }
            Entry::Occupied(mut e) => {
                let sum = &*e.get() + &c;
                if sum.is_zero() {
                    e.remove();
                } else {
                    *e.get_mut() = sum;
                }
            }
        }
    }

    fn assert_same_coords(&self, other: &Polynomial) {
        assert!(
            self.coords == other.coords,
            "polynomials over different coordinate sets"
        );
    }

    pub fn map_coeffs(&self, f: impl Fn(&Rational) -> Rational) -> Polynomial {
        let mut out = Polynomial::zero(&self.coords);
        for (m, c) in &self.terms {
            out.insert_term(m.clone(), f(c));
        }
        out
    }

    pub fn scale(&self, c: &Rational) -> Polynomial {
        if c.is_zero() {
            return Polynomial::zero(&self.coords);
        }
        self.map_coeffs(|x| x * c)
    }

    pub fn mul_monomial(&self, m: &Monomial, c: &Rational) -> Polynomial {
        let mut out = Polynomial::zero(&self.coords);
        for (mm, cc) in &self.terms {
            out.insert_term(mm.mul(m), cc * c);
        }
        out
    }

    pub fn pow(&self, exp: u32) -> Polynomial {
        let mut acc = Polynomial::one(&self.coords);
        for _ in 0..exp {
            acc = &acc * self;
        }
        acc
    }

    pub fn partial(&self, idx: usize) -> Polynomial {
        let mut out = Polynomial::zero(&self.coords);
        for (m, c) in &self.terms {
            let e = m.0[idx];
            if e == 0 {
                continue;
            }
            let mut reduced = m.clone();
            reduced.0[idx] = e - 1;
            out.insert_term(reduced, c * &Rational::from_int(e as i64));
        }
        out
    }

    pub fn eval(&self, point: &[Rational]) -> Rational {
        assert_eq!(point.len(), self.coords.len(), "point arity mismatch");
        let mut acc = Rational::zero();
        for (m, c) in &self.terms {
            let mut term = c.clone();
            for (idx, &e) in m.0.iter().enumerate() {
                if e > 0 {
                    term = &term * &point[idx].pow(e);
                }
            }
            acc = &acc + &term;
        }
        acc
    }

    /// Rational content: positive gcd of numerators over lcm of
    /// denominators. Zero polynomial has content zero.
    pub fn content(&self) -> Rational {
        if self.is_zero() {
            return Rational::zero();
        }
        let mut num_gcd = BigInt::zero();
        let mut den_lcm = BigInt::one();
        for c in self.terms.values() {
            num_gcd = num_gcd.gcd(c.numer());
            den_lcm = den_lcm.lcm(c.denom());
        }
        Rational::from_bigints(num_gcd, den_lcm)
    }

    /// Divides out the content and fixes the graded-lex leading
    /// coefficient positive. Returns `(unit_part, primitive)` with
    /// `self = unit_part * primitive`.
    pub fn primitive(&self) -> (Rational, Polynomial) {
        if self.is_zero() {
            return (Rational::one(), self.clone());
        }
        let mut c = self.content();
        if self.leading_coeff().is_negative() {
            c = -c;
        }
        let inv = c.recip();
        (c, self.map_coeffs(|x| x * &inv))
    }

    /// Exact division; `None` when `divisor` does not divide `self`.
    pub fn divide_exact(&self, divisor: &Polynomial) -> Option<Polynomial> {
        self.assert_same_coords(divisor);
        assert!(!divisor.is_zero(), "division by zero polynomial");
        let mut rem = self.clone();
        let mut quot = Polynomial::zero(&self.coords);
        let (dm, dc) = {
            let (m, c) = divisor.leading().unwrap();
            (m.clone(), c.clone())
        };
        while !rem.is_zero() {
            let (rm, rc) = {
                let (m, c) = rem.leading().unwrap();
                (m.clone(), c.clone())
            };
            if !dm.divides(&rm) {
                return None;
            }
            let qm = rm.div(&dm);
            let qc = &rc / &dc;
            quot.insert_term(qm.clone(), qc.clone());
            rem = &rem - &divisor.mul_monomial(&qm, &qc);
        }
        Some(quot)
    }

    /// Coefficients of `self` viewed as a univariate polynomial in
    /// coordinate `idx`; each value has that exponent cleared.
    fn coeffs_wrt(&self, idx: usize) -> std::collections::BTreeMap<u32, Polynomial> {
        let mut out: std::collections::BTreeMap<u32, Polynomial> = Default::default();
        for (m, c) in &self.terms {
            let e = m.0[idx];
            let mut rest = m.clone();
            rest.0[idx] = 0;
            out.entry(e)
                .or_insert_with(|| Polynomial::zero(&self.coords))
                .insert_term(rest, c.clone());
        }
        out.retain(|_, p| !p.is_zero());
        out
    }

    fn from_coeffs_wrt(
        coords: &CoordSet,
        idx: usize,
        coeffs: &std::collections::BTreeMap<u32, Polynomial>,
    ) -> Polynomial {
        let mut out = Polynomial::zero(coords);
        for (e, p) in coeffs {
            for (m, c) in &p.terms {
                let mut full = m.clone();
                full.0[idx] = full.0[idx].checked_add(*e).expect("monomial exponent overflow");
                out.insert_term(full, c.clone());
            }
        }
        out
    }

    /// Content with respect to one variable: the gcd of the
    /// coefficient polynomials.
    fn content_wrt(&self, idx: usize) -> Polynomial {
        let coeffs = self.coeffs_wrt(idx);
        let mut acc = Polynomial::zero(&self.coords);
        for p in coeffs.values() {
            acc = gcd(&acc, p);
            if acc.is_constant() && !acc.is_zero() {
                break;
            }
        }
        acc
    }

    /// Pseudo-remainder of `self` by `divisor` in variable `idx`.
    fn pseudo_rem(&self, divisor: &Polynomial, idx: usize) -> Polynomial {
        let db = divisor.degree_in(idx).expect("pseudo_rem by zero");
        let lead_b = divisor.coeffs_wrt(idx).remove(&db).unwrap();
        let mut rem = self.clone();
        loop {
            let da = match rem.degree_in(idx) {
                Some(d) if d >= db => d,
                _ => return rem,
            };
            let lead_a = rem.coeffs_wrt(idx).remove(&da).unwrap();
            // lead_b * rem - lead_a * x^(da-db) * divisor kills the leading term
            let mut shift = Monomial::unit(self.coords.len());
            shift.0[idx] = da - db;
            rem = &(&rem * &lead_b) - &(&lead_a * &divisor.mul_monomial(&shift, &Rational::one()));
        }
    }
}

/// Gcd over the rationals, unit-normalized: the result is primitive
/// with positive graded-lex leading coefficient (1 for constants).
pub fn gcd(a: &Polynomial, b: &Polynomial) -> Polynomial {
    a.assert_same_coords(b);
    if a.is_zero() {
        return b.primitive().1;
    }
    if b.is_zero() {
        return a.primitive().1;
    }
    if a.is_constant() || b.is_constant() {
        return Polynomial::one(a.coords());
    }
    // Main variable: the last coordinate used by either operand.
    let idx = (0..a.coords().len())
        .rev()
        .find(|&i| a.uses_var(i) || b.uses_var(i))
        .expect("non-constant polynomial uses no variable");

    if !a.uses_var(idx) {
        return gcd(a, &b.content_wrt(idx));
    }
    if !b.uses_var(idx) {
        return gcd(&a.content_wrt(idx), b);
    }

    let ca = a.content_wrt(idx);
    let cb = b.content_wrt(idx);
    let c = gcd(&ca, &cb);
    let mut pa = a.divide_exact(&ca).expect("content divides");
    let mut pb = b.divide_exact(&cb).expect("content divides");
    if pa.degree_in(idx) < pb.degree_in(idx) {
        std::mem::swap(&mut pa, &mut pb);
    }
    // Primitive pseudo-remainder sequence.
    while !pb.is_zero() {
        let r = pa.pseudo_rem(&pb, idx);
        pa = pb;
        pb = if r.is_zero() {
            r
        } else {
            let cr = r.content_wrt(idx);
            r.divide_exact(&cr).expect("content divides")
        };
    }
    let g = &c * &pa.primitive().1;
    g.primitive().1
}

impl Add for &Polynomial {
    type Output = Polynomial;
    fn add(self, rhs: &Polynomial) -> Polynomial {
        self.assert_same_coords(rhs);
        let mut out = self.clone();
        for (m, c) in &rhs.terms {
            out.insert_term(m.clone(), c.clone());
        }
        out
    }
}

impl Sub for &Polynomial {
    type Output = Polynomial;
    fn sub(self, rhs: &Polynomial) -> Polynomial {
        self.assert_same_coords(rhs);
        let mut out = self.clone();
        for (m, c) in &rhs.terms {
            out.insert_term(m.clone(), -c);
        }
        out
    }
}

impl Mul for &Polynomial {
    type Output = Polynomial;
    fn mul(self, rhs: &Polynomial) -> Polynomial {
        self.assert_same_coords(rhs);
        let mut out = Polynomial::zero(&self.coords);
        for (ma, ca) in &self.terms {
            for (mb, cb) in &rhs.terms {
                out.insert_term(ma.mul(mb), ca * cb);
            }
        }
        out
    }
}

impl Neg for &Polynomial {
    type Output = Polynomial;
    fn neg(self) -> Polynomial {
        self.map_coeffs(|c| -c)
    }
}

impl fmt::Debug for Polynomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", super::printer::poly_to_string(self))
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn coords() -> CoordSet {
        CoordSet::new(vec!["x", "y", "z"])
    }

    fn var(c: &CoordSet, name: &str) -> Polynomial {
        Polynomial::var(c, c.index_of(name).unwrap())
    }

    #[test]
    fn graded_lex_order() {
        // x^2 > x*y > y^2 > x > y > 1 with x before y
        let a = Monomial(vec![2, 0, 0]);
        let b = Monomial(vec![1, 1, 0]);
        let c = Monomial(vec![0, 2, 0]);
        let d = Monomial(vec![1, 0, 0]);
        assert!(a > b && b > c && c > d);
        assert!(d > Monomial::unit(3));
    }

    #[test]
    fn arithmetic_and_leading() {
        let cs = coords();
        let x = var(&cs, "x");
        let y = var(&cs, "y");
        let p = &(&x * &x) - &(&y * &y);
        assert_eq!(p.total_degree(), Some(2));
        assert_eq!(p.leading().unwrap().0, &Monomial(vec![2, 0, 0]));
        let q = &p + &(&y * &y);
        assert_eq!(q, &x * &x);
    }

    #[test]
    fn derivative_and_eval() {
        let cs = coords();
        let x = var(&cs, "x");
        let z = var(&cs, "z");
        // d/dz (x*z^2) = 2*x*z
        let p = &x * &(&z * &z);
        let dz = p.partial(2);
        assert_eq!(dz, (&x * &z).scale(&Rational::from_int(2)));
        assert!(p.partial(1).is_zero());
        let v = p.eval(&[Rational::from_int(3), Rational::one(), Rational::from_int(2)]);
        assert_eq!(v, Rational::from_int(12));
    }

    #[test]
    fn exact_division() {
        let cs = coords();
        let x = var(&cs, "x");
        let y = var(&cs, "y");
        let sum = &x + &y;
        let diff = &x - &y;
        let prod = &sum * &diff;
        assert_eq!(prod.divide_exact(&sum).unwrap(), diff);
        assert_eq!(prod.divide_exact(&diff).unwrap(), sum);
        assert!(sum.divide_exact(&diff).is_none());
    }

    #[test]
    fn gcd_univariate() {
        let cs = coords();
        let z = var(&cs, "z");
        let z2 = &z * &z;
        let g = gcd(&z2, &(&z2 * &z));
        assert_eq!(g, z2);
        let g2 = gcd(&z, &Polynomial::from_int(&cs, 5));
        assert_eq!(g2, Polynomial::one(&cs));
    }

    #[test]
    fn gcd_multivariate() {
        let cs = coords();
        let x = var(&cs, "x");
        let y = var(&cs, "y");
        // gcd(x^2 - y^2, x^2 + 2xy + y^2) = x + y
        let a = &(&x * &x) - &(&y * &y);
        let sum = &x + &y;
        let b = &sum * &sum;
        assert_eq!(gcd(&a, &b), sum);
        // sign normalization: gcd of negatives is still positive-leading
        let g = gcd(&-&a, &-&b);
        assert_eq!(g, &x + &y);
    }

    #[test]
    fn content_and_primitive() {
        let cs = coords();
        let x = var(&cs, "x");
        let p = &x.scale(&Rational::new(4, 3)) + &Polynomial::constant(&cs, Rational::new(2, 3));
        assert_eq!(p.content(), Rational::new(2, 3));
        let (u, prim) = p.primitive();
        assert_eq!(u, Rational::new(2, 3));
        assert_eq!(prim, &x.scale(&Rational::from_int(2)) + &Polynomial::one(&cs));
        let neg = -&p;
        let (u2, prim2) = neg.primitive();
        assert_eq!(u2, Rational::new(-2, 3));
        assert_eq!(prim2, prim);
    }
}
