//! Arithmetic in GF(q), q = p^m.
//!
//! Every field has one canonical representation so that codewords are
//! reproducible:
//!
//! - an element is an integer code in `[0, q)`; for `m > 1` its base-`p`
//!   digits are the polynomial-basis coordinates (digit `i` is the
//!   coefficient of `x^i`), for `m = 1` it is the residue itself;
//! - the modulus is the lexicographically smallest monic irreducible
//!   polynomial of degree `m`, comparing coefficients from the constant term
//!   upward;
//! - `alpha` is the smallest element code that generates the multiplicative
//!   group.
//!
//! Multiplication goes through log/antilog tables built once per field.

use std::fmt;
use std::sync::Arc;

use serde::ser::SerializeStruct;
use serde::{Serialize, Serializer};
use thiserror::Error;

/// Largest supported field order.
pub const MAX_ORDER: u64 = 1 << 16;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum GfError {
    #[error("{0} is not prime")]
    NotPrime(u64),
    #[error("field order {p}^{m} exceeds 2^16")]
    FieldTooLarge { p: u64, m: u32 },
    #[error("extension degree must be at least 1")]
    ZeroDegree,
    #[error("{0} is not a prime power")]
    NotPrimePower(u64),
    #[error("division by zero")]
    DivisionByZero,
    #[error("element code {code} does not belong to GF({q})")]
    FieldMismatch { code: u32, q: u32 },
}

/// A field element, stored as its canonical integer code.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize)]
#[serde(transparent)]
pub struct Element(u32);

impl Element {
    pub const ZERO: Element = Element(0);
    pub const ONE: Element = Element(1);

    /// Wraps a raw code. Range is only checked by [`Field::check`].
    pub const fn new(code: u32) -> Self {
        Element(code)
    }

    pub const fn code(self) -> u32 {
        self.0
    }

    pub const fn is_zero(self) -> bool {
        self.0 == 0
    }
}

impl fmt::Display for Element {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.0)
    }
}

struct Inner {
    p: u32,
    m: u32,
    q: u32,
    modulus: Vec<u32>,
    alpha: u32,
    // exp[i] = alpha^i for i in [0, 2(q-1)), so a product never needs a reduction.
    exp: Vec<u32>,
    log: Vec<u32>,
}

/// A finite field GF(p^m) in canonical representation.
///
/// Cloning is cheap; the tables are shared.
#[derive(Clone)]
pub struct Field {
    inner: Arc<Inner>,
}

impl fmt::Debug for Field {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("Field")
            .field("p", &self.inner.p)
            .field("m", &self.inner.m)
            .field("modulus", &self.inner.modulus)
            .field("alpha", &self.inner.alpha)
            .finish()
    }
}

impl PartialEq for Field {
    fn eq(&self, other: &Self) -> bool {
        self.inner.p == other.inner.p && self.inner.m == other.inner.m
    }
}

impl Eq for Field {}

pub fn is_prime(n: u64) -> bool {
    if n < 2 {
        return false;
    }
    let mut f = 2;
    while f * f <= n {
        if n % f == 0 {
            return false;
        }
        f += 1;
    }
    true
}

impl Field {
    /// Builds the canonical GF(p^m).
    pub fn new(p: u64, m: u32) -> Result<Self, GfError> {
        if !is_prime(p) {
            return Err(GfError::NotPrime(p));
        }
        if m == 0 {
            return Err(GfError::ZeroDegree);
        }
        let q = p
            .checked_pow(m)
            .filter(|&q| q <= MAX_ORDER)
            .ok_or(GfError::FieldTooLarge { p, m })?;
        let (p, q) = (p as u32, q as u32);

        let modulus = smallest_irreducible(p, m);
        let slow = SlowArith { p, m, modulus: &modulus };
        let alpha = (1..q)
            .find(|&a| slow.is_primitive(a, q))
            .expect("multiplicative group of a finite field is cyclic");

        let order = (q - 1) as usize;
        let mut exp = vec![0u32; 2 * order.max(1)];
        let mut log = vec![0u32; q as usize];
        let mut x = 1u32;
        for i in 0..order {
            exp[i] = x;
            log[x as usize] = i as u32;
            x = slow.mul(x, alpha);
        }
        for i in order..exp.len() {
            exp[i] = exp[i - order];
        }

        Ok(Field {
            inner: Arc::new(Inner { p, m, q, modulus, alpha, exp, log }),
        })
    }

    /// Builds the canonical field of order `q`, factoring `q = p^m`.
    pub fn with_order(q: u64) -> Result<Self, GfError> {
        if q < 2 {
            return Err(GfError::NotPrimePower(q));
        }
        let p = (2..=q).find(|f| q % f == 0).unwrap();
        let mut rest = q;
        let mut m = 0;
        while rest % p == 0 {
            rest /= p;
            m += 1;
        }
        if rest != 1 {
            return Err(GfError::NotPrimePower(q));
        }
        Field::new(p, m)
    }

    pub fn characteristic(&self) -> u32 {
        self.inner.p
    }

    pub fn degree(&self) -> u32 {
        self.inner.m
    }

    pub fn order(&self) -> u32 {
        self.inner.q
    }

    /// Modulus coefficients, constant term first; length `m + 1`, monic.
    pub fn modulus(&self) -> &[u32] {
        &self.inner.modulus
    }

    pub fn alpha(&self) -> Element {
        Element(self.inner.alpha)
    }

    /// Returns `e` if its code lies in `[0, q)`.
    pub fn check(&self, e: Element) -> Result<Element, GfError> {
        if e.0 < self.inner.q {
            Ok(e)
        } else {
            Err(GfError::FieldMismatch { code: e.0, q: self.inner.q })
        }
    }

    pub fn element(&self, code: u32) -> Result<Element, GfError> {
        self.check(Element(code))
    }

    #[inline]
    pub fn add(&self, a: Element, b: Element) -> Element {
        let Inner { p, m, .. } = *self.inner;
        if p == 2 {
            Element(a.0 ^ b.0)
        } else if m == 1 {
            Element((a.0 + b.0) % p)
        } else {
            Element(digitwise(p, m, a.0, b.0, |x, y| (x + y) % p))
        }
    }

    #[inline]
    pub fn neg(&self, a: Element) -> Element {
        let Inner { p, m, .. } = *self.inner;
        if p == 2 {
            a
        } else if m == 1 {
            Element((p - a.0) % p)
        } else {
            Element(digitwise(p, m, a.0, 0, |x, _| (p - x) % p))
        }
    }

    #[inline]
    pub fn sub(&self, a: Element, b: Element) -> Element {
        let Inner { p, m, .. } = *self.inner;
        if p == 2 {
            Element(a.0 ^ b.0)
        } else if m == 1 {
            Element((a.0 + p - b.0) % p)
        } else {
            Element(digitwise(p, m, a.0, b.0, |x, y| (x + p - y) % p))
        }
    }

    #[inline]
    pub fn mul(&self, a: Element, b: Element) -> Element {
        if a.0 == 0 || b.0 == 0 {
            return Element::ZERO;
        }
        let t = &*self.inner;
        Element(t.exp[(t.log[a.0 as usize] + t.log[b.0 as usize]) as usize])
    }

    pub fn inv(&self, a: Element) -> Result<Element, GfError> {
        if a.0 == 0 {
            return Err(GfError::DivisionByZero);
        }
        let t = &*self.inner;
        let order = t.q - 1;
        Ok(Element(t.exp[((order - t.log[a.0 as usize]) % order) as usize]))
    }

    pub fn div(&self, a: Element, b: Element) -> Result<Element, GfError> {
        Ok(self.mul(a, self.inv(b)?))
    }

    /// `a^e` for a non-negative exponent; `0^0 = 1`.
    #[inline]
    pub fn pow(&self, a: Element, e: u64) -> Element {
        if e == 0 {
            return Element::ONE;
        }
        if a.0 == 0 {
            return Element::ZERO;
        }
        let t = &*self.inner;
        let order = (t.q - 1) as u64;
        Element(t.exp[((t.log[a.0 as usize] as u64 * (e % order)) % order) as usize])
    }

    /// `a^e` for any integer exponent. Negative powers of zero are an error.
    pub fn powi(&self, a: Element, e: i64) -> Result<Element, GfError> {
        if e >= 0 {
            return Ok(self.pow(a, e as u64));
        }
        let order = (self.inner.q - 1) as i64;
        Ok(self.pow(self.inv(a)?, (-(e as i128)).rem_euclid(order as i128) as u64))
    }

    /// The canonical point enumeration: `0`, then `alpha^0 .. alpha^(q-2)`.
    pub fn elements(&self) -> Vec<Element> {
        let order = (self.inner.q - 1) as usize;
        std::iter::once(Element::ZERO)
            .chain(self.inner.exp[..order].iter().map(|&c| Element(c)))
            .collect()
    }

    /// Position of `e` in [`Field::elements`].
    pub fn element_index(&self, e: Element) -> usize {
        if e.0 == 0 {
            0
        } else {
            self.inner.log[e.0 as usize] as usize + 1
        }
    }
}

impl Serialize for Field {
    fn serialize<S: Serializer>(&self, serializer: S) -> Result<S::Ok, S::Error> {
        let mut s = serializer.serialize_struct("FieldSpec", 4)?;
        s.serialize_field("p", &self.inner.p)?;
        s.serialize_field("m", &self.inner.m)?;
        s.serialize_field("modulus", &self.inner.modulus)?;
        s.serialize_field("alpha", &self.inner.alpha)?;
        s.end()
    }
}

fn digitwise(p: u32, m: u32, mut a: u32, mut b: u32, op: impl Fn(u32, u32) -> u32) -> u32 {
    let mut out = 0;
    let mut place = 1;
    for _ in 0..m {
        out += op(a % p, b % p) * place;
        a /= p;
        b /= p;
        place *= p;
    }
    out
}

/// Polynomial arithmetic over GF(p) on coefficient vectors (constant term
/// first). Only used while building a field.
fn poly_rem(mut a: Vec<u32>, b: &[u32], p: u32) -> Vec<u32> {
    let db = b.len() - 1;
    debug_assert_eq!(b[db], 1, "divisor must be monic");
    while a.len() > db {
        let lead = a.pop().unwrap();
        if lead != 0 {
            let shift = a.len() - db;
            for (i, &c) in b[..db].iter().enumerate() {
                a[shift + i] = (a[shift + i] + (p - lead) * c % p) % p;
            }
        }
    }
    a
}

fn is_irreducible(f: &[u32], p: u32) -> bool {
    let deg = f.len() - 1;
    for dg in 1..=deg / 2 {
        for idx in 0..(p as usize).pow(dg as u32) {
            let mut g: Vec<u32> = (0..dg).map(|i| ((idx / (p as usize).pow(i as u32)) % p as usize) as u32).collect();
            g.push(1);
            if poly_rem(f.to_vec(), &g, p).iter().all(|&c| c == 0) {
                return false;
            }
        }
    }
    true
}

fn smallest_irreducible(p: u32, m: u32) -> Vec<u32> {
    let total = (p as u64).pow(m);
    for t in 0..total {
        // c_0 is the most significant digit of t: lexicographic, constant term first.
        let mut f: Vec<u32> = (0..m)
            .map(|i| ((t / (p as u64).pow(m - 1 - i)) % p as u64) as u32)
            .collect();
        f.push(1);
        if is_irreducible(&f, p) {
            return f;
        }
    }
    unreachable!("irreducible polynomials exist in every degree")
}

struct SlowArith<'a> {
    p: u32,
    m: u32,
    modulus: &'a [u32],
}

impl SlowArith<'_> {
    fn digits(&self, a: u32) -> Vec<u32> {
        let mut a = a;
        (0..self.m)
            .map(|_| {
                let d = a % self.p;
                a /= self.p;
                d
            })
            .collect()
    }

    fn mul(&self, a: u32, b: u32) -> u32 {
        let (da, db) = (self.digits(a), self.digits(b));
        let mut prod = vec![0u32; 2 * self.m as usize - 1];
        for (i, &x) in da.iter().enumerate() {
            for (j, &y) in db.iter().enumerate() {
                prod[i + j] = (prod[i + j] + x * y) % self.p;
            }
        }
        let r = poly_rem(prod, self.modulus, self.p);
        r.iter().rev().fold(0, |acc, &c| acc * self.p + c)
    }

    fn pow(&self, a: u32, mut e: u64) -> u32 {
        let (mut base, mut acc) = (a, 1);
        while e > 0 {
            if e & 1 == 1 {
                acc = self.mul(acc, base);
            }
            base = self.mul(base, base);
            e >>= 1;
        }
        acc
    }

    fn is_primitive(&self, a: u32, q: u32) -> bool {
        let order = (q - 1) as u64;
        if self.pow(a, order) != 1 {
            return false;
        }
        let mut rest = order;
        let mut f = 2;
        while rest > 1 {
            if rest % f == 0 {
                if self.pow(a, order / f) == 1 {
                    return false;
                }
                while rest % f == 0 {
                    rest /= f;
                }
            }
            f += 1;
        }
        true
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn e(c: u32) -> Element {
        Element::new(c)
    }

    #[test]
    fn gf5_canonical() {
        let f = Field::new(5, 1).unwrap();
        assert_eq!(f.order(), 5);
        assert_eq!(f.alpha(), e(2));
        assert_eq!(f.mul(e(3), e(4)), e(2));
        assert_eq!(f.elements(), vec![e(0), e(1), e(2), e(4), e(3)]);
    }

    #[test]
    fn gf4_canonical() {
        let f = Field::new(2, 2).unwrap();
        assert_eq!(f.modulus(), &[1, 1, 1]);
        assert_eq!(f.mul(e(2), e(2)), e(3));
        assert_eq!(f.elements(), vec![e(0), e(1), e(2), e(3)]);
    }

    #[test]
    fn gf8_and_gf16_moduli_follow_constant_first_order() {
        // x^3+x^2+1 < x^3+x+1 when compared from the constant term up.
        assert_eq!(Field::new(2, 3).unwrap().modulus(), &[1, 0, 1, 1]);
        assert_eq!(Field::new(2, 4).unwrap().modulus(), &[1, 0, 0, 1, 1]);
        // x^2+1 has no root over GF(3); every candidate with c0 = 0 is divisible by x.
        assert_eq!(Field::new(3, 2).unwrap().modulus(), &[1, 0, 1]);
    }

    #[test]
    fn gf2_is_trivial() {
        let f = Field::new(2, 1).unwrap();
        assert_eq!(f.alpha(), e(1));
        assert_eq!(f.elements(), vec![e(0), e(1)]);
    }

    #[test]
    fn construction_errors() {
        assert_eq!(Field::new(4, 1).unwrap_err(), GfError::NotPrime(4));
        assert_eq!(Field::new(1, 1).unwrap_err(), GfError::NotPrime(1));
        assert_eq!(Field::new(2, 17).unwrap_err(), GfError::FieldTooLarge { p: 2, m: 17 });
        assert_eq!(Field::new(3, 0).unwrap_err(), GfError::ZeroDegree);
        assert!(Field::new(2, 16).is_ok());
        assert_eq!(Field::with_order(12).unwrap_err(), GfError::NotPrimePower(12));
        let f = Field::with_order(25).unwrap();
        assert_eq!((f.characteristic(), f.degree()), (5, 2));
    }

    #[test]
    fn inverse_and_errors() {
        let f = Field::new(7, 1).unwrap();
        assert_eq!(f.inv(e(1)).unwrap(), e(1));
        assert_eq!(f.inv(e(0)), Err(GfError::DivisionByZero));
        assert_eq!(f.powi(e(0), -1), Err(GfError::DivisionByZero));
        assert_eq!(f.powi(e(3), -1).unwrap(), e(5));
        assert_eq!(f.element(7), Err(GfError::FieldMismatch { code: 7, q: 7 }));
    }

    #[test]
    fn serializes_as_field_spec() {
        let f = Field::new(2, 2).unwrap();
        assert_eq!(
            serde_json::to_string(&f).unwrap(),
            r#"{"p":2,"m":2,"modulus":[1,1,1],"alpha":2}"#
        );
    }

    /// Independent polynomial-multiplication oracle over GF(p)[x]/(modulus).
    fn oracle_mul(f: &Field, a: u32, b: u32) -> u32 {
        SlowArith { p: f.characteristic(), m: f.degree(), modulus: f.modulus() }.mul(a, b)
    }

    const SMALL_FIELDS: &[(u64, u32)] =
        &[(2, 1), (3, 1), (5, 1), (7, 1), (2, 2), (2, 3), (3, 2), (2, 4), (5, 2), (3, 3), (2, 5), (11, 1), (13, 1), (31, 1)];

    #[test]
    fn field_axioms_for_small_fields() {
        for &(p, m) in SMALL_FIELDS {
            let f = Field::new(p, m).unwrap();
            let q = f.order();
            let all: Vec<Element> = (0..q).map(e).collect();
            for &a in &all {
                assert_eq!(f.add(a, Element::ZERO), a);
                assert_eq!(f.mul(a, Element::ONE), a);
                assert_eq!(f.add(a, f.neg(a)), Element::ZERO);
                if !a.is_zero() {
                    assert_eq!(f.mul(a, f.inv(a).unwrap()), Element::ONE);
                    assert_eq!(f.pow(a, (q - 1) as u64), Element::ONE);
                }
                for &b in &all {
                    assert_eq!(f.add(a, b), f.add(b, a));
                    assert_eq!(f.mul(a, b), f.mul(b, a));
                    assert_eq!(f.mul(a, b).code(), oracle_mul(&f, a.code(), b.code()));
                    assert_eq!(f.sub(f.add(a, b), b), a);
                }
            }
            // triples: exhaustive for q <= 9, strided sample otherwise
            let step = if q <= 9 { 1 } else { 3 };
            for a in (0..q).step_by(step as usize).map(e) {
                for b in (0..q).step_by(step as usize).map(e) {
                    for c in (0..q).map(e) {
                        assert_eq!(f.add(f.add(a, b), c), f.add(a, f.add(b, c)));
                        assert_eq!(f.mul(f.mul(a, b), c), f.mul(a, f.mul(b, c)));
                        assert_eq!(f.mul(a, f.add(b, c)), f.add(f.mul(a, b), f.mul(a, c)));
                    }
                }
            }
        }
    }

    #[test]
    fn modulus_irreducible_and_alpha_primitive() {
        for &(p, m) in SMALL_FIELDS {
            let f = Field::new(p, m).unwrap();
            let q = f.order();
            // brute force: no monic factor of degree <= m/2
            assert!(is_irreducible(f.modulus(), p as u32));
            let a = f.alpha();
            let mut x = Element::ONE;
            for k in 1..q - 1 {
                x = f.mul(x, a);
                assert_ne!(x, Element::ONE, "alpha has order {k} in GF({q})");
            }
            assert_eq!(f.mul(x, a), Element::ONE);
            // smallest primitive: no smaller code generates the group
            for c in 1..a.code() {
                let order = (1..q).find(|&k| f.pow(e(c), k as u64) == Element::ONE).unwrap();
                assert!(order < q - 1);
            }
        }
    }

    #[test]
    fn elements_are_distinct_powers() {
        for &(p, m) in SMALL_FIELDS {
            let f = Field::new(p, m).unwrap();
            let els = f.elements();
            let mut sorted = els.clone();
            sorted.sort();
            sorted.dedup();
            assert_eq!(sorted.len(), f.order() as usize);
            for (k, &b) in els.iter().enumerate() {
                assert_eq!(f.element_index(b), k);
                if k > 0 {
                    assert_eq!(b, f.pow(f.alpha(), k as u64 - 1));
                }
            }
        }
    }
}
