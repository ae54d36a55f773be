//! GF(p^m) in the polynomial basis.
//!
//! Elements are identified with their radix-p index `Σ coeffs[i]·p^i`, so
//! element 0 is zero, element 1 is one, and the prime subfield occupies
//! indices `0..p`. This index is the symbol map used by the σ_k transform
//! and by the parallel-class fibers over non-prime fields.

use std::fmt;
use std::sync::Arc;

use serde::{Deserialize, Serialize};

use super::number::is_prime;
use crate::error::{Error, Result};

/// Largest field order accepted by [`FieldSpec::new`].
pub const MAX_FIELD_ORDER: u64 = 1 << 20;

/// An element of a finite field, stored as its polynomial-basis index.
#[derive(Copy, Clone, Debug, Default, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct FieldElement(u32);

impl FieldElement {
    pub const ZERO: FieldElement = FieldElement(0);
    pub const ONE: FieldElement = FieldElement(1);

    pub fn index(self) -> u64 {
        self.0 as u64
    }

    pub fn is_zero(self) -> bool {
        self.0 == 0
    }
}

impl fmt::Display for FieldElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.0)
    }
}

/// GF(p^m) described by its characteristic, degree and reduction polynomial.
#[derive(Clone, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(try_from = "FieldSpecJson", into = "FieldSpecJson")]
pub struct FieldSpec {
    p: u64,
    m: u32,
    q: u64,
    /// Monic, constant term first, length m + 1. `[0, 1]` for prime fields.
    modulus: Arc<[u64]>,
}

#[derive(Serialize, Deserialize)]
struct FieldSpecJson {
    p: u64,
    m: u32,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    modulus: Option<Vec<u64>>,
}

impl TryFrom<FieldSpecJson> for FieldSpec {
    type Error = Error;
    fn try_from(j: FieldSpecJson) -> Result<Self> {
        FieldSpec::new(j.p, j.m, j.modulus.as_deref())
    }
}

impl From<FieldSpec> for FieldSpecJson {
    fn from(f: FieldSpec) -> Self {
        FieldSpecJson {
            p: f.p,
            m: f.m,
            modulus: (f.m > 1).then(|| f.modulus.to_vec()),
        }
    }
}

impl fmt::Debug for FieldSpec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.m == 1 {
            write!(f, "GF({})", self.p)
        } else {
            write!(f, "GF({}^{} mod {:?})", self.p, self.m, &self.modulus[..])
        }
    }
}

impl FieldSpec {
    /// Validates `(p, m, modulus)` and returns the field.
    ///
    /// With `m > 1` and no modulus, the lexicographically smallest monic
    /// irreducible polynomial of degree `m` is chosen, comparing coefficient
    /// lists constant term first.
    pub fn new(p: u64, m: u32, modulus: Option<&[u64]>) -> Result<FieldSpec> {
        if !is_prime(p) {
            return Err(Error::NonPrimeCharacteristic(p));
        }
        if m == 0 {
            return Err(Error::InvalidArgument("extension degree must be at least 1".into()));
        }
        let q = p
            .checked_pow(m)
            .filter(|&q| q <= MAX_FIELD_ORDER)
            .ok_or_else(|| Error::TooLarge(format!("GF({p}^{m}) exceeds {MAX_FIELD_ORDER} elements")))?;
        let reducible = Error::ReducibleModulus { p, degree: m as usize };
        let modulus: Vec<u64> = match modulus {
            Some(given) => {
                let reduced: Vec<u64> = given.iter().map(|&c| c % p).collect();
                if reduced.len() != m as usize + 1 || reduced[m as usize] != 1 {
                    return Err(reducible);
                }
                if m > 1 && !prime_poly::is_irreducible(&reduced, p) {
                    return Err(reducible);
                }
                if m == 1 {
                    vec![0, 1]
                } else {
                    reduced
                }
            }
            None if m == 1 => vec![0, 1],
            None => prime_poly::smallest_irreducible(p, m as usize),
        };
        Ok(FieldSpec { p, m, q, modulus: modulus.into() })
    }

    pub fn prime(p: u64) -> Result<FieldSpec> {
        FieldSpec::new(p, 1, None)
    }

    pub fn characteristic(&self) -> u64 {
        self.p
    }

    pub fn degree(&self) -> u32 {
        self.m
    }

    /// Number of elements q = p^m.
    pub fn order(&self) -> u64 {
        self.q
    }

    pub fn modulus(&self) -> &[u64] {
        &self.modulus
    }

    pub fn zero(&self) -> FieldElement {
        FieldElement::ZERO
    }

    pub fn one(&self) -> FieldElement {
        FieldElement::ONE
    }

    /// Element with the given index, if it is below q.
    pub fn element(&self, index: u64) -> Option<FieldElement> {
        (index < self.q).then_some(FieldElement(index as u32))
    }

    /// Element from an index that may be negative; `-c` denotes the
    /// additive inverse of element `c`. Prime-field values are reduced mod p.
    pub fn element_from_signed(&self, value: i64) -> Result<FieldElement> {
        let magnitude = value.unsigned_abs();
        let e = if self.m == 1 {
            FieldElement((magnitude % self.p) as u32)
        } else {
            self.element(magnitude).ok_or_else(|| {
                Error::Parse(format!("element index {magnitude} not below field order {}", self.q))
            })?
        };
        Ok(if value < 0 { self.neg(e) } else { e })
    }

    /// The image of an integer under Z -> GF(p) -> GF(q).
    pub fn from_int(&self, n: i64) -> FieldElement {
        FieldElement(n.rem_euclid(self.p as i64) as u32)
    }

    pub fn elements(&self) -> impl Iterator<Item = FieldElement> {
        (0..self.q as u32).map(FieldElement)
    }

    /// Polynomial-basis coordinates over GF(p), constant first, length m.
    pub fn coeffs(&self, e: FieldElement) -> Vec<u64> {
        let mut idx = e.index();
        (0..self.m)
            .map(|_| {
                let c = idx % self.p;
                idx /= self.p;
                c
            })
            .collect()
    }

    pub fn from_coeffs(&self, coeffs: &[u64]) -> FieldElement {
        debug_assert!(coeffs.len() <= self.m as usize);
        let idx = coeffs.iter().rev().fold(0u64, |acc, &c| acc * self.p + c % self.p);
        FieldElement(idx as u32)
    }

    pub fn add(&self, a: FieldElement, b: FieldElement) -> FieldElement {
        if self.m == 1 {
            return FieldElement(((a.index() + b.index()) % self.p) as u32);
        }
        let (mut x, mut y) = (a.index(), b.index());
        let (mut out, mut place) = (0u64, 1u64);
        while x > 0 || y > 0 {
            out += ((x % self.p + y % self.p) % self.p) * place;
            x /= self.p;
            y /= self.p;
            place *= self.p;
        }
        FieldElement(out as u32)
    }

    pub fn neg(&self, a: FieldElement) -> FieldElement {
        if self.m == 1 {
            return FieldElement(((self.p - a.index()) % self.p) as u32);
        }
        let c: Vec<u64> = self.coeffs(a).into_iter().map(|c| (self.p - c) % self.p).collect();
        self.from_coeffs(&c)
    }

    pub fn sub(&self, a: FieldElement, b: FieldElement) -> FieldElement {
        self.add(a, self.neg(b))
    }

    pub fn mul(&self, a: FieldElement, b: FieldElement) -> FieldElement {
        if self.m == 1 {
            return FieldElement((a.index() * b.index() % self.p) as u32);
        }
        if a.is_zero() || b.is_zero() {
            return FieldElement::ZERO;
        }
        let m = self.m as usize;
        let (x, y) = (self.coeffs(a), self.coeffs(b));
        let mut prod = vec![0u64; 2 * m - 1];
        for (i, &xi) in x.iter().enumerate() {
            if xi == 0 {
                continue;
            }
            for (j, &yj) in y.iter().enumerate() {
                prod[i + j] = (prod[i + j] + xi * yj) % self.p;
            }
        }
        for top in (m..2 * m - 1).rev() {
            let c = prod[top];
            if c == 0 {
                continue;
            }
            for (j, &mj) in self.modulus[..m].iter().enumerate() {
                let sub = c * mj % self.p;
                prod[top - m + j] = (prod[top - m + j] + self.p - sub) % self.p;
            }
            prod[top] = 0;
        }
        self.from_coeffs(&prod[..m])
    }

    pub fn pow(&self, mut base: FieldElement, mut e: u64) -> FieldElement {
        let mut acc = FieldElement::ONE;
        while e > 0 {
            if e & 1 == 1 {
                acc = self.mul(acc, base);
            }
            base = self.mul(base, base);
            e >>= 1;
        }
        acc
    }

    /// Multiplicative inverse; `None` for zero.
    pub fn inv(&self, a: FieldElement) -> Option<FieldElement> {
        (!a.is_zero()).then(|| self.pow(a, self.q - 2))
    }
}

/// Polynomials over a prime field as plain coefficient vectors, used for
/// modulus validation before a `FieldSpec` exists.
pub(crate) mod prime_poly {
    fn trim(a: &mut Vec<u64>) {
        while a.last() == Some(&0) {
            a.pop();
        }
    }

    /// Remainder of `a` modulo the monic `f`.
    pub fn rem(a: &[u64], f: &[u64], p: u64) -> Vec<u64> {
        let mut r = a.to_vec();
        trim(&mut r);
        let df = f.len() - 1;
        while r.len() > df {
            let c = *r.last().unwrap();
            let shift = r.len() - 1 - df;
            for (j, &fj) in f.iter().enumerate() {
                r[shift + j] = (r[shift + j] + p - c * fj % p) % p;
            }
            trim(&mut r);
        }
        r
    }

    /// Monic polynomials of the given degree, lexicographic in (c_0, c_1, …).
    pub fn monic_of_degree(p: u64, degree: usize) -> impl Iterator<Item = Vec<u64>> {
        let count = p.pow(degree as u32);
        (0..count).map(move |t| {
            let mut c: Vec<u64> = (0..degree)
                .map(|j| (t / p.pow((degree - 1 - j) as u32)) % p)
                .collect();
            c.push(1);
            c
        })
    }

    /// Trial division by every monic polynomial of degree 1..=deg/2.
    pub fn is_irreducible(f: &[u64], p: u64) -> bool {
        let n = f.len() - 1;
        if n == 0 {
            return false;
        }
        (1..=n / 2).all(|d| monic_of_degree(p, d).all(|g| !rem(f, &g, p).is_empty()))
    }

    pub fn smallest_irreducible(p: u64, m: usize) -> Vec<u64> {
        monic_of_degree(p, m)
            .find(|f| is_irreducible(f, p))
            .expect("an irreducible polynomial exists in every degree")
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn make_prime_field() {
        let f = FieldSpec::new(3, 1, None).unwrap();
        assert_eq!(f.order(), 3);
        assert_eq!(f.modulus(), &[0, 1]);
    }

    #[test]
    fn make_gf4_with_modulus() {
        let f = FieldSpec::new(2, 2, Some(&[1, 1, 1])).unwrap();
        assert_eq!(f.order(), 4);
        // default choice agrees
        assert_eq!(FieldSpec::new(2, 2, None).unwrap(), f);
    }

    #[test]
    fn rejects_composite_characteristic() {
        assert_eq!(FieldSpec::new(4, 1, None), Err(Error::NonPrimeCharacteristic(4)));
        assert_eq!(FieldSpec::new(1, 1, None), Err(Error::NonPrimeCharacteristic(1)));
    }

    #[test]
    fn rejects_reducible_modulus() {
        // x^2 + 1 = (x + 1)^2 over GF(2)
        assert!(matches!(
            FieldSpec::new(2, 2, Some(&[1, 0, 1])),
            Err(Error::ReducibleModulus { .. })
        ));
        // wrong length
        assert!(matches!(
            FieldSpec::new(2, 3, Some(&[1, 1, 1])),
            Err(Error::ReducibleModulus { .. })
        ));
    }

    #[test]
    fn default_moduli() {
        // lexicographic constant-first: x^3 + x^2 + 1 = [1,0,1,1] precedes x^3 + x + 1 = [1,1,0,1]
        assert_eq!(FieldSpec::new(2, 3, None).unwrap().modulus(), &[1, 0, 1, 1]);
        // x^2 + 1 is irreducible over GF(3)
        assert_eq!(FieldSpec::new(3, 2, None).unwrap().modulus(), &[1, 0, 1]);
    }

    #[test]
    fn index_bijection() {
        for (p, m) in [(2, 1), (2, 3), (3, 2), (5, 1), (2, 6)] {
            let f = FieldSpec::new(p, m, None).unwrap();
            for e in f.elements() {
                assert_eq!(f.from_coeffs(&f.coeffs(e)), e);
            }
            assert_eq!(f.coeffs(f.zero()), vec![0; m as usize]);
            let mut one = vec![0; m as usize];
            one[0] = 1;
            assert_eq!(f.coeffs(f.one()), one);
        }
    }

    #[test]
    fn signed_elements() {
        let f = FieldSpec::prime(3).unwrap();
        assert_eq!(f.element_from_signed(-2).unwrap(), f.element(1).unwrap());
        assert_eq!(f.element_from_signed(7).unwrap(), f.element(1).unwrap());
        let g = FieldSpec::new(2, 2, None).unwrap();
        assert_eq!(g.element_from_signed(-3).unwrap(), g.element(3).unwrap());
        assert!(g.element_from_signed(4).is_err());
    }

    #[test]
    fn json_forms() {
        let f = FieldSpec::prime(3).unwrap();
        assert_eq!(serde_json::to_string(&f).unwrap(), r#"{"p":3,"m":1}"#);
        let g = FieldSpec::new(2, 2, None).unwrap();
        assert_eq!(serde_json::to_string(&g).unwrap(), r#"{"p":2,"m":2,"modulus":[1,1,1]}"#);
        let back: FieldSpec = serde_json::from_str(r#"{"p":2,"m":2,"modulus":[1,1,1]}"#).unwrap();
        assert_eq!(back, g);
        assert!(serde_json::from_str::<FieldSpec>(r#"{"p":6,"m":1}"#).is_err());
    }
}
