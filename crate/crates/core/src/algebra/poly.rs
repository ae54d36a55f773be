//! Univariate polynomials over GF(q), order and primitivity.

use std::fmt;

use super::field::{FieldElement, FieldSpec};
use super::matrix::Matrix;
use super::number::order_dividing;
use crate::error::{Error, Result};

/// A polynomial over GF(q), coefficients constant term first, trailing zeros trimmed.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct Poly {
    field: FieldSpec,
    coeffs: Vec<FieldElement>,
}

impl Poly {
    pub fn new(field: &FieldSpec, mut coeffs: Vec<FieldElement>) -> Poly {
        while coeffs.last().is_some_and(|c| c.is_zero()) {
            coeffs.pop();
        }
        Poly { field: field.clone(), coeffs }
    }

    pub fn zero(field: &FieldSpec) -> Poly {
        Poly::new(field, Vec::new())
    }

    pub fn one(field: &FieldSpec) -> Poly {
        Poly::new(field, vec![field.one()])
    }

    pub fn x(field: &FieldSpec) -> Poly {
        Poly::new(field, vec![field.zero(), field.one()])
    }

    /// From element indices, constant first. Negative entries denote additive
    /// inverses; over prime fields values are reduced mod p.
    pub fn from_indices(field: &FieldSpec, coeffs: &[i64]) -> Result<Poly> {
        let coeffs = coeffs
            .iter()
            .map(|&c| field.element_from_signed(c))
            .collect::<Result<Vec<_>>>()?;
        Ok(Poly::new(field, coeffs))
    }

    pub fn to_indices(&self) -> Vec<u64> {
        self.coeffs.iter().map(|c| c.index()).collect()
    }

    pub fn field(&self) -> &FieldSpec {
        &self.field
    }

    pub fn coeffs(&self) -> &[FieldElement] {
        &self.coeffs
    }

    pub fn coeff(&self, i: usize) -> FieldElement {
        self.coeffs.get(i).copied().unwrap_or(FieldElement::ZERO)
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    pub fn degree(&self) -> Option<usize> {
        self.coeffs.len().checked_sub(1)
    }

    pub fn leading(&self) -> FieldElement {
        self.coeffs.last().copied().unwrap_or(FieldElement::ZERO)
    }

    pub fn is_monic(&self) -> bool {
        self.leading() == FieldElement::ONE
    }

    pub fn add(&self, other: &Poly) -> Poly {
        let len = self.coeffs.len().max(other.coeffs.len());
        let coeffs = (0..len)
            .map(|i| self.field.add(self.coeff(i), other.coeff(i)))
            .collect();
        Poly::new(&self.field, coeffs)
    }

    pub fn sub(&self, other: &Poly) -> Poly {
        let len = self.coeffs.len().max(other.coeffs.len());
        let coeffs = (0..len)
            .map(|i| self.field.sub(self.coeff(i), other.coeff(i)))
            .collect();
        Poly::new(&self.field, coeffs)
    }

    pub fn mul(&self, other: &Poly) -> Poly {
        if self.is_zero() || other.is_zero() {
            return Poly::zero(&self.field);
        }
        let f = &self.field;
        let mut out = vec![f.zero(); self.coeffs.len() + other.coeffs.len() - 1];
        for (i, &a) in self.coeffs.iter().enumerate() {
            if a.is_zero() {
                continue;
            }
            for (j, &b) in other.coeffs.iter().enumerate() {
                out[i + j] = f.add(out[i + j], f.mul(a, b));
            }
        }
        Poly::new(f, out)
    }

    /// Remainder on division by a nonzero polynomial.
    pub fn rem(&self, divisor: &Poly) -> Poly {
        let f = &self.field;
        let dd = divisor.degree().expect("division by the zero polynomial");
        let lead_inv = f.inv(divisor.leading()).expect("nonzero leading coefficient");
        let mut r = self.coeffs.clone();
        while r.len() > dd {
            let top = *r.last().unwrap();
            if !top.is_zero() {
                let c = f.mul(top, lead_inv);
                let shift = r.len() - 1 - dd;
                for (j, &dj) in divisor.coeffs.iter().enumerate() {
                    r[shift + j] = f.sub(r[shift + j], f.mul(c, dj));
                }
            }
            r.pop();
        }
        Poly::new(f, r)
    }

    /// `self^e mod modulus`.
    pub fn pow_mod(&self, mut e: u64, modulus: &Poly) -> Poly {
        let mut base = self.rem(modulus);
        let mut acc = Poly::one(&self.field).rem(modulus);
        while e > 0 {
            if e & 1 == 1 {
                acc = acc.mul(&base).rem(modulus);
            }
            base = base.mul(&base).rem(modulus);
            e >>= 1;
        }
        acc
    }

    pub fn eval(&self, x: FieldElement) -> FieldElement {
        let f = &self.field;
        self.coeffs
            .iter()
            .rev()
            .fold(f.zero(), |acc, &c| f.add(f.mul(acc, x), c))
    }

    /// Parses expressions such as `x^3-x^2-2x-2` or `x^3 + 2*x^2 + 1`.
    /// Integer coefficients are element indices (reduced mod p over prime
    /// fields); a minus sign takes the additive inverse.
    pub fn parse(field: &FieldSpec, text: &str) -> Result<Poly> {
        let s: String = text.chars().filter(|c| !c.is_whitespace()).collect();
        if s.is_empty() {
            return Err(Error::Parse("empty polynomial".into()));
        }
        let bad = |msg: &str| Error::Parse(format!("{msg} in polynomial {text:?}"));
        let mut terms: Vec<(bool, &str)> = Vec::new();
        let mut start = 0;
        let mut negative = false;
        let bytes = s.as_bytes();
        for (i, &b) in bytes.iter().enumerate() {
            if (b == b'+' || b == b'-') && i > 0 && bytes[i - 1] != b'^' {
                terms.push((negative, &s[start..i]));
                negative = b == b'-';
                start = i + 1;
            } else if i == 0 && (b == b'+' || b == b'-') {
                negative = b == b'-';
                start = 1;
            }
        }
        terms.push((negative, &s[start..]));

        let mut acc = Poly::zero(field);
        for (neg, term) in terms {
            if term.is_empty() {
                return Err(bad("empty term"));
            }
            let (coef_str, exp) = match term.find('x') {
                None => (term, 0usize),
                Some(pos) => {
                    let rest = &term[pos + 1..];
                    let exp = if rest.is_empty() {
                        1
                    } else if let Some(e) = rest.strip_prefix('^') {
                        e.parse::<usize>().map_err(|_| bad("bad exponent"))?
                    } else {
                        return Err(bad("unexpected text after x"));
                    };
                    (term[..pos].trim_end_matches('*'), exp)
                }
            };
            let coef: i64 = if coef_str.is_empty() {
                1
            } else {
                coef_str.parse().map_err(|_| bad("bad coefficient"))?
            };
            let c = field.element_from_signed(if neg { -coef } else { coef })?;
            let mut coeffs = vec![field.zero(); exp + 1];
            coeffs[exp] = c;
            acc = acc.add(&Poly::new(field, coeffs));
        }
        Ok(acc)
    }
}

/// Serialized as the coefficient index list, constant term first.
impl serde::Serialize for Poly {
    fn serialize<S: serde::Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        s.collect_seq(self.to_indices())
    }
}

impl fmt::Display for Poly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return write!(f, "0");
        }
        let mut first = true;
        for (i, c) in self.coeffs.iter().enumerate().rev() {
            if c.is_zero() {
                continue;
            }
            if !first {
                write!(f, " + ")?;
            }
            first = false;
            let coef = if c.index() == 1 && i > 0 { String::new() } else { c.to_string() };
            match i {
                0 => write!(f, "{c}")?,
                1 => write!(f, "{coef}x")?,
                _ => write!(f, "{coef}x^{i}")?,
            }
        }
        Ok(())
    }
}

impl fmt::Debug for Poly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Poly({self} over {:?})", self.field)
    }
}

fn check_order_preconditions(f: &Poly) -> Result<usize> {
    let n = match f.degree() {
        Some(n) if n >= 1 && f.is_monic() => n,
        _ => return Err(Error::NotMonic),
    };
    if f.coeff(0).is_zero() {
        return Err(Error::ZeroConstantTerm);
    }
    Ok(n)
}

fn unit_group_bound(field: &FieldSpec, n: usize) -> Result<u64> {
    u32::try_from(n)
        .ok()
        .and_then(|n| field.order().checked_pow(n))
        .filter(|&v| v <= 1 << 40)
        .map(|v| v - 1)
        .ok_or_else(|| Error::TooLarge(format!("q^{n} too large")))
}

/// Least e ≥ 1 with x^e ≡ 1 (mod f).
///
/// Tries the divisors of q^n − 1 first; that succeeds whenever the order
/// divides q^n − 1 (always for irreducible f). Polynomials with repeated or
/// mixed-degree factors fall back to stepping through powers of x, which is
/// bounded by the size of the unit group of GF(q)[x]/(f).
pub fn poly_order(f: &Poly) -> Result<u64> {
    let n = check_order_preconditions(f)?;
    let group = unit_group_bound(f.field(), n)?;
    let one = Poly::one(f.field()).rem(f);
    let x = Poly::x(f.field());
    if x.pow_mod(group, f) == one {
        return Ok(order_dividing(group, |e| x.pow_mod(e, f) == one));
    }
    let step = x.rem(f);
    let mut cur = step.clone();
    let mut e = 1u64;
    while cur != one {
        cur = cur.mul(&step).rem(f);
        e += 1;
        if e > group {
            unreachable!("x is a unit mod f, so its order is at most q^n - 1");
        }
    }
    Ok(e)
}

/// True iff f has order q^n − 1.
pub fn is_primitive(f: &Poly) -> Result<bool> {
    let n = check_order_preconditions(f)?;
    Ok(poly_order(f)? == unit_group_bound(f.field(), n)?)
}

/// Every monic primitive polynomial of degree n, in lexicographic order of
/// the coefficient index list (c_0, c_1, …, c_{n−1}).
pub fn enumerate_primitive(field: &FieldSpec, n: usize) -> Result<Vec<Poly>> {
    if n == 0 {
        return Err(Error::InvalidArgument("degree must be at least 1".into()));
    }
    let q = field.order();
    let count = unit_group_bound(field, n)? + 1;
    let mut out = Vec::new();
    for t in 0..count {
        let mut coeffs: Vec<FieldElement> = (0..n)
            .map(|j| field.element((t / q.pow((n - 1 - j) as u32)) % q).unwrap())
            .collect();
        if coeffs[0].is_zero() {
            continue;
        }
        coeffs.push(field.one());
        let f = Poly::new(field, coeffs);
        if is_primitive(&f)? {
            out.push(f);
        }
    }
    Ok(out)
}

/// State update matrix of the LFSR with characteristic polynomial
/// f(x) = x^n − c_{n−1}x^{n−1} − … − c_0: ones on the subdiagonal and
/// (c_0, …, c_{n−1}) down the last column, so that s_{t+1} = s_t · C.
pub fn companion_matrix(f: &Poly) -> Result<Matrix> {
    let n = match f.degree() {
        Some(n) if n >= 1 && f.is_monic() => n,
        _ => return Err(Error::NotMonic),
    };
    let field = f.field();
    let mut c = Matrix::zero(field, n, n);
    for i in 0..n - 1 {
        c.set(i + 1, i, field.one());
    }
    for i in 0..n {
        c.set(i, n - 1, field.neg(f.coeff(i)));
    }
    Ok(c)
}
