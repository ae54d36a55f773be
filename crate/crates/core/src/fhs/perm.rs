use std::fmt;

use serde::Serialize;

use crate::algebra::number::{gcd, units};
use crate::error::{Error, Result};

/// Permutation of positions {0..n-1}. Products compose left to right:
/// `s.then(t)` applies `s` first, matching exponential notation i^{st} = (i^s)^t.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Permutation {
    images: Vec<usize>,
}

impl Permutation {
    pub fn identity(n: usize) -> Permutation {
        Permutation { images: (0..n).collect() }
    }

    /// Right cyclic shift ρ_n: i ↦ i + 1.
    pub fn rho(n: usize) -> Permutation {
        Permutation { images: (0..n).map(|i| (i + 1) % n).collect() }
    }

    /// From 0-indexed images.
    pub fn from_images(images: Vec<usize>) -> Result<Permutation> {
        let n = images.len();
        let mut seen = vec![false; n];
        for &i in &images {
            if i >= n || std::mem::replace(&mut seen[i], true) {
                return Err(Error::InvalidArgument(format!("{images:?} is not a permutation")));
            }
        }
        Ok(Permutation { images })
    }

    /// Parses 1-indexed cycle notation such as `(2 5 3)(4 6 7)`; `()` is the identity.
    /// Cycles are multiplied left to right.
    pub fn parse_cycles(n: usize, s: &str) -> Result<Permutation> {
        let bad = |why: &str| Error::Parse(format!("cycle notation {s:?}: {why}"));
        let mut perm = Permutation::identity(n);
        let mut rest = s.trim();
        while !rest.is_empty() {
            let body = rest.strip_prefix('(').ok_or_else(|| bad("expected '('"))?;
            let close = body.find(')').ok_or_else(|| bad("missing ')'"))?;
            let points = body[..close]
                .split(|c: char| c.is_whitespace() || c == ',')
                .filter(|t| !t.is_empty())
                .map(|t| match t.parse::<usize>() {
                    Ok(p) if (1..=n).contains(&p) => Ok(p - 1),
                    _ => Err(bad(&format!("point {t} not in 1..={n}"))),
                })
                .collect::<Result<Vec<_>>>()?;
            let mut cycle = Permutation::identity(n);
            for (k, &p) in points.iter().enumerate() {
                if cycle.images[p] != p || points[..k].contains(&p) {
                    return Err(bad("repeated point in a cycle"));
                }
                cycle.images[p] = points[(k + 1) % points.len()];
            }
            perm = perm.then(&cycle);
            rest = body[close + 1..].trim_start();
        }
        Ok(perm)
    }

    pub fn n(&self) -> usize {
        self.images.len()
    }

    pub fn images(&self) -> &[usize] {
        &self.images
    }

    pub fn apply(&self, i: usize) -> usize {
        self.images[i]
    }

    /// Apply `self`, then `other`.
    pub fn then(&self, other: &Permutation) -> Permutation {
        assert_eq!(self.n(), other.n(), "permutations of different degree");
        Permutation { images: self.images.iter().map(|&i| other.images[i]).collect() }
    }

    pub fn inverse(&self) -> Permutation {
        let mut inv = vec![0; self.n()];
        for (i, &j) in self.images.iter().enumerate() {
            inv[j] = i;
        }
        Permutation { images: inv }
    }

    pub fn pow(&self, e: usize) -> Permutation {
        (0..e).fold(Permutation::identity(self.n()), |acc, _| acc.then(self))
    }

    pub fn is_identity(&self) -> bool {
        self.images.iter().enumerate().all(|(i, &j)| i == j)
    }

    /// `Some(j)` if this is ρ_n^j.
    pub fn rho_exponent(&self) -> Option<usize> {
        let n = self.n();
        if n == 0 {
            return Some(0);
        }
        let j = self.images[0];
        (0..n).all(|i| self.images[i] == (i + j) % n).then_some(j)
    }
}

impl fmt::Display for Permutation {
    /// 1-indexed cycle notation, fixed points omitted.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut seen = vec![false; self.n()];
        let mut any = false;
        for start in 0..self.n() {
            if seen[start] || self.images[start] == start {
                continue;
            }
            any = true;
            write!(f, "(")?;
            let mut i = start;
            let mut first = true;
            while !seen[i] {
                seen[i] = true;
                if !first {
                    write!(f, " ")?;
                }
                write!(f, "{}", i + 1)?;
                first = false;
                i = self.images[i];
            }
            write!(f, ")")?;
        }
        if !any {
            write!(f, "()")?;
        }
        Ok(())
    }
}

/// Position map i ↦ a·i + b on Z_n, gcd(a, n) = 1.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize)]
pub struct AffinePerm {
    pub n: usize,
    pub a: usize,
    pub b: usize,
}

impl AffinePerm {
    pub fn new(n: usize, a: usize, b: usize) -> Result<AffinePerm> {
        if n == 0 {
            return Err(Error::InvalidArgument("n must be at least 1".into()));
        }
        let (a, b) = (a % n, b % n);
        if gcd(a as u64, n as u64) != 1 {
            return Err(Error::NotCoprime { value: a as u64, modulus: n as u64 });
        }
        Ok(AffinePerm { n, a, b })
    }

    pub fn identity(n: usize) -> AffinePerm {
        AffinePerm { n, a: 1 % n.max(1), b: 0 }
    }

    pub fn apply(&self, i: usize) -> usize {
        (self.a * i + self.b) % self.n
    }

    pub fn to_permutation(&self) -> Permutation {
        Permutation { images: (0..self.n).map(|i| self.apply(i)).collect() }
    }
}

/// Whether γ ρ_n γ^{-1} is a power of ρ_n.
pub fn is_in_normalizer(gamma: &Permutation) -> bool {
    let n = gamma.n();
    gamma.then(&Permutation::rho(n)).then(&gamma.inverse()).rho_exponent().is_some()
}

/// All n·φ(n) affine position maps, (a, b) ascending.
pub fn normalizer_elements(n: usize) -> Vec<AffinePerm> {
    units(n as u64)
        .into_iter()
        .flat_map(|a| (0..n).map(move |b| AffinePerm { n, a: a as usize, b }))
        .collect()
}

/// (a, b) with γ^{-1} ρ_n γ = ρ_n^a and b = 1^γ − 1, so that γ is i ↦ a·i + b.
pub fn phi_gamma(gamma: &Permutation) -> Result<AffinePerm> {
    let n = gamma.n();
    let a = gamma
        .inverse()
        .then(&Permutation::rho(n))
        .then(gamma)
        .rho_exponent()
        .ok_or(Error::NotInNormalizer)?;
    Ok(AffinePerm { n, a, b: gamma.apply(0) })
}
