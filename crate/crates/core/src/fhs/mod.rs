//! Frequency-hopping sequences: Hamming correlation, rotational closure,
//! normalizer equivalence, and the correspondence with partition-type families.

mod equivalence;
mod perm;

pub use equivalence::{fhs_equivalent, fhs_equivalences, FhsWitness};
pub use perm::{is_in_normalizer, normalizer_elements, phi_gamma, AffinePerm, Permutation};

use serde::{Deserialize, Serialize};

use crate::ddf::DifferenceFamily;
use crate::error::{Error, Result};

/// A word over {0..q-1}; position t is the channel used at time t.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(try_from = "RawSequence", into = "RawSequence")]
pub struct HopSequence {
    q: u64,
    symbols: Vec<u64>,
}

#[derive(Serialize, Deserialize)]
struct RawSequence {
    #[serde(default)]
    n: Option<usize>,
    q: u64,
    symbols: Vec<u64>,
}

impl TryFrom<RawSequence> for HopSequence {
    type Error = Error;

    fn try_from(raw: RawSequence) -> Result<Self> {
        if raw.n.is_some_and(|n| n != raw.symbols.len()) {
            return Err(Error::LengthMismatch(format!("n = {:?} but {} symbols", raw.n, raw.symbols.len())));
        }
        HopSequence::new(raw.q, raw.symbols)
    }
}

impl From<HopSequence> for RawSequence {
    fn from(s: HopSequence) -> Self {
        RawSequence { n: Some(s.n()), q: s.q, symbols: s.symbols }
    }
}

impl HopSequence {
    pub fn new(q: u64, symbols: Vec<u64>) -> Result<HopSequence> {
        if symbols.is_empty() {
            return Err(Error::InvalidArgument("a hop sequence needs at least one symbol".into()));
        }
        if let Some(&s) = symbols.iter().find(|&&s| s >= q) {
            return Err(Error::InvalidArgument(format!("symbol {s} outside alphabet of size {q}")));
        }
        Ok(HopSequence { q, symbols })
    }

    /// Alphabet size taken as one more than the largest symbol.
    pub fn from_symbols(symbols: Vec<u64>) -> Result<HopSequence> {
        let q = symbols.iter().max().map_or(1, |&m| m + 1);
        HopSequence::new(q, symbols)
    }

    pub fn n(&self) -> usize {
        self.symbols.len()
    }

    pub fn q(&self) -> u64 {
        self.q
    }

    pub fn symbols(&self) -> &[u64] {
        &self.symbols
    }

    fn check_compatible(&self, other: &HopSequence) -> Result<()> {
        if self.n() != other.n() || self.q != other.q {
            return Err(Error::LengthMismatch(format!(
                "(n, q) = ({}, {}) vs ({}, {})",
                self.n(),
                self.q,
                other.n(),
                other.q
            )));
        }
        Ok(())
    }

    /// Cyclic right shift by `s`: the word w^{ρ^s}.
    pub fn shift(&self, s: usize) -> HopSequence {
        let n = self.n();
        let s = s % n;
        let symbols = (0..n).map(|i| self.symbols[(i + n - s) % n]).collect();
        HopSequence { q: self.q, symbols }
    }

    pub fn hamming_distance(&self, other: &HopSequence) -> Result<usize> {
        self.check_compatible(other)?;
        Ok(self.symbols.iter().zip(&other.symbols).filter(|(a, b)| a != b).count())
    }
}

/// H_{x,y}(t) = #{i : x_i = y_{i+t}}.
pub fn hamming_correlation(x: &HopSequence, y: &HopSequence, t: usize) -> Result<usize> {
    x.check_compatible(y)?;
    let n = x.n();
    if t >= n {
        return Err(Error::InvalidArgument(format!("delay {t} not below length {n}")));
    }
    Ok((0..n).filter(|&i| x.symbols[i] == y.symbols[(i + t) % n]).count())
}

/// Maximum out-of-phase autocorrelation, over 1 ≤ t < n (0 when n = 1).
pub fn max_auto(x: &HopSequence) -> usize {
    (1..x.n()).map(|t| hamming_correlation(x, x, t).unwrap()).max().unwrap_or(0)
}

/// Maximum cross-correlation over 0 ≤ t < n.
pub fn max_cross(x: &HopSequence, y: &HopSequence) -> Result<usize> {
    x.check_compatible(y)?;
    Ok((0..x.n()).map(|t| hamming_correlation(x, y, t).unwrap()).max().unwrap_or(0))
}

/// Positions move as (w^σ)_{σ(i)} = w_i.
pub fn rotate(w: &HopSequence, sigma: &Permutation) -> Result<HopSequence> {
    if sigma.n() != w.n() {
        return Err(Error::LengthMismatch(format!("word of length {} and permutation of degree {}", w.n(), sigma.n())));
    }
    let mut symbols = vec![0; w.n()];
    for (i, &s) in w.symbols.iter().enumerate() {
        symbols[sigma.apply(i)] = s;
    }
    Ok(HopSequence { q: w.q, symbols })
}

/// A set of words of equal length over one alphabet, kept sorted.
#[derive(Clone, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(try_from = "RawScheme", into = "RawScheme")]
pub struct Fhs {
    n: usize,
    q: u64,
    words: Vec<HopSequence>,
}

#[derive(Serialize, Deserialize)]
struct RawScheme {
    n: usize,
    q: u64,
    words: Vec<Vec<u64>>,
}

impl TryFrom<RawScheme> for Fhs {
    type Error = Error;

    fn try_from(raw: RawScheme) -> Result<Self> {
        let words = raw.words.into_iter().map(|w| HopSequence::new(raw.q, w)).collect::<Result<Vec<_>>>()?;
        let f = Fhs::new(words)?;
        if f.n != raw.n {
            return Err(Error::LengthMismatch(format!("n = {} but words have length {}", raw.n, f.n)));
        }
        Ok(f)
    }
}

impl From<Fhs> for RawScheme {
    fn from(f: Fhs) -> Self {
        RawScheme { n: f.n, q: f.q, words: f.words.into_iter().map(|w| w.symbols).collect() }
    }
}

impl Fhs {
    pub fn new(words: Vec<HopSequence>) -> Result<Fhs> {
        let first = words.first().ok_or(Error::TooFewWords(0))?;
        let (n, q) = (first.n(), first.q);
        for w in &words {
            first.check_compatible(w)?;
        }
        let mut words = words;
        words.sort();
        words.dedup();
        Ok(Fhs { n, q, words })
    }

    pub fn single(w: HopSequence) -> Fhs {
        Fhs { n: w.n(), q: w.q, words: vec![w] }
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn q(&self) -> u64 {
        self.q
    }

    pub fn words(&self) -> &[HopSequence] {
        &self.words
    }

    pub fn len(&self) -> usize {
        self.words.len()
    }

    pub fn is_empty(&self) -> bool {
        self.words.is_empty()
    }

    pub fn contains(&self, w: &HopSequence) -> bool {
        self.words.binary_search(w).is_ok()
    }

    /// Image of every word under a position permutation.
    pub fn rotate(&self, sigma: &Permutation) -> Result<Fhs> {
        Fhs::new(self.words.iter().map(|w| rotate(w, sigma)).collect::<Result<Vec<_>>>()?)
    }

    pub fn is_rotationally_closed(&self) -> bool {
        self.words.iter().all(|w| self.contains(&w.shift(1)))
    }
}

/// M(F): the largest out-of-phase autocorrelation or cross-correlation in the scheme.
pub fn max_correlation(f: &Fhs) -> usize {
    let auto = f.words.iter().map(max_auto).max().unwrap_or(0);
    let cross = f
        .words
        .iter()
        .enumerate()
        .flat_map(|(i, x)| f.words[i + 1..].iter().map(move |y| max_cross(x, y).unwrap()))
        .max()
        .unwrap_or(0);
    auto.max(cross)
}

/// {w^{ρ^s} : w ∈ S, 0 ≤ s < n}.
pub fn rotational_closure(s: &Fhs) -> Fhs {
    let words = s.words.iter().flat_map(|w| (0..s.n).map(move |k| w.shift(k))).collect();
    Fhs::new(words).expect("shifts keep length and alphabet")
}

/// Minimum Hamming distance between distinct words of the set.
pub fn min_distance(s: &Fhs) -> Result<usize> {
    if s.len() < 2 {
        return Err(Error::TooFewWords(s.len()));
    }
    Ok(s.words
        .iter()
        .enumerate()
        .flat_map(|(i, x)| s.words[i + 1..].iter().map(move |y| x.hamming_distance(y).unwrap()))
        .min()
        .expect("at least one pair"))
}

/// Minimum distance of the indexed family (w^{ρ^s})_{w ∈ S, 0 ≤ s < n}, where
/// coinciding shifts of a periodic word still count as distinct members.
pub fn min_shift_distance(s: &Fhs) -> Result<usize> {
    let family: Vec<HopSequence> = s.words.iter().flat_map(|w| (0..s.n).map(move |k| w.shift(k))).collect();
    if family.len() < 2 {
        return Err(Error::TooFewWords(family.len()));
    }
    Ok(family
        .iter()
        .enumerate()
        .flat_map(|(i, x)| family[i + 1..].iter().map(move |y| x.hamming_distance(y).unwrap()))
        .min()
        .expect("at least one pair"))
}

/// Partition-type family with Q_i = positions holding the i-th occurring symbol,
/// plus the class → symbol map.
pub fn fhs_to_ddf(x: &HopSequence) -> (DifferenceFamily, Vec<u64>) {
    let mut symbols: Vec<u64> = x.symbols.clone();
    symbols.sort_unstable();
    symbols.dedup();
    let classes = symbols.iter().map(|&s| {
        x.symbols.iter().enumerate().filter(move |(_, &y)| y == s).map(|(j, _)| j as u64).collect::<Vec<_>>()
    });
    let f = DifferenceFamily::new(x.n() as u64, classes).expect("positions partition Z_n");
    (f, symbols)
}

/// x_j = i for j ∈ Q_i.
pub fn ddf_to_fhs(f: &DifferenceFamily) -> Result<HopSequence> {
    if !f.is_partition() {
        return Err(Error::NotPartitionType(f.v()));
    }
    let mut symbols = vec![0; f.v() as usize];
    for (i, c) in f.classes().iter().enumerate() {
        for &j in c {
            symbols[j as usize] = i as u64;
        }
    }
    HopSequence::new(f.num_classes() as u64, symbols)
}
