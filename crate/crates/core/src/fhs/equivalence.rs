use serde::Serialize;

use super::perm::{normalizer_elements, AffinePerm};
use super::{rotate, Fhs, HopSequence};

/// F2 = { π(w^γ) : w ∈ F1 } with π = `symbol_map` and γ = `coord`.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize)]
pub struct FhsWitness {
    /// `symbol_map[s]` is the image of symbol s.
    pub symbol_map: Vec<u64>,
    pub coord: AffinePerm,
}

struct Matcher<'a> {
    images: &'a [HopSequence],
    targets: &'a [HopSequence],
    used: Vec<bool>,
    fwd: Vec<Option<u64>>,
    inv: Vec<Option<u64>>,
    first_only: bool,
    found: Vec<Vec<u64>>,
}

impl Matcher<'_> {
    fn extend(&mut self, x: &HopSequence, y: &HopSequence) -> Option<Vec<usize>> {
        let mut added = Vec::new();
        for (&a, &b) in x.symbols().iter().zip(y.symbols()) {
            match (self.fwd[a as usize], self.inv[b as usize]) {
                (Some(fa), _) if fa == b => {}
                (None, None) => {
                    self.fwd[a as usize] = Some(b);
                    self.inv[b as usize] = Some(a);
                    added.push(a as usize);
                }
                _ => {
                    self.undo(&added);
                    return None;
                }
            }
        }
        Some(added)
    }

    fn undo(&mut self, added: &[usize]) {
        for &a in added {
            let b = self.fwd[a].take().unwrap();
            self.inv[b as usize] = None;
        }
    }

    fn complete(&self) -> Vec<u64> {
        let mut free = (0..self.inv.len() as u64).filter(|&b| self.inv[b as usize].is_none());
        self.fwd.iter().map(|m| m.unwrap_or_else(|| free.next().unwrap())).collect()
    }

    fn run(&mut self, k: usize) {
        if self.first_only && !self.found.is_empty() {
            return;
        }
        if k == self.images.len() {
            self.found.push(self.complete());
            return;
        }
        let (images, targets) = (self.images, self.targets);
        for (j, target) in targets.iter().enumerate() {
            if self.used[j] {
                continue;
            }
            if let Some(added) = self.extend(&images[k], target) {
                self.used[j] = true;
                self.run(k + 1);
                self.used[j] = false;
                self.undo(&added);
            }
        }
    }
}

fn search(f1: &Fhs, f2: &Fhs, first_only: bool) -> Vec<FhsWitness> {
    let mut out = Vec::new();
    if f1.n() != f2.n() || f1.q() != f2.q() || f1.len() != f2.len() {
        return out;
    }
    let q = f1.q() as usize;
    for coord in normalizer_elements(f1.n()) {
        let gamma = coord.to_permutation();
        let images: Vec<HopSequence> = f1.words().iter().map(|w| rotate(w, &gamma).unwrap()).collect();
        let mut m = Matcher {
            images: &images,
            targets: f2.words(),
            used: vec![false; f2.len()],
            fwd: vec![None; q],
            inv: vec![None; q],
            first_only,
            found: Vec::new(),
        };
        m.run(0);
        let mut maps = m.found;
        maps.sort();
        maps.dedup();
        out.extend(maps.into_iter().map(|symbol_map| FhsWitness { symbol_map, coord }));
        if first_only && !out.is_empty() {
            break;
        }
    }
    out
}

/// A symbol relabelling and an affine position map carrying F1 onto F2, if any.
/// Coordinate maps are tried in (a, b) ascending order.
pub fn fhs_equivalent(f1: &Fhs, f2: &Fhs) -> Option<FhsWitness> {
    search(f1, f2, true).pop()
}

/// All witnesses. Symbols that occur in no word are mapped in ascending order.
pub fn fhs_equivalences(f1: &Fhs, f2: &Fhs) -> Vec<FhsWitness> {
    search(f1, f2, false)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::fhs::{max_correlation, Permutation};

    fn single(q: u64, s: &[u64]) -> Fhs {
        Fhs::single(HopSequence::new(q, s.to_vec()).unwrap())
    }

    fn apply(f: &Fhs, w: &FhsWitness) -> Fhs {
        let gamma = w.coord.to_permutation();
        Fhs::new(
            f.words()
                .iter()
                .map(|x| {
                    let y = rotate(x, &gamma).unwrap();
                    HopSequence::new(f.q(), y.symbols().iter().map(|&s| w.symbol_map[s as usize]).collect()).unwrap()
                })
                .collect(),
        )
        .unwrap()
    }

    #[test]
    fn binary_example() {
        let f1 = single(2, &[0, 0, 0, 1, 0, 1, 1]);
        let f2 = single(2, &[0, 1, 1, 0, 1, 0, 0]);
        let w = fhs_equivalent(&f1, &f2).unwrap();
        assert_eq!(w.coord, AffinePerm { n: 7, a: 3, b: 0 });
        assert_eq!(apply(&f1, &w), f2);
        assert_eq!(max_correlation(&f1), max_correlation(&f2));
    }

    #[test]
    fn identity_witness() {
        let f = single(4, &[1, 1, 2, 3, 2]);
        assert_eq!(
            fhs_equivalent(&f, &f),
            Some(FhsWitness { symbol_map: vec![0, 1, 2, 3], coord: AffinePerm::identity(5) })
        );
    }

    #[test]
    fn z5_example() {
        let f1 = single(4, &[1, 1, 2, 3, 2]);
        let f2 = single(4, &[3, 1, 2, 2, 1]);
        let first = fhs_equivalent(&f1, &f2).unwrap();
        assert_eq!(first.coord, AffinePerm { n: 5, a: 1, b: 2 });
        assert_eq!(first.symbol_map, vec![0, 2, 1, 3]);
        let all = fhs_equivalences(&f1, &f2);
        let gamma = Permutation::parse_cycles(5, "(1 5 3 4)").unwrap();
        let expected = FhsWitness { symbol_map: vec![0, 1, 2, 3], coord: AffinePerm { n: 5, a: 2, b: 4 } };
        assert_eq!(expected.coord.to_permutation(), gamma);
        assert!(all.contains(&expected));
        assert!(all.iter().all(|w| apply(&f1, w) == f2));
    }

    #[test]
    fn inequivalent() {
        // autocorrelations 3 and 5 differ
        let f1 = single(2, &[0, 0, 0, 1, 0, 1, 1]);
        let f2 = single(2, &[1, 0, 0, 1, 0, 1, 0]);
        assert_eq!(fhs_equivalent(&f1, &f2), None);
        assert_eq!(fhs_equivalent(&f1, &single(2, &[0, 1])), None);
    }

    #[test]
    fn multi_word_schemes() {
        let f1 = Fhs::new(vec![
            HopSequence::new(3, vec![0, 1, 2, 0, 0]).unwrap(),
            HopSequence::new(3, vec![1, 1, 0, 2, 2]).unwrap(),
        ])
        .unwrap();
        let w = FhsWitness { symbol_map: vec![2, 0, 1], coord: AffinePerm { n: 5, a: 3, b: 1 } };
        let f2 = apply(&f1, &w);
        let found = fhs_equivalent(&f1, &f2).unwrap();
        assert_eq!(apply(&f1, &found), f2);
        assert!(fhs_equivalences(&f1, &f2).contains(&w));
    }
}
