use serde::Serialize;

use super::spectrum::spectrum;
use super::DifferenceFamily;
use crate::algebra::number::units;

/// x ↦ a·x + b on Z_v.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize)]
pub struct AffineMap {
    pub a: u64,
    pub b: u64,
}

fn image_set(f: &DifferenceFamily, a: u64, b: u64) -> Vec<Vec<u64>> {
    let v = f.v();
    let mut classes: Vec<Vec<u64>> = f
        .classes()
        .iter()
        .map(|c| {
            let mut img: Vec<u64> = c.iter().map(|&x| (x * a + b) % v).collect();
            img.sort_unstable();
            img
        })
        .collect();
    classes.sort();
    classes
}

fn sorted_sizes(f: &DifferenceFamily) -> Vec<usize> {
    let mut s = f.sizes();
    s.sort_unstable();
    s
}

/// Candidate maps in (a, b) ascending order, pruned by spectrum and by one anchor class.
fn search(f1: &DifferenceFamily, f2: &DifferenceFamily, translations_only: bool, first: bool) -> Vec<AffineMap> {
    let mut found = Vec::new();
    if f1.v() != f2.v()
        || sorted_sizes(f1) != sorted_sizes(f2)
        || spectrum(f1).internal_profile() != spectrum(f2).internal_profile()
    {
        return found;
    }
    let v = f1.v();
    let target = f2.class_set();
    // Anchor on the rarest class size to keep the b candidates few.
    let anchor = f1
        .classes()
        .iter()
        .min_by_key(|c| (f1.classes().iter().filter(|d| d.len() == c.len()).count(), c.len()))
        .expect("families are nonempty here");
    let mins: Vec<u64> = target.iter().filter(|d| d.len() == anchor.len()).map(|d| d[0]).collect();
    let multipliers = if translations_only { vec![1 % v.max(1)] } else { units(v) };
    for a in multipliers {
        let mut bs: Vec<u64> = anchor
            .iter()
            .flat_map(|&x| mins.iter().map(move |&m| (m + v - (x * a) % v) % v))
            .collect();
        bs.sort_unstable();
        bs.dedup();
        for b in bs {
            if image_set(f1, a, b) == target {
                found.push(AffineMap { a, b });
                if first {
                    return found;
                }
            }
        }
    }
    found
}

/// Some (a, b) with gcd(a, v) = 1 and {a·Q_i + b} = f2 as unordered families.
pub fn ddf_equivalent(f1: &DifferenceFamily, f2: &DifferenceFamily) -> Option<AffineMap> {
    search(f1, f2, false, true).pop()
}

/// Every witness, (a, b) ascending.
pub fn ddf_equivalences(f1: &DifferenceFamily, f2: &DifferenceFamily) -> Vec<AffineMap> {
    search(f1, f2, false, false)
}

/// Smallest unit w with {w·Q_i} = f2, i.e. a witness with b = 0.
pub fn find_multiplier(f1: &DifferenceFamily, f2: &DifferenceFamily) -> Option<u64> {
    if f1.v() != f2.v() {
        return None;
    }
    let target = f2.class_set();
    units(f1.v()).into_iter().find(|&a| image_set(f1, a, 0) == target)
}

/// Lexicographically least image over all affine maps, classes sorted.
pub fn canonical_form(f: &DifferenceFamily) -> DifferenceFamily {
    let v = f.v();
    let best = units(v)
        .into_iter()
        .flat_map(|a| (0..v).map(move |b| (a, b)))
        .map(|(a, b)| image_set(f, a, b))
        .min()
        .expect("at least the identity map");
    DifferenceFamily::new(v, best).expect("affine images stay disjoint")
}
