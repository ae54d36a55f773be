//! Disjoint difference families over Z_v.

mod equivalence;
mod spectrum;

pub use equivalence::{canonical_form, ddf_equivalent, ddf_equivalences, find_multiplier, AffineMap};
pub use spectrum::{
    application_predicates, classify, spectrum, ApplicationPredicates, Classification,
    DifferenceSpectrum, SpectrumRow,
};

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// Disjoint classes Q_0..Q_{q-1} in Z_v. Class order is kept; each class is sorted.
#[derive(Clone, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(try_from = "RawFamily")]
pub struct DifferenceFamily {
    v: u64,
    classes: Vec<Vec<u64>>,
}

#[derive(Deserialize)]
struct RawFamily {
    v: u64,
    classes: Vec<Vec<i64>>,
}

impl TryFrom<RawFamily> for DifferenceFamily {
    type Error = Error;

    fn try_from(raw: RawFamily) -> Result<Self> {
        DifferenceFamily::from_signed(raw.v, raw.classes)
    }
}

impl DifferenceFamily {
    pub fn new<I, C>(v: u64, classes: I) -> Result<DifferenceFamily>
    where
        I: IntoIterator<Item = C>,
        C: IntoIterator<Item = u64>,
    {
        if v == 0 {
            return Err(Error::InvalidArgument("group order must be at least 1".into()));
        }
        let mut seen = vec![false; v as usize];
        let mut out = Vec::new();
        for (i, class) in classes.into_iter().enumerate() {
            let mut c: Vec<u64> = class.into_iter().collect();
            c.sort_unstable();
            c.dedup();
            if c.is_empty() {
                return Err(Error::EmptyClass(i));
            }
            for &x in &c {
                if x >= v {
                    return Err(Error::ElementOutOfRange { element: x as i64, v });
                }
                if std::mem::replace(&mut seen[x as usize], true) {
                    return Err(Error::OverlappingClasses(x));
                }
            }
            out.push(c);
        }
        Ok(DifferenceFamily { v, classes: out })
    }

    /// Like [`DifferenceFamily::new`] but rejects negative elements instead of wrapping them.
    pub fn from_signed(v: u64, classes: Vec<Vec<i64>>) -> Result<DifferenceFamily> {
        let mut out = Vec::with_capacity(classes.len());
        for class in classes {
            let mut c = Vec::with_capacity(class.len());
            for x in class {
                if x < 0 {
                    return Err(Error::ElementOutOfRange { element: x, v });
                }
                c.push(x as u64);
            }
            out.push(c);
        }
        DifferenceFamily::new(v, out)
    }

    pub fn v(&self) -> u64 {
        self.v
    }

    pub fn classes(&self) -> &[Vec<u64>] {
        &self.classes
    }

    pub fn class(&self, i: usize) -> &[u64] {
        &self.classes[i]
    }

    pub fn num_classes(&self) -> usize {
        self.classes.len()
    }

    pub fn sizes(&self) -> Vec<usize> {
        self.classes.iter().map(Vec::len).collect()
    }

    pub fn union_size(&self) -> usize {
        self.classes.iter().map(Vec::len).sum()
    }

    pub fn is_partition(&self) -> bool {
        self.union_size() as u64 == self.v
    }

    /// `class_of[x]` for every x in Z_v.
    pub fn membership(&self) -> Vec<Option<usize>> {
        let mut m = vec![None; self.v as usize];
        for (i, c) in self.classes.iter().enumerate() {
            for &x in c {
                m[x as usize] = Some(i);
            }
        }
        m
    }

    /// The family {a·Q_i + b}, class order kept. `a` must be a unit for the result to stay disjoint.
    pub fn affine_image(&self, a: u64, b: u64) -> Result<DifferenceFamily> {
        let v = self.v;
        let (a, b) = (a % v, b % v);
        DifferenceFamily::new(
            v,
            self.classes
                .iter()
                .map(|c| c.iter().map(|&x| ((x as u128 * a as u128 + b as u128) % v as u128) as u64).collect::<Vec<_>>()),
        )
    }

    pub fn translate(&self, b: u64) -> DifferenceFamily {
        self.affine_image(1, b).expect("translation is a bijection")
    }

    /// Classes as an unordered set: sorted list of sorted classes.
    pub fn class_set(&self) -> Vec<Vec<u64>> {
        let mut c = self.classes.clone();
        c.sort();
        c
    }

    /// Equal as unordered families of classes.
    pub fn same_classes(&self, other: &DifferenceFamily) -> bool {
        self.v == other.v && self.class_set() == other.class_set()
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn construction_and_errors() {
        let f = DifferenceFamily::new(7, [vec![3, 0, 1]]).unwrap();
        assert_eq!(f.classes(), &[vec![0, 1, 3]]);
        assert_eq!(
            DifferenceFamily::new(7, [vec![0, 1, 3], vec![1, 2]]),
            Err(Error::OverlappingClasses(1))
        );
        assert_eq!(
            DifferenceFamily::new(7, [vec![0, 7]]),
            Err(Error::ElementOutOfRange { element: 7, v: 7 })
        );
        assert_eq!(DifferenceFamily::new(7, [vec![0], vec![]]), Err(Error::EmptyClass(1)));
        assert!(DifferenceFamily::new(25, [vec![1, 2, 3, 4, 6, 15], vec![5, 9, 10, 14, 17, 24]]).is_ok());
    }

    #[test]
    fn json_shape() {
        let f = DifferenceFamily::new(26, [vec![0, 13], vec![1, 4, 19]]).unwrap();
        let s = serde_json::to_string(&f).unwrap();
        assert_eq!(s, r#"{"v":26,"classes":[[0,13],[1,4,19]]}"#);
        assert_eq!(serde_json::from_str::<DifferenceFamily>(&s).unwrap(), f);
        assert!(serde_json::from_str::<DifferenceFamily>(r#"{"v":5,"classes":[[-1]]}"#).is_err());
        assert!(serde_json::from_str::<DifferenceFamily>(r#"{"v":5,"classes":[[0],[0]]}"#).is_err());
    }

    #[test]
    fn affine_images() {
        let f = DifferenceFamily::new(5, [vec![1], vec![0, 2], vec![3, 4]]).unwrap();
        let g = DifferenceFamily::new(5, [vec![0], vec![1, 4], vec![2, 3]]).unwrap();
        assert!(f.translate(4).same_classes(&g));
        assert!(!f.same_classes(&g));
    }
}
