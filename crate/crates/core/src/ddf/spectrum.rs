use serde::{Serialize, Serializer};

use super::DifferenceFamily;

/// Ordered-pair difference counts, indexed by d in Z_v (entry 0 unused).
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct DifferenceSpectrum {
    v: u64,
    internal: Vec<u64>,
    external: Vec<u64>,
    internal_by_class: Vec<Vec<u64>>,
    external_by_class: Vec<Vec<u64>>,
    external_pairwise: Vec<Vec<Vec<u64>>>,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub struct SpectrumRow {
    pub d: u64,
    #[serde(rename = "I")]
    pub internal: u64,
    #[serde(rename = "E")]
    pub external: u64,
}

impl Serialize for DifferenceSpectrum {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        s.collect_seq(self.rows())
    }
}

pub fn spectrum(f: &DifferenceFamily) -> DifferenceSpectrum {
    let v = f.v() as usize;
    let q = f.num_classes();
    let mut sp = DifferenceSpectrum {
        v: f.v(),
        internal: vec![0; v],
        external: vec![0; v],
        internal_by_class: vec![vec![0; v]; q],
        external_by_class: vec![vec![0; v]; q],
        external_pairwise: vec![vec![vec![0; v]; q]; q],
    };
    for (i, ci) in f.classes().iter().enumerate() {
        for (j, cj) in f.classes().iter().enumerate() {
            for &a in ci {
                for &b in cj {
                    if a == b {
                        continue;
                    }
                    let d = ((a + f.v() - b) % f.v()) as usize;
                    if i == j {
                        sp.internal[d] += 1;
                        sp.internal_by_class[i][d] += 1;
                    } else {
                        sp.external[d] += 1;
                        sp.external_by_class[i][d] += 1;
                        sp.external_pairwise[i][j][d] += 1;
                    }
                }
            }
        }
    }
    sp
}

impl DifferenceSpectrum {
    pub fn v(&self) -> u64 {
        self.v
    }

    pub fn internal(&self, d: u64) -> u64 {
        self.internal[(d % self.v) as usize]
    }

    pub fn external(&self, d: u64) -> u64 {
        self.external[(d % self.v) as usize]
    }

    pub fn internal_by_class(&self, i: usize, d: u64) -> u64 {
        self.internal_by_class[i][(d % self.v) as usize]
    }

    pub fn external_by_class(&self, i: usize, d: u64) -> u64 {
        self.external_by_class[i][(d % self.v) as usize]
    }

    pub fn external_pairwise(&self, i: usize, j: usize, d: u64) -> u64 {
        self.external_pairwise[i][j][(d % self.v) as usize]
    }

    /// Nonzero differences 1..v.
    pub fn nonzero(&self) -> impl Iterator<Item = u64> {
        1..self.v
    }

    pub fn rows(&self) -> Vec<SpectrumRow> {
        self.nonzero()
            .map(|d| SpectrumRow { d, internal: self.internal(d), external: self.external(d) })
            .collect()
    }

    /// Internal counts over d = 1..v as a sorted multiset; invariant under affine maps.
    pub fn internal_profile(&self) -> Vec<u64> {
        let mut p = self.internal[1..].to_vec();
        p.sort_unstable();
        p
    }

    fn constant(values: &[u64]) -> bool {
        values.get(1..).is_none_or(|r| r.windows(2).all(|w| w[0] == w[1]))
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Classification {
    pub uniform: bool,
    pub partition_type: bool,
    pub perfect_internal: bool,
    pub perfect_external: bool,
    /// max_d |I(d)|, the out-of-phase autocorrelation bound of the associated FHS.
    pub internal_max: u64,
    /// min_d |E(d)|.
    pub external_min: u64,
}

pub fn classify(f: &DifferenceFamily) -> Classification {
    let sp = spectrum(f);
    let sizes = f.sizes();
    Classification {
        uniform: sizes.windows(2).all(|w| w[0] == w[1]),
        partition_type: f.is_partition(),
        perfect_internal: DifferenceSpectrum::constant(&sp.internal),
        perfect_external: DifferenceSpectrum::constant(&sp.external),
        internal_max: sp.nonzero().map(|d| sp.internal(d)).max().unwrap_or(0),
        external_min: sp.nonzero().map(|d| sp.external(d)).min().unwrap_or(0),
    }
}

/// Parameters relevant to the standard applications of difference families.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct ApplicationPredicates {
    /// Uniform, at least two classes, and |E(d)| constant.
    pub is_edf: bool,
    /// max_d |I(d)| for a single-class family.
    pub bounded_difference_set_lambda: Option<u64>,
    /// Optical orthogonal code autocorrelation: max over i, d of |I_i(d)|.
    pub ooc_lambda_a: u64,
    /// Optical orthogonal code cross-correlation: max over i ≠ j, d of |E_{i,j}(d)|.
    pub ooc_lambda_c: u64,
    /// Self-synchronizing index: min_d |E(d)|.
    pub dss_index: u64,
    /// max_d |E_i(d)| per class.
    pub external_by_class_max: Vec<u64>,
}

pub fn application_predicates(f: &DifferenceFamily) -> ApplicationPredicates {
    let sp = spectrum(f);
    let c = classify(f);
    let q = f.num_classes();
    let max_over_d = |g: &dyn Fn(u64) -> u64| sp.nonzero().map(g).max().unwrap_or(0);
    let ooc_lambda_a = (0..q).map(|i| max_over_d(&|d| sp.internal_by_class(i, d))).max().unwrap_or(0);
    let ooc_lambda_c = (0..q)
        .flat_map(|i| (0..q).filter(move |&j| j != i).map(move |j| (i, j)))
        .map(|(i, j)| max_over_d(&|d| sp.external_pairwise(i, j, d)))
        .max()
        .unwrap_or(0);
    ApplicationPredicates {
        is_edf: c.uniform && q >= 2 && c.perfect_external,
        bounded_difference_set_lambda: (q == 1).then_some(c.internal_max),
        ooc_lambda_a,
        ooc_lambda_c,
        dss_index: c.external_min,
        external_by_class_max: (0..q).map(|i| max_over_d(&|d| sp.external_by_class(i, d))).collect(),
    }
}
