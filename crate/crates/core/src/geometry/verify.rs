use std::collections::HashSet;

use serde::Serialize;

use super::{geometric_construct, impulse_point, orbit_index, Projectivity};
use crate::algebra::number::gcd;
use crate::algebra::{FieldSpec, Matrix, Poly};
use crate::ddf::{find_multiplier, spectrum};
use crate::error::{Error, Result};
use crate::lfsr::msequence_construct;

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Violation {
    pub d: u64,
    pub i: Option<usize>,
    pub j: Option<usize>,
    pub message: String,
}

/// Line intersection census for the lines through one point at infinity.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct IntersectionReport {
    pub q: u64,
    pub n: usize,
    /// Differences d for which τ^d fixes L_0.
    pub type_one: Vec<u64>,
    pub type_two_count: usize,
    /// |I(d)| for d = 1..q^n-1.
    pub internal: Vec<u64>,
    /// |E(d)| for d = 1..q^n-1.
    pub external: Vec<u64>,
    pub violations: Vec<Violation>,
}

impl IntersectionReport {
    pub fn ok(&self) -> bool {
        self.violations.is_empty()
    }
}

fn meet(a: &HashSet<u64>, b: &[u64]) -> usize {
    b.iter().filter(|x| a.contains(x)).count()
}

/// Checks every intersection count |L_i^{τ^d} ∩ L_j| for the lines through
/// (0, …, 0, 1, 0) with τ = diag(C, 1). Points are the orbit labels, so L^{τ^d} is L + d.
pub fn verify_orbit_intersections(field: &FieldSpec, n: usize, f: &Poly) -> Result<IntersectionReport> {
    if n < 2 {
        return Err(Error::BadK { k: n.saturating_sub(1), max: n });
    }
    let q = field.order();
    let tau = Projectivity::from_poly(f)?;
    let fam = geometric_construct(&tau, n - 1, &impulse_point(field, n), None)?;
    let v = fam.v();
    if v > 200 {
        return Err(Error::TooLarge(format!("{v} affine points")));
    }
    let lines = fam.classes();
    let m = lines.len();
    let qn1 = q.pow(n as u32 - 1);
    let mut violations = Vec::new();
    let mut flag = |d: u64, i: Option<usize>, j: Option<usize>, message: String| {
        violations.push(Violation { d, i, j, message });
    };

    // ⟨τ⟩-orbit of each line, by translation.
    let translate = |c: &[u64], e: u64| {
        let mut t: Vec<u64> = c.iter().map(|x| (x + e) % v).collect();
        t.sort_unstable();
        t
    };
    let mut orbit_of = vec![usize::MAX; m];
    let mut orbit_sizes = Vec::new();
    for i in 1..m {
        if orbit_of[i] != usize::MAX {
            continue;
        }
        let id = orbit_sizes.len();
        let translates: HashSet<Vec<u64>> = (0..v).map(|e| translate(&lines[i], e)).collect();
        let members: Vec<usize> = (i..m).filter(|&j| translates.contains(&lines[j])).collect();
        for &j in &members {
            orbit_of[j] = id;
        }
        orbit_sizes.push(members.len());
    }
    if orbit_sizes.len() as u64 != (qn1 - 1) / (q - 1) || orbit_sizes.iter().any(|&s| s as u64 != q - 1) {
        flag(0, None, None, format!("line orbit sizes {orbit_sizes:?}"));
    }

    let sp = spectrum(&fam);
    let mut type_one = Vec::new();
    for d in 1..v {
        let images: Vec<HashSet<u64>> = lines.iter().map(|c| c.iter().map(|x| (x + d) % v).collect()).collect();
        let counts: Vec<Vec<usize>> = images.iter().map(|img| lines.iter().map(|l| meet(img, l)).collect()).collect();
        if counts[0][0] == lines[0].len() {
            type_one.push(d);
            for i in 1..m {
                if counts[i][i] != 0 {
                    flag(d, Some(i), Some(i), format!("type I self-intersection {}", counts[i][i]));
                }
                for j in 1..m {
                    if j != i && counts[i][j] != 0 && counts[i][j] as u64 != q {
                        flag(d, Some(i), Some(j), format!("type I partial intersection {}", counts[i][j]));
                    }
                    if j != i && counts[i][j] as u64 == q && orbit_of[i] != orbit_of[j] {
                        flag(d, Some(i), Some(j), "type I maps a line into another orbit".into());
                    }
                }
            }
            let full = (1..m).flat_map(|i| (1..m).map(move |j| (i, j))).filter(|&(i, j)| i != j && counts[i][j] as u64 == q).count();
            if full as u64 != qn1 - 1 {
                flag(d, None, None, format!("{full} full intersections, expected {}", qn1 - 1));
            }
        } else {
            if counts[0][0] != 0 {
                flag(d, Some(0), Some(0), format!("L_0 meets its image in {} affine points", counts[0][0]));
            }
            let from_l0 = (1..m).filter(|&j| counts[0][j] == 1).count();
            if from_l0 as u64 != q - 1 || (1..m).any(|j| counts[0][j] > 1) {
                flag(d, Some(0), None, format!("L_0 image meets {from_l0} lines once, expected {}", q - 1));
            }
            if counts.iter().flatten().any(|&c| c > 1) {
                flag(d, None, None, "an intersection has more than one point".into());
            }
            let units = (1..m).flat_map(|i| (0..m).map(move |j| (i, j))).filter(|&(i, j)| counts[i][j] == 1).count();
            if units as u64 != (qn1 - 1) * q {
                flag(d, None, None, format!("{units} unit intersections, expected {}", (qn1 - 1) * q));
            }
            let selfs: Vec<usize> = (1..m).filter(|&i| counts[i][i] == 1).collect();
            if selfs.len() as u64 != q - 1 {
                flag(d, None, None, format!("{} self-intersections, expected {}", selfs.len(), q - 1));
            }
            if selfs.iter().any(|&i| orbit_of[i] != orbit_of[selfs[0]]) {
                flag(d, None, None, "self-intersecting lines span several orbits".into());
            }
        }
        if sp.internal(d) != q - 1 {
            flag(d, None, None, format!("|I(d)| = {}", sp.internal(d)));
        }
        if sp.external(d) != q * (qn1 - 1) {
            flag(d, None, None, format!("|E(d)| = {}", sp.external(d)));
        }
    }
    if type_one.len() as u64 != q - 2 {
        flag(0, None, None, format!("{} type I differences, expected {}", type_one.len(), q - 2));
    }
    Ok(IntersectionReport {
        q,
        n,
        type_two_count: (v - 1) as usize - type_one.len(),
        type_one,
        internal: (1..v).map(|d| sp.internal(d)).collect(),
        external: (1..v).map(|d| sp.external(d)).collect(),
        violations,
    })
}

/// Least unit w with {w·Q_j} equal to the family built from τ^i with the same base and frame.
pub fn multiplier_of_generator(
    tau: &Projectivity,
    k: usize,
    base: &super::ProjPoint,
    frame: Option<&Matrix>,
    i: u64,
) -> Result<u64> {
    let v = orbit_index(tau, base)?.len();
    if gcd(i % v, v) != 1 {
        return Err(Error::NotCoprime { value: i, modulus: v });
    }
    let fam = geometric_construct(tau, k, base, frame)?;
    let fam_i = geometric_construct(&tau.pow(i % v), k, base, frame)?;
    Ok(find_multiplier(&fam, &fam_i).expect("relabelling by a generator is a unit multiple"))
}

/// Whether the σ_k family of f equals the geometric family of diag(C, 1) based at the
/// impulse state point, and moving the base to P_0^{τ^d} translates it by −d for every d.
pub fn correspondence_check(field: &FieldSpec, n: usize, k: usize, f: &Poly) -> Result<bool> {
    let lg = msequence_construct(field, n, k, Some(f))?.family;
    let tau = Projectivity::from_poly(f)?;
    let base = impulse_point(field, n);
    let idx = orbit_index(&tau, &base)?;
    let v = idx.len();
    if geometric_construct(&tau, k, &base, None)? != lg {
        return Ok(false);
    }
    for d in 1..v {
        let shifted = geometric_construct(&tau, k, idx.point(d), None)?;
        if shifted != lg.translate(v - d) {
            return Ok(false);
        }
    }
    Ok(true)
}
