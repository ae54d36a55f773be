//! Built-in reference vectors, each reproduced end to end from its inputs.

use serde::Serialize;

use crate::algebra::{companion_matrix, enumerate_primitive, poly_order, FieldSpec, Matrix, Poly};
use crate::ddf::{ddf_equivalences, find_multiplier, spectrum, AffineMap, DifferenceFamily};
use crate::error::Result;
use crate::fhs::{
    fhs_to_ddf, is_in_normalizer, max_auto, phi_gamma, rotate, AffinePerm, HopSequence, Permutation,
};
use crate::geometry::{
    correspondence_check, frame_for_point_at_infinity, geometric_construct, multiplier_of_generator,
    parallel_class, verify_orbit_intersections, ProjPoint, Projectivity,
};
use crate::lfsr::{impulse_response, msequence_construct, sigma_transform, LfsrSpec};

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct GoldenCheck {
    pub id: &'static str,
    pub passed: bool,
    pub detail: String,
}

/// Inputs that a negative control may perturb.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct GoldenConfig {
    /// Feedback taps c_0, c_1, c_2 of the GF(3) register.
    pub taps: Vec<i64>,
}

impl Default for GoldenConfig {
    fn default() -> Self {
        GoldenConfig { taps: vec![2, 0, 1] }
    }
}

pub const IMPULSE_GF3: [u64; 26] = [0, 0, 1, 1, 1, 0, 2, 1, 1, 2, 1, 0, 1, 0, 0, 2, 2, 2, 0, 1, 2, 2, 1, 2, 0, 2];
pub const SIGMA2_GF3: [u64; 26] = [0, 3, 4, 4, 1, 6, 5, 4, 7, 5, 1, 3, 1, 0, 6, 8, 8, 2, 3, 7, 8, 5, 7, 2, 6, 2];
pub const SIGMA3_GF3: [u64; 26] =
    [9, 12, 13, 4, 19, 15, 14, 22, 16, 5, 10, 3, 1, 18, 24, 26, 8, 11, 21, 25, 17, 23, 7, 20, 6, 2];

pub const SIGMA2_FAMILY: [&[u64]; 9] =
    [&[0, 13], &[1, 11, 18], &[5, 14, 24], &[4, 10, 12], &[2, 3, 7], &[8, 19, 22], &[17, 23, 25], &[6, 9, 21], &[15, 16, 20]];
pub const SIGMA1_FAMILY: [&[u64]; 3] =
    [&[0, 1, 5, 11, 13, 14, 18, 24], &[2, 3, 4, 7, 8, 10, 12, 19, 22], &[6, 9, 15, 16, 17, 20, 21, 23, 25]];

/// Lines through (1,0,0,0) labelled from (1,0,0,1) under the explicit PG(3,3) matrix.
pub const GEOMETRIC_FAMILY: [&[u64]; 9] =
    [&[0, 13], &[1, 19, 4], &[2, 22, 23], &[3, 5, 12], &[6, 14, 17], &[7, 11, 21], &[8, 24, 20], &[9, 10, 15], &[16, 18, 25]];
/// The same with τ^5, as (class, index j with class = 7·Q_j).
pub const FIFTH_POWER_FAMILY: [(&[u64], usize); 9] = [
    (&[0, 13], 0),
    (&[6, 9, 21], 3),
    (&[16, 20, 15], 4),
    (&[11, 1, 18], 7),
    (&[22, 8, 19], 8),
    (&[17, 23, 25], 5),
    (&[12, 10, 4], 6),
    (&[2, 3, 7], 1),
    (&[24, 14, 5], 2),
];
/// Lines through (0,0,1,0) instead.
pub const OTHER_CLASS_FAMILY: [&[u64]; 9] =
    [&[10, 23], &[1, 24, 16], &[2, 0, 9], &[3, 14, 11], &[4, 8, 18], &[5, 17, 21], &[6, 7, 12], &[13, 15, 22], &[19, 20, 25]];

pub const PG33_MATRIX: [[i64; 4]; 4] = [[0, 1, 0, 0], [1, 0, 1, 0], [0, 1, 1, 0], [0, 0, 0, 1]];

fn family(v: u64, classes: &[&[u64]]) -> DifferenceFamily {
    DifferenceFamily::new(v, classes.iter().map(|c| c.to_vec())).expect("reference families are valid")
}

fn word(s: &[u64]) -> HopSequence {
    HopSequence::from_symbols(s.to_vec()).expect("reference words are valid")
}

struct Runner {
    out: Vec<GoldenCheck>,
}

impl Runner {
    fn check(&mut self, id: &'static str, f: impl FnOnce() -> Result<(bool, String)>) {
        let (passed, detail) = match f() {
            Ok(r) => r,
            Err(e) => (false, format!("error: {e}")),
        };
        self.out.push(GoldenCheck { id, passed, detail });
    }
}

fn eq_detail<T: std::fmt::Debug + PartialEq>(got: T, want: T) -> (bool, String) {
    if got == want {
        (true, format!("{got:?}"))
    } else {
        (false, format!("got {got:?}, expected {want:?}"))
    }
}

/// Runs every reference check.
pub fn run_golden_checks(cfg: &GoldenConfig) -> Vec<GoldenCheck> {
    let gf3 = FieldSpec::prime(3).expect("3 is prime");
    let gf2 = FieldSpec::prime(2).expect("2 is prime");
    let mut r = Runner { out: Vec::new() };
    let f_a = Poly::parse(&gf3, "x^3-x^2-2").expect("valid");
    let f_b = Poly::parse(&gf3, "x^3-x^2-2x-2").expect("valid");

    r.check("companion-x3-x2-2", || {
        Ok(eq_detail(companion_matrix(&f_a)?.to_indices(), vec![vec![0, 0, 2], vec![1, 0, 0], vec![0, 1, 1]]))
    });
    r.check("companion-x3-x2-2x-2", || {
        Ok(eq_detail(companion_matrix(&f_b)?.to_indices(), vec![vec![0, 0, 2], vec![1, 0, 2], vec![0, 1, 1]]))
    });
    r.check("poly-order-26", || Ok(eq_detail((poly_order(&f_a)?, poly_order(&f_b)?), (26, 26))));
    r.check("primitive-cubics-gf3", || {
        let all = enumerate_primitive(&gf3, 3)?;
        Ok((all.len() == 4 && all.contains(&f_a) && all.contains(&f_b), format!("{} polynomials", all.len())))
    });

    let spec = LfsrSpec::from_indices(&gf3, &cfg.taps);
    r.check("impulse-response-gf3", || {
        let s: Vec<u64> = impulse_response(spec.as_ref().map_err(Clone::clone)?, 26).iter().map(|e| e.index()).collect();
        Ok(eq_detail(s, IMPULSE_GF3.to_vec()))
    });
    r.check("sigma1-column", || {
        Ok(eq_detail(sigma_transform(spec.as_ref().map_err(Clone::clone)?, 1)?.symbols().to_vec(), IMPULSE_GF3.to_vec()))
    });
    r.check("sigma2-column", || {
        Ok(eq_detail(sigma_transform(spec.as_ref().map_err(Clone::clone)?, 2)?.symbols().to_vec(), SIGMA2_GF3.to_vec()))
    });
    r.check("sigma3-column", || {
        Ok(eq_detail(sigma_transform(spec.as_ref().map_err(Clone::clone)?, 3)?.symbols().to_vec(), SIGMA3_GF3.to_vec()))
    });
    r.check("sigma2-family", || {
        let fam = msequence_construct(&gf3, 3, 2, Some(&spec.as_ref().map_err(Clone::clone)?.characteristic_poly()))?.family;
        let want = family(26, &SIGMA2_FAMILY);
        Ok((fam.same_classes(&want), format!("{:?}", fam.classes())))
    });
    r.check("sigma1-family", || {
        let fam = msequence_construct(&gf3, 3, 1, Some(&spec.as_ref().map_err(Clone::clone)?.characteristic_poly()))?.family;
        Ok(eq_detail(fam.classes().to_vec(), family(26, &SIGMA1_FAMILY).classes().to_vec()))
    });

    r.check("difference-set-7-3-1", || {
        let sp = spectrum(&family(7, &[&[0, 1, 3]]));
        Ok(eq_detail((1..7).map(|d| sp.internal(d)).collect::<Vec<_>>(), vec![1; 6]))
    });
    r.check("complement-pair-spectrum", || {
        let sp = spectrum(&family(7, &[&[0, 1, 3], &[2, 4, 5, 6]]));
        let got: Vec<_> = (1..7)
            .map(|d| (sp.internal_by_class(0, d), sp.internal_by_class(1, d), sp.internal(d), sp.external_by_class(0, d), sp.external_by_class(1, d), sp.external(d)))
            .collect();
        Ok(eq_detail(got, vec![(1, 2, 3, 2, 2, 4); 6]))
    });
    r.check("perfect-external-25-6-6", || {
        let sp = spectrum(&family(25, &[&[1, 2, 3, 4, 6, 15], &[5, 9, 10, 14, 17, 24]]));
        let want_internal: Vec<u64> = (1..25)
            .map(|d| match d {
                1 | 24 => 4,
                7 | 9 | 10 | 15 | 16 | 18 => 2,
                6 | 8 | 17 | 19 => 1,
                _ => 3,
            })
            .collect();
        let got = ((1..25).map(|d| sp.internal(d)).collect::<Vec<_>>(), (1..25).map(|d| sp.external(d)).collect::<Vec<_>>());
        Ok(eq_detail(got, (want_internal, vec![3; 24])))
    });

    let pg33 = || -> Result<(Projectivity, ProjPoint, Matrix)> {
        let a = Matrix::from_indices(&gf3, &PG33_MATRIX.iter().map(|r| r.to_vec()).collect::<Vec<_>>())?;
        let tau = Projectivity::from_matrix(a)?;
        let base = ProjPoint::from_indices(&gf3, &[1, 0, 0, 1])?;
        let frame = frame_for_point_at_infinity(&ProjPoint::from_indices(&gf3, &[1, 0, 0, 0])?, &gf3)?;
        Ok((tau, base, frame))
    };
    r.check("pg33-matrix-characteristic-poly", || {
        let (tau, _, _) = pg33()?;
        let block = tau.matrix().leading_block(3);
        Ok((block.eval_poly(&f_b)?.to_indices().iter().flatten().all(|&c| c == 0), "f(A) = 0".into()))
    });
    r.check("pg33-geometric-family", || {
        let (tau, base, frame) = pg33()?;
        let fam = geometric_construct(&tau, 2, &base, Some(&frame))?;
        Ok((fam.same_classes(&family(26, &GEOMETRIC_FAMILY)), format!("{:?}", fam.classes())))
    });
    r.check("pg33-fifth-power-multiplier-7", || {
        let (tau, base, frame) = pg33()?;
        let q = family(26, &GEOMETRIC_FAMILY);
        let fam5 = geometric_construct(&tau.pow(5), 2, &base, Some(&frame))?;
        let listed = DifferenceFamily::new(26, FIFTH_POWER_FAMILY.iter().map(|(c, _)| c.to_vec()))?;
        let pairs_ok = FIFTH_POWER_FAMILY.iter().all(|(c, j)| {
            let mut img: Vec<u64> = GEOMETRIC_FAMILY[*j].iter().map(|x| x * 7 % 26).collect();
            let mut c = c.to_vec();
            img.sort_unstable();
            c.sort_unstable();
            img == c
        });
        let w = multiplier_of_generator(&tau, 2, &base, Some(&frame), 5)?;
        Ok((
            fam5.same_classes(&listed) && pairs_ok && w == 7 && find_multiplier(&q, &fam5) == Some(7),
            format!("w = {w}, pairing holds: {pairs_ok}"),
        ))
    });
    r.check("pg33-other-parallel-class-plus-10", || {
        let (tau, base, _) = pg33()?;
        let frame = frame_for_point_at_infinity(&ProjPoint::from_indices(&gf3, &[0, 0, 1, 0])?, &gf3)?;
        let fam = geometric_construct(&tau, 2, &base, Some(&frame))?;
        let listed = family(26, &OTHER_CLASS_FAMILY);
        let plus10 = family(26, &GEOMETRIC_FAMILY).translate(10);
        Ok((fam.same_classes(&listed) && listed.same_classes(&plus10), format!("{:?}", fam.classes())))
    });
    r.check("pg33-state-base-minus-1", || {
        let (_, _, frame) = pg33()?;
        let tau = Projectivity::from_poly(&f_b)?;
        let base = ProjPoint::from_indices(&gf3, &[0, 0, 1, 1])?;
        let fam = geometric_construct(&tau, 2, &base, Some(&frame))?;
        let want = family(26, &GEOMETRIC_FAMILY).translate(25);
        Ok((fam.same_classes(&want), format!("{:?}", fam.classes())))
    });
    r.check("sequence-line-x0-0-x1-x3", || {
        let pc = parallel_class(3, &gf3, 2, None)?;
        let pts: Vec<ProjPoint> = [[0, 1, 1, 1], [0, 1, 0, 1], [0, 1, 2, 1]]
            .iter()
            .map(|c| ProjPoint::from_indices(&gf3, c))
            .collect::<Result<_>>()?;
        let line = pc.classes.iter().find(|c| c.contains(&pts[0]));
        Ok((line.is_some_and(|l| pts.iter().all(|p| l.contains(p)) && l.len() == 3), "P_1, P_11, P_18 collinear".into()))
    });
    r.check("correspondence-gf3-gf2", || {
        let mut all = true;
        for f in enumerate_primitive(&gf3, 3)? {
            for k in [1, 2] {
                all &= correspondence_check(&gf3, 3, k, &f)?;
            }
        }
        for f in enumerate_primitive(&gf2, 3)? {
            all &= correspondence_check(&gf2, 3, 1, &f)?;
        }
        Ok((all, "every primitive cubic".into()))
    });
    r.check("intersection-census-pg33", || {
        let rep = verify_orbit_intersections(&gf3, 3, &f_a)?;
        Ok((
            rep.ok() && rep.type_one.len() == 1 && rep.external.iter().all(|&e| e == 24),
            format!("{} violations, type I at {:?}", rep.violations.len(), rep.type_one),
        ))
    });

    r.check("hamming-autocorrelation", || {
        Ok(eq_detail((max_auto(&word(&[0, 0, 0, 1, 0, 1, 1])), max_auto(&word(&[1, 0, 0, 1, 0, 1, 0]))), (3, 5)))
    });
    r.check("rotation-by-rho7", || {
        Ok(eq_detail(rotate(&word(&[0, 0, 0, 1, 0, 1, 1]), &Permutation::rho(7))?, word(&[1, 0, 0, 0, 1, 0, 1])))
    });
    r.check("rotation-by-normalizer-element", || {
        let g = Permutation::parse_cycles(7, "(2 4 3 7 5 6)")?;
        Ok(eq_detail(rotate(&word(&[0, 0, 0, 1, 0, 1, 1]), &g)?, word(&[0, 1, 1, 0, 1, 0, 0])))
    });
    r.check("conjugate-is-rho7-squared", || {
        let g = Permutation::parse_cycles(7, "(2 5 3)(4 6 7)")?;
        let rho = Permutation::rho(7);
        Ok((is_in_normalizer(&g) && g.then(&rho).then(&g.inverse()) == rho.pow(2), g.to_string()))
    });
    r.check("phi-gamma-z5", || {
        let g = Permutation::parse_cycles(5, "(1 5 3 4)")?;
        Ok(eq_detail(phi_gamma(&g)?, AffinePerm { n: 5, a: 2, b: 4 }))
    });
    r.check("fhs-to-ddf", || {
        let a = fhs_to_ddf(&word(&[0, 0, 1, 0, 1, 1, 1])).0;
        let b = fhs_to_ddf(&word(&[1, 1, 2, 3, 2])).0;
        Ok(eq_detail(
            (a.classes().to_vec(), b.classes().to_vec()),
            (vec![vec![0, 1, 3], vec![2, 4, 5, 6]], vec![vec![0, 1], vec![2, 4], vec![3]]),
        ))
    });
    r.check("z5-translation-by-4", || {
        let f1 = family(5, &[&[1], &[0, 2], &[3, 4]]);
        let f2 = family(5, &[&[0], &[1, 4], &[2, 3]]);
        Ok((ddf_equivalences(&f1, &f2).contains(&AffineMap { a: 1, b: 4 }), "b = 4".into()))
    });
    r.check("z5-image-under-gamma", || {
        let g = Permutation::parse_cycles(5, "(1 5 3 4)")?;
        let w = word(&[1, 1, 2, 3, 2]);
        let image = rotate(&w, &g)?;
        let phi = phi_gamma(&g)?;
        let moved = fhs_to_ddf(&w).0.affine_image(phi.a as u64, phi.b as u64)?;
        Ok((image == word(&[3, 1, 2, 2, 1]) && fhs_to_ddf(&image).0.same_classes(&moved), format!("{image:?}")))
    });
    r.out
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn all_pass() {
        let checks = run_golden_checks(&GoldenConfig::default());
        let failed: Vec<_> = checks.iter().filter(|c| !c.passed).collect();
        assert!(failed.is_empty(), "{failed:#?}");
    }

    #[test]
    fn corrupted_taps_fail() {
        let checks = run_golden_checks(&GoldenConfig { taps: vec![1, 0, 1] });
        let impulse = checks.iter().find(|c| c.id == "impulse-response-gf3").unwrap();
        assert!(!impulse.passed);
    }
}
