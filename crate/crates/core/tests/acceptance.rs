//! Acceptance runner: one PASS/FAIL line per criterion, nonzero exit on any failure.

use std::collections::BTreeSet;
use std::process::ExitCode;
use std::time::{Duration, Instant};

use rand::seq::IndexedRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use ddf_core::algebra::{enumerate_primitive, euler_phi, gcd, FieldSpec};
use ddf_core::ddf::{ddf_equivalences, spectrum, AffineMap, DifferenceFamily};
use ddf_core::fhs::{
    fhs_to_ddf, is_in_normalizer, max_auto, max_correlation, min_distance, min_shift_distance, normalizer_elements,
    phi_gamma, rotate, rotational_closure, Fhs, HopSequence, Permutation,
};
use ddf_core::geometry::{correspondence_check, verify_orbit_intersections};
use ddf_core::golden::{run_golden_checks, GoldenConfig};
use ddf_core::lfsr::msequence_construct;

type Outcome = Result<String, String>;
type Criterion = (&'static str, fn() -> Outcome);

const SEED: u64 = 0x5eed_d1ff;

fn ensure(cond: bool, msg: impl FnOnce() -> String) -> Result<(), String> {
    if cond {
        Ok(())
    } else {
        Err(msg())
    }
}

fn golden_subset(ids: &[&str], budget: Duration) -> Outcome {
    let start = Instant::now();
    let checks = run_golden_checks(&GoldenConfig::default());
    let elapsed = start.elapsed();
    for id in ids {
        let c = checks.iter().find(|c| c.id == *id).ok_or_else(|| format!("missing check {id}"))?;
        ensure(c.passed, || format!("{id}: {}", c.detail))?;
    }
    ensure(elapsed < budget, || format!("took {elapsed:?}"))?;
    Ok(format!("{} vectors exact in {elapsed:?}", ids.len()))
}

fn sequence_vectors() -> Outcome {
    golden_subset(
        &["impulse-response-gf3", "sigma1-column", "sigma2-column", "sigma3-column", "sigma2-family", "sigma1-family"],
        Duration::from_secs(1),
    )
}

fn geometry_vectors() -> Outcome {
    golden_subset(
        &[
            "pg33-geometric-family",
            "pg33-fifth-power-multiplier-7",
            "pg33-other-parallel-class-plus-10",
            "pg33-state-base-minus-1",
        ],
        Duration::from_secs(1),
    )
}

/// (field, n, f, k) for every primitive f with q^n − 1 ≤ 80 and 1 ≤ k < n.
fn correspondence_instances() -> Vec<(FieldSpec, usize)> {
    let mut out = Vec::new();
    for (p, m) in [(2, 1), (3, 1), (2, 2), (5, 1)] {
        let field = FieldSpec::new(p, m, None).unwrap();
        let q = field.order();
        for n in 2.. {
            if q.pow(n as u32) - 1 > 80 {
                break;
            }
            out.push((field.clone(), n));
        }
    }
    out
}

fn correspondence() -> Outcome {
    let mut count = 0;
    for (field, n) in correspondence_instances() {
        for f in enumerate_primitive(&field, n).map_err(|e| e.to_string())? {
            for k in 1..n {
                let ok = correspondence_check(&field, n, k, &f).map_err(|e| e.to_string())?;
                ensure(ok, || format!("GF({}) n={n} k={k} f={f}", field.order()))?;
                count += 1;
            }
        }
    }
    let gf3 = FieldSpec::prime(3).unwrap();
    ensure(enumerate_primitive(&gf3, 3).unwrap().len() == 4, || "expected four primitive cubics over GF(3)".into())?;
    Ok(format!("{count} (f, k) instances over GF(2), GF(3), GF(4), GF(5)"))
}

fn spectrum_laws() -> Outcome {
    let mut count = 0;
    for (field, n) in correspondence_instances() {
        let q = field.order();
        let v = q.pow(n as u32) - 1;
        for f in enumerate_primitive(&field, n).map_err(|e| e.to_string())? {
            for k in 1..n {
                let fam = msequence_construct(&field, n, k, Some(&f)).map_err(|e| e.to_string())?.family;
                ensure(fam.is_partition(), || format!("GF({q}) n={n} k={k}: not a partition"))?;
                let sp = spectrum(&fam);
                let inner = q.pow((n - k) as u32) - 1;
                for d in 1..v {
                    ensure(sp.internal(d) == inner, || format!("GF({q}) n={n} k={k} d={d}: I = {}", sp.internal(d)))?;
                    ensure(sp.external(d) == v - inner, || format!("GF({q}) n={n} k={k} d={d}: E = {}", sp.external(d)))?;
                    if k == n - 1 {
                        ensure(sp.external(d) == q * (q.pow(n as u32 - 1) - 1), || format!("GF({q}) n={n} d={d}"))?;
                    }
                }
                count += 1;
            }
        }
    }
    Ok(format!("{count} families, I(d) = q^(n-k) - 1 and E(d) = v - I(d) for every d"))
}

fn example_spectra() -> Outcome {
    let pair = DifferenceFamily::new(7, [vec![0, 1, 3], vec![2, 4, 5, 6]]).unwrap();
    let sp = spectrum(&pair);
    for d in 1..7 {
        ensure(sp.internal(d) == 3 && sp.external(d) == 4, || format!("complement pair d={d}"))?;
    }
    let fam = DifferenceFamily::new(25, [vec![1, 2, 3, 4, 6, 15], vec![5, 9, 10, 14, 17, 24]]).unwrap();
    let sp = spectrum(&fam);
    for d in 1..25u64 {
        let want = match d {
            1 | 24 => 4,
            7 | 9 | 10 | 15 | 16 | 18 => 2,
            6 | 8 | 17 | 19 => 1,
            _ => 3,
        };
        ensure(sp.external(d) == 3, || format!("Z_25 d={d}: E = {}", sp.external(d)))?;
        ensure(sp.internal(d) == want, || format!("Z_25 d={d}: I = {}, expected {want}", sp.internal(d)))?;
    }
    Ok("Z_7 complement pair and Z_25 pair exact".into())
}

fn random_word(rng: &mut ChaCha8Rng, n: usize, q: u64) -> HopSequence {
    HopSequence::new(q, (0..n).map(|_| rng.random_range(0..q)).collect()).unwrap()
}

fn random_non_member(rng: &mut ChaCha8Rng, n: usize) -> Permutation {
    loop {
        let mut images: Vec<usize> = (0..n).collect();
        for i in (1..n).rev() {
            images.swap(i, rng.random_range(0..=i));
        }
        let g = Permutation::from_images(images).unwrap();
        if !is_in_normalizer(&g) {
            return g;
        }
    }
}

fn closure_commutes(s: &Fhs, g: &Permutation) -> bool {
    rotational_closure(&s.rotate(g).unwrap()) == rotational_closure(s).rotate(g).unwrap()
}

fn fhs_theorems() -> Outcome {
    let mut rng = ChaCha8Rng::seed_from_u64(SEED);
    let mut periodic = 0;
    for _ in 0..500 {
        let n = rng.random_range(2..=12);
        let q = rng.random_range(2..=4);
        let w = random_word(&mut rng, n, q);
        let s = Fhs::single(w.clone());
        let closure = rotational_closure(&s);
        let h = max_auto(&w);
        ensure(h == n - min_shift_distance(&s).unwrap(), || format!("{w:?}: H(w) = {h}"))?;
        if closure.len() == n {
            ensure(h == n - min_distance(&closure).unwrap(), || format!("{w:?}: set distance"))?;
        } else {
            periodic += 1;
            ensure(h == n, || format!("{w:?}: periodic word with H(w) = {h}"))?;
        }
        for a in normalizer_elements(n) {
            ensure(closure_commutes(&s, &a.to_permutation()), || format!("{w:?}: affine {a:?}"))?;
        }
    }
    for _ in 0..100 {
        let n = rng.random_range(2..=12);
        let q = rng.random_range(2..=4);
        let m = rng.random_range(1..=3);
        let s = Fhs::new((0..m).map(|_| random_word(&mut rng, n, q)).collect()).unwrap();
        let mf = max_correlation(&s);
        ensure(mf == n - min_shift_distance(&s).unwrap(), || format!("{s:?}: M(F) = {mf}"))?;
        let closure = rotational_closure(&s);
        if closure.len() == s.len() * n {
            ensure(mf == n - min_distance(&closure).unwrap(), || format!("{s:?}: set distance"))?;
        }
        for a in normalizer_elements(n) {
            ensure(closure_commutes(&s, &a.to_permutation()), || format!("{s:?}: affine {a:?}"))?;
        }
    }
    // S_n equals the normalizer for n ≤ 3
    for n in 4..=12 {
        let witness = Fhs::single(HopSequence::new(n as u64, (0..n as u64).collect()).unwrap());
        for _ in 0..20 {
            let g = random_non_member(&mut rng, n);
            ensure(!closure_commutes(&witness, &g), || format!("non-member {g} preserves closure at n={n}"))?;
        }
    }
    Ok(format!("500 words ({periodic} periodic), 100 schemes, 20 non-members for each n in 4..=12"))
}

fn permutations(n: usize) -> Vec<Vec<usize>> {
    if n == 0 {
        return vec![Vec::new()];
    }
    let mut out = Vec::new();
    for p in permutations(n - 1) {
        for i in 0..n {
            let mut q = p.clone();
            q.insert(i, n - 1);
            out.push(q);
        }
    }
    out
}

fn normalizer_parametrization() -> Outcome {
    let mut sizes = Vec::new();
    for n in 3..=8 {
        let brute: BTreeSet<Permutation> = permutations(n)
            .into_iter()
            .map(|p| Permutation::from_images(p).unwrap())
            .filter(is_in_normalizer)
            .collect();
        let affine: BTreeSet<Permutation> = normalizer_elements(n).iter().map(|a| a.to_permutation()).collect();
        ensure(brute == affine, || format!("n={n}: {} brute vs {} affine", brute.len(), affine.len()))?;
        ensure(affine.len() as u64 == n as u64 * euler_phi(n as u64), || format!("n={n}: |N| = {}", affine.len()))?;
        sizes.push(affine.len());
    }
    ensure(sizes[4] == 42, || "n=7 should give 42".into())?;
    Ok(format!("|N| for n = 3..8: {sizes:?}"))
}

fn translation_round_trip() -> Outcome {
    let mut rng = ChaCha8Rng::seed_from_u64(SEED ^ 8);
    for _ in 0..200 {
        let n = rng.random_range(2..=10);
        let q = rng.random_range(2..=4);
        let w = random_word(&mut rng, n, q);
        let units: Vec<usize> = (1..n).filter(|&a| gcd(a as u64, n as u64) == 1).collect();
        let a = *units.choose(&mut rng).unwrap();
        let b = rng.random_range(0..n);
        let g = Permutation::from_images((0..n).map(|i| (a * i + b) % n).collect()).unwrap();
        let phi = phi_gamma(&g).map_err(|e| e.to_string())?;
        let (image, image_symbols) = fhs_to_ddf(&rotate(&w, &g).unwrap());
        let (base, base_symbols) = fhs_to_ddf(&w);
        let moved = base.affine_image(phi.a as u64, phi.b as u64).unwrap();
        ensure(image_symbols == base_symbols && image == moved, || format!("{w:?} under {g}"))?;
    }
    let g = Permutation::parse_cycles(5, "(1 5 3 4)").unwrap();
    let phi = phi_gamma(&g).unwrap();
    ensure((phi.a, phi.b) == (2, 4), || format!("Z_5 gamma gives {phi:?}"))?;
    let w = HopSequence::from_symbols(vec![1, 1, 2, 3, 2]).unwrap();
    let image = rotate(&w, &g).unwrap();
    ensure(image.symbols() == [3, 1, 2, 2, 1], || format!("Z_5 image {image:?}"))?;
    let f1 = DifferenceFamily::new(5, [vec![1], vec![0, 2], vec![3, 4]]).unwrap();
    let f2 = DifferenceFamily::new(5, [vec![0], vec![1, 4], vec![2, 3]]).unwrap();
    ensure(ddf_equivalences(&f1, &f2).contains(&AffineMap { a: 1, b: 4 }), || "Z_5 translation by 4".into())?;
    Ok("200 random pairs exact; Z_5 example gives (a, b) = (2, 4) and translation b = 4".into())
}

fn primitive_counts() -> Outcome {
    let grid: [(u64, u32, &[usize]); 4] = [(2, 1, &[1, 2, 3, 4, 5]), (3, 1, &[1, 2, 3]), (2, 2, &[1, 2]), (5, 1, &[1, 2])];
    let mut counts = Vec::new();
    for (p, m, ns) in grid {
        let field = FieldSpec::new(p, m, None).unwrap();
        for &n in ns {
            let got = enumerate_primitive(&field, n).map_err(|e| e.to_string())?.len() as u64;
            let want = euler_phi(field.order().pow(n as u32) - 1) / n as u64;
            ensure(got == want, || format!("q={} n={n}: {got} vs {want}", field.order()))?;
            counts.push(got);
        }
    }
    Ok(format!("counts {counts:?}"))
}

fn intersection_verifier() -> Outcome {
    let mut lines = Vec::new();
    for (p, n) in [(2u64, 3usize), (3, 3), (2, 4)] {
        let field = FieldSpec::prime(p).unwrap();
        let q = field.order();
        for f in enumerate_primitive(&field, n).map_err(|e| e.to_string())? {
            let r = verify_orbit_intersections(&field, n, &f).map_err(|e| e.to_string())?;
            ensure(r.violations.is_empty(), || format!("q={q} n={n} f={f}: {:?}", r.violations.first()))?;
            ensure(r.type_one.len() as u64 == q - 2, || format!("q={q} n={n}: type I {:?}", r.type_one))?;
            let e = q * (q.pow(n as u32 - 1) - 1);
            ensure(r.external.iter().all(|&x| x == e), || format!("q={q} n={n}: external {:?}", r.external))?;
        }
        lines.push(format!("({q},{n})"));
    }
    Ok(format!("zero violations for every primitive f at {}", lines.join(" ")))
}

fn main() -> ExitCode {
    let criteria: [Criterion; 10] = [
        ("sequence golden vectors", sequence_vectors),
        ("geometry golden vectors", geometry_vectors),
        ("sequence/geometry correspondence", correspondence),
        ("spectrum laws", spectrum_laws),
        ("example spectra", example_spectra),
        ("hopping-sequence theorems", fhs_theorems),
        ("normalizer parametrization", normalizer_parametrization),
        ("translation round trip", translation_round_trip),
        ("primitive counts", primitive_counts),
        ("orbit intersection verifier", intersection_verifier),
    ];
    let mut failed = 0;
    for (i, (name, run)) in criteria.iter().enumerate() {
        let start = Instant::now();
        let outcome = std::panic::catch_unwind(run).unwrap_or_else(|_| Err("panicked".into()));
        let t = start.elapsed();
        match outcome {
            Ok(detail) => println!("criterion {:>2} PASS  {name}: {detail} [{t:.2?}]", i + 1),
            Err(why) => {
                failed += 1;
                println!("criterion {:>2} FAIL  {name}: {why} [{t:.2?}]", i + 1);
            }
        }
    }
    println!("{} of {} criteria passed", criteria.len() - failed, criteria.len());
    if failed == 0 {
        ExitCode::SUCCESS
    } else {
        ExitCode::FAILURE
    }
}
