//! PG(n, q): points, the cyclic projectivity fixing H_∞ (x_n = 0) and ∞ = (0,…,0,1),
//! orbit indexing, parallel classes of flats, and the geometric family construction.

mod verify;

pub use verify::{
    correspondence_check, multiplier_of_generator, verify_orbit_intersections, IntersectionReport, Violation,
};

use std::collections::HashMap;
use std::fmt;

use serde::Serialize;

use crate::algebra::{companion_matrix, is_primitive, FieldElement, FieldSpec, Matrix, Poly};
use crate::ddf::DifferenceFamily;
use crate::error::{Error, Result};

/// Homogeneous coordinates (x_0, …, x_n), scaled so the last nonzero coordinate is 1.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct ProjPoint {
    coords: Vec<FieldElement>,
}

impl ProjPoint {
    pub fn new(field: &FieldSpec, mut coords: Vec<FieldElement>) -> Result<ProjPoint> {
        let last = coords
            .iter()
            .rposition(|c| !c.is_zero())
            .ok_or_else(|| Error::InvalidArgument("the zero vector is not a point".into()))?;
        let s = field.inv(coords[last]).unwrap();
        for c in coords.iter_mut() {
            *c = field.mul(s, *c);
        }
        Ok(ProjPoint { coords })
    }

    pub fn from_indices(field: &FieldSpec, coords: &[i64]) -> Result<ProjPoint> {
        let coords = coords.iter().map(|&c| field.element_from_signed(c)).collect::<Result<Vec<_>>>()?;
        ProjPoint::new(field, coords)
    }

    /// The affine point (x_0, …, x_{n-1}, 1).
    pub fn affine(field: &FieldSpec, xs: &[FieldElement]) -> ProjPoint {
        let mut coords = xs.to_vec();
        coords.push(field.one());
        ProjPoint { coords }
    }

    pub fn coords(&self) -> &[FieldElement] {
        &self.coords
    }

    /// Projective dimension n of the ambient space.
    pub fn dim(&self) -> usize {
        self.coords.len() - 1
    }

    pub fn is_affine(&self) -> bool {
        !self.coords[self.dim()].is_zero()
    }

    pub fn is_infinity(&self) -> bool {
        self.is_affine() && self.coords[..self.dim()].iter().all(|c| c.is_zero())
    }

    pub fn to_indices(&self) -> Vec<u64> {
        self.coords.iter().map(|c| c.index()).collect()
    }
}

impl fmt::Display for ProjPoint {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self.coords.iter().map(|c| c.to_string()).collect();
        write!(f, "({})", parts.join(","))
    }
}

impl fmt::Debug for ProjPoint {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}

impl Serialize for ProjPoint {
    fn serialize<S: serde::Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        s.collect_seq(self.to_indices())
    }
}

/// An invertible (n+1)×(n+1) matrix acting on row vectors: P ↦ P·A, then normalized.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Projectivity {
    matrix: Matrix,
}

impl Projectivity {
    pub fn from_matrix(matrix: Matrix) -> Result<Projectivity> {
        if !matrix.is_square() || matrix.rows() < 2 {
            return Err(Error::DimensionMismatch(format!("{}x{} is not a projectivity", matrix.rows(), matrix.cols())));
        }
        if !matrix.is_invertible() {
            return Err(Error::SingularMatrix);
        }
        Ok(Projectivity { matrix })
    }

    /// diag(C, 1) for the companion matrix C of a primitive f.
    pub fn from_poly(f: &Poly) -> Result<Projectivity> {
        if !is_primitive(f)? {
            return Err(Error::NotPrimitive);
        }
        Projectivity::from_matrix(companion_matrix(f)?.extend_with_one())
    }

    pub fn matrix(&self) -> &Matrix {
        &self.matrix
    }

    pub fn field(&self) -> &FieldSpec {
        self.matrix.field()
    }

    pub fn n(&self) -> usize {
        self.matrix.rows() - 1
    }

    pub fn apply(&self, p: &ProjPoint) -> ProjPoint {
        let image = self.matrix.apply_row(&p.coords).expect("point and matrix dimensions agree");
        ProjPoint::new(self.field(), image).expect("invertible matrices map points to points")
    }

    pub fn pow(&self, e: u64) -> Projectivity {
        Projectivity { matrix: self.matrix.pow(e).expect("square") }
    }

    /// Whether H_∞ and ∞ are both fixed, i.e. the matrix is block diagonal diag(B, λ).
    pub fn fixes_infinity(&self) -> bool {
        let n = self.n();
        (0..n).all(|i| self.matrix.get(i, n).is_zero() && self.matrix.get(n, i).is_zero())
    }

    /// The block B acting on the affine coordinates, normalized so that λ = 1.
    fn affine_block(&self) -> Result<Matrix> {
        if !self.fixes_infinity() {
            return Err(Error::DoesNotFixInfinity);
        }
        let n = self.n();
        let f = self.field();
        let s = f.inv(self.matrix.get(n, n)).unwrap();
        let mut b = self.matrix.leading_block(n);
        for i in 0..n {
            for j in 0..n {
                b.set(i, j, f.mul(s, b.get(i, j)));
            }
        }
        Ok(b)
    }
}

fn affine_count(field: &FieldSpec, n: usize) -> Result<u64> {
    field
        .order()
        .checked_pow(n as u32)
        .filter(|&v| v <= 1 << 24)
        .map(|v| v - 1)
        .ok_or_else(|| Error::TooLarge(format!("q^{n} affine points")))
}

fn digits(field: &FieldSpec, mut t: u64, len: usize) -> Vec<FieldElement> {
    (0..len)
        .map(|_| {
            let d = t % field.order();
            t /= field.order();
            field.element(d).unwrap()
        })
        .collect()
}

/// Affine points (x_0, …, x_{n-1}, 1) other than ∞, with x_0 the least significant digit.
pub fn pg_affine_points(n: usize, field: &FieldSpec) -> Result<Vec<ProjPoint>> {
    if n < 1 {
        return Err(Error::InvalidArgument("n must be at least 1".into()));
    }
    let count = affine_count(field, n)?;
    Ok((1..=count).map(|t| ProjPoint::affine(field, &digits(field, t, n))).collect())
}

/// Every point of PG(n, q).
pub fn pg_points(n: usize, field: &FieldSpec) -> Result<Vec<ProjPoint>> {
    let count = field
        .order()
        .checked_pow(n as u32 + 1)
        .filter(|&v| v <= 1 << 24)
        .ok_or_else(|| Error::TooLarge(format!("q^{} vectors", n + 1)))?;
    Ok((1..count)
        .map(|t| digits(field, t, n + 1))
        .filter(|v| v.iter().rev().find(|c| !c.is_zero()) == Some(&field.one()))
        .map(|coords| ProjPoint { coords })
        .collect())
}

/// Orbits of ⟨τ⟩ on PG(n, q), each listed from its least point.
pub fn point_orbits(tau: &Projectivity) -> Result<Vec<Vec<ProjPoint>>> {
    let mut seen = std::collections::HashSet::new();
    let mut orbits = Vec::new();
    for p in pg_points(tau.n(), tau.field())? {
        if seen.contains(&p) {
            continue;
        }
        let mut orbit = vec![p.clone()];
        seen.insert(p.clone());
        let mut cur = tau.apply(&p);
        while cur != p {
            seen.insert(cur.clone());
            orbit.push(cur.clone());
            cur = tau.apply(&cur);
        }
        orbits.push(orbit);
    }
    Ok(orbits)
}

/// Labels P_0^{τ^i} with i ∈ Z_{q^n-1}.
#[derive(Clone, Debug)]
pub struct OrbitIndex {
    tau: Projectivity,
    points: Vec<ProjPoint>,
    index: HashMap<ProjPoint, u64>,
}

impl OrbitIndex {
    pub fn new(tau: &Projectivity, base: &ProjPoint) -> Result<OrbitIndex> {
        if !tau.fixes_infinity() {
            return Err(Error::DoesNotFixInfinity);
        }
        if base.dim() != tau.n() || !base.is_affine() || base.is_infinity() {
            return Err(Error::BadBasePoint);
        }
        let expected = affine_count(tau.field(), tau.n())?;
        let mut points = vec![base.clone()];
        let mut cur = tau.apply(base);
        while &cur != base {
            if points.len() as u64 >= expected {
                break;
            }
            points.push(cur.clone());
            cur = tau.apply(&cur);
        }
        if points.len() as u64 != expected || &cur != base {
            let orbit = if &cur == base { points.len() as u64 } else { expected + 1 };
            return Err(Error::NotTransitive { orbit, expected });
        }
        let index = points.iter().enumerate().map(|(i, p)| (p.clone(), i as u64)).collect();
        Ok(OrbitIndex { tau: tau.clone(), points, index })
    }

    pub fn tau(&self) -> &Projectivity {
        &self.tau
    }

    pub fn len(&self) -> u64 {
        self.points.len() as u64
    }

    pub fn is_empty(&self) -> bool {
        self.points.is_empty()
    }

    pub fn index_of(&self, p: &ProjPoint) -> Option<u64> {
        self.index.get(p).copied()
    }

    pub fn point(&self, i: u64) -> &ProjPoint {
        &self.points[(i % self.len()) as usize]
    }
}

pub fn orbit_index(tau: &Projectivity, base: &ProjPoint) -> Result<OrbitIndex> {
    OrbitIndex::new(tau, base)
}

/// n×n change of affine coordinates F with `direction`·F = (0, …, 0, 1), so that with
/// k = n − 1 the fibers are the lines through the point at infinity (direction, 0).
pub fn direction_frame(field: &FieldSpec, direction: &[FieldElement]) -> Result<Matrix> {
    let n = direction.len();
    let pivot = direction
        .iter()
        .position(|c| !c.is_zero())
        .ok_or_else(|| Error::InvalidArgument("direction must be nonzero".into()))?;
    let mut basis = Matrix::zero(field, n, n);
    for (row, i) in (0..n).filter(|&i| i != pivot).enumerate() {
        basis.set(row, i, field.one());
    }
    for (j, &c) in direction.iter().enumerate() {
        basis.set(n - 1, j, c);
    }
    basis.inverse()
}

/// Frame from a point P_∞ = (d_0, …, d_{n-1}, 0) on H_∞.
pub fn frame_for_point_at_infinity(p: &ProjPoint, field: &FieldSpec) -> Result<Matrix> {
    if p.is_affine() {
        return Err(Error::InvalidArgument(format!("{p} is not on the hyperplane at infinity")));
    }
    direction_frame(field, &p.coords[..p.dim()])
}

/// Classes Z_0..Z_{q^k-1}: affine points grouped by Σ_{j<k} idx(y_j)·q^j where
/// y = (x_0, …, x_{n-1})·F. Z_0 omits ∞.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct ParallelClass {
    pub k: usize,
    pub classes: Vec<Vec<ProjPoint>>,
}

pub fn parallel_class(n: usize, field: &FieldSpec, k: usize, frame: Option<&Matrix>) -> Result<ParallelClass> {
    if n < 2 || k == 0 || k >= n {
        return Err(Error::BadK { k, max: n.saturating_sub(1) });
    }
    if let Some(fr) = frame {
        if fr.rows() != n || fr.cols() != n {
            return Err(Error::DimensionMismatch(format!("frame must be {n}x{n}")));
        }
        if !fr.is_invertible() {
            return Err(Error::SingularMatrix);
        }
    }
    let q = field.order();
    let mut classes = vec![Vec::new(); q.pow(k as u32) as usize];
    for p in pg_affine_points(n, field)? {
        let affine = &p.coords[..n];
        let y = match frame {
            Some(fr) => fr.apply_row(affine)?,
            None => affine.to_vec(),
        };
        let key = y[..k].iter().rev().fold(0, |acc, e| acc * q + e.index());
        classes[key as usize].push(p);
    }
    Ok(ParallelClass { k, classes })
}

/// Family whose i-th class holds the orbit labels of Z_i.
pub fn geometric_construct(
    tau: &Projectivity,
    k: usize,
    base: &ProjPoint,
    frame: Option<&Matrix>,
) -> Result<DifferenceFamily> {
    tau.affine_block()?;
    let idx = orbit_index(tau, base)?;
    let pc = parallel_class(tau.n(), tau.field(), k, frame)?;
    let classes = pc
        .classes
        .iter()
        .map(|c| c.iter().map(|p| idx.index_of(p).expect("orbit covers the affine points")).collect::<Vec<_>>());
    DifferenceFamily::new(idx.len(), classes)
}

/// The state point (0, …, 0, 1, 1), the image of the impulse state.
pub fn impulse_point(field: &FieldSpec, n: usize) -> ProjPoint {
    let mut xs = vec![field.zero(); n];
    xs[n - 1] = field.one();
    ProjPoint::affine(field, &xs)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn gf3() -> FieldSpec {
        FieldSpec::prime(3).unwrap()
    }

    fn pt(c: &[i64]) -> ProjPoint {
        ProjPoint::from_indices(&gf3(), c).unwrap()
    }

    #[test]
    fn normalization() {
        assert_eq!(pt(&[2, 0, 2, 0]), pt(&[1, 0, 1, 0]));
        assert_eq!(pt(&[1, 2, 0, 2]).to_indices(), vec![2, 1, 0, 1]);
        assert!(ProjPoint::from_indices(&gf3(), &[0, 0]).is_err());
        assert!(pt(&[0, 0, 0, 1]).is_infinity());
        assert!(!pt(&[1, 0, 0, 0]).is_affine());
    }

    #[test]
    fn affine_point_counts() {
        let pts = pg_affine_points(3, &gf3()).unwrap();
        assert_eq!(pts.len(), 26);
        assert!(pts.contains(&pt(&[0, 0, 1, 1])));
        assert!(!pts.contains(&pt(&[0, 0, 0, 1])));
        assert_eq!(pg_affine_points(2, &FieldSpec::prime(2).unwrap()).unwrap().len(), 3);
        assert_eq!(pg_points(3, &gf3()).unwrap().len(), 40);
    }

    #[test]
    fn companion_block_action() {
        let f = Poly::parse(&gf3(), "x^3-x^2-2x-2").unwrap();
        let tau = Projectivity::from_poly(&f).unwrap();
        assert!(tau.fixes_infinity());
        // (x, y, z, 1) -> (y, z, 2x + 2y + z, 1)
        assert_eq!(tau.apply(&pt(&[1, 2, 0, 1])), pt(&[2, 0, 0, 1]));
        assert!(tau.pow(26).matrix().is_identity());
        let reducible = Poly::parse(&gf3(), "x^3-1").unwrap();
        assert_eq!(Projectivity::from_poly(&reducible), Err(Error::NotPrimitive));
    }

    #[test]
    fn explicit_matrix_action() {
        let a = Matrix::from_indices(&gf3(), &[vec![0, 1, 0, 0], vec![1, 0, 1, 0], vec![0, 1, 1, 0], vec![0, 0, 0, 1]])
            .unwrap();
        let tau = Projectivity::from_matrix(a).unwrap();
        // (x, y, z, 1) -> (y, x + z, y + z, 1)
        assert_eq!(tau.apply(&pt(&[1, 2, 0, 1])), pt(&[2, 1, 2, 1]));
        let f = Poly::parse(&gf3(), "x^3-x^2-2x-2").unwrap();
        assert_eq!(tau.matrix().leading_block(3).eval_poly(&f).unwrap(), Matrix::zero(&gf3(), 3, 3));
    }

    #[test]
    fn orbit_labels_follow_the_sequence() {
        let f = Poly::parse(&gf3(), "x^3-x^2-2").unwrap();
        let tau = Projectivity::from_poly(&f).unwrap();
        let idx = orbit_index(&tau, &pt(&[0, 0, 1, 1])).unwrap();
        let s = [0, 0, 1, 1, 1, 0, 2, 1, 1, 2, 1, 0, 1, 0, 0, 2, 2, 2, 0, 1, 2, 2, 1, 2, 0, 2];
        for t in 0..26 {
            let p = pt(&[s[t], s[(t + 1) % 26], s[(t + 2) % 26], 1]);
            assert_eq!(idx.index_of(&p), Some(t as u64));
        }
        assert_eq!(orbit_index(&tau, &pt(&[0, 0, 0, 1])).unwrap_err(), Error::BadBasePoint);
        assert_eq!(orbit_index(&tau, &pt(&[1, 0, 0, 0])).unwrap_err(), Error::BadBasePoint);
    }

    #[test]
    fn non_transitive_generator() {
        // diag(C, 1) for x^3 - 1 has order 3
        let f = Poly::parse(&gf3(), "x^3-1").unwrap();
        let tau = Projectivity::from_matrix(companion_matrix(&f).unwrap().extend_with_one()).unwrap();
        assert!(matches!(orbit_index(&tau, &pt(&[0, 0, 1, 1])), Err(Error::NotTransitive { expected: 26, .. })));
    }

    #[test]
    fn parallel_lines_and_planes() {
        let pc = parallel_class(3, &gf3(), 2, None).unwrap();
        assert_eq!(pc.classes.len(), 9);
        assert_eq!(pc.classes[0].len(), 2);
        assert!(pc.classes[1..].iter().all(|c| c.len() == 3));
        // x_0 = 0 and x_1 = x_3 = 1: the points P_1, P_11, P_18 of the sequence
        let line = &pc.classes[3];
        for p in [pt(&[0, 1, 1, 1]), pt(&[0, 1, 0, 1]), pt(&[0, 1, 2, 1])] {
            assert!(line.contains(&p));
        }
        let planes = parallel_class(3, &gf3(), 1, None).unwrap();
        assert_eq!(planes.classes.iter().map(Vec::len).collect::<Vec<_>>(), vec![8, 9, 9]);
        assert!(planes.classes[1].iter().all(|p| p.coords()[0] == FieldElement::ONE));
        assert_eq!(parallel_class(3, &gf3(), 3, None), Err(Error::BadK { k: 3, max: 2 }));
    }

    #[test]
    fn frames_from_points_at_infinity() {
        let f = gf3();
        let fr = frame_for_point_at_infinity(&pt(&[1, 0, 0, 0]), &f).unwrap();
        let pc = parallel_class(3, &f, 2, Some(&fr)).unwrap();
        // the fiber through the origin is the x_0 axis
        assert_eq!(pc.classes[0], vec![pt(&[1, 0, 0, 1]), pt(&[2, 0, 0, 1])]);
        let id = frame_for_point_at_infinity(&pt(&[0, 0, 1, 0]), &f).unwrap();
        assert!(id.is_identity());
        assert!(frame_for_point_at_infinity(&pt(&[0, 0, 1, 1]), &f).is_err());
    }

    #[test]
    fn orbit_structure() {
        let f = Poly::parse(&gf3(), "x^3-x^2-2").unwrap();
        let tau = Projectivity::from_poly(&f).unwrap();
        let mut sizes: Vec<usize> = point_orbits(&tau).unwrap().iter().map(Vec::len).collect();
        sizes.sort();
        assert_eq!(sizes, vec![1, 13, 26]);
    }
}
