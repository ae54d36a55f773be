//! Linear feedback shift registers over GF(q), m-sequences and the σ_k transform.

use serde::Serialize;

use crate::algebra::{enumerate_primitive, FieldElement, FieldSpec, Poly};
use crate::ddf::DifferenceFamily;
use crate::error::{Error, Result};
use crate::fhs::{fhs_to_ddf, HopSequence};

/// Feedback s_{t+n} = c_{n-1}s_{t+n-1} + … + c_0 s_t.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct LfsrSpec {
    field: FieldSpec,
    taps: Vec<FieldElement>,
}

/// Register contents (s_t, …, s_{t+n-1}).
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct LfsrState {
    spec: LfsrSpec,
    registers: Vec<FieldElement>,
}

impl LfsrSpec {
    pub fn new(field: &FieldSpec, taps: Vec<FieldElement>) -> Result<LfsrSpec> {
        if taps.is_empty() {
            return Err(Error::InvalidArgument("an LFSR needs at least one stage".into()));
        }
        Ok(LfsrSpec { field: field.clone(), taps })
    }

    /// Taps c_0..c_{n-1} as signed element indices.
    pub fn from_indices(field: &FieldSpec, taps: &[i64]) -> Result<LfsrSpec> {
        let taps = taps.iter().map(|&t| field.element_from_signed(t)).collect::<Result<Vec<_>>>()?;
        LfsrSpec::new(field, taps)
    }

    /// The register whose characteristic polynomial is the monic `f`.
    pub fn from_poly(f: &Poly) -> Result<LfsrSpec> {
        let n = match f.degree() {
            Some(n) if n >= 1 && f.is_monic() => n,
            _ => return Err(Error::NotMonic),
        };
        let field = f.field();
        LfsrSpec::new(field, (0..n).map(|i| field.neg(f.coeff(i))).collect())
    }

    pub fn field(&self) -> &FieldSpec {
        &self.field
    }

    pub fn n(&self) -> usize {
        self.taps.len()
    }

    pub fn taps(&self) -> &[FieldElement] {
        &self.taps
    }

    /// x^n − c_{n-1}x^{n-1} − … − c_0.
    pub fn characteristic_poly(&self) -> Poly {
        let f = &self.field;
        let mut coeffs: Vec<FieldElement> = self.taps.iter().map(|&c| f.neg(c)).collect();
        coeffs.push(f.one());
        Poly::new(f, coeffs)
    }

    pub fn state(&self, registers: Vec<FieldElement>) -> Result<LfsrState> {
        if registers.len() != self.n() {
            return Err(Error::LengthMismatch(format!("{} registers for {} stages", registers.len(), self.n())));
        }
        Ok(LfsrState { spec: self.clone(), registers })
    }

    /// The state (0, …, 0, 1).
    pub fn impulse_state(&self) -> LfsrState {
        let mut registers = vec![self.field.zero(); self.n()];
        registers[self.n() - 1] = self.field.one();
        LfsrState { spec: self.clone(), registers }
    }

    fn feedback(&self, registers: &[FieldElement]) -> FieldElement {
        let f = &self.field;
        registers.iter().zip(&self.taps).fold(f.zero(), |acc, (&s, &c)| f.add(acc, f.mul(s, c)))
    }
}

impl LfsrState {
    pub fn registers(&self) -> &[FieldElement] {
        &self.registers
    }

    /// Outputs s_t and shifts in s_{t+n}.
    pub fn step(&self) -> (FieldElement, LfsrState) {
        let next = self.spec.feedback(&self.registers);
        let mut registers = self.registers[1..].to_vec();
        registers.push(next);
        (self.registers[0], LfsrState { spec: self.spec.clone(), registers })
    }
}

/// First `length` outputs from the state (0, …, 0, 1).
pub fn impulse_response(spec: &LfsrSpec, length: usize) -> Vec<FieldElement> {
    let mut state = spec.impulse_state();
    let mut out = Vec::with_capacity(length);
    for _ in 0..length {
        let (s, next) = state.step();
        out.push(s);
        state = next;
    }
    out
}

/// Least period of the impulse response.
pub fn period(spec: &LfsrSpec) -> Result<u64> {
    if spec.taps[0].is_zero() {
        return Err(Error::DegenerateTaps);
    }
    // With c_0 ≠ 0 the state map is a bijection, so the orbit is a pure cycle.
    let start = spec.impulse_state();
    let mut state = start.step().1;
    let mut t = 1u64;
    while state.registers != start.registers {
        state = state.step().1;
        t += 1;
    }
    Ok(t)
}

fn sequence_period(field: &FieldSpec, n: usize) -> Result<u64> {
    field
        .order()
        .checked_pow(n as u32)
        .filter(|&v| v <= 1 << 32)
        .map(|v| v - 1)
        .ok_or_else(|| Error::TooLarge(format!("q^{n} too large")))
}

pub fn is_m_sequence(spec: &LfsrSpec) -> Result<bool> {
    Ok(period(spec)? == sequence_period(&spec.field, spec.n())?)
}

/// Σ idx(w_i)·q^i.
pub fn sigma_k(field: &FieldSpec, window: &[FieldElement]) -> u64 {
    window.iter().rev().fold(0, |acc, e| acc * field.order() + e.index())
}

/// u_t = σ_k(s_t, …, s_{t+k-1}) over one period of the m-sequence, indices mod the period.
pub fn sigma_transform(spec: &LfsrSpec, k: usize) -> Result<HopSequence> {
    if k == 0 || k > spec.n() {
        return Err(Error::BadK { k, max: spec.n() });
    }
    if !is_m_sequence(spec)? {
        return Err(Error::NotPrimitive);
    }
    let len = sequence_period(&spec.field, spec.n())? as usize;
    let s = impulse_response(spec, len);
    let symbols = (0..len)
        .map(|t| {
            let window: Vec<FieldElement> = (0..k).map(|i| s[(t + i) % len]).collect();
            sigma_k(&spec.field, &window)
        })
        .collect();
    HopSequence::new(spec.field.order().pow(k as u32), symbols)
}

/// An m-sequence hopping pattern and its difference family.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct SequenceConstruction {
    pub poly: Poly,
    pub sequence: HopSequence,
    pub family: DifferenceFamily,
}

/// Primitive polynomial of degree n: the given one after checks, else the first in lexicographic order.
pub fn primitive_or_default(field: &FieldSpec, n: usize, f: Option<&Poly>) -> Result<Poly> {
    match f {
        Some(f) => {
            if f.field() != field {
                return Err(Error::InvalidArgument("polynomial over a different field".into()));
            }
            if f.degree() != Some(n) {
                return Err(Error::DimensionMismatch(format!("polynomial of degree {:?}, expected {n}", f.degree())));
            }
            if !crate::algebra::is_primitive(f)? {
                return Err(Error::NotPrimitive);
            }
            Ok(f.clone())
        }
        None => enumerate_primitive(field, n)?.into_iter().next().ok_or(Error::NotPrimitive),
    }
}

/// σ_k-transform of the m-sequence of `f` (default: first primitive polynomial), for 1 ≤ k ≤ n − 1.
/// Class Q_i holds the times whose window encodes to i.
pub fn msequence_construct(field: &FieldSpec, n: usize, k: usize, f: Option<&Poly>) -> Result<SequenceConstruction> {
    if n < 2 || k == 0 || k >= n {
        return Err(Error::BadK { k, max: n.saturating_sub(1) });
    }
    let poly = primitive_or_default(field, n, f)?;
    let sequence = sigma_transform(&LfsrSpec::from_poly(&poly)?, k)?;
    let (family, symbols) = fhs_to_ddf(&sequence);
    debug_assert_eq!(symbols.len() as u64, sequence.q(), "every window value occurs when k < n");
    Ok(SequenceConstruction { poly, sequence, family })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::companion_matrix;

    fn gf3() -> FieldSpec {
        FieldSpec::prime(3).unwrap()
    }

    fn idx(v: &[FieldElement]) -> Vec<u64> {
        v.iter().map(|e| e.index()).collect()
    }

    #[test]
    fn taps_and_polynomial_agree() {
        let spec = LfsrSpec::from_indices(&gf3(), &[2, 0, 1]).unwrap();
        let f = Poly::parse(&gf3(), "x^3-x^2-2").unwrap();
        assert_eq!(spec.characteristic_poly(), f);
        assert_eq!(LfsrSpec::from_poly(&f).unwrap(), spec);
    }

    #[test]
    fn stepping() {
        let spec = LfsrSpec::from_indices(&gf3(), &[2, 0, 1]).unwrap();
        let (out, next) = spec.impulse_state().step();
        assert_eq!(out, FieldElement::ZERO);
        assert_eq!(idx(next.registers()), vec![0, 1, 1]);
        let zero = spec.state(vec![FieldElement::ZERO; 3]).unwrap();
        assert_eq!(zero.step().1, zero);
        assert!(spec.state(vec![FieldElement::ZERO; 2]).is_err());
    }

    #[test]
    fn step_is_companion_product() {
        let f = gf3();
        let spec = LfsrSpec::from_indices(&f, &[2, 0, 1]).unwrap();
        let c = companion_matrix(&spec.characteristic_poly()).unwrap();
        for t in 0..27u64 {
            let regs: Vec<FieldElement> = (0..3).map(|i| f.element(t / 3u64.pow(i) % 3).unwrap()).collect();
            let next = spec.state(regs.clone()).unwrap().step().1;
            assert_eq!(next.registers(), c.apply_row(&regs).unwrap().as_slice());
        }
    }

    #[test]
    fn impulse_response_period_26() {
        let spec = LfsrSpec::from_indices(&gf3(), &[2, 0, 1]).unwrap();
        let s: String = impulse_response(&spec, 26).iter().map(|e| e.to_string()).collect();
        assert_eq!(s, "00111021121010022201221202");
        assert_eq!(period(&spec).unwrap(), 26);
        assert!(is_m_sequence(&spec).unwrap());
    }

    #[test]
    fn small_periods() {
        let gf2 = FieldSpec::prime(2).unwrap();
        let spec = LfsrSpec::from_indices(&gf2, &[1, 1]).unwrap();
        assert_eq!(period(&spec).unwrap(), 3);
        assert!(is_m_sequence(&spec).unwrap());
        // x^3 - 1 = (x - 1)(x^2 + x + 1) over GF(3)
        let reducible = LfsrSpec::from_indices(&gf3(), &[1, 0, 0]).unwrap();
        assert_eq!(period(&reducible).unwrap(), 3);
        assert!(!is_m_sequence(&reducible).unwrap());
        let degenerate = LfsrSpec::from_indices(&gf3(), &[0, 1, 1]).unwrap();
        assert_eq!(period(&degenerate), Err(Error::DegenerateTaps));
    }

    #[test]
    fn sigma_digits() {
        let f = gf3();
        let e = |i| f.element(i).unwrap();
        assert_eq!(sigma_k(&f, &[e(0), e(0), e(1)]), 9);
        assert_eq!(sigma_k(&f, &[e(0), e(1)]), 3);
        assert_eq!(sigma_k(&f, &[e(0), e(0)]), 0);
    }

    #[test]
    fn transform_columns() {
        let spec = LfsrSpec::from_indices(&gf3(), &[2, 0, 1]).unwrap();
        let s2 = sigma_transform(&spec, 2).unwrap();
        assert_eq!(
            s2.symbols(),
            &[0, 3, 4, 4, 1, 6, 5, 4, 7, 5, 1, 3, 1, 0, 6, 8, 8, 2, 3, 7, 8, 5, 7, 2, 6, 2]
        );
        assert_eq!(s2.q(), 9);
        let s3 = sigma_transform(&spec, 3).unwrap();
        assert_eq!(
            s3.symbols(),
            &[9, 12, 13, 4, 19, 15, 14, 22, 16, 5, 10, 3, 1, 18, 24, 26, 8, 11, 21, 25, 17, 23, 7, 20, 6, 2]
        );
        assert_eq!(sigma_transform(&spec, 0), Err(Error::BadK { k: 0, max: 3 }));
        assert_eq!(sigma_transform(&spec, 4), Err(Error::BadK { k: 4, max: 3 }));
        let reducible = LfsrSpec::from_indices(&gf3(), &[1, 0, 0]).unwrap();
        assert_eq!(sigma_transform(&reducible, 1), Err(Error::NotPrimitive));
    }

    #[test]
    fn construction_families() {
        let f = Poly::parse(&gf3(), "x^3-x^2-2").unwrap();
        let c = msequence_construct(&gf3(), 3, 2, Some(&f)).unwrap();
        let expected: Vec<Vec<u64>> = vec![
            vec![0, 13],
            vec![4, 10, 12],
            vec![17, 23, 25],
            vec![1, 11, 18],
            vec![2, 3, 7],
            vec![6, 9, 21],
            vec![5, 14, 24],
            vec![8, 19, 22],
            vec![15, 16, 20],
        ];
        // classes are indexed by symbol
        assert_eq!(c.family.classes(), expected.as_slice());

        let c1 = msequence_construct(&gf3(), 3, 1, Some(&f)).unwrap();
        assert_eq!(
            c1.family.classes(),
            &[
                vec![0, 1, 5, 11, 13, 14, 18, 24],
                vec![2, 3, 4, 7, 8, 10, 12, 19, 22],
                vec![6, 9, 15, 16, 17, 20, 21, 23, 25]
            ]
        );
        // the default polynomial is the first primitive one, which is f
        assert_eq!(msequence_construct(&gf3(), 3, 2, None).unwrap(), c);
        assert_eq!(msequence_construct(&gf3(), 3, 3, None), Err(Error::BadK { k: 3, max: 2 }));
        let reducible = Poly::parse(&gf3(), "x^3-1").unwrap();
        assert_eq!(msequence_construct(&gf3(), 3, 1, Some(&reducible)), Err(Error::NotPrimitive));
    }
}
