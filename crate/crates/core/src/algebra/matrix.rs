use super::field::{FieldElement, FieldSpec};
use super::number::order_dividing;
use super::poly::Poly;
use crate::error::{Error, Result};

/// Dense matrix over GF(q), row-major.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Matrix {
    field: FieldSpec,
    rows: usize,
    cols: usize,
    entries: Vec<FieldElement>,
}

impl Matrix {
    pub fn zero(field: &FieldSpec, rows: usize, cols: usize) -> Matrix {
        Matrix { field: field.clone(), rows, cols, entries: vec![field.zero(); rows * cols] }
    }

    pub fn identity(field: &FieldSpec, n: usize) -> Matrix {
        let mut m = Matrix::zero(field, n, n);
        for i in 0..n {
            m.set(i, i, field.one());
        }
        m
    }

    pub fn from_rows(field: &FieldSpec, rows: Vec<Vec<FieldElement>>) -> Result<Matrix> {
        let r = rows.len();
        let c = rows.first().map_or(0, Vec::len);
        if rows.iter().any(|row| row.len() != c) {
            return Err(Error::DimensionMismatch("ragged rows".into()));
        }
        Ok(Matrix { field: field.clone(), rows: r, cols: c, entries: rows.concat() })
    }

    /// From rows of signed element indices (see [`FieldSpec::element_from_signed`]).
    pub fn from_indices(field: &FieldSpec, rows: &[Vec<i64>]) -> Result<Matrix> {
        let rows = rows
            .iter()
            .map(|row| row.iter().map(|&v| field.element_from_signed(v)).collect::<Result<Vec<_>>>())
            .collect::<Result<Vec<_>>>()?;
        Matrix::from_rows(field, rows)
    }

    pub fn to_indices(&self) -> Vec<Vec<u64>> {
        (0..self.rows)
            .map(|i| self.row(i).iter().map(|e| e.index()).collect())
            .collect()
    }

    pub fn field(&self) -> &FieldSpec {
        &self.field
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn is_square(&self) -> bool {
        self.rows == self.cols
    }

    pub fn get(&self, i: usize, j: usize) -> FieldElement {
        self.entries[i * self.cols + j]
    }

    pub fn set(&mut self, i: usize, j: usize, v: FieldElement) {
        self.entries[i * self.cols + j] = v;
    }

    pub fn row(&self, i: usize) -> &[FieldElement] {
        &self.entries[i * self.cols..(i + 1) * self.cols]
    }

    pub fn mul(&self, other: &Matrix) -> Result<Matrix> {
        if self.cols != other.rows {
            return Err(Error::DimensionMismatch(format!(
                "{}x{} times {}x{}",
                self.rows, self.cols, other.rows, other.cols
            )));
        }
        let f = &self.field;
        let mut out = Matrix::zero(f, self.rows, other.cols);
        for i in 0..self.rows {
            for k in 0..self.cols {
                let a = self.get(i, k);
                if a.is_zero() {
                    continue;
                }
                for j in 0..other.cols {
                    let v = f.add(out.get(i, j), f.mul(a, other.get(k, j)));
                    out.set(i, j, v);
                }
            }
        }
        Ok(out)
    }

    /// Row vector times matrix.
    pub fn apply_row(&self, v: &[FieldElement]) -> Result<Vec<FieldElement>> {
        if v.len() != self.rows {
            return Err(Error::DimensionMismatch(format!(
                "vector of length {} times {}x{}",
                v.len(),
                self.rows,
                self.cols
            )));
        }
        let f = &self.field;
        Ok((0..self.cols)
            .map(|j| {
                v.iter()
                    .enumerate()
                    .fold(f.zero(), |acc, (i, &x)| f.add(acc, f.mul(x, self.get(i, j))))
            })
            .collect())
    }

    pub fn pow(&self, mut e: u64) -> Result<Matrix> {
        if !self.is_square() {
            return Err(Error::DimensionMismatch("power of a non-square matrix".into()));
        }
        let mut acc = Matrix::identity(&self.field, self.rows);
        let mut base = self.clone();
        while e > 0 {
            if e & 1 == 1 {
                acc = acc.mul(&base)?;
            }
            e >>= 1;
            if e > 0 {
                base = base.mul(&base)?;
            }
        }
        Ok(acc)
    }

    pub fn is_identity(&self) -> bool {
        self.scalar_value() == Some(self.field.one())
    }

    /// `Some(λ)` if the matrix is λ·I.
    pub fn scalar_value(&self) -> Option<FieldElement> {
        if !self.is_square() {
            return None;
        }
        let lambda = self.get(0, 0);
        for i in 0..self.rows {
            for j in 0..self.cols {
                let expect = if i == j { lambda } else { FieldElement::ZERO };
                if self.get(i, j) != expect {
                    return None;
                }
            }
        }
        Some(lambda)
    }

    pub fn rank(&self) -> usize {
        let f = &self.field;
        let mut m = self.clone();
        let mut rank = 0;
        for col in 0..m.cols {
            let Some(pivot) = (rank..m.rows).find(|&r| !m.get(r, col).is_zero()) else {
                continue;
            };
            for j in 0..m.cols {
                let (a, b) = (m.get(rank, j), m.get(pivot, j));
                m.set(rank, j, b);
                m.set(pivot, j, a);
            }
            let inv = f.inv(m.get(rank, col)).unwrap();
            for r in 0..m.rows {
                if r == rank || m.get(r, col).is_zero() {
                    continue;
                }
                let factor = f.mul(m.get(r, col), inv);
                for j in 0..m.cols {
                    let v = f.sub(m.get(r, j), f.mul(factor, m.get(rank, j)));
                    m.set(r, j, v);
                }
            }
            rank += 1;
        }
        rank
    }

    pub fn is_invertible(&self) -> bool {
        self.is_square() && self.rank() == self.rows
    }

    /// Gauss–Jordan inverse.
    pub fn inverse(&self) -> Result<Matrix> {
        if !self.is_square() {
            return Err(Error::DimensionMismatch("inverse of a non-square matrix".into()));
        }
        let f = &self.field;
        let n = self.rows;
        let mut m = self.clone();
        let mut inv = Matrix::identity(f, n);
        for col in 0..n {
            let pivot = (col..n).find(|&r| !m.get(r, col).is_zero()).ok_or(Error::SingularMatrix)?;
            for j in 0..n {
                let (a, b) = (m.get(col, j), m.get(pivot, j));
                m.set(col, j, b);
                m.set(pivot, j, a);
                let (a, b) = (inv.get(col, j), inv.get(pivot, j));
                inv.set(col, j, b);
                inv.set(pivot, j, a);
            }
            let s = f.inv(m.get(col, col)).unwrap();
            for j in 0..n {
                m.set(col, j, f.mul(s, m.get(col, j)));
                inv.set(col, j, f.mul(s, inv.get(col, j)));
            }
            for r in 0..n {
                let factor = m.get(r, col);
                if r == col || factor.is_zero() {
                    continue;
                }
                for j in 0..n {
                    m.set(r, j, f.sub(m.get(r, j), f.mul(factor, m.get(col, j))));
                    inv.set(r, j, f.sub(inv.get(r, j), f.mul(factor, inv.get(col, j))));
                }
            }
        }
        Ok(inv)
    }

    /// `[[self, 0], [0, 1]]`.
    pub fn extend_with_one(&self) -> Matrix {
        let n = self.rows;
        let mut out = Matrix::zero(&self.field, n + 1, self.cols + 1);
        for i in 0..n {
            for j in 0..self.cols {
                out.set(i, j, self.get(i, j));
            }
        }
        out.set(n, self.cols, self.field.one());
        out
    }

    /// Top-left `n × n` block.
    pub fn leading_block(&self, n: usize) -> Matrix {
        let mut out = Matrix::zero(&self.field, n, n);
        for i in 0..n {
            for j in 0..n {
                out.set(i, j, self.get(i, j));
            }
        }
        out
    }

    /// Evaluates a polynomial at this matrix.
    pub fn eval_poly(&self, f: &Poly) -> Result<Matrix> {
        if !self.is_square() {
            return Err(Error::DimensionMismatch("polynomial of a non-square matrix".into()));
        }
        let field = &self.field;
        let mut acc = Matrix::zero(field, self.rows, self.cols);
        for &c in f.coeffs().iter().rev() {
            acc = acc.mul(self)?;
            for i in 0..self.rows {
                let v = field.add(acc.get(i, i), c);
                acc.set(i, i, v);
            }
        }
        Ok(acc)
    }
}

/// Least e ≥ 1 with A^e = I, or with A^e scalar when `projective` is set.
pub fn matrix_order(a: &Matrix, projective: bool) -> Result<u64> {
    if !a.is_square() {
        return Err(Error::DimensionMismatch("order of a non-square matrix".into()));
    }
    if !a.is_invertible() {
        return Err(Error::SingularMatrix);
    }
    let done = |m: &Matrix| if projective { m.scalar_value().is_some() } else { m.is_identity() };
    let n = a.rows() as u32;
    let group = a
        .field()
        .order()
        .checked_pow(n)
        .filter(|&v| v <= 1 << 40)
        .ok_or_else(|| Error::TooLarge("q^n too large".into()))?
        - 1;
    if done(&a.pow(group)?) {
        return Ok(order_dividing(group, |e| done(&a.pow(e).unwrap())));
    }
    // Orders not dividing q^n - 1 (unipotent parts) stay small at desk scale.
    let mut cur = a.clone();
    let mut e = 1u64;
    while !done(&cur) {
        cur = cur.mul(a)?;
        e += 1;
    }
    Ok(e)
}
