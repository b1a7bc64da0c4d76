//! Dense exact matrices over [`Field`] with reduced row echelon form,
//! kernel bases, exact linear solving and rank.
//!
//! Conventions used across the crate: vectors are rows, maps act on the
//! right (`x -> x * A`), so composing maps left-to-right is the ordinary
//! matrix product.

use crate::error::{CoreError, Result};
use crate::field::{Field, Scalar};

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Matrix {
    pub field: Field,
    rows: usize,
    cols: usize,
    data: Vec<Scalar>,
}

impl Matrix {
    pub fn zero(field: Field, rows: usize, cols: usize) -> Self {
        Matrix {
            field,
            rows,
            cols,
            data: vec![field.zero(); rows * cols],
        }
    }

    pub fn identity(field: Field, n: usize) -> Self {
        let mut m = Self::zero(field, n, n);
        for i in 0..n {
            m.set(i, i, field.one());
        }
        m
    }

    pub fn from_rows(field: Field, rows: Vec<Vec<Scalar>>) -> Result<Self> {
        let r = rows.len();
        let c = rows.first().map(|x| x.len()).unwrap_or(0);
        if rows.iter().any(|x| x.len() != c) {
            return Err(CoreError::schema("ragged matrix rows"));
        }
        Ok(Matrix {
            field,
            rows: r,
            cols: c,
            data: rows.into_iter().flatten().collect(),
        })
    }

    /// Build from integer entries (test and construction convenience).
    pub fn from_i64(field: Field, rows: &[&[i64]]) -> Self {
        let r = rows.len();
        let c = rows.first().map(|x| x.len()).unwrap_or(0);
        let mut m = Self::zero(field, r, c);
        for (i, row) in rows.iter().enumerate() {
            assert_eq!(row.len(), c, "ragged literal matrix");
            for (j, v) in row.iter().enumerate() {
                m.set(i, j, field.from_i64(*v));
            }
        }
        m
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn at(&self, r: usize, c: usize) -> &Scalar {
        &self.data[r * self.cols + c]
    }

    pub fn set(&mut self, r: usize, c: usize, v: Scalar) {
        self.data[r * self.cols + c] = v;
    }

    pub fn row(&self, r: usize) -> &[Scalar] {
        &self.data[r * self.cols..(r + 1) * self.cols]
    }

    pub fn is_zero(&self) -> bool {
        self.data.iter().all(|s| self.field.is_zero(s))
    }

    pub fn is_identity(&self) -> bool {
        if self.rows != self.cols {
            return false;
        }
        for i in 0..self.rows {
            for j in 0..self.cols {
                let e = self.at(i, j);
                if i == j {
                    if !self.field.is_one(e) {
                        return false;
                    }
                } else if !self.field.is_zero(e) {
                    return false;
                }
            }
        }
        true
    }

    pub fn transpose(&self) -> Matrix {
        let mut t = Matrix::zero(self.field, self.cols, self.rows);
        for i in 0..self.rows {
            for j in 0..self.cols {
                t.set(j, i, self.at(i, j).clone());
            }
        }
        t
    }

    pub fn add(&self, other: &Matrix) -> Matrix {
        assert_eq!((self.rows, self.cols), (other.rows, other.cols));
        let mut m = self.clone();
        for i in 0..self.data.len() {
            m.data[i] = self.field.add(&self.data[i], &other.data[i]);
        }
        m
    }

    pub fn sub(&self, other: &Matrix) -> Matrix {
        assert_eq!((self.rows, self.cols), (other.rows, other.cols));
        let mut m = self.clone();
        for i in 0..self.data.len() {
            m.data[i] = self.field.sub(&self.data[i], &other.data[i]);
        }
        m
    }

    pub fn neg(&self) -> Matrix {
        let mut m = self.clone();
        for e in &mut m.data {
            *e = self.field.neg(e);
        }
        m
    }

    pub fn scale(&self, s: &Scalar) -> Matrix {
        let mut m = self.clone();
        for e in &mut m.data {
            *e = self.field.mul(e, s);
        }
        m
    }

    pub fn mul(&self, other: &Matrix) -> Matrix {
        assert_eq!(
            self.cols, other.rows,
            "matrix product shape mismatch {}x{} * {}x{}",
            self.rows, self.cols, other.rows, other.cols
        );
        let f = self.field;
        let mut m = Matrix::zero(f, self.rows, other.cols);
        for i in 0..self.rows {
            for k in 0..self.cols {
                let a = self.at(i, k);
                if f.is_zero(a) {
                    continue;
                }
                for j in 0..other.cols {
                    let b = other.at(k, j);
                    if f.is_zero(b) {
                        continue;
                    }
                    let cur = m.at(i, j).clone();
                    m.set(i, j, f.add(&cur, &f.mul(a, b)));
                }
            }
        }
        m
    }

    /// Horizontal concatenation `[self | other]`.
    pub fn hstack(&self, other: &Matrix) -> Matrix {
        assert_eq!(self.rows, other.rows);
        let mut m = Matrix::zero(self.field, self.rows, self.cols + other.cols);
        for i in 0..self.rows {
            for j in 0..self.cols {
                m.set(i, j, self.at(i, j).clone());
            }
            for j in 0..other.cols {
                m.set(i, self.cols + j, other.at(i, j).clone());
            }
        }
        m
    }

    /// Vertical concatenation.
    pub fn vstack(&self, other: &Matrix) -> Matrix {
        assert_eq!(self.cols, other.cols);
        let mut m = Matrix::zero(self.field, self.rows + other.rows, self.cols);
        for i in 0..self.rows {
            for j in 0..self.cols {
                m.set(i, j, self.at(i, j).clone());
            }
        }
        for i in 0..other.rows {
            for j in 0..self.cols {
                m.set(self.rows + i, j, other.at(i, j).clone());
            }
        }
        m
    }

    /// Copy `block` into `self` with its top-left corner at `(r, c)`.
    pub fn paste(&mut self, r: usize, c: usize, block: &Matrix) {
        assert!(r + block.rows <= self.rows && c + block.cols <= self.cols);
        for i in 0..block.rows {
            for j in 0..block.cols {
                self.set(r + i, c + j, block.at(i, j).clone());
            }
        }
    }

    pub fn submatrix(&self, r0: usize, c0: usize, rows: usize, cols: usize) -> Matrix {
        let mut m = Matrix::zero(self.field, rows, cols);
        for i in 0..rows {
            for j in 0..cols {
                m.set(i, j, self.at(r0 + i, c0 + j).clone());
            }
        }
        m
    }

    /// Reduced row echelon form together with the pivot column list.
    /// Idempotent: `rref(rref(m).0).0 == rref(m).0`.
    pub fn rref(&self) -> (Matrix, Vec<usize>) {
        let f = self.field;
        let mut m = self.clone();
        let mut pivots = Vec::new();
        let mut r = 0usize;
        for c in 0..m.cols {
            if r == m.rows {
                break;
            }
            // find a pivot row
            let mut piv = None;
            for i in r..m.rows {
                if !f.is_zero(m.at(i, c)) {
                    piv = Some(i);
                    break;
                }
            }
            let Some(piv) = piv else { continue };
            // swap into place
            if piv != r {
                for j in 0..m.cols {
                    let a = m.at(r, j).clone();
                    let b = m.at(piv, j).clone();
                    m.set(r, j, b);
                    m.set(piv, j, a);
                }
            }
            // normalize pivot row
            let inv = f.inv(m.at(r, c)).expect("nonzero pivot");
            for j in c..m.cols {
                let v = f.mul(m.at(r, j), &inv);
                m.set(r, j, v);
            }
            // eliminate the column everywhere else
            for i in 0..m.rows {
                if i == r || f.is_zero(m.at(i, c)) {
                    continue;
                }
                let factor = m.at(i, c).clone();
                for j in c..m.cols {
                    let v = f.sub(m.at(i, j), &f.mul(&factor, m.at(r, j)));
                    m.set(i, j, v);
                }
            }
            pivots.push(c);
            r += 1;
        }
        (m, pivots)
    }

    pub fn rank(&self) -> usize {
        self.rref().1.len()
    }

    /// Columns spanning the right null space `{x : m * x = 0}`.
    /// `rank + returned.cols() == self.cols()` (rank-nullity).
    pub fn kernel_basis(&self) -> Matrix {
        let f = self.field;
        let (r, pivots) = self.rref();
        let pivot_set: std::collections::BTreeSet<usize> = pivots.iter().copied().collect();
        let free: Vec<usize> = (0..self.cols).filter(|c| !pivot_set.contains(c)).collect();
        let mut k = Matrix::zero(f, self.cols, free.len());
        for (idx, &fc) in free.iter().enumerate() {
            k.set(fc, idx, f.one());
            // pivot row i has its pivot at pivots[i]; solve variable there
            for (i, &pc) in pivots.iter().enumerate() {
                let coeff = r.at(i, fc);
                if !f.is_zero(coeff) {
                    k.set(pc, idx, f.neg(coeff));
                }
            }
        }
        k
    }

    /// Rows spanning the left null space `{y : y * m = 0}`.
    pub fn left_kernel_rows(&self) -> Matrix {
        self.transpose().kernel_basis().transpose()
    }

    /// Exact solution of `self * x = b` (column convention), `None` iff
    /// inconsistent. Free variables are set to zero, so the answer is
    /// deterministic.
    pub fn solve(&self, b: &Matrix) -> Option<Matrix> {
        assert_eq!(self.rows, b.rows, "solve shape mismatch");
        let f = self.field;
        let aug = self.hstack(b);
        let (r, pivots) = aug.rref();
        // inconsistent iff a pivot falls in the augmented block
        if pivots.iter().any(|&c| c >= self.cols) {
            return None;
        }
        let mut x = Matrix::zero(f, self.cols, b.cols);
        for (i, &pc) in pivots.iter().enumerate() {
            for j in 0..b.cols {
                x.set(pc, j, r.at(i, self.cols + j).clone());
            }
        }
        Some(x)
    }

    /// Exact solution of `x * self = b` (row convention).
    pub fn solve_left(&self, b: &Matrix) -> Option<Matrix> {
        self.transpose()
            .solve(&b.transpose())
            .map(|x| x.transpose())
    }

    /// A basis of the row space, as the nonzero rows of the RREF
    /// (canonical: two matrices have equal row spaces iff these agree).
    pub fn row_space_basis(&self) -> Matrix {
        let f = self.field;
        let (r, pivots) = self.rref();
        let mut m = Matrix::zero(f, pivots.len(), self.cols);
        for i in 0..pivots.len() {
            for j in 0..self.cols {
                m.set(i, j, r.at(i, j).clone());
            }
        }
        m
    }

    /// Determinant by fraction-free-ish Gaussian elimination (exact field ops).
    pub fn det(&self) -> Scalar {
        assert_eq!(self.rows, self.cols);
        let f = self.field;
        let mut m = self.clone();
        let mut det = f.one();
        for c in 0..m.cols {
            let mut piv = None;
            for i in c..m.rows {
                if !f.is_zero(m.at(i, c)) {
                    piv = Some(i);
                    break;
                }
            }
            let Some(piv) = piv else { return f.zero() };
            if piv != c {
                det = f.neg(&det);
                for j in 0..m.cols {
                    let a = m.at(c, j).clone();
                    let b = m.at(piv, j).clone();
                    m.set(c, j, b);
                    m.set(piv, j, a);
                }
            }
            let d = m.at(c, c).clone();
            det = f.mul(&det, &d);
            let inv = f.inv(&d).expect("nonzero pivot");
            for i in c + 1..m.rows {
                if f.is_zero(m.at(i, c)) {
                    continue;
                }
                let factor = f.mul(m.at(i, c), &inv);
                for j in c..m.cols {
                    let v = f.sub(m.at(i, j), &f.mul(&factor, m.at(c, j)));
                    m.set(i, j, v);
                }
            }
        }
        det
    }

    pub fn is_invertible(&self) -> bool {
        self.rows == self.cols && !self.field.is_zero(&self.det())
    }

    /// Exact inverse; `None` if singular or non-square.
    pub fn inverse(&self) -> Option<Matrix> {
        if self.rows != self.cols {
            return None;
        }
        let sol = self.solve(&Matrix::identity(self.field, self.rows))?;
        // solve() gives some solution; for square systems verify it is two-sided
        if self.mul(&sol).is_identity() && sol.mul(self).is_identity() {
            Some(sol)
        } else {
            None
        }
    }

    /// Does `v` (a single row) lie in the row space of `self`?
    pub fn row_in_span(&self, v: &Matrix) -> bool {
        assert_eq!(v.rows, 1);
        self.solve_left(v).is_some()
    }

    /// Render entries in wire format (row-major nested vectors).
    pub fn render(&self) -> Vec<Vec<String>> {
        (0..self.rows)
            .map(|i| (0..self.cols).map(|j| self.field.render(self.at(i, j))).collect())
            .collect()
    }

    /// Parse from wire format.
    pub fn parse(field: Field, rows: &[Vec<String>]) -> Result<Matrix> {
        let r = rows.len();
        let c = rows.first().map(|x| x.len()).unwrap_or(0);
        if rows.iter().any(|x| x.len() != c) {
            return Err(CoreError::schema("ragged matrix in input"));
        }
        let mut m = Matrix::zero(field, r, c);
        for (i, row) in rows.iter().enumerate() {
            for (j, s) in row.iter().enumerate() {
                m.set(i, j, field.parse(s)?);
            }
        }
        Ok(m)
    }
}

/// Block-diagonal assembly of square or rectangular blocks.
pub fn block_diag(field: Field, blocks: &[&Matrix]) -> Matrix {
    let rows = blocks.iter().map(|b| b.rows()).sum();
    let cols = blocks.iter().map(|b| b.cols()).sum();
    let mut m = Matrix::zero(field, rows, cols);
    let (mut r, mut c) = (0usize, 0usize);
    for b in blocks {
        m.paste(r, c, b);
        r += b.rows();
        c += b.cols();
    }
    m
}

#[cfg(test)]
mod tests {
    use super::*;

    fn q() -> Field {
        Field::Rational
    }

    #[test]
    fn rref_of_dependent_rows_matches_hand_elimination() {
        // By hand: [[2,4],[1,2]] -> r1/2 = [1,2]; r2 - r1 = [0,0].
        let m = Matrix::from_i64(q(), &[&[2, 4], &[1, 2]]);
        let (r, pivots) = m.rref();
        assert_eq!(r, Matrix::from_i64(q(), &[&[1, 2], &[0, 0]]));
        assert_eq!(pivots, vec![0]);
        assert_eq!(m.rank(), 1);
    }

    #[test]
    fn rref_is_idempotent() {
        let m = Matrix::from_i64(q(), &[&[2, 4, 1], &[1, 2, 0], &[3, 1, 1]]);
        let (r1, _) = m.rref();
        let (r2, _) = r1.rref();
        assert_eq!(r1, r2);
    }

    #[test]
    fn kernel_over_f2_matches_exhaustive_enumeration() {
        // Oracle: enumerate all of F_2^2 and keep the null vectors of [1 1].
        let f = Field::Prime { p: 2 };
        let m = Matrix::from_i64(f, &[&[1, 1]]);
        let mut null = Vec::new();
        for x in 0..2i64 {
            for y in 0..2i64 {
                let v = Matrix::from_i64(f, &[&[x], &[y]]);
                if m.mul(&v).is_zero() && !(x == 0 && y == 0) {
                    null.push((x, y));
                }
            }
        }
        assert_eq!(null, vec![(1, 1)]);
        let k = m.kernel_basis();
        assert_eq!(k.cols(), 1);
        assert_eq!(k, Matrix::from_i64(f, &[&[1], &[1]]));
        assert_eq!(m.rank() + k.cols(), m.cols());
    }

    #[test]
    fn solve_finds_exact_solutions_and_detects_inconsistency() {
        let a = Matrix::from_i64(q(), &[&[1, 2], &[3, 4]]);
        let b = Matrix::from_i64(q(), &[&[5], &[6]]);
        let x = a.solve(&b).unwrap();
        assert_eq!(a.mul(&x), b);
        // inconsistent: [[1,2],[2,4]] x = [1, 3]
        let a2 = Matrix::from_i64(q(), &[&[1, 2], &[2, 4]]);
        let b2 = Matrix::from_i64(q(), &[&[1], &[3]]);
        assert!(a2.solve(&b2).is_none());
    }

    #[test]
    fn rank_nullity_on_a_rectangular_example() {
        let m = Matrix::from_i64(q(), &[&[1, 2, 3], &[2, 4, 6]]);
        let k = m.kernel_basis();
        assert_eq!(m.rank(), 1);
        assert_eq!(k.cols(), 2);
        assert!(m.mul(&k).is_zero());
    }

    #[test]
    fn det_and_inverse() {
        let m = Matrix::from_i64(q(), &[&[1, 2], &[3, 4]]);
        assert_eq!(q().render(&m.det()), "-2");
        let inv = m.inverse().unwrap();
        assert!(m.mul(&inv).is_identity());
        let s = Matrix::from_i64(q(), &[&[1, 2], &[2, 4]]);
        assert!(s.inverse().is_none());
    }
}
