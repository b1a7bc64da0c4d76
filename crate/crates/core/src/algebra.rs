//! Finite-dimensional associative algebras given by exact structure
//! constants, with a distinguished complete set of orthogonal idempotents
//! and a basis adapted to its Peirce decomposition.

use crate::error::{CoreError, Result};
use crate::field::{Field, Scalar};
use crate::matrix::Matrix;

/// A finite-dimensional associative unital algebra over an exact field.
///
/// `structure[i][j]` holds the coefficients of `b_i * b_j` in the basis.
/// `idempotents` lists pairwise-orthogonal idempotents summing to the unit;
/// each is a sum of basis elements (given by index), and every basis element
/// lies in exactly one Peirce component `e_v * A * e_w`.
#[derive(Debug, Clone)]
pub struct Algebra {
    pub field: Field,
    pub dim: usize,
    pub basis: Vec<String>,
    structure: Vec<Vec<Vec<Scalar>>>,
    pub unit: Vec<Scalar>,
    pub idempotents: Vec<Vec<usize>>,
    /// Basis indices that generate the algebra multiplicatively together
    /// with linear spans; module maps need only intertwine these.
    pub generators: Vec<usize>,
    /// Radical known from the construction (arrow ideal of a presented
    /// algebra, Krull-Schmidt structure of an endomorphism algebra).
    /// Valid in every characteristic, unlike the trace form.
    known_radical: Option<Matrix>,
    fingerprint: u64,
}

/// Deterministic FNV-1a hash (std's default hasher is seeded per process).
fn fnv(bytes: &[u8], mut h: u64) -> u64 {
    for b in bytes {
        h ^= *b as u64;
        h = h.wrapping_mul(0x100000001b3);
    }
    h
}

impl Algebra {
    pub fn new(
        field: Field,
        basis: Vec<String>,
        structure: Vec<Vec<Vec<Scalar>>>,
        unit: Vec<Scalar>,
        idempotents: Vec<Vec<usize>>,
        generators: Vec<usize>,
        known_radical: Option<Matrix>,
    ) -> Result<Algebra> {
        field.validate()?;
        let dim = basis.len();
        if dim == 0 {
            return Err(CoreError::schema("algebra must have positive dimension"));
        }
        {
            let mut labels = basis.clone();
            labels.sort();
            labels.dedup();
            if labels.len() != dim {
                return Err(CoreError::schema("duplicate basis labels"));
            }
        }
        if structure.len() != dim
            || structure.iter().any(|r| r.len() != dim)
            || structure
                .iter()
                .any(|r| r.iter().any(|v| v.len() != dim))
        {
            return Err(CoreError::schema("structure constant table has wrong shape"));
        }
        if unit.len() != dim {
            return Err(CoreError::schema("unit expansion has wrong length"));
        }
        let mut fp = 0xcbf29ce484222325u64;
        fp = fnv(format!("{field:?}|{dim}").as_bytes(), fp);
        for (i, row) in structure.iter().enumerate() {
            for (j, v) in row.iter().enumerate() {
                for (l, s) in v.iter().enumerate() {
                    if !field.is_zero(s) {
                        fp = fnv(format!("{i},{j},{l}:{}", field.render(s)).as_bytes(), fp);
                    }
                }
            }
        }
        for (i, s) in unit.iter().enumerate() {
            if !field.is_zero(s) {
                fp = fnv(format!("u{i}:{}", field.render(s)).as_bytes(), fp);
            }
        }
        fp = fnv(format!("{idempotents:?}").as_bytes(), fp);
        let alg = Algebra {
            field,
            dim,
            basis,
            structure,
            unit,
            idempotents,
            generators,
            known_radical,
            fingerprint: fp,
        };
        alg.validate()?;
        Ok(alg)
    }

    /// Construction-time checks: associativity on all basis triples (via the
    /// right-regular representation), two-sided unit, orthogonal idempotents
    /// summing to the unit, Peirce-adapted basis.
    fn validate(&self) -> Result<()> {
        let f = self.field;
        let bad = |msg: String| Err(CoreError::Schema(msg));

        // unit acts as identity on both sides
        for i in 0..self.dim {
            let ub = self.mult_vecs(&self.unit, &self.basis_vec(i));
            let bu = self.mult_vecs(&self.basis_vec(i), &self.unit);
            let e = self.basis_vec(i);
            if ub != e || bu != e {
                return bad(format!("unit fails on basis element {}", self.basis[i]));
            }
        }

        // associativity: R_i * R_j == R_{b_i b_j} for all i, j
        let rm: Vec<Matrix> = (0..self.dim).map(|i| self.basis_right_mult(i)).collect();
        for i in 0..self.dim {
            for j in 0..self.dim {
                let lhs = rm[i].mul(&rm[j]);
                let mut rhs = Matrix::zero(f, self.dim, self.dim);
                for l in 0..self.dim {
                    let c = &self.structure[i][j][l];
                    if !f.is_zero(c) {
                        rhs = rhs.add(&rm[l].scale(c));
                    }
                }
                if lhs != rhs {
                    return bad(format!(
                        "associativity fails at basis pair ({}, {})",
                        self.basis[i], self.basis[j]
                    ));
                }
            }
        }

        // idempotents: valid indices, orthogonal, idempotent, sum to unit
        let mut seen = vec![false; self.dim];
        for set in &self.idempotents {
            for &i in set {
                if i >= self.dim {
                    return bad("idempotent index out of range".into());
                }
                if seen[i] {
                    return bad("idempotent index sets overlap".into());
                }
                seen[i] = true;
            }
        }
        let idem_vecs: Vec<Vec<Scalar>> = self
            .idempotents
            .iter()
            .map(|set| {
                let mut v = vec![f.zero(); self.dim];
                for &i in set {
                    v[i] = f.one();
                }
                v
            })
            .collect();
        let mut total = vec![f.zero(); self.dim];
        for e in &idem_vecs {
            for i in 0..self.dim {
                total[i] = f.add(&total[i], &e[i]);
            }
        }
        if total != self.unit {
            return bad("distinguished idempotents do not sum to the unit".into());
        }
        for (a, ea) in idem_vecs.iter().enumerate() {
            for (b, eb) in idem_vecs.iter().enumerate() {
                let prod = self.mult_vecs(ea, eb);
                let expect = if a == b {
                    ea.clone()
                } else {
                    vec![f.zero(); self.dim]
                };
                if prod != expect {
                    return bad("distinguished idempotents are not orthogonal idempotents".into());
                }
            }
        }

        // Peirce adaptation: e_v * b * e_w == b for exactly one (v, w)
        for i in 0..self.dim {
            let b = self.basis_vec(i);
            let mut hits = 0;
            for ea in &idem_vecs {
                for eb in &idem_vecs {
                    let prod = self.mult_vecs(&self.mult_vecs(ea, &b), eb);
                    if prod == b {
                        hits += 1;
                    }
                }
            }
            if hits != 1 {
                return bad(format!(
                    "basis element {} lies in {} Peirce components (want 1)",
                    self.basis[i], hits
                ));
            }
        }
        Ok(())
    }

    pub fn fingerprint(&self) -> u64 {
        self.fingerprint
    }

    /// Structural identity: same field, dimension, structure constants,
    /// unit and idempotent bookkeeping.
    pub fn same_as(&self, other: &Algebra) -> bool {
        self.fingerprint == other.fingerprint
            && self.field == other.field
            && self.dim == other.dim
            && self.structure == other.structure
            && self.unit == other.unit
            && self.idempotents == other.idempotents
    }

    pub fn structure_constant(&self, i: usize, j: usize) -> &[Scalar] {
        &self.structure[i][j]
    }

    pub fn basis_vec(&self, i: usize) -> Vec<Scalar> {
        let mut v = vec![self.field.zero(); self.dim];
        v[i] = self.field.one();
        v
    }

    pub fn zero_vec(&self) -> Vec<Scalar> {
        vec![self.field.zero(); self.dim]
    }

    /// Product of two coefficient vectors.
    pub fn mult_vecs(&self, x: &[Scalar], y: &[Scalar]) -> Vec<Scalar> {
        let f = self.field;
        let mut out = vec![f.zero(); self.dim];
        for i in 0..self.dim {
            if f.is_zero(&x[i]) {
                continue;
            }
            for j in 0..self.dim {
                if f.is_zero(&y[j]) {
                    continue;
                }
                let scale = f.mul(&x[i], &y[j]);
                for l in 0..self.dim {
                    let c = &self.structure[i][j][l];
                    if !f.is_zero(c) {
                        out[l] = f.add(&out[l], &f.mul(&scale, c));
                    }
                }
            }
        }
        out
    }

    /// Matrix of right multiplication by `b_i` acting on row vectors:
    /// `row(y) * R_i = row(y * b_i)`.
    pub fn basis_right_mult(&self, i: usize) -> Matrix {
        let mut m = Matrix::zero(self.field, self.dim, self.dim);
        for r in 0..self.dim {
            for c in 0..self.dim {
                m.set(r, c, self.structure[r][i][c].clone());
            }
        }
        m
    }

    /// Matrix of left multiplication by `b_i` on row vectors:
    /// `row(y) * L_i = row(b_i * y)`.
    pub fn basis_left_mult(&self, i: usize) -> Matrix {
        let mut m = Matrix::zero(self.field, self.dim, self.dim);
        for r in 0..self.dim {
            for c in 0..self.dim {
                m.set(r, c, self.structure[i][r][c].clone());
            }
        }
        m
    }

    pub fn right_mult_matrix(&self, x: &[Scalar]) -> Matrix {
        let f = self.field;
        let mut m = Matrix::zero(f, self.dim, self.dim);
        for (i, xi) in x.iter().enumerate() {
            if !f.is_zero(xi) {
                m = m.add(&self.basis_right_mult(i).scale(xi));
            }
        }
        m
    }

    pub fn left_mult_matrix(&self, x: &[Scalar]) -> Matrix {
        let f = self.field;
        let mut m = Matrix::zero(f, self.dim, self.dim);
        for (i, xi) in x.iter().enumerate() {
            if !f.is_zero(xi) {
                m = m.add(&self.basis_left_mult(i).scale(xi));
            }
        }
        m
    }

    pub fn idempotent_vec(&self, v: usize) -> Vec<Scalar> {
        let f = self.field;
        let mut e = vec![f.zero(); self.dim];
        for &i in &self.idempotents[v] {
            e[i] = f.one();
        }
        e
    }

    /// The Jacobson radical as canonical rows in algebra coordinates.
    ///
    /// Uses the radical known from the construction when available (valid in
    /// every characteristic); otherwise the trace form
    /// `J = {x : tr(L_{x b}) = 0 for all basis b}`, which requires
    /// characteristic zero or `p > dim` (else `FieldTooSmall`).
    pub fn radical(&self) -> Result<Matrix> {
        if let Some(r) = &self.known_radical {
            return Ok(r.row_space_basis());
        }
        self.radical_by_trace_form()
    }

    /// Trace-form radical (exposed separately so tests can cross-check the
    /// structural radical against it over Q).
    pub fn radical_by_trace_form(&self) -> Result<Matrix> {
        let f = self.field;
        if let Some(p) = f.char_p() {
            if (p as u128) <= self.dim as u128 {
                return Err(CoreError::FieldTooSmall { p, dim: self.dim });
            }
        }
        // tr(L_{b_l}) for each l
        let traces: Vec<Scalar> = (0..self.dim)
            .map(|l| {
                let mut t = f.zero();
                for m in 0..self.dim {
                    t = f.add(&t, &self.structure[l][m][m]);
                }
                t
            })
            .collect();
        // T[i][j] = tr(L_{b_i b_j}) = sum_l c[i][j][l] * tr(L_l)
        let mut t = Matrix::zero(f, self.dim, self.dim);
        for i in 0..self.dim {
            for j in 0..self.dim {
                let mut v = f.zero();
                for l in 0..self.dim {
                    let c = &self.structure[i][j][l];
                    if !f.is_zero(c) {
                        v = f.add(&v, &f.mul(c, &traces[l]));
                    }
                }
                t.set(i, j, v);
            }
        }
        let rad = t.left_kernel_rows().row_space_basis();
        self.check_nilpotent(&rad)?;
        Ok(rad)
    }

    /// Verify a subspace (rows) is nilpotent as an ideal: iterated span of
    /// products reaches zero within `dim` steps.
    pub fn check_nilpotent(&self, rows: &Matrix) -> Result<()> {
        let mut current = rows.row_space_basis();
        for _ in 0..=self.dim {
            if current.rows() == 0 {
                return Ok(());
            }
            let mut prods: Vec<Vec<Scalar>> = Vec::new();
            for i in 0..rows.rows() {
                for j in 0..current.rows() {
                    prods.push(self.mult_vecs(rows.row(i), current.row(j)));
                }
            }
            let stacked = Matrix::from_rows(self.field, prods)?;
            current = stacked.row_space_basis();
        }
        Err(CoreError::internal(
            "claimed radical is not nilpotent — radical computation invalid here",
        ))
    }

    /// The opposite algebra: `c_op[i][j] = c[j][i]`. Applying it twice
    /// returns a structurally identical algebra.
    pub fn opposite(&self) -> Algebra {
        let mut structure = vec![vec![vec![self.field.zero(); self.dim]; self.dim]; self.dim];
        for i in 0..self.dim {
            for j in 0..self.dim {
                structure[i][j] = self.structure[j][i].clone();
            }
        }
        Algebra::new(
            self.field,
            self.basis.clone(),
            structure,
            self.unit.clone(),
            self.idempotents.clone(),
            self.generators.clone(),
            self.known_radical.clone(),
        )
        .expect("opposite of a valid algebra is valid")
    }

    /// Is the given coefficient vector a two-sided unit-fixed idempotent?
    pub fn is_idempotent_vec(&self, x: &[Scalar]) -> bool {
        self.mult_vecs(x, x) == x
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    /// k[x]/(x^2) by hand: basis {e, x}, e the unit, x^2 = 0.
    pub(crate) fn dual_numbers(field: Field) -> Algebra {
        let f = field;
        let z = || f.zero();
        let o = || f.one();
        let structure = vec![
            vec![vec![o(), z()], vec![z(), o()]],
            vec![vec![z(), o()], vec![z(), z()]],
        ];
        Algebra::new(
            field,
            vec!["e".into(), "x".into()],
            structure,
            vec![o(), z()],
            vec![vec![0]],
            vec![0, 1],
            Some(Matrix::from_i64(field, &[&[0, 1]])),
        )
        .unwrap()
    }

    #[test]
    fn dual_numbers_validate_and_radical() {
        let a = dual_numbers(Field::Rational);
        assert_eq!(a.dim, 2);
        let rad = a.radical().unwrap();
        assert_eq!(rad.rows(), 1);
        // structural radical agrees with the trace form over Q
        assert_eq!(rad, a.radical_by_trace_form().unwrap());
        // x * x = 0
        let x = a.basis_vec(1);
        assert!(a.mult_vecs(&x, &x).iter().all(|s| a.field.is_zero(s)));
    }

    #[test]
    fn corrupt_tables_are_rejected() {
        let f = Field::Rational;
        let z = || f.zero();
        let o = || f.one();

        // unit row corrupted: e * x = e instead of x
        let bad_unit = Algebra::new(
            f,
            vec!["e".into(), "x".into()],
            vec![
                vec![vec![o(), z()], vec![o(), z()]],
                vec![vec![z(), o()], vec![z(), z()]],
            ],
            vec![o(), z()],
            vec![vec![0]],
            vec![0, 1],
            None,
        );
        assert!(bad_unit.is_err());

        // genuine associativity breach with a valid unit:
        // x*x = y, x*y = 0, y*x = x gives (xx)x = x but x(xx) = 0
        let e = |i: usize| {
            let mut v = vec![z(), z(), z()];
            v[i] = o();
            v
        };
        let zero = || vec![z(), z(), z()];
        let bad_assoc = Algebra::new(
            f,
            vec!["e".into(), "x".into(), "y".into()],
            vec![
                vec![e(0), e(1), e(2)],
                vec![e(1), e(2), zero()],
                vec![e(2), e(1), zero()],
            ],
            e(0),
            vec![vec![0]],
            vec![0, 1, 2],
            None,
        );
        assert!(bad_assoc.is_err());
    }

    #[test]
    fn trace_form_needs_big_enough_prime() {
        let a = Algebra::new(
            Field::Prime { p: 2 },
            vec!["e".into(), "x".into()],
            {
                let f = Field::Prime { p: 2 };
                let z = || f.zero();
                let o = || f.one();
                vec![
                    vec![vec![o(), z()], vec![z(), o()]],
                    vec![vec![z(), o()], vec![z(), z()]],
                ]
            },
            vec![Field::Prime { p: 2 }.one(), Field::Prime { p: 2 }.zero()],
            vec![vec![0]],
            vec![0, 1],
            None,
        )
        .unwrap();
        match a.radical_by_trace_form() {
            Err(CoreError::FieldTooSmall { p: 2, dim: 2 }) => {}
            other => panic!("expected FieldTooSmall, got {other:?}"),
        }
    }

    #[test]
    fn opposite_is_an_involution() {
        let a = dual_numbers(Field::Rational);
        let b = a.opposite().opposite();
        assert!(a.same_as(&b));
    }
}
