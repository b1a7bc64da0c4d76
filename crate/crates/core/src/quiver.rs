//! Quivers with relations and the construction of their path algebras
//! modulo a relation ideal, truncated at a declared path-length bound.
//!
//! Paths compose left to right: in the product `p * q` the path `p` is
//! traversed first, so consecutive arrows `a` then `b` require
//! `a.to == b.from`.

use std::collections::BTreeMap;

use serde::{Deserialize, Serialize};

use crate::algebra::Algebra;
use crate::error::{CoreError, Result};
use crate::field::{Field, Scalar};
use crate::matrix::Matrix;

#[derive(Debug, Clone, Serialize, Deserialize, PartialEq, Eq)]
pub struct Arrow {
    pub name: String,
    pub from: String,
    pub to: String,
}

/// One summand `coeff * path` of a relation; the path is a list of arrow
/// names in traversal order.
#[derive(Debug, Clone, Serialize, Deserialize, PartialEq, Eq)]
pub struct RelationTerm {
    pub coeff: String,
    pub path: Vec<String>,
}

/// A quiver with relations and a path-length bound used to truncate the
/// computation. The bound must exceed the length of every path that is
/// nonzero in the quotient; this is verified and violations are reported
/// as `NotAdmissible`.
#[derive(Debug, Clone, Serialize, Deserialize, PartialEq, Eq)]
pub struct QuiverPresentation {
    pub field: Field,
    pub vertices: Vec<String>,
    pub arrows: Vec<Arrow>,
    #[serde(default)]
    pub relations: Vec<Vec<RelationTerm>>,
    pub length_bound: usize,
}

/// A path in the quiver: a source vertex and a list of arrow indices in
/// traversal order (empty for the trivial path at `source`).
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord)]
struct Path {
    source: usize,
    target: usize,
    arrows: Vec<usize>,
}

const MAX_PATHS: usize = 200_000;

impl QuiverPresentation {
    pub fn validate(&self) -> Result<()> {
        self.field.validate()?;
        if self.vertices.is_empty() {
            return Err(CoreError::schema("quiver needs at least one vertex"));
        }
        let mut names = self.vertices.clone();
        names.sort();
        names.dedup();
        if names.len() != self.vertices.len() {
            return Err(CoreError::schema("duplicate vertex names"));
        }
        let trivial_labels: Vec<String> =
            self.vertices.iter().map(|v| format!("e_{v}")).collect();
        let mut arrow_names = Vec::new();
        for a in &self.arrows {
            if !self.vertices.contains(&a.from) || !self.vertices.contains(&a.to) {
                return Err(CoreError::schema(format!(
                    "arrow {} references unknown vertex",
                    a.name
                )));
            }
            if a.name.is_empty() || trivial_labels.contains(&a.name) {
                return Err(CoreError::schema(format!(
                    "arrow name {:?} collides with a trivial-path label",
                    a.name
                )));
            }
            arrow_names.push(a.name.clone());
        }
        let mut sorted = arrow_names.clone();
        sorted.sort();
        sorted.dedup();
        if sorted.len() != arrow_names.len() {
            return Err(CoreError::schema("duplicate arrow names"));
        }
        if self.length_bound < 1 {
            return Err(CoreError::schema("length_bound must be at least 1"));
        }
        for (ri, rel) in self.relations.iter().enumerate() {
            if rel.is_empty() {
                return Err(CoreError::schema(format!("relation {ri} has no terms")));
            }
            let mut endpoints: Option<(usize, usize)> = None;
            for term in rel {
                self.field.parse(&term.coeff)?;
                if term.path.len() < 2 {
                    return Err(CoreError::schema(format!(
                        "relation {ri} has a term of path length {} (need >= 2)",
                        term.path.len()
                    )));
                }
                if term.path.len() > self.length_bound {
                    return Err(CoreError::schema(format!(
                        "relation {ri} has a term longer than the length bound"
                    )));
                }
                let idxs = self.arrow_indices(&term.path, ri)?;
                let (s, t) = (self.arrows[idxs[0]].from.clone(), {
                    let last = idxs[idxs.len() - 1];
                    self.arrows[last].to.clone()
                });
                for w in idxs.windows(2) {
                    if self.arrows[w[0]].to != self.arrows[w[1]].from {
                        return Err(CoreError::schema(format!(
                            "relation {ri} contains a non-composable path"
                        )));
                    }
                }
                let si = self.vertices.iter().position(|v| *v == s).unwrap();
                let ti = self.vertices.iter().position(|v| *v == t).unwrap();
                match endpoints {
                    None => endpoints = Some((si, ti)),
                    Some(ep) => {
                        if ep != (si, ti) {
                            return Err(CoreError::schema(format!(
                                "relation {ri} mixes terms with different endpoints"
                            )));
                        }
                    }
                }
            }
        }
        Ok(())
    }

    fn arrow_indices(&self, names: &[String], ri: usize) -> Result<Vec<usize>> {
        names
            .iter()
            .map(|n| {
                self.arrows
                    .iter()
                    .position(|a| a.name == *n)
                    .ok_or_else(|| {
                        CoreError::schema(format!("relation {ri} uses unknown arrow {n:?}"))
                    })
            })
            .collect()
    }
}

fn path_label(p: &Path, pres: &QuiverPresentation) -> String {
    if p.arrows.is_empty() {
        format!("e_{}", pres.vertices[p.source])
    } else {
        p.arrows
            .iter()
            .map(|&a| pres.arrows[a].name.clone())
            .collect::<Vec<_>>()
            .join("*")
    }
}

/// Enumerate all paths of length `0..=bound`, shortest first; enumeration
/// order within a length follows vertex/arrow declaration order.
fn enumerate_paths(pres: &QuiverPresentation) -> Result<Vec<Path>> {
    let nv = pres.vertices.len();
    let arrow_from: Vec<usize> = pres
        .arrows
        .iter()
        .map(|a| pres.vertices.iter().position(|v| *v == a.from).unwrap())
        .collect();
    let arrow_to: Vec<usize> = pres
        .arrows
        .iter()
        .map(|a| pres.vertices.iter().position(|v| *v == a.to).unwrap())
        .collect();

    let mut all: Vec<Path> = (0..nv)
        .map(|v| Path {
            source: v,
            target: v,
            arrows: vec![],
        })
        .collect();
    let mut frontier: Vec<usize> = (0..all.len()).collect();
    for _len in 1..=pres.length_bound {
        let mut next = Vec::new();
        for &pi in &frontier {
            for ai in 0..pres.arrows.len() {
                if arrow_from[ai] == all[pi].target {
                    let mut arrows = all[pi].arrows.clone();
                    arrows.push(ai);
                    let p = Path {
                        source: all[pi].source,
                        target: arrow_to[ai],
                        arrows,
                    };
                    all.push(p);
                    next.push(all.len() - 1);
                    if all.len() > MAX_PATHS {
                        return Err(CoreError::BoundExceeded {
                            what: "path enumeration".into(),
                            bound: MAX_PATHS,
                        });
                    }
                }
            }
        }
        frontier = next;
    }
    Ok(all)
}

/// Build the quotient of the path algebra by the relation ideal, computed in
/// the truncation at the length bound. Fails with `NotAdmissible` when a
/// normal-form path of length equal to the bound survives (the bound, or the
/// relations, do not confine the algebra).
pub fn algebra_from_presentation(pres: &QuiverPresentation) -> Result<Algebra> {
    pres.validate()?;
    let f = pres.field;
    let paths = enumerate_paths(pres)?;
    let n = paths.len();
    let bound = pres.length_bound;

    // Index lookup by (source, arrow list).
    let mut index: BTreeMap<(usize, Vec<usize>), usize> = BTreeMap::new();
    for (i, p) in paths.iter().enumerate() {
        index.insert((p.source, p.arrows.clone()), i);
    }

    // Rows spanning the ideal inside the truncation: u * r * v for every
    // relation r and all paths u, v keeping total length within the bound.
    // Columns are ordered longest path first so that row reduction rewrites
    // long paths in terms of shorter normal forms.
    let col_of = |path_idx: usize| n - 1 - path_idx;
    let path_of = |col: usize| n - 1 - col;

    let mut rows: Vec<Vec<Scalar>> = Vec::new();
    for rel in &pres.relations {
        let mut terms: Vec<(Scalar, usize)> = Vec::new(); // (coeff, path idx)
        for t in rel {
            let idxs: Vec<usize> = t
                .path
                .iter()
                .map(|nm| pres.arrows.iter().position(|a| a.name == *nm).unwrap())
                .collect();
            let src = pres
                .vertices
                .iter()
                .position(|v| *v == pres.arrows[idxs[0]].from)
                .unwrap();
            let pi = *index.get(&(src, idxs)).expect("relation path enumerated");
            terms.push((f.parse(&t.coeff)?, pi));
        }
        let min_len = terms
            .iter()
            .map(|&(_, pi)| paths[pi].arrows.len())
            .min()
            .unwrap();
        for (ui, u) in paths.iter().enumerate() {
            if u.arrows.len() + min_len > bound {
                continue;
            }
            for (vi, v) in paths.iter().enumerate() {
                if u.arrows.len() + min_len + v.arrows.len() > bound {
                    continue;
                }
                let mut row = vec![f.zero(); n];
                let mut nonzero = false;
                for (c, pi) in &terms {
                    let p = &paths[*pi];
                    if u.target != p.source || p.target != v.source {
                        continue;
                    }
                    let total = u.arrows.len() + p.arrows.len() + v.arrows.len();
                    if total > bound {
                        continue;
                    }
                    let mut arrows = paths[ui].arrows.clone();
                    arrows.extend_from_slice(&p.arrows);
                    arrows.extend_from_slice(&paths[vi].arrows);
                    let w = *index
                        .get(&(u.source, arrows))
                        .expect("composite path enumerated");
                    let col = col_of(w);
                    row[col] = f.add(&row[col], c);
                    nonzero = true;
                }
                if nonzero && row.iter().any(|s| !f.is_zero(s)) {
                    rows.push(row);
                }
            }
        }
    }

    let (rref, pivots) = if rows.is_empty() {
        (Matrix::zero(f, 0, n), Vec::new())
    } else {
        Matrix::from_rows(f, rows)?.rref()
    };

    let mut is_pivot_path = vec![false; n];
    for &c in &pivots {
        is_pivot_path[path_of(c)] = true;
    }

    // Normal-form paths, shortest first (enumeration order is by length).
    let nf_paths: Vec<usize> = (0..n).filter(|&i| !is_pivot_path[i]).collect();
    for &pi in &nf_paths {
        if paths[pi].arrows.len() == bound {
            return Err(CoreError::NotAdmissible {
                path: path_label(&paths[pi], pres),
            });
        }
    }

    let basis_index_of_path: BTreeMap<usize, usize> = nf_paths
        .iter()
        .enumerate()
        .map(|(bi, &pi)| (pi, bi))
        .collect();

    // Expansion of every path in normal-form coordinates.
    let dim = nf_paths.len();
    let mut expansion: Vec<Vec<Scalar>> = vec![vec![]; n];
    for (bi, &pi) in nf_paths.iter().enumerate() {
        let mut v = vec![f.zero(); dim];
        v[bi] = f.one();
        expansion[pi] = v;
    }
    for (ri, &c) in pivots.iter().enumerate() {
        let pi = path_of(c);
        let mut v = vec![f.zero(); dim];
        for col in 0..n {
            if col == c {
                continue;
            }
            let entry = rref.at(ri, col);
            if !f.is_zero(entry) {
                let q = path_of(col);
                let bq = *basis_index_of_path
                    .get(&q)
                    .expect("rref rows reduce to normal-form paths");
                v[bq] = f.sub(&v[bq], entry);
            }
        }
        expansion[pi] = v;
    }

    // Structure constants by concatenate-then-reduce. Products longer than
    // the bound vanish: admissibility puts every such path in the ideal.
    let mut structure = vec![vec![vec![f.zero(); dim]; dim]; dim];
    for (i, &pi) in nf_paths.iter().enumerate() {
        for (j, &pj) in nf_paths.iter().enumerate() {
            let (p, q) = (&paths[pi], &paths[pj]);
            if p.target != q.source {
                continue;
            }
            if p.arrows.len() + q.arrows.len() > bound {
                continue;
            }
            let mut arrows = p.arrows.clone();
            arrows.extend_from_slice(&q.arrows);
            let w = *index.get(&(p.source, arrows)).unwrap();
            structure[i][j] = expansion[w].clone();
        }
    }

    let basis_labels: Vec<String> = nf_paths
        .iter()
        .map(|&pi| path_label(&paths[pi], pres))
        .collect();

    let mut unit = vec![f.zero(); dim];
    let mut idempotents = Vec::new();
    for v in 0..pres.vertices.len() {
        let pi = *index.get(&(v, vec![])).unwrap();
        let bi = *basis_index_of_path
            .get(&pi)
            .expect("trivial paths always survive reduction");
        unit[bi] = f.one();
        idempotents.push(vec![bi]);
    }

    // Trivial paths and arrows generate; arrows always survive reduction.
    let mut generators: Vec<usize> = idempotents.iter().map(|s| s[0]).collect();
    for ai in 0..pres.arrows.len() {
        let src = pres
            .vertices
            .iter()
            .position(|v| *v == pres.arrows[ai].from)
            .unwrap();
        let pi = *index.get(&(src, vec![ai])).unwrap();
        let bi = *basis_index_of_path
            .get(&pi)
            .expect("arrows always survive reduction of admissible relations");
        generators.push(bi);
    }

    // The radical is the image of the arrow ideal: spanned by all
    // normal-form paths of positive length (valid in every characteristic).
    let rad_rows: Vec<Vec<Scalar>> = nf_paths
        .iter()
        .enumerate()
        .filter(|&(_, &pi)| !paths[pi].arrows.is_empty())
        .map(|(bi, _)| {
            let mut v = vec![f.zero(); dim];
            v[bi] = f.one();
            v
        })
        .collect();
    let known_radical = if rad_rows.is_empty() {
        Some(Matrix::zero(f, 0, dim))
    } else {
        Some(Matrix::from_rows(f, rad_rows)?)
    };

    Algebra::new(
        f,
        basis_labels,
        structure,
        unit,
        idempotents,
        generators,
        known_radical,
    )
}

/// Convenience constructors for presentations used across the test suites.
pub mod presets {
    use super::*;

    /// Linearly oriented A_n: vertices 1..n, arrows a_i : i -> i+1,
    /// no relations.
    pub fn linear_a_n(field: Field, n: usize) -> QuiverPresentation {
        QuiverPresentation {
            field,
            vertices: (1..=n).map(|i| i.to_string()).collect(),
            arrows: (1..n)
                .map(|i| Arrow {
                    name: format!("a{i}"),
                    from: i.to_string(),
                    to: (i + 1).to_string(),
                })
                .collect(),
            relations: vec![],
            length_bound: n,
        }
    }

    /// One vertex with a loop x and the relation x^n = 0 (n >= 2).
    pub fn loop_mod_xn(field: Field, n: usize) -> QuiverPresentation {
        QuiverPresentation {
            field,
            vertices: vec!["1".into()],
            arrows: vec![Arrow {
                name: "x".into(),
                from: "1".into(),
                to: "1".into(),
            }],
            relations: vec![vec![RelationTerm {
                coeff: "1".into(),
                path: vec!["x".into(); n],
            }]],
            length_bound: n,
        }
    }

    /// Linearly oriented A_n with all composites of consecutive arrows zero.
    pub fn a_n_rad_square(field: Field, n: usize) -> QuiverPresentation {
        let mut pres = linear_a_n(field, n);
        pres.relations = (1..n.saturating_sub(1))
            .map(|i| {
                vec![RelationTerm {
                    coeff: "1".into(),
                    path: vec![format!("a{i}"), format!("a{}", i + 1)],
                }]
            })
            .collect();
        pres.length_bound = n.max(2);
        pres
    }
}

#[cfg(test)]
mod tests {
    use super::presets::*;
    use super::*;

    #[test]
    fn path_algebra_of_a2_has_dimension_three() {
        let a = algebra_from_presentation(&linear_a_n(Field::Rational, 2)).unwrap();
        assert_eq!(a.dim, 3);
        assert_eq!(a.basis, vec!["e_1", "e_2", "a1"]);
        let rad = a.radical().unwrap();
        assert_eq!(rad.rows(), 1);
        // the radical is spanned by the arrow
        assert!(a.field.is_one(rad.at(0, 2)));
        assert_eq!(rad, a.radical_by_trace_form().unwrap());
    }

    #[test]
    fn a3_has_dimension_six_and_a4_ten() {
        let a3 = algebra_from_presentation(&linear_a_n(Field::Rational, 3)).unwrap();
        assert_eq!(a3.dim, 6);
        let a4 = algebra_from_presentation(&linear_a_n(Field::Rational, 4)).unwrap();
        assert_eq!(a4.dim, 10);
    }

    #[test]
    fn loop_mod_x2_is_dual_numbers() {
        let a = algebra_from_presentation(&loop_mod_xn(Field::Rational, 2)).unwrap();
        assert_eq!(a.dim, 2);
        assert_eq!(a.basis, vec!["e_1", "x"]);
        // x * x = 0
        assert!(a
            .structure_constant(1, 1)
            .iter()
            .all(|s| a.field.is_zero(s)));
    }

    #[test]
    fn loop_mod_x3_multiplication_table() {
        let a = algebra_from_presentation(&loop_mod_xn(Field::Rational, 3)).unwrap();
        assert_eq!(a.dim, 3);
        assert_eq!(a.basis, vec!["e_1", "x", "x*x"]);
        // x * x = x^2, x * x^2 = 0
        assert!(a.field.is_one(&a.structure_constant(1, 1)[2]));
        assert!(a
            .structure_constant(1, 2)
            .iter()
            .all(|s| a.field.is_zero(s)));
        assert_eq!(a.radical().unwrap().rows(), 2);
    }

    #[test]
    fn loop_without_relations_is_rejected() {
        let pres = QuiverPresentation {
            field: Field::Rational,
            vertices: vec!["1".into()],
            arrows: vec![Arrow {
                name: "x".into(),
                from: "1".into(),
                to: "1".into(),
            }],
            relations: vec![],
            length_bound: 5,
        };
        match algebra_from_presentation(&pres) {
            Err(CoreError::NotAdmissible { .. }) => {}
            other => panic!("expected NotAdmissible, got {other:?}"),
        }
    }

    #[test]
    fn a3_mod_rad_square_has_dimension_five() {
        let a = algebra_from_presentation(&a_n_rad_square(Field::Rational, 3)).unwrap();
        assert_eq!(a.dim, 5);
        assert_eq!(a.basis, vec!["e_1", "e_2", "e_3", "a1", "a2"]);
        // a1 * a2 = 0 in the quotient
        assert!(a
            .structure_constant(3, 4)
            .iter()
            .all(|s| a.field.is_zero(s)));
    }

    #[test]
    fn commutative_square_with_commutativity_relation() {
        // vertices 1,2,3,4; arrows 1->2, 1->3, 2->4, 3->4; ab = cd
        let pres = QuiverPresentation {
            field: Field::Rational,
            vertices: vec!["1".into(), "2".into(), "3".into(), "4".into()],
            arrows: vec![
                Arrow { name: "a".into(), from: "1".into(), to: "2".into() },
                Arrow { name: "b".into(), from: "2".into(), to: "4".into() },
                Arrow { name: "c".into(), from: "1".into(), to: "3".into() },
                Arrow { name: "d".into(), from: "3".into(), to: "4".into() },
            ],
            relations: vec![vec![
                RelationTerm { coeff: "1".into(), path: vec!["a".into(), "b".into()] },
                RelationTerm { coeff: "-1".into(), path: vec!["c".into(), "d".into()] },
            ]],
            length_bound: 3,
        };
        let alg = algebra_from_presentation(&pres).unwrap();
        // 4 trivial + 4 arrows + 1 surviving composite (a*b = c*d identified)
        assert_eq!(alg.dim, 9);
    }

    #[test]
    fn relations_over_f5_reduce_coefficients() {
        let mut pres = loop_mod_xn(Field::Prime { p: 5 }, 2);
        pres.relations[0][0].coeff = "6".into(); // = 1 mod 5
        let a = algebra_from_presentation(&pres).unwrap();
        assert_eq!(a.dim, 2);
    }
}
