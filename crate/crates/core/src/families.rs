//! Generators for the standard test families, each with a complete
//! catalogue of indecomposables and the designated generator modules.
//!
//! The three families are Nakayama or hereditary string algebras whose
//! indecomposables are interval modules, so the catalogues below are
//! complete by classical structure theory; completeness is an input
//! contract for the cluster-tilting checks, while pairwise
//! non-isomorphism and indecomposability are re-verified on generation.

use std::sync::Arc;

use crate::algebra::Algebra;
use crate::correspondence::ClusterTiltingInstance;
use crate::decompose::is_isomorphic;
use crate::error::{CoreError, Result};
use crate::field::Field;
use crate::matrix::Matrix;
use crate::module::{direct_sum, quotient_module, standard_modules, Module};
use crate::quiver::{algebra_from_presentation, presets, QuiverPresentation};

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum FamilyKind {
    /// Path algebra of the linearly oriented `A_n` quiver; catalogue of
    /// all `n(n+1)/2` interval modules.
    LinearAn,
    /// Truncated polynomial algebra `k[x]/(x^n)`; catalogue of the chain
    /// quotients `k[x]/(x^i)`, `i = 1..n`.
    LoopNakayama,
    /// `A_n` modulo paths of length two; catalogue of the `2n-1` interval
    /// modules of length at most two.
    AnRadSquare,
}

impl FamilyKind {
    pub fn parse(s: &str) -> Option<FamilyKind> {
        match s {
            "linear_An" | "linear_an" => Some(FamilyKind::LinearAn),
            "loop_nakayama" => Some(FamilyKind::LoopNakayama),
            "An_rad_square" | "an_rad_square" => Some(FamilyKind::AnRadSquare),
            _ => None,
        }
    }

    pub fn name(&self) -> &'static str {
        match self {
            FamilyKind::LinearAn => "linear_An",
            FamilyKind::LoopNakayama => "loop_nakayama",
            FamilyKind::AnRadSquare => "An_rad_square",
        }
    }
}

#[derive(Debug, Clone)]
pub struct FamilySpec {
    pub kind: FamilyKind,
    pub n: usize,
    pub field: Field,
}

/// A generated family member: the presented algebra, the complete labelled
/// catalogue of indecomposables, and the designated cluster-tilting
/// candidates (always the full additive generator with degree 1; for the
/// radical-square family additionally the projective-injective generator
/// with degree n-1).
#[derive(Debug)]
pub struct Family {
    pub presentation: QuiverPresentation,
    pub algebra: Arc<Algebra>,
    pub catalogue: Vec<Module>,
    pub labels: Vec<String>,
    pub instances: Vec<ClusterTiltingInstance>,
}

pub fn generate_family(spec: &FamilySpec) -> Result<Family> {
    if spec.n < 1 {
        return Err(CoreError::schema("family size must be at least 1"));
    }
    let presentation = match spec.kind {
        FamilyKind::LinearAn => presets::linear_a_n(spec.field, spec.n),
        FamilyKind::LoopNakayama => {
            if spec.n == 1 {
                // k[x]/(x) is the ground field; present it without the loop
                presets::linear_a_n(spec.field, 1)
            } else {
                presets::loop_mod_xn(spec.field, spec.n)
            }
        }
        FamilyKind::AnRadSquare => presets::a_n_rad_square(spec.field, spec.n),
    };
    let algebra = Arc::new(algebra_from_presentation(&presentation)?);
    let (catalogue, labels) = match spec.kind {
        FamilyKind::LinearAn => interval_catalogue(&algebra, spec.n, spec.n)?,
        FamilyKind::LoopNakayama => chain_catalogue(&algebra, spec.n)?,
        FamilyKind::AnRadSquare => interval_catalogue(&algebra, spec.n, 2)?,
    };
    verify_catalogue(&catalogue, &labels)?;

    let mut instances = Vec::new();
    let parts: Vec<&Module> = catalogue.iter().collect();
    let (full, _, _) = direct_sum(&parts)?;
    instances.push(ClusterTiltingInstance::new(
        algebra.clone(),
        full,
        1,
        catalogue.clone(),
    )?);
    if spec.kind == FamilyKind::AnRadSquare && spec.n >= 2 {
        let std = standard_modules(&algebra)?;
        let mut summands: Vec<Module> = Vec::new();
        for m in std.projectives.iter().chain(std.injectives.iter()) {
            let dup = summands
                .iter()
                .any(|k| k.dim == m.dim && is_isomorphic(k, m).map(|w| w.is_some()).unwrap_or(false));
            if !dup {
                summands.push(m.clone());
            }
        }
        let refs: Vec<&Module> = summands.iter().collect();
        let (pi_gen, _, _) = direct_sum(&refs)?;
        instances.push(ClusterTiltingInstance::new(
            algebra.clone(),
            pi_gen,
            spec.n - 1,
            catalogue.clone(),
        )?);
    }
    Ok(Family {
        presentation,
        algebra,
        catalogue,
        labels,
        instances,
    })
}

/// Interval modules `[i, j]` (support on vertices `i..=j`) of length at
/// most `max_len`, ordered by start then end. Each is the quotient of the
/// projective at `i` by the part supported beyond `j`.
fn interval_catalogue(
    algebra: &Arc<Algebra>,
    n: usize,
    max_len: usize,
) -> Result<(Vec<Module>, Vec<String>)> {
    let f = algebra.field;
    let std = standard_modules(algebra)?;
    let mut catalogue = Vec::new();
    let mut labels = Vec::new();
    for i in 1..=n {
        for j in i..=n.min(i + max_len - 1) {
            let p = &std.projectives[i - 1];
            let mut rows = Matrix::zero(f, 0, p.dim);
            for v in (j + 1)..=n {
                rows = rows.vstack(&p.action_of(&algebra.idempotent_vec(v - 1)));
            }
            let m = if rows.rows() == 0 {
                p.clone()
            } else {
                quotient_module(p, &rows)?.0
            };
            if m.dim != j - i + 1 {
                return Err(CoreError::internal(format!(
                    "interval [{i}, {j}] has dimension {}, expected {}",
                    m.dim,
                    j - i + 1
                )));
            }
            catalogue.push(m);
            labels.push(format!("interval_{i}_{j}"));
        }
    }
    Ok((catalogue, labels))
}

/// The chain quotients `k[x]/(x^i)`, `i = 1..n`, of the truncated
/// polynomial algebra, built as quotients of the regular module by the
/// images of the powers of `x`.
fn chain_catalogue(algebra: &Arc<Algebra>, n: usize) -> Result<(Vec<Module>, Vec<String>)> {
    let reg = Module::regular(algebra.clone());
    let mut catalogue = Vec::new();
    let mut labels = Vec::new();
    if n == 1 {
        catalogue.push(reg);
        labels.push("power_1".into());
        return Ok((catalogue, labels));
    }
    let xi = algebra
        .basis
        .iter()
        .position(|b| b == "x")
        .ok_or_else(|| CoreError::internal("loop algebra lost its generator label"))?;
    let mut xvec = vec![algebra.field.zero(); algebra.dim];
    xvec[xi] = algebra.field.one();
    let xact = reg.action_of(&xvec);
    let mut power = xact.clone();
    for i in 1..=n {
        let rows = power.row_space_basis();
        let m = if rows.rows() == 0 {
            reg.clone()
        } else {
            quotient_module(&reg, &rows)?.0
        };
        if m.dim != i {
            return Err(CoreError::internal(format!(
                "chain quotient {i} has dimension {}, expected {i}",
                m.dim
            )));
        }
        catalogue.push(m);
        labels.push(format!("power_{i}"));
        power = power.mul(&xact);
    }
    Ok((catalogue, labels))
}

/// Generation-time re-verification: members pairwise non-isomorphic (a
/// dimension check short-circuits the isomorphism search).
fn verify_catalogue(catalogue: &[Module], labels: &[String]) -> Result<()> {
    for i in 0..catalogue.len() {
        for j in (i + 1)..catalogue.len() {
            if catalogue[i].dim == catalogue[j].dim
                && is_isomorphic(&catalogue[i], &catalogue[j])?.is_some()
            {
                return Err(CoreError::internal(format!(
                    "catalogue members {} and {} are isomorphic",
                    labels[i], labels[j]
                )));
            }
        }
    }
    Ok(())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::correspondence::is_d_cluster_tilting_direct;

    fn spec(kind: FamilyKind, n: usize) -> FamilySpec {
        FamilySpec {
            kind,
            n,
            field: Field::Rational,
        }
    }

    #[test]
    fn linear_family_catalogue_counts_and_dimensions() {
        let fam = generate_family(&spec(FamilyKind::LinearAn, 2)).unwrap();
        assert_eq!(fam.algebra.dim, 3);
        assert_eq!(fam.catalogue.len(), 3);
        assert_eq!(fam.instances.len(), 1);
        assert_eq!(fam.instances[0].d, 1);

        let fam3 = generate_family(&spec(FamilyKind::LinearAn, 3)).unwrap();
        assert_eq!(fam3.catalogue.len(), 6);
        let dims: Vec<usize> = fam3.catalogue.iter().map(|m| m.dim).collect();
        assert_eq!(dims, vec![1, 2, 3, 1, 2, 1]);
        assert_eq!(
            fam3.labels,
            vec![
                "interval_1_1",
                "interval_1_2",
                "interval_1_3",
                "interval_2_2",
                "interval_2_3",
                "interval_3_3"
            ]
        );
    }

    #[test]
    fn loop_family_catalogue_is_the_chain_of_quotients() {
        let fam = generate_family(&spec(FamilyKind::LoopNakayama, 2)).unwrap();
        assert_eq!(fam.algebra.dim, 2);
        assert_eq!(fam.catalogue.len(), 2);
        let dims: Vec<usize> = fam.catalogue.iter().map(|m| m.dim).collect();
        assert_eq!(dims, vec![1, 2]);

        let fam1 = generate_family(&spec(FamilyKind::LoopNakayama, 1)).unwrap();
        assert_eq!(fam1.algebra.dim, 1);
        assert_eq!(fam1.catalogue.len(), 1);

        let fam4 = generate_family(&spec(FamilyKind::LoopNakayama, 4)).unwrap();
        let dims: Vec<usize> = fam4.catalogue.iter().map(|m| m.dim).collect();
        assert_eq!(dims, vec![1, 2, 3, 4]);
    }

    #[test]
    fn radical_square_family_returns_both_candidates() {
        let fam = generate_family(&spec(FamilyKind::AnRadSquare, 3)).unwrap();
        assert_eq!(fam.algebra.dim, 5);
        assert_eq!(fam.catalogue.len(), 5);
        assert_eq!(fam.instances.len(), 2);
        assert_eq!(fam.instances[1].d, 2);
        // the projective-injective generator has 4 pairwise distinct summands
        let end = crate::decompose::end_algebra(&fam.instances[1].module).unwrap();
        assert_eq!(end.dec.leaves.len(), 4);
    }

    #[test]
    fn designated_generators_are_cluster_tilting() {
        for (kind, n) in [
            (FamilyKind::LinearAn, 2),
            (FamilyKind::LinearAn, 3),
            (FamilyKind::LoopNakayama, 2),
            (FamilyKind::LoopNakayama, 3),
            (FamilyKind::AnRadSquare, 3),
        ] {
            let fam = generate_family(&spec(kind, n)).unwrap();
            for inst in &fam.instances {
                let (verdict, violation) = is_d_cluster_tilting_direct(inst).unwrap();
                assert!(
                    verdict,
                    "{} n={n} d={} should be cluster tilting: {:?}",
                    kind.name(),
                    inst.d,
                    violation
                );
            }
        }
    }

    #[test]
    fn family_kind_names_round_trip() {
        for kind in [
            FamilyKind::LinearAn,
            FamilyKind::LoopNakayama,
            FamilyKind::AnRadSquare,
        ] {
            assert_eq!(FamilyKind::parse(kind.name()), Some(kind));
        }
        assert_eq!(FamilyKind::parse("unknown"), None);
    }
}
