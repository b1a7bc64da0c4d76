//! Cluster-tilting certification and both directions of the
//! generator/endomorphism-algebra correspondence, with a round-trip
//! verification built from an explicit chain of canonical isomorphisms.
//!
//! The direct cluster-tilting check quantifies over a user-supplied
//! complete catalogue of indecomposables (an input contract; the library
//! does not classify indecomposables of arbitrary algebras). The
//! endomorphism-algebra side is certified through global and dominant
//! dimension with replayable resolution witnesses.

use std::sync::Arc;

use crate::algebra::Algebra;
use crate::decompose::{
    decompose, decompose_regular, end_algebra, group_classes, is_isomorphic, is_isomorphic_indec,
    stack_vectorized, summands_among, vectorize, EndData,
};
use crate::error::{CoreError, Result};
use crate::field::Scalar;
use crate::homological::{
    dominant_dimension, ext_dims_up_to, global_dimension, injective_envelope_parts,
    injective_is_projective_flags, projective_resolution, DimBound, ProjResolution,
};
use crate::matrix::Matrix;
use crate::module::{
    cokernel, direct_sum, dualize, hom_basis, hom_dim, idempotent_summands, standard_modules,
    Module,
};

/// A candidate cluster-tilting situation: an algebra, a chosen module, the
/// degree, and a complete catalogue of the indecomposables of the module
/// category (up to isomorphism).
#[derive(Debug, Clone)]
pub struct ClusterTiltingInstance {
    pub algebra: Arc<Algebra>,
    pub module: Module,
    pub d: usize,
    pub catalogue: Vec<Module>,
}

impl ClusterTiltingInstance {
    /// Validates the structural invariants: degree at least 1, catalogue
    /// members indecomposable and pairwise non-isomorphic, and the module
    /// decomposing into catalogue members.
    pub fn new(
        algebra: Arc<Algebra>,
        module: Module,
        d: usize,
        catalogue: Vec<Module>,
    ) -> Result<Self> {
        if d < 1 {
            return Err(CoreError::schema("degree d must be at least 1"));
        }
        if !module.algebra.same_as(&algebra) {
            return Err(CoreError::schema("module is not over the instance algebra"));
        }
        for (i, m) in catalogue.iter().enumerate() {
            if !m.algebra.same_as(&algebra) {
                return Err(CoreError::schema(format!(
                    "catalogue member {i} is not over the instance algebra"
                )));
            }
            if m.dim == 0 {
                return Err(CoreError::schema(format!("catalogue member {i} is zero")));
            }
            let dec = decompose(m)?;
            if dec.leaves.len() != 1 {
                return Err(CoreError::schema(format!(
                    "catalogue member {i} decomposes into {} summands",
                    dec.leaves.len()
                )));
            }
        }
        for i in 0..catalogue.len() {
            for j in (i + 1)..catalogue.len() {
                if catalogue[i].dim == catalogue[j].dim
                    && is_isomorphic_indec(&catalogue[i], &catalogue[j])?.is_some()
                {
                    return Err(CoreError::schema(format!(
                        "catalogue members {i} and {j} are isomorphic"
                    )));
                }
            }
        }
        if !summands_among(&module, &catalogue)? {
            return Err(CoreError::schema(
                "module has a summand outside the catalogue",
            ));
        }
        Ok(ClusterTiltingInstance {
            algebra,
            module,
            d,
            catalogue,
        })
    }
}

/// Which hom direction a cluster-tilting violation was found in.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum CtSide {
    /// Conditions of the form `Ext^i(M, X)`.
    FromModule,
    /// Conditions of the form `Ext^i(X, M)`.
    IntoModule,
}

/// A counterexample to the cluster-tilting property.
#[derive(Debug, Clone)]
pub enum CtViolation {
    /// A summand of the module itself has a nonvanishing Ext against the
    /// module (rigidity failure).
    ExtNonzero {
        catalogue_index: usize,
        side: CtSide,
        degree: usize,
        dim: usize,
    },
    /// A catalogue member satisfies all vanishing conditions but is not a
    /// summand of the module.
    MissingSummand { catalogue_index: usize, side: CtSide },
}

impl CtViolation {
    pub fn render(&self) -> String {
        match self {
            CtViolation::ExtNonzero {
                catalogue_index,
                side,
                degree,
                dim,
            } => format!(
                "catalogue member {} is a summand but Ext^{}({}) has dimension {}",
                catalogue_index,
                degree,
                match side {
                    CtSide::FromModule => "M, X",
                    CtSide::IntoModule => "X, M",
                },
                dim
            ),
            CtViolation::MissingSummand {
                catalogue_index,
                side,
            } => format!(
                "catalogue member {} satisfies the {} vanishing conditions but is not a summand",
                catalogue_index,
                match side {
                    CtSide::FromModule => "Ext(M, -)",
                    CtSide::IntoModule => "Ext(-, M)",
                }
            ),
        }
    }
}

/// Rigidity: `Ext^i(M, M) = 0` for `1 <= i <= d-1` (vacuous for d = 1).
pub fn is_d_rigid(inst: &ClusterTiltingInstance) -> Result<bool> {
    if inst.d == 1 {
        return Ok(true);
    }
    let exts = ext_dims_up_to(&inst.module, &inst.module, inst.d - 1)?;
    Ok(exts[1..].iter().all(|&e| e == 0))
}

/// The direct cluster-tilting check: both descriptions of `add M` by Ext
/// vanishing are tested against every catalogue member. Returns the first
/// violation found, if any.
pub fn is_d_cluster_tilting_direct(
    inst: &ClusterTiltingInstance,
) -> Result<(bool, Option<CtViolation>)> {
    let m = &inst.module;
    let d = inst.d;
    let dec_m = decompose(m)?;
    for (idx, x) in inst.catalogue.iter().enumerate() {
        let mut in_add = false;
        for leaf in &dec_m.leaves {
            if leaf.dim == x.dim && is_isomorphic_indec(leaf, x)?.is_some() {
                in_add = true;
                break;
            }
        }
        let from_exts = if d >= 2 {
            ext_dims_up_to(m, x, d - 1)?
        } else {
            vec![0]
        };
        let into_exts = if d >= 2 {
            ext_dims_up_to(x, m, d - 1)?
        } else {
            vec![0]
        };
        let from_bad = from_exts.iter().enumerate().skip(1).find(|(_, &e)| e > 0);
        let into_bad = into_exts.iter().enumerate().skip(1).find(|(_, &e)| e > 0);
        if in_add {
            if let Some((deg, &dim)) = from_bad {
                return Ok((
                    false,
                    Some(CtViolation::ExtNonzero {
                        catalogue_index: idx,
                        side: CtSide::FromModule,
                        degree: deg,
                        dim,
                    }),
                ));
            }
            if let Some((deg, &dim)) = into_bad {
                return Ok((
                    false,
                    Some(CtViolation::ExtNonzero {
                        catalogue_index: idx,
                        side: CtSide::IntoModule,
                        degree: deg,
                        dim,
                    }),
                ));
            }
        } else {
            if from_bad.is_none() {
                return Ok((
                    false,
                    Some(CtViolation::MissingSummand {
                        catalogue_index: idx,
                        side: CtSide::FromModule,
                    }),
                ));
            }
            if into_bad.is_none() {
                return Ok((
                    false,
                    Some(CtViolation::MissingSummand {
                        catalogue_index: idx,
                        side: CtSide::IntoModule,
                    }),
                ));
            }
        }
    }
    Ok((true, None))
}

/// An injective coresolution witness for one distinguished projective,
/// carrying the terms, connecting maps, and per-term projectivity flags.
#[derive(Debug, Clone)]
pub struct InjCoresolution {
    pub start: Module,
    pub terms: Vec<Module>,
    /// `maps[0]` embeds the start into the first term; `maps[i]` connects
    /// term `i-1` to term `i` through the cosyzygy.
    pub maps: Vec<Matrix>,
    pub projective_flags: Vec<bool>,
    /// True when the final cosyzygy is zero.
    pub complete: bool,
}

fn injective_coresolution(
    x: &Module,
    max_terms: usize,
    inj_proj_flags: &[bool],
) -> Result<InjCoresolution> {
    let mut cur = x.clone();
    let mut terms = Vec::new();
    let mut maps = Vec::new();
    let mut flags = Vec::new();
    let mut prev_proj: Option<Matrix> = None;
    let mut complete = false;
    for _ in 0..max_terms {
        if cur.dim == 0 {
            complete = true;
            break;
        }
        let (env, emb, parts) = injective_envelope_parts(&cur)?;
        let map = match &prev_proj {
            None => emb.clone(),
            Some(p) => p.mul(&emb),
        };
        flags.push(parts.iter().all(|&v| inj_proj_flags[v]));
        maps.push(map);
        let (cok, proj) = cokernel(&emb, &cur, &env)?;
        terms.push(env);
        prev_proj = Some(proj);
        cur = cok;
    }
    if cur.dim == 0 {
        complete = true;
    }
    Ok(InjCoresolution {
        start: x.clone(),
        terms,
        maps,
        projective_flags: flags,
        complete,
    })
}

/// Certificate for the endomorphism-algebra side: global dimension at most
/// d+1 and dominant dimension at least d+1, with resolution witnesses.
#[derive(Debug, Clone)]
pub struct AuslanderCertificate {
    pub d: usize,
    pub gl_dim: DimBound,
    pub dom_dim: DimBound,
    pub verdict: bool,
    pub simple_resolutions: Vec<ProjResolution>,
    pub projective_coresolutions: Vec<InjCoresolution>,
}

/// Certify (or refute) the homological characterization at degree `d`:
/// `gl.dim <= d+1` and `dom.dim >= d+1`.
pub fn is_d_auslander(gamma: &Arc<Algebra>, d: usize) -> Result<AuslanderCertificate> {
    if d < 1 {
        return Err(CoreError::schema("degree d must be at least 1"));
    }
    let gl_dim = global_dimension(gamma, d + 2)?;
    let dom_dim = dominant_dimension(gamma, d + 1)?;
    let gl_ok = gl_dim
        .is_at_most(d + 1)
        .ok_or_else(|| CoreError::internal("global dimension cap left the verdict open"))?;
    let dom_ok = dom_dim
        .is_at_least(d + 1)
        .ok_or_else(|| CoreError::internal("dominant dimension cap left the verdict open"))?;
    let verdict = gl_ok && dom_ok;

    let std = standard_modules(gamma)?;
    let mut simple_resolutions = Vec::new();
    for s in &std.simples {
        simple_resolutions.push(projective_resolution(s, d + 2)?);
    }
    let flags = injective_is_projective_flags(gamma)?;
    let mut projective_coresolutions = Vec::new();
    for (q, _, _) in idempotent_summands(gamma)? {
        projective_coresolutions.push(injective_coresolution(&q, d + 1, &flags)?);
    }

    // the witnesses must recompute to the same verdict
    let witness_gl = simple_resolutions
        .iter()
        .all(|r| r.complete && r.modules.len() <= d + 2);
    let witness_dom = projective_coresolutions.iter().all(|c| {
        c.projective_flags.iter().all(|&b| b) && (c.complete || c.terms.len() >= d + 1)
    });
    if witness_gl != gl_ok || witness_dom != dom_ok {
        return Err(CoreError::internal(
            "dimension witnesses disagree with the dimension bounds",
        ));
    }

    Ok(AuslanderCertificate {
        d,
        gl_dim,
        dom_dim,
        verdict,
        simple_resolutions,
        projective_coresolutions,
    })
}

/// True iff no indecomposable projective module is injective.
pub fn reduced_check(gamma: &Arc<Algebra>) -> Result<bool> {
    let dec = decompose_regular(gamma)?;
    let classes = group_classes(&dec)?;
    let std = standard_modules(gamma)?;
    for &r in &classes.reps {
        if summands_among(&dec.leaves[r], &std.injectives)? {
            return Ok(false);
        }
    }
    Ok(true)
}

/// The forward direction: the endomorphism algebra of the instance module,
/// with all decomposition bookkeeping.
pub fn forward(inst: &ClusterTiltingInstance) -> Result<EndData> {
    end_algebra(&inst.module)
}

/// Everything produced by the inverse direction.
#[derive(Debug, Clone)]
pub struct InverseData {
    /// Endomorphism data of the projective-injective sum; its `.algebra`
    /// is the recovered base algebra.
    pub end_i: EndData,
    /// The sum of one representative of each indecomposable
    /// projective-injective module.
    pub i_module: Module,
    /// The recovered module over the recovered algebra: the dual of the
    /// hom space from the regular module into `i_module`.
    pub m: Module,
    /// The hom basis underlying the coordinates of `m`.
    pub hom_reg_i: Vec<Matrix>,
}

/// The inverse direction: from an algebra satisfying the degree-`d`
/// certificate, recover the base algebra as the endomorphism algebra of
/// the projective-injectives, and the module as the dual hom space.
pub fn inverse(gamma: &Arc<Algebra>, d: usize) -> Result<InverseData> {
    if d < 1 {
        return Err(CoreError::schema("degree d must be at least 1"));
    }
    let f = gamma.field;
    let std = standard_modules(gamma)?;
    let mut chosen: Vec<Module> = Vec::new();
    for (q, _, _) in idempotent_summands(gamma)? {
        for leaf in decompose(&q)?.leaves {
            if !summands_among(&leaf, &std.injectives)? {
                continue;
            }
            let mut dup = false;
            for c in &chosen {
                if c.dim == leaf.dim && is_isomorphic_indec(c, &leaf)?.is_some() {
                    dup = true;
                    break;
                }
            }
            if !dup {
                chosen.push(leaf);
            }
        }
    }
    if chosen.is_empty() {
        return Err(CoreError::NoProjectiveInjective);
    }
    let refs: Vec<&Module> = chosen.iter().collect();
    let (i_module, _, _) = direct_sum(&refs)?;
    let end_i = end_algebra(&i_module)?;

    let reg = Module::regular(gamma.clone());
    let homs = hom_basis(&reg, &i_module)?;
    let q = homs.len();
    let span = stack_vectorized(f, &homs, reg.dim, i_module.dim)?;
    let mut actions = Vec::with_capacity(end_i.algebra.dim);
    for e_t in &end_i.basis_maps {
        // left action by postcomposition, then dualized to a right action
        let mut rows = Vec::with_capacity(q);
        for h in &homs {
            let img = h.mul(e_t);
            let coords = span
                .solve_left(&vectorize(f, &img))
                .ok_or_else(|| CoreError::internal("postcomposition left the hom span"))?;
            rows.push((0..q).map(|l| coords.at(0, l).clone()).collect::<Vec<_>>());
        }
        actions.push(Matrix::from_rows(f, rows)?.transpose());
    }
    let m = Module::new(end_i.algebra.clone(), actions)?;
    Ok(InverseData {
        end_i,
        i_module,
        m,
        hom_reg_i: homs,
    })
}

/// One verification stage of the round trip.
#[derive(Debug, Clone)]
pub struct StageResult {
    pub name: String,
    pub pass: bool,
    pub detail: String,
}

/// The full round-trip report.
#[derive(Debug, Clone)]
pub struct RoundtripReport {
    pub stages: Vec<StageResult>,
    pub pass: bool,
}

impl RoundtripReport {
    fn fail(mut self) -> Self {
        self.pass = false;
        self
    }
}

/// Run the whole pipeline: direct check, forward, certificate, inverse,
/// and the two agreement checks (algebra isomorphism via an explicit
/// canonical chain, and summand-by-summand module matching).
pub fn roundtrip(inst: &ClusterTiltingInstance) -> Result<RoundtripReport> {
    let mut report = RoundtripReport {
        stages: Vec::new(),
        pass: true,
    };

    let (ct_ok, violation) = is_d_cluster_tilting_direct(inst)?;
    report.stages.push(StageResult {
        name: "cluster-tilting".into(),
        pass: ct_ok,
        detail: match &violation {
            Some(v) => v.render(),
            None => format!(
                "module of dimension {} against a catalogue of {}",
                inst.module.dim,
                inst.catalogue.len()
            ),
        },
    });
    if !ct_ok {
        return Ok(report.fail());
    }

    let end_m = forward(inst)?;
    report.stages.push(StageResult {
        name: "forward".into(),
        pass: true,
        detail: format!(
            "endomorphism algebra of dimension {} with {} summands",
            end_m.algebra.dim,
            end_m.dec.leaves.len()
        ),
    });

    let cert = is_d_auslander(&end_m.algebra, inst.d)?;
    report.stages.push(StageResult {
        name: "auslander-certificate".into(),
        pass: cert.verdict,
        detail: format!(
            "gl.dim {} , dom.dim {}",
            cert.gl_dim.render(),
            cert.dom_dim.render()
        ),
    });
    if !cert.verdict {
        return Ok(report.fail());
    }

    let inv = inverse(&end_m.algebra, inst.d)?;
    let m_dec = decompose(&inv.m)?;
    report.stages.push(StageResult {
        name: "inverse".into(),
        pass: true,
        detail: format!(
            "recovered algebra of dimension {}, module of dimension {} with {} summands",
            inv.end_i.algebra.dim,
            inv.m.dim,
            m_dec.leaves.len()
        ),
    });

    let (iso_ok, iso_detail) = basic_isomorphism_stage(inst, &end_m, &inv)?;
    report.stages.push(StageResult {
        name: "algebra-isomorphism".into(),
        pass: iso_ok,
        detail: iso_detail,
    });
    if !iso_ok {
        return Ok(report.fail());
    }

    let (match_ok, match_detail) = summand_matching_stage(inst, &end_m, &inv)?;
    report.stages.push(StageResult {
        name: "module-matching".into(),
        pass: match_ok,
        detail: match_detail,
    });
    if !match_ok {
        return Ok(report.fail());
    }

    Ok(report)
}

/// The basic form of an algebra: the endomorphism algebra of one
/// representative of each indecomposable projective.
pub fn basic_projective_module(algebra: &Arc<Algebra>) -> Result<Module> {
    let dec = decompose_regular(algebra)?;
    let classes = group_classes(&dec)?;
    let reps: Vec<&Module> = classes.reps.iter().map(|&r| &dec.leaves[r]).collect();
    let (p, _, _) = direct_sum(&reps)?;
    Ok(p)
}

/// Verify that the recovered algebra is isomorphic to the basic form of
/// the original, by building the isomorphism as an explicit chain:
/// endomorphisms of the basic projective module are transported through
/// duality to endomorphisms of the basic injective module, then through
/// the hom functor of the instance module into endomorphisms of the
/// projective-injective sum, and finally conjugated by a module
/// isomorphism. The resulting linear map is checked to be unital,
/// multiplicative, and bijective.
fn basic_isomorphism_stage(
    inst: &ClusterTiltingInstance,
    end_m: &EndData,
    inv: &InverseData,
) -> Result<(bool, String)> {
    let lam = &inst.algebra;
    let f = lam.field;
    let p_basic = basic_projective_module(lam)?;
    let end_p = end_algebra(&p_basic)?;
    let lam_b = &end_p.algebra;
    let lam_prime = &inv.end_i.algebra;
    if lam_b.dim != lam_prime.dim {
        return Ok((
            false,
            format!(
                "basic algebra has dimension {} but the recovered algebra has {}",
                lam_b.dim, lam_prime.dim
            ),
        ));
    }

    // duality transport: Hom(P, A) as a module over the opposite algebra
    let reg = Module::regular(lam.clone());
    let homs_pl = hom_basis(&p_basic, &reg)?;
    let h_dim = homs_pl.len();
    let span_pl = stack_vectorized(f, &homs_pl, p_basic.dim, reg.dim)?;
    let op_arc = Arc::new(lam.opposite());
    let mut h_actions = Vec::with_capacity(lam.dim);
    for t in 0..lam.dim {
        let lm = lam.basis_left_mult(t);
        let mut rows = Vec::with_capacity(h_dim);
        for h in &homs_pl {
            let img = h.mul(&lm);
            let coords = span_pl
                .solve_left(&vectorize(f, &img))
                .ok_or_else(|| CoreError::internal("left multiplication left the hom span"))?;
            rows.push(
                (0..h_dim)
                    .map(|l| coords.at(0, l).clone())
                    .collect::<Vec<_>>(),
            );
        }
        h_actions.push(Matrix::from_rows(f, rows)?);
    }
    let h_mod = Module::new(op_arc, h_actions)?;
    let nu_raw = dualize(&h_mod);
    let nu_p = Module::new_unchecked(lam.clone(), nu_raw.action.clone())?;

    // hom transport: Hom(M, nu P) as a module over the endomorphism algebra
    let hom_m_nup = hom_basis(&inst.module, &nu_p)?;
    let q2 = hom_m_nup.len();
    let span2 = stack_vectorized(f, &hom_m_nup, inst.module.dim, nu_p.dim)?;
    let mut g_actions = Vec::with_capacity(end_m.algebra.dim);
    for e_t in &end_m.basis_maps {
        let mut rows = Vec::with_capacity(q2);
        for h in &hom_m_nup {
            let img = e_t.mul(h);
            let coords = span2
                .solve_left(&vectorize(f, &img))
                .ok_or_else(|| CoreError::internal("precomposition left the hom span"))?;
            rows.push(
                (0..q2)
                    .map(|l| coords.at(0, l).clone())
                    .collect::<Vec<_>>(),
            );
        }
        g_actions.push(Matrix::from_rows(f, rows)?);
    }
    let hom_mod = Module::new(end_m.algebra.clone(), g_actions)?;

    let w = match is_isomorphic(&hom_mod, &inv.i_module)? {
        Some(w) => w,
        None => {
            return Ok((
                false,
                "transported hom module is not isomorphic to the projective-injective sum".into(),
            ))
        }
    };
    let w_inv = w
        .inverse()
        .ok_or_else(|| CoreError::internal("isomorphism witness is not invertible"))?;

    // assemble the chain on each basis endomorphism of the basic module
    let mut x_rows: Vec<Vec<Scalar>> = Vec::with_capacity(lam_b.dim);
    for phi in &end_p.basis_maps {
        // dual transport of precomposition with phi
        let mut t_rows = Vec::with_capacity(h_dim);
        for h in &homs_pl {
            let img = phi.mul(h);
            let coords = span_pl
                .solve_left(&vectorize(f, &img))
                .ok_or_else(|| CoreError::internal("precomposition left the hom span"))?;
            t_rows.push(
                (0..h_dim)
                    .map(|l| coords.at(0, l).clone())
                    .collect::<Vec<_>>(),
            );
        }
        let psi = Matrix::from_rows(f, t_rows)?.transpose();
        debug_assert!(crate::module::is_module_map(&psi, &nu_p, &nu_p));
        // postcomposition with psi on Hom(M, nu P)
        let mut c_rows = Vec::with_capacity(q2);
        for h in &hom_m_nup {
            let img = h.mul(&psi);
            let coords = span2
                .solve_left(&vectorize(f, &img))
                .ok_or_else(|| CoreError::internal("postcomposition left the hom span"))?;
            c_rows.push(
                (0..q2)
                    .map(|l| coords.at(0, l).clone())
                    .collect::<Vec<_>>(),
            );
        }
        let c_psi = Matrix::from_rows(f, c_rows)?;
        debug_assert!(crate::module::is_module_map(&c_psi, &hom_mod, &hom_mod));
        let endo_i = w_inv.mul(&c_psi).mul(&w);
        let coords = inv
            .end_i
            .coords_of(&endo_i)
            .ok_or_else(|| CoreError::internal("conjugated endomorphism left the span"))?;
        x_rows.push(coords);
    }
    let x = Matrix::from_rows(f, x_rows)?;
    if !x.is_invertible() {
        return Ok((false, "canonical chain is not bijective".into()));
    }
    // unital?
    let unit_row = Matrix::from_rows(f, vec![lam_b.unit.clone()])?.mul(&x);
    for l in 0..lam_prime.dim {
        if unit_row.at(0, l) != &lam_prime.unit[l] {
            return Ok((false, "canonical chain does not preserve the unit".into()));
        }
    }
    // multiplicative?
    let rows: Vec<Vec<Scalar>> = (0..lam_b.dim)
        .map(|i| (0..lam_b.dim).map(|l| x.at(i, l).clone()).collect())
        .collect();
    for i in 0..lam_b.dim {
        for j in 0..lam_b.dim {
            let mut ei = vec![f.zero(); lam_b.dim];
            ei[i] = f.one();
            let mut ej = vec![f.zero(); lam_b.dim];
            ej[j] = f.one();
            let prod = lam_b.mult_vecs(&ei, &ej);
            let lhs = Matrix::from_rows(f, vec![prod])?.mul(&x);
            let rhs = lam_prime.mult_vecs(&rows[i], &rows[j]);
            for l in 0..lam_prime.dim {
                if lhs.at(0, l) != &rhs[l] {
                    return Ok((
                        false,
                        format!("canonical chain fails multiplicativity at pair ({i}, {j})"),
                    ));
                }
            }
        }
    }
    Ok((
        true,
        format!(
            "explicit isomorphism between algebras of dimension {}",
            lam_b.dim
        ),
    ))
}

/// Match the summands of the recovered module against the summands of the
/// instance module through the per-idempotent blocks of the hom space,
/// and compare all pairwise hom dimensions.
fn summand_matching_stage(
    inst: &ClusterTiltingInstance,
    end_m: &EndData,
    inv: &InverseData,
) -> Result<(bool, String)> {
    let f = inst.algebra.field;
    let leaves = &end_m.dec.leaves;
    let idem = idempotent_summands(&end_m.algebra)?;
    if idem.len() != leaves.len() {
        return Ok((
            false,
            format!(
                "{} idempotent blocks against {} module summands",
                idem.len(),
                leaves.len()
            ),
        ));
    }
    let q = inv.hom_reg_i.len();
    let reg_dim = end_m.algebra.dim;
    let span = stack_vectorized(f, &inv.hom_reg_i, reg_dim, inv.i_module.dim)?;
    // per-block coordinate rows inside Hom(regular, I)
    let mut blocks: Vec<Matrix> = Vec::with_capacity(idem.len());
    for (q_a, _, onto) in &idem {
        let part = hom_basis(q_a, &inv.i_module)?;
        let mut rows = Vec::with_capacity(part.len());
        for g in &part {
            let lift = onto.mul(g);
            let coords = span
                .solve_left(&vectorize(f, &lift))
                .ok_or_else(|| CoreError::internal("lifted hom left the span"))?;
            rows.push((0..q).map(|l| coords.at(0, l).clone()).collect::<Vec<_>>());
        }
        blocks.push(if rows.is_empty() {
            Matrix::zero(f, 0, q)
        } else {
            Matrix::from_rows(f, rows)?
        });
    }
    let total: usize = blocks.iter().map(|b| b.rows()).sum();
    if total != q {
        return Ok((
            false,
            format!("hom blocks of total dimension {total} inside a space of dimension {q}"),
        ));
    }
    // dual block of index a = annihilator of all other blocks
    let mut m_parts: Vec<Module> = Vec::with_capacity(blocks.len());
    for a in 0..blocks.len() {
        let mut others = Matrix::zero(f, 0, q);
        for (b, rows) in blocks.iter().enumerate() {
            if b != a && rows.rows() > 0 {
                others = others.vstack(rows);
            }
        }
        let ann = others.transpose().left_kernel_rows();
        if ann.rows() != blocks[a].rows() {
            return Ok((
                false,
                format!("annihilator block {a} has the wrong dimension"),
            ));
        }
        let (part, _) = crate::module::submodule(&inv.m, &ann)?;
        m_parts.push(part);
    }
    // pairwise hom dimension tables must agree
    for a in 0..leaves.len() {
        for b in 0..leaves.len() {
            let lhs = hom_dim(&leaves[a], &leaves[b])?;
            let rhs = hom_dim(&m_parts[a], &m_parts[b])?;
            if lhs != rhs {
                return Ok((
                    false,
                    format!(
                        "hom dimension mismatch at pair ({a}, {b}): {lhs} against {rhs}"
                    ),
                ));
            }
        }
    }
    Ok((
        true,
        format!(
            "{} summands matched with identical pairwise hom tables",
            leaves.len()
        ),
    ))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::field::Field;
    use crate::module::quotient_module;
    use crate::quiver::presets::*;
    use crate::quiver::{algebra_from_presentation, Arrow, QuiverPresentation};

    fn a2() -> Arc<Algebra> {
        Arc::new(algebra_from_presentation(&linear_a_n(Field::Rational, 2)).unwrap())
    }

    fn a2_instance(with_s1: bool) -> ClusterTiltingInstance {
        let alg = a2();
        let std = standard_modules(&alg).unwrap();
        let catalogue = vec![
            std.projectives[0].clone(),
            std.projectives[1].clone(),
            std.simples[0].clone(),
        ];
        let mut parts: Vec<&Module> = vec![&std.projectives[0], &std.projectives[1]];
        if with_s1 {
            parts.push(&std.simples[0]);
        }
        let (m, _, _) = direct_sum(&parts).unwrap();
        ClusterTiltingInstance::new(alg, m, 1, catalogue).unwrap()
    }

    fn dual_numbers_instance() -> ClusterTiltingInstance {
        let alg = Arc::new(
            algebra_from_presentation(&loop_mod_xn(Field::Rational, 2)).unwrap(),
        );
        let reg = Module::regular(alg.clone());
        let std = standard_modules(&alg).unwrap();
        let catalogue = vec![reg.clone(), std.simples[0].clone()];
        let (m, _, _) = direct_sum(&[&reg, &std.simples[0]]).unwrap();
        ClusterTiltingInstance::new(alg, m, 1, catalogue).unwrap()
    }

    fn a3_rad2_instance() -> ClusterTiltingInstance {
        let alg = Arc::new(
            algebra_from_presentation(&a_n_rad_square(Field::Rational, 3)).unwrap(),
        );
        let std = standard_modules(&alg).unwrap();
        // catalogue: P1, P2, P3 = S3, S1, S2
        let catalogue = vec![
            std.projectives[0].clone(),
            std.projectives[1].clone(),
            std.projectives[2].clone(),
            std.simples[0].clone(),
            std.simples[1].clone(),
        ];
        // M = regular + dual regular, one copy per isomorphism class:
        // P1, P2, P3 = S3, and S1 (the injectives I2, I3 repeat P1, P2)
        let (m, _, _) = direct_sum(&[
            &std.projectives[0],
            &std.projectives[1],
            &std.projectives[2],
            &std.simples[0],
        ])
        .unwrap();
        ClusterTiltingInstance::new(alg, m, 2, catalogue).unwrap()
    }

    #[test]
    fn one_cluster_tilting_requires_an_additive_generator() {
        let inst = a2_instance(false);
        let (ok, violation) = is_d_cluster_tilting_direct(&inst).unwrap();
        assert!(!ok);
        match violation.unwrap() {
            CtViolation::MissingSummand {
                catalogue_index, ..
            } => assert_eq!(catalogue_index, 2),
            other => panic!("unexpected violation {:?}", other),
        }
        let full = a2_instance(true);
        let (ok, violation) = is_d_cluster_tilting_direct(&full).unwrap();
        assert!(ok);
        assert!(violation.is_none());
    }

    #[test]
    fn rigidity_examples() {
        // two simples over the path algebra of 1 -> 2 have a nonzero Ext^1
        let alg = a2();
        let std = standard_modules(&alg).unwrap();
        let catalogue = vec![
            std.projectives[0].clone(),
            std.projectives[1].clone(),
            std.simples[0].clone(),
        ];
        let (m, _, _) = direct_sum(&[&std.simples[0], &std.simples[1]]).unwrap();
        let inst =
            ClusterTiltingInstance::new(alg, m, 2, catalogue).unwrap();
        assert!(!is_d_rigid(&inst).unwrap());
        // degree 1 is vacuous
        assert!(is_d_rigid(&a2_instance(false)).unwrap());
        // the model degree-2 instance is rigid
        assert!(is_d_rigid(&a3_rad2_instance()).unwrap());
    }

    #[test]
    fn higher_cluster_tilting_for_radical_square_zero_a3() {
        let inst = a3_rad2_instance();
        let (ok, violation) = is_d_cluster_tilting_direct(&inst).unwrap();
        assert!(ok, "violation: {:?}", violation);
    }

    #[test]
    fn auslander_certificate_of_the_model_algebra() {
        let inst = a2_instance(true);
        let end = forward(&inst).unwrap();
        assert_eq!(end.algebra.dim, 5);
        let cert = is_d_auslander(&end.algebra, 1).unwrap();
        assert!(cert.verdict);
        assert_eq!(cert.gl_dim, DimBound::Finite(2));
        assert_eq!(cert.dom_dim, DimBound::Finite(2));
    }

    #[test]
    fn the_base_algebra_itself_fails_the_certificate() {
        let alg = a2();
        let cert = is_d_auslander(&alg, 1).unwrap();
        assert!(!cert.verdict);
        assert_eq!(cert.dom_dim, DimBound::Finite(1));
        // the offending coresolution term is visible in the witnesses: one
        // projective reaches a non-projective envelope term (the simple
        // injective, dimension one) right after the single good step
        assert!(cert.projective_coresolutions.iter().any(|c| {
            c.projective_flags.get(1) == Some(&false) && c.terms[1].dim == 1
        }));
    }

    #[test]
    fn semisimple_algebras_pass_for_every_degree() {
        let pres = QuiverPresentation {
            field: Field::Rational,
            vertices: vec!["1".into()],
            arrows: vec![],
            relations: vec![],
            length_bound: 1,
        };
        let alg = Arc::new(algebra_from_presentation(&pres).unwrap());
        for d in 1..=3 {
            let cert = is_d_auslander(&alg, d).unwrap();
            assert!(cert.verdict);
            assert_eq!(cert.gl_dim, DimBound::Finite(0));
            assert_eq!(cert.dom_dim, DimBound::Infinite);
        }
    }

    #[test]
    fn reduced_check_examples() {
        // self-injective: not reduced
        let dual = Arc::new(
            algebra_from_presentation(&loop_mod_xn(Field::Rational, 2)).unwrap(),
        );
        assert!(!reduced_check(&dual).unwrap());
        // the model hereditary algebra has a projective-injective
        assert!(!reduced_check(&a2()).unwrap());
        // a fork quiver 2 <- 1 -> 3 has none
        let fork = QuiverPresentation {
            field: Field::Rational,
            vertices: vec!["1".into(), "2".into(), "3".into()],
            arrows: vec![
                Arrow {
                    name: "a".into(),
                    from: "1".into(),
                    to: "2".into(),
                },
                Arrow {
                    name: "b".into(),
                    from: "1".into(),
                    to: "3".into(),
                },
            ],
            relations: vec![],
            length_bound: 2,
        };
        let fork_alg = Arc::new(algebra_from_presentation(&fork).unwrap());
        assert!(reduced_check(&fork_alg).unwrap());
    }

    #[test]
    fn forward_of_dual_numbers_generator_has_dimension_five() {
        let inst = dual_numbers_instance();
        let end = forward(&inst).unwrap();
        assert_eq!(end.algebra.dim, 5);
    }

    #[test]
    fn inverse_of_the_model_auslander_algebra() {
        let inst = a2_instance(true);
        let end = forward(&inst).unwrap();
        let inv = inverse(&end.algebra, 1).unwrap();
        assert_eq!(inv.end_i.algebra.dim, 3);
        assert_eq!(inv.m.dim, 4);
        let dec = decompose(&inv.m).unwrap();
        assert_eq!(dec.leaves.len(), 3);
    }

    #[test]
    fn inverse_of_a_semisimple_algebra_returns_the_regular_module() {
        let pres = QuiverPresentation {
            field: Field::Rational,
            vertices: vec!["1".into()],
            arrows: vec![],
            relations: vec![],
            length_bound: 1,
        };
        let alg = Arc::new(algebra_from_presentation(&pres).unwrap());
        let inv = inverse(&alg, 1).unwrap();
        assert_eq!(inv.end_i.algebra.dim, 1);
        let reg = Module::regular(inv.end_i.algebra.clone());
        assert!(is_isomorphic(&inv.m, &reg).unwrap().is_some());
    }

    #[test]
    fn roundtrip_passes_on_the_model_instances() {
        for inst in [a2_instance(true), dual_numbers_instance(), a3_rad2_instance()] {
            let report = roundtrip(&inst).unwrap();
            assert!(
                report.pass,
                "stages: {:?}",
                report
                    .stages
                    .iter()
                    .map(|s| format!("{}: {} ({})", s.name, s.pass, s.detail))
                    .collect::<Vec<_>>()
            );
            assert_eq!(report.stages.len(), 6);
        }
    }

    #[test]
    fn theorem_agreement_on_a_failing_instance() {
        // M without the extra summand is not cluster-tilting, and its
        // endomorphism algebra fails the certificate: both sides agree
        let inst = a2_instance(false);
        let (ct, _) = is_d_cluster_tilting_direct(&inst).unwrap();
        let end = forward(&inst).unwrap();
        let cert = is_d_auslander(&end.algebra, inst.d).unwrap();
        assert_eq!(ct, cert.verdict);
        assert!(!ct);
    }

    #[test]
    fn coresolution_terms_of_a_passing_forward_image_are_projective_injective() {
        let inst = a2_instance(true);
        let end = forward(&inst).unwrap();
        let cert = is_d_auslander(&end.algebra, 1).unwrap();
        assert!(cert.verdict);
        let inv = inverse(&end.algebra, 1).unwrap();
        for cores in &cert.projective_coresolutions {
            for (k, term) in cores.terms.iter().take(inst.d + 1).enumerate() {
                assert!(
                    summands_among(term, std::slice::from_ref(&inv.i_module)).unwrap(),
                    "coresolution term {k} is not in the additive hull"
                );
            }
        }
    }

    #[test]
    fn full_catalogue_instance_over_a3_with_quotient_member() {
        // catalogue of the linear A3 path algebra: three projectives,
        // two non-projective simples, and the length-two interval
        let alg = Arc::new(
            algebra_from_presentation(&linear_a_n(Field::Rational, 3)).unwrap(),
        );
        let std = standard_modules(&alg).unwrap();
        let p1 = &std.projectives[0];
        let socle_rows = p1.action_of(&alg.idempotent_vec(2)).row_space_basis();
        let (interval, _) = quotient_module(p1, &socle_rows).unwrap();
        assert_eq!(interval.dim, 2);
        let catalogue = vec![
            std.projectives[0].clone(),
            std.projectives[1].clone(),
            std.projectives[2].clone(),
            std.simples[0].clone(),
            std.simples[1].clone(),
            interval,
        ];
        let refs: Vec<&Module> = catalogue.iter().collect();
        let (m, _, _) = direct_sum(&refs).unwrap();
        let inst = ClusterTiltingInstance::new(alg, m, 1, catalogue).unwrap();
        let (ok, _) = is_d_cluster_tilting_direct(&inst).unwrap();
        assert!(ok);
        let end = forward(&inst).unwrap();
        let cert = is_d_auslander(&end.algebra, 1).unwrap();
        assert!(cert.verdict);
    }
}
