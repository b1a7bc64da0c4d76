//! JSON document formats: quiver presentations, structure-constant
//! algebra dumps, modules, cluster-tilting instances and complexes.
//!
//! All scalars are rendered as strings in lowest terms (`"3"`, `"-1/2"`;
//! residues in decimal for prime fields). Serialization is deterministic:
//! struct fields in declaration order, map keys sorted. Every document
//! embeds `"schema": 1`.
//!
//! An algebra can be referenced three ways wherever one is expected: as a
//! path string (resolved relative to the referencing file), as an inline
//! quiver presentation (recognised by a `vertices` key), or as an inline
//! structure-constant dump (recognised by a `structure` key). Loaded data
//! is fully re-validated; claims a file cannot justify (e.g. an
//! underspecified generating set) are rejected rather than trusted.

use std::collections::BTreeMap;
use std::path::{Path, PathBuf};
use std::sync::Arc;

use serde::de::DeserializeOwned;
use serde::{Deserialize, Serialize};
use serde_json::Value;

use crate::algebra::Algebra;
use crate::complexes::{AddObject, ComplexCategory, ComplexObject};
use crate::correspondence::ClusterTiltingInstance;
use crate::decompose::{stack_vectorized, vectorize};
use crate::error::{CoreError, Result};
use crate::field::Field;
use crate::matrix::Matrix;
use crate::module::{hom_basis, Module};
use crate::quiver::{algebra_from_presentation, QuiverPresentation};

pub const SCHEMA_VERSION: u32 = 1;

fn default_schema() -> u32 {
    SCHEMA_VERSION
}

fn check_schema(v: u32) -> Result<()> {
    if v != SCHEMA_VERSION {
        return Err(CoreError::schema(format!(
            "unsupported schema version {v} (this build reads version {SCHEMA_VERSION})"
        )));
    }
    Ok(())
}

/// Bound on `path -> file -> path` indirection when resolving algebra and
/// module references, so reference cycles terminate with a schema error.
const MAX_REF_DEPTH: usize = 8;

pub fn to_json_pretty<T: Serialize>(value: &T) -> String {
    let mut s = serde_json::to_string_pretty(value).expect("serialization cannot fail");
    s.push('\n');
    s
}

pub fn parse_json(text: &str) -> Result<Value> {
    serde_json::from_str(text).map_err(|e| CoreError::schema(format!("invalid JSON: {e}")))
}

pub fn read_json_file(path: &Path) -> Result<Value> {
    let text = std::fs::read_to_string(path)
        .map_err(|e| CoreError::schema(format!("cannot read {}: {e}", path.display())))?;
    parse_json(&text).map_err(|e| CoreError::schema(format!("{}: {e}", path.display())))
}

fn from_value<T: DeserializeOwned>(v: &Value, what: &str) -> Result<T> {
    serde_json::from_value(v.clone())
        .map_err(|e| CoreError::schema(format!("malformed {what}: {e}")))
}

fn resolve(dir: &Path, rel: &str) -> PathBuf {
    let p = Path::new(rel);
    if p.is_absolute() {
        p.to_path_buf()
    } else {
        dir.join(p)
    }
}

/// Structure-constant dump of an algebra. `structure[i][j]` lists the
/// coefficients of the product `basis[i] * basis[j]` in the basis. The
/// field may be omitted and supplied externally; `generators` (indices
/// whose span generates multiplicatively, checked on load) may be omitted,
/// in which case the whole basis is used.
#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct AlgebraDump {
    #[serde(default = "default_schema")]
    pub schema: u32,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub field: Option<Field>,
    pub dim: usize,
    pub basis: Vec<String>,
    pub structure: Vec<Vec<Vec<String>>>,
    pub idempotents: Vec<Vec<usize>>,
    #[serde(default, skip_serializing_if = "Vec::is_empty")]
    pub generators: Vec<usize>,
}

pub fn dump_algebra(a: &Algebra) -> AlgebraDump {
    let f = a.field;
    let structure = (0..a.dim)
        .map(|i| {
            (0..a.dim)
                .map(|j| {
                    a.structure_constant(i, j)
                        .iter()
                        .map(|c| f.render(c))
                        .collect()
                })
                .collect()
        })
        .collect();
    AlgebraDump {
        schema: SCHEMA_VERSION,
        field: Some(f),
        dim: a.dim,
        basis: a.basis.clone(),
        structure,
        idempotents: a.idempotents.clone(),
        generators: a.generators.clone(),
    }
}

/// Rebuilds an algebra from a dump. The unit is the sum of the
/// distinguished idempotents; axioms are re-verified by the constructor,
/// and the declared generating set is checked to actually generate.
pub fn algebra_from_dump(d: &AlgebraDump, fallback: Option<Field>) -> Result<Algebra> {
    check_schema(d.schema)?;
    let field = d.field.or(fallback).ok_or_else(|| {
        CoreError::schema("algebra file has no embedded field and none was supplied")
    })?;
    if d.basis.len() != d.dim {
        return Err(CoreError::schema(format!(
            "algebra dump declares dim {} but lists {} basis labels",
            d.dim,
            d.basis.len()
        )));
    }
    if d.structure.len() != d.dim
        || d.structure.iter().any(|r| r.len() != d.dim)
        || d.structure
            .iter()
            .any(|r| r.iter().any(|v| v.len() != d.dim))
    {
        return Err(CoreError::schema(
            "structure constant table must be dim x dim x dim",
        ));
    }
    let mut structure = Vec::with_capacity(d.dim);
    for row in &d.structure {
        let mut out_row = Vec::with_capacity(d.dim);
        for cell in row {
            let mut v = Vec::with_capacity(d.dim);
            for s in cell {
                v.push(field.parse(s)?);
            }
            out_row.push(v);
        }
        structure.push(out_row);
    }
    let mut unit = vec![field.zero(); d.dim];
    for set in &d.idempotents {
        for &i in set {
            if i >= d.dim {
                return Err(CoreError::schema("idempotent index out of range"));
            }
            unit[i] = field.add(&unit[i], &field.one());
        }
    }
    let generators = if d.generators.is_empty() {
        (0..d.dim).collect()
    } else {
        if d.generators.iter().any(|&g| g >= d.dim) {
            return Err(CoreError::schema("generator index out of range"));
        }
        d.generators.clone()
    };
    let alg = Algebra::new(
        field,
        d.basis.clone(),
        structure,
        unit,
        d.idempotents.clone(),
        generators,
        None,
    )?;
    verify_generators(&alg)?;
    Ok(alg)
}

/// Checks that the declared generators really generate the algebra (as a
/// unital algebra): the span of all words in them must be everything.
/// Module-map checks only intertwine generators, so an undersized set
/// would silently weaken every downstream verdict.
fn verify_generators(a: &Algebra) -> Result<()> {
    let f = a.field;
    let mut span = Matrix::from_rows(f, vec![a.unit.clone()])?.row_space_basis();
    loop {
        let mut next = span.clone();
        for &g in &a.generators {
            next = next.vstack(&span.mul(&a.basis_right_mult(g)));
        }
        let next = next.row_space_basis();
        if next.rows() == span.rows() {
            break;
        }
        span = next;
    }
    if span.rows() != a.dim {
        return Err(CoreError::schema(format!(
            "declared generators span a proper subalgebra (dimension {} of {})",
            span.rows(),
            a.dim
        )));
    }
    Ok(())
}

/// Loads an algebra from a JSON value: a path string, an inline quiver
/// presentation, or an inline structure-constant dump.
pub fn load_algebra_value(
    v: &Value,
    dir: &Path,
    fallback: Option<Field>,
) -> Result<Arc<Algebra>> {
    load_algebra_depth(v, dir, fallback, 0)
}

fn load_algebra_depth(
    v: &Value,
    dir: &Path,
    fallback: Option<Field>,
    depth: usize,
) -> Result<Arc<Algebra>> {
    if depth > MAX_REF_DEPTH {
        return Err(CoreError::schema("algebra reference chain is too deep"));
    }
    match v {
        Value::String(rel) => {
            let path = resolve(dir, rel);
            let inner = read_json_file(&path)?;
            let parent = path.parent().unwrap_or(dir).to_path_buf();
            load_algebra_depth(&inner, &parent, fallback, depth + 1)
        }
        Value::Object(map) => {
            if map.contains_key("vertices") {
                let pres: QuiverPresentation = from_value(v, "quiver presentation")?;
                Ok(Arc::new(algebra_from_presentation(&pres)?))
            } else if map.contains_key("structure") {
                let dump: AlgebraDump = from_value(v, "algebra dump")?;
                Ok(Arc::new(algebra_from_dump(&dump, fallback)?))
            } else {
                Err(CoreError::schema(
                    "algebra object is neither a presentation (no `vertices`) nor a dump (no `structure`)",
                ))
            }
        }
        _ => Err(CoreError::schema(
            "algebra reference must be a path string or an inline object",
        )),
    }
}

pub fn load_algebra_file(path: &Path, fallback: Option<Field>) -> Result<Arc<Algebra>> {
    let v = read_json_file(path)?;
    let dir = path.parent().unwrap_or(Path::new(".")).to_path_buf();
    load_algebra_depth(&v, &dir, fallback, 1)
}

/// A module given by its action matrices, keyed by algebra basis label.
/// Omitted labels act by zero, except that when the algebra's unit is a
/// single basis element its omitted action defaults to the identity.
/// The `algebra` value (path or inline) may be omitted when the context
/// supplies one.
#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct ModuleFile {
    #[serde(default = "default_schema")]
    pub schema: u32,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub algebra: Option<Value>,
    pub dim: usize,
    #[serde(default)]
    pub action: BTreeMap<String, Vec<Vec<String>>>,
}

pub fn module_to_file(m: &Module, algebra: Option<Value>) -> ModuleFile {
    let mut action = BTreeMap::new();
    for (i, label) in m.algebra.basis.iter().enumerate() {
        if !m.action[i].is_zero() {
            action.insert(label.clone(), m.action[i].render());
        }
    }
    ModuleFile {
        schema: SCHEMA_VERSION,
        algebra,
        dim: m.dim,
        action,
    }
}

pub fn module_from_file(
    mf: &ModuleFile,
    dir: &Path,
    ambient: Option<&Arc<Algebra>>,
    fallback: Option<Field>,
) -> Result<Module> {
    check_schema(mf.schema)?;
    let algebra = match (&mf.algebra, ambient) {
        (Some(v), Some(amb)) => {
            let own = load_algebra_value(v, dir, fallback)?;
            if !own.same_as(amb) {
                return Err(CoreError::schema(
                    "module file embeds an algebra different from the ambient one",
                ));
            }
            amb.clone()
        }
        (Some(v), None) => load_algebra_value(v, dir, fallback)?,
        (None, Some(amb)) => amb.clone(),
        (None, None) => {
            return Err(CoreError::schema(
                "module file has no algebra and none was supplied",
            ))
        }
    };
    let f = algebra.field;
    for label in mf.action.keys() {
        if !algebra.basis.contains(label) {
            return Err(CoreError::schema(format!(
                "action key `{label}` is not an algebra basis label"
            )));
        }
    }
    let unit_support: Vec<usize> = (0..algebra.dim)
        .filter(|&i| !f.is_zero(&algebra.unit[i]))
        .collect();
    let mut action = Vec::with_capacity(algebra.dim);
    for (i, label) in algebra.basis.iter().enumerate() {
        let m = match mf.action.get(label) {
            Some(rows) => {
                let m = Matrix::parse(f, rows)?;
                if m.rows() != mf.dim || m.cols() != mf.dim {
                    return Err(CoreError::schema(format!(
                        "action of `{label}` must be {dim} x {dim}",
                        dim = mf.dim
                    )));
                }
                m
            }
            None if unit_support == [i] && f.is_one(&algebra.unit[i]) => {
                Matrix::identity(f, mf.dim)
            }
            None => Matrix::zero(f, mf.dim, mf.dim),
        };
        action.push(m);
    }
    Module::new(algebra, action)
}

/// Loads a module from a JSON value: a path string or an inline module
/// object.
pub fn load_module_value(
    v: &Value,
    dir: &Path,
    ambient: Option<&Arc<Algebra>>,
    fallback: Option<Field>,
) -> Result<Module> {
    match v {
        Value::String(rel) => {
            let path = resolve(dir, rel);
            let inner = read_json_file(&path)?;
            let mf: ModuleFile = from_value(&inner, "module file")?;
            let parent = path.parent().unwrap_or(dir).to_path_buf();
            module_from_file(&mf, &parent, ambient, fallback)
        }
        Value::Object(_) => {
            let mf: ModuleFile = from_value(v, "module file")?;
            module_from_file(&mf, dir, ambient, fallback)
        }
        _ => Err(CoreError::schema(
            "module reference must be a path string or an inline object",
        )),
    }
}

pub fn load_module_file(
    path: &Path,
    ambient: Option<&Arc<Algebra>>,
    fallback: Option<Field>,
) -> Result<Module> {
    let v = read_json_file(path)?;
    let mf: ModuleFile = from_value(&v, "module file")?;
    let dir = path.parent().unwrap_or(Path::new(".")).to_path_buf();
    module_from_file(&mf, &dir, ambient, fallback)
}

/// A cluster-tilting instance: algebra, candidate module, degree, and the
/// catalogue of indecomposables it is checked against.
#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct InstanceFile {
    #[serde(default = "default_schema")]
    pub schema: u32,
    pub algebra: Value,
    pub module: Value,
    pub d: usize,
    pub catalogue: Vec<Value>,
}

pub fn load_instance_file(path: &Path, fallback: Option<Field>) -> Result<ClusterTiltingInstance> {
    let v = read_json_file(path)?;
    let inst: InstanceFile = from_value(&v, "instance file")?;
    let dir = path.parent().unwrap_or(Path::new(".")).to_path_buf();
    instance_from_file(&inst, &dir, fallback)
}

pub fn instance_from_file(
    inst: &InstanceFile,
    dir: &Path,
    fallback: Option<Field>,
) -> Result<ClusterTiltingInstance> {
    check_schema(inst.schema)?;
    let algebra = load_algebra_value(&inst.algebra, dir, fallback)?;
    let module = load_module_value(&inst.module, dir, Some(&algebra), fallback)?;
    let mut catalogue = Vec::with_capacity(inst.catalogue.len());
    for c in &inst.catalogue {
        catalogue.push(load_module_value(c, dir, Some(&algebra), fallback)?);
    }
    ClusterTiltingInstance::new(algebra, module, inst.d, catalogue)
}

/// A complex over the additive hull of the fixed module. `summands` names
/// the indecomposable summands in category order (documentation plus a
/// count/label check on load); `terms[i]` is the multiplicity vector at
/// homological position `i`; `differentials[i]` is the map from position
/// `i+1` to position `i` as hom-coordinate blocks:
/// `differentials[i][t][s]` lists the coordinates, in the canonical hom
/// basis between the source copy `s` and target copy `t`, of that block.
/// Copies are enumerated summand-major (all copies of summand 0, then 1,
/// and so on).
#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct ComplexFile {
    #[serde(default = "default_schema")]
    pub schema: u32,
    pub summands: Vec<String>,
    pub terms: Vec<Vec<usize>>,
    pub differentials: Vec<Vec<Vec<Vec<String>>>>,
}

/// The (summand index, realized offset) of each copy in a term, in
/// summand-major order.
fn copy_layout(cc: &ComplexCategory, t: &AddObject) -> Vec<(usize, usize)> {
    let base = cc.base_offsets(t);
    let mut copies = Vec::new();
    for (a, &mult) in t.multiplicities.iter().enumerate() {
        for k in 0..mult {
            copies.push((a, base[a] + k * cc.summands[a].dim));
        }
    }
    copies
}

/// Canonical hom bases between summand pairs, computed on demand.
struct HomCache<'a> {
    cc: &'a ComplexCategory,
    cache: BTreeMap<(usize, usize), Vec<Matrix>>,
}

impl<'a> HomCache<'a> {
    fn new(cc: &'a ComplexCategory) -> Self {
        HomCache {
            cc,
            cache: BTreeMap::new(),
        }
    }

    fn get(&mut self, s: usize, t: usize) -> Result<&Vec<Matrix>> {
        if !self.cache.contains_key(&(s, t)) {
            let basis = hom_basis(&self.cc.summands[s], &self.cc.summands[t])?;
            self.cache.insert((s, t), basis);
        }
        Ok(&self.cache[&(s, t)])
    }
}

pub fn complex_to_file(
    cc: &ComplexCategory,
    x: &ComplexObject,
    labels: &[String],
) -> Result<ComplexFile> {
    if labels.len() != cc.summand_count() {
        return Err(CoreError::schema(
            "summand label list does not match the summand count",
        ));
    }
    let f = cc.algebra.field;
    let mut homs = HomCache::new(cc);
    let mut differentials = Vec::with_capacity(x.diffs.len());
    for (i, diff) in x.diffs.iter().enumerate() {
        let src = copy_layout(cc, &x.terms[i + 1]);
        let tgt = copy_layout(cc, &x.terms[i]);
        let mut blocks_t = Vec::with_capacity(tgt.len());
        for &(ct, to) in &tgt {
            let tdim = cc.summands[ct].dim;
            let mut blocks_s = Vec::with_capacity(src.len());
            for &(cs, so) in &src {
                let sdim = cc.summands[cs].dim;
                let block = diff.submatrix(so, to, sdim, tdim);
                let basis = homs.get(cs, ct)?;
                let coords = if basis.is_empty() {
                    if !block.is_zero() {
                        return Err(CoreError::internal(
                            "differential block is not a module map",
                        ));
                    }
                    Vec::new()
                } else {
                    let table = stack_vectorized(f, basis, sdim, tdim)?;
                    let want = vectorize(f, &block);
                    let sol = table.solve_left(&want).ok_or_else(|| {
                        CoreError::internal("differential block is not a module map")
                    })?;
                    (0..sol.cols()).map(|j| f.render(sol.at(0, j))).collect()
                };
                blocks_s.push(coords);
            }
            blocks_t.push(blocks_s);
        }
        differentials.push(blocks_t);
    }
    Ok(ComplexFile {
        schema: SCHEMA_VERSION,
        summands: labels.to_vec(),
        terms: x.terms.iter().map(|t| t.multiplicities.clone()).collect(),
        differentials,
    })
}

pub fn complex_from_file(
    cc: &ComplexCategory,
    file: &ComplexFile,
    expected_labels: Option<&[String]>,
) -> Result<ComplexObject> {
    check_schema(file.schema)?;
    if file.summands.len() != cc.summand_count() {
        return Err(CoreError::schema(format!(
            "complex file lists {} summands but the category has {}",
            file.summands.len(),
            cc.summand_count()
        )));
    }
    if let Some(labels) = expected_labels {
        if file.summands != labels {
            return Err(CoreError::schema(
                "complex file summand labels do not match the instance catalogue",
            ));
        }
    }
    if file.terms.is_empty() {
        return Err(CoreError::schema("a complex needs at least one term"));
    }
    if file.differentials.len() + 1 != file.terms.len() {
        return Err(CoreError::schema(
            "a complex with n terms needs exactly n - 1 differentials",
        ));
    }
    let mut terms = Vec::with_capacity(file.terms.len());
    for t in &file.terms {
        if t.len() != cc.summand_count() {
            return Err(CoreError::schema(
                "term multiplicity vector length does not match the summand count",
            ));
        }
        terms.push(AddObject {
            multiplicities: t.clone(),
        });
    }
    let f = cc.algebra.field;
    let mut homs = HomCache::new(cc);
    let mut diffs = Vec::with_capacity(file.differentials.len());
    for (i, blocks_t) in file.differentials.iter().enumerate() {
        let src = copy_layout(cc, &terms[i + 1]);
        let tgt = copy_layout(cc, &terms[i]);
        let mut diff = Matrix::zero(f, cc.realized_dim(&terms[i + 1]), cc.realized_dim(&terms[i]));
        if blocks_t.len() != tgt.len() {
            return Err(CoreError::schema(format!(
                "differential {i} has {} target blocks, expected {}",
                blocks_t.len(),
                tgt.len()
            )));
        }
        for (bt, &(ct, to)) in blocks_t.iter().zip(&tgt) {
            if bt.len() != src.len() {
                return Err(CoreError::schema(format!(
                    "differential {i} has {} source blocks, expected {}",
                    bt.len(),
                    src.len()
                )));
            }
            for (coords, &(cs, so)) in bt.iter().zip(&src) {
                let basis = homs.get(cs, ct)?;
                if coords.len() != basis.len() {
                    return Err(CoreError::schema(format!(
                        "a block of differential {i} has {} coordinates, expected {}",
                        coords.len(),
                        basis.len()
                    )));
                }
                let mut block =
                    Matrix::zero(f, cc.summands[cs].dim, cc.summands[ct].dim);
                for (c, b) in coords.iter().zip(basis) {
                    let c = f.parse(c)?;
                    if !f.is_zero(&c) {
                        block = block.add(&b.scale(&c));
                    }
                }
                diff.paste(so, to, &block);
            }
        }
        diffs.push(diff);
    }
    let x = ComplexObject { terms, diffs };
    cc.validate(&x)?;
    Ok(x)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::correspondence::ClusterTiltingInstance;
    use crate::module::{direct_sum, standard_modules};
    use crate::quiver::presets;

    fn a2_instance() -> ClusterTiltingInstance {
        let pres = presets::linear_a_n(Field::Rational, 2);
        let algebra = Arc::new(algebra_from_presentation(&pres).unwrap());
        let std = standard_modules(&algebra).unwrap();
        let mut catalogue = std.projectives.clone();
        catalogue.push(std.simples[0].clone());
        let parts: Vec<&Module> = catalogue.iter().collect();
        let (m, _, _) = direct_sum(&parts).unwrap();
        ClusterTiltingInstance::new(algebra, m, 1, catalogue).unwrap()
    }

    #[test]
    fn algebra_dump_round_trips() {
        let inst = a2_instance();
        let dump = dump_algebra(&inst.algebra);
        let text = to_json_pretty(&dump);
        let parsed: AlgebraDump = serde_json::from_str(&text).unwrap();
        let rebuilt = algebra_from_dump(&parsed, None).unwrap();
        assert!(rebuilt.same_as(&inst.algebra));
        assert_eq!(to_json_pretty(&dump_algebra(&rebuilt)), text);
    }

    #[test]
    fn algebra_dump_without_field_needs_a_fallback() {
        let inst = a2_instance();
        let mut dump = dump_algebra(&inst.algebra);
        dump.field = None;
        assert!(matches!(
            algebra_from_dump(&dump, None),
            Err(CoreError::Schema(_))
        ));
        let rebuilt = algebra_from_dump(&dump, Some(Field::Rational)).unwrap();
        assert!(rebuilt.same_as(&inst.algebra));
    }

    #[test]
    fn undersized_generator_sets_are_rejected() {
        let inst = a2_instance();
        let mut dump = dump_algebra(&inst.algebra);
        // keep only the trivial paths: the arrow is not generated
        dump.generators = inst
            .algebra
            .basis
            .iter()
            .enumerate()
            .filter(|(_, b)| b.starts_with("e_"))
            .map(|(i, _)| i)
            .collect();
        let err = algebra_from_dump(&dump, None).unwrap_err();
        assert!(matches!(err, CoreError::Schema(_)), "{err}");
    }

    #[test]
    fn module_files_round_trip_and_default_omitted_actions() {
        let inst = a2_instance();
        let std = standard_modules(&inst.algebra).unwrap();
        for m in std.projectives.iter().chain(std.simples.iter()) {
            let mf = module_to_file(m, None);
            let back =
                module_from_file(&mf, Path::new("."), Some(&inst.algebra), None).unwrap();
            assert_eq!(&back, m);
        }
        // a presented A_2 algebra has a two-element unit: omitting a trivial
        // path's action matrix must fail validation, not silently default
        let p1 = &std.projectives[0];
        let mut mf = module_to_file(p1, None);
        mf.action.remove("e_1");
        let err = module_from_file(&mf, Path::new("."), Some(&inst.algebra), None).unwrap_err();
        assert!(matches!(err, CoreError::Schema(_)), "{err}");
    }

    #[test]
    fn single_idempotent_algebras_default_the_unit_action() {
        let pres = presets::loop_mod_xn(Field::Rational, 3);
        let algebra = Arc::new(algebra_from_presentation(&pres).unwrap());
        let mf = ModuleFile {
            schema: SCHEMA_VERSION,
            algebra: None,
            dim: 1,
            action: BTreeMap::new(),
        };
        let m = module_from_file(&mf, Path::new("."), Some(&algebra), None).unwrap();
        assert_eq!(m.dim, 1);
        assert!(m.action_of(&algebra.unit).is_identity());
    }

    #[test]
    fn instance_files_load_through_path_references() {
        let dir = tempfile::tempdir().unwrap();
        let inst = a2_instance();
        let pres = presets::linear_a_n(Field::Rational, 2);
        std::fs::write(dir.path().join("algebra.json"), to_json_pretty(&pres)).unwrap();
        for (i, c) in inst.catalogue.iter().enumerate() {
            let mf = module_to_file(c, Some(Value::String("algebra.json".into())));
            std::fs::write(
                dir.path().join(format!("cat_{i}.json")),
                to_json_pretty(&mf),
            )
            .unwrap();
        }
        let module_inline = module_to_file(&inst.module, None);
        let file = InstanceFile {
            schema: SCHEMA_VERSION,
            algebra: Value::String("algebra.json".into()),
            module: serde_json::to_value(&module_inline).unwrap(),
            d: 1,
            catalogue: (0..inst.catalogue.len())
                .map(|i| Value::String(format!("cat_{i}.json")))
                .collect(),
        };
        let path = dir.path().join("instance.json");
        std::fs::write(&path, to_json_pretty(&file)).unwrap();
        let loaded = load_instance_file(&path, None).unwrap();
        assert!(loaded.algebra.same_as(&inst.algebra));
        assert_eq!(loaded.module, inst.module);
        assert_eq!(loaded.catalogue.len(), inst.catalogue.len());
    }

    #[test]
    fn malformed_documents_give_schema_errors() {
        assert!(matches!(
            parse_json("{ not json"),
            Err(CoreError::Schema(_))
        ));
        let v = parse_json("{\"dim\": 1}").unwrap();
        assert!(matches!(
            load_algebra_value(&v, Path::new("."), None),
            Err(CoreError::Schema(_))
        ));
        assert!(matches!(
            load_algebra_value(&Value::Null, Path::new("."), None),
            Err(CoreError::Schema(_))
        ));
        // reference cycle
        let dir = tempfile::tempdir().unwrap();
        let p = dir.path().join("self.json");
        std::fs::write(&p, "\"self.json\"\n").unwrap();
        let err = load_algebra_file(&p, None).unwrap_err();
        assert!(matches!(err, CoreError::Schema(_)), "{err}");
    }

    fn class_of(cc: &ComplexCategory, m: &Module) -> usize {
        (0..cc.summand_count())
            .find(|&i| {
                cc.summands[i].dim == m.dim
                    && crate::decompose::is_isomorphic(&cc.summands[i], m)
                        .unwrap()
                        .is_some()
            })
            .unwrap()
    }

    /// `[target <- source]` with the given map, padded with zero terms to
    /// the category's length.
    fn two_term(cc: &ComplexCategory, tgt: usize, src: usize, map: Matrix) -> ComplexObject {
        let k = cc.summand_count();
        let f = cc.algebra.field;
        let mut t0 = AddObject::zero(k);
        t0.multiplicities[tgt] = 1;
        let mut t1 = AddObject::zero(k);
        t1.multiplicities[src] = 1;
        let mut terms = vec![t0, t1];
        let mut diffs = vec![map];
        let mut prev = cc.summands[src].dim;
        while terms.len() < cc.d + 2 {
            terms.push(AddObject::zero(k));
            diffs.push(Matrix::zero(f, 0, prev));
            prev = 0;
        }
        ComplexObject { terms, diffs }
    }

    #[test]
    fn complex_files_round_trip_through_hom_coordinates() {
        let inst = a2_instance();
        let std = standard_modules(&inst.algebra).unwrap();
        let cc = ComplexCategory::new(&inst).unwrap();
        let labels: Vec<String> = (0..cc.summand_count()).map(|i| format!("s{i}")).collect();
        let p1 = class_of(&cc, &std.projectives[0]);
        let p2 = class_of(&cc, &std.projectives[1]);
        let incl = hom_basis(&cc.summands[p2], &cc.summands[p1]).unwrap()[0].clone();

        let mut samples = Vec::new();
        for a in 0..cc.summand_count() {
            let mut mults = vec![0; cc.summand_count()];
            mults[a] = 1;
            samples.push(cc.stalk(mults, cc.d + 2).unwrap());
        }
        let x = two_term(&cc, p1, p2, incl);
        samples.push(cc.direct_sum_complex(&x, &x).unwrap());
        samples.push(x);

        for x in &samples {
            let file = complex_to_file(&cc, x, &labels).unwrap();
            let text = to_json_pretty(&file);
            let parsed: ComplexFile = serde_json::from_str(&text).unwrap();
            let back = complex_from_file(&cc, &parsed, Some(&labels)).unwrap();
            assert_eq!(back.terms, x.terms);
            assert_eq!(back.diffs, x.diffs);
        }
    }

    #[test]
    fn complex_files_with_wrong_shapes_are_rejected() {
        let inst = a2_instance();
        let std = standard_modules(&inst.algebra).unwrap();
        let cc = ComplexCategory::new(&inst).unwrap();
        let labels: Vec<String> = (0..cc.summand_count()).map(|i| format!("s{i}")).collect();
        let p1 = class_of(&cc, &std.projectives[0]);
        let p2 = class_of(&cc, &std.projectives[1]);
        let incl = hom_basis(&cc.summands[p2], &cc.summands[p1]).unwrap()[0].clone();
        let good = complex_to_file(&cc, &two_term(&cc, p1, p2, incl), &labels).unwrap();

        let mut bad = good.clone();
        bad.terms.pop();
        assert!(complex_from_file(&cc, &bad, None).is_err());

        let mut bad = good.clone();
        bad.summands.pop();
        assert!(complex_from_file(&cc, &bad, None).is_err());

        let mut bad = good.clone();
        bad.differentials[0][0][0] = vec!["1".into(), "1".into()];
        assert!(complex_from_file(&cc, &bad, None).is_err());

        let mut bad = good;
        bad.summands.reverse();
        assert!(complex_from_file(&cc, &bad, Some(&labels)).is_err());
    }
}
