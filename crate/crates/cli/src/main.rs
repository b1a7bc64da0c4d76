//! Command-line harness over the core library: loads JSON documents,
//! runs certifications, and emits deterministic reports with replayable
//! witnesses on standard output.
//!
//! Exit codes: 0 verdict pass, 1 verdict fail (report carries a
//! counterexample), 2 malformed input or usage, 3 bound exceeded or
//! otherwise inconclusive. Timing goes to standard error so reports stay
//! byte-identical across runs.

use std::path::{Path, PathBuf};
use std::process::ExitCode;
use std::sync::Arc;
use std::time::Instant;

use clap::{Parser, Subcommand};
use serde_json::{json, Value};

use artin_core::complexes::ComplexCategory;
use artin_core::correspondence::{
    forward, inverse, is_d_auslander, is_d_cluster_tilting_direct, roundtrip,
    AuslanderCertificate, InjCoresolution,
};
use artin_core::decompose::{decompose, is_isomorphic};
use artin_core::error::{CoreError, Result};
use artin_core::families::{generate_family, FamilyKind, FamilySpec};
use artin_core::field::Field;
use artin_core::fileio::{
    dump_algebra, load_algebra_file, load_instance_file, load_module_file, module_to_file,
    read_json_file, to_json_pretty, InstanceFile, SCHEMA_VERSION,
};
use artin_core::homological::{ext_dims_up_to, projective_resolution, ProjResolution};
use artin_core::matrix::Matrix;
use artin_core::module::{kernel, standard_modules, Module};
use artin_core::report::{
    complex_membership_witness, exact_sequence_witness, ext_witness, hom_dim_witness,
    iso_witness, verify_report, Report,
};

#[derive(Parser)]
#[command(
    name = "artin",
    version,
    about = "Exact certification of cluster-tilting modules, Auslander-type endomorphism algebras, and their complex-category models"
)]
struct Cli {
    /// Field used when an algebra file has no embedded one: `Q` or `Fp:P`.
    #[arg(long, global = true)]
    field: Option<String>,
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Inspect algebra files.
    Algebra {
        #[command(subcommand)]
        cmd: AlgebraCmd,
    },
    /// Module-level computations.
    Module {
        #[command(subcommand)]
        cmd: ModuleCmd,
    },
    /// Cluster-tilting certification of an instance file.
    Ct {
        #[command(subcommand)]
        cmd: CtCmd,
    },
    /// Homological certification of an algebra at a given degree.
    Auslander {
        #[command(subcommand)]
        cmd: AuslanderCmd,
    },
    /// The two directions of the correspondence and their round trip.
    Correspond {
        #[command(subcommand)]
        cmd: CorrespondCmd,
    },
    /// The complex-category model over an instance.
    Cxcat {
        #[command(subcommand)]
        cmd: CxcatCmd,
    },
    /// Generators for the standard test families.
    Family {
        #[command(subcommand)]
        cmd: FamilyCmd,
    },
    /// Recheck every witness of a previously produced report.
    VerifyReport {
        /// Report file to replay.
        file: PathBuf,
    },
}

#[derive(Subcommand)]
enum AlgebraCmd {
    /// Load an algebra file and report its structure.
    Info {
        /// Presentation or structure-constant dump.
        file: PathBuf,
    },
}

#[derive(Subcommand)]
enum ModuleCmd {
    /// Ext dimensions between two modules, with certificates per degree.
    Ext {
        /// Algebra file both modules live over.
        algebra: PathBuf,
        /// Source module file.
        x: PathBuf,
        /// Target module file.
        y: PathBuf,
        /// Highest degree to compute.
        #[arg(long, default_value_t = 3)]
        max_degree: usize,
    },
}

#[derive(Subcommand)]
enum CtCmd {
    /// Check the instance module against its catalogue.
    Check {
        /// Instance file (algebra, module, degree, catalogue).
        instance: PathBuf,
    },
}

#[derive(Subcommand)]
enum AuslanderCmd {
    /// Certify `gl.dim <= d+1 <= dom.dim` with resolution witnesses.
    Check {
        /// Algebra file to certify.
        algebra: PathBuf,
        /// Degree of the certification.
        #[arg(short = 'd', long = "degree")]
        d: usize,
    },
}

#[derive(Subcommand)]
enum CorrespondCmd {
    /// Endomorphism algebra of the instance module, with its certificate.
    Forward {
        /// Instance file.
        instance: PathBuf,
        /// Write the endomorphism algebra dump here.
        #[arg(short = 'o', long = "out")]
        out: Option<PathBuf>,
    },
    /// Recover (algebra, module) from a certified endomorphism algebra.
    Inverse {
        /// Algebra file to invert.
        algebra: PathBuf,
        /// Degree of the certification.
        #[arg(short = 'd', long = "degree")]
        d: usize,
        /// Write the recovered algebra and module into this directory.
        #[arg(short = 'o', long = "out")]
        out: Option<PathBuf>,
    },
    /// Full pipeline: check, forward, certify, invert, compare.
    Roundtrip {
        /// Instance file.
        instance: PathBuf,
    },
}

#[derive(Subcommand)]
enum CxcatCmd {
    /// Verify the complex-category model of an instance on a sample.
    Verify {
        /// Instance file.
        instance: PathBuf,
        /// Comma-separated sample keywords: simples, projectives,
        /// syzygies (of simples); default is all three.
        #[arg(long, value_delimiter = ',')]
        samples: Vec<String>,
    },
}

#[derive(Subcommand)]
enum FamilyCmd {
    /// Generate a family member: presentation, dump, catalogue, instances.
    Gen {
        /// Family kind: linear_An, loop_nakayama, An_rad_square.
        kind: String,
        /// Family size parameter.
        #[arg(short = 'n', long = "size")]
        n: usize,
        /// Output directory (a subdirectory per member is created).
        #[arg(short = 'o', long = "out")]
        out: PathBuf,
    },
}

fn main() -> ExitCode {
    let start = Instant::now();
    let argv: Vec<String> = std::env::args().skip(1).collect();
    let echo = format!("artin {}", argv.join(" "));
    let cli = match Cli::try_parse() {
        Ok(c) => c,
        // clap prints usage errors itself and exits 2, help/version exit 0
        Err(e) => e.exit(),
    };
    let outcome = std::panic::catch_unwind(|| run(&cli, &echo));
    let (report, code) = match outcome {
        Ok(Ok(report)) => {
            let code = if report.pass() { 0 } else { 1 };
            (report, code)
        }
        Ok(Err(err)) => error_report(&echo, &err),
        Err(payload) => {
            let msg = panic_message(payload);
            let mut r = Report::new(&echo);
            r.stage("panic", false, &msg);
            r.verdict = "inconclusive".into();
            (r, 3)
        }
    };
    print!("{}", to_json_pretty(&report));
    eprintln!("# elapsed: {} ms", start.elapsed().as_millis());
    ExitCode::from(code)
}

fn panic_message(payload: Box<dyn std::any::Any + Send>) -> String {
    if let Some(s) = payload.downcast_ref::<&str>() {
        (*s).to_string()
    } else if let Some(s) = payload.downcast_ref::<String>() {
        s.clone()
    } else {
        "unknown panic".to_string()
    }
}

fn error_report(echo: &str, e: &CoreError) -> (Report, u8) {
    let code = match e {
        CoreError::Schema(_) | CoreError::NotPrime { .. } | CoreError::NotAdmissible { .. } => 2,
        CoreError::NoProjectiveInjective => 1,
        _ => 3,
    };
    let mut r = Report::new(echo);
    r.stage("error", false, e.to_string());
    r.verdict = match code {
        2 => "error",
        1 => "fail",
        _ => "inconclusive",
    }
    .into();
    if code == 1 {
        r.counterexample(json!({ "reason": e.to_string() }));
    }
    (r, code)
}

fn parse_field(s: &str) -> Result<Field> {
    if s == "Q" {
        return Ok(Field::Rational);
    }
    if let Some(p) = s.strip_prefix("Fp:") {
        let p: u64 = p
            .parse()
            .map_err(|_| CoreError::schema("malformed --field (want Q or Fp:P)"))?;
        let f = Field::Prime { p };
        f.validate()?;
        return Ok(f);
    }
    Err(CoreError::schema("malformed --field (want Q or Fp:P)"))
}

fn run(cli: &Cli, echo: &str) -> Result<Report> {
    let fallback = cli.field.as_deref().map(parse_field).transpose()?;
    match &cli.command {
        Command::Algebra {
            cmd: AlgebraCmd::Info { file },
        } => algebra_info(echo, file, fallback),
        Command::Module {
            cmd:
                ModuleCmd::Ext {
                    algebra,
                    x,
                    y,
                    max_degree,
                },
        } => module_ext(echo, algebra, x, y, *max_degree, fallback),
        Command::Ct {
            cmd: CtCmd::Check { instance },
        } => ct_check(echo, instance, fallback),
        Command::Auslander {
            cmd: AuslanderCmd::Check { algebra, d },
        } => auslander_check(echo, algebra, *d, fallback),
        Command::Correspond { cmd } => match cmd {
            CorrespondCmd::Forward { instance, out } => {
                correspond_forward(echo, instance, out.as_deref(), fallback)
            }
            CorrespondCmd::Inverse { algebra, d, out } => {
                correspond_inverse(echo, algebra, *d, out.as_deref(), fallback)
            }
            CorrespondCmd::Roundtrip { instance } => {
                correspond_roundtrip(echo, instance, fallback)
            }
        },
        Command::Cxcat {
            cmd: CxcatCmd::Verify { instance, samples },
        } => cxcat_verify(echo, instance, samples, fallback),
        Command::Family {
            cmd: FamilyCmd::Gen { kind, n, out },
        } => family_gen(echo, kind, *n, out, fallback),
        Command::VerifyReport { file } => verify_report_cmd(echo, file),
    }
}

fn dims_of(mods: &[Module]) -> Vec<usize> {
    mods.iter().map(|m| m.dim).collect()
}

fn field_name(f: &Field) -> String {
    match f {
        Field::Rational => "Q".into(),
        Field::Prime { p } => format!("F_{p}"),
    }
}

// ---------------------------------------------------------------------
// algebra info

fn algebra_info(echo: &str, file: &Path, fallback: Option<Field>) -> Result<Report> {
    let algebra = load_algebra_file(file, fallback)?;
    let mut report = Report::new(echo);
    report.stage(
        "load",
        true,
        format!(
            "dimension {} over {}, {} idempotent classes",
            algebra.dim,
            field_name(&algebra.field),
            algebra.idempotents.len()
        ),
    );
    match algebra.radical() {
        Ok(rad) => {
            report.stage(
                "radical",
                true,
                format!(
                    "radical dimension {}, semisimple quotient dimension {}",
                    rad.rows(),
                    algebra.dim - rad.rows()
                ),
            );
            let std = standard_modules(&algebra)?;
            report.stage(
                "standard-modules",
                true,
                format!(
                    "projective dims {:?}, injective dims {:?}, simple dims {:?}",
                    dims_of(&std.projectives),
                    dims_of(&std.injectives),
                    dims_of(&std.simples)
                ),
            );
        }
        Err(CoreError::FieldTooSmall { p, dim }) => {
            report.stage(
                "radical",
                true,
                format!(
                    "skipped: trace form unavailable over F_{p} with dimension {dim} and no construction-time radical"
                ),
            );
        }
        Err(e) => return Err(e),
    }
    Ok(report)
}

// ---------------------------------------------------------------------
// module ext

fn module_ext(
    echo: &str,
    algebra: &Path,
    x: &Path,
    y: &Path,
    max_degree: usize,
    fallback: Option<Field>,
) -> Result<Report> {
    let alg = load_algebra_file(algebra, fallback)?;
    let xm = load_module_file(x, Some(&alg), fallback)?;
    let ym = load_module_file(y, Some(&alg), fallback)?;
    let mut report = Report::new(echo);
    report.stage(
        "load",
        true,
        format!(
            "algebra dimension {}, modules of dimension {} and {}",
            alg.dim, xm.dim, ym.dim
        ),
    );
    let exts = ext_dims_up_to(&xm, &ym, max_degree)?;
    for (deg, &value) in exts.iter().enumerate() {
        report.stage(format!("ext^{deg}"), true, format!("dimension {value}"));
        report.witness(ext_witness(format!("ext^{deg}"), &xm, &ym, deg)?);
    }
    Ok(report)
}

// ---------------------------------------------------------------------
// ct check

fn ct_check(echo: &str, instance: &Path, fallback: Option<Field>) -> Result<Report> {
    let inst = load_instance_file(instance, fallback)?;
    let mut report = Report::new(echo);
    report.stage(
        "load",
        true,
        format!(
            "algebra dimension {}, module dimension {}, degree {}, catalogue of {}",
            inst.algebra.dim,
            inst.module.dim,
            inst.d,
            inst.catalogue.len()
        ),
    );
    let (ok, violation) = is_d_cluster_tilting_direct(&inst)?;
    report.stage(
        "cluster-tilting",
        ok,
        match &violation {
            Some(v) => v.render(),
            None => "both orthogonality descriptions match the summands".into(),
        },
    );
    if let Some(v) = violation {
        let idx = match v {
            artin_core::correspondence::CtViolation::ExtNonzero {
                catalogue_index, ..
            }
            | artin_core::correspondence::CtViolation::MissingSummand {
                catalogue_index, ..
            } => catalogue_index,
        };
        report.counterexample(json!({
            "catalogue_index": idx,
            "reason": report.stages.last().map(|s| s.detail.clone()).unwrap_or_default(),
            "module": serde_json::to_value(module_to_file(&inst.catalogue[idx], None))
                .expect("module file serializes"),
        }));
        // exclusion certificates when the failure is a nonvanishing ext
        if inst.d >= 2 {
            let exts_from = ext_dims_up_to(&inst.module, &inst.catalogue[idx], inst.d - 1)?;
            if let Some(deg) = (1..inst.d).find(|&i| exts_from[i] > 0) {
                report.witness(ext_witness(
                    format!("ext^{deg}(M, catalogue[{idx}])"),
                    &inst.module,
                    &inst.catalogue[idx],
                    deg,
                )?);
            }
            let exts_into = ext_dims_up_to(&inst.catalogue[idx], &inst.module, inst.d - 1)?;
            if let Some(deg) = (1..inst.d).find(|&i| exts_into[i] > 0) {
                report.witness(ext_witness(
                    format!("ext^{deg}(catalogue[{idx}], M)"),
                    &inst.catalogue[idx],
                    &inst.module,
                    deg,
                )?);
            }
        }
        return Ok(report);
    }
    // certification witnesses for the pass verdict
    let dec = decompose(&inst.module)?;
    for (idx, member) in inst.catalogue.iter().enumerate() {
        let mut found = None;
        for leaf in &dec.leaves {
            if leaf.dim == member.dim {
                if let Some(iso) = is_isomorphic(member, leaf)? {
                    found = Some((iso, leaf));
                    break;
                }
            }
        }
        match found {
            Some((iso, leaf)) => {
                report.witness(iso_witness(
                    format!("catalogue[{idx}] is a summand"),
                    &iso,
                    member,
                    leaf,
                ));
                for deg in 1..inst.d {
                    report.witness(ext_witness(
                        format!("ext^{deg}(M, catalogue[{idx}]) vanishes"),
                        &inst.module,
                        member,
                        deg,
                    )?);
                    report.witness(ext_witness(
                        format!("ext^{deg}(catalogue[{idx}], M) vanishes"),
                        member,
                        &inst.module,
                        deg,
                    )?);
                }
            }
            None => {
                // a pass with a non-summand member requires exclusion
                // certificates in both directions
                for (src, tgt, tag) in [
                    (&inst.module, member, "from the module"),
                    (member, &inst.module, "into the module"),
                ] {
                    let exts = ext_dims_up_to(src, tgt, inst.d - 1)?;
                    let deg = (1..inst.d).find(|&i| exts[i] > 0).ok_or_else(|| {
                        CoreError::internal(
                            "passing verdict with an unexcluded non-summand",
                        )
                    })?;
                    report.witness(ext_witness(
                        format!("ext^{deg} excludes catalogue[{idx}] {tag}"),
                        src,
                        tgt,
                        deg,
                    )?);
                }
            }
        }
    }
    Ok(report)
}

// ---------------------------------------------------------------------
// auslander check

fn resolution_witness(
    label: String,
    res: &ProjResolution,
    target: &Module,
) -> artin_core::report::Witness {
    let k = res.modules.len() - 1;
    let mut modules: Vec<&Module> = res.modules.iter().rev().collect();
    modules.push(target);
    let mut maps: Vec<&Matrix> = res.maps.iter().rev().collect();
    maps.push(&res.augmentation);
    let mut exact_at: Vec<usize> = Vec::new();
    if res.complete {
        exact_at.push(0);
    }
    exact_at.extend(1..=k + 1);
    exact_sequence_witness(label, &modules, &maps, exact_at)
}

fn coresolution_witness(label: String, c: &InjCoresolution) -> artin_core::report::Witness {
    let mut modules: Vec<&Module> = vec![&c.start];
    modules.extend(c.terms.iter());
    let maps: Vec<&Matrix> = c.maps.iter().collect();
    let mut exact_at: Vec<usize> = (0..c.terms.len()).collect();
    if c.complete {
        exact_at.push(c.terms.len());
    }
    exact_sequence_witness(label, &modules, &maps, exact_at)
}

fn certificate_stages(report: &mut Report, cert: &AuslanderCertificate, gamma_dim: usize) {
    let want = cert.d + 1;
    let gl_ok = matches!(cert.gl_dim.is_at_most(want), Some(true));
    let dom_ok = matches!(cert.dom_dim.is_at_least(want), Some(true));
    report.stage(
        "global-dimension",
        gl_ok,
        format!(
            "gl.dim = {} over an algebra of dimension {gamma_dim} (required <= {want})",
            cert.gl_dim.render()
        ),
    );
    report.stage(
        "dominant-dimension",
        dom_ok,
        format!(
            "dom.dim = {} (required >= {want})",
            cert.dom_dim.render()
        ),
    );
}

fn certificate_witnesses(report: &mut Report, cert: &AuslanderCertificate, std_simples: &[Module]) {
    for (i, res) in cert.simple_resolutions.iter().enumerate() {
        report.witness(resolution_witness(
            format!("projective resolution of simple[{i}]"),
            res,
            &std_simples[i],
        ));
    }
    for (j, c) in cert.projective_coresolutions.iter().enumerate() {
        report.witness(coresolution_witness(
            format!("injective coresolution of projective[{j}]"),
            c,
        ));
    }
}

fn certificate_counterexample(report: &mut Report, cert: &AuslanderCertificate) {
    let want = cert.d + 1;
    if !matches!(cert.dom_dim.is_at_least(want), Some(true)) {
        for (j, c) in cert.projective_coresolutions.iter().enumerate() {
            if let Some(pos) = c
                .projective_flags
                .iter()
                .take(want)
                .position(|&flag| !flag)
            {
                report.counterexample(json!({
                    "stage": "dominant-dimension",
                    "projective_index": j,
                    "coresolution_position": pos,
                    "term": serde_json::to_value(module_to_file(&c.terms[pos], None))
                        .expect("module file serializes"),
                    "reason": "injective coresolution reaches a non-projective term too early",
                }));
                return;
            }
        }
    }
    if !matches!(cert.gl_dim.is_at_most(want), Some(true)) {
        for (i, r) in cert.simple_resolutions.iter().enumerate() {
            if !r.complete || r.modules.len() > want + 1 {
                report.counterexample(json!({
                    "stage": "global-dimension",
                    "simple_index": i,
                    "resolution_length": r.modules.len(),
                    "complete": r.complete,
                    "reason": "projective resolution of a simple module is too long",
                }));
                return;
            }
        }
    }
}

fn auslander_check(
    echo: &str,
    algebra: &Path,
    d: usize,
    fallback: Option<Field>,
) -> Result<Report> {
    let gamma = load_algebra_file(algebra, fallback)?;
    let mut report = Report::new(echo);
    report.stage(
        "load",
        true,
        format!("algebra dimension {} at degree {d}", gamma.dim),
    );
    let cert = is_d_auslander(&gamma, d)?;
    certificate_stages(&mut report, &cert, gamma.dim);
    let std = standard_modules(&gamma)?;
    certificate_witnesses(&mut report, &cert, &std.simples);
    if !cert.verdict {
        certificate_counterexample(&mut report, &cert);
    }
    Ok(report)
}

// ---------------------------------------------------------------------
// correspond

fn correspond_forward(
    echo: &str,
    instance: &Path,
    out: Option<&Path>,
    fallback: Option<Field>,
) -> Result<Report> {
    let inst = load_instance_file(instance, fallback)?;
    let mut report = Report::new(echo);
    let end = forward(&inst)?;
    report.stage(
        "forward",
        true,
        format!(
            "endomorphism algebra of dimension {} with {} summands in {} classes",
            end.algebra.dim,
            end.dec.leaves.len(),
            end.classes.reps.len()
        ),
    );
    let cert = is_d_auslander(&end.algebra, inst.d)?;
    certificate_stages(&mut report, &cert, end.algebra.dim);
    let std = standard_modules(&end.algebra)?;
    certificate_witnesses(&mut report, &cert, &std.simples);
    if !cert.verdict {
        certificate_counterexample(&mut report, &cert);
    }
    if let Some(path) = out {
        std::fs::write(path, to_json_pretty(&dump_algebra(&end.algebra)))
            .map_err(|e| CoreError::schema(format!("cannot write {}: {e}", path.display())))?;
        report.stage("output", true, format!("wrote {}", path.display()));
    }
    Ok(report)
}

fn correspond_inverse(
    echo: &str,
    algebra: &Path,
    d: usize,
    out: Option<&Path>,
    fallback: Option<Field>,
) -> Result<Report> {
    let gamma = load_algebra_file(algebra, fallback)?;
    let mut report = Report::new(echo);
    report.stage(
        "load",
        true,
        format!("algebra dimension {} at degree {d}", gamma.dim),
    );
    let inv = match inverse(&gamma, d) {
        Ok(inv) => inv,
        Err(CoreError::NoProjectiveInjective) => {
            report.stage(
                "projective-injectives",
                false,
                "no indecomposable projective module is injective",
            );
            report.counterexample(json!({
                "reason": "no projective-injective module; the inverse construction needs one",
            }));
            return Ok(report);
        }
        Err(e) => return Err(e),
    };
    report.stage(
        "projective-injectives",
        true,
        format!(
            "projective-injective generator of dimension {}",
            inv.i_module.dim
        ),
    );
    report.stage(
        "recovered-algebra",
        true,
        format!("dimension {}", inv.end_i.algebra.dim),
    );
    let m_dec = decompose(&inv.m)?;
    // the recovered module must be a generator over the recovered algebra
    let std = standard_modules(&inv.end_i.algebra)?;
    let mut all_projectives_present = true;
    for (i, p) in std.projectives.iter().enumerate() {
        let mut found = None;
        for leaf in &m_dec.leaves {
            if leaf.dim == p.dim {
                if let Some(iso) = is_isomorphic(p, leaf)? {
                    found = Some((iso, leaf.clone()));
                    break;
                }
            }
        }
        match found {
            Some((iso, leaf)) => {
                report.witness(iso_witness(
                    format!("recovered module contains projective[{i}]"),
                    &iso,
                    p,
                    &leaf,
                ));
            }
            None => all_projectives_present = false,
        }
    }
    report.stage(
        "recovered-module",
        all_projectives_present,
        format!(
            "dimension {} with {} summands; generator over the recovered algebra: {}",
            inv.m.dim,
            m_dec.leaves.len(),
            all_projectives_present
        ),
    );
    if !all_projectives_present {
        report.counterexample(json!({
            "reason": "recovered module misses an indecomposable projective",
        }));
    }
    if let Some(dir) = out {
        std::fs::create_dir_all(dir)
            .map_err(|e| CoreError::schema(format!("cannot create {}: {e}", dir.display())))?;
        let alg_path = dir.join("algebra.json");
        std::fs::write(&alg_path, to_json_pretty(&dump_algebra(&inv.end_i.algebra)))
            .map_err(|e| CoreError::schema(format!("cannot write {}: {e}", alg_path.display())))?;
        let mod_path = dir.join("module.json");
        let mf = module_to_file(&inv.m, Some(Value::String("algebra.json".into())));
        std::fs::write(&mod_path, to_json_pretty(&mf))
            .map_err(|e| CoreError::schema(format!("cannot write {}: {e}", mod_path.display())))?;
        report.stage("output", true, format!("wrote 2 files in {}", dir.display()));
    }
    Ok(report)
}

fn correspond_roundtrip(echo: &str, instance: &Path, fallback: Option<Field>) -> Result<Report> {
    let inst = load_instance_file(instance, fallback)?;
    let mut report = Report::new(echo);
    let rt = roundtrip(&inst)?;
    for s in &rt.stages {
        report.stage(&s.name, s.pass, &s.detail);
    }
    if rt.pass {
        // hom tables on both sides of the trip, as replayable certificates
        let base_dec = decompose(&inst.module)?;
        for (a, x) in base_dec.leaves.iter().enumerate() {
            for (b, y) in base_dec.leaves.iter().enumerate() {
                report.witness(hom_dim_witness(format!("base hom[{a}][{b}]"), x, y)?);
            }
        }
        let end = forward(&inst)?;
        let inv = inverse(&end.algebra, inst.d)?;
        let rec_dec = decompose(&inv.m)?;
        for (a, x) in rec_dec.leaves.iter().enumerate() {
            for (b, y) in rec_dec.leaves.iter().enumerate() {
                report.witness(hom_dim_witness(format!("recovered hom[{a}][{b}]"), x, y)?);
            }
        }
    }
    Ok(report)
}

// ---------------------------------------------------------------------
// cxcat verify

fn first_syzygies(gamma: &Arc<artin_core::Algebra>) -> Result<Vec<Module>> {
    let std = standard_modules(gamma)?;
    let mut out = Vec::new();
    for s in &std.simples {
        let res = projective_resolution(s, 1)?;
        let (syz, _) = kernel(&res.augmentation, &res.modules[0], s)?;
        out.push(syz);
    }
    Ok(out)
}

fn cxcat_verify(
    echo: &str,
    instance: &Path,
    samples: &[String],
    fallback: Option<Field>,
) -> Result<Report> {
    let inst = load_instance_file(instance, fallback)?;
    let mut report = Report::new(echo);
    let cc = ComplexCategory::new(&inst)?;
    let gamma = cc.end_m.algebra.clone();
    report.stage(
        "model",
        true,
        format!(
            "{} summands, endomorphism algebra of dimension {}, {} injective summands",
            cc.summand_count(),
            gamma.dim,
            cc.injective_part().len()
        ),
    );
    let keywords: Vec<String> = if samples.is_empty() {
        vec!["simples".into(), "projectives".into(), "syzygies".into()]
    } else {
        samples.to_vec()
    };
    let std_g = standard_modules(&gamma)?;
    let mut sample: Vec<Module> = Vec::new();
    for kw in &keywords {
        match kw.as_str() {
            "simples" => sample.extend(std_g.simples.iter().cloned()),
            "projectives" => sample.extend(std_g.projectives.iter().cloned()),
            "syzygies" => sample.extend(first_syzygies(&gamma)?),
            other => {
                return Err(CoreError::schema(format!(
                    "unknown sample keyword `{other}` (expected simples, projectives, syzygies)"
                )))
            }
        }
    }
    report.stage(
        "sample",
        true,
        format!("{} modules from {}", sample.len(), keywords.join(",")),
    );
    let eq = cc.verify_equivalence(&sample)?;
    for s in &eq.stages {
        report.stage(&s.name, s.pass, &s.detail);
    }
    // replayable certificates: hom dimensions on the module side and a
    // membership check of one realized complex
    for (i, n) in sample.iter().enumerate() {
        report.witness(hom_dim_witness(format!("sample[{i}] endomorphisms"), n, n)?);
    }
    if let Some(first) = sample.iter().find(|n| n.dim > 0) {
        let x = cc.realize(first)?;
        let terms: Vec<Module> = x
            .terms
            .iter()
            .map(|t| cc.realize_add(t))
            .collect::<Result<_>>()?;
        let tests = cc.injective_part();
        let member = cc.is_object(&x, &tests)?;
        report.witness(complex_membership_witness(
            "realization of the first sample element",
            &terms,
            &x.diffs,
            &tests,
            member,
        ));
    }
    Ok(report)
}

// ---------------------------------------------------------------------
// family gen

fn family_gen(
    echo: &str,
    kind: &str,
    n: usize,
    out: &Path,
    fallback: Option<Field>,
) -> Result<Report> {
    let kind = FamilyKind::parse(kind).ok_or_else(|| {
        CoreError::schema(format!(
            "unknown family kind `{kind}` (expected linear_An, loop_nakayama, An_rad_square)"
        ))
    })?;
    let field = fallback.unwrap_or(Field::Rational);
    let fam = generate_family(&FamilySpec { kind, n, field })?;
    let mut report = Report::new(echo);
    report.stage(
        "generate",
        true,
        format!(
            "{} n={n}: algebra dimension {}, catalogue of {}, {} designated instances",
            kind.name(),
            fam.algebra.dim,
            fam.catalogue.len(),
            fam.instances.len()
        ),
    );
    let dir = out.join(format!("{}_{n}", kind.name()));
    std::fs::create_dir_all(&dir)
        .map_err(|e| CoreError::schema(format!("cannot create {}: {e}", dir.display())))?;
    let mut files = 0usize;
    let mut write = |path: &Path, text: String| -> Result<()> {
        std::fs::write(path, text)
            .map_err(|e| CoreError::schema(format!("cannot write {}: {e}", path.display())))?;
        files += 1;
        Ok(())
    };
    write(
        &dir.join("presentation.json"),
        to_json_pretty(&fam.presentation),
    )?;
    write(
        &dir.join("algebra.json"),
        to_json_pretty(&dump_algebra(&fam.algebra)),
    )?;
    for (m, label) in fam.catalogue.iter().zip(&fam.labels) {
        let mf = module_to_file(m, Some(Value::String("presentation.json".into())));
        write(&dir.join(format!("{label}.json")), to_json_pretty(&mf))?;
    }
    for inst in &fam.instances {
        let file = InstanceFile {
            schema: SCHEMA_VERSION,
            algebra: Value::String("presentation.json".into()),
            module: serde_json::to_value(module_to_file(&inst.module, None))
                .expect("module file serializes"),
            d: inst.d,
            catalogue: fam
                .labels
                .iter()
                .map(|l| Value::String(format!("{l}.json")))
                .collect(),
        };
        write(
            &dir.join(format!("instance_d{}.json", inst.d)),
            to_json_pretty(&file),
        )?;
    }
    drop(write);
    report.stage("write", true, format!("{files} files in {}", dir.display()));
    Ok(report)
}

// ---------------------------------------------------------------------
// verify-report

fn verify_report_cmd(echo: &str, file: &Path) -> Result<Report> {
    let v = read_json_file(file)?;
    let parsed: Report = serde_json::from_value(v)
        .map_err(|e| CoreError::schema(format!("malformed report: {e}")))?;
    let summary = verify_report(&parsed)?;
    let mut report = Report::new(echo);
    report.stage(
        "parse",
        true,
        format!(
            "report for `{}` with {} witnesses",
            parsed.command,
            parsed.witnesses.len()
        ),
    );
    let mut first_failure: Option<String> = None;
    for (label, ok) in &summary.outcomes {
        report.stage(format!("replay: {label}"), *ok, if *ok { "checks out" } else { "does not replay" });
        if !ok && first_failure.is_none() {
            first_failure = Some(label.clone());
        }
    }
    if let Some(label) = first_failure {
        report.counterexample(json!({ "witness": label }));
    }
    Ok(report)
}
