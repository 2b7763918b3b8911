//! The `lieform` command line.

pub mod report;
pub mod suites;

pub use report::{Check, Outcome, Status, SuiteReport, VerificationReport};
pub use suites::{effective_degree, run_suite, SuiteKind, VerifyOptions};

use crate::exterior::json::{from_json, metric_from_json, rational_to_json};
use crate::exterior::{Exterior, MultiVector};
use crate::lie_core::{build_algebra_with, BuildConfig, LieAlgebraData, LieError, DEFAULT_GUARDRAIL};
use crate::phi_split::{golden_su3, invariant_forms, phi_split, primitive_generators, star_omega, PhiTable};
use crate::recognize::{
    cartan_subspace, classify_3form, coassoc_system_space, random_subspace, restricts_to_zero, root_su2_subspace,
    stabilizer_algebra, subspace_test, vec_to_matrix, MatrixLieAlgebra,
};
use crate::scalars::{Backend, SparseVec, Subspace};
use clap::{Parser, Subcommand, ValueEnum};
use rand::SeedableRng;
use serde_json::{json, Value};
use std::ffi::OsString;
use std::io::Write;
use std::path::{Path, PathBuf};

#[derive(Parser, Debug)]
#[command(name = "lieform", version, about = "Exact exterior calculus on compact simple Lie algebras")]
pub struct Cli {
    /// Also write the report as JSON to this path.
    #[arg(long, global = true, value_name = "PATH")]
    pub json: Option<PathBuf>,
    /// Arithmetic for Hodge-star dependent checks.
    #[arg(long, global = true, value_enum, default_value_t = BackendArg::Exact)]
    pub backend: BackendArg,
    /// Float precision in bits (minimum 128).
    #[arg(long, global = true, default_value_t = 128, value_name = "BITS")]
    pub precision: u32,
    /// Highest exterior degree to compute.
    #[arg(long, global = true, value_name = "K")]
    pub max_degree: Option<usize>,
    /// Largest algebra dimension accepted.
    #[arg(long, global = true, default_value_t = DEFAULT_GUARDRAIL, value_name = "DIM")]
    pub guardrail: usize,
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum BackendArg {
    Exact,
    Float,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum SuiteArg {
    All,
    Differential,
    Cohomology,
    Torsion,
    Phi,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum FormArg {
    Omega,
    StarOmega,
    X5,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum PresetArg {
    /// `span{h, e, f}` of the first simple root.
    RootSu2,
    /// The Cartan subalgebra.
    Cartan,
    /// A random 3-dimensional subspace.
    Random,
}

#[derive(Subcommand, Debug)]
pub enum Command {
    /// Run verification suites on an algebra.
    Verify {
        algebra: String,
        #[arg(long, value_enum, default_value_t = SuiteArg::All)]
        suite: SuiteArg,
    },
    /// Plus/minus dimensions of the splitting by an invariant form.
    Table {
        algebra: String,
        #[arg(long, value_enum, default_value_t = FormArg::Omega)]
        form: FormArg,
    },
    /// Betti numbers of the invariant forms.
    Betti { algebra: String },
    /// Classify a 3-form given as JSON, or `omega:<algebra>`.
    Classify {
        form: String,
        #[arg(long, value_name = "FILE")]
        metric: Option<PathBuf>,
    },
    /// Stabilizer algebra of a form given as JSON, or `omega:<algebra>`.
    Stab { form: String },
    /// Associativity tests for a subspace of an algebra.
    Subspace {
        algebra: String,
        /// JSON array of vectors (rational entries) spanning the subspace.
        #[arg(long, value_name = "FILE", conflicts_with = "preset")]
        basis: Option<PathBuf>,
        #[arg(long, value_enum)]
        preset: Option<PresetArg>,
        /// Seed for `--preset random`.
        #[arg(long, default_value_t = 0)]
        seed: u64,
    },
}

#[derive(Debug)]
pub enum CliError {
    Usage(String),
    Failure(String),
}

impl CliError {
    pub fn exit_code(&self) -> i32 {
        match self {
            CliError::Usage(_) => 2,
            CliError::Failure(_) => 1,
        }
    }
}

impl From<LieError> for CliError {
    fn from(e: LieError) -> Self {
        match e {
            LieError::Unsupported(_) | LieError::Guardrail { .. } | LieError::NotDominant(_) => CliError::Usage(e.to_string()),
            _ => CliError::Failure(e.to_string()),
        }
    }
}

fn usage(msg: impl Into<String>) -> CliError {
    CliError::Usage(msg.into())
}

/// Parses `args` (including the program name) and runs the command.
/// Returns the process exit code.
pub fn run<I, T>(args: I, out: &mut dyn Write, err: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(c) => c,
        Err(e) => {
            let code = if e.use_stderr() { 2 } else { 0 };
            let _ = if code == 0 { write!(out, "{e}") } else { write!(err, "{e}") };
            return code;
        }
    };
    match execute(&cli, out) {
        Ok(code) => code,
        Err(e) => {
            let _ = writeln!(err, "error: {}", match &e {
                CliError::Usage(m) | CliError::Failure(m) => m,
            });
            e.exit_code()
        }
    }
}

fn build(cli: &Cli, name: &str) -> Result<Exterior, CliError> {
    let g = build_algebra_with(name, &BuildConfig { guardrail: cli.guardrail })?;
    Ok(Exterior::new(&g)?)
}

fn write_json(cli: &Cli, v: &Value) -> Result<(), CliError> {
    if let Some(p) = &cli.json {
        let mut s = serde_json::to_string_pretty(v).expect("serializable");
        s.push('\n');
        std::fs::write(p, s).map_err(|e| usage(format!("cannot write {}: {e}", p.display())))?;
    }
    Ok(())
}

fn execute(cli: &Cli, out: &mut dyn Write) -> Result<i32, CliError> {
    if cli.backend == BackendArg::Float || cli.precision != 128 {
        Backend::float(cli.precision).map_err(|e| usage(e.to_string()))?;
    }
    let io = |e: std::io::Error| CliError::Failure(e.to_string());
    match &cli.command {
        Command::Verify { algebra, suite } => {
            let ext = build(cli, algebra)?;
            let opts = VerifyOptions { max_degree: cli.max_degree, precision: cli.precision };
            let kinds: Vec<SuiteKind> = match suite {
                SuiteArg::All => SuiteKind::ALL.to_vec(),
                SuiteArg::Differential => vec![SuiteKind::Differential],
                SuiteArg::Cohomology => vec![SuiteKind::Cohomology],
                SuiteArg::Torsion => vec![SuiteKind::Torsion],
                SuiteArg::Phi => vec![SuiteKind::Phi],
            };
            let report = verify(&ext, &kinds, &opts);
            out.write_all(report.to_text().as_bytes()).map_err(io)?;
            write_json(cli, &report.to_json())?;
            Ok(if report.passed() { 0 } else { 1 })
        }
        Command::Table { algebra, form } => {
            let ext = build(cli, algebra)?;
            let (label, phi) = match form {
                FormArg::Omega => ("omega", ext.omega.vector.clone()),
                FormArg::StarOmega => ("star-omega", star_omega(&ext)?),
                FormArg::X5 => ("x5", x5(&ext)?),
            };
            let split = phi_split(&ext, &phi)?;
            let table = PhiTable::from_split(&ext, label, &split);
            let golden = golden_rows(&ext, *form, &table);
            let (text, json) = render_table(&table, golden.as_ref());
            out.write_all(text.as_bytes()).map_err(io)?;
            write_json(cli, &json)?;
            let ok = golden.map(|(_, mo, _, po)| mo && po).unwrap_or(true);
            Ok(if ok { 0 } else { 1 })
        }
        Command::Betti { algebra } => {
            let ext = build(cli, algebra)?;
            let n = ext.n();
            let (top, note) = effective_degree(n, &VerifyOptions { max_degree: cli.max_degree, precision: cli.precision });
            let inv = invariant_forms(&ext, Some(top));
            let shown: Vec<String> = (0..=top).map(|k| inv.betti[k].unwrap().to_string()).collect();
            writeln!(out, "{}", shown.join(",")).map_err(io)?;
            if top < n {
                let full: Vec<String> = inv.betti.iter().map(|b| b.map(|b| b.to_string()).unwrap_or_else(|| "?".into())).collect();
                writeln!(out, "duality completion (b_k = b_{{{n}-k}}): {}", full.join(",")).map_err(io)?;
                if let Some(n) = note {
                    writeln!(out, "note: {n}").map_err(io)?;
                }
            }
            write_json(
                cli,
                &json!({
                    "command": "betti",
                    "algebra": ext.g.name,
                    "computed_up_to": top,
                    "betti": inv.betti,
                    "by_duality": inv.by_duality,
                    "primitive_degrees": inv.primitive_degrees,
                }),
            )?;
            Ok(0)
        }
        Command::Classify { form, metric } => {
            let phi = load_form(cli, form)?;
            if phi.degree != 3 {
                return Err(usage(format!("classify expects a 3-form, got degree {}", phi.degree)));
            }
            if phi.is_zero() {
                return Err(usage("empty form"));
            }
            if phi.n > cli.guardrail {
                return Err(usage(format!("ambient dimension {} exceeds the guardrail {}", phi.n, cli.guardrail)));
            }
            let m = match metric {
                Some(p) => Some(metric_from_json(&read_json(p)?).map_err(|e| usage(e.to_string()))?),
                None => None,
            };
            let report = classify_3form(&phi, m.as_ref()).map_err(|e| match e {
                LieError::Invariant(m) | LieError::Unsupported(m) => usage(m),
                other => CliError::from(other),
            })?;
            let j = report.to_json();
            writeln!(out, "{}", serde_json::to_string_pretty(&j).unwrap()).map_err(io)?;
            write_json(cli, &j)?;
            Ok(0)
        }
        Command::Stab { form } => {
            let phi = load_form(cli, form)?;
            if phi.is_zero() {
                return Err(usage("empty form"));
            }
            if phi.n > cli.guardrail {
                return Err(usage(format!("ambient dimension {} exceeds the guardrail {}", phi.n, cli.guardrail)));
            }
            let s = stabilizer_algebra(&phi);
            let closed = MatrixLieAlgebra::new(phi.n, s.clone()).is_ok();
            writeln!(out, "stabilizer of a degree-{} form on R^{}: dim {}", phi.degree, phi.n, s.dim()).map_err(io)?;
            writeln!(out, "closed under the commutator: {closed}").map_err(io)?;
            let basis: Vec<Value> = s
                .basis()
                .iter()
                .map(|v| {
                    let m = vec_to_matrix(phi.n, v);
                    Value::Array(
                        m.rows
                            .iter()
                            .enumerate()
                            .flat_map(|(i, r)| r.iter().map(move |(j, c)| json!({"row": i + 1, "col": *j + 1, "value": rational_to_json(c)})))
                            .collect(),
                    )
                })
                .collect();
            write_json(cli, &json!({"command": "stab", "ambient_dim": phi.n, "degree": phi.degree, "stab_dim": s.dim(), "closed": closed, "basis": basis}))?;
            Ok(if closed { 0 } else { 1 })
        }
        Command::Subspace { algebra, basis, preset, seed } => {
            let ext = build(cli, algebra)?;
            let g = &ext.g;
            let v = match (basis, preset) {
                (Some(p), _) => subspace_from_json(g, &read_json(p)?)?,
                (None, Some(PresetArg::RootSu2)) => root_su2_subspace(g, 0).ok_or_else(|| usage("no root basis labels"))?,
                (None, Some(PresetArg::Cartan)) => cartan_subspace(g).ok_or_else(|| usage("no Cartan labels"))?,
                (None, Some(PresetArg::Random)) => {
                    let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(*seed);
                    random_subspace(g, 3, &mut rng)
                }
                (None, None) => return Err(usage("give --basis FILE or --preset")),
            };
            if v.dim() == 0 {
                return Err(usage("subspace is zero"));
            }
            let verdict = subspace_test(g, &v)?;
            let mut j = verdict.to_json();
            let mut agree = true;
            writeln!(out, "dim {}", verdict.dim).map_err(io)?;
            writeln!(out, "bracket closed: {}", verdict.bracket_closed).map_err(io)?;
            writeln!(out, "restricted omega multisymplectic: {}", verdict.restricted_multisymplectic).map_err(io)?;
            if let Some((p, m, z)) = verdict.killing_signature {
                writeln!(out, "induced Killing form inertia (+,-,0): ({p},{m},{z}); semisimple: {}", verdict.semisimple).map_err(io)?;
            }
            writeln!(out, "strongly associative: {}", verdict.strongly_associative).map_err(io)?;
            if v.dim() == 3 {
                let (sys, _) = coassoc_system_space(&ext)?;
                let b = v.basis();
                let vanishes = restricts_to_zero(&ext, &sys, &[b[0].clone(), b[1].clone(), b[2].clone()]);
                agree = vanishes == verdict.strongly_associative;
                writeln!(out, "all {} forms of d(g^perp) vanish on V: {vanishes}", sys.dim()).map_err(io)?;
                writeln!(out, "criteria agree: {agree}").map_err(io)?;
                j["coassoc_vanishes"] = json!(vanishes);
                j["criteria_agree"] = json!(agree);
            }
            j["algebra"] = json!(g.name);
            write_json(cli, &j)?;
            Ok(if agree { 0 } else { 1 })
        }
    }
}

/// Runs `kinds` in order.
pub fn verify(ext: &Exterior, kinds: &[SuiteKind], opts: &VerifyOptions) -> VerificationReport {
    VerificationReport { algebra: ext.g.name.clone(), suites: kinds.iter().map(|k| run_suite(ext, *k, opts)).collect() }
}

fn x5(ext: &Exterior) -> Result<MultiVector, CliError> {
    let inv = invariant_forms(ext, Some(5.min(ext.n())));
    let gens = primitive_generators(ext, &inv)?;
    gens.into_iter()
        .find(|(d, _)| *d == 5)
        .and_then(|(_, mut xs)| (xs.len() == 1).then(|| xs.remove(0)))
        .ok_or_else(|| usage(format!("{} has no unique primitive generator of degree 5", ext.g.name)))
}

fn golden_rows(ext: &Exterior, form: FormArg, t: &PhiTable) -> Option<Golden> {
    if ext.g.name != "su3" {
        return None;
    }
    let gt = golden_su3();
    let prefix = match form {
        FormArg::Omega => "omega",
        FormArg::StarOmega | FormArg::X5 => "star_omega",
    };
    let minus = gt.rows.get(&format!("{prefix}_minus"))?.clone();
    let plus = gt.rows.get(&format!("{prefix}_plus"))?.clone();
    let (mo, po) = (minus == t.minus, plus == t.plus);
    Some((minus, mo, plus, po))
}

type Golden = (Vec<usize>, bool, Vec<usize>, bool);

fn render_table(t: &PhiTable, golden: Option<&Golden>) -> (String, Value) {
    let mut s = format!("{} split by {}\n", t.algebra, t.form);
    s.push_str(&format!("{:>3} {:>7} {:>7}", "k", "minus", "plus"));
    if golden.is_some() {
        s.push_str(&format!(" {:>10} {:>10}", "ref minus", "ref plus"));
    }
    s.push('\n');
    let mut rows = Vec::new();
    for k in 0..t.minus.len() {
        s.push_str(&format!("{k:>3} {:>7} {:>7}", t.minus[k], t.plus[k]));
        let mut row = json!({"k": k, "minus_dim": t.minus[k], "plus_dim": t.plus[k]});
        if let Some((gm, _, gp, _)) = golden {
            s.push_str(&format!(" {:>10} {:>10}", gm[k], gp[k]));
            row["ref_minus_dim"] = json!(gm[k]);
            row["ref_plus_dim"] = json!(gp[k]);
        }
        s.push('\n');
        rows.push(row);
    }
    let mut j = json!({"command": "table", "algebra": t.algebra, "form": t.form, "degrees": rows});
    if let Some((_, mo, _, po)) = golden {
        let st = |b: bool| if b { "PASS" } else { "FAIL" };
        s.push_str(&format!("reference minus row: {}\nreference plus row: {}\n", st(*mo), st(*po)));
        j["reference"] = json!({"minus": st(*mo), "plus": st(*po)});
    }
    (s, j)
}

fn read_json(p: &Path) -> Result<Value, CliError> {
    let text = std::fs::read_to_string(p).map_err(|e| usage(format!("cannot read {}: {e}", p.display())))?;
    serde_json::from_str(&text).map_err(|e| usage(format!("{}: {e}", p.display())))
}

/// A JSON file, or `omega:<algebra>` for the Cartan 3-form.
fn load_form(cli: &Cli, spec: &str) -> Result<MultiVector, CliError> {
    if let Some(name) = spec.strip_prefix("omega:") {
        return Ok(build(cli, name)?.omega.vector.clone());
    }
    from_json(&read_json(Path::new(spec))?).map_err(|e| usage(e.to_string()))
}

fn subspace_from_json(g: &LieAlgebraData, v: &Value) -> Result<Subspace, CliError> {
    let vs = v
        .get("vectors")
        .unwrap_or(v)
        .as_array()
        .ok_or_else(|| usage("subspace must be an array of vectors or {\"vectors\": [...]}"))?;
    let mut out = Vec::new();
    for x in vs {
        let entries = x.as_array().ok_or_else(|| usage("vector must be an array"))?;
        if entries.len() != g.dim() {
            return Err(usage(format!("vector has {} entries, algebra has dim {}", entries.len(), g.dim())));
        }
        let dense: Vec<_> = entries
            .iter()
            .map(crate::exterior::json::parse_rational)
            .collect::<Result<_, _>>()
            .map_err(|e| usage(e.to_string()))?;
        out.push(SparseVec::from_dense(&dense));
    }
    Ok(Subspace::from_vectors(g.dim(), out))
}
