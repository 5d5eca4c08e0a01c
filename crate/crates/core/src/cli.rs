//! The `colorlie` command-line driver.
//!
//! Every command loads an algebra definition file, runs one library
//! operation and prints a [`Report`], either as text or as JSON (`--json`).
//! Exit codes: 0 success, 1 mathematical failure (defects found), 2 input error.

use std::ffi::OsString;
use std::io::Write;
use std::path::{Path, PathBuf};

use clap::{Parser, Subcommand, ValueEnum};
use serde::Serialize;
use serde_json::{json, Value};

use crate::algebra::ColorLieAlgebra;
use crate::cochain::{cohomology_dims, delta_ce, is_graded_rigid, occurring_degrees, Cochain, CohomologyDims};
use crate::definition::{parse_definition, render_definition, Definition};
use crate::deformation::{
    central_class_is_zero, central_extension, central_extension_deformation, check_bracket_extension,
    check_central_deformation, deformation_jacobi_defects, extend_deformation_to_u, jacobi_report, DeformedMultiplication,
};
use crate::enveloping::{render_u, EnvelopingAlgebra, UElement};
use crate::error::{Error, Result};
use crate::expr::parse_word;
use crate::grading::GradingGroup;
use crate::poisson::{parse_sym, render_star, render_sym, star_product};
use crate::report::VerificationReport;
use crate::representation::ModuleSpec;

pub const EXIT_OK: i32 = 0;
pub const EXIT_FAILURE: i32 = 1;
pub const EXIT_INPUT: i32 = 2;

#[derive(Debug, Parser)]
#[command(name = "colorlie", version, about = "Exact computations with color Lie algebras")]
pub struct Cli {
    /// Print the report as JSON.
    #[arg(long, global = true)]
    pub json: bool,
    /// Skip the axiom checks when loading the definition file.
    #[arg(long, global = true)]
    pub no_verify: bool,
    /// Truncation order N in t.
    #[arg(long, global = true, value_name = "N", default_value_t = 2)]
    pub truncation: usize,
    /// Filtration cutoff d for computations in U(g).
    #[arg(long, global = true, value_name = "d", default_value_t = 3)]
    pub filtration: usize,
    /// Coefficient module for cohomology.
    #[arg(long, global = true, value_enum, default_value_t = ModuleArg::Adjoint)]
    pub module: ModuleArg,
    /// Worker threads for parallel library calls.
    #[arg(long, global = true, value_name = "k")]
    pub threads: Option<usize>,
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum ModuleArg {
    Adjoint,
    Trivial,
}

impl ModuleArg {
    fn spec(self) -> ModuleSpec {
        match self {
            ModuleArg::Adjoint => ModuleSpec::Adjoint,
            ModuleArg::Trivial => ModuleSpec::Trivial,
        }
    }
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Check the bicharacter, grading, color antisymmetry and color Jacobi axioms.
    Verify { file: PathBuf },
    /// Dimensions of C^n, Z^n, B^n, H^n in degree γ (`e`, `1`, `1,0`, or `all`).
    Cohomology { n: usize, degree: String, file: PathBuf },
    /// Graded rigidity: whether H²(L, L)_e vanishes.
    Rigid { file: PathBuf },
    /// PBW normal form of a word of basis names.
    #[command(name = "pbw-normalize")]
    PbwNormalize {
        file: PathBuf,
        #[arg(required = true)]
        word: Vec<String>,
    },
    /// Product of two elements of U(g).
    Multiply { file: PathBuf, u: String, v: String },
    /// Central extension by the cocycle in the file and the induced deformation of U(g).
    #[command(name = "central-extend")]
    CentralExtend { file: PathBuf },
    /// Check the deformation in the file and extend it to U(g).
    Deform { file: PathBuf, order: Option<usize>, cutoff: Option<usize> },
    /// Star product of two elements of the associated graded algebra.
    Star { file: PathBuf, u: String, v: String, order: Option<usize> },
}

#[derive(Clone, Debug, Serialize)]
pub struct BasisSummary {
    pub name: String,
    pub degree: String,
}

#[derive(Clone, Debug, Serialize)]
pub struct AlgebraSummary {
    pub dimension: usize,
    pub group: String,
    pub basis: Vec<BasisSummary>,
}

impl AlgebraSummary {
    pub fn of(alg: &ColorLieAlgebra) -> Self {
        AlgebraSummary {
            dimension: alg.dim(),
            group: group_label(alg.group()),
            basis: alg.basis().iter().map(|b| BasisSummary { name: b.name.clone(), degree: b.degree.to_string() }).collect(),
        }
    }
}

pub fn group_label(g: &GradingGroup) -> String {
    let mut parts: Vec<String> = Vec::new();
    match g.free_rank() {
        0 => {}
        1 => parts.push("Z".into()),
        r => parts.push(format!("Z^{r}")),
    }
    parts.extend(g.torsion_orders().iter().map(|n| format!("Z/{n}")));
    if parts.is_empty() {
        "trivial".into()
    } else {
        parts.join(" x ")
    }
}

/// The outcome of one command.
#[derive(Clone, Debug, Serialize)]
pub struct Report {
    pub command: Vec<String>,
    pub algebra: AlgebraSummary,
    pub result: Value,
    pub verdicts: Vec<VerificationReport>,
    #[serde(skip)]
    pub text: Vec<String>,
    /// Printed after the verdicts.
    #[serde(skip)]
    pub trailer: Vec<String>,
    #[serde(skip)]
    pub failed: bool,
}

impl Report {
    fn new(command: Vec<String>, alg: &ColorLieAlgebra) -> Self {
        Report { command, algebra: AlgebraSummary::of(alg), result: Value::Null, verdicts: Vec::new(), text: Vec::new(), trailer: Vec::new(), failed: false }
    }

    fn line(&mut self, s: impl Into<String>) {
        self.text.push(s.into());
    }

    fn verdict(&mut self, r: VerificationReport) {
        self.failed |= !r.is_valid();
        self.verdicts.push(r);
    }

    pub fn exit_code(&self) -> i32 {
        if self.failed {
            EXIT_FAILURE
        } else {
            EXIT_OK
        }
    }

    pub fn render_text(&self) -> String {
        let mut out = String::new();
        for l in &self.text {
            out.push_str(l);
            out.push('\n');
        }
        for v in &self.verdicts {
            out.push_str(&v.to_string());
            out.push('\n');
        }
        for l in &self.trailer {
            out.push_str(l);
            out.push('\n');
        }
        out
    }

    pub fn render_json(&self) -> String {
        let mut s = serde_json::to_string_pretty(self).expect("report serializes");
        s.push('\n');
        s
    }
}

/// Whether an error is a mathematical failure rather than bad input.
pub fn is_mathematical(e: &Error) -> bool {
    matches!(e, Error::NotACocycle(_) | Error::DefectiveDeformation(_))
}

/// Parses arguments, runs the command and writes the report; returns the exit code.
pub fn run<I, T>(args: I, out: &mut dyn Write, err: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let args: Vec<OsString> = args.into_iter().map(Into::into).collect();
    let cli = match Cli::try_parse_from(&args) {
        Ok(c) => c,
        Err(e) => {
            let code = if e.use_stderr() { EXIT_INPUT } else { EXIT_OK };
            let _ = if e.use_stderr() { write!(err, "{e}") } else { write!(out, "{e}") };
            return code;
        }
    };
    if let Some(k) = cli.threads {
        // a second call in the same process keeps the existing pool
        let _ = rayon::ThreadPoolBuilder::new().num_threads(k).build_global();
    }
    let echo: Vec<String> = args.iter().skip(1).map(|a| a.to_string_lossy().into_owned()).collect();
    match execute(&cli, echo) {
        Ok(report) => {
            let text = if cli.json { report.render_json() } else { report.render_text() };
            let _ = out.write_all(text.as_bytes());
            report.exit_code()
        }
        Err(e) => {
            let _ = writeln!(err, "error: {e}");
            if is_mathematical(&e) {
                EXIT_FAILURE
            } else {
                EXIT_INPUT
            }
        }
    }
}

fn load(path: &Path, cli: &Cli) -> Result<Definition> {
    read(path, !cli.no_verify)
}

fn read(path: &Path, verify: bool) -> Result<Definition> {
    parse_definition(path, verify).map_err(|e| match e {
        Error::Io(io) => Error::Parse { context: path.display().to_string(), message: io.to_string() },
        other => other,
    })
}

pub fn execute(cli: &Cli, echo: Vec<String>) -> Result<Report> {
    match &cli.command {
        Command::Verify { file } => {
            let def = read(file, false)?;
            let mut report = Report::new(echo, &def.algebra);
            verify(&mut report, &def)?;
            Ok(report)
        }
        Command::Cohomology { n, degree, file } => {
            let def = load(file, cli)?;
            cohomology(echo, &def.algebra, *n, degree, &cli.module.spec())
        }
        Command::Rigid { file } => {
            let def = load(file, cli)?;
            let alg = &def.algebra;
            let r = is_graded_rigid(alg);
            let mut report = Report::new(echo, alg);
            report.line(format!("rigid: {}", r.rigid));
            report.line(format!("dim H^2(L, L)_e: {}", r.h2_dim));
            let witnesses: Vec<Value> = r.witnesses.iter().map(|w| cochain_json(alg, w)).collect();
            for (k, w) in r.witnesses.iter().enumerate() {
                report.line(format!("witness {}: {}", k + 1, render_cochain(alg, w)));
            }
            report.result = json!({ "rigid": r.rigid, "h2_dim": r.h2_dim, "witnesses": witnesses });
            Ok(report)
        }
        Command::PbwNormalize { file, word } => {
            let def = load(file, cli)?;
            let alg = &def.algebra;
            let names = parse_word(word);
            let idx = alg.word_indices(&names)?;
            let env = EnvelopingAlgebra::new(alg);
            let nf = env.pbw_normal_form(&idx, crate::Scalar::one())?;
            let mut report = Report::new(echo, alg);
            let rendered = render_u(alg, &nf);
            report.line(rendered.clone());
            report.result = json!({ "word": names, "normal_form": rendered, "terms": u_terms(alg, &nf) });
            Ok(report)
        }
        Command::Multiply { file, u, v } => {
            let def = load(file, cli)?;
            let alg = &def.algebra;
            let env = EnvelopingAlgebra::new(alg);
            let (a, b) = (env.parse(u)?, env.parse(v)?);
            let p = env.multiply(&a, &b);
            let mut report = Report::new(echo, alg);
            let rendered = render_u(alg, &p);
            report.line(rendered.clone());
            report.result = json!({
                "u": render_u(alg, &a),
                "v": render_u(alg, &b),
                "product": rendered,
                "terms": u_terms(alg, &p),
            });
            Ok(report)
        }
        Command::CentralExtend { file } => {
            let def = load(file, cli)?;
            central_extend(echo, &def, cli.truncation, cli.filtration)
        }
        Command::Deform { file, order, cutoff } => {
            let def = load(file, cli)?;
            deform(echo, &def, order.unwrap_or(cli.truncation), cutoff.unwrap_or(cli.filtration))
        }
        Command::Star { file, u, v, order } => {
            let def = load(file, cli)?;
            let alg = &def.algebra;
            let env = EnvelopingAlgebra::new(alg);
            let (a, b) = (parse_sym(alg, u)?, parse_sym(alg, v)?);
            let n = order.unwrap_or(cli.truncation);
            let s = star_product(&env, &a, &b, n);
            let mut report = Report::new(echo, alg);
            let rendered = render_star(alg, &s);
            report.line(rendered.clone());
            let components: Vec<Value> = s.components.iter().map(|c| Value::String(render_sym(alg, c))).collect();
            report.result = json!({ "order": n, "star": rendered, "components": components });
            Ok(report)
        }
    }
}

fn verify(report: &mut Report, def: &Definition) -> Result<()> {
    let alg = &def.algebra;
    report.verdict(alg.bicharacter().verify());
    report.verdict(alg.verify_grading());
    report.verdict(alg.verify_color_antisymmetry());
    report.verdict(alg.verify_color_jacobi());
    // payloads only make sense on top of a valid algebra
    if !report.failed {
        if !def.deformation.is_empty() {
            let mu = def.deformed_bracket(def.deformation.len())?;
            report.verdict(jacobi_report(alg, &deformation_jacobi_defects(alg, &mu)?));
        }
        if let Some(w) = &def.cocycle {
            report.verdict(cocycle_report(alg, w)?);
        }
    }
    report.trailer.push(format!("valid: {}", !report.failed));
    report.result = json!({ "valid": !report.failed });
    Ok(())
}

fn cocycle_report(alg: &ColorLieAlgebra, w: &Cochain) -> Result<VerificationReport> {
    let mut r = VerificationReport::new("central cocycle");
    let d = delta_ce(alg, &ModuleSpec::Trivial, w)?;
    for (t, v) in d.values() {
        if !v.is_zero() {
            let loc = t.iter().map(|&i| alg.name(i).to_string()).collect();
            r.push("cocycle", loc, format!("δω = {}", v.coeff(&0)));
        }
    }
    Ok(r)
}

fn cohomology(echo: Vec<String>, alg: &ColorLieAlgebra, n: usize, degree: &str, module: &ModuleSpec) -> Result<Report> {
    let degrees = if degree.trim() == "all" {
        occurring_degrees(alg, module, n)
    } else {
        vec![alg.group().parse_element(degree)?]
    };
    let mut report = Report::new(echo, alg);
    report.line("n\tdegree\tC\tZ\tB\tH");
    let mut rows = Vec::new();
    for g in degrees {
        let CohomologyDims { cochains, cocycles, coboundaries, cohomology } = cohomology_dims(alg, module, n, &g);
        report.line(format!("{n}\t{g}\t{cochains}\t{cocycles}\t{coboundaries}\t{cohomology}"));
        rows.push(json!({
            "n": n,
            "degree": g.to_string(),
            "cochains": cochains,
            "cocycles": cocycles,
            "coboundaries": coboundaries,
            "cohomology": cohomology,
        }));
    }
    report.result = json!({ "module": module.label(), "rows": rows });
    Ok(report)
}

fn central_extend(echo: Vec<String>, def: &Definition, order: usize, cutoff: usize) -> Result<Report> {
    let alg = &def.algebra;
    let omega = def
        .cocycle
        .as_ref()
        .ok_or_else(|| Error::Parse { context: "definition".into(), message: "no `cocycle` section".into() })?;
    let ext = central_extension(alg, omega)?;
    let class_zero = central_class_is_zero(alg, omega)?;
    let pi = central_extension_deformation(alg, omega, cutoff, order)?;
    let env = EnvelopingAlgebra::new(alg);
    let checks = check_central_deformation(&pi, omega);
    let triviality = pi.order_one_triviality(&env);
    let mut report = Report::new(echo, alg);
    let e = &ext.algebra;
    report.line(format!("extension: {} (dim {})", e.basis().iter().map(|b| b.name.as_str()).collect::<Vec<_>>().join(", "), e.dim()));
    for (i, j) in bracket_pairs(e) {
        report.line(format!("[{}, {}] = {}", e.name(i), e.name(j), e.render_vector(e.bracket_basis(i, j))));
    }
    report.line(format!("class in H^2(L, K)_e: {}", if class_zero { "zero" } else { "nonzero" }));
    report.line(format!("pi_1 trivial at order 1: {}", triviality.trivial));
    pi1_lines(&mut report, &pi);
    for r in checks.reports() {
        report.verdict(r.clone());
    }
    report.result = json!({
        "extension": render_definition(&crate::definition::definition_of(e)),
        "class_zero": class_zero,
        "order_one": triviality,
        "pi": pi_tables(&pi),
    });
    Ok(report)
}

fn deform(echo: Vec<String>, def: &Definition, order: usize, cutoff: usize) -> Result<Report> {
    let alg = &def.algebra;
    let mu = def.deformed_bracket(order)?;
    let defects = deformation_jacobi_defects(alg, &mu)?;
    let mut report = Report::new(echo, alg);
    let jr = jacobi_report(alg, &defects);
    if !jr.is_valid() {
        report.verdict(jr);
        report.line(format!("order: {order}"));
        report.result = json!({ "order": order, "cutoff": cutoff, "defects": defects.len() });
        return Ok(report);
    }
    report.verdict(jr);
    let pi = extend_deformation_to_u(alg, &mu, cutoff)?;
    let checks = check_bracket_extension(&pi, &mu);
    report.line(format!("order: {order}, cutoff: {cutoff}"));
    pi1_lines(&mut report, &pi);
    for r in checks.reports() {
        report.verdict(r.clone());
    }
    report.result = json!({ "order": order, "cutoff": cutoff, "defects": 0, "pi": pi_tables(&pi) });
    Ok(report)
}

fn bracket_pairs(alg: &ColorLieAlgebra) -> Vec<(usize, usize)> {
    let n = alg.dim();
    (0..n).flat_map(|i| (i..n).map(move |j| (i, j))).filter(|&(i, j)| !alg.bracket_basis(i, j).is_zero()).collect()
}

fn pi1_lines(report: &mut Report, pi: &DeformedMultiplication) {
    if pi.order() == 0 {
        return;
    }
    let alg = pi.algebra();
    let n = alg.dim();
    for i in 0..n {
        for j in 0..n {
            let (a, b) = (crate::enveloping::PbwMonomial::generator(i), crate::enveloping::PbwMonomial::generator(j));
            if let Some(v) = pi.pi(1, &a, &b) {
                if !v.is_zero() {
                    report.line(format!("pi_1({}, {}) = {}", alg.name(i), alg.name(j), render_u(alg, &v)));
                }
            }
        }
    }
}

fn pi_tables(pi: &DeformedMultiplication) -> Value {
    let alg = pi.algebra();
    let tables: Vec<Value> = (0..=pi.order())
        .map(|r| {
            let entries: Vec<Value> = pi
                .table()
                .filter_map(|((u, v), _)| {
                    let p = pi.pi(r, u, v)?;
                    (!p.is_zero()).then(|| json!({ "left": u.render(alg), "right": v.render(alg), "value": render_u(alg, &p) }))
                })
                .collect();
            json!({ "order": r, "entries": entries })
        })
        .collect();
    Value::Array(tables)
}

fn u_terms(alg: &ColorLieAlgebra, u: &UElement) -> Vec<Value> {
    u.iter()
        .map(|(m, c)| {
            let names: Vec<&str> = m.indices().iter().map(|&i| alg.name(i)).collect();
            json!({ "monomial": names, "coeff": c.to_string() })
        })
        .collect()
}

fn render_cochain(alg: &ColorLieAlgebra, c: &Cochain) -> String {
    let parts: Vec<String> = c
        .values()
        .iter()
        .filter(|(_, v)| !v.is_zero())
        .map(|(t, v)| {
            let args: Vec<&str> = t.iter().map(|&i| alg.name(i)).collect();
            format!("({}) -> {}", args.join(", "), alg.render_vector(v))
        })
        .collect();
    if parts.is_empty() {
        "0".into()
    } else {
        parts.join("; ")
    }
}

fn cochain_json(alg: &ColorLieAlgebra, c: &Cochain) -> Value {
    let values: Vec<Value> = c
        .values()
        .iter()
        .filter(|(_, v)| !v.is_zero())
        .map(|(t, v)| {
            let args: Vec<&str> = t.iter().map(|&i| alg.name(i)).collect();
            json!({ "arguments": args, "value": alg.render_vector(v) })
        })
        .collect();
    json!({ "arity": c.arity(), "degree": c.degree().to_string(), "values": values })
}
