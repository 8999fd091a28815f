//! The `quotshrink` command line.

use std::ffi::OsString;
use std::fmt::Write as _;
use std::path::{Path, PathBuf};

use clap::{Parser, Subcommand, ValueEnum};
use rayon::prelude::*;
use serde::Serialize;
use serde_json::{json, Value};

use crate::blocks::{is_primitive, nontrivial_block_system};
use crate::cert::{
    emit_certificate, to_json_sorted, verify_certificate, Certificate, Mode, ProblemInput, VerifyReport, SCHEMA,
};
use crate::error::{Error, Result};
use crate::group::{centralizer, PermGroup};
use crate::mindeg::min_faithful_rep;
use crate::normal::{is_minimal_normal, socle_decomposition};
use crate::perm::format_all;
use crate::quotient::{embed_quotient, embed_quotient_radical, TraceStep};
use crate::selftest;

#[derive(Parser, Debug)]
#[command(name = "quotshrink", version, about = "Small faithful permutation representations of G/N")]
struct Cli {
    /// Machine-readable JSON output.
    #[arg(long, global = true)]
    json: bool,
    /// Input format.
    #[arg(long, global = true, value_enum, default_value_t = Format::Json)]
    format: Format,
    /// Process every problem in FILE (a JSON array, or text documents
    /// separated by `---` lines), in parallel.
    #[arg(long, global = true, value_name = "FILE")]
    batch: Option<PathBuf>,
    /// Print the construction steps.
    #[arg(long, global = true)]
    trace: bool,
    #[command(subcommand)]
    command: Command,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
enum Format {
    Json,
    Txt,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Faithful representation of G/N for a minimal normal N.
    Reduce { input: Option<PathBuf> },
    /// Faithful representation of G/N for N with nonabelian composition factors.
    ReduceRadical { input: Option<PathBuf> },
    /// Minimal faithful degree of G.
    MinDegree { input: Option<PathBuf> },
    /// Orbits, blocks and the structure of N.
    Analyze { input: Option<PathBuf> },
    /// Re-check a certificate written by `reduce --json`.
    Verify { certificate: Option<PathBuf> },
    /// Run the built-in property checks.
    Selftest,
}

/// Exit code and captured output of one invocation.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Outcome {
    pub code: i32,
    pub stdout: String,
    pub stderr: String,
}

pub fn exit_code(e: &Error) -> i32 {
    if e.is_internal() {
        2
    } else {
        1
    }
}

#[derive(Serialize)]
struct MinDegreeReport {
    schema: u32,
    order: String,
    degree: usize,
    generators: Vec<String>,
    witness_images: Vec<String>,
    stabilizer_orders: Vec<String>,
}

#[derive(Serialize)]
struct SocleReport {
    k: usize,
    factor_order: String,
    t_order: String,
    outer_order: String,
    factor_permutation_images: Vec<String>,
}

#[derive(Serialize)]
struct NormalReport {
    order: String,
    normal: bool,
    transitive: bool,
    abelian: bool,
    #[serde(skip_serializing_if = "Option::is_none")]
    minimal_normal: Option<bool>,
    #[serde(skip_serializing_if = "Option::is_none")]
    centralizer_order: Option<String>,
    #[serde(skip_serializing_if = "Option::is_none")]
    socle: Option<SocleReport>,
}

#[derive(Serialize)]
struct AnalyzeReport {
    schema: u32,
    degree: usize,
    order: String,
    transitive: bool,
    orbits: Vec<Vec<usize>>,
    #[serde(skip_serializing_if = "Option::is_none")]
    primitive: Option<bool>,
    #[serde(skip_serializing_if = "Option::is_none")]
    blocks: Option<Vec<Vec<usize>>>,
    #[serde(skip_serializing_if = "Option::is_none")]
    normal: Option<NormalReport>,
}

enum Report {
    Cert(Certificate),
    MinDegree(MinDegreeReport),
    Analyze(AnalyzeReport),
    Verify(VerifyReport),
}

impl Report {
    fn json(&self) -> Value {
        let v = match self {
            Report::Cert(c) => serde_json::to_value(c),
            Report::MinDegree(r) => serde_json::to_value(r),
            Report::Analyze(r) => serde_json::to_value(r),
            Report::Verify(r) => serde_json::to_value(json!({"schema": SCHEMA, "verified": true, "report": r})),
        };
        v.expect("serializable")
    }

    fn text(&self, trace: bool) -> String {
        let mut s = String::new();
        match self {
            Report::Cert(c) => {
                let kind = if c.transitive { "transitive" } else { "intransitive" };
                let _ = writeln!(s, "G/N embeds in Sym({})", c.m);
                let _ = writeln!(s, "n = {}, m = {} ({kind}, bound ok: {})", c.n, c.m, c.bound_ok);
                let _ = writeln!(s, "kernel order {}", c.kernel_order);
                let _ = writeln!(s, "images:");
                for (g, x) in c.input.generators.iter().zip(&c.images) {
                    let _ = writeln!(s, "  {g} -> {x}");
                }
                if trace {
                    s.push_str(&trace_text(&c.trace));
                }
            }
            Report::MinDegree(r) => {
                let _ = writeln!(s, "P(G) = {}", r.degree);
                let _ = writeln!(s, "order {}", r.order);
                let _ = writeln!(s, "stabilizer orders: {}", r.stabilizer_orders.join(", "));
                let _ = writeln!(s, "witness:");
                for (g, x) in r.generators.iter().zip(&r.witness_images) {
                    let _ = writeln!(s, "  {g} -> {x}");
                }
            }
            Report::Analyze(r) => {
                let _ = writeln!(s, "degree {}, order {}", r.degree, r.order);
                let _ = writeln!(s, "transitive: {}", r.transitive);
                let orbits: Vec<String> = r.orbits.iter().map(|o| format!("{o:?}")).collect();
                let _ = writeln!(s, "orbits: {}", orbits.join(" "));
                if let Some(p) = r.primitive {
                    let _ = writeln!(s, "primitive: {p}");
                }
                if let Some(b) = &r.blocks {
                    let _ = writeln!(s, "block system: {b:?}");
                }
                if let Some(n) = &r.normal {
                    let _ = writeln!(
                        s,
                        "N: order {}, normal {}, transitive {}, abelian {}",
                        n.order, n.normal, n.transitive, n.abelian
                    );
                    if let Some(m) = n.minimal_normal {
                        let _ = writeln!(s, "N minimal normal: {m}");
                    }
                    if let Some(c) = &n.centralizer_order {
                        let _ = writeln!(s, "|C_G(N)| = {c}");
                    }
                    if let Some(d) = &n.socle {
                        let _ = writeln!(
                            s,
                            "N = S^{} with |S| = {}, |T| = {}, |T/S| = {}",
                            d.k, d.factor_order, d.t_order, d.outer_order
                        );
                    }
                }
            }
            Report::Verify(r) => {
                let _ = writeln!(s, "certificate verified");
                let _ = writeln!(s, "n = {}, m = {}, bound {}", r.n, r.m, r.max_degree);
                let _ = writeln!(s, "kernel order {}, {} stage(s)", r.kernel_order, r.stages);
            }
        }
        s
    }
}

fn trace_text(trace: &[TraceStep]) -> String {
    let mut s = String::from("trace:\n");
    for t in trace {
        let _ = writeln!(
            s,
            "{}{}: {} -> {}",
            "  ".repeat(t.depth + 1),
            t.branch,
            t.degree_in,
            t.degree_out
        );
    }
    s
}

fn analyze(p: &ProblemInput) -> Result<AnalyzeReport> {
    let g = p.group()?;
    let transitive = g.is_transitive();
    let (primitive, blocks) = if transitive {
        (
            Some(is_primitive(&g)?),
            nontrivial_block_system(&g)?.map(|b| b.blocks()),
        )
    } else {
        (None, None)
    };
    let normal = match p.normal_subgroup()? {
        None => None,
        Some(n) => Some(normal_report(&g, &n)?),
    };
    Ok(AnalyzeReport {
        schema: SCHEMA,
        degree: g.degree(),
        order: g.order().to_string(),
        transitive,
        orbits: g.orbits(),
        primitive,
        blocks,
        normal,
    })
}

fn normal_report(g: &PermGroup, n: &PermGroup) -> Result<NormalReport> {
    let normal = n.is_normal_in(g);
    let abelian = n.is_abelian();
    let mut r = NormalReport {
        order: n.order().to_string(),
        normal,
        transitive: n.is_transitive(),
        abelian,
        minimal_normal: None,
        centralizer_order: None,
        socle: None,
    };
    if !normal {
        return Ok(r);
    }
    r.minimal_normal = Some(is_minimal_normal(g, n)?);
    r.centralizer_order = Some(centralizer(g, n)?.order().to_string());
    if !abelian && !n.is_trivial() {
        r.socle = match socle_decomposition(g, n) {
            Ok(dec) => Some(SocleReport {
                k: dec.k(),
                factor_order: dec.factors()[0].order().to_string(),
                t_order: dec.t_rep().order().to_string(),
                outer_order: dec.outer_order().to_string(),
                factor_permutation_images: format_all(dec.factor_action().gen_images()),
            }),
            Err(Error::NotSemisimple(_)) => None,
            Err(e) => return Err(e),
        };
    }
    Ok(r)
}

fn min_degree(p: &ProblemInput) -> Result<MinDegreeReport> {
    let g = p.group()?;
    let r = min_faithful_rep(&g)?;
    Ok(MinDegreeReport {
        schema: SCHEMA,
        order: g.order().to_string(),
        degree: r.degree,
        generators: format_all(g.generators()),
        witness_images: format_all(r.witness.gen_images()),
        stabilizer_orders: r.subgroup_family.iter().map(|h| h.order().to_string()).collect(),
    })
}

fn reduce(p: &ProblemInput, radical: bool) -> Result<Certificate> {
    let g = p.group()?;
    let n = p
        .normal_subgroup()?
        .ok_or_else(|| Error::Input("missing normal_generators".into()))?;
    let rep = if radical {
        embed_quotient_radical(&g, &n)?
    } else {
        embed_quotient(&g, &n)?
    };
    let mut cert = emit_certificate(&rep);
    cert.input = ProblemInput {
        mode: Some(if radical { Mode::ReduceRadical } else { Mode::Reduce }),
        ..p.clone()
    };
    Ok(cert)
}

enum Job {
    Problem(ProblemInput),
    Cert(Certificate),
}

fn run_job(mode: Mode, job: &Job) -> Result<Report> {
    match job {
        Job::Cert(c) => verify_certificate(c).map(Report::Verify),
        Job::Problem(p) => {
            let mode = p.mode.unwrap_or(mode);
            p.check_mode(mode)?;
            match mode {
                Mode::Reduce => reduce(p, false).map(Report::Cert),
                Mode::ReduceRadical => reduce(p, true).map(Report::Cert),
                Mode::MinDegree => min_degree(p).map(Report::MinDegree),
                Mode::Analyze => analyze(p).map(Report::Analyze),
                Mode::Verify => Err(Error::Input("verify takes a certificate".into())),
            }
        }
    }
}

fn read_input(path: Option<&Path>) -> Result<String> {
    match path {
        Some(p) if p != Path::new("-") => {
            std::fs::read_to_string(p).map_err(|e| Error::Input(format!("{}: {e}", p.display())))
        }
        _ => {
            let mut s = String::new();
            std::io::Read::read_to_string(&mut std::io::stdin(), &mut s).map_err(|e| Error::Input(e.to_string()))?;
            Ok(s)
        }
    }
}

fn parse_one(mode: Mode, format: Format, text: &str) -> Result<Job> {
    if mode == Mode::Verify {
        return Certificate::from_json(text).map(Job::Cert);
    }
    match format {
        Format::Json => ProblemInput::from_json(text).map(Job::Problem),
        Format::Txt => ProblemInput::from_text(text).map(Job::Problem),
    }
}

fn parse_batch(mode: Mode, format: Format, text: &str) -> Result<Vec<Result<Job>>> {
    match format {
        Format::Json => {
            let items: Vec<Value> = serde_json::from_str(text).map_err(|e| Error::Input(e.to_string()))?;
            Ok(items
                .into_iter()
                .map(|v| parse_one(mode, format, &v.to_string()))
                .collect())
        }
        Format::Txt => {
            let mut docs = vec![String::new()];
            for line in text.lines() {
                if line.trim() == "---" {
                    docs.push(String::new());
                } else {
                    let last = docs.last_mut().expect("nonempty");
                    last.push_str(line);
                    last.push('\n');
                }
            }
            Ok(docs
                .iter()
                .filter(|d| !d.trim().is_empty())
                .map(|d| parse_one(mode, format, d))
                .collect())
        }
    }
}

fn error_json(e: &Error) -> Value {
    json!({"schema": SCHEMA, "error": {"kind": e.kind(), "message": e.to_string()}})
}

fn error_text(e: &Error) -> String {
    format!("error: [{}] {e}\n", e.kind())
}

fn selftest(json_out: bool) -> Outcome {
    let checks = selftest::run();
    let ok = checks.iter().all(|c| c.passed);
    let stdout = if json_out {
        to_json_sorted(&json!({"schema": SCHEMA, "passed": ok, "checks": checks})) + "\n"
    } else {
        checks
            .iter()
            .map(|c| format!("{} {}: {}\n", if c.passed { "PASS" } else { "FAIL" }, c.name, c.detail))
            .collect()
    };
    Outcome {
        code: if ok { 0 } else { 2 },
        stdout,
        stderr: String::new(),
    }
}

/// Runs one invocation with the given arguments (the first is the program
/// name) and returns what it would print.
pub fn run<I, T>(args: I) -> Outcome
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(c) => c,
        Err(e) => {
            let shown = e.render().to_string();
            return if e.use_stderr() {
                Outcome {
                    code: 1,
                    stdout: String::new(),
                    stderr: shown,
                }
            } else {
                Outcome {
                    code: 0,
                    stdout: shown,
                    stderr: String::new(),
                }
            };
        }
    };
    let (mode, path) = match &cli.command {
        Command::Reduce { input } => (Mode::Reduce, input.clone()),
        Command::ReduceRadical { input } => (Mode::ReduceRadical, input.clone()),
        Command::MinDegree { input } => (Mode::MinDegree, input.clone()),
        Command::Analyze { input } => (Mode::Analyze, input.clone()),
        Command::Verify { certificate } => (Mode::Verify, certificate.clone()),
        Command::Selftest => return selftest(cli.json),
    };
    let fail = |e: Error| Outcome {
        code: exit_code(&e),
        stdout: if cli.json { to_json_sorted(&error_json(&e)) + "\n" } else { String::new() },
        stderr: if cli.json { String::new() } else { error_text(&e) },
    };

    if let Some(batch) = &cli.batch {
        let jobs = match read_input(Some(batch)).and_then(|t| parse_batch(mode, cli.format, &t)) {
            Ok(j) => j,
            Err(e) => return fail(e),
        };
        let results: Vec<Result<Report>> = jobs
            .par_iter()
            .map(|j| j.as_ref().map_err(Clone::clone).and_then(|j| run_job(mode, j)))
            .collect();
        let code = results
            .iter()
            .map(|r| r.as_ref().err().map_or(0, exit_code))
            .max()
            .unwrap_or(0);
        let (stdout, stderr) = if cli.json {
            let items: Vec<Value> = results
                .iter()
                .map(|r| match r {
                    Ok(rep) => rep.json(),
                    Err(e) => error_json(e),
                })
                .collect();
            (to_json_sorted(&items) + "\n", String::new())
        } else {
            let mut out = String::new();
            let mut err = String::new();
            for (i, r) in results.iter().enumerate() {
                let _ = writeln!(out, "== problem {}", i + 1);
                match r {
                    Ok(rep) => out.push_str(&rep.text(cli.trace)),
                    Err(e) => {
                        out.push_str(&error_text(e));
                        let _ = write!(err, "problem {}: {}", i + 1, error_text(e));
                    }
                }
            }
            (out, err)
        };
        return Outcome { code, stdout, stderr };
    }

    let report = read_input(path.as_deref())
        .and_then(|t| parse_one(mode, cli.format, &t))
        .and_then(|j| run_job(mode, &j));
    match report {
        Ok(r) => Outcome {
            code: 0,
            stdout: if cli.json { to_json_sorted(&r.json()) + "\n" } else { r.text(cli.trace) },
            stderr: String::new(),
        },
        Err(e) => fail(e),
    }
}
