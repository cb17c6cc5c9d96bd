//! Command-line front end. [`run`] parses arguments, dispatches, and returns
//! the process exit code: 0 on success, 1 on domain errors, 2 on usage errors.

use std::fs;
use std::io::{Read, Write};
use std::path::{Path, PathBuf};

use clap::{Parser, Subcommand, ValueEnum};
use serde::Serialize;
use serde_json::{json, Value};

use crate::dinkelbach::{default_start, solve, InnerSolver, RatioProblem, SolveOptions};
use crate::eigen::{rayleigh_consistency, spectrum_scan, verify_with, EigenproblemId, Form};
use crate::error::Error;
use crate::functionals::RatioKind;
use crate::graph::{
    complete, cycle, emit_graph, graph_params, graph_to_json, parse_graph, parse_measure, parse_vector, path,
    petersen, random_connected, star, star_triangle, Graph,
};
use crate::nodal::{analyze, Convention};
use crate::oracles::{k_way_dual_cheeger, mincut, minmax_k_cut, ratio_oracle, Caps};
use crate::rational::Rational;
use crate::spectrum::{inequality_suite, normalized_laplacian_spectrum, Suite};
use crate::suite::{read_corpus, run_suite};

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Json,
    Csv,
    Table,
}

#[derive(Debug, Parser)]
#[command(name = "cutspectra", version, about = "Exact graph cut constants and 1-Laplacian eigenpairs")]
struct Cli {
    /// Output format (default json; `gen` defaults to an edge list).
    #[arg(long, global = true, value_enum)]
    format: Option<Format>,
    /// Use this vertex cap for every enumeration.
    #[arg(long, global = true, value_parser = clap::value_parser!(u64).range(1..=63))]
    cap: Option<u64>,
    #[arg(long, global = true, default_value_t = 0)]
    seed: u64,
    /// Print nothing; report through the exit code only.
    #[arg(long, global = true)]
    quiet: bool,
    #[command(subcommand)]
    command: Command,
}

#[derive(Debug, clap::Args)]
struct GraphArgs {
    /// Graph file (edge list or JSON); read from stdin when absent.
    #[arg(long)]
    graph: Option<PathBuf>,
    /// Vertex measure overrides, `i mu_i` per line.
    #[arg(long)]
    measure: Option<PathBuf>,
}

#[derive(Debug, Subcommand)]
enum Command {
    /// Generate a graph: path, cycle, complete, star, petersen, star_triangle, random.
    Gen {
        family: String,
        /// Size parameter (k, or n for `random`).
        size: Option<usize>,
        /// Extra edge probability for `random`.
        #[arg(long, default_value_t = 0.3)]
        p: f64,
    },
    /// Exhaustive combinatorial oracle.
    Oracle {
        /// A ratio problem, or mincut, kway, minmax, minmax_partition, params.
        name: String,
        #[command(flatten)]
        graph: GraphArgs,
        #[arg(long)]
        k: Option<usize>,
    },
    /// Dinkelbach iteration for a ratio problem.
    Cut {
        #[arg(value_parser = parse_ratio)]
        problem: RatioKind,
        #[command(flatten)]
        graph: GraphArgs,
        #[arg(long, default_value = "exact", value_parser = parse_inner)]
        inner: InnerSolver,
        /// Starting vector file (`i value` lines).
        #[arg(long)]
        x0: Option<PathBuf>,
        #[arg(long, default_value_t = 16)]
        restarts: usize,
    },
    /// Verify an eigenpair exactly.
    Verify {
        #[arg(value_parser = parse_problem)]
        problem: EigenproblemId,
        #[command(flatten)]
        graph: GraphArgs,
        #[arg(long, value_parser = parse_rational)]
        lambda: Rational,
        #[arg(long)]
        vector: PathBuf,
        /// Check `one_lap` in the `μ Sgn(x)` form instead of the median form.
        #[arg(long)]
        raw: bool,
    },
    /// Nodal domain statistics of a vector.
    Nodal {
        #[command(flatten)]
        graph: GraphArgs,
        #[arg(long)]
        vector: PathBuf,
        #[arg(long, default_value = "sign_based", value_parser = parse_convention)]
        convention: Convention,
    },
    /// Normalized Laplacian spectrum.
    Spectrum {
        #[command(flatten)]
        graph: GraphArgs,
    },
    /// Inequalities between the spectrum and the cut constants.
    Check {
        #[command(flatten)]
        graph: GraphArgs,
        #[arg(long, default_value = "all", value_parser = parse_suite)]
        suite: Suite,
    },
    /// Eigenvalues with indicator-type eigenvectors.
    Scan {
        #[arg(value_parser = parse_problem)]
        problem: EigenproblemId,
        #[command(flatten)]
        graph: GraphArgs,
    },
    /// All criteria over every graph file of a directory.
    Suite {
        dir: PathBuf,
        #[arg(long, default_value_t = 1)]
        workers: usize,
    },
}

fn parse_ratio(s: &str) -> std::result::Result<RatioKind, String> {
    s.parse().map_err(|e: Error| e.to_string())
}

fn parse_problem(s: &str) -> std::result::Result<EigenproblemId, String> {
    s.parse().map_err(|e: Error| e.to_string())
}

fn parse_inner(s: &str) -> std::result::Result<InnerSolver, String> {
    s.parse().map_err(|e: Error| e.to_string())
}

fn parse_convention(s: &str) -> std::result::Result<Convention, String> {
    s.parse().map_err(|e: Error| e.to_string())
}

fn parse_suite(s: &str) -> std::result::Result<Suite, String> {
    s.parse().map_err(|e: Error| e.to_string())
}

fn parse_rational(s: &str) -> std::result::Result<Rational, String> {
    s.parse().map_err(|e| format!("{e}"))
}

/// A result value plus, for list-shaped results, its rows for csv/table.
struct Output {
    value: Value,
    rows: Option<Vec<Value>>,
}

impl Output {
    fn of<T: Serialize>(t: &T) -> Self {
        Output { value: to_value(t), rows: None }
    }

    fn with_rows<T: Serialize>(t: &T, rows: Vec<Value>) -> Self {
        Output { value: to_value(t), rows: Some(rows) }
    }
}

fn to_value<T: Serialize>(t: &T) -> Value {
    serde_json::to_value(t).expect("serializable")
}

enum Failure {
    Usage(String),
    Domain(String),
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        match e {
            Error::UnknownProblem(_) | Error::InvalidParameter(_) => Failure::Usage(e.to_string()),
            _ => Failure::Domain(e.to_string()),
        }
    }
}

fn read_file(p: &Path) -> std::result::Result<String, Failure> {
    fs::read_to_string(p).map_err(|e| Failure::Domain(format!("{}: {e}", p.display())))
}

fn load_graph(args: &GraphArgs, stdin: &mut dyn Read) -> std::result::Result<Graph, Failure> {
    let text = match &args.graph {
        Some(p) => read_file(p)?,
        None => {
            let mut s = String::new();
            stdin.read_to_string(&mut s).map_err(|e| Failure::Domain(format!("stdin: {e}")))?;
            s
        }
    };
    let g = parse_graph(&text)?;
    Ok(match &args.measure {
        Some(p) => parse_measure(&read_file(p)?, g)?,
        None => g,
    })
}

fn scalar(v: &Value) -> String {
    match v {
        Value::String(s) => s.clone(),
        Value::Null => String::new(),
        other => other.to_string(),
    }
}

/// Leaves of a JSON value as `path = scalar` pairs.
fn flatten(prefix: &str, v: &Value, out: &mut Vec<(String, String)>) {
    let join = |k: &str| if prefix.is_empty() { k.to_string() } else { format!("{prefix}.{k}") };
    match v {
        Value::Object(m) => {
            for (k, x) in m {
                flatten(&join(k), x, out);
            }
        }
        Value::Array(a) if a.iter().all(|x| !x.is_object() && !x.is_array()) => {
            out.push((prefix.to_string(), a.iter().map(scalar).collect::<Vec<_>>().join(" ")));
        }
        Value::Array(a) => {
            for (i, x) in a.iter().enumerate() {
                flatten(&join(&i.to_string()), x, out);
            }
        }
        other => out.push((prefix.to_string(), scalar(other))),
    }
}

fn csv_field(s: &str) -> String {
    if s.contains([',', '"', '\n']) {
        format!("\"{}\"", s.replace('"', "\"\""))
    } else {
        s.to_string()
    }
}

fn render(out: &Output, format: Format) -> String {
    if format == Format::Json {
        return serde_json::to_string_pretty(&out.value).expect("serializable") + "\n";
    }
    let (header, rows): (Vec<String>, Vec<Vec<String>>) = match &out.rows {
        Some(rows) => {
            let flat: Vec<Vec<(String, String)>> = rows
                .iter()
                .map(|r| {
                    let mut f = Vec::new();
                    flatten("", r, &mut f);
                    f
                })
                .collect();
            let mut header: Vec<String> = Vec::new();
            for f in &flat {
                for (k, _) in f {
                    if !header.contains(k) {
                        header.push(k.clone());
                    }
                }
            }
            let rows = flat
                .iter()
                .map(|f| {
                    header
                        .iter()
                        .map(|h| f.iter().find(|(k, _)| k == h).map(|(_, v)| v.clone()).unwrap_or_default())
                        .collect()
                })
                .collect();
            (header, rows)
        }
        None => {
            let mut f = Vec::new();
            flatten("", &out.value, &mut f);
            (vec!["key".into(), "value".into()], f.into_iter().map(|(k, v)| vec![k, v]).collect())
        }
    };
    let mut s = String::new();
    if format == Format::Csv {
        for line in std::iter::once(&header).chain(rows.iter()) {
            s += &line.iter().map(|c| csv_field(c)).collect::<Vec<_>>().join(",");
            s.push('\n');
        }
        return s;
    }
    let mut widths: Vec<usize> = header.iter().map(|h| h.chars().count()).collect();
    for r in &rows {
        for (w, c) in widths.iter_mut().zip(r) {
            *w = (*w).max(c.chars().count());
        }
    }
    for line in std::iter::once(&header).chain(rows.iter()) {
        let cells: Vec<String> = line.iter().zip(&widths).map(|(c, w)| format!("{c:<w$}")).collect();
        s += cells.join("  ").trim_end();
        s.push('\n');
    }
    s
}

fn generate(family: &str, size: Option<usize>, p: f64, seed: u64) -> std::result::Result<Graph, Failure> {
    let need = || size.ok_or_else(|| Failure::Usage(format!("`{family}` needs a size")));
    Ok(match family {
        "path" => path(need()?),
        "cycle" => cycle(need()?),
        "complete" => complete(need()?),
        "star" => star(need()?),
        "petersen" => petersen(),
        "star_triangle" => star_triangle(need()?),
        "random" => {
            if !(0.0..=1.0).contains(&p) {
                return Err(Failure::Usage("--p must lie in [0, 1]".into()));
            }
            random_connected(need()?, p, seed)
        }
        _ => return Err(Failure::Usage(format!("unknown family `{family}`"))),
    })
}

fn dispatch(cli: Cli, stdin: &mut dyn Read) -> std::result::Result<(Option<String>, bool), Failure> {
    let caps = cli.cap.map(|c| Caps::uniform(c as usize)).unwrap_or_default();
    let format = cli.format.unwrap_or(Format::Json);
    let mut ok = true;
    let out = match cli.command {
        Command::Gen { family, size, p } => {
            let g = generate(&family, size, p, cli.seed)?;
            return Ok(match cli.format {
                Some(f) => (Some(render(&Output { value: graph_to_json(&g), rows: None }, f)), true),
                None => (Some(emit_graph(&g)), true),
            });
        }
        Command::Oracle { name, graph, k } => {
            let g = load_graph(&graph, stdin)?;
            let need_k = || k.ok_or_else(|| Failure::Usage(format!("`{name}` needs --k")));
            match name.as_str() {
                "mincut" => Output::of(&mincut(&g, &caps)?),
                "kway" | "k_way_dual_cheeger" => Output::of(&k_way_dual_cheeger(&g, need_k()?, &caps)?),
                "minmax" => Output::of(&minmax_k_cut(&g, need_k()?, false, &caps)?),
                "minmax_partition" => Output::of(&minmax_k_cut(&g, need_k()?, true, &caps)?),
                "params" => Output::of(&graph_params(&g, caps.alpha, caps.matching)?),
                other => {
                    let kind: RatioKind = other.parse()?;
                    Output::of(&ratio_oracle(kind, &g, &caps)?)
                }
            }
        }
        Command::Cut { problem, graph, inner, x0, restarts } => {
            let g = load_graph(&graph, stdin)?;
            let x0 = match x0 {
                Some(p) => parse_vector(&read_file(&p)?, g.n())?,
                None => default_start(g.n()),
            };
            let opts = SolveOptions { inner, seed: cli.seed, restarts, ..Default::default() };
            let trace = solve(&RatioProblem::registered(problem), &g, &x0, &opts, &caps)?;
            let rows = trace
                .iterations
                .iter()
                .map(|it| json!({ "k": it.k, "r_k": it.r_k, "inner_value": it.inner_value }))
                .collect();
            let value = json!({
                "problem": problem,
                "value": trace.value(),
                "heuristic": trace.heuristic,
                "certificate": trace.final_cert,
                "trace": trace,
            });
            Output { value, rows: Some(rows) }
        }
        Command::Verify { problem, graph, lambda, vector, raw } => {
            let g = load_graph(&graph, stdin)?;
            let x = parse_vector(&read_file(&vector)?, g.n())?;
            let form = if raw { Form::Raw } else { Form::Median };
            let report = verify_with(problem, form, &g, &lambda, &x)?;
            let mut value = to_value(&report);
            value["rayleigh_consistent"] = json!(rayleigh_consistency(problem, &g, &lambda, &x));
            Output { value, rows: None }
        }
        Command::Nodal { graph, vector, convention } => {
            let g = load_graph(&graph, stdin)?;
            let x = parse_vector(&read_file(&vector)?, g.n())?;
            Output::of(&analyze(&g, &x, convention)?)
        }
        Command::Spectrum { graph } => {
            let g = load_graph(&graph, stdin)?;
            let s = normalized_laplacian_spectrum(&g)?;
            let rows =
                s.eigenvalues.iter().enumerate().map(|(k, l)| json!({ "k": k + 1, "lambda": l })).collect();
            let value = json!({ "eigenvalues": s.eigenvalues, "residual_bound": s.residual_bound });
            Output { value, rows: Some(rows) }
        }
        Command::Check { graph, suite } => {
            let g = load_graph(&graph, stdin)?;
            let reports = inequality_suite(&g, &caps, suite)?;
            ok = reports.iter().all(|r| r.holds);
            let rows = reports
                .iter()
                .map(
                    |r| json!({ "name": r.name, "lhs": r.lhs, "mid": r.mid, "rhs": r.rhs, "holds": r.holds }),
                )
                .collect();
            Output::with_rows(&reports, rows)
        }
        Command::Scan { problem, graph } => {
            let g = load_graph(&graph, stdin)?;
            let points = spectrum_scan(problem, &g, &caps)?;
            let rows =
                points.iter().map(|p| json!({ "lambda": p.lambda, "sets": p.certificate.sets })).collect();
            Output::with_rows(&points, rows)
        }
        Command::Suite { dir, workers } => {
            if workers == 0 {
                return Err(Failure::Usage("--workers must be at least 1".into()));
            }
            let corpus = read_corpus(&dir)?;
            let report = run_suite(&corpus, &caps, workers)?;
            ok = report.all_passed;
            let rows = report
                .graphs
                .iter()
                .flat_map(|go| {
                    go.checks.iter().map(move |c| {
                        json!({ "file": go.file, "criterion": c.criterion, "status": c.status, "detail": c.detail })
                    })
                })
                .collect();
            Output::with_rows(&report, rows)
        }
    };
    Ok((Some(render(&out, format)), ok))
}

/// Runs the command line `args` (including the program name).
pub fn run<I, T>(args: I, stdin: &mut dyn Read, stdout: &mut dyn Write, stderr: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<std::ffi::OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(c) => c,
        Err(e) => {
            let code = if e.use_stderr() { 2 } else { 0 };
            let text = e.render().to_string();
            let _ =
                if code == 0 { stdout.write_all(text.as_bytes()) } else { stderr.write_all(text.as_bytes()) };
            return code;
        }
    };
    let quiet = cli.quiet;
    match dispatch(cli, stdin) {
        Ok((text, ok)) => {
            if let (Some(t), false) = (text, quiet) {
                let _ = stdout.write_all(t.as_bytes());
            }
            if ok {
                0
            } else {
                1
            }
        }
        Err(Failure::Usage(msg)) => {
            let _ = writeln!(stderr, "error: {msg}");
            2
        }
        Err(Failure::Domain(msg)) => {
            let _ = writeln!(stderr, "error: {msg}");
            1
        }
    }
}
