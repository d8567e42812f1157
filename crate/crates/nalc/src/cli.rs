//! The `nalc` command line.
//!
//! Exit status: 0 when the answer is yes (entailed, satisfiable, subsumed),
//! 1 when it is no, 2 on usage or parse errors, 3 when the search runs out of
//! budget.

use std::ffi::OsString;
use std::fmt::Write as _;
use std::path::{Path, PathBuf};

use clap::{Args, Parser, Subcommand};
use serde::{Deserialize, Serialize};

use nalc_core::oracle::{oracle_entails, DegreeGrid};
use nalc_core::reasoner::{Entailment, Prepared, Reasoner, ReasonerError};
use nalc_core::tableau::{render_entries, TableauConfig};
use nalc_core::{Degree, DegreePair, KnowledgeBase, NeutrosophicAssertion};

use crate::parser::{
    format_assertion, format_assertion_expr, format_concept, format_kb, parse_assertion,
    parse_assertion_expr, parse_concept, parse_degree_literal, parse_kb,
};

pub const EXIT_TRUE: i32 = 0;
pub const EXIT_FALSE: i32 = 1;
pub const EXIT_USAGE: i32 = 2;
pub const EXIT_EXHAUSTED: i32 = 3;

/// Environment variable capping the number of tableau branches.
pub const MAX_BRANCHES_VAR: &str = "NALC_MAX_BRANCHES";

#[derive(Parser, Debug)]
#[command(name = "nalc", version, about = "Reasoner for neutrosophic ALC knowledge bases")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Decide whether a knowledge base has a model
    Check {
        kb: PathBuf,
        #[arg(long)]
        json: bool,
    },
    /// Decide whether a knowledge base entails an assertion
    Entails(EntailsArgs),
    /// Decide whether one concept is subsumed by another under a terminology
    Subsumes {
        kb: PathBuf,
        #[arg(long = "sub", value_name = "CONCEPT")]
        sub: String,
        #[arg(long = "super", value_name = "CONCEPT")]
        sup: String,
        /// Comma-separated degrees to draw bound pairs from
        #[arg(long)]
        grid: Option<String>,
        #[arg(long)]
        json: bool,
    },
    /// Greatest lower bound of an assertion's degrees
    Glb(BoundArgs),
    /// Least upper bound of an assertion's degrees
    Lub(BoundArgs),
    /// Print the negation normal form of a concept
    Nnf { concept: String },
    /// Print the purely assertional expansion of a knowledge base
    Expand { kb: PathBuf },
}

#[derive(Args, Debug)]
struct EntailsArgs {
    kb: PathBuf,
    /// Assertion line, e.g. 'assert (some R A)(a) >= 0.6 <= 0.5'
    #[arg(long, required_unless_present = "queries", conflicts_with = "queries")]
    query: Option<String>,
    /// File with one assertion per line, answered independently
    #[arg(long)]
    queries: Option<PathBuf>,
    /// Print the derivation of every closed branch
    #[arg(long)]
    trace: bool,
    /// Cross-check the answer by finite model search
    #[arg(long)]
    oracle: bool,
    /// Domain size for the model search
    #[arg(long, requires = "oracle")]
    domain: Option<usize>,
    /// Comma-separated degrees for the model search tables
    #[arg(long, requires = "oracle")]
    grid: Option<String>,
    #[arg(long)]
    json: bool,
}

#[derive(Args, Debug)]
struct BoundArgs {
    kb: PathBuf,
    /// Assertion without bounds, e.g. 'R(a, b)' or '(not C)(a)'
    #[arg(long)]
    assertion: String,
    #[arg(long)]
    json: bool,
}

/// Machine-readable answer; degrees are exact fractions.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct JsonAnswer {
    pub query: String,
    pub answer: Option<bool>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub bound: Option<JsonBound>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub trace: Option<String>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub oracle_agreement: Option<bool>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub error: Option<String>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct JsonBound {
    pub n: String,
    pub m: String,
}

impl From<DegreePair> for JsonBound {
    fn from(p: DegreePair) -> Self {
        JsonBound { n: p.n.to_fraction_string(), m: p.m.to_fraction_string() }
    }
}

impl JsonAnswer {
    fn new(query: String, answer: bool) -> Self {
        JsonAnswer {
            query,
            answer: Some(answer),
            bound: None,
            trace: None,
            oracle_agreement: None,
            error: None,
        }
    }
}

/// What a run printed and how it exited.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct Outcome {
    pub code: i32,
    pub stdout: String,
    pub stderr: String,
}

impl Outcome {
    fn failure(code: i32, message: impl Into<String>) -> Self {
        let mut stderr = message.into();
        if !stderr.ends_with('\n') {
            stderr.push('\n');
        }
        Outcome { code, stdout: String::new(), stderr }
    }
}

type Run = Result<Outcome, Outcome>;

/// Runs the command line `argv`, whose first item is the program name.
pub fn run<I, T>(argv: I) -> Outcome
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(argv) {
        Ok(cli) => cli,
        Err(e) => {
            let code = if e.use_stderr() { EXIT_USAGE } else { EXIT_TRUE };
            let text = e.render().to_string();
            return if e.use_stderr() {
                Outcome::failure(code, text)
            } else {
                Outcome { code, stdout: text, stderr: String::new() }
            };
        }
    };
    dispatch(cli).unwrap_or_else(|failure| failure)
}

fn dispatch(cli: Cli) -> Run {
    match cli.command {
        Command::Check { kb, json } => check(&kb, json),
        Command::Entails(args) => entails(&args),
        Command::Subsumes { kb, sub, sup, grid, json } => subsumes(&kb, &sub, &sup, grid.as_deref(), json),
        Command::Glb(args) => bound(&args, false),
        Command::Lub(args) => bound(&args, true),
        Command::Nnf { concept } => {
            let c = parse_concept(&concept).map_err(|e| Outcome::failure(EXIT_USAGE, e.render(&concept)))?;
            Ok(Outcome { stdout: format!("{}\n", format_concept(&c.nnf())), ..Default::default() })
        }
        Command::Expand { kb } => {
            let kb = load_kb(&kb)?;
            let expanded = kb.expand().map_err(|vs| invalid(&vs))?;
            Ok(Outcome { stdout: format_kb(&expanded), ..Default::default() })
        }
    }
}

fn invalid(vs: &[nalc_core::Violation]) -> Outcome {
    let mut msg = String::new();
    for v in vs {
        let _ = writeln!(msg, "error: {v}");
    }
    Outcome::failure(EXIT_USAGE, msg)
}

fn read(path: &Path) -> Result<String, Outcome> {
    std::fs::read_to_string(path)
        .map_err(|e| Outcome::failure(EXIT_USAGE, format!("error: cannot read {}: {e}", path.display())))
}

fn load_kb(path: &Path) -> Result<KnowledgeBase, Outcome> {
    let text = read(path)?;
    parse_kb(&text).map_err(|errors| {
        let mut msg = String::new();
        for e in errors {
            let _ = write!(msg, "{}:{}", path.display(), e.render(&text));
        }
        Outcome::failure(EXIT_USAGE, msg)
    })
}

fn config(record_proofs: bool) -> Result<TableauConfig, Outcome> {
    let mut config = TableauConfig { record_proofs, ..Default::default() };
    if let Ok(v) = std::env::var(MAX_BRANCHES_VAR) {
        config.max_branches = v.trim().parse().map_err(|_| {
            Outcome::failure(
                EXIT_USAGE,
                format!("error: {MAX_BRANCHES_VAR} must be a positive integer, got `{v}`"),
            )
        })?;
    }
    Ok(config)
}

fn reasoner_failure(e: ReasonerError) -> Outcome {
    match e {
        ReasonerError::Exhausted(_) => Outcome::failure(EXIT_EXHAUSTED, format!("error: {e}")),
        _ => Outcome::failure(EXIT_USAGE, format!("error: {e}")),
    }
}

fn parse_grid(text: &str) -> Result<Vec<Degree>, Outcome> {
    text.split(',')
        .map(|d| {
            parse_degree_literal(d)
                .map_err(|e| Outcome::failure(EXIT_USAGE, format!("error: in --grid: {}", e.message)))
        })
        .collect()
}

fn emit_json<T: Serialize>(value: &T) -> String {
    let mut s = serde_json::to_string_pretty(value).expect("answers serialize");
    s.push('\n');
    s
}

fn exit_code(answer: bool) -> i32 {
    if answer {
        EXIT_TRUE
    } else {
        EXIT_FALSE
    }
}

fn check(path: &Path, json: bool) -> Run {
    let kb = load_kb(path)?;
    let r = Reasoner::new(config(false)?).satisfiable(&kb).map_err(reasoner_failure)?;
    let sat = r.is_satisfiable();
    let stdout = if json {
        emit_json(&JsonAnswer::new(String::from("satisfiable"), sat))
    } else {
        format!("{}\n", if sat { "satisfiable" } else { "unsatisfiable" })
    };
    Ok(Outcome { code: exit_code(sat), stdout, stderr: String::new() })
}

/// The derivation behind an entailment answer: every closed branch of each
/// refutation, or the open branch that blocks one.
pub fn render_trace(e: &Entailment) -> String {
    let mut out = String::new();
    for r in &e.refutations {
        let _ = writeln!(out, "refuting {}", r.negated);
        if let Some(open) = &r.result.completion {
            out.push_str("open branch, not refuted:\n");
            out.push_str(&open.render_trace());
            continue;
        }
        let n = r.result.proofs.len();
        for (i, branch) in r.result.proofs.iter().enumerate() {
            if n > 1 {
                let _ = writeln!(out, "branch {} of {n}:", i + 1);
            }
            out.push_str(&render_entries(&branch.entries));
            let _ = writeln!(out, "{}", branch.clash);
        }
    }
    out
}

struct QueryOptions<'a> {
    trace: bool,
    oracle: bool,
    domain: Option<usize>,
    grid: Option<&'a DegreeGrid>,
}

fn answer_query(
    reasoner: &Reasoner,
    kb: &KnowledgeBase,
    prepared: &Prepared,
    phi: &NeutrosophicAssertion,
    opts: &QueryOptions<'_>,
) -> Result<(JsonAnswer, Option<String>), ReasonerError> {
    let e = reasoner.explain_constraint(prepared, &phi.to_constraint())?;
    let mut answer = JsonAnswer::new(format_assertion(phi), e.holds);
    let mut note = None;
    if opts.trace {
        answer.trace = Some(render_trace(&e));
    }
    if opts.oracle {
        match oracle_entails(kb, phi, opts.domain, opts.grid) {
            Ok(o) => {
                answer.oracle_agreement = Some(o == e.holds);
                note = Some(if o == e.holds {
                    String::from("oracle: agrees")
                } else {
                    format!("oracle: disagrees, model search answers {o}")
                });
            }
            Err(err) => note = Some(format!("oracle: inconclusive, {err}")),
        }
    }
    Ok((answer, note))
}

fn human(answer: &JsonAnswer, note: Option<&str>) -> String {
    let mut out = String::new();
    if let Some(t) = &answer.trace {
        out.push_str(t);
    }
    let _ = writeln!(out, "{}", answer.answer.unwrap_or(false));
    if let Some(n) = note {
        let _ = writeln!(out, "{n}");
    }
    out
}

fn entails(args: &EntailsArgs) -> Run {
    let kb = load_kb(&args.kb)?;
    let reasoner = Reasoner::new(config(args.trace)?);
    let prepared = Prepared::new(&kb).map_err(reasoner_failure)?;
    let grid = args.grid.as_deref().map(parse_grid).transpose()?.map(DegreeGrid::new);
    let opts =
        QueryOptions { trace: args.trace, oracle: args.oracle, domain: args.domain, grid: grid.as_ref() };

    if let Some(q) = &args.query {
        let phi = parse_assertion(q).map_err(|e| Outcome::failure(EXIT_USAGE, e.render(q)))?;
        let (answer, note) =
            answer_query(&reasoner, &kb, &prepared, &phi, &opts).map_err(reasoner_failure)?;
        let code = exit_code(answer.answer == Some(true));
        let stdout = if args.json { emit_json(&answer) } else { human(&answer, note.as_deref()) };
        return Ok(Outcome { code, stdout, stderr: String::new() });
    }

    let path = args.queries.as_ref().expect("clap requires --query or --queries");
    let text = read(path)?;
    let mut answers = Vec::new();
    let mut out = String::new();
    let mut code = EXIT_TRUE;
    for (i, line) in text.lines().enumerate() {
        let query = line.split('#').next().unwrap_or("").trim();
        if query.is_empty() {
            continue;
        }
        let (answer, status) = match parse_assertion(query) {
            Err(e) => (
                JsonAnswer {
                    answer: None,
                    error: Some(e.to_string()),
                    ..JsonAnswer::new(query.into(), false)
                },
                EXIT_USAGE,
            ),
            Ok(phi) => match answer_query(&reasoner, &kb, &prepared, &phi, &opts) {
                Ok((a, note)) => {
                    let status = exit_code(a.answer == Some(true));
                    if !args.json {
                        let _ = write!(out, "line {}: {}", i + 1, human(&a, note.as_deref()));
                    }
                    answers.push(a);
                    code = code.max(status);
                    continue;
                }
                Err(e) => {
                    let status =
                        if matches!(e, ReasonerError::Exhausted(_)) { EXIT_EXHAUSTED } else { EXIT_USAGE };
                    (
                        JsonAnswer {
                            answer: None,
                            error: Some(e.to_string()),
                            ..JsonAnswer::new(query.into(), false)
                        },
                        status,
                    )
                }
            },
        };
        if !args.json {
            let _ = writeln!(out, "line {}: error: {}", i + 1, answer.error.as_deref().unwrap_or(""));
        }
        answers.push(answer);
        code = code.max(status);
    }
    let stdout = if args.json { emit_json(&answers) } else { out };
    Ok(Outcome { code, stdout, stderr: String::new() })
}

fn subsumes(path: &Path, sub: &str, sup: &str, grid: Option<&str>, json: bool) -> Run {
    let kb = load_kb(path)?;
    let c = parse_concept(sub).map_err(|e| Outcome::failure(EXIT_USAGE, e.render(sub)))?;
    let d = parse_concept(sup).map_err(|e| Outcome::failure(EXIT_USAGE, e.render(sup)))?;
    let reasoner = Reasoner::new(config(false)?);
    let holds = match grid {
        Some(g) => reasoner.subsumes_on(&kb.terminology, &c, &d, &parse_grid(g)?),
        None => reasoner.subsumes(&kb.terminology, &c, &d),
    }
    .map_err(reasoner_failure)?;
    let query = format!("{} ⊑ {}", format_concept(&c), format_concept(&d));
    let stdout = if json { emit_json(&JsonAnswer::new(query, holds)) } else { format!("{holds}\n") };
    Ok(Outcome { code: exit_code(holds), stdout, stderr: String::new() })
}

fn bound(args: &BoundArgs, upper: bool) -> Run {
    let kb = load_kb(&args.kb)?;
    let alpha = parse_assertion_expr(&args.assertion)
        .map_err(|e| Outcome::failure(EXIT_USAGE, e.render(&args.assertion)))?;
    let reasoner = Reasoner::new(config(false)?);
    let prepared = Prepared::new(&kb).map_err(reasoner_failure)?;
    let alpha = prepared.unfold(&alpha);
    let result = if upper { reasoner.lub(&prepared, &alpha) } else { reasoner.glb(&prepared, &alpha) }
        .map_err(reasoner_failure)?;
    let b = result.bound;
    let name = if upper { "lub" } else { "glb" };
    let query = format!("{name} {}", format_assertion_expr(&alpha));
    let stdout = if args.json {
        emit_json(&JsonAnswer { bound: Some(b.into()), ..JsonAnswer::new(query, true) })
    } else {
        format!("{} {} ({} {})\n", b.n.to_fraction_string(), b.m.to_fraction_string(), b.n, b.m)
    };
    Ok(Outcome { code: EXIT_TRUE, stdout, stderr: String::new() })
}
