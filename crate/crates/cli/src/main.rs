//! `asmtree`: count and enumerate assembly trees, expand their generating
//! functions, and analyse the resulting sequences.
//!
//! Every successful run prints JSON (or one tree code per line) on stdout.
//! Exit status 1 means the input was understood but the computation was
//! declined; 2 means the input was invalid. Messages go to stderr.

use std::fs;
use std::process::ExitCode;

use asmtree::enumerator::{
    count_connected_rule_with, count_edge_rule_with, enumerate_connected_rule,
    enumerate_edge_rule_with, trees_from_gluing_sequences, Limits,
};
use asmtree::graph::{family, Family, Graph, GraphSpec, HGraphJson, HSpec};
use asmtree::recurrence::{self, PRecurrence};
use asmtree::series::{hgraph_egf, separable_diagonal, Series1};
use asmtree::{rational, table, Rational};
use clap::{Args, Parser, Subcommand, ValueEnum};
use serde_json::{json, Value};

#[derive(Parser)]
#[command(name = "asmtree", version, about = "Assembly-tree counting and analysis")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Count assembly trees of a graph.
    Count {
        #[command(flatten)]
        graph: GraphInput,
        #[arg(long, value_enum, default_value_t = Rule::Edge)]
        rule: Rule,
    },
    /// List assembly trees as canonical codes.
    Enumerate {
        #[command(flatten)]
        graph: GraphInput,
        #[arg(long, value_enum, default_value_t = Rule::Edge)]
        rule: Rule,
        /// Print one canonical code per line instead of the count.
        #[arg(long)]
        emit_trees: bool,
        #[arg(long, value_enum, default_value_t = Source::Recursive)]
        source: Source,
    },
    /// Expand the generating function of an (H, phi) template.
    Series {
        /// H-graph JSON, inline or a file path.
        #[arg(long)]
        hgraph: String,
        /// Degree cap per variable, e.g. `4,4`.
        #[arg(long, value_delimiter = ',', required = true)]
        caps: Vec<usize>,
    },
    /// Diagonal coefficients of the generating function.
    Diagonal {
        #[arg(long)]
        hgraph: String,
        #[arg(long)]
        upto: usize,
        #[arg(long, value_enum, default_value_t = Method::Auto)]
        method: Method,
        /// Print tree counts (coefficients times (n!)^k) instead.
        #[arg(long)]
        counts: bool,
    },
    /// Table of counts for a graph family.
    Table {
        #[arg(long)]
        family: String,
        #[arg(long)]
        max: usize,
    },
    /// Check a recurrence against a sequence.
    VerifyRec {
        /// Recurrence JSON, a file path, or `builtin:a|b|c|catalan`.
        #[arg(long)]
        rec: String,
        /// JSON array of rationals, inline or a file path.
        #[arg(long)]
        seq: String,
    },
    /// Guess a recurrence for a sequence.
    GuessRec {
        #[arg(long)]
        seq: String,
        #[arg(long)]
        max_order: usize,
        #[arg(long)]
        max_degree: usize,
    },
    /// Growth rate and correction terms of a recursive sequence.
    Asymptotics {
        #[arg(long)]
        rec: String,
        /// Initial terms, JSON array inline or a file path.
        #[arg(long)]
        init: String,
        #[arg(long)]
        n_max: usize,
    },
}

#[derive(Args)]
struct GraphInput {
    /// Graph JSON, inline or a file path.
    #[arg(long)]
    graph: Option<String>,
    #[arg(long)]
    family: Option<String>,
    /// Single family parameter.
    #[arg(long)]
    n: Option<usize>,
    /// Family parameters, comma separated.
    #[arg(long, value_delimiter = ',')]
    params: Vec<usize>,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Rule {
    Edge,
    Connected,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Source {
    Recursive,
    Gluing,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Method {
    /// Separable formula when H is complete, full expansion otherwise.
    Auto,
    Dense,
    Separable,
}

struct Failure {
    code: u8,
    message: String,
}

impl From<asmtree::Error> for Failure {
    fn from(e: asmtree::Error) -> Self {
        Failure {
            code: if e.is_refusal() { 1 } else { 2 },
            message: e.to_string(),
        }
    }
}

fn bad_input(message: impl Into<String>) -> Failure {
    Failure {
        code: 2,
        message: message.into(),
    }
}

type Outcome<T> = Result<T, Failure>;

/// Inline JSON is anything starting with `{`, `[` or `"`; otherwise the
/// argument names a file.
fn read_input(arg: &str) -> Outcome<String> {
    let trimmed = arg.trim_start();
    if trimmed.starts_with(['{', '[', '"']) {
        return Ok(arg.to_string());
    }
    fs::read_to_string(arg).map_err(|e| bad_input(format!("cannot read `{arg}`: {e}")))
}

fn load_graph(input: &GraphInput) -> Outcome<Graph> {
    match (&input.graph, &input.family) {
        (Some(text), None) => {
            if input.n.is_some() || !input.params.is_empty() {
                return Err(bad_input("--n/--params only apply with --family"));
            }
            Ok(GraphSpec::parse(&read_input(text)?)?.build()?)
        }
        (None, Some(name)) => {
            let f: Family = name.parse()?;
            let params = match (input.n, input.params.is_empty()) {
                (Some(n), true) => vec![n],
                (None, false) => input.params.clone(),
                _ => return Err(bad_input("give exactly one of --n and --params")),
            };
            Ok(family(f, &params)?)
        }
        _ => Err(bad_input("give exactly one of --graph and --family")),
    }
}

fn load_template(arg: &str) -> Outcome<HSpec> {
    Ok(HGraphJson::parse(&read_input(arg)?)?.to_spec(None)?)
}

fn load_sequence(arg: &str) -> Outcome<Vec<Rational>> {
    Ok(recurrence::sequence_from_json(&read_input(arg)?)?)
}

fn load_recurrence(arg: &str) -> Outcome<PRecurrence> {
    if let Some(name) = arg.strip_prefix("builtin:") {
        return recurrence::builtin(name)
            .ok_or_else(|| bad_input(format!("unknown builtin recurrence `{name}`")));
    }
    Ok(PRecurrence::from_json(&read_input(arg)?)?)
}

fn is_complete(spec: &HSpec) -> bool {
    let n = spec.template_size();
    spec.template_edges() == n * (n - 1) / 2
}

fn diagonal(spec: &HSpec, upto: usize, method: Method) -> Outcome<Series1> {
    let separable = match method {
        Method::Auto => is_complete(spec),
        Method::Dense => false,
        Method::Separable => true,
    };
    if separable {
        return Ok(separable_diagonal(spec, upto)?);
    }
    let caps = vec![upto; spec.template_size()];
    Ok(hgraph_egf(spec, &caps)?.diagonal()?)
}

fn count_json(count: impl ToString) -> String {
    line(&json!({ "count": count.to_string() }))
}

/// Compact JSON, keeping struct field order.
fn line<T: serde::Serialize>(value: &T) -> String {
    serde_json::to_string(value).expect("serializable output")
}

fn run(command: Command) -> Outcome<String> {
    let out = match command {
        Command::Count { graph, rule } => {
            let g = load_graph(&graph)?;
            let limits = Limits::from_env()?;
            let count = match rule {
                Rule::Edge => count_edge_rule_with(&g, &limits)?,
                Rule::Connected => count_connected_rule_with(&g, &limits)?,
            };
            count_json(count)
        }
        Command::Enumerate {
            graph,
            rule,
            emit_trees,
            source,
        } => {
            let g = load_graph(&graph)?;
            let trees = match (rule, source) {
                (Rule::Edge, Source::Recursive) => enumerate_edge_rule_with(&g, &Limits::from_env()?)?,
                (Rule::Edge, Source::Gluing) => trees_from_gluing_sequences(&g)?.trees,
                (Rule::Connected, Source::Recursive) => enumerate_connected_rule(&g)?,
                (Rule::Connected, Source::Gluing) => {
                    return Err(bad_input("gluing sequences only produce edge-rule trees"))
                }
            };
            if emit_trees {
                return Ok(trees.iter().map(|c| format!("{c}\n")).collect());
            }
            count_json(trees.len())
        }
        Command::Series { hgraph, caps } => {
            let spec = load_template(&hgraph)?;
            line(&hgraph_egf(&spec, &caps)?.to_terms())
        }
        Command::Diagonal {
            hgraph,
            upto,
            method,
            counts,
        } => {
            let spec = load_template(&hgraph)?;
            let diag = diagonal(&spec, upto, method)?;
            if counts {
                let k = spec.template_size() as u32;
                let weighted: Vec<Value> = diag
                    .coeffs()
                    .iter()
                    .enumerate()
                    .map(|(n, c)| {
                        let w = Rational::from_integer(rational::factorial(n).pow(k).into());
                        let v = c * w;
                        rational::to_natural(&v)
                            .map(|x| Value::String(x.to_string()))
                            .ok_or_else(|| asmtree::Error::NonIntegral(rational::format(&v)))
                    })
                    .collect::<Result<_, _>>()?;
                line(&weighted)
            } else {
                line(&recurrence::sequence_to_json(diag.coeffs()))
            }
        }
        Command::Table { family, max } => {
            if family != "bipartite" {
                return Err(bad_input(format!(
                    "unknown table family `{family}` (supported: bipartite)"
                )));
            }
            line(&table::bipartite_table(max)?)
        }
        Command::VerifyRec { rec, seq } => {
            let rec = load_recurrence(&rec)?;
            let seq = load_sequence(&seq)?;
            line(&rec.verify(&seq))
        }
        Command::GuessRec {
            seq,
            max_order,
            max_degree,
        } => {
            let seq = load_sequence(&seq)?;
            match recurrence::guess(&seq, max_order, max_degree)? {
                Some(rec) => rec.to_json(),
                None => line(&"none"),
            }
        }
        Command::Asymptotics { rec, init, n_max } => {
            let rec = load_recurrence(&rec)?;
            let init = load_sequence(&init)?;
            let report = asmtree::asymptotics::analyze(&rec, &init, n_max)?;
            line(&report)
        }
    };
    Ok(format!("{out}\n"))
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(cli.command) {
        Ok(out) => {
            print!("{out}");
            ExitCode::SUCCESS
        }
        Err(f) => {
            eprintln!("error: {}", f.message);
            ExitCode::from(f.code)
        }
    }
}
