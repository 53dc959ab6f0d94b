mod input;

use std::fs;
use std::io::Write;
use std::process::ExitCode;

use anyhow::{Context, Result};
use bchromatic::bhom::{self, BHomMap};
use bchromatic::chordal_descent::{check_final_corollary, descend_chordal_product, descend_complete_left};
use bchromatic::coloring::{b_vertices, is_b_coloring, is_proper};
use bchromatic::error::DescentError;
use bchromatic::exact::{
    b_chromatic_number, b_spectrum, check_relations, chromatic_number, exists_b_coloring, Budget, Optimum, Solve,
    SpectrumCache, SpectrumOptions, Verdict,
};
use bchromatic::graph::{write_dimacs, Graph};
use bchromatic::lexprod::lex_product;
use bchromatic::p4sparse::{descend_p4sparse, primeval_decompose};
use bchromatic::reproduce::{reproduce_all, run_claim, ClaimRow, ClaimStatus, ReproduceOptions, CLAIM_IDS};
use clap::{Parser, Subcommand, ValueEnum};
use serde::Serialize;
use serde_json::{json, Value};

use input::{family_graph, load_coloring, load_graph, load_map, load_precoloring};

const EXIT_UNKNOWN: u8 = 2;
const EXIT_ERROR: u8 = 1;
const EXIT_USAGE: u8 = 64;

#[derive(Parser)]
#[command(
    name = "bchromatic",
    version,
    about = "b-colorings of graphs and their lexicographic products"
)]
struct Cli {
    /// Seed for randomized runs.
    #[arg(long, global = true, default_value_t = 0)]
    seed: u64,
    /// Worker threads for independent per-k searches.
    #[arg(long, global = true, default_value_t = 1)]
    jobs: usize,
    /// Node budget per search.
    #[arg(long, global = true, default_value_t = Budget::default().nodes)]
    budget: u64,
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Print a named graph in DIMACS.
    Gen { family: String, params: Vec<u64> },
    /// Print G[H] in DIMACS.
    Product {
        g: String,
        h: String,
        /// Write the `w u v` pair legend here.
        #[arg(long)]
        legend: Option<String>,
    },
    /// Chromatic number.
    Chi { graph: String },
    /// b-chromatic number.
    Chib { graph: String },
    /// b-spectrum.
    Spectrum { graph: String },
    /// Search for a b-coloring with exactly K colors.
    Bfind {
        graph: String,
        #[arg(short)]
        k: usize,
        /// Index-aligned colors, 0 for free vertices.
        #[arg(long)]
        pre: Option<String>,
    },
    /// Check a coloring.
    Verify {
        graph: String,
        #[arg(long)]
        coloring: String,
    },
    /// b-homomorphism maps.
    Hom {
        #[command(subcommand)]
        op: HomOp,
    },
    /// Primeval decomposition of a P4-sparse graph.
    Decompose { graph: String },
    /// One descent step on G[K_l] for P4-sparse G.
    DescendP4 {
        graph: String,
        #[arg(short)]
        l: usize,
        #[arg(long)]
        coloring: String,
        /// Color to eliminate.
        #[arg(short, default_value_t = 1)]
        e: u32,
    },
    /// One descent step on G[H] for chordal G.
    DescendChordal {
        g: String,
        h: String,
        #[arg(long)]
        coloring: String,
    },
    /// One descent step on K_l[H].
    DescendKl {
        l: usize,
        h: String,
        #[arg(long)]
        coloring: String,
    },
    /// Check the product inequalities and spectrum inclusions.
    Relations { g: String, h: String },
    /// Check the chordal-product spectrum bound.
    Corollary { g: String, h: String },
    /// Run the claim table.
    Reproduce {
        /// Run only this row.
        #[arg(long)]
        claim: Option<String>,
        #[arg(long, value_enum, default_value_t = Format::Json)]
        format: Format,
    },
}

#[derive(Subcommand)]
enum HomOp {
    /// Check that MAP is a b-homomorphism from SOURCE to TARGET.
    Verify {
        source: String,
        target: String,
        #[arg(long)]
        map: String,
    },
    /// Lift f: SOURCE -> TARGET to G[SOURCE] -> G[TARGET].
    LiftLeft {
        g: String,
        source: String,
        target: String,
        #[arg(long)]
        map: String,
    },
    /// Lift f: SOURCE -> TARGET to SOURCE[G] -> TARGET[G].
    LiftRight {
        source: String,
        target: String,
        g: String,
        #[arg(long)]
        map: String,
    },
    /// Compose f: A -> B with g: B -> C.
    Compose {
        a: String,
        b: String,
        c: String,
        #[arg(long)]
        map: String,
        #[arg(long)]
        map2: String,
    },
}

#[derive(Clone, Copy, ValueEnum)]
enum Format {
    Json,
    Table,
}

enum Output {
    Report {
        command: &'static str,
        body: Value,
        code: u8,
    },
    Text {
        text: String,
        code: u8,
    },
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => {
            let _ = e.print();
            return if e.use_stderr() {
                ExitCode::from(EXIT_USAGE)
            } else {
                ExitCode::SUCCESS
            };
        }
    };
    match run(&cli) {
        Ok(Output::Text { text, code }) => emit(&text, code),
        Ok(Output::Report { command, body, code }) => {
            let text = serde_json::to_string_pretty(&wrap(command, body)).expect("json") + "\n";
            emit(&text, code)
        }
        Err(e) => {
            eprintln!("error: {e:#}");
            ExitCode::from(EXIT_ERROR)
        }
    }
}

/// A closed pipe downstream is not an error of ours.
fn emit(text: &str, code: u8) -> ExitCode {
    let mut out = std::io::stdout().lock();
    let _ = out.write_all(text.as_bytes()).and_then(|_| out.flush());
    ExitCode::from(code)
}

fn report(command: &'static str, body: impl Serialize, unknown: bool) -> Result<Output> {
    Ok(Output::Report {
        command,
        body: serde_json::to_value(body)?,
        code: if unknown { EXIT_UNKNOWN } else { 0 },
    })
}

fn graph_id(g: &Graph) -> String {
    format!("{:016x}", g.fingerprint())
}

#[derive(Serialize)]
struct OptimumReport {
    graph_id: String,
    n: usize,
    value: Option<usize>,
    witness: Option<Vec<u32>>,
    /// Best value proven achievable when the optimum is undecided.
    achieved: Option<usize>,
    undecided: Vec<usize>,
}

fn optimum_report(g: &Graph, opt: Optimum) -> (OptimumReport, bool) {
    let base = |value, witness, achieved, undecided| OptimumReport {
        graph_id: graph_id(g),
        n: g.n(),
        value,
        witness,
        achieved,
        undecided,
    };
    match opt {
        Optimum::Exact { value, witness } => (base(Some(value), Some(witness.colors().to_vec()), None, vec![]), false),
        Optimum::Unknown { achieved, undecided } => {
            let (a, w) = achieved.map(|(a, w)| (a, w.colors().to_vec())).unzip();
            (base(None, w, a, undecided), true)
        }
    }
}

/// A descent that ran out of budget reports UNKNOWN instead of failing.
fn descent_report(command: &'static str, r: Result<impl Serialize, DescentError>) -> Result<Output> {
    match r {
        Ok(body) => report(command, body, false),
        Err(DescentError::Unknown(msg)) => report(command, json!({ "unknown": msg }), true),
        Err(e) => Err(e.into()),
    }
}

#[derive(Serialize)]
struct VerifyReport {
    proper: bool,
    conflict: Option<(usize, usize)>,
    k: u32,
    b_coloring: bool,
    /// First color without a b-vertex.
    missing: Option<u32>,
    b_vertices: std::collections::BTreeMap<u32, Vec<usize>>,
}

fn run(cli: &Cli) -> Result<Output> {
    let budget = Budget::nodes(cli.budget);
    let opts = SpectrumOptions {
        budget,
        jobs: cli.jobs.max(1),
    };
    match &cli.command {
        Command::Gen { family, params } => Ok(dimacs(&family_graph(family, params)?)),
        Command::Product { g, h, legend } => {
            let p = lex_product(&load_graph(g)?, &load_graph(h)?)?;
            if let Some(path) = legend {
                fs::write(path, p.legend()).with_context(|| format!("writing {path}"))?;
            }
            Ok(dimacs(&p.graph))
        }
        Command::Chi { graph } => {
            let g = load_graph(graph)?;
            let (body, unknown) = optimum_report(&g, chromatic_number(&g, budget));
            report("chi", body, unknown)
        }
        Command::Chib { graph } => {
            let g = load_graph(graph)?;
            let (body, unknown) = optimum_report(&g, b_chromatic_number(&g, budget)?);
            report("chib", body, unknown)
        }
        Command::Spectrum { graph } => {
            let rep = b_spectrum(&load_graph(graph)?, opts)?;
            let unknown = !rep.unknown.is_empty();
            report("spectrum", rep, unknown)
        }
        Command::Bfind { graph, k, pre } => {
            let g = load_graph(graph)?;
            let pre = pre.as_deref().map(load_precoloring).transpose()?;
            let solve = exists_b_coloring(&g, *k, pre.as_ref(), budget)?;
            let (result, coloring) = match &solve {
                Solve::Found(c) => ("found", Some(c.colors().to_vec())),
                Solve::None => ("none", None),
                Solve::Unknown => ("unknown", None),
            };
            let body = json!({ "graph_id": graph_id(&g), "k": k, "result": result, "coloring": coloring });
            report("bfind", body, solve.is_unknown())
        }
        Command::Verify { graph, coloring } => {
            let g = load_graph(graph)?;
            let c = load_coloring(coloring)?;
            let conflict = is_proper(&g, &c)?;
            let body = match conflict {
                Some(_) => VerifyReport {
                    proper: false,
                    conflict,
                    k: c.k(),
                    b_coloring: false,
                    missing: None,
                    b_vertices: Default::default(),
                },
                None => {
                    let missing = is_b_coloring(&g, &c)?;
                    VerifyReport {
                        proper: true,
                        conflict,
                        k: c.k(),
                        b_coloring: missing.is_none(),
                        missing,
                        b_vertices: b_vertices(&g, &c)?,
                    }
                }
            };
            report("verify", body, false)
        }
        Command::Hom { op } => run_hom(op),
        Command::Decompose { graph } => report("decompose", primeval_decompose(&load_graph(graph)?)?, false),
        Command::DescendP4 { graph, l, coloring, e } => {
            let r = descend_p4sparse(&load_graph(graph)?, *l, &load_coloring(coloring)?, *e);
            descent_report("descend-p4", r)
        }
        Command::DescendChordal { g, h, coloring } => {
            let r = descend_chordal_product(&load_graph(g)?, &load_graph(h)?, &load_coloring(coloring)?);
            descent_report("descend-chordal", r)
        }
        Command::DescendKl { l, h, coloring } => {
            let r = descend_complete_left(*l, &load_graph(h)?, &load_coloring(coloring)?, budget);
            descent_report("descend-kl", r)
        }
        Command::Relations { g, h } => {
            let rep = check_relations(&load_graph(g)?, &load_graph(h)?, opts, &mut SpectrumCache::new())?;
            let unknown = rep.clauses.iter().any(|c| c.verdict == Verdict::Inconclusive);
            report("relations", rep, unknown)
        }
        Command::Corollary { g, h } => {
            let rep = check_final_corollary(&load_graph(g)?, &load_graph(h)?, opts);
            match rep {
                Ok(rep) => {
                    let unknown = rep.inclusion == Verdict::Inconclusive;
                    report("corollary", rep, unknown)
                }
                Err(e) => descent_report("corollary", Err::<(), _>(e)),
            }
        }
        Command::Reproduce { claim, format } => {
            let ro = ReproduceOptions {
                seed: cli.seed,
                jobs: cli.jobs.max(1),
                budget,
            };
            let rows = match claim {
                Some(id) => vec![run_claim(id, &ro)
                    .with_context(|| format!("unknown claim `{id}`; expected one of {}", CLAIM_IDS.join(", ")))?],
                None => reproduce_all(&ro),
            };
            let code = if rows.iter().any(|r| r.status == ClaimStatus::Fail) {
                EXIT_ERROR
            } else if rows.iter().any(|r| r.status == ClaimStatus::Unknown) {
                EXIT_UNKNOWN
            } else {
                0
            };
            match format {
                Format::Table => Ok(Output::Text {
                    text: table(&rows),
                    code,
                }),
                Format::Json => Ok(Output::Report {
                    command: "reproduce",
                    body: json!({ "seed": cli.seed, "rows": rows }),
                    code,
                }),
            }
        }
    }
}

fn dimacs(g: &Graph) -> Output {
    Output::Text {
        text: write_dimacs(g),
        code: 0,
    }
}

fn wrap(command: &str, body: Value) -> Value {
    let mut out = json!({ "schema": "v1", "command": command });
    if let (Value::Object(o), Value::Object(b)) = (&mut out, body) {
        o.extend(b);
    }
    out
}

fn table(rows: &[ClaimRow]) -> String {
    let mut s = format!("{:<8} {:<16} {}\n", "claim", "status", "detail");
    for r in rows {
        let status = serde_json::to_value(r.status).expect("status");
        s.push_str(&format!(
            "{:<8} {:<16} {}\n",
            r.id,
            status.as_str().unwrap_or("?"),
            r.detail
        ));
    }
    s
}

fn run_hom(op: &HomOp) -> Result<Output> {
    let body = match op {
        HomOp::Verify { source, target, map } => {
            let (s, t) = (load_graph(source)?, load_graph(target)?);
            let f = BHomMap::new(&s, &t, load_map(map)?)?;
            let violation = bhom::verify_b_homomorphism(&s, &t, &f)?;
            json!({ "op": "verify", "b_homomorphism": violation.is_none(), "violation": violation })
        }
        HomOp::LiftLeft { g, source, target, map } => {
            let (g, s, t) = (load_graph(g)?, load_graph(source)?, load_graph(target)?);
            let f = BHomMap::new(&s, &t, load_map(map)?)?;
            json!({ "op": "lift-left", "map": bhom::lift_left(&g, &s, &t, &f)?.map })
        }
        HomOp::LiftRight { source, target, g, map } => {
            let (s, t, g) = (load_graph(source)?, load_graph(target)?, load_graph(g)?);
            let f = BHomMap::new(&s, &t, load_map(map)?)?;
            json!({ "op": "lift-right", "map": bhom::lift_right(&s, &t, &f, &g)?.map })
        }
        HomOp::Compose { a, b, c, map, map2 } => {
            let (a, b, c) = (load_graph(a)?, load_graph(b)?, load_graph(c)?);
            let f1 = BHomMap::new(&a, &b, load_map(map)?)?;
            let f2 = BHomMap::new(&b, &c, load_map(map2)?)?;
            let f = bhom::compose(&f1, &f2)?;
            let violation = bhom::verify_b_homomorphism(&a, &c, &f)?;
            json!({ "op": "compose", "map": f.map, "b_homomorphism": violation.is_none(), "violation": violation })
        }
    };
    report("hom", body, false)
}
