//! Command-line front end. [`run`] parses arguments, dispatches to the
//! library and writes JSON (or an aligned table with `--table`) to `out`.
//! Exit codes: 0 on success, 1 on domain errors (with a JSON error object on
//! `err`), 2 on usage errors.

pub mod corpus;
pub mod ops;
pub mod render;

use std::ffi::OsString;
use std::io::{Read, Write};
use std::sync::{mpsc, Mutex};

use clap::{Args, Parser, Subcommand, ValueEnum};
use gorlab::numsgp::NumericalSemigroup;
use gorlab::stats::RingStats;
use num_rational::Ratio;
use serde_json::{json, Value};

use crate::corpus::CaseResult;
use crate::ops::{AffineInput, CliError, GraphCase, GraphInput, GraphOp, GraphSpec, Ring};

#[derive(Parser, Debug)]
#[command(name = "gorlab", version, about = "Gorenstein and almost-Gorenstein invariants of graded semigroup rings")]
struct Cli {
    /// Print an aligned table instead of JSON.
    #[arg(long, global = true)]
    table: bool,
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Numerical semigroups and gluings.
    #[command(subcommand)]
    Numsgp(NumsgpCommand),
    /// Affine semigroups given by generator matrices.
    #[command(subcommand)]
    Affsgp(AffsgpCommand),
    /// Graph families, edge rings and stable-set rings.
    #[command(subcommand)]
    Graph(GraphCommand),
    /// Arithmetic gates on numeric profiles.
    #[command(subcommand)]
    Classify(ClassifyCommand),
    /// Corpus files of expected values.
    #[command(subcommand)]
    Corpus(CorpusCommand),
}

#[derive(Subcommand, Debug)]
enum NumsgpCommand {
    /// Frobenius number, Apéry set, pseudo-Frobenius numbers, type and delta.
    Info {
        /// Comma-separated generators, e.g. 3,5,7.
        generators: String,
    },
    /// Glue two semigroups and classify the result.
    Glue {
        #[command(flatten)]
        gluing: GluingArgs,
        /// Also check the Apéry, pseudo-Frobenius, Frobenius and type identities.
        #[arg(long)]
        verify_nari: bool,
    },
    /// Only the verdict for a gluing.
    ClassifyGluing {
        #[command(flatten)]
        gluing: GluingArgs,
    },
}

#[derive(Args, Debug)]
struct GluingArgs {
    /// Generators of the first semigroup, which gets scaled by x2.
    #[arg(long)]
    h1: String,
    /// Element of the first semigroup; scales the second.
    #[arg(long)]
    x1: u64,
    /// Generators of the second semigroup.
    #[arg(long)]
    h2: String,
    /// Element of the second semigroup.
    #[arg(long)]
    x2: u64,
}

#[derive(Subcommand, Debug)]
enum AffsgpCommand {
    /// Numeric profile of the semigroup ring.
    Stats {
        /// One generator per line, space-separated integers; `-` for stdin.
        #[arg(long)]
        file: String,
        /// Compute the Cohen-Macaulay type.
        #[arg(long = "type")]
        compute_type: bool,
        /// Justification that the ring is normal.
        #[arg(long, value_name = "REASON")]
        assume_normal: Option<String>,
        /// Justification that the ring is Cohen-Macaulay.
        #[arg(long, value_name = "REASON")]
        assume_cm: Option<String>,
        /// Highest degree searched for canonical-module generators.
        #[arg(long)]
        omega_degree_bound: Option<i64>,
    },
}

#[derive(Subcommand, Debug)]
enum GraphCommand {
    /// Print a family member as an edge list.
    #[command(subcommand)]
    Family(FamilyCommand),
    /// Profiles and three-way verdicts.
    #[command(subcommand)]
    Classify(GraphClassifyCommand),
    /// Check that the combined h-vector is the product of the factors'.
    VerifySplit {
        #[arg(long, value_enum)]
        kind: SplitArg,
        #[command(flatten)]
        pair: PairArgs,
        /// Justification that the stable-set rings involved are normal.
        #[arg(long, value_name = "REASON")]
        assume_normal: Option<String>,
    },
}

#[derive(Subcommand, Debug)]
enum FamilyCommand {
    Cycle {
        #[arg(long)]
        n: usize,
    },
    Empty {
        #[arg(long)]
        n: usize,
    },
    /// Cycles through one common vertex.
    Bouquet {
        /// Number of 4-cycles.
        #[arg(long, default_value_t = 0)]
        l: usize,
        /// Comma-separated counts r_1,...,r_m of cycles of length 3, 5, ...
        #[arg(long)]
        r: String,
    },
    /// The join of the m-cycle and n isolated vertices.
    Cone {
        #[arg(long)]
        m: usize,
        #[arg(long)]
        n: usize,
    },
}

#[derive(Subcommand, Debug)]
enum GraphClassifyCommand {
    /// Profile of the edge ring of one graph.
    EdgeRing {
        /// Edge list; `-` or absent for stdin.
        #[arg(long)]
        file: Option<String>,
    },
    /// Profile of the stable-set ring of one graph.
    StableRing {
        /// Edge list; `-` or absent for stdin.
        #[arg(long)]
        file: Option<String>,
        #[arg(long, value_name = "REASON")]
        assume_normal: Option<String>,
    },
    /// Verdict for the edge ring of a clique sum with a bipartite first graph.
    EdgeCliqueSum {
        #[command(flatten)]
        pair: PairArgs,
    },
    /// Verdict for the stable-set ring of a join.
    StableJoin {
        #[command(flatten)]
        pair: PairArgs,
        #[arg(long, value_name = "REASON")]
        assume_normal: Option<String>,
    },
}

#[derive(Args, Debug)]
struct PairArgs {
    /// Edge-list file of the first graph.
    #[arg(long)]
    g1: String,
    /// Edge-list file of the second graph.
    #[arg(long)]
    g2: String,
    /// Justification that the relevant rings are Cohen-Macaulay.
    #[arg(long, value_name = "REASON")]
    assume_cm: Option<String>,
    /// Prefix the labels of the second graph to make the vertex sets disjoint.
    #[arg(long, value_name = "PREFIX", num_args = 0..=1, default_missing_value = "b")]
    relabel: Option<String>,
    /// Report the weaker conclusion instead of refusing when a factor has
    /// multiplicity 1.
    #[arg(long)]
    weak: bool,
    /// Vanishing h-coefficients required when normality is not asserted.
    #[arg(long)]
    window: Option<usize>,
}

#[derive(ValueEnum, Clone, Copy, Debug)]
enum SplitArg {
    CliqueSum,
    Join,
}

#[derive(Subcommand, Debug)]
enum ClassifyCommand {
    /// Three-way verdict on RingStats JSON files.
    Triple {
        /// Profile of the first factor.
        #[arg(long)]
        a: String,
        /// Profile of the second factor.
        #[arg(long)]
        b: String,
        /// Profile of the combined ring.
        #[arg(long)]
        r: String,
    },
    /// Check one tuple, or with --grid the whole search grid.
    LemmaGate {
        #[arg(long, required_unless_present = "grid")]
        e_a: Option<i64>,
        #[arg(long, required_unless_present = "grid")]
        e_b: Option<i64>,
        #[arg(long, required_unless_present = "grid")]
        r_a: Option<i64>,
        #[arg(long, required_unless_present = "grid")]
        r_b: Option<i64>,
        /// Rational, e.g. 1/2.
        #[arg(long, default_value = "0")]
        gamma1: String,
        #[arg(long, default_value = "0")]
        gamma2: String,
        #[arg(long)]
        grid: bool,
        #[arg(long, default_value_t = 8)]
        e_max: i64,
        #[arg(long, default_value_t = 6)]
        gamma_max: i64,
    },
}

#[derive(Subcommand, Debug)]
enum CorpusCommand {
    /// Run every case of a corpus file.
    Run {
        /// JSON array of cases.
        path: String,
        /// Worker threads.
        #[arg(long, default_value_t = 1)]
        jobs: usize,
    },
}

/// Runs the command line `args` (including the program name).
pub fn run<I, T>(args: I, out: &mut dyn Write, err: &mut dyn Write) -> u8
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) => {
            let text = e.render().to_string();
            if e.use_stderr() {
                let _ = write!(err, "{text}");
                return 2;
            }
            let _ = write!(out, "{text}");
            return 0;
        }
    };
    match dispatch(cli.command, err) {
        Ok(Output::Data(v, code)) => {
            let text = if cli.table { render::table(&v) } else { render::json(&v) };
            let _ = out.write_all(text.as_bytes());
            code
        }
        Ok(Output::Text(t)) => {
            let _ = out.write_all(t.as_bytes());
            0
        }
        Err(e) => {
            let _ = err.write_all(render::json(&e.to_json()).as_bytes());
            1
        }
    }
}

enum Output {
    Data(Value, u8),
    Text(String),
}

fn data(v: Value) -> Result<Output, CliError> {
    Ok(Output::Data(v, 0))
}

fn read_source(path: Option<&str>) -> Result<String, CliError> {
    let io_err = |p: &str, e: std::io::Error| CliError::Io {
        path: p.to_string(),
        message: e.to_string(),
    };
    match path {
        None | Some("-") => {
            let mut s = String::new();
            std::io::stdin().read_to_string(&mut s).map_err(|e| io_err("<stdin>", e))?;
            Ok(s)
        }
        Some(p) => std::fs::read_to_string(p).map_err(|e| io_err(p, e)),
    }
}

fn parse_list(s: &str) -> Result<Vec<u64>, CliError> {
    s.split(',')
        .map(|t| t.trim().parse::<u64>().map_err(|e| CliError::Input(format!("{t:?}: {e}"))))
        .collect()
}

fn parse_ratio(s: &str) -> Result<Ratio<i64>, CliError> {
    s.trim().parse().map_err(|_| CliError::Input(format!("not a rational number: {s:?}")))
}

fn read_stats(path: &str) -> Result<RingStats, CliError> {
    serde_json::from_str(&read_source(Some(path))?).map_err(|e| CliError::Parse {
        line: e.line(),
        message: format!("{path}: {e}"),
    })
}

fn edge_list(path: Option<&str>) -> Result<GraphInput, CliError> {
    Ok(GraphInput {
        spec: GraphSpec::EdgeList { edges: read_source(path)? },
        relabel: None,
    })
}

impl PairArgs {
    fn case(&self, op: GraphOp, assume_normal: Option<String>) -> Result<GraphCase, CliError> {
        let mut g2 = edge_list(Some(&self.g2))?;
        g2.relabel = self.relabel.clone();
        Ok(GraphCase {
            op,
            g: None,
            g1: Some(edge_list(Some(&self.g1))?),
            g2: Some(g2),
            assume_cm: self.assume_cm.clone(),
            assume_normal,
            weak: self.weak,
            compute_type: true,
            window: self.window,
        })
    }
}

fn single(op: GraphOp, file: Option<&str>, assume_normal: Option<String>) -> Result<GraphCase, CliError> {
    Ok(GraphCase {
        op,
        g: Some(edge_list(file)?),
        g1: None,
        g2: None,
        assume_cm: None,
        assume_normal,
        weak: false,
        compute_type: true,
        window: None,
    })
}

fn dispatch(cmd: Command, err: &mut dyn Write) -> Result<Output, CliError> {
    match cmd {
        Command::Numsgp(c) => match c {
            NumsgpCommand::Info { generators } => {
                let h: NumericalSemigroup = generators.parse()?;
                data(ops::numsgp_info(&h))
            }
            NumsgpCommand::Glue { gluing: g, verify_nari } => {
                data(ops::gluing(&parse_list(&g.h1)?, g.x1, &parse_list(&g.h2)?, g.x2, verify_nari)?)
            }
            NumsgpCommand::ClassifyGluing { gluing: g } => {
                let v = ops::gluing(&parse_list(&g.h1)?, g.x1, &parse_list(&g.h2)?, g.x2, false)?;
                data(v["verdict"].clone())
            }
        },
        Command::Affsgp(AffsgpCommand::Stats {
            file,
            compute_type,
            assume_normal,
            assume_cm,
            omega_degree_bound,
        }) => {
            let text = read_source(Some(&file))?;
            let s = gorlab::affsgp::AffineSemigroup::from_text(&text)?;
            data(ops::affine_stats(&AffineInput {
                generators: s.generators().to_vec(),
                compute_type,
                assume_normal,
                assume_cm,
                omega_degree_bound,
            })?)
        }
        Command::Graph(c) => match c {
            GraphCommand::Family(f) => {
                let g = match f {
                    FamilyCommand::Cycle { n } => gorlab::graphs::cycle(n)?,
                    FamilyCommand::Empty { n } => gorlab::graphs::empty_graph(n)?,
                    FamilyCommand::Bouquet { l, r } => {
                        let r: Vec<usize> = parse_list(&r)?.into_iter().map(|x| x as usize).collect();
                        gorlab::graphs::bouquet(&vec![4; l], &r)?
                    }
                    FamilyCommand::Cone { m, n } => gorlab::graphs::cone_graph(m, n)?,
                };
                Ok(Output::Text(g.to_edge_list()))
            }
            GraphCommand::Classify(c) => {
                let (case, ring) = match c {
                    GraphClassifyCommand::EdgeRing { file } => (single(GraphOp::Stats, file.as_deref(), None)?, Ring::Edge),
                    GraphClassifyCommand::StableRing { file, assume_normal } => {
                        (single(GraphOp::Stats, file.as_deref(), assume_normal)?, Ring::Stable)
                    }
                    GraphClassifyCommand::EdgeCliqueSum { pair } => (pair.case(GraphOp::CliqueSum, None)?, Ring::Edge),
                    GraphClassifyCommand::StableJoin { pair, assume_normal } => {
                        (pair.case(GraphOp::Join, assume_normal)?, Ring::Stable)
                    }
                };
                data(case.run(ring)?)
            }
            GraphCommand::VerifySplit { kind, pair, assume_normal } => {
                let ring = match kind {
                    SplitArg::CliqueSum => Ring::Edge,
                    SplitArg::Join => Ring::Stable,
                };
                let v = pair.case(GraphOp::Split, assume_normal)?.run(ring)?;
                let code = if v["pass"] == json!(true) { 0 } else { 1 };
                Ok(Output::Data(v, code))
            }
        },
        Command::Classify(c) => match c {
            ClassifyCommand::Triple { a, b, r } => data(ops::triple(&read_stats(&a)?, &read_stats(&b)?, &read_stats(&r)?)?),
            ClassifyCommand::LemmaGate {
                e_a,
                e_b,
                r_a,
                r_b,
                gamma1,
                gamma2,
                grid,
                e_max,
                gamma_max,
            } => {
                if grid {
                    data(ops::lemma_grid(e_max, gamma_max)?)
                } else {
                    let need = |x: Option<i64>| x.expect("required unless --grid");
                    data(ops::lemma_gate(
                        need(e_a),
                        need(e_b),
                        need(r_a),
                        need(r_b),
                        parse_ratio(&gamma1)?,
                        parse_ratio(&gamma2)?,
                    )?)
                }
            }
        },
        Command::Corpus(CorpusCommand::Run { path, jobs }) => {
            let cases = corpus::parse(&read_source(Some(&path))?)?;
            let (tx, rx) = mpsc::channel::<CaseResult>();
            let results = std::thread::scope(|scope| {
                let worker = scope.spawn(move || {
                    let tx = Mutex::new(tx);
                    corpus::run_all(&cases, jobs, &|r| {
                        let _ = tx.lock().expect("progress channel").send(r.clone());
                    })
                });
                for r in rx {
                    let _ = match &r.mismatch {
                        None => writeln!(err, "PASS {}", r.id),
                        Some(m) => writeln!(err, "FAIL {}: {m}", r.id),
                    };
                }
                worker.join().expect("corpus worker")
            });
            let failed = results.iter().filter(|r| !r.pass).count();
            let v = json!({
                "total": results.len(),
                "passed": results.len() - failed,
                "failed": failed,
                "cases": results,
            });
            Ok(Output::Data(v, if failed == 0 { 0 } else { 1 }))
        }
    }
}
