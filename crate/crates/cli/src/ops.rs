//! Operations shared by the subcommands and the corpus runner. Each returns
//! a JSON value with deterministic key order.

use std::fmt::Debug;

use gorlab::affsgp::{AffineError, AffineOptions, AffineSemigroup};
use gorlab::classify::{self, ClassifyError};
use gorlab::graphs::{self, Graph, GraphError, GraphOptions, MultiplicityOneMode, SplitKind};
use gorlab::numsgp::{GluingSpec, NumericalSemigroup, SemigroupError};
use gorlab::stats::RingStats;
use num_rational::Ratio;
use serde::Deserialize;
use serde_json::{json, Value};
use thiserror::Error;

#[derive(Debug, Error)]
pub enum CliError {
    #[error(transparent)]
    Semigroup(#[from] SemigroupError),
    #[error(transparent)]
    Affine(#[from] AffineError),
    #[error(transparent)]
    Graph(#[from] GraphError),
    #[error(transparent)]
    Classify(#[from] ClassifyError),
    #[error("{path}: {message}")]
    Io { path: String, message: String },
    #[error("{0}")]
    Input(String),
    #[error("line {line}: {message}")]
    Parse { line: usize, message: String },
}

impl CliError {
    /// Name of the innermost error variant, e.g. `MultiplicityOne`.
    pub fn kind(&self) -> String {
        match self {
            Self::Semigroup(e) => variant(e),
            Self::Affine(e) => variant(e),
            Self::Graph(GraphError::Affine(e)) => variant(e),
            Self::Graph(e) => variant(e),
            Self::Classify(e) => variant(e),
            Self::Io { .. } => "Io".into(),
            Self::Input(_) => "Input".into(),
            Self::Parse { .. } => "ParseError".into(),
        }
    }

    pub fn to_json(&self) -> Value {
        json!({"error": {"kind": self.kind(), "message": self.to_string()}})
    }
}

fn variant(e: &impl Debug) -> String {
    let s = format!("{e:?}");
    s.split(['(', ' ', '{']).next().unwrap_or_default().to_string()
}

fn to_value(v: &impl serde::Serialize) -> Value {
    serde_json::to_value(v).expect("serializable")
}

pub fn numsgp_info(h: &NumericalSemigroup) -> Value {
    let m = h.multiplicity();
    json!({
        "generators": h.minimal_generators(),
        "multiplicity": m,
        "embedding_dimension": h.embedding_dimension(),
        "frobenius": h.frobenius(),
        "gaps": h.gaps(),
        "apery": h.apery(m).expect("multiplicity is an element"),
        "pseudo_frobenius": h.pseudo_frobenius(),
        "type": h.type_t(),
        "symmetric": h.is_symmetric(),
        "delta": h.delta(),
        "almost_gorenstein": h.is_almost_gorenstein(),
    })
}

pub fn gluing(h1: &[u64], x1: u64, h2: &[u64], x2: u64, nari: bool) -> Result<Value, CliError> {
    let spec = GluingSpec::new(
        NumericalSemigroup::from_generators(h1)?,
        x1,
        NumericalSemigroup::from_generators(h2)?,
        x2,
    )?;
    let mut out = json!({
        "glued": numsgp_info(&spec.glue()),
        "verdict": to_value(&spec.classify()),
    });
    if nari {
        out["nari"] = to_value(&spec.verify_nari());
    }
    Ok(out)
}

#[derive(Debug, Clone, Default, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct AffineInput {
    pub generators: Vec<Vec<i64>>,
    #[serde(default, rename = "type")]
    pub compute_type: bool,
    #[serde(default)]
    pub assume_normal: Option<String>,
    #[serde(default)]
    pub assume_cm: Option<String>,
    #[serde(default)]
    pub omega_degree_bound: Option<i64>,
}

pub fn affine_stats(input: &AffineInput) -> Result<Value, CliError> {
    let s = AffineSemigroup::new(input.generators.clone())?;
    let opts = AffineOptions {
        assume_normal: input.assume_normal.clone(),
        assume_cm: input.assume_cm.clone(),
        compute_type: input.compute_type,
        omega_degree_bound: input
            .omega_degree_bound
            .map(|b| u32::try_from(b).map_err(|_| CliError::Input(format!("bad omega degree bound {b}"))))
            .transpose()?,
        ..AffineOptions::default()
    };
    Ok(stats_json(s.ring_stats(&opts)?))
}

/// RingStats plus the derived cokernel numerator.
pub fn stats_json(s: RingStats) -> Value {
    let mut v = to_value(&s);
    if let Some(h) = &s.h {
        v["cokernel_numerator"] = to_value(&h.cokernel_numerator().expect("desk-scale h"));
    }
    v
}

/// A graph given as a family or an edge list, optionally relabelled.
#[derive(Debug, Clone, Deserialize)]
pub struct GraphInput {
    #[serde(flatten)]
    pub spec: GraphSpec,
    #[serde(default)]
    pub relabel: Option<String>,
}

#[derive(Debug, Clone, Deserialize)]
#[serde(tag = "family", rename_all = "snake_case")]
pub enum GraphSpec {
    Cycle { n: usize },
    Empty { n: usize },
    Bouquet {
        #[serde(default)]
        even: Vec<usize>,
        r: Vec<usize>,
    },
    Cone { m: usize, n: usize },
    EdgeList { edges: String },
}

impl GraphInput {
    pub fn build(&self) -> Result<Graph, CliError> {
        let g = match &self.spec {
            GraphSpec::Cycle { n } => graphs::cycle(*n)?,
            GraphSpec::Empty { n } => graphs::empty_graph(*n)?,
            GraphSpec::Bouquet { even, r } => graphs::bouquet(even, r)?,
            GraphSpec::Cone { m, n } => graphs::cone_graph(*m, *n)?,
            GraphSpec::EdgeList { edges } => Graph::from_edge_list(edges)?,
        };
        Ok(match &self.relabel {
            Some(p) => g.relabeled(p),
            None => g,
        })
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum GraphOp {
    Stats,
    CliqueSum,
    Join,
    Split,
}

#[derive(Debug, Clone, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct GraphCase {
    pub op: GraphOp,
    #[serde(default)]
    pub g: Option<GraphInput>,
    #[serde(default)]
    pub g1: Option<GraphInput>,
    #[serde(default)]
    pub g2: Option<GraphInput>,
    #[serde(default)]
    pub assume_cm: Option<String>,
    #[serde(default)]
    pub assume_normal: Option<String>,
    #[serde(default)]
    pub weak: bool,
    #[serde(default = "yes")]
    pub compute_type: bool,
    #[serde(default)]
    pub window: Option<usize>,
}

fn yes() -> bool {
    true
}

/// Which semigroup a graph case works with.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Ring {
    Edge,
    Stable,
}

impl GraphCase {
    fn options(&self) -> GraphOptions {
        let mut opts = GraphOptions {
            assume_cm: self.assume_cm.clone(),
            assume_normal: self.assume_normal.clone(),
            compute_type: self.compute_type,
            multiplicity_one: if self.weak { MultiplicityOneMode::Weak } else { MultiplicityOneMode::Refuse },
            ..GraphOptions::default()
        };
        if let Some(w) = self.window {
            opts.window = w;
        }
        opts
    }

    fn graph(slot: &Option<GraphInput>, name: &str) -> Result<Graph, CliError> {
        slot.as_ref()
            .ok_or_else(|| CliError::Input(format!("missing graph {name}")))?
            .build()
    }

    pub fn run(&self, ring: Ring) -> Result<Value, CliError> {
        let opts = self.options();
        match (ring, self.op) {
            (Ring::Edge, GraphOp::Stats) => Ok(stats_json(graphs::edge_ring_stats(&Self::graph(&self.g, "g")?, &opts)?)),
            (Ring::Stable, GraphOp::Stats) => Ok(stats_json(graphs::stable_ring_stats(&Self::graph(&self.g, "g")?, &opts)?)),
            (Ring::Edge, GraphOp::CliqueSum) => Ok(to_value(&graphs::classify_edge_clique_sum(
                &Self::graph(&self.g1, "g1")?,
                &Self::graph(&self.g2, "g2")?,
                &opts,
            )?)),
            (Ring::Stable, GraphOp::Join) => Ok(to_value(&graphs::classify_stable_join(
                &Self::graph(&self.g1, "g1")?,
                &Self::graph(&self.g2, "g2")?,
                &opts,
            )?)),
            (_, GraphOp::Split) => {
                let kind = if ring == Ring::Edge { SplitKind::CliqueSum } else { SplitKind::Join };
                Ok(to_value(&graphs::verify_split_hilbert(
                    &Self::graph(&self.g1, "g1")?,
                    &Self::graph(&self.g2, "g2")?,
                    kind,
                    &opts,
                )?))
            }
            (Ring::Edge, GraphOp::Join) | (Ring::Stable, GraphOp::CliqueSum) => {
                Err(CliError::Input(format!("operation {:?} does not apply to this ring", self.op)))
            }
        }
    }
}

pub fn triple(a: &RingStats, b: &RingStats, r: &RingStats) -> Result<Value, CliError> {
    Ok(to_value(&classify::classify_triple(a, b, r)?))
}

pub fn lemma_gate(e_a: i64, e_b: i64, r_a: i64, r_b: i64, gamma1: Ratio<i64>, gamma2: Ratio<i64>) -> Result<Value, CliError> {
    let premises = classify::lemma_gate(e_a, e_b, r_a, r_b, gamma1, gamma2)?;
    Ok(json!({"premises_hold": premises, "conclusion_holds": true}))
}

pub fn lemma_grid(e_max: i64, gamma_max: i64) -> Result<Value, CliError> {
    let admitted = classify::lemma_grid_search(e_max, gamma_max)?;
    Ok(json!({"e_max": e_max, "gamma_max": gamma_max, "admitted": admitted, "counterexamples": 0}))
}
