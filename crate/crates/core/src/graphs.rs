//! Finite simple graphs, their edge and stable-set semigroups, and the
//! almost-Gorenstein classifications for clique sums and joins.
//!
//! Vertices carry string labels and are indexed in first-seen order. Clique
//! sums identify vertices with equal labels; joins require disjoint labels.
//!
//! Edge rings are recognised as normal when the graph satisfies the odd
//! cycle condition: any two vertex-disjoint chordless odd cycles in one
//! connected component are joined by an edge. Bipartite graphs satisfy it
//! vacuously. Normality of stable-set rings is always a caller assertion.

use std::collections::{BTreeMap, BTreeSet};
use std::fmt;

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::affsgp::{self, AffineError, AffineOptions, AffineSemigroup};
use crate::classify::{self, Verdict};
use crate::hpoly::HPolynomial;
use crate::stats::RingStats;

/// Default cap on the number of enumerated stable sets.
pub const DEFAULT_STABLE_SET_CEILING: usize = 1 << 20;

const MAX_VERTICES: usize = 128;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum GraphError {
    #[error("bad parameter: {0}")]
    BadParameter(String),
    #[error("shared vertices {u} and {v} are not adjacent in G{graph}")]
    NotAClique { graph: u8, u: String, v: String },
    #[error("vertex {0} occurs in both graphs")]
    NotDisjoint(String),
    #[error("the graph has no edges")]
    NoEdges,
    #[error("G1 is not bipartite")]
    NotBipartite,
    #[error("{ring} has multiplicity 1")]
    MultiplicityOne { ring: String },
    #[error("{0} is not known to be Cohen-Macaulay; supply a justification")]
    AssumptionMissing(String),
    #[error("loop at vertex {0}")]
    Loop(String),
    #[error("line {line}: {msg}")]
    Parse { line: usize, msg: String },
    #[error("more than {0} stable sets")]
    ResourceBound(usize),
    #[error(transparent)]
    Affine(#[from] AffineError),
}

/// A finite simple graph with labelled vertices.
#[derive(Debug, Clone, Default, PartialEq, Eq)]
pub struct Graph {
    labels: Vec<String>,
    index: BTreeMap<String, usize>,
    adj: Vec<BTreeSet<usize>>,
}

impl Graph {
    pub fn new() -> Self {
        Self::default()
    }

    /// Index of `label`, adding the vertex if it is new.
    pub fn add_vertex(&mut self, label: &str) -> usize {
        if let Some(&i) = self.index.get(label) {
            return i;
        }
        let i = self.labels.len();
        self.labels.push(label.to_string());
        self.index.insert(label.to_string(), i);
        self.adj.push(BTreeSet::new());
        i
    }

    pub fn add_edge(&mut self, u: &str, v: &str) -> Result<(), GraphError> {
        if u == v {
            return Err(GraphError::Loop(u.to_string()));
        }
        let (i, j) = (self.add_vertex(u), self.add_vertex(v));
        self.adj[i].insert(j);
        self.adj[j].insert(i);
        Ok(())
    }

    /// Parses an edge list: one `u v` pair per line, a single token for an
    /// isolated vertex, `#` for comments.
    pub fn from_edge_list(text: &str) -> Result<Self, GraphError> {
        let mut g = Self::new();
        for (i, line) in text.lines().enumerate() {
            let line = line.split('#').next().unwrap_or("").trim();
            let tokens: Vec<&str> = line.split_whitespace().collect();
            match tokens.as_slice() {
                [] => {}
                [v] => {
                    g.add_vertex(v);
                }
                [u, v] => g.add_edge(u, v)?,
                _ => {
                    return Err(GraphError::Parse {
                        line: i + 1,
                        msg: format!("expected one or two labels, found {}", tokens.len()),
                    })
                }
            }
        }
        Ok(g)
    }

    /// Inverse of [`Graph::from_edge_list`].
    pub fn to_edge_list(&self) -> String {
        let mut out = String::new();
        for (i, j) in self.edges() {
            out.push_str(&format!("{} {}\n", self.labels[i], self.labels[j]));
        }
        for (i, l) in self.labels.iter().enumerate() {
            if self.adj[i].is_empty() {
                out.push_str(&format!("{l}\n"));
            }
        }
        out
    }

    pub fn vertex_count(&self) -> usize {
        self.labels.len()
    }

    pub fn edge_count(&self) -> usize {
        self.adj.iter().map(BTreeSet::len).sum::<usize>() / 2
    }

    pub fn labels(&self) -> &[String] {
        &self.labels
    }

    /// Edges as index pairs `(i, j)` with `i < j`, sorted.
    pub fn edges(&self) -> Vec<(usize, usize)> {
        (0..self.labels.len())
            .flat_map(|i| self.adj[i].range(i + 1..).map(move |&j| (i, j)))
            .collect()
    }

    pub fn has_edge(&self, u: &str, v: &str) -> bool {
        match (self.index.get(u), self.index.get(v)) {
            (Some(&i), Some(&j)) => self.adj[i].contains(&j),
            _ => false,
        }
    }

    /// A copy with every label prefixed by `prefix`.
    pub fn relabeled(&self, prefix: &str) -> Self {
        let mut g = Self::new();
        for l in &self.labels {
            g.add_vertex(&format!("{prefix}{l}"));
        }
        for (i, j) in self.edges() {
            g.adj[i].insert(j);
            g.adj[j].insert(i);
        }
        g
    }

    /// Connected components as sorted index lists.
    pub fn components(&self) -> Vec<Vec<usize>> {
        let mut seen = vec![false; self.vertex_count()];
        let mut out = Vec::new();
        for s in 0..self.vertex_count() {
            if seen[s] {
                continue;
            }
            seen[s] = true;
            let mut comp = vec![s];
            let mut k = 0;
            while k < comp.len() {
                for &w in &self.adj[comp[k]] {
                    if !seen[w] {
                        seen[w] = true;
                        comp.push(w);
                    }
                }
                k += 1;
            }
            comp.sort_unstable();
            out.push(comp);
        }
        out
    }

    pub fn is_bipartite(&self) -> bool {
        let mut colour: Vec<Option<bool>> = vec![None; self.vertex_count()];
        for s in 0..self.vertex_count() {
            if colour[s].is_some() {
                continue;
            }
            colour[s] = Some(false);
            let mut stack = vec![s];
            while let Some(u) = stack.pop() {
                let c = colour[u].expect("coloured when pushed");
                for &w in &self.adj[u] {
                    match colour[w] {
                        None => {
                            colour[w] = Some(!c);
                            stack.push(w);
                        }
                        Some(cw) if cw == c => return false,
                        Some(_) => {}
                    }
                }
            }
        }
        true
    }

    /// Vertex sets of the chordless cycles of odd length, as bitmasks.
    fn chordless_odd_cycles(&self) -> Vec<u128> {
        let n = self.vertex_count();
        let nbr: Vec<u128> = self.adj.iter().map(|a| a.iter().fold(0u128, |m, &j| m | 1 << j)).collect();
        let mut found = BTreeSet::new();
        for v in 0..n {
            // Paths v, .., u whose interior vertices exceed v and carry no chords.
            let mut stack: Vec<(usize, u128, u32)> = vec![(v, 1 << v, 1)];
            while let Some((u, path, len)) = stack.pop() {
                for &w in self.adj[u].range(v + 1..) {
                    if path & (1 << w) != 0 {
                        continue;
                    }
                    let inner = path & !(1u128 << u) & !(1u128 << v);
                    if nbr[w] & inner != 0 {
                        continue;
                    }
                    if len >= 2 && nbr[w] & (1 << v) != 0 {
                        if (len + 1) % 2 == 1 {
                            found.insert(path | 1 << w);
                        }
                    } else {
                        stack.push((w, path | 1 << w, len + 1));
                    }
                }
            }
        }
        found.into_iter().collect()
    }

    /// Whether any two vertex-disjoint chordless odd cycles lying in the same
    /// connected component are joined by an edge.
    pub fn satisfies_odd_cycle_condition(&self) -> bool {
        if self.is_bipartite() {
            return true;
        }
        let comp_of: Vec<usize> = {
            let mut c = vec![0; self.vertex_count()];
            for (k, comp) in self.components().iter().enumerate() {
                for &v in comp {
                    c[v] = k;
                }
            }
            c
        };
        let nbr: Vec<u128> = self.adj.iter().map(|a| a.iter().fold(0u128, |m, &j| m | 1 << j)).collect();
        let cycles = self.chordless_odd_cycles();
        for (a, &c1) in cycles.iter().enumerate() {
            for &c2 in &cycles[a + 1..] {
                if c1 & c2 != 0 || comp_of[c1.trailing_zeros() as usize] != comp_of[c2.trailing_zeros() as usize] {
                    continue;
                }
                let reach = (0..self.vertex_count())
                    .filter(|&i| c1 & (1 << i) != 0)
                    .fold(0u128, |m, i| m | nbr[i]);
                if reach & c2 == 0 {
                    return false;
                }
            }
        }
        true
    }

    /// All stable sets including the empty set, ordered by size and then
    /// lexicographically by vertex index.
    pub fn stable_sets(&self, ceiling: usize) -> Result<Vec<Vec<usize>>, GraphError> {
        let n = self.vertex_count();
        if n > MAX_VERTICES {
            return Err(GraphError::BadParameter(format!("{n} vertices exceed {MAX_VERTICES}")));
        }
        let nbr: Vec<u128> = self.adj.iter().map(|a| a.iter().fold(0u128, |m, &j| m | 1 << j)).collect();
        let mut out: Vec<Vec<usize>> = Vec::new();
        let mut stack: Vec<(Vec<usize>, usize, u128)> = vec![(Vec::new(), 0, 0)];
        while let Some((set, next, blocked)) = stack.pop() {
            out.push(set.clone());
            if out.len() > ceiling {
                return Err(GraphError::ResourceBound(ceiling));
            }
            for v in next..n {
                if blocked & (1 << v) == 0 {
                    let mut s = set.clone();
                    s.push(v);
                    stack.push((s, v + 1, blocked | nbr[v]));
                }
            }
        }
        out.sort_by(|a, b| a.len().cmp(&b.len()).then_with(|| a.cmp(b)));
        Ok(out)
    }

    /// Generators `e_i + e_j`, one per edge.
    pub fn edge_semigroup(&self) -> Result<AffineSemigroup, GraphError> {
        let edges = self.edges();
        if edges.is_empty() {
            return Err(GraphError::NoEdges);
        }
        let n = self.vertex_count();
        let gens = edges
            .into_iter()
            .map(|(i, j)| {
                let mut v = vec![0; n];
                v[i] = 1;
                v[j] = 1;
                v
            })
            .collect();
        Ok(AffineSemigroup::new(gens)?)
    }

    /// Generators `chi_S + e_{d+1}`, one per stable set `S`.
    pub fn stable_semigroup(&self, ceiling: usize) -> Result<AffineSemigroup, GraphError> {
        let n = self.vertex_count();
        let gens = self
            .stable_sets(ceiling)?
            .into_iter()
            .map(|s| {
                let mut v = vec![0; n + 1];
                for i in s {
                    v[i] = 1;
                }
                v[n] = 1;
                v
            })
            .collect();
        Ok(AffineSemigroup::new(gens)?)
    }

    /// Justification for normality of the edge ring, if one is known.
    pub fn edge_ring_normality(&self) -> Option<String> {
        if self.is_bipartite() {
            Some("bipartite graph".into())
        } else if self.vertex_count() <= MAX_VERTICES && self.satisfies_odd_cycle_condition() {
            Some("odd cycle condition".into())
        } else {
            None
        }
    }
}

impl fmt::Display for Graph {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.to_edge_list())
    }
}

/// `G1 # G2`: union of vertices and edges, glued along common labels, which
/// must form a clique in both graphs.
pub fn clique_sum(g1: &Graph, g2: &Graph) -> Result<Graph, GraphError> {
    let shared = shared_labels(g1, g2);
    for (graph, g) in [(1u8, g1), (2, g2)] {
        for (a, u) in shared.iter().enumerate() {
            for v in &shared[a + 1..] {
                if !g.has_edge(u, v) {
                    return Err(GraphError::NotAClique {
                        graph,
                        u: u.clone(),
                        v: v.clone(),
                    });
                }
            }
        }
    }
    let mut g = g1.clone();
    absorb(&mut g, g2);
    Ok(g)
}

/// `G1 + G2`: disjoint union plus every edge between the two vertex sets.
pub fn join(g1: &Graph, g2: &Graph) -> Result<Graph, GraphError> {
    if let Some(l) = shared_labels(g1, g2).into_iter().next() {
        return Err(GraphError::NotDisjoint(l));
    }
    let mut g = g1.clone();
    absorb(&mut g, g2);
    for u in g1.labels() {
        for v in g2.labels() {
            g.add_edge(u, v)?;
        }
    }
    Ok(g)
}

fn shared_labels(g1: &Graph, g2: &Graph) -> Vec<String> {
    g1.labels().iter().filter(|l| g2.index.contains_key(*l)).cloned().collect()
}

fn absorb(g: &mut Graph, other: &Graph) {
    for l in other.labels() {
        g.add_vertex(l);
    }
    for (i, j) in other.edges() {
        g.add_edge(&other.labels[i], &other.labels[j]).expect("source graph is simple");
    }
}

/// The cycle on vertices `1..=n`.
pub fn cycle(n: usize) -> Result<Graph, GraphError> {
    if n < 3 {
        return Err(GraphError::BadParameter(format!("cycle length {n} < 3")));
    }
    let mut g = Graph::new();
    for i in 1..=n {
        g.add_edge(&i.to_string(), &(i % n + 1).to_string())?;
    }
    Ok(g)
}

/// `n` isolated vertices labelled `1..=n`.
pub fn empty_graph(n: usize) -> Result<Graph, GraphError> {
    if n == 0 {
        return Err(GraphError::BadParameter("empty graph needs a vertex".into()));
    }
    let mut g = Graph::new();
    for i in 1..=n {
        g.add_vertex(&i.to_string());
    }
    Ok(g)
}

/// Cycles through a common vertex `0`: one even cycle per entry of
/// `even_lengths` and `r[j - 1]` cycles of length `2j + 1`. Cycle `k`
/// uses the vertices `0, k.1, k.2, ...`.
pub fn bouquet(even_lengths: &[usize], r: &[usize]) -> Result<Graph, GraphError> {
    if r.iter().sum::<usize>() == 0 {
        return Err(GraphError::BadParameter("bouquet needs an odd cycle".into()));
    }
    if let Some(&l) = even_lengths.iter().find(|&&l| l < 4 || l % 2 == 1) {
        return Err(GraphError::BadParameter(format!("{l} is not an even cycle length")));
    }
    let odd = r
        .iter()
        .enumerate()
        .flat_map(|(j, &count)| std::iter::repeat_n(2 * j + 3, count));
    let mut g = Graph::new();
    for (k, len) in odd.chain(even_lengths.iter().copied()).enumerate() {
        let ring: Vec<String> = std::iter::once("0".to_string())
            .chain((1..len).map(|i| format!("{}.{i}", k + 1)))
            .collect();
        for i in 0..len {
            g.add_edge(&ring[i], &ring[(i + 1) % len])?;
        }
    }
    Ok(g)
}

/// `C_m + K̄_n`, with the isolated vertices labelled `k1..kn`.
pub fn cone_graph(m: usize, n: usize) -> Result<Graph, GraphError> {
    join(&cycle(m)?, &empty_graph(n)?.relabeled("k"))
}

/// What to do when a factor ring has multiplicity 1.
#[derive(Debug, Clone, Copy, Default, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum MultiplicityOneMode {
    #[default]
    Refuse,
    /// Report the conditions without an equivalence claim, together with the
    /// weaker conclusion that the other factor is almost Gorenstein.
    Weak,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct GraphOptions {
    /// Justification that the ring is Cohen-Macaulay where this is not
    /// automatic.
    pub assume_cm: Option<String>,
    /// Justification that the stable-set rings involved are normal; enables
    /// type computation for them.
    pub assume_normal: Option<String>,
    pub compute_type: bool,
    pub multiplicity_one: MultiplicityOneMode,
    pub point_ceiling: u64,
    pub stable_set_ceiling: usize,
    /// Vanishing coefficients required before an h-vector is read off a
    /// ring without a normality assertion.
    pub window: usize,
}

impl Default for GraphOptions {
    fn default() -> Self {
        Self {
            assume_cm: None,
            assume_normal: None,
            compute_type: true,
            multiplicity_one: MultiplicityOneMode::Refuse,
            point_ceiling: affsgp::point_ceiling_from_env(),
            stable_set_ceiling: DEFAULT_STABLE_SET_CEILING,
            window: crate::hpoly::DEFAULT_WINDOW,
        }
    }
}

impl GraphOptions {
    fn affine(&self, normal: Option<String>) -> AffineOptions {
        AffineOptions {
            point_ceiling: self.point_ceiling,
            compute_type: self.compute_type && normal.is_some(),
            assume_cm: if normal.is_some() { None } else { self.assume_cm.clone() },
            assume_normal: normal,
            window: self.window,
            ..AffineOptions::default()
        }
    }
}

/// Numeric profile of the edge ring `k[G]`.
pub fn edge_ring_stats(g: &Graph, opts: &GraphOptions) -> Result<RingStats, GraphError> {
    let normal = g.edge_ring_normality();
    Ok(g.edge_semigroup()?.ring_stats(&opts.affine(normal))?)
}

/// Numeric profile of the stable-set ring `Stab(G)`.
pub fn stable_ring_stats(g: &Graph, opts: &GraphOptions) -> Result<RingStats, GraphError> {
    let s = g.stable_semigroup(opts.stable_set_ceiling)?;
    Ok(s.ring_stats(&opts.affine(opts.assume_normal.clone()))?)
}

fn is_cm(s: &RingStats) -> bool {
    !s.provenance.is_empty()
}

/// Three-way verdict for `k[G1 # G2]` with `G1` bipartite.
pub fn classify_edge_clique_sum(g1: &Graph, g2: &Graph, opts: &GraphOptions) -> Result<Verdict, GraphError> {
    if !g1.is_bipartite() {
        return Err(GraphError::NotBipartite);
    }
    let shared = shared_labels(g1, g2).len();
    let g = clique_sum(g1, g2)?;
    let sa = edge_ring_stats(g1, opts)?;
    let sb = edge_ring_stats(g2, opts)?;
    if !is_cm(&sb) {
        return Err(GraphError::AssumptionMissing("k[G2]".into()));
    }
    let sr = edge_ring_stats(&g, opts)?;
    let v = Verdict::new(sr.almost_gorenstein, sr.gorenstein, sa.gorenstein && sb.gorenstein)
        .hypothesis("g1_bipartite", true)
        .hypothesis("k_g2_cohen_macaulay", true)
        .hypothesis("shared_at_most_2", shared <= 2);
    conclude(v, [("k[G1]", sa), ("k[G2]", sb)], sr, opts.multiplicity_one)
}

/// Three-way verdict for `Stab(G1 + G2)`.
pub fn classify_stable_join(g1: &Graph, g2: &Graph, opts: &GraphOptions) -> Result<Verdict, GraphError> {
    let g = join(g1, g2)?;
    if opts.assume_cm.is_none() && opts.assume_normal.is_none() {
        return Err(GraphError::AssumptionMissing("Stab(G1), Stab(G2)".into()));
    }
    let sa = stable_ring_stats(g1, opts)?;
    let sb = stable_ring_stats(g2, opts)?;
    let sr = stable_ring_stats(&g, opts)?;
    let v = Verdict::new(sr.almost_gorenstein, sr.gorenstein, sa.gorenstein && sb.gorenstein)
        .hypothesis("stab_cohen_macaulay", true);
    conclude(v, [("Stab(G1)", sa), ("Stab(G2)", sb)], sr, opts.multiplicity_one)
}

fn conclude(
    mut v: Verdict,
    factors: [(&str, RingStats); 2],
    sr: RingStats,
    mode: MultiplicityOneMode,
) -> Result<Verdict, GraphError> {
    let [(na, sa), (nb, sb)] = factors;
    for (name, s, other) in [(na, &sa, &sb), (nb, &sb, &sa)] {
        if s.e > 1 {
            continue;
        }
        if mode == MultiplicityOneMode::Refuse {
            return Err(GraphError::MultiplicityOne { ring: name.to_string() });
        }
        let other_ag = match other.almost_gorenstein {
            Some(b) => b.to_string(),
            None => "undetermined".to_string(),
        };
        v = v.note(format!(
            "e({name}) = 1: when the combined ring is almost Gorenstein with r(R) <= r(other), the other factor is almost Gorenstein (computed: {other_ag})"
        ));
    }
    v.inequality = classify::main_inequality(sr.delta, sa.e, sb.e, sa.delta, sb.delta).ok();
    let v = v
        .hypothesis("e_A_gt_1", sa.e > 1)
        .hypothesis("e_B_gt_1", sb.e > 1)
        .with_stats("A", sa)
        .with_stats("B", sb)
        .with_stats("R", sr);
    Ok(v.finish())
}

/// Which construction [`verify_split_hilbert`] checks.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum SplitKind {
    /// Edge rings of a clique sum.
    CliqueSum,
    /// Stable-set rings of a join.
    Join,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct SplitReport {
    pub pass: bool,
    pub combined: HPolynomial,
    pub product: HPolynomial,
}

/// Checks `h(combined) = h(G1 ring) * h(G2 ring)`. For clique sums `G1` must
/// be bipartite and share at most one edge with `G2`.
pub fn verify_split_hilbert(g1: &Graph, g2: &Graph, kind: SplitKind, opts: &GraphOptions) -> Result<SplitReport, GraphError> {
    let opts = GraphOptions {
        compute_type: false,
        ..opts.clone()
    };
    let stats = |g: &Graph| match kind {
        SplitKind::CliqueSum => edge_ring_stats(g, &opts),
        SplitKind::Join => stable_ring_stats(g, &opts),
    };
    let combined = match kind {
        SplitKind::CliqueSum => {
            if !g1.is_bipartite() {
                return Err(GraphError::NotBipartite);
            }
            clique_sum(g1, g2)?
        }
        SplitKind::Join => join(g1, g2)?,
    };
    let h = |s: RingStats| s.h.expect("toric rings have h-vectors");
    let (ha, hb, hr) = (h(stats(g1)?), h(stats(g2)?), h(stats(&combined)?));
    let product = ha.product(&hb).map_err(AffineError::from)?;
    Ok(SplitReport {
        pass: hr == product,
        combined: hr,
        product,
    })
}
