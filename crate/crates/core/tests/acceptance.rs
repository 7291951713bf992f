//! Acceptance gate. Runs every criterion, prints one PASS/FAIL line each with
//! its wall time against a pinned limit, and exits non-zero if any fails.
//!
//! Run with `cargo test -p gorlab --test acceptance`.

use std::collections::BTreeSet;
use std::process::ExitCode;
use std::time::{Duration, Instant};

use gorlab::affsgp::{AffineOptions, AffineSemigroup};
use gorlab::classify::{self, InequalityOrdering};
use gorlab::graphs::{self, Graph, GraphOptions, SplitKind};
use gorlab::numsgp::{GluingSpec, NumericalSemigroup};
use gorlab::{HPolynomial, RingStats};
use rand::rngs::StdRng;
use rand::{Rng, SeedableRng};
use rayon::prelude::*;

const LIMIT_CURVES: Duration = Duration::from_secs(5);
const LIMIT_PRODUCT_RULE: Duration = Duration::from_secs(1);
const LIMIT_NUMSGP: Duration = Duration::from_secs(60);
const LIMIT_GLUING: Duration = Duration::from_secs(300);
const LIMIT_EXAMPLES: Duration = Duration::from_secs(5);
const LIMIT_TENSOR: Duration = Duration::from_secs(30);
const LIMIT_LEMMA: Duration = Duration::from_secs(10);
const LIMIT_EDGE: Duration = Duration::from_secs(300);
const LIMIT_STABLE: Duration = Duration::from_secs(900);
const LIMIT_SPLIT: Duration = Duration::from_secs(300);
const LIMIT_INVARIANTS: Duration = Duration::from_secs(5);

const PRODUCT_RULE_PAIRS: usize = 1000;
const PRODUCT_RULE_MAX_DEGREE: usize = 12;
const PRODUCT_RULE_COEFF: i64 = 9;
const PRODUCT_RULE_SEED: u64 = 0x5eed_2024;
const SEMIGROUP_MAX_FROBENIUS: u64 = 12;
const GLUING_MAX_X: u64 = 12;
const LEMMA_E_MAX: i64 = 8;
const LEMMA_GAMMA_MAX: i64 = 6;
const SPLIT_WINDOW: usize = 3;

type Outcome = Result<String, String>;

fn check(cond: bool, msg: impl FnOnce() -> String) -> Result<(), String> {
    if cond {
        Ok(())
    } else {
        Err(msg())
    }
}

fn ensure_eq<T: PartialEq + std::fmt::Debug>(label: &str, got: T, want: T) -> Result<(), String> {
    check(got == want, || format!("{label}: got {got:?}, want {want:?}"))
}

#[derive(Default)]
struct Gate {
    failures: usize,
    stats: Vec<(String, RingStats)>,
}

impl Gate {
    fn run(&mut self, id: u32, title: &str, limit: Duration, f: impl FnOnce(&mut Vec<(String, RingStats)>) -> Outcome) {
        let start = Instant::now();
        let result = f(&mut self.stats);
        let elapsed = start.elapsed();
        let (pass, detail) = match result {
            Ok(d) if elapsed <= limit => (true, d),
            Ok(d) => (false, format!("{d}; over time limit")),
            Err(e) => (false, e),
        };
        if !pass {
            self.failures += 1;
        }
        println!(
            "{} criterion {id:>2} {title:<34} {:>9.3}s / {:>4}s  {detail}",
            if pass { "PASS" } else { "FAIL" },
            elapsed.as_secs_f64(),
            limit.as_secs()
        );
    }
}

// ---------------------------------------------------------------------------
// Independent oracles
// ---------------------------------------------------------------------------

/// Hilbert function of `k[s t^b : b in exps]` by iterated sumsets of integers.
fn curve_hilbert_function(exps: &[i64], degree: usize) -> Vec<u64> {
    let mut layer: BTreeSet<i64> = BTreeSet::from([0]);
    let mut out = vec![1];
    for _ in 0..degree {
        layer = layer.iter().flat_map(|p| exps.iter().map(move |b| p + b)).collect();
        out.push(layer.len() as u64);
    }
    out
}

/// h-vector from a Hilbert-function prefix of a ring of dimension 2, using
/// the second difference and trusting the last `tail` values to be zero.
fn second_difference(series: &[u64], tail: usize) -> Option<Vec<i64>> {
    let s: Vec<i64> = series.iter().map(|&x| x as i64).collect();
    let diff = |v: &[i64]| -> Vec<i64> { (0..v.len()).map(|i| v[i] - if i > 0 { v[i - 1] } else { 0 }).collect() };
    let mut hv = diff(&diff(&s));
    if hv.len() < tail || hv[hv.len() - tail..].iter().any(|&c| c != 0) {
        return None;
    }
    while hv.last() == Some(&0) {
        hv.pop();
    }
    Some(hv)
}

/// Membership sieve for a numerical semigroup up to `bound`.
struct Sieve {
    member: Vec<bool>,
}

impl Sieve {
    fn new(gens: &[u64], bound: usize) -> Self {
        let mut member = vec![false; bound + 1];
        member[0] = true;
        for n in 1..=bound {
            member[n] = gens.iter().any(|&g| g as usize <= n && member[n - g as usize]);
        }
        Self { member }
    }

    fn frobenius(&self) -> i64 {
        self.member.iter().rposition(|&m| !m).map_or(-1, |p| p as i64)
    }

    fn has(&self, x: i64) -> bool {
        x >= 0 && (x as usize >= self.member.len() || self.member[x as usize])
    }

    fn gaps(&self) -> Vec<i64> {
        (1..=self.frobenius()).filter(|&x| !self.has(x)).collect()
    }

    /// Integers `x` outside the semigroup with `x + s` inside for every
    /// nonzero element `s`; only `-1` and the gaps can qualify.
    fn pseudo_frobenius(&self) -> Vec<i64> {
        let f = self.frobenius();
        let elems: Vec<i64> = (1..=f + 1).filter(|&x| self.has(x)).collect();
        std::iter::once(-1)
            .chain(self.gaps())
            .filter(|&x| elems.iter().all(|&s| self.has(x + s)))
            .collect()
    }

    /// `|K \ H|` for the standard canonical ideal `K = {x : F - x not in H}`.
    fn delta(&self) -> u64 {
        let f = self.frobenius();
        self.gaps().iter().filter(|&&g| !self.has(f - g)).count() as u64
    }
}

/// All numerical semigroups with Frobenius number at most `max_f`, by
/// searching gap sets inside `[1, max_f]` that leave an additively closed
/// complement. Each is returned as the list of its elements up to
/// `2 max_f + 1`, which contains a generating set.
fn semigroups_by_gap_sets(max_f: u64) -> Vec<Vec<u64>> {
    let n = max_f as usize;
    let mut out = Vec::new();
    for mask in 0u32..(1 << n) {
        let gap = |x: usize| x >= 1 && x <= n && mask & (1 << (x - 1)) != 0;
        let closed = (1..=n).all(|a| gap(a) || (a..=n - a).all(|b| gap(b) || !gap(a + b)));
        if closed {
            out.push((1..=2 * n as u64 + 1).filter(|&x| !gap(x as usize)).collect());
        }
    }
    out
}

// ---------------------------------------------------------------------------
// Criteria
// ---------------------------------------------------------------------------

fn curve_triple(stats: &mut Vec<(String, RingStats)>) -> Outcome {
    let rings: [(&str, &[i64], &[i64]); 3] = [
        ("A", &[0, 1, 2], &[1, 1]),
        ("B", &[0, 9, 10, 13], &[1, 2, 3, 4, 2, 1]),
        ("R", &[0, 18, 21, 23, 26], &[1, 3, 5, 7, 6, 3, 1]),
    ];
    let opts = AffineOptions::default().with_type();
    let mut computed = Vec::new();
    for (name, exps, want) in rings {
        let s = AffineSemigroup::monomial_curve(exps).map_err(|e| e.to_string())?.ring_stats(&opts).map_err(|e| e.to_string())?;
        let got = s.h.clone().ok_or("no h-vector")?;
        ensure_eq(&format!("h({name})"), got.coeffs(), want)?;
        let oracle = second_difference(&curve_hilbert_function(exps, want.len() + 8), 8).ok_or("oracle prefix too short")?;
        ensure_eq(&format!("oracle h({name})"), oracle.as_slice(), want)?;
        stats.push((format!("curve {name}"), s.clone()));
        computed.push(s);
    }
    let [a, b, r] = <[RingStats; 3]>::try_from(computed).expect("three rings");
    ensure_eq("deltas", (a.delta, b.delta, r.delta), (0, 1, 2))?;
    ensure_eq("delta_R = e_B delta_A + e_A delta_B", r.delta, b.e * a.delta + a.e * b.delta)?;
    ensure_eq("types", (a.type_r, b.type_r, r.type_r), (Some(1), Some(2), Some(3)))?;
    let v = classify::classify_triple(&a, &b, &r).map_err(|e| e.to_string())?;
    ensure_eq("inequality", v.inequality, Some(InequalityOrdering::Eq))?;
    ensure_eq("conditions", (v.cond1, v.cond2, v.cond3), (Some(false), false, false))?;
    ensure_eq("equivalence", v.equivalence_ok, Some(true))?;
    check(v.notes.iter().any(|n| n.contains("r(R) = 3 > 2 = r(A) r(B)")), || format!("missing type note in {:?}", v.notes))?;
    Ok("h (1,1), (1,2,3,4,2,1), (1,3,5,7,6,3,1); delta 0,1,2; r(R)=3 > 2".into())
}

fn product_rule(_: &mut Vec<(String, RingStats)>) -> Outcome {
    let mut rng = StdRng::seed_from_u64(PRODUCT_RULE_SEED);
    let random = |rng: &mut StdRng| loop {
        let deg = rng.gen_range(0..=PRODUCT_RULE_MAX_DEGREE);
        let c: Vec<i64> = (0..=deg).map(|_| rng.gen_range(-PRODUCT_RULE_COEFF..=PRODUCT_RULE_COEFF)).collect();
        if let Ok(p) = HPolynomial::new(c) {
            return p;
        }
    };
    for i in 0..PRODUCT_RULE_PAIRS {
        let (p, q) = (random(&mut rng), random(&mut rng));
        let pq = p.product(&q).map_err(|e| e.to_string())?;
        let lhs = pq.delta_value().map_err(|e| e.to_string())?;
        let rhs = p.e_value().unwrap() * q.delta_value().unwrap() + q.e_value().unwrap() * p.delta_value().unwrap();
        ensure_eq(&format!("pair {i}: {p:?} * {q:?}"), lhs, rhs)?;
    }
    Ok(format!("{PRODUCT_RULE_PAIRS} pairs, seed {PRODUCT_RULE_SEED:#x}"))
}

fn numerical_suite(stats: &mut Vec<(String, RingStats)>) -> Outcome {
    let all = semigroups_by_gap_sets(SEMIGROUP_MAX_FROBENIUS);
    for elems in &all {
        let hs = NumericalSemigroup::from_generators(elems).map_err(|e| format!("{elems:?}: {e}"))?;
        let oracle = Sieve::new(elems, 4 * SEMIGROUP_MAX_FROBENIUS as usize + 4);
        let m = hs.multiplicity();
        let ap = hs.apery(m).map_err(|e| e.to_string())?;
        ensure_eq(&format!("{hs} |Ap|"), ap.len() as u64, m)?;
        ensure_eq(&format!("{hs} F"), hs.frobenius(), oracle.frobenius())?;
        ensure_eq(&format!("{hs} PF"), hs.pseudo_frobenius(), oracle.pseudo_frobenius())?;
        let t = hs.type_t();
        if m >= 2 {
            check((t as u64) < m, || format!("{hs}: type {t} not below multiplicity {m}"))?;
        }
        let sym = hs.is_symmetric();
        ensure_eq(&format!("{hs} symmetric vs t = 1"), sym, t == 1)?;
        ensure_eq(&format!("{hs} symmetric vs delta = 0"), sym, hs.delta() == 0)?;
        ensure_eq(&format!("{hs} delta methods"), hs.delta(), hs.delta_by_gap_pairing())?;
        ensure_eq(&format!("{hs} delta oracle"), hs.delta(), oracle.delta())?;
        stats.push((format!("numsgp {hs}"), hs.ring_stats()));
    }
    Ok(format!("{} semigroups with F <= {SEMIGROUP_MAX_FROBENIUS}", all.len()))
}

fn gluing_suite(_: &mut Vec<(String, RingStats)>) -> Outcome {
    let all: Vec<NumericalSemigroup> = semigroups_by_gap_sets(SEMIGROUP_MAX_FROBENIUS)
        .iter()
        .map(|e| NumericalSemigroup::from_generators(e).unwrap())
        .collect();
    let candidates = |h: &NumericalSemigroup| -> Vec<u64> {
        (2..=GLUING_MAX_X)
            .filter(|&x| h.contains(x as i64) && !h.minimal_generators().contains(&x))
            .collect()
    };
    let sides: Vec<(usize, Vec<u64>)> = all.iter().enumerate().map(|(i, h)| (i, candidates(h))).collect();
    let checked: Result<usize, String> = sides
        .par_iter()
        .map(|(i, xs1)| {
            let mut count = 0;
            for x1 in xs1 {
                for (j, xs2) in &sides {
                    for x2 in xs2 {
                        let Ok(spec) = GluingSpec::new(all[*i].clone(), *x1, all[*j].clone(), *x2) else {
                            continue;
                        };
                        let label = || format!("glue({}, {x1}; {}, {x2})", spec.h1, spec.h2);
                        let nari = spec.verify_nari();
                        check(nari.all_pass(), || format!("{}: {nari:?}", label()))?;
                        let glued = spec.glue();
                        let want = x2 * spec.h1.delta() + x1 * spec.h2.delta();
                        ensure_eq(&format!("{} delta", label()), glued.delta(), want)?;
                        let v = spec.classify();
                        check(v.cond1 == Some(v.cond2) && v.cond2 == v.cond3, || format!("{}: {v:?}", label()))?;
                        count += 1;
                    }
                }
            }
            Ok(count)
        })
        .sum();
    let n = checked?;
    check(n > 0, || "no admissible gluings".into())?;
    Ok(format!("{n} admissible gluings, x <= {GLUING_MAX_X}"))
}

fn named_examples(stats: &mut Vec<(String, RingStats)>) -> Outcome {
    let h = NumericalSemigroup::from_generators(&[3, 5, 7]).map_err(|e| e.to_string())?;
    let oracle = Sieve::new(&[3, 5, 7], 64);
    ensure_eq("<3,5,7> oracle (F, PF, delta)", (oracle.frobenius(), oracle.pseudo_frobenius(), oracle.delta()), (4, vec![2, 4], 1))?;
    ensure_eq("<3,5,7> (t, delta)", (h.type_t(), h.delta()), (2, 1))?;
    check(h.is_almost_gorenstein() && !h.is_symmetric(), || "<3,5,7> should be almost Gorenstein, not symmetric".into())?;

    let spec = GluingSpec::new(h.clone(), 6, NumericalSemigroup::from_generators(&[2, 3]).unwrap(), 5).map_err(|e| e.to_string())?;
    let glued = spec.glue();
    ensure_eq("glued generators", glued.minimal_generators(), &[12, 15, 18, 25, 35])?;
    let oracle = Sieve::new(&[15, 25, 35, 12, 18], 400);
    ensure_eq("glued oracle (t, delta)", (oracle.pseudo_frobenius().len(), oracle.delta()), (2, 5))?;
    ensure_eq("glued (t, delta)", (glued.type_t(), glued.delta()), (2, 5))?;
    check(!glued.is_almost_gorenstein() && !glued.is_symmetric(), || "glued semigroup should be neither".into())?;
    stats.push(("numsgp <3,5,7>".into(), h.ring_stats()));
    stats.push(("numsgp glued".into(), glued.ring_stats()));
    Ok("<3,5,7>: delta 1 = t - 1; <12,15,18,25,35>: delta 5, t 2".into())
}

fn tensor_corpus(stats: &mut Vec<(String, RingStats)>) -> Outcome {
    let curve = |e: &[i64]| AffineSemigroup::monomial_curve(e).unwrap();
    let gens = |g: Vec<Vec<i64>>| AffineSemigroup::new(g).unwrap();
    let polynomial2 = gens(vec![vec![1, 0, 0], vec![0, 1, 0], vec![0, 0, 1]]);
    let veronese = gens(vec![vec![2, 0, 0], vec![1, 1, 0], vec![0, 2, 0], vec![1, 0, 1], vec![0, 1, 1], vec![0, 0, 2]]);
    let c4 = graphs::cycle(4).unwrap().edge_semigroup().unwrap();
    let pairs: Vec<(&str, AffineSemigroup, AffineSemigroup)> = vec![
        ("A x A", curve(&[0, 1, 2]), curve(&[0, 1, 2])),
        ("A x B", curve(&[0, 1, 2]), curve(&[0, 9, 10, 13])),
        ("A x R", curve(&[0, 1, 2]), curve(&[0, 18, 21, 23, 26])),
        ("B x B", curve(&[0, 9, 10, 13]), curve(&[0, 9, 10, 13])),
        ("cubic x A", curve(&[0, 1, 2, 3]), curve(&[0, 1, 2])),
        ("cubic x B", curve(&[0, 1, 2, 3]), curve(&[0, 9, 10, 13])),
        ("gapped quartic x A", curve(&[0, 1, 3, 4]), curve(&[0, 1, 2])),
        ("C4 x A", c4.clone(), curve(&[0, 1, 2])),
        ("Veronese x B", veronese, curve(&[0, 9, 10, 13])),
        ("k[x,y,z] x C4", polynomial2, c4),
    ];
    let opts = AffineOptions::default();
    for (name, s1, s2) in &pairs {
        let st = |s: &AffineSemigroup| s.ring_stats(&opts).map_err(|e| format!("{name}: {e}"));
        let (a, b, t) = (st(s1)?, st(s2)?, st(&s1.tensor(s2))?);
        let (ha, hb, ht) = (a.h.clone().unwrap(), b.h.clone().unwrap(), t.h.clone().unwrap());
        ensure_eq(&format!("{name}: h(tensor)"), ht, ha.product(&hb).unwrap())?;
        ensure_eq(&format!("{name}: dim(tensor)"), t.dim, a.dim + b.dim)?;
        for (side, s, base) in [("left", s1, &a), ("right", s2, &b)] {
            let f = st(&s.free_extension())?;
            ensure_eq(&format!("{name} {side}: free extension"), (&f.h, f.delta, f.gorenstein, f.dim), (&base.h, base.delta, base.gorenstein, base.dim + 1))?;
            stats.push((format!("{name} {side} free extension"), f));
        }
        stats.push((format!("{name} tensor"), t));
        stats.push((format!("{name} left"), a));
        stats.push((format!("{name} right"), b));
    }
    Ok(format!("{} pairs", pairs.len()))
}

fn lemma_net(_: &mut Vec<(String, RingStats)>) -> Outcome {
    let admitted = classify::lemma_grid_search(LEMMA_E_MAX, LEMMA_GAMMA_MAX).map_err(|e| e.to_string())?;
    check(admitted > 0, || "grid admitted no tuples".into())?;
    Ok(format!("e <= {LEMMA_E_MAX}, gamma <= {LEMMA_GAMMA_MAX}: {admitted} admitted tuples, no counterexample"))
}

fn edge_corpus(stats: &mut Vec<(String, RingStats)>) -> Outcome {
    let opts = GraphOptions::default();
    let run = |name: &str, g: Graph, stats: &mut Vec<(String, RingStats)>| -> Result<RingStats, String> {
        let s = graphs::edge_ring_stats(&g, &opts).map_err(|e| format!("{name}: {e}"))?;
        stats.push((format!("edge ring {name}"), s.clone()));
        Ok(s)
    };
    for n in [4, 6] {
        let s = run(&format!("C{n}"), graphs::cycle(n).unwrap(), stats)?;
        check(s.h.as_ref().unwrap().is_symmetric() && s.gorenstein, || format!("C{n}: {s:?}"))?;
    }
    let g3 = run("g3", graphs::bouquet(&[], &[3]).unwrap(), stats)?;
    let r = g3.type_r.ok_or("friendship graph: no type")?;
    check(r > 1 && g3.delta == r as i64 - 1, || format!("g3: type {r}, delta {}", g3.delta))?;
    ensure_eq("g3 (gorenstein, almost_gorenstein)", (g3.gorenstein, g3.almost_gorenstein), (false, Some(true)))?;
    for r in [[1usize], [2]] {
        let s = run(&format!("bouquet r={r:?}"), graphs::bouquet(&[], &r).unwrap(), stats)?;
        ensure_eq(&format!("bouquet r={r:?} type"), s.type_r, Some(1))?;
    }
    Ok(format!("C4, C6 Gorenstein; g3 type {r}, delta {}; r=(1),(2) Gorenstein", g3.delta))
}

fn stable_corpus(stats: &mut Vec<(String, RingStats)>) -> Outcome {
    let opts = GraphOptions {
        assume_normal: Some("free sum of Stab(C_m) with a unit cube".into()),
        ..GraphOptions::default()
    };
    let mut summary = Vec::new();
    for (m, n, gor, ag) in [(4, 1, true, true), (5, 1, true, true), (6, 1, true, true), (7, 1, false, true), (7, 2, false, false)] {
        let name = format!("Stab(C{m}+K{n})");
        let s = graphs::stable_ring_stats(&graphs::cone_graph(m, n).unwrap(), &opts).map_err(|e| format!("{name}: {e}"))?;
        ensure_eq(&format!("{name} (gorenstein, almost_gorenstein)"), (s.gorenstein, s.almost_gorenstein), (gor, Some(ag)))?;
        summary.push(format!("{name} r={}", s.type_r.unwrap()));
        stats.push((name, s));
    }
    Ok(summary.join(", "))
}

fn splits(stats: &mut Vec<(String, RingStats)>) -> Outcome {
    let opts = GraphOptions {
        window: SPLIT_WINDOW,
        ..GraphOptions::default()
    };
    let c4 = graphs::cycle(4).unwrap();
    let along_edge = Graph::from_edge_list("1 2\n2 a\na b\nb 1\n").unwrap();
    let at_vertex = Graph::from_edge_list("1 a\na b\nb 1\n").unwrap();
    let c5 = graphs::cycle(5).unwrap();
    let cases = [
        ("C4 # C4 along an edge", &c4, along_edge, SplitKind::CliqueSum),
        ("C4 # K3 at a vertex", &c4, at_vertex, SplitKind::CliqueSum),
        ("C5 + K1", &c5, graphs::empty_graph(1).unwrap().relabeled("k"), SplitKind::Join),
        ("C5 + C5", &c5, c5.relabeled("b"), SplitKind::Join),
    ];
    let mut summary = Vec::new();
    for (name, g1, g2, kind) in cases {
        let r = graphs::verify_split_hilbert(g1, &g2, kind, &opts).map_err(|e| format!("{name}: {e}"))?;
        check(r.pass, || format!("{name}: combined {:?} vs product {:?}", r.combined, r.product))?;
        summary.push(format!("{name} {:?}", r.combined.coeffs()));
    }
    let s = graphs::stable_ring_stats(&graphs::join(&c5, &c5.relabeled("b")).unwrap(), &opts).map_err(|e| e.to_string())?;
    stats.push(("Stab(C5+C5)".into(), s));
    Ok(summary.join("; "))
}

fn invariants(stats: &[(String, RingStats)]) -> Outcome {
    let mut bad = Vec::new();
    for (name, s) in stats {
        for v in s.invariant_violations() {
            bad.push(format!("{name}: {v}"));
        }
        if let Some(hv) = &s.h {
            let c = hv.cokernel_numerator().map_err(|e| e.to_string())?;
            if c.iter().sum::<i64>() != s.delta {
                bad.push(format!("{name}: cokernel numerator sums to {} not {}", c.iter().sum::<i64>(), s.delta));
            }
        }
        if let Some(r) = s.type_r {
            if s.e >= 2 && r as i64 >= s.e {
                bad.push(format!("{name}: type {r} >= e {}", s.e));
            }
        }
    }
    if bad.is_empty() {
        Ok(format!("{} profiles consistent", stats.len()))
    } else {
        Err(bad.join("; "))
    }
}

fn main() -> ExitCode {
    let mut gate = Gate::default();
    gate.run(1, "monomial-curve triple", LIMIT_CURVES, curve_triple);
    gate.run(2, "product rule", LIMIT_PRODUCT_RULE, product_rule);
    gate.run(3, "numerical semigroups F <= 12", LIMIT_NUMSGP, numerical_suite);
    gate.run(4, "gluings", LIMIT_GLUING, gluing_suite);
    gate.run(5, "named semigroup examples", LIMIT_EXAMPLES, named_examples);
    gate.run(6, "tensor and free extension", LIMIT_TENSOR, tensor_corpus);
    gate.run(7, "lemma falsification net", LIMIT_LEMMA, lemma_net);
    gate.run(8, "edge-ring corpus", LIMIT_EDGE, edge_corpus);
    gate.run(9, "stable-set corpus", LIMIT_STABLE, stable_corpus);
    gate.run(10, "splitting consequence", LIMIT_SPLIT, splits);
    let collected = std::mem::take(&mut gate.stats);
    gate.run(11, "structural invariants", LIMIT_INVARIANTS, |_| invariants(&collected));
    println!("acceptance: {} of 11 criteria failed", gate.failures);
    if gate.failures == 0 {
        ExitCode::SUCCESS
    } else {
        ExitCode::FAILURE
    }
}
