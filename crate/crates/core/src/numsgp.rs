//! Numerical semigroups: membership, Apéry sets, Frobenius and
//! pseudo-Frobenius numbers, type, symmetry, the canonical-module `delta`,
//! and gluing.
//!
//! Gluing convention: for `x1 in H1 \ G(H1)` and `x2 in H2 \ G(H2)` with
//! `gcd(x1, x2) = 1`, the gluing is `<x2 * H1, x1 * H2>`, so `H1` is scaled by
//! the element taken from `H2` and vice versa.

use std::collections::BinaryHeap;
use std::cmp::Reverse;
use std::fmt;

use num_integer::Integer;
use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::classify::{self, InequalityOrdering, Verdict};
use crate::hpoly::SeriesPrefix;
use crate::stats::RingStats;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum SemigroupError {
    #[error("generators must be a nonempty set of positive integers")]
    InvalidGenerators,
    #[error("gcd of generators is {0}, not 1")]
    GcdNotOne(u64),
    #[error("{0} is zero or not an element of the semigroup")]
    NotInSemigroup(u64),
    #[error("truncation degree {given} is below F(H) + s = {needed}")]
    TruncationTooSmall { given: usize, needed: usize },
    #[error("not gluable: {0}")]
    NotGluable(GluingDefect),
    #[error("cannot parse generators: {0}")]
    Parse(String),
}

/// Which gluing precondition fails.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum GluingDefect {
    X1MinimalGenerator,
    X1NotInH1,
    X2MinimalGenerator,
    X2NotInH2,
    GcdNotOne,
}

impl fmt::Display for GluingDefect {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Self::X1MinimalGenerator => "x1 is a minimal generator of H1",
            Self::X1NotInH1 => "x1 is not in H1",
            Self::X2MinimalGenerator => "x2 is a minimal generator of H2",
            Self::X2NotInH2 => "x2 is not in H2",
            Self::GcdNotOne => "gcd(x1, x2) != 1",
        })
    }
}

/// A co-finite submonoid of the naturals.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct NumericalSemigroup {
    generators: Vec<u64>,
    minimal: Vec<u64>,
    frobenius: i64,
    member: Vec<bool>,
}

impl NumericalSemigroup {
    /// Builds the semigroup generated by `gens`.
    ///
    /// The least element of each residue class modulo the smallest generator
    /// is found by a shortest-path search; membership up to
    /// `F(H) + max(gens)` follows from it.
    pub fn from_generators(gens: &[u64]) -> Result<Self, SemigroupError> {
        let mut generators = gens.to_vec();
        generators.sort_unstable();
        generators.dedup();
        if generators.is_empty() || generators[0] == 0 {
            return Err(SemigroupError::InvalidGenerators);
        }
        let g = generators.iter().fold(0u64, |g, &x| g.gcd(&x));
        if g != 1 {
            return Err(SemigroupError::GcdNotOne(g));
        }
        let m = generators[0] as usize;
        let least = least_in_residue_classes(&generators, m);
        let frobenius = *least.iter().max().expect("m >= 1") as i64 - m as i64;
        let max_gen = *generators.last().expect("nonempty") as usize;
        let len = (frobenius + 1).max(0) as usize + max_gen + 1;
        let member: Vec<bool> = (0..len).map(|n| n as u64 >= least[n % m]).collect();

        let minimal = generators
            .iter()
            .copied()
            .filter(|&g| !(1..g).any(|k| member[k as usize] && member[(g - k) as usize]))
            .collect();
        Ok(Self {
            generators,
            minimal,
            frobenius,
            member,
        })
    }

    pub fn generators(&self) -> &[u64] {
        &self.generators
    }

    /// The minimal generating system `G(H)`.
    pub fn minimal_generators(&self) -> &[u64] {
        &self.minimal
    }

    /// `F(H)`; `-1` for the naturals.
    pub fn frobenius(&self) -> i64 {
        self.frobenius
    }

    /// `mult(H)`, the least nonzero element.
    pub fn multiplicity(&self) -> u64 {
        self.minimal[0]
    }

    /// `emb(H) = |G(H)|`.
    pub fn embedding_dimension(&self) -> usize {
        self.minimal.len()
    }

    pub fn contains(&self, n: i64) -> bool {
        if n < 0 {
            false
        } else if n > self.frobenius {
            true
        } else {
            self.member[n as usize]
        }
    }

    pub fn gaps(&self) -> Vec<u64> {
        (1..=self.frobenius.max(0)).filter(|&n| !self.contains(n)).map(|n| n as u64).collect()
    }

    /// `Ap(H, s) = {a in H : a - s not in H}`, sorted.
    pub fn apery(&self, s: u64) -> Result<Vec<u64>, SemigroupError> {
        if s == 0 || !self.contains(s as i64) {
            return Err(SemigroupError::NotInSemigroup(s));
        }
        let mut least: Vec<Option<u64>> = vec![None; s as usize];
        let mut found = 0;
        let mut n = 0u64;
        while found < s {
            let slot = &mut least[(n % s) as usize];
            if slot.is_none() && self.contains(n as i64) {
                *slot = Some(n);
                found += 1;
            }
            n += 1;
        }
        let mut out: Vec<u64> = least.into_iter().flatten().collect();
        out.sort_unstable();
        Ok(out)
    }

    /// `PF(H)`: integers `x` outside `H` with `x + h in H` for every nonzero
    /// `h in H`. For the naturals this is `{-1}`.
    pub fn pseudo_frobenius(&self) -> Vec<i64> {
        (-1..=self.frobenius)
            .filter(|&x| !self.contains(x))
            .filter(|&x| self.minimal.iter().all(|&g| self.contains(x + g as i64)))
            .collect()
    }

    /// `t(H) = |PF(H)|`, the Cohen-Macaulay type of `k[H]`.
    pub fn type_t(&self) -> usize {
        self.pseudo_frobenius().len()
    }

    /// `z in H` or `F(H) - z in H` for every integer `z`.
    pub fn is_symmetric(&self) -> bool {
        let f = self.frobenius;
        let sym = (0..=f).all(|z| self.contains(z) || self.contains(f - z));
        debug_assert_eq!(sym, self.type_t() == 1);
        sym
    }

    /// Numerator `sum_{a in Ap(H,s)} t^a` of `H(k[H], t) (1 - t^s)`.
    pub fn hilbert_numerator(&self, s: u64) -> Result<Vec<u64>, SemigroupError> {
        let ap = self.apery(s)?;
        let mut coeffs = vec![0u64; *ap.last().expect("0 is in Ap") as usize + 1];
        for a in ap {
            coeffs[a as usize] = 1;
        }
        Ok(coeffs)
    }

    /// Series of `omega(-a)` with `a = F(H)` up to degree `degree`: the
    /// coefficient of `t^n` is 1 exactly when `n = F(H) + s - a + k s` for
    /// some `a in Ap(H, s)` and `k >= 0`.
    pub fn omega_series(&self, s: u64, degree: usize) -> Result<SeriesPrefix, SemigroupError> {
        let ap = self.apery(s)?;
        let top = self.frobenius + s as i64;
        if (degree as i64) < top {
            return Err(SemigroupError::TruncationTooSmall {
                given: degree,
                needed: top as usize,
            });
        }
        let mut coeffs = vec![0u64; degree + 1];
        for a in ap {
            let mut n = top - a as i64;
            while n <= degree as i64 {
                if n >= 0 {
                    coeffs[n as usize] = 1;
                }
                n += s as i64;
            }
        }
        Ok(SeriesPrefix::new(coeffs))
    }

    /// `delta(k[H])`: the value at 1 of `H(omega(-a), t) - H(k[H], t)`.
    pub fn delta(&self) -> u64 {
        let f = self.frobenius;
        if f < 0 {
            return 0;
        }
        let m = self.multiplicity();
        let omega = self
            .omega_series(m, (f + m as i64) as usize)
            .expect("multiplicity is a nonzero element and the degree is large enough");
        let diff: i64 = (0..=f)
            .map(|n| omega.coeffs()[n as usize] as i64 - self.contains(n) as i64)
            .sum();
        debug_assert_eq!(diff as u64, self.delta_by_gap_pairing());
        diff as u64
    }

    /// `#{0 <= n <= F(H) : n not in H and F(H) - n not in H}`.
    pub fn delta_by_gap_pairing(&self) -> u64 {
        let f = self.frobenius;
        (0..=f).filter(|&n| !self.contains(n) && !self.contains(f - n)).count() as u64
    }

    /// `delta = t(H) - 1`.
    pub fn is_almost_gorenstein(&self) -> bool {
        self.delta() as i64 == self.type_t() as i64 - 1
    }

    /// The numeric profile of `k[H]` under the semigroup grading.
    pub fn ring_stats(&self) -> RingStats {
        let t = self.type_t() as u64;
        let delta = self.delta() as i64;
        RingStats {
            dim: 1,
            h: None,
            e: self.multiplicity() as i64,
            a: self.frobenius,
            delta,
            type_r: Some(t),
            omega_degrees: None,
            gorenstein: self.is_symmetric(),
            almost_gorenstein: Some(delta == t as i64 - 1),
            star: true,
            provenance: vec![format!("numerical semigroup <{}>", join(&self.minimal))],
        }
    }
}

impl fmt::Display for NumericalSemigroup {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "<{}>", join(&self.minimal))
    }
}

impl std::str::FromStr for NumericalSemigroup {
    type Err = SemigroupError;

    /// Parses comma-separated generators such as `3,5,7`.
    fn from_str(s: &str) -> Result<Self, Self::Err> {
        let gens = s
            .split(',')
            .map(|t| t.trim().parse::<u64>().map_err(|e| SemigroupError::Parse(format!("{t:?}: {e}"))))
            .collect::<Result<Vec<_>, _>>()?;
        Self::from_generators(&gens)
    }
}

fn join(v: &[u64]) -> String {
    v.iter().map(u64::to_string).collect::<Vec<_>>().join(",")
}

/// Least element of `<gens>` in each residue class modulo `m`.
fn least_in_residue_classes(gens: &[u64], m: usize) -> Vec<u64> {
    let mut dist = vec![u64::MAX; m];
    dist[0] = 0;
    let mut heap = BinaryHeap::from([Reverse((0u64, 0usize))]);
    while let Some(Reverse((d, r))) = heap.pop() {
        if d > dist[r] {
            continue;
        }
        for &g in gens {
            let nd = d + g;
            let nr = (r + g as usize) % m;
            if nd < dist[nr] {
                dist[nr] = nd;
                heap.push(Reverse((nd, nr)));
            }
        }
    }
    dist
}

/// A validated gluing datum.
#[derive(Debug, Clone)]
pub struct GluingSpec {
    pub h1: NumericalSemigroup,
    pub x1: u64,
    pub h2: NumericalSemigroup,
    pub x2: u64,
}

/// Pass/fail per identity of the gluing lemma.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct NariReport {
    pub apery_product: bool,
    pub pseudo_frobenius_affine: bool,
    pub frobenius_sum: bool,
    pub type_product: bool,
}

impl NariReport {
    pub fn all_pass(&self) -> bool {
        self.apery_product && self.pseudo_frobenius_affine && self.frobenius_sum && self.type_product
    }
}

impl GluingSpec {
    pub fn new(h1: NumericalSemigroup, x1: u64, h2: NumericalSemigroup, x2: u64) -> Result<Self, SemigroupError> {
        use GluingDefect::*;
        let defect = if x1 == 0 || !h1.contains(x1 as i64) {
            Some(X1NotInH1)
        } else if h1.minimal.contains(&x1) {
            Some(X1MinimalGenerator)
        } else if x2 == 0 || !h2.contains(x2 as i64) {
            Some(X2NotInH2)
        } else if h2.minimal.contains(&x2) {
            Some(X2MinimalGenerator)
        } else if x1.gcd(&x2) != 1 {
            Some(GcdNotOne)
        } else {
            None
        };
        match defect {
            Some(d) => Err(SemigroupError::NotGluable(d)),
            None => Ok(Self { h1, x1, h2, x2 }),
        }
    }

    /// `<x2 * G(H1), x1 * G(H2)>`.
    pub fn glue(&self) -> NumericalSemigroup {
        let gens: Vec<u64> = self
            .h1
            .minimal
            .iter()
            .map(|g| g * self.x2)
            .chain(self.h2.minimal.iter().map(|g| g * self.x1))
            .collect();
        NumericalSemigroup::from_generators(&gens).expect("gcd(x1, x2) = 1 makes the gluing co-finite")
    }

    /// Recomputes Apéry set, pseudo-Frobenius numbers, Frobenius number and
    /// type on the glued semigroup and compares with the product formulas.
    pub fn verify_nari(&self) -> NariReport {
        let h = self.glue();
        let (x1, x2) = (self.x1, self.x2);

        let ap1 = self.h1.apery(x1).expect("x1 in H1");
        let ap2 = self.h2.apery(x2).expect("x2 in H2");
        let mut predicted_ap: Vec<u64> = ap1
            .iter()
            .flat_map(|&a| ap2.iter().map(move |&b| x2 * a + x1 * b))
            .collect();
        predicted_ap.sort_unstable();
        let apery_product = h.apery(x1 * x2).map(|ap| ap == predicted_ap).unwrap_or(false);

        let pf1 = self.h1.pseudo_frobenius();
        let pf2 = self.h2.pseudo_frobenius();
        let (sx1, sx2) = (x1 as i64, x2 as i64);
        let mut predicted_pf: Vec<i64> = pf1
            .iter()
            .flat_map(|&f| pf2.iter().map(move |&g| sx2 * f + sx1 * g + sx1 * sx2))
            .collect();
        predicted_pf.sort_unstable();
        predicted_pf.dedup();
        let pf = h.pseudo_frobenius();

        NariReport {
            apery_product,
            pseudo_frobenius_affine: pf == predicted_pf,
            frobenius_sum: h.frobenius() == sx2 * self.h1.frobenius() + sx1 * self.h2.frobenius() + sx1 * sx2,
            type_product: pf.len() == pf1.len() * pf2.len(),
        }
    }

    /// Evaluates `k[H]` almost Gorenstein, `k[H]` Gorenstein and
    /// `k[H1], k[H2]` Gorenstein independently and checks they agree.
    pub fn classify(&self) -> Verdict {
        let h = self.glue();
        let (sa, sb, sr) = (self.h1.ring_stats(), self.h2.ring_stats(), h.ring_stats());
        let ineq = classify::main_inequality(sr.delta, sa.e, sb.e, sa.delta, sb.delta)
            .expect("desk-scale values");
        let delta_formula = sr.delta == self.x2 as i64 * sa.delta + self.x1 as i64 * sb.delta;

        let mut v = Verdict::new(
            Some(h.is_almost_gorenstein()),
            h.is_symmetric(),
            self.h1.is_symmetric() && self.h2.is_symmetric(),
        )
        .hypothesis("gluing_admissible", true)
        .hypothesis("x1_gt_mult_h1", self.x1 > self.h1.multiplicity())
        .hypothesis("x2_gt_mult_h2", self.x2 > self.h2.multiplicity())
        .hypothesis("inequality_holds", ineq != InequalityOrdering::Lt)
        .hypothesis("delta_gluing_formula", delta_formula)
        .with_stats("A", sa)
        .with_stats("B", sb)
        .with_stats("R", sr);
        v.inequality = Some(ineq);
        v.finish()
    }
}
