//! Arithmetic gates for the almost-Gorenstein / Gorenstein equivalence.
//!
//! Everything here operates on numeric profiles only. For rings `A`, `B`
//! and `R` satisfying the star condition with `e(A), e(B) > 1` and
//! `delta(R) >= e(B) delta(A) + e(A) delta(B)`, three conditions are
//! equivalent:
//!
//! 1. `R` is almost Gorenstein (`delta(R) = r(R) - 1`) and `r(R) <= r(A) r(B)`;
//! 2. `R` is Gorenstein;
//! 3. `A` and `B` are Gorenstein and the inequality is an equality.
//!
//! A [`Verdict`] records the hypotheses, the three conditions and whether they
//! agree. The same arithmetic core serves the local and graded settings; no
//! module-theoretic machinery is modelled.

use std::cmp::Ordering;
use std::collections::BTreeMap;

use num_rational::Ratio;
use num_traits::{One, Zero};
use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::stats::RingStats;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum ClassifyError {
    #[error("hypothesis violated: {0}")]
    HypothesisViolation(String),
    #[error("lemma falsified at e_A={e_a}, e_B={e_b}, r_A={r_a}, r_B={r_b}, gamma=({gamma1}, {gamma2})")]
    LemmaFalsified {
        e_a: i64,
        e_b: i64,
        r_a: i64,
        r_b: i64,
        gamma1: Ratio<i64>,
        gamma2: Ratio<i64>,
    },
    #[error("integer overflow")]
    Overflow,
}

/// Outcome of comparing `delta(R)` with `e(B) delta(A) + e(A) delta(B)`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "UPPERCASE")]
pub enum InequalityOrdering {
    Lt,
    Eq,
    Gt,
}

impl From<Ordering> for InequalityOrdering {
    fn from(o: Ordering) -> Self {
        match o {
            Ordering::Less => Self::Lt,
            Ordering::Equal => Self::Eq,
            Ordering::Greater => Self::Gt,
        }
    }
}

/// Structured result of a theorem gate.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Verdict {
    pub hypotheses: BTreeMap<String, bool>,
    /// `None` when it cannot be decided (no Cohen-Macaulay type available).
    pub cond1: Option<bool>,
    pub cond2: bool,
    pub cond3: bool,
    /// Present only when every hypothesis holds.
    pub equivalence_ok: Option<bool>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub inequality: Option<InequalityOrdering>,
    #[serde(default, skip_serializing_if = "BTreeMap::is_empty")]
    pub stats: BTreeMap<String, RingStats>,
    #[serde(default, skip_serializing_if = "Vec::is_empty")]
    pub notes: Vec<String>,
}

impl Verdict {
    pub fn new(cond1: Option<bool>, cond2: bool, cond3: bool) -> Self {
        Self {
            hypotheses: BTreeMap::new(),
            cond1,
            cond2,
            cond3,
            equivalence_ok: None,
            inequality: None,
            stats: BTreeMap::new(),
            notes: Vec::new(),
        }
    }

    pub fn hypothesis(mut self, name: &str, holds: bool) -> Self {
        self.hypotheses.insert(name.to_string(), holds);
        self
    }

    pub fn note(mut self, note: impl Into<String>) -> Self {
        self.notes.push(note.into());
        self
    }

    pub fn with_stats(mut self, name: &str, stats: RingStats) -> Self {
        self.stats.insert(name.to_string(), stats);
        self
    }

    pub fn hypotheses_hold(&self) -> bool {
        self.hypotheses.values().all(|&b| b)
    }

    /// Fills in `equivalence_ok`. An undecidable `cond1` is left out of the
    /// comparison and flagged in the notes.
    pub fn finish(mut self) -> Self {
        self.equivalence_ok = if self.hypotheses_hold() {
            Some(match self.cond1 {
                Some(c1) => c1 == self.cond2 && self.cond2 == self.cond3,
                None => self.cond2 == self.cond3,
            })
        } else {
            None
        };
        if self.cond1.is_none() {
            self.notes
                .push("cond1 undecided: Cohen-Macaulay type unavailable; equivalence checked on cond2/cond3".into());
        }
        self
    }

    /// All three conditions, with an undecided `cond1` read through the
    /// equivalence.
    pub fn all_equal(&self) -> bool {
        self.cond1.is_none_or(|c| c == self.cond2) && self.cond2 == self.cond3
    }
}

/// Compares `delta_r` with `e_b * delta_a + e_a * delta_b`.
pub fn main_inequality(delta_r: i64, e_a: i64, e_b: i64, delta_a: i64, delta_b: i64) -> Result<InequalityOrdering, ClassifyError> {
    let rhs = e_b
        .checked_mul(delta_a)
        .and_then(|x| e_a.checked_mul(delta_b).and_then(|y| x.checked_add(y)))
        .ok_or(ClassifyError::Overflow)?;
    Ok(delta_r.cmp(&rhs).into())
}

/// Checks the premises `r_A <= gamma1 + 1`, `r_B <= gamma2 + 1` and
/// `e_B gamma1 + e_A gamma2 <= r_A r_B - 1`. Returns whether they hold; when
/// they do, also verifies the conclusion `gamma1 = gamma2 = 0`,
/// `r_A = r_B = 1` and reports [`ClassifyError::LemmaFalsified`] otherwise.
pub fn lemma_gate(
    e_a: i64,
    e_b: i64,
    r_a: i64,
    r_b: i64,
    gamma1: Ratio<i64>,
    gamma2: Ratio<i64>,
) -> Result<bool, ClassifyError> {
    if e_a <= 1 || e_b <= 1 {
        return Err(ClassifyError::HypothesisViolation(format!(
            "multiplicities must exceed 1 (e_A={e_a}, e_B={e_b})"
        )));
    }
    if gamma1 < Ratio::zero() || gamma2 < Ratio::zero() || r_a < 1 || r_b < 1 {
        return Err(ClassifyError::HypothesisViolation(
            "gamma must be nonnegative and types positive".into(),
        ));
    }
    let one = Ratio::<i64>::one();
    let premises = Ratio::from(r_a) <= gamma1 + one
        && Ratio::from(r_b) <= gamma2 + one
        && gamma1 * e_b + gamma2 * e_a <= Ratio::from(r_a * r_b - 1);
    if premises && !(gamma1.is_zero() && gamma2.is_zero() && r_a == 1 && r_b == 1) {
        return Err(ClassifyError::LemmaFalsified {
            e_a,
            e_b,
            r_a,
            r_b,
            gamma1,
            gamma2,
        });
    }
    Ok(premises)
}

/// Runs [`lemma_gate`] over `e_A, e_B in [2, e_max]`, `r in [1, e - 1]` and
/// `gamma in {0, 1/2, ..., gamma_max}`. Returns the number of tuples whose
/// premises hold (all of which satisfied the conclusion), or the first
/// counterexample. This is a falsification net, not a proof.
pub fn lemma_grid_search(e_max: i64, gamma_max: i64) -> Result<usize, ClassifyError> {
    let gammas: Vec<Ratio<i64>> = (0..=2 * gamma_max).map(|k| Ratio::new(k, 2)).collect();
    let mut admitted = 0;
    for e_a in 2..=e_max {
        for e_b in 2..=e_max {
            for r_a in 1..e_a {
                for r_b in 1..e_b {
                    for &g1 in gammas.iter().filter(|g| Ratio::from(r_a) <= **g + 1) {
                        for &g2 in gammas.iter().filter(|g| Ratio::from(r_b) <= **g + 1) {
                            if lemma_gate(e_a, e_b, r_a, r_b, g1, g2)? {
                                admitted += 1;
                            }
                        }
                    }
                }
            }
        }
    }
    Ok(admitted)
}

fn gorenstein_of(s: &RingStats) -> bool {
    s.type_r.map_or(s.gorenstein, |r| r == 1)
}

/// Evaluates the three equivalent conditions on a triple of profiles.
///
/// Fails with [`ClassifyError::HypothesisViolation`] when a star flag is
/// missing, a multiplicity is at most 1, or the main inequality is strict in
/// the wrong direction.
pub fn classify_triple(a: &RingStats, b: &RingStats, r: &RingStats) -> Result<Verdict, ClassifyError> {
    for (name, s) in [("star_A", a), ("star_B", b), ("star_R", r)] {
        if !s.star {
            return Err(ClassifyError::HypothesisViolation(name.into()));
        }
    }
    if a.e <= 1 {
        return Err(ClassifyError::HypothesisViolation("e_A_gt_1".into()));
    }
    if b.e <= 1 {
        return Err(ClassifyError::HypothesisViolation("e_B_gt_1".into()));
    }
    let ineq = main_inequality(r.delta, a.e, b.e, a.delta, b.delta)?;
    if ineq == InequalityOrdering::Lt {
        return Err(ClassifyError::HypothesisViolation("inequality_holds".into()));
    }

    let cond1 = match (a.type_r, b.type_r, r.type_r) {
        (Some(ra), Some(rb), Some(rr)) => Some(r.delta == rr as i64 - 1 && rr <= ra * rb),
        _ => None,
    };
    let cond2 = gorenstein_of(r);
    let cond3 = gorenstein_of(a) && gorenstein_of(b) && ineq == InequalityOrdering::Eq;

    let mut v = Verdict::new(cond1, cond2, cond3)
        .hypothesis("star_A", true)
        .hypothesis("star_B", true)
        .hypothesis("star_R", true)
        .hypothesis("e_A_gt_1", true)
        .hypothesis("e_B_gt_1", true)
        .hypothesis("inequality_holds", true);
    v.inequality = Some(ineq);
    if let (Some(ra), Some(rb), Some(rr)) = (a.type_r, b.type_r, r.type_r) {
        if rr > ra * rb {
            v = v.note(format!("r(R) = {rr} > {} = r(A) r(B)", ra * rb));
        }
    }
    Ok(v.finish())
}

#[cfg(test)]
mod tests {
    use super::*;

    fn raw(e: i64, delta: i64, r: u64) -> RingStats {
        RingStats {
            dim: 1,
            h: None,
            e,
            a: 0,
            delta,
            type_r: Some(r),
            omega_degrees: None,
            gorenstein: r == 1,
            almost_gorenstein: Some(delta == r as i64 - 1),
            star: true,
            provenance: vec![],
        }
    }

    #[test]
    fn inequality_examples() {
        assert_eq!(main_inequality(2, 2, 13, 0, 1).unwrap(), InequalityOrdering::Eq);
        assert_eq!(main_inequality(5, 3, 2, 1, 0).unwrap(), InequalityOrdering::Gt);
        assert_eq!(main_inequality(0, 2, 2, 0, 0).unwrap(), InequalityOrdering::Eq);
        assert_eq!(main_inequality(0, 2, 2, 1, 0).unwrap(), InequalityOrdering::Lt);
        assert!(main_inequality(0, 2, i64::MAX, 2, 0).is_err());
    }

    #[test]
    fn lemma_gate_examples() {
        let z = Ratio::zero();
        assert!(lemma_gate(2, 2, 1, 1, z, z).unwrap());
        let one = Ratio::one();
        assert!(!lemma_gate(3, 4, 2, 2, one, one).unwrap());
        assert!(matches!(
            lemma_gate(1, 2, 1, 1, z, z),
            Err(ClassifyError::HypothesisViolation(_))
        ));
    }

    #[test]
    fn lemma_grid_has_only_gorenstein_solutions() {
        // Only gamma = 0, r = 1 survives, once per (e_A, e_B) pair.
        assert_eq!(lemma_grid_search(8, 6).unwrap(), 49);
    }

    #[test]
    fn monomial_curve_triple() {
        let a = raw(2, 0, 1);
        let b = raw(13, 1, 2);
        let r = raw(26, 2, 3);
        let v = classify_triple(&a, &b, &r).unwrap();
        assert_eq!(v.inequality, Some(InequalityOrdering::Eq));
        assert_eq!(v.cond1, Some(false));
        assert!(!v.cond2);
        assert!(!v.cond3);
        assert_eq!(v.equivalence_ok, Some(true));
        assert!(v.notes.iter().any(|n| n.contains("r(R) = 3 > 2")));
    }

    #[test]
    fn gorenstein_tensor_triple() {
        let v = classify_triple(&raw(2, 0, 1), &raw(3, 0, 1), &raw(6, 0, 1)).unwrap();
        assert_eq!((v.cond1, v.cond2, v.cond3), (Some(true), true, true));
        assert_eq!(v.equivalence_ok, Some(true));
    }

    #[test]
    fn gluing_triple() {
        let v = classify_triple(&raw(3, 1, 2), &raw(2, 0, 1), &raw(15, 5, 2)).unwrap();
        assert_eq!(v.inequality, Some(InequalityOrdering::Gt));
        assert_eq!((v.cond1, v.cond2, v.cond3), (Some(false), false, false));
        assert_eq!(v.equivalence_ok, Some(true));
    }

    #[test]
    fn hypothesis_failures_name_the_hypothesis() {
        let mut a = raw(2, 0, 1);
        a.star = false;
        assert_eq!(
            classify_triple(&a, &raw(2, 0, 1), &raw(4, 0, 1)),
            Err(ClassifyError::HypothesisViolation("star_A".into()))
        );
        assert_eq!(
            classify_triple(&raw(1, 0, 1), &raw(2, 0, 1), &raw(2, 0, 1)),
            Err(ClassifyError::HypothesisViolation("e_A_gt_1".into()))
        );
        assert_eq!(
            classify_triple(&raw(2, 1, 2), &raw(2, 0, 1), &raw(4, 0, 1)),
            Err(ClassifyError::HypothesisViolation("inequality_holds".into()))
        );
    }

    #[test]
    fn missing_type_leaves_cond1_undecided() {
        let mut r = raw(4, 0, 1);
        r.type_r = None;
        let v = classify_triple(&raw(2, 0, 1), &raw(2, 0, 1), &r).unwrap();
        assert_eq!(v.cond1, None);
        assert_eq!(v.equivalence_ok, Some(true));
    }
}
