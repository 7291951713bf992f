//! The numeric profile of a graded ring.

use serde::{Deserialize, Serialize};

use crate::hpoly::HPolynomial;

/// `(dim, h, e, a, delta, r)` of a graded ring plus the derived flags.
///
/// `h` is absent for rings whose grading is not semi-standard (numerical
/// semigroup rings under the semigroup grading), where `e` is the
/// multiplicity and `delta` comes from the canonical-module series instead.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct RingStats {
    pub dim: u32,
    #[serde(default)]
    pub h: Option<HPolynomial>,
    pub e: i64,
    pub a: i64,
    pub delta: i64,
    #[serde(default)]
    pub type_r: Option<u64>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub omega_degrees: Option<Vec<i64>>,
    pub gorenstein: bool,
    #[serde(default)]
    pub almost_gorenstein: Option<bool>,
    /// A degree-0 monomorphism `R -> omega_R(-a_R)` exists.
    #[serde(default)]
    pub star: bool,
    #[serde(default)]
    pub provenance: Vec<String>,
}

impl RingStats {
    /// Lists every violated structural identity; empty when consistent.
    pub fn invariant_violations(&self) -> Vec<String> {
        let mut out = Vec::new();
        if let Some(h) = &self.h {
            match h.e_value() {
                Ok(e) if e == self.e => {}
                other => out.push(format!("e = {} but sum of h is {other:?}", self.e)),
            }
            let s = h.degree() as i64;
            if self.a != s - self.dim as i64 {
                out.push(format!("a = {} but s - dim = {}", self.a, s - self.dim as i64));
            }
            match (h.delta_value(), h.cokernel_numerator()) {
                (Ok(d), Ok(c)) => {
                    if d != self.delta {
                        out.push(format!("delta = {} but delta(h) = {d}", self.delta));
                    }
                    if c.iter().sum::<i64>() != d {
                        out.push("cokernel numerator does not sum to delta".into());
                    }
                }
                _ => out.push("overflow while evaluating h".into()),
            }
            if let Some(r) = self.type_r {
                if *h.leading() > r as i64 {
                    out.push(format!("h_s = {} exceeds type {r}", h.leading()));
                }
            }
        }
        if let Some(r) = self.type_r {
            if self.e >= 2 && r as i64 >= self.e {
                out.push(format!("type {r} is not below multiplicity {}", self.e));
            }
            if (r == 1) != self.gorenstein {
                out.push(format!("type {r} disagrees with gorenstein = {}", self.gorenstein));
            }
            if let Some(ag) = self.almost_gorenstein {
                if ag != (self.delta == r as i64 - 1) {
                    out.push("almost_gorenstein disagrees with delta = r - 1".into());
                }
            }
        }
        if let Some(degrees) = &self.omega_degrees {
            if self.type_r != Some(degrees.len() as u64) {
                out.push(format!("{} canonical generators but type {:?}", degrees.len(), self.type_r));
            }
            if let Some(&low) = degrees.iter().min() {
                if low != -self.a {
                    out.push(format!("canonical module starts in degree {low}, not -a = {}", -self.a));
                }
                if let Some(h) = &self.h {
                    let at_low = degrees.iter().filter(|&&d| d == low).count() as i64;
                    if at_low != *h.leading() {
                        out.push(format!("{at_low} canonical generators in degree {low} but h_s = {}", h.leading()));
                    }
                }
            }
        }
        if self.gorenstein && self.delta != 0 {
            out.push(format!("gorenstein but delta = {}", self.delta));
        }
        out
    }
}
