//! Corpus files: JSON arrays of cases, each run through the library and
//! compared with a partial expected value.

use std::collections::BTreeSet;

use gorlab::numsgp::NumericalSemigroup;
use gorlab::stats::RingStats;
use rayon::prelude::*;
use serde::{Deserialize, Serialize};
use serde_json::{json, Value};

use crate::ops::{self, AffineInput, CliError, GraphCase, Ring};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum CaseKind {
    Numsgp,
    Gluing,
    Affine,
    Edge,
    Stable,
    Triple,
}

#[derive(Debug, Clone, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct CorpusCase {
    pub id: String,
    pub kind: CaseKind,
    pub inputs: Value,
    /// Subset pattern. `{"error": "<Kind>"}` expects a failure of that kind.
    pub expected: Value,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct CaseResult {
    pub id: String,
    pub pass: bool,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub mismatch: Option<String>,
}

/// Parses a corpus file and checks that ids are unique.
pub fn parse(text: &str) -> Result<Vec<CorpusCase>, CliError> {
    let cases: Vec<CorpusCase> = serde_json::from_str(text).map_err(|e| CliError::Parse {
        line: e.line(),
        message: e.to_string(),
    })?;
    let mut seen = BTreeSet::new();
    for c in &cases {
        if !seen.insert(c.id.as_str()) {
            return Err(CliError::Input(format!("duplicate case id {}", c.id)));
        }
    }
    Ok(cases)
}

#[derive(Deserialize)]
#[serde(deny_unknown_fields)]
struct NumsgpInput {
    generators: Vec<u64>,
}

#[derive(Deserialize)]
#[serde(deny_unknown_fields)]
struct GluingInput {
    h1: Vec<u64>,
    x1: u64,
    h2: Vec<u64>,
    x2: u64,
}

#[derive(Deserialize)]
#[serde(deny_unknown_fields)]
struct TripleInput {
    a: RingStats,
    b: RingStats,
    r: RingStats,
}

fn decode<T: for<'de> Deserialize<'de>>(v: &Value) -> Result<T, CliError> {
    T::deserialize(v).map_err(|e| CliError::Input(format!("bad inputs: {e}")))
}

/// Computes the actual value of a case.
pub fn evaluate(case: &CorpusCase) -> Result<Value, CliError> {
    match case.kind {
        CaseKind::Numsgp => {
            let i: NumsgpInput = decode(&case.inputs)?;
            Ok(ops::numsgp_info(&NumericalSemigroup::from_generators(&i.generators)?))
        }
        CaseKind::Gluing => {
            let i: GluingInput = decode(&case.inputs)?;
            ops::gluing(&i.h1, i.x1, &i.h2, i.x2, true)
        }
        CaseKind::Affine => ops::affine_stats(&decode::<AffineInput>(&case.inputs)?),
        CaseKind::Edge => decode::<GraphCase>(&case.inputs)?.run(Ring::Edge),
        CaseKind::Stable => decode::<GraphCase>(&case.inputs)?.run(Ring::Stable),
        CaseKind::Triple => {
            let i: TripleInput = decode(&case.inputs)?;
            ops::triple(&i.a, &i.b, &i.r)
        }
    }
}

/// Runs one case and compares with its expected pattern.
pub fn run_case(case: &CorpusCase) -> CaseResult {
    let actual = match evaluate(case) {
        Ok(v) => v,
        Err(e) => json!({"error": e.kind(), "message": e.to_string()}),
    };
    let mismatch = subset_mismatch(&case.expected, &actual, "");
    CaseResult {
        id: case.id.clone(),
        pass: mismatch.is_none(),
        mismatch,
    }
}

/// Runs every case on a pool of `jobs` threads, preserving order.
pub fn run_all(cases: &[CorpusCase], jobs: usize, progress: &(dyn Fn(&CaseResult) + Sync)) -> Vec<CaseResult> {
    let pool = rayon::ThreadPoolBuilder::new()
        .num_threads(jobs.max(1))
        .build()
        .expect("thread pool");
    pool.install(|| {
        cases
            .par_iter()
            .map(|c| {
                let r = run_case(c);
                progress(&r);
                r
            })
            .collect()
    })
}

/// First place where `actual` fails to contain `expected`, if any. Objects
/// match key-wise on the expected keys, arrays element-wise with equal
/// length, and scalars by equality.
pub fn subset_mismatch(expected: &Value, actual: &Value, path: &str) -> Option<String> {
    match (expected, actual) {
        (Value::Object(e), Value::Object(a)) => e.iter().find_map(|(k, ev)| {
            let p = format!("{path}/{k}");
            match a.get(k) {
                Some(av) => subset_mismatch(ev, av, &p),
                None => Some(format!("{p}: missing")),
            }
        }),
        (Value::Array(e), Value::Array(a)) => {
            if e.len() != a.len() {
                return Some(format!("{path}: expected {} items, got {}", e.len(), a.len()));
            }
            e.iter()
                .zip(a)
                .enumerate()
                .find_map(|(i, (ev, av))| subset_mismatch(ev, av, &format!("{path}/{i}")))
        }
        (e, a) if e == a => None,
        (e, a) => Some(format!("{}: expected {e}, got {a}", if path.is_empty() { "/" } else { path })),
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn subset_matching() {
        let actual = json!({"a": 1, "b": {"c": [1, 2], "d": null}});
        assert_eq!(subset_mismatch(&json!({"b": {"c": [1, 2]}}), &actual, ""), None);
        assert_eq!(subset_mismatch(&json!({}), &actual, ""), None);
        assert_eq!(
            subset_mismatch(&json!({"b": {"c": [1, 3]}}), &actual, ""),
            Some("/b/c/1: expected 3, got 2".into())
        );
        assert_eq!(subset_mismatch(&json!({"z": 1}), &actual, ""), Some("/z: missing".into()));
        assert!(subset_mismatch(&json!({"b": {"c": [1]}}), &actual, "").is_some());
    }

    #[test]
    fn duplicate_ids_are_rejected() {
        let text = r#"[{"id":"x","kind":"numsgp","inputs":{"generators":[2,3]},"expected":{}},
                       {"id":"x","kind":"numsgp","inputs":{"generators":[2,3]},"expected":{}}]"#;
        assert!(matches!(parse(text), Err(CliError::Input(_))));
    }

    #[test]
    fn parse_errors_carry_line_numbers() {
        match parse("[\n{\"id\": }\n]") {
            Err(CliError::Parse { line, .. }) => assert_eq!(line, 2),
            other => panic!("{other:?}"),
        }
    }

    #[test]
    fn error_expectations_match_kinds() {
        let case = CorpusCase {
            id: "k1".into(),
            kind: CaseKind::Numsgp,
            inputs: json!({"generators": [4, 6]}),
            expected: json!({"error": "GcdNotOne"}),
        };
        assert!(run_case(&case).pass);
    }
}
