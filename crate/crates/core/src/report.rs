//! Report structures shared by the CLI and the verification suites, plus
//! serde helpers. Rationals serialize as "p/q" strings in lowest terms with
//! positive denominator; big integers as decimal strings.

use serde::ser::SerializeSeq;
use serde::{Serialize, Serializer};

use crate::exactlin::{Int, IntMatrix, Rat};

pub fn ser_int<S: Serializer>(x: &Int, s: S) -> Result<S::Ok, S::Error> {
    s.serialize_str(&x.to_string())
}

pub fn ser_int_vec<S: Serializer>(v: &[Int], s: S) -> Result<S::Ok, S::Error> {
    let mut seq = s.serialize_seq(Some(v.len()))?;
    for x in v {
        seq.serialize_element(&x.to_string())?;
    }
    seq.end()
}

pub fn rat_string(x: &Rat) -> String {
    format!("{}/{}", x.numer(), x.denom())
}

pub fn ser_rat<S: Serializer>(x: &Rat, s: S) -> Result<S::Ok, S::Error> {
    s.serialize_str(&rat_string(x))
}

pub fn ser_rat_vec<S: Serializer>(v: &[Rat], s: S) -> Result<S::Ok, S::Error> {
    let mut seq = s.serialize_seq(Some(v.len()))?;
    for x in v {
        seq.serialize_element(&rat_string(x))?;
    }
    seq.end()
}

pub fn ser_rat_pair<S: Serializer>(p: &(Rat, Rat), s: S) -> Result<S::Ok, S::Error> {
    let mut seq = s.serialize_seq(Some(2))?;
    seq.serialize_element(&rat_string(&p.0))?;
    seq.serialize_element(&rat_string(&p.1))?;
    seq.end()
}

pub fn ser_int_matrix<S: Serializer>(m: &IntMatrix, s: S) -> Result<S::Ok, S::Error> {
    let rows: Vec<Vec<String>> = (0..m.rows())
        .map(|i| m.row(i).iter().map(|x| x.to_string()).collect())
        .collect();
    rows.serialize(s)
}

pub fn ser_opt_int_matrix<S: Serializer>(m: &Option<IntMatrix>, s: S) -> Result<S::Ok, S::Error> {
    match m {
        Some(m) => ser_int_matrix(m, s),
        None => s.serialize_none(),
    }
}

pub fn int_matrix_rows(m: &IntMatrix) -> Vec<Vec<String>> {
    (0..m.rows())
        .map(|i| m.row(i).iter().map(|x| x.to_string()).collect())
        .collect()
}

pub fn rat_vec_strings(v: &[Rat]) -> Vec<String> {
    v.iter().map(rat_string).collect()
}

/// One named check with its outcome and an optional human-readable witness.
#[derive(Clone, Debug, Serialize)]
pub struct Assertion {
    pub name: String,
    pub passed: bool,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub detail: Option<String>,
}

impl Assertion {
    pub fn new(name: &str, passed: bool) -> Self {
        Assertion {
            name: name.to_string(),
            passed,
            detail: None,
        }
    }

    pub fn with_detail(name: &str, passed: bool, detail: String) -> Self {
        Assertion {
            name: name.to_string(),
            passed,
            detail: Some(detail),
        }
    }
}

/// Aggregated outcome of a verification suite.
#[derive(Clone, Debug, Serialize)]
pub struct SuiteReport {
    pub suite: String,
    pub passed: bool,
    pub checks_run: usize,
    pub checks_passed: usize,
    pub assertions: Vec<Assertion>,
}

impl SuiteReport {
    pub fn from_assertions(suite: &str, assertions: Vec<Assertion>) -> Self {
        let checks_run = assertions.len();
        let checks_passed = assertions.iter().filter(|a| a.passed).count();
        SuiteReport {
            suite: suite.to_string(),
            passed: checks_run == checks_passed,
            checks_run,
            checks_passed,
            assertions,
        }
    }

}
