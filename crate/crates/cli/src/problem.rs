//! JSON shapes read and written by the command line.

use std::collections::BTreeMap;

use astar::{Complex64, ComplexMatrix, StateWitness};
use serde::{Deserialize, Serialize};
use serde_json::Value;

/// `{ "n": 2, "data": [[re, im], ...] }`, row-major, `n^2` pairs.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct MatrixObject {
    pub n: usize,
    pub data: Vec<[f64; 2]>,
}

impl MatrixObject {
    pub fn to_matrix(&self, name: &str) -> Result<ComplexMatrix, String> {
        if self.n == 0 {
            return Err(format!("{name}: n must be positive"));
        }
        if self.data.len() != self.n * self.n {
            return Err(format!(
                "{name}: expected {} entries for a square {}x{} matrix, got {}",
                self.n * self.n,
                self.n,
                self.n,
                self.data.len()
            ));
        }
        if let Some(k) = self.data.iter().position(|p| !p[0].is_finite() || !p[1].is_finite()) {
            return Err(format!("{name}: entry {k} is not finite"));
        }
        let data = self.data.iter().map(|p| Complex64::new(p[0], p[1])).collect();
        ComplexMatrix::new(self.n, data).map_err(|e| format!("{name}: {e}"))
    }

    pub fn from_matrix(m: &ComplexMatrix) -> Self {
        Self {
            n: m.dim(),
            data: m.as_slice().iter().map(|z| [z.re, z.im]).collect(),
        }
    }
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ProblemFile {
    pub a: MatrixObject,
    pub x: MatrixObject,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub y: Option<MatrixObject>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub lambda: Option<f64>,
}

/// A parsed and checked problem.
pub struct Problem {
    pub a: ComplexMatrix,
    pub x: ComplexMatrix,
    pub y: Option<ComplexMatrix>,
    pub lambda: f64,
}

pub fn check_lambda(lambda: f64) -> Result<f64, String> {
    if (0.0..=1.0).contains(&lambda) {
        Ok(lambda)
    } else {
        Err(format!("lambda must lie in [0, 1], got {lambda}"))
    }
}

impl ProblemFile {
    pub fn parse(text: &str) -> Result<Self, String> {
        serde_json::from_str(text).map_err(|e| format!("invalid problem file: {e}"))
    }

    pub fn into_problem(self) -> Result<Problem, String> {
        let a = self.a.to_matrix("a")?;
        let x = self.x.to_matrix("x")?;
        let y = self.y.map(|y| y.to_matrix("y")).transpose()?;
        for (name, m) in std::iter::once(("x", &x)).chain(y.as_ref().map(|y| ("y", y))) {
            if m.dim() != a.dim() {
                return Err(format!("{name} is {0}x{0} but a is {1}x{1}", m.dim(), a.dim()));
            }
        }
        let lambda = check_lambda(self.lambda.unwrap_or(1.0))?;
        Ok(Problem { a, x, y, lambda })
    }
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct WitnessObject {
    pub h: MatrixObject,
    pub u: Vec<[f64; 2]>,
    /// `Tr(h a)`, which is 1 for a state.
    pub trace_ha: f64,
}

impl WitnessObject {
    pub fn from_state(s: &StateWitness) -> Self {
        Self {
            h: MatrixObject::from_matrix(&s.h),
            u: s.u.iter().map(|z| [z.re, z.im]).collect(),
            trace_ha: s.trace_ha,
        }
    }
}

#[derive(Clone, Debug, Default, PartialEq, Serialize, Deserialize)]
pub struct Diagnostics {
    pub starts_used: usize,
    pub iterations: usize,
    pub converged: bool,
    pub seed: u64,
    #[serde(default)]
    pub warnings: Vec<String>,
}

/// What every subcommand prints on stdout.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct Envelope {
    pub command: String,
    pub values: BTreeMap<String, Value>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub witness: Option<WitnessObject>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub certificate: Option<BTreeMap<String, f64>>,
    pub diagnostics: Diagnostics,
}

impl Envelope {
    pub fn new(command: &str, diagnostics: Diagnostics) -> Self {
        Self {
            command: command.into(),
            values: BTreeMap::new(),
            witness: None,
            certificate: None,
            diagnostics,
        }
    }

    pub fn value(mut self, key: &str, v: impl Into<Value>) -> Self {
        self.values.insert(key.into(), v.into());
        self
    }

    pub fn complex(self, key: &str, z: Complex64) -> Self {
        self.value(key, vec![z.re, z.im])
    }

    /// One line of JSON; key order is fixed, so equal envelopes print equal bytes.
    pub fn to_json(&self) -> String {
        let mut s = serde_json::to_string(self).expect("envelope serializes");
        s.push('\n');
        s
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn obj(n: usize, data: &[[f64; 2]]) -> MatrixObject {
        MatrixObject { n, data: data.to_vec() }
    }

    #[test]
    fn rejects_non_square_data() {
        let m = obj(2, &[[1.0, 0.0], [0.0, 0.0], [0.0, 0.0]]);
        assert!(m.to_matrix("x").unwrap_err().contains("expected 4"));
    }

    #[test]
    fn rejects_non_finite_entries() {
        let m = obj(1, &[[f64::INFINITY, 0.0]]);
        assert!(m.to_matrix("x").is_err());
    }

    #[test]
    fn rejects_lambda_out_of_range() {
        let text = r#"{"a":{"n":1,"data":[[1,0]]},"x":{"n":1,"data":[[1,0]]},"lambda":1.5}"#;
        assert!(ProblemFile::parse(text).unwrap().into_problem().is_err());
    }

    #[test]
    fn lambda_defaults_to_one() {
        let text = r#"{"a":{"n":1,"data":[[1,0]]},"x":{"n":1,"data":[[1,0]]}}"#;
        assert_eq!(ProblemFile::parse(text).unwrap().into_problem().unwrap().lambda, 1.0);
    }

    #[test]
    fn rejects_dimension_mismatch() {
        let text = r#"{"a":{"n":1,"data":[[1,0]]},"x":{"n":2,"data":[[1,0],[0,0],[0,0],[1,0]]}}"#;
        assert!(ProblemFile::parse(text).unwrap().into_problem().is_err());
    }

    #[test]
    fn matrix_round_trips() {
        let m = ComplexMatrix::from_fn(2, |i, j| Complex64::new(0.1 * i as f64, 1.0 / (1.0 + j as f64) / 3.0));
        let back = MatrixObject::from_matrix(&m).to_matrix("m").unwrap();
        assert_eq!(back, m);
    }

    #[test]
    fn envelope_round_trips() {
        let e = Envelope::new("norm", Diagnostics::default())
            .value("value", 0.1 + 0.2)
            .complex("mu", Complex64::new(1.0 / 3.0, -2.0 / 7.0));
        let back: Envelope = serde_json::from_str(&e.to_json()).unwrap();
        assert_eq!(back, e);
    }
}
