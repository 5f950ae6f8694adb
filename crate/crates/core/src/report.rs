//! Machine-readable outcome of a property check.

use serde::{Deserialize, Serialize};

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct Failure {
    pub inputs: Vec<String>,
    pub lhs: String,
    pub rhs: String,
    pub delta: f64,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct CheckReport {
    pub check: String,
    pub samples: usize,
    pub failures: Vec<Failure>,
}

impl CheckReport {
    pub fn new(check: impl Into<String>) -> Self {
        CheckReport {
            check: check.into(),
            samples: 0,
            failures: Vec::new(),
        }
    }

    pub fn pass(&self) -> bool {
        self.failures.is_empty()
    }

    /// Count one sample; record a failure when `ok` is false.
    pub fn record(&mut self, ok: bool, failure: impl FnOnce() -> Failure) {
        self.samples += 1;
        if !ok {
            self.failures.push(failure());
        }
    }
}
