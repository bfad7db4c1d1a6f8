//! JSON covariance-matrix documents.

use std::fs;
use std::path::Path;

use nalgebra::DMatrix;
use serde::{Deserialize, Serialize};

use crate::Failure;

pub const ORDERING: &str = "q1p1";

/// Matrix entries as nested rows or as one flat row-major list.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(untagged)]
pub enum Entries {
    Rows(Vec<Vec<f64>>),
    Flat(Vec<f64>),
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct CmDocument {
    pub modes: usize,
    pub ordering: String,
    pub matrix: Entries,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub label: Option<String>,
}

impl CmDocument {
    pub fn from_matrix(m: &DMatrix<f64>, label: Option<String>) -> Self {
        let rows = (0..m.nrows()).map(|i| m.row(i).iter().copied().collect()).collect();
        Self { modes: m.nrows() / 2, ordering: ORDERING.into(), matrix: Entries::Rows(rows), label }
    }

    pub fn parse(text: &str) -> Result<Self, Failure> {
        serde_json::from_str(text).map_err(|e| Failure::usage(format!("cannot parse covariance document: {e}")))
    }

    pub fn read(path: &Path) -> Result<Self, Failure> {
        let text = fs::read_to_string(path)
            .map_err(|e| Failure::usage(format!("cannot read {}: {e}", path.display())))?;
        Self::parse(&text)
    }

    /// Square `2n x 2n` matrix; shape and ordering problems are usage errors.
    pub fn to_matrix(&self) -> Result<DMatrix<f64>, Failure> {
        if self.ordering != ORDERING {
            return Err(Failure::usage(format!(
                "unsupported ordering '{}', expected '{ORDERING}' (q1, p1, q2, p2, ...)",
                self.ordering
            )));
        }
        if self.modes == 0 {
            return Err(Failure::usage("modes must be positive"));
        }
        let dim = 2 * self.modes;
        let flat: Vec<f64> = match &self.matrix {
            Entries::Flat(v) => v.clone(),
            Entries::Rows(rows) => {
                if rows.len() != dim || rows.iter().any(|r| r.len() != dim) {
                    return Err(Failure::usage(format!("matrix must be {dim}x{dim} for {} modes", self.modes)));
                }
                rows.concat()
            }
        };
        if flat.len() != dim * dim {
            return Err(Failure::usage(format!(
                "matrix has {} entries, expected {} for {} modes",
                flat.len(),
                dim * dim,
                self.modes
            )));
        }
        if flat.iter().any(|x| !x.is_finite()) {
            return Err(Failure::usage("matrix entries must be finite"));
        }
        Ok(DMatrix::from_row_slice(dim, dim, &flat))
    }

    pub fn to_json(&self) -> String {
        let mut s = serde_json::to_string_pretty(self).expect("documents serialize");
        s.push('\n');
        s
    }
}
