//! JSON documents for custom models and initial states.
//!
//! ```json
//! {"dim": 2,
//!  "hamiltonian": [[0.5, 0], [0, 0], [0, 0], [-0.5, 0]],
//!  "jumps": [{"matrix": [[0, 0], [1, 0], [0, 0], [0, 0]], "rate": 0.3}]}
//! ```
//!
//! Matrices are row-major lists of `[re, im]` pairs, either flat (`dim^2`
//! pairs) or nested by row.

use num_complex::Complex64 as C64;
use serde::Deserialize;

use crate::dynamics::model::{Jump, LindbladModel};
use crate::error::{Error, Result};
use crate::linalg::{check_dim, CMatrix, HermitianMatrix};
use crate::state::DensityMatrix;

#[derive(Debug, Clone, Deserialize)]
#[serde(untagged)]
pub enum MatrixSpec {
    Flat(Vec<[f64; 2]>),
    Rows(Vec<Vec<[f64; 2]>>),
}

impl MatrixSpec {
    fn to_matrix(&self, dim: usize, field: &str) -> Result<CMatrix> {
        let pair = |p: &[f64; 2]| C64::new(p[0], p[1]);
        let m = match self {
            MatrixSpec::Flat(v) => {
                if v.len() != dim * dim {
                    return Err(Error::Model(format!(
                        "{field}: expected {} entries for dim {dim}, got {}",
                        dim * dim,
                        v.len()
                    )));
                }
                CMatrix::from_row_major(v.iter().map(pair).collect())?
            }
            MatrixSpec::Rows(rows) => {
                if rows.len() != dim || rows.iter().any(|r| r.len() != dim) {
                    return Err(Error::Model(format!("{field}: expected {dim} rows of {dim} entries")));
                }
                let rows: Vec<Vec<C64>> = rows.iter().map(|r| r.iter().map(pair).collect()).collect();
                CMatrix::from_rows(&rows)?
            }
        };
        if !m.is_finite() {
            return Err(Error::Model(format!("{field}: non-finite entry")));
        }
        Ok(m)
    }

    fn infer_dim(&self) -> usize {
        match self {
            MatrixSpec::Flat(v) => (v.len() as f64).sqrt().round() as usize,
            MatrixSpec::Rows(r) => r.len(),
        }
    }
}

#[derive(Debug, Clone, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct JumpSpec {
    pub matrix: MatrixSpec,
    pub rate: f64,
}

#[derive(Debug, Clone, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ModelSpec {
    pub dim: usize,
    pub hamiltonian: MatrixSpec,
    #[serde(default)]
    pub jumps: Vec<JumpSpec>,
    #[serde(default)]
    pub name: Option<String>,
}

impl ModelSpec {
    pub fn build(&self) -> Result<LindbladModel> {
        check_dim(self.dim).map_err(|_| Error::Model(format!("dim: {} outside 2..=8", self.dim)))?;
        let h = self.hamiltonian.to_matrix(self.dim, "hamiltonian")?;
        let h = HermitianMatrix::new(h).map_err(|e| Error::Model(format!("hamiltonian: {e}")))?;
        let mut jumps = Vec::with_capacity(self.jumps.len());
        for (k, j) in self.jumps.iter().enumerate() {
            if !(j.rate >= 0.0) || !j.rate.is_finite() {
                return Err(Error::Model(format!(
                    "jumps[{k}].rate: {} must be finite and >= 0",
                    j.rate
                )));
            }
            jumps.push(Jump {
                operator: j.matrix.to_matrix(self.dim, &format!("jumps[{k}].matrix"))?,
                rate: j.rate,
            });
        }
        LindbladModel::new(self.name.clone().unwrap_or_else(|| "custom".into()), h, jumps)
    }
}

fn json_error(e: serde_json::Error) -> Error {
    Error::Model(format!("line {} column {}: {e}", e.line(), e.column()))
}

/// Parses and validates a model document.
pub fn model_from_json(text: &str) -> Result<LindbladModel> {
    let spec: ModelSpec = serde_json::from_str(text).map_err(json_error)?;
    spec.build()
}

#[derive(Deserialize)]
#[serde(untagged)]
enum StateDoc {
    Wrapped { matrix: MatrixSpec },
    Bare(MatrixSpec),
}

/// Parses a density matrix given as `{"matrix": ...}` or as a bare matrix.
pub fn state_from_json(text: &str) -> Result<DensityMatrix> {
    let doc: StateDoc = serde_json::from_str(text).map_err(json_error)?;
    let spec = match doc {
        StateDoc::Wrapped { matrix } | StateDoc::Bare(matrix) => matrix,
    };
    let dim = spec.infer_dim();
    let m = spec.to_matrix(dim, "matrix")?;
    DensityMatrix::from_matrix(m).map_err(|e| Error::Model(format!("matrix: {e}")))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::dynamics::catalog::CatalogModel;

    const AD: &str = r#"{"dim": 2,
        "hamiltonian": [[0,0],[0,0],[0,0],[0,0]],
        "jumps": [{"matrix": [[[0,0],[1,0]],[[0,0],[0,0]]], "rate": 1.5}]}"#;

    #[test]
    fn parses_flat_and_nested() {
        let model = model_from_json(AD).unwrap();
        assert_eq!(model.dim(), 2);
        assert_eq!(model.name(), "custom");
        let reference = CatalogModel::AmplitudeDamping { gamma: 1.5 }.build();
        let rho = DensityMatrix::basis(2, 1).unwrap();
        let a = model.apply(rho.matrix());
        let b = reference.apply(rho.matrix());
        assert!(a.max_abs_diff(&b) < 1e-15);
    }

    #[test]
    fn syntax_errors_carry_line() {
        let err = model_from_json("{\n\"dim\": 2,\n\"hamiltonian\": [1, 2,\n").unwrap_err();
        let msg = err.to_string();
        assert!(msg.contains("line"), "{msg}");
    }

    #[test]
    fn invariant_errors_name_field() {
        let bad = r#"{"dim": 2, "hamiltonian": [[0,0],[1,0],[0,0],[0,0]]}"#;
        assert!(model_from_json(bad).unwrap_err().to_string().contains("hamiltonian"));
        let bad = r#"{"dim": 2, "hamiltonian": [[0,0],[0,0],[0,0],[0,0]],
                      "jumps": [{"matrix": [[0,0],[1,0],[0,0],[0,0]], "rate": -1}]}"#;
        assert!(model_from_json(bad).unwrap_err().to_string().contains("jumps[0].rate"));
        let bad = r#"{"dim": 3, "hamiltonian": [[0,0],[0,0],[0,0],[0,0]]}"#;
        assert!(model_from_json(bad).unwrap_err().to_string().contains("hamiltonian"));
        let bad = r#"{"dim": 9, "hamiltonian": []}"#;
        assert!(model_from_json(bad).unwrap_err().to_string().contains("dim"));
    }

    #[test]
    fn state_documents() {
        let s = state_from_json(r#"{"matrix": [[0.5,0],[0.5,0],[0.5,0],[0.5,0]]}"#).unwrap();
        assert!((s.purity() - 1.0).abs() < 1e-15);
        let s = state_from_json(r#"[[[1,0],[0,0]],[[0,0],[0,0]]]"#).unwrap();
        assert_eq!(s.dim(), 2);
        assert!(state_from_json(r#"[[2,0],[0,0],[0,0],[0,0]]"#).is_err());
    }
}
