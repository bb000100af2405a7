//! The JSON input format and the built-in example generators.
//!
//! An input document carries the frame dimension, a sparse bracket list
//! (only `i < j` entries are representable, which makes antisymmetry
//! violations unrepresentable as input), the leaf index set, and optional
//! tolerance and frame names. All indices are 1-based in this format.

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::algebra::{AlgebraError, LieAlgebra};
use crate::foliation::{FoliatedAlgebra, FoliationError};
use crate::DEFAULT_TOLERANCE;

/// Largest accepted frame dimension; constants are stored dense.
pub const MAX_DIMENSION: u32 = 32;

#[derive(Debug, Error, Clone, PartialEq)]
pub enum DocumentError {
    #[error("JSON parse error at line {line}, column {column}: {message}")]
    Parse {
        line: usize,
        column: usize,
        message: String,
    },
    #[error("schema error: {0}")]
    Schema(String),
    #[error("duplicate bracket entry (i,j,k) = ({i},{j},{k})")]
    DuplicateBracket { i: u32, j: u32, k: u32 },
    #[error("invalid parameter: {0}")]
    InvalidParameter(String),
}

/// Errors raised when turning a well-formed document into a validated
/// foliated algebra.
#[derive(Debug, Error, Clone, PartialEq)]
pub enum BuildError {
    #[error(transparent)]
    Algebra(#[from] AlgebraError),
    #[error(transparent)]
    Foliation(#[from] FoliationError),
}

/// One bracket component: `[e_i, e_j]` has coefficient `c` on `e_k`,
/// with `i < j` (1-based).
#[derive(Debug, Clone, Copy, Serialize, Deserialize, PartialEq)]
pub struct BracketRecord {
    pub i: u32,
    pub j: u32,
    pub k: u32,
    pub c: f64,
}

#[derive(Debug, Clone, Serialize, Deserialize, PartialEq)]
pub struct InputDocument {
    pub dimension: u32,
    pub brackets: Vec<BracketRecord>,
    pub leaf: Vec<u32>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub tolerance: Option<f64>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub names: Option<Vec<String>>,
}

/// Parse and schema-check an input document from JSON text.
pub fn parse_input(text: &str) -> Result<InputDocument, DocumentError> {
    let doc: InputDocument = serde_json::from_str(text).map_err(|err| {
        if err.classify() == serde_json::error::Category::Data {
            DocumentError::Schema(err.to_string())
        } else {
            DocumentError::Parse {
                line: err.line(),
                column: err.column(),
                message: err.to_string(),
            }
        }
    })?;
    doc.validate()?;
    Ok(doc)
}

impl InputDocument {
    /// Schema invariants beyond what serde enforces.
    pub fn validate(&self) -> Result<(), DocumentError> {
        let n = self.dimension;
        if n == 0 {
            return Err(DocumentError::Schema("dimension must be at least 1".into()));
        }
        if n > MAX_DIMENSION {
            return Err(DocumentError::Schema(format!(
                "dimension {n} exceeds the supported maximum {MAX_DIMENSION}"
            )));
        }

        let mut seen = std::collections::BTreeSet::new();
        for b in &self.brackets {
            if b.i == 0 || b.j == 0 || b.k == 0 || b.i > n || b.j > n || b.k > n {
                return Err(DocumentError::Schema(format!(
                    "bracket indices ({},{},{}) outside 1..={n}",
                    b.i, b.j, b.k
                )));
            }
            if b.i >= b.j {
                return Err(DocumentError::Schema(format!(
                    "bracket entry requires i < j, got ({},{})",
                    b.i, b.j
                )));
            }
            if !b.c.is_finite() {
                return Err(DocumentError::Schema(format!(
                    "bracket coefficient at ({},{},{}) is not finite",
                    b.i, b.j, b.k
                )));
            }
            if !seen.insert((b.i, b.j, b.k)) {
                return Err(DocumentError::DuplicateBracket {
                    i: b.i,
                    j: b.j,
                    k: b.k,
                });
            }
        }

        if self.leaf.is_empty() {
            return Err(DocumentError::Schema("leaf set must be nonempty".into()));
        }
        let mut leaf_seen = std::collections::BTreeSet::new();
        for &a in &self.leaf {
            if a == 0 || a > n {
                return Err(DocumentError::Schema(format!(
                    "leaf index {a} outside 1..={n}"
                )));
            }
            if !leaf_seen.insert(a) {
                return Err(DocumentError::Schema(format!("duplicate leaf index {a}")));
            }
        }
        if leaf_seen.len() as u32 == n {
            return Err(DocumentError::Schema(
                "leaf set must be a proper subset of the frame".into(),
            ));
        }

        if let Some(tol) = self.tolerance {
            if !(tol > 0.0) || !tol.is_finite() {
                return Err(DocumentError::Schema(format!(
                    "tolerance must be positive and finite, got {tol}"
                )));
            }
        }
        if let Some(names) = &self.names {
            if names.len() as u32 != n {
                return Err(DocumentError::Schema(format!(
                    "names list has {} entries, expected {n}",
                    names.len()
                )));
            }
        }
        Ok(())
    }

    pub fn tolerance_or_default(&self) -> f64 {
        self.tolerance.unwrap_or(DEFAULT_TOLERANCE)
    }

    pub fn to_algebra(&self) -> Result<LieAlgebra, AlgebraError> {
        self.to_algebra_with_tolerance(self.tolerance_or_default())
    }

    pub fn to_algebra_with_tolerance(&self, tol: f64) -> Result<LieAlgebra, AlgebraError> {
        let entries: Vec<(usize, usize, usize, f64)> = self
            .brackets
            .iter()
            .map(|b| (b.i as usize - 1, b.j as usize - 1, b.k as usize - 1, b.c))
            .collect();
        let mut algebra = LieAlgebra::from_brackets(self.dimension as usize, &entries, tol)?;
        if let Some(names) = &self.names {
            algebra = algebra.with_names(names.clone());
        }
        Ok(algebra)
    }

    pub fn to_foliated(&self) -> Result<FoliatedAlgebra, BuildError> {
        self.to_foliated_with_tolerance(self.tolerance_or_default())
    }

    pub fn to_foliated_with_tolerance(&self, tol: f64) -> Result<FoliatedAlgebra, BuildError> {
        let algebra = self.to_algebra_with_tolerance(tol)?;
        let leaf: Vec<usize> = self.leaf.iter().map(|&a| a as usize - 1).collect();
        Ok(FoliatedAlgebra::from_leaf_indices(algebra, &leaf, tol)?)
    }

    /// Serialize back to pretty JSON.
    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("document serialization cannot fail")
    }

    /// Document for the rescaled transverse metric, produced by running the
    /// rescale through the validated algebra and re-encoding the brackets.
    pub fn rescaled(&self, factor: f64) -> Result<InputDocument, BuildError> {
        let fol = self.to_foliated()?;
        let rescaled = fol.rescale_transverse(factor)?;
        let n = rescaled.algebra().dim();
        let mut brackets = Vec::new();
        for i in 0..n {
            for j in (i + 1)..n {
                for k in 0..n {
                    let c = rescaled.algebra().c(i, j, k);
                    if c != 0.0 {
                        brackets.push(BracketRecord {
                            i: i as u32 + 1,
                            j: j as u32 + 1,
                            k: k as u32 + 1,
                            c,
                        });
                    }
                }
            }
        }
        Ok(InputDocument {
            dimension: self.dimension,
            brackets,
            leaf: self.leaf.clone(),
            tolerance: self.tolerance,
            names: self.names.clone(),
        })
    }
}

/// Built-in example selector.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum ExampleName {
    Carriere,
    Hrw7,
    Heisenberg,
}

impl std::str::FromStr for ExampleName {
    type Err = DocumentError;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        match s.to_ascii_lowercase().as_str() {
            "carriere" => Ok(ExampleName::Carriere),
            "hrw7" => Ok(ExampleName::Hrw7),
            "heisenberg" => Ok(ExampleName::Heisenberg),
            other => Err(DocumentError::InvalidParameter(format!(
                "unknown example '{other}' (expected carriere, hrw7 or heisenberg)"
            ))),
        }
    }
}

/// Optional generator parameters; irrelevant fields are ignored.
#[derive(Debug, Clone, Copy, Default)]
pub struct ExampleParams {
    pub trace: Option<u32>,
    pub coshk: Option<f64>,
    pub n1: Option<f64>,
    pub n2: Option<f64>,
}

/// Generate one of the built-in example documents.
///
/// - `carriere`: the hyperbolic-torus flow, parametrized by the integer
///   matrix trace `t >= 3` with `rho = (t + sqrt(t^2 - 4)) / 2`; leaf `[1]`.
/// - `hrw7`: the 7-dimensional solvable example, parametrized by `coshk`
///   with `2 cosh(k)` an integer `>= 3` and nonzero `n1`, `n2`;
///   leaf `[1,3,4,6]`.
/// - `heisenberg`: the taut nilpotent control with bracket `(1,2) -> 3`;
///   leaf `[3]`.
pub fn generate_example(
    name: ExampleName,
    params: ExampleParams,
) -> Result<InputDocument, DocumentError> {
    let doc = match name {
        ExampleName::Carriere => {
            let trace = params.trace.unwrap_or(3);
            if trace < 3 {
                return Err(DocumentError::InvalidParameter(format!(
                    "carriere requires an integer trace >= 3, got {trace}"
                )));
            }
            let log_rho = (trace as f64 / 2.0).acosh();
            InputDocument {
                dimension: 3,
                brackets: vec![
                    BracketRecord {
                        i: 1,
                        j: 3,
                        k: 1,
                        c: log_rho,
                    },
                    BracketRecord {
                        i: 2,
                        j: 3,
                        k: 2,
                        c: -log_rho,
                    },
                ],
                leaf: vec![1],
                tolerance: None,
                names: None,
            }
        }
        ExampleName::Hrw7 => {
            let coshk = params.coshk.unwrap_or(1.5);
            let doubled = 2.0 * coshk;
            if !doubled.is_finite()
                || (doubled - doubled.round()).abs() > 1e-9
                || doubled.round() < 3.0
            {
                return Err(DocumentError::InvalidParameter(format!(
                    "hrw7 requires 2*coshk to be an integer >= 3, got coshk = {coshk}"
                )));
            }
            let n1 = params.n1.unwrap_or(1.0);
            let n2 = params.n2.unwrap_or(1.0);
            if n1 == 0.0 || n2 == 0.0 || !n1.is_finite() || !n2.is_finite() {
                return Err(DocumentError::InvalidParameter(
                    "hrw7 requires nonzero finite n1 and n2".into(),
                ));
            }
            let k = coshk.acosh();
            InputDocument {
                dimension: 7,
                brackets: vec![
                    BracketRecord { i: 1, j: 7, k: 1, c: -k },
                    BracketRecord { i: 2, j: 7, k: 2, c: k },
                    BracketRecord { i: 4, j: 7, k: 4, c: -k },
                    BracketRecord { i: 5, j: 7, k: 5, c: k },
                    BracketRecord { i: 1, j: 2, k: 3, c: n1 },
                    BracketRecord { i: 4, j: 5, k: 6, c: n2 },
                ],
                leaf: vec![1, 3, 4, 6],
                tolerance: None,
                names: None,
            }
        }
        ExampleName::Heisenberg => InputDocument {
            dimension: 3,
            brackets: vec![BracketRecord {
                i: 1,
                j: 2,
                k: 3,
                c: 1.0,
            }],
            leaf: vec![3],
            tolerance: None,
            names: None,
        },
    };
    debug_assert!(doc.validate().is_ok());
    Ok(doc)
}
