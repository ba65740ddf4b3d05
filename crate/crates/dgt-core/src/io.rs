//! JSON system files.
//!
//! ```json
//! {
//!   "parameters": ["t"],
//!   "variable": "x",
//!   "matrix": [["t", "0"], ["0", "x + t"]],
//!   "group": {"S": [...], "T": [...], "characters": [...], "components": 1},
//!   "gammas": [{"kind": "multiplicative", "generators": ["t"]}]
//! }
//! ```

use serde::{Deserialize, Serialize};

use crate::diffsys::DiffSystem;
use crate::error::{DgtError, Result};
use crate::expr::parse_ratfunc;
use crate::field::{Field, Fx, TowerField};
use crate::galois::GroupData;
use crate::linalg::Matrix;
use crate::multlattice::{FgSubgroup, GroupKind};

fn default_variable() -> String {
    "x".into()
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct GroupBlock {
    #[serde(default)]
    pub n: Option<usize>,
    #[serde(rename = "S")]
    pub s: Vec<String>,
    #[serde(rename = "T")]
    pub t: Vec<String>,
    pub characters: Vec<String>,
    pub components: usize,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct GammaBlock {
    pub kind: GroupKind,
    pub generators: Vec<String>,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct SystemFile {
    #[serde(default)]
    pub parameters: Vec<String>,
    #[serde(default = "default_variable")]
    pub variable: String,
    pub matrix: Vec<Vec<String>>,
    #[serde(default)]
    pub group: Option<GroupBlock>,
    #[serde(default)]
    pub gammas: Vec<GammaBlock>,
}

/// A parsed system file.
#[derive(Clone, Debug)]
pub struct LoadedSystem {
    pub variable: String,
    pub system: DiffSystem,
    pub group: Option<GroupData>,
    pub gammas: Vec<FgSubgroup>,
}

impl LoadedSystem {
    pub fn field(&self) -> &TowerField {
        &self.system.field
    }
}

fn with_location(e: DgtError, location: &str) -> DgtError {
    match e {
        DgtError::SyntaxError { offset, line, column, message } => DgtError::SyntaxError {
            offset,
            line,
            column,
            message: format!("{location}: {message}"),
        },
        DgtError::DivisionByZero => DgtError::Invalid(format!("{location}: division by zero")),
        other => other,
    }
}

pub fn parse_matrix(rows: &[Vec<String>], field: &TowerField, var: &str) -> Result<Matrix<Fx>> {
    let n = rows.len();
    if n == 0 || rows.iter().any(|r| r.len() != n) {
        return Err(DgtError::Invalid("matrix must be square and nonempty".into()));
    }
    let entries = rows
        .iter()
        .enumerate()
        .map(|(i, r)| {
            r.iter()
                .enumerate()
                .map(|(j, e)| parse_ratfunc(e, field, var).map_err(|err| with_location(err, &format!("entry ({}, {})", i + 1, j + 1))))
                .collect::<Result<Vec<_>>>()
        })
        .collect::<Result<Vec<_>>>()?;
    Ok(Matrix::from_rows(entries))
}

impl SystemFile {
    pub fn from_json(text: &str) -> Result<Self> {
        serde_json::from_str(text).map_err(|e| DgtError::Invalid(format!("system file: {e}")))
    }

    pub fn load(&self) -> Result<LoadedSystem> {
        if self.parameters.contains(&self.variable) {
            return Err(DgtError::Invalid(format!("'{}' is both the variable and a parameter", self.variable)));
        }
        let field = TowerField::new(self.parameters.clone())?;
        let matrix = parse_matrix(&self.matrix, &field, &self.variable)?;
        let n = matrix.nrows();
        let system = DiffSystem::new(matrix, field.clone())?;
        let group = match &self.group {
            None => None,
            Some(g) => {
                if let Some(m) = g.n.filter(|&m| m != n) {
                    return Err(DgtError::AmbientMismatch(m, n));
                }
                fn refs(v: &[String]) -> Vec<&str> {
                    v.iter().map(String::as_str).collect()
                }
                Some(GroupData::new(n, field.clone(), &refs(&g.s), &refs(&g.t), &refs(&g.characters), g.components)?)
            }
        };
        let gammas = self
            .gammas
            .iter()
            .enumerate()
            .map(|(k, g)| {
                let generators = g
                    .generators
                    .iter()
                    .map(|e| parse_ratfunc(e, &field, &self.variable).map_err(|err| with_location(err, &format!("gamma {}", k + 1))))
                    .collect::<Result<Vec<_>>>()?;
                if g.kind == GroupKind::Multiplicative && generators.iter().any(|f| f.is_zero()) {
                    return Err(DgtError::Invalid(format!("gamma {}: zero in a multiplicative group", k + 1)));
                }
                Ok(FgSubgroup { kind: g.kind, generators })
            })
            .collect::<Result<Vec<_>>>()?;
        Ok(LoadedSystem {
            variable: self.variable.clone(),
            system,
            group,
            gammas,
        })
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn loads_a_system() {
        let f = SystemFile::from_json(
            r#"{"parameters": ["t"], "matrix": [["t", "0"], ["0", "x+t"]],
                "gammas": [{"kind": "additive", "generators": ["t", "1"]}]}"#,
        )
        .unwrap();
        assert_eq!(f.variable, "x");
        let s = f.load().unwrap();
        assert_eq!(s.system.n(), 2);
        assert_eq!(s.gammas[0].generators.len(), 2);
    }

    #[test]
    fn rejects_bad_files() {
        let bad = |t: &str| SystemFile::from_json(t).and_then(|f| f.load()).unwrap_err();
        assert!(matches!(bad(r#"{"matrix": [["x", "1"]]}"#), DgtError::Invalid(_)));
        assert!(matches!(bad(r#"{"matrix": [["0"]]}"#), DgtError::SingularInput(_)));
        assert!(matches!(bad(r#"{"matrix": [["y"]]}"#), DgtError::UnknownIdentifier(_)));
        assert!(matches!(bad(r#"{"matrix": [["x+"]]}"#), DgtError::SyntaxError { .. }));
        assert!(matches!(bad(r#"{"matrix": [["x"]], "extra": 1}"#), DgtError::Invalid(_)));
    }
}
