//! JSON algebra files and extension specs.

use serde::{Deserialize, Serialize};

use crate::derivations::{delta_from_omega, Derivation};
use crate::error::{Error, Result};
use crate::forms::{BilinearForm, Symmetry};
use crate::linalg::{Matrix, Vector};
use crate::scalar::Scalar;
use crate::superalg::{AlgebraBuilder, GradedBasis, LieSuperalgebra};

#[derive(Clone, PartialEq, Eq, Debug, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct Term {
    pub basis: String,
    pub coeff: Scalar,
}

#[derive(Clone, PartialEq, Eq, Debug, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct BracketEntry {
    pub lhs: String,
    pub rhs: String,
    pub value: Vec<Term>,
}

#[derive(Clone, PartialEq, Eq, Debug, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct FormEntry {
    pub lhs: String,
    pub rhs: String,
    pub coeff: Scalar,
}

#[derive(Clone, PartialEq, Eq, Debug, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct AlgebraFile {
    pub name: String,
    pub even_basis: Vec<String>,
    pub odd_basis: Vec<String>,
    pub brackets: Vec<BracketEntry>,
    #[serde(rename = "form_B", default, skip_serializing_if = "Option::is_none")]
    pub form_b: Option<Vec<FormEntry>>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub omega: Option<Vec<FormEntry>>,
}

/// An algebra with its optional invariant scalar product and symplectic form.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct AlgebraData {
    pub algebra: LieSuperalgebra,
    pub form_b: Option<BilinearForm>,
    pub omega: Option<BilinearForm>,
}

fn form_from_entries(basis: &GradedBasis, kind: Symmetry, entries: &[FormEntry]) -> Result<BilinearForm> {
    let mut seen = std::collections::HashSet::new();
    for e in entries {
        let (i, j) = (basis.index(&e.lhs)?, basis.index(&e.rhs)?);
        if !seen.insert((i.min(j), i.max(j))) {
            return Err(Error::Schema(format!("form entry ({},{}) given more than once", e.lhs, e.rhs)));
        }
    }
    let pairs: Vec<(&str, &str, Scalar)> =
        entries.iter().map(|e| (e.lhs.as_str(), e.rhs.as_str(), e.coeff.clone())).collect();
    BilinearForm::from_pairs(basis, kind, &pairs)
}

fn form_entries(basis: &GradedBasis, form: &BilinearForm) -> Vec<FormEntry> {
    form.pairs(basis).into_iter().map(|(lhs, rhs, coeff)| FormEntry { lhs, rhs, coeff }).collect()
}

impl AlgebraData {
    pub fn new(algebra: LieSuperalgebra) -> Self {
        AlgebraData { algebra, form_b: None, omega: None }
    }

    pub fn with_forms(algebra: LieSuperalgebra, form_b: Option<BilinearForm>, omega: Option<BilinearForm>) -> Self {
        AlgebraData { algebra, form_b, omega }
    }

    pub fn from_file(file: &AlgebraFile) -> Result<Self> {
        let mut builder = AlgebraBuilder::new(&file.name, &file.even_basis, &file.odd_basis).ordered_pairs();
        for b in &file.brackets {
            builder.push(&b.lhs, &b.rhs, b.value.iter().map(|t| (t.basis.clone(), t.coeff.clone())).collect());
        }
        let algebra = builder.build()?;
        let form_b = file
            .form_b
            .as_ref()
            .map(|e| form_from_entries(algebra.basis(), Symmetry::Supersymmetric, e))
            .transpose()?;
        let omega = file
            .omega
            .as_ref()
            .map(|e| form_from_entries(algebra.basis(), Symmetry::SkewSupersymmetric, e))
            .transpose()?;
        Ok(AlgebraData { algebra, form_b, omega })
    }

    pub fn to_file(&self) -> AlgebraFile {
        let g = &self.algebra;
        let basis = g.basis();
        let brackets = g
            .nonzero_brackets()
            .into_iter()
            .map(|(i, j, v)| BracketEntry {
                lhs: basis.label(i).to_string(),
                rhs: basis.label(j).to_string(),
                value: v
                    .iter()
                    .enumerate()
                    .filter(|(_, c)| !c.is_zero())
                    .map(|(k, c)| Term { basis: basis.label(k).to_string(), coeff: c.clone() })
                    .collect(),
            })
            .collect();
        AlgebraFile {
            name: g.name().to_string(),
            even_basis: basis.even_labels().to_vec(),
            odd_basis: basis.odd_labels().to_vec(),
            brackets,
            form_b: self.form_b.as_ref().map(|f| form_entries(basis, f)),
            omega: self.omega.as_ref().map(|f| form_entries(basis, f)),
        }
    }

    pub fn from_json(text: &str) -> Result<Self> {
        let file: AlgebraFile = serde_json::from_str(text)?;
        Self::from_file(&file)
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(&self.to_file()).expect("algebra files always serialize")
    }

    pub fn form_b(&self) -> Result<&BilinearForm> {
        self.form_b.as_ref().ok_or_else(|| Error::Schema("algebra has no form_B".into()))
    }

    pub fn omega(&self) -> Result<&BilinearForm> {
        self.omega.as_ref().ok_or_else(|| Error::Schema("algebra has no omega".into()))
    }

    /// The even map `delta` with `omega = B(delta ., .)`.
    pub fn delta(&self) -> Result<Derivation> {
        delta_from_omega(self.form_b()?, self.omega()?)
    }
}

/// A vector given densely in basis order or as labelled terms.
#[derive(Clone, PartialEq, Eq, Debug, Serialize, Deserialize)]
#[serde(untagged)]
pub enum VectorSpec {
    Dense(Vec<Scalar>),
    Terms(Vec<Term>),
}

impl VectorSpec {
    pub fn resolve(&self, basis: &GradedBasis) -> Result<Vector> {
        match self {
            VectorSpec::Dense(v) => {
                if v.len() != basis.dim() {
                    return Err(Error::Schema(format!("vector has {} entries, expected {}", v.len(), basis.dim())));
                }
                Ok(v.clone())
            }
            VectorSpec::Terms(ts) => {
                let terms: Vec<(&str, Scalar)> = ts.iter().map(|t| (t.basis.as_str(), t.coeff.clone())).collect();
                Ok(basis.vector(&terms)?)
            }
        }
    }
}

pub fn resolve_matrix(rows: &[Vec<Scalar>], n: usize) -> Result<Matrix> {
    if rows.len() != n || rows.iter().any(|r| r.len() != n) {
        return Err(Error::Schema(format!("matrix must be {n}x{n}")));
    }
    Ok(Matrix::from_rows(rows.to_vec()))
}

/// One extension step as read from JSON.
#[derive(Clone, PartialEq, Eq, Debug, Default, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ExtensionSpec {
    pub kind: String,
    #[serde(rename = "D", default, skip_serializing_if = "Option::is_none")]
    pub d: Option<Vec<Vec<Scalar>>>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub delta: Option<Vec<Vec<Scalar>>>,
    #[serde(rename = "X0", default, skip_serializing_if = "Option::is_none")]
    pub x0: Option<VectorSpec>,
    #[serde(rename = "Y0", default, skip_serializing_if = "Option::is_none")]
    pub y0: Option<VectorSpec>,
    #[serde(rename = "A0", default, skip_serializing_if = "Option::is_none")]
    pub a0: Option<VectorSpec>,
    #[serde(rename = "A1", default, skip_serializing_if = "Option::is_none")]
    pub a1: Option<VectorSpec>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub alpha: Option<Scalar>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub beta: Option<Scalar>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub mu: Option<Scalar>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub e_label: Option<String>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub e_star_label: Option<String>,
}

impl ExtensionSpec {
    pub fn from_json(text: &str) -> Result<Self> {
        Ok(serde_json::from_str(text)?)
    }
}

/// Parses either a single spec object or a list of them.
pub fn parse_specs(text: &str) -> Result<Vec<ExtensionSpec>> {
    #[derive(Deserialize)]
    #[serde(untagged)]
    enum OneOrMany {
        One(Box<ExtensionSpec>),
        Many(Vec<ExtensionSpec>),
    }
    Ok(match serde_json::from_str(text)? {
        OneOrMany::One(s) => vec![*s],
        OneOrMany::Many(v) => v,
    })
}

pub fn matrix_rows(m: &Matrix) -> Vec<Vec<String>> {
    m.to_rows().into_iter().map(|r| r.iter().map(Scalar::to_canonical_string).collect()).collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::error::AlgebraError;

    const G41: &str = r#"{
      "name": "g4_1s",
      "even_basis": ["X0", "X1"],
      "odd_basis": ["Y1", "Y2"],
      "brackets": [
        {"lhs": "X1", "rhs": "Y1", "value": [{"basis": "Y2", "coeff": "-2"}]},
        {"lhs": "Y1", "rhs": "Y1", "value": [{"basis": "X0", "coeff": "-2"}]}
      ],
      "form_B": [{"lhs": "X0", "rhs": "X1", "coeff": "1"}, {"lhs": "Y2", "rhs": "Y1", "coeff": "1"}],
      "omega": [{"lhs": "X0", "rhs": "X1", "coeff": "2"}, {"lhs": "Y2", "rhs": "Y1", "coeff": "-1"}]
    }"#;

    #[test]
    fn round_trip() {
        let data = AlgebraData::from_json(G41).unwrap();
        assert_eq!(data.algebra.dim(), 4);
        let again = AlgebraData::from_json(&data.to_json()).unwrap();
        assert_eq!(again, data);
        let delta = data.delta().unwrap();
        assert_eq!(delta.matrix, Matrix::diag(vec![Scalar::int(2), Scalar::int(-2), Scalar::int(1), Scalar::int(-1)]));
    }

    #[test]
    fn rejects_bad_files() {
        let reversed = G41.replace(r#""lhs": "X1", "rhs": "Y1""#, r#""lhs": "Y1", "rhs": "X1""#);
        assert!(matches!(AlgebraData::from_json(&reversed), Err(Error::Algebra(AlgebraError::OrderViolation { .. }))));
        let dup = G41.replace(
            r#"{"lhs": "Y1", "rhs": "Y1", "value": [{"basis": "X0", "coeff": "-2"}]}"#,
            r#"{"lhs": "Y1", "rhs": "Y1", "value": []}, {"lhs": "Y1", "rhs": "Y1", "value": []}"#,
        );
        assert!(matches!(AlgebraData::from_json(&dup), Err(Error::Algebra(AlgebraError::DuplicateBracket { .. }))));
        let bad_scalar = G41.replace(r#""coeff": "-2"}]},"#, r#""coeff": "-2/0"}]},"#);
        assert!(matches!(AlgebraData::from_json(&bad_scalar), Err(Error::Json(_))));
        let extra = G41.replace(r#""name""#, r#""nam": 1, "name""#);
        assert!(AlgebraData::from_json(&extra).is_err());
        let dup_form = G41.replace(
            r#""form_B": [{"lhs": "X0", "rhs": "X1", "coeff": "1"}"#,
            r#""form_B": [{"lhs": "X0", "rhs": "X1", "coeff": "1"}, {"lhs": "X1", "rhs": "X0", "coeff": "1"}"#,
        );
        assert!(matches!(AlgebraData::from_json(&dup_form), Err(Error::Schema(_))));
    }

    #[test]
    fn specs_parse() {
        let one = parse_specs(
            r#"{"kind": "gde", "X0": ["1", "0", "0", "0"], "alpha": "-3", "A1": [{"basis": "Y2", "coeff": "1"}]}"#,
        )
        .unwrap();
        assert_eq!(one.len(), 1);
        let basis = GradedBasis::new(&["X0", "X1"], &["Y1", "Y2"]).unwrap();
        assert_eq!(one[0].a1.as_ref().unwrap().resolve(&basis).unwrap()[3], Scalar::one());
        assert_eq!(one[0].x0.as_ref().unwrap().resolve(&basis).unwrap()[0], Scalar::one());
        let many = parse_specs(r#"[{"kind": "elem_odd"}, {"kind": "gde"}]"#).unwrap();
        assert_eq!(many.len(), 2);
    }
}
