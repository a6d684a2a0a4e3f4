use std::collections::BTreeMap;

use super::{
    delta1_extension, elementary_odd_double_extension, elementary_symplectic_lift, even_double_extension,
    generalized_double_extension, generalized_symplectic_lift, symplectic_lift_even, ExtensionCertificate, Labels,
    LiftWitness,
};
use crate::derivations::Derivation;
use crate::error::{Error, Result};
use crate::io::{resolve_matrix, AlgebraData, ExtensionSpec, VectorSpec};
use crate::linalg::{Matrix, Vector};
use crate::scalar::Scalar;
use crate::superalg::{LieSuperalgebra, Parity};

/// A construction that can be applied from an [`ExtensionSpec`].
pub trait Extension: Send + Sync {
    fn kind(&self) -> &'static str;
    fn describe(&self) -> &'static str;
    fn apply(&self, base: &AlgebraData, spec: &ExtensionSpec) -> Result<ExtensionCertificate>;
}

fn required_matrix(rows: &Option<Vec<Vec<Scalar>>>, key: &str, n: usize) -> Result<Matrix> {
    let rows = rows.as_ref().ok_or_else(|| Error::MissingParameter(key.into()))?;
    resolve_matrix(rows, n)
}

fn vector(spec: &Option<VectorSpec>, g: &LieSuperalgebra) -> Result<Option<Vector>> {
    spec.as_ref().map(|v| v.resolve(g.basis())).transpose()
}

fn required_vector(spec: &Option<VectorSpec>, key: &str, g: &LieSuperalgebra) -> Result<Vector> {
    vector(spec, g)?.ok_or_else(|| Error::MissingParameter(key.into()))
}

fn labels(spec: &ExtensionSpec) -> Option<Labels> {
    match (&spec.e_label, &spec.e_star_label) {
        (None, None) => None,
        (Some(e), None) => Some(Labels::new(e, &format!("{e}*"))),
        (None, Some(s)) => Some(Labels::new("e", s)),
        (Some(e), Some(s)) => Some(Labels::new(e, s)),
    }
}

/// `delta` from the spec, or the one determined by the base forms.
fn even_delta(base: &AlgebraData, spec: &ExtensionSpec) -> Result<Derivation> {
    match &spec.delta {
        Some(rows) => Ok(Derivation::new(Parity::Even, resolve_matrix(rows, base.algebra.dim())?)),
        None => base.delta(),
    }
}

struct EvenDe;

impl Extension for EvenDe {
    fn kind(&self) -> &'static str {
        "even_de"
    }

    fn describe(&self) -> &'static str {
        "double extension by an even skew derivation D; lifted when alpha is given"
    }

    fn apply(&self, base: &AlgebraData, spec: &ExtensionSpec) -> Result<ExtensionCertificate> {
        let g = &base.algebra;
        let d = Derivation::new(Parity::Even, required_matrix(&spec.d, "D", g.dim())?);
        let b = base.form_b()?;
        let labels = labels(spec);
        match &spec.alpha {
            None => even_double_extension(g, b, &d, labels.as_ref()),
            Some(alpha) => {
                let a0 = vector(&spec.a0, g)?.unwrap_or_else(|| vec![Scalar::zero(); g.dim()]);
                symplectic_lift_even(g, b, &even_delta(base, spec)?, &d, alpha, &a0, labels.as_ref())
            }
        }
    }
}

struct Gde;

impl Extension for Gde {
    fn kind(&self) -> &'static str {
        "gde"
    }

    fn describe(&self) -> &'static str {
        "generalized double extension by an odd skew derivation D and X0; lifted when alpha is given"
    }

    fn apply(&self, base: &AlgebraData, spec: &ExtensionSpec) -> Result<ExtensionCertificate> {
        let g = &base.algebra;
        let d = Derivation::new(Parity::Odd, required_matrix(&spec.d, "D", g.dim())?);
        let x0 = required_vector(&spec.x0, "X0", g)?;
        let b = base.form_b()?;
        let labels = labels(spec);
        match &spec.alpha {
            None => generalized_double_extension(g, b, &d, &x0, labels.as_ref()),
            Some(alpha) => {
                let w = LiftWitness {
                    alpha: alpha.clone(),
                    a: vector(&spec.a1, g)?.unwrap_or_else(|| vec![Scalar::zero(); g.dim()]),
                    mu: spec.mu.clone().unwrap_or_else(Scalar::zero),
                };
                generalized_symplectic_lift(g, b, &even_delta(base, spec)?, &d, &x0, &w, labels.as_ref())
            }
        }
    }
}

struct ElemOdd;

impl Extension for ElemOdd {
    fn kind(&self) -> &'static str {
        "elem_odd"
    }

    fn describe(&self) -> &'static str {
        "elementary odd double extension of a Lie algebra by a central isotropic X0; lifted when a delta is known"
    }

    fn apply(&self, base: &AlgebraData, spec: &ExtensionSpec) -> Result<ExtensionCertificate> {
        let g = &base.algebra;
        let x0 = required_vector(&spec.x0, "X0", g)?;
        let b = base.form_b()?;
        let labels = labels(spec);
        if spec.delta.is_some() || base.omega.is_some() {
            elementary_symplectic_lift(g, b, &even_delta(base, spec)?, &x0, labels.as_ref())
        } else {
            elementary_odd_double_extension(g, b, &x0, labels.as_ref())
        }
    }
}

struct Delta1;

impl Extension for Delta1 {
    fn kind(&self) -> &'static str {
        "delta1"
    }

    fn describe(&self) -> &'static str {
        "odd symplectic double extension by an odd derivation delta; Y0 is solved for when absent"
    }

    fn apply(&self, base: &AlgebraData, spec: &ExtensionSpec) -> Result<ExtensionCertificate> {
        let g = &base.algebra;
        let delta = Derivation::new(Parity::Odd, required_matrix(&spec.delta, "delta", g.dim())?);
        let y0 = vector(&spec.y0, g)?;
        delta1_extension(g, base.omega()?, &delta, y0.as_deref(), labels(spec).as_ref())
    }
}

/// Extensions keyed by kind.
pub struct ExtensionRegistry {
    entries: BTreeMap<&'static str, Box<dyn Extension>>,
}

impl ExtensionRegistry {
    pub fn empty() -> Self {
        ExtensionRegistry { entries: BTreeMap::new() }
    }

    pub fn standard() -> Self {
        let mut r = Self::empty();
        r.register(Box::new(EvenDe));
        r.register(Box::new(Gde));
        r.register(Box::new(ElemOdd));
        r.register(Box::new(Delta1));
        r
    }

    pub fn register(&mut self, ext: Box<dyn Extension>) {
        self.entries.insert(ext.kind(), ext);
    }

    pub fn get(&self, kind: &str) -> Result<&dyn Extension> {
        self.entries.get(kind).map(|b| b.as_ref()).ok_or_else(|| Error::UnknownKind(kind.into()))
    }

    pub fn kinds(&self) -> impl Iterator<Item = &'static str> + '_ {
        self.entries.keys().copied()
    }

    pub fn apply(&self, base: &AlgebraData, spec: &ExtensionSpec) -> Result<ExtensionCertificate> {
        self.get(&spec.kind)?.apply(base, spec)
    }
}

impl Default for ExtensionRegistry {
    fn default() -> Self {
        Self::standard()
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    const K2: &str = r#"{
        "name": "k2", "even_basis": ["X0", "X1"], "odd_basis": [], "brackets": [],
        "form_B": [{"lhs": "X0", "rhs": "X1", "coeff": "1"}],
        "omega": [{"lhs": "X0", "rhs": "X1", "coeff": "-2"}]
    }"#;

    #[test]
    fn unknown_kind() {
        let r = ExtensionRegistry::standard();
        assert!(matches!(r.get("bogus"), Err(Error::UnknownKind(_))));
        assert_eq!(r.kinds().collect::<Vec<_>>(), ["delta1", "elem_odd", "even_de", "gde"]);
    }

    #[test]
    fn elem_odd_from_spec() {
        let base = AlgebraData::from_json(K2).unwrap();
        let spec = ExtensionSpec::from_json(
            r#"{"kind": "elem_odd", "X0": [{"basis": "X0", "coeff": "-2"}], "e_label": "Y1", "e_star_label": "Y2"}"#,
        )
        .unwrap();
        let cert = ExtensionRegistry::standard().apply(&base, &spec).unwrap();
        assert_eq!(cert.algebra().basis().odd_labels(), ["Y1", "Y2"]);
        assert!(cert.delta.is_some());
        let missing = ExtensionSpec { kind: "gde".into(), ..Default::default() };
        assert!(matches!(ExtensionRegistry::standard().apply(&base, &missing), Err(Error::MissingParameter(_))));
    }
}
