//! One-dimensional double extensions, their symplectic lifts, and the
//! converse decomposition of filiform-type algebras.

mod delta1;
mod even;
mod inductive;
mod odd;
mod peel;
mod registry;
mod witness;

pub use delta1::{delta1_extension, omega_defect};
pub use even::{even_double_extension, symplectic_lift_even};
pub use inductive::{inductive_build, InductiveBuild};
pub use odd::{
    elementary_odd_double_extension, elementary_symplectic_lift, generalized_double_extension,
    generalized_symplectic_lift,
};
pub use peel::{peel, PeelCase, PeelResult};
pub use registry::{Extension, ExtensionRegistry};
pub use witness::{lift_residual, solve_generalized_lift_witness, solve_lift_witness, LiftSolutions, LiftWitness};

use serde::Serialize;
use serde_json::{json, Value};

use crate::derivations::Derivation;
use crate::error::{Error, Result};
use crate::forms::{check_quadratic, check_symplectic, BilinearForm, Symmetry};
use crate::io::{matrix_rows, AlgebraData};
use crate::linalg::{is_zero_vector, Matrix, Vector};
use crate::scalar::Scalar;
use crate::structure::filiform_flag;
use crate::superalg::{koszul, GradedBasis, LieSuperalgebra, Parity};

#[derive(Clone, Copy, PartialEq, Eq, Hash, Debug, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum ExtensionKind {
    EvenDe,
    Delta1,
    Gde,
    ElemOdd,
}

impl ExtensionKind {
    pub fn as_str(self) -> &'static str {
        match self {
            ExtensionKind::EvenDe => "even_de",
            ExtensionKind::Delta1 => "delta1",
            ExtensionKind::Gde => "gde",
            ExtensionKind::ElemOdd => "elem_odd",
        }
    }
}

/// Inputs recorded on a certificate. Vectors are in the coordinates of the
/// algebra being extended.
#[derive(Clone, PartialEq, Eq, Debug, Default)]
pub struct Witnesses {
    pub d: Option<Matrix>,
    pub x0: Option<Vector>,
    pub y0: Option<Vector>,
    pub a0: Option<Vector>,
    pub a1: Option<Vector>,
    pub alpha: Option<Scalar>,
    pub beta: Option<Scalar>,
    pub mu: Option<Scalar>,
}

#[derive(Clone, PartialEq, Eq, Debug, Serialize)]
pub struct Check {
    pub name: String,
    pub passed: bool,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub detail: Option<String>,
}

/// A constructed extension with every verified condition.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct ExtensionCertificate {
    pub kind: ExtensionKind,
    pub inputs: Witnesses,
    pub result: AlgebraData,
    /// Even invertible skew derivation of the result, when lifted.
    pub delta: Option<Derivation>,
    /// Index of `e` in the result.
    pub e: usize,
    /// Index of `e*` in the result.
    pub e_star: usize,
    pub checks: Vec<Check>,
}

impl ExtensionCertificate {
    pub fn is_valid(&self) -> bool {
        self.checks.iter().all(|c| c.passed)
    }

    /// Re-runs the checks on the result alone.
    pub fn reverify(&self) -> Vec<Check> {
        post_checks(&self.result, self.delta.as_ref())
    }

    pub fn algebra(&self) -> &LieSuperalgebra {
        &self.result.algebra
    }

    pub fn to_json(&self) -> Value {
        let g = &self.result.algebra;
        let fmt =
            |v: &Option<Vector>| v.as_ref().map(|v| v.iter().map(Scalar::to_canonical_string).collect::<Vec<_>>());
        let sc = |s: &Option<Scalar>| s.as_ref().map(Scalar::to_canonical_string);
        json!({
            "kind": self.kind.as_str(),
            "inputs": {
                "D": self.inputs.d.as_ref().map(matrix_rows),
                "X0": fmt(&self.inputs.x0),
                "Y0": fmt(&self.inputs.y0),
                "A0": fmt(&self.inputs.a0),
                "A1": fmt(&self.inputs.a1),
                "alpha": sc(&self.inputs.alpha),
                "beta": sc(&self.inputs.beta),
                "mu": sc(&self.inputs.mu),
            },
            "e": g.basis().label(self.e),
            "e_star": g.basis().label(self.e_star),
            "algebra": serde_json::to_value(self.result.to_file()).expect("algebra files serialize"),
            "delta": self.delta.as_ref().map(|d| matrix_rows(&d.matrix)),
            "checks": self.checks,
        })
    }
}

/// Labels for the two new basis vectors.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct Labels {
    pub e: String,
    pub e_star: String,
}

impl Labels {
    pub fn new(e: &str, e_star: &str) -> Self {
        Labels { e: e.to_string(), e_star: e_star.to_string() }
    }

    /// `e`/`e*`, or `e2`/`e2*` and so on if those are taken.
    pub fn fresh(basis: &GradedBasis) -> Self {
        let taken = |l: &str| basis.index(l).is_ok();
        let mut k = 1;
        loop {
            let e = if k == 1 { "e".to_string() } else { format!("e{k}") };
            let e_star = format!("{e}*");
            if !taken(&e) && !taken(&e_star) {
                return Labels { e, e_star };
            }
            k += 1;
        }
    }

    fn resolve(labels: Option<&Labels>, basis: &GradedBasis) -> Labels {
        labels.cloned().unwrap_or_else(|| Labels::fresh(basis))
    }
}

/// Position of the old basis and the two new vectors in the extension.
#[derive(Clone, Debug)]
pub(crate) struct Layout {
    pub new_index: Vec<usize>,
    pub e: usize,
    pub e_star: usize,
    pub n: usize,
    pub new_parity: Parity,
}

impl Layout {
    /// `{old even, e, e*, old odd}`
    pub fn even(g: &LieSuperalgebra) -> Self {
        let n0 = g.n_even();
        let new_index = (0..g.dim()).map(|i| if i < n0 { i } else { i + 2 }).collect();
        Layout { new_index, e: n0, e_star: n0 + 1, n: g.dim() + 2, new_parity: Parity::Even }
    }

    /// `{old even, old odd, e, e*}`
    pub fn odd(g: &LieSuperalgebra) -> Self {
        let n = g.dim();
        Layout { new_index: (0..n).collect(), e: n, e_star: n + 1, n: n + 2, new_parity: Parity::Odd }
    }

    pub fn embed(&self, v: &[Scalar]) -> Vector {
        let mut out = vec![Scalar::zero(); self.n];
        for (i, c) in v.iter().enumerate() {
            out[self.new_index[i]] = c.clone();
        }
        out
    }

    pub fn basis(&self, g: &LieSuperalgebra, labels: &Labels) -> Result<GradedBasis> {
        let b = g.basis();
        let (mut even, mut odd) = (b.even_labels().to_vec(), b.odd_labels().to_vec());
        let target = if self.new_parity == Parity::Even { &mut even } else { &mut odd };
        target.push(labels.e.clone());
        target.push(labels.e_star.clone());
        Ok(GradedBasis::new(&even, &odd)?)
    }

    pub fn empty_table(&self) -> Vec<Vec<Vector>> {
        vec![vec![vec![Scalar::zero(); self.n]; self.n]; self.n]
    }

    /// Sets `[a, b] = v` and the mirrored entry.
    pub fn set_pair(&self, basis: &GradedBasis, table: &mut [Vec<Vector>], a: usize, b: usize, v: Vector) {
        let s = koszul(basis.parity(a), basis.parity(b));
        table[b][a] = v.iter().map(|x| -(&s * x)).collect();
        table[a][b] = v;
    }

    /// Embeds a Gram matrix and pairs `e*` with `e` by `B(e*, e) = 1`.
    pub fn hyperbolic_form(&self, basis: &GradedBasis, old: &BilinearForm) -> Result<BilinearForm> {
        let mut gram = Matrix::zeros(self.n, self.n);
        let k = old.dim();
        for i in 0..k {
            for j in 0..k {
                gram[(self.new_index[i], self.new_index[j])] = old.entry(i, j).clone();
            }
        }
        let kind = old.kind();
        gram[(self.e_star, self.e)] = Scalar::one();
        let sign = match kind {
            Symmetry::Supersymmetric => koszul(self.new_parity, self.new_parity),
            Symmetry::SkewSupersymmetric => -koszul(self.new_parity, self.new_parity),
        };
        gram[(self.e, self.e_star)] = sign;
        BilinearForm::new(basis, gram, kind)
    }
}

pub(crate) fn build_algebra(name: &str, basis: GradedBasis, table: Vec<Vec<Vector>>) -> Result<LieSuperalgebra> {
    LieSuperalgebra::from_table(name, basis, table)
        .map_err(|e| Error::Internal(format!("extension is not a Lie superalgebra: {e}")))
}

/// Accumulates verified preconditions; the first failure aborts.
pub(crate) struct Checker {
    construction: &'static str,
    pub checks: Vec<Check>,
}

impl Checker {
    pub fn new(construction: &'static str) -> Self {
        Checker { construction, checks: Vec::new() }
    }

    pub fn require(&mut self, name: &str, ok: bool, detail: impl FnOnce() -> String) -> Result<()> {
        if ok {
            self.checks.push(Check { name: name.to_string(), passed: true, detail: None });
            Ok(())
        } else {
            Err(Error::precondition_with(self.construction, name, detail()))
        }
    }

    pub fn quadratic(&mut self, g: &LieSuperalgebra, b: &BilinearForm) -> Result<()> {
        let r = check_quadratic(g, b);
        self.require("B is an invariant scalar product", r.all(), || format!("{:?}", r.counterexample))
    }

    pub fn symplectic(&mut self, g: &LieSuperalgebra, w: &BilinearForm) -> Result<()> {
        let r = check_symplectic(g, w);
        self.require("omega is a symplectic structure", r.all(), || format!("{:?}", r.counterexample))
    }

    pub fn derivation(&mut self, g: &LieSuperalgebra, d: &Derivation, parity: Parity, name: &str) -> Result<()> {
        self.require(&format!("{name} is {parity}"), d.parity == parity && d.respects_parity(g.basis()), || {
            format!("{name} does not map each block into the {parity}-shifted block")
        })?;
        let fail = d.leibniz_failure(g);
        self.require(&format!("{name} is a derivation"), fail.is_none(), || {
            let (i, j, r) = fail.clone().unwrap();
            format!("Leibniz fails on ({},{}): {}", g.basis().label(i), g.basis().label(j), g.format_vector(&r))
        })
    }

    pub fn skew(&mut self, g: &LieSuperalgebra, b: &BilinearForm, d: &Derivation, name: &str) -> Result<()> {
        self.require(&format!("{name} is skew-supersymmetric for B"), d.is_skew_wrt(g.basis(), b), String::new)
    }

    /// `delta` is an even invertible skew derivation and `B(delta ., .)` is symplectic.
    pub fn symplectic_delta(
        &mut self,
        g: &LieSuperalgebra,
        b: &BilinearForm,
        delta: &Derivation,
    ) -> Result<BilinearForm> {
        self.derivation(g, delta, Parity::Even, "delta")?;
        self.skew(g, b, delta, "delta")?;
        self.require("delta is invertible", delta.is_invertible(), String::new)?;
        let w = BilinearForm::new(
            g.basis(),
            crate::derivations::omega_gram(b.gram(), &delta.matrix),
            Symmetry::SkewSupersymmetric,
        )?;
        self.symplectic(g, &w)?;
        Ok(w)
    }

    pub fn vector_parity(&mut self, g: &LieSuperalgebra, v: &[Scalar], parity: Parity, name: &str) -> Result<()> {
        let ok = v.len() == g.dim() && (is_zero_vector(v) || g.basis().parity_of(v) == Some(parity));
        self.require(&format!("{name} is {parity}"), ok, || g.format_vector(v))
    }

    pub fn matrix_zero(&mut self, g: &LieSuperalgebra, name: &str, m: &Matrix) -> Result<()> {
        self.require(name, m.is_zero(), || {
            let j = (0..m.cols()).find(|&j| !is_zero_vector(&m.column(j))).unwrap_or(0);
            format!("residual on {}: {}", g.basis().label(j), g.format_vector(&m.column(j)))
        })
    }
}

/// Checks every extension must pass on its result.
pub(crate) fn post_checks(result: &AlgebraData, delta: Option<&Derivation>) -> Vec<Check> {
    let g = &result.algebra;
    let mut out = Vec::new();
    let mut push =
        |name: &str, passed: bool, detail: Option<String>| out.push(Check { name: name.to_string(), passed, detail });
    if let Some(b) = &result.form_b {
        let r = check_quadratic(g, b);
        push("result is quadratic", r.all(), r.counterexample.map(|c| format!("{c:?}")));
    }
    if let Some(w) = &result.omega {
        let r = check_symplectic(g, w);
        push("result is symplectic", r.all(), r.counterexample.map(|c| format!("{c:?}")));
    }
    if let (Some(d), Some(b)) = (delta, &result.form_b) {
        push("lifted delta is an even derivation", d.parity == Parity::Even && d.is_derivation_of(g), None);
        push("lifted delta is skew-supersymmetric", d.is_skew_wrt(g.basis(), b), None);
        push("lifted delta is invertible", d.is_invertible(), None);
        let matches =
            result.omega.as_ref().is_some_and(|w| *w.gram() == crate::derivations::omega_gram(b.gram(), &d.matrix));
        push("omega = B(delta ., .)", matches, None);
    }
    out
}

/// Runs [`post_checks`] and turns any failure into an internal error.
pub(crate) fn finish(
    kind: ExtensionKind,
    inputs: Witnesses,
    result: AlgebraData,
    delta: Option<Derivation>,
    layout: &Layout,
    mut checks: Vec<Check>,
) -> Result<ExtensionCertificate> {
    let post = post_checks(&result, delta.as_ref());
    if let Some(bad) = post.iter().find(|c| !c.passed) {
        return Err(Error::Internal(format!(
            "{}: {} fails {}",
            kind.as_str(),
            bad.name,
            bad.detail.clone().unwrap_or_default()
        )));
    }
    checks.extend(post);
    Ok(ExtensionCertificate { kind, inputs, result, delta, e: layout.e, e_star: layout.e_star, checks })
}

/// `omega = B(delta ., .)` on the extension, as a form.
pub(crate) fn lifted_omega(basis: &GradedBasis, b: &BilinearForm, delta: &Derivation) -> Result<BilinearForm> {
    BilinearForm::new(basis, crate::derivations::omega_gram(b.gram(), &delta.matrix), Symmetry::SkewSupersymmetric)
        .map_err(|e| Error::Internal(format!("lifted form is not skew-supersymmetric: {e}")))
}

/// Checks that the filiform flag of `g` has the given levels.
pub(crate) fn flag_matches(g: &LieSuperalgebra, expected: &[crate::subspace::Subspace]) -> bool {
    filiform_flag(g)
        .is_some_and(|f| (0..expected.len()).all(|i| f.level(i) == &expected[i]) && f.m() + 1 == expected.len())
}
