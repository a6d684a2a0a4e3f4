use serde::Serialize;
use serde_json::{json, Value};

use super::{elementary_symplectic_lift, generalized_symplectic_lift, ExtensionCertificate, Labels, LiftWitness};
use crate::derivations::{delta_from_omega, Derivation};
use crate::error::{Error, Result};
use crate::forms::{check_quadratic, check_symplectic, orthogonal, BilinearForm};
use crate::io::{matrix_rows, AlgebraData};
use crate::linalg::{scale_vec, unit_vector, Matrix, Vector};
use crate::scalar::Scalar;
use crate::structure::{filiform_flag, Flag};
use crate::subspace::Subspace;
use crate::superalg::{GradedBasis, LieSuperalgebra, Parity};

#[derive(Clone, Copy, PartialEq, Eq, Debug, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum PeelCase {
    /// `dim g_1 = 2`: an elementary odd extension of a Lie algebra.
    ElementaryOdd,
    /// `dim g_1 > 2`: a generalized double extension.
    Generalized,
}

/// Decomposition of a quadratic symplectic algebra of filiform type as a
/// one-step extension of a smaller one.
#[derive(Clone, Debug)]
pub struct PeelResult {
    pub case: PeelCase,
    pub base: AlgebraData,
    /// Basis of the base algebra in the coordinates of the input.
    pub section: Vec<Vector>,
    pub e: Vector,
    pub e_star: Vector,
    /// `[e, e]` in base coordinates.
    pub x0: Vector,
    pub d: Option<Derivation>,
    pub alpha: Option<Scalar>,
    pub beta: Option<Scalar>,
    pub mu: Option<Scalar>,
    pub nu: Option<Scalar>,
    pub rebuilt: ExtensionCertificate,
    /// Columns: section, then `e`, then `e*`.
    pub change_of_basis: Matrix,
}

impl PeelResult {
    pub fn to_json(&self, g: &LieSuperalgebra) -> Value {
        let base = &self.base.algebra;
        let sc = |s: &Option<Scalar>| s.as_ref().map(Scalar::to_canonical_string);
        json!({
            "case": self.case,
            "base": serde_json::to_value(self.base.to_file()).expect("algebra files serialize"),
            "section": self.section.iter().map(|v| g.format_vector(v)).collect::<Vec<_>>(),
            "e": g.format_vector(&self.e),
            "e_star": g.format_vector(&self.e_star),
            "X0": base.format_vector(&self.x0),
            "D": self.d.as_ref().map(|d| matrix_rows(&d.matrix)),
            "alpha": sc(&self.alpha),
            "beta": sc(&self.beta),
            "mu": sc(&self.mu),
            "nu": sc(&self.nu),
            "change_of_basis": matrix_rows(&self.change_of_basis),
            "rebuilt_checks": self.rebuilt.checks,
        })
    }
}

fn internal(what: impl Into<String>) -> Error {
    Error::Internal(what.into())
}

/// Odd unit vectors of `V_k` outside `V_(k-1)`, then the echelon basis of `V_k`.
fn pool(g: &LieSuperalgebra, flag: &Flag, k: usize) -> Vec<Vector> {
    let n = g.dim();
    let (top, below) = (flag.level(k), flag.level(k - 1));
    g.basis()
        .odd_range()
        .map(|i| unit_vector(n, i))
        .chain(top.basis().iter().cloned())
        .filter(|v| top.contains(v) && !below.contains(v))
        .collect()
}

/// `e1` spanning `V_1`, and the first pool vector pairing with it,
/// with `e1` rescaled so that `B(e1, e_k) = 1`.
fn pairing(g: &LieSuperalgebra, b: &BilinearForm, flag: &Flag, k: usize) -> Result<(Vector, Vector)> {
    let e1 = flag.v1().basis()[0].clone();
    let ek = pool(g, flag, k)
        .into_iter()
        .find(|v| !b.eval(&e1, v).is_zero())
        .ok_or_else(|| internal(format!("no vector of V_{k} pairs with V_1")))?;
    let s = b.eval(&e1, &ek).inv().expect("nonzero pairing");
    Ok((scale_vec(&e1, &s), ek))
}

fn unit_label(basis: &GradedBasis, v: &[Scalar]) -> Option<String> {
    let nz: Vec<usize> = (0..v.len()).filter(|&i| !v[i].is_zero()).collect();
    (nz.len() == 1 && v[nz[0]].is_one()).then(|| basis.label(nz[0]).to_string())
}

/// Labels for `e` and `e*`: the input labels when these are basis vectors.
fn pick_labels(g: &LieSuperalgebra, base: &[String], e: &[Scalar], e_star: &[Scalar]) -> Labels {
    let taken = |l: &String| base.contains(l);
    match (unit_label(g.basis(), e), unit_label(g.basis(), e_star)) {
        (Some(a), Some(b)) if !taken(&a) && !taken(&b) => Labels { e: a, e_star: b },
        _ => {
            let even: Vec<&str> = base.iter().map(String::as_str).collect();
            Labels::fresh(&GradedBasis::new(&even, &[] as &[&str]).expect("base labels are distinct"))
        }
    }
}

fn restrict(form: &BilinearForm, basis: &GradedBasis, t: &Matrix, k: usize) -> Result<BilinearForm> {
    let full = form.transform(t);
    let gram = Matrix::from_rows((0..k).map(|i| full.gram().row(i)[..k].to_vec()).collect());
    BilinearForm::new(basis, gram, form.kind()).map_err(|e| internal(format!("restricted form: {e}")))
}

/// Compares the rebuilt extension with `g` in the adapted basis.
fn compare(g: &AlgebraData, t: &Matrix, rebuilt: &ExtensionCertificate) -> Result<()> {
    let labels = rebuilt.algebra().basis().labels();
    let adapted = g.algebra.change_of_basis_labelled(t, labels).map_err(|e| internal(format!("adapted basis: {e}")))?;
    if adapted.table() != rebuilt.algebra().table() {
        return Err(internal("rebuilt extension differs from the input brackets"));
    }
    let same_b = rebuilt.result.form_b.as_ref() == Some(&g.form_b()?.transform(t));
    let same_w = rebuilt.result.omega.as_ref() == Some(&g.omega()?.transform(t));
    if !(same_b && same_w) {
        return Err(internal("rebuilt extension differs from the input forms"));
    }
    Ok(())
}

fn with_internal<T>(r: Result<T>, step: &str) -> Result<T> {
    r.map_err(|e| match e {
        Error::Internal(s) => Error::Internal(s),
        other => internal(format!("{step}: {other}")),
    })
}

fn peel_elementary(data: &AlgebraData, flag: &Flag) -> Result<PeelResult> {
    let g = &data.algebra;
    let (b, omega) = (data.form_b()?, data.omega()?);
    let n = g.dim();
    let (e1, e2) = pairing(g, b, flag, 2)?;
    let delta = delta_from_omega(b, omega)?;
    let image = delta.apply(&e2);
    let cols = Matrix::from_columns(n, &[e2.clone(), e1.clone()]);
    let mn = cols.solve_vec(&image)?.ok_or_else(|| internal("delta(e2) is not in K e2 + K e1"))?;
    let (mu, nu) = (mn[0].clone(), mn[1].clone());
    if mu.is_zero() {
        return Err(internal("delta(e2) has no e2 component"));
    }
    let shift = &nu / &(&mu * &Scalar::int(2));
    let e: Vector = e2.iter().zip(&e1).map(|(a, c)| a + &(&shift * c)).collect();
    let e_star = e1;

    let sub =
        g.subquotient(&orthogonal(b, flag.v1()), flag.v1()).map_err(|e| internal(format!("V_1^perp / V_1: {e}")))?;
    let h = sub.algebra.clone();
    if h.n_odd() != 0 {
        return Err(internal("V_1^perp / V_1 has an odd part"));
    }
    let mut cols: Vec<Vector> = sub.section.clone();
    cols.push(e.clone());
    cols.push(e_star.clone());
    let t = Matrix::from_columns(n, &cols);
    let k = h.dim();
    let b_h = restrict(b, h.basis(), &t, k)?;
    let w_h = restrict(omega, h.basis(), &t, k)?;
    let delta_h = delta_from_omega(&b_h, &w_h)?;
    let ee = g.bracket_vec(&e, &e);
    let x0 = sub.project(n, &ee).ok_or_else(|| internal("[e, e] is not in V_1^perp"))?;

    let labels = pick_labels(g, h.basis().labels(), &e, &e_star);
    let rebuilt = with_internal(
        elementary_symplectic_lift(&h, &b_h, &delta_h, &x0, Some(&labels)),
        "rebuilding the elementary extension",
    )?;
    compare(data, &t, &rebuilt)?;
    Ok(PeelResult {
        case: PeelCase::ElementaryOdd,
        base: AlgebraData::with_forms(h, Some(b_h), Some(w_h)),
        section: sub.section,
        e,
        e_star,
        x0,
        d: None,
        alpha: None,
        beta: Some(&mu * &Scalar::int(2)),
        mu: Some(mu),
        nu: Some(nu),
        rebuilt,
        change_of_basis: t,
    })
}

/// Homogeneous basis of `s`, unit vectors first.
fn adapted_basis(g: &LieSuperalgebra, s: &Subspace) -> (Vec<Vector>, Vec<String>) {
    let n = g.dim();
    let mut vs: Vec<Vector> = Vec::new();
    let mut labels = Vec::new();
    let mut k = 0;
    for parity in [Parity::Even, Parity::Odd] {
        let range = if parity == Parity::Even { g.basis().even_range() } else { g.basis().odd_range() };
        let part = s.restrict_to(range.clone());
        let mut chosen = Subspace::zero(n);
        let candidates = range.map(|i| unit_vector(n, i)).chain(part.basis().iter().cloned());
        for v in candidates {
            if part.contains(&v) && !chosen.contains(&v) {
                chosen = chosen.sum(&Subspace::span(n, std::slice::from_ref(&v)));
                labels.push(unit_label(g.basis(), &v).unwrap_or_else(|| {
                    k += 1;
                    format!("h{k}")
                }));
                vs.push(v);
            }
        }
    }
    (vs, labels)
}

fn peel_generalized(data: &AlgebraData, flag: &Flag) -> Result<PeelResult> {
    let g = &data.algebra;
    let (b, omega) = (data.form_b()?, data.omega()?);
    let n = g.dim();
    let m = flag.m();
    let (e_star, e) = pairing(g, b, flag, m)?;
    let h_space = orthogonal(b, &Subspace::span(n, &[e_star.clone(), e.clone()]));
    let (section, h_labels) = adapted_basis(g, &h_space);
    let k = section.len();
    if k + 2 != n {
        return Err(internal("complement of the hyperbolic plane has the wrong dimension"));
    }
    let mut cols = section.clone();
    cols.push(e.clone());
    cols.push(e_star.clone());
    let t = Matrix::from_columns(n, &cols);
    let n_even_h = section.iter().filter(|v| g.basis().parity_of(v) == Some(Parity::Even)).count();

    let labels = pick_labels(g, &h_labels, &e, &e_star);
    let mut all_labels = h_labels.clone();
    all_labels.push(labels.e.clone());
    all_labels.push(labels.e_star.clone());
    let adapted = g.change_of_basis_labelled(&t, &all_labels).map_err(|e| internal(format!("adapted basis: {e}")))?;
    let (ie, is) = (k, k + 1);

    let h_basis = GradedBasis::new(&h_labels[..n_even_h], &h_labels[n_even_h..])?;
    let mut table = vec![vec![vec![Scalar::zero(); k]; k]; k];
    for (a, row) in table.iter_mut().enumerate() {
        for (c, entry) in row.iter_mut().enumerate() {
            let v = adapted.structure(a, c);
            if !v[ie].is_zero() {
                return Err(internal(format!("[{}, {}] has an e component", h_labels[a], h_labels[c])));
            }
            *entry = v[..k].to_vec();
        }
    }
    let h = LieSuperalgebra::from_table(&format!("{}/peeled", g.name()), h_basis.clone(), table)
        .map_err(|e| internal(format!("peeled base is not a Lie superalgebra: {e}")))?;
    let d_cols: Vec<Vector> = (0..k).map(|a| adapted.structure(ie, a)[..k].to_vec()).collect();
    let d = Derivation::new(Parity::Odd, Matrix::from_columns(k, &d_cols));
    let x0 = adapted.structure(ie, ie)[..k].to_vec();
    let b_h = restrict(b, &h_basis, &t, k)?;
    let w_h = restrict(omega, &h_basis, &t, k)?;

    let b_full = b.transform(&t);
    let w_full = omega.transform(&t);
    let delta_full = delta_from_omega(&b_full, &w_full)?;
    let delta_h = Derivation::new(
        Parity::Even,
        Matrix::from_rows((0..k).map(|i| delta_full.matrix.row(i)[..k].to_vec()).collect()),
    );
    let alpha = delta_full.matrix[(is, is)].clone();
    let de = delta_full.matrix.column(ie);
    let witness = LiftWitness { alpha: alpha.clone(), a: de[..k].to_vec(), mu: de[is].clone() };

    let rebuilt = with_internal(
        generalized_symplectic_lift(&h, &b_h, &delta_h, &d, &x0, &witness, Some(&labels)),
        "rebuilding the generalized extension",
    )?;
    compare(data, &t, &rebuilt)?;
    Ok(PeelResult {
        case: PeelCase::Generalized,
        base: AlgebraData::with_forms(h, Some(b_h), Some(w_h)),
        section,
        e,
        e_star,
        x0,
        d: Some(d),
        alpha: Some(alpha),
        beta: None,
        mu: Some(witness.mu),
        nu: None,
        rebuilt,
        change_of_basis: t,
    })
}

/// Splits off the hyperbolic plane spanned by `V_1` and a partner in the top
/// level of the filiform flag.
pub fn peel(data: &AlgebraData) -> Result<PeelResult> {
    let g = &data.algebra;
    let (b, omega) = (data.form_b()?, data.omega()?);
    let q = check_quadratic(g, b);
    if !q.all() {
        return Err(Error::FormMismatch(format!("B is not an invariant scalar product: {:?}", q.counterexample)));
    }
    let s = check_symplectic(g, omega);
    if !s.all() {
        return Err(Error::FormMismatch(format!("omega is not a symplectic structure: {:?}", s.counterexample)));
    }
    let flag = filiform_flag(g).ok_or(Error::NotFiliform)?;
    match flag.m() {
        0 | 1 => Err(Error::NotFiliform),
        2 => peel_elementary(data, &flag),
        _ => peel_generalized(data, &flag),
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::forms::Symmetry;
    use crate::superalg::AlgebraBuilder;

    fn g41() -> AlgebraData {
        let g = AlgebraBuilder::new("g4_1s", &["X0", "X1"], &["Y1", "Y2"])
            .bracket_int("X1", "Y1", &[("Y2", -2)])
            .bracket_int("Y1", "Y1", &[("X0", -2)])
            .build()
            .unwrap();
        let b = BilinearForm::from_pairs(
            g.basis(),
            Symmetry::Supersymmetric,
            &[("X0", "X1", Scalar::one()), ("Y2", "Y1", Scalar::one())],
        )
        .unwrap();
        let delta = Derivation::new(Parity::Even, Matrix::diag([2, -2, 1, -1].map(Scalar::int).to_vec()));
        let w = crate::derivations::omega_from_delta(g.basis(), &b, &delta).unwrap();
        AlgebraData::with_forms(g, Some(b), Some(w))
    }

    #[test]
    fn elementary_case() {
        let data = g41();
        let p = peel(&data).unwrap();
        assert_eq!(p.case, PeelCase::ElementaryOdd);
        assert_eq!(p.base.algebra.dim(), 2);
        assert!(p.base.algebra.is_abelian());
        assert_eq!(p.beta, Some(Scalar::int(2)));
        assert!(p.rebuilt.is_valid());
    }

    #[test]
    fn generalized_case_recovers_base() {
        let data = g41();
        let (g, b) = (&data.algebra, data.form_b().unwrap());
        let mut d = Matrix::zeros(4, 4);
        d[(2, 1)] = Scalar::int(-2);
        d[(0, 3)] = Scalar::int(-2);
        let d = Derivation::new(Parity::Odd, d);
        let delta = data.delta().unwrap();
        let w = LiftWitness { alpha: Scalar::int(-3), a: unit_vector(4, 3), mu: Scalar::zero() };
        let cert = generalized_symplectic_lift(g, b, &delta, &d, &unit_vector(4, 0), &w, None).unwrap();
        let p = peel(&cert.result).unwrap();
        assert_eq!(p.case, PeelCase::Generalized);
        assert_eq!(p.base.algebra.dim(), 4);
        assert_eq!(filiform_flag(&p.base.algebra).unwrap().dims(), vec![2, 1, 0]);
        let inner = peel(&p.base).unwrap();
        assert_eq!(inner.case, PeelCase::ElementaryOdd);
    }

    #[test]
    fn rejects_non_filiform() {
        let g = LieSuperalgebra::abelian("k", &["X0", "X1"], &[] as &[&str]).unwrap();
        let b = BilinearForm::from_pairs(g.basis(), Symmetry::Supersymmetric, &[("X0", "X1", Scalar::one())]).unwrap();
        let w =
            BilinearForm::from_pairs(g.basis(), Symmetry::SkewSupersymmetric, &[("X0", "X1", Scalar::one())]).unwrap();
        assert!(matches!(peel(&AlgebraData::with_forms(g, Some(b), Some(w))), Err(Error::NotFiliform)));
    }
}
