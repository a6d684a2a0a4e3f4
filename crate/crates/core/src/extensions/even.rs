use super::{
    build_algebra, finish, lifted_omega, Checker, ExtensionCertificate, ExtensionKind, Labels, Layout, Witnesses,
};
use crate::derivations::Derivation;
use crate::error::Result;
use crate::forms::BilinearForm;
use crate::io::AlgebraData;
use crate::linalg::{unit_vector, Matrix};
use crate::scalar::Scalar;
use crate::structure::filiform_flag;
use crate::superalg::{LieSuperalgebra, Parity};

const NAME: &str = "even double extension";

fn preconditions(ch: &mut Checker, g: &LieSuperalgebra, b: &BilinearForm, d: &Derivation) -> Result<()> {
    ch.quadratic(g, b)?;
    ch.derivation(g, d, Parity::Even, "D")?;
    ch.skew(g, b, d, "D")
}

fn build(
    g: &LieSuperalgebra,
    b: &BilinearForm,
    d: &Derivation,
    labels: &Labels,
) -> Result<(LieSuperalgebra, BilinearForm, Layout)> {
    let lay = Layout::even(g);
    let basis = lay.basis(g, labels)?;
    let n = g.dim();
    let mut table = lay.empty_table();
    let images: Vec<_> = (0..n).map(|j| d.matrix.column(j)).collect();
    for i in 0..n {
        for j in 0..n {
            let mut v = lay.embed(g.structure(i, j));
            v[lay.e_star] = b.eval(&images[i], &unit_vector(n, j));
            table[lay.new_index[i]][lay.new_index[j]] = v;
        }
        lay.set_pair(&basis, &mut table, lay.e, lay.new_index[i], lay.embed(&images[i]));
    }
    let form = lay.hyperbolic_form(&basis, b)?;
    let name = format!("{}+even_de", g.name());
    Ok((build_algebra(&name, basis, table)?, form, lay))
}

/// `K e ⊕ g ⊕ K e*` with `[e, X] = D(X)` and `[X, Y] = [X, Y]_g + B(DX, Y) e*`.
pub fn even_double_extension(
    g: &LieSuperalgebra,
    b: &BilinearForm,
    d: &Derivation,
    labels: Option<&Labels>,
) -> Result<ExtensionCertificate> {
    let mut ch = Checker::new(NAME);
    preconditions(&mut ch, g, b, d)?;
    let (alg, form, lay) = build(g, b, d, &Labels::resolve(labels, g.basis()))?;
    let inputs = Witnesses { d: Some(d.matrix.clone()), ..Default::default() };
    finish(ExtensionKind::EvenDe, inputs, AlgebraData::with_forms(alg, Some(form), None), None, &lay, ch.checks)
}

/// Extension together with
/// `delta~(e*) = alpha e*`, `delta~(e) = -alpha e + A0`, `delta~(X) = delta(X) - B(X, A0) e*`.
pub fn symplectic_lift_even(
    g: &LieSuperalgebra,
    b: &BilinearForm,
    delta: &Derivation,
    d: &Derivation,
    alpha: &Scalar,
    a0: &[Scalar],
    labels: Option<&Labels>,
) -> Result<ExtensionCertificate> {
    let mut ch = Checker::new("even symplectic lift");
    preconditions(&mut ch, g, b, d)?;
    ch.symplectic_delta(g, b, delta)?;
    ch.require("alpha is nonzero", !alpha.is_zero(), String::new)?;
    ch.vector_parity(g, a0, Parity::Even, "A0")?;
    let residual = super::lift_residual(g, delta, d, alpha, a0);
    ch.matrix_zero(g, "[delta, D] + alpha D = ad(A0)", &residual)?;

    let (alg, form, lay) = build(g, b, d, &Labels::resolve(labels, g.basis()))?;
    let n = g.dim();
    let mut cols = vec![vec![Scalar::zero(); lay.n]; lay.n];
    for i in 0..n {
        let mut c = lay.embed(&delta.matrix.column(i));
        c[lay.e_star] = -b.eval(&unit_vector(n, i), a0);
        cols[lay.new_index[i]] = c;
    }
    let mut ce = lay.embed(a0);
    ce[lay.e] = -alpha;
    cols[lay.e] = ce;
    cols[lay.e_star][lay.e_star] = alpha.clone();
    let lifted = Derivation::new(Parity::Even, Matrix::from_columns(lay.n, &cols));
    let omega = lifted_omega(alg.basis(), &form, &lifted)?;

    if filiform_flag(g).is_some() {
        ch.require("filiform type is preserved", filiform_flag(&alg).is_some(), String::new)
            .map_err(|e| crate::error::Error::Internal(e.to_string()))?;
    }
    let inputs = Witnesses {
        d: Some(d.matrix.clone()),
        a0: Some(a0.to_vec()),
        alpha: Some(alpha.clone()),
        ..Default::default()
    };
    finish(
        ExtensionKind::EvenDe,
        inputs,
        AlgebraData::with_forms(alg, Some(form), Some(omega)),
        Some(lifted),
        &lay,
        ch.checks,
    )
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::error::Error;
    use crate::forms::Symmetry;
    use crate::superalg::AlgebraBuilder;

    fn g41() -> (LieSuperalgebra, BilinearForm) {
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
        (g, b)
    }

    #[test]
    fn zero_derivation_gives_trivial_extension() {
        let (g, b) = g41();
        let cert = even_double_extension(&g, &b, &Derivation::zero(4, Parity::Even), None).unwrap();
        let h = cert.algebra();
        assert_eq!(h.basis().labels(), ["X0", "X1", "e", "e*", "Y1", "Y2"]);
        assert_eq!(h.nonzero_brackets().len(), 2);
        assert!(cert.is_valid());
    }

    #[test]
    fn prop33_brackets_and_lift() {
        let (g, b) = g41();
        let d = Derivation::new(Parity::Even, Matrix::unit(4, 3, 2));
        let cert = even_double_extension(&g, &b, &d, None).unwrap();
        let h = cert.algebra();
        let v = |t: &[(&str, i64)]| h.vector(&t.iter().map(|&(l, c)| (l, Scalar::int(c))).collect::<Vec<_>>()).unwrap();
        assert_eq!(h.bracket_labels("e", "Y1").unwrap(), v(&[("Y2", 1)]));
        assert_eq!(h.bracket_labels("Y1", "Y1").unwrap(), v(&[("X0", -2), ("e*", 1)]));

        let delta = Derivation::new(Parity::Even, Matrix::diag([2, -2, 1, -1].map(Scalar::int).to_vec()));
        let lift = symplectic_lift_even(&g, &b, &delta, &d, &Scalar::int(2), &vec![Scalar::zero(); 4], None).unwrap();
        assert_eq!(lift.delta.unwrap().matrix, Matrix::diag([2, -2, -2, 2, 1, -1].map(Scalar::int).to_vec()));
    }

    #[test]
    fn lift_rejects_wrong_alpha() {
        let (g, b) = g41();
        let d = Derivation::new(Parity::Even, Matrix::unit(4, 3, 2));
        let delta = Derivation::new(Parity::Even, Matrix::diag([2, -2, 1, -1].map(Scalar::int).to_vec()));
        let err =
            symplectic_lift_even(&g, &b, &delta, &d, &Scalar::int(1), &vec![Scalar::zero(); 4], None).unwrap_err();
        assert!(matches!(err, Error::Precondition { .. }), "{err}");
        let not_skew = Derivation::new(Parity::Even, Matrix::unit(4, 0, 0));
        assert!(even_double_extension(&g, &b, &not_skew, None).is_err());
    }
}
