use super::{
    build_algebra, finish, flag_matches, lift_residual, lifted_omega, Checker, ExtensionCertificate, ExtensionKind,
    Labels, Layout, LiftWitness, Witnesses,
};
use crate::derivations::Derivation;
use crate::error::{Error, Result};
use crate::forms::BilinearForm;
use crate::io::AlgebraData;
use crate::linalg::{is_zero_vector, sub_vec, unit_vector, Matrix, Vector};
use crate::scalar::Scalar;
use crate::structure::filiform_flag;
use crate::subspace::Subspace;
use crate::superalg::{LieSuperalgebra, Parity};

fn gde_preconditions(
    ch: &mut Checker,
    g: &LieSuperalgebra,
    b: &BilinearForm,
    d: &Derivation,
    x0: &[Scalar],
) -> Result<()> {
    ch.quadratic(g, b)?;
    ch.derivation(g, d, Parity::Odd, "D")?;
    ch.skew(g, b, d, "D")?;
    ch.vector_parity(g, x0, Parity::Even, "X0")?;
    let dx0 = d.apply(x0);
    ch.require("D(X0) = 0", is_zero_vector(&dx0), || g.format_vector(&dx0))?;
    let bxx = b.eval(x0, x0);
    ch.require("B(X0, X0) = 0", bxx.is_zero(), || bxx.to_string())?;
    let residual = d.matrix.mul(&d.matrix).sub(&g.ad(x0).scale(&Scalar::frac(1, 2)));
    ch.matrix_zero(g, "D^2 = ad(X0) / 2", &residual)
}

/// `[e, e] = X0`, `[e, X] = D(X) - B(X, X0) e*`, `[X, Y] = [X, Y]_g - B(DX, Y) e*`.
fn build(
    g: &LieSuperalgebra,
    b: &BilinearForm,
    d: &Derivation,
    x0: &[Scalar],
    labels: &Labels,
    tag: &str,
) -> Result<(LieSuperalgebra, BilinearForm, Layout)> {
    let lay = Layout::odd(g);
    let basis = lay.basis(g, labels)?;
    let n = g.dim();
    let mut table = lay.empty_table();
    let images: Vec<Vector> = (0..n).map(|j| d.matrix.column(j)).collect();
    for i in 0..n {
        for j in 0..n {
            let mut v = lay.embed(g.structure(i, j));
            v[lay.e_star] = -b.eval(&images[i], &unit_vector(n, j));
            table[i][j] = v;
        }
        let mut v = lay.embed(&images[i]);
        v[lay.e_star] = -b.eval(&unit_vector(n, i), x0);
        lay.set_pair(&basis, &mut table, lay.e, i, v);
    }
    table[lay.e][lay.e] = lay.embed(x0);
    let form = lay.hyperbolic_form(&basis, b)?;
    Ok((build_algebra(&format!("{}+{tag}", g.name()), basis, table)?, form, lay))
}

/// Lifted map `delta~(X) = delta(X) - B(X, A) e*`, `delta~(e) = mu e* + A - alpha e`,
/// `delta~(e*) = alpha e*`.
fn lifted_delta(lay: &Layout, b: &BilinearForm, delta: &Derivation, w: &LiftWitness) -> Derivation {
    let n = delta.matrix.rows();
    let mut cols = vec![vec![Scalar::zero(); lay.n]; lay.n];
    for (i, col) in cols.iter_mut().enumerate().take(n) {
        *col = lay.embed(&delta.matrix.column(i));
        col[lay.e_star] = -b.eval(&unit_vector(n, i), &w.a);
    }
    let mut ce = lay.embed(&w.a);
    ce[lay.e] = -&w.alpha;
    ce[lay.e_star] = w.mu.clone();
    cols[lay.e] = ce;
    cols[lay.e_star][lay.e_star] = w.alpha.clone();
    Derivation::new(Parity::Even, Matrix::from_columns(lay.n, &cols))
}

pub fn generalized_double_extension(
    g: &LieSuperalgebra,
    b: &BilinearForm,
    d: &Derivation,
    x0: &[Scalar],
    labels: Option<&Labels>,
) -> Result<ExtensionCertificate> {
    let mut ch = Checker::new("generalized double extension");
    gde_preconditions(&mut ch, g, b, d, x0)?;
    let (alg, form, lay) = build(g, b, d, x0, &Labels::resolve(labels, g.basis()), "gde")?;
    let inputs = Witnesses { d: Some(d.matrix.clone()), x0: Some(x0.to_vec()), ..Default::default() };
    finish(ExtensionKind::Gde, inputs, AlgebraData::with_forms(alg, Some(form), None), None, &lay, ch.checks)
}

/// Expected flag `V~_i = V_{i-1} ⊕ K e*`, `V~_{m+2} = K e ⊕ V_m ⊕ K e*`.
fn expected_flag(lay: &Layout, levels: &[Subspace]) -> Vec<Subspace> {
    let star = Subspace::span(lay.n, &[unit_vector(lay.n, lay.e_star)]);
    let embed = |s: &Subspace| Subspace::span(lay.n, &s.basis().iter().map(|v| lay.embed(v)).collect::<Vec<_>>());
    let mut out = vec![Subspace::zero(lay.n)];
    for v in levels {
        out.push(embed(v).sum(&star));
    }
    let top = out.last().unwrap().sum(&Subspace::span(lay.n, &[unit_vector(lay.n, lay.e)]));
    out.push(top);
    out
}

pub fn generalized_symplectic_lift(
    g: &LieSuperalgebra,
    b: &BilinearForm,
    delta: &Derivation,
    d: &Derivation,
    x0: &[Scalar],
    w: &LiftWitness,
    labels: Option<&Labels>,
) -> Result<ExtensionCertificate> {
    let mut ch = Checker::new("generalized symplectic lift");
    gde_preconditions(&mut ch, g, b, d, x0)?;
    ch.symplectic_delta(g, b, delta)?;
    ch.require("alpha is nonzero", !w.alpha.is_zero(), String::new)?;
    ch.vector_parity(g, &w.a, Parity::Odd, "A1")?;
    ch.matrix_zero(g, "[delta, D] + alpha D = ad(A1)", &lift_residual(g, delta, d, &w.alpha, &w.a))?;
    let mut rhs: Vector = x0.iter().map(|x| x * &w.alpha).collect();
    for (r, y) in rhs.iter_mut().zip(delta.apply(x0)) {
        *r += &(&y * &Scalar::frac(1, 2));
    }
    let gap = sub_vec(&d.apply(&w.a), &rhs);
    ch.require("D(A1) = alpha X0 + delta(X0) / 2", is_zero_vector(&gap), || g.format_vector(&gap))?;
    let flag = filiform_flag(g);
    ch.require("g is of filiform type", flag.is_some(), String::new)?;
    let flag = flag.unwrap();
    let image = Subspace::span(g.dim(), &g.basis().even_range().map(|j| d.matrix.column(j)).collect::<Vec<_>>());
    ch.require("D(g_0) meets V_m outside V_(m-1)", !flag.level(flag.m() - 1).contains_subspace(&image), String::new)?;

    let (alg, form, lay) = build(g, b, d, x0, &Labels::resolve(labels, g.basis()), "gde")?;
    let lifted = lifted_delta(&lay, b, delta, w);
    let omega = lifted_omega(alg.basis(), &form, &lifted)?;
    let levels: Vec<Subspace> = (0..=flag.m()).map(|i| flag.level(i).clone()).collect();
    if !flag_matches(&alg, &expected_flag(&lay, &levels)) {
        return Err(Error::Internal("lifted flag does not grow as V~_i = V_(i-1) + K e*".into()));
    }
    ch.checks.push(super::Check { name: "flag grows by K e*".into(), passed: true, detail: None });
    let inputs = Witnesses {
        d: Some(d.matrix.clone()),
        x0: Some(x0.to_vec()),
        a1: Some(w.a.clone()),
        alpha: Some(w.alpha.clone()),
        mu: Some(w.mu.clone()),
        ..Default::default()
    };
    finish(
        ExtensionKind::Gde,
        inputs,
        AlgebraData::with_forms(alg, Some(form), Some(omega)),
        Some(lifted),
        &lay,
        ch.checks,
    )
}

fn elementary_preconditions(ch: &mut Checker, g: &LieSuperalgebra, b: &BilinearForm, x0: &[Scalar]) -> Result<()> {
    ch.require("g is a Lie algebra", g.n_odd() == 0, || format!("odd part has dimension {}", g.n_odd()))?;
    ch.quadratic(g, b)?;
    ch.require("X0 is nonzero", x0.len() == g.dim() && !is_zero_vector(x0), String::new)?;
    ch.require("X0 is central", g.center().contains(x0), || g.format_vector(x0))?;
    let bxx = b.eval(x0, x0);
    ch.require("B(X0, X0) = 0", bxx.is_zero(), || bxx.to_string())
}

fn elementary_flag_check(lay: &Layout, alg: &LieSuperalgebra) -> Result<super::Check> {
    let expected = expected_flag(lay, &[Subspace::zero(lay.n - 2)]);
    if !flag_matches(alg, &expected) {
        return Err(Error::Internal("elementary odd extension is not of filiform type".into()));
    }
    Ok(super::Check { name: "flag is K e + K e* ⊃ K e*".into(), passed: true, detail: None })
}

/// `g~_1 = K e ⊕ K e*` with `[e, e] = X0` and `[e, X] = -B(X, X0) e*`.
pub fn elementary_odd_double_extension(
    g: &LieSuperalgebra,
    b: &BilinearForm,
    x0: &[Scalar],
    labels: Option<&Labels>,
) -> Result<ExtensionCertificate> {
    let mut ch = Checker::new("elementary odd double extension");
    elementary_preconditions(&mut ch, g, b, x0)?;
    let zero = Derivation::zero(g.dim(), Parity::Odd);
    let (alg, form, lay) = build(g, b, &zero, x0, &Labels::resolve(labels, g.basis()), "elem_odd")?;
    ch.checks.push(elementary_flag_check(&lay, &alg)?);
    let inputs = Witnesses { x0: Some(x0.to_vec()), ..Default::default() };
    finish(ExtensionKind::ElemOdd, inputs, AlgebraData::with_forms(alg, Some(form), None), None, &lay, ch.checks)
}

/// Lift with `delta(X0) = beta X0`, `delta~(e) = beta/2 e`, `delta~(e*) = -beta/2 e*`.
pub fn elementary_symplectic_lift(
    g: &LieSuperalgebra,
    b: &BilinearForm,
    delta: &Derivation,
    x0: &[Scalar],
    labels: Option<&Labels>,
) -> Result<ExtensionCertificate> {
    let mut ch = Checker::new("elementary odd symplectic lift");
    elementary_preconditions(&mut ch, g, b, x0)?;
    ch.symplectic_delta(g, b, delta)?;
    let image = delta.apply(x0);
    let k = x0.iter().position(|x| !x.is_zero()).unwrap();
    let beta = &image[k] / &x0[k];
    let proportional = image.iter().zip(x0).all(|(y, x)| *y == &beta * x);
    ch.require("delta(X0) = beta X0", proportional, || g.format_vector(&image))?;
    ch.require("beta is nonzero", !beta.is_zero(), String::new)?;

    let zero = Derivation::zero(g.dim(), Parity::Odd);
    let (alg, form, lay) = build(g, b, &zero, x0, &Labels::resolve(labels, g.basis()), "elem_odd")?;
    ch.checks.push(elementary_flag_check(&lay, &alg)?);
    let half = &beta * &Scalar::frac(1, 2);
    let w = LiftWitness { alpha: -&half, a: vec![Scalar::zero(); g.dim()], mu: Scalar::zero() };
    let lifted = lifted_delta(&lay, b, delta, &w);
    let omega = lifted_omega(alg.basis(), &form, &lifted)?;
    let inputs = Witnesses { x0: Some(x0.to_vec()), beta: Some(beta), ..Default::default() };
    finish(
        ExtensionKind::ElemOdd,
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
    use crate::forms::Symmetry;
    use crate::structure::is_nilpotent;
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

    fn odd_d(a1: i64, a2: i64) -> Derivation {
        let mut d = Matrix::zeros(4, 4);
        d[(2, 1)] = Scalar::int(a1);
        d[(3, 1)] = Scalar::int(a2);
        d[(0, 2)] = Scalar::int(-a2);
        d[(0, 3)] = Scalar::int(a1);
        Derivation::new(Parity::Odd, d)
    }

    fn abelian2() -> (LieSuperalgebra, BilinearForm) {
        let g = LieSuperalgebra::abelian("k2", &["X0", "X1"], &[] as &[&str]).unwrap();
        let b = BilinearForm::from_pairs(g.basis(), Symmetry::Supersymmetric, &[("X0", "X1", Scalar::one())]).unwrap();
        (g, b)
    }

    #[test]
    fn gde_family_brackets() {
        let (g, b) = g41();
        for (a1, a2) in [(1, 0), (0, 1), (1, 1), (0, 0)] {
            let cert = generalized_double_extension(&g, &b, &odd_d(a1, a2), &unit_vector(4, 0), None).unwrap();
            let h = cert.algebra();
            let v =
                |t: &[(&str, i64)]| h.vector(&t.iter().map(|&(l, c)| (l, Scalar::int(c))).collect::<Vec<_>>()).unwrap();
            assert_eq!(h.bracket_labels("e", "e").unwrap(), v(&[("X0", 1)]));
            assert_eq!(h.bracket_labels("e", "X1").unwrap(), v(&[("Y1", a1), ("Y2", a2), ("e*", -1)]));
            assert_eq!(h.bracket_labels("X1", "Y1").unwrap(), v(&[("Y2", -2), ("e*", -a2)]));
            assert_eq!(h.bracket_labels("X1", "Y2").unwrap(), v(&[("e*", a1)]));
            assert!(is_nilpotent(h));
        }
    }

    #[test]
    fn gde_rejects_bad_x0() {
        let (g, b) = g41();
        let err = generalized_double_extension(&g, &b, &odd_d(1, 0), &unit_vector(4, 1), None).unwrap_err();
        assert!(matches!(err, Error::Precondition { .. }));
    }

    #[test]
    fn generalized_lift_example() {
        let (g, b) = g41();
        let b1 = 1;
        let delta = Derivation::new(Parity::Even, Matrix::diag([2 * b1, -2 * b1, b1, -b1].map(Scalar::int).to_vec()));
        for mu in [0, 1, -1] {
            let w = LiftWitness { alpha: Scalar::int(-3 * b1), a: unit_vector(4, 3), mu: Scalar::int(mu) };
            let cert =
                generalized_symplectic_lift(&g, &b, &delta, &odd_d(-2 * b1, 0), &unit_vector(4, 0), &w, None).unwrap();
            let h = cert.algebra();
            let dl = cert.delta.as_ref().unwrap();
            let col = |l: &str| dl.matrix.column(h.index(l).unwrap());
            let v =
                |t: &[(&str, i64)]| h.vector(&t.iter().map(|&(l, c)| (l, Scalar::int(c))).collect::<Vec<_>>()).unwrap();
            assert_eq!(col("e*"), v(&[("e*", -3 * b1)]));
            assert_eq!(col("e"), v(&[("e*", mu), ("Y2", 1), ("e", 3 * b1)]));
            assert_eq!(col("Y1"), v(&[("Y1", b1), ("e*", 1)]));
            assert_eq!(filiform_flag(h).unwrap().dims(), vec![4, 3, 2, 1, 0]);
        }
    }

    #[test]
    fn elementary_from_abelian_gives_g41() {
        let (k2, bk) = abelian2();
        let delta = Derivation::new(Parity::Even, Matrix::diag(vec![Scalar::int(2), Scalar::int(-2)]));
        let x0 = vec![Scalar::int(-2), Scalar::zero()];
        let cert = elementary_symplectic_lift(&k2, &bk, &delta, &x0, Some(&Labels::new("Y1", "Y2"))).unwrap();
        let (g, b) = g41();
        assert_eq!(cert.algebra().table(), g.table());
        assert_eq!(cert.result.form_b.as_ref().unwrap(), &b);
        assert_eq!(cert.inputs.beta, Some(Scalar::int(2)));
        assert_eq!(cert.delta.unwrap().matrix, Matrix::diag([2, -2, 1, -1].map(Scalar::int).to_vec()));
    }

    #[test]
    fn elementary_rejects_bad_inputs() {
        let (k2, bk) = abelian2();
        let isotropic_fail = elementary_odd_double_extension(&k2, &bk, &[Scalar::one(), Scalar::one()], None);
        assert!(matches!(isotropic_fail, Err(Error::Precondition { .. })));
        let not_eigen = Derivation::new(Parity::Even, Matrix::from_ints(&[&[1, 0], &[1, -1]]));
        let err = elementary_symplectic_lift(&k2, &bk, &not_eigen, &[Scalar::one(), Scalar::zero()], None);
        assert!(matches!(err, Err(Error::Precondition { .. })));
    }
}
