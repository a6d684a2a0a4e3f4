use super::{build_algebra, finish, Checker, ExtensionCertificate, ExtensionKind, Labels, Layout, Witnesses};
use crate::derivations::{adjoint_wrt, Derivation};
use crate::error::Result;
use crate::forms::BilinearForm;
use crate::io::AlgebraData;
use crate::linalg::{unit_vector, Matrix, Vector};
use crate::scalar::Scalar;
use crate::superalg::{koszul, GradedBasis, LieSuperalgebra, Parity};

const NAME: &str = "odd symplectic double extension";

/// Gram matrix of `Omega(X, Y) = omega((delta^2 - delta*^2) X, Y)`.
pub fn omega_defect(basis: &GradedBasis, omega: &BilinearForm, delta: &Derivation) -> Result<Matrix> {
    let star = adjoint_wrt(basis, omega, delta)?;
    let m = delta.matrix.mul(&delta.matrix).sub(&star.matrix.mul(&star.matrix));
    Ok(m.transpose().mul(omega.gram()))
}

struct Stage {
    name: &'static str,
    rows: Vec<Vector>,
    rhs: Vector,
}

/// Equations on the even coordinates of `Y0`, in the order they are imposed.
fn stages(g: &LieSuperalgebra, omega: &BilinearForm, delta: &Derivation, defect: &Matrix) -> Vec<Stage> {
    let n = g.dim();
    let evens: Vec<usize> = g.basis().even_range().collect();
    let mut coboundary = Stage { name: "Omega is a 2-coboundary omega(Y0, [., .])", rows: vec![], rhs: vec![] };
    for i in 0..n {
        for j in 0..n {
            let xy = g.structure(i, j);
            coboundary.rows.push(evens.iter().map(|&k| omega.eval(&unit_vector(n, k), xy)).collect());
            coboundary.rhs.push(defect[(i, j)].clone());
        }
    }
    let square = delta.matrix.mul(&delta.matrix);
    let ads: Vec<Matrix> = evens.iter().map(|&k| g.ad(&unit_vector(n, k))).collect();
    let mut adjoint = Stage { name: "delta^2 = ad(Y0)", rows: vec![], rhs: vec![] };
    for r in 0..n {
        for c in 0..n {
            adjoint.rows.push(ads.iter().map(|a| a[(r, c)].clone()).collect());
            adjoint.rhs.push(square[(r, c)].clone());
        }
    }
    let images: Vec<Vector> = evens.iter().map(|&k| delta.matrix.column(k)).collect();
    let mut fixed = Stage { name: "delta(Y0) = 0", rows: vec![], rhs: vec![] };
    for r in 0..n {
        fixed.rows.push(images.iter().map(|v| v[r].clone()).collect());
        fixed.rhs.push(Scalar::zero());
    }
    vec![coboundary, adjoint, fixed]
}

/// Finds `Y0`, or checks a supplied one, stage by stage.
fn resolve_y0(
    ch: &mut Checker,
    g: &LieSuperalgebra,
    omega: &BilinearForm,
    delta: &Derivation,
    supplied: Option<&[Scalar]>,
) -> Result<Vector> {
    let defect = omega_defect(g.basis(), omega, delta)?;
    let evens: Vec<usize> = g.basis().even_range().collect();
    let n = g.dim();
    if let Some(y0) = supplied {
        ch.vector_parity(g, y0, Parity::Even, "Y0")?;
        let coords: Vector = evens.iter().map(|&k| y0[k].clone()).collect();
        for stage in stages(g, omega, delta, &defect) {
            let ok = stage.rows.iter().zip(&stage.rhs).all(|(row, r)| crate::linalg::dot(row, &coords) == *r);
            ch.require(stage.name, ok, || format!("Y0 = {}", g.format_vector(y0)))?;
        }
        return Ok(y0.to_vec());
    }
    let mut rows = Vec::new();
    let mut rhs = Vec::new();
    let mut found = vec![Scalar::zero(); evens.len()];
    for stage in stages(g, omega, delta, &defect) {
        rows.extend(stage.rows);
        rhs.extend(stage.rhs);
        let solution = if evens.is_empty() {
            rhs.iter().all(Scalar::is_zero).then(Vec::new)
        } else {
            Matrix::from_rows(rows.clone()).solve_vec(&rhs)?
        };
        ch.require(stage.name, solution.is_some(), || "no even Y0 satisfies the accumulated equations".into())?;
        found = solution.unwrap();
    }
    let mut y0 = vec![Scalar::zero(); n];
    for (c, &k) in found.into_iter().zip(&evens) {
        y0[k] = c;
    }
    Ok(y0)
}

/// `g ⊕ K e ⊕ K e*` with odd `e`, `e*` and
/// `[X, Y] = [X, Y]_g + (omega(delta X, Y) + (-1)^x omega(X, delta Y)) e`,
/// `[e*, e*] = 2 Y0`, `[e*, X] = delta(X) - omega(X, Y0) e`.
pub fn delta1_extension(
    g: &LieSuperalgebra,
    omega: &BilinearForm,
    delta: &Derivation,
    y0: Option<&[Scalar]>,
    labels: Option<&Labels>,
) -> Result<ExtensionCertificate> {
    let mut ch = Checker::new(NAME);
    ch.symplectic(g, omega)?;
    ch.derivation(g, delta, Parity::Odd, "delta")?;
    let y0 = resolve_y0(&mut ch, g, omega, delta, y0)?;

    let lay = Layout::odd(g);
    let basis = lay.basis(g, &Labels::resolve(labels, g.basis()))?;
    let n = g.dim();
    let images: Vec<Vector> = (0..n).map(|j| delta.matrix.column(j)).collect();
    let mut table = lay.empty_table();
    for i in 0..n {
        let sign = koszul(g.parity(i), Parity::Odd);
        for j in 0..n {
            let mut v = lay.embed(g.structure(i, j));
            v[lay.e] = omega.eval(&images[i], &unit_vector(n, j)) + &sign * &omega.eval(&unit_vector(n, i), &images[j]);
            table[i][j] = v;
        }
        let mut v = lay.embed(&images[i]);
        v[lay.e] = -omega.eval(&unit_vector(n, i), &y0);
        lay.set_pair(&basis, &mut table, lay.e_star, i, v);
    }
    table[lay.e_star][lay.e_star] = lay.embed(&y0.iter().map(|y| y * &Scalar::int(2)).collect::<Vec<_>>());
    let alg = build_algebra(&format!("{}+delta1", g.name()), basis.clone(), table)?;

    // omega~(e*, e) = omega~(e, e*) = 1
    let form = lay.hyperbolic_form(&basis, omega)?;
    let inputs = Witnesses { d: Some(delta.matrix.clone()), y0: Some(y0), ..Default::default() };
    finish(ExtensionKind::Delta1, inputs, AlgebraData::with_forms(alg, None, Some(form)), None, &lay, ch.checks)
}
