//! Even bilinear forms on a superalgebra and their structural checks.

use serde::Serialize;

use crate::error::{Error, Result};
use crate::linalg::{dot, Matrix, Vector};
use crate::scalar::Scalar;
use crate::subspace::Subspace;
use crate::superalg::{koszul, GradedBasis, LieSuperalgebra};

#[derive(Clone, Copy, PartialEq, Eq, Hash, Debug, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum Symmetry {
    Supersymmetric,
    SkewSupersymmetric,
}

impl Symmetry {
    /// Sign `s` with `B(e_i, e_j) = s * B(e_j, e_i)`.
    fn sign(self, basis: &GradedBasis, i: usize, j: usize) -> Scalar {
        let k = koszul(basis.parity(i), basis.parity(j));
        match self {
            Symmetry::Supersymmetric => k,
            Symmetry::SkewSupersymmetric => -k,
        }
    }
}

/// A bilinear form stored as its full Gram matrix, `gram[(i, j)] = B(e_i, e_j)`.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct BilinearForm {
    gram: Matrix,
    kind: Symmetry,
}

impl BilinearForm {
    /// Wraps a Gram matrix after checking the declared symmetry entrywise.
    pub fn new(basis: &GradedBasis, gram: Matrix, kind: Symmetry) -> Result<Self> {
        let n = basis.dim();
        if gram.rows() != n || gram.cols() != n {
            return Err(Error::FormMismatch(format!(
                "Gram matrix is {}x{}, algebra has dimension {n}",
                gram.rows(),
                gram.cols()
            )));
        }
        for i in 0..n {
            for j in i..n {
                if gram[(i, j)] != &kind.sign(basis, i, j) * &gram[(j, i)] {
                    return Err(Error::FormMismatch(format!(
                        "entries ({},{}) and ({},{}) break the declared symmetry",
                        basis.label(i),
                        basis.label(j),
                        basis.label(j),
                        basis.label(i)
                    )));
                }
            }
        }
        Ok(BilinearForm { gram, kind })
    }

    pub fn zero(n: usize, kind: Symmetry) -> Self {
        BilinearForm { gram: Matrix::zeros(n, n), kind }
    }

    /// Builds the form from sparse `(lhs, rhs, value)` entries, filling the
    /// mirrored entry from the declared symmetry.
    pub fn from_pairs<S: AsRef<str>>(basis: &GradedBasis, kind: Symmetry, pairs: &[(S, S, Scalar)]) -> Result<Self> {
        let n = basis.dim();
        let mut gram: Matrix<Scalar> = Matrix::zeros(n, n);
        let mut set = vec![vec![false; n]; n];
        for (lhs, rhs, c) in pairs {
            let (i, j) = (basis.index(lhs.as_ref())?, basis.index(rhs.as_ref())?);
            let mirrored = &kind.sign(basis, i, j) * c;
            let clash = (set[i][j] && gram[(i, j)] != *c) || (set[j][i] && gram[(j, i)] != mirrored);
            if clash || (i == j && *c != mirrored) {
                return Err(Error::FormMismatch(format!(
                    "entry ({},{}) conflicts with the declared symmetry",
                    lhs.as_ref(),
                    rhs.as_ref()
                )));
            }
            gram[(i, j)] = c.clone();
            gram[(j, i)] = mirrored;
            set[i][j] = true;
            set[j][i] = true;
        }
        Ok(BilinearForm { gram, kind })
    }

    pub fn gram(&self) -> &Matrix {
        &self.gram
    }

    pub fn kind(&self) -> Symmetry {
        self.kind
    }

    pub fn dim(&self) -> usize {
        self.gram.rows()
    }

    pub fn eval(&self, v: &[Scalar], w: &[Scalar]) -> Scalar {
        dot(v, &self.gram.apply(w))
    }

    pub fn entry(&self, i: usize, j: usize) -> &Scalar {
        &self.gram[(i, j)]
    }

    pub fn is_even(&self, n_even: usize) -> bool {
        let n = self.dim();
        (0..n).all(|i| (0..n).all(|j| (i < n_even) == (j < n_even) || self.gram[(i, j)].is_zero()))
    }

    pub fn is_nondegenerate(&self) -> bool {
        self.gram.rank() == self.dim()
    }

    /// Gram matrix in the basis given by the columns of `t`.
    pub fn transform(&self, t: &Matrix) -> BilinearForm {
        BilinearForm { gram: t.transpose().mul(&self.gram).mul(t), kind: self.kind }
    }

    /// Nonzero entries with `i <= j`, as label triples.
    pub fn pairs(&self, basis: &GradedBasis) -> Vec<(String, String, Scalar)> {
        let n = self.dim();
        let mut out = Vec::new();
        for i in 0..n {
            for j in i..n {
                if !self.gram[(i, j)].is_zero() {
                    out.push((basis.label(i).to_string(), basis.label(j).to_string(), self.gram[(i, j)].clone()));
                }
            }
        }
        out
    }
}

/// First basis tuple on which a property fails, with the offending value.
#[derive(Clone, PartialEq, Eq, Debug, Serialize)]
pub struct Counterexample {
    pub property: &'static str,
    pub basis: Vec<String>,
    pub value: String,
}

#[derive(Clone, PartialEq, Eq, Debug, Serialize)]
pub struct QuadraticReport {
    pub even: bool,
    pub supersymmetric: bool,
    pub nondegenerate: bool,
    pub invariant: bool,
    pub counterexample: Option<Counterexample>,
}

impl QuadraticReport {
    pub fn all(&self) -> bool {
        self.even && self.supersymmetric && self.nondegenerate && self.invariant
    }
}

#[derive(Clone, PartialEq, Eq, Debug, Serialize)]
pub struct SymplecticReport {
    pub even: bool,
    pub skew_supersymmetric: bool,
    pub nondegenerate: bool,
    pub two_cocycle: bool,
    pub counterexample: Option<Counterexample>,
}

impl SymplecticReport {
    pub fn all(&self) -> bool {
        self.even && self.skew_supersymmetric && self.nondegenerate && self.two_cocycle
    }
}

fn labels(g: &LieSuperalgebra, idx: &[usize]) -> Vec<String> {
    idx.iter().map(|&i| g.basis().label(i).to_string()).collect()
}

fn first_evenness_failure(g: &LieSuperalgebra, gram: &Matrix) -> Option<Counterexample> {
    let n = g.dim();
    for i in 0..n {
        for j in 0..n {
            if g.parity(i) != g.parity(j) && !gram[(i, j)].is_zero() {
                return Some(Counterexample {
                    property: "even",
                    basis: labels(g, &[i, j]),
                    value: gram[(i, j)].to_string(),
                });
            }
        }
    }
    None
}

fn first_symmetry_failure(
    g: &LieSuperalgebra,
    gram: &Matrix,
    kind: Symmetry,
    property: &'static str,
) -> Option<Counterexample> {
    let n = g.dim();
    for i in 0..n {
        for j in i..n {
            let diff = &gram[(i, j)] - &(&kind.sign(g.basis(), i, j) * &gram[(j, i)]);
            if !diff.is_zero() {
                return Some(Counterexample { property, basis: labels(g, &[i, j]), value: diff.to_string() });
            }
        }
    }
    None
}

fn check_size(g: &LieSuperalgebra, gram: &Matrix) {
    assert!(gram.rows() == g.dim() && gram.cols() == g.dim(), "Gram matrix does not match algebra dimension");
}

/// Evenness, supersymmetry, nondegeneracy and invariance
/// `B([X,Y],Z) = B(X,[Y,Z])` on all basis triples.
pub fn check_quadratic(g: &LieSuperalgebra, form: &BilinearForm) -> QuadraticReport {
    let gram = form.gram();
    check_size(g, gram);
    let n = g.dim();
    let even_fail = first_evenness_failure(g, gram);
    let sym_fail = first_symmetry_failure(g, gram, Symmetry::Supersymmetric, "supersymmetric");
    let nondegenerate = form.is_nondegenerate();
    let mut inv_fail = None;
    'outer: for i in 0..n {
        for j in 0..n {
            let xy = gram.transpose().apply(g.structure(i, j));
            for k in 0..n {
                let lhs = &xy[k];
                let rhs = dot(gram.row(i), g.structure(j, k));
                if *lhs != rhs {
                    inv_fail = Some(Counterexample {
                        property: "invariant",
                        basis: labels(g, &[i, j, k]),
                        value: (lhs - &rhs).to_string(),
                    });
                    break 'outer;
                }
            }
        }
    }
    let degenerate = (!nondegenerate).then(|| Counterexample {
        property: "nondegenerate",
        basis: Vec::new(),
        value: format!("rank {} < {n}", gram.rank()),
    });
    QuadraticReport {
        even: even_fail.is_none(),
        supersymmetric: sym_fail.is_none(),
        nondegenerate,
        invariant: inv_fail.is_none(),
        counterexample: even_fail.or(sym_fail).or(degenerate).or(inv_fail),
    }
}

/// Cocycle residual
/// `(-1)^{xz} w(X,[Y,Z]) + (-1)^{yx} w(Y,[Z,X]) + (-1)^{zy} w(Z,[X,Y])`.
pub fn cocycle_residual(g: &LieSuperalgebra, gram: &Matrix, x: usize, y: usize, z: usize) -> Scalar {
    let (px, py, pz) = (g.parity(x), g.parity(y), g.parity(z));
    koszul(px, pz) * dot(gram.row(x), g.structure(y, z))
        + koszul(py, px) * dot(gram.row(y), g.structure(z, x))
        + koszul(pz, py) * dot(gram.row(z), g.structure(x, y))
}

/// First basis triple on which the scalar 2-cocycle identity fails.
pub fn first_cocycle_failure(g: &LieSuperalgebra, gram: &Matrix) -> Option<Counterexample> {
    let n = g.dim();
    for x in 0..n {
        for y in 0..n {
            for z in 0..n {
                let r = cocycle_residual(g, gram, x, y, z);
                if !r.is_zero() {
                    return Some(Counterexample {
                        property: "two_cocycle",
                        basis: labels(g, &[x, y, z]),
                        value: r.to_string(),
                    });
                }
            }
        }
    }
    None
}

pub fn check_symplectic(g: &LieSuperalgebra, form: &BilinearForm) -> SymplecticReport {
    let gram = form.gram();
    check_size(g, gram);
    let even_fail = first_evenness_failure(g, gram);
    let sym_fail = first_symmetry_failure(g, gram, Symmetry::SkewSupersymmetric, "skew_supersymmetric");
    let nondegenerate = form.is_nondegenerate();
    let cocycle_fail = first_cocycle_failure(g, gram);
    let degenerate = (!nondegenerate).then(|| Counterexample {
        property: "nondegenerate",
        basis: Vec::new(),
        value: format!("rank {} < {}", gram.rank(), g.dim()),
    });
    SymplecticReport {
        even: even_fail.is_none(),
        skew_supersymmetric: sym_fail.is_none(),
        nondegenerate,
        two_cocycle: cocycle_fail.is_none(),
        counterexample: even_fail.or(sym_fail).or(degenerate).or(cocycle_fail),
    }
}

/// A covector `xi` with `gram[(i, j)] = xi([e_i, e_j])` for all pairs, if any.
pub fn coboundary_witness(g: &LieSuperalgebra, gram: &Matrix) -> Option<Vector> {
    check_size(g, gram);
    let n = g.dim();
    let mut rows = Vec::with_capacity(n * n);
    let mut rhs = Vec::with_capacity(n * n);
    for i in 0..n {
        for j in 0..n {
            rows.push(g.structure(i, j).clone());
            rhs.push(gram[(i, j)].clone());
        }
    }
    Matrix::from_rows(rows).solve_vec(&rhs).ok().flatten()
}

/// `{v : B(v, s) = 0}`.
pub fn orthogonal(form: &BilinearForm, s: &Subspace) -> Subspace {
    let n = form.dim();
    if s.is_zero() {
        return Subspace::full(n);
    }
    let rows: Vec<Vector> = s.basis().iter().map(|w| form.gram().apply(w)).collect();
    Subspace::span(n, &Matrix::from_rows(rows).kernel())
}

/// Whether `B(u, v) = 0` for all `u` in `a`, `v` in `b`.
pub fn pairing_vanishes(form: &BilinearForm, a: &Subspace, b: &Subspace) -> bool {
    a.basis().iter().all(|u| b.basis().iter().all(|v| form.eval(u, v).is_zero()))
}

pub(crate) fn require_nondegenerate(form: &BilinearForm, what: &'static str) -> Result<Matrix> {
    form.gram().inverse()?.ok_or(Error::DegenerateForm(what))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::superalg::AlgebraBuilder;

    fn g41() -> LieSuperalgebra {
        AlgebraBuilder::new("g4_1s", &["X0", "X1"], &["Y1", "Y2"])
            .bracket_int("X1", "Y1", &[("Y2", -2)])
            .bracket_int("Y1", "Y1", &[("X0", -2)])
            .build()
            .unwrap()
    }

    fn b41(g: &LieSuperalgebra) -> BilinearForm {
        BilinearForm::from_pairs(
            g.basis(),
            Symmetry::Supersymmetric,
            &[("X0", "X1", Scalar::one()), ("Y2", "Y1", Scalar::one())],
        )
        .unwrap()
    }

    fn omega41(g: &LieSuperalgebra, b1: i64, b2: i64) -> BilinearForm {
        BilinearForm::from_pairs(
            g.basis(),
            Symmetry::SkewSupersymmetric,
            &[("X0", "X1", Scalar::int(2 * b1)), ("Y2", "Y1", Scalar::int(-b1)), ("Y1", "Y1", Scalar::int(b2))],
        )
        .unwrap()
    }

    #[test]
    fn g41_is_quadratic() {
        let g = g41();
        let b = b41(&g);
        // B(Y1, Y2) = -B(Y2, Y1) for odd pairs
        assert_eq!(b.entry(2, 3), &Scalar::int(-1));
        let r = check_quadratic(&g, &b);
        assert!(r.all(), "{r:?}");
        let z = check_quadratic(&g, &BilinearForm::zero(4, Symmetry::Supersymmetric));
        assert!(!z.nondegenerate);
    }

    #[test]
    fn g41_symplectic_family() {
        let g = g41();
        assert!(check_symplectic(&g, &omega41(&g, 1, 0)).all());
        assert!(check_symplectic(&g, &omega41(&g, 3, -2)).all());
        let degenerate = check_symplectic(&g, &omega41(&g, 0, 1));
        assert!(!degenerate.nondegenerate);
        assert!(degenerate.two_cocycle);
    }

    #[test]
    fn invariance_failure_is_reported() {
        let g = g41();
        let bad = BilinearForm::from_pairs(
            g.basis(),
            Symmetry::Supersymmetric,
            &[("X0", "X1", Scalar::one()), ("Y2", "Y1", Scalar::int(2))],
        )
        .unwrap();
        let r = check_quadratic(&g, &bad);
        assert!(!r.invariant);
        assert_eq!(r.counterexample.unwrap().property, "invariant");
    }

    #[test]
    fn conflicting_pairs_rejected() {
        let g = g41();
        let err = BilinearForm::from_pairs(
            g.basis(),
            Symmetry::Supersymmetric,
            &[("Y2", "Y1", Scalar::one()), ("Y1", "Y2", Scalar::one())],
        );
        assert!(matches!(err, Err(Error::FormMismatch(_))));
        let odd_diag = BilinearForm::from_pairs(g.basis(), Symmetry::Supersymmetric, &[("Y1", "Y1", Scalar::one())]);
        assert!(odd_diag.is_err());
    }

    #[test]
    fn coboundaries() {
        let g = g41();
        assert_eq!(coboundary_witness(&g, &Matrix::zeros(4, 4)), Some(vec![Scalar::zero(); 4]));
        let xi = vec![Scalar::one(), Scalar::zero(), Scalar::zero(), Scalar::one()];
        let mut gram = Matrix::zeros(4, 4);
        for i in 0..4 {
            for j in 0..4 {
                gram[(i, j)] = dot(&xi, g.structure(i, j));
            }
        }
        assert_eq!(gram[(2, 2)], Scalar::int(-2));
        assert_eq!(gram[(1, 2)], Scalar::int(-2));
        assert_eq!(coboundary_witness(&g, &gram), Some(xi));
        let ab = LieSuperalgebra::abelian("a", &["A", "B"], &[] as &[&str]).unwrap();
        let mut nonzero = Matrix::zeros(2, 2);
        nonzero[(0, 1)] = Scalar::one();
        assert_eq!(coboundary_witness(&ab, &nonzero), None);
    }

    #[test]
    fn orthogonal_complements() {
        let g = g41();
        let b = b41(&g);
        assert_eq!(orthogonal(&b, &Subspace::full(4)), Subspace::zero(4));
        assert_eq!(orthogonal(&b, &Subspace::coordinate(4, [3])), Subspace::coordinate(4, [0, 1, 3]));
        assert_eq!(orthogonal(&b, &Subspace::coordinate(4, [2, 3])), Subspace::coordinate(4, [0, 1]));
        for s in [Subspace::coordinate(4, [1]), Subspace::coordinate(4, [0, 2, 3])] {
            assert_eq!(s.dim() + orthogonal(&b, &s).dim(), 4);
        }
    }

    #[test]
    fn abelian_symplectic_is_cocycle() {
        let ab = LieSuperalgebra::abelian("a", &["A", "B"], &[] as &[&str]).unwrap();
        let w =
            BilinearForm::from_pairs(ab.basis(), Symmetry::SkewSupersymmetric, &[("A", "B", Scalar::int(5))]).unwrap();
        assert!(check_symplectic(&ab, &w).all());
    }
}
