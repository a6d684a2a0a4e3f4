//! Superderivations: solving for derivation spaces, skew subspaces,
//! adjoints, and the correspondence between derivations and forms.

use std::cmp::Ordering;

use serde::Serialize;

use crate::error::{Error, Result};
use crate::forms::{require_nondegenerate, BilinearForm, Symmetry};
use crate::linalg::{is_zero_vector, Matrix, Vector};
use crate::poly::{Assignment, Poly};
use crate::scalar::Scalar;
use crate::subspace::Subspace;
use crate::superalg::{koszul, GradedBasis, LieSuperalgebra, Parity};

/// A parity-homogeneous linear map in column action.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct Derivation {
    pub parity: Parity,
    pub matrix: Matrix,
}

impl Derivation {
    pub fn new(parity: Parity, matrix: Matrix) -> Self {
        Derivation { parity, matrix }
    }

    pub fn zero(n: usize, parity: Parity) -> Self {
        Derivation { parity, matrix: Matrix::zeros(n, n) }
    }

    pub fn apply(&self, v: &[Scalar]) -> Vector {
        self.matrix.apply(v)
    }

    /// Whether every nonzero entry maps parity `p` to parity `p + d`.
    pub fn respects_parity(&self, basis: &GradedBasis) -> bool {
        let n = basis.dim();
        (0..n).all(|r| {
            (0..n).all(|c| basis.parity(r) == basis.parity(c).add(self.parity) || self.matrix[(r, c)].is_zero())
        })
    }

    /// Leibniz residual `D[x,y] - [Dx,y] - (-1)^{dx}[x,Dy]` on basis pairs;
    /// returns the first failing pair.
    pub fn leibniz_failure(&self, g: &LieSuperalgebra) -> Option<(usize, usize, Vector)> {
        let n = g.dim();
        let images: Vec<Vector> = (0..n).map(|j| self.matrix.column(j)).collect();
        for i in 0..n {
            for j in 0..n {
                let mut r = self.apply(g.structure(i, j));
                let a = g.bracket_vec(&images[i], &crate::linalg::unit_vector(n, j));
                let b = g.bracket_vec(&crate::linalg::unit_vector(n, i), &images[j]);
                let s = koszul(self.parity, g.parity(i));
                for k in 0..n {
                    r[k] = &r[k] - &a[k] - &s * &b[k];
                }
                if !is_zero_vector(&r) {
                    return Some((i, j, r));
                }
            }
        }
        None
    }

    pub fn is_derivation_of(&self, g: &LieSuperalgebra) -> bool {
        self.respects_parity(g.basis()) && self.leibniz_failure(g).is_none()
    }

    /// `B(Dx, y) + (-1)^{dx} B(x, Dy) = 0` on all basis pairs.
    pub fn is_skew_wrt(&self, basis: &GradedBasis, form: &BilinearForm) -> bool {
        let g = form.gram();
        let dtg = self.matrix.transpose().mul(g);
        let gd = g.mul(&self.matrix);
        let n = basis.dim();
        (0..n).all(|i| {
            let s = koszul(self.parity, basis.parity(i));
            (0..n).all(|j| (&dtg[(i, j)] + &(&s * &gd[(i, j)])).is_zero())
        })
    }

    /// `D1 D2 - (-1)^{d1 d2} D2 D1`.
    pub fn supercommutator(&self, other: &Derivation) -> Derivation {
        let s = koszul(self.parity, other.parity);
        let m = self.matrix.mul(&other.matrix).sub(&other.matrix.mul(&self.matrix).scale(&s));
        Derivation { parity: self.parity.add(other.parity), matrix: m }
    }

    pub fn is_invertible(&self) -> bool {
        self.matrix.rank() == self.matrix.rows()
    }
}

/// Unknown positions `(row, col)` allowed for a map of the given parity.
fn block_positions(basis: &GradedBasis, parity: Parity) -> Vec<(usize, usize)> {
    let n = basis.dim();
    let mut out = Vec::new();
    for r in 0..n {
        for c in 0..n {
            if basis.parity(r) == basis.parity(c).add(parity) {
                out.push((r, c));
            }
        }
    }
    out
}

fn leibniz_rows(g: &LieSuperalgebra, parity: Parity, positions: &[(usize, usize)]) -> Vec<Vector> {
    let n = g.dim();
    let mut rows = Vec::new();
    for i in 0..n {
        for j in 0..n {
            let s = koszul(parity, g.parity(i));
            let bij = g.structure(i, j);
            for k in 0..n {
                let row: Vector = positions
                    .iter()
                    .map(|&(r, c)| {
                        let mut coef = if r == k { bij[c].clone() } else { Scalar::zero() };
                        if c == i {
                            coef -= &g.structure(r, j)[k];
                        }
                        if c == j {
                            coef -= &(&s * &g.structure(i, r)[k]);
                        }
                        coef
                    })
                    .collect();
                if !is_zero_vector(&row) {
                    rows.push(row);
                }
            }
        }
    }
    rows
}

fn skew_rows(basis: &GradedBasis, form: &BilinearForm, parity: Parity, positions: &[(usize, usize)]) -> Vec<Vector> {
    let n = basis.dim();
    let g = form.gram();
    let mut rows = Vec::new();
    for i in 0..n {
        let s = koszul(parity, basis.parity(i));
        for j in 0..n {
            // sum_r D_ri G_rj + s sum_r G_ir D_rj
            let row: Vector = positions
                .iter()
                .map(|&(r, c)| {
                    let mut coef = if c == i { g[(r, j)].clone() } else { Scalar::zero() };
                    if c == j {
                        coef += &(&s * &g[(i, r)]);
                    }
                    coef
                })
                .collect();
            if !is_zero_vector(&row) {
                rows.push(row);
            }
        }
    }
    rows
}

fn family_from_kernel(n: usize, parity: Parity, positions: &[(usize, usize)], rows: Vec<Vector>) -> DerivationFamily {
    let kernel = if rows.is_empty() {
        (0..positions.len()).map(|i| crate::linalg::unit_vector(positions.len(), i)).collect()
    } else {
        Matrix::from_rows(rows).kernel()
    };
    let basis = kernel
        .into_iter()
        .map(|v| {
            let mut m = Matrix::zeros(n, n);
            for (&(r, c), x) in positions.iter().zip(v) {
                m[(r, c)] = x;
            }
            m
        })
        .collect();
    DerivationFamily::new(parity, basis)
}

/// All derivations of the given parity, as a canonical kernel basis.
pub fn derivation_space(g: &LieSuperalgebra, parity: Parity) -> DerivationFamily {
    let positions = block_positions(g.basis(), parity);
    let rows = leibniz_rows(g, parity, &positions);
    family_from_kernel(g.dim(), parity, &positions, rows)
}

/// Derivations of the given parity that are skew-supersymmetric for `form`.
pub fn skew_derivation_space(g: &LieSuperalgebra, form: &BilinearForm, parity: Parity) -> Result<DerivationFamily> {
    if !form.is_nondegenerate() {
        return Err(Error::DegenerateForm("B"));
    }
    let positions = block_positions(g.basis(), parity);
    let mut rows = leibniz_rows(g, parity, &positions);
    rows.extend(skew_rows(g.basis(), form, parity, &positions));
    Ok(family_from_kernel(g.dim(), parity, &positions, rows))
}

/// A linear family `sum t_i D_i` of same-parity maps.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct DerivationFamily {
    pub parity: Parity,
    basis: Vec<Matrix>,
    params: Vec<String>,
}

impl DerivationFamily {
    pub fn new(parity: Parity, basis: Vec<Matrix>) -> Self {
        let params = (1..=basis.len()).map(|i| format!("t{i}")).collect();
        DerivationFamily { parity, basis, params }
    }

    /// Splits a matrix whose entries are linear forms in its parameters into
    /// one coefficient matrix per parameter.
    pub fn from_linear(parity: Parity, general: &Matrix<Poly>) -> Result<Self> {
        let mut names: Vec<String> = Vec::new();
        for i in 0..general.rows() {
            for j in 0..general.cols() {
                let p = &general[(i, j)];
                if p.total_degree() > 1 || !p.coefficient(&[]).is_zero() {
                    return Err(Error::Internal(format!("entry ({i},{j}) = {p} is not a linear form")));
                }
                for v in p.vars() {
                    if !names.contains(v) {
                        names.push(v.clone());
                    }
                }
            }
        }
        names.sort();
        let basis = names.iter().map(|name| general.map(|p| p.coefficient(&[(name.as_str(), 1)]))).collect();
        Ok(DerivationFamily { parity, basis, params: names })
    }

    pub fn dim(&self) -> usize {
        self.basis.len()
    }

    pub fn is_empty(&self) -> bool {
        self.basis.is_empty()
    }

    pub fn basis(&self) -> &[Matrix] {
        &self.basis
    }

    pub fn params(&self) -> &[String] {
        &self.params
    }

    pub fn members(&self) -> impl Iterator<Item = Derivation> + '_ {
        self.basis.iter().map(|m| Derivation::new(self.parity, m.clone()))
    }

    pub fn renamed<S: AsRef<str>>(&self, names: &[S]) -> Self {
        assert_eq!(names.len(), self.basis.len(), "one name per basis element");
        DerivationFamily {
            parity: self.parity,
            basis: self.basis.clone(),
            params: names.iter().map(|s| s.as_ref().to_string()).collect(),
        }
    }

    pub fn general_element(&self) -> Matrix<Poly> {
        let n = self.basis.first().map_or(0, |m| m.rows());
        let mut out = Matrix::<Poly>::zeros(n, n);
        for (m, name) in self.basis.iter().zip(&self.params) {
            let t = Poly::var(name);
            for i in 0..n {
                for j in 0..n {
                    if !m[(i, j)].is_zero() {
                        out[(i, j)] = &out[(i, j)] + &t.scale(&m[(i, j)]);
                    }
                }
            }
        }
        out
    }

    /// Member at the given parameter values.
    pub fn member(&self, coefficients: &[Scalar]) -> Derivation {
        assert_eq!(coefficients.len(), self.basis.len());
        let n = self.basis.first().map_or(0, |m| m.rows());
        let mut m = Matrix::zeros(n, n);
        for (b, c) in self.basis.iter().zip(coefficients) {
            m = m.add(&b.scale(c));
        }
        Derivation::new(self.parity, m)
    }

    pub fn member_at(&self, at: &Assignment) -> Result<Derivation> {
        Ok(Derivation::new(self.parity, self.general_element().eval(at)?))
    }

    fn flat(&self) -> Vec<Vector> {
        self.basis.iter().map(|m| m.to_rows().concat()).collect()
    }

    pub fn span(&self) -> Subspace {
        let n = self.basis.first().map_or(0, |m| m.rows());
        Subspace::span(n * n, &self.flat())
    }

    /// Coordinates of `m` in this family, if it is a member.
    pub fn coordinates(&self, m: &Matrix) -> Option<Vec<Scalar>> {
        if self.basis.is_empty() {
            return m.is_zero().then(Vec::new);
        }
        let cols = self.flat();
        let n2 = cols[0].len();
        Matrix::from_columns(n2, &cols).solve_vec(&m.to_rows().concat()).ok().flatten()
    }

    pub fn contains(&self, m: &Matrix) -> bool {
        self.coordinates(m).is_some()
    }

    pub fn is_subfamily_of(&self, other: &DerivationFamily) -> bool {
        self.basis.iter().all(|m| other.contains(m))
    }

    /// Same span as `other`.
    pub fn same_span(&self, other: &DerivationFamily) -> bool {
        self.span() == other.span()
    }

    /// Rewrites the parameters in terms of `target`'s: each `t_i` becomes a
    /// linear form in the target parameters. `None` if the spans differ.
    pub fn reparametrize(&self, target: &DerivationFamily) -> Option<Vec<Poly>> {
        if !self.same_span(target) {
            return None;
        }
        let mut out = vec![Poly::zero(); self.dim()];
        for (m, name) in target.basis.iter().zip(&target.params) {
            let coords = self.coordinates(m)?;
            for (acc, c) in out.iter_mut().zip(coords) {
                *acc = &*acc + &Poly::monomial(c, name);
            }
        }
        Some(out)
    }
}

#[derive(Clone, PartialEq, Eq, Debug, Serialize)]
#[serde(tag = "status", rename_all = "snake_case")]
pub enum Invertibility {
    IdenticallySingular,
    InvertibleOn {
        #[serde(serialize_with = "serialize_display")]
        det: Poly,
    },
}

fn serialize_display<S: serde::Serializer, T: std::fmt::Display>(v: &T, s: S) -> std::result::Result<S::Ok, S::Error> {
    s.collect_str(v)
}

impl Invertibility {
    pub fn is_identically_singular(&self) -> bool {
        matches!(self, Invertibility::IdenticallySingular)
    }

    pub fn det(&self) -> Option<&Poly> {
        match self {
            Invertibility::InvertibleOn { det } => Some(det),
            Invertibility::IdenticallySingular => None,
        }
    }
}

/// Symbolic determinant of the general member of the family.
pub fn generic_invertibility(family: &DerivationFamily) -> Invertibility {
    if family.is_empty() {
        return Invertibility::IdenticallySingular;
    }
    let det = family.general_element().det_poly().expect("derivation matrices are square");
    if det.is_zero() {
        Invertibility::IdenticallySingular
    } else {
        Invertibility::InvertibleOn { det }
    }
}

/// Writes `p = c * prod f_i^{k_i}` over the given factors, if the cofactor is
/// a nonzero constant.
pub fn factor_over(p: &Poly, factors: &[Poly]) -> Option<(Scalar, Vec<u32>)> {
    let mut rest = p.clone();
    let mut mult = Vec::with_capacity(factors.len());
    for f in factors {
        let mut k = 0;
        while let Some(q) = rest.div_exact(f) {
            if rest.is_zero() {
                return None;
            }
            rest = q;
            k += 1;
        }
        mult.push(k);
    }
    let c = rest.as_constant()?;
    (!c.is_zero()).then_some((c, mult))
}

/// Congruence diagonalization of a symmetric matrix; returns the sign pattern
/// of the diagonal or `None` if an indefinite 2x2 block is met.
fn semidefinite_sign(mut a: Matrix) -> Option<Ordering> {
    let n = a.rows();
    let mut sign = Ordering::Equal;
    let mut active: Vec<usize> = (0..n).collect();
    while !active.is_empty() {
        if let Some(pos) = active.iter().position(|&i| !a[(i, i)].is_zero()) {
            let p = active.remove(pos);
            let d = a[(p, p)].clone();
            match (sign, d.signum()) {
                (Ordering::Equal, s) => sign = s,
                (s, t) if s != t => return None,
                _ => {}
            }
            let inv = d.inv().expect("nonzero pivot");
            for &i in &active {
                let f = &a[(i, p)] * &inv;
                for &j in &active {
                    let v = &a[(i, j)] - &(&f * &a[(p, j)]);
                    a[(i, j)] = v;
                }
            }
        } else if active.iter().any(|&i| active.iter().any(|&j| !a[(i, j)].is_zero())) {
            return None;
        } else {
            break;
        }
    }
    Some(sign)
}

/// Nilpotent members of a family, when they form a linear subspace that can
/// be certified: `tr(M(t)^2)` is a semidefinite quadratic form whose radical
/// `R` contains every nilpotent member, and `M^n` vanishes identically on `R`.
pub fn nilpotent_members(family: &DerivationFamily) -> Result<DerivationFamily> {
    if family.is_empty() {
        return Err(Error::EmptyFamily);
    }
    let k = family.dim();
    let mut q = Matrix::zeros(k, k);
    for a in 0..k {
        for b in 0..k {
            let prod = family.basis[a].mul(&family.basis[b]);
            q[(a, b)] = (0..prod.rows()).map(|i| prod[(i, i)].clone()).sum();
        }
    }
    semidefinite_sign(q.clone()).ok_or(Error::NilpotentLocusNotLinear)?;
    let radical = q.kernel();
    let sub = DerivationFamily::new(family.parity, radical.iter().map(|c| family.member(c).matrix).collect());
    if !sub.is_empty() {
        let n = sub.basis[0].rows();
        if !sub.general_element().pow(n as u32).is_zero() {
            return Err(Error::NilpotentLocusNotLinear);
        }
    }
    Ok(sub)
}

pub fn is_nilpotent_map(m: &Matrix) -> bool {
    m.pow(m.rows() as u32).is_zero()
}

/// Gram matrix of `w(x, y) = B(delta x, y)`.
pub fn omega_gram(b: &Matrix, delta: &Matrix) -> Matrix {
    delta.transpose().mul(b)
}

/// Symbolic version of [`omega_gram`].
pub fn omega_gram_poly(b: &Matrix, delta: &Matrix<Poly>) -> Matrix<Poly> {
    delta.transpose().mul(&b.to_poly())
}

pub fn omega_from_delta(basis: &GradedBasis, b: &BilinearForm, delta: &Derivation) -> Result<BilinearForm> {
    require_nondegenerate(b, "B")?;
    BilinearForm::new(basis, omega_gram(b.gram(), &delta.matrix), Symmetry::SkewSupersymmetric)
}

/// Inverse of [`omega_from_delta`]: `delta = (G^-1)^T W^T`.
pub fn delta_from_omega(b: &BilinearForm, omega: &BilinearForm) -> Result<Derivation> {
    let g_inv = require_nondegenerate(b, "B")?;
    Ok(Derivation::new(Parity::Even, g_inv.transpose().mul(&omega.gram().transpose())))
}

/// The map `D*` with `w(Dx, y) = (-1)^{xd} w(x, D* y)`.
pub fn adjoint_wrt(basis: &GradedBasis, omega: &BilinearForm, d: &Derivation) -> Result<Derivation> {
    let w_inv = require_nondegenerate(omega, "omega")?;
    let n = basis.dim();
    let signs = Matrix::diag((0..n).map(|i| koszul(basis.parity(i), d.parity)).collect());
    let m = w_inv.mul(&signs).mul(&d.matrix.transpose()).mul(omega.gram());
    Ok(Derivation::new(d.parity, m))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::superalg::AlgebraBuilder;
    use proptest::prelude::*;

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

    fn p(name: &str, c: i64) -> Poly {
        Poly::monomial(Scalar::int(c), name)
    }

    /// delta(X0)=2b1 X0, delta(X1)=-2b1 X1, delta(Y1)=b1 Y1+b2 Y2, delta(Y2)=-b1 Y2
    fn delta41() -> Matrix<Poly> {
        let mut m = Matrix::<Poly>::zeros(4, 4);
        m[(0, 0)] = p("b1", 2);
        m[(1, 1)] = p("b1", -2);
        m[(2, 2)] = p("b1", 1);
        m[(3, 2)] = p("b2", 1);
        m[(3, 3)] = p("b1", -1);
        m
    }

    #[test]
    fn abelian_even_derivations_are_all_block_maps() {
        let a = LieSuperalgebra::abelian("a", &["A", "B"], &["C", "D", "E"]).unwrap();
        assert_eq!(derivation_space(&a, Parity::Even).dim(), 4 + 9);
        assert_eq!(derivation_space(&a, Parity::Odd).dim(), 12);
    }

    #[test]
    fn g41_skew_even_family() {
        let g = g41();
        let b = b41(&g);
        let fam = skew_derivation_space(&g, &b, Parity::Even).unwrap();
        assert_eq!(fam.dim(), 2);
        let paper = DerivationFamily::from_linear(Parity::Even, &delta41()).unwrap();
        assert!(fam.same_span(&paper));
        assert!(fam.is_subfamily_of(&derivation_space(&g, Parity::Even)));
        let subs = fam.reparametrize(&paper).unwrap();
        let renamed = fam.general_element().map(|e| {
            let mut out = Poly::zero();
            for (i, t) in subs.iter().enumerate() {
                out = &out + &(t * &Poly::constant(e.coefficient(&[(&format!("t{}", i + 1), 1)])));
            }
            out
        });
        assert_eq!(renamed, delta41());
    }

    #[test]
    fn g41_odd_derivations_contain_paper_family() {
        let g = g41();
        let odd = derivation_space(&g, Parity::Odd);
        for (a1, a2) in [(1, 0), (0, 1), (3, -2)] {
            let mut d = Matrix::zeros(4, 4);
            d[(2, 1)] = Scalar::int(a1);
            d[(3, 1)] = Scalar::int(a2);
            d[(0, 2)] = Scalar::int(-a2);
            d[(0, 3)] = Scalar::int(a1);
            assert!(odd.contains(&d));
            assert!(Derivation::new(Parity::Odd, d).is_skew_wrt(g.basis(), &b41(&g)));
        }
    }

    #[test]
    fn g41_invertibility_and_nilpotents() {
        let g = g41();
        let b = b41(&g);
        let paper = DerivationFamily::from_linear(Parity::Even, &delta41()).unwrap();
        let det = generic_invertibility(&paper).det().unwrap().clone();
        assert_eq!(det, Poly::var("b1").pow(4).scale(&Scalar::int(4)));
        let fam = skew_derivation_space(&g, &b, Parity::Even).unwrap();
        let nil = nilpotent_members(&fam).unwrap();
        assert_eq!(nil.dim(), 1);
        assert!(nil.contains(&Matrix::unit(4, 3, 2)));
        assert!(is_nilpotent_map(&Matrix::unit(4, 3, 2)));
        assert!(!is_nilpotent_map(&Matrix::identity(4)));
    }

    #[test]
    fn factoring() {
        let (b1, c3) = (Poly::var("b1"), Poly::var("c3"));
        let s = &b1 + &c3;
        let det = (&(&s * &s) * &(&b1 * &b1)) * (&c3 * &c3);
        let det = -det;
        let (c, mult) = factor_over(&det, &[b1.clone(), c3.clone(), s.clone()]).unwrap();
        assert_eq!(c, Scalar::int(-1));
        assert_eq!(mult, vec![2, 2, 2]);
        assert!(factor_over(&(&b1 + &Poly::one()), &[b1]).is_none());
    }

    #[test]
    fn omega_round_trip_g41() {
        let g = g41();
        let b = b41(&g);
        let at: Assignment = [("b1".to_string(), Scalar::one()), ("b2".to_string(), Scalar::zero())].into();
        let delta = Derivation::new(Parity::Even, delta41().eval(&at).unwrap());
        let w = omega_from_delta(g.basis(), &b, &delta).unwrap();
        assert_eq!(w.entry(0, 1), &Scalar::int(2));
        assert_eq!(w.entry(3, 2), &Scalar::int(-1));
        assert_eq!(delta_from_omega(&b, &w).unwrap(), delta);
        assert!(omega_from_delta(g.basis(), &b, &Derivation::zero(4, Parity::Even)).unwrap().gram().is_zero());
        let sym = omega_gram_poly(b.gram(), &delta41());
        assert_eq!(sym[(0, 1)], p("b1", 2));
        assert_eq!(sym[(3, 2)], p("b1", -1));
        assert_eq!(sym[(2, 2)], p("b2", 1));
    }

    #[test]
    fn adjoint_relation_holds() {
        let g = g41();
        let b = b41(&g);
        let at: Assignment = [("b1".to_string(), Scalar::one()), ("b2".to_string(), Scalar::int(3))].into();
        let delta = Derivation::new(Parity::Even, delta41().eval(&at).unwrap());
        let w = omega_from_delta(g.basis(), &b, &delta).unwrap();
        let odd = derivation_space(&g, Parity::Odd);
        for d in odd.members().chain(std::iter::once(Derivation::zero(4, Parity::Odd))) {
            let star = adjoint_wrt(g.basis(), &w, &d).unwrap();
            for i in 0..4 {
                for j in 0..4 {
                    let lhs = w.eval(&d.matrix.column(i), &crate::linalg::unit_vector(4, j));
                    let rhs = &koszul(g.parity(i), d.parity)
                        * &w.eval(&crate::linalg::unit_vector(4, i), &star.matrix.column(j));
                    assert_eq!(lhs, rhs);
                }
            }
            assert_eq!(adjoint_wrt(g.basis(), &w, &star).unwrap(), d);
        }
    }

    #[test]
    fn half_square_of_odd_derivation_is_derivation() {
        let g = g41();
        for d in derivation_space(&g, Parity::Odd).members() {
            let sq = d.supercommutator(&d);
            assert_eq!(sq.parity, Parity::Even);
            assert!(sq.is_derivation_of(&g));
            assert_eq!(sq.matrix, d.matrix.mul(&d.matrix).scale(&Scalar::int(2)));
        }
    }

    proptest! {
        #![proptest_config(ProptestConfig::with_cases(20))]
        #[test]
        fn random_derivations_double_adjoint(c in prop::collection::vec(-3i64..4, 4), b1 in 1i64..4, b2 in -2i64..3) {
            let g = g41();
            let b = b41(&g);
            let at: Assignment = [("b1".to_string(), Scalar::int(b1)), ("b2".to_string(), Scalar::int(b2))].into();
            let w = omega_from_delta(g.basis(), &b, &Derivation::new(Parity::Even, delta41().eval(&at).unwrap())).unwrap();
            let even = derivation_space(&g, Parity::Even);
            let coeffs: Vec<Scalar> = (0..even.dim()).map(|i| Scalar::int(c[i % 4] + i as i64)).collect();
            let d = even.member(&coeffs);
            prop_assert!(d.is_derivation_of(&g));
            let star = adjoint_wrt(g.basis(), &w, &d).unwrap();
            prop_assert_eq!(adjoint_wrt(g.basis(), &w, &star).unwrap(), d);
        }
    }
}
