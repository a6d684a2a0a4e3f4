//! Lie superalgebras given by structure constants on an even-then-odd basis.

use std::collections::HashSet;
use std::fmt;

use serde::{Deserialize, Serialize};

use crate::error::AlgebraError;
use crate::linalg::{axpy, is_zero_vector, unit_vector, Matrix, Vector};
use crate::scalar::Scalar;
use crate::subspace::Subspace;

#[derive(Clone, Copy, PartialEq, Eq, Hash, Debug, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Parity {
    Even,
    Odd,
}

impl Parity {
    pub fn bit(self) -> u8 {
        match self {
            Parity::Even => 0,
            Parity::Odd => 1,
        }
    }

    pub fn from_bit(bit: u8) -> Self {
        if bit % 2 == 0 {
            Parity::Even
        } else {
            Parity::Odd
        }
    }

    pub fn add(self, other: Parity) -> Parity {
        Parity::from_bit(self.bit() + other.bit())
    }

    pub fn name(self) -> &'static str {
        match self {
            Parity::Even => "even",
            Parity::Odd => "odd",
        }
    }
}

impl fmt::Display for Parity {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

/// `(-1)^(a*b)`.
pub fn koszul(a: Parity, b: Parity) -> Scalar {
    if a == Parity::Odd && b == Parity::Odd {
        Scalar::int(-1)
    } else {
        Scalar::one()
    }
}

/// Labelled basis with all even vectors before all odd ones.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct GradedBasis {
    labels: Vec<String>,
    n_even: usize,
}

impl GradedBasis {
    pub fn new<S: AsRef<str>>(even: &[S], odd: &[S]) -> Result<Self, AlgebraError> {
        let labels: Vec<String> = even.iter().chain(odd).map(|s| s.as_ref().to_string()).collect();
        let mut seen = HashSet::new();
        for l in &labels {
            if !seen.insert(l.as_str()) {
                return Err(AlgebraError::DuplicateLabel(l.clone()));
            }
        }
        Ok(GradedBasis { labels, n_even: even.len() })
    }

    pub fn dim(&self) -> usize {
        self.labels.len()
    }

    pub fn n_even(&self) -> usize {
        self.n_even
    }

    pub fn n_odd(&self) -> usize {
        self.labels.len() - self.n_even
    }

    pub fn labels(&self) -> &[String] {
        &self.labels
    }

    pub fn label(&self, i: usize) -> &str {
        &self.labels[i]
    }

    pub fn even_labels(&self) -> &[String] {
        &self.labels[..self.n_even]
    }

    pub fn odd_labels(&self) -> &[String] {
        &self.labels[self.n_even..]
    }

    pub fn parity(&self, i: usize) -> Parity {
        if i < self.n_even {
            Parity::Even
        } else {
            Parity::Odd
        }
    }

    pub fn index(&self, label: &str) -> Result<usize, AlgebraError> {
        self.labels.iter().position(|l| l == label).ok_or_else(|| AlgebraError::UnknownLabel(label.to_string()))
    }

    pub fn even_range(&self) -> std::ops::Range<usize> {
        0..self.n_even
    }

    pub fn odd_range(&self) -> std::ops::Range<usize> {
        self.n_even..self.labels.len()
    }

    /// Parity of a nonzero homogeneous vector; `None` for zero or mixed.
    pub fn parity_of(&self, v: &[Scalar]) -> Option<Parity> {
        let even = v[..self.n_even].iter().any(|x| !x.is_zero());
        let odd = v[self.n_even..].iter().any(|x| !x.is_zero());
        match (even, odd) {
            (true, false) => Some(Parity::Even),
            (false, true) => Some(Parity::Odd),
            _ => None,
        }
    }

    pub fn vector(&self, terms: &[(&str, Scalar)]) -> Result<Vector, AlgebraError> {
        let mut v = vec![Scalar::zero(); self.dim()];
        for (label, c) in terms {
            let i = self.index(label)?;
            v[i] += c;
        }
        Ok(v)
    }

    pub fn basis_vector(&self, label: &str) -> Result<Vector, AlgebraError> {
        Ok(unit_vector(self.dim(), self.index(label)?))
    }

    /// Human-readable linear combination such as `-2*X0 + Y2`.
    pub fn format_vector(&self, v: &[Scalar]) -> String {
        let mut out = String::new();
        for (c, label) in v.iter().zip(&self.labels) {
            if c.is_zero() {
                continue;
            }
            let negative = c.is_rational() && *c < Scalar::zero();
            let mag = if negative { -c } else { c.clone() };
            let sep = match (out.is_empty(), negative) {
                (true, true) => "-",
                (true, false) => "",
                (false, true) => " - ",
                (false, false) => " + ",
            };
            out.push_str(sep);
            if mag.is_one() {
                out.push_str(label);
            } else if mag.is_rational() {
                out.push_str(&format!("{mag}*{label}"));
            } else {
                out.push_str(&format!("({mag})*{label}"));
            }
        }
        if out.is_empty() {
            out.push('0');
        }
        out
    }
}

/// A validated Lie superalgebra. `table[i][j]` holds `[e_i, e_j]`.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct LieSuperalgebra {
    name: String,
    basis: GradedBasis,
    table: Vec<Vec<Vector>>,
}

impl LieSuperalgebra {
    pub fn abelian<S: AsRef<str>>(name: &str, even: &[S], odd: &[S]) -> Result<Self, AlgebraError> {
        let basis = GradedBasis::new(even, odd)?;
        let n = basis.dim();
        Ok(LieSuperalgebra { name: name.to_string(), basis, table: vec![vec![vec![Scalar::zero(); n]; n]; n] })
    }

    /// Validates a full table: parity closure, super-anticommutativity and
    /// the super Jacobi identity on every ordered basis triple.
    pub fn from_table(name: &str, basis: GradedBasis, table: Vec<Vec<Vector>>) -> Result<Self, AlgebraError> {
        let n = basis.dim();
        assert!(table.len() == n && table.iter().all(|r| r.len() == n && r.iter().all(|v| v.len() == n)));
        let g = LieSuperalgebra { name: name.to_string(), basis, table };
        g.check_parity()?;
        g.check_antisymmetry()?;
        g.check_jacobi()?;
        Ok(g)
    }

    fn check_parity(&self) -> Result<(), AlgebraError> {
        let n = self.dim();
        for i in 0..n {
            for j in 0..n {
                let target = self.basis.parity(i).add(self.basis.parity(j));
                let v = &self.table[i][j];
                if (0..n).any(|k| self.basis.parity(k) != target && !v[k].is_zero()) {
                    return Err(AlgebraError::ParityViolation {
                        lhs: self.basis.label(i).to_string(),
                        rhs: self.basis.label(j).to_string(),
                        expected: target.name(),
                    });
                }
            }
        }
        Ok(())
    }

    fn check_antisymmetry(&self) -> Result<(), AlgebraError> {
        let n = self.dim();
        for i in 0..n {
            for j in i..n {
                let s = koszul(self.basis.parity(i), self.basis.parity(j));
                let ok = self.table[i][j].iter().zip(&self.table[j][i]).all(|(a, b)| *a == -(&s * b));
                if !ok {
                    return Err(AlgebraError::AntisymmetryViolation {
                        lhs: self.basis.label(i).to_string(),
                        rhs: self.basis.label(j).to_string(),
                    });
                }
            }
        }
        Ok(())
    }

    /// Super Jacobi residual for basis indices `(x, y, z)`.
    pub fn jacobi_residual(&self, x: usize, y: usize, z: usize) -> Vector {
        let (px, py, pz) = (self.basis.parity(x), self.basis.parity(y), self.basis.parity(z));
        let n = self.dim();
        let mut out = vec![Scalar::zero(); n];
        let mut term = |s: Scalar, a: usize, inner: &Vector| {
            let ea = unit_vector(n, a);
            let v = self.bracket_vec(&ea, inner);
            axpy(&mut out, &s, &v);
        };
        term(koszul(px, pz), x, &self.table[y][z]);
        term(koszul(px, py), y, &self.table[z][x]);
        term(koszul(py, pz), z, &self.table[x][y]);
        out
    }

    fn check_jacobi(&self) -> Result<(), AlgebraError> {
        let n = self.dim();
        for x in 0..n {
            for y in 0..n {
                for z in 0..n {
                    let r = self.jacobi_residual(x, y, z);
                    if !is_zero_vector(&r) {
                        return Err(AlgebraError::JacobiViolation {
                            x: self.basis.label(x).to_string(),
                            y: self.basis.label(y).to_string(),
                            z: self.basis.label(z).to_string(),
                            residual: self.basis.format_vector(&r),
                        });
                    }
                }
            }
        }
        Ok(())
    }

    pub fn name(&self) -> &str {
        &self.name
    }

    pub fn with_name(mut self, name: &str) -> Self {
        self.name = name.to_string();
        self
    }

    pub fn basis(&self) -> &GradedBasis {
        &self.basis
    }

    pub fn dim(&self) -> usize {
        self.basis.dim()
    }

    pub fn n_even(&self) -> usize {
        self.basis.n_even()
    }

    pub fn n_odd(&self) -> usize {
        self.basis.n_odd()
    }

    pub fn parity(&self, i: usize) -> Parity {
        self.basis.parity(i)
    }

    pub fn index(&self, label: &str) -> Result<usize, AlgebraError> {
        self.basis.index(label)
    }

    pub fn vector(&self, terms: &[(&str, Scalar)]) -> Result<Vector, AlgebraError> {
        self.basis.vector(terms)
    }

    pub fn basis_vector(&self, label: &str) -> Result<Vector, AlgebraError> {
        self.basis.basis_vector(label)
    }

    pub fn format_vector(&self, v: &[Scalar]) -> String {
        self.basis.format_vector(v)
    }

    /// `[e_i, e_j]`.
    pub fn structure(&self, i: usize, j: usize) -> &Vector {
        &self.table[i][j]
    }

    pub fn table(&self) -> &[Vec<Vector>] {
        &self.table
    }

    /// Bilinear extension of the table, without homogeneity checks.
    pub fn bracket_vec(&self, v: &[Scalar], w: &[Scalar]) -> Vector {
        let n = self.dim();
        let mut out = vec![Scalar::zero(); n];
        for (i, a) in v.iter().enumerate() {
            if a.is_zero() {
                continue;
            }
            for (j, b) in w.iter().enumerate() {
                if b.is_zero() {
                    continue;
                }
                axpy(&mut out, &(a * b), &self.table[i][j]);
            }
        }
        out
    }

    /// Bracket of two parity-homogeneous vectors.
    pub fn bracket(&self, v: &[Scalar], w: &[Scalar]) -> Result<Vector, AlgebraError> {
        for x in [v, w] {
            if x.len() != self.dim() {
                return Err(AlgebraError::WrongLength { expected: self.dim(), got: x.len() });
            }
            if !is_zero_vector(x) && self.basis.parity_of(x).is_none() {
                return Err(AlgebraError::NonHomogeneous);
            }
        }
        Ok(self.bracket_vec(v, w))
    }

    pub fn bracket_labels(&self, a: &str, b: &str) -> Result<Vector, AlgebraError> {
        Ok(self.table[self.index(a)?][self.index(b)?].clone())
    }

    /// Matrix of `ad_v = [v, ·]` in column action.
    pub fn ad(&self, v: &[Scalar]) -> Matrix {
        let n = self.dim();
        let cols: Vec<Vector> = (0..n).map(|j| self.bracket_vec(v, &unit_vector(n, j))).collect();
        Matrix::from_columns(n, &cols)
    }

    pub fn is_abelian(&self) -> bool {
        self.table.iter().flatten().all(|v| is_zero_vector(v))
    }

    /// Brackets `[e_i, e_j]` with `i <= j` that are nonzero.
    pub fn nonzero_brackets(&self) -> Vec<(usize, usize, &Vector)> {
        let n = self.dim();
        let mut out = Vec::new();
        for i in 0..n {
            for j in i..n {
                if !is_zero_vector(&self.table[i][j]) {
                    out.push((i, j, &self.table[i][j]));
                }
            }
        }
        out
    }

    /// Structure constants in the basis given by the columns of `t`:
    /// `[u, v]' = t^-1 [t u, t v]`.
    pub fn change_of_basis(&self, t: &Matrix) -> Result<Self, AlgebraError> {
        self.change_of_basis_labelled(t, self.basis.labels())
    }

    pub fn change_of_basis_labelled<S: AsRef<str>>(&self, t: &Matrix, labels: &[S]) -> Result<Self, AlgebraError> {
        let n = self.dim();
        if t.rows() != n || t.cols() != n || labels.len() != n {
            return Err(AlgebraError::WrongLength { expected: n, got: t.cols().min(labels.len()) });
        }
        for i in 0..n {
            for j in 0..n {
                if self.parity(i) != self.parity(j) && !t[(i, j)].is_zero() {
                    return Err(AlgebraError::ParityMixing);
                }
            }
        }
        let inv = t.inverse().ok().flatten().ok_or(AlgebraError::SingularChange)?;
        let cols: Vec<Vector> = (0..n).map(|j| t.column(j)).collect();
        let mut table = vec![vec![vec![Scalar::zero(); n]; n]; n];
        for a in 0..n {
            for b in 0..n {
                table[a][b] = inv.apply(&self.bracket_vec(&cols[a], &cols[b]));
            }
        }
        let basis = GradedBasis::new(&labels[..self.n_even()], &labels[self.n_even()..])?;
        Ok(LieSuperalgebra { name: self.name.clone(), basis, table })
    }

    pub fn relabel<S: AsRef<str>>(&self, labels: &[S]) -> Result<Self, AlgebraError> {
        self.change_of_basis_labelled(&Matrix::identity(self.dim()), labels)
    }

    /// Drops every odd-odd bracket, keeping the even-even and even-odd ones.
    pub fn forget_odd_brackets(&self) -> Self {
        let mut g = self.clone();
        for i in self.basis.odd_range() {
            for j in self.basis.odd_range() {
                g.table[i][j] = vec![Scalar::zero(); self.dim()];
            }
        }
        g
    }

    /// `{x : [x, s] = 0}`.
    pub fn centralizer(&self, s: &Subspace) -> Subspace {
        let n = self.dim();
        if s.is_zero() {
            return Subspace::full(n);
        }
        // unknown coefficients x_i; equations: sum_i x_i [e_i, b]_k = 0
        let mut rows = Vec::new();
        for b in s.basis() {
            let images: Vec<Vector> = (0..n).map(|i| self.bracket_vec(&unit_vector(n, i), b)).collect();
            for k in 0..n {
                rows.push(images.iter().map(|v| v[k].clone()).collect());
            }
        }
        Subspace::span(n, &Matrix::from_rows(rows).kernel())
    }

    pub fn center(&self) -> Subspace {
        self.centralizer(&Subspace::full(self.dim()))
    }

    /// `[a, b]` for graded subspaces.
    pub fn bracket_subspaces(&self, a: &Subspace, b: &Subspace) -> Subspace {
        let split = self.n_even();
        let ha = a.homogeneous_basis(split);
        let hb = b.homogeneous_basis(split);
        let mut vs = Vec::new();
        for u in &ha {
            for v in &hb {
                let w = self.bracket_vec(u, v);
                if !is_zero_vector(&w) {
                    vs.push(w);
                }
            }
        }
        Subspace::span(self.dim(), &vs)
    }

    pub fn even_part(&self) -> Subspace {
        Subspace::coordinate(self.dim(), self.basis.even_range())
    }

    pub fn odd_part(&self) -> Subspace {
        Subspace::coordinate(self.dim(), self.basis.odd_range())
    }

    pub fn is_graded(&self, s: &Subspace) -> bool {
        s.is_graded(self.n_even())
    }

    pub fn is_graded_ideal(&self, s: &Subspace) -> Result<bool, AlgebraError> {
        if !self.is_graded(s) {
            return Err(AlgebraError::NonGraded);
        }
        let full = Subspace::full(self.dim());
        Ok(s.contains_subspace(&self.bracket_subspaces(&full, s)))
    }

    /// Quotient `w / ideal` with coset representatives chosen greedily from
    /// the homogeneous basis of `w`.
    pub fn subquotient(&self, w: &Subspace, ideal: &Subspace) -> Result<Subquotient, AlgebraError> {
        if !self.is_graded(w) || !self.is_graded(ideal) {
            return Err(AlgebraError::NonGraded);
        }
        if !w.contains_subspace(ideal) {
            return Err(AlgebraError::Subquotient("ideal is not contained in the subalgebra".into()));
        }
        if !self.is_graded_ideal(ideal)? {
            return Err(AlgebraError::Subquotient("ideal is not a graded ideal".into()));
        }
        if !w.contains_subspace(&self.bracket_subspaces(w, w)) {
            return Err(AlgebraError::Subquotient("subspace is not a subalgebra".into()));
        }
        let split = self.n_even();
        let mut span = ideal.clone();
        let mut reps: Vec<Vector> = Vec::new();
        for candidates in [w.restrict_to(0..split), w.restrict_to(split..self.dim())] {
            // prefer standard basis vectors so labels carry over
            let mut pool: Vec<Vector> =
                (0..self.dim()).map(|i| unit_vector(self.dim(), i)).filter(|e| candidates.contains(e)).collect();
            pool.extend(candidates.basis().iter().cloned());
            for v in pool {
                if !span.contains(&v) {
                    span = span.sum(&Subspace::span(self.dim(), std::slice::from_ref(&v)));
                    reps.push(v);
                }
            }
        }
        let n_even = reps.iter().filter(|v| self.basis.parity_of(v) == Some(Parity::Even)).count();
        let ideal_basis = ideal.basis().to_vec();
        let frame_cols: Vec<Vector> = reps.iter().chain(&ideal_basis).cloned().collect();
        let frame = Matrix::from_columns(self.dim(), &frame_cols);
        let m = reps.len();
        let project = |v: &Vector| -> Result<Vector, AlgebraError> {
            let coords = frame
                .solve_vec(v)
                .ok()
                .flatten()
                .ok_or_else(|| AlgebraError::Subquotient("bracket leaves the subalgebra".into()))?;
            Ok(coords[..m].to_vec())
        };
        let mut table = vec![vec![vec![Scalar::zero(); m]; m]; m];
        for a in 0..m {
            for b in 0..m {
                table[a][b] = project(&self.bracket_vec(&reps[a], &reps[b]))?;
            }
        }
        let labels: Vec<String> = reps
            .iter()
            .enumerate()
            .map(|(k, v)| match standard_index(v) {
                Some(i) => self.basis.label(i).to_string(),
                None => format!("q{}", k + 1),
            })
            .collect();
        let basis = GradedBasis::new(&labels[..n_even], &labels[n_even..])?;
        let algebra = LieSuperalgebra::from_table(&format!("{}/quotient", self.name), basis, table)?;
        Ok(Subquotient { algebra, section: reps, ideal: ideal.clone() })
    }
}

fn standard_index(v: &[Scalar]) -> Option<usize> {
    let nz: Vec<usize> = (0..v.len()).filter(|&i| !v[i].is_zero()).collect();
    (nz.len() == 1 && v[nz[0]].is_one()).then(|| nz[0])
}

/// Quotient algebra together with its chosen coset representatives.
#[derive(Clone, Debug)]
pub struct Subquotient {
    pub algebra: LieSuperalgebra,
    /// Representatives in parent coordinates, one per quotient basis vector.
    pub section: Vec<Vector>,
    pub ideal: Subspace,
}

impl Subquotient {
    /// Coordinates of a parent vector (assumed in the subalgebra) in the
    /// quotient basis.
    pub fn project(&self, parent_dim: usize, v: &[Scalar]) -> Option<Vector> {
        let cols: Vec<Vector> = self.section.iter().chain(self.ideal.basis()).cloned().collect();
        let coords = Matrix::from_columns(parent_dim, &cols).solve_vec(v).ok().flatten()?;
        Some(coords[..self.section.len()].to_vec())
    }
}

/// Incremental construction by labels.
#[derive(Clone, Debug, Default)]
pub struct AlgebraBuilder {
    name: String,
    even: Vec<String>,
    odd: Vec<String>,
    entries: Vec<(String, String, Vec<(String, Scalar)>)>,
    ordered: bool,
}

impl AlgebraBuilder {
    pub fn new<S: AsRef<str>>(name: &str, even: &[S], odd: &[S]) -> Self {
        AlgebraBuilder {
            name: name.to_string(),
            even: even.iter().map(|s| s.as_ref().to_string()).collect(),
            odd: odd.iter().map(|s| s.as_ref().to_string()).collect(),
            entries: Vec::new(),
            ordered: false,
        }
    }

    /// Require every entry to list its pair with `lhs <= rhs` in basis order.
    pub fn ordered_pairs(mut self) -> Self {
        self.ordered = true;
        self
    }

    pub fn bracket(mut self, lhs: &str, rhs: &str, value: Vec<(&str, Scalar)>) -> Self {
        self.push(lhs, rhs, value.into_iter().map(|(l, c)| (l.to_string(), c)).collect());
        self
    }

    /// Integer-coefficient convenience form of [`bracket`](Self::bracket).
    pub fn bracket_int(self, lhs: &str, rhs: &str, value: &[(&str, i64)]) -> Self {
        self.bracket(lhs, rhs, value.iter().map(|&(l, c)| (l, Scalar::int(c))).collect())
    }

    pub fn push(&mut self, lhs: &str, rhs: &str, value: Vec<(String, Scalar)>) {
        self.entries.push((lhs.to_string(), rhs.to_string(), value));
    }

    pub fn build(self) -> Result<LieSuperalgebra, AlgebraError> {
        let basis = GradedBasis::new(&self.even, &self.odd)?;
        let n = basis.dim();
        let mut table: Vec<Vec<Option<Vector>>> = vec![vec![None; n]; n];
        let mut seen = HashSet::new();
        for (lhs, rhs, value) in &self.entries {
            let (i, j) = (basis.index(lhs)?, basis.index(rhs)?);
            if self.ordered && i > j {
                return Err(AlgebraError::OrderViolation { lhs: lhs.clone(), rhs: rhs.clone() });
            }
            if !seen.insert((i, j)) {
                return Err(AlgebraError::DuplicateBracket { lhs: lhs.clone(), rhs: rhs.clone() });
            }
            let mut v = vec![Scalar::zero(); n];
            for (label, c) in value {
                v[basis.index(label)?] += c;
            }
            let target = basis.parity(i).add(basis.parity(j));
            if (0..n).any(|k| basis.parity(k) != target && !v[k].is_zero()) {
                return Err(AlgebraError::ParityViolation {
                    lhs: lhs.clone(),
                    rhs: rhs.clone(),
                    expected: target.name(),
                });
            }
            let s = koszul(basis.parity(i), basis.parity(j));
            let mirrored: Vector = v.iter().map(|x| -(&s * x)).collect();
            let conflict = |slot: &Option<Vector>, new: &Vector| slot.as_ref().is_some_and(|old| old != new);
            if conflict(&table[i][j], &v) || conflict(&table[j][i], &mirrored) || (i == j && v != mirrored) {
                return Err(AlgebraError::AntisymmetryViolation { lhs: lhs.clone(), rhs: rhs.clone() });
            }
            table[i][j] = Some(v);
            table[j][i] = Some(mirrored);
        }
        let table = table
            .into_iter()
            .map(|row| row.into_iter().map(|v| v.unwrap_or_else(|| vec![Scalar::zero(); n])).collect())
            .collect();
        LieSuperalgebra::from_table(&self.name, basis, table)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    fn g41() -> LieSuperalgebra {
        AlgebraBuilder::new("g4_1s", &["X0", "X1"], &["Y1", "Y2"])
            .bracket_int("X1", "Y1", &[("Y2", -2)])
            .bracket_int("Y1", "Y1", &[("X0", -2)])
            .build()
            .unwrap()
    }

    fn g64() -> LieSuperalgebra {
        AlgebraBuilder::new("g6_4s", &["X0", "X1"], &["Y1", "Y2", "Y3", "Y4"])
            .bracket_int("X1", "Y1", &[("Y2", -1)])
            .bracket_int("X1", "Y3", &[("Y4", 1)])
            .bracket_int("Y1", "Y3", &[("X0", 1)])
            .build()
            .unwrap()
    }

    #[test]
    fn builds_and_brackets() {
        let g = g41();
        let y1 = g.basis_vector("Y1").unwrap();
        assert_eq!(g.bracket(&y1, &y1).unwrap(), g.vector(&[("X0", Scalar::int(-2))]).unwrap());
        assert_eq!(g.bracket(&y1, &vec![Scalar::zero(); 4]).unwrap(), vec![Scalar::zero(); 4]);
        // [Y1, X1] = -[X1, Y1] = 2 Y2
        assert_eq!(g.bracket_labels("Y1", "X1").unwrap(), g.vector(&[("Y2", Scalar::int(2))]).unwrap());
        let h = g64();
        let x1 = h.basis_vector("X1").unwrap();
        let y3 = h.basis_vector("Y3").unwrap();
        assert_eq!(h.bracket(&x1, &y3).unwrap(), h.basis_vector("Y4").unwrap());
        let mixed = g.vector(&[("X0", Scalar::one()), ("Y1", Scalar::one())]).unwrap();
        assert_eq!(g.bracket(&mixed, &y1), Err(AlgebraError::NonHomogeneous));
    }

    #[test]
    fn build_errors() {
        let even_square =
            AlgebraBuilder::new("bad", &["X0", "X1"], &["Y1", "Y2"]).bracket_int("X1", "X1", &[("X0", 1)]).build();
        assert!(matches!(even_square, Err(AlgebraError::AntisymmetryViolation { .. })));
        let jacobi = AlgebraBuilder::new("bad", &["X0", "X1"], &["Y1", "Y2"])
            .bracket_int("X1", "Y1", &[("Y1", 1)])
            .bracket_int("Y1", "Y1", &[("X0", -2)])
            .build();
        match jacobi {
            Err(AlgebraError::JacobiViolation { x, y, z, residual }) => {
                assert_eq!((x.as_str(), y.as_str(), z.as_str()), ("X1", "Y1", "Y1"));
                assert_eq!(residual, "4*X0");
            }
            other => panic!("expected Jacobi violation, got {other:?}"),
        }
        let parity = AlgebraBuilder::new("bad", &["X0"], &["Y1"]).bracket_int("X0", "Y1", &[("X0", 1)]).build();
        assert!(matches!(parity, Err(AlgebraError::ParityViolation { .. })));
        let ordered =
            AlgebraBuilder::new("bad", &["X0"], &["Y1"]).ordered_pairs().bracket_int("Y1", "X0", &[("Y1", 1)]).build();
        assert!(matches!(ordered, Err(AlgebraError::OrderViolation { .. })));
        let dup = AlgebraBuilder::new("bad", &["X0"], &["Y1"])
            .bracket_int("Y1", "Y1", &[("X0", 1)])
            .bracket_int("Y1", "Y1", &[("X0", 1)])
            .build();
        assert!(matches!(dup, Err(AlgebraError::DuplicateBracket { .. })));
        assert!(LieSuperalgebra::abelian("a", &["A", "B"], &["C"]).unwrap().is_abelian());
    }

    #[test]
    fn change_of_basis_to_backhouse_form() {
        let g = AlgebraBuilder::new("g4_2s", &["X0", "X1"], &["Y1", "Y2"])
            .bracket_int("X1", "Y1", &[("Y1", -1)])
            .bracket_int("X1", "Y2", &[("Y2", 1)])
            .bracket_int("Y1", "Y2", &[("X0", 1)])
            .build()
            .unwrap();
        // new basis (b, a, beta, alpha) = (X0, X1, Y1, Y2) reordered as
        // even {b, a}, odd {alpha, beta}
        let t = Matrix::from_ints(&[&[1, 0, 0, 0], &[0, 1, 0, 0], &[0, 0, 0, 1], &[0, 0, 1, 0]]);
        let h = g.change_of_basis_labelled(&t, &["b", "a", "alpha", "beta"]).unwrap();
        assert_eq!(h.bracket_labels("a", "alpha").unwrap(), h.basis_vector("alpha").unwrap());
        let minus_beta: Vector = h.basis_vector("beta").unwrap().iter().map(|x| -x).collect();
        assert_eq!(h.bracket_labels("a", "beta").unwrap(), minus_beta);
        assert_eq!(h.bracket_labels("alpha", "beta").unwrap(), h.basis_vector("b").unwrap());
    }

    #[test]
    fn change_of_basis_rejects_bad_maps() {
        let g = g41();
        let mixing = Matrix::from_ints(&[&[1, 0, 1, 0], &[0, 1, 0, 0], &[0, 0, 1, 0], &[0, 0, 0, 1]]);
        assert_eq!(g.change_of_basis(&mixing), Err(AlgebraError::ParityMixing));
        let singular = Matrix::diag(vec![Scalar::one(), Scalar::zero(), Scalar::one(), Scalar::one()]);
        assert_eq!(g.change_of_basis(&singular), Err(AlgebraError::SingularChange));
    }

    #[test]
    fn forget_keeps_even_action() {
        let g = g41().forget_odd_brackets();
        assert_eq!(g.nonzero_brackets().len(), 1);
        assert_eq!(g.bracket_labels("X1", "Y1").unwrap(), g.vector(&[("Y2", Scalar::int(-2))]).unwrap());
        let h = g64().forget_odd_brackets();
        assert_eq!(h.nonzero_brackets().len(), 2);
        assert_eq!(h.forget_odd_brackets(), h);
    }

    #[test]
    fn ideals_and_center() {
        let g = g41();
        assert_eq!(g.center(), Subspace::coordinate(4, [0, 3]));
        assert!(g.is_graded_ideal(&Subspace::full(4)).unwrap());
        assert!(g.is_graded_ideal(&Subspace::coordinate(4, [3])).unwrap());
        assert!(!g.is_graded_ideal(&Subspace::coordinate(4, [2])).unwrap());
        let mixed = Subspace::span(4, &[g.vector(&[("X0", Scalar::one()), ("Y1", Scalar::one())]).unwrap()]);
        assert_eq!(g.is_graded_ideal(&mixed), Err(AlgebraError::NonGraded));
    }

    #[test]
    fn subquotient_of_g41() {
        let g = g41();
        let q = g.subquotient(&Subspace::coordinate(4, [0, 1, 3]), &Subspace::coordinate(4, [3])).unwrap();
        assert_eq!(q.algebra.basis().labels(), ["X0", "X1"]);
        assert!(q.algebra.is_abelian());
        let same = g.subquotient(&Subspace::full(4), &Subspace::zero(4)).unwrap();
        assert_eq!(same.algebra.table(), g.table());
    }

    fn arb_even_block_change() -> impl Strategy<Value = Matrix> {
        (prop::collection::vec(-2i64..3, 4), prop::collection::vec(-2i64..3, 16)).prop_filter_map(
            "invertible",
            |(even, odd)| {
                let mut t = Matrix::<Scalar>::zeros(6, 6);
                for i in 0..2 {
                    for j in 0..2 {
                        t[(i, j)] = Scalar::int(even[2 * i + j]);
                    }
                }
                for i in 0..4 {
                    for j in 0..4 {
                        t[(2 + i, 2 + j)] = Scalar::int(odd[4 * i + j]);
                    }
                }
                (!t.det().unwrap().is_zero()).then_some(t)
            },
        )
    }

    proptest! {
        #![proptest_config(ProptestConfig::with_cases(50))]
        #[test]
        fn change_of_basis_round_trip(t in arb_even_block_change()) {
            let g = g64();
            let h = g.change_of_basis(&t).unwrap();
            let back = h.change_of_basis(&t.inverse().unwrap().unwrap()).unwrap();
            prop_assert_eq!(back, g);
        }

        #[test]
        fn jacobi_holds_on_random_vectors(
            a in prop::collection::vec(-3i64..4, 6),
            b in prop::collection::vec(-3i64..4, 6),
            c in prop::collection::vec(-3i64..4, 6),
        ) {
            let g = g64();
            let even = |xs: &[i64]| -> Vector { xs.iter().enumerate().map(|(i, &x)| if i < 2 { Scalar::int(x) } else { Scalar::zero() }).collect() };
            let odd = |xs: &[i64]| -> Vector { xs.iter().enumerate().map(|(i, &x)| if i >= 2 { Scalar::int(x) } else { Scalar::zero() }).collect() };
            for (x, px) in [(even(&a), Parity::Even), (odd(&a), Parity::Odd)] {
                for (y, py) in [(even(&b), Parity::Even), (odd(&b), Parity::Odd)] {
                    for (z, pz) in [(even(&c), Parity::Even), (odd(&c), Parity::Odd)] {
                        let mut r = crate::linalg::scale_vec(&g.bracket_vec(&x, &g.bracket_vec(&y, &z)), &koszul(px, pz));
                        axpy(&mut r, &koszul(px, py), &g.bracket_vec(&y, &g.bracket_vec(&z, &x)));
                        axpy(&mut r, &koszul(py, pz), &g.bracket_vec(&z, &g.bracket_vec(&x, &y)));
                        prop_assert!(is_zero_vector(&r));
                    }
                }
            }
        }
    }
}
