//! Subspaces of a coordinate space, kept in canonical reduced echelon form.

use crate::linalg::{axpy, is_zero_vector, Matrix, Vector};
use crate::scalar::Scalar;

/// A subspace of `K^n`. The stored rows are the nonzero rows of the reduced
/// echelon form of any spanning set, so equal subspaces compare equal.
#[derive(Clone, PartialEq, Eq, Hash, Debug)]
pub struct Subspace {
    ambient: usize,
    rows: Vec<Vector>,
    pivots: Vec<usize>,
}

impl Subspace {
    pub fn zero(ambient: usize) -> Self {
        Subspace { ambient, rows: Vec::new(), pivots: Vec::new() }
    }

    pub fn full(ambient: usize) -> Self {
        Self::span(ambient, &(0..ambient).map(|i| crate::linalg::unit_vector(ambient, i)).collect::<Vec<_>>())
    }

    /// Span of the coordinate vectors with the given indices.
    pub fn coordinate(ambient: usize, indices: impl IntoIterator<Item = usize>) -> Self {
        let vs: Vec<Vector> = indices.into_iter().map(|i| crate::linalg::unit_vector(ambient, i)).collect();
        Self::span(ambient, &vs)
    }

    pub fn span(ambient: usize, vectors: &[Vector]) -> Self {
        if vectors.is_empty() {
            return Self::zero(ambient);
        }
        assert!(vectors.iter().all(|v| v.len() == ambient), "vector length");
        let ech = Matrix::from_rows(vectors.to_vec()).rref();
        let rows = (0..ech.pivots.len()).map(|r| ech.reduced.row(r).to_vec()).collect();
        Subspace { ambient, rows, pivots: ech.pivots }
    }

    pub fn ambient(&self) -> usize {
        self.ambient
    }

    pub fn dim(&self) -> usize {
        self.rows.len()
    }

    pub fn is_zero(&self) -> bool {
        self.rows.is_empty()
    }

    /// Canonical basis (reduced echelon rows).
    pub fn basis(&self) -> &[Vector] {
        &self.rows
    }

    pub fn pivots(&self) -> &[usize] {
        &self.pivots
    }

    /// Coordinates of `v` in the canonical basis, if `v` lies in the span.
    pub fn coordinates(&self, v: &[Scalar]) -> Option<Vec<Scalar>> {
        let coords: Vec<Scalar> = self.pivots.iter().map(|&p| v[p].clone()).collect();
        let mut residual = v.to_vec();
        for (c, row) in coords.iter().zip(&self.rows) {
            axpy(&mut residual, &-c, row);
        }
        is_zero_vector(&residual).then_some(coords)
    }

    pub fn contains(&self, v: &[Scalar]) -> bool {
        self.coordinates(v).is_some()
    }

    pub fn contains_subspace(&self, other: &Subspace) -> bool {
        other.rows.iter().all(|v| self.contains(v))
    }

    pub fn sum(&self, other: &Subspace) -> Subspace {
        let vs: Vec<Vector> = self.rows.iter().chain(&other.rows).cloned().collect();
        Self::span(self.ambient, &vs)
    }

    pub fn intersection(&self, other: &Subspace) -> Subspace {
        if self.is_zero() || other.is_zero() {
            return Self::zero(self.ambient);
        }
        // a·U = b·W  <=>  [U^T | -W^T] (a, b) = 0
        let k = self.dim();
        let cols: Vec<Vector> =
            self.rows.iter().cloned().chain(other.rows.iter().map(|w| w.iter().map(|x| -x).collect())).collect();
        let m = Matrix::from_columns(self.ambient, &cols);
        let vs: Vec<Vector> = m
            .kernel()
            .into_iter()
            .map(|coef| {
                let mut v = vec![Scalar::zero(); self.ambient];
                for (c, row) in coef[..k].iter().zip(&self.rows) {
                    axpy(&mut v, c, row);
                }
                v
            })
            .collect();
        Self::span(self.ambient, &vs)
    }

    /// Intersection with the span of coordinates `range`.
    pub fn restrict_to(&self, range: std::ops::Range<usize>) -> Subspace {
        self.intersection(&Self::coordinate(self.ambient, range))
    }

    /// Whether the subspace is spanned by vectors supported on
    /// `0..split` or on `split..n`.
    pub fn is_graded(&self, split: usize) -> bool {
        self.rows.iter().all(|v| {
            let mut even = v.clone();
            even[split..].iter_mut().for_each(|x| *x = Scalar::zero());
            self.contains(&even)
        })
    }

    /// Basis listing the `0..split` part first, then the `split..n` part.
    /// Only spans the subspace when it is graded.
    pub fn homogeneous_basis(&self, split: usize) -> Vec<Vector> {
        let even = self.restrict_to(0..split);
        let odd = self.restrict_to(split..self.ambient);
        even.rows.into_iter().chain(odd.rows).collect()
    }

    /// Complement of `self` in `K^n` by greedy choice of coordinate vectors.
    pub fn coordinate_complement(&self) -> Vec<usize> {
        (0..self.ambient).filter(|i| !self.pivots.contains(i)).collect()
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn v(xs: &[i64]) -> Vector {
        xs.iter().map(|&x| Scalar::int(x)).collect()
    }

    #[test]
    fn span_is_canonical() {
        let a = Subspace::span(3, &[v(&[1, 1, 0]), v(&[0, 1, 1])]);
        let b = Subspace::span(3, &[v(&[1, 2, 1]), v(&[1, 0, -1])]);
        assert_eq!(a, b);
        assert_eq!(a.dim(), 2);
        assert!(a.contains(&v(&[2, 3, 1])));
        assert!(!a.contains(&v(&[0, 0, 1])));
    }

    #[test]
    fn sum_and_intersection() {
        let a = Subspace::coordinate(4, [0, 1]);
        let b = Subspace::span(4, &[v(&[0, 1, 1, 0]), v(&[0, 0, 0, 1])]);
        assert_eq!(a.intersection(&b), Subspace::zero(4));
        assert_eq!(a.sum(&b), Subspace::full(4));
        let c = Subspace::span(4, &[v(&[1, 1, 0, 0])]);
        assert_eq!(a.intersection(&c), c);
    }

    #[test]
    fn grading() {
        let graded = Subspace::span(4, &[v(&[1, 0, 1, 0]), v(&[0, 0, 1, 0])]);
        assert!(graded.is_graded(2));
        assert_eq!(graded.homogeneous_basis(2), vec![v(&[1, 0, 0, 0]), v(&[0, 0, 1, 0])]);
        let mixed = Subspace::span(4, &[v(&[1, 0, 1, 0])]);
        assert!(!mixed.is_graded(2));
    }
}
