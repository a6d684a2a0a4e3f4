use crate::derivations::Derivation;
use crate::linalg::{unit_vector, Matrix, Vector};
use crate::scalar::Scalar;
use crate::subspace::Subspace;
use crate::superalg::LieSuperalgebra;

/// Data for the generalized symplectic lift.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct LiftWitness {
    pub alpha: Scalar,
    pub a: Vector,
    pub mu: Scalar,
}

/// `[delta, D] + alpha D - ad(A)`.
pub fn lift_residual(g: &LieSuperalgebra, delta: &Derivation, d: &Derivation, alpha: &Scalar, a: &[Scalar]) -> Matrix {
    delta.supercommutator(d).matrix.add(&d.matrix.scale(alpha)).sub(&g.ad(a))
}

/// Solution set `particular + span(directions)` of a linear system in
/// `(alpha, A)`.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct LiftSolutions {
    pub particular: Option<(Scalar, Vector)>,
    pub directions: Vec<(Scalar, Vector)>,
    positions: Vec<usize>,
}

impl LiftSolutions {
    pub fn is_empty(&self) -> bool {
        self.particular.is_none()
    }

    fn pack(&self, alpha: &Scalar, a: &[Scalar]) -> Option<Vector> {
        let mut u = vec![alpha.clone()];
        for (k, x) in a.iter().enumerate() {
            if self.positions.contains(&k) {
                u.push(x.clone());
            } else if !x.is_zero() {
                return None;
            }
        }
        Some(u)
    }

    pub fn contains(&self, alpha: &Scalar, a: &[Scalar]) -> bool {
        let (Some((pa, pv)), Some(u)) = (&self.particular, self.pack(alpha, a)) else {
            return false;
        };
        let p = self.pack(pa, pv).expect("particular solution is packed");
        let dirs: Vec<Vector> =
            self.directions.iter().map(|(x, v)| self.pack(x, v).expect("direction is packed")).collect();
        let diff: Vector = u.iter().zip(&p).map(|(x, y)| x - y).collect();
        Subspace::span(u.len(), &dirs).contains(&diff)
    }

    /// Some solution with `alpha != 0`, if any.
    pub fn with_nonzero_alpha(&self) -> Option<(Scalar, Vector)> {
        let (pa, pv) = self.particular.as_ref()?;
        if !pa.is_zero() {
            return Some((pa.clone(), pv.clone()));
        }
        let (da, dv) = self.directions.iter().find(|(a, _)| !a.is_zero())?;
        Some((da.clone(), pv.iter().zip(dv).map(|(x, y)| x + y).collect()))
    }
}

fn flatten(m: &Matrix) -> Vector {
    m.to_rows().concat()
}

fn solve(g: &LieSuperalgebra, delta: &Derivation, d: &Derivation, x0: Option<&[Scalar]>) -> LiftSolutions {
    let n = g.dim();
    let positions: Vec<usize> = (0..n).filter(|&k| g.parity(k) == d.parity).collect();
    // alpha vec(D) - sum_k A_k vec(ad e_k) = -vec([delta, D])
    let mut cols: Vec<Vector> = vec![flatten(&d.matrix)];
    cols.extend(positions.iter().map(|&k| flatten(&g.ad(&unit_vector(n, k)).neg())));
    let mut rhs = flatten(&delta.supercommutator(d).matrix.neg());
    if let Some(x0) = x0 {
        // D(A) - alpha X0 = delta(X0) / 2
        cols[0].extend(x0.iter().map(|x| -x));
        for (c, &k) in cols[1..].iter_mut().zip(&positions) {
            c.extend(d.matrix.column(k));
        }
        rhs.extend(delta.apply(x0).iter().map(|x| x * &Scalar::frac(1, 2)));
    }
    let m = Matrix::from_columns(rhs.len(), &cols);
    let unpack = |u: &[Scalar]| -> (Scalar, Vector) {
        let mut a = vec![Scalar::zero(); n];
        for (x, &k) in u[1..].iter().zip(&positions) {
            a[k] = x.clone();
        }
        (u[0].clone(), a)
    };
    let particular = m.solve_vec(&rhs).expect("shapes agree").map(|u| unpack(&u));
    let directions = m.kernel().iter().map(|u| unpack(u)).collect();
    LiftSolutions { particular, directions, positions }
}

/// All `(alpha, A)` with `[delta, D] + alpha D = ad(A)`, `A` of the parity of `D`.
pub fn solve_lift_witness(g: &LieSuperalgebra, delta: &Derivation, d: &Derivation) -> LiftSolutions {
    solve(g, delta, d, None)
}

/// As [`solve_lift_witness`], adding `D(A) = alpha X0 + delta(X0) / 2`.
pub fn solve_generalized_lift_witness(
    g: &LieSuperalgebra,
    delta: &Derivation,
    d: &Derivation,
    x0: &[Scalar],
) -> LiftSolutions {
    solve(g, delta, d, Some(x0))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::superalg::{AlgebraBuilder, Parity};

    fn g41() -> LieSuperalgebra {
        AlgebraBuilder::new("g4_1s", &["X0", "X1"], &["Y1", "Y2"])
            .bracket_int("X1", "Y1", &[("Y2", -2)])
            .bracket_int("Y1", "Y1", &[("X0", -2)])
            .build()
            .unwrap()
    }

    fn odd_d(a1: i64, a2: i64) -> Derivation {
        let mut d = Matrix::zeros(4, 4);
        d[(2, 1)] = Scalar::int(a1);
        d[(3, 1)] = Scalar::int(a2);
        d[(0, 2)] = Scalar::int(-a2);
        d[(0, 3)] = Scalar::int(a1);
        Derivation::new(Parity::Odd, d)
    }

    #[test]
    fn zero_d_gives_central_a() {
        let g = g41();
        let delta = Derivation::new(Parity::Even, Matrix::identity(4));
        let sols = solve_lift_witness(&g, &delta, &Derivation::zero(4, Parity::Even));
        assert!(sols.contains(&Scalar::one(), &vec![Scalar::zero(); 4]));
        assert!(sols.contains(&Scalar::int(7), &[Scalar::int(3), Scalar::zero(), Scalar::zero(), Scalar::zero()]));
        assert!(!sols.contains(&Scalar::one(), &[Scalar::zero(), Scalar::one(), Scalar::zero(), Scalar::zero()]));
    }

    #[test]
    fn example_witness() {
        let g = g41();
        for b1 in [1, 2, -1] {
            let delta =
                Derivation::new(Parity::Even, Matrix::diag([2 * b1, -2 * b1, b1, -b1].map(Scalar::int).to_vec()));
            let d = odd_d(-2 * b1, 0);
            let y2 = unit_vector(4, 3);
            let alpha = Scalar::int(-3 * b1);
            assert!(solve_lift_witness(&g, &delta, &d).contains(&alpha, &y2));
            let x0 = unit_vector(4, 0);
            let sols = solve_generalized_lift_witness(&g, &delta, &d, &x0);
            assert!(sols.contains(&alpha, &y2));
            assert!(lift_residual(&g, &delta, &d, &alpha, &y2).is_zero());
        }
    }
}
