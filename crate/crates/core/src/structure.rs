//! Central series, nilpotency, solvability and filiform flags.

use serde::Serialize;

use crate::error::{Error, Result};
use crate::forms::{pairing_vanishes, BilinearForm};
use crate::subspace::Subspace;
use crate::superalg::LieSuperalgebra;

pub fn center(g: &LieSuperalgebra) -> Subspace {
    g.center()
}

fn iterate(start: Subspace, step: impl Fn(&Subspace) -> Subspace) -> Vec<Subspace> {
    let mut out = vec![start];
    loop {
        let next = step(out.last().unwrap());
        if next == *out.last().unwrap() {
            return out;
        }
        out.push(next);
    }
}

/// The three descending sequences, each listed from `C^0` until it
/// stabilizes (the stable term appears once).
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct CentralSeries {
    /// `C^{k+1}(g) = [C^k(g), g]`
    pub full: Vec<Subspace>,
    /// `C^{k+1}(g_0) = [g_0, C^k(g_0)]`
    pub even: Vec<Subspace>,
    /// `C^{k+1}(g_1) = [g_0, C^k(g_1)]`
    pub odd: Vec<Subspace>,
}

impl CentralSeries {
    pub fn dims(series: &[Subspace]) -> Vec<usize> {
        series.iter().map(Subspace::dim).collect()
    }
}

pub fn central_series(g: &LieSuperalgebra) -> CentralSeries {
    let full = Subspace::full(g.dim());
    let g0 = g.even_part();
    CentralSeries {
        full: iterate(full.clone(), |c| g.bracket_subspaces(c, &full)),
        even: iterate(g0.clone(), |c| g.bracket_subspaces(&g0, c)),
        odd: iterate(g.odd_part(), |c| g.bracket_subspaces(&g0, c)),
    }
}

pub fn derived_series(g: &LieSuperalgebra) -> Vec<Subspace> {
    iterate(Subspace::full(g.dim()), |d| g.bracket_subspaces(d, d))
}

pub fn is_nilpotent(g: &LieSuperalgebra) -> bool {
    central_series(g).full.last().unwrap().is_zero()
}

pub fn is_solvable(g: &LieSuperalgebra) -> bool {
    derived_series(g).last().unwrap().is_zero()
}

/// First indices `(p, q)` with `C^p(g_0) = 0` and `C^q(g_1) = 0`.
pub fn super_nilindex(g: &LieSuperalgebra) -> Result<(usize, usize)> {
    if !is_solvable(g) {
        return Err(Error::NotNilpotentAction);
    }
    let s = central_series(g);
    let first_zero = |seq: &[Subspace]| seq.iter().position(Subspace::is_zero).ok_or(Error::NotNilpotentAction);
    Ok((first_zero(&s.even)?, first_zero(&s.odd)?))
}

/// Flag `V_m ⊃ ... ⊃ V_0` of the odd part with `[g_0, V_{i+1}] = V_i`.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct Flag {
    /// `levels[i] = V_i`
    levels: Vec<Subspace>,
}

impl Flag {
    pub fn m(&self) -> usize {
        self.levels.len() - 1
    }

    pub fn level(&self, i: usize) -> &Subspace {
        &self.levels[i]
    }

    /// Dimensions from `V_m` down to `V_0`.
    pub fn dims(&self) -> Vec<usize> {
        self.levels.iter().rev().map(Subspace::dim).collect()
    }

    pub fn v1(&self) -> &Subspace {
        &self.levels[1]
    }

    /// Checks `[g_0, V_{i+1}] = V_i` for every level.
    pub fn is_valid_for(&self, g: &LieSuperalgebra) -> bool {
        let g0 = g.even_part();
        self.levels.windows(2).all(|w| g.bracket_subspaces(&g0, &w[1]) == w[0])
            && self.levels.iter().enumerate().all(|(i, v)| v.dim() == i)
    }
}

/// The central-series flag `V_i = C^{m-i}(g_1)`, present iff every quotient
/// of consecutive terms is one-dimensional and the odd part is nonzero.
pub fn filiform_flag(g: &LieSuperalgebra) -> Option<Flag> {
    let m = g.n_odd();
    if m == 0 {
        return None;
    }
    let odd = central_series(g).odd;
    let dims = CentralSeries::dims(&odd);
    let expected: Vec<usize> = (0..=m).rev().collect();
    (dims == expected).then(|| Flag { levels: odd.into_iter().rev().collect() })
}

#[derive(Clone, PartialEq, Eq, Debug, Serialize)]
pub struct FiliformLemmaReport {
    pub v1_in_center_odd: bool,
    pub v1_orthogonal_to_lower_levels: bool,
    pub omega_isotropic_on_v1: Option<bool>,
    pub v1_is_center_odd: bool,
}

impl FiliformLemmaReport {
    pub fn all(&self) -> bool {
        self.v1_in_center_odd
            && self.v1_orthogonal_to_lower_levels
            && self.omega_isotropic_on_v1.unwrap_or(true)
            && self.v1_is_center_odd
    }
}

pub fn filiform_lemma_checks(
    g: &LieSuperalgebra,
    b: &BilinearForm,
    omega: Option<&BilinearForm>,
) -> Result<FiliformLemmaReport> {
    let flag = filiform_flag(g).ok_or(Error::NotFiliform)?;
    let v1 = flag.v1();
    let z_odd = g.center().intersection(&g.odd_part());
    let m = flag.m();
    Ok(FiliformLemmaReport {
        v1_in_center_odd: z_odd.contains_subspace(v1),
        v1_orthogonal_to_lower_levels: (1..m).all(|i| pairing_vanishes(b, v1, flag.level(i))),
        omega_isotropic_on_v1: omega.map(|w| pairing_vanishes(w, v1, v1)),
        v1_is_center_odd: z_odd == *v1,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::forms::Symmetry;
    use crate::scalar::Scalar;
    use crate::superalg::AlgebraBuilder;

    fn g41() -> LieSuperalgebra {
        AlgebraBuilder::new("g4_1s", &["X0", "X1"], &["Y1", "Y2"])
            .bracket_int("X1", "Y1", &[("Y2", -2)])
            .bracket_int("Y1", "Y1", &[("X0", -2)])
            .build()
            .unwrap()
    }

    fn g42() -> LieSuperalgebra {
        AlgebraBuilder::new("g4_2s", &["X0", "X1"], &["Y1", "Y2"])
            .bracket_int("X1", "Y1", &[("Y1", -1)])
            .bracket_int("X1", "Y2", &[("Y2", 1)])
            .bracket_int("Y1", "Y2", &[("X0", 1)])
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
    fn centers() {
        assert_eq!(center(&g41()), Subspace::coordinate(4, [0, 3]));
        assert_eq!(center(&g42()), Subspace::coordinate(4, [0]));
        let a = LieSuperalgebra::abelian("a", &["A"], &["B"]).unwrap();
        assert_eq!(center(&a), Subspace::full(2));
        for g in [g41(), g42(), g64()] {
            assert!(g.is_graded_ideal(&center(&g)).unwrap());
        }
    }

    #[test]
    fn series_of_g41() {
        let s = central_series(&g41());
        assert_eq!(s.full[1], Subspace::coordinate(4, [0, 3]));
        assert!(s.full[2].is_zero());
        assert_eq!(s.odd[1], Subspace::coordinate(4, [3]));
        assert!(s.odd[2].is_zero());
        assert!(is_nilpotent(&g41()));
        assert_eq!(super_nilindex(&g41()).unwrap(), (1, 2));
    }

    #[test]
    fn g42_is_not_nilpotent() {
        let s = central_series(&g42());
        assert_eq!(s.full[1], Subspace::coordinate(4, [0, 2, 3]));
        assert_eq!(s.full.len(), 2);
        assert!(!is_nilpotent(&g42()));
        assert!(is_solvable(&g42()));
        assert!(matches!(super_nilindex(&g42()), Err(Error::NotNilpotentAction)));
    }

    #[test]
    fn flags() {
        let f = filiform_flag(&g41()).unwrap();
        assert_eq!(f.dims(), vec![2, 1, 0]);
        assert_eq!(f.v1(), &Subspace::coordinate(4, [3]));
        assert!(f.is_valid_for(&g41()));
        assert!(filiform_flag(&g64()).is_none());
        let a = LieSuperalgebra::abelian("a", &["A"], &["B", "C"]).unwrap();
        assert!(filiform_flag(&a).is_none());
        assert!(is_nilpotent(&a));
    }

    #[test]
    fn lemma_checks_g41() {
        let g = g41();
        let b = BilinearForm::from_pairs(
            g.basis(),
            Symmetry::Supersymmetric,
            &[("X0", "X1", Scalar::one()), ("Y2", "Y1", Scalar::one())],
        )
        .unwrap();
        let w = BilinearForm::from_pairs(
            g.basis(),
            Symmetry::SkewSupersymmetric,
            &[("X0", "X1", Scalar::int(2)), ("Y2", "Y1", Scalar::int(-1))],
        )
        .unwrap();
        let r = filiform_lemma_checks(&g, &b, Some(&w)).unwrap();
        assert!(r.all(), "{r:?}");
        assert!(matches!(filiform_lemma_checks(&g64(), &b, None), Err(Error::NotFiliform)));
    }
}
