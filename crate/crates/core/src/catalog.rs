//! Named algebras and parametric families with their invariant forms.

use std::collections::BTreeMap;

use rand::seq::SliceRandom;
use rand::Rng;

use crate::derivations::{omega_from_delta, Derivation};
use crate::error::{Error, Result};
use crate::forms::{BilinearForm, Symmetry};
use crate::io::AlgebraData;
use crate::linalg::Matrix;
use crate::poly::{Assignment, Poly};
use crate::scalar::Scalar;
use crate::superalg::{AlgebraBuilder, LieSuperalgebra, Parity};

pub type Params = BTreeMap<String, Scalar>;

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum ParamKind {
    /// Any field element.
    Scalar,
    /// A small nonnegative integer.
    Count,
}

#[derive(Clone, Copy, Debug)]
pub struct Param {
    pub name: &'static str,
    pub default: i64,
    pub kind: ParamKind,
}

const fn field(name: &'static str, default: i64) -> Param {
    Param { name, default, kind: ParamKind::Scalar }
}

const fn count(name: &'static str, default: i64) -> Param {
    Param { name, default, kind: ParamKind::Count }
}

pub trait CatalogEntry: Send + Sync {
    fn name(&self) -> &'static str;
    fn description(&self) -> &'static str;
    fn params(&self) -> &'static [Param] {
        &[]
    }
    /// `Err(reason)` when the point is outside the family.
    fn admissible(&self, _p: &Params) -> std::result::Result<(), String> {
        Ok(())
    }
    fn build(&self, p: &Params) -> Result<AlgebraData>;
    /// General even skew derivation in the named parameters, when the
    /// entry carries one.
    fn delta_family(&self) -> Option<Matrix<Poly>> {
        None
    }
}

fn s(p: &Params, k: &str) -> Scalar {
    p.get(k).cloned().unwrap_or_else(|| panic!("parameter {k} is filled in before build"))
}

fn nonzero(p: &Params, k: &str) -> std::result::Result<(), String> {
    if s(p, k).is_zero() {
        Err(format!("{k} must be nonzero"))
    } else {
        Ok(())
    }
}

fn form<'a>(g: &LieSuperalgebra, kind: Symmetry, pairs: &[(&'a str, &'a str, Scalar)]) -> Result<BilinearForm> {
    BilinearForm::from_pairs(g.basis(), kind, pairs)
}

fn one(l: &'static str, r: &'static str) -> (&'static str, &'static str, Scalar) {
    (l, r, Scalar::one())
}

fn with_delta(g: LieSuperalgebra, b: BilinearForm, delta: Option<Matrix>) -> Result<AlgebraData> {
    let omega = match delta {
        Some(m) => Some(omega_from_delta(g.basis(), &b, &Derivation::new(Parity::Even, m))?),
        None => None,
    };
    Ok(AlgebraData::with_forms(g, Some(b), omega))
}

fn diag(entries: &[i64]) -> Matrix {
    Matrix::diag(entries.iter().map(|&x| Scalar::int(x)).collect())
}

fn mono(c: i64, name: &str) -> Poly {
    Poly::monomial(Scalar::int(c), name)
}

fn t(terms: &[(&'static str, Scalar)]) -> Vec<(&'static str, Scalar)> {
    terms.to_vec()
}

fn i(n: i64) -> Scalar {
    Scalar::int(n)
}

fn g41() -> Result<LieSuperalgebra> {
    Ok(AlgebraBuilder::new("g4_1s", &["X0", "X1"], &["Y1", "Y2"])
        .bracket_int("X1", "Y1", &[("Y2", -2)])
        .bracket_int("Y1", "Y1", &[("X0", -2)])
        .build()?)
}

fn b41(g: &LieSuperalgebra) -> Result<BilinearForm> {
    form(g, Symmetry::Supersymmetric, &[one("X0", "X1"), one("Y2", "Y1")])
}

/// `delta(X0) = 2b1 X0`, `delta(X1) = -2b1 X1`, `delta(Y1) = b1 Y1 + b2 Y2`, `delta(Y2) = -b1 Y2`.
pub fn g41_delta_family() -> Matrix<Poly> {
    let mut m = Matrix::<Poly>::zeros(4, 4);
    m[(0, 0)] = mono(2, "b1");
    m[(1, 1)] = mono(-2, "b1");
    m[(2, 2)] = mono(1, "b1");
    m[(3, 2)] = mono(1, "b2");
    m[(3, 3)] = mono(-1, "b1");
    m
}

fn g64() -> Result<LieSuperalgebra> {
    Ok(AlgebraBuilder::new("g6_4s", &["X0", "X1"], &["Y1", "Y2", "Y3", "Y4"])
        .bracket_int("X1", "Y1", &[("Y2", -1)])
        .bracket_int("X1", "Y3", &[("Y4", 1)])
        .bracket_int("Y1", "Y3", &[("X0", 1)])
        .build()?)
}

fn b64(g: &LieSuperalgebra) -> Result<BilinearForm> {
    form(g, Symmetry::Supersymmetric, &[one("X0", "X1"), one("Y4", "Y1"), one("Y3", "Y2")])
}

/// Even skew derivations of `g6_4s` in the basis `X0, X1, Y1, Y2, Y3, Y4`.
pub fn g64_delta_family() -> Matrix<Poly> {
    let (b1, c3) = (Poly::var("b1"), Poly::var("c3"));
    let mut m = Matrix::<Poly>::zeros(6, 6);
    m[(0, 0)] = &b1 + &c3;
    m[(1, 1)] = -(&b1 + &c3);
    m[(2, 2)] = b1.clone();
    m[(3, 2)] = Poly::var("b2");
    m[(3, 3)] = -&c3;
    m[(3, 4)] = Poly::var("c2");
    m[(4, 4)] = c3.clone();
    m[(5, 2)] = Poly::var("b4");
    m[(5, 4)] = mono(-1, "b2");
    m[(5, 5)] = -&b1;
    m
}

fn eval_family(m: &Matrix<Poly>, p: &Params) -> Result<Matrix> {
    let at: Assignment = p.clone();
    m.eval(&at)
}

/// `B(X0, Y0) = B(X1, Y1) = B(X2, Y2) = 1` on the six-dimensional solvable algebras.
fn b6_solvable(g: &LieSuperalgebra) -> Result<BilinearForm> {
    form(g, Symmetry::Supersymmetric, &[one("X0", "Y0"), one("X1", "Y1"), one("X2", "Y2")])
}

macro_rules! entry {
    ($ty:ident, $name:literal, $desc:literal) => {
        struct $ty;
        impl $ty {
            const NAME: &'static str = $name;
            const DESC: &'static str = $desc;
        }
    };
}

macro_rules! names {
    () => {
        fn name(&self) -> &'static str {
            Self::NAME
        }
        fn description(&self) -> &'static str {
            Self::DESC
        }
    };
}

entry!(G41, "g4_1s", "4-dim quadratic superalgebra with [X1,Y1] = -2Y2, [Y1,Y1] = -2X0");
impl CatalogEntry for G41 {
    names!();
    fn build(&self, _: &Params) -> Result<AlgebraData> {
        let g = g41()?;
        let b = b41(&g)?;
        Ok(AlgebraData::with_forms(g, Some(b), None))
    }
    fn delta_family(&self) -> Option<Matrix<Poly>> {
        Some(g41_delta_family())
    }
}

entry!(G41Symplectic, "g4_1s_symplectic", "g4_1s with omega = B(delta(b1, b2) ., .), b1 nonzero");
impl CatalogEntry for G41Symplectic {
    names!();
    fn params(&self) -> &'static [Param] {
        const P: &[Param] = &[field("b1", 1), field("b2", 0)];
        P
    }
    fn admissible(&self, p: &Params) -> std::result::Result<(), String> {
        nonzero(p, "b1")
    }
    fn build(&self, p: &Params) -> Result<AlgebraData> {
        let g = g41()?;
        let b = b41(&g)?;
        with_delta(g, b, Some(eval_family(&g41_delta_family(), p)?))
    }
    fn delta_family(&self) -> Option<Matrix<Poly>> {
        Some(g41_delta_family())
    }
}

entry!(G42, "g4_2s", "4-dim quadratic superalgebra with [X1,Y1] = -Y1, [X1,Y2] = Y2, [Y1,Y2] = X0");
impl CatalogEntry for G42 {
    names!();
    fn build(&self, _: &Params) -> Result<AlgebraData> {
        let g = AlgebraBuilder::new("g4_2s", &["X0", "X1"], &["Y1", "Y2"])
            .bracket_int("X1", "Y1", &[("Y1", -1)])
            .bracket_int("X1", "Y2", &[("Y2", 1)])
            .bracket_int("Y1", "Y2", &[("X0", 1)])
            .build()?;
        let b = b41(&g)?;
        Ok(AlgebraData::with_forms(g, Some(b), None))
    }
}

entry!(Diamond, "diamond_g4", "diamond Lie algebra [X,P] = P, [X,Q] = -Q, [P,Q] = Z");
impl CatalogEntry for Diamond {
    names!();
    fn build(&self, _: &Params) -> Result<AlgebraData> {
        let g = AlgebraBuilder::new("diamond_g4", &["X", "P", "Q", "Z"], &[] as &[&str])
            .bracket_int("X", "P", &[("P", 1)])
            .bracket_int("X", "Q", &[("Q", -1)])
            .bracket_int("P", "Q", &[("Z", 1)])
            .build()?;
        let b = form(&g, Symmetry::Supersymmetric, &[one("X", "Z"), one("P", "Q")])?;
        Ok(AlgebraData::with_forms(g, Some(b), None))
    }
}

entry!(G64, "g6_4s", "6-dim quadratic superalgebra with [X1,Y1] = -Y2, [X1,Y3] = Y4, [Y1,Y3] = X0");
impl CatalogEntry for G64 {
    names!();
    fn build(&self, _: &Params) -> Result<AlgebraData> {
        let g = g64()?;
        let b = b64(&g)?;
        Ok(AlgebraData::with_forms(g, Some(b), None))
    }
    fn delta_family(&self) -> Option<Matrix<Poly>> {
        Some(g64_delta_family())
    }
}

entry!(G64Symplectic, "g6_4s_symplectic", "g6_4s with omega = B(delta ., .); b1, c3, b1 + c3 nonzero");
impl CatalogEntry for G64Symplectic {
    names!();
    fn params(&self) -> &'static [Param] {
        const P: &[Param] = &[field("b1", 1), field("b2", 0), field("b4", 0), field("c2", 0), field("c3", 1)];
        P
    }
    fn admissible(&self, p: &Params) -> std::result::Result<(), String> {
        nonzero(p, "b1")?;
        nonzero(p, "c3")?;
        if (s(p, "b1") + s(p, "c3")).is_zero() {
            return Err("b1 + c3 must be nonzero".into());
        }
        Ok(())
    }
    fn build(&self, p: &Params) -> Result<AlgebraData> {
        let g = g64()?;
        let b = b64(&g)?;
        with_delta(g, b, Some(eval_family(&g64_delta_family(), p)?))
    }
    fn delta_family(&self) -> Option<Matrix<Poly>> {
        Some(g64_delta_family())
    }
}

entry!(G65, "g6_5s", "6-dim solvable quadratic superalgebra g6_5s");
impl CatalogEntry for G65 {
    names!();
    fn build(&self, _: &Params) -> Result<AlgebraData> {
        let g = AlgebraBuilder::new("g6_5s", &["X0", "Y0"], &["X1", "X2", "Y1", "Y2"])
            .bracket_int("Y0", "X2", &[("X2", 1)])
            .bracket_int("Y0", "Y1", &[("X1", 1)])
            .bracket_int("Y0", "Y2", &[("Y2", -1)])
            .bracket_int("Y1", "Y1", &[("X0", 1)])
            .bracket_int("X2", "Y2", &[("X0", 1)])
            .build()?;
        let b = b6_solvable(&g)?;
        Ok(AlgebraData::with_forms(g, Some(b), None))
    }
}

entry!(G66, "g6_6s", "6-dim solvable quadratic superalgebra g6_6s(lambda), lambda nonzero");
impl CatalogEntry for G66 {
    names!();
    fn params(&self) -> &'static [Param] {
        const P: &[Param] = &[field("lambda", 1)];
        P
    }
    fn admissible(&self, p: &Params) -> std::result::Result<(), String> {
        nonzero(p, "lambda")
    }
    fn build(&self, p: &Params) -> Result<AlgebraData> {
        let l = s(p, "lambda");
        let g = AlgebraBuilder::new("g6_6s", &["X0", "Y0"], &["X1", "X2", "Y1", "Y2"])
            .bracket_int("Y0", "X1", &[("X1", 1)])
            .bracket("Y0", "X2", t(&[("X2", l.clone())]))
            .bracket_int("Y0", "Y1", &[("Y1", -1)])
            .bracket("Y0", "Y2", t(&[("Y2", -&l)]))
            .bracket_int("X1", "Y1", &[("X0", 1)])
            .bracket("X2", "Y2", t(&[("X0", l)]))
            .build()?;
        let b = b6_solvable(&g)?;
        Ok(AlgebraData::with_forms(g, Some(b), None))
    }
}

entry!(G67, "g6_7s", "6-dim solvable quadratic superalgebra g6_7s, with [Y0,Y2] = -Y2");
impl CatalogEntry for G67 {
    names!();
    fn build(&self, _: &Params) -> Result<AlgebraData> {
        let g = AlgebraBuilder::new("g6_7s", &["X0", "Y0"], &["X1", "X2", "Y1", "Y2"])
            .bracket_int("Y0", "X1", &[("X1", 1)])
            .bracket_int("Y0", "X2", &[("X2", 1), ("X1", 1)])
            .bracket_int("Y0", "Y1", &[("Y1", -1), ("Y2", -1)])
            .bracket_int("Y0", "Y2", &[("Y2", -1)])
            .bracket_int("X1", "Y1", &[("X0", 1)])
            .bracket_int("X2", "Y1", &[("X0", 1)])
            .bracket_int("X2", "Y2", &[("X0", 1)])
            .build()?;
        let b = b6_solvable(&g)?;
        Ok(AlgebraData::with_forms(g, Some(b), None))
    }
}

entry!(Prop33, "prop33_family", "even double extension of g4_1s by b2 E(4,3), b2 nonzero");
impl CatalogEntry for Prop33 {
    names!();
    fn params(&self) -> &'static [Param] {
        const P: &[Param] = &[field("b2", 1)];
        P
    }
    fn admissible(&self, p: &Params) -> std::result::Result<(), String> {
        nonzero(p, "b2")
    }
    fn build(&self, p: &Params) -> Result<AlgebraData> {
        let b2 = s(p, "b2");
        let g = AlgebraBuilder::new("prop33_family", &["X0", "X1", "e", "e*"], &["Y1", "Y2"])
            .bracket("e", "Y1", t(&[("Y2", b2.clone())]))
            .bracket_int("X1", "Y1", &[("Y2", -2)])
            .bracket("Y1", "Y1", t(&[("X0", i(-2)), ("e*", b2)]))
            .build()?;
        let b = form(&g, Symmetry::Supersymmetric, &[one("X0", "X1"), one("e*", "e"), one("Y2", "Y1")])?;
        with_delta(g, b, Some(diag(&[2, -2, -2, 2, 1, -1])))
    }
}

entry!(Prop34, "prop34_family", "even double extension of g6_4s; (b2, b4, c2) not all zero");
impl CatalogEntry for Prop34 {
    names!();
    fn params(&self) -> &'static [Param] {
        const P: &[Param] = &[field("b2", 1), field("b4", 0), field("c2", 0)];
        P
    }
    fn admissible(&self, p: &Params) -> std::result::Result<(), String> {
        if ["b2", "b4", "c2"].iter().all(|k| s(p, k).is_zero()) {
            return Err("(b2, b4, c2) must not all vanish".into());
        }
        Ok(())
    }
    fn build(&self, p: &Params) -> Result<AlgebraData> {
        let (b2, b4, c2) = (s(p, "b2"), s(p, "b4"), s(p, "c2"));
        let g = AlgebraBuilder::new("prop34_family", &["X0", "X1", "e", "e*"], &["Y1", "Y2", "Y3", "Y4"])
            .bracket("e", "Y1", t(&[("Y2", b2.clone()), ("Y4", b4.clone())]))
            .bracket("e", "Y3", t(&[("Y2", c2.clone()), ("Y4", -&b2)]))
            .bracket_int("X1", "Y1", &[("Y2", -1)])
            .bracket_int("X1", "Y3", &[("Y4", 1)])
            .bracket("Y1", "Y3", t(&[("X0", i(1)), ("e*", -&b2)]))
            .bracket("Y1", "Y1", t(&[("e*", b4)]))
            .bracket("Y3", "Y3", t(&[("e*", -c2)]))
            .build()?;
        let b =
            form(&g, Symmetry::Supersymmetric, &[one("X0", "X1"), one("e*", "e"), one("Y4", "Y1"), one("Y3", "Y2")])?;
        with_delta(g, b, Some(diag(&[2, -2, -2, 2, 1, -1, 1, -1])))
    }
}

/// Generalized double extension of `g4_1s` by `D(a1, a2)` and `X0`.
fn gde41(a1: &Scalar, a2: &Scalar, name: &str) -> Result<LieSuperalgebra> {
    Ok(AlgebraBuilder::new(name, &["X0", "X1"], &["Y1", "Y2", "e", "e*"])
        .bracket_int("e", "e", &[("X0", 1)])
        .bracket("X1", "e", t(&[("Y1", -a1), ("Y2", -a2), ("e*", i(1))]))
        .bracket("Y1", "e", t(&[("X0", -a2)]))
        .bracket("Y2", "e", t(&[("X0", a1.clone())]))
        .bracket("X1", "Y1", t(&[("Y2", i(-2)), ("e*", -a2)]))
        .bracket("X1", "Y2", t(&[("e*", a1.clone())]))
        .bracket_int("Y1", "Y1", &[("X0", -2)])
        .build()?)
}

fn b_gde41(g: &LieSuperalgebra) -> Result<BilinearForm> {
    form(g, Symmetry::Supersymmetric, &[one("X0", "X1"), one("Y2", "Y1"), one("e*", "e")])
}

entry!(Gde41, "gde41_family", "generalized double extension of g4_1s; symplectic with scale c when a1 = 0");
impl CatalogEntry for Gde41 {
    names!();
    fn params(&self) -> &'static [Param] {
        const P: &[Param] = &[field("a1", 0), field("a2", 0), field("c", 1)];
        P
    }
    fn admissible(&self, p: &Params) -> std::result::Result<(), String> {
        nonzero(p, "c")
    }
    fn build(&self, p: &Params) -> Result<AlgebraData> {
        let (a1, c) = (s(p, "a1"), s(p, "c"));
        let g = gde41(&a1, &s(p, "a2"), "gde41_family")?;
        let b = b_gde41(&g)?;
        let delta = a1.is_zero().then(|| diag(&[2, -2, 1, -1, 1, -1]).scale(&c));
        with_delta(g, b, delta)
    }
}

entry!(Sec5, "sec5_example", "generalized symplectic double extension of g4_1s with D(a1 = -2b1), b1 nonzero");
impl CatalogEntry for Sec5 {
    names!();
    fn params(&self) -> &'static [Param] {
        const P: &[Param] = &[field("b1", 1), field("mu", 0)];
        P
    }
    fn admissible(&self, p: &Params) -> std::result::Result<(), String> {
        nonzero(p, "b1")
    }
    fn build(&self, p: &Params) -> Result<AlgebraData> {
        let (b1, mu) = (s(p, "b1"), s(p, "mu"));
        let a1 = &b1 * &i(-2);
        let g = gde41(&a1, &Scalar::zero(), "sec5_example")?;
        let b = b_gde41(&g)?;
        // basis X0, X1, Y1, Y2, e, e*
        let mut d = Matrix::zeros(6, 6);
        d[(0, 0)] = &b1 * &i(2);
        d[(1, 1)] = &b1 * &i(-2);
        d[(2, 2)] = b1.clone();
        d[(5, 2)] = i(1);
        d[(3, 3)] = -&b1;
        d[(4, 4)] = &b1 * &i(3);
        d[(3, 4)] = i(1);
        d[(5, 4)] = mu;
        d[(5, 5)] = &b1 * &i(-3);
        with_delta(g, b, Some(d))
    }
}

entry!(Abelian, "abelian", "abelian K^(n0|n1) with hyperbolic B; symplectic when n0 is even");
impl CatalogEntry for Abelian {
    names!();
    fn params(&self) -> &'static [Param] {
        const P: &[Param] = &[count("n0", 2), count("n1", 0)];
        P
    }
    fn admissible(&self, p: &Params) -> std::result::Result<(), String> {
        let as_count = |k: &str| -> std::result::Result<i64, String> {
            let v = s(p, k);
            let n = v.to_canonical_string().parse::<i64>().map_err(|_| format!("{k} must be an integer"))?;
            if !(0..=8).contains(&n) {
                return Err(format!("{k} must lie in 0..=8"));
            }
            Ok(n)
        };
        let (n0, n1) = (as_count("n0")?, as_count("n1")?);
        if n1 % 2 != 0 {
            return Err("n1 must be even".into());
        }
        if n0 + n1 == 0 {
            return Err("dimension must be positive".into());
        }
        Ok(())
    }
    fn build(&self, p: &Params) -> Result<AlgebraData> {
        let n = |k: &str| s(p, k).to_canonical_string().parse::<usize>().expect("admissible counts");
        let (n0, n1) = (n("n0"), n("n1"));
        let even: Vec<String> = (0..n0).map(|k| format!("X{k}")).collect();
        let odd: Vec<String> = (1..=n1).map(|k| format!("Y{k}")).collect();
        let g = LieSuperalgebra::abelian(&format!("abelian_{n0}_{n1}"), &even, &odd)?;
        let mut pairs: Vec<(&str, &str, Scalar)> = Vec::new();
        for k in 0..n0.div_ceil(2) {
            pairs.push((&even[k], &even[n0 - 1 - k], Scalar::one()));
        }
        for k in 0..n1 / 2 {
            pairs.push((&odd[n1 - 1 - k], &odd[k], Scalar::one()));
        }
        let b = form(&g, Symmetry::Supersymmetric, &pairs)?;
        let delta = (n0 % 2 == 0).then(|| {
            let half = |len: usize| (0..len).map(move |k| if k < len / 2 { 1 } else { -1 });
            let entries: Vec<i64> = half(n0).chain(half(n1)).collect();
            diag(&entries)
        });
        with_delta(g, b, delta)
    }
}

/// The catalog, in listing order.
pub struct Catalog {
    entries: Vec<Box<dyn CatalogEntry>>,
}

impl Catalog {
    pub fn standard() -> Self {
        let entries: Vec<Box<dyn CatalogEntry>> = vec![
            Box::new(G41),
            Box::new(G41Symplectic),
            Box::new(G42),
            Box::new(Diamond),
            Box::new(G64),
            Box::new(G64Symplectic),
            Box::new(G65),
            Box::new(G66),
            Box::new(G67),
            Box::new(Prop33),
            Box::new(Prop34),
            Box::new(Gde41),
            Box::new(Sec5),
            Box::new(Abelian),
        ];
        Catalog { entries }
    }

    pub fn entries(&self) -> impl Iterator<Item = &dyn CatalogEntry> {
        self.entries.iter().map(|e| e.as_ref())
    }

    pub fn get(&self, name: &str) -> Result<&dyn CatalogEntry> {
        self.entries().find(|e| e.name() == name).ok_or_else(|| Error::UnknownEntry(name.into()))
    }

    /// Defaults overridden by `overrides`, checked for admissibility.
    pub fn resolve_params(&self, name: &str, overrides: &Params) -> Result<Params> {
        let entry = self.get(name)?;
        let mut p: Params = entry.params().iter().map(|q| (q.name.to_string(), Scalar::int(q.default))).collect();
        for (k, v) in overrides {
            if !p.contains_key(k) {
                return Err(Error::Inadmissible { entry: name.into(), reason: format!("unknown parameter {k}") });
            }
            p.insert(k.clone(), v.clone());
        }
        entry.admissible(&p).map_err(|reason| Error::Inadmissible { entry: name.into(), reason })?;
        Ok(p)
    }

    pub fn build(&self, name: &str, overrides: &Params) -> Result<AlgebraData> {
        let p = self.resolve_params(name, overrides)?;
        self.get(name)?.build(&p)
    }
}

impl Default for Catalog {
    fn default() -> Self {
        Self::standard()
    }
}

fn sample_pool() -> Vec<Scalar> {
    let half_sqrt2 = &Scalar::sqrt2() * &Scalar::frac(1, 2);
    vec![
        Scalar::int(-2),
        Scalar::int(-1),
        Scalar::zero(),
        Scalar::one(),
        Scalar::int(2),
        Scalar::int(3),
        Scalar::frac(1, 2),
        Scalar::frac(-3, 2),
        Scalar::sqrt2(),
        &Scalar::one() + &Scalar::sqrt2(),
        half_sqrt2,
    ]
}

/// A random admissible parameter point of `entry`.
pub fn random_point<R: Rng>(entry: &dyn CatalogEntry, rng: &mut R) -> Params {
    let pool = sample_pool();
    let counts: Vec<Scalar> = (0..=4).map(Scalar::int).collect();
    for _ in 0..1000 {
        let p: Params = entry
            .params()
            .iter()
            .map(|q| {
                let from = if q.kind == ParamKind::Count { &counts } else { &pool };
                (q.name.to_string(), from.choose(rng).expect("pool is not empty").clone())
            })
            .collect();
        if entry.admissible(&p).is_ok() {
            return p;
        }
    }
    panic!("no admissible point found for {}", entry.name())
}

/// Columns `X0, X1, Y1 - Y3, (Y2 + Y4)/2, (Y1 + Y3)/√2, (Y4 - Y2)/√2` in the
/// basis of `g6_4s`, with the labels that turn it into `gde41_family(0, 0)`.
pub fn g64_to_gde41() -> (Matrix, [&'static str; 6]) {
    let r = &Scalar::sqrt2() * &Scalar::frac(1, 2);
    let h = Scalar::frac(1, 2);
    let z = Scalar::zero;
    let cols = vec![
        vec![i(1), z(), z(), z(), z(), z()],
        vec![z(), i(1), z(), z(), z(), z()],
        vec![z(), z(), i(1), z(), i(-1), z()],
        vec![z(), z(), z(), h.clone(), z(), h],
        vec![z(), z(), r.clone(), z(), r.clone(), z()],
        vec![z(), z(), z(), -&r, z(), r],
    ];
    (Matrix::from_columns(6, &cols), ["X0", "X1", "Y1", "Y2", "e", "e*"])
}

/// `X0 = b, X1 = a, Y1 = beta, Y2 = alpha`: `g4_2s` in the Jordan-Wigner form
/// `[a, alpha] = alpha`, `[a, beta] = -beta`, `[alpha, beta] = b`.
pub fn g42_backhouse() -> Result<LieSuperalgebra> {
    Ok(AlgebraBuilder::new("C2_-1+A", &["b", "a"], &["beta", "alpha"])
        .bracket_int("a", "alpha", &[("alpha", 1)])
        .bracket_int("a", "beta", &[("beta", -1)])
        .bracket_int("beta", "alpha", &[("b", 1)])
        .build()?)
}

/// `a = X1, b = -2X0, alpha = -2Y2, beta = Y1` sends `[a, beta] = alpha`,
/// `[beta, beta] = b` to `g4_1s`. Columns are `b, a, beta, alpha`.
pub fn g41_backhouse() -> Result<(LieSuperalgebra, Matrix)> {
    let g = AlgebraBuilder::new("C3+A", &["b", "a"], &["beta", "alpha"])
        .bracket_int("a", "beta", &[("alpha", 1)])
        .bracket_int("beta", "beta", &[("b", 1)])
        .build()?;
    let t = Matrix::from_ints(&[&[-2, 0, 0, 0], &[0, 1, 0, 0], &[0, 0, 1, 0], &[0, 0, 0, -2]]);
    Ok((g, t))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::forms::{check_quadratic, check_symplectic};
    use rand::SeedableRng;
    use rand_chacha::ChaCha8Rng;

    #[test]
    fn every_entry_is_quadratic_at_random_points() {
        let cat = Catalog::standard();
        let mut rng = ChaCha8Rng::seed_from_u64(0);
        for e in cat.entries() {
            for _ in 0..3 {
                let p = random_point(e, &mut rng);
                let data = e.build(&p).unwrap_or_else(|err| panic!("{}: {err}", e.name()));
                assert!(check_quadratic(&data.algebra, data.form_b.as_ref().unwrap()).all(), "{} {p:?}", e.name());
                if let Some(w) = &data.omega {
                    let r = check_symplectic(&data.algebra, w);
                    assert!(r.all(), "{} {p:?}: {r:?}", e.name());
                }
            }
        }
    }

    #[test]
    fn inadmissible_and_unknown() {
        let cat = Catalog::standard();
        let zero: Params =
            [("b2", 0), ("b4", 0), ("c2", 0)].iter().map(|(k, v)| (k.to_string(), Scalar::int(*v))).collect();
        assert!(matches!(cat.build("prop34_family", &zero), Err(Error::Inadmissible { .. })));
        assert!(matches!(cat.build("nope", &Params::new()), Err(Error::UnknownEntry(_))));
        let stray: Params = [("zz".to_string(), Scalar::one())].into();
        assert!(matches!(cat.build("g4_1s", &stray), Err(Error::Inadmissible { .. })));
    }

    #[test]
    fn g66_lambda_two() {
        let p: Params = [("lambda".to_string(), Scalar::int(2))].into();
        let g = Catalog::standard().build("g6_6s", &p).unwrap().algebra;
        assert_eq!(g.bracket_labels("Y0", "X2").unwrap(), g.vector(&[("X2", Scalar::int(2))]).unwrap());
        assert_eq!(g.bracket_labels("X2", "Y2").unwrap(), g.vector(&[("X0", Scalar::int(2))]).unwrap());
    }

    #[test]
    fn g64_maps_to_gde41_at_origin() {
        let cat = Catalog::standard();
        let g64 = cat.build("g6_4s", &Params::new()).unwrap();
        let (t, labels) = g64_to_gde41();
        let mapped = g64.algebra.change_of_basis_labelled(&t, &labels).unwrap();
        let target = cat.build("gde41_family", &Params::new()).unwrap();
        assert_eq!(mapped.table(), target.algebra.table());
        assert_eq!(g64.form_b.unwrap().transform(&t), target.form_b.unwrap());
    }

    #[test]
    fn lift_example_with_opposite_y1_sign_is_not_quadratic() {
        // [e, X1] = 2 Y1 - e* with every other bracket of the b1 = 1 member
        let built = AlgebraBuilder::new("variant", &["X0", "X1"], &["Y1", "Y2", "e", "e*"])
            .bracket_int("e", "e", &[("X0", 1)])
            .bracket_int("X1", "e", &[("Y1", -2), ("e*", 1)])
            .bracket_int("Y2", "e", &[("X0", -2)])
            .bracket_int("X1", "Y1", &[("Y2", -2)])
            .bracket_int("X1", "Y2", &[("e*", -2)])
            .bracket_int("Y1", "Y1", &[("X0", -2)])
            .build();
        let ok = built.is_ok_and(|g| check_quadratic(&g, &b_gde41(&g).unwrap()).all());
        assert!(!ok);
    }

    #[test]
    fn backhouse_maps() {
        let g42 = Catalog::standard().build("g4_2s", &Params::new()).unwrap().algebra;
        assert_eq!(g42_backhouse().unwrap().table(), g42.table());
        let (c3, t) = g41_backhouse().unwrap();
        let g41 = Catalog::standard().build("g4_1s", &Params::new()).unwrap().algebra;
        assert_eq!(g41.change_of_basis(&t).unwrap().table(), c3.table());
    }
}
