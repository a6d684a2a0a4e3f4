//! Sparse multivariate polynomials with [`Scalar`] coefficients.

use std::collections::BTreeMap;
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use num_traits::Signed;

use crate::error::{Error, Result};
use crate::scalar::Scalar;

/// Polynomial over named parameters. Exponent vectors are indexed by the
/// sorted `vars` list; variables that no term uses are pruned, so derived
/// equality is mathematical equality.
#[derive(Clone, PartialEq, Eq, Hash, Default)]
pub struct Poly {
    vars: Vec<String>,
    terms: BTreeMap<Vec<u32>, Scalar>,
}

pub type Assignment = BTreeMap<String, Scalar>;

impl Poly {
    pub fn zero() -> Self {
        Poly::default()
    }

    pub fn one() -> Self {
        Poly::constant(Scalar::one())
    }

    pub fn constant(c: Scalar) -> Self {
        let mut terms = BTreeMap::new();
        if !c.is_zero() {
            terms.insert(Vec::new(), c);
        }
        Poly { vars: Vec::new(), terms }
    }

    pub fn var(name: &str) -> Self {
        let mut terms = BTreeMap::new();
        terms.insert(vec![1], Scalar::one());
        Poly { vars: vec![name.to_string()], terms }
    }

    /// `c * name`.
    pub fn monomial(c: Scalar, name: &str) -> Self {
        Poly::var(name).scale(&c)
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    /// Variables that actually occur.
    pub fn vars(&self) -> &[String] {
        &self.vars
    }

    pub fn num_terms(&self) -> usize {
        self.terms.len()
    }

    pub fn as_constant(&self) -> Option<Scalar> {
        match self.terms.len() {
            0 => Some(Scalar::zero()),
            1 => self.terms.get(&vec![0; self.vars.len()]).cloned(),
            _ => None,
        }
    }

    pub fn total_degree(&self) -> u32 {
        self.terms.keys().map(|e| e.iter().sum()).max().unwrap_or(0)
    }

    pub fn scale(&self, c: &Scalar) -> Poly {
        if c.is_zero() {
            return Poly::zero();
        }
        Poly { vars: self.vars.clone(), terms: self.terms.iter().map(|(e, v)| (e.clone(), v * c)).collect() }
    }

    /// Coefficient of the monomial with the given exponents, keyed by name.
    pub fn coefficient(&self, exps: &[(&str, u32)]) -> Scalar {
        let mut key = vec![0u32; self.vars.len()];
        for (name, e) in exps {
            match self.vars.iter().position(|v| v == name) {
                Some(i) => key[i] = *e,
                None if *e == 0 => {}
                None => return Scalar::zero(),
            }
        }
        self.terms.get(&key).cloned().unwrap_or_default()
    }

    pub fn eval(&self, at: &Assignment) -> Result<Scalar> {
        let mut values = Vec::with_capacity(self.vars.len());
        for v in &self.vars {
            values.push(at.get(v).ok_or_else(|| Error::MissingParameter(v.clone()))?);
        }
        let mut acc = Scalar::zero();
        for (exps, c) in &self.terms {
            let mut term = c.clone();
            for (x, &e) in values.iter().zip(exps) {
                if e > 0 {
                    term = &term * &x.pow(e);
                }
            }
            acc += term;
        }
        Ok(acc)
    }

    /// Substitutes the given parameters, leaving the rest symbolic.
    pub fn substitute(&self, at: &Assignment) -> Poly {
        let mut out = Poly::zero();
        for (exps, c) in &self.terms {
            let mut term = Poly::constant(c.clone());
            for (name, &e) in self.vars.iter().zip(exps) {
                if e == 0 {
                    continue;
                }
                let factor = match at.get(name) {
                    Some(x) => Poly::constant(x.pow(e)),
                    None => Poly::var(name).pow(e),
                };
                term = &term * &factor;
            }
            out = &out + &term;
        }
        out
    }

    pub fn pow(&self, mut e: u32) -> Poly {
        let mut base = self.clone();
        let mut acc = Poly::one();
        while e > 0 {
            if e & 1 == 1 {
                acc = &acc * &base;
            }
            base = &base * &base;
            e >>= 1;
        }
        acc
    }

    /// Exact quotient `self / divisor`, or `None` when the division leaves a
    /// remainder.
    pub fn div_exact(&self, divisor: &Poly) -> Option<Poly> {
        if divisor.is_zero() {
            return None;
        }
        let vars = union_vars(&self.vars, &divisor.vars);
        let d = divisor.realigned(&vars);
        let (lead_exp, lead_coef) = d.terms.iter().next_back().map(|(e, c)| (e.clone(), c.clone()))?;
        let mut rem = self.realigned(&vars);
        let mut quot = BTreeMap::new();
        while let Some((exp, coef)) = rem.terms.iter().next_back().map(|(e, c)| (e.clone(), c.clone())) {
            if exp.iter().zip(&lead_exp).any(|(a, b)| a < b) {
                return None;
            }
            let q_exp: Vec<u32> = exp.iter().zip(&lead_exp).map(|(a, b)| a - b).collect();
            let q_coef = &coef / &lead_coef;
            let step = Poly { vars: vars.clone(), terms: BTreeMap::from([(q_exp.clone(), q_coef.clone())]) };
            rem = rem.sub_aligned(&step.mul_aligned(&d));
            quot.insert(q_exp, q_coef);
        }
        Some(Poly { vars, terms: quot }.pruned())
    }

    fn realigned(&self, vars: &[String]) -> Poly {
        let map: Vec<usize> = self.vars.iter().map(|v| vars.iter().position(|w| w == v).unwrap()).collect();
        let terms = self
            .terms
            .iter()
            .map(|(e, c)| {
                let mut key = vec![0u32; vars.len()];
                for (i, &x) in e.iter().enumerate() {
                    key[map[i]] = x;
                }
                (key, c.clone())
            })
            .collect();
        Poly { vars: vars.to_vec(), terms }
    }

    fn pruned(mut self) -> Poly {
        let used: Vec<bool> = (0..self.vars.len()).map(|i| self.terms.keys().any(|e| e[i] > 0)).collect();
        if used.iter().all(|&u| u) {
            return self;
        }
        let vars = self.vars.iter().zip(&used).filter(|(_, &u)| u).map(|(v, _)| v.clone()).collect();
        let terms = std::mem::take(&mut self.terms)
            .into_iter()
            .map(|(e, c)| (e.into_iter().zip(&used).filter(|(_, &u)| u).map(|(x, _)| x).collect(), c))
            .collect();
        Poly { vars, terms }
    }

    fn sub_aligned(&self, other: &Poly) -> Poly {
        let mut terms = self.terms.clone();
        for (e, c) in &other.terms {
            accumulate(&mut terms, e.clone(), -c);
        }
        Poly { vars: self.vars.clone(), terms }
    }

    fn mul_aligned(&self, other: &Poly) -> Poly {
        let mut terms = BTreeMap::new();
        for (ea, ca) in &self.terms {
            for (eb, cb) in &other.terms {
                let e: Vec<u32> = ea.iter().zip(eb).map(|(a, b)| a + b).collect();
                accumulate(&mut terms, e, ca * cb);
            }
        }
        Poly { vars: self.vars.clone(), terms }
    }

    fn combine(&self, other: &Poly, f: impl Fn(&Poly, &Poly) -> Poly) -> Poly {
        if self.vars == other.vars {
            return f(self, other).pruned();
        }
        let vars = union_vars(&self.vars, &other.vars);
        f(&self.realigned(&vars), &other.realigned(&vars)).pruned()
    }
}

fn accumulate(terms: &mut BTreeMap<Vec<u32>, Scalar>, e: Vec<u32>, c: Scalar) {
    use std::collections::btree_map::Entry;
    match terms.entry(e) {
        Entry::Vacant(slot) => {
            if !c.is_zero() {
                slot.insert(c);
            }
        }
        Entry::Occupied(mut slot) => {
            *slot.get_mut() += c;
            if slot.get().is_zero() {
                slot.remove();
            }
        }
    }
}

fn union_vars(a: &[String], b: &[String]) -> Vec<String> {
    let mut out: Vec<String> = a.iter().chain(b).cloned().collect();
    out.sort();
    out.dedup();
    out
}

impl From<Scalar> for Poly {
    fn from(c: Scalar) -> Self {
        Poly::constant(c)
    }
}

impl<'a> Add<&'a Poly> for &'a Poly {
    type Output = Poly;
    fn add(self, rhs: &Poly) -> Poly {
        self.combine(rhs, |a, b| {
            let mut terms = a.terms.clone();
            for (e, c) in &b.terms {
                accumulate(&mut terms, e.clone(), c.clone());
            }
            Poly { vars: a.vars.clone(), terms }
        })
    }
}

impl<'a> Sub<&'a Poly> for &'a Poly {
    type Output = Poly;
    fn sub(self, rhs: &Poly) -> Poly {
        self.combine(rhs, |a, b| a.sub_aligned(b))
    }
}

impl<'a> Mul<&'a Poly> for &'a Poly {
    type Output = Poly;
    fn mul(self, rhs: &Poly) -> Poly {
        if self.is_zero() || rhs.is_zero() {
            return Poly::zero();
        }
        self.combine(rhs, |a, b| a.mul_aligned(b))
    }
}

impl Neg for &Poly {
    type Output = Poly;
    fn neg(self) -> Poly {
        self.scale(&-Scalar::one())
    }
}

impl Add for Poly {
    type Output = Poly;
    fn add(self, rhs: Poly) -> Poly {
        &self + &rhs
    }
}

impl Sub for Poly {
    type Output = Poly;
    fn sub(self, rhs: Poly) -> Poly {
        &self - &rhs
    }
}

impl Mul for Poly {
    type Output = Poly;
    fn mul(self, rhs: Poly) -> Poly {
        &self * &rhs
    }
}

impl Neg for Poly {
    type Output = Poly;
    fn neg(self) -> Poly {
        -&self
    }
}

impl fmt::Display for Poly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return f.write_str("0");
        }
        for (k, (exps, c)) in self.terms.iter().rev().enumerate() {
            let monomial: Vec<String> = self
                .vars
                .iter()
                .zip(exps)
                .filter(|(_, &e)| e > 0)
                .map(|(v, &e)| if e == 1 { v.clone() } else { format!("{v}^{e}") })
                .collect();
            let negative = c.is_rational() && c.rat_part().is_negative();
            let magnitude = if negative { -c } else { c.clone() };
            let coef = if magnitude.is_rational() { magnitude.to_string() } else { format!("({magnitude})") };
            match (k, negative) {
                (0, true) => f.write_str("-")?,
                (0, false) => {}
                (_, true) => f.write_str(" - ")?,
                (_, false) => f.write_str(" + ")?,
            }
            if monomial.is_empty() {
                f.write_str(&coef)?;
            } else if magnitude.is_one() {
                f.write_str(&monomial.join("*"))?;
            } else {
                write!(f, "{coef}*{}", monomial.join("*"))?;
            }
        }
        Ok(())
    }
}

impl fmt::Debug for Poly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Poly({self})")
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    fn at(pairs: &[(&str, i64)]) -> Assignment {
        pairs.iter().map(|(k, v)| (k.to_string(), Scalar::int(*v))).collect()
    }

    #[test]
    fn eval_examples() {
        let p = &Poly::var("b1") + &Poly::var("c3");
        assert_eq!(p.eval(&at(&[("b1", 1), ("c3", -1)])).unwrap(), Scalar::zero());
        let q = &Poly::var("b1") * &Poly::var("c3").pow(2);
        assert_eq!(q.eval(&at(&[("b1", 2), ("c3", 3)])).unwrap(), Scalar::int(18));
        assert!(matches!(q.eval(&at(&[("b1", 2)])), Err(Error::MissingParameter(v)) if v == "c3"));
    }

    #[test]
    fn cancellation_prunes_variables() {
        let p = &Poly::var("x") - &Poly::var("x");
        assert!(p.is_zero());
        assert_eq!(p, Poly::zero());
        let q = &(&Poly::var("x") + &Poly::var("y")) - &Poly::var("y");
        assert_eq!(q, Poly::var("x"));
    }

    #[test]
    fn exact_division() {
        let x = Poly::var("x");
        let y = Poly::var("y");
        let f = &(&x + &y) * &(&x - &y);
        assert_eq!(f.div_exact(&(&x + &y)).unwrap(), &x - &y);
        assert!(f.div_exact(&(&x + &Poly::one())).is_none());
        assert_eq!(f.div_exact(&f).unwrap(), Poly::one());
    }

    #[test]
    fn display_is_readable() {
        let p =
            &(&Poly::var("b1").pow(2).scale(&Scalar::int(2)) - &Poly::var("b2")) + &Poly::constant(Scalar::frac(1, 2));
        assert_eq!(p.to_string(), "2*b1^2 - b2 + 1/2");
    }

    fn arb_poly() -> impl Strategy<Value = Poly> {
        prop::collection::vec((-4i64..5, 0u32..3, 0u32..3), 0..4).prop_map(|terms| {
            terms.into_iter().fold(Poly::zero(), |acc, (c, ex, ey)| {
                let t = (&Poly::var("x").pow(ex) * &Poly::var("y").pow(ey)).scale(&Scalar::int(c));
                &acc + &t
            })
        })
    }

    proptest! {
        #![proptest_config(ProptestConfig::with_cases(100))]
        #[test]
        fn eval_is_ring_homomorphism(p in arb_poly(), q in arb_poly(), x in -5i64..6, y in -5i64..6) {
            let point = at(&[("x", x), ("y", y)]);
            let (pv, qv) = (p.eval(&point).unwrap(), q.eval(&point).unwrap());
            prop_assert_eq!((&p * &q).eval(&point).unwrap(), &pv * &qv);
            prop_assert_eq!((&p + &q).eval(&point).unwrap(), &pv + &qv);
            prop_assert_eq!((&p - &q).eval(&point).unwrap(), &pv - &qv);
        }

        #[test]
        fn product_degree_adds(p in arb_poly(), q in arb_poly()) {
            prop_assume!(!p.is_zero() && !q.is_zero());
            prop_assert_eq!((&p * &q).total_degree(), p.total_degree() + q.total_degree());
            prop_assert_eq!((&p * &q).div_exact(&q).unwrap(), p);
        }
    }
}
