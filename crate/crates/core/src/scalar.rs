//! Exact arithmetic in the real quadratic field Q(√2).
//!
//! A [`Scalar`] is `a + b√2` with `a`, `b` arbitrary-precision rationals kept
//! in lowest terms, so structural equality is numerical equality.

use std::cmp::Ordering;
use std::fmt;
use std::iter::Sum;
use std::ops::{Add, AddAssign, Div, Mul, MulAssign, Neg, Sub, SubAssign};
use std::str::FromStr;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};
use serde::{Deserialize, Deserializer, Serialize, Serializer};

use crate::error::ScalarParseError;

#[derive(Clone, PartialEq, Eq, Hash, Default)]
pub struct Scalar {
    rat: BigRational,
    sqrt2: BigRational,
}

impl Scalar {
    pub fn zero() -> Self {
        Scalar::default()
    }

    pub fn one() -> Self {
        Scalar::int(1)
    }

    pub fn is_zero(&self) -> bool {
        self.rat.is_zero() && self.sqrt2.is_zero()
    }

    pub fn is_one(&self) -> bool {
        self.sqrt2.is_zero() && self.rat.is_one()
    }

    pub fn new(rat: BigRational, sqrt2: BigRational) -> Self {
        Scalar { rat, sqrt2 }
    }

    pub fn from_rational(rat: BigRational) -> Self {
        Scalar { rat, sqrt2: BigRational::zero() }
    }

    pub fn int(n: i64) -> Self {
        Self::from_rational(BigRational::from_integer(BigInt::from(n)))
    }

    /// `num/den`; panics on a zero denominator.
    pub fn frac(num: i64, den: i64) -> Self {
        assert!(den != 0, "zero denominator");
        Self::from_rational(BigRational::new(BigInt::from(num), BigInt::from(den)))
    }

    pub fn sqrt2() -> Self {
        Scalar { rat: BigRational::zero(), sqrt2: BigRational::one() }
    }

    pub fn rat_part(&self) -> &BigRational {
        &self.rat
    }

    pub fn sqrt2_part(&self) -> &BigRational {
        &self.sqrt2
    }

    pub fn is_rational(&self) -> bool {
        self.sqrt2.is_zero()
    }

    /// Galois conjugate `a - b√2`.
    pub fn conjugate(&self) -> Self {
        Scalar { rat: self.rat.clone(), sqrt2: -self.sqrt2.clone() }
    }

    /// Field norm `a² - 2b²`; zero only for zero.
    pub fn norm(&self) -> BigRational {
        let two = BigRational::from_integer(BigInt::from(2));
        &self.rat * &self.rat - two * &self.sqrt2 * &self.sqrt2
    }

    pub fn inv(&self) -> Option<Self> {
        if self.is_zero() {
            return None;
        }
        if self.is_rational() {
            return Some(Self::from_rational(self.rat.recip()));
        }
        let n = self.norm();
        Some(Scalar { rat: &self.rat / &n, sqrt2: -(&self.sqrt2 / &n) })
    }

    pub fn pow(&self, mut e: u32) -> Self {
        let mut base = self.clone();
        let mut acc = Scalar::one();
        while e > 0 {
            if e & 1 == 1 {
                acc = &acc * &base;
            }
            base = &base * &base;
            e >>= 1;
        }
        acc
    }

    /// Sign as a real number.
    pub fn signum(&self) -> Ordering {
        let sa = sign_of(&self.rat);
        let sb = sign_of(&self.sqrt2);
        match (sa, sb) {
            (Ordering::Equal, s) | (s, Ordering::Equal) => s,
            (a, b) if a == b => a,
            (a, _) => {
                // a and b√2 have opposite signs: compare a² with 2b².
                let two = BigRational::from_integer(BigInt::from(2));
                let lhs = &self.rat * &self.rat;
                let rhs = two * &self.sqrt2 * &self.sqrt2;
                match lhs.cmp(&rhs) {
                    Ordering::Greater => a,
                    Ordering::Less => a.reverse(),
                    Ordering::Equal => Ordering::Equal,
                }
            }
        }
    }

    /// Canonical JSON-safe text, `a` or `a+(b)(s2)`.
    pub fn to_canonical_string(&self) -> String {
        if self.sqrt2.is_zero() {
            fmt_rat(&self.rat)
        } else {
            format!("{}+({})(s2)", fmt_rat(&self.rat), fmt_rat(&self.sqrt2))
        }
    }
}

fn sign_of(r: &BigRational) -> Ordering {
    if r.is_zero() {
        Ordering::Equal
    } else if r.is_positive() {
        Ordering::Greater
    } else {
        Ordering::Less
    }
}

fn fmt_rat(r: &BigRational) -> String {
    if r.denom().is_one() {
        r.numer().to_string()
    } else {
        format!("{}/{}", r.numer(), r.denom())
    }
}

impl PartialOrd for Scalar {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl Ord for Scalar {
    fn cmp(&self, other: &Self) -> Ordering {
        (self - other).signum()
    }
}

impl Zero for Scalar {
    fn zero() -> Self {
        Scalar::zero()
    }
    fn is_zero(&self) -> bool {
        Scalar::is_zero(self)
    }
}

impl One for Scalar {
    fn one() -> Self {
        Scalar::one()
    }
}

impl From<i64> for Scalar {
    fn from(n: i64) -> Self {
        Scalar::int(n)
    }
}

impl From<BigRational> for Scalar {
    fn from(r: BigRational) -> Self {
        Scalar::from_rational(r)
    }
}

impl<'a> Add<&'a Scalar> for &'a Scalar {
    type Output = Scalar;
    fn add(self, rhs: &Scalar) -> Scalar {
        if self.sqrt2.is_zero() && rhs.sqrt2.is_zero() {
            return Scalar::from_rational(&self.rat + &rhs.rat);
        }
        Scalar { rat: &self.rat + &rhs.rat, sqrt2: &self.sqrt2 + &rhs.sqrt2 }
    }
}

impl<'a> Sub<&'a Scalar> for &'a Scalar {
    type Output = Scalar;
    fn sub(self, rhs: &Scalar) -> Scalar {
        if self.sqrt2.is_zero() && rhs.sqrt2.is_zero() {
            return Scalar::from_rational(&self.rat - &rhs.rat);
        }
        Scalar { rat: &self.rat - &rhs.rat, sqrt2: &self.sqrt2 - &rhs.sqrt2 }
    }
}

impl<'a> Mul<&'a Scalar> for &'a Scalar {
    type Output = Scalar;
    fn mul(self, rhs: &Scalar) -> Scalar {
        if self.is_zero() || rhs.is_zero() {
            return Scalar::zero();
        }
        if self.sqrt2.is_zero() && rhs.sqrt2.is_zero() {
            return Scalar::from_rational(&self.rat * &rhs.rat);
        }
        let two = BigRational::from_integer(BigInt::from(2));
        Scalar {
            rat: &self.rat * &rhs.rat + two * &self.sqrt2 * &rhs.sqrt2,
            sqrt2: &self.rat * &rhs.sqrt2 + &self.sqrt2 * &rhs.rat,
        }
    }
}

impl<'a> Div<&'a Scalar> for &'a Scalar {
    type Output = Scalar;
    fn div(self, rhs: &Scalar) -> Scalar {
        let inv = rhs.inv().expect("division by zero scalar");
        self * &inv
    }
}

macro_rules! forward_owned {
    ($tr:ident, $m:ident) => {
        impl $tr<Scalar> for Scalar {
            type Output = Scalar;
            fn $m(self, rhs: Scalar) -> Scalar {
                (&self).$m(&rhs)
            }
        }
        impl<'a> $tr<&'a Scalar> for Scalar {
            type Output = Scalar;
            fn $m(self, rhs: &Scalar) -> Scalar {
                (&self).$m(rhs)
            }
        }
        impl<'a> $tr<Scalar> for &'a Scalar {
            type Output = Scalar;
            fn $m(self, rhs: Scalar) -> Scalar {
                self.$m(&rhs)
            }
        }
    };
}

forward_owned!(Add, add);
forward_owned!(Sub, sub);
forward_owned!(Mul, mul);
forward_owned!(Div, div);

impl Neg for Scalar {
    type Output = Scalar;
    fn neg(self) -> Scalar {
        Scalar { rat: -self.rat, sqrt2: -self.sqrt2 }
    }
}

impl Neg for &Scalar {
    type Output = Scalar;
    fn neg(self) -> Scalar {
        -self.clone()
    }
}

impl AddAssign<&Scalar> for Scalar {
    fn add_assign(&mut self, rhs: &Scalar) {
        self.rat += &rhs.rat;
        self.sqrt2 += &rhs.sqrt2;
    }
}

impl AddAssign for Scalar {
    fn add_assign(&mut self, rhs: Scalar) {
        *self += &rhs;
    }
}

impl SubAssign<&Scalar> for Scalar {
    fn sub_assign(&mut self, rhs: &Scalar) {
        self.rat -= &rhs.rat;
        self.sqrt2 -= &rhs.sqrt2;
    }
}

impl SubAssign for Scalar {
    fn sub_assign(&mut self, rhs: Scalar) {
        *self -= &rhs;
    }
}

impl MulAssign<&Scalar> for Scalar {
    fn mul_assign(&mut self, rhs: &Scalar) {
        *self = &*self * rhs;
    }
}

impl Sum for Scalar {
    fn sum<I: Iterator<Item = Scalar>>(iter: I) -> Scalar {
        iter.fold(Scalar::zero(), |acc, x| acc + x)
    }
}

impl fmt::Display for Scalar {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.to_canonical_string())
    }
}

impl fmt::Debug for Scalar {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Scalar({})", self)
    }
}

fn parse_rational(text: &str, whole: &str) -> Result<BigRational, ScalarParseError> {
    let malformed = || ScalarParseError::Malformed(whole.to_string());
    let (neg, body) = match text.strip_prefix('-') {
        Some(rest) => (true, rest),
        None => (false, text),
    };
    let (num, den) = match body.split_once('/') {
        Some((n, d)) => (n, Some(d)),
        None => (body, None),
    };
    let digits = |s: &str| !s.is_empty() && s.bytes().all(|b| b.is_ascii_digit());
    if !digits(num) || !den.is_none_or(digits) {
        return Err(malformed());
    }
    let mut n: BigInt = num.parse().map_err(|_| malformed())?;
    if neg {
        n = -n;
    }
    let d: BigInt = match den {
        Some(d) => d.parse().map_err(|_| malformed())?,
        None => BigInt::one(),
    };
    if d.is_zero() {
        return Err(ScalarParseError::ZeroDenominator(whole.to_string()));
    }
    Ok(BigRational::new(n, d))
}

/// Strips a trailing √2 marker (`√2`, `(s2)`, or a parenthesised `(r)(s2)`).
fn strip_sqrt2(term: &str) -> Option<&str> {
    if let Some(body) = term.strip_suffix("√2") {
        return Some(body);
    }
    let body = term.strip_suffix("(s2)")?;
    Some(body.strip_prefix('(').and_then(|b| b.strip_suffix(')')).unwrap_or(body))
}

impl FromStr for Scalar {
    type Err = ScalarParseError;

    /// Accepts `r`, `r√2`, `r + r√2` and the JSON-safe spellings
    /// `r+(r)(s2)` / `(r)(s2)`; whitespace is ignored.
    fn from_str(s: &str) -> Result<Self, Self::Err> {
        let compact: String = s.chars().filter(|c| !c.is_whitespace()).collect();
        if compact.is_empty() {
            return Err(ScalarParseError::Malformed(s.to_string()));
        }
        // The only binary '+' separates the rational and √2 parts.
        let split = compact.char_indices().skip(1).find(|&(_, c)| c == '+').map(|(i, _)| i);
        match split {
            Some(i) => {
                let (head, tail) = (&compact[..i], &compact[i + 1..]);
                let tail = strip_sqrt2(tail).ok_or_else(|| ScalarParseError::Malformed(s.to_string()))?;
                Ok(Scalar::new(parse_rational(head, s)?, parse_rational(tail, s)?))
            }
            None => match strip_sqrt2(&compact) {
                Some(body) => Ok(Scalar::new(BigRational::zero(), parse_rational(body, s)?)),
                None => Ok(Scalar::from_rational(parse_rational(&compact, s)?)),
            },
        }
    }
}

impl Serialize for Scalar {
    fn serialize<S: Serializer>(&self, serializer: S) -> Result<S::Ok, S::Error> {
        serializer.serialize_str(&self.to_canonical_string())
    }
}

impl<'de> Deserialize<'de> for Scalar {
    fn deserialize<D: Deserializer<'de>>(deserializer: D) -> Result<Self, D::Error> {
        let text = String::deserialize(deserializer)?;
        text.parse().map_err(serde::de::Error::custom)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    fn s(text: &str) -> Scalar {
        text.parse().unwrap()
    }

    #[test]
    fn parses_integers_and_fractions() {
        assert_eq!(s("-2"), Scalar::int(-2));
        assert_eq!(s("1/2"), Scalar::frac(1, 2));
        assert_eq!(s(" 6/4 "), Scalar::frac(3, 2));
    }

    #[test]
    fn parses_sqrt2_forms() {
        let half_root = s("0 + 1/2√2");
        assert_eq!(half_root, Scalar::new(BigRational::zero(), BigRational::new(1.into(), 2.into())));
        // (b√2)² = 2b²
        assert_eq!(&half_root * &half_root, Scalar::frac(1, 2));
        assert_eq!(s("1/2+(3/4)(s2)"), s("1/2 + 3/4√2"));
        assert_eq!(s("1√2"), Scalar::sqrt2());
        assert_eq!(s("-1/2√2"), -Scalar::sqrt2() * Scalar::frac(1, 2));
        assert_eq!(s("1 + -1√2"), Scalar::int(1) - Scalar::sqrt2());
    }

    #[test]
    fn rejects_bad_literals() {
        assert!(matches!("1/0".parse::<Scalar>(), Err(ScalarParseError::ZeroDenominator(_))));
        for bad in ["", "√2", "abc", "1/", "/2", "1+2", "1.5", "--1", "2√3"] {
            assert!(bad.parse::<Scalar>().is_err(), "{bad:?} should not parse");
        }
    }

    #[test]
    fn canonical_serialization() {
        assert_eq!(s("2/4+(6/8)(s2)").to_canonical_string(), "1/2+(3/4)(s2)");
        assert_eq!(Scalar::zero().to_canonical_string(), "0");
        assert_eq!(Scalar::sqrt2().to_canonical_string(), "0+(1)(s2)");
        let json = serde_json::to_string(&s("-1/3+(2)(s2)")).unwrap();
        assert_eq!(json, "\"-1/3+(2)(s2)\"");
        let back: Scalar = serde_json::from_str(&json).unwrap();
        assert_eq!(back, s("-1/3 + 2√2"));
    }

    #[test]
    fn inverse_of_irrational() {
        let x = s("1 + 1√2");
        let inv = x.inv().unwrap();
        assert_eq!(inv, s("-1 + 1√2"));
        assert_eq!(&x * &inv, Scalar::one());
        assert!(Scalar::zero().inv().is_none());
    }

    #[test]
    fn ordering_matches_real_values() {
        assert!(s("3/2") > Scalar::sqrt2());
        assert!(s("7/5") < Scalar::sqrt2());
        assert!(s("1 + -1√2") < Scalar::zero());
        assert_eq!(s("-2 + 1√2").signum(), Ordering::Less);
    }

    fn arb_scalar() -> impl Strategy<Value = Scalar> {
        (-20i64..20, 1i64..9, -20i64..20, 1i64..9).prop_map(|(a, b, c, d)| {
            Scalar::new(BigRational::new(a.into(), b.into()), BigRational::new(c.into(), d.into()))
        })
    }

    proptest! {
        #![proptest_config(ProptestConfig::with_cases(1000))]
        #[test]
        fn field_axioms(a in arb_scalar(), b in arb_scalar(), c in arb_scalar()) {
            prop_assert_eq!(&(&a + &b) + &c, &a + &(&b + &c));
            prop_assert_eq!(&a * &(&b + &c), &(&a * &b) + &(&a * &c));
            prop_assert_eq!(&a * &b, &b * &a);
            if !a.is_zero() {
                prop_assert_eq!(&a * &a.inv().unwrap(), Scalar::one());
            }
        }

        #[test]
        fn text_round_trip(a in arb_scalar()) {
            let text = a.to_canonical_string();
            prop_assert_eq!(text.parse::<Scalar>().unwrap(), a);
        }
    }
}
