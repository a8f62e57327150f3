//! Exact arithmetic in the ring of Laurent polynomials `ℚ[q, q⁻¹]`.
//!
//! A [`LaurentPoly`] is a finite map from integer exponents to nonzero
//! arbitrary-precision rationals. The map is kept canonical (no stored
//! zeros, ascending exponent order), so structural equality is ring
//! equality.

use std::collections::BTreeMap;
use std::fmt;
use std::ops::{Add, AddAssign, Mul, Neg, Sub, SubAssign};
use std::str::FromStr;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// Rational coefficient type used throughout the symbolic layer.
pub type Rational = BigRational;

pub fn rat(n: i64, d: i64) -> Rational {
    BigRational::new(BigInt::from(n), BigInt::from(d))
}

/// Element of `ℚ[q, q⁻¹]`.
#[derive(Clone, Default, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct LaurentPoly {
    terms: BTreeMap<i32, Rational>,
}

/// Value of `q` handed to [`LaurentPoly::eval`].
#[derive(Clone, Debug)]
pub enum EvalPoint {
    Exact(Rational),
    Float(f64),
}

#[derive(Clone, Debug, PartialEq)]
pub enum EvalValue {
    Exact(Rational),
    Float(f64),
}

impl EvalValue {
    pub fn to_f64(&self) -> f64 {
        match self {
            EvalValue::Exact(r) => r.to_f64().unwrap_or(f64::NAN),
            EvalValue::Float(x) => *x,
        }
    }
}

impl LaurentPoly {
    pub fn zero() -> Self {
        Self::default()
    }

    pub fn one() -> Self {
        Self::constant(Rational::one())
    }

    pub fn constant(c: Rational) -> Self {
        Self::monomial(c, 0)
    }

    pub fn int(c: i64) -> Self {
        Self::constant(Rational::from_integer(BigInt::from(c)))
    }

    /// `c · q^k`; the zero polynomial when `c = 0`.
    pub fn monomial(c: Rational, k: i32) -> Self {
        let mut terms = BTreeMap::new();
        if !c.is_zero() {
            terms.insert(k, c);
        }
        LaurentPoly { terms }
    }

    /// `q^k`.
    pub fn q_pow(k: i32) -> Self {
        Self::monomial(Rational::one(), k)
    }

    /// `c · q^k` with integer `c`.
    pub fn mono(c: i64, k: i32) -> Self {
        Self::monomial(Rational::from_integer(BigInt::from(c)), k)
    }

    pub fn from_terms<I: IntoIterator<Item = (i32, Rational)>>(it: I) -> Self {
        let mut p = Self::zero();
        for (k, c) in it {
            p.add_term(k, c);
        }
        p
    }

    fn add_term(&mut self, k: i32, c: Rational) {
        if c.is_zero() {
            return;
        }
        let entry = self.terms.entry(k).or_insert_with(Rational::zero);
        *entry += c;
        if entry.is_zero() {
            self.terms.remove(&k);
        }
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn is_one(&self) -> bool {
        self.terms.len() == 1 && self.terms.get(&0).is_some_and(|c| c.is_one())
    }

    /// Units of `ℚ[q, q⁻¹]` are exactly the nonzero monomials.
    pub fn is_unit(&self) -> bool {
        self.terms.len() == 1
    }

    pub fn terms(&self) -> impl Iterator<Item = (i32, &Rational)> {
        self.terms.iter().map(|(k, c)| (*k, c))
    }

    pub fn num_terms(&self) -> usize {
        self.terms.len()
    }

    pub fn coeff(&self, k: i32) -> Rational {
        self.terms.get(&k).cloned().unwrap_or_else(Rational::zero)
    }

    pub fn min_exp(&self) -> Option<i32> {
        self.terms.keys().next().copied()
    }

    pub fn max_exp(&self) -> Option<i32> {
        self.terms.keys().next_back().copied()
    }

    pub fn scale(&self, c: &Rational) -> Self {
        if c.is_zero() {
            return Self::zero();
        }
        LaurentPoly {
            terms: self.terms.iter().map(|(k, v)| (*k, v * c)).collect(),
        }
    }

    pub fn shift(&self, s: i32) -> Self {
        LaurentPoly {
            terms: self.terms.iter().map(|(k, v)| (k + s, v.clone())).collect(),
        }
    }

    pub fn pow(&self, e: u32) -> Self {
        let mut acc = Self::one();
        for _ in 0..e {
            acc = &acc * self;
        }
        acc
    }

    /// Substitute `q ↦ q⁻¹`.
    pub fn invert_q(&self) -> Self {
        LaurentPoly {
            terms: self.terms.iter().map(|(k, v)| (-k, v.clone())).collect(),
        }
    }

    /// Inverse of a unit; `None` for non-monomials.
    pub fn unit_inverse(&self) -> Option<Self> {
        if !self.is_unit() {
            return None;
        }
        let (k, c) = self.terms.iter().next()?;
        Some(Self::monomial(c.recip(), -k))
    }

    pub fn eval(&self, at: &EvalPoint) -> Result<EvalValue> {
        match at {
            EvalPoint::Exact(q0) => self.eval_exact(q0).map(EvalValue::Exact),
            EvalPoint::Float(q0) => self.eval_f64(*q0).map(EvalValue::Float),
        }
    }

    pub fn eval_exact(&self, q0: &Rational) -> Result<Rational> {
        if q0.is_zero() {
            return Err(Error::ZeroEvaluation);
        }
        let mut acc = Rational::zero();
        for (k, c) in &self.terms {
            acc += c * rat_pow(q0, *k);
        }
        Ok(acc)
    }

    pub fn eval_f64(&self, q0: f64) -> Result<f64> {
        if q0 == 0.0 {
            return Err(Error::ZeroEvaluation);
        }
        Ok(self
            .terms
            .iter()
            .map(|(k, c)| c.to_f64().unwrap_or(f64::NAN) * q0.powi(*k))
            .sum())
    }

    /// Exact quotient `self / d` when it exists in `ℚ[q, q⁻¹]`.
    pub fn div_exact(&self, d: &Self) -> Option<Self> {
        if d.is_zero() {
            return None;
        }
        if self.is_zero() {
            return Some(Self::zero());
        }
        if let Some(inv) = d.unit_inverse() {
            return Some(self * &inv);
        }
        let (num, ns) = self.to_dense();
        let (den, ds) = d.to_dense();
        let (quot, rem) = dense_divrem(&num, &den);
        if rem.iter().any(|c| !c.is_zero()) {
            return None;
        }
        Some(Self::from_dense(&quot, ns - ds))
    }

    /// Greatest common divisor, normalized to have lowest exponent 0 and
    /// leading coefficient 1. `gcd(0, 0) = 0`.
    pub fn gcd(&self, other: &Self) -> Self {
        if self.is_zero() {
            return other.normalized_associate();
        }
        if other.is_zero() {
            return self.normalized_associate();
        }
        let (mut a, _) = self.to_dense();
        let (mut b, _) = other.to_dense();
        while b.iter().any(|c| !c.is_zero()) {
            let (_, r) = dense_divrem(&a, &b);
            a = b;
            b = r;
        }
        Self::from_dense(&a, 0).normalized_associate()
    }

    /// Associate of `self` with lowest exponent 0 and leading coefficient 1.
    pub fn normalized_associate(&self) -> Self {
        let (Some(lo), Some(hi)) = (self.min_exp(), self.max_exp()) else {
            return Self::zero();
        };
        let lead = self.terms[&hi].recip();
        self.shift(-lo).scale(&lead)
    }

    /// Dense coefficient vector (ascending) together with the exponent
    /// of its first entry.
    fn to_dense(&self) -> (Vec<Rational>, i32) {
        let (Some(lo), Some(hi)) = (self.min_exp(), self.max_exp()) else {
            return (Vec::new(), 0);
        };
        let mut v = vec![Rational::zero(); (hi - lo + 1) as usize];
        for (k, c) in &self.terms {
            v[(k - lo) as usize] = c.clone();
        }
        (v, lo)
    }

    fn from_dense(v: &[Rational], lo: i32) -> Self {
        Self::from_terms(v.iter().enumerate().map(|(i, c)| (lo + i as i32, c.clone())))
    }
}

fn rat_pow(x: &Rational, k: i32) -> Rational {
    let base = if k < 0 { x.recip() } else { x.clone() };
    num_traits::pow(base, k.unsigned_abs() as usize)
}

/// Polynomial long division over ℚ on ascending dense vectors.
fn dense_divrem(num: &[Rational], den: &[Rational]) -> (Vec<Rational>, Vec<Rational>) {
    let mut den = den.to_vec();
    while den.last().is_some_and(|c| c.is_zero()) {
        den.pop();
    }
    let mut rem = num.to_vec();
    while rem.last().is_some_and(|c| c.is_zero()) {
        rem.pop();
    }
    if rem.len() < den.len() {
        return (Vec::new(), rem);
    }
    let dl = den.len();
    let lead = den[dl - 1].clone();
    let mut quot = vec![Rational::zero(); rem.len() - dl + 1];
    while rem.len() >= dl {
        let shift = rem.len() - dl;
        let c = &rem[rem.len() - 1] / &lead;
        for (i, dc) in den.iter().enumerate() {
            let t = &c * dc;
            rem[shift + i] -= t;
        }
        quot[shift] = c;
        rem.pop();
        while rem.last().is_some_and(|c| c.is_zero()) {
            rem.pop();
        }
    }
    (quot, rem)
}

impl fmt::Display for LaurentPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return write!(f, "0");
        }
        for (i, (k, c)) in self.terms.iter().enumerate() {
            let neg = c.is_negative();
            let mag = c.abs();
            if i == 0 {
                if neg {
                    write!(f, "-")?;
                }
            } else {
                write!(f, " {} ", if neg { '-' } else { '+' })?;
            }
            write!(f, "{}", render_monomial(&mag, *k))?;
        }
        Ok(())
    }
}

impl fmt::Debug for LaurentPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "LaurentPoly({self})")
    }
}

/// Renders `c·q^k` for `c > 0`.
pub(crate) fn render_monomial(c: &Rational, k: i32) -> String {
    let cs = if c.is_integer() {
        c.numer().to_string()
    } else {
        format!("{}/{}", c.numer(), c.denom())
    };
    match (c.is_one(), k) {
        (_, 0) => cs,
        (true, 1) => "q".to_string(),
        (true, _) => format!("q^{k}"),
        (false, 1) => format!("{cs}*q"),
        (false, _) => format!("{cs}*q^{k}"),
    }
}

impl FromStr for LaurentPoly {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let p = crate::parse::parse_expr(s)?;
        p.as_scalar().ok_or_else(|| Error::Syntax {
            pos: 0,
            msg: "expected a Laurent polynomial without generators".into(),
        })
    }
}

impl Serialize for LaurentPoly {
    fn serialize<S: serde::Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        s.serialize_str(&self.to_string())
    }
}

impl<'de> Deserialize<'de> for LaurentPoly {
    fn deserialize<D: serde::Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        let s = String::deserialize(d)?;
        s.parse().map_err(serde::de::Error::custom)
    }
}

impl From<i64> for LaurentPoly {
    fn from(c: i64) -> Self {
        Self::int(c)
    }
}

impl Add<&LaurentPoly> for &LaurentPoly {
    type Output = LaurentPoly;
    fn add(self, rhs: &LaurentPoly) -> LaurentPoly {
        let mut out = self.clone();
        out += rhs;
        out
    }
}

impl Add for LaurentPoly {
    type Output = LaurentPoly;
    fn add(mut self, rhs: LaurentPoly) -> LaurentPoly {
        self += &rhs;
        self
    }
}

impl AddAssign<&LaurentPoly> for LaurentPoly {
    fn add_assign(&mut self, rhs: &LaurentPoly) {
        for (k, c) in &rhs.terms {
            self.add_term(*k, c.clone());
        }
    }
}

impl SubAssign<&LaurentPoly> for LaurentPoly {
    fn sub_assign(&mut self, rhs: &LaurentPoly) {
        for (k, c) in &rhs.terms {
            self.add_term(*k, -c.clone());
        }
    }
}

impl Sub<&LaurentPoly> for &LaurentPoly {
    type Output = LaurentPoly;
    fn sub(self, rhs: &LaurentPoly) -> LaurentPoly {
        let mut out = self.clone();
        out -= rhs;
        out
    }
}

impl Sub for LaurentPoly {
    type Output = LaurentPoly;
    fn sub(mut self, rhs: LaurentPoly) -> LaurentPoly {
        self -= &rhs;
        self
    }
}

impl Neg for &LaurentPoly {
    type Output = LaurentPoly;
    fn neg(self) -> LaurentPoly {
        LaurentPoly {
            terms: self.terms.iter().map(|(k, c)| (*k, -c.clone())).collect(),
        }
    }
}

impl Neg for LaurentPoly {
    type Output = LaurentPoly;
    fn neg(self) -> LaurentPoly {
        -&self
    }
}

impl Mul<&LaurentPoly> for &LaurentPoly {
    type Output = LaurentPoly;
    fn mul(self, rhs: &LaurentPoly) -> LaurentPoly {
        let mut out = LaurentPoly::zero();
        for (a, ca) in &self.terms {
            for (b, cb) in &rhs.terms {
                out.add_term(a + b, ca * cb);
            }
        }
        out
    }
}

impl Mul for LaurentPoly {
    type Output = LaurentPoly;
    fn mul(self, rhs: LaurentPoly) -> LaurentPoly {
        &self * &rhs
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    fn lp(s: &str) -> LaurentPoly {
        s.parse().unwrap()
    }

    #[test]
    fn difference_of_squares() {
        assert_eq!(&lp("1 - q^2") * &lp("1 + q^2"), lp("1 - q^4"));
    }

    #[test]
    fn additive_inverse_is_empty() {
        let s = &lp("q - q^-1") + &lp("q^-1 - q");
        assert!(s.is_zero());
        assert_eq!(s.num_terms(), 0);
    }

    #[test]
    fn expanded_product() {
        // q^-4 (1 - q^2)(1 - q^4) = q^-4 - q^-2 - 1 + q^2
        let p = &(&LaurentPoly::q_pow(-4) * &lp("1 - q^2")) * &lp("1 - q^4");
        assert_eq!(p, LaurentPoly::from_terms([(-4, rat(1, 1)), (-2, rat(-1, 1)), (0, rat(-1, 1)), (2, rat(1, 1))]));
        assert_eq!(p.to_string(), "q^-4 - q^-2 - 1 + q^2");
    }

    #[test]
    fn evaluation() {
        let chern = lp("2 - q^-4*(1 - q^2)*(1 - q^4)");
        assert_eq!(chern.eval_exact(&rat(1, 1)).unwrap(), rat(2, 1));
        assert_eq!(lp("q^4").eval_exact(&rat(1, 2)).unwrap(), rat(1, 16));
        assert_eq!(lp("1 - q^2").eval_exact(&rat(1, 1)).unwrap(), rat(0, 1));
        assert_eq!(lp("1 - q^2").eval_f64(1.0).unwrap(), 0.0);
        assert_eq!(lp("q^-1").eval_exact(&rat(0, 1)), Err(Error::ZeroEvaluation));
        assert_eq!(lp("q").eval_f64(0.0), Err(Error::ZeroEvaluation));
    }

    #[test]
    fn invert_q_examples() {
        assert_eq!(lp("q^2").invert_q(), lp("q^-2"));
        assert_eq!(lp("1 - q^-4").invert_q(), lp("1 - q^4"));
    }

    #[test]
    fn exact_division() {
        let a = lp("1 - q^4");
        let b = lp("1 - q^2");
        assert_eq!(a.div_exact(&b), Some(lp("1 + q^2")));
        assert_eq!(b.div_exact(&a), None);
        assert_eq!(lp("q^3 - q").div_exact(&lp("q^2 - 1")), Some(lp("q")));
        assert_eq!(a.gcd(&lp("q^-3 - q^-1")), lp("1 - q^2").normalized_associate());
    }

    #[test]
    fn rendering() {
        assert_eq!(LaurentPoly::zero().to_string(), "0");
        assert_eq!(lp("-q^-1 + 3/2*q^3").to_string(), "-q^-1 + 3/2*q^3");
        assert_eq!(lp("-2*q").to_string(), "-2*q");
    }

    fn arb_lp() -> impl Strategy<Value = LaurentPoly> {
        prop::collection::vec((-6i32..6, -5i64..6, 1i64..4), 0..5).prop_map(|ts| {
            LaurentPoly::from_terms(ts.into_iter().map(|(k, n, d)| (k, rat(n, d))))
        })
    }

    proptest! {
        #[test]
        fn ring_axioms(a in arb_lp(), b in arb_lp(), c in arb_lp()) {
            prop_assert_eq!(&(&a * &b) * &c, &a * &(&b * &c));
            prop_assert_eq!(&a * &b, &b * &a);
            prop_assert_eq!(&a * &(&b + &c), &(&a * &b) + &(&a * &c));
            prop_assert_eq!(&(&a + &b) + &c, &a + &(&b + &c));
        }

        #[test]
        fn eval_is_multiplicative(a in arb_lp(), b in arb_lp(), n in 1i64..7, d in 1i64..7) {
            let q0 = rat(n, d);
            let lhs = a.eval_exact(&q0).unwrap() * b.eval_exact(&q0).unwrap();
            prop_assert_eq!(lhs, (&a * &b).eval_exact(&q0).unwrap());
        }

        #[test]
        fn invert_q_is_automorphism(a in arb_lp(), b in arb_lp()) {
            prop_assert_eq!(a.invert_q().invert_q(), a.clone());
            prop_assert_eq!((&a * &b).invert_q(), &a.invert_q() * &b.invert_q());
        }

        #[test]
        fn render_parse_roundtrip(a in arb_lp()) {
            let back: LaurentPoly = a.to_string().parse().unwrap();
            prop_assert_eq!(back, a);
        }

        #[test]
        fn product_divides_exactly(a in arb_lp(), b in arb_lp()) {
            prop_assume!(!b.is_zero());
            prop_assert_eq!((&a * &b).div_exact(&b), Some(a));
        }
    }
}
