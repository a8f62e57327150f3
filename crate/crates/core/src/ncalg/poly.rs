use std::collections::BTreeMap;
use std::fmt;
use std::ops::{Add, AddAssign, Neg, Sub, SubAssign};
use std::str::FromStr;

use num_traits::Signed;

use super::gen::{render_word, star_word, Gen, Word};
use crate::coeffring::{render_monomial, LaurentPoly};
use crate::error::{Error, Result};

/// Finite linear combination of words with Laurent coefficients.
///
/// Multiplication here is free concatenation; reduction modulo a
/// presentation lives in [`super::RewriteSystem`].
#[derive(Clone, Default, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct NCPoly {
    terms: BTreeMap<Word, LaurentPoly>,
}

impl NCPoly {
    pub fn zero() -> Self {
        Self::default()
    }

    pub fn one() -> Self {
        Self::scalar(LaurentPoly::one())
    }

    pub fn scalar(c: LaurentPoly) -> Self {
        Self::term(Word::new(), c)
    }

    pub fn gen(g: Gen) -> Self {
        Self::term(vec![g], LaurentPoly::one())
    }

    pub fn word(w: Word) -> Self {
        Self::term(w, LaurentPoly::one())
    }

    pub fn term(w: Word, c: LaurentPoly) -> Self {
        let mut p = Self::zero();
        p.add_term(w, c);
        p
    }

    pub fn add_term(&mut self, w: Word, c: LaurentPoly) {
        if c.is_zero() {
            return;
        }
        match self.terms.entry(w) {
            std::collections::btree_map::Entry::Vacant(e) => {
                e.insert(c);
            }
            std::collections::btree_map::Entry::Occupied(mut e) => {
                *e.get_mut() += &c;
                if e.get().is_zero() {
                    e.remove();
                }
            }
        }
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn terms(&self) -> impl Iterator<Item = (&Word, &LaurentPoly)> {
        self.terms.iter()
    }

    pub fn into_terms(self) -> impl Iterator<Item = (Word, LaurentPoly)> {
        self.terms.into_iter()
    }

    pub fn coeff(&self, w: &[Gen]) -> LaurentPoly {
        self.terms.get(w).cloned().unwrap_or_default()
    }

    /// The coefficient if `self` is a multiple of the unit.
    pub fn as_scalar(&self) -> Option<LaurentPoly> {
        match self.terms.len() {
            0 => Some(LaurentPoly::zero()),
            1 => self.terms.get(&Word::new()).cloned(),
            _ => None,
        }
    }

    pub fn generators(&self) -> impl Iterator<Item = Gen> + '_ {
        self.terms.keys().flat_map(|w| w.iter().copied())
    }

    pub fn degree(&self) -> usize {
        self.terms.keys().map(Vec::len).max().unwrap_or(0)
    }

    pub fn scale(&self, c: &LaurentPoly) -> Self {
        self.map_coeffs(|x| x * c)
    }

    pub fn map_coeffs(&self, f: impl Fn(&LaurentPoly) -> LaurentPoly) -> Self {
        let mut out = Self::zero();
        for (w, c) in &self.terms {
            out.add_term(w.clone(), f(c));
        }
        out
    }

    /// Free (concatenation) product.
    pub fn mul_free(&self, other: &Self) -> Self {
        let mut out = Self::zero();
        for (u, a) in &self.terms {
            for (v, b) in &other.terms {
                let mut w = u.clone();
                w.extend_from_slice(v);
                out.add_term(w, a * b);
            }
        }
        out
    }

    /// Conjugate-linear anti-involution; the identity on coefficients.
    pub fn star(&self) -> Self {
        let mut out = Self::zero();
        for (w, c) in &self.terms {
            out.add_term(star_word(w), c.clone());
        }
        out
    }

    /// Replace each generator by a polynomial, multiplying freely.
    pub fn substitute(&self, f: &impl Fn(Gen) -> NCPoly) -> Self {
        let mut out = Self::zero();
        for (w, c) in &self.terms {
            let mut acc = NCPoly::scalar(c.clone());
            for g in w {
                acc = acc.mul_free(&f(*g));
            }
            out += &acc;
        }
        out
    }

    /// Terms in graded order: shorter words first, then lexicographic.
    pub fn sorted_terms(&self) -> Vec<(&Word, &LaurentPoly)> {
        let mut v: Vec<_> = self.terms.iter().collect();
        v.sort_by(|a, b| a.0.len().cmp(&b.0.len()).then_with(|| a.0.cmp(b.0)));
        v
    }
}

impl fmt::Display for NCPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return f.write_str("0");
        }
        for (i, (w, c)) in self.sorted_terms().into_iter().enumerate() {
            let (neg, body) = render_term(w, c);
            match (i, neg) {
                (0, true) => write!(f, "-{body}")?,
                (0, false) => write!(f, "{body}")?,
                (_, true) => write!(f, " - {body}")?,
                (_, false) => write!(f, " + {body}")?,
            }
        }
        Ok(())
    }
}

fn render_term(w: &[Gen], c: &LaurentPoly) -> (bool, String) {
    if c.is_unit() {
        let (k, r) = c.terms().next().expect("unit has one term");
        let mag = render_monomial(&r.abs(), k);
        let body = if w.is_empty() {
            mag
        } else if mag == "1" {
            render_word(w)
        } else {
            format!("{mag}*{}", render_word(w))
        };
        return (r.is_negative(), body);
    }
    if w.is_empty() {
        (false, format!("({c})"))
    } else {
        (false, format!("({c})*{}", render_word(w)))
    }
}

impl fmt::Debug for NCPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "NCPoly({self})")
    }
}

impl FromStr for NCPoly {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        crate::parse::parse_expr(s)
    }
}

impl From<Gen> for NCPoly {
    fn from(g: Gen) -> Self {
        NCPoly::gen(g)
    }
}

impl From<LaurentPoly> for NCPoly {
    fn from(c: LaurentPoly) -> Self {
        NCPoly::scalar(c)
    }
}

impl AddAssign<&NCPoly> for NCPoly {
    fn add_assign(&mut self, rhs: &NCPoly) {
        for (w, c) in &rhs.terms {
            self.add_term(w.clone(), c.clone());
        }
    }
}

impl SubAssign<&NCPoly> for NCPoly {
    fn sub_assign(&mut self, rhs: &NCPoly) {
        for (w, c) in &rhs.terms {
            self.add_term(w.clone(), -c);
        }
    }
}

impl Add<&NCPoly> for &NCPoly {
    type Output = NCPoly;
    fn add(self, rhs: &NCPoly) -> NCPoly {
        let mut out = self.clone();
        out += rhs;
        out
    }
}

impl Sub<&NCPoly> for &NCPoly {
    type Output = NCPoly;
    fn sub(self, rhs: &NCPoly) -> NCPoly {
        let mut out = self.clone();
        out -= rhs;
        out
    }
}

impl Add for NCPoly {
    type Output = NCPoly;
    fn add(mut self, rhs: NCPoly) -> NCPoly {
        self += &rhs;
        self
    }
}

impl Sub for NCPoly {
    type Output = NCPoly;
    fn sub(mut self, rhs: NCPoly) -> NCPoly {
        self -= &rhs;
        self
    }
}

impl Neg for &NCPoly {
    type Output = NCPoly;
    fn neg(self) -> NCPoly {
        self.map_coeffs(|c| -c)
    }
}

impl Neg for NCPoly {
    type Output = NCPoly;
    fn neg(self) -> NCPoly {
        -&self
    }
}
