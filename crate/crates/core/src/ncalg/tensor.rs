use std::collections::btree_map::Entry;
use std::collections::BTreeMap;
use std::fmt;
use std::ops::{AddAssign, SubAssign};

use super::gen::{render_word, Word};
use super::poly::NCPoly;
use super::rewrite::RewriteSystem;
use crate::coeffring::LaurentPoly;
use crate::error::Result;

/// Element of a tensor product of presented algebras over `ℚ[q, q⁻¹]`.
///
/// Each key holds one word per leg.
#[derive(Clone, Default, PartialEq, Eq)]
pub struct Tensor {
    legs: usize,
    terms: BTreeMap<Vec<Word>, LaurentPoly>,
}

impl Tensor {
    pub fn zero(legs: usize) -> Self {
        Tensor { legs, terms: BTreeMap::new() }
    }

    /// `1 ⊗ … ⊗ 1`.
    pub fn one(legs: usize) -> Self {
        let mut t = Self::zero(legs);
        t.add_term(vec![Word::new(); legs], LaurentPoly::one());
        t
    }

    pub fn legs(&self) -> usize {
        self.legs
    }

    /// `f₁ ⊗ f₂ ⊗ …`.
    pub fn pure(factors: &[NCPoly]) -> Self {
        let mut acc = Self::one(0);
        for f in factors {
            acc = acc.outer(&Self::from_poly(f));
        }
        acc
    }

    pub fn from_poly(p: &NCPoly) -> Self {
        let mut t = Self::zero(1);
        for (w, c) in p.terms() {
            t.add_term(vec![w.clone()], c.clone());
        }
        t
    }

    pub fn add_term(&mut self, key: Vec<Word>, c: LaurentPoly) {
        debug_assert_eq!(key.len(), self.legs);
        if c.is_zero() {
            return;
        }
        match self.terms.entry(key) {
            Entry::Vacant(e) => {
                e.insert(c);
            }
            Entry::Occupied(mut e) => {
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

    pub fn terms(&self) -> impl Iterator<Item = (&Vec<Word>, &LaurentPoly)> {
        self.terms.iter()
    }

    pub fn scale(&self, c: &LaurentPoly) -> Self {
        let mut out = Self::zero(self.legs);
        for (k, v) in &self.terms {
            out.add_term(k.clone(), v * c);
        }
        out
    }

    /// `self ⊗ other`.
    pub fn outer(&self, other: &Tensor) -> Tensor {
        let mut out = Self::zero(self.legs + other.legs);
        for (a, ca) in &self.terms {
            for (b, cb) in &other.terms {
                let mut k = a.clone();
                k.extend(b.iter().cloned());
                out.add_term(k, ca * cb);
            }
        }
        out
    }

    /// Normalize every leg in its own system.
    pub fn normalize(&self, systems: &[&RewriteSystem]) -> Result<Tensor> {
        assert_eq!(systems.len(), self.legs, "one system per leg");
        let mut out = Self::zero(self.legs);
        for (k, c) in &self.terms {
            let mut acc = Tensor::one(0).scale(c);
            for (w, sys) in k.iter().zip(systems) {
                let nf = sys.normalize(&NCPoly::word(w.clone()))?;
                acc = acc.outer(&Tensor::from_poly(&nf));
            }
            out += &acc;
        }
        Ok(out)
    }

    /// Leg-wise product; a leg flagged in `opposite` multiplies in the
    /// opposite algebra.
    pub fn mul_with(
        &self,
        other: &Tensor,
        systems: &[&RewriteSystem],
        opposite: &[bool],
    ) -> Result<Tensor> {
        assert_eq!(self.legs, other.legs);
        let mut raw = Self::zero(self.legs);
        for (a, ca) in &self.terms {
            for (b, cb) in &other.terms {
                let key = a
                    .iter()
                    .zip(b)
                    .enumerate()
                    .map(|(i, (u, v))| {
                        let (l, r) = if opposite.get(i).copied().unwrap_or(false) { (v, u) } else { (u, v) };
                        let mut w = l.clone();
                        w.extend_from_slice(r);
                        w
                    })
                    .collect();
                raw.add_term(key, ca * cb);
            }
        }
        raw.normalize(systems)
    }

    pub fn mul(&self, other: &Tensor, systems: &[&RewriteSystem]) -> Result<Tensor> {
        self.mul_with(other, systems, &[])
    }

    /// Replace leg `leg` by the legs of `f(word)`, extended linearly.
    pub fn apply_leg(&self, leg: usize, f: impl Fn(&Word) -> Result<Tensor>) -> Result<Tensor> {
        let mut out: Option<Tensor> = None;
        let mut cache: BTreeMap<Word, Tensor> = BTreeMap::new();
        for (k, c) in &self.terms {
            let img = match cache.get(&k[leg]) {
                Some(t) => t.clone(),
                None => {
                    let t = f(&k[leg])?;
                    cache.insert(k[leg].clone(), t.clone());
                    t
                }
            };
            let before = Tensor::pure_words(&k[..leg]);
            let after = Tensor::pure_words(&k[leg + 1..]);
            let piece = before.outer(&img).outer(&after).scale(c);
            match &mut out {
                Some(acc) => *acc += &piece,
                None => out = Some(piece),
            }
        }
        match out {
            Some(t) => Ok(t),
            None => Ok(Tensor::zero(self.legs - 1 + f(&Word::new())?.legs)),
        }
    }

    fn pure_words(ws: &[Word]) -> Tensor {
        let mut t = Tensor::zero(ws.len());
        t.add_term(ws.to_vec(), LaurentPoly::one());
        t
    }

    /// Multiply legs `i` and `i + 1` together in `sys`.
    pub fn contract(&self, i: usize, sys: &RewriteSystem) -> Result<Tensor> {
        let mut out = Self::zero(self.legs - 1);
        for (k, c) in &self.terms {
            let mut w = k[i].clone();
            w.extend_from_slice(&k[i + 1]);
            let nf = sys.normalize(&NCPoly::word(w))?;
            for (nw, nc) in nf.terms() {
                let mut key = k[..i].to_vec();
                key.push(nw.clone());
                key.extend(k[i + 2..].iter().cloned());
                out.add_term(key, c * nc);
            }
        }
        Ok(out)
    }

    /// Apply a linear map leg-wise to a single leg, keeping leg count.
    pub fn map_leg(&self, leg: usize, f: impl Fn(&Word) -> Result<NCPoly>) -> Result<Tensor> {
        self.apply_leg(leg, |w| Ok(Tensor::from_poly(&f(w)?)))
    }

    /// Reorder legs: leg `i` of the result is leg `perm[i]` of `self`.
    pub fn permute(&self, perm: &[usize]) -> Tensor {
        let mut out = Self::zero(self.legs);
        for (k, c) in &self.terms {
            out.add_term(perm.iter().map(|&p| k[p].clone()).collect(), c.clone());
        }
        out
    }

    /// Conjugate each leg.
    pub fn star_legs(&self) -> Tensor {
        let mut out = Self::zero(self.legs);
        for (k, c) in &self.terms {
            out.add_term(k.iter().map(|w| super::gen::star_word(w)).collect(), c.clone());
        }
        out
    }
}

impl AddAssign<&Tensor> for Tensor {
    fn add_assign(&mut self, rhs: &Tensor) {
        for (k, c) in &rhs.terms {
            self.add_term(k.clone(), c.clone());
        }
    }
}

impl SubAssign<&Tensor> for Tensor {
    fn sub_assign(&mut self, rhs: &Tensor) {
        for (k, c) in &rhs.terms {
            self.add_term(k.clone(), -c);
        }
    }
}

impl std::ops::Sub<&Tensor> for &Tensor {
    type Output = Tensor;
    fn sub(self, rhs: &Tensor) -> Tensor {
        let mut out = self.clone();
        out -= rhs;
        out
    }
}

impl std::ops::Add<&Tensor> for &Tensor {
    type Output = Tensor;
    fn add(self, rhs: &Tensor) -> Tensor {
        let mut out = self.clone();
        out += rhs;
        out
    }
}

impl fmt::Display for Tensor {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return f.write_str("0");
        }
        for (i, (k, c)) in self.terms.iter().enumerate() {
            if i > 0 {
                f.write_str(" + ")?;
            }
            let legs: Vec<String> = k.iter().map(|w| render_word(w)).collect();
            write!(f, "({c})*{}", legs.join(" ⊗ "))?;
        }
        Ok(())
    }
}

impl fmt::Debug for Tensor {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Tensor({self})")
    }
}
