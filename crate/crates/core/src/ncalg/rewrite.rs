use std::cmp::Ordering;
use std::collections::{BTreeMap, HashMap};
use std::fmt;

use dashmap::DashMap;

use super::gen::{render_word, Gen, Word};
use super::poly::NCPoly;
use crate::coeffring::LaurentPoly;
use crate::error::{Error, Result};

pub const DEFAULT_BUDGET: usize = 1_000_000;

/// Weighted degree-lexicographic order on words.
///
/// Words compare first by total weight, then letter by letter by rank.
/// With unit weights this is the usual length-then-lex order.
#[derive(Clone, Debug)]
pub struct WordOrder {
    key: HashMap<Gen, (u32, u32)>,
    alphabet: Vec<Gen>,
}

impl WordOrder {
    /// Generators listed from smallest to largest, all of weight 1.
    pub fn graded_lex(alphabet: &[Gen]) -> Self {
        Self::weighted(&alphabet.iter().map(|g| (*g, 1)).collect::<Vec<_>>())
    }

    pub fn weighted(alphabet: &[(Gen, u32)]) -> Self {
        let key = alphabet
            .iter()
            .enumerate()
            .map(|(r, (g, w))| (*g, (*w, r as u32)))
            .collect();
        WordOrder { key, alphabet: alphabet.iter().map(|(g, _)| *g).collect() }
    }

    pub fn alphabet(&self) -> &[Gen] {
        &self.alphabet
    }

    pub fn contains(&self, g: Gen) -> bool {
        self.key.contains_key(&g)
    }

    pub fn weight(&self, w: &[Gen]) -> u32 {
        w.iter().map(|g| self.key[g].0).sum()
    }

    pub fn rank(&self, g: Gen) -> u32 {
        self.key[&g].1
    }

    pub fn cmp(&self, a: &[Gen], b: &[Gen]) -> Ordering {
        self.weight(a).cmp(&self.weight(b)).then_with(|| {
            a.iter()
                .map(|g| self.rank(*g))
                .cmp(b.iter().map(|g| self.rank(*g)))
        })
    }

    /// Largest word of a nonzero polynomial.
    pub fn leading_word<'a>(&self, p: &'a NCPoly) -> Option<&'a Word> {
        p.terms().map(|(w, _)| w).max_by(|a, b| self.cmp(a, b))
    }
}

/// Oriented relation `lhs → rhs` with a two-letter leading word.
#[derive(Clone, PartialEq, Eq)]
pub struct Rule {
    pub lhs: [Gen; 2],
    pub rhs: NCPoly,
}

impl Rule {
    pub fn new(lhs: [Gen; 2], rhs: NCPoly) -> Self {
        Rule { lhs, rhs }
    }

    /// Orient the identity `lhs = rhs` at its largest word, which must
    /// have two letters and a unit coefficient.
    pub fn from_identity(lhs: &NCPoly, rhs: &NCPoly, order: &WordOrder) -> Result<Rule> {
        let diff = lhs - rhs;
        let lead = order
            .leading_word(&diff)
            .ok_or_else(|| Error::InvalidParameter(format!("trivial identity `{lhs} = {rhs}`")))?
            .clone();
        Self::orient_at(&diff, &lead)
    }

    /// Solve `diff = 0` for the word `lead`.
    pub fn orient_at(diff: &NCPoly, lead: &[Gen]) -> Result<Rule> {
        if lead.len() != 2 {
            return Err(Error::InvalidParameter(format!(
                "leading word `{}` of `{diff}` is not quadratic",
                render_word(lead)
            )));
        }
        let c = diff.coeff(lead);
        let inv = c.unit_inverse().ok_or_else(|| {
            Error::InvalidParameter(format!("coefficient `{c}` of `{}` is not invertible", render_word(lead)))
        })?;
        let mut rest = diff.clone();
        rest.add_term(lead.to_vec(), -&c);
        Ok(Rule { lhs: [lead[0], lead[1]], rhs: rest.scale(&(-inv)) })
    }

    pub fn lhs_word(&self) -> Word {
        self.lhs.to_vec()
    }

    pub fn lhs_poly(&self) -> NCPoly {
        NCPoly::word(self.lhs_word())
    }
}

impl fmt::Display for Rule {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{} -> {}", render_word(&self.lhs), self.rhs)
    }
}

impl fmt::Debug for Rule {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{self}")
    }
}

/// A terminating rewrite system for a quadratic presentation.
pub struct RewriteSystem {
    name: String,
    order: WordOrder,
    rules: BTreeMap<[Gen; 2], NCPoly>,
    central: Option<Rule>,
    budget: usize,
    cache: DashMap<Word, NCPoly>,
    central_cache: DashMap<Word, NCPoly>,
}

impl fmt::Debug for RewriteSystem {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("RewriteSystem")
            .field("name", &self.name)
            .field("rules", &self.rules.len())
            .finish()
    }
}

impl Clone for RewriteSystem {
    fn clone(&self) -> Self {
        RewriteSystem {
            name: self.name.clone(),
            order: self.order.clone(),
            rules: self.rules.clone(),
            central: self.central.clone(),
            budget: self.budget,
            cache: DashMap::new(),
            central_cache: DashMap::new(),
        }
    }
}

impl RewriteSystem {
    pub fn new(name: &str, order: WordOrder, rules: Vec<Rule>) -> Result<Self> {
        let mut map = BTreeMap::new();
        for r in rules {
            let lhs = r.lhs_word();
            for g in lhs.iter().copied().chain(r.rhs.generators()) {
                if !order.contains(g) {
                    return Err(Error::ForeignGenerator(g.name()));
                }
            }
            for (w, _) in r.rhs.terms() {
                if order.cmp(w, &lhs) != Ordering::Less {
                    return Err(Error::NonDecreasingRule {
                        lhs: render_word(&lhs),
                        word: render_word(w),
                    });
                }
            }
            if map.insert(r.lhs, r.rhs).is_some() {
                return Err(Error::InvalidParameter(format!(
                    "duplicate rule for `{}`",
                    render_word(&lhs)
                )));
            }
        }
        Ok(RewriteSystem {
            name: name.to_string(),
            order,
            rules: map,
            central: None,
            budget: DEFAULT_BUDGET,
            cache: DashMap::new(),
            central_cache: DashMap::new(),
        })
    }

    /// Add a relation `a b → rhs` whose difference `ρ = ab − rhs` is
    /// central modulo the quadratic rules.
    ///
    /// A normal word containing `a` followed later by `b` is reduced by
    /// deleting that pair to get `w'`, inserting `ρ` where `a` stood, and
    /// solving for the leading word. The leading word of that product
    /// must be the original word with a unit coefficient; otherwise
    /// normalization fails.
    pub fn with_central_rule(mut self, rule: Rule) -> Result<Self> {
        let lhs = rule.lhs_word();
        for g in lhs.iter().copied().chain(rule.rhs.generators()) {
            if !self.order.contains(g) {
                return Err(Error::ForeignGenerator(g.name()));
            }
        }
        for (w, _) in rule.rhs.terms() {
            if self.order.cmp(w, &lhs) != Ordering::Less {
                return Err(Error::NonDecreasingRule { lhs: render_word(&lhs), word: render_word(w) });
            }
        }
        self.central = Some(rule);
        self.central_cache.clear();
        Ok(self)
    }

    pub fn central_rule(&self) -> Option<&Rule> {
        self.central.as_ref()
    }

    pub fn with_budget(mut self, budget: usize) -> Self {
        self.budget = budget;
        self.cache.clear();
        self.central_cache.clear();
        self
    }

    pub fn name(&self) -> &str {
        &self.name
    }

    pub fn order(&self) -> &WordOrder {
        &self.order
    }

    pub fn alphabet(&self) -> &[Gen] {
        self.order.alphabet()
    }

    /// Rules sorted by leading word in the system's order, the central
    /// rule included.
    pub fn rules(&self) -> Vec<Rule> {
        let mut v: Vec<Rule> = self
            .rules
            .iter()
            .map(|(l, r)| Rule::new(*l, r.clone()))
            .chain(self.central.clone())
            .collect();
        v.sort_by(|a, b| self.order.cmp(&a.lhs, &b.lhs));
        v
    }

    pub fn rule(&self, lhs: [Gen; 2]) -> Option<&NCPoly> {
        self.rules.get(&lhs)
    }

    pub fn is_normal_word(&self, w: &[Gen]) -> bool {
        w.windows(2).all(|p| !self.rules.contains_key(&[p[0], p[1]])) && self.central_split(w).is_none()
    }

    pub fn normalize(&self, e: &NCPoly) -> Result<NCPoly> {
        if let Some(g) = e.generators().find(|g| !self.order.contains(*g)) {
            return Err(Error::ForeignGenerator(g.name()));
        }
        let mut steps = 0usize;
        let mut out = NCPoly::zero();
        for (w, c) in e.terms() {
            let nf = self.nf_word(w, &mut steps, e)?;
            if self.central.is_none() {
                out += &nf.scale(c);
                continue;
            }
            for (u, d) in nf.terms() {
                let r = self.central_nf(u, &mut steps, e)?;
                out += &r.scale(&(c * d));
            }
        }
        Ok(out)
    }

    /// Normal form modulo the quadratic rules only.
    pub fn normalize_quadratic(&self, e: &NCPoly) -> Result<NCPoly> {
        let mut steps = 0usize;
        let mut out = NCPoly::zero();
        for (w, c) in e.terms() {
            out += &self.nf_word(w, &mut steps, e)?.scale(c);
        }
        Ok(out)
    }

    /// Positions of the last `a` and the first later `b` of the central
    /// leading word `ab`.
    fn central_split(&self, w: &[Gen]) -> Option<(usize, usize)> {
        let rule = self.central.as_ref()?;
        let [a, b] = rule.lhs;
        let first_b = w.iter().position(|g| *g == b)?;
        let pos_a = w[..first_b].iter().rposition(|g| *g == a)?;
        Some((pos_a, first_b))
    }

    fn central_nf(&self, w: &[Gen], steps: &mut usize, input: &NCPoly) -> Result<NCPoly> {
        let Some((ia, ib)) = self.central_split(w) else {
            return Ok(NCPoly::word(w.to_vec()));
        };
        if let Some(hit) = self.central_cache.get(w) {
            return Ok(hit.clone());
        }
        *steps += 1;
        if *steps > self.budget {
            return Err(Error::BudgetExceeded { budget: self.budget, input: input.to_string() });
        }
        let rule = self.central.as_ref().expect("central rule present");
        let rho = &rule.lhs_poly() - &rule.rhs;
        let prefix = NCPoly::word(w[..ia].to_vec());
        let mut rest = w[ia + 1..ib].to_vec();
        rest.extend_from_slice(&w[ib + 1..]);
        let product = prefix.mul_free(&rho).mul_free(&NCPoly::word(rest));
        let mut g = NCPoly::zero();
        for (u, c) in product.terms() {
            g += &self.nf_word(u, steps, input)?.scale(c);
        }
        let lead_ok = self.order.leading_word(&g).is_some_and(|l| l.as_slice() == w);
        let lc = g.coeff(w);
        let inv = match (lead_ok, lc.unit_inverse()) {
            (true, Some(inv)) => inv,
            _ => {
                return Err(Error::Verification(format!(
                    "central reduction of `{}` in {} does not isolate the word (leading term coefficient `{lc}`)",
                    render_word(w),
                    self.name
                )))
            }
        };
        let mut reduced = g.scale(&(-&inv));
        reduced.add_term(w.to_vec(), LaurentPoly::one());
        let mut out = NCPoly::zero();
        for (u, c) in reduced.terms() {
            out += &self.central_nf(u, steps, input)?.scale(c);
        }
        self.central_cache.insert(w.to_vec(), out.clone());
        Ok(out)
    }

    pub fn mul(&self, a: &NCPoly, b: &NCPoly) -> Result<NCPoly> {
        self.normalize(&a.mul_free(b))
    }

    pub fn mul_all(&self, factors: &[NCPoly]) -> Result<NCPoly> {
        let mut acc = NCPoly::one();
        for f in factors {
            acc = self.mul(&acc, f)?;
        }
        Ok(acc)
    }

    pub fn pow(&self, a: &NCPoly, e: u32) -> Result<NCPoly> {
        let mut acc = NCPoly::one();
        for _ in 0..e {
            acc = self.mul(&acc, a)?;
        }
        Ok(acc)
    }

    /// True iff `lhs - rhs` normalizes to zero.
    pub fn equal(&self, lhs: &NCPoly, rhs: &NCPoly) -> Result<bool> {
        Ok(self.normalize(&(lhs - rhs))?.is_zero())
    }

    fn nf_word(&self, w: &[Gen], steps: &mut usize, input: &NCPoly) -> Result<NCPoly> {
        let redex = w
            .windows(2)
            .position(|p| self.rules.contains_key(&[p[0], p[1]]));
        let Some(i) = redex else {
            return Ok(NCPoly::word(w.to_vec()));
        };
        if let Some(hit) = self.cache.get(w) {
            return Ok(hit.clone());
        }
        *steps += 1;
        if *steps > self.budget {
            return Err(Error::BudgetExceeded { budget: self.budget, input: input.to_string() });
        }
        let rhs = &self.rules[&[w[i], w[i + 1]]];
        let mut out = NCPoly::zero();
        for (rw, c) in rhs.terms() {
            let mut nw = Vec::with_capacity(w.len() + rw.len());
            nw.extend_from_slice(&w[..i]);
            nw.extend_from_slice(rw);
            nw.extend_from_slice(&w[i + 2..]);
            let sub = self.nf_word(&nw, steps, input)?;
            out += &sub.scale(c);
        }
        self.cache.insert(w.to_vec(), out.clone());
        Ok(out)
    }
}

/// Substitute the rules of a set into each other's right-hand sides
/// until no leading word remains, then sort by leading word.
pub fn interreduce(rules: Vec<Rule>, order: &WordOrder) -> Result<Vec<Rule>> {
    let mut map: BTreeMap<[Gen; 2], NCPoly> = BTreeMap::new();
    for r in rules {
        if map.insert(r.lhs, r.rhs).is_some() {
            return Err(Error::InvalidParameter(format!("duplicate rule for `{}`", render_word(&r.lhs))));
        }
    }
    let bound = map.len() + 1;
    for _ in 0..=bound {
        let mut changed = false;
        let snapshot = map.clone();
        for (lhs, rhs) in map.iter_mut() {
            let mut out = NCPoly::zero();
            for (w, c) in rhs.terms() {
                let hit = (w.len() == 2).then(|| [w[0], w[1]]).filter(|k| k != lhs);
                match hit.and_then(|k| snapshot.get(&k)) {
                    Some(sub) => {
                        out += &sub.scale(c);
                        changed = true;
                    }
                    None => out.add_term(w.clone(), c.clone()),
                }
            }
            *rhs = out;
        }
        if !changed {
            let mut v: Vec<Rule> = map.into_iter().map(|(l, r)| Rule::new(l, r)).collect();
            v.sort_by(|a, b| order.cmp(&a.lhs, &b.lhs));
            return Ok(v);
        }
    }
    Err(Error::InvalidParameter("rule set does not inter-reduce (cyclic leading words)".into()))
}

/// Scalar multiple of a single generator word, for building rule tables.
pub fn mono(c: LaurentPoly, w: &[Gen]) -> NCPoly {
    NCPoly::term(w.to_vec(), c)
}
