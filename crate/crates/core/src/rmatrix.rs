//! The C-series R-matrix, the C-matrix, the Yang-Baxter check, and the
//! quadratic relations of the symplectic quantum spheres derived from
//! contracted RTT identities.

use std::collections::{BTreeMap, BTreeSet};
use std::fmt;
use std::sync::OnceLock;

use serde::Serialize;

use crate::coeffring::LaurentPoly;
use crate::error::{Error, Result};
use crate::linsolve::{rref, RatFunc};
use crate::ncalg::{interreduce, render_word, Gen, NCPoly, RewriteSystem, Rule, Word, WordOrder};
use crate::parse::parse_identity;

/// Index data of the symplectic series for `N = 2n`.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct SymplecticData {
    pub n: usize,
}

impl SymplecticData {
    pub fn new(n: usize) -> Result<Self> {
        if n == 0 || 2 * n > u8::MAX as usize {
            return Err(Error::InvalidParameter(format!("n must be in 1..=127, got {n}")));
        }
        Ok(SymplecticData { n })
    }

    pub fn dim(&self) -> usize {
        2 * self.n
    }

    /// `i' = N + 1 - i`.
    pub fn prime(&self, i: usize) -> usize {
        self.dim() + 1 - i
    }

    pub fn eps(&self, i: usize) -> i64 {
        if i <= self.n {
            1
        } else {
            -1
        }
    }

    pub fn rho(&self, i: usize) -> i32 {
        let n = self.n as i32;
        let i = i as i32;
        if i <= n {
            n + 1 - i
        } else {
            n - i
        }
    }

    pub fn indices(&self) -> std::ops::RangeInclusive<usize> {
        1..=self.dim()
    }
}

/// Which tensor leg of `e_a^b ⊗ e_c^d` feeds which slot of `R_{ij}^{kl}`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Default)]
pub enum LegConvention {
    /// `e_a^b ⊗ e_c^d` contributes to `R_{ac}^{bd}`.
    #[default]
    Standard,
    /// The transpose: `e_a^b ⊗ e_c^d` contributes to `R_{bd}^{ac}`.
    Transposed,
}

/// Sparse `R_{ij}^{kl}`, indices 1-based.
#[derive(Clone, Debug, PartialEq)]
pub struct RMatrix {
    pub data: SymplecticData,
    entries: BTreeMap<(usize, usize, usize, usize), LaurentPoly>,
}

impl RMatrix {
    pub fn get(&self, i: usize, j: usize, k: usize, l: usize) -> LaurentPoly {
        self.entries.get(&(i, j, k, l)).cloned().unwrap_or_default()
    }

    pub fn set(&mut self, i: usize, j: usize, k: usize, l: usize, v: LaurentPoly) {
        if v.is_zero() {
            self.entries.remove(&(i, j, k, l));
        } else {
            self.entries.insert((i, j, k, l), v);
        }
    }

    pub fn entries(&self) -> impl Iterator<Item = (&(usize, usize, usize, usize), &LaurentPoly)> {
        self.entries.iter()
    }

    pub fn nonzero_count(&self) -> usize {
        self.entries.len()
    }

    fn add(&mut self, key: (usize, usize, usize, usize), v: LaurentPoly) {
        let e = self.entries.entry(key).or_default();
        *e += &v;
        if e.is_zero() {
            self.entries.remove(&key);
        }
    }
}

/// Number of nonzero entries predicted by the five sums: `N` diagonal,
/// `N(N-2)` unit, `N` of `q⁻¹`, `N(N-1)/2` swap terms and `N(N-1)/2`
/// correction terms, of which `n` land on the `q⁻¹` positions already
/// counted in the swap family.
pub fn expected_nonzero_count(n: usize) -> usize {
    let big = 2 * n;
    big + big * (big - 2) + big + big * (big - 1) / 2 + big * (big - 1) / 2 - n
}

pub fn build_r(n: usize) -> Result<RMatrix> {
    build_r_with(n, LegConvention::Standard)
}

pub fn build_r_with(n: usize, conv: LegConvention) -> Result<RMatrix> {
    let d = SymplecticData::new(n)?;
    let mut r = RMatrix { data: d, entries: BTreeMap::new() };
    let qmq = &LaurentPoly::q_pow(1) - &LaurentPoly::q_pow(-1);
    let mut put = |a: usize, b: usize, c: usize, e: usize, v: LaurentPoly| {
        let key = match conv {
            LegConvention::Standard => (a, c, b, e),
            LegConvention::Transposed => (b, e, a, c),
        };
        r.add(key, v);
    };
    for i in d.indices() {
        put(i, i, i, i, LaurentPoly::q_pow(1));
        put(d.prime(i), d.prime(i), i, i, LaurentPoly::q_pow(-1));
        for j in d.indices() {
            if i != j && i != d.prime(j) {
                put(i, i, j, j, LaurentPoly::one());
            }
            if i > j {
                put(i, j, j, i, qmq.clone());
                let c = LaurentPoly::mono(-d.eps(i) * d.eps(j), d.rho(i) - d.rho(j));
                put(i, j, d.prime(i), d.prime(j), &qmq * &c);
            }
        }
    }
    Ok(r)
}

/// `C_i^j = q^{ρ_j} ε_i δ_{i j'}` together with its inverse.
#[derive(Clone, Debug, PartialEq)]
pub struct CMatrix {
    pub entries: Vec<Vec<LaurentPoly>>,
    pub inverse: Vec<Vec<LaurentPoly>>,
}

impl CMatrix {
    /// `C_i^j` with 1-based indices.
    pub fn get(&self, i: usize, j: usize) -> &LaurentPoly {
        &self.entries[i - 1][j - 1]
    }

    pub fn is_inverse_pair(&self) -> bool {
        let n = self.entries.len();
        (0..n).all(|i| {
            (0..n).all(|j| {
                let mut s = LaurentPoly::zero();
                for k in 0..n {
                    s += &(&self.entries[i][k] * &self.inverse[k][j]);
                }
                if i == j {
                    s.is_one()
                } else {
                    s.is_zero()
                }
            })
        })
    }
}

pub fn build_c(n: usize) -> Result<CMatrix> {
    let d = SymplecticData::new(n)?;
    let big = d.dim();
    let mut c = vec![vec![LaurentPoly::zero(); big]; big];
    let mut inv = vec![vec![LaurentPoly::zero(); big]; big];
    for i in d.indices() {
        let j = d.prime(i);
        c[i - 1][j - 1] = LaurentPoly::mono(d.eps(i), d.rho(j));
        inv[j - 1][i - 1] = LaurentPoly::mono(d.eps(i), -d.rho(j));
    }
    Ok(CMatrix { entries: c, inverse: inv })
}

#[derive(Clone, Debug, Serialize)]
pub struct YbeReport {
    pub holds: bool,
    /// `((i,j,m),(k,l,n), lhs - rhs)` for each differing component.
    pub differing: Vec<((usize, usize, usize), (usize, usize, usize), String)>,
}

type Sparse = Vec<BTreeMap<usize, LaurentPoly>>;

fn sparse_mul(a: &Sparse, b: &Sparse) -> Sparse {
    a.iter()
        .map(|row| {
            let mut out: BTreeMap<usize, LaurentPoly> = BTreeMap::new();
            for (k, av) in row {
                for (j, bv) in &b[*k] {
                    let e = out.entry(*j).or_default();
                    *e += &(av * bv);
                }
            }
            out.retain(|_, v| !v.is_zero());
            out
        })
        .collect()
}

/// Exact check of `R₁₂R₁₃R₂₃ = R₂₃R₁₃R₁₂` on `V^{⊗3}`.
pub fn check_ybe(r: &RMatrix) -> YbeReport {
    let big = r.data.dim();
    let idx = |a: usize, b: usize, c: usize| ((a - 1) * big + (b - 1)) * big + (c - 1);
    let size = big * big * big;
    let mut r12: Sparse = vec![BTreeMap::new(); size];
    let mut r13: Sparse = vec![BTreeMap::new(); size];
    let mut r23: Sparse = vec![BTreeMap::new(); size];
    for (&(i, j, k, l), v) in r.entries() {
        for m in 1..=big {
            r12[idx(i, j, m)].insert(idx(k, l, m), v.clone());
            r13[idx(i, m, j)].insert(idx(k, m, l), v.clone());
            r23[idx(m, i, j)].insert(idx(m, k, l), v.clone());
        }
    }
    let lhs = sparse_mul(&sparse_mul(&r12, &r13), &r23);
    let rhs = sparse_mul(&sparse_mul(&r23, &r13), &r12);
    let unpack = |x: usize| (x / (big * big) + 1, (x / big) % big + 1, x % big + 1);
    let mut differing = Vec::new();
    for row in 0..size {
        let cols: BTreeSet<usize> = lhs[row].keys().chain(rhs[row].keys()).copied().collect();
        for c in cols {
            let a = lhs[row].get(&c).cloned().unwrap_or_default();
            let b = rhs[row].get(&c).cloned().unwrap_or_default();
            if a != b {
                differing.push((unpack(row), unpack(c), (&a - &b).to_string()));
            }
        }
    }
    YbeReport { holds: differing.is_empty(), differing }
}

/// Families of quadratic relations.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize)]
pub enum Family {
    XX,
    VV,
    XV,
    Sphere,
}

impl Family {
    pub fn tag(self) -> &'static str {
        match self {
            Family::XX => "xx",
            Family::VV => "vv",
            Family::XV => "xv",
            Family::Sphere => "sphere",
        }
    }
}

impl std::str::FromStr for Family {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        match s.to_ascii_lowercase().as_str() {
            "xx" => Ok(Family::XX),
            "vv" => Ok(Family::VV),
            "xv" => Ok(Family::XV),
            "sphere" => Ok(Family::Sphere),
            _ => Err(Error::InvalidParameter(format!("unknown relation family `{s}`"))),
        }
    }
}

#[derive(Clone, PartialEq)]
pub struct RelationSet {
    pub family: Family,
    pub rules: Vec<Rule>,
}

impl RelationSet {
    pub fn rendered(&self) -> Vec<(String, String)> {
        self.rules.iter().map(|r| (render_word(&r.lhs), r.rhs.to_string())).collect()
    }
}

impl fmt::Debug for RelationSet {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("RelationSet").field("family", &self.family).field("rules", &self.rules).finish()
    }
}

/// `x̄¹ < … < x̄ᴺ < x₁ < … < x_N`, graded by length.
pub fn s7_order(n: usize) -> WordOrder {
    let big = 2 * n as u8;
    let gens: Vec<Gen> = (1..=big).map(Gen::XB).chain((1..=big).map(Gen::X)).collect();
    WordOrder::graded_lex(&gens)
}

fn x(i: usize) -> Gen {
    Gen::X(i as u8)
}

fn xb(i: usize) -> Gen {
    Gen::XB(i as u8)
}

/// Linear relations among quadratic words.
struct QuadSystem {
    equations: Vec<((usize, usize), BTreeMap<Word, LaurentPoly>)>,
}

impl QuadSystem {
    fn new() -> Self {
        QuadSystem { equations: Vec::new() }
    }

    fn push(&mut self, pair: (usize, usize), terms: Vec<(Word, LaurentPoly)>) {
        let mut m: BTreeMap<Word, LaurentPoly> = BTreeMap::new();
        for (w, c) in terms {
            *m.entry(w).or_default() += &c;
        }
        m.retain(|_, c| !c.is_zero());
        self.equations.push((pair, m));
    }

    /// Solve for the `leading` words in terms of the others.
    fn solve(&self, leading: &[Word], order: &WordOrder) -> Result<Vec<Rule>> {
        let lead_set: BTreeSet<&Word> = leading.iter().collect();
        let mut others: BTreeSet<Word> = BTreeSet::new();
        for (_, eq) in &self.equations {
            for w in eq.keys() {
                if !lead_set.contains(w) {
                    others.insert(w.clone());
                }
            }
        }
        let mut cols: Vec<Word> = leading.to_vec();
        cols.sort_by(|a, b| order.cmp(b, a));
        let mut rest: Vec<Word> = others.into_iter().collect();
        rest.sort_by(|a, b| order.cmp(b, a));
        cols.extend(rest);
        let col_of: BTreeMap<&Word, usize> = cols.iter().enumerate().map(|(i, w)| (w, i)).collect();

        let mut rows: Vec<Vec<RatFunc>> = self
            .equations
            .iter()
            .map(|(_, eq)| {
                let mut row = vec![RatFunc::zero(); cols.len()];
                for (w, c) in eq {
                    row[col_of[w]] = RatFunc::from_poly(c.clone());
                }
                row
            })
            .collect();
        let pivots = rref(&mut rows);

        let word_pair = |w: &Word| -> (usize, usize) {
            let ix = |g: Gen| match g {
                Gen::X(i) | Gen::XB(i) => i as usize,
                _ => 0,
            };
            (ix(w[0]), ix(w[1]))
        };
        for &p in &pivots {
            if p >= leading.len() {
                return Err(Error::Inconsistent {
                    pair: word_pair(&cols[p]),
                    detail: format!(
                        "relations force a linear dependency among normal words, with pivot `{}`",
                        render_word(&cols[p])
                    ),
                });
            }
        }
        if pivots.len() < leading.len() {
            let solved: BTreeSet<usize> = pivots.iter().copied().collect();
            let missing = (0..leading.len()).find(|c| !solved.contains(c)).expect("missing pivot");
            return Err(Error::Inconsistent {
                pair: word_pair(&cols[missing]),
                detail: format!("no relation determines `{}`", render_word(&cols[missing])),
            });
        }
        let mut rules = Vec::new();
        for (row, &p) in rows.iter().zip(&pivots) {
            let mut rhs = NCPoly::zero();
            for (c, v) in row.iter().enumerate() {
                if c == p || v.is_zero() {
                    continue;
                }
                let lp = v.to_laurent().ok_or_else(|| Error::Inconsistent {
                    pair: word_pair(&cols[p]),
                    detail: format!("coefficient {v:?} of `{}` is not a Laurent polynomial", render_word(&cols[c])),
                })?;
                rhs.add_term(cols[c].clone(), -lp);
            }
            let lead = &cols[p];
            rules.push(Rule::new([lead[0], lead[1]], rhs));
        }
        rules.sort_by(|a, b| order.cmp(&a.lhs, &b.lhs));
        Ok(rules)
    }
}

pub fn derive_relations(n: usize, family: Family) -> Result<RelationSet> {
    derive_relations_with(n, family, LegConvention::Standard)
}

pub fn derive_relations_with(n: usize, family: Family, conv: LegConvention) -> Result<RelationSet> {
    let r = build_r_with(n, conv)?;
    let d = r.data;
    let order = s7_order(n);
    let q = LaurentPoly::q_pow(1);
    let mut sys = QuadSystem::new();
    let mut leading = Vec::new();
    match family {
        Family::XX => {
            for i in d.indices() {
                for j in d.indices() {
                    let mut terms = vec![(vec![x(j), x(i)], -q.clone())];
                    for k in d.indices() {
                        for p in d.indices() {
                            terms.push((vec![x(k), x(p)], r.get(i, j, k, p)));
                        }
                    }
                    sys.push((i, j), terms);
                    if i < j {
                        leading.push(vec![x(j), x(i)]);
                    }
                }
            }
        }
        Family::VV => {
            for i in d.indices() {
                for j in d.indices() {
                    let mut terms = vec![(vec![xb(i), xb(j)], -q.clone())];
                    for l in d.indices() {
                        for k in d.indices() {
                            terms.push((vec![xb(l), xb(k)], r.get(l, k, j, i)));
                        }
                    }
                    sys.push((i, j), terms);
                    if i < j {
                        leading.push(vec![xb(j), xb(i)]);
                    }
                }
            }
        }
        Family::XV => {
            for i in d.indices() {
                for p in d.indices() {
                    let mut terms = vec![(vec![x(i), xb(p)], q.clone())];
                    for j in d.indices() {
                        for k in d.indices() {
                            terms.push((vec![xb(j), x(k)], -r.get(i, j, k, p)));
                        }
                    }
                    sys.push((i, p), terms);
                    leading.push(vec![x(i), xb(p)]);
                }
            }
        }
        Family::Sphere => {
            return Ok(RelationSet { family, rules: vec![sphere_rule(n)] });
        }
    }
    let rules = sys.solve(&leading, &order)?;
    Ok(RelationSet { family, rules })
}

/// `x̄ᴺ x_N → 1 − Σ_{i<N} x̄ⁱ x_i`.
pub fn sphere_rule(n: usize) -> Rule {
    let big = 2 * n;
    let mut rhs = NCPoly::one();
    for i in 1..big {
        rhs.add_term(vec![xb(i), x(i)], -LaurentPoly::one());
    }
    Rule::new([xb(big), x(big)], rhs)
}

/// The quadratic relation tables of the 7-sphere, written as identities.
pub fn golden_fixtures(family: Family) -> &'static [&'static str] {
    match family {
        Family::XX => &[
            "x1*x2 = q*x2*x1",
            "x1*x3 = q*x3*x1",
            "x2*x4 = q*x4*x2",
            "x3*x4 = q*x4*x3",
            "x4*x1 = q^-2*x1*x4",
            "x3*x2 = q^-2*x2*x3 + q^-2*(q^-1 - q)*x1*x4",
        ],
        Family::VV => &[
            "xb1*xb2 = q^-1*xb2*xb1",
            "xb1*xb3 = q^-1*xb3*xb1",
            "xb2*xb4 = q^-1*xb4*xb2",
            "xb3*xb4 = q^-1*xb4*xb3",
            "xb4*xb1 = q^2*xb1*xb4",
            "xb3*xb2 = q^2*xb2*xb3 + (q^2 - 1)*q^-1*xb4*xb1",
        ],
        Family::XV => &[
            "x1*xb1 = xb1*x1",
            "x1*xb2 = q^-1*xb2*x1",
            "x1*xb3 = q^-1*xb3*x1",
            "x1*xb4 = q^-2*xb4*x1",
            "x2*xb2 = xb2*x2 + (1 - q^-2)*xb1*x1",
            "x2*xb3 = q^-2*xb3*x2",
            "x2*xb4 = q^-1*xb4*x2 + q^-1*(q^-2 - 1)*xb3*x1",
            "x3*xb3 = xb3*x3 + (1 - q^-2)*(xb1*x1 + (1 + q^-2)*xb2*x2)",
            "x3*xb4 = q^-1*xb4*x3 + (1 - q^-2)*q^-3*xb2*x1",
            "x4*xb4 = xb4*x4 + (1 - q^-2)*((1 + q^-4)*xb1*x1 + xb2*x2 + xb3*x3)",
        ],
        Family::Sphere => &["xb1*x1 + xb2*x2 + xb3*x3 + xb4*x4 = 1"],
    }
}

/// Words solved for by the relations of a family.
pub fn is_leading_word(family: Family, w: &[Gen]) -> bool {
    match (family, w) {
        (Family::XX, [Gen::X(j), Gen::X(i)]) => j > i,
        (Family::VV, [Gen::XB(j), Gen::XB(i)]) => j > i,
        (Family::XV, [Gen::X(_), Gen::XB(_)]) => true,
        (Family::Sphere, [Gen::XB(i), Gen::X(j)]) => i == j,
        _ => false,
    }
}

/// Orient a table identity at a leading word of its family with a unit
/// coefficient, preferring the word written on the left.
pub fn orient_fixture(family: Family, lhs: &NCPoly, rhs: &NCPoly, order: &WordOrder) -> Result<Rule> {
    let diff = lhs - rhs;
    let usable = |w: &Word| is_leading_word(family, w) && diff.coeff(w).is_unit();
    let written = lhs.terms().map(|(w, _)| w).find(|w| lhs.len() == 1 && usable(w));
    let lead = written
        .or_else(|| diff.terms().map(|(w, _)| w).filter(|w| usable(w)).max_by(|a, b| order.cmp(a, b)))
        .ok_or_else(|| Error::InvalidParameter(format!("no leading word in `{lhs} = {rhs}`")))?
        .clone();
    Rule::orient_at(&diff, &lead)
}

/// Canonical rule set of the golden tables, closing the mixed table
/// under conjugation.
pub fn golden_relation_set(family: Family) -> Result<RelationSet> {
    let order = s7_order(2);
    let mut rules = Vec::new();
    let mut seen = BTreeSet::new();
    for s in golden_fixtures(family) {
        let (l, r) = parse_identity(s)?;
        let mut ids = vec![(l.clone(), r.clone())];
        if family == Family::XV {
            ids.push((l.star(), r.star()));
        }
        for (l, r) in ids {
            let rule = orient_fixture(family, &l, &r, &order)?;
            if seen.insert(rule.lhs) {
                rules.push(rule);
            }
        }
    }
    Ok(RelationSet { family, rules: interreduce(rules, &order)? })
}

/// Canonicalize a derived set the same way as the golden one.
pub fn canonical(set: &RelationSet, n: usize) -> Result<RelationSet> {
    Ok(RelationSet { family: set.family, rules: interreduce(set.rules.clone(), &s7_order(n))? })
}

/// The rewrite system of the quantum sphere `S^{4n-1}_q` built from the
/// derived relations plus the sphere rule.
pub fn build_sphere_system(n: usize) -> Result<RewriteSystem> {
    let mut rules = Vec::new();
    for fam in [Family::XX, Family::VV, Family::XV] {
        rules.extend(derive_relations(n, fam)?.rules);
    }
    RewriteSystem::new(&format!("S{}_q", 4 * n - 1), s7_order(n), rules)?.with_central_rule(sphere_rule(n))
}

/// The 7-sphere system, built once.
pub fn s7_system() -> Result<&'static RewriteSystem> {
    static SYS: OnceLock<Result<RewriteSystem>> = OnceLock::new();
    SYS.get_or_init(|| build_sphere_system(2)).as_ref().map_err(Clone::clone)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::coeffring::rat;

    fn lp(s: &str) -> LaurentPoly {
        s.parse().unwrap()
    }

    #[test]
    fn symplectic_data() {
        let d = SymplecticData::new(2).unwrap();
        let rho: Vec<i32> = d.indices().map(|i| d.rho(i)).collect();
        assert_eq!(rho, vec![2, 1, -1, -2]);
        assert!(d.indices().all(|i| d.prime(d.prime(i)) == i));
        assert_eq!(d.indices().map(|i| d.eps(i)).collect::<Vec<_>>(), vec![1, 1, -1, -1]);
        assert!(SymplecticData::new(0).is_err());
    }

    #[test]
    fn r_entries() {
        let r = build_r(2).unwrap();
        assert_eq!(r.get(4, 4, 4, 4), lp("q"));
        assert_eq!(r.get(1, 2, 1, 2), lp("1"));
        assert_eq!(r.get(4, 1, 4, 1), lp("q^-1"));
        // swap term and correction overlap at i = 4, j = 1
        assert_eq!(r.get(4, 1, 1, 4), lp("q - q^-1 + (q - q^-1)*q^-4"));
    }

    #[test]
    fn support_matches_count() {
        for n in 1..=3 {
            assert_eq!(build_r(n).unwrap().nonzero_count(), expected_nonzero_count(n), "n = {n}");
        }
        assert_eq!(expected_nonzero_count(2), 26);
    }

    #[test]
    fn c_matrix() {
        let c = build_c(2).unwrap();
        assert_eq!(c.get(1, 4), &lp("q^-2"));
        assert!(c.get(1, 1).is_zero());
        assert!(c.is_inverse_pair());
        let c1 = build_c(1).unwrap();
        assert_eq!(c1.entries, vec![vec![lp("0"), lp("q^-1")], vec![lp("-q"), lp("0")]]);
        for i in 1..=4 {
            for j in 1..=4 {
                assert_eq!(c.get(i, j).is_zero(), j != 5 - i);
            }
        }
    }

    #[test]
    fn ybe_holds_and_control_fails() {
        assert!(check_ybe(&build_r(1).unwrap()).holds);
        let r2 = build_r(2).unwrap();
        assert!(check_ybe(&r2).holds);
        let mut bad = r2.clone();
        bad.set(4, 4, 4, 4, LaurentPoly::zero());
        let rep = check_ybe(&bad);
        assert!(!rep.holds);
        assert!(!rep.differing.is_empty());
    }

    #[test]
    fn transposed_convention_satisfies_ybe() {
        assert!(check_ybe(&build_r_with(2, LegConvention::Transposed).unwrap()).holds);
    }

    #[test]
    fn derived_examples() {
        let xx = derive_relations(2, Family::XX).unwrap();
        let r = xx.rules.iter().find(|r| r.lhs == [Gen::X(3), Gen::X(2)]).unwrap();
        assert_eq!(r.rhs, "q^-2*x2*x3 + q^-2*(q^-1 - q)*x1*x4".parse().unwrap());
        let xv = derive_relations(2, Family::XV).unwrap();
        let r = xv.rules.iter().find(|r| r.lhs == [Gen::X(1), Gen::XB(4)]).unwrap();
        assert_eq!(r.rhs, "q^-2*xb4*x1".parse().unwrap());
        let vv = derive_relations(2, Family::VV).unwrap();
        let r = vv.rules.iter().find(|r| r.lhs == [Gen::XB(2), Gen::XB(1)]).unwrap();
        assert_eq!(r.rhs, "q*xb1*xb2".parse().unwrap());
    }

    #[test]
    fn family_sizes() {
        assert_eq!(derive_relations(2, Family::XX).unwrap().rules.len(), 6);
        assert_eq!(derive_relations(2, Family::VV).unwrap().rules.len(), 6);
        assert_eq!(derive_relations(2, Family::XV).unwrap().rules.len(), 16);
        assert_eq!(derive_relations(1, Family::XX).unwrap().rules.len(), 1);
    }

    #[test]
    fn matches_golden_tables() {
        for fam in [Family::XX, Family::VV, Family::XV] {
            let derived = canonical(&derive_relations(2, fam).unwrap(), 2).unwrap();
            let golden = golden_relation_set(fam).unwrap();
            assert_eq!(derived.rendered(), golden.rendered(), "{fam:?}");
        }
    }

    #[test]
    fn transposed_convention_misses_golden() {
        let ok = derive_relations_with(2, Family::XX, LegConvention::Transposed)
            .and_then(|s| canonical(&s, 2))
            .map(|s| s.rendered() == golden_relation_set(Family::XX).unwrap().rendered());
        assert!(!matches!(ok, Ok(true)));
    }

    #[test]
    fn conjugate_tables_agree() {
        let order = s7_order(2);
        let starred: Vec<Rule> = golden_fixtures(Family::XX)
            .iter()
            .map(|s| {
                let (l, r) = parse_identity(s).unwrap();
                orient_fixture(Family::VV, &l.star(), &r.star(), &order).unwrap()
            })
            .collect();
        let starred = interreduce(starred, &order).unwrap();
        let vv = golden_relation_set(Family::VV).unwrap();
        assert_eq!(starred, vv.rules);
    }

    #[test]
    fn q_one_degeneration() {
        let sys = s7_system().unwrap();
        let one = rat(1, 1);
        for r in sys.rules() {
            let at1 = r.rhs.map_coeffs(|c| LaurentPoly::constant(c.eval_exact(&one).unwrap()));
            if r.lhs == [Gen::XB(4), Gen::X(4)] {
                continue;
            }
            let swapped = NCPoly::word(vec![r.lhs[1], r.lhs[0]]);
            assert_eq!(at1, swapped, "{r}");
        }
    }
}
