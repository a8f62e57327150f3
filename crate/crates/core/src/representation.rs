//! The `*`-representations of the 4-sphere on `ℓ²(ℕ²)`, truncated to a
//! rectangular window, and the index pairings.

use std::collections::BTreeMap;

use num_bigint::BigInt;
use num_traits::{One, Signed, ToPrimitive, Zero};
use serde::Serialize;

use crate::coeffring::{LaurentPoly, Rational};
use crate::error::{Error, Result};
use crate::ncalg::{Gen, NCPoly};
use crate::report::{run_check, CheckResult};
use crate::spheres::{closed_form, s4_identities};

pub const DEFAULT_TOL: f64 = 1e-12;
pub const PAIRING_TOL: f64 = 1e-9;

/// Basis `|m,n⟩`, `0 ≤ m < M`, `0 ≤ n < N`, enumerated with `m` outer.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub struct TruncatedBasis {
    pub m: usize,
    pub n: usize,
}

impl TruncatedBasis {
    pub fn new(m: usize, n: usize) -> Result<Self> {
        if m == 0 || n == 0 {
            return Err(Error::InvalidParameter("truncation sizes must be positive".into()));
        }
        Ok(TruncatedBasis { m, n })
    }

    pub fn dim(&self) -> usize {
        self.m * self.n
    }

    pub fn index(&self, m: usize, n: usize) -> usize {
        m * self.n + n
    }

    pub fn coords(&self, i: usize) -> (usize, usize) {
        (i / self.n, i % self.n)
    }

    /// Vectors from which no product of two generators leaves the window.
    pub fn interior(&self) -> impl Iterator<Item = (usize, usize)> + '_ {
        let (mm, nn) = (self.m.saturating_sub(2), self.n.saturating_sub(2));
        (0..mm).flat_map(move |m| (0..nn).map(move |n| (m, n)))
    }
}

/// Action of one generator on `|m,n⟩`: the target shift and the weight
/// `(1 - q^rad)^{1/2} q^exp`, with `rad = None` for no square root.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct Shift {
    pub dm: i64,
    pub dn: i64,
    pub rad: Option<i64>,
    pub exp: i64,
}

pub fn sigma_shift(g: Gen, m: usize, n: usize) -> Result<Shift> {
    let (m, n) = (m as i64, n as i64);
    Ok(match g {
        Gen::T => Shift { dm: 0, dn: 0, rad: None, exp: 2 * m + 4 * n + 4 },
        Gen::ABar => Shift { dm: 1, dn: 0, rad: Some(2 * m + 2), exp: m + 2 * n + 1 },
        Gen::A => Shift { dm: -1, dn: 0, rad: Some(2 * m), exp: m + 2 * n },
        Gen::B => Shift { dm: 0, dn: 1, rad: Some(4 * n + 4), exp: 2 * (m + n + 2) },
        Gen::BBar => Shift { dm: 0, dn: -1, rad: Some(4 * n), exp: 2 * (m + n + 1) },
        other => return Err(Error::ForeignGenerator(other.name().into())),
    })
}

fn target(tb: &TruncatedBasis, m: usize, n: usize, s: &Shift) -> Option<(usize, usize)> {
    let tm = m as i64 + s.dm;
    let tn = n as i64 + s.dn;
    (tm >= 0 && tn >= 0 && (tm as usize) < tb.m && (tn as usize) < tb.n).then(|| (tm as usize, tn as usize))
}

/// A weighted shift: at most one nonzero per column.
#[derive(Clone, Debug)]
pub struct SparseOp {
    pub cols: Vec<Option<(usize, f64)>>,
}

impl SparseOp {
    pub fn dim(&self) -> usize {
        self.cols.len()
    }

    pub fn apply(&self, v: &BTreeMap<usize, f64>) -> BTreeMap<usize, f64> {
        let mut out = BTreeMap::new();
        for (&j, &x) in v {
            if let Some((i, c)) = self.cols[j] {
                *out.entry(i).or_insert(0.0) += c * x;
            }
        }
        out
    }

    /// `⟨e_i, A e_j⟩`.
    pub fn entry(&self, i: usize, j: usize) -> f64 {
        match self.cols[j] {
            Some((k, c)) if k == i => c,
            _ => 0.0,
        }
    }

    pub fn diagonal_trace(&self) -> f64 {
        (0..self.dim()).map(|j| self.entry(j, j)).sum()
    }

    /// `Tr|A|` for a weighted shift.
    pub fn abs_trace(&self) -> f64 {
        self.cols.iter().flatten().map(|(_, c)| c.abs()).sum()
    }
}

#[derive(Clone, Debug)]
pub struct OperatorSet {
    pub q0: Rational,
    pub basis: TruncatedBasis,
    pub t: SparseOp,
    pub a: SparseOp,
    pub abar: SparseOp,
    pub b: SparseOp,
    pub bbar: SparseOp,
}

pub const S4_GENS: [Gen; 5] = [Gen::T, Gen::ABar, Gen::A, Gen::BBar, Gen::B];

impl OperatorSet {
    pub fn op(&self, g: Gen) -> Result<&SparseOp> {
        Ok(match g {
            Gen::T => &self.t,
            Gen::A => &self.a,
            Gen::ABar => &self.abar,
            Gen::B => &self.b,
            Gen::BBar => &self.bbar,
            other => return Err(Error::ForeignGenerator(other.name().into())),
        })
    }

    pub fn q0_f64(&self) -> f64 {
        self.q0.to_f64().unwrap_or(f64::NAN)
    }
}

fn check_q(q0: &Rational) -> Result<()> {
    if q0.is_positive() && q0 < &Rational::one() {
        Ok(())
    } else {
        Err(Error::InvalidParameter(format!("q0 = {q0} is not in (0, 1)")))
    }
}

/// Parse a decimal or fraction such as `0.5` or `1/3` into an exact rational.
pub fn parse_q(s: &str) -> Result<Rational> {
    let bad = || Error::InvalidParameter(format!("cannot read `{s}` as a number"));
    let s = s.trim();
    if let Some((n, d)) = s.split_once('/') {
        let n: BigInt = n.trim().parse().map_err(|_| bad())?;
        let d: BigInt = d.trim().parse().map_err(|_| bad())?;
        if d.is_zero() {
            return Err(bad());
        }
        return Ok(Rational::new(n, d));
    }
    let (int, frac) = s.split_once('.').unwrap_or((s, ""));
    if !frac.chars().all(|c| c.is_ascii_digit()) {
        return Err(bad());
    }
    let digits = format!("{int}{frac}");
    let num: BigInt = digits.parse().map_err(|_| bad())?;
    Ok(Rational::new(num, BigInt::from(10u32).pow(frac.len() as u32)))
}

fn fpow(q: f64, k: i64) -> f64 {
    q.powi(k as i32)
}

fn shift_weight_f64(q: f64, s: &Shift) -> f64 {
    let root = s.rad.map_or(1.0, |r| (1.0 - fpow(q, r)).max(0.0).sqrt());
    root * fpow(q, s.exp)
}

/// The representation σ on the window `M × N`.
pub fn build_sigma(q0: &Rational, m: usize, n: usize) -> Result<OperatorSet> {
    check_q(q0)?;
    let basis = TruncatedBasis::new(m, n)?;
    let qf = q0.to_f64().unwrap_or(f64::NAN);
    let build = |g: Gen| -> Result<SparseOp> {
        let mut cols = vec![None; basis.dim()];
        for (j, col) in cols.iter_mut().enumerate() {
            let (mm, nn) = basis.coords(j);
            let s = sigma_shift(g, mm, nn)?;
            let w = shift_weight_f64(qf, &s);
            if let Some((tm, tn)) = target(&basis, mm, nn, &s) {
                if w != 0.0 {
                    *col = Some((basis.index(tm, tn), w));
                }
            }
        }
        Ok(SparseOp { cols })
    };
    Ok(OperatorSet {
        q0: q0.clone(),
        basis,
        t: build(Gen::T)?,
        a: build(Gen::A)?,
        abar: build(Gen::ABar)?,
        b: build(Gen::B)?,
        bbar: build(Gen::BBar)?,
    })
}

/// The one-dimensional representation β: every generator acts by zero.
pub fn beta(x: &NCPoly) -> LaurentPoly {
    x.coeff(&[])
}

/// Apply a word (rightmost letter first) to a basis vector, numerically.
fn apply_word_f64(ops: &OperatorSet, w: &[Gen], j: usize) -> Result<Option<(usize, f64)>> {
    let mut cur = (j, 1.0);
    for &g in w.iter().rev() {
        match ops.op(g)?.cols[cur.0] {
            Some((i, c)) => cur = (i, cur.1 * c),
            None => return Ok(None),
        }
    }
    Ok(Some(cur))
}

#[derive(Clone, Debug, Serialize)]
pub struct RelationResidual {
    pub relation: String,
    pub max_residual: f64,
    pub worst: (usize, usize),
}

/// Max-norm residual of every 4-sphere relation on the interior.
pub fn verify_relations_numeric(ops: &OperatorSet) -> Result<Vec<RelationResidual>> {
    let q = ops.q0_f64();
    let mut out = Vec::new();
    for id in s4_identities() {
        let diff = id.diff();
        let terms: Vec<(Vec<Gen>, f64)> = diff
            .terms()
            .map(|(w, c)| Ok((w.clone(), c.eval_f64(q)?)))
            .collect::<Result<_>>()?;
        let mut worst = (0.0f64, (0, 0));
        for (m, n) in ops.basis.interior() {
            let j = ops.basis.index(m, n);
            let mut v: BTreeMap<usize, f64> = BTreeMap::new();
            for (w, c) in &terms {
                if let Some((i, x)) = apply_word_f64(ops, w, j)? {
                    *v.entry(i).or_insert(0.0) += c * x;
                }
            }
            let r = v.values().fold(0.0f64, |a, x| a.max(x.abs()));
            if r > worst.0 {
                worst = (r, (m, n));
            }
        }
        out.push(RelationResidual { relation: id.name.clone(), max_residual: worst.0, worst: worst.1 });
    }
    Ok(out)
}

/// `c √r` with `c, r` rational.
#[derive(Clone, Debug, PartialEq)]
pub struct Surd {
    pub c: Rational,
    pub r: Rational,
}

impl Surd {
    pub fn rational(c: Rational) -> Self {
        Surd { c, r: Rational::one() }
    }

    pub fn mul(&self, o: &Surd) -> Surd {
        Surd { c: &self.c * &o.c, r: &self.r * &o.r }
    }
}

fn rational_sqrt(x: &Rational) -> Option<Rational> {
    if x.is_negative() {
        return None;
    }
    let (n, d) = (x.numer(), x.denom());
    let (sn, sd) = (n.sqrt(), d.sqrt());
    (&sn * &sn == *n && &sd * &sd == *d).then(|| Rational::new(sn, sd))
}

/// A finite sum of surds, merged when radicands differ by a rational square.
///
/// Square roots of rationals that are pairwise independent modulo squares
/// are linearly independent over the rationals, so the sum is zero exactly
/// when every merged coefficient is.
#[derive(Clone, Debug, Default)]
pub struct SurdSum {
    terms: Vec<Surd>,
}

impl SurdSum {
    pub fn add(&mut self, s: Surd) {
        if s.c.is_zero() || s.r.is_zero() {
            return;
        }
        for t in &mut self.terms {
            if let Some(k) = rational_sqrt(&(&s.r / &t.r)) {
                t.c += &s.c * k;
                return;
            }
        }
        self.terms.push(s);
    }

    pub fn is_zero(&self) -> bool {
        self.terms.iter().all(|t| t.c.is_zero())
    }
}

fn shift_weight_exact(q: &Rational, s: &Shift) -> Surd {
    let qp = |k: i64| q.pow(k as i32);
    let r = s.rad.map_or(Rational::one(), |k| Rational::one() - qp(k));
    Surd { c: qp(s.exp), r }
}

fn apply_word_exact(q: &Rational, tb: &TruncatedBasis, w: &[Gen], m: usize, n: usize) -> Result<Option<(usize, usize, Surd)>> {
    let mut cur = (m, n, Surd::rational(Rational::one()));
    for &g in w.iter().rev() {
        let s = sigma_shift(g, cur.0, cur.1)?;
        match target(tb, cur.0, cur.1, &s) {
            Some((tm, tn)) => cur = (tm, tn, cur.2.mul(&shift_weight_exact(q, &s))),
            None => return Ok(None),
        }
    }
    Ok(Some(cur))
}

/// Relations whose interior residual is not exactly zero, evaluated with
/// rational `q0` and exact surd arithmetic.
pub fn verify_relations_exact(q0: &Rational, m: usize, n: usize) -> Result<Vec<(String, (usize, usize))>> {
    check_q(q0)?;
    let tb = TruncatedBasis::new(m, n)?;
    let mut bad = Vec::new();
    for id in s4_identities() {
        let diff = id.diff();
        let terms: Vec<(Vec<Gen>, Rational)> =
            diff.terms().map(|(w, c)| Ok((w.clone(), c.eval_exact(q0)?))).collect::<Result<_>>()?;
        'vecs: for (mm, nn) in tb.interior() {
            let mut acc: BTreeMap<(usize, usize), SurdSum> = BTreeMap::new();
            for (w, c) in &terms {
                if let Some((tm, tn, s)) = apply_word_exact(q0, &tb, w, mm, nn)? {
                    acc.entry((tm, tn)).or_default().add(s.mul(&Surd::rational(c.clone())));
                }
            }
            if acc.values().any(|s| !s.is_zero()) {
                bad.push((id.name.clone(), (mm, nn)));
                break 'vecs;
            }
        }
    }
    Ok(bad)
}

/// Pairs `(A, B)` that should be adjoint, with the first interior vector
/// where `⟨e_i, A e_j⟩ ≠ ⟨B e_i, e_j⟩`.
pub fn adjointness_failures(ops: &OperatorSet, tol: f64) -> Vec<(String, (usize, usize))> {
    let mut out = Vec::new();
    for (name, x, y) in [("a/ab", &ops.a, &ops.abar), ("b/bb", &ops.b, &ops.bbar), ("t/t", &ops.t, &ops.t)] {
        for (m, n) in ops.basis.interior() {
            let j = ops.basis.index(m, n);
            let ok = match x.cols[j] {
                Some((i, c)) => (y.entry(j, i) - c).abs() <= tol,
                None => true,
            };
            if !ok {
                out.push((name.to_string(), (m, n)));
                break;
            }
        }
    }
    out
}

/// Exact adjointness of the weights: `w_A(m,n) = w_B(target)` with both
/// weights compared as surds.
pub fn adjointness_exact(q0: &Rational, m: usize, n: usize) -> Result<bool> {
    let tb = TruncatedBasis::new(m, n)?;
    for (x, y) in [(Gen::A, Gen::ABar), (Gen::B, Gen::BBar)] {
        for (mm, nn) in tb.interior() {
            let s = sigma_shift(x, mm, nn)?;
            if let Some((tm, tn)) = target(&tb, mm, nn, &s) {
                let back = sigma_shift(y, tm, tn)?;
                if (back.dm, back.dn) != (-s.dm, -s.dn) {
                    return Ok(false);
                }
                let mut d = SurdSum::default();
                d.add(shift_weight_exact(q0, &s));
                let mut neg = shift_weight_exact(q0, &back);
                neg.c = -neg.c;
                d.add(neg);
                if !d.is_zero() {
                    return Ok(false);
                }
            }
        }
    }
    Ok(true)
}

#[derive(Clone, Debug, Serialize)]
pub struct TraceReport {
    pub q0: String,
    pub m: usize,
    pub n: usize,
    /// Exact truncated `Tr σ(t)`.
    pub trace_t: String,
    pub trace_t_f64: f64,
    pub truncated_closed_form: String,
    pub closed_form: f64,
    /// `|Tr(t) - closed form|`, exact then rounded.
    pub tail: f64,
    pub trace_abs_a: f64,
    pub bound_a: f64,
    pub trace_abs_b: f64,
    pub bound_b: f64,
}

/// Exact `Σ_{m<M, n<N} q^{2m+4n+4}`.
pub fn trace_t_exact(q0: &Rational, m: usize, n: usize) -> Rational {
    let mut acc = Rational::zero();
    for i in 0..m {
        for j in 0..n {
            acc += q0.pow((2 * i + 4 * j + 4) as i32);
        }
    }
    acc
}

pub fn trace_closed_form(q0: &Rational) -> Rational {
    let one = Rational::one();
    q0.pow(4) / ((&one - q0.pow(2)) * (&one - q0.pow(4)))
}

pub fn trace_report(ops: &OperatorSet) -> TraceReport {
    let q = &ops.q0;
    let (m, n) = (ops.basis.m, ops.basis.n);
    let one = Rational::one();
    let tr = trace_t_exact(q, m, n);
    let trunc = q.pow(4) * (&one - q.pow(2 * m as i32)) * (&one - q.pow(4 * n as i32))
        / ((&one - q.pow(2)) * (&one - q.pow(4)));
    let closed = trace_closed_form(q);
    let qf = ops.q0_f64();
    TraceReport {
        q0: q.to_string(),
        m,
        n,
        trace_t: tr.to_string(),
        trace_t_f64: tr.to_f64().unwrap_or(f64::NAN),
        truncated_closed_form: trunc.to_string(),
        closed_form: closed.to_f64().unwrap_or(f64::NAN),
        tail: (&closed - &tr).abs().to_f64().unwrap_or(f64::NAN),
        trace_abs_a: ops.a.abs_trace(),
        bound_a: qf / ((1.0 - qf) * (1.0 - qf * qf)),
        trace_abs_b: ops.b.abs_trace(),
        bound_b: qf.powi(4) / (1.0 - qf * qf).powi(2),
    }
}

/// `ch₀(p) = tr p` in the 4-sphere generators.
pub fn ch0() -> NCPoly {
    let p = closed_form();
    let mut acc = NCPoly::zero();
    for (i, row) in p.iter().enumerate() {
        acc += &row[i];
    }
    acc
}

/// `τ¹(x) = Tr(σ(x) - β(x))` on the truncated window, exactly.
///
/// Only diagonal words contribute to the trace; for the elements used here
/// these are powers of `t`.
pub fn tau1_exact(x: &NCPoly, q0: &Rational, m: usize, n: usize) -> Result<Rational> {
    let tb = TruncatedBasis::new(m, n)?;
    let mut acc = Rational::zero();
    for (w, c) in x.terms() {
        if w.is_empty() {
            continue;
        }
        let c = c.eval_exact(q0)?;
        for (mm, nn) in (0..m).flat_map(|i| (0..n).map(move |j| (i, j))) {
            if let Some((tm, tn, s)) = apply_word_exact(q0, &tb, w, mm, nn)? {
                if (tm, tn) == (mm, nn) {
                    let root = rational_sqrt(&s.r).ok_or_else(|| {
                        Error::Verification(format!("irrational diagonal entry for `{}`", crate::ncalg::render_word(w)))
                    })?;
                    acc += &c * &s.c * root;
                }
            }
        }
    }
    Ok(acc)
}

/// `τ⁰(x) = β(x)`.
pub fn tau0(x: &NCPoly) -> LaurentPoly {
    beta(x)
}

#[derive(Clone, Debug, Serialize)]
pub struct PairingReport {
    pub q0: String,
    pub m: usize,
    pub n: usize,
    pub trace_t: f64,
    pub closed_form: f64,
    pub ch0: String,
    pub pairing_exact: String,
    pub pairing_value: f64,
    pub tau0_value: String,
    pub trivial_pairing: String,
    pub truncation_error_bound: f64,
}

pub fn index_pairing(q0: &Rational, m: usize, n: usize) -> Result<PairingReport> {
    check_q(q0)?;
    let ch = ch0();
    let pairing = tau1_exact(&ch, q0, m, n)?;
    let trivial = tau1_exact(&NCPoly::one(), q0, m, n)?;
    let qf = q0.to_f64().unwrap_or(f64::NAN);
    Ok(PairingReport {
        q0: q0.to_string(),
        m,
        n,
        trace_t: trace_t_exact(q0, m, n).to_f64().unwrap_or(f64::NAN),
        closed_form: trace_closed_form(q0).to_f64().unwrap_or(f64::NAN),
        ch0: ch.to_string(),
        pairing_exact: pairing.to_string(),
        pairing_value: pairing.to_f64().unwrap_or(f64::NAN),
        tau0_value: tau0(&ch).to_string(),
        trivial_pairing: trivial.to_string(),
        truncation_error_bound: qf.powi(2 * m as i32) + qf.powi(4 * n as i32),
    })
}

/// All representation checks at `(q0, M, N)`.
pub fn verify_representation(q0: &Rational, m: usize, n: usize) -> Vec<CheckResult> {
    let mut out = Vec::new();
    let q = q0.clone();
    out.push(run_check("representation.relations_float", "σ satisfies the 4-sphere relations (float)", || {
        let ops = build_sigma(&q, m, n)?;
        let res = verify_relations_numeric(&ops)?;
        let worst = res.iter().max_by(|a, b| a.max_residual.total_cmp(&b.max_residual));
        Ok(match worst {
            None => (true, "0".into()),
            Some(w) => (
                w.max_residual < DEFAULT_TOL,
                format!("{:.3e} ({} at |{},{}>)", w.max_residual, w.relation, w.worst.0, w.worst.1),
            ),
        })
    }));
    out.push(run_check("representation.relations_exact", "σ satisfies the 4-sphere relations (exact)", || {
        let bad = verify_relations_exact(&q, m, n)?;
        Ok(match bad.first() {
            None => (true, "0".into()),
            Some((r, (a, b))) => (false, format!("{r} at |{a},{b}>")),
        })
    }));
    out.push(run_check("representation.beta", "β satisfies the 4-sphere relations", || {
        let bad: Vec<String> =
            s4_identities().iter().filter(|id| !beta(&id.diff()).is_zero()).map(|id| id.name.clone()).collect();
        Ok((bad.is_empty(), if bad.is_empty() { "0".into() } else { bad.join(", ") }))
    }));
    out.push(run_check("representation.adjoint", "σ is a *-representation on the interior", || {
        let ops = build_sigma(&q, m, n)?;
        let f = adjointness_failures(&ops, DEFAULT_TOL);
        let exact = adjointness_exact(&q, m, n)?;
        Ok((f.is_empty() && exact, if f.is_empty() { "0".into() } else { format!("{f:?}") }))
    }));
    out.push(run_check("representation.trace", "trace of σ(t) against its closed form", || {
        let ops = build_sigma(&q, m, n)?;
        let r = trace_report(&ops);
        let qf = ops.q0_f64();
        let ok = r.tail < qf.powi(2 * m as i32) * 10.0
            && r.trace_t == r.truncated_closed_form
            && r.trace_abs_a <= r.bound_a
            && r.trace_abs_b <= r.bound_b;
        Ok((ok, format!("tail {:.3e}, Tr|a| {:.6} <= {:.6}, Tr|b| {:.6} <= {:.6}", r.tail, r.trace_abs_a, r.bound_a, r.trace_abs_b, r.bound_b)))
    }));
    out.push(run_check("representation.pairing", "index pairing of p with the Fredholm module", || {
        let r = index_pairing(&q, m, n)?;
        let ok = (r.pairing_value + 1.0).abs() <= PAIRING_TOL && r.tau0_value == "2" && r.trivial_pairing == "0";
        Ok((ok, format!("pairing {:.15}, τ⁰ {}, trivial {}", r.pairing_value, r.tau0_value, r.trivial_pairing)))
    }));
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::coeffring::rat;
    use proptest::prelude::*;

    fn half() -> Rational {
        rat(1, 2)
    }

    #[test]
    fn basis_enumeration() {
        let tb = TruncatedBasis::new(3, 4).unwrap();
        let all: Vec<usize> = (0..3).flat_map(|m| (0..4).map(move |n| tb.index(m, n))).collect();
        assert_eq!(all, (0..12).collect::<Vec<_>>());
        assert_eq!(tb.coords(5), (1, 1));
    }

    #[test]
    fn sigma_examples() {
        let ops = build_sigma(&half(), 5, 5).unwrap();
        let q: f64 = 0.5;
        assert_eq!(ops.t.cols[0], Some((0, q.powi(4))));
        assert_eq!(ops.a.cols[0], None);
        let (i, c) = ops.b.cols[0].unwrap();
        assert_eq!(i, ops.basis.index(0, 1));
        assert!((c - (1.0 - q.powi(4)).sqrt() * q.powi(4)).abs() < 1e-15);
        assert_eq!(ops.bbar.cols[0], None);
    }

    #[test]
    fn rejects_bad_q() {
        assert!(build_sigma(&rat(1, 1), 3, 3).is_err());
        assert!(build_sigma(&rat(0, 1), 3, 3).is_err());
        assert!(build_sigma(&rat(-1, 2), 3, 3).is_err());
        assert!(build_sigma(&half(), 0, 3).is_err());
    }

    #[test]
    fn relations_hold() {
        let ops = build_sigma(&half(), 30, 30).unwrap();
        for r in verify_relations_numeric(&ops).unwrap() {
            assert!(r.max_residual < DEFAULT_TOL, "{r:?}");
        }
        assert!(verify_relations_exact(&half(), 12, 12).unwrap().is_empty());
    }

    #[test]
    fn wrong_weight_is_caught_exactly() {
        // b b̄ against the wrong power of q
        let q = half();
        let tb = TruncatedBasis::new(6, 6).unwrap();
        let s1 = apply_word_exact(&q, &tb, &[Gen::B, Gen::BBar], 2, 2).unwrap().unwrap();
        let s2 = apply_word_exact(&q, &tb, &[Gen::BBar, Gen::B], 2, 2).unwrap().unwrap();
        let mut d = SurdSum::default();
        d.add(s1.2.clone());
        d.add(Surd { c: -s2.2.c.clone(), r: s2.2.r.clone() });
        assert!(!d.is_zero());
    }

    #[test]
    fn surd_merging() {
        let mut s = SurdSum::default();
        s.add(Surd { c: rat(1, 1), r: rat(8, 1) });
        s.add(Surd { c: rat(-2, 1), r: rat(2, 1) });
        assert!(s.is_zero());
        let mut s = SurdSum::default();
        s.add(Surd { c: rat(1, 1), r: rat(2, 1) });
        s.add(Surd { c: rat(-1, 1), r: rat(3, 1) });
        assert!(!s.is_zero());
    }

    #[test]
    fn adjoint() {
        let ops = build_sigma(&half(), 10, 10).unwrap();
        assert!(adjointness_failures(&ops, DEFAULT_TOL).is_empty());
        assert!(adjointness_exact(&half(), 10, 10).unwrap());
    }

    #[test]
    fn recursion_in_n() {
        // a_{m,n+1} = q^2 a_{m,n}
        let ops = build_sigma(&half(), 6, 6).unwrap();
        for m in 1..6 {
            for n in 0..5 {
                let x = ops.a.cols[ops.basis.index(m, n)].unwrap().1;
                let y = ops.a.cols[ops.basis.index(m, n + 1)].unwrap().1;
                assert!((y - 0.25 * x).abs() < 1e-15);
            }
        }
    }

    #[test]
    fn single_vector_trace() {
        assert_eq!(trace_t_exact(&half(), 1, 1), rat(1, 16));
    }

    #[test]
    fn traces() {
        let ops = build_sigma(&half(), 30, 30).unwrap();
        let r = trace_report(&ops);
        assert!(r.tail < 0.5f64.powi(60) * 10.0);
        assert_eq!(r.trace_t, r.truncated_closed_form);
        assert!(r.trace_abs_a <= r.bound_a);
        assert!(r.trace_abs_b <= r.bound_b);
    }

    #[test]
    fn ch0_closed_form() {
        let want: NCPoly = "2 - q^-4*(1 - q^2)*(1 - q^4)*t".parse().unwrap();
        assert_eq!(ch0(), want);
    }

    #[test]
    fn pairing() {
        let r = index_pairing(&half(), 30, 30).unwrap();
        assert!((r.pairing_value + 1.0).abs() < PAIRING_TOL);
        assert!((r.pairing_value + 1.0).abs() <= r.truncation_error_bound);
        assert_eq!(r.tau0_value, "2");
        assert_eq!(r.trivial_pairing, "0");
        // truncated pairing is -(1 - q^{2M})(1 - q^{4N}) exactly
        let q = half();
        let want = -(Rational::one() - q.pow(60)) * (Rational::one() - q.pow(120));
        assert_eq!(r.pairing_exact, want.to_string());
    }

    #[test]
    fn parse_q_forms() {
        assert_eq!(parse_q("0.5").unwrap(), half());
        assert_eq!(parse_q("1/3").unwrap(), rat(1, 3));
        assert_eq!(parse_q(".25").unwrap(), rat(1, 4));
        assert!(parse_q("abc").is_err());
    }

    #[test]
    fn all_checks_pass() {
        for c in verify_representation(&half(), 30, 30) {
            assert!(c.passed(), "{}: {}", c.check_id, c.residual);
        }
    }

    proptest! {
        #[test]
        fn pairing_monotone(m in 1usize..12, n in 1usize..12) {
            let q = half();
            let a = tau1_exact(&ch0(), &q, m, n).unwrap();
            let b = tau1_exact(&ch0(), &q, m + 1, n).unwrap();
            let c = tau1_exact(&ch0(), &q, m, n + 1).unwrap();
            prop_assert!(b <= a && c <= a);
            prop_assert!(a >= rat(-1, 1));
            let bound = q.pow(2 * m as i32) + q.pow(4 * n as i32);
            prop_assert!((a + Rational::one()).abs() <= bound);
        }

        #[test]
        fn relations_at_random_rational_q(num in 1i64..20, den in 21i64..40) {
            let q = rat(num, den);
            prop_assert!(verify_relations_exact(&q, 6, 6).unwrap().is_empty());
        }
    }
}
