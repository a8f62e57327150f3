//! Suites for the R-matrix and the rewrite systems, and the aggregate run.

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;

use crate::classical::verify_classical;
use crate::coaction::{verify_bundle, SUq2};
use crate::coeffring::{LaurentPoly, Rational};
use crate::error::Result;
use crate::ncalg::{nc_star, Gen, NCPoly, RewriteSystem};
use crate::report::{run_check, CheckResult, Report};
use crate::representation::verify_representation;
use crate::rmatrix::{
    build_c, build_r, canonical, check_ybe, derive_relations, expected_nonzero_count, golden_relation_set, s7_system,
    Family, RelationSet,
};
use crate::spheres::{s4_system, verify_spheres};

/// Check ids making up each acceptance criterion.
pub const CRITERIA: [(u8, &[&str]); 11] = [
    (1, &["rmatrix.golden_xx", "rmatrix.golden_vv", "rmatrix.golden_xv"]),
    (2, &["rmatrix.ybe_n1", "rmatrix.ybe_n2"]),
    (
        3,
        &["spheres.projection_idempotent", "spheres.projection_selfadjoint", "spheres.trace", "spheres.quadratic"],
    ),
    (4, &["spheres.s4_relations"]),
    (5, &["spheres.naive_projection"]),
    (
        6,
        &[
            "coaction.well_defined",
            "coaction.coinvariance",
            "coaction.canonical_map",
            "coaction.strong_connection",
        ],
    ),
    (7, &["representation.pairing"]),
    (8, &["representation.trace"]),
    (9, &["representation.relations_float", "representation.relations_exact"]),
    (10, &["classical.chern"]),
    (
        11,
        &[
            "properties.associativity_s7",
            "properties.associativity_su2",
            "properties.associativity_s4",
            "properties.star_involution",
            "spheres.q_inverse_iso",
            "classical.su2_invariance",
        ],
    ),
];

#[derive(Clone, Debug)]
pub struct VerifyOptions {
    pub max_degree: usize,
    pub q0: Rational,
    pub m: usize,
    pub n: usize,
    pub samples: usize,
    pub fd_step: f64,
    pub seed: u64,
    pub triples: usize,
    /// Compare against a golden table with one coefficient altered.
    pub corrupt_fixture: bool,
}

impl Default for VerifyOptions {
    fn default() -> Self {
        VerifyOptions {
            max_degree: 2,
            q0: crate::coeffring::rat(1, 2),
            m: 30,
            n: 30,
            samples: 2_000_000,
            fd_step: 1e-4,
            seed: 42,
            triples: 1000,
            corrupt_fixture: false,
        }
    }
}

fn corrupt(mut set: RelationSet) -> RelationSet {
    if let Some(r) = set.rules.first_mut() {
        r.rhs = r.rhs.scale(&LaurentPoly::q_pow(1));
    }
    set
}

pub fn verify_rmatrix(corrupt_fixture: bool) -> Vec<CheckResult> {
    let mut out = Vec::new();
    for fam in [Family::XX, Family::VV, Family::XV] {
        let id = format!("rmatrix.golden_{}", fam.tag());
        out.push(run_check(&id, "derived relations equal the published tables", || {
            let derived = canonical(&derive_relations(2, fam)?, 2)?;
            let mut golden = golden_relation_set(fam)?;
            if corrupt_fixture && fam == Family::XX {
                golden = corrupt(golden);
            }
            let (d, g) = (derived.rendered(), golden.rendered());
            let first = d.iter().zip(&g).find(|(a, b)| a != b);
            Ok(match first {
                None if d.len() == g.len() => (true, format!("{} rules", d.len())),
                None => (false, format!("{} rules derived, {} expected", d.len(), g.len())),
                Some((a, b)) => (false, format!("{} -> {} vs {} -> {}", a.0, a.1, b.0, b.1)),
            })
        }));
    }
    for n in [1, 2] {
        out.push(run_check(&format!("rmatrix.ybe_n{n}"), "Yang-Baxter equation", || {
            let r = check_ybe(&build_r(n)?);
            Ok((r.holds, format!("{} differing components", r.differing.len())))
        }));
    }
    out.push(run_check("rmatrix.nonzero_count", "nonzero entries of R", || {
        let mut bad = Vec::new();
        for n in [1, 2, 3] {
            let got = build_r(n)?.nonzero_count();
            if got != expected_nonzero_count(n) {
                bad.push(format!("n = {n}: {got} vs {}", expected_nonzero_count(n)));
            }
        }
        Ok((bad.is_empty(), if bad.is_empty() { "0".into() } else { bad.join(", ") }))
    }));
    out.push(run_check("rmatrix.c_matrix", "C and its inverse", || {
        let ok = [1, 2, 3].iter().map(|&n| build_c(n).map(|c| c.is_inverse_pair())).collect::<Result<Vec<_>>>()?;
        Ok((ok.iter().all(|x| *x), "0".into()))
    }));
    out
}

/// A random normalized element of length ≤ `len` with up to two terms.
pub fn random_element(sys: &RewriteSystem, rng: &mut impl Rng, len: usize) -> Result<NCPoly> {
    let alpha = sys.alphabet();
    let mut p = NCPoly::zero();
    for _ in 0..rng.gen_range(1..=2) {
        let l = rng.gen_range(1..=len);
        let w: Vec<Gen> = (0..l).map(|_| alpha[rng.gen_range(0..alpha.len())]).collect();
        let c = LaurentPoly::mono(rng.gen_range(-3..=3i64).max(1), rng.gen_range(-2..=2));
        p.add_term(w, c);
    }
    sys.normalize(&p)
}

/// First triple `(a, b, c)` with `(ab)c ≠ a(bc)`, over `count` random triples.
pub fn associativity_failures(sys: &RewriteSystem, count: usize, seed: u64) -> Result<Option<String>> {
    let found: Vec<Option<String>> = (0..count)
        .into_par_iter()
        .map(|i| {
            let mut rng = ChaCha8Rng::seed_from_u64(seed.wrapping_mul(1_000_003).wrapping_add(i as u64));
            let a = random_element(sys, &mut rng, 2)?;
            let b = random_element(sys, &mut rng, 2)?;
            let c = random_element(sys, &mut rng, 2)?;
            let l = sys.mul(&sys.mul(&a, &b)?, &c)?;
            let r = sys.mul(&a, &sys.mul(&b, &c)?)?;
            Ok((l != r).then(|| format!("({a}) ({b}) ({c})")))
        })
        .collect::<Result<_>>()?;
    Ok(found.into_iter().flatten().next())
}

/// First element violating `x** = x` or `(xy)* = y* x*` in normal form.
pub fn star_failures(sys: &RewriteSystem, count: usize, seed: u64) -> Result<Option<String>> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    for _ in 0..count {
        let x = random_element(sys, &mut rng, 3)?;
        let y = random_element(sys, &mut rng, 3)?;
        if nc_star(&nc_star(&x)) != x {
            return Ok(Some(format!("{x}")));
        }
        let l = sys.normalize(&nc_star(&sys.mul(&x, &y)?))?;
        let r = sys.mul(&nc_star(&y), &nc_star(&x))?;
        if l != r {
            return Ok(Some(format!("({x}) ({y})")));
        }
    }
    Ok(None)
}

fn none_found(r: Option<String>, count: usize) -> (bool, String) {
    match r {
        None => (true, format!("0 of {count}")),
        Some(s) => (false, s),
    }
}

pub fn verify_properties(triples: usize, seed: u64) -> Vec<CheckResult> {
    let mut out = Vec::new();
    out.push(run_check("properties.associativity_s7", "(ab)c = a(bc) in the 7-sphere", || {
        Ok(none_found(associativity_failures(s7_system()?, triples, seed)?, triples))
    }));
    out.push(run_check("properties.associativity_su2", "(ab)c = a(bc) in SU_q(2)", || {
        Ok(none_found(associativity_failures(&SUq2::get()?.system, triples, seed)?, triples))
    }));
    out.push(run_check("properties.associativity_s4", "(ab)c = a(bc) in the abstract 4-sphere", || {
        Ok(none_found(associativity_failures(s4_system()?, triples, seed)?, triples))
    }));
    out.push(run_check("properties.star_involution", "the involution is an anti-automorphism", || {
        let n = 200;
        for sys in [s7_system()?, &SUq2::get()?.system, s4_system()?] {
            if let Some(s) = star_failures(sys, n, seed)? {
                return Ok((false, format!("{}: {s}", sys.name())));
            }
        }
        Ok((true, format!("0 of {n} per algebra")))
    }));
    out
}

pub fn verify_all(opts: &VerifyOptions) -> Report {
    let mut checks = verify_rmatrix(opts.corrupt_fixture);
    checks.extend(verify_properties(opts.triples, opts.seed));
    checks.extend(verify_spheres());
    checks.extend(verify_bundle(opts.max_degree));
    checks.extend(verify_representation(&opts.q0, opts.m, opts.n));
    checks.extend(verify_classical(opts.samples, opts.fd_step, opts.seed));
    Report::new(checks)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn rmatrix_suite() {
        for c in verify_rmatrix(false) {
            assert!(c.passed(), "{}: {}", c.check_id, c.residual);
        }
    }

    #[test]
    fn corrupted_fixture_is_named() {
        let failed: Vec<String> =
            verify_rmatrix(true).into_iter().filter(|c| !c.passed()).map(|c| c.check_id).collect();
        assert_eq!(failed, vec!["rmatrix.golden_xx".to_string()]);
    }

    #[test]
    fn property_suite() {
        for c in verify_properties(1000, 42) {
            assert!(c.passed(), "{}: {}", c.check_id, c.residual);
        }
    }

    #[test]
    fn criteria_ids_are_unique() {
        let mut all: Vec<&str> = CRITERIA.iter().flat_map(|(_, ids)| ids.iter().copied()).collect();
        let n = all.len();
        all.sort();
        all.dedup();
        assert_eq!(all.len(), n);
    }
}
