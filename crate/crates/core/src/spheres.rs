//! The quantum 4- and 7-spheres: the isometry `v`, the projection `p = vv*`
//! and the relations of the 4-sphere generators.

use std::sync::OnceLock;

use crate::coeffring::{EvalPoint, LaurentPoly};
use crate::error::{Error, Result};
use crate::ncalg::{interreduce, Gen, NCPoly, RewriteSystem, Rule, WordOrder};
use crate::parse::{parse_expr, parse_identity};
use crate::report::{run_check, zero_residuals, CheckResult};
use crate::rmatrix::s7_system;

pub type Matrix = Vec<Vec<NCPoly>>;

fn e(s: &str) -> NCPoly {
    parse_expr(s).expect("static expression")
}

/// Entrywise `(m*)_{ij} = (m_{ji})*`.
pub fn mat_star(m: &Matrix) -> Matrix {
    let rows = m.len();
    let cols = m.first().map_or(0, Vec::len);
    (0..cols).map(|j| (0..rows).map(|i| m[i][j].star()).collect()).collect()
}

pub fn mat_mul(a: &Matrix, b: &Matrix, sys: &RewriteSystem) -> Result<Matrix> {
    let inner = b.len();
    let cols = b.first().map_or(0, Vec::len);
    a.iter()
        .map(|row| {
            (0..cols)
                .map(|j| {
                    let mut acc = NCPoly::zero();
                    for k in 0..inner {
                        acc += &row[k].mul_free(&b[k][j]);
                    }
                    sys.normalize(&acc)
                })
                .collect()
        })
        .collect()
}

pub fn mat_sub(a: &Matrix, b: &Matrix) -> Matrix {
    a.iter().zip(b).map(|(r, s)| r.iter().zip(s).map(|(x, y)| x - y).collect()).collect()
}

pub fn identity(n: usize) -> Matrix {
    (0..n)
        .map(|i| (0..n).map(|j| if i == j { NCPoly::one() } else { NCPoly::zero() }).collect())
        .collect()
}

/// First nonzero entry, 1-based.
pub fn first_nonzero(m: &Matrix) -> Option<(usize, usize, &NCPoly)> {
    m.iter()
        .enumerate()
        .flat_map(|(i, r)| r.iter().enumerate().map(move |(j, x)| (i + 1, j + 1, x)))
        .find(|(_, _, x)| !x.is_zero())
}

fn matrix_residual(m: &Matrix) -> (bool, String) {
    match first_nonzero(m) {
        None => (true, "0".into()),
        Some((i, j, x)) => (false, format!("({i},{j}): {x}")),
    }
}

/// The 4x2 matrix whose columns are the orthonormal vectors `φ1, φ2`.
#[derive(Clone, Debug)]
pub struct VMatrix {
    pub entries: Matrix,
}

pub fn v_entries() -> Matrix {
    [
        ["q^-3*x1", "q^-2*x2"],
        ["-q^-1*xb2", "q^-1*xb1"],
        ["q^-1*x3", "-x4"],
        ["-xb4", "-xb3"],
    ]
    .iter()
    .map(|r| r.iter().map(|s| e(s)).collect())
    .collect()
}

/// `v*v` reduced in the 7-sphere.
pub fn gram(v: &Matrix) -> Result<Matrix> {
    mat_mul(&mat_star(v), v, s7_system()?)
}

/// Build `v` and certify `v*v = 1`.
pub fn build_v() -> Result<VMatrix> {
    let entries = v_entries();
    let res = mat_sub(&gram(&entries)?, &identity(2));
    if let Some((i, j, x)) = first_nonzero(&res) {
        return Err(Error::Verification(format!("<φ{i}|φ{j}> - δ = {x}")));
    }
    Ok(VMatrix { entries })
}

pub fn certified_v() -> Result<&'static VMatrix> {
    static V: OnceLock<Result<VMatrix>> = OnceLock::new();
    V.get_or_init(build_v).as_ref().map_err(Clone::clone)
}

/// The projection `p = vv*` with entries in normal form.
#[derive(Clone, Debug)]
pub struct Projection {
    pub entries: Matrix,
}

impl Projection {
    pub fn get(&self, i: usize, j: usize) -> &NCPoly {
        &self.entries[i - 1][j - 1]
    }
}

/// The 4-sphere generators as elements of the 7-sphere.
#[derive(Clone, Debug)]
pub struct S4Generators {
    pub t: NCPoly,
    pub a: NCPoly,
    pub abar: NCPoly,
    pub b: NCPoly,
    pub bbar: NCPoly,
}

impl S4Generators {
    pub fn from_projection(p: &Projection) -> Self {
        S4Generators {
            t: p.get(2, 2).clone(),
            a: p.get(1, 3).clone(),
            abar: p.get(3, 1).clone(),
            b: p.get(1, 4).clone(),
            bbar: p.get(4, 1).clone(),
        }
    }

    pub fn image(&self, g: Gen) -> NCPoly {
        match g {
            Gen::T => self.t.clone(),
            Gen::A => self.a.clone(),
            Gen::ABar => self.abar.clone(),
            Gen::B => self.b.clone(),
            Gen::BBar => self.bbar.clone(),
            other => NCPoly::gen(other),
        }
    }

    /// Map an expression in `t, a, ab, b, bb` into the 7-sphere and reduce.
    pub fn embed(&self, x: &NCPoly) -> Result<NCPoly> {
        s7_system()?.normalize(&x.substitute(&|g| self.image(g)))
    }
}

/// `p` written in the 4-sphere generators.
pub fn closed_form() -> Matrix {
    [
        ["q^-2*t", "0", "a", "b"],
        ["0", "t", "q^-2*bb", "-q^2*ab"],
        ["ab", "q^-2*b", "1 - q^-4*t", "0"],
        ["bb", "-q^2*a", "0", "1 - q^2*t"],
    ]
    .iter()
    .map(|r| r.iter().map(|s| e(s)).collect())
    .collect()
}

/// Compute `p = vv*` and check it against the closed form.
pub fn build_projection(v: &VMatrix) -> Result<Projection> {
    let sys = s7_system()?;
    let p = Projection { entries: mat_mul(&v.entries, &mat_star(&v.entries), sys)? };
    let g = S4Generators::from_projection(&p);
    for (i, row) in closed_form().iter().enumerate() {
        for (j, c) in row.iter().enumerate() {
            let d = &g.embed(c)? - &p.entries[i][j];
            if !d.is_zero() {
                return Err(Error::Verification(format!("p{}{} differs from closed form by {d}", i + 1, j + 1)));
            }
        }
    }
    Ok(p)
}

pub fn certified_projection() -> Result<&'static Projection> {
    static P: OnceLock<Result<Projection>> = OnceLock::new();
    P.get_or_init(|| build_projection(certified_v()?)).as_ref().map_err(Clone::clone)
}

pub fn certified_generators() -> Result<S4Generators> {
    Ok(S4Generators::from_projection(certified_projection()?))
}

/// A named identity between expressions in the 4-sphere generators.
#[derive(Clone, Debug)]
pub struct S4Identity {
    pub name: String,
    pub lhs: NCPoly,
    pub rhs: NCPoly,
}

impl S4Identity {
    fn parse(name: &str, s: &str) -> Self {
        let (lhs, rhs) = parse_identity(s).expect("static identity");
        S4Identity { name: name.into(), lhs, rhs }
    }

    pub fn star(&self) -> Self {
        S4Identity { name: format!("{}*", self.name), lhs: self.lhs.star(), rhs: self.rhs.star() }
    }

    pub fn diff(&self) -> NCPoly {
        &self.lhs - &self.rhs
    }
}

/// Commutation relations together with their adjoints.
pub fn commutation_identities() -> Vec<S4Identity> {
    let base = [
        ("ab", "a*b = q^4*b*a"),
        ("abar-b", "ab*b = b*ab"),
        ("ta", "t*a = q^-2*a*t"),
        ("tb", "t*b = q^4*b*t"),
    ];
    let mut out: Vec<S4Identity> = base.iter().map(|(n, s)| S4Identity::parse(n, s)).collect();
    let stars: Vec<S4Identity> = out.iter().map(S4Identity::star).collect();
    out.extend(stars);
    out
}

/// The sphere relations; each is self-adjoint.
pub fn sphere_identities() -> Vec<S4Identity> {
    [
        ("sphere-1", "a*ab + b*bb = q^-2*t*(1 - q^-2*t)"),
        ("sphere-2", "q^4*ab*a + q^-4*bb*b = t*(1 - t)"),
        ("sphere-3", "b*bb - q^-4*bb*b = (1 - q^-4)*t^2"),
    ]
    .iter()
    .map(|(n, s)| S4Identity::parse(n, s))
    .collect()
}

pub fn s4_identities() -> Vec<S4Identity> {
    let mut v = commutation_identities();
    v.extend(sphere_identities());
    v
}

/// Order on the abstract 4-sphere: `t < ab < a < bb < b`, with `a, ab`
/// of weight 2 so that the sphere relations are led by `a ab` and `ab a`.
pub fn s4_order() -> WordOrder {
    WordOrder::weighted(&[(Gen::T, 1), (Gen::ABar, 2), (Gen::A, 2), (Gen::BBar, 1), (Gen::B, 1)])
}

pub fn build_s4_system() -> Result<RewriteSystem> {
    let order = s4_order();
    let rules = s4_identities()
        .iter()
        .map(|id| Rule::from_identity(&id.lhs, &id.rhs, &order))
        .collect::<Result<Vec<_>>>()?;
    RewriteSystem::new("S4_q", order.clone(), interreduce(rules, &order)?)
}

pub fn s4_system() -> Result<&'static RewriteSystem> {
    static SYS: OnceLock<Result<RewriteSystem>> = OnceLock::new();
    SYS.get_or_init(build_s4_system).as_ref().map_err(Clone::clone)
}

/// Residual of each 4-sphere identity after embedding into the 7-sphere.
pub fn verify_s4_relations(g: &S4Generators) -> Result<Vec<(String, NCPoly)>> {
    s4_identities().iter().map(|id| Ok((id.name.clone(), g.embed(&id.diff())?))).collect()
}

/// `q^-2 p11 + q^2 p22 + p33 + p44 - 2`.
pub fn trace_residual(p: &Projection) -> Result<NCPoly> {
    let s = &(&(&p.get(1, 1).scale(&LaurentPoly::q_pow(-2)) + &p.get(2, 2).scale(&LaurentPoly::q_pow(2)))
        + p.get(3, 3))
        + p.get(4, 4);
    s7_system()?.normalize(&(s - NCPoly::scalar(LaurentPoly::int(2))))
}

/// The quadratic sphere relation written in the entries of `p`, minus 1.
pub fn quadratic_residual(p: &Projection) -> Result<NCPoly> {
    let sys = s7_system()?;
    let pp = |i: usize, j: usize, k: usize, l: usize| p.get(i, j).mul_free(p.get(k, l));
    let c = |s: &str| s.parse::<LaurentPoly>().expect("static coefficient");
    let mut s = pp(1, 1, 1, 1).scale(&c("q^6 - q^8"));
    s += &pp(2, 2, 2, 2);
    s += &pp(4, 4, 4, 4);
    s += &(&pp(1, 3, 3, 1) + &pp(1, 4, 4, 1)).scale(&LaurentPoly::q_pow(4));
    s += &(&pp(2, 4, 4, 2) + &pp(2, 3, 3, 2)).scale(&LaurentPoly::q_pow(2));
    sys.normalize(&(s - NCPoly::one()))
}

/// Evaluate every coefficient at `q = 1`.
pub fn at_q_one(x: &NCPoly) -> NCPoly {
    x.map_coeffs(|c| {
        let v = c.eval(&EvalPoint::Exact(crate::coeffring::rat(1, 1))).expect("q = 1 is nonzero");
        match v {
            crate::coeffring::EvalValue::Exact(r) => LaurentPoly::constant(r),
            crate::coeffring::EvalValue::Float(_) => unreachable!(),
        }
    })
}

/// The classical limit of each identity: commutators, and
/// `a ab + b bb = t(1 - t)` for the first sphere relation.
pub fn q_one_degeneration() -> Vec<(String, NCPoly)> {
    let commutative = |x: &NCPoly| {
        let mut out = NCPoly::zero();
        for (w, c) in x.terms() {
            let mut w = w.clone();
            w.sort();
            out.add_term(w, c.clone());
        }
        out
    };
    let want_sphere = [
        e("a*ab + b*bb - t + t^2"),
        e("ab*a + bb*b - t + t^2"),
        NCPoly::zero(),
    ];
    let mut out = Vec::new();
    for id in commutation_identities() {
        out.push((id.name.clone(), commutative(&at_q_one(&id.diff()))));
    }
    for (id, want) in sphere_identities().iter().zip(want_sphere) {
        out.push((id.name.clone(), commutative(&(at_q_one(&id.diff()) - commutative(&want)))));
    }
    out
}

/// The isometry built directly from the sphere relation, whose projection
/// leaves the 4-sphere.
pub fn naive_v() -> Matrix {
    [["xb4", "x1"], ["q^-1*xb3", "x2"], ["-q^-3*xb2", "x3"], ["-q^-4*xb1", "x4"]]
        .iter()
        .map(|r| r.iter().map(|s| e(s)).collect())
        .collect()
}

#[derive(Clone, Debug)]
pub struct NaiveReport {
    pub gram_residual: Matrix,
    pub idempotent_residual: Matrix,
    pub p14: NCPoly,
    pub p23: NCPoly,
    /// `p14 - (1 - q^-2) x1 xb4` and the analogue for `p23`.
    pub extra_residuals: [NCPoly; 2],
    pub vanish_at_q_one: bool,
}

pub fn naive_projection() -> Result<NaiveReport> {
    let sys = s7_system()?;
    let v = naive_v();
    let gram_residual = mat_sub(&gram(&v)?, &identity(2));
    let p = mat_mul(&v, &mat_star(&v), sys)?;
    let idempotent_residual = mat_sub(&mat_mul(&p, &p, sys)?, &p);
    let p14 = p[0][3].clone();
    let p23 = p[1][2].clone();
    let r14 = sys.normalize(&(&p14 - &e("(1 - q^-2)*x1*xb4")))?;
    let r23 = sys.normalize(&(&p23 - &e("(1 - q^-2)*x2*xb3")))?;
    let vanish_at_q_one = at_q_one(&p14).is_zero() && at_q_one(&p23).is_zero();
    Ok(NaiveReport { gram_residual, idempotent_residual, p14, p23, extra_residuals: [r14, r23], vanish_at_q_one })
}

/// `det_q(rows i, j) = v_{i1} v_{j2} - q v_{i2} v_{j1}`.
pub fn plucker_minor(v: &Matrix, i: usize, j: usize) -> Result<NCPoly> {
    let (ri, rj) = (&v[i - 1], &v[j - 1]);
    let d = &ri[0].mul_free(&rj[1]) - &ri[1].mul_free(&rj[0]).scale(&LaurentPoly::q_pow(1));
    s7_system()?.normalize(&d)
}

pub fn plucker_expected() -> Vec<((usize, usize), NCPoly)> {
    [
        ((1, 2), "t"),
        ((1, 3), "b"),
        ((1, 4), "-q*a"),
        ((2, 3), "-q^2*ab"),
        ((2, 4), "-q^-1*bb"),
        ((3, 4), "q^-3*t - q"),
    ]
    .iter()
    .map(|(ij, s)| (*ij, e(s)))
    .collect()
}

/// Residual of each quantum minor against its 4-sphere expression.
pub fn plucker_check(v: &VMatrix, g: &S4Generators) -> Result<Vec<((usize, usize), NCPoly)>> {
    plucker_expected()
        .into_iter()
        .map(|((i, j), want)| Ok(((i, j), &plucker_minor(&v.entries, i, j)? - &g.embed(&want)?)))
        .collect()
}

/// Image of a generator under the `q -> q^-1` isomorphism.
pub fn q_inverse_image(g: Gen) -> NCPoly {
    let s = match g {
        Gen::A => "q^2*ab",
        Gen::ABar => "q^2*a",
        Gen::B => "q^-2*bb",
        Gen::BBar => "q^-2*b",
        Gen::T => "q^-2*t",
        other => return NCPoly::gen(other),
    };
    e(s)
}

/// Invert `q` in the coefficients of each identity, substitute the images
/// and reduce, both abstractly and in the 7-sphere.
pub fn q_inverse_iso_check(g: &S4Generators) -> Result<Vec<(String, NCPoly, NCPoly)>> {
    let sys = s4_system()?;
    s4_identities()
        .iter()
        .map(|id| {
            let img = id.diff().map_coeffs(LaurentPoly::invert_q).substitute(&q_inverse_image);
            Ok((id.name.clone(), sys.normalize(&img)?, g.embed(&img)?))
        })
        .collect()
}

/// Each abstract rule, embedded, holds in the 7-sphere.
pub fn abstract_rules_embedded(g: &S4Generators) -> Result<Vec<(String, NCPoly)>> {
    s4_system()?
        .rules()
        .iter()
        .map(|r| Ok((r.to_string(), g.embed(&(&r.lhs_poly() - &r.rhs))?)))
        .collect()
}

fn named<T: std::fmt::Display>(items: Vec<(String, T)>, zero: impl Fn(&T) -> bool) -> (bool, String) {
    let v: Vec<(String, String, bool)> = items.into_iter().map(|(n, x)| {
        let z = zero(&x);
        (n, x.to_string(), z)
    }).collect();
    zero_residuals(&v)
}

/// All 4- and 7-sphere checks.
pub fn verify_spheres() -> Vec<CheckResult> {
    let mut out = Vec::new();
    out.push(run_check("spheres.v_orthonormal", "v*v = 1 in the 7-sphere", || {
        let v = certified_v()?;
        Ok(matrix_residual(&mat_sub(&gram(&v.entries)?, &identity(2))))
    }));
    out.push(run_check("spheres.projection_closed_form", "vv* in the generators t, a, b", || {
        certified_projection().map(|_| (true, "0".into()))
    }));
    out.push(run_check("spheres.projection_idempotent", "p^2 = p", || {
        let p = certified_projection()?;
        Ok(matrix_residual(&mat_sub(&mat_mul(&p.entries, &p.entries, s7_system()?)?, &p.entries)))
    }));
    out.push(run_check("spheres.projection_selfadjoint", "p* = p", || {
        let p = certified_projection()?;
        let sys = s7_system()?;
        let ps: Matrix = mat_star(&p.entries)
            .iter()
            .map(|r| r.iter().map(|x| sys.normalize(x)).collect::<Result<_>>())
            .collect::<Result<_>>()?;
        Ok(matrix_residual(&mat_sub(&ps, &p.entries)))
    }));
    out.push(run_check("spheres.s4_relations", "commutation and sphere relations of t, a, b", || {
        Ok(named(verify_s4_relations(&certified_generators()?)?, NCPoly::is_zero))
    }));
    out.push(run_check("spheres.trace", "weighted trace of p equals 2", || {
        let r = trace_residual(certified_projection()?)?;
        Ok((r.is_zero(), r.to_string()))
    }));
    out.push(run_check("spheres.quadratic", "quadratic relation in the entries of p", || {
        let r = quadratic_residual(certified_projection()?)?;
        Ok((r.is_zero(), r.to_string()))
    }));
    out.push(run_check("spheres.q_one_limit", "relations become commutative at q = 1", || {
        Ok(named(q_one_degeneration(), NCPoly::is_zero))
    }));
    out.push(run_check("spheres.abstract_s4_system", "abstract 4-sphere rules hold in the 7-sphere", || {
        Ok(named(abstract_rules_embedded(&certified_generators()?)?, NCPoly::is_zero))
    }));
    out.push(run_check("spheres.plucker", "quantum 2x2 minors of v", || {
        let items = plucker_check(certified_v()?, &certified_generators()?)?
            .into_iter()
            .map(|((i, j), r)| (format!("m{i}{j}"), r))
            .collect();
        Ok(named(items, NCPoly::is_zero))
    }));
    out.push(run_check("spheres.q_inverse_iso", "q -> 1/q isomorphism of the 4-sphere", || {
        let items = q_inverse_iso_check(&certified_generators()?)?
            .into_iter()
            .map(|(n, a, b)| (n, &a + &b))
            .collect();
        Ok(named(items, NCPoly::is_zero))
    }));
    out.push(run_check("spheres.naive_projection", "naive isometry leaves the 4-sphere", || {
        let r = naive_projection()?;
        let ok = first_nonzero(&r.gram_residual).is_none()
            && first_nonzero(&r.idempotent_residual).is_none()
            && r.extra_residuals.iter().all(NCPoly::is_zero)
            && !r.p14.is_zero()
            && !r.p23.is_zero()
            && r.vanish_at_q_one;
        Ok((ok, format!("p14 = {}, p23 = {}", r.p14, r.p23)))
    }));
    out
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn v_is_an_isometry() {
        certified_v().unwrap();
    }

    #[test]
    fn broken_v_names_the_entry() {
        let mut v = v_entries();
        v[0][0] = e("q^-2*x1");
        let res = mat_sub(&gram(&v).unwrap(), &identity(2));
        let (i, j, _) = first_nonzero(&res).unwrap();
        assert_eq!((i, j), (1, 1));
    }

    #[test]
    fn generators_in_the_seven_sphere() {
        let g = certified_generators().unwrap();
        let sys = s7_system().unwrap();
        let n = |s: &str| sys.normalize(&e(s)).unwrap();
        assert_eq!(g.t, n("q^-2*xb2*x2 + q^-2*xb1*x1"));
        assert_eq!(g.a, n("q^-4*x1*xb3 - q^-2*x2*xb4"));
        assert_eq!(g.b, n("-q^-3*x1*x4 - q^-2*x2*x3"));
        assert_eq!(g.abar, n("conj(q^-4*x1*xb3 - q^-2*x2*xb4)"));
    }

    #[test]
    fn s4_relations_hold() {
        for (name, r) in verify_s4_relations(&certified_generators().unwrap()).unwrap() {
            assert!(r.is_zero(), "{name}: {r}");
        }
    }

    #[test]
    fn wrong_commutation_factor_is_caught() {
        let g = certified_generators().unwrap();
        let bad = e("t*a - q^2*a*t");
        assert!(!g.embed(&bad).unwrap().is_zero());
    }

    #[test]
    fn trace_and_quadratic() {
        let p = certified_projection().unwrap();
        assert!(trace_residual(p).unwrap().is_zero());
        assert!(quadratic_residual(p).unwrap().is_zero());
    }

    #[test]
    fn abstract_rules() {
        let sys = s4_system().unwrap();
        let rule = |l: [Gen; 2]| sys.rule(l).unwrap().clone();
        assert_eq!(rule([Gen::A, Gen::ABar]), e("q^-2*t - t^2 - q^-4*bb*b"));
        assert_eq!(rule([Gen::ABar, Gen::A]), e("q^-4*t - q^-4*t^2 - q^-8*bb*b"));
        assert_eq!(rule([Gen::B, Gen::BBar]), e("q^-4*bb*b + (1 - q^-4)*t^2"));
        assert_eq!(rule([Gen::B, Gen::A]), e("q^-4*a*b"));
        assert_eq!(sys.rules().len(), 11);
    }

    #[test]
    fn abstract_system_is_confluent_on_short_words() {
        let sys = s4_system().unwrap();
        let gens = sys.alphabet().to_vec();
        for &x in &gens {
            for &y in &gens {
                for &z in &gens {
                    let (gx, gy, gz) = (NCPoly::gen(x), NCPoly::gen(y), NCPoly::gen(z));
                    let l = sys.mul(&sys.mul(&gx, &gy).unwrap(), &gz).unwrap();
                    let r = sys.mul(&gx, &sys.mul(&gy, &gz).unwrap()).unwrap();
                    assert_eq!(l, r, "{x:?}{y:?}{z:?}");
                }
            }
        }
    }

    #[test]
    fn plucker_minors() {
        for ((i, j), r) in plucker_check(certified_v().unwrap(), &certified_generators().unwrap()).unwrap() {
            assert!(r.is_zero(), "m{i}{j}: {r}");
        }
    }

    #[test]
    fn q_inverse() {
        for (n, a, b) in q_inverse_iso_check(&certified_generators().unwrap()).unwrap() {
            assert!(a.is_zero() && b.is_zero(), "{n}: {a} / {b}");
        }
    }

    #[test]
    fn naive() {
        let r = naive_projection().unwrap();
        assert!(first_nonzero(&r.gram_residual).is_none());
        assert!(first_nonzero(&r.idempotent_residual).is_none());
        assert!(r.extra_residuals.iter().all(NCPoly::is_zero));
        assert!(!r.p14.is_zero());
        assert!(r.vanish_at_q_one);
    }

    #[test]
    fn q_one() {
        for (n, r) in q_one_degeneration() {
            assert!(r.is_zero(), "{n}: {r}");
        }
    }

    #[test]
    fn all_checks_pass() {
        for c in verify_spheres() {
            assert!(c.passed(), "{}: {}", c.check_id, c.residual);
        }
    }
}
