//! The classical Hopf bundle `S⁷ → S⁴` at `q = 1` and its Chern numbers.

use std::f64::consts::PI;

use nalgebra::{Matrix4, Matrix5, SMatrix};
use num_complex::Complex64;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;
use serde::Serialize;
use statrs::distribution::{ContinuousCDF, Normal};

use crate::error::{Error, Result};
use crate::ncalg::{Gen, NCPoly};
use crate::report::{run_check, CheckResult};
use crate::spheres::{at_q_one, certified_projection};

pub const TOL: f64 = 1e-12;

type C = Complex64;
pub type CMat4 = Matrix4<C>;

fn c(re: f64) -> C {
    C::new(re, 0.0)
}

#[derive(Clone, Copy, Debug, PartialEq)]
pub struct S7Point {
    pub z: [C; 4],
}

impl S7Point {
    pub fn new(z: [C; 4]) -> Result<Self> {
        let n: f64 = z.iter().map(|w| w.norm_sqr()).sum();
        if (n - 1.0).abs() > TOL {
            return Err(Error::InvalidParameter(format!("|z|^2 = {n} is not 1")));
        }
        Ok(S7Point { z })
    }

    pub fn random(rng: &mut impl Rng) -> Self {
        let g: Vec<f64> = (0..8).map(|_| gaussian(rng)).collect();
        let n = g.iter().map(|x| x * x).sum::<f64>().sqrt();
        let z = [0, 1, 2, 3].map(|i| C::new(g[2 * i] / n, g[2 * i + 1] / n));
        S7Point { z }
    }

    /// `z · w` with `w = [[w1, w2], [-w̄2, w̄1]]` acting blockwise.
    pub fn act(&self, w: &Su2) -> S7Point {
        let [z1, z2, z3, z4] = self.z;
        let (w1, w2) = (w.w1, w.w2);
        S7Point {
            z: [
                z1 * w1 - z2 * w2.conj(),
                z1 * w2 + z2 * w1.conj(),
                z3 * w1 - z4 * w2.conj(),
                z3 * w2 + z4 * w1.conj(),
            ],
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq)]
pub struct Su2 {
    pub w1: C,
    pub w2: C,
}

impl Su2 {
    pub fn random(rng: &mut impl Rng) -> Self {
        let g: Vec<f64> = (0..4).map(|_| gaussian(rng)).collect();
        let n = g.iter().map(|x| x * x).sum::<f64>().sqrt();
        Su2 { w1: C::new(g[0] / n, g[1] / n), w2: C::new(g[2] / n, g[3] / n) }
    }
}

fn gaussian(rng: &mut impl Rng) -> f64 {
    let u: f64 = rng.gen_range(f64::EPSILON..1.0);
    Normal::standard().inverse_cdf(u)
}

#[derive(Clone, Copy, Debug, PartialEq, Serialize)]
pub struct S4Point {
    pub x: f64,
    pub alpha: (f64, f64),
    pub beta: (f64, f64),
}

impl S4Point {
    pub fn new(x: f64, alpha: C, beta: C) -> Result<Self> {
        let n = x * x + alpha.norm_sqr() + beta.norm_sqr();
        if (n - 1.0).abs() > TOL {
            return Err(Error::InvalidParameter(format!("x^2 + |alpha|^2 + |beta|^2 = {n} is not 1")));
        }
        Ok(S4Point { x, alpha: (alpha.re, alpha.im), beta: (beta.re, beta.im) })
    }

    pub fn alpha(&self) -> C {
        C::new(self.alpha.0, self.alpha.1)
    }

    pub fn beta(&self) -> C {
        C::new(self.beta.0, self.beta.1)
    }

    /// Coordinates in `ℝ⁵` ordered `(x, Re α, Im α, Re β, Im β)`.
    pub fn coords(&self) -> [f64; 5] {
        [self.x, self.alpha.0, self.alpha.1, self.beta.0, self.beta.1]
    }
}

pub fn hopf_map(p: &S7Point) -> Result<S4Point> {
    let [z1, z2, z3, z4] = S7Point::new(p.z)?.z;
    let x = z1.norm_sqr() + z2.norm_sqr() - z3.norm_sqr() - z4.norm_sqr();
    let alpha = (z1 * z3.conj() + z2 * z4.conj()) * 2.0;
    let beta = (-z1 * z4 + z2 * z3) * 2.0;
    S4Point::new(x, alpha, beta)
}

fn projection_unchecked(x: f64, alpha: C, beta: C) -> CMat4 {
    let z = C::new(0.0, 0.0);
    let (p, m) = (c(1.0 + x), c(1.0 - x));
    CMat4::new(
        p, z, alpha, beta,
        z, p, -beta.conj(), alpha.conj(),
        alpha.conj(), -beta, m, z,
        beta.conj(), alpha, z, m,
    ) * c(0.5)
}

pub fn classical_projection(pt: &S4Point) -> Result<CMat4> {
    S4Point::new(pt.x, pt.alpha(), pt.beta())?;
    Ok(projection_unchecked(pt.x, pt.alpha(), pt.beta()))
}

/// The frame `v` whose columns are orthonormal.
pub fn frame(p: &S7Point) -> SMatrix<C, 4, 2> {
    let [z1, z2, z3, z4] = p.z;
    SMatrix::<C, 4, 2>::new(z1, z2, -z2.conj(), z1.conj(), z3, z4, -z4.conj(), z3.conj())
}

pub fn max_abs(m: &CMat4) -> f64 {
    m.iter().map(|x| x.norm()).fold(0.0, f64::max)
}

#[derive(Clone, Debug, Serialize)]
pub struct ProjectionResidual {
    pub idempotent: f64,
    pub selfadjoint: f64,
    pub trace: f64,
}

pub fn projection_residual(p: &CMat4) -> ProjectionResidual {
    ProjectionResidual {
        idempotent: max_abs(&(p * p - p)),
        selfadjoint: max_abs(&(p - p.adjoint())),
        trace: (p.trace() - c(2.0)).norm(),
    }
}

/// A relabeling of `ℂ⁴`: `y_i = s_i · z_{π(i)}`, conjugated where `conj_i`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub struct Renaming {
    pub perm: [usize; 4],
    pub sign: [i8; 4],
    pub conj: [bool; 4],
}

impl Renaming {
    pub fn apply(&self, z: &[C; 4]) -> [C; 4] {
        [0, 1, 2, 3].map(|i| {
            let w = z[self.perm[i]];
            let w = if self.conj[i] { w.conj() } else { w };
            w * c(self.sign[i] as f64)
        })
    }

    fn all() -> impl Iterator<Item = Renaming> {
        permutations4().into_iter().flat_map(|perm| {
            (0..16u32).flat_map(move |s| {
                (0..16u32).map(move |cj| Renaming {
                    perm,
                    sign: [0, 1, 2, 3].map(|i| if s >> i & 1 == 1 { -1 } else { 1 }),
                    conj: [0, 1, 2, 3].map(|i| cj >> i & 1 == 1),
                })
            })
        })
    }
}

fn permutations4() -> Vec<[usize; 4]> {
    let mut out = Vec::new();
    for a in 0..4 {
        for b in 0..4 {
            for cc in 0..4 {
                for d in 0..4 {
                    let p = [a, b, cc, d];
                    if (0..4).all(|i| p.contains(&i)) {
                        out.push(p);
                    }
                }
            }
        }
    }
    out
}

fn permutation_sign(p: &[usize]) -> f64 {
    let mut s = 1.0;
    for i in 0..p.len() {
        for j in i + 1..p.len() {
            if p[i] > p[j] {
                s = -s;
            }
        }
    }
    s
}

/// A commutative evaluation of a `q = 1` polynomial on `ℂ⁴`.
#[derive(Clone, Debug)]
pub struct ClassicalPoly {
    terms: Vec<(Vec<Gen>, f64)>,
}

impl ClassicalPoly {
    pub fn from_nc(p: &NCPoly) -> Result<Self> {
        let terms = at_q_one(p)
            .terms()
            .map(|(w, k)| Ok((w.clone(), k.eval_f64(1.0)?)))
            .collect::<Result<_>>()?;
        Ok(ClassicalPoly { terms })
    }

    pub fn eval(&self, y: &[C; 4]) -> Result<C> {
        let mut acc = c(0.0);
        for (w, k) in &self.terms {
            let mut m = c(*k);
            for g in w {
                m *= match *g {
                    Gen::X(i) => y[i as usize - 1],
                    Gen::XB(i) => y[i as usize - 1].conj(),
                    other => return Err(Error::ForeignGenerator(other.name())),
                };
            }
            acc += m;
        }
        Ok(acc)
    }
}

/// The quantum projection at `q = 1`, evaluated on `ℂ⁴`.
pub fn quantum_projection_at_one() -> Result<[[ClassicalPoly; 4]; 4]> {
    let p = certified_projection()?;
    let mut rows = Vec::new();
    for i in 1..=4 {
        let row: Vec<ClassicalPoly> = (1..=4).map(|j| ClassicalPoly::from_nc(p.get(i, j))).collect::<Result<_>>()?;
        rows.push(<[ClassicalPoly; 4]>::try_from(row).expect("four entries"));
    }
    Ok(<[[ClassicalPoly; 4]; 4]>::try_from(rows).expect("four rows"))
}

fn eval_matrix(p: &[[ClassicalPoly; 4]; 4], y: &[C; 4]) -> Result<CMat4> {
    let mut m = CMat4::zeros();
    for i in 0..4 {
        for j in 0..4 {
            m[(i, j)] = p[i][j].eval(y)?;
        }
    }
    Ok(m)
}

pub fn gauge() -> CMat4 {
    CMat4::from_diagonal(&nalgebra::Vector4::new(c(1.0), c(-1.0), c(1.0), c(1.0)))
}

#[derive(Clone, Debug, Serialize)]
pub struct GaugeReport {
    pub renaming: Option<Renaming>,
    pub points: usize,
    pub max_residual: f64,
    /// `max |t(y) - (1 + x)/2|` under the renaming.
    pub t_affine_residual: f64,
}

/// Search for a relabeling `y(z)` with `D p_cl(π(z)) D = p_q|_{q=1}(y(z))`.
pub fn q1_gauge_check(points: usize, seed: u64) -> Result<GaugeReport> {
    let pq = quantum_projection_at_one()?;
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let zs: Vec<S7Point> = (0..points.max(1)).map(|_| S7Point::random(&mut rng)).collect();
    let d = gauge();
    let targets: Vec<CMat4> = zs
        .iter()
        .map(|z| Ok(d * classical_projection(&hopf_map(z)?)? * d))
        .collect::<Result<_>>()?;
    let residual = |r: &Renaming, k: usize| -> Result<f64> {
        Ok(max_abs(&(eval_matrix(&pq, &r.apply(&zs[k].z))? - targets[k])))
    };
    let mut best: Option<(Renaming, f64)> = None;
    for r in Renaming::all() {
        let mut worst = 0.0f64;
        for k in 0..zs.len() {
            worst = worst.max(residual(&r, k)?);
            if worst > 1e-6 {
                break;
            }
        }
        if best.as_ref().is_none_or(|(_, b)| worst < *b) {
            best = Some((r, worst));
        }
        if worst <= TOL {
            break;
        }
    }
    let (r, worst) = best.expect("search space is nonempty");
    let found = worst <= TOL;
    let t_poly = ClassicalPoly::from_nc(certified_projection()?.get(2, 2))?;
    let mut t_res = 0.0f64;
    for z in &zs {
        let x = hopf_map(z)?.x;
        t_res = t_res.max((t_poly.eval(&r.apply(&z.z))? - c((1.0 + x) / 2.0)).norm());
    }
    Ok(GaugeReport { renaming: found.then_some(r), points: zs.len(), max_residual: worst, t_affine_residual: t_res })
}

/// Outward-oriented stereographic charts of `S⁴ ⊂ ℝ⁵`.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Chart {
    /// Projection from `x = -1`.
    North,
    /// Projection from `x = +1`.
    South,
}

impl Chart {
    pub fn embed(&self, u: &[f64; 4]) -> [f64; 5] {
        let r2: f64 = u.iter().map(|x| x * x).sum();
        let s = 2.0 / (1.0 + r2);
        let x = (1.0 - r2) / (1.0 + r2);
        let x = if *self == Chart::North { x } else { -x };
        [x, s * u[0], s * u[1], s * u[2], s * u[3]]
    }

    pub fn coords(&self, v: &[f64; 5]) -> [f64; 4] {
        let d = if *self == Chart::North { 1.0 + v[0] } else { 1.0 - v[0] };
        [v[1] / d, v[2] / d, v[3] / d, v[4] / d]
    }

    /// The chart in which the point lies within the unit ball.
    pub fn for_point(v: &[f64; 5]) -> Chart {
        if v[0] >= 0.0 {
            Chart::North
        } else {
            Chart::South
        }
    }
}

/// Orientation of `S⁴ = ℍP¹` relative to the outward normal in the
/// coordinates `(x, Re α, Im α, Re β, Im β)`: the affine chart
/// `h ↦ [h : 1]` with `ℍ` oriented by `(1, i, j, k)` is negatively oriented.
pub const ORIENTATION: f64 = -1.0;

/// The quaternionic affine chart `h = h₁ + h₂ j ↦ [h : 1]`, with
/// `u = (Re h₁, Im h₁, Re h₂, Im h₂)`.
pub fn quaternionic_chart(u: &[f64; 4]) -> Result<S4Point> {
    let n = (1.0 + u.iter().map(|x| x * x).sum::<f64>()).sqrt();
    let z = [C::new(u[0] / n, u[1] / n), C::new(u[2] / n, u[3] / n), c(1.0 / n), c(0.0)];
    hopf_map(&S7Point::new(z)?)
}

fn p_at(chart: Chart, u: &[f64; 4]) -> CMat4 {
    let v = chart.embed(u);
    projection_unchecked(v[0], C::new(v[1], v[2]), C::new(v[3], v[4]))
}

/// Chern densities at one point, relative to the outward volume form.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct ChernDensity {
    /// `tr(p (dp)⁴) / vol`.
    pub four_form: C,
    /// Largest coefficient of `tr(p (dp)²)` in the chart.
    pub two_form_max: f64,
    /// `(C₁ ∧ C₁) / vol`.
    pub c1_squared: C,
}

pub fn chern_density(chart: Chart, u: &[f64; 4], h: f64) -> ChernDensity {
    let p = p_at(chart, u);
    let mut dp = [CMat4::zeros(); 4];
    let mut dx = [[0.0; 5]; 4];
    for i in 0..4 {
        let (mut up, mut um) = (*u, *u);
        up[i] += h;
        um[i] -= h;
        dp[i] = (p_at(chart, &up) - p_at(chart, &um)) * c(1.0 / (2.0 * h));
        let (ep, em) = (chart.embed(&up), chart.embed(&um));
        for k in 0..5 {
            dx[i][k] = (ep[k] - em[k]) / (2.0 * h);
        }
    }
    let n = chart.embed(u);
    let vol = ORIENTATION * Matrix5::from_fn(|r, k| if r == 0 { n[k] } else { dx[r - 1][k] }).determinant();

    let mut pd = [[CMat4::zeros(); 4]; 4];
    let mut dd = [[CMat4::zeros(); 4]; 4];
    for i in 0..4 {
        for j in 0..4 {
            if i != j {
                dd[i][j] = dp[i] * dp[j];
                pd[i][j] = p * dd[i][j];
            }
        }
    }
    let mut four = c(0.0);
    for s in permutations4() {
        let (a, b) = (&pd[s[0]][s[1]], &dd[s[2]][s[3]]);
        let mut tr = c(0.0);
        for r in 0..4 {
            for k in 0..4 {
                tr += a[(r, k)] * b[(k, r)];
            }
        }
        four += tr * permutation_sign(&s);
    }
    let mut w = [[c(0.0); 4]; 4];
    let mut two_max = 0.0f64;
    for i in 0..4 {
        for j in i + 1..4 {
            w[i][j] = pd[i][j].trace() - pd[j][i].trace();
            w[j][i] = -w[i][j];
            two_max = two_max.max(w[i][j].norm());
        }
    }
    let ww = (w[0][1] * w[2][3] - w[0][2] * w[1][3] + w[0][3] * w[1][2]) * 2.0;
    // C₁ = -(2πi)⁻¹ tr(p dp dp)
    let c1c1 = ww * c(-1.0 / (4.0 * PI * PI));
    ChernDensity { four_form: four / vol, two_form_max: two_max, c1_squared: c1c1 / vol }
}

pub fn volume_s4() -> f64 {
    8.0 * PI * PI / 3.0
}

/// Closed-form oracle: `-3/(8π²) · vol(S⁴)`.
pub fn c2_closed_form() -> f64 {
    -3.0 / (8.0 * PI * PI) * volume_s4()
}

#[derive(Clone, Debug, Serialize)]
pub struct ChernReport {
    pub samples: usize,
    pub fd_step: f64,
    pub seed: u64,
    pub c2_value: f64,
    pub c2_imag: f64,
    pub c1_max_residual: f64,
    pub c1_squared_max: f64,
    pub excluded: usize,
}

const PRIMES: [u64; 5] = [2, 3, 5, 7, 11];

fn radical_inverse(mut i: u64, b: u64) -> f64 {
    let (mut f, mut r) = (1.0, 0.0);
    while i > 0 {
        f /= b as f64;
        r += f * (i % b) as f64;
        i /= b;
    }
    r
}

/// Point `i` of the 5-dimensional Halton sequence, shifted modulo 1.
pub fn halton_shifted(i: u64, shift: &[f64; 5]) -> [f64; 5] {
    [0, 1, 2, 3, 4].map(|k| (radical_inverse(i + 1, PRIMES[k]) + shift[k]).fract())
}

const CHUNK: usize = 4096;
const POLE_GUARD: f64 = 1e-12;

/// Monte Carlo estimate of `c₁, c₂` with uniform quasi-random points on `S⁴`.
pub fn chern_numbers(samples: usize, h: f64, seed: u64) -> Result<ChernReport> {
    if samples == 0 || !(h > 0.0 && h < 0.1) {
        return Err(Error::InvalidParameter("need samples > 0 and 0 < fd-step < 0.1".into()));
    }
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let shift: [f64; 5] = [0, 1, 2, 3, 4].map(|_| rng.gen::<f64>());
    let normal = Normal::standard();
    let chunks: Vec<(C, f64, f64, usize)> = (0..samples.div_ceil(CHUNK))
        .into_par_iter()
        .map(|k| {
            let mut acc = (c(0.0), 0.0f64, 0.0f64, 0usize);
            for i in k * CHUNK..((k + 1) * CHUNK).min(samples) {
                let g = halton_shifted(i as u64, &shift)
                    .map(|x| normal.inverse_cdf(x.clamp(f64::MIN_POSITIVE, 1.0 - f64::EPSILON)));
                let n = g.iter().map(|x| x * x).sum::<f64>().sqrt();
                if !(n > POLE_GUARD) || !n.is_finite() {
                    acc.3 += 1;
                    continue;
                }
                let v = g.map(|x| x / n);
                let chart = Chart::for_point(&v);
                let d = chern_density(chart, &chart.coords(&v), h);
                acc.0 += d.four_form - d.c1_squared;
                acc.1 = acc.1.max(d.two_form_max);
                acc.2 = acc.2.max(d.c1_squared.norm());
            }
            acc
        })
        .collect();
    let mut total = c(0.0);
    let (mut c1, mut c1sq, mut excluded) = (0.0f64, 0.0f64, 0usize);
    for (s, a, b, e) in chunks {
        total += s;
        c1 = c1.max(a);
        c1sq = c1sq.max(b);
        excluded += e;
    }
    let mean = total / samples as f64;
    let c2 = mean * c(-volume_s4() / (8.0 * PI * PI));
    Ok(ChernReport {
        samples,
        fd_step: h,
        seed,
        c2_value: c2.re,
        c2_imag: c2.im,
        c1_max_residual: c1,
        c1_squared_max: c1sq,
        excluded,
    })
}

fn random_points(n: usize, seed: u64) -> Vec<S7Point> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    (0..n).map(|_| S7Point::random(&mut rng)).collect()
}

/// All classical checks.
pub fn verify_classical(samples: usize, h: f64, seed: u64) -> Vec<CheckResult> {
    let mut out = Vec::new();
    out.push(run_check("classical.hopf_map", "Hopf projection lands on the unit 4-sphere", || {
        let e1 = hopf_map(&S7Point::new([c(1.0), c(0.0), c(0.0), c(0.0)])?)?;
        let e3 = hopf_map(&S7Point::new([c(0.0), c(0.0), c(1.0), c(0.0)])?)?;
        let mut worst = 0.0f64;
        for z in random_points(100, seed) {
            let p = hopf_map(&z)?;
            worst = worst.max((p.coords().iter().map(|x| x * x).sum::<f64>() - 1.0).abs());
        }
        let ok = e1.coords() == [1.0, 0.0, 0.0, 0.0, 0.0] && e3.coords() == [-1.0, 0.0, 0.0, 0.0, 0.0] && worst < TOL;
        Ok((ok, format!("{worst:.3e}")))
    }));
    out.push(run_check("classical.su2_invariance", "Hopf projection is invariant under the SU(2) action", || {
        let mut rng = ChaCha8Rng::seed_from_u64(seed ^ 0x5u64);
        let mut worst = 0.0f64;
        for _ in 0..1000 {
            let z = S7Point::random(&mut rng);
            let w = Su2::random(&mut rng);
            let (a, b) = (hopf_map(&z)?.coords(), hopf_map(&z.act(&w))?.coords());
            worst = worst.max(a.iter().zip(&b).map(|(x, y)| (x - y).abs()).fold(0.0, f64::max));
        }
        Ok((worst < TOL, format!("{worst:.3e}")))
    }));
    out.push(run_check("classical.projection", "classical projection, p = v v*", || {
        let mut worst = 0.0f64;
        for z in random_points(100, seed.wrapping_add(1)) {
            let p = classical_projection(&hopf_map(&z)?)?;
            let r = projection_residual(&p);
            let v = frame(&z);
            worst = worst.max(r.idempotent).max(r.selfadjoint).max(r.trace).max(max_abs(&(v * v.adjoint() - p)));
        }
        Ok((worst < TOL, format!("{worst:.3e}")))
    }));
    out.push(run_check("classical.q1_gauge", "q = 1 projection conjugate to the classical one by diag(1,-1,1,1)", || {
        let r = q1_gauge_check(20, seed)?;
        let ok = r.renaming.is_some() && r.t_affine_residual < TOL;
        Ok((ok, format!("{:.3e} with {:?}", r.max_residual, r.renaming)))
    }));
    out.push(run_check("classical.chern", "second Chern number of the classical projection", || {
        let r = chern_numbers(samples, h, seed)?;
        let ok = (r.c2_value + 1.0).abs() <= 0.05 && r.c1_max_residual < 1e-6;
        Ok((ok, format!("c2 = {:.9}, max |C1| = {:.3e}", r.c2_value, r.c1_max_residual)))
    }));
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;
    use rand::{Rng, SeedableRng};

    #[test]
    fn hopf_examples() {
        let e1 = S7Point::new([c(1.0), c(0.0), c(0.0), c(0.0)]).unwrap();
        assert_eq!(hopf_map(&e1).unwrap().coords(), [1.0, 0.0, 0.0, 0.0, 0.0]);
        let p = classical_projection(&hopf_map(&e1).unwrap()).unwrap();
        let want = CMat4::from_diagonal(&nalgebra::Vector4::new(c(1.0), c(1.0), c(0.0), c(0.0)));
        assert_eq!(p, want);
        assert!(S7Point::new([c(1.0), c(1.0), c(0.0), c(0.0)]).is_err());
    }

    #[test]
    fn checks_at_small_budget() {
        for r in verify_classical(20_000, 1e-4, 42) {
            assert!(r.passed(), "{}: {}", r.check_id, r.residual);
        }
    }

    #[test]
    fn gauge_is_involution() {
        assert_eq!(gauge() * gauge(), CMat4::identity());
    }

    #[test]
    fn gauge_renaming_found() {
        let r = q1_gauge_check(20, 7).unwrap();
        assert!(r.renaming.is_some(), "{r:?}");
        assert!(r.t_affine_residual < TOL);
    }

    #[test]
    fn closed_form_oracle() {
        assert!((c2_closed_form() + 1.0).abs() < 1e-15);
    }

    #[test]
    fn charts_agree_and_invert() {
        let u = [0.3, -0.2, 0.5, 0.1];
        for ch in [Chart::North, Chart::South] {
            let v = ch.embed(&u);
            assert!((v.iter().map(|x| x * x).sum::<f64>() - 1.0).abs() < 1e-14);
            let back = ch.coords(&v);
            for k in 0..4 {
                assert!((back[k] - u[k]).abs() < 1e-14);
            }
        }
    }

    #[test]
    fn density_is_constant() {
        // tr(p (dp)⁴) = 3 vol, so that c₂ = -1
        let mut rng = ChaCha8Rng::seed_from_u64(3);
        for _ in 0..20 {
            let u = [0, 1, 2, 3].map(|_| rng.gen_range(-1.0..1.0));
            for ch in [Chart::North, Chart::South] {
                let d = chern_density(ch, &u, 1e-4);
                assert!((d.four_form - c(3.0)).norm() < 1e-5, "{:?}", d.four_form);
                assert!(d.two_form_max < 1e-6);
            }
        }
    }

    #[test]
    fn quaternionic_chart_orientation() {
        let h = 1e-6;
        let mut rng = ChaCha8Rng::seed_from_u64(11);
        for _ in 0..20 {
            let u = [0, 1, 2, 3].map(|_| rng.gen_range(-2.0..2.0));
            let x = quaternionic_chart(&u).unwrap().coords();
            let mut d = [[0.0; 5]; 4];
            for i in 0..4 {
                let (mut a, mut b) = (u, u);
                a[i] += h;
                b[i] -= h;
                let (xa, xb) = (quaternionic_chart(&a).unwrap().coords(), quaternionic_chart(&b).unwrap().coords());
                for k in 0..5 {
                    d[i][k] = (xa[k] - xb[k]) / (2.0 * h);
                }
            }
            let det = Matrix5::from_fn(|r, k| if r == 0 { x[k] } else { d[r - 1][k] }).determinant();
            assert_eq!(det.signum(), ORIENTATION);
        }
    }

    #[test]
    fn no_step_bias() {
        // p is affine in the embedding and the volume uses the same differences
        let u = [0.4, 0.1, -0.3, 0.2];
        for h in [0.2, 0.1, 0.05, 1e-3, 1e-4] {
            let e = (chern_density(Chart::North, &u, h).four_form - c(3.0)).norm();
            assert!(e < 1e-12, "h = {h}: {e}");
        }
    }

    #[test]
    fn rotation_invariance() {
        // rotating the chart coordinates by an orthogonal map of det 1
        let u = [0.4, 0.1, -0.3, 0.2];
        let (cs, sn) = (0.6f64.cos(), 0.6f64.sin());
        let r = [cs * u[0] - sn * u[1], sn * u[0] + cs * u[1], u[2], u[3]];
        let a = chern_density(Chart::North, &u, 1e-4).four_form;
        let b = chern_density(Chart::North, &r, 1e-4).four_form;
        assert!((a - b).norm() < 1e-6);
        assert!((a - c(3.0)).norm() < 1e-6);
    }

    #[test]
    fn halton_is_deterministic() {
        let s = [0.1, 0.2, 0.3, 0.4, 0.5];
        assert_eq!(halton_shifted(0, &[0.0; 5]), [0.5, 1.0 / 3.0, 0.2, 1.0 / 7.0, 1.0 / 11.0]);
        assert_eq!(halton_shifted(17, &s), halton_shifted(17, &s));
        let a = chern_numbers(5000, 1e-4, 9).unwrap();
        let b = chern_numbers(5000, 1e-4, 9).unwrap();
        assert_eq!(a.c2_value, b.c2_value);
    }

    proptest! {
        #[test]
        fn projection_identities(seed in 0u64..1000) {
            let z = random_points(1, seed)[0];
            let p = classical_projection(&hopf_map(&z).unwrap()).unwrap();
            let r = projection_residual(&p);
            prop_assert!(r.idempotent < TOL && r.selfadjoint < TOL && r.trace < TOL);
        }

        #[test]
        fn invariance(seed in 0u64..1000) {
            let mut rng = ChaCha8Rng::seed_from_u64(seed);
            let z = S7Point::random(&mut rng);
            let w = Su2::random(&mut rng);
            let a = hopf_map(&z).unwrap().coords();
            let b = hopf_map(&z.act(&w)).unwrap().coords();
            for k in 0..5 {
                prop_assert!((a[k] - b[k]).abs() < TOL);
            }
        }
    }
}
