//! Rational functions in `q` and reduced row echelon form over them.

use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use num_traits::{One, Zero};

use crate::coeffring::{LaurentPoly, Rational};

/// `num / den` with `den` monic, of lowest exponent 0, coprime to `num`.
#[derive(Clone, PartialEq, Eq)]
pub struct RatFunc {
    num: LaurentPoly,
    den: LaurentPoly,
}

impl RatFunc {
    pub fn zero() -> Self {
        RatFunc { num: LaurentPoly::zero(), den: LaurentPoly::one() }
    }

    pub fn from_poly(p: LaurentPoly) -> Self {
        RatFunc { num: p, den: LaurentPoly::one() }
    }

    pub fn new(num: LaurentPoly, den: LaurentPoly) -> Self {
        assert!(!den.is_zero(), "zero denominator");
        if num.is_zero() {
            return Self::zero();
        }
        let g = num.gcd(&den);
        let mut num = num.div_exact(&g).expect("gcd divides numerator");
        let mut den = den.div_exact(&g).expect("gcd divides denominator");
        let norm = den.normalized_associate();
        let unit = den.div_exact(&norm).expect("associate");
        num = num.div_exact(&unit).expect("unit division");
        den = norm;
        RatFunc { num, den }
    }

    pub fn is_zero(&self) -> bool {
        self.num.is_zero()
    }

    pub fn inv(&self) -> Self {
        Self::new(self.den.clone(), self.num.clone())
    }

    /// The Laurent polynomial this function equals, if any.
    pub fn to_laurent(&self) -> Option<LaurentPoly> {
        self.den.is_one().then(|| self.num.clone())
    }
}

impl fmt::Debug for RatFunc {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({}) / ({})", self.num, self.den)
    }
}

impl Add for &RatFunc {
    type Output = RatFunc;
    fn add(self, o: &RatFunc) -> RatFunc {
        RatFunc::new(&(&self.num * &o.den) + &(&o.num * &self.den), &self.den * &o.den)
    }
}

impl Sub for &RatFunc {
    type Output = RatFunc;
    fn sub(self, o: &RatFunc) -> RatFunc {
        self + &(-o)
    }
}

impl Neg for &RatFunc {
    type Output = RatFunc;
    fn neg(self) -> RatFunc {
        RatFunc { num: -&self.num, den: self.den.clone() }
    }
}

impl Mul for &RatFunc {
    type Output = RatFunc;
    fn mul(self, o: &RatFunc) -> RatFunc {
        RatFunc::new(&self.num * &o.num, &self.den * &o.den)
    }
}

/// Reduced row echelon form of `rows` in place, scanning columns in
/// index order. Returns the pivot column of each nonzero row; zero rows
/// are dropped.
pub fn rref(rows: &mut Vec<Vec<RatFunc>>) -> Vec<usize> {
    let ncols = rows.first().map_or(0, Vec::len);
    let mut pivots = Vec::new();
    let mut r = 0;
    for c in 0..ncols {
        let Some(p) = (r..rows.len()).find(|&i| !rows[i][c].is_zero()) else {
            continue;
        };
        rows.swap(r, p);
        let inv = rows[r][c].inv();
        for x in rows[r].iter_mut() {
            *x = &*x * &inv;
        }
        for i in 0..rows.len() {
            if i == r || rows[i][c].is_zero() {
                continue;
            }
            let f = rows[i][c].clone();
            for j in 0..ncols {
                if rows[r][j].is_zero() {
                    continue;
                }
                let t = &f * &rows[r][j];
                rows[i][j] = &rows[i][j] - &t;
            }
        }
        pivots.push(c);
        r += 1;
    }
    rows.truncate(r);
    pivots
}

/// Scalar `c` lifted to a constant rational function.
pub fn rf_const(c: Rational) -> RatFunc {
    if c.is_zero() {
        RatFunc::zero()
    } else if c.is_one() {
        RatFunc::from_poly(LaurentPoly::one())
    } else {
        RatFunc::from_poly(LaurentPoly::constant(c))
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn lp(s: &str) -> LaurentPoly {
        s.parse().unwrap()
    }

    #[test]
    fn cancels_common_factors() {
        let f = RatFunc::new(lp("1 - q^4"), lp("q^-1 - q"));
        assert_eq!(f.to_laurent(), Some(lp("q + q^3")));
        assert_eq!(RatFunc::new(lp("1"), lp("1 + q")).to_laurent(), None);
    }

    #[test]
    fn field_operations() {
        let a = RatFunc::new(lp("1"), lp("1 + q"));
        let b = RatFunc::new(lp("q"), lp("1 + q"));
        assert_eq!((&a + &b).to_laurent(), Some(lp("1")));
        assert_eq!((&a * &a.inv()).to_laurent(), Some(lp("1")));
    }

    #[test]
    fn solves_small_system() {
        // q x - y = 0, x + y = 1 + q
        let c = |s: &str| RatFunc::from_poly(lp(s));
        let mut rows = vec![vec![c("q"), c("-1"), c("0")], vec![c("1"), c("1"), c("1 + q")]];
        let piv = rref(&mut rows);
        assert_eq!(piv, vec![0, 1]);
        assert_eq!(rows[0][2].to_laurent(), Some(lp("1")));
        assert_eq!(rows[1][2].to_laurent(), Some(lp("q")));
    }
}
