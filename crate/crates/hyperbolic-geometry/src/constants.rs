//! Exact constants of the rank-three finiteness argument.
//!
//! `a0` is the positive root of `x^4 - 16x^2 - 16`, so `a0^2 = 8 + 4 sqrt5`, and
//! the bound `14 + 64/(a^2 - 4)` meets `2 + a^2` exactly at `a0` with common
//! value `10 + 4 sqrt5`.

use std::ops::{Add, Div, Mul, Sub};

use lattice_core::matrix::det;
use lattice_core::IntMatrix;
use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

use crate::GeometryError;

fn q(n: i64) -> BigRational {
    BigRational::from_integer(BigInt::from(n))
}

/// `a + b sqrt5` with rational `a`, `b`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct QSqrt5 {
    pub a: BigRational,
    pub b: BigRational,
}

impl QSqrt5 {
    pub fn new(a: BigRational, b: BigRational) -> Self {
        Self { a, b }
    }

    pub fn int(a: i64, b: i64) -> Self {
        Self::new(q(a), q(b))
    }

    pub fn is_zero(&self) -> bool {
        self.a.is_zero() && self.b.is_zero()
    }

    pub fn conj(&self) -> Self {
        Self::new(self.a.clone(), -self.b.clone())
    }

    /// `a^2 - 5 b^2`
    pub fn field_norm(&self) -> BigRational {
        &self.a * &self.a - q(5) * &self.b * &self.b
    }

    pub fn enclose(&self, tol: &BigRational) -> Interval {
        let s = Interval::sqrt_of(&q(5), &(tol / q(64)));
        let (lo, hi) = if self.b.is_negative() {
            (&self.b * &s.hi, &self.b * &s.lo)
        } else {
            (&self.b * &s.lo, &self.b * &s.hi)
        };
        Interval::new(&self.a + lo, &self.a + hi)
    }
}

impl Add for &QSqrt5 {
    type Output = QSqrt5;
    fn add(self, o: &QSqrt5) -> QSqrt5 {
        QSqrt5::new(&self.a + &o.a, &self.b + &o.b)
    }
}

impl Sub for &QSqrt5 {
    type Output = QSqrt5;
    fn sub(self, o: &QSqrt5) -> QSqrt5 {
        QSqrt5::new(&self.a - &o.a, &self.b - &o.b)
    }
}

impl Mul for &QSqrt5 {
    type Output = QSqrt5;
    fn mul(self, o: &QSqrt5) -> QSqrt5 {
        QSqrt5::new(
            &self.a * &o.a + q(5) * &self.b * &o.b,
            &self.a * &o.b + &self.b * &o.a,
        )
    }
}

impl Div for &QSqrt5 {
    type Output = QSqrt5;
    fn div(self, o: &QSqrt5) -> QSqrt5 {
        let n = o.field_norm();
        let t = self * &o.conj();
        QSqrt5::new(t.a / &n, t.b / n)
    }
}

/// Closed rational interval.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Interval {
    pub lo: BigRational,
    pub hi: BigRational,
}

impl Interval {
    pub fn new(lo: BigRational, hi: BigRational) -> Self {
        debug_assert!(lo <= hi);
        Self { lo, hi }
    }

    pub fn point(x: BigRational) -> Self {
        Self::new(x.clone(), x)
    }

    pub fn width(&self) -> BigRational {
        &self.hi - &self.lo
    }

    pub fn contains(&self, x: &BigRational) -> bool {
        &self.lo <= x && x <= &self.hi
    }

    pub fn overlaps(&self, o: &Interval) -> bool {
        self.lo <= o.hi && o.lo <= self.hi
    }

    /// Enclosure of `sqrt(x)` for `x >= 0` of width at most `tol`.
    pub fn sqrt_of(x: &BigRational, tol: &BigRational) -> Interval {
        let mut lo = BigRational::zero();
        let mut hi = if x > &BigRational::one() {
            x.clone()
        } else {
            BigRational::one()
        };
        let two = q(2);
        while &(&hi - &lo) > tol {
            let mid = (&lo + &hi) / &two;
            if &(&mid * &mid) <= x {
                lo = mid;
            } else {
                hi = mid;
            }
        }
        Interval::new(lo, hi)
    }

    /// `sqrt` of a nonnegative interval.
    pub fn sqrt(&self, tol: &BigRational) -> Interval {
        let half = tol / q(2);
        let a = Interval::sqrt_of(&self.lo, &half);
        let b = Interval::sqrt_of(&self.hi, &half);
        Interval::new(a.lo, b.hi)
    }

    pub fn square_nonneg(&self) -> Interval {
        Interval::new(&self.lo * &self.lo, &self.hi * &self.hi)
    }

    pub fn add_scalar(&self, c: &BigRational) -> Interval {
        Interval::new(&self.lo + c, &self.hi + c)
    }

    /// Decimal rounded to `places`, if both endpoints round the same way.
    pub fn decimal(&self, places: u32) -> Option<String> {
        let scale = BigRational::from_integer(BigInt::from(10).pow(places));
        let half = BigRational::new(BigInt::one(), BigInt::from(2));
        let r = |x: &BigRational| (x * &scale + &half).floor().to_integer();
        let (a, b) = (r(&self.lo), r(&self.hi));
        if a != b {
            return None;
        }
        let s = a.abs().to_string();
        let p = places as usize;
        let padded = format!("{:0>width$}", s, width = p + 1);
        let (int, frac) = padded.split_at(padded.len() - p);
        let sign = if a.is_negative() { "-" } else { "" };
        Some(if p == 0 {
            format!("{sign}{int}")
        } else {
            format!("{sign}{int}.{frac}")
        })
    }
}

/// The constants `10 + 4 sqrt5`, `a0` and the map `a -> 14 + 64/(a^2 - 4)`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct LemmaConstants {
    pub narrow_bound: QSqrt5,
    pub a0_squared: QSqrt5,
}

impl Default for LemmaConstants {
    fn default() -> Self {
        Self {
            narrow_bound: QSqrt5::int(10, 4),
            a0_squared: QSqrt5::int(8, 4),
        }
    }
}

impl LemmaConstants {
    /// `14 + 64/(a^2 - 4)` evaluated exactly at `a^2 = a0^2`.
    pub fn bound_at_a0(&self) -> QSqrt5 {
        let denom = &self.a0_squared - &QSqrt5::int(4, 0);
        &QSqrt5::int(14, 0) + &(&QSqrt5::int(64, 0) / &denom)
    }

    /// `2 + a0^2`.
    pub fn two_plus_a0_squared(&self) -> QSqrt5 {
        &QSqrt5::int(2, 0) + &self.a0_squared
    }

    /// `(a0^2)^2 - 16 a0^2 - 16`, which must vanish.
    pub fn quartic_residual(&self) -> QSqrt5 {
        let s = &self.a0_squared;
        &(&(s * s) - &(&QSqrt5::int(16, 0) * s)) - &QSqrt5::int(16, 0)
    }

    pub fn a0(&self, tol: &BigRational) -> Interval {
        self.a0_squared.enclose(&(tol / q(64))).sqrt(&(tol / q(2)))
    }

    /// Interval image of the decreasing bound function.
    pub fn bound_fn_interval(&self, a: &Interval) -> Interval {
        let f = |x: &BigRational| lemma_bound(x).expect("a > 2");
        Interval::new(f(&a.hi), f(&a.lo))
    }
}

/// `14 + 64/(a^2 - 4)` for `a > 2`.
pub fn lemma_bound(a: &BigRational) -> Result<BigRational, GeometryError> {
    if a <= &q(2) {
        return Err(GeometryError::OutOfDomain);
    }
    Ok(q(14) + q(64) / (a * a - q(4)))
}

/// Gram matrix of `e, g, f, h` in the quadrilateral construction.
pub fn lemma2_gram(b: i128, x: i128) -> IntMatrix {
    vec![
        vec![-2, 0, b, 0],
        vec![0, -2, 2, x],
        vec![b, 2, -2, 2],
        vec![0, x, 2, -2],
    ]
}

pub fn lemma2_gram_det(b: i128, x: i128) -> BigInt {
    det(&lemma2_gram(b, x))
}

/// `x^2 (b^2 - 4) - 16 x - 4 b^2 - 16`
pub fn lemma2_polynomial(b: i128, x: i128) -> BigInt {
    let (b, x) = (BigInt::from(b), BigInt::from(x));
    &x * &x * (&b * &b - 4) - 16 * &x - 4 * &b * &b - 16
}
