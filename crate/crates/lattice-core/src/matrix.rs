//! Dense integer matrices and vectors.
//!
//! Storage is `i128`; anything that can blow up (determinants, inverses,
//! eliminations) goes through `BigInt`/`BigRational`.

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};

use crate::error::LatticeError;

pub type LatticeVector = Vec<i128>;
pub type IntMatrix = Vec<Vec<i128>>;
pub type BigMatrix = Vec<Vec<BigInt>>;

pub fn identity(n: usize) -> IntMatrix {
    (0..n)
        .map(|i| (0..n).map(|j| i128::from(i == j)).collect())
        .collect()
}

pub fn transpose(a: &IntMatrix) -> IntMatrix {
    if a.is_empty() {
        return Vec::new();
    }
    (0..a[0].len())
        .map(|j| a.iter().map(|row| row[j]).collect())
        .collect()
}

pub fn mat_mul(a: &IntMatrix, b: &IntMatrix) -> IntMatrix {
    let inner = b.len();
    let cols = if inner == 0 { 0 } else { b[0].len() };
    a.iter()
        .map(|row| {
            (0..cols)
                .map(|j| (0..inner).map(|l| row[l] * b[l][j]).sum())
                .collect()
        })
        .collect()
}

pub fn mat_vec(a: &IntMatrix, v: &[i128]) -> LatticeVector {
    a.iter()
        .map(|row| row.iter().zip(v).map(|(x, y)| x * y).sum())
        .collect()
}

pub fn dot(a: &[i128], b: &[i128]) -> i128 {
    a.iter().zip(b).map(|(x, y)| x * y).sum()
}

pub fn cross3(a: &[i128], b: &[i128]) -> LatticeVector {
    vec![
        a[1] * b[2] - a[2] * b[1],
        a[2] * b[0] - a[0] * b[2],
        a[0] * b[1] - a[1] * b[0],
    ]
}

pub fn is_zero(v: &[i128]) -> bool {
    v.iter().all(|&x| x == 0)
}

pub fn content(v: &[i128]) -> i128 {
    v.iter().fold(0i128, |g, &x| g.gcd(&x))
}

/// Divides out the content. The zero vector is returned unchanged.
pub fn primitive(v: &[i128]) -> LatticeVector {
    let g = content(v);
    if g == 0 {
        return v.to_vec();
    }
    v.iter().map(|x| x / g).collect()
}

pub fn neg(v: &[i128]) -> LatticeVector {
    v.iter().map(|x| -x).collect()
}

pub fn to_big(a: &IntMatrix) -> BigMatrix {
    a.iter()
        .map(|r| r.iter().map(|&x| BigInt::from(x)).collect())
        .collect()
}

pub fn big_to_i128(x: &BigInt) -> Result<i128, LatticeError> {
    x.to_i128().ok_or(LatticeError::Overflow)
}

pub fn from_big(a: &BigMatrix) -> Result<IntMatrix, LatticeError> {
    a.iter()
        .map(|r| r.iter().map(big_to_i128).collect())
        .collect()
}

/// Fraction-free (Bareiss) determinant.
pub fn det_big(a: &BigMatrix) -> BigInt {
    let n = a.len();
    if n == 0 {
        return BigInt::one();
    }
    let mut m = a.clone();
    let mut sign = BigInt::one();
    let mut prev = BigInt::one();
    for k in 0..n {
        if m[k][k].is_zero() {
            match (k + 1..n).find(|&r| !m[r][k].is_zero()) {
                Some(r) => {
                    m.swap(k, r);
                    sign = -sign;
                }
                None => return BigInt::zero(),
            }
        }
        for i in k + 1..n {
            for j in k + 1..n {
                let v = &m[i][j] * &m[k][k] - &m[i][k] * &m[k][j];
                m[i][j] = v / &prev;
            }
        }
        prev = m[k][k].clone();
    }
    sign * &m[n - 1][n - 1]
}

pub fn det(a: &IntMatrix) -> BigInt {
    det_big(&to_big(a))
}

/// Exact inverse over the rationals, `None` when singular.
pub fn inverse_rational(a: &IntMatrix) -> Option<Vec<Vec<BigRational>>> {
    let n = a.len();
    let mut m: Vec<Vec<BigRational>> = a
        .iter()
        .enumerate()
        .map(|(i, row)| {
            let mut r: Vec<BigRational> = row
                .iter()
                .map(|&x| BigRational::from_integer(x.into()))
                .collect();
            r.extend((0..n).map(|j| {
                if i == j {
                    BigRational::one()
                } else {
                    BigRational::zero()
                }
            }));
            r
        })
        .collect();
    for c in 0..n {
        let p = (c..n).find(|&r| !m[r][c].is_zero())?;
        m.swap(c, p);
        let piv = m[c][c].clone();
        for x in m[c].iter_mut() {
            *x = &*x / &piv;
        }
        for r in 0..n {
            if r != c && !m[r][c].is_zero() {
                let f = m[r][c].clone();
                for j in 0..2 * n {
                    let t = &f * &m[c][j];
                    m[r][j] -= t;
                }
            }
        }
    }
    Some(m.into_iter().map(|r| r[n..].to_vec()).collect())
}

/// Inverse of a unimodular matrix, `None` when it is not integral.
pub fn integer_inverse(a: &IntMatrix) -> Option<IntMatrix> {
    let inv = inverse_rational(a)?;
    inv.iter()
        .map(|r| {
            r.iter()
                .map(|x| {
                    if x.is_integer() {
                        x.to_integer().to_i128()
                    } else {
                        None
                    }
                })
                .collect()
        })
        .collect()
}

/// Solves `a x = b` over Q.
pub fn solve_rational(a: &IntMatrix, b: &[i128]) -> Option<Vec<BigRational>> {
    let inv = inverse_rational(a)?;
    Some(
        inv.iter()
            .map(|row| {
                row.iter()
                    .zip(b)
                    .map(|(x, &y)| x * BigRational::from_integer(y.into()))
                    .fold(BigRational::zero(), |s, t| s + t)
            })
            .collect(),
    )
}

pub fn trace(a: &IntMatrix) -> i128 {
    (0..a.len()).map(|i| a[i][i]).sum()
}

pub fn mat_pow(a: &IntMatrix, e: u32) -> IntMatrix {
    let mut r = identity(a.len());
    for _ in 0..e {
        r = mat_mul(&r, a);
    }
    r
}

pub fn max_abs(v: &[i128]) -> i128 {
    v.iter().map(|x| x.abs()).max().unwrap_or(0)
}

pub fn big_abs_max(v: &[BigInt]) -> BigInt {
    v.iter().map(|x| x.abs()).max().unwrap_or_default()
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn bareiss_matches_cofactor_expansion() {
        let a = vec![vec![2, -1, 3], vec![0, 4, 5], vec![1, 1, -2]];
        // 2*(-8-5) + 1*(0-5) + 3*(0-4)
        assert_eq!(det(&a), BigInt::from(-26 - 5 - 12));
    }

    #[test]
    fn singular_has_no_inverse() {
        assert!(inverse_rational(&vec![vec![1, 2], vec![2, 4]]).is_none());
        assert_eq!(
            integer_inverse(&vec![vec![2, 1], vec![1, 1]]),
            Some(vec![vec![1, -1], vec![-1, 2]])
        );
    }

    #[test]
    fn primitive_divides_content() {
        assert_eq!(primitive(&[4, -6, 0]), vec![2, -3, 0]);
        assert_eq!(primitive(&[0, 0]), vec![0, 0]);
    }
}
