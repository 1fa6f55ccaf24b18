//! Smith and Hermite normal forms over `BigInt`.

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};

use crate::matrix::BigMatrix;

/// `left * a * right = diag(diagonal)` padded with zeros; `left`, `right` unimodular.
#[derive(Debug, Clone)]
pub struct Smith {
    pub diagonal: Vec<BigInt>,
    pub left: BigMatrix,
    pub right: BigMatrix,
}

fn big_identity(n: usize) -> BigMatrix {
    (0..n)
        .map(|i| {
            (0..n)
                .map(|j| if i == j { BigInt::one() } else { BigInt::zero() })
                .collect()
        })
        .collect()
}

// row_i <- a*row_i + b*row_j, row_j <- c*row_i + d*row_j with ad - bc = 1
fn mix_rows(m: &mut BigMatrix, i: usize, j: usize, coef: [&BigInt; 4]) {
    let [a, b, c, d] = coef;
    for col in 0..m[i].len() {
        let x = m[i][col].clone();
        let y = m[j][col].clone();
        m[i][col] = a * &x + b * &y;
        m[j][col] = c * &x + d * &y;
    }
}

fn mix_cols(m: &mut BigMatrix, i: usize, j: usize, coef: [&BigInt; 4]) {
    let [a, b, c, d] = coef;
    for row in m.iter_mut() {
        let x = row[i].clone();
        let y = row[j].clone();
        row[i] = a * &x + b * &y;
        row[j] = c * &x + d * &y;
    }
}

/// Coefficients `[a b; c d]` of determinant one sending `(x, y)` to `(g, 0)`.
/// When `x | y` the pivot is kept and only a multiple is subtracted.
fn unimodular_pair(x: &BigInt, y: &BigInt) -> (BigInt, BigInt, BigInt, BigInt) {
    if (y % x).is_zero() {
        return (BigInt::one(), BigInt::zero(), -(y / x), BigInt::one());
    }
    let g = x.extended_gcd(y);
    (g.x, g.y, -(y / &g.gcd), x / &g.gcd)
}

pub fn smith(a: &BigMatrix) -> Smith {
    let rows = a.len();
    let cols = if rows == 0 { 0 } else { a[0].len() };
    let mut m = a.clone();
    let mut left = big_identity(rows);
    let mut right = big_identity(cols);
    let n = rows.min(cols);
    for t in 0..n {
        // pivot: smallest nonzero entry in the remaining block
        loop {
            let mut best: Option<(usize, usize)> = None;
            for i in t..rows {
                for j in t..cols {
                    if !m[i][j].is_zero()
                        && best.is_none_or(|(bi, bj)| m[i][j].abs() < m[bi][bj].abs())
                    {
                        best = Some((i, j));
                    }
                }
            }
            let Some((pi, pj)) = best else {
                break;
            };
            m.swap(t, pi);
            left.swap(t, pi);
            for row in m.iter_mut() {
                row.swap(t, pj);
            }
            for row in right.iter_mut() {
                row.swap(t, pj);
            }
            let mut clean = true;
            for i in t + 1..rows {
                if m[i][t].is_zero() {
                    continue;
                }
                let (a, b, c, d) = unimodular_pair(&m[t][t], &m[i][t]);
                mix_rows(&mut m, t, i, [&a, &b, &c, &d]);
                mix_rows(&mut left, t, i, [&a, &b, &c, &d]);
            }
            for j in t + 1..cols {
                if m[t][j].is_zero() {
                    continue;
                }
                let divisible = (&m[t][j] % &m[t][t]).is_zero();
                let (a, b, c, d) = unimodular_pair(&m[t][t], &m[t][j]);
                mix_cols(&mut m, t, j, [&a, &b, &c, &d]);
                mix_cols(&mut right, t, j, [&a, &b, &c, &d]);
                if !divisible {
                    clean = false;
                }
            }
            if !clean && (t + 1..rows).any(|i| !m[i][t].is_zero()) {
                continue;
            }
            // divisibility: fold a non-divisible entry into the pivot row
            let bad = (t + 1..rows)
                .flat_map(|i| (t + 1..cols).map(move |j| (i, j)))
                .find(|&(i, j)| !(&m[i][j] % &m[t][t]).is_zero());
            match bad {
                Some((i, _)) => {
                    let one = BigInt::one();
                    let zero = BigInt::zero();
                    mix_rows(&mut m, t, i, [&one, &one, &zero, &one]);
                    mix_rows(&mut left, t, i, [&one, &one, &zero, &one]);
                }
                None => break,
            }
        }
        if m[t][t].is_negative() {
            for x in m[t].iter_mut() {
                *x = -&*x;
            }
            for x in left[t].iter_mut() {
                *x = -&*x;
            }
        }
    }
    let diagonal = (0..n).map(|i| m[i][i].clone()).collect();
    Smith {
        diagonal,
        left,
        right,
    }
}

/// Integer basis of `{x : a x = 0}` (columns of the returned list are vectors).
pub fn integer_kernel(a: &BigMatrix, cols: usize) -> Vec<Vec<BigInt>> {
    let s = smith(a);
    let r = s.diagonal.iter().filter(|d| !d.is_zero()).count();
    (r..cols)
        .map(|j| s.right.iter().map(|row| row[j].clone()).collect())
        .collect()
}

/// Row-style Hermite normal form of the module spanned by `rows`; zero rows dropped.
pub fn hermite_rows(rows: &[Vec<BigInt>]) -> Vec<Vec<BigInt>> {
    if rows.is_empty() {
        return Vec::new();
    }
    let cols = rows[0].len();
    let mut m: BigMatrix = rows.to_vec();
    let mut r = 0;
    for c in 0..cols {
        if r == m.len() {
            break;
        }
        for i in r + 1..m.len() {
            if m[i][c].is_zero() {
                continue;
            }
            if m[r][c].is_zero() {
                m.swap(r, i);
                continue;
            }
            let (a, b, cc, d) = unimodular_pair(&m[r][c], &m[i][c]);
            mix_rows(&mut m, r, i, [&a, &b, &cc, &d]);
        }
        if m[r][c].is_zero() {
            continue;
        }
        if m[r][c].is_negative() {
            for x in m[r].iter_mut() {
                *x = -&*x;
            }
        }
        for i in 0..r {
            let f = m[i][c].div_floor(&m[r][c]);
            if !f.is_zero() {
                for j in 0..cols {
                    let t = &f * &m[r][j];
                    m[i][j] -= t;
                }
            }
        }
        r += 1;
    }
    m.truncate(r);
    m
}
