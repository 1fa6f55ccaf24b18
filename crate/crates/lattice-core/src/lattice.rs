use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{Signed, Zero};

use crate::error::LatticeError;
use crate::matrix::{self, IntMatrix, LatticeVector};

/// An integral nondegenerate symmetric bilinear form on `Z^rank`.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct GramLattice {
    gram: IntMatrix,
    labels: Option<Vec<String>>,
}

impl GramLattice {
    pub fn new(gram: IntMatrix) -> Result<Self, LatticeError> {
        let n = gram.len();
        if n == 0 {
            return Err(LatticeError::Empty);
        }
        if gram.iter().any(|r| r.len() != n) {
            return Err(LatticeError::NotSquare);
        }
        for i in 0..n {
            for j in 0..i {
                if gram[i][j] != gram[j][i] {
                    return Err(LatticeError::NotSymmetric(i, j));
                }
            }
        }
        if matrix::det(&gram).is_zero() {
            return Err(LatticeError::Degenerate);
        }
        Ok(Self { gram, labels: None })
    }

    pub fn with_labels(mut self, labels: Vec<String>) -> Result<Self, LatticeError> {
        if labels.len() != self.rank() {
            return Err(LatticeError::DimensionMismatch {
                expected: self.rank(),
                found: labels.len(),
            });
        }
        self.labels = Some(labels);
        Ok(self)
    }

    /// `U + <-2k>` in the standard basis.
    pub fn sk(k: i128) -> Self {
        Self::new(vec![vec![0, 1, 0], vec![1, 0, 0], vec![0, 0, -2 * k]])
            .expect("k must be nonzero")
    }

    pub fn rank(&self) -> usize {
        self.gram.len()
    }

    pub fn gram(&self) -> &IntMatrix {
        &self.gram
    }

    pub fn labels(&self) -> Option<&[String]> {
        self.labels.as_deref()
    }

    pub fn inner_product(&self, x: &[i128], y: &[i128]) -> Result<i128, LatticeError> {
        for v in [x, y] {
            if v.len() != self.rank() {
                return Err(LatticeError::DimensionMismatch {
                    expected: self.rank(),
                    found: v.len(),
                });
            }
        }
        Ok(self.ip(x, y))
    }

    /// Unchecked-length pairing for hot loops.
    #[inline]
    pub fn ip(&self, x: &[i128], y: &[i128]) -> i128 {
        let mut s = 0i128;
        for (i, row) in self.gram.iter().enumerate() {
            if x[i] == 0 {
                continue;
            }
            let mut t = 0i128;
            for (g, b) in row.iter().zip(y) {
                t += g * b;
            }
            s += x[i] * t;
        }
        s
    }

    pub fn norm(&self, x: &[i128]) -> i128 {
        self.ip(x, x)
    }

    /// `G x`, the row functional `y -> (x, y)`.
    pub fn dual_row(&self, x: &[i128]) -> LatticeVector {
        matrix::mat_vec(&self.gram, x)
    }

    pub fn determinant(&self) -> BigInt {
        matrix::det(&self.gram)
    }

    pub fn is_even(&self) -> bool {
        (0..self.rank()).all(|i| self.gram[i][i] % 2 == 0)
    }

    /// Exact (n_plus, n_minus) via symmetric elimination over Q.
    pub fn signature(&self) -> (usize, usize) {
        let n = self.rank();
        let mut a: Vec<Vec<BigRational>> = self
            .gram
            .iter()
            .map(|r| r.iter().map(|&x| BigRational::from_integer(x.into())).collect())
            .collect();
        let (mut plus, mut minus) = (0, 0);
        for t in 0..n {
            if a[t][t].is_zero() {
                if let Some(p) = (t + 1..n).find(|&p| !a[p][p].is_zero()) {
                    a.swap(t, p);
                    for row in a.iter_mut() {
                        row.swap(t, p);
                    }
                } else if let Some(p) = (t + 1..n).find(|&p| !a[t][p].is_zero()) {
                    // e_t <- e_t + e_p gives diagonal 2 a_tp
                    for j in 0..n {
                        let v = a[p][j].clone();
                        a[t][j] += v;
                    }
                    for row in a.iter_mut() {
                        let v = row[p].clone();
                        row[t] += v;
                    }
                } else {
                    // isolated zero: degenerate, excluded by construction
                    continue;
                }
            }
            let piv = a[t][t].clone();
            if piv.is_positive() {
                plus += 1;
            } else {
                minus += 1;
            }
            for i in t + 1..n {
                if a[i][t].is_zero() {
                    continue;
                }
                let f = &a[i][t] / &piv;
                for j in t..n {
                    let v = &f * &a[t][j];
                    a[i][j] -= v;
                }
            }
            for i in t + 1..n {
                a[t][i] = BigRational::zero();
                a[i][t] = BigRational::zero();
            }
        }
        (plus, minus)
    }

    pub fn is_hyperbolic(&self) -> bool {
        self.signature() == (1, self.rank() - 1)
    }

    pub fn scaled(&self, t: i128) -> Result<Self, LatticeError> {
        Self::new(
            self.gram
                .iter()
                .map(|r| r.iter().map(|x| x * t).collect())
                .collect(),
        )
    }

    pub fn direct_sum(&self, other: &Self) -> Self {
        let (n, m) = (self.rank(), other.rank());
        let mut g = vec![vec![0i128; n + m]; n + m];
        for i in 0..n {
            g[i][..n].copy_from_slice(&self.gram[i]);
        }
        for i in 0..m {
            g[n + i][n..].copy_from_slice(&other.gram[i]);
        }
        Self { gram: g, labels: None }
    }

    /// Form restricted to the rows of `basis` (each row a vector of this lattice).
    pub fn restrict(&self, basis: &[LatticeVector]) -> Result<Self, LatticeError> {
        Self::new(
            basis
                .iter()
                .map(|x| basis.iter().map(|y| self.ip(x, y)).collect())
                .collect(),
        )
    }

    /// True when every pairing `(x, y)` is divisible by `d`.
    pub fn divides_all_pairings(&self, x: &[i128], d: i128) -> bool {
        self.dual_row(x).iter().all(|v| v % d == 0)
    }

    /// Reflection `s_delta` as a matrix acting on columns, if integral.
    pub fn reflection(&self, delta: &[i128]) -> Option<IntMatrix> {
        let d = self.norm(delta);
        if d == 0 {
            return None;
        }
        let row = self.dual_row(delta);
        let n = self.rank();
        let mut m = matrix::identity(n);
        for j in 0..n {
            let num = 2 * row[j];
            if num % d != 0 {
                return None;
            }
            let f = num / d;
            for i in 0..n {
                m[i][j] -= f * delta[i];
            }
        }
        Some(m)
    }
}
