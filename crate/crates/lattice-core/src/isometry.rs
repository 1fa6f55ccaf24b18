use num_bigint::BigInt;
use num_traits::{One, Signed};

use crate::discriminant::discriminant_group;
use crate::error::LatticeError;
use crate::lattice::GramLattice;
use crate::matrix::{self, IntMatrix, LatticeVector};

/// An integer matrix acting on column coordinate vectors and preserving the form.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct LatticeIsometry {
    matrix: IntMatrix,
}

impl LatticeIsometry {
    pub fn new(l: &GramLattice, matrix: IntMatrix) -> Result<Self, LatticeError> {
        if matrix.len() != l.rank() || matrix.iter().any(|r| r.len() != l.rank()) {
            return Err(LatticeError::DimensionMismatch {
                expected: l.rank(),
                found: matrix.len(),
            });
        }
        if !is_isometry(l, &matrix) {
            return Err(LatticeError::Degenerate);
        }
        Ok(Self { matrix })
    }

    pub fn identity(n: usize) -> Self {
        Self {
            matrix: matrix::identity(n),
        }
    }

    pub fn matrix(&self) -> &IntMatrix {
        &self.matrix
    }

    pub fn into_matrix(self) -> IntMatrix {
        self.matrix
    }

    pub fn apply(&self, v: &[i128]) -> LatticeVector {
        matrix::mat_vec(&self.matrix, v)
    }

    pub fn compose(&self, other: &Self) -> Self {
        Self {
            matrix: matrix::mat_mul(&self.matrix, &other.matrix),
        }
    }

    pub fn inverse(&self) -> Self {
        Self {
            matrix: matrix::integer_inverse(&self.matrix).expect("isometries are unimodular"),
        }
    }

    pub fn determinant(&self) -> i128 {
        if matrix::det(&self.matrix).is_positive() {
            1
        } else {
            -1
        }
    }

    pub fn is_identity(&self) -> bool {
        self.matrix == matrix::identity(self.matrix.len())
    }
}

/// `C^T G C = G` and `det C = +-1`.
pub fn is_isometry(l: &GramLattice, c: &IntMatrix) -> bool {
    let n = l.rank();
    if c.len() != n || c.iter().any(|r| r.len() != n) {
        return false;
    }
    let lhs = matrix::mat_mul(&matrix::transpose(c), &matrix::mat_mul(l.gram(), c));
    lhs == *l.gram() && matrix::det(c).abs() == BigInt::one()
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum IsometryOutcome {
    /// Columns are images of the first lattice's basis in second-lattice coordinates.
    Isometric { witness: IntMatrix },
    Distinct { invariant: String },
    Unknown,
}

pub const DEFAULT_HEIGHT_BOUND: i128 = 10;
const BOX_CAP: u128 = 4_000_000;

/// Compares cheap invariants, then searches bases with entries bounded by `height_bound`.
pub fn isometric_bounded_search(
    l1: &GramLattice,
    l2: &GramLattice,
    height_bound: i128,
) -> IsometryOutcome {
    let distinct = |s: String| IsometryOutcome::Distinct { invariant: s };
    if l1.rank() != l2.rank() {
        return distinct(format!("rank {} vs {}", l1.rank(), l2.rank()));
    }
    let (d1, d2) = (l1.determinant(), l2.determinant());
    if d1 != d2 {
        return distinct(format!("determinant {d1} vs {d2}"));
    }
    let (s1, s2) = (l1.signature(), l2.signature());
    if s1 != s2 {
        return distinct(format!("signature {s1:?} vs {s2:?}"));
    }
    if l1.is_even() != l2.is_even() {
        return distinct("parity".to_string());
    }
    let (g1, g2) = (discriminant_group(l1), discriminant_group(l2));
    if g1 != g2 {
        return distinct(format!(
            "discriminant group {:?} vs {:?}",
            g1.cyclic_orders, g2.cyclic_orders
        ));
    }
    if l1 == l2 {
        return IsometryOutcome::Isometric {
            witness: matrix::identity(l1.rank()),
        };
    }
    let n = l1.rank();
    let side = (2 * height_bound + 1) as u128;
    if side.checked_pow(n as u32).is_none_or(|s| s > BOX_CAP) {
        return IsometryOutcome::Unknown;
    }
    let vectors = box_vectors(n, height_bound);
    let g1 = l1.gram();
    let by_column: Vec<Vec<&LatticeVector>> = (0..n)
        .map(|j| vectors.iter().filter(|v| l2.norm(v) == g1[j][j]).collect())
        .collect();
    let mut chosen: Vec<&LatticeVector> = Vec::new();
    if search(l2, g1, &by_column, &mut chosen) {
        let witness = (0..n).map(|i| chosen.iter().map(|c| c[i]).collect()).collect();
        IsometryOutcome::Isometric { witness }
    } else {
        IsometryOutcome::Unknown
    }
}

fn search<'a>(
    l2: &GramLattice,
    g1: &IntMatrix,
    cands: &[Vec<&'a LatticeVector>],
    chosen: &mut Vec<&'a LatticeVector>,
) -> bool {
    let j = chosen.len();
    if j == g1.len() {
        let m: IntMatrix = (0..j).map(|i| chosen.iter().map(|c| c[i]).collect()).collect();
        return matrix::det(&m).abs() == BigInt::one();
    }
    for &v in &cands[j] {
        if (0..j).all(|i| l2.ip(chosen[i], v) == g1[i][j]) {
            chosen.push(v);
            if search(l2, g1, cands, chosen) {
                return true;
            }
            chosen.pop();
        }
    }
    false
}

/// All vectors of the box, ordered by sup-norm then lexicographically.
fn box_vectors(n: usize, b: i128) -> Vec<LatticeVector> {
    let mut out = vec![Vec::new()];
    for _ in 0..n {
        out = out
            .into_iter()
            .flat_map(|v: LatticeVector| {
                (-b..=b).map(move |x| {
                    let mut w = v.clone();
                    w.push(x);
                    w
                })
            })
            .collect();
    }
    out.sort_by_key(|v| (matrix::max_abs(v), v.clone()));
    out
}
