use num_bigint::BigInt;
use num_traits::{Signed, Zero};

use crate::error::LatticeError;
use crate::lattice::GramLattice;
use crate::matrix::{self, from_big, LatticeVector};
use crate::snf::{hermite_rows, integer_kernel};

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Index {
    Finite(BigInt),
    Infinite,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SublatticeSpan {
    pub generators: Vec<LatticeVector>,
    /// Hermite basis of the span, one row per basis vector.
    pub basis: Vec<LatticeVector>,
    pub saturated_rank: usize,
    pub index_in_ambient: Index,
}

impl SublatticeSpan {
    pub fn contains(&self, v: &[i128]) -> bool {
        let mut rows: Vec<Vec<BigInt>> = self
            .basis
            .iter()
            .map(|r| r.iter().map(|&x| x.into()).collect())
            .collect();
        rows.push(v.iter().map(|&x| x.into()).collect());
        let h = hermite_rows(&rows);
        let mine: Vec<Vec<BigInt>> = self
            .basis
            .iter()
            .map(|r| r.iter().map(|&x| x.into()).collect())
            .collect();
        h == mine
    }

    pub fn gram(&self, l: &GramLattice) -> Vec<Vec<i128>> {
        self.basis
            .iter()
            .map(|x| self.basis.iter().map(|y| l.ip(x, y)).collect())
            .collect()
    }

    pub fn is_full_rank(&self) -> bool {
        matches!(self.index_in_ambient, Index::Finite(_))
    }
}

fn to_rows(v: &[LatticeVector]) -> Vec<Vec<BigInt>> {
    v.iter().map(|r| r.iter().map(|&x| x.into()).collect()).collect()
}

pub fn span_and_index(
    l: &GramLattice,
    gens: &[LatticeVector],
) -> Result<SublatticeSpan, LatticeError> {
    if gens.is_empty() {
        return Err(LatticeError::Empty);
    }
    if let Some(g) = gens.iter().find(|g| g.len() != l.rank()) {
        return Err(LatticeError::DimensionMismatch {
            expected: l.rank(),
            found: g.len(),
        });
    }
    let h = hermite_rows(&to_rows(gens));
    let basis = from_big(&h)?;
    let r = basis.len();
    let index_in_ambient = if r == l.rank() {
        Index::Finite(matrix::det(&basis).abs())
    } else {
        Index::Infinite
    };
    Ok(SublatticeSpan {
        generators: gens.to_vec(),
        basis,
        saturated_rank: r,
        index_in_ambient,
    })
}

/// Primitive closure `(span ⊗ Q) ∩ Z^n`, as a Hermite basis.
pub fn saturate(vectors: &[LatticeVector], n: usize) -> Result<Vec<LatticeVector>, LatticeError> {
    let rows = to_rows(vectors);
    if rows.iter().all(|r| r.iter().all(|x| x.is_zero())) {
        return Ok(Vec::new());
    }
    let k = integer_kernel(&rows, n);
    if k.is_empty() {
        return Ok(matrix::identity(n));
    }
    let back = integer_kernel(&k, n);
    from_big(&hermite_rows(&back))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn saturation_of_multiple() {
        let s = saturate(&[vec![2, 4, -6]], 3).unwrap();
        assert_eq!(s, vec![vec![1, 2, -3]]);
    }

    #[test]
    fn membership() {
        let l = GramLattice::sk(2);
        let s = span_and_index(&l, &[vec![2, 0, 0], vec![0, 1, 0], vec![0, 0, 1]]).unwrap();
        assert!(s.contains(&[4, 1, 1]));
        assert!(!s.contains(&[1, 0, 0]));
    }
}
