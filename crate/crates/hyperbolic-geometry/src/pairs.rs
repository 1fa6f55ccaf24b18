use lattice_core::GramLattice;
use num_bigint::BigInt;
use num_rational::BigRational;

use crate::GeometryError;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum PairRelation {
    Intersecting,
    ParallelAtInfinity,
    Ultraparallel,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct HyperplanePairClass {
    pub relation: PairRelation,
    /// `(d1,d2)^2 / (d1^2 d2^2)`, the squared cosine or hyperbolic cosine.
    pub cosh_distance_squared_times_norms: BigRational,
}

pub fn classify_pair(
    l: &GramLattice,
    d1: &[i128],
    d2: &[i128],
) -> Result<HyperplanePairClass, GeometryError> {
    let (n1, n2) = (l.norm(d1), l.norm(d2));
    for n in [n1, n2] {
        if n >= 0 {
            return Err(GeometryError::NonNegativeNorm(n));
        }
    }
    let p = BigInt::from(l.ip(d1, d2));
    let lhs = &p * &p;
    let rhs = BigInt::from(n1) * BigInt::from(n2);
    let relation = match lhs.cmp(&rhs) {
        std::cmp::Ordering::Less => PairRelation::Intersecting,
        std::cmp::Ordering::Equal => PairRelation::ParallelAtInfinity,
        std::cmp::Ordering::Greater => PairRelation::Ultraparallel,
    };
    Ok(HyperplanePairClass {
        relation,
        cosh_distance_squared_times_norms: BigRational::new(lhs, rhs),
    })
}

/// `max |(e, delta)|` over `roots` for a norm -2 vector `e`.
pub fn strip_invariant(
    l: &GramLattice,
    e: &[i128],
    roots: &[Vec<i128>],
) -> Result<i128, GeometryError> {
    let n = l.norm(e);
    if n != -2 {
        return Err(GeometryError::NotMinusTwo(n));
    }
    roots
        .iter()
        .map(|d| l.ip(e, d).abs())
        .max()
        .ok_or(GeometryError::EmptyRoots)
}

/// Square of the strip invariant for the unit-normalised direction of `w`:
/// `max 2 (w, delta)^2 / |w^2|`. Exact when `w` is not a -2 vector itself.
pub fn strip_invariant_squared(
    l: &GramLattice,
    w: &[i128],
    roots: &[Vec<i128>],
) -> Result<BigRational, GeometryError> {
    let n = l.norm(w);
    if n >= 0 {
        return Err(GeometryError::NonNegativeNorm(n));
    }
    roots
        .iter()
        .map(|d| {
            let p = BigInt::from(l.ip(w, d));
            BigRational::new(BigInt::from(2) * &p * &p, BigInt::from(-n))
        })
        .max()
        .ok_or(GeometryError::EmptyRoots)
}
