//! Lattice invariants used for K3 surfaces with a non-symplectic involution
//! and for 2-reflective Picard lattices.

mod intermediate;
mod roots;
mod two_elementary;

use lattice_core::{GramLattice, LatticeError};
use thiserror::Error;

pub use intermediate::{intermediate_lattices, IntermediateLattice, MAX_QUOTIENT_ORDER};
pub use roots::{root_sublattice_span, RootSpanStatus, RootSublattice, BOX_CAP};
pub use two_elementary::{two_elementary_data, FixedLocusCase, TwoElementaryData};

#[derive(Debug, Error)]
pub enum K3Error {
    #[error("lattice is not even")]
    NotEven,
    #[error("lattice is not hyperbolic")]
    NotHyperbolic,
    #[error("discriminant group is not 2-elementary")]
    NotTwoElementary,
    #[error("invariants r={r}, a={a} do not occur for an involution of a K3 surface")]
    NotK3Type { r: usize, a: usize },
    #[error("sublattice has infinite index")]
    InfiniteIndex,
    #[error("quotient of order {0} is too large to enumerate")]
    QuotientTooLarge(String),
    #[error(transparent)]
    Lattice(#[from] LatticeError),
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum EmbeddingVerdict {
    YesByRank,
    Unknown,
}

/// Even hyperbolic lattices of rank at most 11 embed primitively into the K3 lattice.
pub fn embeds_in_lk3_rank_bound(l: &GramLattice) -> Result<EmbeddingVerdict, K3Error> {
    check_even_hyperbolic(l)?;
    Ok(if l.rank() <= 11 {
        EmbeddingVerdict::YesByRank
    } else {
        EmbeddingVerdict::Unknown
    })
}

pub(crate) fn check_even_hyperbolic(l: &GramLattice) -> Result<(), K3Error> {
    if !l.is_even() {
        return Err(K3Error::NotEven);
    }
    if !l.is_hyperbolic() {
        return Err(K3Error::NotHyperbolic);
    }
    Ok(())
}
