//! Geometry of the hyperbolic space of a lattice: which side of the light
//! cone a vector lies on, how two mirrors sit relative to each other, and the
//! exact constants used in the finiteness argument for rank three.

mod cone;
mod constants;
mod pairs;

pub use cone::{classify_vector, ConeClassification, ConeKind, Half};
pub use constants::{
    lemma2_gram, lemma2_gram_det, lemma2_polynomial, lemma_bound, Interval, LemmaConstants,
    QSqrt5,
};
pub use pairs::{
    classify_pair, strip_invariant, strip_invariant_squared, HyperplanePairClass, PairRelation,
};

use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum GeometryError {
    #[error("zero vector")]
    ZeroVector,
    #[error("expected a vector of negative norm, got norm {0}")]
    NonNegativeNorm(i128),
    #[error("expected norm -2, got {0}")]
    NotMinusTwo(i128),
    #[error("reference ray must satisfy r^2 >= 0 and r != 0")]
    BadReference,
    #[error("empty root list")]
    EmptyRoots,
    #[error("lemma bound needs a > 2")]
    OutOfDomain,
    #[error(transparent)]
    Lattice(#[from] lattice_core::LatticeError),
}
