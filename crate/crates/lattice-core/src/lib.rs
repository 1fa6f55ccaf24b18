//! Exact arithmetic on integral lattices: forms, signatures, discriminant
//! groups, sublattices and isometries.

pub mod discriminant;
pub mod error;
pub mod expr;
pub mod isometry;
pub mod lattice;
pub mod matrix;
pub mod snf;
pub mod span;

pub use discriminant::{discriminant_group, DiscriminantForm, DiscriminantGroup};
pub use error::LatticeError;
pub use expr::{construct, parse_and_construct, parse_lattice, LatticeExpression, ParseError};
pub use isometry::{is_isometry, isometric_bounded_search, IsometryOutcome, LatticeIsometry};
pub use lattice::GramLattice;
pub use matrix::{IntMatrix, LatticeVector};
pub use span::{span_and_index, Index, SublatticeSpan};
