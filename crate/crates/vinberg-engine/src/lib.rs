//! Vinberg's algorithm for even hyperbolic lattices.
//!
//! Roots are produced in order of height `(delta, rho)^2 / |delta^2|`, ties
//! broken by `|delta^2|` and then by coordinates. A candidate is accepted when
//! it pairs nonnegatively with every root accepted before it. The chamber is
//! `{x : (x, delta) >= 0}` for all accepted `delta`.

mod center;
mod enumerator;
mod frame;
mod height;
mod norms;
mod resume;

use lattice_core::LatticeVector;
use serde::{Deserialize, Serialize};
use thiserror::Error;

pub use center::{default_center, Center, CenterKind};
pub use enumerator::{enumerate_roots_at_height, initial_chamber, Enumerator};
pub use height::Height;
pub use norms::{admissible_norms, is_root};
pub use resume::{ResumeState, RESUME_FORMAT, RESUME_VERSION};

#[derive(Debug, Error)]
pub enum VinbergError {
    #[error("invalid center: {0}")]
    InvalidCenter(String),
    #[error("isotropic centers are only supported in rank 3, got rank {0}")]
    UnsupportedRank(usize),
    #[error("no roots orthogonal to the isotropic center on both sides")]
    NoStepZeroRoots,
    #[error("height budget {0} reached")]
    HeightCapReached(Height),
    #[error("root budget reached at height {0}")]
    RootCapReached(Height),
    #[error("resume file: {0}")]
    Resume(String),
    #[error(transparent)]
    Lattice(#[from] lattice_core::LatticeError),
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum PolicyMode {
    /// Only norm `-2` roots.
    TwoOnly,
    /// Every admissible norm.
    AllNorms,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct RootPolicy {
    pub mode: PolicyMode,
    pub admissible_norms: Vec<i128>,
}

impl RootPolicy {
    pub fn new(l: &lattice_core::GramLattice, mode: PolicyMode) -> Self {
        Self {
            mode,
            admissible_norms: admissible_norms(l),
        }
    }

    /// Norms actually enumerated.
    pub fn norms(&self) -> Vec<i128> {
        match self.mode {
            PolicyMode::AllNorms => self.admissible_norms.clone(),
            PolicyMode::TwoOnly => self
                .admissible_norms
                .iter()
                .copied()
                .filter(|&n| n == -2)
                .collect(),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct RootVector {
    pub coords: LatticeVector,
    pub norm: i128,
    pub step_index: u32,
    pub height: Height,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct Budget {
    pub max_height: Height,
    pub max_roots: usize,
}

impl Default for Budget {
    fn default() -> Self {
        Self {
            max_height: Height::integer(1_000_000),
            max_roots: 10_000,
        }
    }
}
