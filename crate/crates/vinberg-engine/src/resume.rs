use lattice_core::{IntMatrix, LatticeVector};
use serde::{Deserialize, Serialize};

use crate::center::CenterKind;
use crate::{Enumerator, Height, PolicyMode, RootVector, VinbergError};

pub const RESUME_FORMAT: &str = "vinberg-resume";
pub const RESUME_VERSION: u32 = 1;

/// Serializable snapshot of an [`Enumerator`].
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct ResumeState {
    pub format: String,
    pub version: u32,
    pub gram: IntMatrix,
    pub center: LatticeVector,
    pub center_kind: CenterKind,
    pub policy: PolicyMode,
    pub admissible_norms: Vec<i128>,
    pub accepted: Vec<RootVector>,
    pub frontier_height: Height,
}

impl ResumeState {
    pub(crate) fn capture(e: &Enumerator) -> Self {
        Self {
            format: RESUME_FORMAT.into(),
            version: RESUME_VERSION,
            gram: e.lattice().gram().clone(),
            center: e.center().rho.clone(),
            center_kind: e.center().kind,
            policy: e.policy().mode,
            admissible_norms: e.policy().admissible_norms.clone(),
            accepted: e.accepted().to_vec(),
            frontier_height: e.frontier(),
        }
    }

    pub(crate) fn check_header(&self) -> Result<(), VinbergError> {
        if self.format != RESUME_FORMAT {
            return Err(VinbergError::Resume(format!("unknown format {:?}", self.format)));
        }
        if self.version != RESUME_VERSION {
            return Err(VinbergError::Resume(format!("unsupported version {}", self.version)));
        }
        Ok(())
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("plain data serializes")
    }

    pub fn from_json(text: &str) -> Result<Self, VinbergError> {
        serde_json::from_str(text).map_err(|e| VinbergError::Resume(e.to_string()))
    }
}
