use lattice_core::matrix::{content, primitive, LatticeVector};
use lattice_core::GramLattice;
use serde::{Deserialize, Serialize};

use crate::frame::Frame;
use crate::VinbergError;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum CenterKind {
    Point,
    Isotropic,
}

/// Starting point of the algorithm: an interior point or a cusp.
#[derive(Debug, Clone, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct Center {
    pub rho: LatticeVector,
    pub kind: CenterKind,
}

impl Center {
    /// Rescales `rho` to be primitive; rejects `rho^2 < 0` and zero.
    pub fn new(l: &GramLattice, rho: &[i128]) -> Result<Self, VinbergError> {
        if rho.len() != l.rank() {
            return Err(VinbergError::InvalidCenter(format!(
                "center has {} coordinates, lattice rank is {}",
                rho.len(),
                l.rank()
            )));
        }
        if content(rho) == 0 {
            return Err(VinbergError::InvalidCenter("zero center".into()));
        }
        let rho = primitive(rho);
        let n = l.norm(&rho);
        let kind = match n.signum() {
            1 => CenterKind::Point,
            0 => CenterKind::Isotropic,
            _ => {
                return Err(VinbergError::InvalidCenter(format!(
                    "center has negative norm {n}"
                )))
            }
        };
        if kind == CenterKind::Isotropic && l.rank() != 3 {
            return Err(VinbergError::UnsupportedRank(l.rank()));
        }
        Ok(Self { rho, kind })
    }
}

/// `e1` if it is isotropic with roots in its orthogonal complement, else a
/// small isotropic vector with that property, else a short positive vector.
pub fn default_center(l: &GramLattice) -> Result<Center, VinbergError> {
    let n = l.rank();
    let norms = crate::admissible_norms(l);
    if n == 3 {
        let mut e1 = vec![0; n];
        e1[0] = 1;
        let mut cands = vec![e1];
        cands.extend(box_vectors(n, 3).into_iter().filter(|v| l.norm(v) == 0));
        for v in cands {
            if l.norm(&v) != 0 || content(&v) != 1 {
                continue;
            }
            let c = Center::new(l, &v)?;
            if Frame::new(l, &c)?.step_zero(l, &norms).is_ok() {
                return Ok(c);
            }
        }
    }
    for b in 1..=12 {
        let best = box_vectors(n, b)
            .into_iter()
            .filter(|v| l.norm(v) > 0)
            .min_by_key(|v| (l.norm(v), lattice_core::matrix::max_abs(v), v.clone()));
        if let Some(v) = best {
            return Center::new(l, &v);
        }
    }
    Err(VinbergError::InvalidCenter(
        "no positive vector in a box of size 12".into(),
    ))
}

/// Box vectors with first nonzero coordinate positive, ordered by sup norm.
fn box_vectors(n: usize, b: i128) -> Vec<LatticeVector> {
    let mut out: Vec<LatticeVector> = vec![Vec::new()];
    for _ in 0..n {
        out = out
            .into_iter()
            .flat_map(|v| {
                (-b..=b).map(move |x| {
                    let mut w = v.clone();
                    w.push(x);
                    w
                })
            })
            .collect();
    }
    out.retain(|v| v.iter().find(|&&x| x != 0).is_some_and(|&x| x > 0));
    out.sort_by_key(|v| (lattice_core::matrix::max_abs(v), v.clone()));
    out
}
