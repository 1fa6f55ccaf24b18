use std::collections::HashMap;

use lattice_core::matrix::{integer_inverse, trace, LatticeVector};
use lattice_core::{is_isometry, GramLattice, IntMatrix, LatticeIsometry};
use vinberg_engine::is_root;

use crate::linalg::{apply, det3, is_identity, kernel_line, minus_scalar, mul_checked, positive_reference, solve_map};
use crate::polygon::{polygon, Polygon};
use crate::{AnalysisError, Chamber};

/// Largest order tried before an isometry is declared of infinite order.
pub const FINITE_ORDER_BOUND: u32 = 60;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum SymmetryKind {
    FiniteOrder,
    ParabolicTranslation,
    HyperbolicTranslation,
    CentralSymmetry,
    SkewSymmetry,
}

impl SymmetryKind {
    pub fn label(self) -> &'static str {
        match self {
            SymmetryKind::FiniteOrder => "finite_order",
            SymmetryKind::ParabolicTranslation => "parabolic_translation",
            SymmetryKind::HyperbolicTranslation => "hyperbolic_translation",
            SymmetryKind::CentralSymmetry => "central_symmetry",
            SymmetryKind::SkewSymmetry => "skew_symmetry",
        }
    }

    pub fn is_infinite(self) -> bool {
        matches!(
            self,
            SymmetryKind::ParabolicTranslation | SymmetryKind::HyperbolicTranslation | SymmetryKind::SkewSymmetry
        )
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ChamberSymmetry {
    pub isometry: LatticeIsometry,
    pub kind: SymmetryKind,
    pub order: Option<u32>,
    /// Fixed isotropic `c` (parabolic), `w` with `C w = +-w` (hyperbolic kinds),
    /// or a fixed positive vector (central symmetry).
    pub witness: Option<LatticeVector>,
}

impl ChamberSymmetry {
    pub fn matrix(&self) -> &IntMatrix {
        self.isometry.matrix()
    }
}

/// Spectral type of a rank-3 isometry preserving the future cone.
pub fn classify_isometry(l: &GramLattice, c: &LatticeIsometry) -> Result<ChamberSymmetry, AnalysisError> {
    let m = c.matrix();
    if !is_isometry(l, m) {
        return Err(AnalysisError::NotAnIsometry);
    }
    if l.rank() != 3 {
        return Err(AnalysisError::NotSupported(l.rank()));
    }
    let det = det3(m);
    let mut p = m.clone();
    for n in 1..=FINITE_ORDER_BOUND {
        if is_identity(&p) {
            let central = n == 2 && det == 1 && trace(m) == -1;
            let witness = if central { kernel_line(&minus_scalar(m, 1)) } else { None };
            return Ok(ChamberSymmetry {
                isometry: c.clone(),
                kind: if central { SymmetryKind::CentralSymmetry } else { SymmetryKind::FiniteOrder },
                order: Some(n),
                witness,
            });
        }
        match mul_checked(&p, m) {
            Some(q) => p = q,
            None => break,
        }
    }
    let d = minus_scalar(m, 1);
    let d3 = mul_checked(&d, &d).and_then(|d2| mul_checked(&d2, &d));
    if d3.is_some_and(|x| x.iter().flatten().all(|&v| v == 0)) {
        let w = kernel_line(&d).ok_or(AnalysisError::NotAnIsometry)?;
        return Ok(ChamberSymmetry {
            isometry: c.clone(),
            kind: SymmetryKind::ParabolicTranslation,
            order: None,
            witness: Some(w),
        });
    }
    let w = kernel_line(&minus_scalar(m, det)).ok_or(AnalysisError::NotAnIsometry)?;
    Ok(ChamberSymmetry {
        isometry: c.clone(),
        kind: if det == 1 { SymmetryKind::HyperbolicTranslation } else { SymmetryKind::SkewSymmetry },
        order: None,
        witness: Some(w),
    })
}

type Fingerprint = [i128; 6];

fn fingerprint(l: &GramLattice, t: &[&LatticeVector; 3]) -> Fingerprint {
    [
        l.norm(t[0]),
        l.norm(t[1]),
        l.norm(t[2]),
        l.ip(t[0], t[1]),
        l.ip(t[1], t[2]),
        l.ip(t[0], t[2]),
    ]
}

/// Every accepted wall goes to a root pairing nonnegatively with all other walls.
fn preserves_walls(l: &GramLattice, c: &IntMatrix, walls: &[LatticeVector]) -> bool {
    walls.iter().all(|d| {
        let cd = apply(c, d);
        is_root(l, &cd)
            && l.norm(&cd) == l.norm(d)
            && walls.iter().all(|e| *e == cd || l.ip(&cd, e) >= 0)
    })
}

/// Candidate symmetries from consecutive wall triples around two final vertices.
pub(crate) fn raw_symmetries(ch: &Chamber, poly: &Polygon) -> Vec<IntMatrix> {
    let l = &ch.lattice;
    let walls = ch.walls();
    let m = poly.len();
    let reference = positive_reference(l, &ch.center.rho);
    let mut triples: Vec<[&LatticeVector; 3]> = Vec::new();
    for i in 0..m {
        let prev = (i + m - 1) % m;
        if poly.links[prev].confirmed && poly.links[i].confirmed {
            triples.push([
                &walls[poly.order[prev]],
                &walls[poly.order[i]],
                &walls[poly.order[(i + 1) % m]],
            ]);
        }
    }
    let mut index: HashMap<Fingerprint, Vec<usize>> = HashMap::new();
    for (k, t) in triples.iter().enumerate() {
        index.entry(fingerprint(l, t)).or_default().push(k);
    }
    let mut found: Vec<IntMatrix> = Vec::new();
    for s in &triples {
        for ss in [*s, [s[2], s[1], s[0]]] {
            let Some(hits) = index.get(&fingerprint(l, &ss)) else {
                continue;
            };
            for &k in hits {
                let t = &triples[k];
                let Some(c) = solve_map(&ss, t) else {
                    continue;
                };
                if is_identity(&c) || found.contains(&c) || !is_isometry(l, &c) {
                    continue;
                }
                if l.ip(&apply(&c, &reference), &reference) <= 0 || !preserves_walls(l, &c, &walls) {
                    continue;
                }
                found.push(c);
            }
        }
    }
    found
}

/// Chamber symmetries matched on final vertices, without inverse duplicates.
pub fn find_symmetry(ch: &Chamber) -> Result<Vec<ChamberSymmetry>, AnalysisError> {
    let poly = polygon(ch)?;
    symmetries_of(ch, &poly)
}

pub(crate) fn symmetries_of(ch: &Chamber, poly: &Polygon) -> Result<Vec<ChamberSymmetry>, AnalysisError> {
    let l = &ch.lattice;
    let mut kept: Vec<IntMatrix> = Vec::new();
    for c in raw_symmetries(ch, poly) {
        let inv = integer_inverse(&c).ok_or(AnalysisError::NotAnIsometry)?;
        if !kept.contains(&inv) {
            kept.push(c);
        }
    }
    kept.into_iter()
        .map(|c| classify_isometry(l, &LatticeIsometry::new(l, c)?))
        .collect()
}
