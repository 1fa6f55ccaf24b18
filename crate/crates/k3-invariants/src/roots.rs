use lattice_core::{span_and_index, GramLattice, LatticeVector, SublatticeSpan};

use crate::K3Error;

/// Largest coordinate box scanned in one round.
pub const BOX_CAP: u64 = 3_000_000;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum RootSpanStatus {
    /// Full-rank span unchanged over two consecutive doublings of the box.
    Stable,
    /// Every norm is divisible by 4, so there is nothing to find.
    NoRootsByParity,
    /// No norm -2 vector in the largest box allowed by [`BOX_CAP`].
    NoRootsUpToCap,
    /// The box cap was hit before the span stabilized.
    CapReached,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct RootSublattice {
    /// `None` when no norm -2 vector exists or was found.
    pub span: Option<SublatticeSpan>,
    /// Coordinate bound of the last round.
    pub stabilization_bound: i128,
    pub status: RootSpanStatus,
}

fn norms_divisible_by_four(l: &GramLattice) -> bool {
    let g = l.gram();
    (0..l.rank()).all(|i| g[i][i] % 4 == 0 && (0..l.rank()).all(|j| i == j || g[i][j] % 2 == 0))
}

fn box_size(n: usize, b: i128) -> Option<u64> {
    let side = u64::try_from(2 * b + 1).ok()?;
    side.checked_pow(n as u32)
}

fn roots_in_box(l: &GramLattice, b: i128) -> Vec<LatticeVector> {
    let n = l.rank();
    let mut x = vec![-b; n];
    let mut out = Vec::new();
    loop {
        if l.norm(&x) == -2 {
            out.push(x.clone());
        }
        let mut i = 0;
        loop {
            if i == n {
                return out;
            }
            if x[i] == b {
                x[i] = -b;
                i += 1;
            } else {
                x[i] += 1;
                break;
            }
        }
    }
}

/// Span of the norm -2 vectors, found by scanning coordinate boxes of
/// doubling size from `start_bound` until the span is stable.
pub fn root_sublattice_span(l: &GramLattice, start_bound: i128) -> Result<RootSublattice, K3Error> {
    if !l.is_hyperbolic() {
        return Err(K3Error::NotHyperbolic);
    }
    if norms_divisible_by_four(l) {
        return Ok(RootSublattice {
            span: None,
            stabilization_bound: 0,
            status: RootSpanStatus::NoRootsByParity,
        });
    }
    let n = l.rank();
    let mut b = start_bound.max(1);
    let mut last: Option<Vec<LatticeVector>> = None;
    let mut stable_rounds = 0;
    let mut tried = 0;
    loop {
        if box_size(n, b).is_none_or(|s| s > BOX_CAP) {
            let status = match last {
                None => RootSpanStatus::NoRootsUpToCap,
                Some(_) => RootSpanStatus::CapReached,
            };
            let span = last.map(|basis| span_and_index(l, &basis)).transpose()?;
            return Ok(RootSublattice {
                span,
                stabilization_bound: tried,
                status,
            });
        }
        let roots = roots_in_box(l, b);
        tried = b;
        let basis = if roots.is_empty() {
            None
        } else {
            Some(span_and_index(l, &roots)?.basis)
        };
        // A rank-deficient span is usually a box too small to reach the other roots.
        let full = basis.as_ref().is_some_and(|h| h.len() == n);
        if full && basis == last {
            stable_rounds += 1;
            if stable_rounds == 2 {
                let s = span_and_index(l, &roots)?;
                return Ok(RootSublattice {
                    span: Some(s),
                    stabilization_bound: b,
                    status: RootSpanStatus::Stable,
                });
            }
        } else {
            stable_rounds = 0;
        }
        last = basis;
        b *= 2;
    }
}
