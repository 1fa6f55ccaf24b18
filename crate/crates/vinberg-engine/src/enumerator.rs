use std::cmp::Reverse;
use std::collections::BinaryHeap;

use lattice_core::{GramLattice, LatticeVector};

use crate::center::{Center, CenterKind};
use crate::frame::Frame;
use crate::resume::ResumeState;
use crate::{Budget, Height, RootPolicy, RootVector, VinbergError};

/// Incremental, resumable enumeration of the chamber walls.
#[derive(Debug, Clone)]
pub struct Enumerator {
    lattice: GramLattice,
    center: Center,
    policy: RootPolicy,
    frame: Frame,
    norms: Vec<i128>,
    strip: Vec<LatticeVector>,
    accepted: Vec<RootVector>,
    queue: BinaryHeap<Reverse<(Height, i128, i128)>>,
    frontier: Height,
    cursor: usize,
}

fn level_height(g: i128, c: i128, d: i128) -> Height {
    Height::new((c * g) * (c * g), d)
}

impl Enumerator {
    pub fn new(lattice: GramLattice, center: Center, policy: RootPolicy) -> Result<Self, VinbergError> {
        let frame = Frame::new(&lattice, &center)?;
        let norms = policy.norms();
        let zero = frame.step_zero(&lattice, &norms)?;
        let accepted = zero
            .iter()
            .map(|v| RootVector {
                norm: lattice.norm(v),
                coords: v.clone(),
                step_index: 0,
                height: Height::ZERO,
            })
            .collect();
        let strip = strip_walls(&lattice, &center, &frame, zero)?;
        let mut e = Self {
            queue: BinaryHeap::new(),
            frontier: Height::ZERO,
            cursor: 0,
            lattice,
            center,
            policy,
            frame,
            norms,
            strip,
            accepted,
        };
        let g = e.frame.g();
        for &n in &e.norms {
            e.queue.push(Reverse((level_height(g, 1, -n), -n, 1)));
        }
        Ok(e)
    }

    pub fn lattice(&self) -> &GramLattice {
        &self.lattice
    }

    pub fn center(&self) -> &Center {
        &self.center
    }

    pub fn policy(&self) -> &RootPolicy {
        &self.policy
    }

    pub fn accepted(&self) -> &[RootVector] {
        &self.accepted
    }

    /// Every candidate of height at most this has been examined.
    pub fn frontier(&self) -> Height {
        self.frontier
    }

    /// Height of the next unexamined batch.
    pub fn next_batch_height(&self) -> Option<Height> {
        self.queue.peek().map(|r| r.0 .0)
    }

    fn process_batch(&mut self) -> Result<Height, VinbergError> {
        let Some(Reverse((h, _, _))) = self.queue.peek().copied() else {
            unreachable!("queue holds one entry per norm");
        };
        let g = self.frame.g();
        let mut cands: Vec<(i128, LatticeVector)> = Vec::new();
        while let Some(&Reverse((h2, d, c))) = self.queue.peek() {
            if h2 != h {
                break;
            }
            self.queue.pop();
            for v in self.frame.solve(&self.lattice, c, d, &self.strip)? {
                cands.push((d, v));
            }
            self.queue.push(Reverse((level_height(g, c + 1, d), d, c + 1)));
        }
        cands.sort();
        let step = self.accepted.last().map_or(0, |r| r.step_index) + 1;
        for (d, v) in cands {
            if self.accepted.iter().all(|r| self.lattice.ip(&r.coords, &v) >= 0) {
                self.accepted.push(RootVector {
                    coords: v,
                    norm: -d,
                    step_index: step,
                    height: h,
                });
            }
        }
        self.frontier = h;
        Ok(h)
    }

    /// Examines every batch of height at most `h`.
    pub fn advance_to(&mut self, h: Height, max_roots: usize) -> Result<(), VinbergError> {
        while self.next_batch_height().is_some_and(|n| n <= h) {
            let done = self.process_batch()?;
            if self.accepted.len() >= max_roots {
                return Err(VinbergError::RootCapReached(done));
            }
        }
        if h > self.frontier {
            self.frontier = h;
        }
        Ok(())
    }

    /// The next wall in acceptance order, step-0 walls first.
    pub fn next_root(&mut self, budget: &Budget) -> Result<RootVector, VinbergError> {
        while self.cursor >= self.accepted.len() {
            if self.accepted.len() >= budget.max_roots {
                return Err(VinbergError::RootCapReached(self.frontier));
            }
            match self.next_batch_height() {
                Some(h) if h <= budget.max_height => {
                    self.process_batch()?;
                }
                _ => return Err(VinbergError::HeightCapReached(budget.max_height)),
            }
        }
        self.cursor += 1;
        Ok(self.accepted[self.cursor - 1].clone())
    }

    pub fn to_resume(&self) -> ResumeState {
        ResumeState::capture(self)
    }

    /// Rebuilds from a snapshot, recomputing step 0 as a consistency check.
    pub fn from_resume(state: &ResumeState) -> Result<Self, VinbergError> {
        state.check_header()?;
        let lattice = GramLattice::new(state.gram.clone())?;
        let center = Center::new(&lattice, &state.center)?;
        if center.kind != state.center_kind || center.rho != state.center {
            return Err(VinbergError::Resume("center does not match its kind".into()));
        }
        let policy = RootPolicy::new(&lattice, state.policy);
        if policy.admissible_norms != state.admissible_norms {
            return Err(VinbergError::Resume("admissible norms disagree".into()));
        }
        let mut e = Self::new(lattice, center, policy)?;
        let zero: Vec<&RootVector> = state.accepted.iter().filter(|r| r.step_index == 0).collect();
        if zero.len() != e.accepted.len() || zero.iter().zip(&e.accepted).any(|(a, b)| *a != b) {
            return Err(VinbergError::Resume("initial chamber differs".into()));
        }
        for r in &state.accepted {
            if r.height > state.frontier_height || e.lattice.norm(&r.coords) != r.norm {
                return Err(VinbergError::Resume("inconsistent accepted root".into()));
            }
        }
        e.accepted = state.accepted.clone();
        e.frontier = state.frontier_height;
        let g = e.frame.g();
        e.queue.clear();
        for &n in &e.norms {
            let d = -n;
            let mut c = 1;
            while level_height(g, c, d) <= e.frontier {
                c += 1;
            }
            e.queue.push(Reverse((level_height(g, c, d), d, c)));
        }
        Ok(e)
    }
}

/// For an isotropic center the search is confined to the strip between the
/// two step-0 walls of the full reflection group.
fn strip_walls(
    l: &GramLattice,
    center: &Center,
    frame: &Frame,
    zero: Vec<LatticeVector>,
) -> Result<Vec<LatticeVector>, VinbergError> {
    match center.kind {
        CenterKind::Point => Ok(Vec::new()),
        CenterKind::Isotropic if zero.len() == 2 => Ok(zero),
        CenterKind::Isotropic => frame.step_zero(l, &crate::admissible_norms(l)),
    }
}

/// Height-0 walls of the chamber containing the center.
pub fn initial_chamber(
    l: &GramLattice,
    center: &Center,
    policy: &RootPolicy,
) -> Result<Vec<RootVector>, VinbergError> {
    Ok(Enumerator::new(l.clone(), center.clone(), policy.clone())?.accepted)
}

/// All roots of the given norm at the given height, sorted. For an isotropic
/// center the result is limited to the strip between the step-0 walls of the
/// full reflection group, and height 0 returns those walls of that norm.
pub fn enumerate_roots_at_height(
    l: &GramLattice,
    center: &Center,
    norm: i128,
    height: Height,
) -> Result<Vec<LatticeVector>, VinbergError> {
    let frame = Frame::new(l, center)?;
    let d = -norm;
    let all = crate::admissible_norms(l);
    if height == Height::ZERO {
        return match center.kind {
            CenterKind::Isotropic => Ok(frame
                .step_zero(l, &all)?
                .into_iter()
                .filter(|v| l.norm(v) == norm)
                .collect()),
            CenterKind::Point => {
                let mut both = Vec::new();
                for v in frame.solve(l, 0, d, &[])? {
                    both.push(lattice_core::matrix::neg(&v));
                    both.push(v);
                }
                both.sort();
                Ok(both)
            }
        };
    }
    if d <= 0 || (height.num() * d) % height.den() != 0 {
        return Ok(Vec::new());
    }
    let n2 = height.num() * d / height.den();
    let n = n2.isqrt();
    let g = frame.g();
    if n * n != n2 || n % g != 0 {
        return Ok(Vec::new());
    }
    let strip = strip_walls(l, center, &frame, Vec::new())?;
    frame.solve(l, n / g, d, &strip)
}
