//! Norm `-2` reflection groups, derived from the full chamber when it is closed.
//!
//! If `M0` is the closed chamber of the full reflection group, the chamber `M`
//! of the norm `-2` subgroup is tiled by copies of `M0` under the group `W'`
//! generated by reflections in the walls of `M0` of norm other than `-2`, and
//! `A(M) = W' x| A(M0)`.

use hyperbolic_geometry::{classify_pair, PairRelation};
use lattice_core::matrix::{neg, primitive, LatticeVector};
use lattice_core::{GramLattice, LatticeIsometry};
use vinberg_engine::{default_center, Budget, Center, PolicyMode, RootPolicy};

use crate::linalg::{meet, positive_reference, sign_normal};
use crate::{
    analyze, classify_isometry, maximal_invariant_sublattice, orbit_representatives, AnalysisError, Analysis,
    OrbitPresentation, ReflectivityReport, ReflectivityType,
};

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum TwoRoute {
    /// From the closed full chamber.
    Derived,
    /// Vinberg with norm `-2` roots only, from an interior point.
    Direct,
}

#[derive(Debug, Clone)]
pub struct TwoReflectiveAnalysis {
    pub full: Analysis,
    pub direct: Analysis,
    pub route: TwoRoute,
    pub report: ReflectivityReport,
}

impl TwoReflectiveAnalysis {
    /// Both routes reached the same certified type, with `w` of equal norm.
    ///
    /// The two chambers are conjugate under norm `-2` reflections, so `w`
    /// itself may differ between them.
    pub fn routes_agree(&self) -> bool {
        let l = &self.full.chamber.lattice;
        let norm = |r: &ReflectivityReport| r.w.as_ref().map(|w| l.norm(&lattice_core::matrix::primitive(w)));
        self.direct.report.kind == self.report.kind && norm(&self.direct.report) == norm(&self.report)
    }
}

pub fn analyze_two_reflective(
    l: &GramLattice,
    center: Option<&Center>,
    budget: &Budget,
) -> Result<TwoReflectiveAnalysis, AnalysisError> {
    let center = match center {
        Some(c) => c.clone(),
        None => default_center(l)?,
    };
    let full = analyze(l, &center, &RootPolicy::new(l, PolicyMode::AllNorms), budget)?;
    let p = positive_reference(l, &center.rho);
    let point = Center::new(l, &p)?;
    let direct = analyze(l, &point, &RootPolicy::new(l, PolicyMode::TwoOnly), budget)?;
    let derived = if full.report.kind == ReflectivityType::Elliptic {
        derive(l, &full)?
    } else {
        None
    };
    let (route, mut report) = match derived {
        Some(r) => (TwoRoute::Derived, r),
        None => (TwoRoute::Direct, direct.report.clone()),
    };
    if route == TwoRoute::Direct {
        if let Some(c) = report.c.clone() {
            if !report.cusp_orbits.iter().any(|u| crate::linalg::proportional(u, &c)) {
                report.cusp_orbits.push(c);
            }
        }
    }
    Ok(TwoReflectiveAnalysis {
        full,
        direct,
        route,
        report,
    })
}

fn derive(l: &GramLattice, full: &Analysis) -> Result<Option<ReflectivityReport>, AnalysisError> {
    let walls = full.chamber.walls();
    let others: Vec<&LatticeVector> = walls.iter().filter(|w| l.norm(w) != -2).collect();
    let a0 = &full.symmetries;
    let mut reflections = Vec::new();
    for w in &others {
        let m = l.reflection(w).ok_or(AnalysisError::NotAnIsometry)?;
        reflections.push(classify_isometry(l, &LatticeIsometry::new(l, m)?)?);
    }
    let reference = positive_reference(l, &full.chamber.center.rho);
    let (kind, w, c) = match others.len() {
        0 | 1 => (ReflectivityType::Elliptic, None, None),
        2 => {
            let rel = classify_pair(l, others[0], others[1])
                .map_err(|_| AnalysisError::NotAnIsometry)?
                .relation;
            let v = meet(l, others[0], others[1]);
            match rel {
                PairRelation::Intersecting => (ReflectivityType::Elliptic, None, None),
                PairRelation::ParallelAtInfinity => {
                    let c = if l.ip(&v, &reference) < 0 { neg(&v) } else { v };
                    (ReflectivityType::Parabolic, None, Some(c))
                }
                PairRelation::Ultraparallel => (ReflectivityType::Hyperbolic, Some(sign_normal(&primitive(&v))), None),
            }
        }
        _ => return Ok(None),
    };
    let mut gens = reflections;
    gens.extend(a0.iter().cloned());
    let neg2 = walls.iter().filter(|w| l.norm(w) == -2).cloned();
    let base = orbit_representatives(neg2, a0);
    let cusps = full.report.cusp_orbits.clone();
    let mut r = ReflectivityReport {
        kind,
        invariant_sublattice_s0: None,
        witnesses: gens,
        orbit_presentation: Some(OrbitPresentation {
            base_roots_e: base,
            base_roots_f: None,
            certified: true,
        }),
        w,
        c,
        cusp_orbits: cusps,
        certified: true,
    };
    r.invariant_sublattice_s0 = maximal_invariant_sublattice(l, &r).ok();
    Ok(Some(r))
}
