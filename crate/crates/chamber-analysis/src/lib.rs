//! Closure, symmetry and type classification for rank-3 Vinberg chambers.
//!
//! The chamber after enumerating to height `H` is a polygon whose vertices are
//! either final (no root above `H` can cut them off) or still open. Symmetries
//! are matched on wall triples around final vertices, so every symmetry found
//! maps the true chamber to itself.

mod decide;
mod linalg;
mod polygon;
mod symmetry;
mod two_reflective;

use lattice_core::matrix::LatticeVector;
use lattice_core::span::saturate;
use lattice_core::{span_and_index, GramLattice, LatticeError, SublatticeSpan};
use thiserror::Error;
use vinberg_engine::{Budget, Center, Enumerator, Height, RootPolicy, RootVector, VinbergError};

pub use polygon::{finite_volume_check, polygon, FiniteVolume, Link, Polygon, VertexKind};
pub use symmetry::{classify_isometry, find_symmetry, ChamberSymmetry, SymmetryKind, FINITE_ORDER_BOUND};
pub use two_reflective::{analyze_two_reflective, TwoReflectiveAnalysis, TwoRoute};

pub use decide::group_ball;
use decide::{decide, Decision};
pub use linalg::{positive_reference, solve_map};
use linalg::{apply, perp_partner, proportional, sign_normal};

#[derive(Debug, Error)]
pub enum AnalysisError {
    #[error("closure certification supports rank 3 only, got rank {0}")]
    NotSupported(usize),
    #[error("walls do not bound a polygon yet")]
    DegeneratePolygon,
    #[error("matrix is not a cone-preserving isometry")]
    NotAnIsometry,
    #[error("operation needs a parabolic or hyperbolic report, got {0:?}")]
    WrongReportType(ReflectivityType),
    #[error(transparent)]
    Vinberg(#[from] VinbergError),
    #[error(transparent)]
    Lattice(#[from] LatticeError),
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum ChamberStatus {
    ClosedFiniteVolume,
    OpenWithSymmetry,
    OpenBudgetExhausted,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Chamber {
    pub lattice: GramLattice,
    pub center: Center,
    pub policy: RootPolicy,
    pub roots: Vec<RootVector>,
    /// Every root up to this height has been examined.
    pub frontier: Height,
    pub status: ChamberStatus,
}

impl Chamber {
    pub fn from_enumerator(e: &Enumerator) -> Self {
        Self {
            lattice: e.lattice().clone(),
            center: e.center().clone(),
            policy: e.policy().clone(),
            roots: e.accepted().to_vec(),
            frontier: e.frontier(),
            status: ChamberStatus::OpenBudgetExhausted,
        }
    }

    pub fn walls(&self) -> Vec<LatticeVector> {
        self.roots.iter().map(|r| r.coords.clone()).collect()
    }

    pub fn gram(&self) -> Vec<Vec<i128>> {
        let w = self.walls();
        w.iter().map(|a| w.iter().map(|b| self.lattice.ip(a, b)).collect()).collect()
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum ReflectivityType {
    Elliptic,
    Parabolic,
    Hyperbolic,
    NotReflective,
    Undecided,
}

impl ReflectivityType {
    pub fn label(self) -> &'static str {
        match self {
            ReflectivityType::Elliptic => "elliptic",
            ReflectivityType::Parabolic => "parabolic",
            ReflectivityType::Hyperbolic => "hyperbolic",
            ReflectivityType::NotReflective => "not_reflective",
            ReflectivityType::Undecided => "undecided",
        }
    }
}

/// `P(M) = A(M)(e ∪ f)`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct OrbitPresentation {
    pub base_roots_e: Vec<LatticeVector>,
    pub base_roots_f: Option<Vec<LatticeVector>>,
    pub certified: bool,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ReflectivityReport {
    pub kind: ReflectivityType,
    pub invariant_sublattice_s0: Option<SublatticeSpan>,
    /// Generators of the symmetry group found.
    pub witnesses: Vec<ChamberSymmetry>,
    pub orbit_presentation: Option<OrbitPresentation>,
    /// Invariant negative vector (hyperbolic) or fixed isotropic vector (parabolic).
    pub w: Option<LatticeVector>,
    pub c: Option<LatticeVector>,
    pub cusp_orbits: Vec<LatticeVector>,
    pub certified: bool,
}

impl ReflectivityReport {
    pub fn undecided() -> Self {
        Self {
            kind: ReflectivityType::Undecided,
            invariant_sublattice_s0: None,
            witnesses: Vec::new(),
            orbit_presentation: None,
            w: None,
            c: None,
            cusp_orbits: Vec::new(),
            certified: false,
        }
    }
}

#[derive(Debug, Clone)]
pub struct Analysis {
    pub chamber: Chamber,
    pub polygon: Option<Polygon>,
    pub symmetries: Vec<ChamberSymmetry>,
    pub report: ReflectivityReport,
}

fn presentation_of(d: &Decision, ch: &Chamber) -> Option<OrbitPresentation> {
    match d.kind {
        ReflectivityType::Elliptic => Some(OrbitPresentation {
            base_roots_e: ch.walls(),
            base_roots_f: None,
            certified: true,
        }),
        ReflectivityType::Hyperbolic | ReflectivityType::Parabolic => Some(OrbitPresentation {
            base_roots_e: d.chains[0].clone(),
            base_roots_f: d
                .chains
                .get(1)
                .cloned()
                .or_else(|| d.axis_wall.clone().map(|a| vec![a])),
            certified: true,
        }),
        _ => None,
    }
}

fn report_from(ch: &Chamber, poly: &Polygon, syms: &[ChamberSymmetry], d: Decision) -> ReflectivityReport {
    let mut r = ReflectivityReport {
        kind: d.kind,
        invariant_sublattice_s0: None,
        witnesses: d.generators.clone(),
        orbit_presentation: presentation_of(&d, ch),
        w: d.w.clone(),
        c: d.c.clone(),
        cusp_orbits: cusp_orbits_of(ch, poly, syms),
        certified: d.kind != ReflectivityType::Undecided,
    };
    r.invariant_sublattice_s0 = maximal_invariant_sublattice(&ch.lattice, &r).ok();
    r
}

/// Partition of the walls into orbits; certified once the type is.
pub fn orbit_presentation(ch: &Chamber, syms: &[ChamberSymmetry]) -> Result<OrbitPresentation, AnalysisError> {
    let poly = polygon(ch)?;
    let d = decide(ch, &poly, syms);
    Ok(presentation_of(&d, ch).unwrap_or(OrbitPresentation {
        base_roots_e: ch.walls(),
        base_roots_f: None,
        certified: false,
    }))
}

pub fn classify_type(ch: &Chamber, syms: &[ChamberSymmetry]) -> Result<ReflectivityReport, AnalysisError> {
    let poly = match polygon(ch) {
        Ok(p) => p,
        Err(AnalysisError::DegeneratePolygon) => return Ok(ReflectivityReport::undecided()),
        Err(e) => return Err(e),
    };
    let d = decide(ch, &poly, syms);
    Ok(report_from(ch, &poly, syms, d))
}

/// Final isotropic vertices modulo the symmetries found.
pub fn cusp_orbits(ch: &Chamber, syms: &[ChamberSymmetry]) -> Result<Vec<LatticeVector>, AnalysisError> {
    let poly = polygon(ch)?;
    Ok(cusp_orbits_of(ch, &poly, syms))
}

fn cusp_orbits_of(ch: &Chamber, poly: &Polygon, syms: &[ChamberSymmetry]) -> Vec<LatticeVector> {
    let reference = positive_reference(&ch.lattice, &ch.center.rho);
    let cusps = poly.links.iter().filter(|k| k.kind == VertexKind::Cusp && k.confirmed).map(|k| {
        let u = lattice_core::matrix::primitive(&k.vector);
        if ch.lattice.ip(&u, &reference) < 0 {
            lattice_core::matrix::neg(&u)
        } else {
            u
        }
    });
    orbit_representatives(cusps, syms)
}

pub(crate) fn orbit_representatives(
    items: impl Iterator<Item = LatticeVector>,
    syms: &[ChamberSymmetry],
) -> Vec<LatticeVector> {
    let gens: Vec<_> = syms.iter().map(|s| s.matrix().clone()).collect();
    let ball = if gens.is_empty() { Vec::new() } else { group_ball(&gens, 12, 4000) };
    let mut reps: Vec<LatticeVector> = Vec::new();
    for u in items {
        let seen = reps.iter().any(|r| *r == u || ball.iter().any(|g| apply(g, r) == u));
        if !seen {
            reps.push(u);
        }
    }
    reps
}

/// `S_0`: saturation of `w` (hyperbolic), or of `c` and the norm `-2`
/// vectors of `c^perp` (parabolic).
pub fn maximal_invariant_sublattice(l: &GramLattice, r: &ReflectivityReport) -> Result<SublatticeSpan, AnalysisError> {
    let gens = match (r.kind, &r.w, &r.c) {
        (ReflectivityType::Hyperbolic, Some(w), _) => vec![w.clone()],
        (ReflectivityType::Parabolic, _, Some(c)) => {
            if l.rank() != 3 {
                return Err(AnalysisError::NotSupported(l.rank()));
            }
            let mut g = vec![c.clone()];
            // c^perp = Z c + Z y with c^perp / c spanned by y; norm -2 vectors are a c +- y.
            if let Some(y) = perp_partner(l, c, c) {
                if l.norm(&y) == -2 {
                    g.push(y);
                }
            }
            g
        }
        (k, _, _) => return Err(AnalysisError::WrongReportType(k)),
    };
    let basis = saturate(&gens, l.rank())?;
    Ok(span_and_index(l, &basis)?)
}

/// Analysis with every candidate up to `h` examined, no early stop.
pub fn analyze_at_height(
    l: &GramLattice,
    center: &Center,
    policy: &RootPolicy,
    h: Height,
    max_roots: usize,
) -> Result<Analysis, AnalysisError> {
    let mut e = Enumerator::new(l.clone(), center.clone(), policy.clone())?;
    match e.advance_to(h, max_roots) {
        Ok(()) | Err(VinbergError::RootCapReached(_)) => {}
        Err(err) => return Err(err.into()),
    }
    Ok(analyze_state(&e))
}

/// First height cap tried by [`analyze`]; doubled until the type is certified.
pub const START_HEIGHT: i128 = 64;

/// Enumerate with a doubling height cap until the type is certified or the budget is spent.
pub fn analyze(l: &GramLattice, center: &Center, policy: &RootPolicy, budget: &Budget) -> Result<Analysis, AnalysisError> {
    let mut e = Enumerator::new(l.clone(), center.clone(), policy.clone())?;
    let mut h = Height::integer(START_HEIGHT).min(budget.max_height);
    loop {
        let capped = match e.advance_to(h, budget.max_roots) {
            Ok(()) => false,
            Err(VinbergError::RootCapReached(_)) => true,
            Err(err) => return Err(err.into()),
        };
        let a = analyze_state(&e);
        if a.report.kind != ReflectivityType::Undecided || capped || h >= budget.max_height {
            return Ok(a);
        }
        h = h.double().min(budget.max_height);
    }
}

fn analyze_state(e: &Enumerator) -> Analysis {
    let mut chamber = Chamber::from_enumerator(e);
    let Ok(poly) = polygon(&chamber) else {
        return Analysis {
            chamber,
            polygon: None,
            symmetries: Vec::new(),
            report: ReflectivityReport::undecided(),
        };
    };
    let syms = symmetry::symmetries_of(&chamber, &poly).unwrap_or_default();
    let d = decide(&chamber, &poly, &syms);
    chamber.status = if d.kind == ReflectivityType::Elliptic {
        ChamberStatus::ClosedFiniteVolume
    } else if d.kind != ReflectivityType::Undecided {
        ChamberStatus::OpenWithSymmetry
    } else {
        ChamberStatus::OpenBudgetExhausted
    };
    let report = report_from(&chamber, &poly, &syms, d);
    Analysis {
        chamber,
        polygon: Some(poly),
        symmetries: syms,
        report,
    }
}

/// Sign-normalized `w`, for comparing witnesses.
pub fn normalized_line(v: &[i128]) -> LatticeVector {
    sign_normal(&lattice_core::matrix::primitive(v))
}

/// Whether `c v = +-v`.
pub fn preserves_line(c: &lattice_core::IntMatrix, v: &[i128]) -> bool {
    let cv = apply(c, v);
    proportional(&cv, v) && (cv == v || cv.iter().zip(v).all(|(a, b)| *a == -b))
}
