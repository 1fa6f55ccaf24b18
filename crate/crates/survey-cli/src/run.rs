use std::time::Instant;

use chamber_analysis::{
    analyze, analyze_two_reflective, Analysis, ChamberSymmetry, ReflectivityReport, ReflectivityType, TwoRoute,
};
use lattice_core::{parse_and_construct, parse_lattice, GramLattice, IntMatrix, LatticeVector};
use rayon::prelude::*;
use serde::{Deserialize, Serialize};
use vinberg_engine::{default_center, Budget, Center, Enumerator, Height, PolicyMode, RootPolicy, VinbergError};

use crate::cache::{content_hash, Cache};
use crate::SurveyError;

pub const TOOL_VERSION: &str = concat!("survey-cli ", env!("CARGO_PKG_VERSION"));

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Policy {
    /// Norm -2 reflections only.
    Two,
    /// Every admissible root norm.
    All,
}

impl Policy {
    pub fn label(self) -> &'static str {
        match self {
            Policy::Two => "two",
            Policy::All => "all",
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct Budgets {
    pub max_height: Height,
    pub max_roots: usize,
}

impl From<Budget> for Budgets {
    fn from(b: Budget) -> Self {
        Self {
            max_height: b.max_height,
            max_roots: b.max_roots,
        }
    }
}

impl From<Budgets> for Budget {
    fn from(b: Budgets) -> Self {
        Budget {
            max_height: b.max_height,
            max_roots: b.max_roots,
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct RunConfig {
    pub policy: Policy,
    pub center: Option<LatticeVector>,
    pub budget: Budgets,
}

impl Default for RunConfig {
    fn default() -> Self {
        Self {
            policy: Policy::All,
            center: None,
            budget: Budget::default().into(),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct SymmetryRecord {
    pub matrix: IntMatrix,
    pub kind: String,
    pub order: Option<u32>,
    pub witness: Option<LatticeVector>,
}

impl From<&ChamberSymmetry> for SymmetryRecord {
    fn from(s: &ChamberSymmetry) -> Self {
        Self {
            matrix: s.matrix().clone(),
            kind: s.kind.label().to_string(),
            order: s.order,
            witness: s.witness.clone(),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct InvariantSublattice {
    pub basis: Vec<LatticeVector>,
    pub gram: IntMatrix,
}

/// One finished run. Field names are the JSON report schema.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct RunRecord {
    pub lattice: String,
    pub k: Option<i128>,
    pub lattice_gram: IntMatrix,
    pub policy: Policy,
    pub center: LatticeVector,
    pub budgets: Budgets,
    #[serde(rename = "type")]
    pub kind: String,
    pub roots: Vec<LatticeVector>,
    pub gram: IntMatrix,
    pub symmetries: Vec<SymmetryRecord>,
    pub w: Option<LatticeVector>,
    pub w_norm: Option<i128>,
    pub c: Option<LatticeVector>,
    pub e: Option<Vec<LatticeVector>>,
    pub f: Option<Vec<LatticeVector>>,
    pub cusp_orbits: Vec<LatticeVector>,
    pub s0: Option<InvariantSublattice>,
    /// Every root up to this height was examined.
    pub frontier: Height,
    /// Two-reflective runs: `derived` or `direct`.
    pub route: Option<String>,
    pub routes_agree: Option<bool>,
    pub certified: bool,
    pub tool_version: String,
    pub content_hash: String,
    /// Wall-clock time; kept out of the report so reruns are byte-identical.
    #[serde(skip)]
    pub elapsed_ms: u128,
}

impl RunRecord {
    pub fn reflectivity(&self) -> ReflectivityType {
        match self.kind.as_str() {
            "elliptic" => ReflectivityType::Elliptic,
            "parabolic" => ReflectivityType::Parabolic,
            "hyperbolic" => ReflectivityType::Hyperbolic,
            "not_reflective" => ReflectivityType::NotReflective,
            _ => ReflectivityType::Undecided,
        }
    }
}

/// `Some(k)` when the form is exactly `U + <-2k>` in the standard basis.
pub fn sk_index(l: &GramLattice) -> Option<i128> {
    let g = l.gram();
    let d = *g.get(2)?.get(2)?;
    (l.rank() == 3 && d < 0 && d % 2 == 0 && *g == *GramLattice::sk(-d / 2).gram()).then_some(-d / 2)
}

fn canonical_input(l: &GramLattice, cfg: &RunConfig) -> String {
    format!(
        "{TOOL_VERSION}|gram={:?}|policy={}|center={:?}|max_height={}|max_roots={}",
        l.gram(),
        cfg.policy.label(),
        cfg.center,
        cfg.budget.max_height,
        cfg.budget.max_roots
    )
}

fn gram_of(l: &GramLattice, vs: &[LatticeVector]) -> IntMatrix {
    vs.iter().map(|a| vs.iter().map(|b| l.ip(a, b)).collect()).collect()
}

fn fill(rec: &mut RunRecord, l: &GramLattice, a: &Analysis, r: &ReflectivityReport) {
    rec.kind = r.kind.label().to_string();
    rec.roots = a.chamber.walls();
    rec.gram = gram_of(l, &rec.roots);
    rec.symmetries = r.witnesses.iter().map(SymmetryRecord::from).collect();
    rec.w = r.w.clone();
    rec.w_norm = r.w.as_ref().map(|w| l.norm(w));
    rec.c = r.c.clone();
    rec.e = r.orbit_presentation.as_ref().map(|o| o.base_roots_e.clone());
    rec.f = r.orbit_presentation.as_ref().and_then(|o| o.base_roots_f.clone());
    rec.cusp_orbits = r.cusp_orbits.clone();
    rec.s0 = r.invariant_sublattice_s0.as_ref().map(|s| InvariantSublattice {
        basis: s.basis.clone(),
        gram: s.gram(l),
    });
    rec.frontier = a.chamber.frontier;
    rec.certified = r.certified;
    rec.center = a.chamber.center.rho.clone();
}

fn compute(text: &str, l: &GramLattice, cfg: &RunConfig, hash: String) -> Result<RunRecord, SurveyError> {
    let center = match &cfg.center {
        Some(c) => Center::new(l, c)?,
        None => default_center(l)?,
    };
    let budget: Budget = cfg.budget.into();
    let mut rec = RunRecord {
        lattice: parse_lattice(text)?.to_string(),
        k: sk_index(l),
        lattice_gram: l.gram().clone(),
        policy: cfg.policy,
        center: center.rho.clone(),
        budgets: cfg.budget,
        kind: ReflectivityType::Undecided.label().to_string(),
        roots: Vec::new(),
        gram: Vec::new(),
        symmetries: Vec::new(),
        w: None,
        w_norm: None,
        c: None,
        e: None,
        f: None,
        cusp_orbits: Vec::new(),
        s0: None,
        frontier: Height::ZERO,
        route: None,
        routes_agree: None,
        certified: false,
        tool_version: TOOL_VERSION.to_string(),
        content_hash: hash,
        elapsed_ms: 0,
    };
    if l.rank() != 3 {
        // Closure and symmetries are rank-3 only; enumerate and stop.
        let mode = match cfg.policy {
            Policy::Two => PolicyMode::TwoOnly,
            Policy::All => PolicyMode::AllNorms,
        };
        let mut e = Enumerator::new(l.clone(), center, RootPolicy::new(l, mode))?;
        match e.advance_to(budget.max_height, budget.max_roots) {
            Ok(()) | Err(VinbergError::RootCapReached(_)) => {}
            Err(err) => return Err(err.into()),
        }
        rec.roots = e.accepted().iter().map(|r| r.coords.clone()).collect();
        rec.gram = gram_of(l, &rec.roots);
        rec.frontier = e.frontier();
        return Ok(rec);
    }
    match cfg.policy {
        Policy::All => {
            let a = analyze(l, &center, &RootPolicy::new(l, PolicyMode::AllNorms), &budget)?;
            fill(&mut rec, l, &a, &a.report);
        }
        Policy::Two => {
            let t = analyze_two_reflective(l, Some(&center), &budget)?;
            let source = match t.route {
                TwoRoute::Derived => &t.full,
                TwoRoute::Direct => &t.direct,
            };
            fill(&mut rec, l, source, &t.report);
            rec.route = Some(
                match t.route {
                    TwoRoute::Derived => "derived",
                    TwoRoute::Direct => "direct",
                }
                .to_string(),
            );
            rec.routes_agree = Some(t.routes_agree());
        }
    }
    Ok(rec)
}

/// Parse, construct, enumerate, analyze; answered from `cache` on an exact hash match.
pub fn run_one(text: &str, cfg: &RunConfig, cache: Option<&Cache>) -> Result<RunRecord, SurveyError> {
    let l = parse_and_construct(text, true)?;
    if !l.is_hyperbolic() {
        return Err(SurveyError::NotHyperbolic);
    }
    let hash = content_hash(&canonical_input(&l, cfg));
    if let Some(rec) = cache.and_then(|c| c.get(&hash)) {
        return Ok(rec);
    }
    let t0 = Instant::now();
    let mut rec = compute(text, &l, cfg, hash)?;
    rec.elapsed_ms = t0.elapsed().as_millis();
    if let Some(c) = cache {
        c.put(&rec)?;
    }
    Ok(rec)
}

pub fn sk_expression(k: i128) -> String {
    format!("U + <{}>", -2 * k)
}

/// `U + <-2k>` for every k in the range, in k order whatever the completion order.
pub fn run_series(
    k_from: i128,
    k_to: i128,
    cfg: &RunConfig,
    jobs: usize,
    cache: Option<&Cache>,
) -> Result<Vec<RunRecord>, SurveyError> {
    if k_from < 1 || k_to < k_from {
        return Err(SurveyError::BadRange(k_from, k_to));
    }
    let pool = rayon::ThreadPoolBuilder::new()
        .num_threads(jobs.max(1))
        .build()
        .map_err(|e| SurveyError::Pool(e.to_string()))?;
    let ks: Vec<i128> = (k_from..=k_to).collect();
    pool.install(|| {
        ks.par_iter()
            .map(|&k| run_one(&sk_expression(k), cfg, cache))
            .collect::<Result<Vec<_>, _>>()
    })
}

/// Elliptic, hyperbolic, parabolic, not reflective and undecided k values.
#[derive(Debug, Clone, Default, PartialEq, Eq, Serialize)]
pub struct SeriesLists {
    pub elliptic: Vec<i128>,
    pub parabolic: Vec<i128>,
    pub hyperbolic: Vec<i128>,
    pub not_reflective: Vec<i128>,
    pub undecided: Vec<i128>,
}

pub fn series_lists(records: &[RunRecord]) -> SeriesLists {
    let mut s = SeriesLists::default();
    for r in records {
        let Some(k) = r.k else { continue };
        match r.reflectivity() {
            ReflectivityType::Elliptic => s.elliptic.push(k),
            ReflectivityType::Parabolic => s.parabolic.push(k),
            ReflectivityType::Hyperbolic => s.hyperbolic.push(k),
            ReflectivityType::NotReflective => s.not_reflective.push(k),
            ReflectivityType::Undecided => s.undecided.push(k),
        }
    }
    s
}
