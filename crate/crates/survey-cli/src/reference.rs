//! Transcribed survey tables for `U + <-2k>`, k = 1..60, with the loader's
//! arithmetic cross-checks.

use std::collections::BTreeSet;

use lattice_core::matrix::mat_vec;
use lattice_core::{is_isometry, GramLattice, IntMatrix, LatticeVector};
use serde::{Deserialize, Serialize};

use crate::SurveyError;

const EMBEDDED: &str = include_str!("../data/reference.json");

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct SummaryLists {
    pub elliptic: Vec<i128>,
    pub hyperbolic: Vec<i128>,
    pub not_reflective: Vec<i128>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct PrintedGenerator {
    pub name: String,
    pub matrix: IntMatrix,
    pub kind: String,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct ReferenceEntry {
    pub k: i128,
    #[serde(rename = "type")]
    pub kind: String,
    #[serde(default)]
    pub roots: Option<Vec<LatticeVector>>,
    #[serde(default)]
    pub gram: Option<IntMatrix>,
    #[serde(default)]
    pub w_norm: Option<i128>,
    #[serde(default)]
    pub e: Option<Vec<LatticeVector>>,
    #[serde(default)]
    pub gram_e: Option<IntMatrix>,
    #[serde(default)]
    pub f: Option<Vec<LatticeVector>>,
    #[serde(default)]
    pub gram_f: Option<IntMatrix>,
    #[serde(default)]
    pub w: Option<LatticeVector>,
    #[serde(default)]
    pub generators: Vec<PrintedGenerator>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct ReferenceTable {
    pub lattice_family: String,
    pub summary_lists: SummaryLists,
    pub entries: Vec<ReferenceEntry>,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "SCREAMING-KEBAB-CASE")]
pub enum CheckStatus {
    Pass,
    Fail,
    DiscrepancyInSource,
}

impl CheckStatus {
    pub fn label(self) -> &'static str {
        match self {
            CheckStatus::Pass => "PASS",
            CheckStatus::Fail => "FAIL",
            CheckStatus::DiscrepancyInSource => "DISCREPANCY-IN-SOURCE",
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct SelfCheck {
    pub k: Option<i128>,
    /// Which printed pair was compared, e.g. `gram_e` or `C_1 w`.
    pub item: String,
    pub status: CheckStatus,
    pub detail: String,
}

impl ReferenceTable {
    pub fn embedded() -> Self {
        serde_json::from_str(EMBEDDED).expect("embedded reference table parses")
    }

    pub fn from_path(path: &std::path::Path) -> Result<Self, SurveyError> {
        let text = std::fs::read_to_string(path)?;
        Ok(serde_json::from_str(&text)?)
    }

    pub fn entry(&self, k: i128) -> Option<&ReferenceEntry> {
        self.entries.iter().find(|e| e.k == k)
    }

    /// Exact cross-checks of the printed data against itself.
    pub fn self_check(&self) -> Vec<SelfCheck> {
        let mut out = Vec::new();
        for e in &self.entries {
            let l = GramLattice::sk(e.k);
            let mut push = |item: &str, ok: bool, detail: String| {
                out.push(SelfCheck {
                    k: Some(e.k),
                    item: item.to_string(),
                    status: if ok { CheckStatus::Pass } else { CheckStatus::Fail },
                    detail,
                });
            };
            for (item, vs, g) in [
                ("gram", &e.roots, &e.gram),
                ("gram_e", &e.e, &e.gram_e),
                ("gram_f", &e.f, &e.gram_f),
            ] {
                if let (Some(vs), Some(g)) = (vs, g) {
                    let got = pairwise(&l, vs);
                    push(item, got == *g, format!("{got:?}"));
                }
            }
            if let (Some(w), Some(n)) = (&e.w, e.w_norm) {
                let got = l.norm(w);
                push("w_norm", got == n, format!("(w,w) = {got}, printed {n}"));
            }
            for g in &e.generators {
                push(&format!("{} isometry", g.name), is_isometry(&l, &g.matrix), String::new());
                if let Some(w) = &e.w {
                    let cw = mat_vec(&g.matrix, w);
                    let neg: LatticeVector = w.iter().map(|x| -x).collect();
                    let ok = cw == *w || cw == neg;
                    push(&format!("{} w", g.name), ok, format!("C w = {cw:?}"));
                }
            }
        }
        out.extend(self.summary_checks());
        out
    }

    /// Table entries against the closing summary lists.
    fn summary_checks(&self) -> Vec<SelfCheck> {
        let lists = [
            ("elliptic", &self.summary_lists.elliptic),
            ("hyperbolic", &self.summary_lists.hyperbolic),
            ("not_reflective", &self.summary_lists.not_reflective),
        ];
        let mut out = Vec::new();
        for e in &self.entries {
            let listed: Vec<&str> = lists.iter().filter(|(_, ks)| ks.contains(&e.k)).map(|(n, _)| *n).collect();
            if listed != [e.kind.as_str()] {
                out.push(SelfCheck {
                    k: Some(e.k),
                    item: "summary list".into(),
                    status: CheckStatus::DiscrepancyInSource,
                    detail: format!("table entry says {}, summary lists give {listed:?}", e.kind),
                });
            }
        }
        let all: BTreeSet<i128> = lists.iter().flat_map(|(_, ks)| ks.iter().copied()).collect();
        let listed_total: usize = lists.iter().map(|(_, ks)| ks.len()).sum();
        out.push(SelfCheck {
            k: None,
            item: "summary lists disjoint".into(),
            status: if all.len() == listed_total { CheckStatus::Pass } else { CheckStatus::Fail },
            detail: format!("{} distinct of {listed_total}", all.len()),
        });
        out
    }
}

pub(crate) fn pairwise(l: &GramLattice, vs: &[LatticeVector]) -> IntMatrix {
    vs.iter().map(|a| vs.iter().map(|b| l.ip(a, b)).collect()).collect()
}
