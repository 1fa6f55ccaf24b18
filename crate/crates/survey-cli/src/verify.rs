//! Computed records against the reference table.

use std::collections::BTreeSet;

use chamber_analysis::{group_ball, solve_map};
use lattice_core::matrix::{integer_inverse, mat_vec};
use lattice_core::{is_isometry, GramLattice, IntMatrix, LatticeVector};
use serde::Serialize;

use crate::reference::{pairwise, CheckStatus, ReferenceEntry, ReferenceTable, SelfCheck};
use crate::run::{series_lists, RunRecord};

/// Words of length at most this in the generators are compared.
const BALL_DEPTH: usize = 12;
const BALL_CAP: usize = 4000;

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct KVerdict {
    pub k: i128,
    pub printed_type: String,
    pub computed_type: String,
    pub status: CheckStatus,
    pub notes: Vec<String>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct ListCheck {
    pub name: String,
    pub expected: Vec<i128>,
    pub computed: Vec<i128>,
    pub status: CheckStatus,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct VerifyReport {
    pub self_checks: Vec<SelfCheck>,
    pub per_k: Vec<KVerdict>,
    pub lists: Vec<ListCheck>,
}

impl VerifyReport {
    pub fn has_fail(&self) -> bool {
        self.self_checks.iter().any(|c| c.status == CheckStatus::Fail)
            || self.per_k.iter().any(|v| v.status == CheckStatus::Fail)
            || self.lists.iter().any(|v| v.status == CheckStatus::Fail)
    }
}

/// Every bijection `p` with `a[i][j] == b[p[i]][p[j]]`.
pub fn gram_permutations(a: &IntMatrix, b: &IntMatrix) -> Vec<Vec<usize>> {
    fn extend(a: &IntMatrix, b: &IntMatrix, p: &mut Vec<usize>, used: &mut Vec<bool>, out: &mut Vec<Vec<usize>>) {
        let i = p.len();
        if i == a.len() {
            out.push(p.clone());
            return;
        }
        for j in 0..b.len() {
            if used[j] || a[i][i] != b[j][j] || (0..i).any(|t| a[i][t] != b[j][p[t]]) {
                continue;
            }
            used[j] = true;
            p.push(j);
            extend(a, b, p, used, out);
            p.pop();
            used[j] = false;
        }
    }
    let mut out = Vec::new();
    if a.len() == b.len() {
        extend(a, b, &mut Vec::new(), &mut vec![false; b.len()], &mut out);
    }
    out
}

/// Isometry of `l` carrying `from[i]` to `to[i]` for every `i`, if one exists.
pub fn isometry_carrying(l: &GramLattice, from: &[LatticeVector], to: &[LatticeVector]) -> Option<IntMatrix> {
    let n = from.len();
    for i in 0..n {
        for j in i + 1..n {
            for t in j + 1..n {
                let Some(c) = solve_map(&[&from[i], &from[j], &from[t]], &[&to[i], &to[j], &to[t]]) else {
                    continue;
                };
                let ok = is_isometry(l, &c) && from.iter().zip(to).all(|(x, y)| mat_vec(&c, x) == *y);
                return ok.then_some(c);
            }
        }
    }
    None
}

fn same_line(a: &[i128], b: &[i128]) -> bool {
    a == b || a.iter().zip(b).all(|(x, y)| *x == -y)
}

fn check_elliptic(l: &GramLattice, e: &ReferenceEntry, r: &RunRecord, notes: &mut Vec<String>) -> bool {
    let (Some(roots), Some(gram)) = (&e.roots, &e.gram) else {
        notes.push("printed entry has no roots".into());
        return false;
    };
    let perms = gram_permutations(gram, &r.gram);
    if perms.is_empty() {
        notes.push(format!(
            "Gram matrices differ ({} printed walls, {} computed)",
            roots.len(),
            r.roots.len()
        ));
        return false;
    }
    for p in &perms {
        let target: Vec<LatticeVector> = p.iter().map(|&j| r.roots[j].clone()).collect();
        if let Some(c) = isometry_carrying(l, roots, &target) {
            notes.push(format!("Gram equal under permutation {p:?}; roots carried by {c:?}"));
            return true;
        }
    }
    notes.push("Gram equal up to permutation but no isometry carries the printed roots".into());
    false
}

fn group(gens: &[IntMatrix]) -> Vec<IntMatrix> {
    group_ball(gens, BALL_DEPTH, BALL_CAP)
}

/// `Some(true)` printed group equals ours, `Some(false)` printed is a proper subgroup, `None` otherwise.
fn compare_groups(printed: &[IntMatrix], ours: &[IntMatrix]) -> Option<bool> {
    let ball_ours = group(ours);
    let ball_printed = group(printed);
    let printed_in_ours = printed.iter().all(|g| ball_ours.contains(g));
    let ours_in_printed = ours.iter().all(|g| ball_printed.contains(g));
    match (printed_in_ours, ours_in_printed) {
        (true, true) => Some(true),
        (true, false) => Some(false),
        _ => None,
    }
}

fn check_hyperbolic(
    l: &GramLattice,
    e: &ReferenceEntry,
    r: &RunRecord,
    notes: &mut Vec<String>,
) -> Result<CheckStatus, ()> {
    let printed_norm = e.w_norm.ok_or(())?;
    let w = r.w.as_ref().ok_or(())?;
    if r.w_norm != Some(printed_norm) {
        notes.push(format!("(w,w) computed {:?}, printed {printed_norm}", r.w_norm));
        return Err(());
    }
    if let Some(pw) = &e.w {
        if !same_line(pw, w) {
            notes.push(format!("w computed {w:?}, printed {pw:?}"));
        }
    }
    for s in &r.symmetries {
        if !is_isometry(l, &s.matrix) || !same_line(&mat_vec(&s.matrix, w), w) {
            notes.push(format!("generator {:?} does not preserve w", s.matrix));
            return Err(());
        }
    }
    let ours: Vec<IntMatrix> = r.symmetries.iter().map(|s| s.matrix.clone()).collect();
    let printed: Vec<IntMatrix> = e.generators.iter().map(|g| g.matrix.clone()).collect();
    // Printed walls must be walls of the computed chamber: images of computed walls.
    let ball = group(&ours);
    let walls: BTreeSet<&LatticeVector> = r.roots.iter().collect();
    for v in e.e.iter().chain(e.f.iter()).flatten() {
        let hit = ball.iter().any(|g| {
            integer_inverse(g).is_some_and(|gi| walls.contains(&mat_vec(&gi, v)))
        });
        if !hit {
            notes.push(format!("printed wall {v:?} is not a wall of the computed chamber"));
            return Err(());
        }
    }
    for (name, vs, g) in [("e", &e.e, &e.gram_e), ("f", &e.f, &e.gram_f)] {
        if let (Some(vs), Some(g)) = (vs, g) {
            if pairwise(l, vs) != *g {
                notes.push(format!("printed {name} Gram inconsistent"));
                return Err(());
            }
        }
    }
    match compare_groups(&printed, &ours) {
        Some(true) => Ok(CheckStatus::Pass),
        Some(false) => {
            let extra: Vec<String> = r
                .symmetries
                .iter()
                .filter(|s| !group(&printed).contains(&s.matrix))
                .map(|s| format!("{} {:?}", s.kind, s.matrix))
                .collect();
            notes.push(format!("printed generators miss chamber symmetries: {}", extra.join("; ")));
            Ok(CheckStatus::DiscrepancyInSource)
        }
        None => {
            notes.push("printed and computed symmetry groups differ".into());
            Err(())
        }
    }
}

fn verify_one(table: &ReferenceTable, e: &ReferenceEntry, r: &RunRecord) -> KVerdict {
    let l = GramLattice::sk(e.k);
    let mut notes = Vec::new();
    let mut status = if r.kind != e.kind {
        notes.push(format!("type computed {}, printed {}", r.kind, e.kind));
        CheckStatus::Fail
    } else {
        match e.kind.as_str() {
            "elliptic" => {
                if check_elliptic(&l, e, r, &mut notes) {
                    CheckStatus::Pass
                } else {
                    CheckStatus::Fail
                }
            }
            "hyperbolic" => check_hyperbolic(&l, e, r, &mut notes).unwrap_or(CheckStatus::Fail),
            _ => CheckStatus::Pass,
        }
    };
    let lists = &table.summary_lists;
    let in_summary = [&lists.elliptic, &lists.hyperbolic, &lists.not_reflective]
        .iter()
        .any(|ks| ks.contains(&e.k));
    if !in_summary {
        notes.push(format!("k={} missing from the summary lists; table entry says {}", e.k, e.kind));
        if status == CheckStatus::Pass {
            status = CheckStatus::DiscrepancyInSource;
        }
    }
    KVerdict {
        k: e.k,
        printed_type: e.kind.clone(),
        computed_type: r.kind.clone(),
        status,
        notes,
    }
}

/// Per-k comparison, summary-list comparison and the table's own consistency checks.
pub fn verify_against_reference(records: &[RunRecord], table: &ReferenceTable) -> VerifyReport {
    let per_k: Vec<KVerdict> = records
        .iter()
        .filter_map(|r| {
            let e = table.entry(r.k?)?;
            (r.policy == crate::run::Policy::All).then(|| verify_one(table, e, r))
        })
        .collect();
    let mut lists = Vec::new();
    let computed = series_lists(records);
    let ks: BTreeSet<i128> = records.iter().filter_map(|r| r.k).collect();
    if !ks.is_empty() {
        let within = |v: &[i128]| v.iter().copied().filter(|k| ks.contains(k)).collect::<Vec<_>>();
        let ell = within(&table.summary_lists.elliptic);
        let nr = within(&table.summary_lists.not_reflective);
        // Hyperbolic is the remainder, so a k missing from every list counts here.
        let hyp: Vec<i128> = ks.iter().copied().filter(|k| !ell.contains(k) && !nr.contains(k)).collect();
        for (name, expected, got) in [
            ("elliptic", ell, computed.elliptic.clone()),
            ("hyperbolic", hyp, computed.hyperbolic.clone()),
            ("not_reflective", nr, computed.not_reflective.clone()),
            ("undecided", Vec::new(), computed.undecided.clone()),
        ] {
            let status = if expected == got { CheckStatus::Pass } else { CheckStatus::Fail };
            lists.push(ListCheck {
                name: name.into(),
                expected,
                computed: got,
                status,
            });
        }
    }
    VerifyReport {
        self_checks: table.self_check(),
        per_k,
        lists,
    }
}
