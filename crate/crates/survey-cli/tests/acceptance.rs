//! One PASS/FAIL line per acceptance criterion.
//!
//! Every expected value below is either written out by hand or recomputed here
//! with plain integer arithmetic, independently of the library path it checks.

use std::collections::BTreeSet;
use std::sync::OnceLock;
use std::time::{Duration, Instant};

use chamber_analysis::{
    analyze_at_height, analyze_two_reflective, classify_isometry, group_ball, normalized_line, ReflectivityType, SymmetryKind,
};
use hyperbolic_geometry::{lemma2_gram_det, LemmaConstants, QSqrt5};
use k3_invariants::{intermediate_lattices, root_sublattice_span, two_elementary_data, FixedLocusCase};
use lattice_core::matrix::solve_rational;
use lattice_core::{parse_and_construct, GramLattice, IntMatrix, LatticeIsometry, LatticeVector};
use num_bigint::BigInt;
use num_rational::BigRational;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use survey_cli::reference::CheckStatus;
use survey_cli::run::Budgets;
use survey_cli::*;
use vinberg_engine::{Budget, Center, Height, PolicyMode, RootPolicy};

const ELLIPTIC: [i128; 36] = [
    1, 2, 3, 4, 5, 6, 7, 8, 9, 10, 11, 12, 13, 14, 15, 16, 17, 18, 19, 20, 21, 22, 24, 25, 26, 28, 30, 33, 34, 36,
    39, 42, 45, 49, 50, 55,
];
const NOT_REFLECTIVE: [i128; 9] = [27, 32, 41, 47, 51, 53, 54, 58, 59];

/// Criteria allowed to fail, and the only k each may fail on.
const KNOWN_DEVIATIONS: [(u32, &[i128]); 2] = [(1, &[43]), (3, &[43])];

struct Outcome {
    pass: bool,
    detail: String,
    /// k values responsible for a FAIL, when the criterion is per-k.
    failing: Vec<i128>,
    /// Checks that are not per-k all held.
    rest_ok: bool,
}

impl Outcome {
    fn new(failing: Vec<i128>, extra_ok: bool, detail: String) -> Self {
        Self {
            pass: failing.is_empty() && extra_ok,
            detail,
            failing,
            rest_ok: extra_ok,
        }
    }
}

struct Series {
    single: Vec<RunRecord>,
    single_time: Duration,
    parallel: Vec<RunRecord>,
    parallel_time: Duration,
}

fn series() -> &'static Series {
    static S: OnceLock<Series> = OnceLock::new();
    S.get_or_init(|| {
        let cfg = RunConfig::default();
        let t = Instant::now();
        let parallel = run_series(1, 60, &cfg, 4, None).unwrap();
        let parallel_time = t.elapsed();
        let t = Instant::now();
        let single = run_series(1, 60, &cfg, 1, None).unwrap();
        Series {
            single,
            single_time: t.elapsed(),
            parallel,
            parallel_time,
        }
    })
}

fn record(k: i128) -> &'static RunRecord {
    &series().single[(k - 1) as usize]
}

fn table() -> &'static ReferenceTable {
    static T: OnceLock<ReferenceTable> = OnceLock::new();
    T.get_or_init(ReferenceTable::embedded)
}

// Plain integer linear algebra for the oracles.

fn mul(a: &IntMatrix, b: &IntMatrix) -> IntMatrix {
    (0..a.len())
        .map(|i| (0..b[0].len()).map(|j| (0..b.len()).map(|t| a[i][t] * b[t][j]).sum()).collect())
        .collect()
}

fn transpose(a: &IntMatrix) -> IntMatrix {
    (0..a[0].len()).map(|j| a.iter().map(|r| r[j]).collect()).collect()
}

fn apply(c: &IntMatrix, v: &[i128]) -> LatticeVector {
    c.iter().map(|r| r.iter().zip(v).map(|(a, b)| a * b).sum()).collect()
}

fn bilinear(g: &IntMatrix, x: &[i128], y: &[i128]) -> i128 {
    x.iter().zip(g).map(|(a, row)| a * row.iter().zip(y).map(|(b, c)| b * c).sum::<i128>()).sum()
}

fn gram(g: &IntMatrix, vs: &[LatticeVector]) -> IntMatrix {
    vs.iter().map(|a| vs.iter().map(|b| bilinear(g, a, b)).collect()).collect()
}

fn preserves_form(g: &IntMatrix, c: &IntMatrix) -> bool {
    mul(&mul(&transpose(c), g), c) == *g
}

fn fixes_line(c: &IntMatrix, w: &[i128]) -> bool {
    let cw = apply(c, w);
    cw == w || cw.iter().zip(w).all(|(a, b)| *a == -b)
}

/// Does some simultaneous reordering carry Gram `a` onto Gram `b`?
fn same_gram_up_to_order(a: &IntMatrix, b: &IntMatrix) -> bool {
    fn extend(a: &IntMatrix, b: &IntMatrix, map: &mut Vec<usize>, used: &mut Vec<bool>) -> bool {
        let i = map.len();
        if i == a.len() {
            return true;
        }
        for j in 0..b.len() {
            if used[j] || a[i][i] != b[j][j] || !map.iter().enumerate().all(|(p, &q)| a[i][p] == b[j][q]) {
                continue;
            }
            used[j] = true;
            map.push(j);
            if extend(a, b, map, used) {
                return true;
            }
            map.pop();
            used[j] = false;
        }
        false
    }
    a.len() == b.len() && extend(a, b, &mut Vec::new(), &mut vec![false; b.len()])
}

fn as_set(vs: &[LatticeVector]) -> BTreeSet<LatticeVector> {
    vs.iter().cloned().collect()
}

fn criterion_1() -> Outcome {
    let s = series();
    let lists = series_lists(&s.single);
    let printed_hyp: Vec<i128> = (1..=60)
        .filter(|k| !ELLIPTIC.contains(k) && !NOT_REFLECTIVE.contains(k))
        .collect();
    let mut failing = BTreeSet::new();
    for (computed, expected) in [
        (&lists.elliptic, ELLIPTIC.to_vec()),
        (&lists.not_reflective, NOT_REFLECTIVE.to_vec()),
        (&lists.hyperbolic, printed_hyp.clone()),
    ] {
        let (a, b) = (as_set_k(computed), as_set_k(&expected));
        failing.extend(a.symmetric_difference(&b).copied());
    }
    failing.extend(lists.undecided.iter().copied());
    failing.extend(lists.parabolic.iter().copied());

    // The summary lists omit 57, which the per-k table prints as hyperbolic.
    let t = table();
    let omitted: Vec<i128> = printed_hyp.iter().copied().filter(|k| !t.summary_lists.hyperbolic.contains(k)).collect();
    let v = verify_against_reference(&s.single, t);
    let surfaced = v
        .per_k
        .iter()
        .find(|p| p.k == 57)
        .is_some_and(|p| p.status == CheckStatus::DiscrepancyInSource);
    let identical = emit_report(&s.single, Format::Json) == emit_report(&s.parallel, Format::Json);
    let fast = s.single_time < Duration::from_secs(30 * 60) && s.parallel_time < Duration::from_secs(10 * 60);
    Outcome::new(
        failing.iter().copied().collect(),
        omitted == [57] && surfaced && identical && fast,
        format!(
            "elliptic {}, hyperbolic {}, not reflective {}, undecided {}; mismatched k {:?}; k=57 missing from printed summary, reported {}; 1 job {:.1}s, 4 jobs {:.1}s, identical {identical}",
            lists.elliptic.len(),
            lists.hyperbolic.len(),
            lists.not_reflective.len(),
            lists.undecided.len(),
            failing,
            if surfaced { "DISCREPANCY-IN-SOURCE" } else { "nothing" },
            s.single_time.as_secs_f64(),
            s.parallel_time.as_secs_f64()
        ),
    )
}

fn as_set_k(v: &[i128]) -> BTreeSet<i128> {
    v.iter().copied().collect()
}

fn criterion_2() -> Outcome {
    let t = table();
    let v = verify_against_reference(&(1..=60).map(|k| record(k).clone()).collect::<Vec<_>>(), t);
    let mut failing = Vec::new();
    let mut notes = Vec::new();
    for k in [1, 2, 5, 11, 17] {
        let (e, r) = (t.entry(k).unwrap(), record(k));
        let printed = e.roots.as_ref().unwrap();
        let g = GramLattice::sk(k);
        let ok = r.kind == "elliptic"
            && same_gram_up_to_order(e.gram.as_ref().unwrap(), &gram(g.gram(), &r.roots))
            && as_set(printed) == as_set(&r.roots)
            && v.per_k[(k - 1) as usize].status == CheckStatus::Pass;
        notes.push(format!("k={k} {} walls", r.roots.len()));
        if !ok {
            failing.push(k);
        }
    }

    // k=23: every printed e and f root is a wall of the computed chamber, or
    // becomes one after the printed translation or its inverse.
    let (e, r) = (t.entry(23).unwrap(), record(23));
    let g = GramLattice::sk(23);
    let c = &e.generators.iter().find(|p| p.kind.contains("translation")).unwrap().matrix;
    let c_inv = LatticeIsometry::new(&g, c.clone()).unwrap().inverse().into_matrix();
    let walls = as_set(&r.roots);
    let printed: Vec<LatticeVector> = e.e.clone().unwrap().into_iter().chain(e.f.clone().unwrap()).collect();
    let placed = printed
        .iter()
        .all(|p| walls.contains(p) || walls.contains(&apply(c, p)) || walls.contains(&apply(&c_inv, p)));
    let grams = gram(g.gram(), e.e.as_ref().unwrap()) == *e.gram_e.as_ref().unwrap()
        && gram(g.gram(), e.f.as_ref().unwrap()) == *e.gram_f.as_ref().unwrap();
    let lib = v.per_k[22].status != CheckStatus::Fail;
    if !(r.kind == "hyperbolic" && placed && grams && lib) {
        failing.push(23);
    }
    notes.push(format!("k=23 {} printed e/f roots on computed walls: {placed}", printed.len()));
    Outcome::new(failing, true, notes.join(", "))
}

fn criterion_3() -> Outcome {
    let t = table();
    let mut failing = Vec::new();
    let mut checked = 0;
    for e in t.entries.iter().filter(|e| e.kind == "hyperbolic" && (23..=60).contains(&e.k)) {
        let r = record(e.k);
        let g = GramLattice::sk(e.k);
        let ok = r.kind == "hyperbolic"
            && r.w_norm.is_some()
            && r.w_norm == e.w_norm
            && r.w.as_ref().is_some_and(|w| bilinear(g.gram(), w, w) == e.w_norm.unwrap())
            && !r.symmetries.is_empty()
            && r.symmetries.iter().all(|s| {
                preserves_form(g.gram(), &s.matrix) && fixes_line(&s.matrix, r.w.as_ref().unwrap())
            });
        checked += 1;
        if !ok {
            failing.push(e.k);
        }
    }
    let k57 = record(57).w_norm;
    Outcome::new(
        failing.clone(),
        true,
        format!("{checked} hyperbolic k checked (k=23 {:?}, k=35 {:?}, k=57 {k57:?}); failing {failing:?}",
            record(23).w_norm, record(35).w_norm),
    )
}

/// Two involutions with parabolic product fixing `c`, and one cusp orbit.
/// `to_s` maps lattice coordinates into `S_k` coordinates. Returns the number
/// of wall orbits.
fn two_reflective_ok(
    l: &GramLattice,
    rho: &[i128],
    to_s: &dyn Fn(&[i128]) -> LatticeVector,
    delta1: Option<&[i128]>,
) -> Result<usize, String> {
    let center = Center::new(l, rho).map_err(|e| e.to_string())?;
    let t = analyze_two_reflective(l, Some(&center), &Budget::default()).map_err(|e| e.to_string())?;
    let r = &t.report;
    if r.kind != ReflectivityType::Parabolic || !t.routes_agree() {
        return Err(format!("type {}", r.kind.label()));
    }
    let c = r.c.as_ref().ok_or("no c")?;
    if normalized_line(&to_s(c)) != normalized_line(&[1, 0, 0]) || bilinear(l.gram(), c, c) != 0 {
        return Err(format!("c = {:?}", to_s(c)));
    }
    let inv: Vec<&IntMatrix> = r
        .witnesses
        .iter()
        .map(|s| s.matrix())
        .filter(|m| mul(m, m) == lattice_core::matrix::identity(3) && preserves_form(l.gram(), m))
        .collect();
    let pair = inv.iter().enumerate().any(|(i, a)| {
        inv[i + 1..].iter().any(|b| {
            let p = LatticeIsometry::new(l, mul(a, b)).unwrap();
            classify_isometry(l, &p).is_ok_and(|s| {
                s.kind == SymmetryKind::ParabolicTranslation
                    && s.witness.as_ref().is_some_and(|w| normalized_line(&to_s(w)) == normalized_line(&[1, 0, 0]))
            })
        })
    });
    if !pair {
        return Err(format!("{} involutions, none with parabolic product", inv.len()));
    }
    if r.cusp_orbits.len() != 1 {
        return Err(format!("{} cusp orbits", r.cusp_orbits.len()));
    }
    let base = &r.orbit_presentation.as_ref().ok_or("no orbit presentation")?.base_roots_e;
    if base.iter().any(|b| bilinear(l.gram(), b, b) != -2) {
        return Err(format!("base roots {base:?}"));
    }
    // P(M) = A(M)(delta1): one orbit of walls, and delta1 lies in it.
    if let Some(d) = delta1 {
        let gens: Vec<IntMatrix> = r.witnesses.iter().map(|s| s.matrix().clone()).collect();
        let reached = base.len() == 1 && group_ball(&gens, 6, 200).iter().any(|g| to_s(&apply(g, &base[0])) == d);
        if !reached {
            return Err(format!("base roots {:?} do not reach delta1", base.iter().map(|b| to_s(b)).collect::<Vec<_>>()));
        }
    }
    Ok(base.len())
}

fn criterion_4() -> Outcome {
    let mut failing = Vec::new();
    let mut notes = Vec::new();
    let mut s2_indices = Vec::new();
    for k in [2, 3, 5, 7, 13] {
        let sk = GramLattice::sk(k);
        let sub = root_sublattice_span(&sk, 2).unwrap().span.unwrap();
        for f in intermediate_lattices(&sk, &sub).unwrap() {
            if k == 2 {
                s2_indices.push(f.index);
            }
            let to_s = |v: &[i128]| -> LatticeVector {
                (0..3).map(|j| v.iter().zip(&f.basis).map(|(a, b)| a * b[j]).sum()).collect()
            };
            // The center (1,0,0) of S_k, written in the sublattice basis.
            let x = solve_rational(&transpose(&f.basis), &[f.index as i128, 0, 0]).unwrap();
            let rho: Vec<i128> = x.iter().map(|q| q.to_integer().try_into().unwrap()).collect();
            let delta1: Option<&[i128]> = (k == 2).then_some(&[-1, 1, 0]);
            match two_reflective_ok(&f.lattice, &rho, &to_s, delta1) {
                Ok(orbits) => notes.push(format!("S_{k},{} ok ({orbits} wall orbits)", f.index)),
                Err(e) => {
                    notes.push(format!("S_{k},{}: {e}", f.index));
                    failing.push(k);
                }
            }
        }
    }
    Outcome::new(failing, s2_indices == [1, 2, 4], format!("S_2 indices {s2_indices:?}; {}", notes.join(", ")))
}

fn criterion_5() -> Outcome {
    let printed: IntMatrix = vec![
        vec![-2, 2, 11, 13, 20, 0],
        vec![2, -2, 0, 20, 46, 22],
        vec![11, 0, -22, 0, 22, 33],
        vec![13, 20, 0, -2, 2, 11],
        vec![20, 46, 22, 2, -2, 0],
        vec![0, 22, 33, 11, 0, -22],
    ];
    let cfg = RunConfig {
        policy: Policy::Two,
        ..RunConfig::default()
    };
    let r = run_one("U(11) + <-2>", &cfg, None).unwrap();
    let g = &r.lattice_gram;
    let polygon = r.roots.len() == 6 && same_gram_up_to_order(&printed, &gram(g, &r.roots));
    let s0 = r.s0.as_ref().map(|s| s.basis.clone()).unwrap_or_default();
    let s0_ok = s0.len() == 1 && bilinear(g, &s0[0], &s0[0]) == -10;
    // Up to isometry: s0 or its image under some reflection in a chamber wall
    // lies on the line of (2,2,-7).
    let target = normalized_line(&[2, 2, -7]);
    let line_ok = s0_ok && {
        let mut images = vec![s0[0].clone()];
        for d in &r.roots {
            let n = bilinear(g, d, d);
            images.push(s0[0].iter().zip(d).map(|(x, y)| x - 2 * bilinear(g, &s0[0], d) / n * y).collect());
        }
        images.iter().any(|v| normalized_line(v) == target)
    };
    Outcome::new(
        Vec::new(),
        polygon && r.kind == "hyperbolic" && line_ok,
        format!(
            "{} walls, Gram matches printed: {polygon}; type {}; s0 {:?} norm {}",
            r.roots.len(),
            r.kind,
            s0,
            s0.first().map(|v| bilinear(g, v, v)).unwrap_or(0)
        ),
    )
}

fn criterion_6() -> Outcome {
    let mut rng = ChaCha8Rng::seed_from_u64(6);
    let mut bad = 0;
    for _ in 0..1000 {
        let (b, x): (i128, i128) = (rng.gen_range(-100_000..=100_000), rng.gen_range(-100_000..=100_000));
        let expected = x * x * (b * b - 4) - 16 * x - 4 * b * b - 16;
        if lemma2_gram_det(b, x) != BigInt::from(expected) {
            bad += 1;
        }
    }
    let lc = LemmaConstants::default();
    let exact = lc.bound_at_a0() == lc.two_plus_a0_squared() && lc.quartic_residual().is_zero();
    let tol = BigRational::new(1.into(), BigInt::from(10).pow(12));
    let a0 = lc.a0(&tol);
    let image = lc.bound_fn_interval(&a0);
    let narrow = image.width() < tol;
    let meets = lc.two_plus_a0_squared().enclose(&tol).overlaps(&image);
    let printed = QSqrt5::int(10, 4).enclose(&tol).decimal(8);
    Outcome::new(
        Vec::new(),
        bad == 0 && exact && narrow && meets && printed.as_deref() == Some("18.94427191"),
        format!(
            "{bad}/1000 determinant mismatches; exact identities {exact}; bound(a0) interval width < 1e-12 {narrow}, meets 2+a0^2 {meets}; 10+4 sqrt5 = {}",
            printed.unwrap_or_default()
        ),
    )
}

fn criterion_7() -> Outcome {
    let t = table();
    let (mut pairs, mut failing) = (0, BTreeSet::new());
    for e in &t.entries {
        let g = GramLattice::sk(e.k);
        let g = g.gram();
        let mut check = |ok: bool| {
            pairs += 1;
            if !ok {
                failing.insert(e.k);
            }
        };
        for (vs, gm) in [(&e.roots, &e.gram), (&e.e, &e.gram_e), (&e.f, &e.gram_f)] {
            if let (Some(vs), Some(gm)) = (vs, gm) {
                check(gram(g, vs) == *gm);
            }
        }
        if let (Some(w), Some(n)) = (&e.w, e.w_norm) {
            check(bilinear(g, w, w) == n);
        }
        for p in &e.generators {
            check(preserves_form(g, &p.matrix));
            if let Some(w) = &e.w {
                check(fixes_line(&p.matrix, w));
            }
        }
    }
    let lib = t.self_check();
    let reported: Vec<(Option<i128>, CheckStatus)> =
        lib.iter().filter(|c| c.status != CheckStatus::Pass).map(|c| (c.k, c.status)).collect();
    let lib_ok = reported == [(Some(57), CheckStatus::DiscrepancyInSource)];
    Outcome::new(
        failing.iter().copied().collect(),
        lib_ok,
        format!(
            "{pairs} printed pairs recomputed, {} failing; loader checks {} with {} reported as DISCREPANCY-IN-SOURCE (k=57 absent from the summary lists)",
            failing.len(),
            lib.len(),
            reported.len()
        ),
    )
}

/// Even rank-3 hyperbolic Gram matrices from a fixed seed.
fn random_lattices(n: usize) -> Vec<IntMatrix> {
    let mut rng = ChaCha8Rng::seed_from_u64(8);
    let mut out = Vec::new();
    while out.len() < n {
        let mut d = || rng.gen_range(-4i128..=4);
        let (a, b, c, x, y, z) = (d(), d(), d(), d(), d(), d());
        let m = vec![vec![2 * a, x, y], vec![x, 2 * b, z], vec![y, z, 2 * c]];
        let Ok(l) = GramLattice::new(m.clone()) else { continue };
        let det = l.determinant();
        if l.is_hyperbolic() && det != BigInt::from(0) && det.magnitude() <= &100u32.into() {
            out.push(m);
        }
    }
    out
}

fn literal(m: &IntMatrix) -> String {
    let rows: Vec<String> = m
        .iter()
        .map(|r| format!("[{}]", r.iter().map(|x| x.to_string()).collect::<Vec<_>>().join(",")))
        .collect();
    format!("[{}]", rows.join(","))
}

/// Acceptance sign, reflection integrality and doubling stability for one record.
fn properties_hold(r: &RunRecord) -> Result<(), String> {
    let g = &r.lattice_gram;
    let gm = gram(g, &r.roots);
    for i in 0..gm.len() {
        for j in 0..i {
            if gm[i][j] < 0 {
                return Err(format!("walls {i},{j} pair to {}", gm[i][j]));
            }
        }
    }
    for d in &r.roots {
        let n = bilinear(g, d, d);
        let e: Vec<LatticeVector> = (0..3).map(|i| (0..3).map(|j| (i == j) as i128).collect()).collect();
        if n >= 0 || e.iter().any(|b| (2 * bilinear(g, b, d)) % n != 0) {
            return Err(format!("reflection in {d:?} not integral"));
        }
        let s: IntMatrix = transpose(
            &e.iter()
                .map(|b| b.iter().zip(d).map(|(x, y)| x - 2 * bilinear(g, b, d) / n * y).collect())
                .collect(),
        );
        if !preserves_form(g, &s) {
            return Err(format!("reflection in {d:?} not an isometry"));
        }
    }
    if r.certified {
        let l = GramLattice::new(g.clone()).unwrap();
        let c = Center::new(&l, &r.center).unwrap();
        let again = analyze_at_height(
            &l,
            &c,
            &RootPolicy::new(&l, PolicyMode::AllNorms),
            r.frontier.double(),
            r.budgets.max_roots * 2,
        )
        .map_err(|e| e.to_string())?;
        if again.report.kind.label() != r.kind {
            return Err(format!("{} at doubled height, {} before", again.report.kind.label(), r.kind));
        }
        let w_norm = again.report.w.as_ref().map(|w| l.norm(w));
        if r.kind == "hyperbolic" && w_norm != r.w_norm {
            return Err("(w,w) changed at doubled height".into());
        }
        if r.kind == "elliptic" && as_set(&again.chamber.walls()) != as_set(&r.roots) {
            return Err("walls changed at doubled height".into());
        }
    }
    Ok(())
}

fn criterion_8() -> Outcome {
    let s = series();
    let mut failing = Vec::new();
    let mut notes = Vec::new();
    for (a, b) in s.single.iter().zip(&s.parallel) {
        let k = a.k.unwrap();
        if emit_report(std::slice::from_ref(a), Format::Json) != emit_report(std::slice::from_ref(b), Format::Json) {
            failing.push(k);
            notes.push(format!("k={k}: reruns differ"));
        } else if let Err(e) = properties_hold(a) {
            failing.push(k);
            notes.push(format!("k={k}: {e}"));
        }
    }
    let cfg = RunConfig {
        budget: Budgets {
            max_height: Height::integer(20_000),
            max_roots: 500,
        },
        ..RunConfig::default()
    };
    let mut kinds = std::collections::BTreeMap::<String, usize>::new();
    let mut random_bad = 0;
    for m in random_lattices(20) {
        let text = literal(&m);
        let result = run_one(&text, &cfg, None).and_then(|a| Ok((a, run_one(&text, &cfg, None)?)));
        let verdict = match &result {
            Err(e) => Err(e.to_string()),
            Ok((a, b)) if emit_report(&[a.clone()], Format::Json) != emit_report(&[b.clone()], Format::Json) => {
                Err("reruns differ".into())
            }
            Ok((a, _)) => properties_hold(a),
        };
        if let Ok((a, _)) = &result {
            *kinds.entry(a.kind.clone()).or_default() += 1;
        }
        if let Err(e) = verdict {
            random_bad += 1;
            notes.push(format!("{text}: {e}"));
        }
    }
    Outcome::new(
        failing,
        random_bad == 0,
        format!("60 series lattices and 20 random lattices {kinds:?}; {}", if notes.is_empty() { "no violations".into() } else { notes.join("; ") }),
    )
}

fn criterion_9() -> Outcome {
    let d4 = "[[-2,1,0,0],[1,-2,1,1],[0,1,-2,0],[0,1,0,-2]]";
    // (lattice, r, a, g, k) worked by hand from g = (22 - r - a)/2, k = (r - a)/2.
    let generic: Vec<(String, usize, usize, usize, usize)> = vec![
        ("U".into(), 2, 0, 10, 1),
        ("U(2)".into(), 2, 2, 9, 0),
        ("<2>".into(), 1, 1, 10, 0),
        ("U + <-2>".into(), 3, 1, 9, 1),
        ("U + <-2> + <-2>".into(), 4, 2, 8, 1),
        ("U(2) + <-2>".into(), 3, 3, 8, 0),
        (format!("U + {d4}"), 6, 2, 7, 2),
        ("U + E8".into(), 10, 0, 6, 5),
        ("U + E8 + E8".into(), 18, 0, 2, 9),
        ("U + E8 + E8 + <-2>".into(), 19, 1, 1, 9),
    ];
    let mut bad = Vec::new();
    for (s, r, a, g, k) in &generic {
        let d = two_elementary_data(&parse_and_construct(s, true).unwrap()).unwrap();
        if (d.r, d.a, d.g, d.k_curves, d.case) != (*r, *a, Some(*g), Some(*k), FixedLocusCase::Generic) {
            bad.push(s.clone());
        }
    }
    for (s, case) in [("U(2) + E8(2)", FixedLocusCase::ExceptionU2E82), ("U + E8(2)", FixedLocusCase::ExceptionUE82)] {
        let d = two_elementary_data(&parse_and_construct(s, true).unwrap()).unwrap();
        if d.case != case || d.delta {
            bad.push(s.into());
        }
    }
    Outcome::new(Vec::new(), bad.is_empty(), format!("10 generic lattices and 2 exceptions; wrong: {bad:?}"))
}

fn main() {
    let criteria: [(u32, fn() -> Outcome); 9] = [
        (1, criterion_1),
        (2, criterion_2),
        (3, criterion_3),
        (4, criterion_4),
        (5, criterion_5),
        (6, criterion_6),
        (7, criterion_7),
        (8, criterion_8),
        (9, criterion_9),
    ];
    let mut unexpected = Vec::new();
    for (n, f) in criteria {
        let o = f();
        println!("criterion {n} {}: {}", if o.pass { "PASS" } else { "FAIL" }, o.detail);
        if o.pass {
            continue;
        }
        let known = KNOWN_DEVIATIONS.iter().any(|(m, ks)| *m == n && o.rest_ok && o.failing == *ks);
        if known {
            println!("criterion {n} known deviation on k={:?}", o.failing);
        } else {
            unexpected.push(n);
        }
    }
    if !unexpected.is_empty() {
        eprintln!("unexpected failures: {unexpected:?}");
        std::process::exit(1);
    }
}
