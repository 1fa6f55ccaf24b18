//! Type decision from the polygon and its symmetries.

use std::collections::BTreeSet;

use lattice_core::matrix::{integer_inverse, max_abs, trace, LatticeVector};
use lattice_core::{GramLattice, IntMatrix, LatticeIsometry};

use crate::linalg::{apply, mul_checked, proportional, sign_normal};
use crate::polygon::Polygon;
use crate::symmetry::{classify_isometry, ChamberSymmetry, SymmetryKind};
use crate::{Chamber, ReflectivityType};

#[derive(Debug, Clone)]
pub(crate) struct Decision {
    pub kind: ReflectivityType,
    pub w: Option<LatticeVector>,
    pub c: Option<LatticeVector>,
    /// One translation period of each inequivalent boundary chain.
    pub chains: Vec<Vec<LatticeVector>>,
    pub axis_wall: Option<LatticeVector>,
    pub generators: Vec<ChamberSymmetry>,
}

impl Decision {
    fn undecided() -> Self {
        Decision {
            kind: ReflectivityType::Undecided,
            w: None,
            c: None,
            chains: Vec::new(),
            axis_wall: None,
            generators: Vec::new(),
        }
    }
}

fn apply_checked(c: &IntMatrix, v: &[i128]) -> Option<LatticeVector> {
    c.iter()
        .map(|r| {
            r.iter()
                .zip(v)
                .try_fold(0i128, |s, (a, b)| s.checked_add(a.checked_mul(*b)?))
        })
        .collect()
}

/// Maximal runs of walls joined by final vertices.
fn runs(ch: &Chamber, poly: &Polygon) -> Vec<Vec<LatticeVector>> {
    let walls = ch.walls();
    let n = poly.len();
    let Some(s) = (0..n).find(|&i| !poly.links[i].confirmed) else {
        return Vec::new();
    };
    let mut out = Vec::new();
    let mut cur = Vec::new();
    for t in 1..=n {
        let i = (s + t) % n;
        cur.push(walls[poly.order[i]].clone());
        if !poly.links[i].confirmed {
            out.push(std::mem::take(&mut cur));
        }
    }
    out
}

/// One period of `run` if `t` or its inverse shifts the run along itself.
fn covered(t: &IntMatrix, tinv: &IntMatrix, run: &[LatticeVector]) -> Option<Vec<LatticeVector>> {
    let pos = |v: &LatticeVector| run.iter().position(|x| x == v);
    for m in [t, tinv] {
        for i in 0..run.len().saturating_sub(1) {
            let (Some(a), Some(b)) = (apply_checked(m, &run[i]), apply_checked(m, &run[i + 1])) else {
                continue;
            };
            if let (Some(pa), Some(pb)) = (pos(&a), pos(&b)) {
                if pb == pa + 1 && pa > i {
                    return Some(run[i..pa].to_vec());
                }
            }
        }
    }
    None
}

/// Whether `d` is a translate of a member of `window`.
fn in_orbit(l: &GramLattice, t: &IntMatrix, tinv: &IntMatrix, window: &[LatticeVector], d: &[i128]) -> bool {
    let cap = 1000 * max_abs(d) + 1000;
    for b in window {
        if l.norm(b) != l.norm(d) {
            continue;
        }
        if b == d {
            return true;
        }
        for m in [t, tinv] {
            let mut x = b.clone();
            for _ in 0..200 {
                match apply_checked(m, &x) {
                    Some(y) => x = y,
                    None => break,
                }
                if x == d {
                    return true;
                }
                if max_abs(&x) > cap {
                    break;
                }
            }
        }
    }
    false
}

/// Elements of the group generated by `gens`, by breadth-first words.
pub fn group_ball(gens: &[IntMatrix], depth: usize, cap: usize) -> Vec<IntMatrix> {
    let n = gens.first().map_or(0, |g| g.len());
    let mut all_gens: Vec<IntMatrix> = gens.to_vec();
    for g in gens {
        if let Some(i) = integer_inverse(g) {
            all_gens.push(i);
        }
    }
    let mut seen: Vec<IntMatrix> = vec![lattice_core::matrix::identity(n)];
    let mut frontier = seen.clone();
    for _ in 0..depth {
        let mut next = Vec::new();
        for x in &frontier {
            for g in &all_gens {
                if let Some(y) = mul_checked(x, g) {
                    if !seen.contains(&y) {
                        seen.push(y.clone());
                        next.push(y);
                    }
                }
            }
        }
        if next.is_empty() || seen.len() > cap {
            break;
        }
        frontier = next;
    }
    seen
}

fn classify(l: &GramLattice, m: IntMatrix) -> Option<ChamberSymmetry> {
    classify_isometry(l, &LatticeIsometry::new(l, m).ok()?).ok()
}

pub(crate) fn decide(ch: &Chamber, poly: &Polygon, syms: &[ChamberSymmetry]) -> Decision {
    let l = &ch.lattice;
    if poly.is_closed() {
        return Decision {
            kind: ReflectivityType::Elliptic,
            generators: syms.to_vec(),
            ..Decision::undecided()
        };
    }
    let mut inf: Vec<ChamberSymmetry> = syms.iter().filter(|s| s.kind.is_infinite()).cloned().collect();
    for a in syms {
        for b in syms {
            if a == b {
                continue;
            }
            if let Some(p) = mul_checked(a.matrix(), b.matrix()) {
                if let Some(s) = classify(l, p) {
                    if s.kind.is_infinite() && !inf.iter().any(|x| x.matrix() == s.matrix()) {
                        inf.push(s);
                    }
                }
            }
        }
    }
    if inf.is_empty() {
        return Decision::undecided();
    }
    // Fixed data of every infinite-order element and of its conjugates.
    let mut data: BTreeSet<(bool, LatticeVector)> = BTreeSet::new();
    for s in &inf {
        let parabolic = s.kind == SymmetryKind::ParabolicTranslation;
        let x = s.witness.clone().expect("infinite kinds carry a witness");
        for c in syms {
            data.insert((parabolic, sign_normal(&lattice_core::matrix::primitive(&apply(c.matrix(), &x)))));
        }
        data.insert((parabolic, x));
    }
    if data.len() >= 2 {
        return Decision {
            kind: ReflectivityType::NotReflective,
            generators: independent_pair(l, &inf, syms),
            ..Decision::undecided()
        };
    }
    let mut trans: Vec<IntMatrix> = inf
        .iter()
        .filter(|s| s.kind != SymmetryKind::SkewSymmetry)
        .map(|s| s.matrix().clone())
        .collect();
    for s in inf.iter().filter(|s| s.kind == SymmetryKind::SkewSymmetry) {
        if let Some(sq) = mul_checked(s.matrix(), s.matrix()) {
            trans.push(sq);
        }
    }
    // Unipotent translations all have trace 3, so size breaks the tie.
    let Some(t) = trans.into_iter().min_by_key(|m| (trace(m), max_abs(&m.concat()), m.clone())) else {
        return Decision::undecided();
    };
    let Some(ts) = classify(l, t.clone()) else {
        return Decision::undecided();
    };
    let tinv = integer_inverse(&t).expect("isometry");
    let mut chains: Vec<Vec<LatticeVector>> = Vec::new();
    for r in runs(ch, poly) {
        if let Some(win) = covered(&t, &tinv, &r) {
            if !chains.iter().any(|d| in_orbit(l, &t, &tinv, d, &win[0])) {
                chains.push(win);
            }
        }
    }
    for s in syms {
        for ch_ in chains.clone() {
            let img: Vec<LatticeVector> = ch_.iter().map(|v| apply(s.matrix(), v)).collect();
            if !chains.iter().any(|d| in_orbit(l, &t, &tinv, d, &img[0])) {
                chains.push(img);
            }
        }
    }
    let witness = ts.witness.clone().expect("infinite kinds carry a witness");
    match ts.kind {
        SymmetryKind::ParabolicTranslation if !chains.is_empty() => {
            let generators = parabolic_generators(l, &ts, syms);
            Decision {
                kind: ReflectivityType::Parabolic,
                c: Some(witness),
                chains,
                generators,
                ..Decision::undecided()
            }
        }
        SymmetryKind::HyperbolicTranslation => {
            let axis_wall = ch.walls().into_iter().find(|a| proportional(a, &witness));
            if chains.len() >= 2 || (chains.len() == 1 && axis_wall.is_some()) {
                let generators = hyperbolic_generators(&ts, &inf, syms, &witness);
                Decision {
                    kind: ReflectivityType::Hyperbolic,
                    w: Some(witness),
                    chains,
                    axis_wall,
                    generators,
                    ..Decision::undecided()
                }
            } else {
                Decision::undecided()
            }
        }
        _ => Decision::undecided(),
    }
}

fn fixes_line(c: &IntMatrix, w: &[i128]) -> bool {
    let cw = apply(c, w);
    cw == w || cw.iter().zip(w).all(|(a, b)| *a == -b)
}

fn append_missing(mut gens: Vec<ChamberSymmetry>, syms: &[ChamberSymmetry]) -> Vec<ChamberSymmetry> {
    let ball = group_ball(&gens.iter().map(|g| g.matrix().clone()).collect::<Vec<_>>(), 12, 4000);
    for s in syms {
        if !ball.contains(s.matrix()) {
            gens.push(s.clone());
        }
    }
    gens
}

fn hyperbolic_generators(
    t: &ChamberSymmetry,
    inf: &[ChamberSymmetry],
    syms: &[ChamberSymmetry],
    w: &[i128],
) -> Vec<ChamberSymmetry> {
    let tinv = integer_inverse(t.matrix()).expect("isometry");
    let central = syms
        .iter()
        .find(|s| s.kind == SymmetryKind::CentralSymmetry && fixes_line(s.matrix(), w));
    let gens = if let Some(c) = central {
        vec![c.clone(), t.clone()]
    } else if let Some(s) = inf.iter().find(|s| {
        s.kind == SymmetryKind::SkewSymmetry
            && mul_checked(s.matrix(), s.matrix()).is_some_and(|sq| sq == *t.matrix() || sq == tinv)
    }) {
        vec![s.clone()]
    } else {
        vec![t.clone()]
    };
    append_missing(gens, syms)
}

/// Two involutions whose product is the translation, when an inverting involution exists.
fn parabolic_generators(l: &GramLattice, t: &ChamberSymmetry, syms: &[ChamberSymmetry]) -> Vec<ChamberSymmetry> {
    let tinv = integer_inverse(t.matrix()).expect("isometry");
    let gens = syms
        .iter()
        .filter(|s| s.order == Some(2))
        .find_map(|f| {
            let ftf = mul_checked(&mul_checked(f.matrix(), t.matrix())?, f.matrix())?;
            if ftf != tinv {
                return None;
            }
            let g = classify(l, mul_checked(f.matrix(), t.matrix())?)?;
            Some(vec![f.clone(), g])
        })
        .unwrap_or_else(|| vec![t.clone()]);
    append_missing(gens, syms)
}

/// Two infinite-order symmetries with different fixed data, hyperbolic kinds preferred.
fn independent_pair(l: &GramLattice, inf: &[ChamberSymmetry], syms: &[ChamberSymmetry]) -> Vec<ChamberSymmetry> {
    let key = |s: &ChamberSymmetry| (s.kind == SymmetryKind::ParabolicTranslation, s.witness.clone());
    let mut pool: Vec<ChamberSymmetry> = inf.to_vec();
    for s in inf {
        for c in syms {
            let conj = integer_inverse(c.matrix())
                .and_then(|ci| mul_checked(&mul_checked(c.matrix(), s.matrix())?, &ci))
                .and_then(|m| classify(l, m));
            if let Some(x) = conj {
                pool.push(x);
            }
        }
    }
    pool.sort_by_key(|s| s.kind == SymmetryKind::ParabolicTranslation);
    for (i, a) in pool.iter().enumerate() {
        if let Some(b) = pool[i + 1..].iter().find(|b| key(b) != key(a)) {
            return vec![a.clone(), b.clone()];
        }
    }
    inf.to_vec()
}
