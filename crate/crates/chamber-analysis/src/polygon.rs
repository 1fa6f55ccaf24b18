//! The current polygon `{x : (x, delta) >= 0}` and which of its vertices are final.

use lattice_core::matrix::{neg, primitive, LatticeVector};
use lattice_core::GramLattice;
use num_bigint::BigInt;
use num_rational::BigRational;
use vinberg_engine::{is_root, CenterKind, Height};

use crate::linalg::{meet, perp_partner, plane_coords, positive_reference, proportional};
use crate::{AnalysisError, Chamber};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum VertexKind {
    Finite,
    Cusp,
    /// Outside the closed disc: the two walls do not meet.
    Virtual,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Link {
    pub vector: LatticeVector,
    pub kind: VertexKind,
    /// No root of height above the frontier can cut this vertex off.
    pub confirmed: bool,
}

/// Walls in cyclic order; `links[i]` joins `order[i]` and `order[i + 1]`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Polygon {
    pub order: Vec<usize>,
    pub links: Vec<Link>,
}

impl Polygon {
    pub fn len(&self) -> usize {
        self.order.len()
    }

    pub fn is_empty(&self) -> bool {
        self.order.is_empty()
    }

    /// Every vertex is a final finite vertex or cusp in the future cone.
    pub fn is_closed(&self) -> bool {
        self.links.iter().all(|k| k.kind != VertexKind::Virtual)
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum FiniteVolume {
    /// Vertex witnesses in cyclic order.
    Certified(Vec<LatticeVector>),
    NotClosed,
}

fn kind_of(l: &GramLattice, v: &[i128], reference: &[i128]) -> VertexKind {
    let n = l.norm(v);
    if n < 0 || l.ip(v, reference) <= 0 {
        VertexKind::Virtual
    } else if n == 0 {
        VertexKind::Cusp
    } else {
        VertexKind::Finite
    }
}

/// Extreme rays of the wall cone, walked as a cycle.
pub fn polygon(ch: &Chamber) -> Result<Polygon, AnalysisError> {
    let l = &ch.lattice;
    if l.rank() != 3 {
        return Err(AnalysisError::NotSupported(l.rank()));
    }
    let walls = ch.walls();
    let n = walls.len();
    let mut rays: Vec<(LatticeVector, Vec<usize>)> = Vec::new();
    for i in 0..n {
        for j in i + 1..n {
            let v = meet(l, &walls[i], &walls[j]);
            if v.iter().all(|&x| x == 0) {
                continue;
            }
            for u in [v.clone(), neg(&v)] {
                if rays.iter().any(|r| r.0 == u) {
                    continue;
                }
                if walls.iter().all(|w| l.ip(&u, w) >= 0) {
                    let tight: Vec<usize> = (0..n).filter(|&t| l.ip(&u, &walls[t]) == 0).collect();
                    rays.push((u, tight));
                }
            }
        }
    }
    if rays.len() < 3 || rays.iter().any(|r| r.1.len() != 2) {
        return Err(AnalysisError::DegeneratePolygon);
    }
    let mut adj: Vec<Vec<usize>> = vec![Vec::new(); n];
    for (k, (_, t)) in rays.iter().enumerate() {
        adj[t[0]].push(k);
        adj[t[1]].push(k);
    }
    if adj.iter().any(|a| a.len() != 2) {
        return Err(AnalysisError::DegeneratePolygon);
    }
    let reference = positive_reference(l, &ch.center.rho);
    let mut order = vec![0usize];
    let mut ray_ids = Vec::new();
    let mut cur = 0usize;
    let mut last = usize::MAX;
    loop {
        let r = *adj[cur].iter().find(|&&r| r != last).expect("two rays per wall");
        ray_ids.push(r);
        let t = &rays[r].1;
        let next = if t[0] == cur { t[1] } else { t[0] };
        if next == 0 {
            break;
        }
        if order.len() > n {
            return Err(AnalysisError::DegeneratePolygon);
        }
        order.push(next);
        cur = next;
        last = r;
    }
    if order.len() != n {
        return Err(AnalysisError::DegeneratePolygon);
    }
    let links = ray_ids
        .iter()
        .map(|&r| {
            let v = rays[r].0.clone();
            Link {
                kind: kind_of(l, &v, &reference),
                vector: v,
                confirmed: false,
            }
        })
        .collect();
    let mut p = Polygon { order, links };
    if p.is_closed() {
        // A finite-volume polygon bounded by accepted walls is the chamber itself.
        p.links.iter_mut().for_each(|k| k.confirmed = true);
    } else {
        confirm(ch, &walls, &mut p);
    }
    Ok(p)
}

fn rat(x: i128) -> BigRational {
    BigRational::from_integer(BigInt::from(x))
}

fn height_bound(h: Height) -> BigRational {
    BigRational::new(h.num().into(), h.den().into())
}

/// `(rho, x)^2 / x^2 - rho^2`: every root separating `rho` from `x` is below this height.
fn reach(l: &GramLattice, rho: &[i128], x: &[BigRational]) -> BigRational {
    let gr = l.dual_row(rho);
    let p: BigRational = gr.iter().zip(x).map(|(a, b)| rat(*a) * b).sum();
    let g = l.gram();
    let mut n = rat(0);
    for i in 0..x.len() {
        for j in 0..x.len() {
            n += rat(g[i][j]) * &x[i] * &x[j];
        }
    }
    &p * &p / n - rat(l.norm(rho))
}

fn confirm(ch: &Chamber, walls: &[LatticeVector], p: &mut Polygon) {
    let l = &ch.lattice;
    let rho = &ch.center.rho;
    let h = height_bound(ch.frontier);
    let norms = ch.policy.norms();
    let m = p.len();
    for i in 0..m {
        let a = &walls[p.order[i]];
        let b = &walls[p.order[(i + 1) % m]];
        let link = &p.links[i];
        let ok = match link.kind {
            VertexKind::Virtual => false,
            VertexKind::Finite => {
                let x: Vec<BigRational> = link.vector.iter().map(|&c| rat(c)).collect();
                reach(l, rho, &x) <= h
            }
            VertexKind::Cusp => {
                (ch.center.kind == CenterKind::Isotropic && proportional(&link.vector, rho))
                    || cusp_is_final(l, rho, &link.vector, a, b, &norms, &h)
            }
        };
        p.links[i].confirmed = ok;
    }
}

/// A cusp `u` between walls `a`, `b` is final when no root through `u` lies
/// strictly between them and the unit horocycle point on each wall is reached.
fn cusp_is_final(
    l: &GramLattice,
    rho: &[i128],
    u: &[i128],
    a: &[i128],
    b: &[i128],
    norms: &[i128],
    h: &BigRational,
) -> bool {
    let u = primitive(u);
    let Some(y) = perp_partner(l, &u, &u) else {
        return false;
    };
    let y2 = l.norm(&y);
    if y2 >= 0 {
        return false;
    }
    let param = |v: &[i128]| -> Option<BigRational> {
        let (x, yv, _) = plane_coords(v, &u, &y)?;
        (yv != 0).then(|| BigRational::new(x.into(), yv.into()))
    };
    let (Some(pa), Some(pb)) = (param(a), param(b)) else {
        return false;
    };
    let (lo, hi) = if pa <= pb { (pa, pb) } else { (pb, pa) };
    for &nm in norms {
        let d = -nm;
        if d % y2.abs() != 0 {
            continue;
        }
        let q = d / y2.abs();
        let bb = q.isqrt();
        if bb * bb != q {
            continue;
        }
        let from: BigInt = (&lo * rat(bb)).floor().to_integer() + 1;
        let to: BigInt = (&hi * rat(bb)).ceil().to_integer() - 1;
        let mut aa = from;
        while aa <= to {
            let Ok(av) = i128::try_from(&aa) else {
                return false;
            };
            let v: LatticeVector = u.iter().zip(&y).map(|(p, q)| av * p + bb * q).collect();
            if is_root(l, &v) {
                return false;
            }
            aa += 1;
        }
    }
    for w in [a, b] {
        let Some(yy) = perp_partner(l, &u, w) else {
            return false;
        };
        let uy = l.ip(&u, &yy);
        if uy == 0 {
            return false;
        }
        // up = s u + yy is isotropic; x = u + up / (2 (u, up)) has x^2 = 1.
        let s = BigRational::new((-l.norm(&yy)).into(), (2 * uy).into());
        let mut up: Vec<BigRational> = u.iter().zip(&yy).map(|(p, q)| &s * rat(*p) + rat(*q)).collect();
        if uy < 0 {
            up.iter_mut().for_each(|c| *c = -c.clone());
        }
        let scale = rat(2 * uy.abs());
        let x: Vec<BigRational> = u.iter().zip(&up).map(|(p, q)| rat(*p) + q / &scale).collect();
        if reach(l, rho, &x) > *h {
            return false;
        }
    }
    true
}

/// Certified when every vertex is a finite point or cusp of the disc.
pub fn finite_volume_check(ch: &Chamber) -> Result<FiniteVolume, AnalysisError> {
    let p = polygon(ch)?;
    if p.is_closed() {
        Ok(FiniteVolume::Certified(p.links.into_iter().map(|k| k.vector).collect()))
    } else {
        Ok(FiniteVolume::NotClosed)
    }
}
