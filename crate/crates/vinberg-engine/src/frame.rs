//! Coordinates adapted to the center and the per-level root solvers.

use std::cmp::Ordering;

use lattice_core::matrix::{content, dot, inverse_rational, to_big, LatticeVector};
use lattice_core::snf::{hermite_rows, smith};
use lattice_core::GramLattice;
use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};

use crate::center::{Center, CenterKind};
use crate::norms::is_root;
use crate::VinbergError;

/// `rho, u` span `rho^perp`; `(rho, t) = g`.
#[derive(Debug, Clone)]
pub(crate) struct IsoFrame {
    pub rho: LatticeVector,
    pub u: LatticeVector,
    pub t: LatticeVector,
    pub g: i128,
    pub uu: i128,
    pub ut: i128,
    pub tt: i128,
}

/// `kernel` spans `rho^perp`; `(rho, t) = g`. Quadratic data for
/// `delta = c t + sum y_i k_i` is centered at `y = c w`.
#[derive(Debug, Clone)]
pub(crate) struct PointFrame {
    pub t: LatticeVector,
    pub g: i128,
    pub kernel: Vec<LatticeVector>,
    pub tt: i128,
    /// `A^{-1} (t, k_i)` with `A = -Gram(kernel)`.
    pub w: Vec<BigRational>,
    /// `(t,k) . w`
    pub s: BigRational,
    /// Fincke-Pohst form of `A`.
    pub q: Vec<Vec<BigRational>>,
}

#[derive(Debug, Clone)]
pub(crate) enum Frame {
    Iso(IsoFrame),
    Point(PointFrame),
}

fn ratio(n: i128, d: i128) -> BigRational {
    BigRational::new(BigInt::from(n), BigInt::from(d))
}

fn int(x: i128) -> BigRational {
    BigRational::from_integer(BigInt::from(x))
}

fn to_i(x: &BigInt) -> Result<i128, VinbergError> {
    x.to_i128()
        .ok_or(VinbergError::Lattice(lattice_core::LatticeError::Overflow))
}

fn sub_mul(v: &mut [i128], f: i128, w: &[i128]) {
    for (x, y) in v.iter_mut().zip(w) {
        *x -= f * y;
    }
}

/// `t` with `(rho, t) = g > 0` and a basis of `rho^perp`, from one Smith form.
fn split(l: &GramLattice, rho: &[i128]) -> Result<(i128, LatticeVector, Vec<LatticeVector>), VinbergError> {
    let row = l.dual_row(rho);
    let g = content(&row);
    let s = smith(&to_big(&vec![row.clone()]));
    let n = rho.len();
    let col = |j: usize| -> Result<LatticeVector, VinbergError> {
        s.right.iter().map(|r| to_i(&r[j])).collect()
    };
    let mut t = col(0)?;
    if dot(&row, &t) < 0 {
        t.iter_mut().for_each(|x| *x = -*x);
    }
    debug_assert_eq!(dot(&row, &t), g);
    let kernel = (1..n).map(col).collect::<Result<Vec<_>, _>>()?;
    Ok((g, t, kernel))
}

impl Frame {
    pub fn new(l: &GramLattice, center: &Center) -> Result<Self, VinbergError> {
        let rho = &center.rho;
        let (g, mut t, kernel) = split(l, rho)?;
        match center.kind {
            CenterKind::Isotropic => {
                // rho = alpha k1 + beta k2; complete rho to a basis of the kernel.
                let (k1, k2) = (&kernel[0], &kernel[1]);
                let (alpha, beta) = coords2(rho, k1, k2)?;
                let e = alpha.extended_gcd(&beta);
                if e.gcd != 1 {
                    return Err(VinbergError::InvalidCenter("center is not primitive".into()));
                }
                let (gam, del) = (-e.y, e.x);
                let mut u: LatticeVector =
                    k1.iter().zip(k2).map(|(a, b)| gam * a + del * b).collect();
                let i0 = rho.iter().position(|&x| x != 0).expect("nonzero center");
                let q = Integer::div_floor(&u[i0], &rho[i0]);
                sub_mul(&mut u, q, rho);
                if u.iter().find(|&&x| x != 0).is_some_and(|&x| x < 0) {
                    u.iter_mut().for_each(|x| *x = -*x);
                }
                let ech = hermite_rows(&to_big(&vec![rho.clone(), u.clone()]));
                for e in &ech {
                    let e: LatticeVector = e.iter().map(to_i).collect::<Result<_, _>>()?;
                    let p = e.iter().position(|&x| x != 0).expect("nonzero row");
                    let f = Integer::div_floor(&t[p], &e[p]);
                    sub_mul(&mut t, f, &e);
                }
                Ok(Frame::Iso(IsoFrame {
                    uu: l.norm(&u),
                    ut: l.ip(&u, &t),
                    tt: l.norm(&t),
                    rho: rho.clone(),
                    u,
                    t,
                    g,
                }))
            }
            CenterKind::Point => {
                let m = kernel.len();
                let a: Vec<Vec<i128>> = (0..m)
                    .map(|i| (0..m).map(|j| -l.ip(&kernel[i], &kernel[j])).collect())
                    .collect();
                let kt: Vec<i128> = kernel.iter().map(|k| l.ip(k, &t)).collect();
                let ainv = inverse_rational(&a).ok_or(VinbergError::InvalidCenter(
                    "orthogonal complement is degenerate".into(),
                ))?;
                let w: Vec<BigRational> = ainv
                    .iter()
                    .map(|r| r.iter().zip(&kt).map(|(x, &k)| x * int(k)).sum())
                    .collect();
                let s = w.iter().zip(&kt).map(|(x, &k)| x * int(k)).sum();
                Ok(Frame::Point(PointFrame {
                    tt: l.norm(&t),
                    q: fincke_pohst_form(&a),
                    t,
                    g,
                    kernel,
                    w,
                    s,
                }))
            }
        }
    }

    /// `(rho, t)`: levels of roots are multiples of this.
    pub fn g(&self) -> i128 {
        match self {
            Frame::Iso(f) => f.g,
            Frame::Point(f) => f.g,
        }
    }

    /// Roots at height 0 bounding the initial chamber (see module docs of `enumerator`).
    pub fn step_zero(&self, l: &GramLattice, norms: &[i128]) -> Result<Vec<LatticeVector>, VinbergError> {
        match self {
            Frame::Iso(f) => f.step_zero(l, norms),
            Frame::Point(f) => f.step_zero(l, norms),
        }
    }

    /// All roots of norm `-d` with `(delta, rho) = c g`, `c >= 1`, sorted.
    /// For an isotropic center only those in the strip cut out by `walls`.
    pub fn solve(
        &self,
        l: &GramLattice,
        c: i128,
        d: i128,
        walls: &[LatticeVector],
    ) -> Result<Vec<LatticeVector>, VinbergError> {
        let mut out = match self {
            Frame::Iso(f) => f.solve(l, c, d, walls)?,
            Frame::Point(f) => f.solve(l, c, d),
        };
        out.sort();
        Ok(out)
    }
}

/// Integers `(alpha, beta)` with `v = alpha k1 + beta k2`.
fn coords2(v: &[i128], k1: &[i128], k2: &[i128]) -> Result<(i128, i128), VinbergError> {
    let n = v.len();
    for i in 0..n {
        for j in i + 1..n {
            let det = k1[i] * k2[j] - k1[j] * k2[i];
            if det != 0 {
                let a = v[i] * k2[j] - v[j] * k2[i];
                let b = k1[i] * v[j] - k1[j] * v[i];
                if a % det != 0 || b % det != 0 {
                    break;
                }
                return Ok((a / det, b / det));
            }
        }
    }
    Err(VinbergError::InvalidCenter("center not in its own orthogonal complement".into()))
}

/// Wall position on the horocycle through `t`, as a reduced `(num, den)` with `den > 0`.
fn position(f: &IsoFrame, a: i128, b: i128) -> (i128, i128) {
    let num = -(a * f.g + b * f.ut);
    let den = b * f.uu;
    if den < 0 {
        (-num, -den)
    } else {
        (num, den)
    }
}

fn cmp_frac(x: (i128, i128), y: (i128, i128)) -> Ordering {
    (x.0 * y.1).cmp(&(y.0 * x.1))
}

impl IsoFrame {
    fn vec(&self, a: i128, b: i128, c: i128) -> LatticeVector {
        (0..self.rho.len())
            .map(|i| a * self.rho[i] + b * self.u[i] + c * self.t[i])
            .collect()
    }

    fn step_zero(&self, l: &GramLattice, norms: &[i128]) -> Result<Vec<LatticeVector>, VinbergError> {
        let mut upper: Option<((i128, i128), i128, LatticeVector)> = None;
        let mut lower: Option<((i128, i128), i128, LatticeVector)> = None;
        for &norm in norms {
            let d = -norm;
            if d % self.uu.abs() != 0 {
                continue;
            }
            let b0 = (d / self.uu.abs()).isqrt();
            if b0 == 0 || b0 * b0 * self.uu.abs() != d {
                continue;
            }
            let window = d * b0 + 1;
            // b > 0: positions grow with a; first root with position >= 0.
            let start = Integer::div_ceil(&(-b0 * self.ut), &self.g);
            for a in start..start + window {
                let v = self.vec(a, b0, 0);
                if is_root(l, &v) {
                    let key = (position(self, a, b0), d, v);
                    if upper.as_ref().is_none_or(|u| {
                        cmp_frac(key.0, u.0).then((key.1, &key.2).cmp(&(u.1, &u.2))) == Ordering::Less
                    }) {
                        upper = Some(key);
                    }
                    break;
                }
            }
            // b < 0: position < 0 iff a g > b0 ut; the largest is the smallest such a.
            let start = Integer::div_floor(&(b0 * self.ut), &self.g) + 1;
            for a in start..start + window {
                let v = self.vec(a, -b0, 0);
                if is_root(l, &v) {
                    let key = (position(self, a, -b0), d, v);
                    if lower.as_ref().is_none_or(|u| {
                        cmp_frac(u.0, key.0).then((key.1, &key.2).cmp(&(u.1, &u.2))) == Ordering::Less
                    }) {
                        lower = Some(key);
                    }
                    break;
                }
            }
        }
        match (upper, lower) {
            (Some(u), Some(w)) => Ok(vec![u.2, w.2]),
            _ => Err(VinbergError::NoStepZeroRoots),
        }
    }

    fn solve(
        &self,
        l: &GramLattice,
        c: i128,
        d: i128,
        walls: &[LatticeVector],
    ) -> Result<Vec<LatticeVector>, VinbergError> {
        // (delta, w) >= 0 is linear in b once a is eliminated via the level:
        // (delta, w) = a0 c g + b0 (b uu + c ut) for w = a0 rho + b0 u.
        let n = c * self.g;
        let (mut lo, mut hi) = (i128::MIN, i128::MAX);
        for w in walls {
            let (a0, b0) = coords2(w, &self.rho, &self.u)?;
            let coef = b0 * self.uu;
            let rhs = -(a0 * n + b0 * c * self.ut);
            match coef.signum() {
                1 => lo = lo.max(Integer::div_ceil(&rhs, &coef)),
                -1 => hi = hi.min(Integer::div_floor(&rhs, &coef)),
                _ => {}
            }
        }
        if lo == i128::MIN || hi == i128::MAX {
            return Err(VinbergError::NoStepZeroRoots);
        }
        let den = 2 * c * self.g;
        let mut out = Vec::new();
        for b in lo..=hi {
            let num = -d - b * b * self.uu - 2 * b * c * self.ut - c * c * self.tt;
            if num % den != 0 {
                continue;
            }
            let v = self.vec(num / den, b, c);
            if is_root(l, &v) {
                out.push(v);
            }
        }
        Ok(out)
    }
}

/// Cohen's form: `x^T A x = sum_i q_ii (x_i + sum_{j>i} q_ij x_j)^2`.
fn fincke_pohst_form(a: &[Vec<i128>]) -> Vec<Vec<BigRational>> {
    let m = a.len();
    let mut q: Vec<Vec<BigRational>> = a.iter().map(|r| r.iter().map(|&x| int(x)).collect()).collect();
    for i in 0..m {
        for j in i + 1..m {
            q[j][i] = q[i][j].clone();
            q[i][j] = &q[i][j] / &q[i][i];
        }
        for k in i + 1..m {
            for l in k..m {
                let t = &q[k][i] * &q[i][l];
                q[k][l] -= t;
            }
        }
    }
    q
}

/// Exact square root of a nonnegative rational, if rational.
fn rational_sqrt(x: &BigRational) -> Option<BigRational> {
    let (n, d) = (x.numer(), x.denom());
    let (sn, sd) = (n.sqrt(), d.sqrt());
    (&sn * &sn == *n && &sd * &sd == *d).then(|| BigRational::new(sn, sd))
}

/// Integers `y` with `(y - m)^2 <= r2`.
fn int_range(m: &BigRational, r2: &BigRational) -> (BigInt, BigInt) {
    let s = r2.ceil().to_integer().sqrt() + BigInt::one();
    let mut lo = (m - BigRational::from_integer(s.clone())).floor().to_integer();
    let mut hi = (m + BigRational::from_integer(s)).ceil().to_integer();
    let fits = |y: &BigInt| {
        let e = BigRational::from_integer(y.clone()) - m;
        &e * &e <= *r2
    };
    while lo <= hi && !fits(&lo) {
        lo += 1;
    }
    while hi >= lo && !fits(&hi) {
        hi -= 1;
    }
    (lo, hi)
}

impl PointFrame {
    fn vec(&self, c: i128, y: &[BigInt]) -> Option<LatticeVector> {
        let mut v: Vec<i128> = self.t.iter().map(|x| c * x).collect();
        for (yi, k) in y.iter().zip(&self.kernel) {
            let yi = yi.to_i128()?;
            for (x, kk) in v.iter_mut().zip(k) {
                *x = x.checked_add(yi.checked_mul(*kk)?)?;
            }
        }
        Some(v)
    }

    /// Integer `y` with `(y - y0)^T A (y - y0) = r`.
    fn shell(&self, y0: &[BigRational], r: &BigRational) -> Vec<Vec<BigInt>> {
        let m = y0.len();
        let mut out = Vec::new();
        if r.is_negative() || m == 0 {
            return out;
        }
        let mut y = vec![BigInt::zero(); m];
        self.descend(m - 1, y0, r.clone(), &mut y, &mut out);
        out
    }

    fn descend(
        &self,
        i: usize,
        y0: &[BigRational],
        rem: BigRational,
        y: &mut Vec<BigInt>,
        out: &mut Vec<Vec<BigInt>>,
    ) {
        let m = y0.len();
        let shift: BigRational = (i + 1..m)
            .map(|j| &self.q[i][j] * (BigRational::from_integer(y[j].clone()) - &y0[j]))
            .sum();
        let mid = &y0[i] - shift;
        let r2 = &rem / &self.q[i][i];
        if i == 0 {
            if let Some(s) = rational_sqrt(&r2) {
                let mut sols = vec![&mid + &s];
                if !s.is_zero() {
                    sols.push(&mid - &s);
                }
                for x in sols.into_iter().filter(|x| x.is_integer()) {
                    y[0] = x.to_integer();
                    out.push(y.clone());
                }
            }
            return;
        }
        let (lo, hi) = int_range(&mid, &r2);
        let mut v = lo;
        while v <= hi {
            let e = BigRational::from_integer(v.clone()) - &mid;
            let next = &rem - &self.q[i][i] * &e * &e;
            y[i] = v.clone();
            self.descend(i - 1, y0, next, y, out);
            v += 1;
        }
    }

    fn roots(&self, l: &GramLattice, c: i128, d: i128) -> Vec<LatticeVector> {
        let y0: Vec<BigRational> = self.w.iter().map(|x| x * int(c)).collect();
        let r = int(d) + int(c * c) * (int(self.tt) + &self.s);
        self.shell(&y0, &r)
            .iter()
            .filter_map(|y| self.vec(c, y))
            .filter(|v| l.norm(v) == -d && is_root(l, v))
            .collect()
    }

    fn solve(&self, l: &GramLattice, c: i128, d: i128) -> Vec<LatticeVector> {
        self.roots(l, c, d)
    }

    /// Simple roots of the finite root system in `rho^perp` for a generic direction.
    fn step_zero(&self, l: &GramLattice, norms: &[i128]) -> Result<Vec<LatticeVector>, VinbergError> {
        let mut all: Vec<(i128, LatticeVector)> = Vec::new();
        for &norm in norms {
            for v in self.roots(l, 0, -norm) {
                all.push((-norm, v));
            }
        }
        if all.is_empty() {
            return Ok(Vec::new());
        }
        let mut base = 1000i128;
        let aux = loop {
            let mut aux = vec![0i128; self.t.len()];
            let mut p = 1i128;
            for k in &self.kernel {
                for (x, kk) in aux.iter_mut().zip(k) {
                    *x += p * kk;
                }
                p *= base;
            }
            if all.iter().all(|(_, v)| l.ip(v, &aux) != 0) {
                break aux;
            }
            base += 1;
        };
        let mut keyed: Vec<(BigRational, i128, LatticeVector)> = all
            .into_iter()
            .filter(|(_, v)| l.ip(v, &aux) > 0)
            .map(|(d, v)| {
                let x = l.ip(&v, &aux);
                (ratio(x, 1) * ratio(x, d), d, v)
            })
            .collect();
        keyed.sort();
        let mut acc: Vec<LatticeVector> = Vec::new();
        for (_, _, v) in keyed {
            if acc.iter().all(|a| l.ip(a, &v) >= 0) {
                acc.push(v);
            }
        }
        Ok(acc)
    }
}
