//! Small exact helpers for rank-3 work.

use lattice_core::matrix::{content, cross3, identity, primitive, LatticeVector};
use lattice_core::snf::integer_kernel;
use lattice_core::{GramLattice, IntMatrix};
use num_bigint::BigInt;
use num_traits::ToPrimitive;

/// `None` on i128 overflow.
pub(crate) fn mul_checked(a: &IntMatrix, b: &IntMatrix) -> Option<IntMatrix> {
    let n = a.len();
    let mut out = vec![vec![0i128; b[0].len()]; n];
    for i in 0..n {
        for j in 0..b[0].len() {
            let mut s: i128 = 0;
            for (k, row) in b.iter().enumerate() {
                s = s.checked_add(a[i][k].checked_mul(row[j])?)?;
            }
            out[i][j] = s;
        }
    }
    Some(out)
}

pub(crate) fn apply(c: &IntMatrix, v: &[i128]) -> LatticeVector {
    c.iter().map(|r| r.iter().zip(v).map(|(a, b)| a * b).sum()).collect()
}

pub(crate) fn det3(m: &IntMatrix) -> i128 {
    m[0][0] * (m[1][1] * m[2][2] - m[1][2] * m[2][1]) - m[0][1] * (m[1][0] * m[2][2] - m[1][2] * m[2][0])
        + m[0][2] * (m[1][0] * m[2][1] - m[1][1] * m[2][0])
}

/// Adjugate, so that `m * adj = det * I`.
pub(crate) fn adj3(m: &IntMatrix) -> IntMatrix {
    let mut a = vec![vec![0i128; 3]; 3];
    for i in 0..3 {
        for j in 0..3 {
            let r: Vec<usize> = (0..3).filter(|&x| x != j).collect();
            let c: Vec<usize> = (0..3).filter(|&x| x != i).collect();
            let minor = m[r[0]][c[0]] * m[r[1]][c[1]] - m[r[0]][c[1]] * m[r[1]][c[0]];
            a[i][j] = if (i + j) % 2 == 0 { minor } else { -minor };
        }
    }
    a
}

/// Matrix with the given vectors as columns.
pub(crate) fn columns(vs: &[&LatticeVector]) -> IntMatrix {
    let n = vs[0].len();
    (0..n).map(|i| vs.iter().map(|v| v[i]).collect()).collect()
}

/// The unique `C` with `C a_i = b_i`, if integral.
pub fn solve_map(a: &[&LatticeVector], b: &[&LatticeVector]) -> Option<IntMatrix> {
    let am = columns(a);
    let d = det3(&am);
    if d == 0 {
        return None;
    }
    let num = mul_checked(&columns(b), &adj3(&am))?;
    let mut out = num;
    for row in out.iter_mut() {
        for x in row.iter_mut() {
            if *x % d != 0 {
                return None;
            }
            *x /= d;
        }
    }
    Some(out)
}

/// Primitive generator of a rank-one integer kernel, first nonzero entry negative.
pub(crate) fn kernel_line(m: &IntMatrix) -> Option<LatticeVector> {
    let big: Vec<Vec<BigInt>> = m.iter().map(|r| r.iter().map(|&x| x.into()).collect()).collect();
    let k = integer_kernel(&big, m[0].len());
    if k.len() != 1 {
        return None;
    }
    let v: Option<LatticeVector> = k[0].iter().map(|x| x.to_i128()).collect();
    v.map(|v| sign_normal(&primitive(&v)))
}

/// Fixes the sign of a line generator: first nonzero coordinate negative.
pub(crate) fn sign_normal(v: &[i128]) -> LatticeVector {
    match v.iter().find(|&&x| x != 0) {
        Some(&x) if x > 0 => v.iter().map(|a| -a).collect(),
        _ => v.to_vec(),
    }
}

pub(crate) fn minus_scalar(c: &IntMatrix, e: i128) -> IntMatrix {
    let mut m = c.clone();
    for (i, row) in m.iter_mut().enumerate() {
        row[i] -= e;
    }
    m
}

pub(crate) fn is_identity(c: &IntMatrix) -> bool {
    *c == identity(c.len())
}

/// Vector orthogonal to both, from the dual rows.
pub(crate) fn meet(l: &GramLattice, a: &[i128], b: &[i128]) -> LatticeVector {
    primitive(&cross3(&l.dual_row(a), &l.dual_row(b)))
}

pub(crate) fn proportional(a: &[i128], b: &[i128]) -> bool {
    content(a) != 0 && content(b) != 0 && cross3(a, b).iter().all(|&x| x == 0)
}

/// A positive vector in the future cone of `rho` (which may be isotropic).
pub fn positive_reference(l: &GramLattice, rho: &[i128]) -> LatticeVector {
    if l.norm(rho) > 0 {
        return rho.to_vec();
    }
    let row = l.dual_row(rho);
    let i = row.iter().position(|&x| x != 0).expect("nondegenerate");
    let mut x = vec![0i128; rho.len()];
    x[i] = row[i].signum();
    let mut n = 1i128;
    loop {
        let p: LatticeVector = rho.iter().zip(&x).map(|(r, y)| n * r + y).collect();
        if l.norm(&p) > 0 {
            return p;
        }
        n *= 2;
    }
}

/// Integer `(alpha, beta)` with `v = alpha a + beta b` as a rational pair, if `v` is in the plane.
pub(crate) fn plane_coords(v: &[i128], a: &[i128], b: &[i128]) -> Option<(i128, i128, i128)> {
    let n = v.len();
    for i in 0..n {
        for j in i + 1..n {
            let det = a[i] * b[j] - a[j] * b[i];
            if det != 0 {
                let x = v[i] * b[j] - v[j] * b[i];
                let y = a[i] * v[j] - a[j] * v[i];
                return Some((x, y, det));
            }
        }
    }
    None
}

/// Completes a primitive `u` in `u^perp` (rank 3) to a basis `{u, y}` of `u^perp`.
pub(crate) fn perp_partner(l: &GramLattice, u: &[i128], plane_of: &[i128]) -> Option<LatticeVector> {
    let row: Vec<BigInt> = l.dual_row(plane_of).iter().map(|&x| x.into()).collect();
    let k = integer_kernel(&vec![row], u.len());
    let k: Vec<LatticeVector> = k
        .iter()
        .map(|v| v.iter().map(|x| x.to_i128()).collect::<Option<Vec<_>>>())
        .collect::<Option<Vec<_>>>()?;
    if k.len() != 2 {
        return None;
    }
    let (x, y, det) = plane_coords(u, &k[0], &k[1])?;
    if x % det != 0 || y % det != 0 {
        return None;
    }
    let (alpha, beta) = (x / det, y / det);
    let e = num_integer::Integer::extended_gcd(&alpha, &beta);
    if e.gcd.abs() != 1 {
        return None;
    }
    // alpha * ex + beta * ey = +-1, so (-ey, ex) completes (alpha, beta).
    let (g1, g2) = (-e.y, e.x);
    Some(k[0].iter().zip(&k[1]).map(|(p, q)| g1 * p + g2 * q).collect())
}
