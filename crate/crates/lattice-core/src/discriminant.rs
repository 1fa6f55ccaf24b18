//! The finite group `S*/S` and its discriminant quadratic form.

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, ToPrimitive, Zero};

use crate::lattice::GramLattice;
use crate::matrix::to_big;
use crate::snf::smith;

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct DiscriminantGroup {
    /// Elementary divisors greater than one, each dividing the next.
    pub cyclic_orders: Vec<BigInt>,
    pub exponent: BigInt,
}

impl DiscriminantGroup {
    pub fn order(&self) -> BigInt {
        self.cyclic_orders.iter().product()
    }

    pub fn is_trivial(&self) -> bool {
        self.cyclic_orders.is_empty()
    }

    /// Number of cyclic factors of order 2 when the group is 2-elementary.
    pub fn two_rank_if_elementary(&self) -> Option<usize> {
        let two = BigInt::from(2);
        self.cyclic_orders
            .iter()
            .all(|d| *d == two)
            .then_some(self.cyclic_orders.len())
    }
}

pub fn discriminant_group(l: &GramLattice) -> DiscriminantGroup {
    let s = smith(&to_big(l.gram()));
    let cyclic_orders: Vec<BigInt> = s.diagonal.into_iter().filter(|d| !d.is_one()).collect();
    let exponent = cyclic_orders.last().cloned().unwrap_or_else(BigInt::one);
    DiscriminantGroup {
        cyclic_orders,
        exponent,
    }
}

/// Explicit model of `S*/S`: generators `g_i = V e_i / d_i` in lattice coordinates.
#[derive(Debug, Clone)]
pub struct DiscriminantForm {
    pub orders: Vec<BigInt>,
    pub generators: Vec<Vec<BigRational>>,
    gram: Vec<Vec<BigRational>>,
}

impl DiscriminantForm {
    pub fn new(l: &GramLattice) -> Self {
        let s = smith(&to_big(l.gram()));
        let n = l.rank();
        let mut orders = Vec::new();
        let mut generators = Vec::new();
        for (i, d) in s.diagonal.iter().enumerate() {
            if d.is_one() {
                continue;
            }
            orders.push(d.clone());
            generators.push(
                (0..n)
                    .map(|r| BigRational::new(s.right[r][i].clone(), d.clone()))
                    .collect(),
            );
        }
        let gram = l
            .gram()
            .iter()
            .map(|r| r.iter().map(|&x| BigRational::from_integer(x.into())).collect())
            .collect();
        Self {
            orders,
            generators,
            gram,
        }
    }

    pub fn order(&self) -> BigInt {
        self.orders.iter().product()
    }

    pub fn element(&self, coeffs: &[BigInt]) -> Vec<BigRational> {
        let n = self.gram.len();
        let mut v = vec![BigRational::zero(); n];
        for (c, g) in coeffs.iter().zip(&self.generators) {
            for i in 0..n {
                v[i] += g[i].clone() * BigRational::from_integer(c.clone());
            }
        }
        v
    }

    pub fn norm(&self, v: &[BigRational]) -> BigRational {
        let mut s = BigRational::zero();
        for (i, row) in self.gram.iter().enumerate() {
            for (j, g) in row.iter().enumerate() {
                s += &v[i] * g * &v[j];
            }
        }
        s
    }

    pub fn element_order(&self, coeffs: &[BigInt]) -> BigInt {
        coeffs
            .iter()
            .zip(&self.orders)
            .fold(BigInt::one(), |acc, (c, d)| acc.lcm(&(d / c.gcd(d))))
    }

    /// Calls `f(coeffs)` on every element; `None` if the group is larger than `cap`.
    pub fn for_each_element(&self, cap: u64, mut f: impl FnMut(&[BigInt])) -> Option<()> {
        if self.order().to_u64().is_none_or(|o| o > cap) {
            return None;
        }
        let mut c = vec![BigInt::zero(); self.orders.len()];
        loop {
            f(&c);
            let mut i = 0;
            loop {
                if i == c.len() {
                    return Some(());
                }
                c[i] += 1;
                if c[i] == self.orders[i] {
                    c[i] = BigInt::zero();
                    i += 1;
                } else {
                    break;
                }
            }
        }
    }
}

/// `x mod 2Z` for a rational `x`, normalized into `[0, 2)`.
pub fn mod_two(x: &BigRational) -> BigRational {
    let two = BigRational::from_integer(BigInt::from(2));
    let q = (x / &two).floor();
    x - q * two
}
