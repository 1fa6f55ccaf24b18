use std::collections::BTreeSet;

use lattice_core::matrix::det;
use lattice_core::span::Index;
use lattice_core::{span_and_index, GramLattice, LatticeVector, SublatticeSpan};
use num_traits::ToPrimitive;

use crate::K3Error;

/// Largest `[L : sub]` handled by [`intermediate_lattices`].
pub const MAX_QUOTIENT_ORDER: u64 = 4096;

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct IntermediateLattice {
    /// Hermite basis in the coordinates of the ambient lattice.
    pub basis: Vec<LatticeVector>,
    pub lattice: GramLattice,
    /// Index in the ambient lattice.
    pub index: u64,
}

/// Representatives of `Z^n / rows` for an upper triangular full-rank Hermite basis.
fn coset_reps(h: &[LatticeVector]) -> Vec<LatticeVector> {
    let n = h.len();
    let mut out = Vec::new();
    let mut x = vec![0i128; n];
    loop {
        out.push(x.clone());
        let mut i = 0;
        loop {
            if i == n {
                return out;
            }
            x[i] += 1;
            if x[i] == h[i][i] {
                x[i] = 0;
                i += 1;
            } else {
                break;
            }
        }
    }
}

/// Every lattice between `sub` and `l`, one per subgroup of `l / sub`, sorted by index.
pub fn intermediate_lattices(l: &GramLattice, sub: &SublatticeSpan) -> Result<Vec<IntermediateLattice>, K3Error> {
    let order = match &sub.index_in_ambient {
        Index::Finite(i) => i.clone(),
        Index::Infinite => return Err(K3Error::InfiniteIndex),
    };
    if order.to_u64().is_none_or(|o| o > MAX_QUOTIENT_ORDER) {
        return Err(K3Error::QuotientTooLarge(order.to_string()));
    }
    let reps = coset_reps(&sub.basis);
    let mut seen: BTreeSet<Vec<LatticeVector>> = BTreeSet::from([sub.basis.clone()]);
    let mut queue = vec![sub.basis.clone()];
    while let Some(m) = queue.pop() {
        for x in &reps {
            let mut gens = m.clone();
            gens.push(x.clone());
            let h = span_and_index(l, &gens)?.basis;
            if seen.insert(h.clone()) {
                queue.push(h);
            }
        }
    }
    let mut out = Vec::new();
    for basis in seen {
        let index = det(&basis).magnitude().to_u64().expect("bounded by the quotient order");
        let lattice = l.restrict(&basis)?;
        out.push(IntermediateLattice { basis, lattice, index });
    }
    out.sort_by(|a, b| (a.index, &a.basis).cmp(&(b.index, &b.basis)));
    Ok(out)
}
