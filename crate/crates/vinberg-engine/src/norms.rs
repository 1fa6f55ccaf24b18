use lattice_core::discriminant::{mod_two, DiscriminantForm};
use lattice_core::{discriminant_group, GramLattice};
use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::ToPrimitive;

/// Cap on `|S*/S|` for the exact feasibility filter.
const GROUP_CAP: u64 = 1_000_000;

/// Candidate root norms, negative and ordered `-2, -4, ...`.
///
/// A primitive root of norm `-d` gives `2 delta / d` in `S*` of order `d/2`
/// with square `-4/d`, so `d | 2 exp(S*/S)` and such an element must exist.
pub fn admissible_norms(l: &GramLattice) -> Vec<i128> {
    let exp = discriminant_group(l)
        .exponent
        .to_i128()
        .expect("exponent fits");
    let cands: Vec<i128> = (1..=exp).map(|h| 2 * h).filter(|d| (2 * exp) % d == 0).collect();
    let form = DiscriminantForm::new(l);
    let mut ok = vec![false; cands.len()];
    let complete = form
        .for_each_element(GROUP_CAP, |c| {
            let ord = form.element_order(c).to_i128().expect("small");
            let q = mod_two(&form.norm(&form.element(c)));
            for (i, d) in cands.iter().enumerate() {
                if !ok[i] && ord * 2 == *d {
                    let want = mod_two(&BigRational::new(BigInt::from(-4), BigInt::from(*d)));
                    if q == want {
                        ok[i] = true;
                    }
                }
            }
        })
        .is_some();
    cands
        .iter()
        .zip(ok)
        .filter(|(_, f)| *f || !complete)
        .map(|(d, _)| -d)
        .collect()
}

/// Primitive and crystallographic: `|norm|` divides `2 (delta, x)` for all `x`.
pub fn is_root(l: &GramLattice, v: &[i128]) -> bool {
    let d = -l.norm(v);
    d > 0
        && d % 2 == 0
        && lattice_core::matrix::content(v) == 1
        && l.dual_row(v).iter().all(|x| (2 * x) % d == 0)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn small_cases() {
        assert_eq!(admissible_norms(&GramLattice::sk(2)), vec![-2, -4]);
        assert_eq!(admissible_norms(&GramLattice::sk(1)), vec![-2]);
        assert!(is_root(&GramLattice::sk(2), &[2, 0, -1]));
        assert!(!is_root(&GramLattice::sk(2), &[1, 0, 1]));
    }
}
