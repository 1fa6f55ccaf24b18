use lattice_core::{discriminant_group, DiscriminantForm, GramLattice};

use crate::{check_even_hyperbolic, K3Error};

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum FixedLocusCase {
    Generic,
    /// `U(2) + E8(2)`: the involution has no fixed points.
    ExceptionU2E82,
    /// `U + E8(2)`: two disjoint elliptic curves.
    ExceptionUE82,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct TwoElementaryData {
    pub r: usize,
    pub a: usize,
    /// Parity of the discriminant form: `false` when `q` takes only integral values.
    pub delta: bool,
    pub g: Option<usize>,
    pub k_curves: Option<usize>,
    pub case: FixedLocusCase,
}

impl TwoElementaryData {
    /// Self-intersections of the fixed curves: `2g - 2` for the curve of genus `g`
    /// followed by `-2` for each rational curve.
    pub fn curve_self_intersections(&self) -> Vec<i64> {
        match self.case {
            FixedLocusCase::ExceptionU2E82 => Vec::new(),
            FixedLocusCase::ExceptionUE82 => vec![0, 0],
            FixedLocusCase::Generic => {
                let g = self.g.expect("generic case has g") as i64;
                let mut v = vec![2 * g - 2];
                v.extend(std::iter::repeat_n(-2, self.k_curves.expect("generic case has k")));
                v
            }
        }
    }
}

/// `(r, a, delta)` of an even hyperbolic 2-elementary lattice and the fixed
/// locus of the matching involution.
pub fn two_elementary_data(l: &GramLattice) -> Result<TwoElementaryData, K3Error> {
    check_even_hyperbolic(l)?;
    let a = discriminant_group(l)
        .two_rank_if_elementary()
        .ok_or(K3Error::NotTwoElementary)?;
    let r = l.rank();
    if r + a > 22 || (r + a) % 2 != 0 {
        return Err(K3Error::NotK3Type { r, a });
    }
    let form = DiscriminantForm::new(l);
    // q(x + y) = q(x) + q(y) + 2b(x, y) with 2b integral, so generators decide.
    let delta = form
        .generators
        .iter()
        .any(|g| !form.norm(g).is_integer());
    let case = match (r, a, delta) {
        (10, 10, false) => FixedLocusCase::ExceptionU2E82,
        (10, 8, false) => FixedLocusCase::ExceptionUE82,
        _ => FixedLocusCase::Generic,
    };
    let (g, k_curves) = match case {
        FixedLocusCase::Generic => (Some((22 - r - a) / 2), Some((r - a) / 2)),
        _ => (None, None),
    };
    Ok(TwoElementaryData {
        r,
        a,
        delta,
        g,
        k_curves,
        case,
    })
}
