use lattice_core::matrix::is_zero;
use lattice_core::GramLattice;

use crate::GeometryError;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum ConeKind {
    InteriorPositive,
    Isotropic,
    Negative,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Half {
    Plus,
    Minus,
    NotApplicable,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct ConeClassification {
    pub kind: ConeKind,
    pub half: Half,
}

/// Sign of `x^2`, and for `x^2 >= 0` the half-cone relative to `reference`.
pub fn classify_vector(
    l: &GramLattice,
    x: &[i128],
    reference: &[i128],
) -> Result<ConeClassification, GeometryError> {
    if x.len() != l.rank() || reference.len() != l.rank() {
        return Err(lattice_core::LatticeError::DimensionMismatch {
            expected: l.rank(),
            found: x.len(),
        }
        .into());
    }
    if is_zero(x) {
        return Err(GeometryError::ZeroVector);
    }
    if is_zero(reference) || l.norm(reference) < 0 {
        return Err(GeometryError::BadReference);
    }
    let n = l.norm(x);
    let kind = match n.signum() {
        1 => ConeKind::InteriorPositive,
        0 => ConeKind::Isotropic,
        _ => ConeKind::Negative,
    };
    if n < 0 {
        return Ok(ConeClassification {
            kind,
            half: Half::NotApplicable,
        });
    }
    let p = l.ip(x, reference);
    let half = if p != 0 {
        if p > 0 {
            Half::Plus
        } else {
            Half::Minus
        }
    } else {
        // x and reference are proportional isotropic vectors
        let i = reference.iter().position(|&r| r != 0).expect("nonzero");
        if (x[i] > 0) == (reference[i] > 0) {
            Half::Plus
        } else {
            Half::Minus
        }
    };
    Ok(ConeClassification { kind, half })
}
