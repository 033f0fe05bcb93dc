//! The matrix-orthogonal-polynomial bridge: `Psi(j,t) = Phi(j,t) Phi(0,t)^-1`
//! realized as adjugate over determinant with exact division, so the claimed
//! polynomiality of the family is a hard test rather than an assumption, and
//! transfer of the three-term recurrence to the `Psi` family.

use std::collections::BTreeMap;

use thiserror::Error;

use crate::expand::RecurrenceTriple;
use crate::polyalg::{PolyError, PolyMatrix};
use crate::spherical::{SphericalError, SphericalFamily, SphericalType};

#[derive(Debug, Error)]
pub enum MopError {
    #[error("entry ({row},{col}) of Phi({j})·adj(Phi(0)) is not divisible by det Phi(0,t)")]
    NotDivisible { j: u32, row: usize, col: usize },
    #[error("det Phi(0,t) is identically zero")]
    SingularBase,
    #[error(transparent)]
    Spherical(#[from] SphericalError),
    #[error(transparent)]
    Poly(#[from] PolyError),
}

/// The polynomial family `j -> Psi(j,t)` with recorded entry degrees.
#[derive(Debug, Clone)]
pub struct PsiFamily {
    pub ty: SphericalType,
    pub members: BTreeMap<u32, PolyMatrix>,
    /// Max entry degree per member; `None` for a zero matrix.
    pub degrees: BTreeMap<u32, Option<usize>>,
}

/// Compute `Psi(j,t)`: multiply by the adjugate of `Phi(0,t)` and
/// exact-divide every entry by the determinant. A nonzero remainder is a
/// mathematical finding and is surfaced, never patched.
pub fn build_psi(family: &SphericalFamily, j: u32) -> Result<PolyMatrix, MopError> {
    let phi0 = family.member(0)?;
    let (adj, det) = phi0.adjugate_det()?;
    if det.is_zero() {
        return Err(MopError::SingularBase);
    }
    let num = family.member(j)?.mul(&adj)?;
    let mut out = PolyMatrix::zeros(num.rows(), num.cols());
    for r in 0..num.rows() {
        for c in 0..num.cols() {
            let q = num.at(r, c).exact_div(&det).map_err(|e| match e {
                PolyError::NotDivisible => MopError::NotDivisible { j, row: r, col: c },
                other => MopError::Poly(other),
            })?;
            *out.at_mut(r, c) = q;
        }
    }
    Ok(out)
}

pub fn build_psi_family(family: &SphericalFamily, j_max: u32) -> Result<PsiFamily, MopError> {
    let mut members = BTreeMap::new();
    let mut degrees = BTreeMap::new();
    for j in 0..=j_max {
        let psi = build_psi(family, j)?;
        degrees.insert(j, psi.max_degree());
        members.insert(j, psi);
    }
    Ok(PsiFamily {
        ty: family.ty(),
        members,
        degrees,
    })
}

impl PsiFamily {
    pub fn member(&self, j: u32) -> Option<&PolyMatrix> {
        self.members.get(&j)
    }
}

/// Check `A_w Psi(w-1,t) + B_w Psi(w,t) + C_w Psi(w+1,t) = t Psi(w,t)`
/// bit-exactly, with the triple computed for the underlying `Phi` family.
pub fn verify_psi_recurrence(psi: &PsiFamily, triple: &RecurrenceTriple, w: u32) -> bool {
    let Some(p0) = psi.member(w) else { return false };
    let Some(p1) = psi.member(w + 1) else { return false };
    let mut lhs = match triple.b.mul_poly(p0).and_then(|m| {
        triple.c.mul_poly(p1).and_then(|n| m.add(&n))
    }) {
        Ok(v) => v,
        Err(_) => return false,
    };
    if w > 0 {
        let Some(pm1) = psi.member(w - 1) else { return false };
        lhs = match triple.a.mul_poly(pm1).and_then(|m| lhs.add(&m)) {
            Ok(v) => v,
            Err(_) => return false,
        };
    }
    match lhs.sub(&p0.mul_by_t()) {
        Ok(diff) => diff.is_zero(),
        Err(_) => false,
    }
}
