//! Construction of the normalized matrix-valued families `w -> Phi(w,t)` for
//! types `(n, l)` with `l <= 1`, the diagonal eigenvalue matrices `Lambda`
//! and `M`, and loading of externally supplied families (which is how types
//! with `l >= 2` enter the analysis engines).
//!
//! Conventions: for `l = 1` the matrix rows are the two displayed component
//! vectors in order, columns in displayed component order. Normalization
//! divides every entry by its own value at `t = 1`, so a normalized member
//! evaluates to the all-ones matrix there.

use std::collections::BTreeMap;
use std::fmt;
use std::path::Path;

use num_traits::{One, Zero};
use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::exactnum::{rat, Rat};
use crate::hyper::{HyperError, HypergeomSpec};
use crate::polyalg::{PolyError, PolyMatrix};

#[derive(Debug, Error)]
pub enum SphericalError {
    #[error("entry ({row},{col}) of member w={w} vanishes at t=1; cannot normalize")]
    NormalizationSingular { w: u32, row: usize, col: usize },
    #[error("closed-form construction supports l <= 1, got l={0}; supply a family file")]
    UnsupportedL(u32),
    #[error("family has no member w={0}")]
    MissingMember(u32),
    #[error("family file parse error: {0}")]
    Parse(String),
    #[error("family file schema error: {0}")]
    Schema(String),
    #[error("file declared normalized but entry ({row},{col}) of member w={w} is {value} at t=1")]
    NormalizationMismatch {
        w: u32,
        row: usize,
        col: usize,
        value: String,
    },
    #[error(transparent)]
    Hyper(#[from] HyperError),
    #[error(transparent)]
    Poly(#[from] PolyError),
    #[error("io error: {0}")]
    Io(#[from] std::io::Error),
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct SphericalType {
    pub n: u32,
    pub l: u32,
}

impl SphericalType {
    pub fn size(&self) -> usize {
        (self.l + 1) as usize
    }
}

impl fmt::Display for SphericalType {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "(n={}, l={})", self.n, self.l)
    }
}

/// An indexed collection `w -> Phi(w,t)` of one type.
#[derive(Debug, Clone)]
pub struct SphericalFamily {
    ty: SphericalType,
    normalized: bool,
    members: BTreeMap<u32, PolyMatrix>,
}

impl SphericalFamily {
    pub fn ty(&self) -> SphericalType {
        self.ty
    }

    pub fn is_normalized(&self) -> bool {
        self.normalized
    }

    pub fn member(&self, w: u32) -> Result<&PolyMatrix, SphericalError> {
        self.members.get(&w).ok_or(SphericalError::MissingMember(w))
    }

    pub fn members(&self) -> impl Iterator<Item = (u32, &PolyMatrix)> {
        self.members.iter().map(|(w, m)| (*w, m))
    }

    pub fn max_index(&self) -> Option<u32> {
        self.members.keys().next_back().copied()
    }
}

/// Raw (unnormalized) 1x1 member for `l = 0`:
/// `2F1(-w, w+n+2; n+1; t)`.
pub fn build_phi_l0(n: u32, w: u32) -> PolyMatrix {
    let spec = HypergeomSpec::new(
        vec![rat(-(w as i64)), rat(w as i64 + n as i64 + 2)],
        vec![rat(n as i64 + 1)],
        vec![],
    )
    .expect("l=0 parameters are always valid");
    PolyMatrix::new(1, 1, vec![spec.build_terminating()]).unwrap()
}

/// Raw (unnormalized) 2x2 member for `l = 1`. Row 1 carries the eigenvalue
/// `lambda = -w(w+n+3)`, row 2 carries `lambda = -w(w+n+4)-n-2`; the shifted
/// 3F2 entries use the unit-shift pairs `(lambda-n; lambda-n-1)` and
/// `(lambda; lambda-1)` respectively.
pub fn build_phi_l1(n: u32, w: u32) -> Result<PolyMatrix, SphericalError> {
    let n_i = n as i64;
    let w_i = w as i64;

    let lambda1 = rat(-w_i * (w_i + n_i + 3));
    let prefactor = Rat::one() - &lambda1 / rat(n_i + 1);
    let e11 = HypergeomSpec::new(
        vec![rat(-w_i), rat(w_i + n_i + 3)],
        vec![rat(n_i + 2)],
        vec![&lambda1 - rat(n_i + 1)],
    )?
    .build_terminating()
    .scale(&prefactor);

    let e12 = HypergeomSpec::new(
        vec![rat(-w_i), rat(w_i + n_i + 3)],
        vec![rat(n_i + 1)],
        vec![],
    )?
    .build_terminating();

    let e21 = HypergeomSpec::new(
        vec![rat(-w_i), rat(w_i + n_i + 4)],
        vec![rat(n_i + 2)],
        vec![],
    )?
    .build_terminating();

    let lambda2 = rat(-w_i * (w_i + n_i + 4) - n_i - 2);
    let e22 = HypergeomSpec::new(
        vec![rat(-w_i - 1), rat(w_i + n_i + 3)],
        vec![rat(n_i + 1)],
        vec![&lambda2 - Rat::one()],
    )?
    .build_terminating()
    .scale(&rat(-(n_i + 1)));

    Ok(PolyMatrix::new(2, 2, vec![e11, e12, e21, e22])?)
}

/// Raw member dispatch for the constructible types.
pub fn build_phi_raw(ty: SphericalType, w: u32) -> Result<PolyMatrix, SphericalError> {
    match ty.l {
        0 => Ok(build_phi_l0(ty.n, w)),
        1 => build_phi_l1(ty.n, w),
        l => Err(SphericalError::UnsupportedL(l)),
    }
}

/// Divide each entry by its own value at `t = 1`.
pub fn normalize_matrix(m: &PolyMatrix, w: u32) -> Result<PolyMatrix, SphericalError> {
    let one = Rat::one();
    let mut out = PolyMatrix::zeros(m.rows(), m.cols());
    for r in 0..m.rows() {
        for c in 0..m.cols() {
            let v = m.at(r, c).eval(&one);
            if v.is_zero() {
                return Err(SphericalError::NormalizationSingular { w, row: r, col: c });
            }
            *out.at_mut(r, c) = m.at(r, c).scale(&(Rat::one() / v));
        }
    }
    Ok(out)
}

/// Normalized family with members `w = 0 ..= w_max`.
pub fn build_family(ty: SphericalType, w_max: u32) -> Result<SphericalFamily, SphericalError> {
    let mut members = BTreeMap::new();
    for w in 0..=w_max {
        let raw = build_phi_raw(ty, w)?;
        members.insert(w, normalize_matrix(&raw, w)?);
    }
    Ok(SphericalFamily {
        ty,
        normalized: true,
        members,
    })
}

/// Diagonal eigenvalue matrices of the two differential equations in `t`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct EigenData {
    pub w: u32,
    pub lambda: Vec<Rat>,
    pub m: Vec<Rat>,
}

/// `Lambda(i,i) = -w(w+n+i+l+1) - (i-1)(n+i)` and
/// `M(i,i) = Lambda(i,i)(n-l+3i-3) - 3(i-1)(l-i+2)(n+i)` for `1 <= i <= l+1`.
pub fn eigen_matrices(ty: SphericalType, w: u32) -> EigenData {
    let n = ty.n as i64;
    let l = ty.l as i64;
    let w_i = w as i64;
    let mut lambda = Vec::with_capacity(ty.size());
    let mut m = Vec::with_capacity(ty.size());
    for i in 1..=(l + 1) {
        let lam = -w_i * (w_i + n + i + l + 1) - (i - 1) * (n + i);
        let mm = lam * (n - l + 3 * i - 3) - 3 * (i - 1) * (l - i + 2) * (n + i);
        lambda.push(rat(lam));
        m.push(rat(mm));
    }
    EigenData { w, lambda, m }
}

/// The row eigenvalues used by the `l = 1` construction must coincide with
/// `Lambda(1,1)` and `Lambda(2,2)`.
pub fn check_lambda_consistency(n: u32, w: u32) -> bool {
    let eig = eigen_matrices(SphericalType { n, l: 1 }, w);
    let n_i = n as i64;
    let w_i = w as i64;
    let lambda1 = rat(-w_i * (w_i + n_i + 3));
    let lambda2 = rat(-w_i * (w_i + n_i + 4) - n_i - 2);
    eig.lambda[0] == lambda1 && eig.lambda[1] == lambda2
}

/// On-disk family schema. Rationals in canonical `p/q` text form; members
/// keyed by the decimal index `w`.
#[derive(Debug, Serialize, Deserialize)]
struct FamilyFile {
    l: u32,
    n: u32,
    normalized: bool,
    members: BTreeMap<String, Vec<Vec<Vec<String>>>>,
}

impl SphericalFamily {
    pub fn to_json(&self) -> String {
        let members = self
            .members
            .iter()
            .map(|(w, m)| (w.to_string(), m.to_strings()))
            .collect();
        let file = FamilyFile {
            l: self.ty.l,
            n: self.ty.n,
            normalized: self.normalized,
            members,
        };
        serde_json::to_string_pretty(&file).expect("family serialization cannot fail")
    }

    pub fn from_json(text: &str) -> Result<SphericalFamily, SphericalError> {
        let file: FamilyFile =
            serde_json::from_str(text).map_err(|e| SphericalError::Parse(e.to_string()))?;
        let ty = SphericalType {
            n: file.n,
            l: file.l,
        };
        let size = ty.size();
        let mut members = BTreeMap::new();
        for (key, rows) in &file.members {
            let w: u32 = key
                .parse()
                .map_err(|_| SphericalError::Schema(format!("bad member index {key:?}")))?;
            let m = PolyMatrix::from_strings(rows)?;
            if m.rows() != size || m.cols() != size {
                return Err(SphericalError::Schema(format!(
                    "member w={w} is {}x{}, expected {size}x{size}",
                    m.rows(),
                    m.cols()
                )));
            }
            members.insert(w, m);
        }
        if !members.contains_key(&0) {
            return Err(SphericalError::Schema("member w=0 is required".into()));
        }
        if file.normalized {
            let one = Rat::one();
            for (w, m) in &members {
                for r in 0..size {
                    for c in 0..size {
                        let v = m.at(r, c).eval(&one);
                        if !v.is_one() {
                            return Err(SphericalError::NormalizationMismatch {
                                w: *w,
                                row: r,
                                col: c,
                                value: crate::exactnum::format_rat(&v),
                            });
                        }
                    }
                }
            }
        }
        Ok(SphericalFamily {
            ty,
            normalized: file.normalized,
            members,
        })
    }
}

pub fn load_family_file(path: &Path) -> Result<SphericalFamily, SphericalError> {
    let text = std::fs::read_to_string(path)?;
    SphericalFamily::from_json(&text)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exactnum::{factorial, pochhammer};
    use crate::polyalg::Poly;

    #[test]
    fn l0_members_by_hand() {
        assert_eq!(
            build_phi_l0(0, 0),
            PolyMatrix::new(1, 1, vec![Poly::one()]).unwrap()
        );
        assert_eq!(
            build_phi_l0(0, 1),
            PolyMatrix::new(1, 1, vec![Poly::from_i64(&[1, -3])]).unwrap()
        );
        assert_eq!(
            build_phi_l0(0, 2),
            PolyMatrix::new(1, 1, vec![Poly::from_i64(&[1, -8, 10])]).unwrap()
        );
    }

    #[test]
    fn l0_degree_is_w() {
        for n in 0..4 {
            for w in 0..8 {
                assert_eq!(build_phi_l0(n, w).at(0, 0).degree(), Some(w as usize));
            }
        }
    }

    #[test]
    fn l1_w0_closed_form() {
        for n in 0..6u32 {
            let m = build_phi_l1(n, 0).unwrap();
            let n_i = n as i64;
            assert_eq!(m.at(0, 0), &Poly::one());
            assert_eq!(m.at(0, 1), &Poly::one());
            assert_eq!(m.at(1, 0), &Poly::one());
            assert_eq!(m.at(1, 1), &Poly::from_i64(&[-(n_i + 1), n_i + 2]));
        }
    }

    #[test]
    fn l1_w1_row1_entry2() {
        // 2F1(-1, n+4; n+1; t) = 1 - (n+4)t/(n+1)
        for n in 0..5u32 {
            let m = build_phi_l1(n, 1).unwrap();
            let expected = Poly::from_coeffs(vec![
                Rat::one(),
                -rat(n as i64 + 4) / rat(n as i64 + 1),
            ]);
            assert_eq!(m.at(0, 1), &expected);
        }
    }

    #[test]
    fn l1_entry_degrees() {
        for n in 0..4u32 {
            for w in 1..6u32 {
                let m = build_phi_l1(n, w).unwrap();
                let wd = w as usize;
                assert!(m.at(0, 0).degree().unwrap() <= wd);
                assert!(m.at(0, 1).degree().unwrap() <= wd);
                assert!(m.at(1, 0).degree().unwrap() <= wd);
                assert!(m.at(1, 1).degree().unwrap() <= wd + 1);
            }
        }
    }

    #[test]
    fn normalization_examples() {
        let raw = build_phi_l0(0, 1);
        let norm = normalize_matrix(&raw, 1).unwrap();
        let expected = Poly::from_coeffs(vec![
            Rat::new((-1).into(), 2.into()),
            Rat::new(3.into(), 2.into()),
        ]);
        assert_eq!(norm.at(0, 0), &expected);

        // l=1 w=0 is already all-ones at t=1
        let raw = build_phi_l1(3, 0).unwrap();
        assert_eq!(normalize_matrix(&raw, 0).unwrap(), raw);
    }

    #[test]
    fn normalized_family_is_all_ones_at_one() {
        for &(n, l) in &[(0u32, 0u32), (2, 0), (0, 1), (3, 1)] {
            let fam = build_family(SphericalType { n, l }, 5).unwrap();
            for (_, m) in fam.members() {
                let v = m.eval(&Rat::one());
                for r in 0..m.rows() {
                    for c in 0..m.cols() {
                        assert!(v.at(r, c).is_one());
                    }
                }
            }
        }
    }

    #[test]
    fn l0_value_at_one_closed_form() {
        // raw Phi(w,1) = (-1)^w (w+1)! / (n+1)_w
        for n in 0..6u32 {
            for w in 0..8u32 {
                let raw = build_phi_l0(n, w);
                let got = raw.at(0, 0).eval(&Rat::one());
                let sign = if w % 2 == 0 { rat(1) } else { rat(-1) };
                let expected =
                    sign * factorial(w as usize + 1) / pochhammer(&rat(n as i64 + 1), w as usize);
                assert_eq!(got, expected);
            }
        }
    }

    #[test]
    fn eigen_examples() {
        let eig = eigen_matrices(SphericalType { n: 0, l: 1 }, 1);
        assert_eq!(eig.lambda, vec![rat(-4), rat(-7)]);
        assert_eq!(eig.m, vec![rat(4), rat(-20)]);
        // w=0: Lambda(1,1) = 0
        for n in 0..5 {
            for l in 0..3 {
                let eig = eigen_matrices(SphericalType { n, l }, 0);
                assert_eq!(eig.lambda[0], rat(0));
            }
        }
    }

    #[test]
    fn lambda_strictly_decreasing_in_w() {
        for n in 0..6u32 {
            for i in 0..2usize {
                let mut prev = None;
                for w in 0..10u32 {
                    let eig = eigen_matrices(SphericalType { n, l: 1 }, w);
                    if let Some(p) = prev {
                        assert!(eig.lambda[i] < p);
                    }
                    prev = Some(eig.lambda[i].clone());
                }
            }
        }
    }

    #[test]
    fn lambda_consistency_sweep() {
        for n in 0..=20 {
            for w in 0..=20 {
                assert!(check_lambda_consistency(n, w));
            }
        }
    }

    #[test]
    fn family_file_round_trip() {
        let fam = build_family(SphericalType { n: 0, l: 1 }, 3).unwrap();
        let json = fam.to_json();
        let back = SphericalFamily::from_json(&json).unwrap();
        assert_eq!(back.ty(), fam.ty());
        for (w, m) in fam.members() {
            assert_eq!(back.member(w).unwrap(), m);
        }
    }

    #[test]
    fn family_file_rejects_bad_input() {
        // claims normalized but contains 1 - 3t
        let json = r#"{"l":0,"n":0,"normalized":true,"members":{"0":[[["1"]]],"1":[[["1","-3"]]]}}"#;
        assert!(matches!(
            SphericalFamily::from_json(json),
            Err(SphericalError::NormalizationMismatch { w: 1, .. })
        ));
        // missing w=0
        let json = r#"{"l":0,"n":0,"normalized":false,"members":{}}"#;
        assert!(matches!(
            SphericalFamily::from_json(json),
            Err(SphericalError::Schema(_))
        ));
        assert!(matches!(
            SphericalFamily::from_json("not json"),
            Err(SphericalError::Parse(_))
        ));
    }
}
