//! Terminating generalized hypergeometric series of the special shape used
//! by the spherical families: ordinary upper/lower parameters plus
//! "unit-shift" pairs `(s+1; s)`, each contributing the per-term factor
//! `(s+j)/s`.
//!
//! A spec is valid when exactly one upper parameter is a nonpositive integer
//! (the terminator); the series is then a polynomial of degree at most the
//! absolute value of that parameter.

use num_traits::{One, Signed, Zero};
use thiserror::Error;

use crate::exactnum::{factorial, pochhammer, Rat};
use crate::polyalg::Poly;

#[derive(Debug, Error, PartialEq, Eq)]
pub enum HyperError {
    #[error("no upper parameter is a nonpositive integer; series does not terminate")]
    NoTerminator,
    #[error("more than one upper parameter is a nonpositive integer")]
    MultipleTerminators,
    #[error("lower parameter {param} hits a pole at term {j}")]
    LowerParamPole { param: String, j: usize },
    #[error("shift parameter is zero")]
    ZeroShift,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct HypergeomSpec {
    upper: Vec<Rat>,
    lower: Vec<Rat>,
    shifts: Vec<Rat>,
    degree: usize,
}

fn as_nonpositive_integer(r: &Rat) -> Option<usize> {
    use num_traits::ToPrimitive;
    if r.is_integer() && !r.is_positive() {
        (-r.to_integer()).to_usize()
    } else {
        None
    }
}

impl HypergeomSpec {
    /// Validates the terminator, lower-parameter poles, and nonzero shifts
    /// eagerly.
    pub fn new(upper: Vec<Rat>, lower: Vec<Rat>, shifts: Vec<Rat>) -> Result<Self, HyperError> {
        let mut degree = None;
        for u in &upper {
            if let Some(d) = as_nonpositive_integer(u) {
                if degree.is_some() {
                    return Err(HyperError::MultipleTerminators);
                }
                degree = Some(d);
            }
        }
        let degree = degree.ok_or(HyperError::NoTerminator)?;
        for c in &lower {
            for j in 0..degree {
                if (c + Rat::from_integer(j.into())).is_zero() {
                    return Err(HyperError::LowerParamPole {
                        param: crate::exactnum::format_rat(c),
                        j,
                    });
                }
            }
        }
        if shifts.iter().any(Rat::is_zero) {
            return Err(HyperError::ZeroShift);
        }
        Ok(HypergeomSpec {
            upper,
            lower,
            shifts,
            degree,
        })
    }

    /// Degree bound fixed by the terminating parameter.
    pub fn termination_degree(&self) -> usize {
        self.degree
    }

    /// Sum the series exactly. The `t^j` coefficient is
    /// `prod (u)_j / (j! prod (c)_j) * prod (s+j)/s`.
    pub fn build_terminating(&self) -> Poly {
        let mut coeffs = Vec::with_capacity(self.degree + 1);
        // base part by term ratio, shift factors computed fresh per term
        let mut base = Rat::one();
        for j in 0..=self.degree {
            if j > 0 {
                let jm1 = Rat::from_integer((j - 1).into());
                let mut num = Rat::one();
                for u in &self.upper {
                    num *= u + &jm1;
                }
                let mut den = Rat::from_integer(j.into());
                for c in &self.lower {
                    den *= c + &jm1;
                }
                base = base * num / den;
            }
            let mut term = base.clone();
            for s in &self.shifts {
                term = term * (s + Rat::from_integer(j.into())) / s;
            }
            coeffs.push(term);
        }
        Poly::from_coeffs(coeffs)
    }
}

/// Oracle for the unit-shift factor: checks that the literal Pochhammer
/// quotient `(s+1)_j / (s)_j` agrees with `(s+j)/s` for every `j <= degree`
/// where the quotient is defined.
pub fn shift_factor_consistency(s: &Rat, degree: usize) -> bool {
    if s.is_zero() {
        return false;
    }
    for j in 0..=degree {
        let den = pochhammer(s, j);
        if den.is_zero() {
            continue;
        }
        let lhs = pochhammer(&(s + Rat::one()), j) / den;
        let rhs = (s + Rat::from_integer(j.into())) / s;
        if lhs != rhs {
            return false;
        }
    }
    true
}

/// Series built via literal Pochhammer quotients for the shift pairs, used as
/// the independent oracle for [`HypergeomSpec::build_terminating`]. Panics if
/// some `(s)_j` vanishes inside the summation range, where the quotient form
/// is undefined.
pub fn build_via_pochhammer_quotients(spec: &HypergeomSpec) -> Poly {
    let mut coeffs = Vec::with_capacity(spec.degree + 1);
    for j in 0..=spec.degree {
        let mut term = Rat::one();
        for u in &spec.upper {
            term *= pochhammer(u, j);
        }
        for s in &spec.shifts {
            term *= pochhammer(&(s + Rat::one()), j);
        }
        let mut den = factorial(j);
        for c in &spec.lower {
            den *= pochhammer(c, j);
        }
        for s in &spec.shifts {
            let sp = pochhammer(s, j);
            assert!(!sp.is_zero(), "pochhammer quotient undefined");
            den *= sp;
        }
        coeffs.push(term / den);
    }
    Poly::from_coeffs(coeffs)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exactnum::rat;
    use crate::polyalg::Poly;

    #[test]
    fn terminating_2f1() {
        // 2F1(-1, n+3; n+1; t) at n=0 -> 1 - 3t
        let spec = HypergeomSpec::new(vec![rat(-1), rat(3)], vec![rat(1)], vec![]).unwrap();
        assert_eq!(spec.build_terminating(), Poly::from_i64(&[1, -3]));
    }

    #[test]
    fn zero_terminator_is_constant_one() {
        let spec = HypergeomSpec::new(vec![rat(0), rat(9)], vec![rat(2)], vec![rat(5)]).unwrap();
        assert_eq!(spec.build_terminating(), Poly::one());
        assert_eq!(spec.termination_degree(), 0);
    }

    #[test]
    fn shifted_3f2_row_two_entry() {
        // 3F2(-1, n+3, lambda; n+1, lambda-1; t) at n=0, lambda=-2, shift s=-3
        let spec =
            HypergeomSpec::new(vec![rat(-1), rat(3)], vec![rat(1)], vec![rat(-3)]).unwrap();
        let series = spec.build_terminating();
        assert_eq!(series, Poly::from_i64(&[1, -2]));
        // scaled by -(n+1) at n=0
        assert_eq!(series.scale(&rat(-1)), Poly::from_i64(&[-1, 2]));
    }

    #[test]
    fn spec_validation() {
        assert_eq!(
            HypergeomSpec::new(vec![rat(2)], vec![rat(1)], vec![]),
            Err(HyperError::NoTerminator)
        );
        assert_eq!(
            HypergeomSpec::new(vec![rat(-1), rat(-2)], vec![rat(1)], vec![]),
            Err(HyperError::MultipleTerminators)
        );
        assert_eq!(
            HypergeomSpec::new(vec![rat(-3)], vec![rat(-1)], vec![]),
            Err(HyperError::LowerParamPole {
                param: "-1".into(),
                j: 1
            })
        );
        assert_eq!(
            HypergeomSpec::new(vec![rat(-3)], vec![rat(5)], vec![rat(0)]),
            Err(HyperError::ZeroShift)
        );
    }

    #[test]
    fn leading_coefficient_is_one() {
        let spec = HypergeomSpec::new(
            vec![rat(-4), Rat::new(7.into(), 2.into())],
            vec![rat(3)],
            vec![Rat::new((-9).into(), 2.into())],
        )
        .unwrap();
        assert_eq!(spec.build_terminating().coeff(0), rat(1));
    }

    #[test]
    fn shift_factor_oracle() {
        assert!(shift_factor_consistency(&rat(5), 4));
        assert!(shift_factor_consistency(&Rat::new((-7).into(), 2.into()), 3));
        assert!(shift_factor_consistency(&rat(1), 0));
        assert!(!shift_factor_consistency(&rat(0), 3));
    }

    #[test]
    fn product_form_matches_pochhammer_quotients() {
        // shift with non-integer s keeps every (s)_j nonzero
        let spec = HypergeomSpec::new(
            vec![rat(-5), rat(4)],
            vec![rat(2)],
            vec![Rat::new((-7).into(), 2.into())],
        )
        .unwrap();
        assert_eq!(spec.build_terminating(), build_via_pochhammer_quotients(&spec));
    }
}
