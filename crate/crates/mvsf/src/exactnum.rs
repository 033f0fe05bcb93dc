//! Arbitrary-precision rational arithmetic and the combinatorial primitives
//! (rising factorials, factorials) used by the hypergeometric builders.
//!
//! The ground field everywhere is `BigRational`, re-exported as [`Rat`].
//! `num-rational` keeps values canonical (positive denominator, reduced), so
//! bit-exact equality tests are plain `==`.

use num_bigint::BigInt;
use num_traits::{One, Signed, Zero};
use thiserror::Error;

pub type Rat = num_rational::BigRational;

#[derive(Debug, Error, PartialEq, Eq)]
pub enum NumError {
    #[error("division by zero")]
    DivisionByZero,
    #[error("cannot parse rational from {0:?}")]
    Parse(String),
}

/// Exact rational from an integer.
pub fn rat(v: i64) -> Rat {
    Rat::from_integer(BigInt::from(v))
}

/// Rising factorial `(a)_j = a (a+1) ... (a+j-1)`; the empty product is 1.
pub fn pochhammer(a: &Rat, j: usize) -> Rat {
    let mut acc = Rat::one();
    let mut factor = a.clone();
    for _ in 0..j {
        acc *= &factor;
        factor += Rat::one();
    }
    acc
}

/// `j!` as an exact rational.
pub fn factorial(j: usize) -> Rat {
    pochhammer(&Rat::one(), j)
}

/// Division that surfaces a zero divisor as an error instead of panicking.
pub fn checked_div(a: &Rat, b: &Rat) -> Result<Rat, NumError> {
    if b.is_zero() {
        return Err(NumError::DivisionByZero);
    }
    Ok(a / b)
}

/// Canonical text form: `p/q` with the `/q` omitted when `q = 1`.
pub fn format_rat(r: &Rat) -> String {
    if r.denom().is_one() {
        r.numer().to_string()
    } else {
        format!("{}/{}", r.numer(), r.denom())
    }
}

/// Parse the canonical text form. Accepts a Unicode minus sign for
/// convenience with hand-authored family files.
pub fn parse_rat(s: &str) -> Result<Rat, NumError> {
    let cleaned = s.trim().replace('\u{2212}', "-");
    let (num_s, den_s) = match cleaned.split_once('/') {
        Some((a, b)) => (a.trim().to_string(), b.trim().to_string()),
        None => (cleaned.clone(), "1".to_string()),
    };
    let numer: BigInt = num_s
        .parse()
        .map_err(|_| NumError::Parse(s.to_string()))?;
    let denom: BigInt = den_s
        .parse()
        .map_err(|_| NumError::Parse(s.to_string()))?;
    if denom.is_zero() {
        return Err(NumError::Parse(s.to_string()));
    }
    Ok(Rat::new(numer, denom))
}

/// Exact sign of a rational: -1, 0 or 1.
pub fn sign_of(r: &Rat) -> i8 {
    if r.is_zero() {
        0
    } else if r.is_positive() {
        1
    } else {
        -1
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn pochhammer_basics() {
        assert_eq!(pochhammer(&Rat::new(5.into(), 2.into()), 0), Rat::one());
        assert_eq!(pochhammer(&rat(2), 3), rat(24));
        assert_eq!(pochhammer(&rat(-3), 5), rat(0));
    }

    #[test]
    fn factorial_basics() {
        assert_eq!(factorial(0), rat(1));
        assert_eq!(factorial(1), rat(1));
        assert_eq!(factorial(5), rat(120));
    }

    #[test]
    fn pochhammer_of_one_is_factorial() {
        for j in 0..12 {
            assert_eq!(pochhammer(&rat(1), j), factorial(j));
        }
    }

    #[test]
    fn canonical_text_round_trip() {
        let r = Rat::new((-32).into(), 429.into());
        assert_eq!(format_rat(&r), "-32/429");
        assert_eq!(parse_rat("-32/429").unwrap(), r);
        assert_eq!(format_rat(&rat(7)), "7");
        assert_eq!(parse_rat("7").unwrap(), rat(7));
        // non-canonical input is reduced on parse
        assert_eq!(parse_rat("4/-6").unwrap(), Rat::new((-2).into(), 3.into()));
        // unicode minus accepted
        assert_eq!(parse_rat("\u{2212}32/429").unwrap(), r);
    }

    #[test]
    fn parse_rejects_garbage() {
        assert!(parse_rat("1/0").is_err());
        assert!(parse_rat("a/b").is_err());
        assert!(parse_rat("").is_err());
    }

    #[test]
    fn checked_div_surfaces_zero() {
        assert_eq!(checked_div(&rat(1), &rat(0)), Err(NumError::DivisionByZero));
        assert_eq!(checked_div(&rat(3), &rat(2)).unwrap(), Rat::new(3.into(), 2.into()));
    }
}
