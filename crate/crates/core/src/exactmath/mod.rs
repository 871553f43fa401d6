//! Exact rational arithmetic, dense rational linear algebra and strict
//! feasibility linear programming.
//!
//! Every geometric predicate in the crate bottoms out here. There is no
//! floating point on any decision path; `to_f64` exists only for reporting.

mod lp;
mod matrix;

use std::fmt;
use std::str::FromStr;

use num_bigint::BigInt;
use num_traits::{Signed, ToPrimitive, Zero};
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

pub use lp::{strict_feasible, StrictConstraint, StrictLP};
pub(crate) use lp::{max_slack, Row};
pub use matrix::{rank, solve_affine, LinearSystemSolution, Matrix, SolutionKind};

/// Arbitrary-precision rational, always kept in lowest terms with a positive
/// denominator.
pub type Rational = num_rational::BigRational;

/// `p / q` as a canonical rational. Panics if `q == 0`.
pub fn rat(p: i64, q: i64) -> Rational {
    Rational::new(BigInt::from(p), BigInt::from(q))
}

pub fn int(p: i64) -> Rational {
    Rational::from_integer(BigInt::from(p))
}

pub fn ints(values: &[i64]) -> Vec<Rational> {
    values.iter().copied().map(int).collect()
}

/// Parses `"p/q"` or `"p"` into a canonical rational.
pub fn parse_rational(s: &str) -> Result<Rational> {
    let s = s.trim();
    let (num, den) = match s.split_once('/') {
        Some((n, d)) => (n.trim(), d.trim()),
        None => (s, "1"),
    };
    let num = BigInt::from_str(num)
        .map_err(|e| Error::parse(s, format!("bad numerator: {e}")))?;
    let den = BigInt::from_str(den)
        .map_err(|e| Error::parse(s, format!("bad denominator: {e}")))?;
    if den.is_zero() {
        return Err(Error::parse(s, "zero denominator"));
    }
    Ok(Rational::new(num, den))
}

/// Canonical wire form: `"p/q"`, or `"p"` when the denominator is one.
pub fn format_rational(r: &Rational) -> String {
    r.to_string()
}

pub fn to_f64(r: &Rational) -> f64 {
    r.to_f64().unwrap_or(f64::NAN)
}

pub fn dot(a: &[Rational], b: &[Rational]) -> Rational {
    debug_assert_eq!(a.len(), b.len());
    a.iter()
        .zip(b)
        .fold(Rational::zero(), |acc, (x, y)| acc + x * y)
}

pub fn is_zero_vector(v: &[Rational]) -> bool {
    v.iter().all(Zero::is_zero)
}

/// A strict side: `Pos` is `η·z > b`, `Neg` is `η·z < b`.
///
/// `Pos` orders before `Neg`, which makes sorted sign vectors read
/// `"++"`, `"+-"`, `"-+"`, `"--"`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
pub enum Sign {
    Pos,
    Neg,
}

impl Sign {
    /// Sign of a nonzero value; `None` for zero.
    pub fn of(value: &Rational) -> Option<Sign> {
        if value.is_positive() {
            Some(Sign::Pos)
        } else if value.is_negative() {
            Some(Sign::Neg)
        } else {
            None
        }
    }

    pub fn flip(self) -> Sign {
        match self {
            Sign::Pos => Sign::Neg,
            Sign::Neg => Sign::Pos,
        }
    }

    pub fn as_i8(self) -> i8 {
        match self {
            Sign::Pos => 1,
            Sign::Neg => -1,
        }
    }

    pub fn as_char(self) -> char {
        match self {
            Sign::Pos => '+',
            Sign::Neg => '-',
        }
    }

    pub fn from_char(c: char) -> Option<Sign> {
        match c {
            '+' => Some(Sign::Pos),
            '-' => Some(Sign::Neg),
            _ => None,
        }
    }
}

impl fmt::Display for Sign {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.as_char())
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn parse_and_format_are_canonical() {
        assert_eq!(parse_rational("2/4").unwrap(), rat(1, 2));
        assert_eq!(format_rational(&parse_rational("6/3").unwrap()), "2");
        assert_eq!(format_rational(&parse_rational("3/-6").unwrap()), "-1/2");
        assert_eq!(format_rational(&parse_rational(" -7 ").unwrap()), "-7");
    }

    #[test]
    fn zero_denominator_is_rejected() {
        assert!(matches!(parse_rational("1/0"), Err(Error::Parse { .. })));
        assert!(parse_rational("x/2").is_err());
        assert!(parse_rational("").is_err());
    }

    #[test]
    fn denominators_stay_positive() {
        let r = rat(3, -9);
        assert!(r.denom().is_positive());
        assert_eq!(r, rat(-1, 3));
    }

    #[test]
    fn sign_order_puts_plus_first() {
        assert!(Sign::Pos < Sign::Neg);
        assert_eq!(Sign::of(&rat(-1, 5)), Some(Sign::Neg));
        assert_eq!(Sign::of(&int(0)), None);
        assert_eq!(Sign::Pos.flip(), Sign::Neg);
    }
}
