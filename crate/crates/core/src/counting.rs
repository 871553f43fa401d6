//! Exact region, face and teaching-complexity counts.

use num_bigint::BigUint;
use num_traits::{One, Zero};

use crate::error::{Error, Result};
use crate::exactmath::Rational;

pub fn binomial(n: usize, k: usize) -> BigUint {
    if k > n {
        return BigUint::zero();
    }
    let k = k.min(n - k);
    (0..k).fold(BigUint::one(), |acc, i| acc * (n - i) / (i + 1))
}

pub fn factorial(n: usize) -> BigUint {
    (1..=n).fold(BigUint::one(), |acc, i| acc * i)
}

fn partial_binomial_sum(n: usize, upto: usize) -> BigUint {
    (0..=upto.min(n)).map(|i| binomial(n, i)).sum()
}

fn to_rational(v: BigUint) -> Rational {
    Rational::from_integer(v.into())
}

/// Regions of `n` hyperplanes in general position in `R^d`.
pub fn q_general(n: usize, d: usize) -> BigUint {
    if n <= d {
        BigUint::one() << n
    } else {
        partial_binomial_sum(n, d)
    }
}

/// `Σ_{i=0}^{d'} C(n, i)`: regions of a `d'`-relaxed arrangement.
pub fn regions_relaxed(n: usize, dprime: usize) -> BigUint {
    partial_binomial_sum(n, dprime)
}

/// `n · Σ_{i=0}^{d'−1} C(n−1, i)`: faces of a `d'`-relaxed arrangement.
pub fn faces_relaxed(n: usize, dprime: usize) -> BigUint {
    if n == 0 || dprime == 0 {
        return BigUint::zero();
    }
    BigUint::from(n) * partial_binomial_sum(n - 1, dprime - 1)
}

/// Mean teaching-set size over all regions: `2F / r`.
pub fn avg_teaching(n: usize, dprime: usize) -> Rational {
    to_rational(BigUint::from(2u32) * faces_relaxed(n, dprime)) / to_rational(regions_relaxed(n, dprime))
}

/// `(C(n−1, d'), C(n, d')·(n−d'+1)/(n−2d'+1))`, valid for `n > 2d'`.
pub fn region_bounds(n: usize, dprime: usize) -> Result<(BigUint, Rational)> {
    if n <= 2 * dprime {
        return Err(Error::Domain(format!("region bounds need n > 2d', got n={n}, d'={dprime}")));
    }
    let lower = binomial(n - 1, dprime);
    let upper = to_rational(binomial(n, dprime) * (n - dprime + 1)) / to_rational(BigUint::from(n - 2 * dprime + 1));
    Ok((lower, upper))
}

/// Whether `Q(k, d−1)/Q(k, d) ≤ 2d/k`; defined for `k > 2d`, `d ≥ 1`.
pub fn ratio_bound_check(k: usize, d: usize) -> Result<bool> {
    if d == 0 || k <= 2 * d {
        return Err(Error::Domain(format!("ratio bound needs k > 2d ≥ 2, got k={k}, d={d}")));
    }
    // cross-multiplied: k·Q(k, d−1) ≤ 2d·Q(k, d)
    Ok(BigUint::from(k) * q_general(k, d - 1) <= BigUint::from(2 * d) * q_general(k, d))
}

/// Cells of the bisector arrangement of `n` objects in `R^d`:
/// `C(n, d) = C(n−1, d) + (n−1)·C(n−1, d−1)`, with `C(n, d) = n!` for
/// `n ≤ d + 1` and `C(n, 0) = 1`.
pub fn ranking_cells(n: usize, d: usize) -> BigUint {
    // table[m][e] for m ≤ n, e ≤ d
    let mut table: Vec<Vec<BigUint>> = Vec::with_capacity(n + 1);
    for m in 0..=n {
        let mut row = Vec::with_capacity(d + 1);
        for e in 0..=d {
            let v = if e == 0 {
                BigUint::one()
            } else if m <= e + 1 {
                factorial(m)
            } else {
                &table[m - 1][e] + BigUint::from(m - 1) * &table[m - 1][e - 1]
            };
            row.push(v);
        }
        table.push(row);
    }
    table[n][d].clone()
}

/// Faces of the bisector arrangement: `C(n, 2) · C(n−1, d−1)`.
pub fn ranking_faces(n: usize, d: usize) -> BigUint {
    if n < 2 || d == 0 {
        return BigUint::zero();
    }
    binomial(n, 2) * ranking_cells(n - 1, d - 1)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exactmath::{int, rat};

    fn u(v: u64) -> BigUint {
        BigUint::from(v)
    }

    #[test]
    fn q_general_examples() {
        assert_eq!(q_general(1, 5), u(2));
        assert_eq!(q_general(7, 0), u(1));
        assert_eq!(q_general(3, 2), u(7));
        assert_eq!(q_general(2, 3), u(4));
    }

    #[test]
    fn q_general_recursion() {
        for n in 2..=30 {
            for d in 1..=10 {
                assert_eq!(q_general(n, d), q_general(n - 1, d) + q_general(n - 1, d - 1), "n={n} d={d}");
            }
        }
        for d in 0..=10 {
            assert_eq!(q_general(1, d), u(if d == 0 { 1 } else { 2 }));
        }
    }

    #[test]
    fn relaxed_counts() {
        assert_eq!(regions_relaxed(5, 1), u(6));
        assert_eq!(regions_relaxed(5, 2), u(16));
        assert_eq!(regions_relaxed(3, 2), u(7));
        assert_eq!(faces_relaxed(3, 2), u(9));
        assert_eq!(faces_relaxed(3, 1), u(3));
        assert_eq!(faces_relaxed(5, 2), u(25));
        for n in 2..=20 {
            for d in 0..n {
                assert_eq!(regions_relaxed(n, d), q_general(n, d));
            }
        }
    }

    #[test]
    fn average_teaching_examples() {
        assert_eq!(avg_teaching(3, 2), rat(18, 7));
        assert_eq!(avg_teaching(9, 2), rat(81, 23));
        for n in 1..=20 {
            let v = avg_teaching(n, 1);
            assert_eq!(v, rat(2 * n as i64, n as i64 + 1));
            assert!(v < int(2));
        }
    }

    #[test]
    fn bounds_examples() {
        let (lo, hi) = region_bounds(7, 2).unwrap();
        assert_eq!(lo, u(15));
        assert_eq!(hi, rat(63, 2));
        let (lo, hi) = region_bounds(5, 2).unwrap();
        assert_eq!((lo, hi), (u(6), int(20)));
        assert!(matches!(region_bounds(4, 2), Err(Error::Domain(_))));
    }

    #[test]
    fn ratio_bound_examples() {
        assert_eq!(ratio_bound_check(5, 2), Ok(true));
        assert_eq!(ratio_bound_check(10, 3), Ok(true));
        assert!(ratio_bound_check(4, 2).is_err());
    }

    #[test]
    fn ranking_examples() {
        assert_eq!(ranking_cells(3, 2), u(6));
        assert_eq!(ranking_cells(3, 1), u(4));
        assert_eq!(ranking_cells(4, 2), u(18));
        assert_eq!(ranking_cells(5, 2), u(46));
        assert_eq!(ranking_faces(3, 2), u(6));
        assert_eq!(ranking_faces(4, 2), u(24));
        assert_eq!(ranking_faces(2, 1), u(1));
    }

    #[test]
    fn ranking_cells_in_the_plane_match_line_arrangement_count() {
        // bisectors of generic planar points: C(n,2) lines, C(n,3) triple
        // points, 3·C(n,4) simple crossings, no parallels
        for n in 2..=9 {
            let lines = binomial(n, 2);
            let expected = u(1) + lines + u(2) * binomial(n, 3) + u(3) * binomial(n, 4);
            assert_eq!(ranking_cells(n, 2), expected, "n={n}");
        }
        // on a line: one cell per bisector point plus one
        for n in 1..=9 {
            assert_eq!(ranking_cells(n, 1), u(1) + binomial(n, 2));
        }
    }
}
