use itertools::Itertools;

use super::Arrangement;
use crate::exactmath::{solve_affine, Matrix, Rational};

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum PositionVerdict {
    /// `d'`-relaxed general position for every `d'` in `min..=max`.
    ///
    /// The range is a single value unless `n ≤ d'`, where the defining
    /// condition on `(d'+1)`-subsets is vacuous. All admissible classes give
    /// the same region and face counts.
    RelaxedGeneral { min: usize, max: usize },
    Violation,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct PositionReport {
    pub verdict: PositionVerdict,
    /// A subset witnessing the violation (empty otherwise).
    pub violating_subset: Vec<usize>,
    /// Dimension of that subset's intersection flat (`None` if empty).
    pub observed_dimension: Option<usize>,
}

impl PositionReport {
    /// The largest admissible relaxed class.
    pub fn class(&self) -> Option<usize> {
        match self.verdict {
            PositionVerdict::RelaxedGeneral { max, .. } => Some(max),
            PositionVerdict::Violation => None,
        }
    }

    pub fn admits(&self, dprime: usize) -> bool {
        match self.verdict {
            PositionVerdict::RelaxedGeneral { min, max } => (min..=max).contains(&dprime),
            PositionVerdict::Violation => false,
        }
    }
}

/// Intersection flat dimension of a subset, `None` when empty.
fn flat_dimension(a: &Arrangement, subset: &[usize]) -> Option<usize> {
    let rows: Vec<&[Rational]> = subset.iter().map(|&i| a.hyperplane(i).normal()).collect();
    let m = Matrix::from_rows(a.dimension(), &rows).expect("uniform dimension");
    let rhs: Vec<Rational> = subset.iter().map(|&i| a.hyperplane(i).bias().clone()).collect();
    solve_affine(&m, &rhs).expect("rhs length").dimension()
}

enum Level {
    /// every k-subset meets in a (d−k)-flat
    Generic,
    /// every k-subset has empty intersection
    Empty,
    /// neither; carries an offending subset and its flat dimension
    Mixed(Vec<usize>, Option<usize>),
}

fn classify_level(a: &Arrangement, k: usize) -> Level {
    let d = a.dimension();
    let mut generic = true;
    let mut empty = true;
    let mut offender: Option<(Vec<usize>, Option<usize>)> = None;
    for subset in (0..a.len()).combinations(k) {
        let dim = flat_dimension(a, &subset);
        let is_generic = k <= d && dim == Some(d - k);
        let is_empty = dim.is_none();
        generic &= is_generic;
        empty &= is_empty;
        if !is_generic && !is_empty && offender.is_none() {
            offender = Some((subset.clone(), dim));
        }
        if !generic && !empty {
            let (s, dim) = offender.unwrap_or((subset, dim));
            return Level::Mixed(s, dim);
        }
    }
    if generic {
        Level::Generic
    } else {
        Level::Empty
    }
}

/// Determines the relaxed general position class of an arrangement by exact
/// subset intersection tests.
pub fn verify_position(a: &Arrangement) -> PositionReport {
    let n = a.len();
    let d = a.dimension();
    let ok = |min, max| PositionReport {
        verdict: PositionVerdict::RelaxedGeneral { min, max },
        violating_subset: Vec::new(),
        observed_dimension: None,
    };
    let violation = |subset: Vec<usize>, dim: Option<usize>| PositionReport {
        verdict: PositionVerdict::Violation,
        violating_subset: subset,
        observed_dimension: dim,
    };
    if n == 0 || d == 0 {
        return ok(1, d.max(1));
    }

    // largest g such that every k-subset, k ≤ g, is generic
    let mut g = 0;
    let mut next = None;
    while g < d.min(n) {
        match classify_level(a, g + 1) {
            Level::Generic => g += 1,
            level => {
                next = Some(level);
                break;
            }
        }
    }
    if g == n {
        // every subset generic; classes n..=d all hold vacuously
        return ok(n, d);
    }
    match next.unwrap_or_else(|| classify_level(a, g + 1)) {
        // g ≥ 1 here: single hyperplanes with nonzero normals are (d−1)-flats
        Level::Empty => ok(g, g),
        Level::Generic => unreachable!("a {}-subset cannot be generic in R^{d}", g + 1),
        Level::Mixed(s, dim) => violation(s, dim),
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::arrangement::fixtures;
    use crate::exactmath::{int, ints, rat};

    #[test]
    fn generic_triangle_is_two_relaxed() {
        let r = verify_position(&fixtures::triangle());
        assert_eq!(r.verdict, PositionVerdict::RelaxedGeneral { min: 2, max: 2 });
        assert_eq!(r.class(), Some(2));
    }

    #[test]
    fn parallel_lines_are_one_relaxed() {
        let r = verify_position(&fixtures::parallel_lines());
        assert_eq!(r.class(), Some(1));
        assert!(r.admits(1) && !r.admits(2));
    }

    #[test]
    fn concurrent_lines_violate() {
        let r = verify_position(&fixtures::concurrent_lines());
        assert_eq!(r.verdict, PositionVerdict::Violation);
        assert_eq!(r.violating_subset, vec![0, 1, 2]);
        assert_eq!(r.observed_dimension, Some(0));
    }

    #[test]
    fn duplicate_hyperplanes_violate() {
        let a = Arrangement::new(
            2,
            vec![(ints(&[1, 0]), int(0)), (ints(&[2, 0]), int(0))],
        )
        .unwrap();
        let r = verify_position(&a);
        assert_eq!(r.verdict, PositionVerdict::Violation);
        assert_eq!(r.observed_dimension, Some(1));
    }

    #[test]
    fn few_hyperplanes_admit_a_range() {
        // two generic planes in R^3: classes 2 and 3 both hold
        let a = Arrangement::new(
            3,
            vec![(ints(&[1, 0, 0]), int(0)), (ints(&[0, 1, 0]), int(1))],
        )
        .unwrap();
        let r = verify_position(&a);
        assert_eq!(r.verdict, PositionVerdict::RelaxedGeneral { min: 2, max: 3 });
        assert!(!r.admits(1));
        let one = Arrangement::new(3, vec![(ints(&[1, 1, 0]), int(0))]).unwrap();
        assert!(verify_position(&one).admits(1));
    }

    #[test]
    fn lower_dimensional_normal_span_in_r3() {
        // normals in the xy-plane, generic otherwise: 2-relaxed in R^3
        let a = Arrangement::new(
            3,
            vec![
                (ints(&[1, 0, 0]), int(0)),
                (ints(&[0, 1, 0]), int(0)),
                (ints(&[1, 1, 0]), int(1)),
                (ints(&[1, -1, 0]), int(3)),
            ],
        )
        .unwrap();
        assert_eq!(verify_position(&a).class(), Some(2));
    }

    #[test]
    fn invariant_under_rescaling_and_permutation() {
        let a = fixtures::triangle();
        let scaled = a.rescaled(&[rat(-3, 2), int(5), rat(1, 7)]).unwrap();
        let permuted = a.permuted(&[2, 0, 1]).unwrap();
        assert_eq!(verify_position(&scaled).class(), Some(2));
        assert_eq!(verify_position(&permuted).class(), Some(2));
        let c = fixtures::concurrent_lines().rescaled(&[int(-2)]).unwrap();
        assert_eq!(verify_position(&c).verdict, PositionVerdict::Violation);
    }
}
