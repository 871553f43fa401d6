//! Homogeneously separable dichotomies and their dual arrangements.
//!
//! With the last point normalized to `e_d`, a point `x` dualizes to the
//! hyperplane `x_{[d−1]}·z + x_d = 0` in `R^{d−1}` and a separator `w` with
//! `w_d > 0` to the point `w_{[d−1]}/w_d`. Separable classes (a dichotomy and
//! its complement) correspond one-to-one with regions of the dual
//! arrangement of the first `n − 1` points.

use std::fmt;
use std::str::FromStr;

use itertools::Itertools;
use num_traits::{One, Signed, Zero};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;

use crate::arrangement::{enumerate_regions, Arrangement, Hyperplane, Region, SignVector};
use crate::error::{Error, Result};
use crate::exactmath::{dot, int, is_zero_vector, max_slack, rank, Matrix, Rational, Row, Sign};
use crate::teaching::{teaching_set, TeachingCensus};

const MAX_ATTEMPTS: usize = 256;

/// An ordered list of nonzero points in `R^dimension`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct PointSet {
    dimension: usize,
    points: Vec<Vec<Rational>>,
}

impl PointSet {
    pub fn new(dimension: usize, points: Vec<Vec<Rational>>) -> Result<Self> {
        for (i, p) in points.iter().enumerate() {
            if p.len() != dimension {
                return Err(Error::DimensionMismatch {
                    expected: dimension,
                    found: p.len(),
                });
            }
            if is_zero_vector(p) {
                return Err(Error::Domain(format!("point {i} is the zero vector")));
            }
        }
        Ok(PointSet { dimension, points })
    }

    pub fn dimension(&self) -> usize {
        self.dimension
    }

    pub fn len(&self) -> usize {
        self.points.len()
    }

    pub fn is_empty(&self) -> bool {
        self.points.is_empty()
    }

    pub fn points(&self) -> &[Vec<Rational>] {
        &self.points
    }

    pub fn point(&self, i: usize) -> &[Rational] {
        &self.points[i]
    }

    /// Whether the last point is exactly `e_d`.
    pub fn is_normalized(&self) -> bool {
        self.points.last().is_some_and(|p| {
            let d = self.dimension;
            p[..d - 1].iter().all(Zero::is_zero) && p[d - 1].is_one()
        })
    }

    /// Largest `k ≤ d` with every `k`-subset linearly independent.
    pub fn general_position_class(&self) -> usize {
        let mut class = 1;
        for k in 2..=self.dimension {
            if k <= self.len() && !self.subsets_independent(k) {
                break;
            }
            class = k;
        }
        class
    }

    fn subsets_independent(&self, k: usize) -> bool {
        (0..self.len()).combinations(k).all(|s| {
            let rows: Vec<&Vec<Rational>> = s.iter().map(|&i| &self.points[i]).collect();
            rank(&Matrix::from_rows(self.dimension, &rows).expect("dimension")) == k
        })
    }
}

/// A labeling of every point, positive or negative.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Dichotomy {
    pub labels: Vec<Sign>,
}

impl Dichotomy {
    pub fn new(labels: Vec<Sign>) -> Self {
        Dichotomy { labels }
    }

    pub fn from_positive(n: usize, positive: &[usize]) -> Self {
        let mut labels = vec![Sign::Neg; n];
        for &i in positive {
            labels[i] = Sign::Pos;
        }
        Dichotomy { labels }
    }

    pub fn len(&self) -> usize {
        self.labels.len()
    }

    pub fn is_empty(&self) -> bool {
        self.labels.is_empty()
    }

    pub fn positive(&self) -> Vec<usize> {
        (0..self.len()).filter(|&i| self.labels[i] == Sign::Pos).collect()
    }

    pub fn negative(&self) -> Vec<usize> {
        (0..self.len()).filter(|&i| self.labels[i] == Sign::Neg).collect()
    }

    pub fn flipped(&self) -> Dichotomy {
        Dichotomy {
            labels: self.labels.iter().map(|s| s.flip()).collect(),
        }
    }

    /// The class representative labeling the last point positive.
    pub fn canonical(&self) -> Dichotomy {
        match self.labels.last() {
            Some(Sign::Neg) => self.flipped(),
            _ => self.clone(),
        }
    }

    /// All `2^{n−1}` canonical dichotomies of `n` points, in sign order.
    pub fn all_canonical(n: usize) -> impl Iterator<Item = Dichotomy> {
        let free = n.saturating_sub(1);
        (0..1u64 << free).map(move |mask| {
            let mut labels: Vec<Sign> = (0..free)
                .map(|i| if mask >> (free - 1 - i) & 1 == 0 { Sign::Pos } else { Sign::Neg })
                .collect();
            if n > 0 {
                labels.push(Sign::Pos);
            }
            Dichotomy { labels }
        })
    }
}

impl fmt::Display for Dichotomy {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", SignVector(self.labels.clone()))
    }
}

/// A rational feature lift applied pointwise.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum FeatureMap {
    Identity,
    /// All degree-`k` monomials, exponents in lexicographic order.
    Monomial(usize),
    /// Feature vectors given per point index.
    Table(Vec<Vec<Rational>>),
}

impl FeatureMap {
    pub fn target_dimension(&self, d: usize) -> usize {
        match self {
            FeatureMap::Identity => d,
            FeatureMap::Monomial(k) => monomial_exponents(d, *k).len(),
            FeatureMap::Table(rows) => rows.first().map_or(0, Vec::len),
        }
    }

    pub fn apply(&self, ps: &PointSet) -> Result<PointSet> {
        let lifted = match self {
            FeatureMap::Identity => return Ok(ps.clone()),
            FeatureMap::Monomial(k) => {
                let exps = monomial_exponents(ps.dimension, *k);
                ps.points
                    .iter()
                    .map(|x| {
                        exps.iter()
                            .map(|e| e.iter().map(|&j| &x[j]).fold(Rational::one(), |acc, v| acc * v))
                            .collect()
                    })
                    .collect()
            }
            FeatureMap::Table(rows) => {
                if rows.len() != ps.len() {
                    return Err(Error::DimensionMismatch {
                        expected: ps.len(),
                        found: rows.len(),
                    });
                }
                rows.clone()
            }
        };
        PointSet::new(self.target_dimension(ps.dimension), lifted)
    }
}

impl FromStr for FeatureMap {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "identity" => Ok(FeatureMap::Identity),
            _ => s
                .strip_prefix("monomial")
                .and_then(|k| k.parse::<usize>().ok())
                .filter(|&k| k >= 1)
                .map(FeatureMap::Monomial)
                .ok_or_else(|| Error::Config(format!("unknown feature map {s:?}; expected identity or monomialK"))),
        }
    }
}

/// Each monomial as the multiset of variable indices it multiplies.
fn monomial_exponents(d: usize, k: usize) -> Vec<Vec<usize>> {
    (0..d).combinations_with_replacement(k).collect()
}

/// A strict homogeneous separator of `dich` on `ps`, if one exists.
pub fn separator(ps: &PointSet, dich: &Dichotomy) -> Option<Vec<Rational>> {
    let labeled: Vec<(&[Rational], Sign)> = ps.points.iter().map(Vec::as_slice).zip(dich.labels.iter().copied()).collect();
    separator_of(ps.dimension, &labeled)
}

fn separator_of(dimension: usize, labeled: &[(&[Rational], Sign)]) -> Option<Vec<Rational>> {
    let zero = Rational::zero();
    let rows: Vec<Row<'_>> = labeled
        .iter()
        .map(|&(x, sense)| Row {
            normal: x,
            bias: &zero,
            sense,
        })
        .collect();
    max_slack(dimension, &rows).into_witness()
}

/// A separator of `dich` after lifting by `phi`.
pub fn is_separable(ps: &PointSet, dich: &Dichotomy, phi: &FeatureMap) -> Result<Vec<Rational>> {
    if dich.len() != ps.len() {
        return Err(Error::DimensionMismatch {
            expected: ps.len(),
            found: dich.len(),
        });
    }
    separator(&phi.apply(ps)?, dich).ok_or(Error::NotSeparable)
}

/// The invertible map `T = B⁻¹` with `B = [e_j (j ≠ p) …, x]`, sending `x` to
/// `e_d`. The pivot `p` is the coordinate of `x` with the largest magnitude,
/// lowest index on ties.
#[derive(Debug, Clone)]
pub struct BasisTransform {
    pivot: usize,
    last: Vec<Rational>,
}

impl BasisTransform {
    pub fn new(last: &[Rational]) -> Result<Self> {
        if is_zero_vector(last) {
            return Err(Error::ZeroLastPoint);
        }
        let mut pivot = 0;
        for (j, v) in last.iter().enumerate() {
            if v.abs() > last[pivot].abs() {
                pivot = j;
            }
        }
        Ok(BasisTransform {
            pivot,
            last: last.to_vec(),
        })
    }

    pub fn apply(&self, y: &[Rational]) -> Vec<Rational> {
        let t = &y[self.pivot] / &self.last[self.pivot];
        let mut out: Vec<Rational> = (0..y.len())
            .filter(|&j| j != self.pivot)
            .map(|j| &y[j] - &t * &self.last[j])
            .collect();
        out.push(t);
        out
    }
}

/// Applies the [`BasisTransform`] of the last point to every point.
pub fn normalize_last_to_basis(dimension: usize, raw: &[Vec<Rational>]) -> Result<PointSet> {
    let last = raw.last().ok_or(Error::ZeroLastPoint)?;
    if last.len() != dimension {
        return Err(Error::DimensionMismatch {
            expected: dimension,
            found: last.len(),
        });
    }
    let t = BasisTransform::new(last)?;
    let points = raw
        .iter()
        .map(|p| {
            if p.len() != dimension {
                return Err(Error::DimensionMismatch {
                    expected: dimension,
                    found: p.len(),
                });
            }
            Ok(t.apply(p))
        })
        .collect::<Result<Vec<_>>>()?;
    PointSet::new(dimension, points)
}

/// The dual hyperplane `x_{[d−1]}·z = −x_d` (id 0).
pub fn dual_map_point(x: &[Rational]) -> Result<Hyperplane> {
    let d = x.len();
    if d < 2 {
        return Err(Error::Domain("dual map needs dimension ≥ 2".into()));
    }
    let normal = x[..d - 1].to_vec();
    if is_zero_vector(&normal) {
        return Err(Error::BasisPoint);
    }
    Hyperplane::new(0, normal, -x[d - 1].clone())
}

/// The dual point `w_{[d−1]}/w_d` of a separator with `w_d > 0`.
pub fn dual_map_separator(w: &[Rational]) -> Result<Vec<Rational>> {
    let wd = w.last().filter(|v| v.is_positive()).ok_or(Error::NonpositiveLastCoordinate)?;
    Ok(w[..w.len() - 1].iter().map(|v| v / wd).collect())
}

/// A separable class: its dual region, canonical dichotomy and a separator
/// `(z, 1)` with `z` the region's witness.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct DualClass {
    pub region: Region,
    pub dichotomy: Dichotomy,
    pub separator: Vec<Rational>,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct DualInstance {
    /// Dual hyperplanes of all points but the last, in point order.
    pub arrangement: Arrangement,
    /// One entry per dual region, sorted by sign vector.
    pub classes: Vec<DualClass>,
    /// General position class of the primal points.
    pub point_class: usize,
}

impl DualInstance {
    pub fn class_of(&self, dich: &Dichotomy) -> Option<&DualClass> {
        let canon = dich.canonical();
        let n = canon.len();
        let signs = SignVector(canon.labels[..n - 1].to_vec());
        self.classes
            .binary_search_by(|c| c.region.signs.cmp(&signs))
            .ok()
            .map(|i| &self.classes[i])
    }
}

pub fn build_dual_instance(ps: &PointSet) -> Result<DualInstance> {
    if ps.dimension < 2 || ps.is_empty() {
        return Err(Error::Domain("dual instance needs dimension ≥ 2 and at least one point".into()));
    }
    if !ps.is_normalized() {
        return Err(Error::Domain("last point must equal e_d; normalize first".into()));
    }
    let point_class = ps.general_position_class();
    if point_class < 2 {
        return Err(Error::PositionViolation(format!(
            "points are only {point_class}-general; at least 2 is required"
        )));
    }
    let n = ps.len();
    let planes = ps.points[..n - 1]
        .iter()
        .map(|x| dual_map_point(x).map(|h| (h.normal().to_vec(), h.bias().clone())))
        .collect::<Result<Vec<_>>>()?;
    let arrangement = Arrangement::new(ps.dimension - 1, planes)?;
    if !arrangement.position().admits(point_class - 1) {
        return Err(Error::PositionViolation(format!(
            "dual arrangement is not {}-relaxed general ({:?})",
            point_class - 1,
            arrangement.position().verdict
        )));
    }
    let classes = enumerate_regions(&arrangement)
        .into_iter()
        .map(|region| {
            let mut labels = region.signs.0.clone();
            labels.push(Sign::Pos);
            let mut separator = region.witness.clone();
            separator.push(int(1));
            let dichotomy = Dichotomy { labels };
            for (x, &l) in ps.points.iter().zip(&dichotomy.labels) {
                if Sign::of(&dot(&separator, x)) != Some(l) {
                    return Err(Error::DualMismatch(format!("separator of region {} misclassifies a point", region.signs)));
                }
            }
            Ok(DualClass {
                region,
                dichotomy,
                separator,
            })
        })
        .collect::<Result<Vec<_>>>()?;
    Ok(DualInstance {
        arrangement,
        classes,
        point_class,
    })
}

/// Whether `y` may take either label given the labeled points: some
/// separator of the labeled points vanishes on `y`.
pub fn is_ambiguous_point(ps: &PointSet, labeled: &[(usize, Sign)], y: &[Rational]) -> bool {
    let mut rows: Vec<(&[Rational], Sign)> = labeled.iter().map(|&(i, s)| (ps.point(i), s)).collect();
    [Sign::Pos, Sign::Neg].iter().all(|&s| {
        rows.push((y, s));
        let ok = separator_of(ps.dimension, &rows).is_some();
        rows.pop();
        ok
    })
}

/// Extreme points of a separable dichotomy with the dual cross-check.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ExtremePoints {
    /// Points ambiguous given all other labels, ascending.
    pub indices: Vec<usize>,
    /// Dual teaching-set hyperplanes (point indices below `n − 1`).
    pub dual_teaching: Vec<usize>,
    /// Whether the last point is itself extreme.
    pub last_extreme: bool,
    /// Whether the dual arrangement has the antipodal region (all dual
    /// labels flipped), the dual-side witness for the last point.
    pub antipodal_region: bool,
}

impl ExtremePoints {
    /// Agreement of the two sides on the last point's membership.
    pub fn last_consistent(&self) -> bool {
        self.last_extreme == self.antipodal_region
    }
}

/// Cover-ambiguous points of `dich` (on a normalized, general point set).
pub fn extreme_points(ps: &PointSet, dich: &Dichotomy) -> Result<ExtremePoints> {
    extreme_points_in(&build_dual_instance(ps)?, ps, dich)
}

/// [`extreme_points`] against a prebuilt dual instance of `ps`.
///
/// Fails with `DualMismatch` if the primal extreme set, less the last point,
/// differs from the dual teaching set.
pub fn extreme_points_in(dual: &DualInstance, ps: &PointSet, dich: &Dichotomy) -> Result<ExtremePoints> {
    if dich.len() != ps.len() {
        return Err(Error::DimensionMismatch {
            expected: ps.len(),
            found: dich.len(),
        });
    }
    if separator(ps, dich).is_none() {
        return Err(Error::NotSeparable);
    }
    let n = ps.len();
    let indices: Vec<usize> = (0..n)
        .filter(|&y| {
            let labeled: Vec<(usize, Sign)> = (0..n).filter(|&i| i != y).map(|i| (i, dich.labels[i])).collect();
            is_ambiguous_point(ps, &labeled, ps.point(y))
        })
        .collect();
    let class = dual
        .class_of(dich)
        .ok_or_else(|| Error::DualMismatch(format!("separable dichotomy {dich} has no dual region")))?;
    let dual_teaching = teaching_set(&dual.arrangement, &class.region).hyperplanes();
    let last_extreme = indices.last() == Some(&(n - 1));
    let primal_rest = &indices[..indices.len() - usize::from(last_extreme)];
    if primal_rest != dual_teaching.as_slice() {
        return Err(Error::DualMismatch(format!(
            "extreme points {primal_rest:?} differ from dual teaching set {dual_teaching:?} for {dich}"
        )));
    }
    let antipode = class.region.signs.negated();
    let antipodal_region = dual.classes.binary_search_by(|c| c.region.signs.cmp(&antipode)).is_ok();
    Ok(ExtremePoints {
        indices,
        dual_teaching,
        last_extreme,
        antipodal_region,
    })
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ClassRecord {
    pub dichotomy: Dichotomy,
    pub extreme: ExtremePoints,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ClassCensus {
    pub dual: DualInstance,
    pub classes: Vec<ClassRecord>,
    /// Dual teaching-set sizes per class.
    pub teaching: TeachingCensus,
    /// Classes whose last point is extreme.
    pub last_extreme: usize,
    /// Classes where the primal and dual sides disagree on the last point.
    pub last_disagreements: usize,
}

impl ClassCensus {
    pub fn class_count(&self) -> usize {
        self.classes.len()
    }
}

/// Lifts by `phi`, normalizes, dualizes and records every separable class.
pub fn class_census(ps: &PointSet, phi: &FeatureMap) -> Result<ClassCensus> {
    let lifted = phi.apply(ps)?;
    let normalized = normalize_last_to_basis(lifted.dimension, lifted.points())?;
    let dual = build_dual_instance(&normalized)?;
    let classes = dual
        .classes
        .par_iter()
        .map(|c| {
            Ok(ClassRecord {
                dichotomy: c.dichotomy.clone(),
                extreme: extreme_points_in(&dual, &normalized, &c.dichotomy)?,
            })
        })
        .collect::<Result<Vec<_>>>()?;
    let teaching = TeachingCensus::from_sizes(classes.iter().map(|c| c.extreme.dual_teaching.len()).collect());
    let last_extreme = classes.iter().filter(|c| c.extreme.last_extreme).count();
    let last_disagreements = classes.iter().filter(|c| !c.extreme.last_consistent()).count();
    Ok(ClassCensus {
        dual,
        classes,
        teaching,
        last_extreme,
        last_disagreements,
    })
}

/// Separable canonical dichotomies by testing all `2^{n−1}` of them.
pub fn brute_force_classes(ps: &PointSet) -> Vec<Dichotomy> {
    Dichotomy::all_canonical(ps.len())
        .collect::<Vec<_>>()
        .into_par_iter()
        .filter(|d| separator(ps, d).is_some())
        .collect()
}

/// `n` random integer points in `R^d` with every `d`-subset linearly
/// independent. Deterministic in `seed`.
pub fn random_generic_points(n: usize, d: usize, seed: u64) -> Result<PointSet> {
    if d < 2 || n == 0 {
        return Err(Error::Domain(format!("need d ≥ 2 and n ≥ 1, got n={n}, d={d}")));
    }
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    for attempt in 0..MAX_ATTEMPTS {
        let range = 4 + attempt as i64;
        let points: Vec<Vec<Rational>> = (0..n)
            .map(|_| (0..d).map(|_| int(rng.gen_range(-range..=range))).collect())
            .collect();
        if points.iter().any(|p| is_zero_vector(p)) {
            continue;
        }
        let ps = PointSet::new(d, points)?;
        if ps.general_position_class() == d {
            return Ok(ps);
        }
    }
    Err(Error::GenerationFailed {
        n,
        d,
        dprime: d,
        attempts: MAX_ATTEMPTS,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::counting::{avg_teaching, regions_relaxed};
    use crate::exactmath::{ints, rat};
    use proptest::prelude::*;
    use Sign::{Neg, Pos};

    fn pts(d: usize, rows: &[&[i64]]) -> PointSet {
        PointSet::new(d, rows.iter().map(|r| ints(r)).collect()).unwrap()
    }

    fn normalized_generic(n: usize, d: usize, seed: u64) -> PointSet {
        let raw = random_generic_points(n, d, seed).unwrap();
        normalize_last_to_basis(d, raw.points()).unwrap()
    }

    /// Minimum subsets whose labels leave `dich` as the only separable
    /// dichotomy agreeing with them, over all `2^n` dichotomies.
    fn minimal_forcing_sets(ps: &PointSet, dich: &Dichotomy) -> Vec<Vec<usize>> {
        let n = ps.len();
        let separable: Vec<Dichotomy> = (0u32..1 << n)
            .map(|m| Dichotomy::new((0..n).map(|i| if m >> i & 1 == 1 { Pos } else { Neg }).collect()))
            .filter(|d| separator(ps, d).is_some())
            .collect();
        let mut best = usize::MAX;
        let mut found = Vec::new();
        for m in 0u32..1 << n {
            let s: Vec<usize> = (0..n).filter(|i| m >> i & 1 == 1).collect();
            let agreeing = separable.iter().filter(|o| s.iter().all(|&i| o.labels[i] == dich.labels[i])).count();
            if agreeing == 1 && s.len() <= best {
                if s.len() < best {
                    best = s.len();
                    found.clear();
                }
                found.push(s);
            }
        }
        found
    }

    #[test]
    fn normalization_examples() {
        let ps = normalize_last_to_basis(2, &[ints(&[2, 3]), ints(&[0, 2])]).unwrap();
        assert_eq!(ps.point(0), &[int(2), rat(3, 2)][..]);
        assert!(ps.is_normalized());
        let raw = vec![ints(&[2, 3]), ints(&[4, -1]), ints(&[0, 1])];
        assert_eq!(normalize_last_to_basis(2, &raw).unwrap().points(), &raw[..]);
        assert_eq!(normalize_last_to_basis(2, &[ints(&[1, 1]), ints(&[0, 0])]), Err(Error::ZeroLastPoint));
        // ties pick the lowest pivot
        let ps = normalize_last_to_basis(3, &[ints(&[1, 2, 3]), ints(&[-2, 2, 1])]).unwrap();
        assert!(ps.is_normalized());
    }

    #[test]
    fn separability_examples() {
        let two = pts(2, &[&[1, 1], &[-1, 1]]);
        let w = is_separable(&two, &Dichotomy::new(vec![Pos, Neg]), &FeatureMap::Identity).unwrap();
        assert!(dot(&w, two.point(0)).is_positive() && dot(&w, two.point(1)).is_negative());
        let three = pts(2, &[&[1, 1], &[-1, 1], &[0, 1]]);
        let d = Dichotomy::new(vec![Pos, Pos, Neg]);
        assert_eq!(is_separable(&three, &d, &FeatureMap::Identity), Err(Error::NotSeparable));
        assert!(is_separable(&three, &d, &FeatureMap::Monomial(2)).is_ok());
    }

    #[test]
    fn monomial_lift_is_lexicographic() {
        let ps = pts(2, &[&[2, 3]]);
        assert_eq!(FeatureMap::Monomial(2).apply(&ps).unwrap().point(0), &ints(&[4, 6, 9])[..]);
        assert_eq!(FeatureMap::Monomial(3).target_dimension(3), 10);
        assert_eq!("monomial2".parse::<FeatureMap>(), Ok(FeatureMap::Monomial(2)));
        assert!("cubic".parse::<FeatureMap>().is_err());
    }

    #[test]
    fn dual_map_examples() {
        let h = dual_map_point(&ints(&[2, 3])).unwrap();
        assert_eq!((h.normal(), h.bias()), (&ints(&[2])[..], &int(-3)));
        assert!(h.contains(&[rat(-3, 2)]));
        let h = dual_map_point(&ints(&[1, 0])).unwrap();
        assert!(h.contains(&[int(0)]));
        assert_eq!(dual_map_point(&ints(&[0, 5])), Err(Error::BasisPoint));
        assert_eq!(dual_map_separator(&ints(&[1, 2])), Ok(vec![rat(1, 2)]));
        assert_eq!(dual_map_separator(&ints(&[0, 1])), Ok(vec![int(0)]));
        assert_eq!(dual_map_separator(&ints(&[1, -1])), Err(Error::NonpositiveLastCoordinate));
    }

    #[test]
    fn ambiguous_point_examples() {
        let ps = pts(2, &[&[0, 1], &[1, 1], &[-1, 1], &[1, 0], &[2, 1]]);
        assert!(is_ambiguous_point(&ps, &[(0, Pos)], ps.point(3)));
        // labeled duplicate cannot flip
        assert!(!is_ambiguous_point(&ps, &[(0, Pos), (1, Pos)], ps.point(1)));
        // (2,1) lies beyond (1,1) from (0,1): forced positive
        let labeled = [(0, Pos), (1, Pos), (2, Neg)];
        assert!(!is_ambiguous_point(&ps, &labeled, ps.point(4)));
        let mut l = labeled.to_vec();
        l.push((4, Pos));
        assert!(separator_of(2, &l.iter().map(|&(i, s)| (ps.point(i), s)).collect::<Vec<_>>()).is_some());
    }

    #[test]
    fn planar_dual_counts() {
        for n in 2..=8 {
            let ps = normalized_generic(n, 2, n as u64);
            let dual = build_dual_instance(&ps).unwrap();
            assert_eq!(dual.classes.len(), n);
            assert_eq!(brute_force_classes(&ps).len(), n);
        }
    }

    #[test]
    fn three_points_in_space() {
        let ps = normalized_generic(3, 3, 1);
        let dual = build_dual_instance(&ps).unwrap();
        assert_eq!(dual.arrangement.len(), 2);
        assert!(dual.arrangement.position().admits(2));
        assert_eq!(dual.classes.len(), 4);
    }

    #[test]
    fn five_planar_points_census() {
        let raw = random_generic_points(5, 2, 3).unwrap();
        let c = class_census(&raw, &FeatureMap::Identity).unwrap();
        assert_eq!(c.class_count(), 5);
        let mut sizes = c.teaching.sizes.clone();
        sizes.sort();
        assert_eq!(sizes, vec![1, 1, 2, 2, 2]);
        assert_eq!(c.teaching.mean, rat(8, 5));
        assert_eq!(c.teaching.mean, avg_teaching(4, 1));
        assert_eq!(c.last_disagreements, 0);
    }

    #[test]
    fn quadratic_lift_of_four_planar_points() {
        // four generic points lifted to R^3 admit 2·(1 + 3 + 3) = 14 of the 16
        // dichotomies, i.e. 7 classes
        let raw = random_generic_points(4, 2, 8).unwrap();
        let lifted = FeatureMap::Monomial(2).apply(&raw).unwrap();
        assert_eq!(lifted.general_position_class(), 3);
        let c = class_census(&raw, &FeatureMap::Monomial(2)).unwrap();
        assert_eq!(c.class_count(), 7);
        assert_eq!(brute_force_classes(&lifted).len(), 7);
    }

    #[test]
    fn refuses_degenerate_points() {
        let ps = normalize_last_to_basis(2, &[ints(&[1, 1]), ints(&[2, 2]), ints(&[0, 1])]).unwrap();
        assert!(matches!(build_dual_instance(&ps), Err(Error::PositionViolation(_))));
        let raw = pts(2, &[&[1, 0], &[0, 1]]);
        assert!(matches!(build_dual_instance(&pts(2, &[&[0, 2]])), Err(Error::Domain(_))));
        assert!(build_dual_instance(&raw).is_ok());
    }

    proptest! {
        #![proptest_config(ProptestConfig::with_cases(20))]

        #[test]
        fn duality_properties(n in 2usize..=7, d in 2usize..=3, seed in any::<u64>()) {
            let ps = normalized_generic(n, d, seed);
            let dual = build_dual_instance(&ps).unwrap();
            prop_assert!(dual.arrangement.position().admits(d - 1));
            let brute = brute_force_classes(&ps);
            let from_dual: Vec<Dichotomy> = dual.classes.iter().map(|c| c.dichotomy.clone()).collect();
            prop_assert_eq!(brute.len(), from_dual.len());
            let mut sorted = from_dual.clone();
            sorted.sort();
            let mut b = brute.clone();
            b.sort();
            prop_assert_eq!(b, sorted);
            prop_assert_eq!(num_bigint::BigUint::from(dual.classes.len()), regions_relaxed(n - 1, d - 1));
            // sign preservation along every class witness
            for c in &dual.classes {
                let z = dual_map_separator(&c.separator).unwrap();
                for (i, x) in ps.points().iter().enumerate().take(n - 1) {
                    let h = dual_map_point(x).unwrap();
                    prop_assert_eq!(Sign::of(&dot(&c.separator, x)), h.side(&z));
                    prop_assert_eq!(h.side(&z), Some(c.dichotomy.labels[i]));
                }
            }
        }

        #[test]
        fn extreme_points_are_minimal_forcing_sets(n in 2usize..=6, d in 2usize..=3, seed in any::<u64>()) {
            let ps = normalized_generic(n, d, seed);
            let dual = build_dual_instance(&ps).unwrap();
            for c in &dual.classes {
                for dich in [c.dichotomy.clone(), c.dichotomy.flipped()] {
                    let e = extreme_points_in(&dual, &ps, &dich).unwrap();
                    prop_assert!(e.last_consistent());
                    prop_assert_eq!(minimal_forcing_sets(&ps, &dich), vec![e.indices.clone()]);
                }
            }
        }
    }
}
