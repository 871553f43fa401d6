//! Rankings of objects by distance to a reference point, as cells of the
//! arrangement of pairwise bisecting hyperplanes.

use std::collections::BTreeSet;
use std::fmt;

use itertools::Itertools;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::arrangement::{enumerate_regions, Arrangement, Region, SignVector};
use crate::error::{Error, Result};
use crate::exactmath::{dot, int, solve_affine, Matrix, Rational, Sign};
use crate::teaching::{teaching_census, teaching_set, version_space_in, TeachingCensus, TeachingSet};

const MAX_ATTEMPTS: usize = 256;

/// Objects in `R^d` with one bisector per pair `(i, j)`, `i < j`, in
/// lexicographic pair order. The bisector of `(i, j)` is positive on the
/// side where `θ_i` is nearer.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct RankingInstance {
    objects: Vec<Vec<Rational>>,
    pairs: Vec<(usize, usize)>,
    arrangement: Arrangement,
}

impl RankingInstance {
    pub fn objects(&self) -> &[Vec<Rational>] {
        &self.objects
    }

    pub fn len(&self) -> usize {
        self.objects.len()
    }

    pub fn is_empty(&self) -> bool {
        self.objects.is_empty()
    }

    pub fn dimension(&self) -> usize {
        self.arrangement.dimension()
    }

    pub fn pairs(&self) -> &[(usize, usize)] {
        &self.pairs
    }

    pub fn arrangement(&self) -> &Arrangement {
        &self.arrangement
    }

    /// Hyperplane id of the pair `{i, j}`.
    pub fn pair_id(&self, i: usize, j: usize) -> Option<usize> {
        let (i, j) = if i < j { (i, j) } else { (j, i) };
        self.pairs.binary_search(&(i, j)).ok()
    }
}

/// Bisecting hyperplanes `(θ_i − θ_j)·z = (‖θ_i‖² − ‖θ_j‖²)/2`.
pub fn bisectors(dimension: usize, objects: Vec<Vec<Rational>>) -> Result<RankingInstance> {
    for o in &objects {
        if o.len() != dimension {
            return Err(Error::DimensionMismatch {
                expected: dimension,
                found: o.len(),
            });
        }
    }
    let pairs: Vec<(usize, usize)> = (0..objects.len()).tuple_combinations().collect();
    let half = Rational::new(1.into(), 2.into());
    let planes = pairs
        .iter()
        .map(|&(i, j)| {
            let (a, b) = (&objects[i], &objects[j]);
            if a == b {
                return Err(Error::DuplicateObjects(i, j));
            }
            let normal = a.iter().zip(b).map(|(x, y)| x - y).collect();
            let bias = (dot(a, a) - dot(b, b)) * &half;
            Ok((normal, bias))
        })
        .collect::<Result<Vec<_>>>()?;
    Ok(RankingInstance {
        arrangement: Arrangement::new(dimension, planes)?,
        objects,
        pairs,
    })
}

/// Object indices from nearest to farthest.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Ranking(pub Vec<usize>);

impl Ranking {
    /// Pairwise comparisons in the instance's pair order.
    pub fn signs(&self, instance: &RankingInstance) -> SignVector {
        let mut position = vec![0; self.0.len()];
        for (p, &o) in self.0.iter().enumerate() {
            position[o] = p;
        }
        SignVector(
            instance
                .pairs
                .iter()
                .map(|&(i, j)| if position[i] < position[j] { Sign::Pos } else { Sign::Neg })
                .collect(),
        )
    }

    /// The ranking whose comparisons are `signs`, if they are transitive.
    pub fn from_signs(instance: &RankingInstance, signs: &SignVector) -> Option<Ranking> {
        let n = instance.len();
        let mut losses = vec![0usize; n];
        for (&(i, j), &s) in instance.pairs.iter().zip(signs.as_slice()) {
            match s {
                Sign::Pos => losses[j] += 1,
                Sign::Neg => losses[i] += 1,
            }
        }
        let mut order: Vec<usize> = (0..n).collect();
        order.sort_by_key(|&o| losses[o]);
        let r = Ranking(order);
        (r.signs(instance) == *signs).then_some(r)
    }
}

impl fmt::Display for Ranking {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.0.iter().join("<"))
    }
}

/// Objects sorted by exact squared distance to `r`.
pub fn ranking_of(instance: &RankingInstance, r: &[Rational]) -> Result<Ranking> {
    if r.len() != instance.dimension() {
        return Err(Error::DimensionMismatch {
            expected: instance.dimension(),
            found: r.len(),
        });
    }
    let dist: Vec<Rational> = instance
        .objects
        .iter()
        .map(|o| o.iter().zip(r).map(|(a, b)| (a - b) * (a - b)).sum())
        .collect();
    for &(i, j) in &instance.pairs {
        if dist[i] == dist[j] {
            return Err(Error::OnBisector(i, j));
        }
    }
    let mut order: Vec<usize> = (0..instance.len()).collect();
    order.sort_by(|&a, &b| dist[a].cmp(&dist[b]));
    Ok(Ranking(order))
}

/// Minimal pairwise comparisons singling out the cell.
pub fn teach_ranking(instance: &RankingInstance, target: &Region) -> TeachingSet {
    teaching_set(&instance.arrangement, target)
}

/// The ranking implied by a teaching set over the instance's cells.
pub fn implied_ranking(instance: &RankingInstance, cells: &[Region], ts: &TeachingSet) -> Result<Ranking> {
    let vs = version_space_in(cells, &ts.queries)?;
    if !vs.is_singleton() {
        return Err(Error::InconsistentCell(format!("{} cells remain consistent", vs.len())));
    }
    Ranking::from_signs(instance, &vs.regions[0].signs)
        .ok_or_else(|| Error::InconsistentCell(format!("signs {} are not transitive", vs.regions[0].signs)))
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CellRanking {
    pub region: Region,
    pub ranking: Ranking,
}

/// Every cell with the ranking of its witness, checked to reproduce the
/// cell's sign vector and to be distinct across cells.
pub fn validate_e1(instance: &RankingInstance) -> Result<Vec<CellRanking>> {
    let mut seen = BTreeSet::new();
    enumerate_regions(&instance.arrangement)
        .into_iter()
        .map(|region| {
            let ranking = ranking_of(instance, &region.witness)
                .map_err(|e| Error::InconsistentCell(format!("cell {}: {e}", region.signs)))?;
            if ranking.signs(instance) != region.signs {
                return Err(Error::InconsistentCell(format!(
                    "cell {} ranks as {ranking} with comparisons {}",
                    region.signs,
                    ranking.signs(instance)
                )));
            }
            if !seen.insert(ranking.clone()) {
                return Err(Error::InconsistentCell(format!("ranking {ranking} appears twice")));
            }
            Ok(CellRanking { region, ranking })
        })
        .collect()
}

/// Whether each small set of bisectors meets exactly as generic objects
/// force: the bisectors of a pair graph meet in the points equidistant from
/// each connected component, of codimension `#objects − #components`, and
/// not at all once that exceeds `d`. Sets of at most `d + 1` bisectors
/// suffice, since a spanning forest determines the intersection.
pub fn is_generic_instance(instance: &RankingInstance) -> bool {
    let d = instance.dimension();
    let m = instance.pairs.len();
    (1..=(d + 1).min(m)).all(|k| {
        (0..m).combinations(k).all(|subset| {
            let edges: Vec<(usize, usize)> = subset.iter().map(|&h| instance.pairs[h]).collect();
            let codim = forest_codimension(&edges);
            let expected = (codim <= d).then(|| d - codim);
            flat_dimension(&instance.arrangement, &subset) == expected
        })
    })
}

fn forest_codimension(edges: &[(usize, usize)]) -> usize {
    let mut vertices: Vec<usize> = edges.iter().flat_map(|&(a, b)| [a, b]).collect();
    vertices.sort_unstable();
    vertices.dedup();
    let mut parent: Vec<usize> = (0..vertices.len()).collect();
    fn find(p: &mut [usize], x: usize) -> usize {
        if p[x] != x {
            let r = find(p, p[x]);
            p[x] = r;
        }
        p[x]
    }
    let index = |v: usize| vertices.binary_search(&v).expect("vertex");
    let mut merges = 0;
    for &(a, b) in edges {
        let (ra, rb) = (find(&mut parent, index(a)), find(&mut parent, index(b)));
        if ra != rb {
            parent[ra] = rb;
            merges += 1;
        }
    }
    merges
}

fn flat_dimension(a: &Arrangement, subset: &[usize]) -> Option<usize> {
    let rows: Vec<&[Rational]> = subset.iter().map(|&i| a.hyperplane(i).normal()).collect();
    let m = Matrix::from_rows(a.dimension(), &rows).expect("uniform dimension");
    let rhs: Vec<Rational> = subset.iter().map(|&i| a.hyperplane(i).bias().clone()).collect();
    solve_affine(&m, &rhs).expect("rhs length").dimension()
}

/// `n` random integer objects in `R^d` passing [`is_generic_instance`].
pub fn random_generic_objects(n: usize, d: usize, seed: u64) -> Result<RankingInstance> {
    if n < 2 || d == 0 {
        return Err(Error::Domain(format!("need n ≥ 2 objects and d ≥ 1, got n={n}, d={d}")));
    }
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    for attempt in 0..MAX_ATTEMPTS {
        let range = 5 + attempt as i64;
        let objects: Vec<Vec<Rational>> = (0..n)
            .map(|_| (0..d).map(|_| int(rng.gen_range(-range..=range))).collect())
            .collect();
        let Ok(instance) = bisectors(d, objects) else {
            continue;
        };
        if is_generic_instance(&instance) {
            return Ok(instance);
        }
    }
    Err(Error::GenerationFailed {
        n,
        d,
        dprime: d,
        attempts: MAX_ATTEMPTS,
    })
}

/// Teaching-set sizes over every cell.
pub fn ranking_census(instance: &RankingInstance) -> TeachingCensus {
    teaching_census(&instance.arrangement)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::arrangement::enumerate_faces;
    use crate::counting::{ranking_cells, ranking_faces};
    use crate::exactmath::{ints, rat};
    use num_bigint::BigUint;
    use proptest::prelude::*;

    fn objects(rows: &[&[i64]]) -> Vec<Vec<Rational>> {
        rows.iter().map(|r| ints(r)).collect()
    }

    #[test]
    fn bisector_examples() {
        let inst = bisectors(2, objects(&[&[0, 0], &[2, 0]])).unwrap();
        let h = inst.arrangement().hyperplane(0);
        assert_eq!((h.normal(), h.bias()), (&ints(&[-2, 0])[..], &int(-2)));
        assert!(h.contains(&ints(&[1, 5])));
        let tri = bisectors(2, objects(&[&[0, 0], &[0, 2], &[2, 0]])).unwrap();
        assert_eq!(tri.arrangement().len(), 3);
        for h in tri.arrangement().hyperplanes() {
            assert!(h.contains(&ints(&[1, 1])));
        }
        assert!(!tri.arrangement().position().admits(2));
        assert_eq!(bisectors(1, objects(&[&[1], &[3], &[1]])), Err(Error::DuplicateObjects(0, 2)));
        let five = random_generic_objects(5, 2, 0).unwrap();
        assert_eq!(five.arrangement().len(), 10);
        assert_eq!(five.pair_id(3, 1), Some(5));
    }

    #[test]
    fn ranking_examples() {
        let inst = bisectors(2, objects(&[&[0, 0], &[2, 0]])).unwrap();
        assert_eq!(ranking_of(&inst, &[rat(1, 4), int(0)]), Ok(Ranking(vec![0, 1])));
        assert_eq!(ranking_of(&inst, &ints(&[1, 0])), Err(Error::OnBisector(0, 1)));
        let tri = bisectors(2, objects(&[&[0, 0], &[0, 2], &[2, 0]])).unwrap();
        assert_eq!(ranking_of(&tri, &ints(&[0, 0])), Err(Error::OnBisector(1, 2)));
    }

    #[test]
    fn nearer_object_is_on_the_positive_side() {
        let inst = random_generic_objects(4, 2, 2).unwrap();
        let r = ints(&[7, -3]);
        let ranking = ranking_of(&inst, &r).unwrap();
        assert_eq!(inst.arrangement().signs_at(&r).unwrap(), ranking.signs(&inst));
    }

    #[test]
    fn cells_and_rankings_are_in_bijection() {
        for (n, cells) in [(2usize, 2usize), (3, 6), (4, 18), (5, 46)] {
            let inst = random_generic_objects(n, 2, n as u64).unwrap();
            let table = validate_e1(&inst).unwrap();
            assert_eq!(table.len(), cells);
            assert_eq!(BigUint::from(cells), ranking_cells(n, 2));
        }
    }

    #[test]
    fn census_of_four_planar_objects() {
        let inst = random_generic_objects(4, 2, 1).unwrap();
        let c = ranking_census(&inst);
        assert_eq!(c.mean, rat(8, 3));
        let f = enumerate_faces(inst.arrangement()).unwrap().total();
        assert_eq!(BigUint::from(f), ranking_faces(4, 2));
        assert_eq!(c.sum, 2 * f);
    }

    #[test]
    fn two_objects_need_one_comparison() {
        let inst = random_generic_objects(2, 3, 5).unwrap();
        for r in enumerate_regions(inst.arrangement()) {
            assert_eq!(teach_ranking(&inst, &r).len(), 1);
        }
    }

    #[test]
    fn collinear_objects_are_not_generic() {
        let inst = bisectors(2, objects(&[&[0, 0], &[1, 1], &[3, 3]])).unwrap();
        assert!(!is_generic_instance(&inst));
        let cocircular = bisectors(2, objects(&[&[1, 0], &[0, 1], &[-1, 0], &[0, -1]])).unwrap();
        assert!(!is_generic_instance(&cocircular));
        assert!(random_generic_objects(1, 2, 0).is_err());
    }

    #[test]
    fn generic_counts_in_space() {
        for n in 2..=5 {
            let inst = random_generic_objects(n, 3, 10 + n as u64).unwrap();
            let cells = enumerate_regions(inst.arrangement()).len();
            assert_eq!(BigUint::from(cells), ranking_cells(n, 3));
            let f = enumerate_faces(inst.arrangement()).unwrap().total();
            assert_eq!(BigUint::from(f), ranking_faces(n, 3));
        }
    }

    proptest! {
        #![proptest_config(ProptestConfig::with_cases(16))]

        #[test]
        fn teaching_comparisons_determine_the_ranking(n in 2usize..=4, d in 1usize..=3, seed in any::<u64>()) {
            let inst = random_generic_objects(n, d, seed).unwrap();
            let cells = enumerate_regions(inst.arrangement());
            prop_assert_eq!(BigUint::from(cells.len()), ranking_cells(n, d));
            for cell in &cells {
                let ts = teach_ranking(&inst, cell);
                let expected = ranking_of(&inst, &cell.witness).unwrap();
                prop_assert_eq!(implied_ranking(&inst, &cells, &ts).unwrap(), expected);
                for drop in 0..ts.len() {
                    let mut fewer = ts.clone();
                    fewer.queries.remove(drop);
                    prop_assert!(version_space_in(&cells, &fewer.queries).unwrap().len() >= 2);
                }
            }
        }
    }
}
