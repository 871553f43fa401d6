//! Labels, version spaces, ambiguity and minimal teaching sets.

use std::collections::BTreeMap;

use rayon::prelude::*;
use serde::Serialize;

use crate::arrangement::{enumerate_regions, Arrangement, Hyperplane, Region};
use crate::error::{Error, Result};
use crate::exactmath::{max_slack, Rational, Row, Sign};

/// A labeled halfspace query `(h, ℓ)`: the target lies on side `label` of
/// hyperplane `hyperplane`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize)]
pub struct HalfspaceQuery {
    pub hyperplane: usize,
    pub label: Sign,
}

impl HalfspaceQuery {
    pub fn new(hyperplane: usize, label: Sign) -> Self {
        HalfspaceQuery { hyperplane, label }
    }
}

pub fn label_of(r: &Region, h: &Hyperplane) -> Sign {
    r.sign(h.id())
}

pub(crate) fn rows<'a>(a: &'a Arrangement, queries: &[HalfspaceQuery]) -> Vec<Row<'a>> {
    queries
        .iter()
        .map(|q| a.hyperplane(q.hyperplane).row(q.label))
        .collect()
}

/// Interior point of the open polytope cut out by `queries`, if nonempty.
pub fn constraint_cell(a: &Arrangement, queries: &[HalfspaceQuery]) -> Option<Vec<Rational>> {
    max_slack(a.dimension(), &rows(a, queries)).into_witness()
}

/// Whether the strict constraints plus `(h, side)` still have an interior.
pub(crate) fn side_feasible(a: &Arrangement, queries: &[HalfspaceQuery], h: &Hyperplane, side: Sign) -> Option<Vec<Rational>> {
    let mut rows = rows(a, queries);
    rows.push(h.row(side));
    max_slack(a.dimension(), &rows).into_witness()
}

/// Whether `h` meets the open polytope defined by `constraints`.
pub fn is_ambiguous(h: &Hyperplane, constraints: &[HalfspaceQuery], a: &Arrangement) -> Result<bool> {
    let witness = constraint_cell(a, constraints).ok_or(Error::EmptyConstraintRegion)?;
    Ok(match h.side(&witness) {
        None => true,
        Some(s) => side_feasible(a, constraints, h, s.flip()).is_some(),
    })
}

/// A set of labeled queries singling out `target`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct TeachingSet {
    pub queries: Vec<HalfspaceQuery>,
    pub target: Region,
}

impl TeachingSet {
    pub fn len(&self) -> usize {
        self.queries.len()
    }

    pub fn is_empty(&self) -> bool {
        self.queries.is_empty()
    }

    pub fn hyperplanes(&self) -> Vec<usize> {
        self.queries.iter().map(|q| q.hyperplane).collect()
    }
}

/// The region's labels on exactly the hyperplanes that bound it.
///
/// `h` bounds `r` iff flipping `h`'s sign while keeping every other label of
/// `r` leaves a nonempty cell. Only the flipped side needs an LP: `r`'s
/// witness already certifies its own side.
pub fn teaching_set(a: &Arrangement, r: &Region) -> TeachingSet {
    let queries = (0..a.len())
        .filter(|&i| bounds(a, r, i))
        .map(|i| HalfspaceQuery::new(i, r.sign(i)))
        .collect();
    TeachingSet {
        queries,
        target: r.clone(),
    }
}

fn bounds(a: &Arrangement, r: &Region, i: usize) -> bool {
    let mut rows: Vec<Row<'_>> = a
        .hyperplanes()
        .iter()
        .map(|h| h.row(r.sign(h.id())))
        .collect();
    rows[i].sense = rows[i].sense.flip();
    max_slack(a.dimension(), &rows).into_witness().is_some()
}

/// Regions consistent with a set of queries.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct VersionSpace {
    pub regions: Vec<Region>,
}

impl VersionSpace {
    pub fn len(&self) -> usize {
        self.regions.len()
    }

    pub fn is_empty(&self) -> bool {
        self.regions.is_empty()
    }

    pub fn is_singleton(&self) -> bool {
        self.regions.len() == 1
    }

    pub fn contains(&self, r: &Region) -> bool {
        self.regions.binary_search(r).is_ok()
    }
}

fn check_consistent(queries: &[HalfspaceQuery]) -> Result<()> {
    let mut seen = BTreeMap::new();
    for q in queries {
        if let Some(&l) = seen.get(&q.hyperplane) {
            if l != q.label {
                return Err(Error::ContradictoryQueries(q.hyperplane));
            }
        }
        seen.insert(q.hyperplane, q.label);
    }
    Ok(())
}

pub fn version_space(a: &Arrangement, queries: &[HalfspaceQuery]) -> Result<VersionSpace> {
    version_space_in(&enumerate_regions(a), queries)
}

/// [`version_space`] over an already enumerated (sorted) region list.
pub fn version_space_in(regions: &[Region], queries: &[HalfspaceQuery]) -> Result<VersionSpace> {
    check_consistent(queries)?;
    Ok(VersionSpace {
        regions: regions
            .iter()
            .filter(|r| queries.iter().all(|q| r.sign(q.hyperplane) == q.label))
            .cloned()
            .collect(),
    })
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct TeachingCensus {
    /// Teaching-set size per region, in region order.
    pub sizes: Vec<usize>,
    pub histogram: BTreeMap<usize, usize>,
    pub sum: usize,
    pub mean: Rational,
}

impl TeachingCensus {
    pub fn from_sizes(sizes: Vec<usize>) -> Self {
        let mut histogram = BTreeMap::new();
        for &s in &sizes {
            *histogram.entry(s).or_insert(0) += 1;
        }
        let sum: usize = sizes.iter().sum();
        let mean = if sizes.is_empty() {
            Rational::from_integer(0.into())
        } else {
            Rational::new(sum.into(), sizes.len().into())
        };
        TeachingCensus {
            sizes,
            histogram,
            sum,
            mean,
        }
    }

    pub fn regions(&self) -> usize {
        self.sizes.len()
    }
}

/// Teaching-set sizes over every region.
pub fn teaching_census(a: &Arrangement) -> TeachingCensus {
    teaching_census_of(a, &enumerate_regions(a))
}

pub fn teaching_census_of(a: &Arrangement, regions: &[Region]) -> TeachingCensus {
    let sizes = regions.par_iter().map(|r| teaching_set(a, r).len()).collect();
    TeachingCensus::from_sizes(sizes)
}
