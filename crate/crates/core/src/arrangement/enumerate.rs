use num_traits::{Signed, Zero};

use super::{Arrangement, Hyperplane, Region, SignVector};
use crate::error::{Error, Result};
use crate::exactmath::{is_zero_vector, max_slack, Rational, Row, Sign};

/// All nonempty open cells, sorted by sign vector.
///
/// Depth-first over sign prefixes. A prefix cell carries a strict interior
/// witness; the child on the witness's own side of the next hyperplane
/// inherits it, and only the opposite child needs a feasibility LP.
pub fn enumerate_regions(a: &Arrangement) -> Vec<Region> {
    let mut out = Vec::new();
    let mut prefix = Vec::with_capacity(a.len());
    let origin = vec![Rational::zero(); a.dimension()];
    dfs(a, &mut prefix, origin, &mut out);
    out
}

fn dfs(a: &Arrangement, prefix: &mut Vec<Sign>, witness: Vec<Rational>, out: &mut Vec<Region>) {
    let k = prefix.len();
    if k == a.len() {
        out.push(Region {
            signs: SignVector(prefix.clone()),
            witness,
        });
        return;
    }
    let h = a.hyperplane(k);
    let here = h.side(&witness);
    for s in [Sign::Pos, Sign::Neg] {
        let child = if here == Some(s) {
            Some(witness.clone())
        } else {
            prefix.push(s);
            let w = cell_witness(a, prefix);
            prefix.pop();
            w
        };
        if let Some(w) = child {
            prefix.push(s);
            dfs(a, prefix, w, out);
            prefix.pop();
        }
    }
}

/// Witness for the cell fixed by signs on the first `prefix.len()`
/// hyperplanes.
fn cell_witness(a: &Arrangement, prefix: &[Sign]) -> Option<Vec<Rational>> {
    let rows: Vec<Row<'_>> = prefix
        .iter()
        .enumerate()
        .map(|(i, &s)| a.hyperplane(i).row(s))
        .collect();
    max_slack(a.dimension(), &rows).into_witness()
}

/// The region containing `z`, with `z` as its witness.
pub fn locate_region(a: &Arrangement, z: &[Rational]) -> Result<Region> {
    if z.len() != a.dimension() {
        return Err(Error::DimensionMismatch {
            expected: a.dimension(),
            found: z.len(),
        });
    }
    Ok(Region {
        signs: a.signs_at(z)?,
        witness: z.to_vec(),
    })
}

/// Rational affine parameterization of a hyperplane by `d − 1` of the
/// ambient coordinates.
///
/// The eliminated (pivot) coordinate is the one with the largest absolute
/// normal coefficient, lowest index on ties.
#[derive(Debug, Clone)]
pub struct AffineChart {
    pivot: usize,
    normal: Vec<Rational>,
    bias: Rational,
}

impl AffineChart {
    pub fn new(h: &Hyperplane) -> Result<Self> {
        let normal = h.normal();
        let pivot = (0..normal.len())
            .filter(|&j| !normal[j].is_zero())
            .fold(None, |best: Option<usize>, j| match best {
                Some(b) if normal[b].abs() >= normal[j].abs() => Some(b),
                _ => Some(j),
            })
            .ok_or(Error::DegenerateChart(h.id()))?;
        Ok(AffineChart {
            pivot,
            normal: normal.to_vec(),
            bias: h.bias().clone(),
        })
    }

    pub fn pivot(&self) -> usize {
        self.pivot
    }

    pub fn chart_dimension(&self) -> usize {
        self.normal.len() - 1
    }

    /// Maps chart coordinates `u ∈ R^{d−1}` onto the hyperplane.
    pub fn lift(&self, u: &[Rational]) -> Vec<Rational> {
        debug_assert_eq!(u.len(), self.chart_dimension());
        let d = self.normal.len();
        let mut z = Vec::with_capacity(d);
        let mut rest = self.bias.clone();
        let mut it = u.iter();
        for j in 0..d {
            if j == self.pivot {
                z.push(Rational::zero());
            } else {
                let v = it.next().expect("chart coordinate").clone();
                rest -= &self.normal[j] * &v;
                z.push(v);
            }
        }
        z[self.pivot] = rest / &self.normal[self.pivot];
        z
    }

    /// Drops the pivot coordinate of a point on the hyperplane.
    pub fn project(&self, z: &[Rational]) -> Vec<Rational> {
        z.iter()
            .enumerate()
            .filter(|&(j, _)| j != self.pivot)
            .map(|(_, v)| v.clone())
            .collect()
    }

    /// Pulls `g` back through the chart: `g·lift(u) − b_g = g'·u − b'`.
    /// Returns `None` when the restriction has a zero normal (`g` parallel to
    /// or containing the charted hyperplane).
    pub fn restrict(&self, g: &Hyperplane) -> Option<(Vec<Rational>, Rational)> {
        let p = self.pivot;
        let ratio = &g.normal()[p] / &self.normal[p];
        let normal: Vec<Rational> = (0..self.normal.len())
            .filter(|&j| j != p)
            .map(|j| &g.normal()[j] - &ratio * &self.normal[j])
            .collect();
        if is_zero_vector(&normal) {
            return None;
        }
        let bias = g.bias() - &ratio * &self.bias;
        Some((normal, bias))
    }
}

/// A face of hyperplane `hyperplane`: a cell of the arrangement the other
/// hyperplanes induce on it.
#[derive(Debug, Clone)]
pub struct Face {
    pub hyperplane: usize,
    /// Signs of every other hyperplane (in id order, skipping `hyperplane`).
    pub signs: Vec<Sign>,
    /// A point on `hyperplane` in the relative interior of the face.
    pub witness: Vec<Rational>,
}

impl Face {
    /// The two regions this face separates.
    pub fn adjacent_regions(&self) -> (SignVector, SignVector) {
        let mut plus = self.signs.clone();
        plus.insert(self.hyperplane, Sign::Pos);
        let mut minus = self.signs.clone();
        minus.insert(self.hyperplane, Sign::Neg);
        (SignVector(plus), SignVector(minus))
    }
}

#[derive(Debug, Clone)]
pub struct FaceEnumeration {
    pub per_hyperplane: Vec<Vec<Face>>,
}

impl FaceEnumeration {
    pub fn total(&self) -> usize {
        self.per_hyperplane.iter().map(Vec::len).sum()
    }

    pub fn counts(&self) -> Vec<usize> {
        self.per_hyperplane.iter().map(Vec::len).collect()
    }
}

/// Faces of every hyperplane, found by charting it and enumerating the
/// regions the other hyperplanes cut out inside the chart.
pub fn enumerate_faces(a: &Arrangement) -> Result<FaceEnumeration> {
    let per_hyperplane = a
        .hyperplanes()
        .iter()
        .map(|h| faces_of(a, h))
        .collect::<Result<Vec<_>>>()?;
    Ok(FaceEnumeration { per_hyperplane })
}

fn faces_of(a: &Arrangement, h: &Hyperplane) -> Result<Vec<Face>> {
    let chart = AffineChart::new(h)?;
    let mut cutting = Vec::new();
    let mut restricted = Vec::new();
    for g in a.hyperplanes() {
        if g.id() == h.id() {
            continue;
        }
        if let Some(plane) = chart.restrict(g) {
            cutting.push(g.id());
            restricted.push(plane);
        }
    }
    let local = Arrangement::new(chart.chart_dimension(), restricted)?;
    let faces = enumerate_regions(&local)
        .into_iter()
        .map(|cell| {
            let witness = chart.lift(&cell.witness);
            let signs = a
                .hyperplanes()
                .iter()
                .filter(|g| g.id() != h.id())
                .map(|g| match cutting.iter().position(|&c| c == g.id()) {
                    Some(pos) => cell.signs.get(pos),
                    // parallel to h: constant sign on it
                    None => g.side(&witness).unwrap_or(Sign::Pos),
                })
                .collect();
            Face {
                hyperplane: h.id(),
                signs,
                witness,
            }
        })
        .collect();
    Ok(faces)
}
