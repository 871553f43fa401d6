//! Hyperplanes, arrangements and the open cells (regions) they induce.

mod enumerate;
mod generate;
mod position;

use std::fmt;
use std::str::FromStr;
use std::sync::OnceLock;

use crate::error::{Error, Result};
use crate::exactmath::{dot, is_zero_vector, Rational, Row, Sign};

pub use enumerate::{enumerate_faces, enumerate_regions, locate_region, AffineChart, Face, FaceEnumeration};
pub use generate::{cap_region, random_arrangement, worst_case_arrangement, worst_case_points};
pub use position::{verify_position, PositionReport, PositionVerdict};

/// The affine hyperplane `{ z : normal·z = bias }`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Hyperplane {
    id: usize,
    normal: Vec<Rational>,
    bias: Rational,
}

impl Hyperplane {
    pub fn new(id: usize, normal: Vec<Rational>, bias: Rational) -> Result<Self> {
        if is_zero_vector(&normal) {
            return Err(Error::ZeroNormal);
        }
        Ok(Hyperplane { id, normal, bias })
    }

    pub fn id(&self) -> usize {
        self.id
    }

    pub fn normal(&self) -> &[Rational] {
        &self.normal
    }

    pub fn bias(&self) -> &Rational {
        &self.bias
    }

    pub fn dimension(&self) -> usize {
        self.normal.len()
    }

    /// `normal·z − bias`.
    pub fn eval(&self, z: &[Rational]) -> Rational {
        dot(&self.normal, z) - &self.bias
    }

    /// Side of `z`, or `None` when `z` lies on the hyperplane.
    pub fn side(&self, z: &[Rational]) -> Option<Sign> {
        Sign::of(&self.eval(z))
    }

    pub fn contains(&self, z: &[Rational]) -> bool {
        self.side(z).is_none()
    }

    pub(crate) fn row(&self, sense: Sign) -> Row<'_> {
        Row {
            normal: &self.normal,
            bias: &self.bias,
            sense,
        }
    }
}

/// An ordered family of hyperplanes in `R^dimension`. Ids are positions.
///
/// The position class is computed on first request and cached.
#[derive(Debug, Clone)]
pub struct Arrangement {
    dimension: usize,
    hyperplanes: Vec<Hyperplane>,
    position: OnceLock<PositionReport>,
}

impl PartialEq for Arrangement {
    fn eq(&self, other: &Self) -> bool {
        self.dimension == other.dimension && self.hyperplanes == other.hyperplanes
    }
}

impl Eq for Arrangement {}

impl Arrangement {
    pub fn new(dimension: usize, planes: Vec<(Vec<Rational>, Rational)>) -> Result<Self> {
        let hyperplanes = planes
            .into_iter()
            .enumerate()
            .map(|(id, (normal, bias))| {
                if normal.len() != dimension {
                    return Err(Error::DimensionMismatch {
                        expected: dimension,
                        found: normal.len(),
                    });
                }
                Hyperplane::new(id, normal, bias)
            })
            .collect::<Result<Vec<_>>>()?;
        Ok(Arrangement {
            dimension,
            hyperplanes,
            position: OnceLock::new(),
        })
    }

    pub(crate) fn with_report(mut self, report: PositionReport) -> Self {
        self.position = OnceLock::from(report);
        self
    }

    pub fn dimension(&self) -> usize {
        self.dimension
    }

    pub fn len(&self) -> usize {
        self.hyperplanes.len()
    }

    pub fn is_empty(&self) -> bool {
        self.hyperplanes.is_empty()
    }

    pub fn hyperplanes(&self) -> &[Hyperplane] {
        &self.hyperplanes
    }

    pub fn hyperplane(&self, id: usize) -> &Hyperplane {
        &self.hyperplanes[id]
    }

    pub fn position(&self) -> &PositionReport {
        self.position.get_or_init(|| verify_position(self))
    }

    /// The verified relaxed-general-position class, if any.
    pub fn position_class(&self) -> Option<usize> {
        self.position().class()
    }

    /// Sign vector of `z`, failing on the first hyperplane containing it.
    pub fn signs_at(&self, z: &[Rational]) -> Result<SignVector> {
        self.hyperplanes
            .iter()
            .map(|h| h.side(z).ok_or(Error::OnHyperplane(h.id)))
            .collect::<Result<Vec<_>>>()
            .map(SignVector)
    }

    /// Same arrangement with each hyperplane multiplied by a nonzero factor.
    pub fn rescaled(&self, factors: &[Rational]) -> Result<Arrangement> {
        let planes = self
            .hyperplanes
            .iter()
            .zip(factors.iter().cycle())
            .map(|(h, f)| {
                (
                    h.normal.iter().map(|v| v * f).collect(),
                    &h.bias * f,
                )
            })
            .collect();
        Arrangement::new(self.dimension, planes)
    }

    /// Same hyperplanes in the order given by `order` (a permutation).
    pub fn permuted(&self, order: &[usize]) -> Result<Arrangement> {
        let planes = order
            .iter()
            .map(|&i| {
                let h = &self.hyperplanes[i];
                (h.normal.clone(), h.bias.clone())
            })
            .collect();
        Arrangement::new(self.dimension, planes)
    }
}

/// One strict side per hyperplane, rendered as `"+-+…"`.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct SignVector(pub Vec<Sign>);

impl SignVector {
    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn get(&self, i: usize) -> Sign {
        self.0[i]
    }

    pub fn as_slice(&self) -> &[Sign] {
        &self.0
    }

    pub fn flipped_at(&self, i: usize) -> SignVector {
        let mut v = self.0.clone();
        v[i] = v[i].flip();
        SignVector(v)
    }

    pub fn negated(&self) -> SignVector {
        SignVector(self.0.iter().map(|s| s.flip()).collect())
    }
}

impl fmt::Display for SignVector {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for s in &self.0 {
            write!(f, "{}", s.as_char())?;
        }
        Ok(())
    }
}

impl FromStr for SignVector {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        s.chars()
            .enumerate()
            .map(|(i, c)| {
                Sign::from_char(c).ok_or_else(|| {
                    Error::parse(format!("signs[{i}]"), format!("expected '+' or '-', found {c:?}"))
                })
            })
            .collect::<Result<Vec<_>>>()
            .map(SignVector)
    }
}

/// An open cell of an arrangement: its sign vector and an exact interior
/// point. Equality and ordering look at the signs only.
#[derive(Debug, Clone)]
pub struct Region {
    pub signs: SignVector,
    pub witness: Vec<Rational>,
}

impl PartialEq for Region {
    fn eq(&self, other: &Self) -> bool {
        self.signs == other.signs
    }
}

impl Eq for Region {}

impl PartialOrd for Region {
    fn partial_cmp(&self, other: &Self) -> Option<std::cmp::Ordering> {
        Some(self.cmp(other))
    }
}

impl Ord for Region {
    fn cmp(&self, other: &Self) -> std::cmp::Ordering {
        self.signs.cmp(&other.signs)
    }
}

impl Region {
    pub fn sign(&self, hyperplane: usize) -> Sign {
        self.signs.get(hyperplane)
    }

    /// Whether the witness strictly satisfies every signed constraint of `a`.
    pub fn is_consistent_with(&self, a: &Arrangement) -> bool {
        a.len() == self.signs.len()
            && a
                .hyperplanes()
                .iter()
                .all(|h| h.side(&self.witness) == Some(self.sign(h.id())))
    }
}

#[cfg(test)]
pub(crate) mod fixtures {
    use super::*;
    use crate::exactmath::{int, ints};

    fn build(d: usize, planes: &[(&[i64], i64)]) -> Arrangement {
        Arrangement::new(d, planes.iter().map(|(n, b)| (ints(n), int(*b))).collect()).unwrap()
    }

    /// x = 0, y = 0, x + y = 1.
    pub fn triangle() -> Arrangement {
        build(2, &[(&[1, 0], 0), (&[0, 1], 0), (&[1, 1], 1)])
    }

    /// x = 0, x = 1, x = 2 in the plane.
    pub fn parallel_lines() -> Arrangement {
        build(2, &[(&[1, 0], 0), (&[1, 0], 1), (&[1, 0], 2)])
    }

    /// x = 0, y = 0, x + y = 0.
    pub fn concurrent_lines() -> Arrangement {
        build(2, &[(&[1, 0], 0), (&[0, 1], 0), (&[1, 1], 0)])
    }

    pub fn single() -> Arrangement {
        build(2, &[(&[1, 2], 3)])
    }
}
