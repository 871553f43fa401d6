//! Strict feasibility of `{ η_i·z > b_i }` / `{ η_i·z < b_i }` systems.
//!
//! The slack program
//!
//! ```text
//!   maximize ε  subject to  s_i (η_i·z − b_i) ≥ ε,  ε ≤ 1,  z and ε free
//! ```
//!
//! is solved through its dual, `min hᵀy s.t. Gᵀy = e_ε, y ≥ 0`, which has
//! only `d + 1` equality rows. The primal point is read back from the
//! simplex multipliers of the optimal dual tableau. Pivoting follows Bland's
//! rule throughout, so termination does not depend on degeneracy.

use num_traits::{One, Signed, Zero};

use super::{dot, is_zero_vector, Rational, Sign};
use crate::error::{Error, Result};

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct StrictConstraint {
    pub normal: Vec<Rational>,
    pub bias: Rational,
    pub sense: Sign,
}

impl StrictConstraint {
    pub fn is_satisfied(&self, z: &[Rational]) -> bool {
        Sign::of(&(dot(&self.normal, z) - &self.bias)) == Some(self.sense)
    }
}

/// A system of strict linear inequalities in `R^dimension`.
#[derive(Debug, Clone, PartialEq, Eq, Default)]
pub struct StrictLP {
    dimension: usize,
    constraints: Vec<StrictConstraint>,
}

impl StrictLP {
    pub fn new(dimension: usize) -> Self {
        StrictLP {
            dimension,
            constraints: Vec::new(),
        }
    }

    pub fn push(&mut self, normal: Vec<Rational>, bias: Rational, sense: Sign) -> Result<()> {
        if normal.len() != self.dimension {
            return Err(Error::DimensionMismatch {
                expected: self.dimension,
                found: normal.len(),
            });
        }
        if is_zero_vector(&normal) {
            return Err(Error::ZeroNormal);
        }
        self.constraints.push(StrictConstraint {
            normal,
            bias,
            sense,
        });
        Ok(())
    }

    pub fn with(mut self, normal: Vec<Rational>, bias: Rational, sense: Sign) -> Result<Self> {
        self.push(normal, bias, sense)?;
        Ok(self)
    }

    pub fn dimension(&self) -> usize {
        self.dimension
    }

    pub fn constraints(&self) -> &[StrictConstraint] {
        &self.constraints
    }

    pub fn is_strictly_satisfied(&self, z: &[Rational]) -> bool {
        self.constraints.iter().all(|c| c.is_satisfied(z))
    }

    fn rows(&self) -> Vec<Row<'_>> {
        self.constraints
            .iter()
            .map(|c| Row {
                normal: &c.normal,
                bias: &c.bias,
                sense: c.sense,
            })
            .collect()
    }
}

/// Returns an exact point strictly satisfying every constraint, or `None`
/// when the open polyhedron is empty.
pub fn strict_feasible(lp: &StrictLP) -> Option<Vec<Rational>> {
    let opt = max_slack(lp.dimension, &lp.rows());
    if opt.slack.is_positive() {
        debug_assert!(lp.is_strictly_satisfied(&opt.point));
        Some(opt.point)
    } else {
        None
    }
}

/// Borrowed constraint row, used on hot paths to avoid cloning normals.
#[derive(Debug, Clone, Copy)]
pub(crate) struct Row<'a> {
    pub normal: &'a [Rational],
    pub bias: &'a Rational,
    pub sense: Sign,
}

impl Row<'_> {
    fn signed_gap(&self, z: &[Rational]) -> Rational {
        let gap = dot(self.normal, z) - self.bias;
        match self.sense {
            Sign::Pos => gap,
            Sign::Neg => -gap,
        }
    }
}

pub(crate) struct SlackOptimum {
    pub point: Vec<Rational>,
    pub slack: Rational,
}

impl SlackOptimum {
    pub fn into_witness(self) -> Option<Vec<Rational>> {
        self.slack.is_positive().then_some(self.point)
    }
}

pub(crate) fn max_slack(dimension: usize, rows: &[Row<'_>]) -> SlackOptimum {
    if rows.is_empty() {
        return SlackOptimum {
            point: vec![Rational::zero(); dimension],
            slack: Rational::one(),
        };
    }
    let m = rows.len();
    let p = dimension + 1;
    // Column i of Gᵀ is the primal row -s_i η_i | 1, with cost -s_i b_i;
    // the last column is the cap ε ≤ 1.
    let mut a = vec![vec![Rational::zero(); m + 1]; p];
    let mut cost = Vec::with_capacity(m + 1);
    for (i, row) in rows.iter().enumerate() {
        let neg = row.sense == Sign::Pos;
        for (j, v) in row.normal.iter().enumerate() {
            a[j][i] = if neg { -v.clone() } else { v.clone() };
        }
        a[dimension][i] = Rational::one();
        cost.push(if neg { -row.bias.clone() } else { row.bias.clone() });
    }
    a[dimension][m] = Rational::one();
    cost.push(Rational::one());
    let mut rhs = vec![Rational::zero(); p];
    rhs[dimension] = Rational::one();

    let multipliers = match solve_standard(a, rhs, &cost) {
        Standard::Optimal { multipliers, .. } => multipliers,
        // the primal is feasible (ε → −∞) and bounded (ε ≤ 1)
        Standard::Infeasible | Standard::Unbounded => {
            unreachable!("slack program always has an optimum")
        }
    };
    let mut point = multipliers;
    let slack = point.pop().expect("ε multiplier");
    debug_assert!(rows.iter().all(|r| r.signed_gap(&point) >= slack));
    SlackOptimum { point, slack }
}

enum Standard {
    Optimal {
        #[allow(dead_code)]
        value: Rational,
        multipliers: Vec<Rational>,
    },
    Infeasible,
    Unbounded,
}

struct Tableau {
    t: Vec<Vec<Rational>>,
    obj: Vec<Rational>,
    basis: Vec<usize>,
    active: Vec<bool>,
    rhs: usize,
}

impl Tableau {
    fn pivot(&mut self, r: usize, c: usize) {
        let inv = self.t[r][c].recip();
        for v in self.t[r].iter_mut() {
            if !v.is_zero() {
                *v = &*v * &inv;
            }
        }
        let prow = std::mem::take(&mut self.t[r]);
        for (i, row) in self.t.iter_mut().enumerate() {
            if i == r || row.is_empty() || row[c].is_zero() {
                continue;
            }
            let f = row[c].clone();
            for (v, pv) in row.iter_mut().zip(&prow) {
                if !pv.is_zero() {
                    *v = &*v - &f * pv;
                }
            }
        }
        if !self.obj[c].is_zero() {
            let f = self.obj[c].clone();
            for (v, pv) in self.obj.iter_mut().zip(&prow) {
                if !pv.is_zero() {
                    *v = &*v - &f * pv;
                }
            }
        }
        self.t[r] = prow;
        self.basis[r] = c;
    }

    /// Bland's rule over columns `0..limit`. Returns false when unbounded.
    fn optimize(&mut self, limit: usize) -> bool {
        loop {
            let Some(enter) = (0..limit).find(|&k| self.obj[k].is_negative()) else {
                return true;
            };
            let mut leave: Option<(usize, Rational)> = None;
            for i in 0..self.t.len() {
                if !self.active[i] || !self.t[i][enter].is_positive() {
                    continue;
                }
                let ratio = &self.t[i][self.rhs] / &self.t[i][enter];
                let better = match &leave {
                    None => true,
                    Some((li, lr)) => {
                        ratio < *lr || (ratio == *lr && self.basis[i] < self.basis[*li])
                    }
                };
                if better {
                    leave = Some((i, ratio));
                }
            }
            match leave {
                Some((r, _)) => self.pivot(r, enter),
                None => return false,
            }
        }
    }
}

/// Two-phase simplex for `min costᵀx s.t. a·x = b, x ≥ 0`.
///
/// The returned multipliers `y` satisfy `cost − yᵀa ≥ 0` at optimality and
/// are, by construction, an optimal solution of the dual program.
fn solve_standard(mut a: Vec<Vec<Rational>>, mut b: Vec<Rational>, cost: &[Rational]) -> Standard {
    let p = a.len();
    let q = cost.len();
    let mut negated = vec![false; p];
    for j in 0..p {
        if b[j].is_negative() {
            negated[j] = true;
            b[j] = -b[j].clone();
            for v in a[j].iter_mut() {
                *v = -v.clone();
            }
        }
    }
    let width = q + p + 1;
    let rhs = q + p;
    let mut t = Vec::with_capacity(p);
    let mut obj = vec![Rational::zero(); width];
    for (j, (row, bj)) in a.into_iter().zip(b).enumerate() {
        let mut full = row;
        full.resize(width, Rational::zero());
        full[q + j] = Rational::one();
        full[rhs] = bj;
        for k in 0..q {
            if !full[k].is_zero() {
                obj[k] = &obj[k] - &full[k];
            }
        }
        obj[rhs] = &obj[rhs] - &full[rhs];
        t.push(full);
    }
    let mut tab = Tableau {
        t,
        obj,
        basis: (q..q + p).collect(),
        active: vec![true; p],
        rhs,
    };

    // phase 1 cannot be unbounded: the objective is bounded below by 0
    tab.optimize(q);
    if !tab.obj[rhs].is_zero() {
        return Standard::Infeasible;
    }
    for i in 0..p {
        if tab.basis[i] < q {
            continue;
        }
        match (0..q).find(|&k| !tab.t[i][k].is_zero()) {
            Some(k) => tab.pivot(i, k),
            None => tab.active[i] = false,
        }
    }

    let mut obj = vec![Rational::zero(); width];
    obj[..q].clone_from_slice(cost);
    for i in 0..p {
        if !tab.active[i] {
            continue;
        }
        let cb = &cost[tab.basis[i]];
        if cb.is_zero() {
            continue;
        }
        for (v, tv) in obj.iter_mut().zip(&tab.t[i]) {
            if !tv.is_zero() {
                *v = &*v - cb * tv;
            }
        }
    }
    tab.obj = obj;
    if !tab.optimize(q) {
        return Standard::Unbounded;
    }

    let multipliers = (0..p)
        .map(|j| {
            let y = -tab.obj[q + j].clone();
            if negated[j] {
                -y
            } else {
                y
            }
        })
        .collect();
    Standard::Optimal {
        value: -tab.obj[rhs].clone(),
        multipliers,
    }
}
