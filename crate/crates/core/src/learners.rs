//! Active and passive learners over halfspace queries.

use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;
use serde::Serialize;

use crate::arrangement::{enumerate_regions, Arrangement, Hyperplane, Region};
use crate::error::{Error, Result};
use crate::exactmath::{Rational, Sign};
use crate::rng::trial_rng;
use crate::teaching::{constraint_cell, side_feasible, HalfspaceQuery};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Action {
    Requested,
    Imputed,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct Step {
    pub hyperplane: usize,
    pub action: Action,
    pub label: Sign,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct LearnerTrace {
    pub target: Region,
    /// Hyperplane ids in the order the learner visited them.
    pub order: Vec<usize>,
    pub steps: Vec<Step>,
    /// Number of labels requested from the oracle (`M_n`).
    pub requested: usize,
}

impl LearnerTrace {
    /// Inferred labels indexed by hyperplane id.
    pub fn labels(&self) -> Vec<Sign> {
        let mut out = vec![Sign::Pos; self.steps.len()];
        for s in &self.steps {
            out[s.hyperplane] = s.label;
        }
        out
    }

    /// Every hyperplane visited once and every label equal to the target's.
    pub fn is_correct(&self) -> bool {
        let mut seen = vec![false; self.target.signs.len()];
        for s in &self.steps {
            if s.hyperplane >= seen.len() || seen[s.hyperplane] {
                return false;
            }
            seen[s.hyperplane] = true;
        }
        seen.iter().all(|&b| b) && self.labels() == self.target.signs.as_slice()
    }
}

/// A uniformly random permutation of `0..n`.
pub fn random_order<R: Rng>(n: usize, rng: &mut R) -> Vec<usize> {
    let mut order: Vec<usize> = (0..n).collect();
    order.shuffle(rng);
    order
}

/// Active learner in a seed-determined uniformly random order.
pub fn active_learn(a: &Arrangement, target: &Region, seed: u64) -> LearnerTrace {
    let order = random_order(a.len(), &mut ChaCha8Rng::seed_from_u64(seed));
    active_learn_ordered(a, target, &order)
}

/// Visits hyperplanes in `order`, requesting a label only when the hyperplane
/// cuts the cell of the labels known so far and imputing it otherwise.
///
/// The learner keeps an interior point of its current cell. A hyperplane
/// through that point is ambiguous outright; otherwise only the far side
/// needs an LP.
pub fn active_learn_ordered(a: &Arrangement, target: &Region, order: &[usize]) -> LearnerTrace {
    let mut known: Vec<HalfspaceQuery> = Vec::with_capacity(order.len());
    let mut steps = Vec::with_capacity(order.len());
    let mut witness = vec![Rational::from_integer(0.into()); a.dimension()];
    let mut requested = 0;
    for &i in order {
        let h = a.hyperplane(i);
        let truth = target.sign(i);
        let (action, label, moved) = match h.side(&witness) {
            Some(s) => match side_feasible(a, &known, h, s.flip()) {
                None => (Action::Imputed, s, None),
                Some(w) => (Action::Requested, truth, (truth != s).then_some(w)),
            },
            None => {
                let w = side_feasible(a, &known, h, truth).expect("target lies on its own side");
                (Action::Requested, truth, Some(w))
            }
        };
        if let Some(w) = moved {
            witness = w;
        }
        if action == Action::Requested {
            requested += 1;
        }
        known.push(HalfspaceQuery::new(i, label));
        steps.push(Step {
            hyperplane: i,
            action,
            label,
        });
    }
    LearnerTrace {
        target: target.clone(),
        order: order.to_vec(),
        steps,
        requested,
    }
}

/// The unique side of `h` compatible with `known`.
pub fn impute_label(h: &Hyperplane, known: &[HalfspaceQuery], a: &Arrangement) -> Result<Sign> {
    let witness = constraint_cell(a, known).ok_or(Error::EmptyConstraintRegion)?;
    let s = h.side(&witness).ok_or(Error::StillAmbiguous(h.id()))?;
    match side_feasible(a, known, h, s.flip()) {
        Some(_) => Err(Error::StillAmbiguous(h.id())),
        None => Ok(s),
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub enum Sampling {
    #[default]
    WithoutReplacement,
    /// Repeated draws still count as requests. Sensitivity runs only.
    WithReplacement,
}

/// Passive learner: requests uniformly random labels until the version space
/// is a singleton.
pub fn passive_learn(a: &Arrangement, target: &Region, seed: u64) -> Result<LearnerTrace> {
    passive_learn_in(&enumerate_regions(a), target, seed, Sampling::WithoutReplacement)
}

/// [`passive_learn`] against a precomputed region list.
pub fn passive_learn_in(regions: &[Region], target: &Region, seed: u64, sampling: Sampling) -> Result<LearnerTrace> {
    passive_learn_with(regions, target, &mut ChaCha8Rng::seed_from_u64(seed), sampling)
}

fn passive_learn_with<R: Rng>(regions: &[Region], target: &Region, rng: &mut R, sampling: Sampling) -> Result<LearnerTrace> {
    if regions.binary_search(target).is_err() {
        return Err(Error::UnknownRegion(target.signs.to_string()));
    }
    let n = target.signs.len();
    let mut candidates: Vec<&Region> = regions.iter().collect();
    let mut drawn = vec![false; n];
    let mut order = Vec::with_capacity(n);
    let mut steps = Vec::with_capacity(n);
    let mut requested = 0;
    let permutation = random_order(n, rng);
    let mut next = 0;
    while candidates.len() > 1 {
        let i = match sampling {
            Sampling::WithoutReplacement => {
                let i = permutation[next];
                next += 1;
                i
            }
            Sampling::WithReplacement => rng.gen_range(0..n),
        };
        requested += 1;
        if drawn[i] {
            continue;
        }
        drawn[i] = true;
        let label = target.sign(i);
        candidates.retain(|r| r.sign(i) == label);
        order.push(i);
        steps.push(Step {
            hyperplane: i,
            action: Action::Requested,
            label,
        });
    }
    let rest: Vec<usize> = match sampling {
        Sampling::WithoutReplacement => permutation[next..].to_vec(),
        Sampling::WithReplacement => (0..n).filter(|&i| !drawn[i]).collect(),
    };
    let last = candidates[0];
    for i in rest {
        order.push(i);
        steps.push(Step {
            hyperplane: i,
            action: Action::Imputed,
            label: last.sign(i),
        });
    }
    Ok(LearnerTrace {
        target: target.clone(),
        order,
        steps,
        requested,
    })
}

/// Which learner a batch of trials runs.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Learner {
    Active,
    Passive(Sampling),
}

/// One trial: a uniform target from `regions` and a uniform order, both
/// drawn from the trial's own stream.
pub fn run_trial(a: &Arrangement, regions: &[Region], learner: Learner, seed: u64, trial: u64) -> LearnerTrace {
    let mut rng = trial_rng(seed, trial);
    let target = &regions[rng.gen_range(0..regions.len())];
    match learner {
        Learner::Active => {
            let order = random_order(a.len(), &mut rng);
            active_learn_ordered(a, target, &order)
        }
        Learner::Passive(sampling) => passive_learn_with(regions, target, &mut rng, sampling).expect("target drawn from regions"),
    }
}

/// Per-step request counts of the active learner over random targets and
/// orders.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct AmbiguityProfile {
    pub trials: usize,
    /// `requests[k]` counts trials whose step `k + 1` requested a label,
    /// i.e. whose `(k+1)`-th hyperplane cut the cell of the first `k`.
    pub requests: Vec<usize>,
}

impl AmbiguityProfile {
    pub fn frequency(&self, k: usize) -> Rational {
        Rational::new(self.requests[k].into(), self.trials.into())
    }
}

pub fn ambiguity_profile(a: &Arrangement, trials: usize, seed: u64) -> Result<AmbiguityProfile> {
    if trials == 0 {
        return Err(Error::Config("trials must be at least 1".into()));
    }
    let regions = enumerate_regions(a);
    let requests = (0..trials as u64)
        .into_par_iter()
        .map(|t| {
            let trace = run_trial(a, &regions, Learner::Active, seed, t);
            trace
                .steps
                .iter()
                .map(|s| usize::from(s.action == Action::Requested))
                .collect::<Vec<_>>()
        })
        .reduce(
            || vec![0; a.len()],
            |mut acc, v| {
                acc.iter_mut().zip(v).for_each(|(x, y)| *x += y);
                acc
            },
        );
    Ok(AmbiguityProfile { trials, requests })
}

/// `2d'/k + 3σ` with `σ` the binomial standard error at `p = min(2d'/k, 1)`.
pub fn ambiguity_tolerance(dprime: usize, k: usize, trials: usize) -> f64 {
    let p = (2.0 * dprime as f64 / k as f64).min(1.0);
    p + 3.0 * (p * (1.0 - p) / trials as f64).sqrt()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::arrangement::{cap_region, fixtures, random_arrangement, worst_case_arrangement, SignVector};
    use crate::exactmath::{int, ints};
    use proptest::prelude::*;
    use Sign::{Neg, Pos};

    fn region(a: &Arrangement, signs: &str) -> Region {
        let s: SignVector = signs.parse().unwrap();
        enumerate_regions(a).into_iter().find(|r| r.signs == s).unwrap()
    }

    fn actions(t: &LearnerTrace) -> Vec<Action> {
        t.steps.iter().map(|s| s.action).collect()
    }

    #[test]
    fn slab_example() {
        let a = fixtures::parallel_lines();
        let t = active_learn_ordered(&a, &region(&a, "+--"), &[0, 1, 2]);
        assert_eq!(actions(&t), vec![Action::Requested, Action::Requested, Action::Imputed]);
        assert_eq!(t.requested, 2);
        assert!(t.is_correct());
    }

    #[test]
    fn single_hyperplane_needs_one_request() {
        let a = fixtures::single();
        for r in enumerate_regions(&a) {
            for seed in 0..4 {
                assert_eq!(active_learn(&a, &r, seed).requested, 1);
                assert_eq!(passive_learn(&a, &r, seed).unwrap().requested, 1);
            }
        }
    }

    #[test]
    fn bounded_triangle_cell_requests_everything() {
        let a = fixtures::triangle();
        let t = active_learn_ordered(&a, &region(&a, "++-"), &[2, 0, 1]);
        assert_eq!(t.requested, 3);
        assert!(t.is_correct());
    }

    #[test]
    fn imputation_examples() {
        let a = Arrangement::new(
            1,
            vec![(ints(&[1]), int(0)), (ints(&[1]), int(1)), (ints(&[1]), int(2)), (ints(&[1]), int(-5)), (ints(&[2]), int(1))],
        )
        .unwrap();
        let unit = [HalfspaceQuery::new(0, Pos), HalfspaceQuery::new(1, Neg)];
        assert_eq!(impute_label(a.hyperplane(2), &unit, &a), Ok(Neg));
        assert_eq!(impute_label(a.hyperplane(3), &unit[..1], &a), Ok(Pos));
        assert_eq!(impute_label(a.hyperplane(4), &unit, &a), Err(Error::StillAmbiguous(4)));
    }

    #[test]
    fn passive_on_slab_averages_eight_thirds() {
        // stops once both x=0 and x=1 are drawn: 2 draws w.p. 1/3, else 3
        let a = fixtures::parallel_lines();
        let regions = enumerate_regions(&a);
        let target = region(&a, "+--");
        let total: usize = (0..3000)
            .map(|s| passive_learn_in(&regions, &target, s, Sampling::WithoutReplacement).unwrap().requested)
            .sum();
        let mean = total as f64 / 3000.0;
        assert!((mean - 8.0 / 3.0).abs() < 0.05, "mean {mean}");
    }

    #[test]
    fn passive_on_tangent_cap_reads_every_label() {
        let a = worst_case_arrangement(6, 2).unwrap();
        let regions = enumerate_regions(&a);
        let cap = cap_region(&a).unwrap();
        let cap = regions.iter().find(|r| **r == cap).unwrap();
        for seed in 0..20 {
            let t = passive_learn_in(&regions, cap, seed, Sampling::WithoutReplacement).unwrap();
            assert_eq!(t.requested, 6);
            assert!(t.is_correct());
        }
    }

    #[test]
    fn with_replacement_counts_repeats() {
        let a = fixtures::triangle();
        let regions = enumerate_regions(&a);
        let target = region(&a, "++-");
        for seed in 0..20 {
            let t = passive_learn_in(&regions, &target, seed, Sampling::WithReplacement).unwrap();
            assert!(t.is_correct());
            assert!(t.requested >= 3);
        }
    }

    #[test]
    fn unknown_target_is_rejected() {
        let a = fixtures::triangle();
        let regions = enumerate_regions(&a);
        let fake = Region {
            signs: "--+".parse().unwrap(),
            witness: ints(&[0, 0]),
        };
        assert!(matches!(passive_learn_in(&regions, &fake, 0, Sampling::WithoutReplacement), Err(Error::UnknownRegion(_))));
    }

    #[test]
    fn first_step_always_requests() {
        let a = random_arrangement(8, 2, 2, 4).unwrap();
        let p = ambiguity_profile(&a, 50, 9).unwrap();
        assert_eq!(p.frequency(0), int(1));
        assert_eq!(p, ambiguity_profile(&a, 50, 9).unwrap());
        assert!(ambiguity_profile(&a, 0, 9).is_err());
    }

    proptest! {
        #![proptest_config(ProptestConfig::with_cases(32))]

        #[test]
        fn active_learner_is_exact(n in 1usize..=9, d in 1usize..=3, dp in 1usize..=3, seed in any::<u64>(), pick in any::<u64>()) {
            let dp = dp.min(d);
            let a = random_arrangement(n, d, dp, seed).unwrap();
            let regions = enumerate_regions(&a);
            let target = &regions[(pick as usize) % regions.len()];
            let t = active_learn(&a, target, pick);
            prop_assert!(t.is_correct());
            prop_assert!(t.requested <= n);
            prop_assert_eq!(&t, &active_learn(&a, target, pick));
            // each imputation agrees with an independent two-sided check
            let mut known = Vec::new();
            for s in &t.steps {
                if s.action == Action::Imputed {
                    prop_assert_eq!(impute_label(a.hyperplane(s.hyperplane), &known, &a), Ok(s.label));
                } else if !known.is_empty() {
                    prop_assert!(impute_label(a.hyperplane(s.hyperplane), &known, &a).is_err());
                }
                known.push(HalfspaceQuery::new(s.hyperplane, s.label));
            }
            let p = passive_learn_in(&regions, target, pick, Sampling::WithoutReplacement).unwrap();
            prop_assert!(p.is_correct());
            prop_assert!(p.requested <= n);
        }
    }
}
