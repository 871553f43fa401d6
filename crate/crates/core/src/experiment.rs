//! Seeded experiment campaigns with per-trial records and a summary verdict.

use std::fmt;
use std::str::FromStr;

use num_bigint::BigUint;
use rand::Rng;
use rayon::prelude::*;
use serde_json::{json, Value};

use crate::arrangement::{cap_region, enumerate_faces, enumerate_regions, random_arrangement, worst_case_arrangement, Arrangement, Region};
use crate::counting::{avg_teaching, faces_relaxed, ranking_cells, ranking_faces, regions_relaxed};
use crate::dichotomy::{brute_force_classes, class_census, normalize_last_to_basis, random_generic_points, FeatureMap};
use crate::error::{Error, Result};
use crate::exactmath::{format_rational, int, rat, to_f64, Rational};
use crate::learners::{run_trial, Learner, Sampling};
use crate::ranking::{random_generic_objects, ranking_census, validate_e1};
use crate::rng::trial_rng;
use crate::teaching::{teaching_census_of, teaching_set};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Mode {
    TeachCensus,
    Active,
    Passive,
    Dichotomy,
    Ranking,
    CountVerify,
    WorstCase,
}

impl Mode {
    pub const ALL: [Mode; 7] = [
        Mode::TeachCensus,
        Mode::Active,
        Mode::Passive,
        Mode::Dichotomy,
        Mode::Ranking,
        Mode::CountVerify,
        Mode::WorstCase,
    ];

    pub fn name(self) -> &'static str {
        match self {
            Mode::TeachCensus => "teach-census",
            Mode::Active => "active",
            Mode::Passive => "passive",
            Mode::Dichotomy => "dichotomy",
            Mode::Ranking => "ranking",
            Mode::CountVerify => "count-verify",
            Mode::WorstCase => "worst-case",
        }
    }
}

impl fmt::Display for Mode {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for Mode {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        Mode::ALL
            .into_iter()
            .find(|m| m.name() == s)
            .ok_or_else(|| Error::Config(format!("unknown mode {s:?}")))
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ExperimentConfig {
    pub mode: Mode,
    pub n: usize,
    pub d: usize,
    pub dprime: usize,
    pub trials: usize,
    pub seed: u64,
}

impl ExperimentConfig {
    pub fn validate(&self) -> Result<()> {
        let fail = |m: String| Err(Error::Config(m));
        if self.dprime == 0 || self.dprime > self.d {
            return fail(format!("need 1 ≤ d' ≤ d, got d={}, d'={}", self.d, self.dprime));
        }
        if self.trials == 0 {
            return fail("trials must be at least 1".into());
        }
        if self.n == 0 {
            return fail("n must be at least 1".into());
        }
        match self.mode {
            Mode::Dichotomy if self.d < 2 => fail("dichotomy mode needs d ≥ 2".into()),
            Mode::Ranking if self.n < 2 => fail("ranking mode needs n ≥ 2".into()),
            Mode::WorstCase if self.d < 2 || self.n < self.d => fail("worst-case mode needs n ≥ d ≥ 2".into()),
            _ => Ok(()),
        }
    }

    /// Bound the summary mean must respect.
    pub fn bound(&self) -> f64 {
        match self.mode {
            Mode::TeachCensus => 2.0 * self.dprime as f64,
            Mode::Active => 2.0 * self.dprime as f64 * (self.n as f64).log2(),
            Mode::Passive | Mode::WorstCase => self.n as f64,
            Mode::Dichotomy => 2.0 * (self.d - 1) as f64,
            Mode::Ranking => 3.0 * self.d as f64,
            Mode::CountVerify => to_f64(&big(regions_relaxed(self.n, self.dprime))),
        }
    }
}

fn big(v: BigUint) -> Rational {
    Rational::from_integer(v.into())
}

#[derive(Debug, Clone, PartialEq)]
pub struct TrialRecord {
    pub trial: usize,
    pub instance: String,
    pub value: Rational,
    pub bound: f64,
    pub pass: bool,
    pub detail: String,
}

#[derive(Debug, Clone, PartialEq)]
pub struct Summary {
    pub mean: Rational,
    pub min: Rational,
    pub max: Rational,
    pub bound: f64,
    pub verdict: bool,
}

impl Summary {
    /// Every record passes and the mean respects `bound`.
    pub fn from_records(records: &[TrialRecord], bound: f64) -> Summary {
        let zero = int(0);
        let sum: Rational = records.iter().map(|r| &r.value).sum();
        let mean = if records.is_empty() {
            zero.clone()
        } else {
            sum / int(records.len() as i64)
        };
        let min = records.iter().map(|r| &r.value).min().unwrap_or(&zero).clone();
        let max = records.iter().map(|r| &r.value).max().unwrap_or(&zero).clone();
        let verdict = !records.is_empty() && records.iter().all(|r| r.pass) && to_f64(&mean) <= bound;
        Summary {
            mean,
            min,
            max,
            bound,
            verdict,
        }
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct ExperimentReport {
    pub config: ExperimentConfig,
    pub records: Vec<TrialRecord>,
    pub summary: Summary,
}

pub const CSV_HEADER: &str = "trial,instance,value,value_exact,bound,pass,detail";

/// Decimal rendering at 12 significant digits, trailing zeros trimmed.
pub fn format_decimal(x: f64) -> String {
    if x == 0.0 || !x.is_finite() {
        return format!("{x}");
    }
    let magnitude = x.abs().log10().floor() as i32;
    let decimals = (11 - magnitude).max(0) as usize;
    let s = format!("{x:.decimals$}");
    if s.contains('.') {
        s.trim_end_matches('0').trim_end_matches('.').to_string()
    } else {
        s
    }
}

impl ExperimentReport {
    pub fn to_csv(&self) -> String {
        let mut out = String::from(CSV_HEADER);
        out.push('\n');
        for r in &self.records {
            out.push_str(&format!(
                "{},{},{},{},{},{},{}\n",
                r.trial,
                r.instance,
                format_decimal(to_f64(&r.value)),
                format_rational(&r.value),
                format_decimal(r.bound),
                r.pass,
                r.detail
            ));
        }
        out
    }

    pub fn summary_json(&self) -> Value {
        let c = &self.config;
        let s = &self.summary;
        json!({
            "mode": c.mode.name(),
            "n": c.n,
            "d": c.d,
            "dprime": c.dprime,
            "trials": c.trials,
            "seed": c.seed,
            "records": self.records.len(),
            "mean": format_decimal(to_f64(&s.mean)),
            "mean_exact": format_rational(&s.mean),
            "min": format_rational(&s.min),
            "max": format_rational(&s.max),
            "bound": format_decimal(s.bound),
            "verdict": if s.verdict { "pass" } else { "fail" },
        })
    }
}

fn instance_seed(seed: u64, trial: usize) -> u64 {
    trial_rng(seed, trial as u64).gen()
}

pub fn run_experiment(cfg: &ExperimentConfig) -> Result<ExperimentReport> {
    cfg.validate()?;
    let bound = cfg.bound();
    let records = match cfg.mode {
        Mode::CountVerify | Mode::TeachCensus => per_trial(cfg, |t| arrangement_trial(cfg, t, bound))?,
        Mode::Active | Mode::Passive => learner_trials(cfg, bound)?,
        Mode::Dichotomy => per_trial(cfg, |t| dichotomy_trial(cfg, t, bound))?,
        Mode::Ranking => per_trial(cfg, |t| ranking_trial(cfg, t, bound))?,
        Mode::WorstCase => worst_case_records(cfg)?,
    };
    let summary = Summary::from_records(&records, bound);
    Ok(ExperimentReport {
        config: cfg.clone(),
        records,
        summary,
    })
}

fn per_trial<F>(cfg: &ExperimentConfig, f: F) -> Result<Vec<TrialRecord>>
where
    F: Fn(usize) -> Result<TrialRecord> + Sync + Send,
{
    (0..cfg.trials).into_par_iter().map(f).collect()
}

fn arrangement_trial(cfg: &ExperimentConfig, t: usize, bound: f64) -> Result<TrialRecord> {
    let s = instance_seed(cfg.seed, t);
    let a = random_arrangement(cfg.n, cfg.d, cfg.dprime, s)?;
    let regions = enumerate_regions(&a);
    let faces = enumerate_faces(&a)?.total();
    let expected_regions = regions_relaxed(cfg.n, cfg.dprime);
    let expected_faces = faces_relaxed(cfg.n, cfg.dprime);
    let counts_ok = BigUint::from(regions.len()) == expected_regions && BigUint::from(faces) == expected_faces;
    let instance = format!("arrangement-{s}");
    Ok(match cfg.mode {
        Mode::CountVerify => TrialRecord {
            trial: t,
            instance,
            value: int(regions.len() as i64),
            bound,
            pass: counts_ok,
            detail: format!("regions={} faces={} expected_faces={}", regions.len(), faces, expected_faces),
        },
        _ => {
            let census = teaching_census_of(&a, &regions);
            let dp = cfg.dprime as i64;
            let in_range = cfg.n <= 2 * cfg.dprime || (census.mean >= rat(dp, 3) && census.mean <= int(2 * dp));
            TrialRecord {
                trial: t,
                instance,
                pass: counts_ok && census.sum == 2 * faces && census.mean == avg_teaching(cfg.n, cfg.dprime) && in_range,
                detail: format!("regions={} faces={} sum={}", regions.len(), faces, census.sum),
                value: census.mean,
                bound,
            }
        }
    })
}

fn learner_trials(cfg: &ExperimentConfig, bound: f64) -> Result<Vec<TrialRecord>> {
    let a: Arrangement = random_arrangement(cfg.n, cfg.d, cfg.dprime, cfg.seed)?;
    let regions: Vec<Region> = enumerate_regions(&a);
    let learner = match cfg.mode {
        Mode::Active => Learner::Active,
        _ => Learner::Passive(Sampling::WithoutReplacement),
    };
    Ok((0..cfg.trials)
        .into_par_iter()
        .map(|t| {
            let trace = run_trial(&a, &regions, learner, cfg.seed, t as u64);
            TrialRecord {
                trial: t,
                instance: format!("arrangement-{}", cfg.seed),
                value: int(trace.requested as i64),
                bound,
                pass: trace.is_correct() && trace.requested <= cfg.n,
                detail: trace.target.signs.to_string(),
            }
        })
        .collect())
}

fn dichotomy_trial(cfg: &ExperimentConfig, t: usize, bound: f64) -> Result<TrialRecord> {
    let s = instance_seed(cfg.seed, t);
    let ps = random_generic_points(cfg.n, cfg.d, s)?;
    let census = class_census(&ps, &FeatureMap::Identity)?;
    let brute = brute_force_classes(&normalize_last_to_basis(cfg.d, ps.points())?).len();
    let expected = regions_relaxed(cfg.n - 1, cfg.d - 1);
    let classes = census.class_count();
    let mean_ok = cfg.n - 1 <= 2 * (cfg.d - 1) || to_f64(&census.teaching.mean) <= bound;
    let pass = BigUint::from(classes) == expected
        && brute == classes
        && census.dual.arrangement.position().admits(cfg.d - 1)
        && census.teaching.mean == avg_teaching(cfg.n - 1, cfg.d - 1)
        && census.last_disagreements == 0
        && mean_ok;
    Ok(TrialRecord {
        trial: t,
        instance: format!("points-{s}"),
        value: census.teaching.mean,
        bound,
        pass,
        detail: format!("classes={classes} brute_force={brute} last_extreme={}", census.last_extreme),
    })
}

fn ranking_trial(cfg: &ExperimentConfig, t: usize, bound: f64) -> Result<TrialRecord> {
    let s = instance_seed(cfg.seed, t);
    let inst = random_generic_objects(cfg.n, cfg.d, s)?;
    let table = validate_e1(&inst)?;
    let faces = enumerate_faces(inst.arrangement())?.total();
    let census = ranking_census(&inst);
    let d = cfg.d as i64;
    let pass = BigUint::from(table.len()) == ranking_cells(cfg.n, cfg.d)
        && BigUint::from(faces) == ranking_faces(cfg.n, cfg.d)
        && census.sum == 2 * faces
        && census.mean >= rat(d, 4)
        && census.mean <= int(3 * d);
    Ok(TrialRecord {
        trial: t,
        instance: format!("objects-{s}"),
        value: census.mean,
        bound,
        pass,
        detail: format!("cells={} faces={faces}", table.len()),
    })
}

fn worst_case_records(cfg: &ExperimentConfig) -> Result<Vec<TrialRecord>> {
    (cfg.d.max(2)..=cfg.n)
        .collect::<Vec<_>>()
        .into_par_iter()
        .enumerate()
        .map(|(t, m)| {
            let a = worst_case_arrangement(m, cfg.d)?;
            let cap = cap_region(&a)?;
            let size = teaching_set(&a, &cap).len();
            Ok(TrialRecord {
                trial: t,
                instance: format!("tangent-{m}"),
                value: int(size as i64),
                bound: m as f64,
                pass: size == m,
                detail: format!("cap={}", cap.signs),
            })
        })
        .collect()
}
