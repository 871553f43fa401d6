use std::path::{Path, PathBuf};
use std::process::ExitCode;

use clap::{Parser, Subcommand, ValueEnum};
use serde_json::{json, Value};

use polyteach::arrangement::{cap_region, enumerate_faces, enumerate_regions, random_arrangement, worst_case_arrangement, worst_case_points, Arrangement, SignVector};
use polyteach::counting::{avg_teaching, faces_relaxed, region_bounds, regions_relaxed};
use polyteach::dichotomy::{class_census, FeatureMap, PointSet};
use polyteach::exactmath::{format_rational, to_f64, Rational};
use polyteach::experiment::{format_decimal, run_experiment, ExperimentConfig, ExperimentReport, Mode};
use polyteach::io::{arrangement_from_json, arrangement_to_value, points_from_json, points_to_value, read_to_string, region_to_value, to_pretty};
use polyteach::ranking::{bisectors, is_generic_instance, ranking_census, validate_e1};
use polyteach::teaching::{teaching_census, teaching_set, TeachingCensus};
use polyteach::{Error, Result};

#[derive(Parser)]
#[command(name = "polyteach", version, about = "Teach, learn and count the cells of hyperplane arrangements")]
struct Cli {
    /// Base seed for random instances and trial streams
    #[arg(long, global = true, default_value_t = 0)]
    seed: u64,
    /// Number of trials for randomized commands
    #[arg(long, global = true, default_value_t = 1)]
    trials: usize,
    /// Write output here instead of stdout
    #[arg(long, global = true)]
    out: Option<PathBuf>,
    #[arg(long, global = true, value_enum, default_value_t = Format::Json)]
    format: Format,
    #[command(subcommand)]
    command: Command,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Format {
    Json,
    Csv,
}

#[derive(Subcommand)]
enum Command {
    /// Closed-form region, face and average teaching counts
    Count {
        #[arg(long)]
        n: usize,
        #[arg(long)]
        dprime: usize,
    },
    /// Random arrangement in relaxed general position, as JSON
    Generate {
        #[arg(long)]
        n: usize,
        #[arg(long)]
        d: usize,
        #[arg(long)]
        dprime: usize,
    },
    /// List the regions (and optionally faces) of an arrangement
    Enumerate {
        #[arg(long)]
        arrangement: PathBuf,
        #[arg(long)]
        faces: bool,
    },
    /// Minimal teaching set of one region
    Teach {
        #[arg(long)]
        arrangement: PathBuf,
        /// Sign vector such as "+-+"
        #[arg(long)]
        region: String,
    },
    /// Teaching-set sizes over every region
    Census {
        #[arg(long)]
        arrangement: PathBuf,
    },
    /// Active learner over random targets and orders
    LearnActive {
        #[arg(long)]
        n: usize,
        #[arg(long)]
        d: usize,
        #[arg(long)]
        dprime: usize,
    },
    /// Passive learner over random targets and draws
    LearnPassive {
        #[arg(long)]
        n: usize,
        #[arg(long)]
        d: usize,
        #[arg(long)]
        dprime: usize,
    },
    /// Separable classes, dual teaching sets and extreme points
    Dichotomy {
        #[arg(long)]
        points: PathBuf,
        /// identity or monomialK
        #[arg(long, default_value = "identity")]
        phi: String,
        /// Include the extreme points of every class
        #[arg(long)]
        extreme: bool,
    },
    /// Cells of the bisector arrangement and their rankings
    Rank {
        #[arg(long)]
        objects: PathBuf,
        #[arg(long)]
        census: bool,
    },
    /// Tangent arrangement with one cell bounded by every hyperplane
    WorstCase {
        #[arg(long)]
        n: usize,
        #[arg(long, default_value_t = 2)]
        d: usize,
    },
    /// Seeded experiment campaign with a pass/fail verdict
    Experiment {
        #[arg(long)]
        mode: String,
        #[arg(long)]
        n: usize,
        #[arg(long, default_value_t = 2)]
        d: usize,
        #[arg(long)]
        dprime: Option<usize>,
    },
}

/// What a command produced: a document, and whether its bounds held.
struct Output {
    text: String,
    pass: bool,
}

impl Output {
    fn json(v: &Value) -> Self {
        Output {
            text: to_pretty(v),
            pass: true,
        }
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(&cli) {
        Ok(out) => {
            if let Err(e) = write(cli.out.as_deref(), &out.text) {
                eprintln!("error: {e}");
                return ExitCode::from(2);
            }
            if out.pass {
                ExitCode::SUCCESS
            } else {
                ExitCode::from(1)
            }
        }
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(2)
        }
    }
}

fn write(path: Option<&Path>, text: &str) -> Result<()> {
    match path {
        Some(p) => std::fs::write(p, text).map_err(|e| Error::Io(format!("{}: {e}", p.display()))),
        None => {
            print!("{text}");
            Ok(())
        }
    }
}

fn json_only(cli: &Cli, command: &str) -> Result<()> {
    match cli.format {
        Format::Json => Ok(()),
        Format::Csv => Err(Error::Config(format!("{command} has no CSV output"))),
    }
}

fn rational(r: &Rational) -> Value {
    json!({ "exact": format_rational(r), "decimal": format_decimal(to_f64(r)) })
}

fn load_arrangement(path: &Path) -> Result<Arrangement> {
    arrangement_from_json(&read_to_string(path)?)
}

fn census_value(c: &TeachingCensus) -> Value {
    json!({
        "regions": c.regions(),
        "histogram": c.histogram.iter().map(|(k, v)| (k.to_string(), json!(v))).collect::<serde_json::Map<_, _>>(),
        "sum": c.sum,
        "mean": rational(&c.mean),
    })
}

fn census_csv(c: &TeachingCensus) -> String {
    let mut s = String::from("size,count\n");
    for (k, v) in &c.histogram {
        s.push_str(&format!("{k},{v}\n"));
    }
    s
}

fn report_output(cli: &Cli, report: &ExperimentReport) -> Output {
    let text = match cli.format {
        Format::Json => to_pretty(&report.summary_json()),
        Format::Csv => report.to_csv(),
    };
    Output {
        text,
        pass: report.summary.verdict,
    }
}

fn experiment(cli: &Cli, mode: Mode, n: usize, d: usize, dprime: usize) -> Result<Output> {
    let cfg = ExperimentConfig {
        mode,
        n,
        d,
        dprime,
        trials: cli.trials,
        seed: cli.seed,
    };
    Ok(report_output(cli, &run_experiment(&cfg)?))
}

fn run(cli: &Cli) -> Result<Output> {
    match &cli.command {
        Command::Count { n, dprime } => {
            json_only(cli, "count")?;
            let bounds = match region_bounds(*n, *dprime) {
                Ok((lo, hi)) => json!({ "lower": lo.to_string(), "upper": rational(&hi) }),
                Err(_) => Value::Null,
            };
            Ok(Output::json(&json!({
                "n": n,
                "dprime": dprime,
                "regions": regions_relaxed(*n, *dprime).to_string(),
                "faces": faces_relaxed(*n, *dprime).to_string(),
                "avg_teaching": rational(&avg_teaching(*n, *dprime)),
                "bounds": bounds,
            })))
        }
        Command::Generate { n, d, dprime } => {
            json_only(cli, "generate")?;
            Ok(Output::json(&arrangement_to_value(&random_arrangement(*n, *d, *dprime, cli.seed)?)))
        }
        Command::Enumerate { arrangement, faces } => {
            let a = load_arrangement(arrangement)?;
            let regions = enumerate_regions(&a);
            if cli.format == Format::Csv {
                let mut s = String::from("signs,witness\n");
                for r in &regions {
                    let w: Vec<String> = r.witness.iter().map(format_rational).collect();
                    s.push_str(&format!("{},{}\n", r.signs, w.join(" ")));
                }
                return Ok(Output { text: s, pass: true });
            }
            let mut doc = json!({
                "dimension": a.dimension(),
                "hyperplanes": a.len(),
                "position_class": a.position_class(),
                "region_count": regions.len(),
                "regions": regions.iter().map(region_to_value).collect::<Vec<_>>(),
            });
            if *faces {
                let f = enumerate_faces(&a)?;
                doc["face_count"] = json!(f.total());
                doc["faces_per_hyperplane"] = json!(f.counts());
            }
            Ok(Output::json(&doc))
        }
        Command::Teach { arrangement, region } => {
            json_only(cli, "teach")?;
            let a = load_arrangement(arrangement)?;
            let signs: SignVector = region.parse()?;
            if signs.len() != a.len() {
                return Err(Error::DimensionMismatch {
                    expected: a.len(),
                    found: signs.len(),
                });
            }
            let r = enumerate_regions(&a)
                .into_iter()
                .find(|r| r.signs == signs)
                .ok_or_else(|| Error::UnknownRegion(region.clone()))?;
            let ts = teaching_set(&a, &r);
            Ok(Output::json(&json!({
                "target": region_to_value(&ts.target),
                "size": ts.len(),
                "queries": ts.queries.iter().map(|q| json!({
                    "hyperplane": q.hyperplane,
                    "label": q.label.as_i8(),
                })).collect::<Vec<_>>(),
            })))
        }
        Command::Census { arrangement } => {
            let c = teaching_census(&load_arrangement(arrangement)?);
            Ok(match cli.format {
                Format::Json => Output::json(&census_value(&c)),
                Format::Csv => Output {
                    text: census_csv(&c),
                    pass: true,
                },
            })
        }
        Command::LearnActive { n, d, dprime } => experiment(cli, Mode::Active, *n, *d, *dprime),
        Command::LearnPassive { n, d, dprime } => experiment(cli, Mode::Passive, *n, *d, *dprime),
        Command::Dichotomy { points, phi, extreme } => {
            json_only(cli, "dichotomy")?;
            let file = points_from_json(&read_to_string(points)?)?;
            let ps = PointSet::new(file.dimension, file.points)?;
            let phi: FeatureMap = phi.parse()?;
            let c = class_census(&ps, &phi)?;
            let mut doc = json!({
                "points": ps.len(),
                "feature_dimension": phi.target_dimension(ps.dimension()),
                "point_class": c.dual.point_class,
                "classes": c.class_count(),
                "dual_hyperplanes": c.dual.arrangement.len(),
                "census": census_value(&c.teaching),
                "last_point_extreme": c.last_extreme,
                "last_point_disagreements": c.last_disagreements,
            });
            if *extreme {
                doc["per_class"] = json!(c
                    .classes
                    .iter()
                    .map(|k| json!({
                        "dichotomy": k.dichotomy.to_string(),
                        "extreme": k.extreme.indices,
                        "dual_teaching": k.extreme.dual_teaching,
                    }))
                    .collect::<Vec<_>>());
            }
            Ok(Output::json(&doc))
        }
        Command::Rank { objects, census } => {
            json_only(cli, "rank")?;
            let file = points_from_json(&read_to_string(objects)?)?;
            let inst = bisectors(file.dimension, file.points)?;
            let table = validate_e1(&inst)?;
            let mut doc = json!({
                "objects": inst.len(),
                "bisectors": inst.arrangement().len(),
                "generic": is_generic_instance(&inst),
                "cells": table.len(),
                "rankings": table.iter().map(|c| json!({
                    "signs": c.region.signs.to_string(),
                    "ranking": c.ranking.0,
                })).collect::<Vec<_>>(),
            });
            if *census {
                doc["census"] = census_value(&ranking_census(&inst));
            }
            Ok(Output::json(&doc))
        }
        Command::WorstCase { n, d } => {
            json_only(cli, "worst-case")?;
            let a = worst_case_arrangement(*n, *d)?;
            let cap = cap_region(&a)?;
            let size = teaching_set(&a, &cap).len();
            Ok(Output {
                text: to_pretty(&json!({
                    "points": points_to_value(*d, &worst_case_points(*n, *d)?),
                    "arrangement": arrangement_to_value(&a),
                    "cap": region_to_value(&cap),
                    "teaching_set_size": size,
                })),
                pass: size == *n,
            })
        }
        Command::Experiment { mode, n, d, dprime } => {
            let mode: Mode = mode.parse()?;
            experiment(cli, mode, *n, *d, dprime.unwrap_or(*d))
        }
    }
}
