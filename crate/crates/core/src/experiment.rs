//! Multi-run experiments: parameter sweeps over seeded splits, aggregation
//! across runs and CSV reporting.
//!
//! Every parameter point of one experiment is evaluated on the same splits,
//! so curves can be compared point by point. Apart from the timing columns
//! the report is a pure function of the configuration.

use std::collections::BTreeMap;
use std::fmt;
use std::fs::File;
use std::io::{BufWriter, Write};
use std::path::{Path, PathBuf};
use std::str::FromStr;
use std::time::{Duration, Instant};

use crate::dataset::{coarse_grain, load_movielens, make_splits, SplitDataset};
use crate::error::{Error, Result};
use crate::metrics::{evaluate, MetricsReport};
use crate::recommend::recommend_all;
use crate::similarity::{cf_similarity, sa_similarity, SimilarityMatrix};

/// Version of the CSV layout written by [`ExperimentReport::write_csv`].
pub const REPORT_SCHEMA_VERSION: u32 = 1;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Algorithm {
    Cf,
    Sa,
    SaTopN,
}

impl Algorithm {
    pub fn as_str(self) -> &'static str {
        match self {
            Algorithm::Cf => "cf",
            Algorithm::Sa => "sa",
            Algorithm::SaTopN => "sa-topn",
        }
    }
}

impl fmt::Display for Algorithm {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

impl FromStr for Algorithm {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s.to_ascii_lowercase().as_str() {
            "cf" => Ok(Algorithm::Cf),
            "sa" | "sa-cf" => Ok(Algorithm::Sa),
            "sa-topn" | "sa_topn" | "topn" => Ok(Algorithm::SaTopN),
            other => Err(Error::Parameter(format!("unknown algorithm {other:?}"))),
        }
    }
}

/// β grid `0.0, 0.1, …, 2.5`.
pub fn default_beta_grid() -> Vec<f64> {
    (0..=25).map(|k| k as f64 / 10.0).collect()
}

/// Neighbour-count grid for `n_users` users: doubling from 5 up to 640,
/// clipped below `m - 1`, then `m - 1` itself (the untruncated reference).
pub fn default_top_n_grid(n_users: usize) -> Vec<usize> {
    let max = n_users.saturating_sub(1);
    let mut grid: Vec<usize> = [5, 10, 20, 40, 80, 160, 320, 640]
        .into_iter()
        .filter(|&n| n < max)
        .collect();
    if max >= 1 {
        grid.push(max);
    }
    grid
}

#[derive(Debug, Clone, PartialEq)]
pub struct ExperimentConfig {
    pub data_path: PathBuf,
    pub probe_fraction: f64,
    pub n_runs: usize,
    pub master_seed: u64,
    pub algorithm: Algorithm,
    pub beta_values: Vec<f64>,
    /// Neighbour counts for [`Algorithm::SaTopN`]; empty means
    /// [`default_top_n_grid`].
    pub n_values: Vec<usize>,
    pub list_lengths: Vec<usize>,
    pub output_path: Option<PathBuf>,
}

impl ExperimentConfig {
    /// Defaults: 10 runs, 10% probe, β = 1, L ∈ {10, 20, 50}, seed 2009.
    pub fn new(data_path: impl Into<PathBuf>, algorithm: Algorithm) -> Self {
        Self {
            data_path: data_path.into(),
            probe_fraction: 0.1,
            n_runs: 10,
            master_seed: 2009,
            algorithm,
            beta_values: vec![1.0],
            n_values: Vec::new(),
            list_lengths: vec![10, 20, 50],
            output_path: None,
        }
    }

    pub fn validate(&self) -> Result<()> {
        if self.n_runs == 0 {
            return Err(Error::Parameter("n_runs must be at least 1".into()));
        }
        if !(self.probe_fraction > 0.0 && self.probe_fraction < 1.0) {
            return Err(Error::Parameter(format!(
                "probe fraction {} is not in (0, 1)",
                self.probe_fraction
            )));
        }
        if self.list_lengths.is_empty() || self.list_lengths.contains(&0) {
            return Err(Error::Parameter("list lengths must be a nonempty list of positive counts".into()));
        }
        if self.algorithm != Algorithm::Cf {
            if self.beta_values.is_empty() {
                return Err(Error::Parameter("beta sweep is empty".into()));
            }
            if let Some(b) = self.beta_values.iter().find(|b| !b.is_finite()) {
                return Err(Error::Parameter(format!("beta {b} is not finite")));
            }
        }
        Ok(())
    }
}

/// Wall-clock time of each pipeline stage for one evaluation.
#[derive(Debug, Clone, Copy, Default, PartialEq)]
pub struct StageTimes {
    pub similarity: Duration,
    pub prediction: Duration,
    pub metrics: Duration,
}

impl StageTimes {
    pub fn total(&self) -> Duration {
        self.similarity + self.prediction + self.metrics
    }
}

/// One point of a parameter sweep.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ParamPoint {
    pub algorithm: Algorithm,
    /// 1 for CF by convention.
    pub beta: f64,
    pub top_n: Option<usize>,
}

#[derive(Debug, Clone, PartialEq)]
pub struct RunRecord {
    pub run_id: usize,
    pub seed: u64,
    pub point: ParamPoint,
    pub metrics: MetricsReport,
    pub times: StageTimes,
}

/// Mean and sample standard deviation (n − 1 denominator; 0 for one run).
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct MeanStd {
    pub mean: f64,
    pub std: f64,
}

impl MeanStd {
    pub fn of(values: &[f64]) -> Self {
        let n = values.len();
        if n == 0 {
            return Self { mean: f64::NAN, std: f64::NAN };
        }
        let mean = values.iter().sum::<f64>() / n as f64;
        let std = if n < 2 {
            0.0
        } else {
            (values.iter().map(|v| (v - mean).powi(2)).sum::<f64>() / (n - 1) as f64).sqrt()
        };
        Self { mean, std }
    }
}

/// Cross-run summary of one parameter point.
#[derive(Debug, Clone, PartialEq)]
pub struct AggregateRecord {
    pub point: ParamPoint,
    pub runs: usize,
    pub ranking_score: MeanStd,
    pub avg_degree: BTreeMap<usize, MeanStd>,
    pub hamming: BTreeMap<usize, MeanStd>,
    pub skipped_entries: MeanStd,
    pub isolated_users: MeanStd,
    pub similarity_secs: MeanStd,
    pub prediction_secs: MeanStd,
    pub metrics_secs: MeanStd,
    pub wall_secs: MeanStd,
}

#[derive(Debug, Clone, PartialEq)]
pub struct ExperimentReport {
    pub list_lengths: Vec<usize>,
    /// Ordered by parameter point, then run.
    pub runs: Vec<RunRecord>,
    /// One per parameter point, in sweep order.
    pub aggregates: Vec<AggregateRecord>,
}

/// A single `(β or N, ⟨r⟩, ⟨k⟩@L, S@L)` sample of a sweep curve, averaged
/// over runs.
#[derive(Debug, Clone, PartialEq)]
pub struct CurvePoint {
    pub beta: f64,
    pub top_n: Option<usize>,
    pub ranking_score: f64,
    pub avg_degree: BTreeMap<usize, f64>,
    pub hamming: BTreeMap<usize, f64>,
}

impl ExperimentReport {
    pub fn curve(&self) -> Vec<CurvePoint> {
        self.aggregates
            .iter()
            .map(|a| CurvePoint {
                beta: a.point.beta,
                top_n: a.point.top_n,
                ranking_score: a.ranking_score.mean,
                avg_degree: a.avg_degree.iter().map(|(&l, v)| (l, v.mean)).collect(),
                hamming: a.hamming.iter().map(|(&l, v)| (l, v.mean)).collect(),
            })
            .collect()
    }

    fn header(&self, timing: bool) -> Vec<String> {
        let mut h: Vec<String> = [
            "schema_version",
            "row_type",
            "run_id",
            "seed",
            "algorithm",
            "beta",
            "top_n",
            "ranking_score",
        ]
        .iter()
        .map(|s| s.to_string())
        .collect();
        h.extend(self.list_lengths.iter().map(|l| format!("avg_degree@{l}")));
        h.extend(self.list_lengths.iter().map(|l| format!("hamming@{l}")));
        h.push("skipped_entries".into());
        h.push("isolated_users".into());
        if timing {
            h.extend(
                ["time_similarity_s", "time_prediction_s", "time_metrics_s", "wall_time_s"]
                    .iter()
                    .map(|s| s.to_string()),
            );
        }
        h
    }

    /// Writes the report as CSV: a header, one `run` row per run and
    /// parameter point, then a `mean` and a `std` row per point.
    ///
    /// With `timing = false` the four timing columns are omitted and the
    /// output is byte-identical for identical configurations.
    pub fn write_csv(&self, out: impl Write, timing: bool) -> Result<()> {
        let mut w = csv::Writer::from_writer(out);
        w.write_record(self.header(timing))?;
        let lead = |row_type: &str, run: Option<(usize, u64)>, p: &ParamPoint| -> Vec<String> {
            vec![
                REPORT_SCHEMA_VERSION.to_string(),
                row_type.to_string(),
                run.map(|r| r.0.to_string()).unwrap_or_default(),
                run.map(|r| r.1.to_string()).unwrap_or_default(),
                p.algorithm.to_string(),
                p.beta.to_string(),
                p.top_n.map(|n| n.to_string()).unwrap_or_default(),
            ]
        };
        for r in &self.runs {
            let mut row = lead("run", Some((r.run_id, r.seed)), &r.point);
            row.push(r.metrics.ranking_score.to_string());
            for l in &self.list_lengths {
                row.push(r.metrics.avg_degree[l].to_string());
            }
            for l in &self.list_lengths {
                row.push(r.metrics.hamming[l].mean.to_string());
            }
            row.push(r.metrics.skipped_probe_entries.to_string());
            row.push(r.metrics.isolated_users.to_string());
            if timing {
                for d in [r.times.similarity, r.times.prediction, r.times.metrics, r.times.total()] {
                    row.push(d.as_secs_f64().to_string());
                }
            }
            w.write_record(&row)?;
        }
        for a in &self.aggregates {
            for (row_type, pick) in [("mean", 0), ("std", 1)] {
                let get = |v: &MeanStd| if pick == 0 { v.mean } else { v.std };
                let mut row = lead(row_type, None, &a.point);
                row.push(get(&a.ranking_score).to_string());
                for l in &self.list_lengths {
                    row.push(get(&a.avg_degree[l]).to_string());
                }
                for l in &self.list_lengths {
                    row.push(get(&a.hamming[l]).to_string());
                }
                row.push(get(&a.skipped_entries).to_string());
                row.push(get(&a.isolated_users).to_string());
                if timing {
                    for v in [&a.similarity_secs, &a.prediction_secs, &a.metrics_secs, &a.wall_secs] {
                        row.push(get(v).to_string());
                    }
                }
                w.write_record(&row)?;
            }
        }
        w.flush().map_err(|e| Error::io("<report>", e))?;
        Ok(())
    }

    pub fn to_csv_string(&self, timing: bool) -> Result<String> {
        let mut buf = Vec::new();
        self.write_csv(&mut buf, timing)?;
        Ok(String::from_utf8(buf).expect("csv output is utf-8"))
    }

    pub fn write_csv_file(&self, path: impl AsRef<Path>, timing: bool) -> Result<()> {
        let path = path.as_ref();
        let file = File::create(path).map_err(|e| Error::io(path, e))?;
        let mut out = BufWriter::new(file);
        self.write_csv(&mut out, timing)?;
        out.flush().map_err(|e| Error::io(path, e))
    }
}

/// Loads and coarse-grains the ratings, then draws `cfg.n_runs` splits.
pub fn prepare_splits(cfg: &ExperimentConfig) -> Result<Vec<SplitDataset>> {
    cfg.validate()?;
    let records = load_movielens(&cfg.data_path)?;
    let network = coarse_grain(&records)?;
    make_splits(&network.edges, cfg.probe_fraction, cfg.n_runs, cfg.master_seed)
}

/// Predicts, ranks and scores one split with a ready similarity matrix.
fn evaluate_point(
    split: &SplitDataset,
    s: &SimilarityMatrix,
    top_n: Option<usize>,
    list_lengths: &[usize],
    similarity_time: Duration,
) -> Result<(MetricsReport, StageTimes)> {
    let t = Instant::now();
    let lists = recommend_all(&split.train, s, top_n)?;
    let prediction = t.elapsed();
    let t = Instant::now();
    let metrics = evaluate(&lists, &split.train, &split.probe, list_lengths)?;
    Ok((
        metrics,
        StageTimes {
            similarity: similarity_time,
            prediction,
            metrics: t.elapsed(),
        },
    ))
}

fn timed<T>(f: impl FnOnce() -> Result<T>) -> Result<(T, Duration)> {
    let t = Instant::now();
    let v = f()?;
    Ok((v, t.elapsed()))
}

/// Groups run records by parameter point (in first-seen order) and
/// aggregates each group.
fn aggregate(list_lengths: &[usize], runs: Vec<RunRecord>) -> ExperimentReport {
    let mut points: Vec<ParamPoint> = Vec::new();
    for r in &runs {
        if !points.contains(&r.point) {
            points.push(r.point);
        }
    }
    let mut sorted = Vec::with_capacity(runs.len());
    let mut aggregates = Vec::with_capacity(points.len());
    for p in points {
        let group: Vec<&RunRecord> = runs.iter().filter(|r| r.point == p).collect();
        let col = |f: &dyn Fn(&RunRecord) -> f64| MeanStd::of(&group.iter().map(|r| f(r)).collect::<Vec<_>>());
        aggregates.push(AggregateRecord {
            point: p,
            runs: group.len(),
            ranking_score: col(&|r| r.metrics.ranking_score),
            avg_degree: list_lengths
                .iter()
                .map(|&l| (l, col(&|r| r.metrics.avg_degree[&l])))
                .collect(),
            hamming: list_lengths
                .iter()
                .map(|&l| (l, col(&|r| r.metrics.hamming[&l].mean)))
                .collect(),
            skipped_entries: col(&|r| r.metrics.skipped_probe_entries as f64),
            isolated_users: col(&|r| r.metrics.isolated_users as f64),
            similarity_secs: col(&|r| r.times.similarity.as_secs_f64()),
            prediction_secs: col(&|r| r.times.prediction.as_secs_f64()),
            metrics_secs: col(&|r| r.times.metrics.as_secs_f64()),
            wall_secs: col(&|r| r.times.total().as_secs_f64()),
        });
        sorted.extend(group.into_iter().cloned());
    }
    ExperimentReport {
        list_lengths: list_lengths.to_vec(),
        runs: sorted,
        aggregates,
    }
}

/// Plain CF on every split: one parameter point.
pub fn run_cf(cfg: &ExperimentConfig, splits: &[SplitDataset]) -> Result<ExperimentReport> {
    let point = ParamPoint {
        algorithm: Algorithm::Cf,
        beta: 1.0,
        top_n: None,
    };
    let mut runs = Vec::new();
    for (run_id, split) in splits.iter().enumerate() {
        let (s, dt) = timed(|| Ok(cf_similarity(&split.train)))?;
        let (metrics, times) = evaluate_point(split, &s, None, &cfg.list_lengths, dt)?;
        runs.push(RunRecord {
            run_id,
            seed: split.seed,
            point,
            metrics,
            times,
        });
    }
    Ok(aggregate(&cfg.list_lengths, runs))
}

/// SA-CF at every β of `cfg.beta_values` (ascending), all on the same splits.
pub fn sweep_beta(cfg: &ExperimentConfig, splits: &[SplitDataset]) -> Result<ExperimentReport> {
    if cfg.beta_values.is_empty() {
        return Err(Error::Parameter("beta sweep is empty".into()));
    }
    if cfg.beta_values.windows(2).any(|w| w[0].partial_cmp(&w[1]) != Some(std::cmp::Ordering::Less)) {
        return Err(Error::Parameter("beta values must be strictly ascending".into()));
    }
    let mut runs = Vec::new();
    for (run_id, split) in splits.iter().enumerate() {
        for &beta in &cfg.beta_values {
            let (s, dt) = timed(|| sa_similarity(&split.train, beta))?;
            let (metrics, times) = evaluate_point(split, &s, None, &cfg.list_lengths, dt)?;
            runs.push(RunRecord {
                run_id,
                seed: split.seed,
                point: ParamPoint {
                    algorithm: Algorithm::Sa,
                    beta,
                    top_n: None,
                },
                metrics,
                times,
            });
        }
    }
    Ok(aggregate(&cfg.list_lengths, runs))
}

/// Top-N SA-CF for every N of `cfg.n_values` (or the default grid) at every
/// β of `cfg.beta_values`. The similarity matrix of each run and β is built
/// once and shared by all N.
pub fn sweep_topn(cfg: &ExperimentConfig, splits: &[SplitDataset]) -> Result<ExperimentReport> {
    let Some(first) = splits.first() else {
        return Err(Error::Parameter("no splits".into()));
    };
    let m = first.train.n_users();
    let n_values = if cfg.n_values.is_empty() {
        default_top_n_grid(m)
    } else {
        cfg.n_values.clone()
    };
    if let Some(&bad) = n_values.iter().find(|&&n| n == 0 || n + 1 > m) {
        return Err(Error::Parameter(format!("N = {bad} outside [1, {}]", m.saturating_sub(1))));
    }
    let mut runs = Vec::new();
    for (run_id, split) in splits.iter().enumerate() {
        for &beta in &cfg.beta_values {
            let (s, dt) = timed(|| sa_similarity(&split.train, beta))?;
            for &n in &n_values {
                let (metrics, times) = evaluate_point(split, &s, Some(n), &cfg.list_lengths, dt)?;
                runs.push(RunRecord {
                    run_id,
                    seed: split.seed,
                    point: ParamPoint {
                        algorithm: Algorithm::SaTopN,
                        beta,
                        top_n: Some(n),
                    },
                    metrics,
                    times,
                });
            }
        }
    }
    Ok(aggregate(&cfg.list_lengths, runs))
}

/// Dispatches on `cfg.algorithm` over pre-built splits.
pub fn run_on_splits(cfg: &ExperimentConfig, splits: &[SplitDataset]) -> Result<ExperimentReport> {
    cfg.validate()?;
    match cfg.algorithm {
        Algorithm::Cf => run_cf(cfg, splits),
        Algorithm::Sa => {
            let mut cfg = cfg.clone();
            cfg.beta_values.sort_by(f64::total_cmp);
            cfg.beta_values.dedup();
            sweep_beta(&cfg, splits)
        }
        Algorithm::SaTopN => sweep_topn(cfg, splits),
    }
}

/// Full pipeline: load, split, evaluate, and write the CSV report if
/// `cfg.output_path` is set.
pub fn run_experiment(cfg: &ExperimentConfig) -> Result<ExperimentReport> {
    let splits = prepare_splits(cfg)?;
    let report = run_on_splits(cfg, &splits)?;
    if let Some(path) = &cfg.output_path {
        report.write_csv_file(path, true)?;
    }
    Ok(report)
}
