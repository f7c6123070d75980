//! Monte Carlo evaluation: scrambles drawn uniformly from each exact-distance
//! bucket, solved in rollback and open-loop mode, aggregated into success
//! rate (SR) and atomic-action count (AN) per distance.

use std::io;
use std::path::{Path, PathBuf};

use rand::Rng;
use rayon::prelude::*;
use thiserror::Error;

use crate::cube::{CanonicalState, STATE_COUNT};
use crate::executor::{
    execute_episode, stream_rng, ActuationModel, ConfigError, ExecutorConfig, Mode,
};
use crate::solver::{IdaPlanner, OraclePlanner, Planner, MAX_SOLUTION_LENGTH};
use crate::tables::{DistanceTable, TableSet};

pub const CSV_HEADER: [&str; 6] = ["distance", "mode", "trials", "sr", "an_mean", "an_std"];

#[derive(Debug, Error)]
pub enum HarnessError {
    #[error("distance {0} is outside 1..=14")]
    DistanceOutOfRange(u8),
    #[error("no state lies at distance {0}")]
    EmptyBucket(u8),
    #[error("trials per distance must be at least 1")]
    NoTrials,
    #[error(transparent)]
    Config(#[from] ConfigError),
    #[error("{path}: {source}")]
    Io {
        path: PathBuf,
        #[source]
        source: io::Error,
    },
    #[error("csv: {0}")]
    Csv(#[from] csv::Error),
    #[error("malformed csv row: {0}")]
    BadRow(String),
}

fn check_distance(d: u8) -> Result<(), HarnessError> {
    if (1..=MAX_SOLUTION_LENGTH).contains(&d) {
        Ok(())
    } else {
        Err(HarnessError::DistanceOutOfRange(d))
    }
}

/// Ranks grouped by exact distance.
pub struct DepthBuckets {
    buckets: Vec<Vec<u32>>,
}

impl DepthBuckets {
    pub fn new(table: &DistanceTable) -> Self {
        let mut buckets: Vec<Vec<u32>> = table
            .histogram()
            .iter()
            .map(|&n| Vec::with_capacity(n as usize))
            .collect();
        for (rank, &d) in table.entries().iter().enumerate() {
            buckets[d as usize].push(rank as u32);
        }
        DepthBuckets { buckets }
    }

    pub fn bucket(&self, d: u8) -> &[u32] {
        self.buckets.get(d as usize).map_or(&[], |b| b.as_slice())
    }

    pub fn total(&self) -> usize {
        self.buckets.iter().map(Vec::len).sum()
    }

    /// `n` states drawn uniformly, with replacement, from distance `d`.
    pub fn sample<R: Rng + ?Sized>(
        &self,
        d: u8,
        n: usize,
        rng: &mut R,
    ) -> Result<Vec<CanonicalState>, HarnessError> {
        check_distance(d)?;
        let bucket = self.bucket(d);
        if bucket.is_empty() {
            return Err(HarnessError::EmptyBucket(d));
        }
        Ok((0..n)
            .map(|_| CanonicalState::unrank(bucket[rng.gen_range(0..bucket.len())]).unwrap())
            .collect())
    }
}

pub fn sample_at_distance<R: Rng + ?Sized>(
    d: u8,
    n: usize,
    table: &DistanceTable,
    rng: &mut R,
) -> Result<Vec<CanonicalState>, HarnessError> {
    check_distance(d)?;
    let bucket: Vec<u32> = (0..STATE_COUNT as u32)
        .filter(|&r| table.distance_of_rank(r) == d)
        .collect();
    if bucket.is_empty() {
        return Err(HarnessError::EmptyBucket(d));
    }
    Ok((0..n)
        .map(|_| CanonicalState::unrank(bucket[rng.gen_range(0..bucket.len())]).unwrap())
        .collect())
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum PlannerKind {
    Oracle,
    Ida,
}

#[derive(Debug, Clone)]
pub struct ExperimentConfig {
    pub distances: Vec<u8>,
    pub trials_per_distance: usize,
    pub modes: Vec<Mode>,
    pub model: ActuationModel,
    pub executor: ExecutorConfig,
    pub planner: PlannerKind,
    pub seed: u64,
}

impl Default for ExperimentConfig {
    fn default() -> Self {
        ExperimentConfig {
            distances: (1..=MAX_SOLUTION_LENGTH).collect(),
            trials_per_distance: 100,
            modes: vec![Mode::Rollback, Mode::OpenLoop],
            model: ActuationModel::default(),
            executor: ExecutorConfig::default(),
            planner: PlannerKind::Oracle,
            seed: 0,
        }
    }
}

impl ExperimentConfig {
    pub fn validate(&self) -> Result<(), HarnessError> {
        if self.trials_per_distance == 0 {
            return Err(HarnessError::NoTrials);
        }
        for &d in &self.distances {
            check_distance(d)?;
        }
        self.model.validate()?;
        self.executor.validate()?;
        Ok(())
    }
}

/// Running mean and variance; merging is associative.
#[derive(Debug, Clone, Copy, Default, PartialEq)]
pub struct Moments {
    pub count: u64,
    pub mean: f64,
    m2: f64,
}

impl Moments {
    pub fn push(&mut self, x: f64) {
        self.merge(&Moments {
            count: 1,
            mean: x,
            m2: 0.0,
        });
    }

    pub fn merge(&mut self, other: &Moments) {
        if other.count == 0 {
            return;
        }
        let n = self.count + other.count;
        let delta = other.mean - self.mean;
        self.mean += delta * other.count as f64 / n as f64;
        self.m2 += other.m2 + delta * delta * (self.count as f64 * other.count as f64) / n as f64;
        self.count = n;
    }

    /// Population standard deviation.
    pub fn std(&self) -> f64 {
        if self.count == 0 {
            0.0
        } else {
            (self.m2 / self.count as f64).sqrt()
        }
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct ExperimentRow {
    pub distance: u8,
    pub mode: Mode,
    pub trials: u64,
    pub successes: u64,
    /// Episodes in which no atomic action missed its goal.
    pub clean_episodes: u64,
    pub actions: Moments,
}

impl ExperimentRow {
    pub fn sr(&self) -> f64 {
        self.successes as f64 / self.trials as f64
    }

    pub fn an_mean(&self) -> f64 {
        self.actions.mean
    }

    pub fn an_std(&self) -> f64 {
        self.actions.std()
    }
}

#[derive(Debug, Clone, PartialEq, Default)]
pub struct ExperimentResult {
    /// Distance ascending, rollback before open loop.
    pub rows: Vec<ExperimentRow>,
}

impl ExperimentResult {
    pub fn row(&self, distance: u8, mode: Mode) -> Option<&ExperimentRow> {
        self.rows
            .iter()
            .find(|r| r.distance == distance && r.mode == mode)
    }

    /// Mean of the per-distance success rates for one mode.
    pub fn overall_sr(&self, mode: Mode) -> Option<f64> {
        let srs: Vec<f64> = self
            .rows
            .iter()
            .filter(|r| r.mode == mode)
            .map(ExperimentRow::sr)
            .collect();
        (!srs.is_empty()).then(|| srs.iter().sum::<f64>() / srs.len() as f64)
    }
}

const SAMPLING_STREAM: u64 = 0xff;

fn stream_id(distance: u8, kind: u64, trial: u64) -> u64 {
    (distance as u64) << 48 | kind << 40 | trial
}

fn mode_stream(mode: Mode) -> u64 {
    match mode {
        Mode::Rollback => 0,
        Mode::OpenLoop => 1,
    }
}

pub fn run_experiment(
    config: &ExperimentConfig,
    tables: &TableSet,
) -> Result<ExperimentResult, HarnessError> {
    run_experiment_with_progress(config, tables, &|_, _, _| {})
}

/// Like [`run_experiment`], calling `progress(distance, mode, row)` after
/// each row completes. Episodes run in parallel; each draws from its own
/// random stream keyed by (seed, distance, mode, trial), so results do not
/// depend on scheduling.
pub fn run_experiment_with_progress(
    config: &ExperimentConfig,
    tables: &TableSet,
    progress: &(dyn Fn(u8, Mode, &ExperimentRow) + Sync),
) -> Result<ExperimentResult, HarnessError> {
    config.validate()?;
    let buckets = DepthBuckets::new(&tables.distance);
    let oracle = OraclePlanner(&tables.distance);
    let ida = IdaPlanner(&tables.pdb);
    let planner: &dyn Planner = match config.planner {
        PlannerKind::Oracle => &oracle,
        PlannerKind::Ida => &ida,
    };

    let mut distances = config.distances.clone();
    distances.sort_unstable();
    distances.dedup();
    let mut modes = Vec::new();
    for mode in [Mode::Rollback, Mode::OpenLoop] {
        if config.modes.contains(&mode) {
            modes.push(mode);
        }
    }

    let mut rows = Vec::new();
    for d in distances {
        let mut rng = stream_rng(config.seed, stream_id(d, SAMPLING_STREAM, 0));
        let scrambles = buckets.sample(d, config.trials_per_distance, &mut rng)?;
        for &mode in &modes {
            let episodes: Vec<(bool, u32, u32)> = scrambles
                .par_iter()
                .enumerate()
                .map(|(trial, &s)| {
                    let mut rng =
                        stream_rng(config.seed, stream_id(d, mode_stream(mode), trial as u64));
                    let r = execute_episode(
                        s,
                        mode,
                        planner,
                        &config.model,
                        &config.executor,
                        &mut rng,
                        false,
                    );
                    (r.success, r.atomic_actions, r.atomic_failures)
                })
                .collect();
            let mut row = ExperimentRow {
                distance: d,
                mode,
                trials: 0,
                successes: 0,
                clean_episodes: 0,
                actions: Moments::default(),
            };
            for (success, actions, failures) in episodes {
                row.trials += 1;
                row.successes += success as u64;
                row.clean_episodes += (failures == 0) as u64;
                row.actions.push(actions as f64);
            }
            progress(d, mode, &row);
            rows.push(row);
        }
    }
    Ok(ExperimentResult { rows })
}

pub fn write_csv<W: io::Write>(result: &ExperimentResult, out: W) -> Result<(), HarnessError> {
    let mut w = csv::Writer::from_writer(out);
    w.write_record(CSV_HEADER)?;
    for r in &result.rows {
        w.write_record([
            r.distance.to_string(),
            r.mode.name().to_string(),
            r.trials.to_string(),
            format!("{:.4}", r.sr()),
            format!("{:.4}", r.an_mean()),
            format!("{:.4}", r.an_std()),
        ])?;
    }
    w.flush().map_err(|e| HarnessError::Csv(e.into()))?;
    Ok(())
}

pub fn export_csv(result: &ExperimentResult, path: &Path) -> Result<(), HarnessError> {
    let file = std::fs::File::create(path).map_err(|source| HarnessError::Io {
        path: path.to_path_buf(),
        source,
    })?;
    write_csv(result, io::BufWriter::new(file))
}

/// One parsed CSV data row.
#[derive(Debug, Clone, PartialEq)]
pub struct CsvRow {
    pub distance: u8,
    pub mode: Mode,
    pub trials: u64,
    pub sr: f64,
    pub an_mean: f64,
    pub an_std: f64,
}

pub fn read_csv<R: io::Read>(input: R) -> Result<Vec<CsvRow>, HarnessError> {
    let mut r = csv::Reader::from_reader(input);
    if r.headers()?.iter().ne(CSV_HEADER) {
        return Err(HarnessError::BadRow(format!("header {:?}", r.headers()?)));
    }
    let mut rows = Vec::new();
    for rec in r.records() {
        let rec = rec?;
        let bad = || HarnessError::BadRow(format!("{rec:?}"));
        let num = |i: usize| rec[i].parse::<f64>().map_err(|_| bad());
        let mode = match &rec[1] {
            "rollback" => Mode::Rollback,
            "open_loop" => Mode::OpenLoop,
            _ => return Err(bad()),
        };
        rows.push(CsvRow {
            distance: rec[0].parse().map_err(|_| bad())?,
            mode,
            trials: rec[2].parse().map_err(|_| bad())?,
            sr: num(3)?,
            an_mean: num(4)?,
            an_std: num(5)?,
        });
    }
    Ok(rows)
}
