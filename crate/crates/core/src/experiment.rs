//! Benchmark harness: sweeps one parameter, generates contaminated data per
//! run, runs ULA and/or Rob-ULA on it and collects one CSV row per
//! (cell, run, method).
//!
//! Every random quantity of a run is derived from `(base_seed, run)` alone, so
//! all cells of a sweep see common random numbers and a cell run on its own
//! reproduces its rows from the full sweep exactly.

use std::fmt;
use std::fs;
use std::io::{BufWriter, Write};
use std::path::{Path, PathBuf};
use std::str::FromStr;

use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::contamination::{
    clean_mean_sample, clean_regression_sample, flip_labels, gen_mean_estimation, gen_regression,
    hoeffding_margin, load_csv, Assignment, ContaminationSpec, CsvSchema,
};
use crate::error::{Error, Result};
use crate::linalg::{derive_seed, ParamVector, RngHandle};
use crate::metrics::{
    avg_loglik, fit_gaussian, gaussian_w2, per_point_loglik, per_point_predictive_loglik,
    posterior_mean, recovery_error, GaussianSummary,
};
use crate::models::{
    rbme_closed_posterior, GaussianMeanModel, LinRegModel, LogisticModel, Model, SmoothnessOptions,
};
use crate::samplers::{resolve_defaults, run_rob_ula, run_ula, ChainConfig, ChainResult, Setting};

pub const CSV_HEADER: &str = "experiment,method,n,d,eps,seed,recovery_error,avg_test_loglik,w2_sq,wall_time_ms,step_size,burn_in,n_samples";
pub const PER_POINT_HEADER: &str = "experiment,method,cell,run,seed,index,loglik";
pub const THREADS_ENV: &str = "ROBLANGEVIN_THREADS";

#[derive(Debug, Clone, Copy, PartialEq, Eq, Default, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum ExperimentKind {
    #[default]
    MeanEst,
    Regression,
    Logistic,
}

impl ExperimentKind {
    pub fn name(self) -> &'static str {
        match self {
            ExperimentKind::MeanEst => "mean-est",
            ExperimentKind::Regression => "regression",
            ExperimentKind::Logistic => "logistic",
        }
    }

    /// Burn-in and retained samples when the config leaves them unset.
    pub fn default_chain_length(self) -> (usize, usize) {
        match self {
            ExperimentKind::MeanEst | ExperimentKind::Logistic => (300, 1000),
            ExperimentKind::Regression => (100, 300),
        }
    }
}

impl fmt::Display for ExperimentKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for ExperimentKind {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "mean-est" => Ok(ExperimentKind::MeanEst),
            "regression" => Ok(ExperimentKind::Regression),
            "logistic" => Ok(ExperimentKind::Logistic),
            _ => Err(Error::Config(format!(
                "experiment: expected mean-est, regression or logistic, got '{s}'"
            ))),
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord)]
pub enum Method {
    RobUla,
    Ula,
}

impl Method {
    pub fn name(self) -> &'static str {
        match self {
            Method::Ula => "ula",
            Method::RobUla => "robula",
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Default, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum MethodSelection {
    Ula,
    Robula,
    #[default]
    Both,
}

impl MethodSelection {
    /// Rob-ULA first, then ULA.
    pub fn methods(self) -> Vec<Method> {
        match self {
            MethodSelection::Ula => vec![Method::Ula],
            MethodSelection::Robula => vec![Method::RobUla],
            MethodSelection::Both => vec![Method::RobUla, Method::Ula],
        }
    }
}

impl FromStr for MethodSelection {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "ula" => Ok(MethodSelection::Ula),
            "robula" => Ok(MethodSelection::Robula),
            "both" => Ok(MethodSelection::Both),
            _ => Err(Error::Config(format!(
                "method: expected ula, robula or both, got '{s}'"
            ))),
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum SweepParam {
    N,
    D,
    Eps,
}

/// `param=v1,v2,...`
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Sweep {
    pub param: SweepParam,
    pub values: Vec<f64>,
}

impl FromStr for Sweep {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let (name, list) = s
            .split_once('=')
            .ok_or_else(|| Error::Config(format!("sweep: expected param=v1,v2,..., got '{s}'")))?;
        let param = match name.trim() {
            "n" => SweepParam::N,
            "d" => SweepParam::D,
            "eps" => SweepParam::Eps,
            other => {
                return Err(Error::Config(format!("sweep: unknown parameter '{other}'")));
            }
        };
        let values = list
            .split(',')
            .map(|v| {
                v.trim()
                    .parse::<f64>()
                    .map_err(|_| Error::Config(format!("sweep: '{v}' is not a number")))
            })
            .collect::<Result<Vec<_>>>()?;
        Ok(Sweep { param, values })
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Preset {
    /// n = 500, d = 20, ε = 0.2
    Desk,
    /// n = 1000, d = 200, ε = 0.2
    Full,
}

impl Preset {
    pub fn apply(self, cfg: &mut ExperimentConfig) {
        let (n, d) = match self {
            Preset::Desk => (500, 20),
            Preset::Full => (1000, 200),
        };
        cfg.n = n;
        cfg.d = d;
        cfg.eps = 0.2;
    }
}

impl FromStr for Preset {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "desk" => Ok(Preset::Desk),
            "paper" => Ok(Preset::Full),
            _ => Err(Error::Config(format!(
                "preset: expected desk or paper, got '{s}'"
            ))),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(default, deny_unknown_fields)]
pub struct ExperimentConfig {
    pub experiment: ExperimentKind,
    pub n: usize,
    pub d: usize,
    /// Generator contamination level (label-flip rate for logistic).
    pub eps: f64,
    pub sweep: Option<Sweep>,
    pub runs: usize,
    pub base_seed: u64,
    pub method: MethodSelection,
    pub burn_in: Option<usize>,
    pub n_samples: Option<usize>,
    pub step_size: Setting,
    pub init_scale: Setting,
    pub assignment: Assignment,
    /// ε handed to the robust estimator; defaults to the generator's.
    pub estimator_eps: Option<f64>,
    /// Use `min(ε + e_n, 0.999)` in the estimator.
    pub widen_eps: bool,
    pub delta: f64,
    /// Size of the clean held-out set for synthetic experiments.
    pub test_size: usize,
    /// Average the likelihood over chain samples instead of plugging in θ̂.
    pub sample_avg_loglik: bool,
    pub data: Option<PathBuf>,
    pub label_col: Option<String>,
    pub out: Option<PathBuf>,
    /// Directory receiving one CSV of samples per (cell, run, method).
    pub dump_samples: Option<PathBuf>,
    /// Per-test-point log-likelihoods.
    pub per_point: Option<PathBuf>,
}

impl Default for ExperimentConfig {
    fn default() -> Self {
        Self {
            experiment: ExperimentKind::MeanEst,
            n: 500,
            d: 20,
            eps: 0.2,
            sweep: None,
            runs: 10,
            base_seed: 0,
            method: MethodSelection::Both,
            burn_in: None,
            n_samples: None,
            step_size: Setting::Auto,
            init_scale: Setting::Auto,
            assignment: Assignment::Bernoulli,
            estimator_eps: None,
            widen_eps: false,
            delta: 0.05,
            test_size: 500,
            sample_avg_loglik: false,
            data: None,
            label_col: None,
            out: None,
            dump_samples: None,
            per_point: None,
        }
    }
}

fn config_err(field: &str, msg: impl fmt::Display) -> Error {
    Error::Config(format!("{field}: {msg}"))
}

fn check_eps(field: &str, eps: f64) -> Result<()> {
    if !(0.0..1.0).contains(&eps) {
        return Err(config_err(
            field,
            format_args!("must lie in [0, 1), got {eps}"),
        ));
    }
    Ok(())
}

impl ExperimentConfig {
    pub fn from_json_file(path: &Path) -> Result<Self> {
        let text = fs::read_to_string(path)?;
        serde_json::from_str(&text)
            .map_err(|e| Error::Config(format!("config file {}: {e}", path.display())))
    }

    pub fn chain_length(&self) -> (usize, usize) {
        let (b, s) = self.experiment.default_chain_length();
        (self.burn_in.unwrap_or(b), self.n_samples.unwrap_or(s))
    }

    /// Sweep cells in order; without a sweep there is a single cell.
    pub fn cells(&self) -> Result<Vec<Cell>> {
        let base = Cell {
            index: 0,
            n: self.n,
            d: self.d,
            eps: self.eps,
        };
        let Some(sweep) = &self.sweep else {
            return Ok(vec![base]);
        };
        if sweep.values.is_empty() {
            return Err(config_err("sweep", "needs at least one value"));
        }
        let count = |v: f64| -> Result<usize> {
            if v >= 1.0 && v.fract() == 0.0 && v <= u32::MAX as f64 {
                Ok(v as usize)
            } else {
                Err(config_err(
                    "sweep",
                    format_args!("{v} is not a positive integer"),
                ))
            }
        };
        sweep
            .values
            .iter()
            .enumerate()
            .map(|(index, &v)| {
                let mut cell = Cell { index, ..base };
                match sweep.param {
                    SweepParam::N => cell.n = count(v)?,
                    SweepParam::D => cell.d = count(v)?,
                    SweepParam::Eps => {
                        check_eps("sweep", v)?;
                        cell.eps = v;
                    }
                }
                Ok(cell)
            })
            .collect()
    }

    pub fn validate(&self) -> Result<()> {
        if self.runs == 0 {
            return Err(config_err("runs", "must be at least 1"));
        }
        if self.n == 0 {
            return Err(config_err("n", "must be at least 1"));
        }
        if self.d == 0 {
            return Err(config_err("d", "must be at least 1"));
        }
        check_eps("eps", self.eps)?;
        if let Some(e) = self.estimator_eps {
            check_eps("estimator_eps", e)?;
        }
        if !(self.delta > 0.0 && self.delta < 1.0) {
            return Err(config_err(
                "delta",
                format_args!("must lie in (0, 1), got {}", self.delta),
            ));
        }
        if self.chain_length().1 == 0 {
            return Err(config_err("n_samples", "must be at least 1"));
        }
        for (field, s) in [
            ("step_size", self.step_size),
            ("init_scale", self.init_scale),
        ] {
            if let Setting::Fixed(v) = s {
                if !(v > 0.0 && v.is_finite()) {
                    return Err(config_err(field, format_args!("must be positive, got {v}")));
                }
            }
        }
        if self.experiment == ExperimentKind::Logistic {
            if self.data.is_none() {
                return Err(config_err(
                    "data",
                    "logistic experiments need a CSV dataset",
                ));
            }
            if self.label_col.is_none() {
                return Err(config_err(
                    "label_col",
                    "logistic experiments need a label column",
                ));
            }
            if matches!(&self.sweep, Some(s) if s.param != SweepParam::Eps) {
                return Err(config_err(
                    "sweep",
                    "logistic experiments can only sweep eps",
                ));
            }
        } else if self.test_size == 0 {
            return Err(config_err("test_size", "must be at least 1"));
        }
        self.cells().map(|_| ())
    }
}

/// `γ = min(ε + √((2/n)·ln(1/δ)), 0.999)`
pub fn apply_en_widening(eps: f64, n: usize, delta: f64) -> f64 {
    (eps + hoeffding_margin(n.max(1), delta)).min(0.999)
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Cell {
    pub index: usize,
    pub n: usize,
    pub d: usize,
    pub eps: f64,
}

#[derive(Debug, Clone, PartialEq)]
pub struct ExperimentRecord {
    pub experiment: ExperimentKind,
    pub method: Method,
    pub cell: usize,
    pub run: usize,
    pub n: usize,
    pub d: usize,
    pub eps: f64,
    pub seed: u64,
    pub recovery_error: Option<f64>,
    pub avg_test_loglik: Option<f64>,
    pub w2_sq: Option<f64>,
    pub wall_time_ms: f64,
    pub step_size: f64,
    pub burn_in: usize,
    pub n_samples: usize,
    pub diverged: bool,
}

impl ExperimentRecord {
    pub fn csv_row(&self) -> String {
        let metric = |v: Option<f64>| match (self.diverged, v) {
            (true, _) => "diverged".to_string(),
            (false, Some(v)) => v.to_string(),
            (false, None) => String::new(),
        };
        // w2 stays empty where it is undefined, even for diverged chains.
        let w2 = if self.w2_sq.is_none() && self.experiment != ExperimentKind::MeanEst {
            String::new()
        } else {
            metric(self.w2_sq)
        };
        format!(
            "{},{},{},{},{},{},{},{},{},{},{},{},{}",
            self.experiment,
            self.method.name(),
            self.n,
            self.d,
            self.eps,
            self.seed,
            metric(self.recovery_error),
            metric(self.avg_test_loglik),
            w2,
            self.wall_time_ms,
            self.step_size,
            self.burn_in,
            self.n_samples
        )
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct PerPointRow {
    pub method: Method,
    pub cell: usize,
    pub run: usize,
    pub seed: u64,
    pub loglik: Vec<f64>,
}

#[derive(Debug, Clone, Default)]
pub struct ExperimentOutput {
    pub records: Vec<ExperimentRecord>,
    pub per_point: Vec<PerPointRow>,
}

impl ExperimentOutput {
    pub fn any_diverged(&self) -> bool {
        self.records.iter().any(|r| r.diverged)
    }
}

pub fn run_seed(base_seed: u64, run: usize) -> u64 {
    derive_seed(base_seed, &[run as u64])
}

// Stream layout under a run seed.
const CHAIN: u64 = 0;
const SPLIT: u64 = 1;
const DATA: u64 = 2;
const TEST: u64 = 3;
const FLIPS: u64 = 4;

/// One run's data with everything the metrics need.
struct Prepared<M: Model> {
    model: M,
    train: Vec<M::Obs>,
    test: Vec<M::Obs>,
    truth: Option<ParamVector>,
    /// Exact clean posterior, where one exists.
    reference: Option<GaussianSummary>,
    n: usize,
    d: usize,
}

fn prepare_mean(
    cfg: &ExperimentConfig,
    cell: &Cell,
    seed: u64,
) -> Result<Prepared<GaussianMeanModel>> {
    let spec = ContaminationSpec {
        eps: cell.eps,
        mode: cfg.assignment,
        ..Default::default()
    };
    let data = gen_mean_estimation(
        cell.n,
        cell.d,
        &spec,
        &mut RngHandle::with_stream(seed, DATA),
    )?;
    let theta = data.truth.clone().expect("synthetic data has a truth");
    let test = clean_mean_sample(
        &theta,
        cfg.test_size,
        &mut RngHandle::with_stream(seed, TEST),
    );
    let model = GaussianMeanModel::isotropic(cell.d);
    let clean = data.clean_observations();
    let reference = if clean.is_empty() {
        None
    } else {
        let (mean, cov) = rbme_closed_posterior(&model, &clean)?;
        Some(GaussianSummary::new(mean, cov)?)
    };
    Ok(Prepared {
        model,
        train: data.observations,
        test: test.observations,
        truth: Some(theta),
        reference,
        n: cell.n,
        d: cell.d,
    })
}

fn prepare_regression(
    cfg: &ExperimentConfig,
    cell: &Cell,
    seed: u64,
) -> Result<Prepared<LinRegModel>> {
    let spec = ContaminationSpec {
        eps: cell.eps,
        mode: cfg.assignment,
        ..Default::default()
    };
    let data = gen_regression(
        cell.n,
        cell.d,
        &spec,
        &mut RngHandle::with_stream(seed, DATA),
    )?;
    let theta = data.truth.clone().expect("synthetic data has a truth");
    let test = clean_regression_sample(
        &theta,
        cfg.test_size,
        &mut RngHandle::with_stream(seed, TEST),
    );
    Ok(Prepared {
        model: LinRegModel::standard(cell.d),
        train: data.observations,
        test: test.observations,
        truth: Some(theta),
        reference: None,
        n: cell.n,
        d: cell.d,
    })
}

fn prepare_logistic(
    cfg: &ExperimentConfig,
    cell: &Cell,
    seed: u64,
) -> Result<Prepared<LogisticModel>> {
    let schema = CsvSchema {
        label_column: cfg.label_col.clone().unwrap_or_default(),
        feature_columns: None,
    };
    let path = cfg
        .data
        .as_deref()
        .ok_or_else(|| config_err("data", "missing"))?;
    let split = load_csv(path, &schema, derive_seed(seed, &[SPLIT]))?;
    let train = flip_labels(
        &split.train,
        cell.eps,
        cfg.assignment,
        &mut RngHandle::with_stream(seed, FLIPS),
    )?;
    let d = split.feature_names.len();
    Ok(Prepared {
        model: LogisticModel::new(d),
        n: train.n(),
        train: train.observations,
        test: split.test.observations,
        truth: None,
        reference: None,
        d,
    })
}

struct TaskOutput {
    records: Vec<ExperimentRecord>,
    per_point: Vec<PerPointRow>,
}

fn run_task(cfg: &ExperimentConfig, cell: &Cell, run: usize) -> Result<TaskOutput> {
    let seed = run_seed(cfg.base_seed, run);
    match cfg.experiment {
        ExperimentKind::MeanEst => evaluate(cfg, cell, run, seed, prepare_mean(cfg, cell, seed)?),
        ExperimentKind::Regression => {
            evaluate(cfg, cell, run, seed, prepare_regression(cfg, cell, seed)?)
        }
        ExperimentKind::Logistic => {
            evaluate(cfg, cell, run, seed, prepare_logistic(cfg, cell, seed)?)
        }
    }
}

fn evaluate<M: Model>(
    cfg: &ExperimentConfig,
    cell: &Cell,
    run: usize,
    seed: u64,
    p: Prepared<M>,
) -> Result<TaskOutput> {
    let (burn_in, n_samples) = cfg.chain_length();
    let base_eps = cfg.estimator_eps.unwrap_or(cell.eps);
    let (est_eps, e_n) = if cfg.widen_eps {
        (
            apply_en_widening(base_eps, p.n, cfg.delta),
            hoeffding_margin(p.n, cfg.delta),
        )
    } else {
        (base_eps, 0.0)
    };
    let report = p
        .model
        .smoothness_report(&p.train, &SmoothnessOptions { eps: base_eps, e_n })?;
    let chain = resolve_defaults(
        &ChainConfig {
            step_size: cfg.step_size,
            init_scale: cfg.init_scale,
            burn_in,
            n_samples,
            seed: derive_seed(seed, &[CHAIN]),
            eps: est_eps,
            keep_all: false,
            initial: None,
        },
        report.as_ref(),
        p.n,
    )?;
    let step_size = chain.step_size.value().expect("resolved");

    let mut out = TaskOutput {
        records: Vec::new(),
        per_point: Vec::new(),
    };
    for method in cfg.method.methods() {
        let result = match method {
            Method::Ula => run_ula(&p.model, &p.train, &chain),
            Method::RobUla => run_rob_ula(&p.model, &p.train, &chain),
        };
        let mut record = ExperimentRecord {
            experiment: cfg.experiment,
            method,
            cell: cell.index,
            run,
            n: p.n,
            d: p.d,
            eps: cell.eps,
            seed,
            recovery_error: None,
            avg_test_loglik: None,
            w2_sq: None,
            wall_time_ms: 0.0,
            step_size,
            burn_in,
            n_samples,
            diverged: false,
        };
        let result = match result {
            Ok(r) => r,
            Err(Error::Diverged { .. }) => {
                record.diverged = true;
                out.records.push(record);
                continue;
            }
            Err(e) => return Err(e),
        };
        record.wall_time_ms = result.wall_time.as_secs_f64() * 1e3;

        let theta_hat = posterior_mean(&result.samples)?;
        if let Some(truth) = &p.truth {
            record.recovery_error = Some(recovery_error(&theta_hat, truth)?);
        }
        let lls = if cfg.sample_avg_loglik {
            per_point_predictive_loglik(&p.model, &result.samples, &p.test)?
        } else {
            per_point_loglik(&p.model, &theta_hat, &p.test)?
        };
        record.avg_test_loglik = Some(if cfg.sample_avg_loglik {
            lls.iter().sum::<f64>() / lls.len() as f64
        } else {
            avg_loglik(&p.model, &theta_hat, &p.test)?
        });
        if let (Some(reference), true) = (&p.reference, result.samples.len() >= 2) {
            record.w2_sq = Some(gaussian_w2(&fit_gaussian(&result.samples)?, reference)?);
        }
        if let Some(dir) = &cfg.dump_samples {
            dump_samples(
                dir,
                cfg.experiment,
                cell.index,
                run,
                method,
                burn_in,
                &result,
            )?;
        }
        if cfg.per_point.is_some() {
            out.per_point.push(PerPointRow {
                method,
                cell: cell.index,
                run,
                seed,
                loglik: lls,
            });
        }
        out.records.push(record);
    }
    Ok(out)
}

fn dump_samples(
    dir: &Path,
    kind: ExperimentKind,
    cell: usize,
    run: usize,
    method: Method,
    burn_in: usize,
    result: &ChainResult,
) -> Result<()> {
    let path = dir.join(format!("{kind}_cell{cell}_run{run}_{}.csv", method.name()));
    let mut w = BufWriter::new(fs::File::create(path)?);
    let d = result.samples.first().map_or(0, |s| s.len());
    write!(w, "iteration")?;
    for j in 0..d {
        write!(w, ",theta_{j}")?;
    }
    writeln!(w)?;
    for (i, s) in result.samples.iter().enumerate() {
        write!(w, "{}", burn_in + i + 1)?;
        for v in s.iter() {
            write!(w, ",{v}")?;
        }
        writeln!(w)?;
    }
    w.flush()?;
    Ok(())
}

fn thread_count() -> Option<usize> {
    std::env::var(THREADS_ENV)
        .ok()?
        .trim()
        .parse()
        .ok()
        .filter(|&t| t > 0)
}

/// Runs every (cell, run) task on a worker pool and returns rows in
/// (cell, run, method) order. Divergent chains become `diverged` rows rather
/// than errors. Output files named in the config are written as well.
pub fn run_experiment(cfg: &ExperimentConfig) -> Result<ExperimentOutput> {
    cfg.validate()?;
    let cells = cfg.cells()?;
    if let Some(dir) = &cfg.dump_samples {
        fs::create_dir_all(dir)?;
    }
    let tasks: Vec<(Cell, usize)> = cells
        .iter()
        .flat_map(|c| (0..cfg.runs).map(move |r| (*c, r)))
        .collect();

    let mut builder = rayon::ThreadPoolBuilder::new();
    if let Some(t) = thread_count() {
        builder = builder.num_threads(t);
    }
    let pool = builder
        .build()
        .map_err(|e| Error::Config(format!("thread pool: {e}")))?;
    let results: Vec<Result<TaskOutput>> = pool.install(|| {
        tasks
            .par_iter()
            .map(|(cell, run)| run_task(cfg, cell, *run))
            .collect()
    });

    let mut out = ExperimentOutput::default();
    for r in results {
        let task = r?;
        out.records.extend(task.records);
        out.per_point.extend(task.per_point);
    }
    if let Some(path) = &cfg.out {
        write_csv(&out.records, &mut BufWriter::new(fs::File::create(path)?))?;
    }
    if let Some(path) = &cfg.per_point {
        write_per_point(
            cfg.experiment,
            &out.per_point,
            &mut BufWriter::new(fs::File::create(path)?),
        )?;
    }
    Ok(out)
}

pub fn write_csv<W: Write>(records: &[ExperimentRecord], w: &mut W) -> Result<()> {
    writeln!(w, "{CSV_HEADER}")?;
    for r in records {
        writeln!(w, "{}", r.csv_row())?;
    }
    w.flush()?;
    Ok(())
}

/// One line per test point, in test-set order.
pub fn write_per_point<W: Write>(
    kind: ExperimentKind,
    rows: &[PerPointRow],
    w: &mut W,
) -> Result<()> {
    writeln!(w, "{PER_POINT_HEADER}")?;
    for r in rows {
        for (i, ll) in r.loglik.iter().enumerate() {
            writeln!(
                w,
                "{kind},{},{},{},{},{i},{ll}",
                r.method.name(),
                r.cell,
                r.run,
                r.seed
            )?;
        }
    }
    w.flush()?;
    Ok(())
}

#[cfg(test)]
mod tests {
    use super::*;

    fn small(kind: ExperimentKind) -> ExperimentConfig {
        ExperimentConfig {
            experiment: kind,
            n: 60,
            d: 3,
            runs: 2,
            burn_in: Some(20),
            n_samples: Some(30),
            test_size: 20,
            ..Default::default()
        }
    }

    #[test]
    fn widening_examples() {
        assert!((apply_en_widening(0.2, 2000, 0.001) - 0.2831).abs() < 1e-4);
        assert!((apply_en_widening(0.2, 50, 1.0 - 1e-15) - 0.2).abs() < 1e-6);
        assert_eq!(apply_en_widening(0.99, 1, 1e-9), 0.999);
    }

    #[test]
    fn sweep_parsing() {
        let s: Sweep = "eps=0, 0.1,0.2".parse().unwrap();
        assert_eq!(
            s,
            Sweep {
                param: SweepParam::Eps,
                values: vec![0.0, 0.1, 0.2]
            }
        );
        assert!("k=1".parse::<Sweep>().is_err());
        assert!("n".parse::<Sweep>().is_err());
        assert!("n=1,x".parse::<Sweep>().is_err());

        let cfg = ExperimentConfig {
            sweep: Some("n=10.5".parse().unwrap()),
            ..Default::default()
        };
        assert!(cfg.validate().is_err());
    }

    #[test]
    fn validation_names_fields() {
        let msg = |cfg: ExperimentConfig| cfg.validate().unwrap_err().to_string();
        assert!(msg(ExperimentConfig {
            runs: 0,
            ..Default::default()
        })
        .contains("runs"));
        assert!(msg(ExperimentConfig {
            eps: 1.0,
            ..Default::default()
        })
        .contains("eps"));
        assert!(msg(ExperimentConfig {
            delta: 0.0,
            ..Default::default()
        })
        .contains("delta"));
        assert!(msg(ExperimentConfig {
            step_size: Setting::Fixed(-1.0),
            ..Default::default()
        })
        .contains("step_size"));
        let logistic = ExperimentConfig {
            experiment: ExperimentKind::Logistic,
            ..Default::default()
        };
        assert!(msg(logistic).contains("data"));
    }

    #[test]
    fn json_config_with_defaults() {
        let cfg: ExperimentConfig = serde_json::from_str(
            r#"{"experiment": "regression", "n": 40, "step_size": 0.001, "sweep": {"param": "eps", "values": [0.1]}}"#,
        )
        .unwrap();
        assert_eq!(cfg.experiment, ExperimentKind::Regression);
        assert_eq!(cfg.n, 40);
        assert_eq!(cfg.d, 20);
        assert_eq!(cfg.step_size, Setting::Fixed(0.001));
        assert_eq!(cfg.chain_length(), (100, 300));
        assert!(serde_json::from_str::<ExperimentConfig>(r#"{"bogus": 1}"#).is_err());
    }

    #[test]
    fn rows_are_ordered_and_complete() {
        let mut cfg = small(ExperimentKind::MeanEst);
        cfg.sweep = Some("eps=0,0.2".parse().unwrap());
        let out = run_experiment(&cfg).unwrap();
        assert_eq!(out.records.len(), 2 * 2 * 2);
        let keys: Vec<_> = out
            .records
            .iter()
            .map(|r| (r.cell, r.run, r.method))
            .collect();
        let mut sorted = keys.clone();
        sorted.sort();
        assert_eq!(keys, sorted);
        for r in &out.records {
            assert!(r.recovery_error.unwrap().is_finite());
            assert!(r.w2_sq.unwrap() >= 0.0);
        }
        let mut buf = Vec::new();
        write_csv(&out.records, &mut buf).unwrap();
        let text = String::from_utf8(buf).unwrap();
        assert_eq!(text.lines().next().unwrap(), CSV_HEADER);
        assert!(text.lines().skip(1).all(|l| l.split(',').count() == 13));
    }

    #[test]
    fn regression_rows_leave_w2_empty() {
        let out = run_experiment(&small(ExperimentKind::Regression)).unwrap();
        for r in &out.records {
            assert_eq!(r.w2_sq, None);
            assert_eq!(r.csv_row().split(',').nth(8), Some(""));
        }
    }

    #[test]
    fn divergence_is_reported_in_rows() {
        let mut cfg = small(ExperimentKind::MeanEst);
        cfg.step_size = Setting::Fixed(1.0);
        cfg.runs = 1;
        let out = run_experiment(&cfg).unwrap();
        assert!(out.any_diverged());
        let row = out.records[0].csv_row();
        assert_eq!(row.split(',').filter(|f| *f == "diverged").count(), 3);
    }
}
