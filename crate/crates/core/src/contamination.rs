//! Huber ε-contaminated synthetic data, label-flip corruption and CSV input.
//!
//! Generators draw every random quantity for every point regardless of ε (a
//! uniform `u_i` deciding corruption, plus both the clean and the corrupt
//! draw). With a fixed seed, datasets at different ε therefore share their
//! clean draws, the corrupt set grows monotonically in ε, and a dataset of
//! size `n` is a prefix of one of size `n' > n` in Bernoulli mode.

use std::collections::BTreeSet;
use std::path::Path;

use nalgebra::DVector;
use rand::seq::SliceRandom;
use rand::Rng;
use rand_distr::{ChiSquared, Distribution};
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::linalg::{gaussian_vector, ParamVector, RngHandle};
use crate::models::LabeledPoint;

/// Observations with evaluation-only provenance flags.
#[derive(Debug, Clone, PartialEq)]
pub struct Dataset<O> {
    pub observations: Vec<O>,
    /// `true` where the observation came from the adversarial component or
    /// was flipped. Samplers never see this.
    pub is_corrupt: Vec<bool>,
    /// Ground-truth parameter for synthetic data.
    pub truth: Option<ParamVector>,
    pub d: usize,
}

impl<O: Clone> Dataset<O> {
    pub fn n(&self) -> usize {
        self.observations.len()
    }

    pub fn n_corrupt(&self) -> usize {
        self.is_corrupt.iter().filter(|&&c| c).count()
    }

    pub fn corrupt_fraction(&self) -> f64 {
        self.n_corrupt() as f64 / self.n().max(1) as f64
    }

    pub fn clean_observations(&self) -> Vec<O> {
        self.observations
            .iter()
            .zip(&self.is_corrupt)
            .filter(|(_, &c)| !c)
            .map(|(o, _)| o.clone())
            .collect()
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Default, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum Assignment {
    /// Each point is corrupt independently with probability ε.
    #[default]
    Bernoulli,
    /// Exactly `⌊ε·n⌋` corrupt points at uniformly random positions.
    ExactCount,
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct ContaminationSpec {
    pub eps: f64,
    pub mode: Assignment,
    /// Entries of the mean shift `θ_cor` are drawn from `U[0, shift_max]`.
    pub shift_max: f64,
    /// Corrupt regression responses are offset by `U[0, response_shift_max]`.
    pub response_shift_max: f64,
}

impl ContaminationSpec {
    pub fn new(eps: f64) -> Self {
        Self {
            eps,
            ..Self::default()
        }
    }

    pub fn exact(eps: f64) -> Self {
        Self {
            eps,
            mode: Assignment::ExactCount,
            ..Self::default()
        }
    }

    fn validate(&self) -> Result<()> {
        if !(0.0..1.0).contains(&self.eps) {
            return Err(Error::InvalidInput(format!(
                "contamination level must lie in [0, 1), got {}",
                self.eps
            )));
        }
        Ok(())
    }
}

impl Default for ContaminationSpec {
    fn default() -> Self {
        Self {
            eps: 0.0,
            mode: Assignment::Bernoulli,
            shift_max: 10.0,
            response_shift_max: 10.0,
        }
    }
}

/// Hoeffding margin `e_n = √((2/n)·log(1/δ))` on the realized corrupt
/// fraction.
pub fn hoeffding_margin(n: usize, delta: f64) -> f64 {
    ((2.0 / n as f64) * (1.0 / delta).ln()).sqrt()
}

fn exact_count(eps: f64, n: usize) -> usize {
    ((eps * n as f64 + 1e-9).floor() as usize).min(n)
}

/// Corruption flags from per-point uniforms.
fn assign(u: &[f64], eps: f64, mode: Assignment) -> Vec<bool> {
    match mode {
        Assignment::Bernoulli => u.iter().map(|&v| v < eps).collect(),
        Assignment::ExactCount => {
            let mut order: Vec<usize> = (0..u.len()).collect();
            order.sort_by(|&a, &b| u[a].total_cmp(&u[b]));
            let mut flags = vec![false; u.len()];
            for &i in &order[..exact_count(eps, u.len())] {
                flags[i] = true;
            }
            flags
        }
    }
}

fn uniform_vector(rng: &mut RngHandle, d: usize, hi: f64) -> ParamVector {
    DVector::from_iterator(d, (0..d).map(|_| rng.random::<f64>() * hi))
}

/// Mean estimation: `θ ~ U[0,1]^d`, clean `z ~ N(θ, I)`, corrupt
/// `z ~ N(θ + θ_cor, I)` with a single `θ_cor ~ U[0, shift_max]^d`.
pub fn gen_mean_estimation(
    n: usize,
    d: usize,
    spec: &ContaminationSpec,
    rng: &mut RngHandle,
) -> Result<Dataset<ParamVector>> {
    spec.validate()?;
    check_size(n, d)?;
    let theta = uniform_vector(rng, d, 1.0);
    let shifted = &theta + uniform_vector(rng, d, spec.shift_max);
    let mut u = Vec::with_capacity(n);
    let mut clean = Vec::with_capacity(n);
    let mut corrupt = Vec::with_capacity(n);
    for _ in 0..n {
        u.push(rng.random::<f64>());
        clean.push(&theta + gaussian_vector(rng, d));
        corrupt.push(&shifted + gaussian_vector(rng, d));
    }
    let is_corrupt = assign(&u, spec.eps, spec.mode);
    let observations = select(clean, corrupt, &is_corrupt);
    Ok(Dataset {
        observations,
        is_corrupt,
        truth: Some(theta),
        d,
    })
}

/// Clean draws `z ~ N(θ, I)`, e.g. a held-out test set.
pub fn clean_mean_sample(
    theta: &ParamVector,
    n: usize,
    rng: &mut RngHandle,
) -> Dataset<ParamVector> {
    let d = theta.len();
    let observations = (0..n).map(|_| theta + gaussian_vector(rng, d)).collect();
    Dataset {
        observations,
        is_corrupt: vec![false; n],
        truth: Some(theta.clone()),
        d,
    }
}

/// Linear regression: `θ* ~ U[0,1]^d`; clean `x ~ N(0, I)`,
/// `y = ⟨x, θ*⟩ + N(0,1)`; corrupt features iid χ²(1) and
/// `y = ⟨x, θ*⟩ + U[0, response_shift_max]` drawn per point.
pub fn gen_regression(
    n: usize,
    d: usize,
    spec: &ContaminationSpec,
    rng: &mut RngHandle,
) -> Result<Dataset<LabeledPoint>> {
    spec.validate()?;
    check_size(n, d)?;
    let chi2 = ChiSquared::new(1.0).expect("one degree of freedom is valid");
    let theta = uniform_vector(rng, d, 1.0);
    let mut u = Vec::with_capacity(n);
    let mut clean = Vec::with_capacity(n);
    let mut corrupt = Vec::with_capacity(n);
    for _ in 0..n {
        u.push(rng.random::<f64>());
        let x = gaussian_vector(rng, d);
        let noise: f64 = gaussian_vector(rng, 1)[0];
        clean.push(LabeledPoint {
            y: x.dot(&theta) + noise,
            x,
        });
        let x = DVector::from_iterator(d, (0..d).map(|_| chi2.sample(rng)));
        let offset = rng.random::<f64>() * spec.response_shift_max;
        corrupt.push(LabeledPoint {
            y: x.dot(&theta) + offset,
            x,
        });
    }
    let is_corrupt = assign(&u, spec.eps, spec.mode);
    let observations = select(clean, corrupt, &is_corrupt);
    Ok(Dataset {
        observations,
        is_corrupt,
        truth: Some(theta),
        d,
    })
}

/// Clean regression draws for a known `θ*`.
pub fn clean_regression_sample(
    theta: &ParamVector,
    n: usize,
    rng: &mut RngHandle,
) -> Dataset<LabeledPoint> {
    let d = theta.len();
    let observations = (0..n)
        .map(|_| {
            let x = gaussian_vector(rng, d);
            let noise: f64 = gaussian_vector(rng, 1)[0];
            LabeledPoint {
                y: x.dot(theta) + noise,
                x,
            }
        })
        .collect();
    Dataset {
        observations,
        is_corrupt: vec![false; n],
        truth: Some(theta.clone()),
        d,
    }
}

fn check_size(n: usize, d: usize) -> Result<()> {
    if n == 0 || d == 0 {
        return Err(Error::InvalidInput(format!(
            "need n >= 1 and d >= 1, got n={n}, d={d}"
        )));
    }
    Ok(())
}

fn select<O>(clean: Vec<O>, corrupt: Vec<O>, flags: &[bool]) -> Vec<O> {
    clean
        .into_iter()
        .zip(corrupt)
        .zip(flags)
        .map(|((c, a), &bad)| if bad { a } else { c })
        .collect()
}

/// Rows chosen for flipping under the given ε and assignment mode.
pub fn flip_selection(
    n: usize,
    eps: f64,
    mode: Assignment,
    rng: &mut RngHandle,
) -> Result<Vec<usize>> {
    ContaminationSpec {
        eps,
        mode,
        ..ContaminationSpec::default()
    }
    .validate()?;
    let u: Vec<f64> = (0..n).map(|_| rng.random::<f64>()).collect();
    Ok(assign(&u, eps, mode)
        .into_iter()
        .enumerate()
        .filter_map(|(i, f)| f.then_some(i))
        .collect())
}

/// Negates the labels of the given rows and marks them corrupt.
pub fn flip_labels_at(
    data: &Dataset<LabeledPoint>,
    rows: &[usize],
) -> Result<Dataset<LabeledPoint>> {
    if let Some(p) = data.observations.iter().find(|p| p.y != 1.0 && p.y != -1.0) {
        return Err(Error::InvalidInput(format!(
            "label flips need a classification dataset with labels ±1, found {}",
            p.y
        )));
    }
    let mut out = data.clone();
    for &i in rows {
        let p = out.observations.get_mut(i).ok_or_else(|| {
            Error::InvalidInput(format!("row {i} out of range for {} rows", data.n()))
        })?;
        p.y = -p.y;
        out.is_corrupt[i] = true;
    }
    Ok(out)
}

pub fn flip_labels(
    data: &Dataset<LabeledPoint>,
    eps: f64,
    mode: Assignment,
    rng: &mut RngHandle,
) -> Result<Dataset<LabeledPoint>> {
    let rows = flip_selection(data.n(), eps, mode, rng)?;
    flip_labels_at(data, &rows)
}

/// Which CSV columns hold the label and the features. With no feature list,
/// every non-label column is a feature.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct CsvSchema {
    pub label_column: String,
    pub feature_columns: Option<Vec<String>>,
}

#[derive(Debug, Clone)]
pub struct TrainTestSplit {
    pub train: Dataset<LabeledPoint>,
    pub test: Dataset<LabeledPoint>,
    pub feature_names: Vec<String>,
}

pub const TRAIN_FRACTION: f64 = 0.7;

/// Reads a header-first, comma-separated numeric file, maps binary labels to
/// ±1, shuffles with `seed` into a 70/30 train/test split and rescales every
/// feature to [-1, 1] using the training ranges.
pub fn load_csv(path: &Path, schema: &CsvSchema, seed: u64) -> Result<TrainTestSplit> {
    let mut reader = csv::ReaderBuilder::new()
        .has_headers(true)
        .trim(csv::Trim::All)
        .from_path(path)
        .map_err(|e| csv_error(e, 1))?;
    let headers: Vec<String> = reader
        .headers()
        .map_err(|e| csv_error(e, 1))?
        .iter()
        .map(str::to_owned)
        .collect();
    let column = |name: &str| {
        headers.iter().position(|h| h == name).ok_or_else(|| {
            Error::Config(format!("column '{name}' not found in {}", path.display()))
        })
    };
    let label_idx = column(&schema.label_column)?;
    let feature_names: Vec<String> = match &schema.feature_columns {
        Some(cols) => cols.clone(),
        None => headers
            .iter()
            .filter(|h| **h != schema.label_column)
            .cloned()
            .collect(),
    };
    if feature_names.is_empty() {
        return Err(Error::Config("no feature columns selected".into()));
    }
    let feature_idx = feature_names
        .iter()
        .map(|f| column(f))
        .collect::<Result<Vec<_>>>()?;

    let mut rows: Vec<(Vec<f64>, f64)> = Vec::new();
    for record in reader.records() {
        let record = record.map_err(|e| csv_error(e, rows.len() as u64 + 2))?;
        let line = record
            .position()
            .map_or(rows.len() as u64 + 2, |p| p.line());
        let cell = |i: usize| -> Result<f64> {
            let raw = record.get(i).ok_or_else(|| Error::Parse {
                line,
                message: format!("missing column {}", headers[i]),
            })?;
            raw.parse::<f64>()
                .ok()
                .filter(|v| v.is_finite())
                .ok_or_else(|| Error::Parse {
                    line,
                    message: format!("column '{}': '{raw}' is not a finite number", headers[i]),
                })
        };
        let x = feature_idx
            .iter()
            .map(|&i| cell(i))
            .collect::<Result<Vec<_>>>()?;
        rows.push((x, cell(label_idx)?));
    }
    if rows.len() < 2 {
        return Err(Error::InvalidInput(
            "need at least two data rows for a train/test split".into(),
        ));
    }

    let labels = map_labels(rows.iter().map(|r| r.1))?;
    let mut order: Vec<usize> = (0..rows.len()).collect();
    order.shuffle(&mut RngHandle::new(seed));
    let n_train = ((rows.len() as f64 * TRAIN_FRACTION).round() as usize).clamp(1, rows.len() - 1);
    let (train_idx, test_idx) = order.split_at(n_train);

    let d = feature_idx.len();
    let mut lo = vec![f64::INFINITY; d];
    let mut hi = vec![f64::NEG_INFINITY; d];
    for &i in train_idx {
        for (j, &v) in rows[i].0.iter().enumerate() {
            lo[j] = lo[j].min(v);
            hi[j] = hi[j].max(v);
        }
    }
    let scale = |x: &[f64]| {
        DVector::from_iterator(
            d,
            x.iter().enumerate().map(|(j, &v)| {
                let range = hi[j] - lo[j];
                if range > 0.0 {
                    2.0 * (v - lo[j]) / range - 1.0
                } else {
                    0.0
                }
            }),
        )
    };
    let build = |idx: &[usize]| Dataset {
        observations: idx
            .iter()
            .map(|&i| LabeledPoint {
                x: scale(&rows[i].0),
                y: labels[i],
            })
            .collect(),
        is_corrupt: vec![false; idx.len()],
        truth: None,
        d,
    };
    Ok(TrainTestSplit {
        train: build(train_idx),
        test: build(test_idx),
        feature_names,
    })
}

fn csv_error(e: csv::Error, fallback_line: u64) -> Error {
    let line = e.position().map_or(fallback_line, |p| p.line());
    match e.into_kind() {
        csv::ErrorKind::Io(io) => Error::Io(io),
        other => Error::Parse {
            line,
            message: format!("{other:?}"),
        },
    }
}

/// `{0,1}` and `{-1,1}` keep their meaning; any other pair of distinct values
/// maps the smaller to -1 and the larger to +1.
fn map_labels(raw: impl Iterator<Item = f64>) -> Result<Vec<f64>> {
    let raw: Vec<f64> = raw.collect();
    let distinct: BTreeSet<u64> = raw.iter().map(|v| v.to_bits()).collect();
    let values: Vec<f64> = distinct.iter().map(|&b| f64::from_bits(b)).collect();
    if values.len() > 2 {
        return Err(Error::InvalidInput(format!(
            "labels must be binary, found {} distinct values",
            values.len()
        )));
    }
    let all_in = |set: &[f64]| values.iter().all(|v| set.contains(v));
    let negative = if all_in(&[0.0, 1.0]) {
        0.0
    } else if all_in(&[-1.0, 1.0]) {
        -1.0
    } else if values.len() == 2 {
        values.iter().copied().fold(f64::INFINITY, f64::min)
    } else {
        return Err(Error::InvalidInput(format!(
            "cannot infer the label encoding from the single value {}",
            values[0]
        )));
    };
    Ok(raw
        .iter()
        .map(|&v| if v == negative { -1.0 } else { 1.0 })
        .collect())
}

#[cfg(test)]
mod tests {
    use super::*;
    use std::io::Write;

    #[test]
    fn clean_when_eps_zero() {
        let data =
            gen_mean_estimation(200, 3, &ContaminationSpec::new(0.0), &mut RngHandle::new(1))
                .unwrap();
        assert_eq!(data.n_corrupt(), 0);
        let theta = data.truth.as_ref().unwrap();
        assert!(theta.iter().all(|&t| (0.0..1.0).contains(&t)));
    }

    #[test]
    fn bernoulli_fraction_within_hoeffding_margin() {
        let data = gen_mean_estimation(
            10_000,
            2,
            &ContaminationSpec::new(0.2),
            &mut RngHandle::new(2),
        )
        .unwrap();
        let margin = hoeffding_margin(10_000, 1e-3);
        assert!((margin - 0.03717).abs() < 1e-4);
        assert!((data.corrupt_fraction() - 0.2).abs() <= margin);
    }

    #[test]
    fn exact_count_modes() {
        let data = gen_mean_estimation(
            10,
            2,
            &ContaminationSpec::exact(0.2),
            &mut RngHandle::new(3),
        )
        .unwrap();
        assert_eq!(data.n_corrupt(), 2);
        let reg =
            gen_regression(5, 3, &ContaminationSpec::exact(0.4), &mut RngHandle::new(3)).unwrap();
        assert_eq!(reg.n_corrupt(), 2);
    }

    #[test]
    fn corrupt_mean_points_are_shifted_cluster() {
        let data = gen_mean_estimation(
            2000,
            4,
            &ContaminationSpec::new(0.3),
            &mut RngHandle::new(4),
        )
        .unwrap();
        let theta = data.truth.clone().unwrap();
        let bad: Vec<_> = data
            .observations
            .iter()
            .zip(&data.is_corrupt)
            .filter(|(_, &c)| c)
            .map(|(z, _)| z - &theta)
            .collect();
        let mean = bad.iter().fold(ParamVector::zeros(4), |a, b| a + b) / bad.len() as f64;
        assert!(mean.iter().all(|&m| (-0.2..10.2).contains(&m)));
        assert!(mean.norm() > 1.0);
    }

    #[test]
    fn corruption_is_nested_in_eps() {
        let lo = gen_mean_estimation(300, 3, &ContaminationSpec::new(0.1), &mut RngHandle::new(5))
            .unwrap();
        let hi = gen_mean_estimation(300, 3, &ContaminationSpec::new(0.3), &mut RngHandle::new(5))
            .unwrap();
        assert_eq!(lo.truth, hi.truth);
        for i in 0..300 {
            assert!(!lo.is_corrupt[i] || hi.is_corrupt[i]);
            if !hi.is_corrupt[i] {
                assert_eq!(lo.observations[i], hi.observations[i]);
            }
        }
    }

    #[test]
    fn regression_corrupt_features_nonnegative() {
        let data =
            gen_regression(500, 6, &ContaminationSpec::new(0.4), &mut RngHandle::new(6)).unwrap();
        assert!(data.n_corrupt() > 0);
        for (p, &c) in data.observations.iter().zip(&data.is_corrupt) {
            if c {
                assert!(p.x.iter().all(|&v| v >= 0.0));
                let offset = p.y - p.x.dot(data.truth.as_ref().unwrap());
                assert!((0.0..=10.0 + 1e-9).contains(&offset));
            }
        }
    }

    #[test]
    fn generators_are_seed_deterministic() {
        let spec = ContaminationSpec::new(0.2);
        let a = gen_regression(50, 3, &spec, &mut RngHandle::new(8)).unwrap();
        let b = gen_regression(50, 3, &spec, &mut RngHandle::new(8)).unwrap();
        assert_eq!(a, b);
        let c = gen_regression(50, 3, &spec, &mut RngHandle::new(9)).unwrap();
        assert_ne!(a, c);
    }

    #[test]
    fn invalid_spec_rejected() {
        let mut rng = RngHandle::new(0);
        assert!(gen_mean_estimation(10, 2, &ContaminationSpec::new(1.0), &mut rng).is_err());
        assert!(gen_mean_estimation(0, 2, &ContaminationSpec::new(0.1), &mut rng).is_err());
    }

    fn labeled(n: usize) -> Dataset<LabeledPoint> {
        let observations = (0..n)
            .map(|i| LabeledPoint {
                x: DVector::from_element(2, i as f64),
                y: if i % 3 == 0 { 1.0 } else { -1.0 },
            })
            .collect();
        Dataset {
            observations,
            is_corrupt: vec![false; n],
            truth: None,
            d: 2,
        }
    }

    #[test]
    fn flips() {
        let data = labeled(100);
        let same = flip_labels(&data, 0.0, Assignment::Bernoulli, &mut RngHandle::new(1)).unwrap();
        assert_eq!(same, data);

        let flipped =
            flip_labels(&data, 0.15, Assignment::ExactCount, &mut RngHandle::new(1)).unwrap();
        assert_eq!(flipped.n_corrupt(), 15);
        let changed = data
            .observations
            .iter()
            .zip(&flipped.observations)
            .filter(|(a, b)| a.y != b.y)
            .count();
        assert_eq!(changed, 15);

        let rows = flip_selection(100, 0.3, Assignment::Bernoulli, &mut RngHandle::new(2)).unwrap();
        let twice = flip_labels_at(&flip_labels_at(&data, &rows).unwrap(), &rows).unwrap();
        assert_eq!(twice.observations, data.observations);

        let mut reg = data.clone();
        reg.observations[0].y = 0.3;
        assert!(flip_labels(&reg, 0.1, Assignment::Bernoulli, &mut RngHandle::new(1)).is_err());
    }

    fn write_csv(contents: &str) -> tempfile::NamedTempFile {
        let mut f = tempfile::NamedTempFile::new().unwrap();
        f.write_all(contents.as_bytes()).unwrap();
        f
    }

    fn schema() -> CsvSchema {
        CsvSchema {
            label_column: "label".into(),
            feature_columns: None,
        }
    }

    #[test]
    fn csv_maps_binary_labels() {
        let f = write_csv("a,label\n1.0,0\n2.0,1\n");
        let split = load_csv(f.path(), &schema(), 0).unwrap();
        assert_eq!((split.train.n(), split.test.n()), (1, 1));
        let mut labels: Vec<f64> = split
            .train
            .observations
            .iter()
            .chain(&split.test.observations)
            .map(|p| p.y)
            .collect();
        labels.sort_by(f64::total_cmp);
        assert_eq!(labels, vec![-1.0, 1.0]);
    }

    #[test]
    fn csv_scales_features_and_guards_constant_columns() {
        let mut body = String::from("x,const,label\n");
        for i in 0..20 {
            body.push_str(&format!("{},{},{}\n", i as f64 * 0.5 - 3.0, 7.5, i % 2));
        }
        let f = write_csv(&body);
        let split = load_csv(f.path(), &schema(), 11).unwrap();
        assert_eq!(split.train.n(), 14);
        assert_eq!(split.feature_names, vec!["x", "const"]);
        for p in &split.train.observations {
            assert!((-1.0..=1.0).contains(&p.x[0]));
            assert_eq!(p.x[1], 0.0);
        }
        let xs: Vec<f64> = split.train.observations.iter().map(|p| p.x[0]).collect();
        assert!(xs.contains(&-1.0) && xs.contains(&1.0));
        for p in &split.test.observations {
            assert_eq!(p.x[1], 0.0);
        }
    }

    #[test]
    fn csv_split_is_seeded() {
        let mut body = String::from("f1,f2,label\n");
        for i in 0..30 {
            body.push_str(&format!(
                "{},{},{}\n",
                i,
                (i * 7) % 5,
                if i % 4 == 0 { 1 } else { -1 }
            ));
        }
        let f = write_csv(&body);
        let a = load_csv(f.path(), &schema(), 5).unwrap();
        let b = load_csv(f.path(), &schema(), 5).unwrap();
        let c = load_csv(f.path(), &schema(), 6).unwrap();
        assert_eq!(a.train, b.train);
        assert_eq!(a.test, b.test);
        assert_ne!(a.train, c.train);
    }

    #[test]
    fn csv_errors() {
        let f = write_csv("a,label\n1.0,0\n2.0,abc\n3.0,1\n");
        match load_csv(f.path(), &schema(), 0) {
            Err(Error::Parse { line, .. }) => assert_eq!(line, 3),
            other => panic!("expected parse error, got {other:?}"),
        }
        let f = write_csv("a,label\n1.0,0\n2.0,1\n3.0,2\n");
        assert!(matches!(
            load_csv(f.path(), &schema(), 0),
            Err(Error::InvalidInput(_))
        ));
        let f = write_csv("a,b\n1.0,0\n");
        assert!(matches!(
            load_csv(f.path(), &schema(), 0),
            Err(Error::Config(_))
        ));
        let only = CsvSchema {
            label_column: "label".into(),
            feature_columns: Some(vec!["a".into()]),
        };
        let f = write_csv("a,z,label\n1.0,9,3\n2.0,9,5\n");
        let split = load_csv(f.path(), &only, 0).unwrap();
        assert_eq!(split.train.d, 1);
    }
}
