//! Recursive robust mean estimation of a vector sample containing an
//! ε-fraction of arbitrary outliers.
//!
//! The estimator first truncates the sample to the smallest interval (1-d) or
//! ball (d > 1) holding a `(1 - ε)²` fraction of the points. In more than one
//! dimension it then splits the space along the principal components of the
//! truncated sample: the top half of the spectrum is estimated recursively,
//! the bottom half by a plain mean.

use nalgebra::{DMatrix, DVector};

use crate::error::{Error, Result};
use crate::linalg::{column_covariance, column_mean, sym_eig, ParamVector};

/// A non-empty set of finite points of equal dimension, stored one point per
/// column of a `d × n` matrix.
#[derive(Debug, Clone, PartialEq)]
pub struct SampleSet {
    points: DMatrix<f64>,
}

impl SampleSet {
    pub fn from_columns(points: DMatrix<f64>) -> Result<Self> {
        if points.ncols() == 0 || points.nrows() == 0 {
            return Err(Error::InvalidInput("sample set must be non-empty".into()));
        }
        if points.iter().any(|x| !x.is_finite()) {
            return Err(Error::InvalidInput(
                "sample set has non-finite entries".into(),
            ));
        }
        Ok(Self { points })
    }

    pub fn from_points(points: &[ParamVector]) -> Result<Self> {
        let first = points
            .first()
            .ok_or_else(|| Error::InvalidInput("sample set must be non-empty".into()))?;
        let d = first.len();
        if let Some(bad) = points.iter().find(|p| p.len() != d) {
            return Err(Error::DimensionMismatch {
                expected: d,
                found: bad.len(),
            });
        }
        Self::from_columns(DMatrix::from_columns(points))
    }

    pub fn from_scalars(values: &[f64]) -> Result<Self> {
        Self::from_columns(DMatrix::from_row_slice(1, values.len(), values))
    }

    pub fn dim(&self) -> usize {
        self.points.nrows()
    }

    pub fn len(&self) -> usize {
        self.points.ncols()
    }

    pub fn is_empty(&self) -> bool {
        self.points.ncols() == 0
    }

    pub fn as_matrix(&self) -> &DMatrix<f64> {
        &self.points
    }

    pub fn point(&self, i: usize) -> ParamVector {
        self.points.column(i).into_owned()
    }

    pub fn mean(&self) -> ParamVector {
        column_mean(&self.points)
    }
}

/// Which window wins among equally narrow intervals.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub enum TieBreak {
    #[default]
    Leftmost,
    Rightmost,
}

#[derive(Debug, Clone, PartialEq)]
pub enum Region {
    Interval { lo: f64, hi: f64 },
    Ball { center: ParamVector, radius: f64 },
}

#[derive(Debug, Clone)]
pub struct TruncationResult {
    pub kept: SampleSet,
    pub kept_indices: Vec<usize>,
    pub region: Region,
}

/// Number of points the truncation keeps: `⌈(1-ε)²·n⌉` clamped to `[1, n]`.
pub fn retained_count(n: usize, eps: f64) -> usize {
    let target = (1.0 - eps).powi(2) * n as f64;
    // Absorb representation error so that e.g. 0.81·100 does not round up to 82.
    let k = (target - 1e-9).ceil();
    (k.max(1.0) as usize).min(n.max(1))
}

fn check_eps(eps: f64) -> Result<()> {
    if !(0.0..1.0).contains(&eps) {
        return Err(Error::InvalidInput(format!(
            "contamination level must lie in [0, 1), got {eps}"
        )));
    }
    Ok(())
}

/// Minimum-width closed interval `[a, b]` whose endpoints are data values and
/// which covers at least `k` values. Ties go to the smallest left endpoint.
pub fn smallest_interval(values: &[f64], k: usize) -> Result<(f64, f64)> {
    smallest_interval_with(values, k, TieBreak::Leftmost)
}

pub fn smallest_interval_with(values: &[f64], k: usize, tie: TieBreak) -> Result<(f64, f64)> {
    if values.is_empty() {
        return Err(Error::InvalidInput(
            "cannot take an interval of no values".into(),
        ));
    }
    if k == 0 || k > values.len() {
        return Err(Error::InvalidInput(format!(
            "interval count {k} outside [1, {}]",
            values.len()
        )));
    }
    let mut sorted = values.to_vec();
    sorted.sort_by(f64::total_cmp);
    let (lo, hi) = interval_in_sorted(&sorted, k, tie);
    Ok((sorted[lo], sorted[hi]))
}

fn interval_in_sorted(sorted: &[f64], k: usize, tie: TieBreak) -> (usize, usize) {
    let mut best = 0;
    let mut best_width = f64::INFINITY;
    for i in 0..=sorted.len() - k {
        let width = sorted[i + k - 1] - sorted[i];
        let better = match tie {
            TieBreak::Leftmost => width < best_width,
            TieBreak::Rightmost => width <= best_width,
        };
        if better {
            best = i;
            best_width = width;
        }
    }
    (best, best + k - 1)
}

/// The k-th smallest Euclidean distance from `center` to the points.
pub fn smallest_ball_radius(points: &SampleSet, center: &ParamVector, k: usize) -> Result<f64> {
    if center.len() != points.dim() {
        return Err(Error::DimensionMismatch {
            expected: points.dim(),
            found: center.len(),
        });
    }
    if k == 0 || k > points.len() {
        return Err(Error::InvalidInput(format!(
            "ball count {k} outside [1, {}]",
            points.len()
        )));
    }
    let mut dist = distances(&points.points, center);
    Ok(kth_smallest(&mut dist, k))
}

fn distances(points: &DMatrix<f64>, center: &ParamVector) -> Vec<f64> {
    points.column_iter().map(|p| (p - center).norm()).collect()
}

fn kth_smallest(values: &mut [f64], k: usize) -> f64 {
    let (_, kth, _) = values.select_nth_unstable_by(k - 1, f64::total_cmp);
    *kth
}

/// Keeps the points inside the smallest interval (d = 1) or the smallest ball
/// around a coordinate-wise robust center (d > 1) that holds
/// `retained_count(n, ε)` points.
pub fn truncate_outliers(samples: &SampleSet, eps: f64) -> Result<TruncationResult> {
    check_eps(eps)?;
    let (kept_indices, region) = truncate_indices(&samples.points, eps, TieBreak::Leftmost);
    let kept = SampleSet {
        points: samples.points.select_columns(&kept_indices),
    };
    Ok(TruncationResult {
        kept,
        kept_indices,
        region,
    })
}

fn truncate_indices(points: &DMatrix<f64>, eps: f64, tie: TieBreak) -> (Vec<usize>, Region) {
    let n = points.ncols();
    let k = retained_count(n, eps);
    if points.nrows() == 1 {
        let row: Vec<f64> = points.row(0).iter().copied().collect();
        let mut sorted = row.clone();
        sorted.sort_by(f64::total_cmp);
        let (i, j) = interval_in_sorted(&sorted, k, tie);
        let (lo, hi) = (sorted[i], sorted[j]);
        let kept = (0..n).filter(|&c| row[c] >= lo && row[c] <= hi).collect();
        return (kept, Region::Interval { lo, hi });
    }
    let center = DVector::from_iterator(
        points.nrows(),
        points.row_iter().map(|r| {
            let mut vals: Vec<f64> = r.iter().copied().collect();
            robust_mean_1d(&mut vals, eps, tie)
        }),
    );
    let dist = distances(points, &center);
    let radius = kth_smallest(&mut dist.clone(), k);
    let kept = (0..n).filter(|&c| dist[c] <= radius).collect();
    (kept, Region::Ball { center, radius })
}

/// Interval-truncated mean of scalars; sorts `values` in place.
fn robust_mean_1d(values: &mut [f64], eps: f64, tie: TieBreak) -> f64 {
    values.sort_by(f64::total_cmp);
    let k = retained_count(values.len(), eps);
    let (i, j) = interval_in_sorted(values, k, tie);
    let (lo, hi) = (values[i], values[j]);
    let (sum, count) = values
        .iter()
        .filter(|&&v| v >= lo && v <= hi)
        .fold((0.0, 0usize), |(s, c), &v| (s + v, c + 1));
    sum / count as f64
}

/// One level of the recursive estimator, for diagnostics.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct LevelTrace {
    pub dim: usize,
    pub n_in: usize,
    pub n_kept: usize,
}

#[derive(Debug, Clone, Default)]
pub struct EstimateTrace {
    pub levels: Vec<LevelTrace>,
}

impl EstimateTrace {
    /// Number of recursive descents below the top level.
    pub fn depth(&self) -> usize {
        self.levels.len().saturating_sub(1)
    }
}

/// Robust estimate of the mean of `samples` assuming an `eps` fraction of them
/// is adversarial.
pub fn robust_gradient_estimate(samples: &SampleSet, eps: f64) -> Result<ParamVector> {
    robust_gradient_estimate_with(samples, eps, TieBreak::Leftmost)
}

pub fn robust_gradient_estimate_with(
    samples: &SampleSet,
    eps: f64,
    tie: TieBreak,
) -> Result<ParamVector> {
    check_eps(eps)?;
    estimate(&samples.points, eps, tie, &mut EstimateTrace::default())
}

pub fn robust_gradient_estimate_traced(
    samples: &SampleSet,
    eps: f64,
) -> Result<(ParamVector, EstimateTrace)> {
    check_eps(eps)?;
    let mut trace = EstimateTrace::default();
    let mu = estimate(&samples.points, eps, TieBreak::Leftmost, &mut trace)?;
    Ok((mu, trace))
}

fn estimate(
    points: &DMatrix<f64>,
    eps: f64,
    tie: TieBreak,
    trace: &mut EstimateTrace,
) -> Result<ParamVector> {
    let d = points.nrows();
    let (kept_idx, _) = truncate_indices(points, eps, tie);
    trace.levels.push(LevelTrace {
        dim: d,
        n_in: points.ncols(),
        n_kept: kept_idx.len(),
    });
    let kept = points.select_columns(&kept_idx);
    if kept.ncols() == 1 {
        return Ok(kept.column(0).into_owned());
    }
    let mean = column_mean(&kept);
    if d == 1 {
        return Ok(mean);
    }

    let eig = sym_eig(&column_covariance(&kept))?;
    let top = d.div_ceil(2);
    let v = eig.vectors.columns(0, top);
    let w = eig.vectors.columns(top, d - top);

    let projected = v.transpose() * &kept;
    let mu_v = estimate(&projected, eps, tie, trace)?;
    let mu_w = w.transpose() * &mean;
    Ok(v * mu_v + w * mu_w)
}
