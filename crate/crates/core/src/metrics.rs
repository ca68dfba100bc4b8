//! Evaluation quantities: posterior-mean estimates, recovery error, held-out
//! log-likelihood and the closed-form 2-Wasserstein distance between Gaussians.

use nalgebra::DMatrix;

use crate::error::{Error, Result};
use crate::linalg::{column_covariance, column_mean, psd_sqrt, ParamVector, SymMatrix};
use crate::models::Model;

#[derive(Debug, Clone, PartialEq)]
pub struct GaussianSummary {
    pub mean: ParamVector,
    pub cov: SymMatrix,
}

impl GaussianSummary {
    pub fn new(mean: ParamVector, cov: SymMatrix) -> Result<Self> {
        if mean.len() != cov.dim() {
            return Err(Error::DimensionMismatch {
                expected: cov.dim(),
                found: mean.len(),
            });
        }
        Ok(Self { mean, cov })
    }
}

fn stack(samples: &[ParamVector]) -> Result<DMatrix<f64>> {
    let d = samples[0].len();
    if let Some(bad) = samples.iter().find(|s| s.len() != d) {
        return Err(Error::DimensionMismatch {
            expected: d,
            found: bad.len(),
        });
    }
    Ok(DMatrix::from_columns(samples))
}

/// Arithmetic mean of the chain samples.
pub fn posterior_mean(samples: &[ParamVector]) -> Result<ParamVector> {
    if samples.is_empty() {
        return Err(Error::InvalidInput(
            "posterior mean of an empty sample".into(),
        ));
    }
    Ok(column_mean(&stack(samples)?))
}

/// `‖estimate - truth‖₂`
pub fn recovery_error(estimate: &ParamVector, truth: &ParamVector) -> Result<f64> {
    if estimate.len() != truth.len() {
        return Err(Error::DimensionMismatch {
            expected: truth.len(),
            found: estimate.len(),
        });
    }
    Ok((estimate - truth).norm())
}

/// `log p(z | θ̂)` for every test observation, in input order.
pub fn per_point_loglik<M: Model>(
    model: &M,
    theta: &ParamVector,
    test: &[M::Obs],
) -> Result<Vec<f64>> {
    test.iter().map(|z| model.loglik_point(theta, z)).collect()
}

/// Mean plug-in log-likelihood of the test set at `θ̂`.
pub fn avg_loglik<M: Model>(model: &M, theta: &ParamVector, test: &[M::Obs]) -> Result<f64> {
    if test.is_empty() {
        return Err(Error::InvalidInput(
            "average log-likelihood of an empty test set".into(),
        ));
    }
    Ok(per_point_loglik(model, theta, test)?.iter().sum::<f64>() / test.len() as f64)
}

/// Posterior-predictive variant: for each test point,
/// `log( (1/S) Σ_s p(z | θ_s) )`, computed with log-sum-exp.
pub fn per_point_predictive_loglik<M: Model>(
    model: &M,
    samples: &[ParamVector],
    test: &[M::Obs],
) -> Result<Vec<f64>> {
    if samples.is_empty() {
        return Err(Error::InvalidInput(
            "predictive log-likelihood needs samples".into(),
        ));
    }
    let log_s = (samples.len() as f64).ln();
    test.iter()
        .map(|z| {
            let lls = samples
                .iter()
                .map(|t| model.loglik_point(t, z))
                .collect::<Result<Vec<_>>>()?;
            let max = lls.iter().copied().fold(f64::NEG_INFINITY, f64::max);
            if !max.is_finite() {
                return Ok(max);
            }
            Ok(max + lls.iter().map(|l| (l - max).exp()).sum::<f64>().ln() - log_s)
        })
        .collect()
}

pub fn avg_predictive_loglik<M: Model>(
    model: &M,
    samples: &[ParamVector],
    test: &[M::Obs],
) -> Result<f64> {
    if test.is_empty() {
        return Err(Error::InvalidInput(
            "average log-likelihood of an empty test set".into(),
        ));
    }
    let ll = per_point_predictive_loglik(model, samples, test)?;
    Ok(ll.iter().sum::<f64>() / ll.len() as f64)
}

/// Sorts log-likelihoods in descending order.
pub fn sorted_descending(mut values: Vec<f64>) -> Vec<f64> {
    values.sort_by(|a, b| b.total_cmp(a));
    values
}

/// Moment-matched Gaussian of the samples (covariance divisor `N`).
pub fn fit_gaussian(samples: &[ParamVector]) -> Result<GaussianSummary> {
    if samples.len() < 2 {
        return Err(Error::InvalidInput(
            "fitting a Gaussian needs at least two samples".into(),
        ));
    }
    let m = stack(samples)?;
    Ok(GaussianSummary {
        mean: column_mean(&m),
        cov: column_covariance(&m),
    })
}

/// Squared 2-Wasserstein distance between two Gaussians:
/// `‖μa - μb‖² + tr(Σa + Σb - 2·(Σb^{1/2} Σa Σb^{1/2})^{1/2})`.
pub fn gaussian_w2(a: &GaussianSummary, b: &GaussianSummary) -> Result<f64> {
    if a.mean.len() != b.mean.len() {
        return Err(Error::DimensionMismatch {
            expected: a.mean.len(),
            found: b.mean.len(),
        });
    }
    let root_b = psd_sqrt(&b.cov)?;
    let inner = SymMatrix::new(root_b.as_matrix() * a.cov.as_matrix() * root_b.as_matrix())?;
    let cross = psd_sqrt(&inner)?;
    let trace =
        a.cov.as_matrix().trace() + b.cov.as_matrix().trace() - 2.0 * cross.as_matrix().trace();
    // The trace term is nonnegative; clip rounding noise.
    Ok((&a.mean - &b.mean).norm_squared() + trace.max(0.0))
}
