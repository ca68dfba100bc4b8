//! Likelihood models: per-point gradients of the negative log-likelihood, the
//! Gaussian prior, closed-form reference posteriors and curvature bounds.

use std::f64::consts::PI;

use nalgebra::{Cholesky, DMatrix, Dyn};
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::linalg::{ParamVector, SymMatrix};

/// A regression or classification observation.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct LabeledPoint {
    pub x: ParamVector,
    pub y: f64,
}

/// Curvature bounds `m·I ⪯ ∇²f ⪯ L·I` of the negative log-posterior, together
/// with their per-observation averages.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct SmoothnessReport {
    pub m: f64,
    pub l: f64,
    pub m_bar: f64,
    pub l_bar: f64,
    pub kappa: f64,
}

impl SmoothnessReport {
    pub fn new(m: f64, l: f64, n: usize) -> Result<Self> {
        if !(m > 0.0 && m <= l && l.is_finite()) {
            return Err(Error::InvalidInput(format!(
                "need 0 < m <= L, got m={m}, L={l}"
            )));
        }
        let n = n.max(1) as f64;
        Ok(Self {
            m,
            l,
            m_bar: m / n,
            l_bar: l / n,
            kappa: l / m,
        })
    }
}

/// Contamination levels used when bounding the clean-data count.
///
/// The lower curvature bound uses `ε + e_n`, the upper one `ε - e_n`; with the
/// default `e_n = 0` both use `ε`.
#[derive(Debug, Clone, Copy, Default, PartialEq)]
pub struct SmoothnessOptions {
    pub eps: f64,
    pub e_n: f64,
}

impl SmoothnessOptions {
    pub fn with_eps(eps: f64) -> Self {
        Self { eps, e_n: 0.0 }
    }

    fn upper(&self) -> f64 {
        (self.eps + self.e_n).clamp(0.0, 1.0)
    }

    fn lower(&self) -> f64 {
        (self.eps - self.e_n).clamp(0.0, 1.0)
    }
}

/// Multivariate normal prior `N(θ₀, Σ₀)`.
#[derive(Debug, Clone)]
pub struct GaussianPrior {
    mean: ParamVector,
    cov: SymMatrix,
    precision: SymMatrix,
    log_norm: f64,
    cov_extremes: (f64, f64),
}

impl GaussianPrior {
    pub fn new(mean: ParamVector, cov: SymMatrix) -> Result<Self> {
        if mean.len() != cov.dim() {
            return Err(Error::DimensionMismatch {
                expected: cov.dim(),
                found: mean.len(),
            });
        }
        let precision = cov.spd_inverse()?;
        let d = mean.len() as f64;
        let log_norm = -0.5 * (d * (2.0 * PI).ln() + log_det_spd(&cov)?);
        let cov_extremes = cov.eigen_extremes()?;
        Ok(Self {
            mean,
            cov,
            precision,
            log_norm,
            cov_extremes,
        })
    }

    pub fn standard(d: usize) -> Self {
        Self::new(ParamVector::zeros(d), SymMatrix::identity(d)).expect("identity prior is valid")
    }

    pub fn mean(&self) -> &ParamVector {
        &self.mean
    }

    pub fn cov(&self) -> &SymMatrix {
        &self.cov
    }

    pub fn precision(&self) -> &SymMatrix {
        &self.precision
    }

    pub fn dim(&self) -> usize {
        self.mean.len()
    }

    /// `-Σ₀⁻¹(θ - θ₀)`
    pub fn grad_log_density(&self, theta: &ParamVector) -> ParamVector {
        -(self.precision.as_matrix() * (theta - &self.mean))
    }

    pub fn log_density(&self, theta: &ParamVector) -> f64 {
        let r = theta - &self.mean;
        self.log_norm - 0.5 * r.dot(&(self.precision.as_matrix() * &r))
    }

    /// Curvature contributed by the prior: `(1/λmax(Σ₀), 1/λmin(Σ₀))`.
    fn curvature(&self) -> (f64, f64) {
        (1.0 / self.cov_extremes.1, 1.0 / self.cov_extremes.0)
    }
}

fn log_det_spd(m: &SymMatrix) -> Result<f64> {
    let chol = cholesky(m.as_matrix())?;
    Ok(2.0 * chol.l().diagonal().iter().map(|v| v.ln()).sum::<f64>())
}

fn cholesky(m: &DMatrix<f64>) -> Result<Cholesky<f64, Dyn>> {
    m.clone()
        .cholesky()
        .ok_or_else(|| Error::InvalidInput("matrix is not positive definite".into()))
}

fn check_dim(expected: usize, found: usize) -> Result<()> {
    if expected != found {
        return Err(Error::DimensionMismatch { expected, found });
    }
    Ok(())
}

/// A likelihood `p(z | θ)` with a Gaussian prior on `θ`.
///
/// `g_i(θ) = -log p(z_i | θ)` is the per-observation loss whose gradients the
/// samplers combine.
pub trait Model: Sync {
    type Obs: Clone + Send + Sync;

    fn dim(&self) -> usize;

    fn prior(&self) -> &GaussianPrior;

    /// `∇g_i(θ)` for one observation.
    fn grad_point(&self, theta: &ParamVector, obs: &Self::Obs) -> Result<ParamVector>;

    /// `log p(z | θ)`, normalized.
    fn loglik_point(&self, theta: &ParamVector, obs: &Self::Obs) -> Result<f64>;

    fn grad_log_prior(&self, theta: &ParamVector) -> ParamVector {
        self.prior().grad_log_density(theta)
    }

    fn log_prior(&self, theta: &ParamVector) -> f64 {
        self.prior().log_density(theta)
    }

    /// Curvature bounds for `n = obs.len()` observations, if the model can
    /// compute them.
    fn smoothness_report(
        &self,
        _obs: &[Self::Obs],
        _opts: &SmoothnessOptions,
    ) -> Result<Option<SmoothnessReport>> {
        Ok(None)
    }
}

/// Gaussian likelihood `z ~ N(θ, Σ)` with a conjugate Gaussian prior.
#[derive(Debug, Clone)]
pub struct GaussianMeanModel {
    sigma: SymMatrix,
    sigma_inv: SymMatrix,
    log_norm: f64,
    sigma_extremes: (f64, f64),
    prior: GaussianPrior,
}

impl GaussianMeanModel {
    pub fn new(sigma: SymMatrix, prior_mean: ParamVector, prior_cov: SymMatrix) -> Result<Self> {
        check_dim(sigma.dim(), prior_mean.len())?;
        let prior = GaussianPrior::new(prior_mean, prior_cov)?;
        let sigma_inv = sigma.spd_inverse()?;
        let d = sigma.dim() as f64;
        let log_norm = -0.5 * (d * (2.0 * PI).ln() + log_det_spd(&sigma)?);
        let sigma_extremes = sigma.eigen_extremes()?;
        Ok(Self {
            sigma,
            sigma_inv,
            log_norm,
            sigma_extremes,
            prior,
        })
    }

    /// Identity likelihood covariance and a standard normal prior.
    pub fn isotropic(d: usize) -> Self {
        Self::new(
            SymMatrix::identity(d),
            ParamVector::zeros(d),
            SymMatrix::identity(d),
        )
        .expect("identity model is valid")
    }

    pub fn sigma(&self) -> &SymMatrix {
        &self.sigma
    }

    pub fn sigma_inv(&self) -> &SymMatrix {
        &self.sigma_inv
    }
}

impl Model for GaussianMeanModel {
    type Obs = ParamVector;

    fn dim(&self) -> usize {
        self.sigma.dim()
    }

    fn prior(&self) -> &GaussianPrior {
        &self.prior
    }

    fn grad_point(&self, theta: &ParamVector, z: &ParamVector) -> Result<ParamVector> {
        check_dim(self.dim(), theta.len())?;
        check_dim(self.dim(), z.len())?;
        Ok(self.sigma_inv.as_matrix() * (theta - z))
    }

    fn loglik_point(&self, theta: &ParamVector, z: &ParamVector) -> Result<f64> {
        check_dim(self.dim(), theta.len())?;
        check_dim(self.dim(), z.len())?;
        let r = z - theta;
        Ok(self.log_norm - 0.5 * r.dot(&(self.sigma_inv.as_matrix() * &r)))
    }

    fn smoothness_report(
        &self,
        obs: &[ParamVector],
        opts: &SmoothnessOptions,
    ) -> Result<Option<SmoothnessReport>> {
        let n = obs.len();
        let (sig_min, sig_max) = self.sigma_extremes;
        let (prior_m, prior_l) = self.prior.curvature();
        let m = n as f64 * (1.0 - opts.upper()) / sig_max + prior_m;
        let l = n as f64 * (1.0 - opts.lower()) / sig_min + prior_l;
        SmoothnessReport::new(m, l, n).map(Some)
    }
}

/// Gaussian-noise linear regression `y ~ N(⟨x, θ⟩, σ²)`.
#[derive(Debug, Clone)]
pub struct LinRegModel {
    noise_var: f64,
    prior: GaussianPrior,
}

impl LinRegModel {
    pub fn new(noise_var: f64, prior_mean: ParamVector, prior_cov: SymMatrix) -> Result<Self> {
        if !(noise_var > 0.0 && noise_var.is_finite()) {
            return Err(Error::InvalidInput(format!(
                "noise variance must be > 0, got {noise_var}"
            )));
        }
        let prior = GaussianPrior::new(prior_mean, prior_cov)?;
        Ok(Self { noise_var, prior })
    }

    /// Unit noise variance and a standard normal prior.
    pub fn standard(d: usize) -> Self {
        Self {
            noise_var: 1.0,
            prior: GaussianPrior::standard(d),
        }
    }

    pub fn noise_var(&self) -> f64 {
        self.noise_var
    }
}

impl Model for LinRegModel {
    type Obs = LabeledPoint;

    fn dim(&self) -> usize {
        self.prior.dim()
    }

    fn prior(&self) -> &GaussianPrior {
        &self.prior
    }

    fn grad_point(&self, theta: &ParamVector, p: &LabeledPoint) -> Result<ParamVector> {
        check_dim(self.dim(), theta.len())?;
        check_dim(self.dim(), p.x.len())?;
        let residual = p.x.dot(theta) - p.y;
        Ok(&p.x * (residual / self.noise_var))
    }

    fn loglik_point(&self, theta: &ParamVector, p: &LabeledPoint) -> Result<f64> {
        check_dim(self.dim(), theta.len())?;
        check_dim(self.dim(), p.x.len())?;
        let residual = p.y - p.x.dot(theta);
        Ok(-0.5 * (2.0 * PI * self.noise_var).ln() - residual * residual / (2.0 * self.noise_var))
    }

    fn smoothness_report(
        &self,
        obs: &[LabeledPoint],
        opts: &SmoothnessOptions,
    ) -> Result<Option<SmoothnessReport>> {
        let n = obs.len();
        let (x_min, x_max) = second_moment_extremes(obs, self.dim())?;
        let (prior_m, prior_l) = self.prior.curvature();
        let m = n as f64 * (1.0 - opts.upper()) * x_min / self.noise_var + prior_m;
        let l = n as f64 * (1.0 - opts.lower()) * x_max / self.noise_var + prior_l;
        SmoothnessReport::new(m, l, n).map(Some)
    }
}

/// Extreme eigenvalues of `Σ̃_x = XᵀX / n`; zero for an empty set.
fn second_moment_extremes(obs: &[LabeledPoint], d: usize) -> Result<(f64, f64)> {
    if obs.is_empty() {
        return Ok((0.0, 0.0));
    }
    let mut acc = DMatrix::zeros(d, d);
    for p in obs {
        check_dim(d, p.x.len())?;
        acc.ger(1.0, &p.x, &p.x, 1.0);
    }
    SymMatrix::new(acc / obs.len() as f64)?.eigen_extremes()
}

/// `1 / (1 + e^{-t})` without overflow for large `|t|`.
pub fn sigmoid(t: f64) -> f64 {
    if t >= 0.0 {
        1.0 / (1.0 + (-t).exp())
    } else {
        let e = t.exp();
        e / (1.0 + e)
    }
}

/// `log(1 + e^t)` without overflow.
fn softplus(t: f64) -> f64 {
    if t > 0.0 {
        t + (-t).exp().ln_1p()
    } else {
        t.exp().ln_1p()
    }
}

/// Logistic regression with labels in `{-1, +1}`:
/// `g(θ) = log(1 + exp(-y·⟨x, θ⟩))`.
#[derive(Debug, Clone)]
pub struct LogisticModel {
    prior: GaussianPrior,
}

impl LogisticModel {
    /// Standard normal prior.
    pub fn new(d: usize) -> Self {
        Self {
            prior: GaussianPrior::standard(d),
        }
    }

    pub fn with_prior(prior: GaussianPrior) -> Self {
        Self { prior }
    }

    fn check(&self, theta: &ParamVector, p: &LabeledPoint) -> Result<()> {
        check_dim(self.dim(), theta.len())?;
        check_dim(self.dim(), p.x.len())?;
        if p.y != 1.0 && p.y != -1.0 {
            return Err(Error::InvalidInput(format!(
                "logistic labels must be ±1, got {}",
                p.y
            )));
        }
        Ok(())
    }
}

impl Model for LogisticModel {
    type Obs = LabeledPoint;

    fn dim(&self) -> usize {
        self.prior.dim()
    }

    fn prior(&self) -> &GaussianPrior {
        &self.prior
    }

    fn grad_point(&self, theta: &ParamVector, p: &LabeledPoint) -> Result<ParamVector> {
        self.check(theta, p)?;
        let margin = p.y * p.x.dot(theta);
        Ok(&p.x * (-p.y * sigmoid(-margin)))
    }

    fn loglik_point(&self, theta: &ParamVector, p: &LabeledPoint) -> Result<f64> {
        self.check(theta, p)?;
        Ok(-softplus(-p.y * p.x.dot(theta)))
    }

    fn smoothness_report(
        &self,
        obs: &[LabeledPoint],
        opts: &SmoothnessOptions,
    ) -> Result<Option<SmoothnessReport>> {
        let n = obs.len();
        let (_, x_max) = second_moment_extremes(obs, self.dim())?;
        let (prior_m, prior_l) = self.prior.curvature();
        let l = n as f64 * (1.0 - opts.lower()) * x_max / 4.0 + prior_l;
        SmoothnessReport::new(prior_m, l, n).map(Some)
    }
}

/// Exact posterior `N(mean, cov)` of the Gaussian mean model given clean data:
/// precision `Σ₀⁻¹ + n_c·Σ⁻¹`, mean `cov·(Σ₀⁻¹θ₀ + Σ⁻¹ Σᵢ zᵢ)`.
pub fn rbme_closed_posterior(
    model: &GaussianMeanModel,
    clean: &[ParamVector],
) -> Result<(ParamVector, SymMatrix)> {
    let d = model.dim();
    let mut sum = ParamVector::zeros(d);
    for z in clean {
        check_dim(d, z.len())?;
        sum += z;
    }
    let prior_prec = model.prior.precision().as_matrix();
    let precision = prior_prec + model.sigma_inv.as_matrix() * clean.len() as f64;
    let rhs = prior_prec * model.prior.mean() + model.sigma_inv.as_matrix() * sum;
    solve_posterior(precision, rhs)
}

/// Exact Gaussian posterior of the regression model given clean data; its
/// mean is the regularized estimator `θ_reg`.
pub fn rblr_closed_posterior(
    model: &LinRegModel,
    clean: &[LabeledPoint],
) -> Result<(ParamVector, SymMatrix)> {
    let d = model.dim();
    let mut gram = DMatrix::zeros(d, d);
    let mut xty = ParamVector::zeros(d);
    for p in clean {
        check_dim(d, p.x.len())?;
        gram.ger(1.0, &p.x, &p.x, 1.0);
        xty.axpy(p.y, &p.x, 1.0);
    }
    let prior_prec = model.prior.precision().as_matrix();
    let precision = prior_prec + gram / model.noise_var;
    let rhs = xty / model.noise_var + prior_prec * model.prior.mean();
    solve_posterior(precision, rhs)
}

/// `(Σ₀⁻¹ + XᵀX/σ²)⁻¹ (Xᵀy/σ² + Σ₀⁻¹θ₀)`
pub fn rblr_theta_reg(model: &LinRegModel, clean: &[LabeledPoint]) -> Result<ParamVector> {
    rblr_closed_posterior(model, clean).map(|(mean, _)| mean)
}

fn solve_posterior(precision: DMatrix<f64>, rhs: ParamVector) -> Result<(ParamVector, SymMatrix)> {
    let precision = SymMatrix::new(precision)?;
    let chol = cholesky(precision.as_matrix())?;
    let mean = chol.solve(&rhs);
    let cov = SymMatrix::new((chol.inverse() + chol.inverse().transpose()) * 0.5)?;
    Ok((mean, cov))
}

#[cfg(test)]
mod tests {
    use super::*;
    use nalgebra::DVector;

    fn v(xs: &[f64]) -> ParamVector {
        DVector::from_column_slice(xs)
    }

    #[test]
    fn gaussian_gradient_vanishes_at_datum() {
        let m = GaussianMeanModel::isotropic(3);
        let z = v(&[1.0, -2.0, 0.5]);
        assert_eq!(m.grad_point(&z, &z).unwrap(), ParamVector::zeros(3));
    }

    #[test]
    fn regression_gradient_example() {
        let m = LinRegModel::standard(2);
        let p = LabeledPoint {
            x: v(&[1.0, 0.0]),
            y: 2.0,
        };
        assert_eq!(
            m.grad_point(&ParamVector::zeros(2), &p).unwrap().as_slice(),
            &[-2.0, 0.0]
        );
    }

    #[test]
    fn logistic_gradient_at_origin() {
        let m = LogisticModel::new(2);
        for y in [-1.0, 1.0] {
            let p = LabeledPoint {
                x: v(&[0.4, -3.0]),
                y,
            };
            let g = m.grad_point(&ParamVector::zeros(2), &p).unwrap();
            assert_eq!(g, &p.x * (-y / 2.0));
        }
        let bad = LabeledPoint {
            x: v(&[0.0, 1.0]),
            y: 0.0,
        };
        assert!(m.grad_point(&ParamVector::zeros(2), &bad).is_err());
    }

    #[test]
    fn dimension_mismatch_is_an_error() {
        let m = GaussianMeanModel::isotropic(2);
        assert!(matches!(
            m.grad_point(&ParamVector::zeros(2), &ParamVector::zeros(3)),
            Err(Error::DimensionMismatch {
                expected: 2,
                found: 3
            })
        ));
    }

    #[test]
    fn sigmoid_is_stable() {
        assert_eq!(sigmoid(0.0), 0.5);
        assert!(sigmoid(-800.0) >= 0.0 && sigmoid(-800.0) < 1e-300);
        assert_eq!(sigmoid(800.0), 1.0);
        assert!(softplus(800.0).is_finite() && (softplus(800.0) - 800.0).abs() < 1e-12);
        assert!((softplus(0.0) - 2f64.ln()).abs() < 1e-15);
    }

    #[test]
    fn prior_gradient_examples() {
        let p = GaussianPrior::standard(2);
        assert_eq!(
            p.grad_log_density(&ParamVector::zeros(2)),
            ParamVector::zeros(2)
        );
        assert_eq!(
            p.grad_log_density(&v(&[3.0, -1.0])).as_slice(),
            &[-3.0, 1.0]
        );
        let p = GaussianPrior::new(v(&[0.0]), SymMatrix::from_diagonal(&[4.0])).unwrap();
        assert!((p.grad_log_density(&v(&[8.0]))[0] + 2.0).abs() < 1e-15);
        let shifted = GaussianPrior::new(v(&[1.0, 2.0]), SymMatrix::identity(2)).unwrap();
        assert_eq!(
            shifted.grad_log_density(&v(&[1.0, 2.0])),
            ParamVector::zeros(2)
        );
    }

    #[test]
    fn rbme_posterior_examples() {
        let m = GaussianMeanModel::isotropic(2);
        let (mean, cov) = rbme_closed_posterior(&m, &[]).unwrap();
        assert_eq!(mean, ParamVector::zeros(2));
        assert!((cov.as_matrix() - DMatrix::identity(2, 2)).norm() < 1e-15);

        let (mean, cov) = rbme_closed_posterior(&m, &[v(&[2.0, 0.0])]).unwrap();
        assert!((mean - v(&[1.0, 0.0])).norm() < 1e-14);
        assert!((cov.as_matrix() - DMatrix::identity(2, 2) * 0.5).norm() < 1e-14);

        let m1 = GaussianMeanModel::isotropic(1);
        let (mean, cov) = rbme_closed_posterior(&m1, &[v(&[0.0]), v(&[2.0])]).unwrap();
        assert!((mean[0] - 2.0 / 3.0).abs() < 1e-14);
        assert!((cov.as_matrix()[(0, 0)] - 1.0 / 3.0).abs() < 1e-14);
    }

    #[test]
    fn theta_reg_examples() {
        let m = LinRegModel::standard(3);
        assert_eq!(rblr_theta_reg(&m, &[]).unwrap(), ParamVector::zeros(3));

        let flat = LinRegModel::new(1.0, v(&[0.0]), SymMatrix::from_diagonal(&[1e6])).unwrap();
        let data = [
            LabeledPoint {
                x: v(&[1.0]),
                y: 1.0,
            },
            LabeledPoint {
                x: v(&[1.0]),
                y: 3.0,
            },
        ];
        assert!((rblr_theta_reg(&flat, &data).unwrap()[0] - 2.0).abs() < 1e-4);

        let truth = v(&[0.5, -1.5]);
        let flat2 = LinRegModel::new(
            1.0,
            ParamVector::zeros(2),
            SymMatrix::scaled_identity(2, 1e6),
        )
        .unwrap();
        let xs = [[1.0, 0.0], [0.0, 1.0], [1.0, 1.0], [2.0, -1.0]];
        let data: Vec<_> = xs
            .iter()
            .map(|x| {
                let x = v(x);
                LabeledPoint {
                    y: x.dot(&truth),
                    x,
                }
            })
            .collect();
        assert!((rblr_theta_reg(&flat2, &data).unwrap() - truth).norm() < 1e-3);
    }

    #[test]
    fn smoothness_examples() {
        let opts = SmoothnessOptions::default();
        let z = vec![ParamVector::zeros(2); 100];
        let r = GaussianMeanModel::isotropic(2)
            .smoothness_report(&z, &opts)
            .unwrap()
            .unwrap();
        assert_eq!((r.m, r.l, r.kappa), (101.0, 101.0, 1.0));
        assert!((r.l_bar - 1.01).abs() < 1e-15);

        let m = GaussianMeanModel::new(
            SymMatrix::from_diagonal(&[1.0, 4.0]),
            ParamVector::zeros(2),
            SymMatrix::identity(2),
        )
        .unwrap();
        let r = m.smoothness_report(&z, &opts).unwrap().unwrap();
        assert!((r.m - 26.0).abs() < 1e-12 && (r.l - 101.0).abs() < 1e-12);

        // Σ̃_x = I from the two basis vectors repeated.
        let e1 = LabeledPoint {
            x: v(&[1.0, 0.0]),
            y: 1.0,
        };
        let e2 = LabeledPoint {
            x: v(&[0.0, 1.0]),
            y: -1.0,
        };
        let data: Vec<_> = (0..100)
            .map(|i| if i % 2 == 0 { e1.clone() } else { e2.clone() })
            .collect();
        // Each basis vector appears 50 times: Σ̃_x = I/2, so scale features by √2.
        let data: Vec<_> = data
            .into_iter()
            .map(|p| LabeledPoint {
                x: p.x * 2f64.sqrt(),
                y: p.y,
            })
            .collect();
        let r = LogisticModel::new(2)
            .smoothness_report(&data, &opts)
            .unwrap()
            .unwrap();
        assert!((r.l - 26.0).abs() < 1e-12 && (r.m - 1.0).abs() < 1e-15);
    }

    #[test]
    fn contamination_widens_curvature_bounds() {
        let z = vec![ParamVector::zeros(1); 100];
        let m = GaussianMeanModel::isotropic(1);
        let r = m
            .smoothness_report(&z, &SmoothnessOptions::with_eps(0.2))
            .unwrap()
            .unwrap();
        assert!((r.m - 81.0).abs() < 1e-12 && (r.l - 81.0).abs() < 1e-12);
        let opts = SmoothnessOptions { eps: 0.2, e_n: 0.1 };
        let r = m.smoothness_report(&z, &opts).unwrap().unwrap();
        assert!((r.m - 71.0).abs() < 1e-9 && (r.l - 91.0).abs() < 1e-9);
    }

    #[test]
    fn invalid_models_rejected() {
        assert!(LinRegModel::new(0.0, ParamVector::zeros(1), SymMatrix::identity(1)).is_err());
        let not_pd = SymMatrix::from_diagonal(&[1.0, -1.0]);
        assert!(
            GaussianMeanModel::new(not_pd, ParamVector::zeros(2), SymMatrix::identity(2)).is_err()
        );
        assert!(SmoothnessReport::new(2.0, 1.0, 10).is_err());
    }
}
