//! Unadjusted Langevin chains: plain ULA, Rob-ULA, and a bare gradient
//! harness for synthetic targets.
//!
//! Every chain starts from `θ₀ ~ N(0, β·I)` (or an explicit start) and iterates
//! `θ ← θ - η·∇f(θ) + √(2η)·ξ` with a constant step size. The samplers only
//! see observations, never corruption flags.

use std::fmt;
use std::str::FromStr;
use std::time::{Duration, Instant};

use nalgebra::DMatrix;
use serde::{Deserialize, Deserializer, Serialize, Serializer};

use crate::error::{Error, Result};
use crate::linalg::{gaussian_vector, ParamVector, RngHandle};
use crate::models::{Model, SmoothnessReport};
use crate::robust_mean::{robust_gradient_estimate, SampleSet};

const DIVERGENCE_NORM: f64 = 1e8;

/// A positive real setting that may be derived from the model's curvature.
#[derive(Debug, Clone, Copy, PartialEq)]
pub enum Setting {
    Auto,
    Fixed(f64),
}

impl Setting {
    pub fn value(&self) -> Option<f64> {
        match self {
            Setting::Auto => None,
            Setting::Fixed(v) => Some(*v),
        }
    }
}

impl fmt::Display for Setting {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Setting::Auto => f.write_str("auto"),
            Setting::Fixed(v) => write!(f, "{v}"),
        }
    }
}

/// Serialized as the string `"auto"` or a plain number.
impl Serialize for Setting {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        match self {
            Setting::Auto => s.serialize_str("auto"),
            Setting::Fixed(v) => s.serialize_f64(*v),
        }
    }
}

impl<'de> Deserialize<'de> for Setting {
    fn deserialize<D: Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        #[derive(Deserialize)]
        #[serde(untagged)]
        enum Raw {
            Number(f64),
            Text(String),
        }
        match Raw::deserialize(d)? {
            Raw::Number(v) => Ok(Setting::Fixed(v)),
            Raw::Text(t) => t.parse().map_err(serde::de::Error::custom),
        }
    }
}

impl FromStr for Setting {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        if s.eq_ignore_ascii_case("auto") {
            return Ok(Setting::Auto);
        }
        s.parse::<f64>()
            .map(Setting::Fixed)
            .map_err(|_| Error::Config(format!("expected 'auto' or a number, got '{s}'")))
    }
}

#[derive(Debug, Clone)]
pub struct ChainConfig {
    /// η
    pub step_size: Setting,
    /// β, the variance of the Gaussian initialization.
    pub init_scale: Setting,
    pub burn_in: usize,
    pub n_samples: usize,
    pub seed: u64,
    /// Contamination level handed to the robust gradient estimator.
    pub eps: f64,
    /// Keep every iterate, including `θ₀`, in [`ChainResult::all_iterates`].
    pub keep_all: bool,
    /// Start here instead of drawing `θ₀`.
    pub initial: Option<ParamVector>,
}

impl Default for ChainConfig {
    fn default() -> Self {
        Self {
            step_size: Setting::Auto,
            init_scale: Setting::Auto,
            burn_in: 0,
            n_samples: 1,
            seed: 0,
            eps: 0.0,
            keep_all: false,
            initial: None,
        }
    }
}

#[derive(Debug, Clone)]
pub struct ChainResult {
    /// Post-burn-in iterates.
    pub samples: Vec<ParamVector>,
    pub all_iterates: Option<Vec<ParamVector>>,
    pub wall_time: Duration,
    pub step_size: f64,
    pub init_scale: f64,
}

/// Replaces `Auto` settings with `η = β = 1/(n·L̄) = 1/L`.
pub fn resolve_defaults(
    cfg: &ChainConfig,
    report: Option<&SmoothnessReport>,
    n: usize,
) -> Result<ChainConfig> {
    let auto = || -> Result<f64> {
        let r = report.ok_or_else(|| {
            Error::Config("step size 'auto' needs a smoothness report for this model".into())
        })?;
        Ok(1.0 / (n.max(1) as f64 * r.l_bar))
    };
    let resolve = |s: Setting, name: &str| -> Result<f64> {
        let v = match s {
            Setting::Auto => auto()?,
            Setting::Fixed(v) => v,
        };
        if !(v > 0.0 && v.is_finite()) {
            return Err(Error::Config(format!(
                "{name} must be a positive number, got {v}"
            )));
        }
        Ok(v)
    };
    Ok(ChainConfig {
        step_size: Setting::Fixed(resolve(cfg.step_size, "step_size")?),
        init_scale: Setting::Fixed(resolve(cfg.init_scale, "init_scale")?),
        ..cfg.clone()
    })
}

fn resolved(cfg: &ChainConfig) -> Result<(f64, f64)> {
    match (cfg.step_size, cfg.init_scale) {
        (Setting::Fixed(eta), Setting::Fixed(beta)) if eta > 0.0 && beta > 0.0 => Ok((eta, beta)),
        _ => Err(Error::Config(
            "chain settings must be resolved to positive numbers before running".into(),
        )),
    }
}

/// Runs `θ ← θ - η·drift(θ) + √(2η)·ξ` for `burn_in + n_samples` steps.
fn run_chain<F>(d: usize, cfg: &ChainConfig, mut drift: F) -> Result<ChainResult>
where
    F: FnMut(&ParamVector) -> Result<ParamVector>,
{
    let (eta, beta) = resolved(cfg)?;
    if cfg.n_samples == 0 {
        return Err(Error::Config("n_samples must be at least 1".into()));
    }
    if d == 0 {
        return Err(Error::InvalidInput(
            "parameter dimension must be at least 1".into(),
        ));
    }
    let start = Instant::now();
    let mut rng = RngHandle::new(cfg.seed);
    let init_noise = gaussian_vector(&mut rng, d);
    let mut theta = match &cfg.initial {
        Some(init) if init.len() != d => {
            return Err(Error::DimensionMismatch {
                expected: d,
                found: init.len(),
            })
        }
        Some(init) => init.clone(),
        None => init_noise * beta.sqrt(),
    };

    let total = cfg.burn_in + cfg.n_samples;
    let noise_scale = (2.0 * eta).sqrt();
    let mut samples = Vec::with_capacity(cfg.n_samples);
    let mut all = cfg.keep_all.then(|| {
        let mut v = Vec::with_capacity(total + 1);
        v.push(theta.clone());
        v
    });

    for k in 1..=total {
        let g = drift(&theta)?;
        let xi = gaussian_vector(&mut rng, d);
        theta.axpy(-eta, &g, 1.0);
        theta.axpy(noise_scale, &xi, 1.0);
        if theta.iter().any(|v| !v.is_finite()) || theta.norm() > DIVERGENCE_NORM {
            return Err(Error::Diverged { iteration: k });
        }
        if let Some(all) = all.as_mut() {
            all.push(theta.clone());
        }
        if k > cfg.burn_in {
            samples.push(theta.clone());
        }
    }

    Ok(ChainResult {
        samples,
        all_iterates: all,
        wall_time: start.elapsed(),
        step_size: eta,
        init_scale: beta,
    })
}

/// Langevin chain on an arbitrary potential gradient `∇f`.
pub fn run_gradient_chain<G>(mut grad: G, d: usize, cfg: &ChainConfig) -> Result<ChainResult>
where
    G: FnMut(&ParamVector) -> ParamVector,
{
    run_chain(d, cfg, |theta| Ok(grad(theta)))
}

/// Plain ULA on the full posterior: drift `Σᵢ∇gᵢ(θ) - ∇log p(θ)`.
pub fn run_ula<M: Model>(model: &M, obs: &[M::Obs], cfg: &ChainConfig) -> Result<ChainResult> {
    let d = model.dim();
    run_chain(d, cfg, |theta| {
        let mut sum = ParamVector::zeros(d);
        for z in obs {
            sum += model.grad_point(theta, z)?;
        }
        Ok(sum - model.grad_log_prior(theta))
    })
}

/// Rob-ULA: drift `n·RobustMean({∇gᵢ(θ)}, ε) - ∇log p(θ)`. The prior term is
/// exact; only the likelihood gradients are robustified.
pub fn run_rob_ula<M: Model>(model: &M, obs: &[M::Obs], cfg: &ChainConfig) -> Result<ChainResult> {
    if !(0.0..1.0).contains(&cfg.eps) {
        return Err(Error::Config(format!(
            "contamination level must lie in [0, 1), got {}",
            cfg.eps
        )));
    }
    if obs.is_empty() {
        return Err(Error::InvalidInput(
            "Rob-ULA needs at least one observation".into(),
        ));
    }
    let d = model.dim();
    let n = obs.len();
    let mut grads = DMatrix::zeros(d, n);
    run_chain(d, cfg, |theta| {
        for (i, z) in obs.iter().enumerate() {
            grads.set_column(i, &model.grad_point(theta, z)?);
        }
        let samples = SampleSet::from_columns(grads.clone())?;
        let robust = robust_gradient_estimate(&samples, cfg.eps)?;
        Ok(robust * n as f64 - model.grad_log_prior(theta))
    })
}
