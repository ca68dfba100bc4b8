//! Robust Langevin sampling under Huber ε-contamination.
//!
//! [`samplers::run_rob_ula`] replaces the summed likelihood gradient of the
//! unadjusted Langevin algorithm with `n` times a robust mean of per-point
//! gradients ([`robust_mean::robust_gradient_estimate`]), so that a minority
//! of adversarial observations cannot drag the chain away from the posterior
//! of the clean data.

pub mod contamination;
pub mod error;
pub mod experiment;
pub mod linalg;
pub mod metrics;
pub mod models;
pub mod robust_mean;
pub mod samplers;

pub use error::{Error, Result};
