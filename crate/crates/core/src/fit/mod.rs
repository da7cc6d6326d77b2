//! Maximum-likelihood estimation of observer parameters from trial records:
//! analytic or quadrature response probabilities, a bounded derivative-free
//! simplex optimizer with Latin-hypercube restarts, and AIC model ranking.

mod compare;
mod family;
mod nll;
mod simplex;

pub use compare::{compare_models, ModelRanking};
pub use family::ObserverFamily;
pub use nll::{nll, response_probability, PROBABILITY_FLOOR};
pub use simplex::{minimize, FitResult, ParamSpace, Transform};

use crate::error::Result;

/// Fit an observer family to data by maximum likelihood from `n_restarts`
/// Latin-hypercube starts. Fully deterministic for a fixed seed.
pub fn fit_mle(
    family: &ObserverFamily,
    data: &[crate::paradigms::TrialRecord],
    space: &ParamSpace,
    n_restarts: usize,
    seed: u64,
) -> Result<FitResult> {
    // Surface structural problems (empty data, observer/task mismatch) as
    // themselves instead of burying them in an all-starts-failed report.
    let mid_internal: Vec<f64> = space
        .to_internal(&space.lower)
        .iter()
        .zip(space.to_internal(&space.upper))
        .map(|(lo, hi)| (lo + hi) / 2.0)
        .collect();
    let midpoint = space.from_internal(&mid_internal);
    if let Err(e) = nll(family, &midpoint, data) {
        match e {
            crate::error::ModelError::InvalidInput(_)
            | crate::error::ModelError::IncompatibleObserver(_)
            | crate::error::ModelError::MalformedData { .. } => return Err(e),
            _ => {}
        }
    }
    let family = family.clone();
    let data_ref = data;
    minimize(
        move |params| nll(&family, params, data_ref),
        space,
        n_restarts,
        seed,
    )
}
