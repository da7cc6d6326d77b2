//! Multisensory-integration models and the audio-visual paradigms they
//! explain.
//!
//! The crate covers two model families and the experimental machinery around
//! them:
//!
//! - **Accumulators** ([`accumulators`]): the race model, the drift-diffusion
//!   model with closed-form mean RT and error rate plus Monte-Carlo
//!   simulation, and the coactivation model that sums unimodal evidence.
//! - **Bayesian observers** ([`fusion`], [`twin`], [`dynamic`]):
//!   reliability-weighted cue combination, the ideal observer over discrete
//!   source counts (bimodal and trimodal), common-cause inference for
//!   spatial localization, the time-window-of-integration race/integration
//!   hybrid, and a time-varying-sensitivity accumulator.
//! - **Paradigms** ([`paradigms`]): flash-beep fission/fusion counts,
//!   spatial ventriloquism, flanker-tone temporal-order judgements, auditory
//!   capture of apparent motion, simultaneity judgements, and heading
//!   discrimination, all driven by pluggable observer models through a
//!   deterministic seeded block runner.
//! - **Fitting** ([`fit`]): maximum-likelihood estimation with a bounded
//!   Nelder-Mead simplex, Latin-hypercube restarts, and AIC model ranking.
//!
//! Everything that draws randomness does so through counter-based
//! substreams ([`rng`]), so batch output is bit-identical for a fixed master
//! seed regardless of thread count or scheduling.

pub mod accumulators;
pub mod dynamic;
pub mod error;
pub mod fit;
pub mod fusion;
pub mod io;
pub mod paradigms;
pub mod prob;
pub mod rng;
pub mod stimulus;
pub mod twin;

pub use error::{ModelError, Result};
pub use rng::{substream, RngStream};
pub use stimulus::{GaussianEstimate, Modality, StimulusEvent};
