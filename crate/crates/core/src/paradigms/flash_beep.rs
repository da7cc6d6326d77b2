//! Flash-beep count paradigms: fission (extra beeps add illusory flashes)
//! and fusion (a lone beep collapses a flash pair).

use crate::error::{ModelError, Result};
use crate::fusion::{count_posterior, CountPrior};
use crate::rng::RngStream;
use crate::stimulus::{Modality, StimulusEvent};

use super::observer::{CausalInferenceObserverParams, SwitchingParams};
use super::trial::{Response, Task, TrialRecord, TrialSpec};

/// Build a flash-beep count trial.
///
/// Flashes start at t = 0 and repeat every `tone_soa_ms`; the beep train
/// shares that spacing and is centered on the midpoint of the flash train
/// (for the single-flash trial the tones straddle the flash: one before
/// onset, one after offset).
pub fn make_flash_beep_trial(
    n_flashes: u32,
    n_beeps: u32,
    flash_ms: f64,
    tone_soa_ms: f64,
) -> Result<TrialSpec> {
    if n_flashes == 0 {
        return Err(ModelError::invalid("need at least one flash"));
    }
    if !(flash_ms >= 0.0) || !(tone_soa_ms >= 0.0) {
        return Err(ModelError::invalid("flash duration and tone SOA must be >= 0"));
    }
    let mut stimuli = Vec::new();
    for k in 0..n_flashes {
        stimuli.push(StimulusEvent::new(Modality::Visual, k as f64 * tone_soa_ms)?);
    }
    let visual_mid = ((n_flashes - 1) as f64 * tone_soa_ms + flash_ms) / 2.0;
    for j in 0..n_beeps {
        let onset = visual_mid + (j as f64 - (n_beeps - 1) as f64 / 2.0) * tone_soa_ms;
        stimuli.push(StimulusEvent::new(Modality::Auditory, onset)?);
    }
    TrialSpec::new(stimuli, Task::CountReport, Response::Count(n_flashes))
}

/// Ideal-observer count report: noisy count measurements feed the joint
/// posterior over (Z_A, Z_V); the report is the visual marginal mode.
/// Draw order: auditory measurement, then visual.
pub fn simulate_flash_beep(
    spec: &TrialSpec,
    params: &CausalInferenceObserverParams,
    rng: &mut RngStream,
) -> Result<TrialRecord> {
    params.validate()?;
    if spec.task != Task::CountReport {
        return Err(ModelError::IncompatibleObserver(format!(
            "causal-inference count observer cannot run a {} task",
            spec.task.name()
        )));
    }
    let n_a = spec.pulse_count(Modality::Auditory) as f64;
    let n_v = spec.pulse_count(Modality::Visual) as f64;
    let a_obs = rng.normal(n_a, params.sigma_a);
    let v_obs = rng.normal(n_v, params.sigma_v);
    let prior = CountPrior::diagonal_coupling(params.max_count, params.coupling_kappa)?;
    let posterior = count_posterior(a_obs, v_obs, params.sigma_a, params.sigma_v, &prior)?;
    TrialRecord::new(
        spec.clone(),
        Response::Count(posterior.mode_v()),
        None,
        (rng.master_seed, rng.stream_index),
    )
}

/// Switching observer: sample one modality (a uniform draw first), then
/// report its rounded noisy count clamped to the count grid.
pub fn simulate_count_switching(
    spec: &TrialSpec,
    params: &SwitchingParams,
    reliability_biased: bool,
    rng: &mut RngStream,
) -> Result<TrialRecord> {
    params.validate()?;
    if spec.task != Task::CountReport {
        return Err(ModelError::IncompatibleObserver(format!(
            "switching observer cannot run a {} task",
            spec.task.name()
        )));
    }
    let p_aud = if reliability_biased {
        params.reliability_biased_p_auditory()
    } else {
        params.p_choose_auditory
    };
    let use_auditory = rng.bernoulli(p_aud);
    let (truth, sigma) = if use_auditory {
        (spec.pulse_count(Modality::Auditory) as f64, params.sigma_a)
    } else {
        (spec.pulse_count(Modality::Visual) as f64, params.sigma_v)
    };
    let obs = rng.normal(truth, sigma);
    let report = obs.round().clamp(0.0, params.max_count as f64) as u32;
    TrialRecord::new(
        spec.clone(),
        Response::Count(report),
        None,
        (rng.master_seed, rng.stream_index),
    )
}
