//! Time-window-of-integration model: a race between peripheral channels
//! followed by a second stage whose multisensory integration is gated by an
//! adaptive temporal window.
//!
//! Peripheral latencies are exponential. The window adapts linearly to the
//! relative reliability of the losing modality, so an unreliable winner
//! holds the window open longer for the reliable loser. The second stage
//! adds an exponentially distributed processing time whose mean is shorter
//! on integrated trials, plus exponential noise with a common mean.

use crate::error::{ModelError, Result};
use crate::rng::RngStream;
use crate::stimulus::{Modality, StimulusEvent};
use serde::{Deserialize, Serialize};

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct TwinParams {
    /// Peripheral latency rates (1/ms).
    pub rate_a: f64,
    pub rate_v: f64,
    pub base_window_ms: f64,
    /// Gain of the reliability-driven window adaptation; 0 disables it.
    pub adapt_gain: f64,
    pub reliability_a: f64,
    pub reliability_v: f64,
    /// Mean second-stage processing times.
    pub second_stage_unimodal_ms: f64,
    pub second_stage_bimodal_ms: f64,
    /// Mean of the exponential second-stage noise added on every trial.
    pub second_stage_noise_ms: f64,
}

impl TwinParams {
    #[allow(clippy::too_many_arguments)]
    pub fn new(
        rate_a: f64,
        rate_v: f64,
        base_window_ms: f64,
        adapt_gain: f64,
        reliability_a: f64,
        reliability_v: f64,
        second_stage_unimodal_ms: f64,
        second_stage_bimodal_ms: f64,
    ) -> Result<Self> {
        let p = TwinParams {
            rate_a,
            rate_v,
            base_window_ms,
            adapt_gain,
            reliability_a,
            reliability_v,
            second_stage_unimodal_ms,
            second_stage_bimodal_ms,
            second_stage_noise_ms: 20.0,
        };
        p.validate()?;
        Ok(p)
    }

    pub fn with_noise(mut self, noise_ms: f64) -> Result<Self> {
        if !(noise_ms >= 0.0) {
            return Err(ModelError::invalid("second-stage noise must be >= 0"));
        }
        self.second_stage_noise_ms = noise_ms;
        self.validate()?;
        Ok(self)
    }

    pub fn validate(&self) -> Result<()> {
        for (name, v) in [
            ("rate_a", self.rate_a),
            ("rate_v", self.rate_v),
            ("reliability_a", self.reliability_a),
            ("reliability_v", self.reliability_v),
            ("second_stage_unimodal_ms", self.second_stage_unimodal_ms),
            ("second_stage_bimodal_ms", self.second_stage_bimodal_ms),
        ] {
            if !(v > 0.0) || !v.is_finite() {
                return Err(ModelError::invalid(format!("{name} must be > 0, got {v}")));
            }
        }
        if !(self.base_window_ms >= 0.0) {
            return Err(ModelError::invalid("base window must be >= 0"));
        }
        if !(self.adapt_gain >= 0.0) {
            return Err(ModelError::invalid("adapt gain must be >= 0"));
        }
        if self.second_stage_bimodal_ms > self.second_stage_unimodal_ms {
            return Err(ModelError::invalid(
                "integration must not be slower than unimodal processing",
            ));
        }
        Ok(())
    }

    fn reliability(&self, m: Modality) -> f64 {
        match m {
            Modality::Auditory => self.reliability_a,
            _ => self.reliability_v,
        }
    }
}

/// Integration window given which modality won the peripheral race.
///
/// window = base * (1 + gain * max(0, r_loser - r_winner) / r_winner):
/// strictly larger than base exactly when the loser is the more reliable
/// modality and the gain is positive.
pub fn twin_window(winner: Modality, p: &TwinParams) -> f64 {
    let (r_win, r_lose) = match winner {
        Modality::Auditory => (p.reliability_a, p.reliability_v),
        _ => (p.reliability_v, p.reliability_a),
    };
    p.base_window_ms * (1.0 + p.adapt_gain * ((r_lose - r_win).max(0.0) / r_win))
}

/// Outcome of one TWIN trial.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct TwinOutcome {
    pub integrated: bool,
    pub rt_ms: f64,
    pub winner: Modality,
}

/// Run one trial: race the peripheral channels, gate integration on whether
/// the loser arrived inside the winner's adapted window, then add the second
/// stage. Draw order: auditory latency, visual latency, second-stage noise.
pub fn twin_trial(
    stim_a: &StimulusEvent,
    stim_v: &StimulusEvent,
    p: &TwinParams,
    rng: &mut RngStream,
) -> Result<TwinOutcome> {
    p.validate()?;
    if stim_a.modality != Modality::Auditory || stim_v.modality != Modality::Visual {
        return Err(ModelError::invalid("twin_trial expects one auditory and one visual event"));
    }
    let arrival_a = stim_a.onset_ms + rng.exponential_rate(p.rate_a);
    let arrival_v = stim_v.onset_ms + rng.exponential_rate(p.rate_v);
    let (winner, win_t, lose_t) = if arrival_a <= arrival_v {
        (Modality::Auditory, arrival_a, arrival_v)
    } else {
        (Modality::Visual, arrival_v, arrival_a)
    };
    let window = twin_window(winner, p);
    let integrated = lose_t - win_t <= window;
    let stage_mean = if integrated {
        p.second_stage_bimodal_ms
    } else {
        p.second_stage_unimodal_ms
    };
    let rt_ms = win_t + stage_mean + rng.exponential_mean(p.second_stage_noise_ms);
    Ok(TwinOutcome { integrated, rt_ms, winner })
}

/// Reliability ordering check used by the window law: the window exceeds the
/// base exactly when the less reliable modality won.
pub fn window_enlarged(winner: Modality, p: &TwinParams) -> bool {
    let loser = match winner {
        Modality::Auditory => Modality::Visual,
        _ => Modality::Auditory,
    };
    p.adapt_gain > 0.0 && p.reliability(loser) > p.reliability(winner)
}
