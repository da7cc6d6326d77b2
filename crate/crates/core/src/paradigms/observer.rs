use crate::dynamic::{DynamicDdmParams, SensitivityProfile};
use crate::error::{ModelError, Result};
use crate::fusion::CausalReadout;
use crate::prob::logistic;
use crate::twin::TwinParams;
use serde::{Deserialize, Serialize};

use super::trial::Side;

/// Ideal-observer parameters shared by the count-report and localization
/// paradigms. The sigmas are in task units: perceived-count units for count
/// reports, degrees for localization.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct CausalInferenceObserverParams {
    pub sigma_a: f64,
    pub sigma_v: f64,
    /// Diagonal boost of the count coupling prior; 1 = independent counts.
    pub coupling_kappa: f64,
    pub max_count: u32,
    /// Spatial generative model for localization trials.
    pub sigma_prior_deg: f64,
    pub p_common: f64,
    pub readout: CausalReadout,
}

impl Default for CausalInferenceObserverParams {
    fn default() -> Self {
        CausalInferenceObserverParams {
            sigma_a: 0.3,
            sigma_v: 1.0,
            coupling_kappa: 4.0,
            max_count: 4,
            sigma_prior_deg: 20.0,
            p_common: 0.8,
            readout: CausalReadout::ModelAveraging,
        }
    }
}

impl CausalInferenceObserverParams {
    pub fn validate(&self) -> Result<()> {
        if !(self.sigma_a > 0.0 && self.sigma_v > 0.0 && self.sigma_prior_deg > 0.0) {
            return Err(ModelError::invalid("observer sigmas must be > 0"));
        }
        if !(self.coupling_kappa >= 1.0) {
            return Err(ModelError::invalid("coupling kappa must be >= 1"));
        }
        if !(0.0..=1.0).contains(&self.p_common) {
            return Err(ModelError::invalid("p_common must be in [0, 1]"));
        }
        Ok(())
    }
}

/// Reliability-weighted temporal capture with unity-assumption gating:
/// perceived visual onsets are pulled toward the nearest tone when the
/// flankers form one auditory stream (equal feature tags) and fall inside
/// the coupling window.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct TemporalCaptureParams {
    /// Capture weight in [0, 1]: 0 leaves visual timing untouched.
    pub w_t: f64,
    pub coupling_window_ms: f64,
    /// When set, featurally distinct flankers disable capture entirely.
    pub featural_gating: bool,
    /// Observation noise on each perceived onset.
    pub noise_sd_ms: f64,
    /// Half-width of the ternary simultaneity band.
    pub simultaneity_band_ms: f64,
    /// Extra band width applied when exactly one flanker is present; a free
    /// mechanism for single-tone effects, off by default.
    pub single_tone_band_inflation_ms: f64,
    /// Prior-entry latency advantage for the attended side, if any.
    pub prior_entry_advantage_ms: f64,
    pub attended: Option<Side>,
    /// Logistic link for apparent-motion reports: P(motion) = 0.5 at the
    /// midpoint and `anchor_p` at `anchor_soa_ms`.
    pub motion_midpoint_ms: f64,
    pub motion_anchor_soa_ms: f64,
    pub motion_anchor_p: f64,
}

impl Default for TemporalCaptureParams {
    fn default() -> Self {
        TemporalCaptureParams {
            w_t: 0.5,
            coupling_window_ms: 200.0,
            featural_gating: true,
            noise_sd_ms: 60.0,
            simultaneity_band_ms: 25.0,
            single_tone_band_inflation_ms: 0.0,
            prior_entry_advantage_ms: 0.0,
            attended: None,
            motion_midpoint_ms: 500.0,
            motion_anchor_soa_ms: 333.0,
            motion_anchor_p: 0.9,
        }
    }
}

impl TemporalCaptureParams {
    pub fn validate(&self) -> Result<()> {
        if !(0.0..=1.0).contains(&self.w_t) {
            return Err(ModelError::invalid("capture weight must be in [0, 1]"));
        }
        if !(self.coupling_window_ms >= 0.0) {
            return Err(ModelError::invalid("coupling window must be >= 0"));
        }
        if !(self.noise_sd_ms > 0.0) {
            return Err(ModelError::invalid("onset noise sd must be > 0"));
        }
        if !(self.simultaneity_band_ms >= 0.0) || !(self.single_tone_band_inflation_ms >= 0.0) {
            return Err(ModelError::invalid("simultaneity band widths must be >= 0"));
        }
        if !(self.motion_anchor_p > 0.5 && self.motion_anchor_p < 1.0) {
            return Err(ModelError::invalid("motion anchor probability must be in (0.5, 1)"));
        }
        if !(self.motion_anchor_soa_ms < self.motion_midpoint_ms) {
            return Err(ModelError::invalid("motion anchor SOA must be below the midpoint"));
        }
        Ok(())
    }

    /// Probability of a directional-motion report at a perceived SOA.
    pub fn motion_probability(&self, perceived_soa_ms: f64) -> f64 {
        let tau = (self.motion_midpoint_ms - self.motion_anchor_soa_ms)
            / (self.motion_anchor_p / (1.0 - self.motion_anchor_p)).ln();
        logistic((self.motion_midpoint_ms - perceived_soa_ms) / tau)
    }
}

/// Suboptimal switching observers: each trial samples a single modality and
/// reports its rounded noisy count.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct SwitchingParams {
    pub sigma_a: f64,
    pub sigma_v: f64,
    /// Probability of sampling the auditory cue for the focal-switching
    /// variant; the modality-switching variant derives it from reliability.
    pub p_choose_auditory: f64,
    pub max_count: u32,
}

impl Default for SwitchingParams {
    fn default() -> Self {
        SwitchingParams { sigma_a: 0.3, sigma_v: 1.0, p_choose_auditory: 0.5, max_count: 4 }
    }
}

impl SwitchingParams {
    pub fn validate(&self) -> Result<()> {
        if !(self.sigma_a > 0.0 && self.sigma_v > 0.0) {
            return Err(ModelError::invalid("switching sigmas must be > 0"));
        }
        if !(0.0..=1.0).contains(&self.p_choose_auditory) {
            return Err(ModelError::invalid("p_choose_auditory must be in [0, 1]"));
        }
        Ok(())
    }

    /// Reliability-biased selection probability for the auditory cue.
    pub fn reliability_biased_p_auditory(&self) -> f64 {
        let (ra, rv) = (1.0 / (self.sigma_a * self.sigma_a), 1.0 / (self.sigma_v * self.sigma_v));
        ra / (ra + rv)
    }
}

/// Time-varying DDM observer for heading trials: per-modality sensitivity
/// profiles plus the accumulator parameters. The heading sign is taken from
/// each trial's correct answer.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct DynamicDdmObserverParams {
    pub params: DynamicDdmParams,
    pub visual_profile: SensitivityProfile,
    pub vestibular_profile: SensitivityProfile,
    pub dt_ms: f64,
}

/// The model an observer uses when simulating responses.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub enum ObserverModel {
    CausalInference(CausalInferenceObserverParams),
    TemporalCapture(TemporalCaptureParams),
    Twin(TwinParams),
    DynamicDdm(DynamicDdmObserverParams),
    FocalSwitching(SwitchingParams),
    ModalitySwitching(SwitchingParams),
}

impl ObserverModel {
    pub fn kind(&self) -> &'static str {
        match self {
            ObserverModel::CausalInference(_) => "causal_inference",
            ObserverModel::TemporalCapture(_) => "temporal_capture",
            ObserverModel::Twin(_) => "twin",
            ObserverModel::DynamicDdm(_) => "dynamic_ddm",
            ObserverModel::FocalSwitching(_) => "focal_switching",
            ObserverModel::ModalitySwitching(_) => "modality_switching",
        }
    }

    pub fn validate(&self) -> Result<()> {
        match self {
            ObserverModel::CausalInference(p) => p.validate(),
            ObserverModel::TemporalCapture(p) => p.validate(),
            ObserverModel::Twin(p) => p.validate(),
            ObserverModel::DynamicDdm(p) => p.params.validate(),
            ObserverModel::FocalSwitching(p) | ObserverModel::ModalitySwitching(p) => p.validate(),
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn motion_link_hits_its_anchors() {
        let p = TemporalCaptureParams::default();
        assert!((p.motion_probability(500.0) - 0.5).abs() < 1e-12);
        assert!((p.motion_probability(333.0) - 0.9).abs() < 1e-12);
        // Near-symmetric tail at the far anchor.
        let far = p.motion_probability(666.0);
        assert!((far - 0.1).abs() < 0.005, "p(666) = {far}");
    }

    #[test]
    fn reliability_bias_prefers_the_sharper_cue() {
        let p = SwitchingParams::default();
        // sigma_a = 0.3 vs sigma_v = 1.0: audio reliability dominates.
        let pa = p.reliability_biased_p_auditory();
        assert!(pa > 0.9, "p_a = {pa}");
    }

    #[test]
    fn validation_catches_bad_fields() {
        let mut p = TemporalCaptureParams { w_t: 1.5, ..Default::default() };
        assert!(p.validate().is_err());
        p.w_t = 0.5;
        p.noise_sd_ms = 0.0;
        assert!(p.validate().is_err());
        let c = CausalInferenceObserverParams { coupling_kappa: 0.5, ..Default::default() };
        assert!(c.validate().is_err());
    }
}
