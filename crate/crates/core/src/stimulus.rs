//! Shared domain types: physical stimulus events and unimodal internal
//! estimates. All times are milliseconds, all locations degrees of azimuth.

use crate::error::{ModelError, Result};
use serde::{Deserialize, Serialize};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum Modality {
    Auditory,
    Visual,
    Tactile,
    Vestibular,
}

impl Modality {
    pub fn short(&self) -> &'static str {
        match self {
            Modality::Auditory => "aud",
            Modality::Visual => "vis",
            Modality::Tactile => "tac",
            Modality::Vestibular => "ves",
        }
    }

    pub fn parse_short(s: &str) -> Option<Modality> {
        match s {
            "aud" => Some(Modality::Auditory),
            "vis" => Some(Modality::Visual),
            "tac" => Some(Modality::Tactile),
            "ves" => Some(Modality::Vestibular),
            _ => None,
        }
    }
}

/// One physical stimulus: a pulse (or pulse tag) in one modality.
///
/// Two events with equal `feature_tag` count as featurally identical for
/// unity-assumption gating; distinct tags mark stimuli an observer would
/// attribute to different sources (sine vs noise burst).
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct StimulusEvent {
    pub modality: Modality,
    pub onset_ms: f64,
    /// Azimuth in degrees; `None` for spatially neutral stimuli.
    pub location_deg: Option<f64>,
    pub feature_tag: u32,
    /// Number of pulses this event contributes.
    pub count: u32,
}

impl StimulusEvent {
    pub fn new(modality: Modality, onset_ms: f64) -> Result<Self> {
        if !onset_ms.is_finite() {
            return Err(ModelError::invalid("stimulus onset must be finite"));
        }
        Ok(StimulusEvent {
            modality,
            onset_ms,
            location_deg: None,
            feature_tag: 0,
            count: 1,
        })
    }

    pub fn at_location(mut self, deg: f64) -> Self {
        self.location_deg = Some(deg);
        self
    }

    pub fn with_feature(mut self, tag: u32) -> Self {
        self.feature_tag = tag;
        self
    }

    pub fn with_count(mut self, count: u32) -> Self {
        self.count = count;
        self
    }
}

/// Mean and standard deviation of a unimodal internal measurement.
///
/// `sd = +inf` is accepted and denotes an uninformative estimate.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct GaussianEstimate {
    pub mean: f64,
    pub sd: f64,
}

impl GaussianEstimate {
    pub fn new(mean: f64, sd: f64) -> Result<Self> {
        if !mean.is_finite() {
            return Err(ModelError::invalid("estimate mean must be finite"));
        }
        if !(sd > 0.0) {
            return Err(ModelError::invalid(format!("estimate sd must be > 0, got {sd}")));
        }
        Ok(GaussianEstimate { mean, sd })
    }

    #[inline]
    pub fn variance(&self) -> f64 {
        self.sd * self.sd
    }

    /// Precision 1/sd^2; zero for an uninformative estimate.
    #[inline]
    pub fn precision(&self) -> f64 {
        if self.sd.is_infinite() {
            0.0
        } else {
            1.0 / self.variance()
        }
    }
}
