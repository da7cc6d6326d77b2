//! Versioned JSON run configuration. Command-line flags override config
//! fields; scenario defaults fill whatever remains.

use std::collections::BTreeMap;
use std::path::Path;

use percept_fusion::error::{ModelError, Result};
use percept_fusion::paradigms::{
    make_apparent_motion_trial, make_flash_beep_trial, make_heading_trial,
    make_simultaneity_trial, make_ternary_trial, make_toj_trial, make_ventriloquist_trial,
    ObserverModel, Side, ToneConfig, TrialSpec,
};
use serde::{Deserialize, Serialize};

pub const SCHEMA_VERSION: u32 = 1;

#[derive(Debug, Clone, Deserialize, Default)]
#[serde(deny_unknown_fields)]
pub struct RunConfig {
    #[serde(default = "default_schema_version")]
    pub schema_version: u32,
    pub scenario: Option<String>,
    pub seed: Option<u64>,
    pub n_reps: Option<u64>,
    pub out_dir: Option<String>,
    #[serde(default)]
    pub overrides: BTreeMap<String, f64>,
    pub observer: Option<ObserverModel>,
    #[serde(default)]
    pub trials: Vec<ParadigmConfig>,
    #[serde(default)]
    pub sweep_axes: Vec<AxisConfig>,
    pub data: Option<String>,
    pub family: Option<String>,
    pub n_restarts: Option<usize>,
}

fn default_schema_version() -> u32 {
    SCHEMA_VERSION
}

#[derive(Debug, Clone, Deserialize, Serialize)]
pub struct AxisConfig {
    pub param: String,
    pub min: f64,
    pub max: f64,
    pub steps: usize,
}

/// Declarative trial construction for the `simulate` command.
#[derive(Debug, Clone, Deserialize, Serialize)]
#[serde(tag = "paradigm", rename_all = "snake_case")]
pub enum ParadigmConfig {
    FlashBeep {
        n_flashes: u32,
        n_beeps: u32,
        #[serde(default = "default_flash_ms")]
        flash_ms: f64,
        #[serde(default = "default_tone_soa_ms")]
        tone_soa_ms: f64,
    },
    Ventriloquist {
        audio_deg: f64,
        visual_deg: f64,
    },
    Toj {
        first: Side,
        v_soa_ms: f64,
        tones: Option<ToneConfig>,
        #[serde(default)]
        ternary: bool,
        #[serde(default)]
        distinct_tones: bool,
    },
    ApparentMotion {
        v_soa_ms: f64,
        a_soa_ms: Option<f64>,
    },
    Simultaneity {
        audio_onset_ms: f64,
        visual_onset_ms: f64,
    },
    Heading {
        heading: Side,
    },
}

fn default_flash_ms() -> f64 {
    17.0
}

fn default_tone_soa_ms() -> f64 {
    57.0
}

impl ParadigmConfig {
    pub fn build(&self) -> Result<TrialSpec> {
        match self {
            ParadigmConfig::FlashBeep { n_flashes, n_beeps, flash_ms, tone_soa_ms } => {
                make_flash_beep_trial(*n_flashes, *n_beeps, *flash_ms, *tone_soa_ms)
            }
            ParadigmConfig::Ventriloquist { audio_deg, visual_deg } => {
                make_ventriloquist_trial(*audio_deg, *visual_deg)
            }
            ParadigmConfig::Toj { first, v_soa_ms, tones, ternary, distinct_tones } => {
                let tones = tones.unwrap_or(ToneConfig::None);
                let spec = if *ternary {
                    make_ternary_trial(*first, *v_soa_ms, tones)?
                } else {
                    make_toj_trial(*first, *v_soa_ms, tones)?
                };
                Ok(if *distinct_tones { spec.with_distinct_tone_features() } else { spec })
            }
            ParadigmConfig::ApparentMotion { v_soa_ms, a_soa_ms } => {
                make_apparent_motion_trial(*v_soa_ms, *a_soa_ms)
            }
            ParadigmConfig::Simultaneity { audio_onset_ms, visual_onset_ms } => {
                make_simultaneity_trial(*audio_onset_ms, *visual_onset_ms)
            }
            ParadigmConfig::Heading { heading } => make_heading_trial(*heading),
        }
    }
}

pub fn load_config(path: &Path) -> Result<RunConfig> {
    let text = std::fs::read_to_string(path).map_err(|e| {
        ModelError::InvalidInput(format!("cannot read config {}: {e}", path.display()))
    })?;
    let config: RunConfig = serde_json::from_str(&text).map_err(|e| {
        ModelError::InvalidInput(format!("config {}: {e}", path.display()))
    })?;
    if config.schema_version != SCHEMA_VERSION {
        return Err(ModelError::InvalidInput(format!(
            "config {}: unsupported schema_version {} (expected {SCHEMA_VERSION})",
            path.display(),
            config.schema_version
        )));
    }
    Ok(config)
}

/// Parse `key=value` override pairs; dashes normalize to underscores.
pub fn parse_set_args(args: &[String]) -> Result<BTreeMap<String, f64>> {
    let mut out = BTreeMap::new();
    for raw in args {
        let (key, value) = raw.split_once('=').ok_or_else(|| {
            ModelError::InvalidInput(format!("--set expects key=value, got {raw:?}"))
        })?;
        let value: f64 = value.parse().map_err(|_| {
            ModelError::InvalidInput(format!("--set {key}: {value:?} is not a number"))
        })?;
        out.insert(key.trim().replace('-', "_"), value);
    }
    Ok(out)
}
