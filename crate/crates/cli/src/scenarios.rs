//! The illusion scenario registry: each entry runs a catalogued audio-visual
//! effect with documented defaults, reports rate-style metrics, and names a
//! default sweep axis for the rate-vs-parameter chart.

use std::collections::BTreeMap;

use percept_fusion::error::{ModelError, Result};
use percept_fusion::fusion::CausalReadout;
use percept_fusion::paradigms::{
    make_apparent_motion_trial, make_flash_beep_trial, make_ternary_trial, make_toj_trial,
    make_ventriloquist_trial, run_block, CausalInferenceObserverParams, ObserverModel, Response,
    Side, TemporalCaptureParams, ToneConfig, TrialRecord,
};

pub struct SweepAxis {
    pub param: &'static str,
    pub min: f64,
    pub max: f64,
    pub steps: usize,
}

pub struct ScenarioOutput {
    pub records: Vec<TrialRecord>,
    pub params: BTreeMap<String, f64>,
    pub metrics: BTreeMap<String, f64>,
}

pub struct Scenario {
    pub name: &'static str,
    pub description: &'static str,
    /// Override keys this scenario honors.
    pub allowed: &'static [&'static str],
    pub primary_metric: &'static str,
    pub effect_direction: &'static str,
    /// Encodes a model prediction rather than an established effect.
    pub prediction_only: bool,
    pub default_sweep: Option<SweepAxis>,
    runner: fn(&BTreeMap<String, f64>, u64, u64) -> Result<ScenarioOutput>,
}

impl Scenario {
    pub fn run(
        &self,
        overrides: &BTreeMap<String, f64>,
        seed: u64,
        n_reps: u64,
    ) -> Result<ScenarioOutput> {
        for key in overrides.keys() {
            if !self.allowed.contains(&key.as_str()) {
                return Err(ModelError::InvalidInput(format!(
                    "scenario {} does not take parameter {key:?}; allowed: {}",
                    self.name,
                    self.allowed.join(", ")
                )));
            }
        }
        (self.runner)(overrides, seed, n_reps)
    }
}

fn get(ov: &BTreeMap<String, f64>, key: &str, default: f64) -> f64 {
    ov.get(key).copied().unwrap_or(default)
}

fn rate(records: &[TrialRecord], pred: impl Fn(&TrialRecord) -> bool) -> f64 {
    if records.is_empty() {
        return 0.0;
    }
    records.iter().filter(|r| pred(r)).count() as f64 / records.len() as f64
}

fn params_map(pairs: &[(&str, f64)]) -> BTreeMap<String, f64> {
    pairs.iter().map(|(k, v)| (k.to_string(), *v)).collect()
}

fn metrics_map(pairs: &[(&str, f64)]) -> BTreeMap<String, f64> {
    params_map(pairs)
}

fn count_observer(ov: &BTreeMap<String, f64>) -> CausalInferenceObserverParams {
    CausalInferenceObserverParams {
        sigma_a: get(ov, "sigma_a", 0.3),
        sigma_v: get(ov, "sigma_v", 1.0),
        coupling_kappa: get(ov, "kappa", 4.0),
        ..Default::default()
    }
}

fn run_fission(ov: &BTreeMap<String, f64>, seed: u64, reps: u64) -> Result<ScenarioOutput> {
    let observer = count_observer(ov);
    let spec = make_flash_beep_trial(1, 2, 17.0, 57.0)?;
    let records = run_block(&[spec], &ObserverModel::CausalInference(observer), reps, seed)?;
    let illusory = rate(&records, |r| r.response == Response::Count(2));
    let veridical = rate(&records, |r| r.response == Response::Count(1));
    Ok(ScenarioOutput {
        records,
        params: params_map(&[
            ("sigma_a", observer.sigma_a),
            ("sigma_v", observer.sigma_v),
            ("kappa", observer.coupling_kappa),
        ]),
        metrics: metrics_map(&[("illusory_rate", illusory), ("veridical_rate", veridical)]),
    })
}

fn run_fusion(ov: &BTreeMap<String, f64>, seed: u64, reps: u64) -> Result<ScenarioOutput> {
    let observer = count_observer(ov);
    let spec = make_flash_beep_trial(2, 1, 17.0, 57.0)?;
    let records = run_block(&[spec], &ObserverModel::CausalInference(observer), reps, seed)?;
    let illusory = rate(&records, |r| r.response == Response::Count(1));
    let veridical = rate(&records, |r| r.response == Response::Count(2));
    Ok(ScenarioOutput {
        records,
        params: params_map(&[
            ("sigma_a", observer.sigma_a),
            ("sigma_v", observer.sigma_v),
            ("kappa", observer.coupling_kappa),
        ]),
        metrics: metrics_map(&[("illusory_rate", illusory), ("veridical_rate", veridical)]),
    })
}

fn localization_shifts(
    ov: &BTreeMap<String, f64>,
    seed: u64,
    reps: u64,
    sigma_a: f64,
    sigma_v: f64,
) -> Result<(Vec<TrialRecord>, BTreeMap<String, f64>, BTreeMap<String, f64>)> {
    let audio_deg = get(ov, "audio_deg", -5.0);
    let visual_deg = get(ov, "visual_deg", 5.0);
    let observer = CausalInferenceObserverParams {
        sigma_a: get(ov, "sigma_a", sigma_a),
        sigma_v: get(ov, "sigma_v", sigma_v),
        sigma_prior_deg: get(ov, "sigma_prior", 20.0),
        p_common: get(ov, "p_common", 0.8),
        readout: CausalReadout::ModelAveraging,
        ..Default::default()
    };
    let spec = make_ventriloquist_trial(audio_deg, visual_deg)?;
    let records = run_block(&[spec], &ObserverModel::CausalInference(observer), reps, seed)?;
    let (mut sum_a, mut sum_v) = (0.0, 0.0);
    for r in &records {
        if let Response::Location { auditory_deg, visual_deg } = r.response {
            sum_a += auditory_deg;
            sum_v += visual_deg;
        }
    }
    let n = records.len().max(1) as f64;
    let toward_visual = (visual_deg - audio_deg).signum();
    // Positive shifts point toward the other modality's true location.
    let auditory_shift = (sum_a / n - audio_deg) * toward_visual;
    let visual_shift = (sum_v / n - visual_deg) * -toward_visual;
    let params = params_map(&[
        ("sigma_a", observer.sigma_a),
        ("sigma_v", observer.sigma_v),
        ("sigma_prior", observer.sigma_prior_deg),
        ("p_common", observer.p_common),
        ("audio_deg", audio_deg),
        ("visual_deg", visual_deg),
    ]);
    let metrics = metrics_map(&[
        ("auditory_shift_deg", auditory_shift),
        ("visual_shift_deg", visual_shift),
        ("capture_asymmetry_deg", auditory_shift - visual_shift),
    ]);
    Ok((records, params, metrics))
}

fn run_ventriloquism(ov: &BTreeMap<String, f64>, seed: u64, reps: u64) -> Result<ScenarioOutput> {
    let (records, params, metrics) = localization_shifts(ov, seed, reps, 4.0, 0.5)?;
    Ok(ScenarioOutput { records, params, metrics })
}

fn run_ventriloquism_reversal(
    ov: &BTreeMap<String, f64>,
    seed: u64,
    reps: u64,
) -> Result<ScenarioOutput> {
    let (records, params, mut metrics) = localization_shifts(ov, seed, reps, 0.5, 4.0)?;
    let reversal = metrics["visual_shift_deg"] - metrics["auditory_shift_deg"];
    metrics.insert("reversal_asymmetry_deg".into(), reversal);
    Ok(ScenarioOutput { records, params, metrics })
}

fn toj_observer(ov: &BTreeMap<String, f64>) -> TemporalCaptureParams {
    TemporalCaptureParams {
        w_t: get(ov, "w_t", 0.5),
        noise_sd_ms: get(ov, "noise_sd", 60.0),
        coupling_window_ms: get(ov, "coupling_window", 200.0),
        ..Default::default()
    }
}

fn run_tv_enhancement(ov: &BTreeMap<String, f64>, seed: u64, reps: u64) -> Result<ScenarioOutput> {
    let observer = toj_observer(ov);
    let v_soa = get(ov, "v_soa", 40.0);
    let lead = get(ov, "lead", 75.0);
    let lag = get(ov, "lag", 75.0);
    let flanked = make_toj_trial(Side::Left, v_soa, ToneConfig::Outside { lead_ms: lead, lag_ms: lag })?;
    let baseline = make_toj_trial(Side::Left, v_soa, ToneConfig::None)?;
    let obs = ObserverModel::TemporalCapture(observer);
    let records = run_block(&[flanked], &obs, reps, seed)?;
    let base_records = run_block(&[baseline], &obs, reps, seed)?;
    let accuracy = rate(&records, |r| r.is_correct());
    let base_accuracy = rate(&base_records, |r| r.is_correct());
    Ok(ScenarioOutput {
        records,
        params: params_map(&[
            ("w_t", observer.w_t),
            ("noise_sd", observer.noise_sd_ms),
            ("v_soa", v_soa),
            ("lead", lead),
            ("lag", lag),
        ]),
        metrics: metrics_map(&[
            ("accuracy", accuracy),
            ("baseline_accuracy", base_accuracy),
            ("accuracy_gain", accuracy - base_accuracy),
        ]),
    })
}

fn run_tv_detriment(ov: &BTreeMap<String, f64>, seed: u64, reps: u64) -> Result<ScenarioOutput> {
    let observer = toj_observer(ov);
    let v_soa = get(ov, "v_soa", 40.0);
    let offset = get(ov, "offset", 15.0);
    let flanked = make_toj_trial(Side::Left, v_soa, ToneConfig::Inside { offset_ms: offset })?;
    let baseline = make_toj_trial(Side::Left, v_soa, ToneConfig::None)?;
    let obs = ObserverModel::TemporalCapture(observer);
    let records = run_block(&[flanked], &obs, reps, seed)?;
    let base_records = run_block(&[baseline], &obs, reps, seed)?;
    let accuracy = rate(&records, |r| r.is_correct());
    let base_accuracy = rate(&base_records, |r| r.is_correct());
    Ok(ScenarioOutput {
        records,
        params: params_map(&[
            ("w_t", observer.w_t),
            ("noise_sd", observer.noise_sd_ms),
            ("v_soa", v_soa),
            ("offset", offset),
        ]),
        metrics: metrics_map(&[
            ("accuracy", accuracy),
            ("baseline_accuracy", base_accuracy),
            ("accuracy_drop", base_accuracy - accuracy),
        ]),
    })
}

fn run_single_tone(ov: &BTreeMap<String, f64>, seed: u64, reps: u64) -> Result<ScenarioOutput> {
    let mut observer = toj_observer(ov);
    observer.simultaneity_band_ms = get(ov, "band", 25.0);
    observer.single_tone_band_inflation_ms = get(ov, "band_inflation", 40.0);
    let v_soa = get(ov, "v_soa", 40.0);
    let lead = get(ov, "lead", 75.0);
    let flanked = make_ternary_trial(Side::Left, v_soa, ToneConfig::SingleBefore { lead_ms: lead })?;
    let baseline = make_ternary_trial(Side::Left, v_soa, ToneConfig::None)?;
    let obs = ObserverModel::TemporalCapture(observer);
    let records = run_block(&[flanked], &obs, reps, seed)?;
    let base_records = run_block(&[baseline], &obs, reps, seed)?;
    let simultaneous = rate(&records, |r| r.response == Response::Simultaneous);
    let base_simultaneous = rate(&base_records, |r| r.response == Response::Simultaneous);
    let ordered = rate(&records, |r| r.response == Response::First(Side::Left));
    let base_ordered = rate(&base_records, |r| r.response == Response::First(Side::Left));
    Ok(ScenarioOutput {
        records,
        params: params_map(&[
            ("w_t", observer.w_t),
            ("noise_sd", observer.noise_sd_ms),
            ("v_soa", v_soa),
            ("lead", lead),
            ("band", observer.simultaneity_band_ms),
            ("band_inflation", observer.single_tone_band_inflation_ms),
        ]),
        metrics: metrics_map(&[
            ("simultaneous_rate", simultaneous),
            ("baseline_simultaneous_rate", base_simultaneous),
            ("correct_order_rate", ordered),
            ("baseline_correct_order_rate", base_ordered),
            ("order_report_drop", base_ordered - ordered),
        ]),
    })
}

fn run_motion_capture(ov: &BTreeMap<String, f64>, seed: u64, reps: u64) -> Result<ScenarioOutput> {
    let observer = TemporalCaptureParams {
        w_t: get(ov, "w_t", 1.0),
        noise_sd_ms: get(ov, "noise_sd", 30.0),
        ..Default::default()
    };
    let v_soa = get(ov, "v_soa", 500.0);
    let a_soa = get(ov, "a_soa", 333.0);
    let obs = ObserverModel::TemporalCapture(observer);
    let motion_rate = |spec, seed2| -> Result<f64> {
        let recs = run_block(&[spec], &obs, reps, seed2)?;
        Ok(rate(&recs, |r| r.response == Response::MotionPerceived(true)))
    };
    let captured = make_apparent_motion_trial(v_soa, Some(a_soa))?;
    let records = run_block(&[captured], &obs, reps, seed)?;
    let capture_rate = rate(&records, |r| r.response == Response::MotionPerceived(true));
    let free_333 = motion_rate(make_apparent_motion_trial(333.0, None)?, seed)?;
    let free_500 = motion_rate(make_apparent_motion_trial(500.0, None)?, seed)?;
    let free_666 = motion_rate(make_apparent_motion_trial(666.0, None)?, seed)?;
    let abolition = motion_rate(make_apparent_motion_trial(v_soa, Some(666.0))?, seed)?;
    Ok(ScenarioOutput {
        records,
        params: params_map(&[
            ("w_t", observer.w_t),
            ("noise_sd", observer.noise_sd_ms),
            ("v_soa", v_soa),
            ("a_soa", a_soa),
        ]),
        metrics: metrics_map(&[
            ("capture_motion_rate", capture_rate),
            ("abolition_motion_rate", abolition),
            ("tone_free_333_rate", free_333),
            ("tone_free_500_rate", free_500),
            ("tone_free_666_rate", free_666),
            ("rebias_gap", (capture_rate - free_333).abs()),
            ("abolition_gap", (abolition - free_666).abs()),
        ]),
    })
}

fn run_prior_entry(ov: &BTreeMap<String, f64>, seed: u64, reps: u64) -> Result<ScenarioOutput> {
    let observer = TemporalCaptureParams {
        w_t: 0.0,
        noise_sd_ms: get(ov, "noise_sd", 30.0),
        attended: Some(Side::Left),
        prior_entry_advantage_ms: get(ov, "delta", 30.0),
        ..Default::default()
    };
    // Physically simultaneous targets; attention to the left makes "left
    // first" the illusory modal report.
    let spec = make_toj_trial(Side::Left, 0.0, ToneConfig::None)?;
    let records = run_block(&[spec], &ObserverModel::TemporalCapture(observer), reps, seed)?;
    let illusory = rate(&records, |r| r.response == Response::First(Side::Left));
    Ok(ScenarioOutput {
        records,
        params: params_map(&[
            ("delta", observer.prior_entry_advantage_ms),
            ("noise_sd", observer.noise_sd_ms),
        ]),
        metrics: metrics_map(&[("illusory_order_rate", illusory), ("chance_rate", 0.5)]),
    })
}

pub fn registry() -> Vec<Scenario> {
    vec![
        Scenario {
            name: "fission",
            description: "Multiple flash illusion: one flash with two beeps is reported as two flashes",
            allowed: &["sigma_a", "sigma_v", "kappa"],
            primary_metric: "illusory_rate",
            effect_direction: "beeps inflate the reported flash count",
            prediction_only: false,
            default_sweep: Some(SweepAxis { param: "sigma_v", min: 0.1, max: 2.0, steps: 10 }),
            runner: run_fission,
        },
        Scenario {
            name: "fusion",
            description: "Single flash illusion: two flashes with one beep are reported as one flash",
            allowed: &["sigma_a", "sigma_v", "kappa"],
            primary_metric: "illusory_rate",
            effect_direction: "a lone beep deflates the reported flash count",
            prediction_only: false,
            default_sweep: Some(SweepAxis { param: "sigma_v", min: 0.1, max: 2.0, steps: 10 }),
            runner: run_fusion,
        },
        Scenario {
            name: "spatial-ventriloquism",
            description: "Reliable vision drags the perceived auditory location toward the visual stimulus",
            allowed: &["sigma_a", "sigma_v", "sigma_prior", "p_common", "audio_deg", "visual_deg"],
            primary_metric: "auditory_shift_deg",
            effect_direction: "auditory estimate moves toward the visual location",
            prediction_only: false,
            default_sweep: Some(SweepAxis { param: "sigma_v", min: 0.25, max: 6.0, steps: 10 }),
            runner: run_ventriloquism,
        },
        Scenario {
            name: "ventriloquism-reversal",
            description: "Blurred vision reverses the capture: the visual estimate moves toward the sound",
            allowed: &["sigma_a", "sigma_v", "sigma_prior", "p_common", "audio_deg", "visual_deg"],
            primary_metric: "visual_shift_deg",
            effect_direction: "visual estimate moves toward the auditory location",
            prediction_only: false,
            default_sweep: Some(SweepAxis { param: "sigma_a", min: 0.25, max: 6.0, steps: 10 }),
            runner: run_ventriloquism_reversal,
        },
        Scenario {
            name: "temporal-ventriloquism-enhancement",
            description: "Outside flanker tones stretch perceived visual SOA and improve order judgements",
            allowed: &["w_t", "noise_sd", "coupling_window", "v_soa", "lead", "lag"],
            primary_metric: "accuracy_gain",
            effect_direction: "flanked accuracy exceeds the tone-free baseline",
            prediction_only: false,
            default_sweep: Some(SweepAxis { param: "w_t", min: 0.0, max: 1.0, steps: 10 }),
            runner: run_tv_enhancement,
        },
        Scenario {
            name: "temporal-ventriloquism-detriment",
            description: "Inside flanker tones compress perceived visual SOA and impair order judgements",
            allowed: &["w_t", "noise_sd", "coupling_window", "v_soa", "offset"],
            primary_metric: "accuracy_drop",
            effect_direction: "flanked accuracy falls below the tone-free baseline",
            prediction_only: false,
            default_sweep: Some(SweepAxis { param: "w_t", min: 0.0, max: 1.0, steps: 10 }),
            runner: run_tv_detriment,
        },
        Scenario {
            name: "single-tone-detriment",
            description: "A single tone before the first target raises simultaneity reports in a ternary task",
            allowed: &["w_t", "noise_sd", "v_soa", "lead", "band", "band_inflation"],
            primary_metric: "order_report_drop",
            effect_direction: "order reports matching the physical sequence become rarer",
            prediction_only: true,
            default_sweep: Some(SweepAxis { param: "band_inflation", min: 0.0, max: 80.0, steps: 9 }),
            runner: run_single_tone,
        },
        Scenario {
            name: "motion-capture",
            description: "Flanker tones re-time ambiguous apparent motion: tone SOA 333 restores it, 666 abolishes it",
            allowed: &["w_t", "noise_sd", "v_soa", "a_soa"],
            primary_metric: "capture_motion_rate",
            effect_direction: "motion reports follow the auditory SOA, not the visual one",
            prediction_only: false,
            default_sweep: Some(SweepAxis { param: "a_soa", min: 333.0, max: 666.0, steps: 10 }),
            runner: run_motion_capture,
        },
        Scenario {
            name: "illusory-temporal-order",
            description: "Attention to one side makes simultaneous targets appear sequential (prior entry)",
            allowed: &["delta", "noise_sd"],
            primary_metric: "illusory_order_rate",
            effect_direction: "the attended side is reported first above chance",
            prediction_only: false,
            default_sweep: Some(SweepAxis { param: "delta", min: 0.0, max: 60.0, steps: 7 }),
            runner: run_prior_entry,
        },
    ]
}

pub fn find(name: &str) -> Option<Scenario> {
    registry().into_iter().find(|s| s.name == name)
}
