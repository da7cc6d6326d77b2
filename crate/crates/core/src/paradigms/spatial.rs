//! Spatial ventriloquism: audio-visual localization under causal inference.

use crate::error::{ModelError, Result};
use crate::fusion::{localize_with_causal_inference, CausalInferenceParams};
use crate::rng::RngStream;
use crate::stimulus::{Modality, StimulusEvent};

use super::observer::CausalInferenceObserverParams;
use super::trial::{Response, Task, TrialRecord, TrialSpec};

/// One synchronous auditory/visual pair at the given azimuths.
pub fn make_ventriloquist_trial(audio_loc_deg: f64, visual_loc_deg: f64) -> Result<TrialSpec> {
    let stimuli = vec![
        StimulusEvent::new(Modality::Auditory, 0.0)?.at_location(audio_loc_deg),
        StimulusEvent::new(Modality::Visual, 0.0)?.at_location(visual_loc_deg),
    ];
    TrialSpec::new(
        stimuli,
        Task::Localization,
        Response::Location { auditory_deg: audio_loc_deg, visual_deg: visual_loc_deg },
    )
}

/// Draw noisy location measurements (auditory first) and report the
/// causal-inference location estimates for both modalities.
pub fn simulate_localization(
    spec: &TrialSpec,
    params: &CausalInferenceObserverParams,
    rng: &mut RngStream,
) -> Result<TrialRecord> {
    params.validate()?;
    if spec.task != Task::Localization {
        return Err(ModelError::IncompatibleObserver(format!(
            "localization observer cannot run a {} task",
            spec.task.name()
        )));
    }
    let true_a = spec
        .events(Modality::Auditory)
        .find_map(|e| e.location_deg)
        .ok_or_else(|| ModelError::InvalidInput("localization trial needs a located auditory event".into()))?;
    let true_v = spec
        .events(Modality::Visual)
        .find_map(|e| e.location_deg)
        .ok_or_else(|| ModelError::InvalidInput("localization trial needs a located visual event".into()))?;
    let x_a = rng.normal(true_a, params.sigma_a);
    let x_v = rng.normal(true_v, params.sigma_v);
    let cip = CausalInferenceParams::new(
        params.sigma_a,
        params.sigma_v,
        params.sigma_prior_deg,
        params.p_common,
    )?;
    let (est_a, est_v) = localize_with_causal_inference(x_a, x_v, &cip, params.readout)?;
    TrialRecord::new(
        spec.clone(),
        Response::Location { auditory_deg: est_a, visual_deg: est_v },
        None,
        (rng.master_seed, rng.stream_index),
    )
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::fusion::CausalReadout;
    use crate::rng::substream;

    fn mean_estimates(
        spec: &TrialSpec,
        params: &CausalInferenceObserverParams,
        seed: u64,
        n: u64,
    ) -> (f64, f64) {
        let (mut sa, mut sv) = (0.0, 0.0);
        for i in 0..n {
            let mut rng = substream(seed, i);
            if let Response::Location { auditory_deg, visual_deg } =
                simulate_localization(spec, params, &mut rng).unwrap().response
            {
                sa += auditory_deg;
                sv += visual_deg;
            }
        }
        (sa / n as f64, sv / n as f64)
    }

    fn loc_params(sigma_a: f64, sigma_v: f64) -> CausalInferenceObserverParams {
        CausalInferenceObserverParams {
            sigma_a,
            sigma_v,
            sigma_prior_deg: 20.0,
            p_common: 0.8,
            readout: CausalReadout::ModelAveraging,
            ..Default::default()
        }
    }

    #[test]
    fn congruent_control_is_unbiased() {
        let spec = make_ventriloquist_trial(0.0, 0.0).unwrap();
        let (ma, mv) = mean_estimates(&spec, &loc_params(4.0, 1.0), 42, 20_000);
        assert!(ma.abs() < 0.1, "auditory mean {ma}");
        assert!(mv.abs() < 0.1, "visual mean {mv}");
    }

    #[test]
    fn reliable_vision_captures_audition() {
        let spec = make_ventriloquist_trial(-5.0, 5.0).unwrap();
        let (ma, mv) = mean_estimates(&spec, &loc_params(4.0, 0.5), 43, 20_000);
        assert!(ma > -5.0 + 1.0, "auditory estimate {ma} should be pulled toward +5");
        assert!((mv - 5.0).abs() < (ma - -5.0).abs(), "visual stays closer to truth");
    }

    #[test]
    fn blurred_vision_reverses_the_capture() {
        let spec = make_ventriloquist_trial(-5.0, 5.0).unwrap();
        let (ma, mv) = mean_estimates(&spec, &loc_params(0.5, 4.0), 44, 20_000);
        assert!(mv < 5.0 - 1.0, "visual estimate {mv} should be pulled toward -5");
        assert!((ma - -5.0).abs() < (mv - 5.0).abs(), "audio stays closer to truth");
    }

    #[test]
    fn forced_segregation_gives_zero_mean_shift() {
        let spec = make_ventriloquist_trial(-5.0, 5.0).unwrap();
        let mut p = loc_params(4.0, 0.5);
        p.p_common = 0.0;
        let (ma, mv) = mean_estimates(&spec, &p, 45, 20_000);
        assert!((ma - -5.0).abs() < 0.1, "auditory mean {ma}");
        assert!((mv - 5.0).abs() < 0.05, "visual mean {mv}");
    }

    #[test]
    fn needs_located_events() {
        let bare = TrialSpec::new(
            vec![
                StimulusEvent::new(Modality::Auditory, 0.0).unwrap(),
                StimulusEvent::new(Modality::Visual, 0.0).unwrap(),
            ],
            Task::Localization,
            Response::Location { auditory_deg: 0.0, visual_deg: 0.0 },
        )
        .unwrap();
        let mut rng = substream(1, 0);
        assert!(simulate_localization(&bare, &loc_params(1.0, 1.0), &mut rng).is_err());
    }
}
