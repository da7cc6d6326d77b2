use crate::error::{ModelError, Result};
use crate::paradigms::{
    CausalInferenceObserverParams, ObserverModel, SwitchingParams, TemporalCaptureParams,
};
use serde::{Deserialize, Serialize};

use super::simplex::{ParamSpace, Transform};

/// A parametric family of observers: a template carrying the fixed fields
/// plus the mapping from a free-parameter vector onto the template.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub enum ObserverFamily {
    /// Free parameters: capture weight w_t, onset noise sd (ms).
    TemporalCapture { template: TemporalCaptureParams },
    /// Free parameters: sigma_a, sigma_v, coupling kappa.
    CausalInferenceCount { template: CausalInferenceObserverParams },
    /// Free parameters: sigma_a, sigma_v (selection probability fixed).
    FocalSwitchingCount { template: SwitchingParams },
    /// Free parameters: sigma_a, sigma_v (selection reliability-biased).
    ModalitySwitchingCount { template: SwitchingParams },
}

impl ObserverFamily {
    pub fn name(&self) -> &'static str {
        match self {
            ObserverFamily::TemporalCapture { .. } => "temporal_capture",
            ObserverFamily::CausalInferenceCount { .. } => "causal_inference",
            ObserverFamily::FocalSwitchingCount { .. } => "focal_switching",
            ObserverFamily::ModalitySwitchingCount { .. } => "modality_switching",
        }
    }

    pub fn param_names(&self) -> Vec<&'static str> {
        match self {
            ObserverFamily::TemporalCapture { .. } => vec!["w_t", "noise_sd_ms"],
            ObserverFamily::CausalInferenceCount { .. } => vec!["sigma_a", "sigma_v", "kappa"],
            ObserverFamily::FocalSwitchingCount { .. }
            | ObserverFamily::ModalitySwitchingCount { .. } => vec!["sigma_a", "sigma_v"],
        }
    }

    pub fn n_params(&self) -> usize {
        self.param_names().len()
    }

    /// Conventional bounds: probabilities on the identity scale, scale
    /// parameters on the log scale.
    pub fn default_space(&self) -> ParamSpace {
        let (names, lower, upper, transform) = match self {
            ObserverFamily::TemporalCapture { .. } => (
                vec!["w_t", "noise_sd_ms"],
                vec![0.0, 2.0],
                vec![1.0, 400.0],
                vec![Transform::Identity, Transform::Log],
            ),
            ObserverFamily::CausalInferenceCount { .. } => (
                vec!["sigma_a", "sigma_v", "kappa"],
                vec![0.05, 0.05, 1.0],
                vec![5.0, 5.0, 64.0],
                vec![Transform::Log, Transform::Log, Transform::Log],
            ),
            ObserverFamily::FocalSwitchingCount { .. }
            | ObserverFamily::ModalitySwitchingCount { .. } => (
                vec!["sigma_a", "sigma_v"],
                vec![0.05, 0.05],
                vec![5.0, 5.0],
                vec![Transform::Log, Transform::Log],
            ),
        };
        ParamSpace::new(
            names.into_iter().map(String::from).collect(),
            lower,
            upper,
            transform,
        )
        .expect("default space is valid")
    }

    /// Instantiate an observer at a free-parameter vector.
    pub fn build(&self, params: &[f64]) -> Result<ObserverModel> {
        if params.len() != self.n_params() {
            return Err(ModelError::invalid(format!(
                "{} expects {} parameters, got {}",
                self.name(),
                self.n_params(),
                params.len()
            )));
        }
        let observer = match self {
            ObserverFamily::TemporalCapture { template } => {
                let mut p = *template;
                p.w_t = params[0];
                p.noise_sd_ms = params[1];
                ObserverModel::TemporalCapture(p)
            }
            ObserverFamily::CausalInferenceCount { template } => {
                let mut p = *template;
                p.sigma_a = params[0];
                p.sigma_v = params[1];
                p.coupling_kappa = params[2];
                ObserverModel::CausalInference(p)
            }
            ObserverFamily::FocalSwitchingCount { template } => {
                let mut p = *template;
                p.sigma_a = params[0];
                p.sigma_v = params[1];
                ObserverModel::FocalSwitching(p)
            }
            ObserverFamily::ModalitySwitchingCount { template } => {
                let mut p = *template;
                p.sigma_a = params[0];
                p.sigma_v = params[1];
                ObserverModel::ModalitySwitching(p)
            }
        };
        observer.validate()?;
        Ok(observer)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn build_respects_arity_and_bounds() {
        let fam = ObserverFamily::TemporalCapture { template: TemporalCaptureParams::default() };
        assert!(fam.build(&[0.5]).is_err());
        assert!(fam.build(&[1.5, 30.0]).is_err());
        let obs = fam.build(&[0.6, 30.0]).unwrap();
        match obs {
            ObserverModel::TemporalCapture(p) => {
                assert_eq!(p.w_t, 0.6);
                assert_eq!(p.noise_sd_ms, 30.0);
            }
            _ => panic!(),
        }
    }

    #[test]
    fn default_spaces_are_valid() {
        for fam in [
            ObserverFamily::TemporalCapture { template: TemporalCaptureParams::default() },
            ObserverFamily::CausalInferenceCount {
                template: CausalInferenceObserverParams::default(),
            },
            ObserverFamily::FocalSwitchingCount { template: SwitchingParams::default() },
            ObserverFamily::ModalitySwitchingCount { template: SwitchingParams::default() },
        ] {
            let space = fam.default_space();
            assert_eq!(space.dim(), fam.n_params());
        }
    }
}
