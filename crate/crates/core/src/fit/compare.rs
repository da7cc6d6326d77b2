use crate::error::{ModelError, Result};
use serde::{Deserialize, Serialize};

use super::simplex::FitResult;

/// AIC ranking over fitted models.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ModelRanking {
    /// AIC per model, in input order.
    pub aic: Vec<f64>,
    /// Model indices from best (lowest AIC) to worst; ties go to the model
    /// with fewer parameters.
    pub order: Vec<usize>,
    pub n_data: usize,
}

impl ModelRanking {
    pub fn best(&self) -> usize {
        self.order[0]
    }
}

/// Rank fits by AIC = 2k + 2 nll. All fits must refer to the same dataset.
pub fn compare_models(
    fits: &[FitResult],
    n_params: &[usize],
    n_data: usize,
) -> Result<ModelRanking> {
    if fits.is_empty() || fits.len() != n_params.len() {
        return Err(ModelError::InvalidInput(
            "compare_models needs one parameter count per fit".into(),
        ));
    }
    let aic: Vec<f64> = fits
        .iter()
        .zip(n_params)
        .map(|(f, &k)| 2.0 * k as f64 + 2.0 * f.nll)
        .collect();
    let mut order: Vec<usize> = (0..fits.len()).collect();
    order.sort_by(|&i, &j| {
        aic[i]
            .partial_cmp(&aic[j])
            .unwrap()
            .then(n_params[i].cmp(&n_params[j]))
            .then(i.cmp(&j))
    });
    Ok(ModelRanking { aic, order, n_data })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::fit::simplex::{ParamSpace, Transform};

    fn fit(nll: f64) -> FitResult {
        let space = ParamSpace::new(
            vec!["x".into()],
            vec![0.0],
            vec![1.0],
            vec![Transform::Identity],
        )
        .unwrap();
        FitResult {
            best_params: vec![0.5],
            nll,
            n_evals: 10,
            converged: true,
            seed: 0,
            param_names: vec!["x".into()],
            space,
        }
    }

    #[test]
    fn lower_nll_wins_at_equal_complexity() {
        let r = compare_models(&[fit(100.0), fit(90.0)], &[2, 2], 500).unwrap();
        assert_eq!(r.best(), 1);
        assert!((r.aic[0] - 204.0).abs() < 1e-12);
        assert!((r.aic[1] - 184.0).abs() < 1e-12);
    }

    #[test]
    fn ties_go_to_the_simpler_model() {
        // Equal nll: the 2-parameter model has lower AIC than the 3-parameter
        // one; with equal AIC (nll offset by exactly the penalty) the simpler
        // model still wins the tie.
        let r = compare_models(&[fit(100.0), fit(100.0)], &[3, 2], 500).unwrap();
        assert_eq!(r.best(), 1);
        let r = compare_models(&[fit(100.0), fit(101.0)], &[3, 2], 500).unwrap();
        assert_eq!(r.aic[0], r.aic[1]);
        assert_eq!(r.best(), 1);
    }

    #[test]
    fn ranking_invariant_to_constant_nll_shift() {
        let a = compare_models(&[fit(10.0), fit(30.0), fit(20.0)], &[1, 1, 1], 9).unwrap();
        let b = compare_models(&[fit(110.0), fit(130.0), fit(120.0)], &[1, 1, 1], 9).unwrap();
        assert_eq!(a.order, b.order);
    }

    #[test]
    fn arity_mismatch_rejected() {
        assert!(compare_models(&[fit(1.0)], &[1, 2], 9).is_err());
        assert!(compare_models(&[], &[], 9).is_err());
    }
}
