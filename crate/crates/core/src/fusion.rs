//! Static Bayesian integration: reliability-weighted Gaussian cue
//! combination, the ideal observer over discrete source counts (bimodal and
//! trimodal), and common-cause inference over spatial measurements.

use crate::error::{ModelError, Result};
use crate::prob::normal_pdf_unchecked;
use crate::stimulus::GaussianEstimate;
use serde::{Deserialize, Serialize};

/// How cue weights are derived from the cue standard deviations.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default, Serialize, Deserialize)]
pub enum WeightRule {
    /// w_i proportional to 1/sigma_i^2. Consistent with the variance-reduction
    /// result and the default everywhere.
    #[default]
    InverseVariance,
    /// w_i proportional to 1/sigma_i^4, i.e. squaring the precisions before
    /// normalizing. Provided as a switch for comparison; the combined variance
    /// is reported with the inverse-variance formula in both modes.
    SquaredPrecision,
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct CombinationResult {
    pub combined: GaussianEstimate,
    pub weight_1: f64,
    pub weight_2: f64,
}

/// Optimal combination of two Gaussian estimates under the default
/// inverse-variance weighting.
pub fn combine_gaussian(e1: &GaussianEstimate, e2: &GaussianEstimate) -> Result<CombinationResult> {
    combine_gaussian_with(e1, e2, WeightRule::InverseVariance)
}

pub fn combine_gaussian_with(
    e1: &GaussianEstimate,
    e2: &GaussianEstimate,
    rule: WeightRule,
) -> Result<CombinationResult> {
    let (p1, p2) = (e1.precision(), e2.precision());
    if p1 + p2 == 0.0 {
        return Err(ModelError::invalid(
            "combine_gaussian: at least one estimate must be informative",
        ));
    }
    let (w1, w2) = match rule {
        WeightRule::InverseVariance => (p1 / (p1 + p2), p2 / (p1 + p2)),
        WeightRule::SquaredPrecision => {
            let (q1, q2) = (p1 * p1, p2 * p2);
            (q1 / (q1 + q2), q2 / (q1 + q2))
        }
    };
    let mean = w1 * e1.mean + w2 * e2.mean;
    let sd = (1.0 / (p1 + p2)).sqrt();
    Ok(CombinationResult {
        combined: GaussianEstimate { mean, sd },
        weight_1: w1,
        weight_2: w2,
    })
}

/// Joint prior over discrete source counts (Z_1, Z_2) on 0..=max_count.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct CountPrior {
    joint: Vec<Vec<f64>>,
}

pub const DEFAULT_MAX_COUNT: u32 = 4;

impl CountPrior {
    pub fn from_joint(joint: Vec<Vec<f64>>) -> Result<Self> {
        let n = joint.len();
        if n == 0 || joint.iter().any(|row| row.len() != n) {
            return Err(ModelError::invalid("count prior must be square and non-empty"));
        }
        let mut sum = 0.0;
        for row in &joint {
            for &p in row {
                if !(p >= 0.0) || !p.is_finite() {
                    return Err(ModelError::invalid("count prior entries must be >= 0"));
                }
                sum += p;
            }
        }
        if (sum - 1.0).abs() > 1e-9 {
            return Err(ModelError::invalid(format!("count prior must sum to 1, got {sum}")));
        }
        Ok(CountPrior { joint })
    }

    /// Uniform over the (max_count+1)^2 grid.
    pub fn flat(max_count: u32) -> Self {
        let n = max_count as usize + 1;
        let p = 1.0 / (n * n) as f64;
        CountPrior { joint: vec![vec![p; n]; n] }
    }

    /// Diagonal-boosted coupling prior: cells with Z_1 = Z_2 carry `kappa`
    /// times the weight of off-diagonal cells. `kappa = 1` is flat.
    pub fn diagonal_coupling(max_count: u32, kappa: f64) -> Result<Self> {
        if !(kappa >= 1.0) || !kappa.is_finite() {
            return Err(ModelError::invalid(format!("kappa must be >= 1, got {kappa}")));
        }
        let n = max_count as usize + 1;
        let total = (n * n - n) as f64 + n as f64 * kappa;
        let joint = (0..n)
            .map(|i| {
                (0..n)
                    .map(|j| if i == j { kappa / total } else { 1.0 / total })
                    .collect()
            })
            .collect();
        Ok(CountPrior { joint })
    }

    #[inline]
    pub fn max_count(&self) -> u32 {
        (self.joint.len() - 1) as u32
    }

    #[inline]
    pub fn get(&self, i: usize, j: usize) -> f64 {
        self.joint[i][j]
    }
}

/// Normalized posterior over (Z_A, Z_V) with its marginals.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct CountPosterior {
    pub joint: Vec<Vec<f64>>,
    pub marginal_a: Vec<f64>,
    pub marginal_v: Vec<f64>,
}

impl CountPosterior {
    /// Index of the largest marginal mass for the visual count; the lowest
    /// index wins ties.
    pub fn mode_v(&self) -> u32 {
        argmax(&self.marginal_v) as u32
    }

    pub fn mode_a(&self) -> u32 {
        argmax(&self.marginal_a) as u32
    }
}

fn argmax(xs: &[f64]) -> usize {
    let mut best = 0;
    for (i, &x) in xs.iter().enumerate() {
        if x > xs[best] {
            best = i;
        }
    }
    best
}

/// Ideal-observer posterior over source counts: the normalized product of
/// the per-modality Gaussian likelihoods and the joint count prior.
pub fn count_posterior(
    a_obs: f64,
    v_obs: f64,
    sigma_a: f64,
    sigma_v: f64,
    prior: &CountPrior,
) -> Result<CountPosterior> {
    if !(sigma_a > 0.0) || !(sigma_v > 0.0) {
        return Err(ModelError::invalid("count_posterior: sigmas must be > 0"));
    }
    let n = prior.joint.len();
    let like_a: Vec<f64> = (0..n).map(|i| normal_pdf_unchecked(a_obs, i as f64, sigma_a)).collect();
    let like_v: Vec<f64> = (0..n).map(|j| normal_pdf_unchecked(v_obs, j as f64, sigma_v)).collect();
    let mut joint = vec![vec![0.0; n]; n];
    let mut total = 0.0;
    for i in 0..n {
        for j in 0..n {
            let w = like_a[i] * like_v[j] * prior.joint[i][j];
            joint[i][j] = w;
            total += w;
        }
    }
    if total <= 0.0 {
        return Err(ModelError::DegeneratePrior);
    }
    let mut marginal_a = vec![0.0; n];
    let mut marginal_v = vec![0.0; n];
    for i in 0..n {
        for j in 0..n {
            joint[i][j] /= total;
            marginal_a[i] += joint[i][j];
            marginal_v[j] += joint[i][j];
        }
    }
    Ok(CountPosterior { joint, marginal_a, marginal_v })
}

/// Trimodal posterior over (Z_A, Z_V, Z_T). The prior tensor is indexed
/// `prior[i][j][k]` and must be a normalized cube.
#[derive(Debug, Clone, PartialEq)]
pub struct CountPosterior3 {
    pub joint: Vec<Vec<Vec<f64>>>,
    pub marginal_a: Vec<f64>,
    pub marginal_v: Vec<f64>,
    pub marginal_t: Vec<f64>,
}

impl CountPosterior3 {
    pub fn mode_a(&self) -> u32 {
        argmax(&self.marginal_a) as u32
    }

    /// Sum out the third modality, returning the bimodal (Z_A, Z_V) view.
    pub fn marginalize_t(&self) -> CountPosterior {
        let n = self.joint.len();
        let mut joint = vec![vec![0.0; n]; n];
        for i in 0..n {
            for j in 0..n {
                joint[i][j] = self.joint[i][j].iter().sum();
            }
        }
        CountPosterior {
            joint,
            marginal_a: self.marginal_a.clone(),
            marginal_v: self.marginal_v.clone(),
        }
    }
}

pub fn flat_prior_3(max_count: u32) -> Vec<Vec<Vec<f64>>> {
    let n = max_count as usize + 1;
    let p = 1.0 / (n * n * n) as f64;
    vec![vec![vec![p; n]; n]; n]
}

/// Trimodal coupling prior: weight `kappa` on cells where all three counts
/// agree, 1 elsewhere, normalized.
pub fn diagonal_coupling_3(max_count: u32, kappa: f64) -> Result<Vec<Vec<Vec<f64>>>> {
    if !(kappa >= 1.0) || !kappa.is_finite() {
        return Err(ModelError::invalid("kappa must be >= 1"));
    }
    let n = max_count as usize + 1;
    let total = (n * n * n - n) as f64 + n as f64 * kappa;
    Ok((0..n)
        .map(|i| {
            (0..n)
                .map(|j| {
                    (0..n)
                        .map(|k| if i == j && j == k { kappa / total } else { 1.0 / total })
                        .collect()
                })
                .collect()
        })
        .collect())
}

pub fn count_posterior_trimodal(
    a_obs: f64,
    v_obs: f64,
    t_obs: f64,
    sigmas: (f64, f64, f64),
    prior: &[Vec<Vec<f64>>],
) -> Result<CountPosterior3> {
    let (sa, sv, st) = sigmas;
    if !(sa > 0.0 && sv > 0.0 && st > 0.0) {
        return Err(ModelError::invalid("count_posterior_trimodal: sigmas must be > 0"));
    }
    let n = prior.len();
    if n == 0 || prior.iter().any(|p| p.len() != n || p.iter().any(|q| q.len() != n)) {
        return Err(ModelError::invalid("trimodal prior must be a non-empty cube"));
    }
    let la: Vec<f64> = (0..n).map(|i| normal_pdf_unchecked(a_obs, i as f64, sa)).collect();
    let lv: Vec<f64> = (0..n).map(|j| normal_pdf_unchecked(v_obs, j as f64, sv)).collect();
    let lt: Vec<f64> = (0..n).map(|k| normal_pdf_unchecked(t_obs, k as f64, st)).collect();
    let mut joint = vec![vec![vec![0.0; n]; n]; n];
    let mut total = 0.0;
    for i in 0..n {
        for j in 0..n {
            for k in 0..n {
                let w = la[i] * lv[j] * lt[k] * prior[i][j][k];
                joint[i][j][k] = w;
                total += w;
            }
        }
    }
    if total <= 0.0 {
        return Err(ModelError::DegeneratePrior);
    }
    let mut ma = vec![0.0; n];
    let mut mv = vec![0.0; n];
    let mut mt = vec![0.0; n];
    for i in 0..n {
        for j in 0..n {
            for k in 0..n {
                joint[i][j][k] /= total;
                ma[i] += joint[i][j][k];
                mv[j] += joint[i][j][k];
                mt[k] += joint[i][j][k];
            }
        }
    }
    Ok(CountPosterior3 { joint, marginal_a: ma, marginal_v: mv, marginal_t: mt })
}

/// Parameters of the common-cause generative model: sources are drawn from
/// a zero-mean Gaussian with sd `sigma_prior`; with probability `p_common`
/// both measurements share one source.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct CausalInferenceParams {
    pub sigma_a: f64,
    pub sigma_v: f64,
    pub sigma_prior: f64,
    pub p_common: f64,
}

impl CausalInferenceParams {
    pub fn new(sigma_a: f64, sigma_v: f64, sigma_prior: f64, p_common: f64) -> Result<Self> {
        if !(sigma_a > 0.0 && sigma_v > 0.0 && sigma_prior > 0.0) {
            return Err(ModelError::invalid("causal inference sigmas must be > 0"));
        }
        if !(0.0..=1.0).contains(&p_common) {
            return Err(ModelError::invalid("p_common must be in [0, 1]"));
        }
        Ok(CausalInferenceParams { sigma_a, sigma_v, sigma_prior, p_common })
    }
}

/// Posterior probability that two spatial measurements share one cause.
///
/// Marginal likelihoods are closed-form Gaussian integrals over the source
/// location(s):
///   C=1: N(x_a - x_v; 0, sqrt(sa^2+sv^2)) coupling times prior shrinkage,
///   C=2: independent N(x; 0, sqrt(s^2+sp^2)) factors.
pub fn common_cause_posterior(x_a: f64, x_v: f64, p: &CausalInferenceParams) -> Result<f64> {
    let (va, vv, vp) = (
        p.sigma_a * p.sigma_a,
        p.sigma_v * p.sigma_v,
        p.sigma_prior * p.sigma_prior,
    );
    // One source s ~ N(0, vp), x_a ~ N(s, va), x_v ~ N(s, vv):
    // L1 = exp(-((xa-xv)^2 vp + xa^2 vv + xv^2 va) / (2 det)) / (2 pi sqrt(det)),
    // det = va*vv + va*vp + vv*vp.
    let det = va * vv + va * vp + vv * vp;
    let q1 = ((x_a - x_v) * (x_a - x_v) * vp + x_a * x_a * vv + x_v * x_v * va) / det;
    let l1 = (-0.5 * q1).exp() / (2.0 * std::f64::consts::PI * det.sqrt());
    // Independent sources: each measurement is N(0, s^2 + sp^2).
    let l2 = normal_pdf_unchecked(x_a, 0.0, (va + vp).sqrt())
        * normal_pdf_unchecked(x_v, 0.0, (vv + vp).sqrt());
    let num = p.p_common * l1;
    let den = num + (1.0 - p.p_common) * l2;
    if den <= 0.0 {
        // Both hypotheses underflowed: measurements are implausibly far out.
        // Fall back to the prior.
        return Ok(p.p_common);
    }
    Ok(num / den)
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub enum CausalReadout {
    /// Posterior-weighted mix of the fused and unimodal estimates.
    ModelAveraging,
    /// Commit to whichever causal structure is more probable.
    ModelSelection,
}

/// Location estimates for both modalities under causal inference. The fused
/// component is the inverse-variance combination of the two measurements;
/// segregated components are the raw unimodal measurements.
pub fn localize_with_causal_inference(
    x_a: f64,
    x_v: f64,
    p: &CausalInferenceParams,
    readout: CausalReadout,
) -> Result<(f64, f64)> {
    let pc = common_cause_posterior(x_a, x_v, p)?;
    let fused = combine_gaussian(
        &GaussianEstimate { mean: x_a, sd: p.sigma_a },
        &GaussianEstimate { mean: x_v, sd: p.sigma_v },
    )?
    .combined
    .mean;
    match readout {
        CausalReadout::ModelAveraging => Ok((
            pc * fused + (1.0 - pc) * x_a,
            pc * fused + (1.0 - pc) * x_v,
        )),
        CausalReadout::ModelSelection => {
            if pc > 0.5 {
                Ok((fused, fused))
            } else {
                Ok((x_a, x_v))
            }
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn g(mean: f64, sd: f64) -> GaussianEstimate {
        GaussianEstimate::new(mean, sd).unwrap()
    }

    #[test]
    fn equal_reliability_splits_the_difference() {
        let r = combine_gaussian(&g(0.0, 1.0), &g(3.0, 1.0)).unwrap();
        assert!((r.combined.mean - 1.5).abs() < 1e-12);
        assert!((r.weight_1 - 0.5).abs() < 1e-12);
        assert!((r.weight_2 - 0.5).abs() < 1e-12);
    }

    #[test]
    fn hand_computed_weights() {
        let r = combine_gaussian(&g(0.0, 1.0), &g(3.0, 2.0)).unwrap();
        assert!((r.weight_1 - 0.8).abs() < 1e-12);
        assert!((r.weight_2 - 0.2).abs() < 1e-12);
        assert!((r.combined.mean - 0.6).abs() < 1e-12);
        assert!((r.combined.variance() - 0.8).abs() < 1e-12);
    }

    /// Independent route: the combined mean is where the gridded product of
    /// the two densities peaks.
    #[test]
    fn combined_mean_matches_density_product_argmax() {
        let (e1, e2) = (g(0.0, 1.0), g(3.0, 2.0));
        let mut best = (f64::MIN, 0.0);
        let mut x = -2.0;
        while x <= 5.0 {
            let p = normal_pdf_unchecked(x, e1.mean, e1.sd) * normal_pdf_unchecked(x, e2.mean, e2.sd);
            if p > best.0 {
                best = (p, x);
            }
            x += 1e-4;
        }
        let r = combine_gaussian(&e1, &e2).unwrap();
        assert!((best.1 - r.combined.mean).abs() < 1e-3, "argmax {}", best.1);
    }

    #[test]
    fn uninformative_cue_is_ignored() {
        let r = combine_gaussian(&g(1.25, 0.7), &g(42.0, f64::INFINITY)).unwrap();
        assert_eq!(r.combined.mean, 1.25);
        assert_eq!(r.combined.sd, 0.7);
        assert_eq!(r.weight_1, 1.0);
        assert_eq!(r.weight_2, 0.0);
        assert!(combine_gaussian(&g(0.0, f64::INFINITY), &g(1.0, f64::INFINITY)).is_err());
    }

    #[test]
    fn combined_variance_beats_both_inputs() {
        let mut rng = crate::rng::substream(55, 0);
        for _ in 0..1000 {
            let s1 = 0.05 + 5.0 * rng.next_f64();
            let s2 = 0.05 + 5.0 * rng.next_f64();
            let r = combine_gaussian(&g(0.0, s1), &g(1.0, s2)).unwrap();
            let v = r.combined.variance();
            assert!(v < s1 * s1 && v < s2 * s2);
            assert!((v - 1.0 / (1.0 / (s1 * s1) + 1.0 / (s2 * s2))).abs() < 1e-12);
            assert!((r.weight_1 + r.weight_2 - 1.0).abs() < 1e-12);
            let (lo, hi) = (0.0_f64.min(1.0), 0.0_f64.max(1.0));
            assert!(r.combined.mean >= lo && r.combined.mean <= hi);
        }
    }

    #[test]
    fn squared_precision_rule_shifts_weights() {
        let r = combine_gaussian_with(&g(0.0, 1.0), &g(1.0, 2.0), WeightRule::SquaredPrecision)
            .unwrap();
        // precisions 1 and 0.25; squared 1 and 0.0625
        assert!((r.weight_1 - 1.0 / 1.0625).abs() < 1e-12);
        // variance unchanged by the rule switch
        assert!((r.combined.variance() - 0.8).abs() < 1e-12);
    }

    #[test]
    fn symmetric_posterior_for_symmetric_inputs() {
        let prior = CountPrior::flat(4);
        let p = count_posterior(1.0, 1.0, 0.5, 0.5, &prior).unwrap();
        for i in 0..5 {
            for j in 0..5 {
                assert!((p.joint[i][j] - p.joint[j][i]).abs() < 1e-12);
            }
        }
        assert_eq!(p.marginal_a, p.marginal_v);
    }

    #[test]
    fn fission_readout_hand_configuration() {
        // Sharp audio at 2, vague vision at 1, coupling 4:1 -> visual mode 2.
        let prior = CountPrior::diagonal_coupling(4, 4.0).unwrap();
        let p = count_posterior(2.0, 1.0, 0.3, 1.0, &prior).unwrap();
        assert_eq!(p.mode_v(), 2);
        // Brute-force oracle over every cell.
        let mut raw = vec![vec![0.0; 5]; 5];
        let mut total = 0.0;
        for i in 0..5 {
            for j in 0..5 {
                raw[i][j] = normal_pdf_unchecked(2.0, i as f64, 0.3)
                    * normal_pdf_unchecked(1.0, j as f64, 1.0)
                    * prior.get(i, j);
                total += raw[i][j];
            }
        }
        for i in 0..5 {
            for j in 0..5 {
                assert!((p.joint[i][j] - raw[i][j] / total).abs() < 1e-12);
            }
        }
    }

    #[test]
    fn sharp_likelihood_pins_the_count() {
        let prior = CountPrior::flat(4);
        let p = count_posterior(3.1, 1.0, 0.02, 1.0, &prior).unwrap();
        assert_eq!(p.mode_a(), 3);
        assert!(p.marginal_a[3] > 0.999_999);
    }

    #[test]
    fn posterior_normalizes_and_marginals_agree() {
        let prior = CountPrior::diagonal_coupling(4, 2.5).unwrap();
        let p = count_posterior(1.7, 0.4, 0.6, 1.3, &prior).unwrap();
        let total: f64 = p.joint.iter().flatten().sum();
        assert!((total - 1.0).abs() < 1e-9);
        for i in 0..5 {
            let row: f64 = p.joint[i].iter().sum();
            assert!((row - p.marginal_a[i]).abs() < 1e-9);
            let col: f64 = (0..5).map(|r| p.joint[r][i]).sum();
            assert!((col - p.marginal_v[i]).abs() < 1e-9);
        }
    }

    #[test]
    fn degenerate_mass_is_an_error() {
        let mut joint = vec![vec![0.0; 5]; 5];
        joint[4][4] = 1.0;
        let prior = CountPrior::from_joint(joint).unwrap();
        // Observation astronomically far from the only supported cell.
        match count_posterior(-400.0, -400.0, 0.1, 0.1, &prior) {
            Err(ModelError::DegeneratePrior) => {}
            other => panic!("expected degenerate prior, got {other:?}"),
        }
    }

    #[test]
    fn trimodal_reduces_to_bimodal_when_touch_uninformative() {
        let prior2 = CountPrior::diagonal_coupling(4, 4.0).unwrap();
        // Cube prior that couples A and V only, flat over T.
        let n = 5;
        let cube: Vec<Vec<Vec<f64>>> = (0..n)
            .map(|i| {
                (0..n)
                    .map(|j| (0..n).map(|_| prior2.get(i, j) / n as f64).collect())
                    .collect()
            })
            .collect();
        let p3 = count_posterior_trimodal(2.0, 1.0, 2.0, (0.3, 1.0, 1e8), &cube).unwrap();
        let p2 = count_posterior(2.0, 1.0, 0.3, 1.0, &prior2).unwrap();
        let reduced = p3.marginalize_t();
        for i in 0..n {
            for j in 0..n {
                assert!((reduced.joint[i][j] - p2.joint[i][j]).abs() < 1e-9);
            }
        }
    }

    #[test]
    fn trimodal_diagonal_mode_for_agreeing_sharp_cues() {
        let cube = flat_prior_3(4);
        let p = count_posterior_trimodal(2.0, 2.0, 2.0, (0.05, 0.05, 0.05), &cube).unwrap();
        let mut best = (0usize, 0usize, 0usize);
        let mut best_p = 0.0;
        for i in 0..5 {
            for j in 0..5 {
                for k in 0..5 {
                    if p.joint[i][j][k] > best_p {
                        best_p = p.joint[i][j][k];
                        best = (i, j, k);
                    }
                }
            }
        }
        assert_eq!(best, (2, 2, 2));
    }

    #[test]
    fn touch_induced_auditory_fission() {
        // Sharp touch at 2, vague audio at 1, coupled prior: audio mode 2.
        let cube = diagonal_coupling_3(4, 6.0).unwrap();
        let p = count_posterior_trimodal(1.0, 1.0, 2.0, (1.0, 1.0, 0.1), &cube).unwrap();
        assert_eq!(p.mode_a(), 2);
        // Brute-force tensor oracle for the winning marginal.
        let mut marginal = vec![0.0; 5];
        let mut total = 0.0;
        for i in 0..5 {
            for j in 0..5 {
                for k in 0..5 {
                    let w = normal_pdf_unchecked(1.0, i as f64, 1.0)
                        * normal_pdf_unchecked(1.0, j as f64, 1.0)
                        * normal_pdf_unchecked(2.0, k as f64, 0.1)
                        * cube[i][j][k];
                    marginal[i] += w;
                    total += w;
                }
            }
        }
        for i in 0..5 {
            assert!((p.marginal_a[i] - marginal[i] / total).abs() < 1e-12);
        }
    }

    #[test]
    fn fission_mass_monotone_in_noise() {
        // At the fission observations (audio 2, vision 1, coupled prior),
        // the posterior mass on two flashes grows with visual noise up
        // through sigma_v = 1 and shrinks with auditory noise. (For very
        // large sigma_v the mass necessarily relaxes back toward the prior
        // share, so the increasing limb ends somewhat above 1.)
        let prior = CountPrior::diagonal_coupling(4, 4.0).unwrap();
        let mass_v2 = |sigma_a: f64, sigma_v: f64| {
            count_posterior(2.0, 1.0, sigma_a, sigma_v, &prior).unwrap().marginal_v[2]
        };
        let mut last = -1.0;
        for sigma_v in [0.05, 0.1, 0.2, 0.4, 0.7, 1.0] {
            let m = mass_v2(0.3, sigma_v);
            assert!(m >= last, "not increasing in sigma_v at {sigma_v}: {m} < {last}");
            last = m;
        }
        let mut last = 2.0;
        for sigma_a in [0.1, 0.3, 0.6, 1.0, 1.5] {
            let m = mass_v2(sigma_a, 1.0);
            assert!(m <= last, "not decreasing in sigma_a at {sigma_a}: {m} > {last}");
            last = m;
        }
    }

    #[test]
    fn averaging_readout_is_continuous() {
        // Finite-difference continuity scan over the visual measurement.
        let p = CausalInferenceParams::new(2.0, 1.0, 15.0, 0.6).unwrap();
        let h = 1e-4;
        let mut x = -20.0;
        while x < 20.0 {
            let (a0, v0) =
                localize_with_causal_inference(-3.0, x, &p, CausalReadout::ModelAveraging).unwrap();
            let (a1, v1) =
                localize_with_causal_inference(-3.0, x + h, &p, CausalReadout::ModelAveraging)
                    .unwrap();
            assert!((a1 - a0).abs() < 50.0 * h, "auditory jump at {x}");
            assert!((v1 - v0).abs() < 50.0 * h, "visual jump at {x}");
            x += 0.5;
        }
    }

    #[test]
    fn coincident_evidence_favors_common_cause() {
        let p = CausalInferenceParams::new(1.0, 1.0, 10.0, 0.5).unwrap();
        assert!(common_cause_posterior(0.3, 0.3, &p).unwrap() > 0.5);
        // Widely discrepant evidence rejects it.
        assert!(common_cause_posterior(-30.0, 30.0, &p).unwrap() < 1e-6);
    }

    #[test]
    fn common_cause_monotone_in_discrepancy_and_prior() {
        let p = CausalInferenceParams::new(1.0, 2.0, 10.0, 0.5).unwrap();
        let mut last = f64::INFINITY;
        for d in [0.0, 0.5, 1.0, 2.0, 4.0, 8.0, 16.0] {
            let pc = common_cause_posterior(-d / 2.0, d / 2.0, &p).unwrap();
            assert!(pc <= last + 1e-12, "not decreasing at {d}");
            last = pc;
        }
        let mut prev = 0.0;
        for pcm in [0.0, 0.25, 0.5, 0.75, 1.0] {
            let p = CausalInferenceParams::new(1.0, 2.0, 10.0, pcm).unwrap();
            let pc = common_cause_posterior(0.0, 1.5, &p).unwrap();
            assert!(pc >= prev, "not increasing at {pcm}");
            prev = pc;
        }
    }

    #[test]
    fn forced_segregation_returns_raw_measurements() {
        let p = CausalInferenceParams::new(2.0, 1.0, 10.0, 0.0).unwrap();
        let (a, v) =
            localize_with_causal_inference(-5.0, 5.0, &p, CausalReadout::ModelAveraging).unwrap();
        assert_eq!((a, v), (-5.0, 5.0));
        let (a, v) =
            localize_with_causal_inference(-5.0, 5.0, &p, CausalReadout::ModelSelection).unwrap();
        assert_eq!((a, v), (-5.0, 5.0));
    }

    #[test]
    fn ventriloquist_shift_directions() {
        // Reliable vision drags the auditory estimate toward it.
        let p = CausalInferenceParams::new(4.0, 0.5, 20.0, 0.8).unwrap();
        let (a_est, v_est) =
            localize_with_causal_inference(-5.0, 5.0, &p, CausalReadout::ModelAveraging).unwrap();
        assert!(a_est > -5.0, "auditory estimate {a_est} should move toward +5");
        assert!((a_est - -5.0).abs() > (v_est - 5.0).abs(), "vision dominates");
        // Swapped reliabilities reverse the capture direction.
        let p_rev = CausalInferenceParams::new(0.5, 4.0, 20.0, 0.8).unwrap();
        let (a2, v2) =
            localize_with_causal_inference(-5.0, 5.0, &p_rev, CausalReadout::ModelAveraging)
                .unwrap();
        assert!(v2 < 5.0, "visual estimate {v2} should move toward -5");
        assert!((v2 - 5.0).abs() > (a2 - -5.0).abs(), "audio dominates");
    }

    #[test]
    fn selection_agrees_with_averaging_in_the_limits() {
        // p(C=1) -> 1: coincident cues, high p_common.
        let p = CausalInferenceParams::new(1.0, 1.0, 10.0, 0.99).unwrap();
        let (aa, av) =
            localize_with_causal_inference(0.1, 0.1, &p, CausalReadout::ModelAveraging).unwrap();
        let (sa, sv) =
            localize_with_causal_inference(0.1, 0.1, &p, CausalReadout::ModelSelection).unwrap();
        assert!((aa - sa).abs() < 1e-3 && (av - sv).abs() < 1e-3);
        // p(C=1) -> 0: far-apart cues.
        let (aa, av) =
            localize_with_causal_inference(-40.0, 40.0, &p, CausalReadout::ModelAveraging).unwrap();
        let (sa, sv) =
            localize_with_causal_inference(-40.0, 40.0, &p, CausalReadout::ModelSelection).unwrap();
        assert!((aa - sa).abs() < 1e-6 && (av - sv).abs() < 1e-6);
    }

    #[test]
    fn prior_validation() {
        assert!(CountPrior::from_joint(vec![vec![0.5, 0.5]]).is_err());
        assert!(CountPrior::from_joint(vec![vec![0.9, 0.0], vec![0.0, 0.2]]).is_err());
        assert!(CountPrior::diagonal_coupling(4, 0.5).is_err());
        assert!(CausalInferenceParams::new(1.0, 1.0, 1.0, 1.5).is_err());
    }
}
