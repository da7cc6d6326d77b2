//! Response probabilities and the negative log-likelihood.
//!
//! Probabilities are analytic where the observer admits a closed form (order
//! judgements, switching counts) and deterministic quadrature elsewhere
//! (motion link, causal-inference count reports), so the likelihood surface
//! is smooth enough for simplex descent and identical on every evaluation.

use std::collections::HashMap;

use crate::error::{ModelError, Result};
use crate::fusion::CountPrior;
use crate::paradigms::{
    effective_soa, ObserverModel, Response, Task, TrialRecord, TrialSpec,
};
use crate::prob::{normal_cdf, normal_pdf_unchecked};
use crate::stimulus::Modality;

use super::family::ObserverFamily;

/// Lower bound on any modeled response probability; keeps the likelihood
/// finite when a model assigns (numerically) zero mass to an observed
/// response, at the cost of a documented bias far from the optimum.
pub const PROBABILITY_FLOOR: f64 = 1e-6;

/// Quadrature panels per axis for the count-report and motion integrals.
const QUAD_PANELS: usize = 128;
/// Integration half-width in noise standard deviations.
const QUAD_SIGMAS: f64 = 6.0;

fn simpson_weights(n: usize) -> Vec<f64> {
    // n panels (even), n+1 nodes, composite Simpson coefficients.
    let mut w = vec![0.0; n + 1];
    w[0] = 1.0;
    w[n] = 1.0;
    for (i, wi) in w.iter_mut().enumerate().take(n).skip(1) {
        *wi = if i % 2 == 1 { 4.0 } else { 2.0 };
    }
    w
}

/// P(report = k) for a rounded, clamped Gaussian count readout.
fn rounded_count_probability(k: u32, mean: f64, sd: f64, max_count: u32) -> f64 {
    if k == 0 {
        normal_cdf(0.5, mean, sd)
    } else if k >= max_count {
        1.0 - normal_cdf(max_count as f64 - 0.5, mean, sd)
    } else {
        normal_cdf(k as f64 + 0.5, mean, sd) - normal_cdf(k as f64 - 0.5, mean, sd)
    }
}

/// Distribution over count reports for the causal-inference observer on one
/// trial type, by 2-D Simpson quadrature over the measurement noise.
fn causal_count_distribution(
    params: &crate::paradigms::CausalInferenceObserverParams,
    n_a: f64,
    n_v: f64,
) -> Result<Vec<f64>> {
    let prior = CountPrior::diagonal_coupling(params.max_count, params.coupling_kappa)?;
    let n_counts = params.max_count as usize + 1;
    let w = simpson_weights(QUAD_PANELS);

    let a_lo = n_a - QUAD_SIGMAS * params.sigma_a;
    let a_hi = n_a + QUAD_SIGMAS * params.sigma_a;
    let v_lo = n_v - QUAD_SIGMAS * params.sigma_v;
    let v_hi = n_v + QUAD_SIGMAS * params.sigma_v;
    let da = (a_hi - a_lo) / QUAD_PANELS as f64;
    let dv = (v_hi - v_lo) / QUAD_PANELS as f64;

    let mut mass = vec![0.0; n_counts];
    let mut total = 0.0;
    for (ia, wa) in w.iter().enumerate() {
        let a = a_lo + ia as f64 * da;
        // g[j] = sum_i P(a | Z_A = i) prior(i, j): the visual marginal is
        // proportional to P(v | Z_V = j) * g[j].
        let like_a: Vec<f64> =
            (0..n_counts).map(|i| normal_pdf_unchecked(a, i as f64, params.sigma_a)).collect();
        let g: Vec<f64> = (0..n_counts)
            .map(|j| (0..n_counts).map(|i| like_a[i] * prior.get(i, j)).sum())
            .collect();
        let density_a = wa * normal_pdf_unchecked(a, n_a, params.sigma_a);
        for (iv, wv) in w.iter().enumerate() {
            let v = v_lo + iv as f64 * dv;
            let mut best = 0usize;
            let mut best_val = f64::MIN;
            for (j, gj) in g.iter().enumerate() {
                let m = normal_pdf_unchecked(v, j as f64, params.sigma_v) * gj;
                if m > best_val {
                    best_val = m;
                    best = j;
                }
            }
            let weight = density_a * wv * normal_pdf_unchecked(v, n_v, params.sigma_v);
            mass[best] += weight;
            total += weight;
        }
    }
    if total <= 0.0 {
        return Err(ModelError::DegeneratePrior);
    }
    for m in &mut mass {
        *m /= total;
    }
    Ok(mass)
}

fn switching_count_distribution(
    params: &crate::paradigms::SwitchingParams,
    reliability_biased: bool,
    n_a: f64,
    n_v: f64,
) -> Vec<f64> {
    let p_aud = if reliability_biased {
        params.reliability_biased_p_auditory()
    } else {
        params.p_choose_auditory
    };
    (0..=params.max_count)
        .map(|k| {
            p_aud * rounded_count_probability(k, n_a, params.sigma_a, params.max_count)
                + (1.0 - p_aud)
                    * rounded_count_probability(k, n_v, params.sigma_v, params.max_count)
        })
        .collect()
}

fn toj_first_listed_side(spec: &TrialSpec) -> Result<crate::paradigms::Side> {
    let first = spec
        .events(Modality::Visual)
        .next()
        .ok_or_else(|| ModelError::InvalidInput("order trial has no visual events".into()))?;
    Ok(if first.location_deg.unwrap_or(0.0) < 0.0 {
        crate::paradigms::Side::Left
    } else {
        crate::paradigms::Side::Right
    })
}

/// Probability of one motion report: expectation of the logistic link over
/// the Gaussian perceived-SOA noise, by Simpson quadrature.
fn motion_report_probability(
    params: &crate::paradigms::TemporalCaptureParams,
    soa_eff: f64,
) -> f64 {
    let s = params.noise_sd_ms * std::f64::consts::SQRT_2;
    let w = simpson_weights(QUAD_PANELS);
    let lo = -QUAD_SIGMAS * s;
    let step = 2.0 * QUAD_SIGMAS * s / QUAD_PANELS as f64;
    let mut num = 0.0;
    let mut den = 0.0;
    for (i, wi) in w.iter().enumerate() {
        let eps = lo + i as f64 * step;
        let density = wi * normal_pdf_unchecked(eps, 0.0, s);
        num += density * params.motion_probability((soa_eff + eps).abs());
        den += density;
    }
    num / den
}

/// P(response | spec) under an observer model. Analytic for order and
/// switching-count observers; quadrature for the rest.
pub fn response_probability(
    observer: &ObserverModel,
    spec: &TrialSpec,
    response: &Response,
) -> Result<f64> {
    match (observer, spec.task) {
        (ObserverModel::TemporalCapture(p), Task::Toj) => {
            let soa = effective_soa(spec, p)?;
            let s = p.noise_sd_ms * std::f64::consts::SQRT_2;
            let first = toj_first_listed_side(spec)?;
            let p_first = normal_cdf(soa / s, 0.0, 1.0);
            match response {
                Response::First(side) if *side == first => Ok(p_first),
                Response::First(_) => Ok(1.0 - p_first),
                _ => Ok(0.0),
            }
        }
        (ObserverModel::TemporalCapture(p), Task::Ternary) => {
            let soa = effective_soa(spec, p)?;
            let s = p.noise_sd_ms * std::f64::consts::SQRT_2;
            let n_tones = spec.events(Modality::Auditory).count();
            let band = p.simultaneity_band_ms
                + if n_tones == 1 { p.single_tone_band_inflation_ms } else { 0.0 };
            let first = toj_first_listed_side(spec)?;
            let p_low = normal_cdf((-band - soa) / s, 0.0, 1.0);
            let p_high = 1.0 - normal_cdf((band - soa) / s, 0.0, 1.0);
            match response {
                Response::Simultaneous => Ok((1.0 - p_low - p_high).max(0.0)),
                Response::First(side) if *side == first => Ok(p_high),
                Response::First(_) => Ok(p_low),
                _ => Ok(0.0),
            }
        }
        (ObserverModel::TemporalCapture(p), Task::MotionDirection) => {
            let soa = effective_soa(spec, p)?;
            let p_motion = motion_report_probability(p, soa);
            match response {
                Response::MotionPerceived(true) => Ok(p_motion),
                Response::MotionPerceived(false) => Ok(1.0 - p_motion),
                _ => Ok(0.0),
            }
        }
        (ObserverModel::CausalInference(p), Task::CountReport) => {
            let n_a = spec.pulse_count(Modality::Auditory) as f64;
            let n_v = spec.pulse_count(Modality::Visual) as f64;
            let dist = causal_count_distribution(p, n_a, n_v)?;
            match response {
                Response::Count(k) => Ok(dist.get(*k as usize).copied().unwrap_or(0.0)),
                _ => Ok(0.0),
            }
        }
        (ObserverModel::FocalSwitching(p), Task::CountReport)
        | (ObserverModel::ModalitySwitching(p), Task::CountReport) => {
            let biased = matches!(observer, ObserverModel::ModalitySwitching(_));
            let n_a = spec.pulse_count(Modality::Auditory) as f64;
            let n_v = spec.pulse_count(Modality::Visual) as f64;
            let dist = switching_count_distribution(p, biased, n_a, n_v);
            match response {
                Response::Count(k) => Ok(dist.get(*k as usize).copied().unwrap_or(0.0)),
                _ => Ok(0.0),
            }
        }
        _ => Err(ModelError::IncompatibleObserver(format!(
            "no likelihood for a {} observer on a {} task",
            observer.kind(),
            spec.task.name()
        ))),
    }
}

fn spec_key(spec: &TrialSpec) -> String {
    // Stimulus layout + task identifies a trial type for caching.
    let mut key = String::from(spec.task.name());
    for e in &spec.stimuli {
        key.push_str(&format!(
            "|{}@{:.6}@{:?}@{}@{}",
            e.modality.short(),
            e.onset_ms,
            e.location_deg,
            e.feature_tag,
            e.count
        ));
    }
    key
}

/// Negative log-likelihood of the data under an observer family at a
/// parameter vector. Response distributions are cached per trial type.
pub fn nll(family: &ObserverFamily, params: &[f64], data: &[TrialRecord]) -> Result<f64> {
    if data.is_empty() {
        return Err(ModelError::InvalidInput("cannot evaluate a likelihood on empty data".into()));
    }
    let observer = family.build(params)?;
    let mut count_cache: HashMap<String, Vec<f64>> = HashMap::new();
    let mut total = 0.0;
    for rec in data {
        let p = match (&observer, rec.spec.task, &rec.response) {
            // Count observers share a per-type distribution; cache it.
            (ObserverModel::CausalInference(cp), Task::CountReport, Response::Count(k)) => {
                let key = spec_key(&rec.spec);
                if !count_cache.contains_key(&key) {
                    let n_a = rec.spec.pulse_count(Modality::Auditory) as f64;
                    let n_v = rec.spec.pulse_count(Modality::Visual) as f64;
                    count_cache.insert(key.clone(), causal_count_distribution(cp, n_a, n_v)?);
                }
                count_cache[&key].get(*k as usize).copied().unwrap_or(0.0)
            }
            (ObserverModel::FocalSwitching(sp), Task::CountReport, Response::Count(k))
            | (ObserverModel::ModalitySwitching(sp), Task::CountReport, Response::Count(k)) => {
                let biased = matches!(observer, ObserverModel::ModalitySwitching(_));
                let key = spec_key(&rec.spec);
                if !count_cache.contains_key(&key) {
                    let n_a = rec.spec.pulse_count(Modality::Auditory) as f64;
                    let n_v = rec.spec.pulse_count(Modality::Visual) as f64;
                    count_cache.insert(key.clone(), switching_count_distribution(sp, biased, n_a, n_v));
                }
                count_cache[&key].get(*k as usize).copied().unwrap_or(0.0)
            }
            _ => response_probability(&observer, &rec.spec, &rec.response)?,
        };
        total -= p.max(PROBABILITY_FLOOR).ln();
    }
    Ok(total)
}
