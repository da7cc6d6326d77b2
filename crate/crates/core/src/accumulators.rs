//! Accumulator models of multisensory reaction time: the race model, the
//! drift-diffusion model (closed-form mean RT / error rate plus Monte-Carlo
//! simulation), and the coactivation model that sums unimodal evidence into
//! a single accumulator.

use crate::error::{ModelError, Result};
use crate::prob::tanh_over_x;
use crate::rng::{substream, RngStream};
use rayon::prelude::*;
use serde::{Deserialize, Serialize};

/// Drift-diffusion parameters. Evidence drifts at `drift_a` per ms with
/// Wiener noise of intensity `noise_c`, absorbing at the symmetric bounds
/// `±threshold_z` from a start point `start_x0`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct DdmParams {
    pub drift_a: f64,
    pub noise_c: f64,
    pub threshold_z: f64,
    pub nondecision_ms: f64,
    pub start_x0: f64,
}

impl DdmParams {
    pub fn new(drift_a: f64, noise_c: f64, threshold_z: f64) -> Result<Self> {
        if !drift_a.is_finite() {
            return Err(ModelError::invalid("drift must be finite"));
        }
        if !(noise_c >= 0.0) || !noise_c.is_finite() {
            return Err(ModelError::invalid(format!("noise must be >= 0, got {noise_c}")));
        }
        if !(threshold_z > 0.0) || !threshold_z.is_finite() {
            return Err(ModelError::invalid(format!(
                "threshold must be > 0, got {threshold_z}"
            )));
        }
        Ok(DdmParams {
            drift_a,
            noise_c,
            threshold_z,
            nondecision_ms: 0.0,
            start_x0: 0.0,
        })
    }

    pub fn with_nondecision(mut self, t0_ms: f64) -> Result<Self> {
        if !(t0_ms >= 0.0) {
            return Err(ModelError::invalid("non-decision time must be >= 0"));
        }
        self.nondecision_ms = t0_ms;
        Ok(self)
    }

    pub fn with_start(mut self, x0: f64) -> Result<Self> {
        if !(x0.abs() < self.threshold_z) {
            return Err(ModelError::invalid("|start| must be < threshold"));
        }
        self.start_x0 = x0;
        Ok(self)
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub enum Choice {
    Upper,
    Lower,
}

/// Outcome of one simulated decision.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct Decision {
    pub choice: Choice,
    pub rt_ms: f64,
}

/// Peripheral channel latency distribution for the race model.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub enum LatencyDistribution {
    /// Exponential with the given rate (1/ms).
    Exponential { rate_per_ms: f64 },
    /// Gaussian truncated below at `floor_ms` (resampled, not clamped).
    ShiftedGaussian { mean_ms: f64, sd_ms: f64, floor_ms: f64 },
}

impl LatencyDistribution {
    pub fn validate(&self) -> Result<()> {
        match *self {
            LatencyDistribution::Exponential { rate_per_ms } => {
                if !(rate_per_ms > 0.0) {
                    return Err(ModelError::invalid("latency rate must be > 0"));
                }
            }
            LatencyDistribution::ShiftedGaussian { sd_ms, floor_ms, mean_ms } => {
                if !(sd_ms > 0.0) {
                    return Err(ModelError::invalid("latency sd must be > 0"));
                }
                if !(floor_ms >= 0.0) {
                    return Err(ModelError::invalid("latency floor must be >= 0"));
                }
                if mean_ms < floor_ms - 8.0 * sd_ms {
                    return Err(ModelError::invalid(
                        "truncated-Gaussian latency: mean too far below floor",
                    ));
                }
            }
        }
        Ok(())
    }

    pub fn sample(&self, rng: &mut RngStream) -> f64 {
        match *self {
            LatencyDistribution::Exponential { rate_per_ms } => rng.exponential_rate(rate_per_ms),
            LatencyDistribution::ShiftedGaussian { mean_ms, sd_ms, floor_ms } => {
                for _ in 0..10_000 {
                    let x = rng.normal(mean_ms, sd_ms);
                    if x >= floor_ms {
                        return x;
                    }
                }
                floor_ms
            }
        }
    }
}

/// Per-modality channel latency models for a race between audio and vision.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct ChannelLatencyModel {
    pub auditory: LatencyDistribution,
    pub visual: LatencyDistribution,
}

impl ChannelLatencyModel {
    pub fn new(auditory: LatencyDistribution, visual: LatencyDistribution) -> Result<Self> {
        auditory.validate()?;
        visual.validate()?;
        Ok(ChannelLatencyModel { auditory, visual })
    }

    /// Draw one (auditory, visual) latency pair; auditory first.
    pub fn sample_pair(&self, rng: &mut RngStream) -> (f64, f64) {
        let a = self.auditory.sample(rng);
        let v = self.visual.sample(rng);
        (a, v)
    }
}

/// Multisensory processing time of the race model: the winner of the two
/// channel processing times.
pub fn race_time(d_a: f64, d_v: f64) -> Result<f64> {
    if !d_a.is_finite() || !d_v.is_finite() || d_a < 0.0 || d_v < 0.0 {
        return Err(ModelError::invalid(format!(
            "race latencies must be finite and non-negative, got ({d_a}, {d_v})"
        )));
    }
    Ok(d_a.min(d_v))
}

/// Closed-form mean decision time plus non-decision time.
///
/// Valid for a centered start (`start_x0 = 0`); the drift-free limit is
/// handled analytically as `z^2/c^2`.
pub fn ddm_mean_rt(p: &DdmParams) -> f64 {
    let c2 = p.noise_c * p.noise_c;
    let u = p.drift_a * p.threshold_z / c2;
    // (z/A) tanh(Az/c^2) == (z^2/c^2) * tanh(u)/u
    (p.threshold_z * p.threshold_z / c2) * tanh_over_x(u) + p.nondecision_ms
}

/// Closed-form probability of absorbing at the lower bound (centered start).
pub fn ddm_error_rate(p: &DdmParams) -> f64 {
    let c2 = p.noise_c * p.noise_c;
    1.0 / (1.0 + (2.0 * p.drift_a * p.threshold_z / c2).exp())
}

pub(crate) enum PathEnd {
    Absorbed { choice: Choice, decision_ms: f64 },
    DriftExhausted { x: f64, elapsed_ms: f64 },
}

/// Euler–Maruyama first-passage stepper shared by the constant-drift and
/// time-varying models. `drift_at(t)` returns the drift for the step starting
/// at `t`, or `None` once the stimulus ends.
///
/// Within-step boundary crossings are detected with the Brownian-bridge
/// crossing probability exp(-2(z-x0)(z-x1)/(c^2 dt)); without this check the
/// discrete walk systematically overshoots the analytic first-passage times
/// at any usable step size. The two barriers are tested per step, which
/// assumes c^2 dt well below z^2 (one step cannot plausibly touch both
/// barriers); callers should keep dt under (z/c)^2 / 10.
pub(crate) fn first_passage<F: FnMut(f64) -> Option<f64>>(
    mut drift_at: F,
    noise_c: f64,
    threshold_z: f64,
    start_x0: f64,
    dt_ms: f64,
    max_steps: u64,
    rng: &mut RngStream,
) -> Result<PathEnd> {
    if !(dt_ms > 0.0) {
        return Err(ModelError::invalid("dt must be > 0"));
    }
    let z = threshold_z;
    let sqrt_dt = dt_ms.sqrt();
    let c2dt = noise_c * noise_c * dt_ms;
    let mut x = start_x0;
    let mut t = 0.0;
    for _ in 0..max_steps {
        let drift = match drift_at(t) {
            Some(a) => a,
            None => return Ok(PathEnd::DriftExhausted { x, elapsed_ms: t }),
        };
        let x_next = if noise_c > 0.0 {
            x + drift * dt_ms + noise_c * sqrt_dt * rng.next_normal()
        } else {
            x + drift * dt_ms
        };
        // Endpoint beyond a barrier: place the crossing by chord
        // interpolation instead of the step end, which would otherwise bias
        // first-passage times upward by ~dt/2.
        if x_next >= z {
            let frac = (z - x) / (x_next - x);
            return Ok(PathEnd::Absorbed { choice: Choice::Upper, decision_ms: t + frac * dt_ms });
        }
        if x_next <= -z {
            let frac = (-z - x) / (x_next - x);
            return Ok(PathEnd::Absorbed { choice: Choice::Lower, decision_ms: t + frac * dt_ms });
        }
        if noise_c > 0.0 {
            // Bridge tests; exponents below -40 cannot fire at f64 precision.
            // A bridge excursion is dated mid-step.
            let e_up = -2.0 * (z - x) * (z - x_next) / c2dt;
            if e_up > -40.0 && rng.next_f64() < e_up.exp() {
                return Ok(PathEnd::Absorbed {
                    choice: Choice::Upper,
                    decision_ms: t + 0.5 * dt_ms,
                });
            }
            let e_dn = -2.0 * (x + z) * (x_next + z) / c2dt;
            if e_dn > -40.0 && rng.next_f64() < e_dn.exp() {
                return Ok(PathEnd::Absorbed {
                    choice: Choice::Lower,
                    decision_ms: t + 0.5 * dt_ms,
                });
            }
        }
        x = x_next;
        t += dt_ms;
    }
    Err(ModelError::Timeout { max_steps })
}

pub const DEFAULT_MAX_STEPS: u64 = 10_000_000;

/// Simulate one decision by Euler–Maruyama integration of dX = A dt + c dW.
pub fn ddm_simulate(p: &DdmParams, dt_ms: f64, rng: &mut RngStream) -> Result<Decision> {
    ddm_simulate_capped(p, dt_ms, DEFAULT_MAX_STEPS, rng)
}

pub fn ddm_simulate_capped(
    p: &DdmParams,
    dt_ms: f64,
    max_steps: u64,
    rng: &mut RngStream,
) -> Result<Decision> {
    match first_passage(
        |_| Some(p.drift_a),
        p.noise_c,
        p.threshold_z,
        p.start_x0,
        dt_ms,
        max_steps,
        rng,
    )? {
        PathEnd::Absorbed { choice, decision_ms } => Ok(Decision {
            choice,
            rt_ms: decision_ms + p.nondecision_ms,
        }),
        PathEnd::DriftExhausted { .. } => unreachable!("constant drift never ends"),
    }
}

/// Simulate a batch of decisions, one substream per trial. Output is
/// bit-identical for a fixed master seed regardless of thread count.
pub fn ddm_simulate_batch(
    p: &DdmParams,
    dt_ms: f64,
    master_seed: u64,
    n_trials: u64,
) -> Result<Vec<Decision>> {
    (0..n_trials)
        .into_par_iter()
        .map(|i| {
            let mut rng = substream(master_seed, i);
            ddm_simulate(p, dt_ms, &mut rng)
        })
        .collect()
}

/// Coactivation: both unimodal streams feed one accumulator, so the combined
/// process is a single DDM with summed drift and summed variance
/// (c_c^2 = c_1^2 + c_2^2). `shared.noise_c` is the per-stream noise level.
pub fn coactivation_simulate(
    stream_1_drift: f64,
    stream_2_drift: f64,
    shared: &DdmParams,
    dt_ms: f64,
    rng: &mut RngStream,
) -> Result<Decision> {
    coactivation_simulate_channels(
        (stream_1_drift, shared.noise_c),
        (stream_2_drift, shared.noise_c),
        shared,
        dt_ms,
        rng,
    )
}

/// Coactivation with per-channel noise levels, for asymmetric channels.
/// A channel with zero drift and zero noise leaves the other channel's
/// statistics untouched.
pub fn coactivation_simulate_channels(
    channel_1: (f64, f64),
    channel_2: (f64, f64),
    shared: &DdmParams,
    dt_ms: f64,
    rng: &mut RngStream,
) -> Result<Decision> {
    let (a1, c1) = channel_1;
    let (a2, c2) = channel_2;
    if !(c1 >= 0.0 && c2 >= 0.0) {
        return Err(ModelError::invalid("channel noise must be >= 0"));
    }
    let combined = DdmParams {
        drift_a: a1 + a2,
        noise_c: (c1 * c1 + c2 * c2).sqrt(),
        threshold_z: shared.threshold_z,
        nondecision_ms: shared.nondecision_ms,
        start_x0: shared.start_x0,
    };
    ddm_simulate(&combined, dt_ms, rng)
}
