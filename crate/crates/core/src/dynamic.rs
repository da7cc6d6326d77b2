//! Time-varying evidence accumulation: a combined sensitivity profile built
//! from per-modality temporal sensitivities feeds a drift-diffusion process
//! whose drift follows the profile.

use crate::accumulators::{first_passage, Choice, Decision, PathEnd, DEFAULT_MAX_STEPS};
use crate::error::{ModelError, Result};
use crate::rng::RngStream;
use serde::{Deserialize, Serialize};

/// Non-negative temporal sensitivity sampled on a uniform grid starting at
/// t = 0.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct SensitivityProfile {
    pub dt_ms: f64,
    pub values: Vec<f64>,
}

impl SensitivityProfile {
    pub fn new(dt_ms: f64, values: Vec<f64>) -> Result<Self> {
        if !(dt_ms > 0.0) {
            return Err(ModelError::invalid("profile grid spacing must be > 0"));
        }
        if values.is_empty() {
            return Err(ModelError::InvalidInput("profile must have at least one sample".into()));
        }
        if values.iter().any(|v| !v.is_finite() || *v < 0.0) {
            return Err(ModelError::invalid("profile values must be finite and >= 0"));
        }
        Ok(SensitivityProfile { dt_ms, values })
    }

    pub fn constant(value: f64, duration_ms: f64, dt_ms: f64) -> Result<Self> {
        let n = (duration_ms / dt_ms).round().max(1.0) as usize;
        SensitivityProfile::new(dt_ms, vec![value; n])
    }

    pub fn zeros_like(other: &SensitivityProfile) -> Self {
        SensitivityProfile {
            dt_ms: other.dt_ms,
            values: vec![0.0; other.values.len()],
        }
    }

    /// Conventional Gaussian velocity bump peaking at `peak` halfway through
    /// the stimulus. A convenience, not a claim about any particular stimulus.
    pub fn gaussian_bump(peak: f64, duration_ms: f64, dt_ms: f64) -> Result<Self> {
        let n = (duration_ms / dt_ms).round().max(1.0) as usize;
        let center = duration_ms / 2.0;
        let width = duration_ms / 6.0;
        let values = (0..n)
            .map(|i| {
                let t = i as f64 * dt_ms;
                peak * (-0.5 * ((t - center) / width).powi(2)).exp()
            })
            .collect();
        SensitivityProfile::new(dt_ms, values)
    }

    /// Magnitude of the bump's rate of change, the conventional stand-in for
    /// an acceleration-driven sensitivity.
    pub fn gaussian_bump_rate(peak: f64, duration_ms: f64, dt_ms: f64) -> Result<Self> {
        let bump = SensitivityProfile::gaussian_bump(peak, duration_ms, dt_ms)?;
        let mut values = vec![0.0; bump.values.len()];
        for i in 0..bump.values.len() {
            let prev = if i == 0 { bump.values[0] } else { bump.values[i - 1] };
            let next = if i + 1 == bump.values.len() {
                bump.values[i]
            } else {
                bump.values[i + 1]
            };
            values[i] = ((next - prev) / (2.0 * dt_ms)).abs();
        }
        // Normalize to the requested peak for comparable scales.
        let max = values.iter().cloned().fold(0.0, f64::max);
        if max > 0.0 {
            for v in &mut values {
                *v *= peak / max;
            }
        }
        SensitivityProfile::new(dt_ms, values)
    }

    /// Grid samples as (t_ms, value) pairs, t starting at zero.
    pub fn samples(&self) -> impl Iterator<Item = (f64, f64)> + '_ {
        self.values.iter().enumerate().map(move |(i, &v)| (i as f64 * self.dt_ms, v))
    }

    /// Shift the profile later in time by a whole number of grid cells,
    /// zero-filling the front and keeping the length. `delay_ms` must be a
    /// multiple of the grid spacing. Used to model per-modality processing
    /// latency, which defaults to zero everywhere.
    pub fn delayed(&self, delay_ms: f64) -> Result<Self> {
        if !(delay_ms >= 0.0) {
            return Err(ModelError::invalid("profile delay must be >= 0"));
        }
        let cells = delay_ms / self.dt_ms;
        if (cells - cells.round()).abs() > 1e-9 {
            return Err(ModelError::invalid("profile delay must be a multiple of the grid spacing"));
        }
        let cells = (cells.round() as usize).min(self.values.len());
        let mut values = vec![0.0; self.values.len()];
        values[cells..].copy_from_slice(&self.values[..self.values.len() - cells]);
        Ok(SensitivityProfile { dt_ms: self.dt_ms, values })
    }

    pub fn duration_ms(&self) -> f64 {
        self.values.len() as f64 * self.dt_ms
    }

    fn same_grid(&self, other: &SensitivityProfile) -> bool {
        self.dt_ms == other.dt_ms && self.values.len() == other.values.len()
    }
}

/// Direction of the true heading; drives the sign of the drift.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub enum HeadingSign {
    Positive,
    Negative,
}

impl HeadingSign {
    fn sign(self) -> f64 {
        match self {
            HeadingSign::Positive => 1.0,
            HeadingSign::Negative => -1.0,
        }
    }
}

/// Parameters for the time-varying DDM. `k_vis`/`k_vest` are the per-modality
/// stimulus sensitivities; with `optimal_combination` the combined
/// sensitivity is pinned to sqrt(k_vis^2 + k_vest^2), otherwise `k_comb`
/// may be set freely to explore suboptimal weighting.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct DynamicDdmParams {
    pub k_vis: f64,
    pub k_vest: f64,
    pub k_comb: f64,
    pub heading_sign: HeadingSign,
    pub noise_c: f64,
    pub threshold_z: f64,
    pub nondecision_ms: f64,
    /// Constant processing-latency offset between the modalities; zero by
    /// default. Callers that want it applied shift one profile with
    /// [`SensitivityProfile::delayed`] before combining.
    pub latency_offset_ms: f64,
}

impl DynamicDdmParams {
    /// Optimal-combination constructor: k_comb^2 = k_vis^2 + k_vest^2.
    pub fn optimal(
        k_vis: f64,
        k_vest: f64,
        heading_sign: HeadingSign,
        noise_c: f64,
        threshold_z: f64,
    ) -> Result<Self> {
        let p = DynamicDdmParams {
            k_vis,
            k_vest,
            k_comb: (k_vis * k_vis + k_vest * k_vest).sqrt(),
            heading_sign,
            noise_c,
            threshold_z,
            nondecision_ms: 0.0,
            latency_offset_ms: 0.0,
        };
        p.validate()?;
        Ok(p)
    }

    /// Override the combined sensitivity away from the optimal value. This
    /// rescales d(t) (the identity d = g for matching profiles only holds at
    /// the optimal k_comb); simulated accuracy is invariant to it because
    /// the drift k_comb * d(t) cancels the k_comb inside the weights.
    pub fn with_k_comb(mut self, k_comb: f64) -> Result<Self> {
        if !(k_comb > 0.0) {
            return Err(ModelError::invalid("k_comb must be > 0"));
        }
        self.k_comb = k_comb;
        Ok(self)
    }

    pub fn validate(&self) -> Result<()> {
        if !(self.k_vis >= 0.0 && self.k_vest >= 0.0) || self.k_vis + self.k_vest == 0.0 {
            return Err(ModelError::invalid("sensitivities must be >= 0 and not both zero"));
        }
        if !(self.k_comb > 0.0) {
            return Err(ModelError::invalid("k_comb must be > 0"));
        }
        if !(self.noise_c > 0.0) {
            return Err(ModelError::invalid("noise must be > 0"));
        }
        if !(self.threshold_z > 0.0) {
            return Err(ModelError::invalid("threshold must be > 0"));
        }
        Ok(())
    }
}

/// Combined sensitivity profile:
/// d(t) = sqrt((k_vis^2/k_comb^2) v^2(t) + (k_vest^2/k_comb^2) a^2(t)).
pub fn combined_sensitivity(
    v: &SensitivityProfile,
    a: &SensitivityProfile,
    p: &DynamicDdmParams,
) -> Result<SensitivityProfile> {
    p.validate()?;
    if !v.same_grid(a) {
        return Err(ModelError::GridMismatch(format!(
            "visual grid ({} x {}) vs vestibular grid ({} x {})",
            v.values.len(),
            v.dt_ms,
            a.values.len(),
            a.dt_ms
        )));
    }
    let wv = (p.k_vis / p.k_comb).powi(2);
    let wa = (p.k_vest / p.k_comb).powi(2);
    let values = v
        .values
        .iter()
        .zip(&a.values)
        .map(|(&vi, &ai)| (wv * vi * vi + wa * ai * ai).sqrt())
        .collect();
    SensitivityProfile::new(v.dt_ms, values)
}

/// Simulate one decision with drift heading_sign * k_comb * d(t), absorbing
/// at ±z. If the profile ends before absorption the choice is forced by the
/// sign of the accumulated evidence (non-negative evidence reads Positive).
pub fn dynamic_ddm_simulate(
    d: &SensitivityProfile,
    p: &DynamicDdmParams,
    dt_ms: f64,
    rng: &mut RngStream,
) -> Result<Decision> {
    p.validate()?;
    if d.values.is_empty() {
        return Err(ModelError::InvalidInput("empty sensitivity profile".into()));
    }
    if !(dt_ms > 0.0) || dt_ms > d.dt_ms + 1e-12 {
        return Err(ModelError::invalid(format!(
            "dt ({dt_ms}) must be positive and no coarser than the profile grid ({})",
            d.dt_ms
        )));
    }
    let steps_per_cell = d.dt_ms / dt_ms;
    if (steps_per_cell - steps_per_cell.round()).abs() > 1e-9 {
        return Err(ModelError::invalid("dt must divide the profile grid spacing"));
    }
    let sign = p.heading_sign.sign();
    let n = d.values.len();
    let end = first_passage(
        |t| {
            let cell = (t / d.dt_ms).floor() as usize;
            if cell >= n {
                None
            } else {
                Some(sign * p.k_comb * d.values[cell])
            }
        },
        p.noise_c,
        p.threshold_z,
        0.0,
        dt_ms,
        DEFAULT_MAX_STEPS,
        rng,
    )?;
    Ok(match end {
        PathEnd::Absorbed { choice, decision_ms } => Decision {
            choice,
            rt_ms: decision_ms + p.nondecision_ms,
        },
        PathEnd::DriftExhausted { x, elapsed_ms } => Decision {
            choice: if x >= 0.0 { Choice::Upper } else { Choice::Lower },
            rt_ms: elapsed_ms + p.nondecision_ms,
        },
    })
}

/// Fraction of choices matching the heading sign over a seeded batch.
pub fn dynamic_accuracy(
    d: &SensitivityProfile,
    p: &DynamicDdmParams,
    dt_ms: f64,
    master_seed: u64,
    n_trials: u64,
) -> Result<f64> {
    use rayon::prelude::*;
    let correct_choice = match p.heading_sign {
        HeadingSign::Positive => Choice::Upper,
        HeadingSign::Negative => Choice::Lower,
    };
    let hits: Result<Vec<bool>> = (0..n_trials)
        .into_par_iter()
        .map(|i| {
            let mut rng = crate::rng::substream(master_seed, i);
            Ok(dynamic_ddm_simulate(d, p, dt_ms, &mut rng)?.choice == correct_choice)
        })
        .collect();
    Ok(hits?.iter().filter(|h| **h).count() as f64 / n_trials as f64)
}
