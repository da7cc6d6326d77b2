//! Bounded Nelder-Mead simplex descent with Latin-hypercube restarts.
//!
//! Scale parameters optimize on the log scale; candidate vertices are
//! clamped into the (transformed) box. Restarts run independently and the
//! best result wins, with index order breaking ties, so a fixed seed gives
//! a fixed answer regardless of thread scheduling.

use crate::error::{ModelError, Result};
use crate::rng::substream;
use rayon::prelude::*;
use serde::{Deserialize, Serialize};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub enum Transform {
    Identity,
    Log,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ParamSpace {
    pub names: Vec<String>,
    pub lower: Vec<f64>,
    pub upper: Vec<f64>,
    pub transform: Vec<Transform>,
}

impl ParamSpace {
    pub fn new(
        names: Vec<String>,
        lower: Vec<f64>,
        upper: Vec<f64>,
        transform: Vec<Transform>,
    ) -> Result<Self> {
        let n = names.len();
        if n == 0 || lower.len() != n || upper.len() != n || transform.len() != n {
            return Err(ModelError::invalid("parameter space fields must share a non-zero length"));
        }
        for i in 0..n {
            if !(lower[i] < upper[i]) {
                return Err(ModelError::invalid(format!(
                    "bounds for {} must satisfy lower < upper",
                    names[i]
                )));
            }
            if transform[i] == Transform::Log && !(lower[i] > 0.0) {
                return Err(ModelError::invalid(format!(
                    "log-transformed {} needs a positive lower bound",
                    names[i]
                )));
            }
        }
        Ok(ParamSpace { names, lower, upper, transform })
    }

    pub fn dim(&self) -> usize {
        self.names.len()
    }

    fn to_internal_1(&self, i: usize, x: f64) -> f64 {
        match self.transform[i] {
            Transform::Identity => x,
            Transform::Log => x.ln(),
        }
    }

    fn from_internal_1(&self, i: usize, y: f64) -> f64 {
        match self.transform[i] {
            Transform::Identity => y,
            Transform::Log => y.exp(),
        }
    }

    pub fn to_internal(&self, x: &[f64]) -> Vec<f64> {
        x.iter().enumerate().map(|(i, &v)| self.to_internal_1(i, v)).collect()
    }

    pub fn from_internal(&self, y: &[f64]) -> Vec<f64> {
        y.iter().enumerate().map(|(i, &v)| self.from_internal_1(i, v)).collect()
    }

    fn internal_bounds(&self) -> (Vec<f64>, Vec<f64>) {
        let lo = self.to_internal(&self.lower);
        let hi = self.to_internal(&self.upper);
        (lo, hi)
    }

    fn clamp_internal(&self, y: &mut [f64], lo: &[f64], hi: &[f64]) {
        for i in 0..y.len() {
            y[i] = y[i].clamp(lo[i], hi[i]);
        }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct FitResult {
    pub best_params: Vec<f64>,
    pub nll: f64,
    pub n_evals: u64,
    pub converged: bool,
    pub seed: u64,
    pub param_names: Vec<String>,
    pub space: ParamSpace,
}

const REFLECT: f64 = 1.0;
const EXPAND: f64 = 2.0;
const CONTRACT: f64 = 0.5;
const SHRINK: f64 = 0.5;
const DIAMETER_TOL: f64 = 1e-4;
const MAX_EVALS_PER_START: u64 = 10_000;

struct StartOutcome {
    best_internal: Vec<f64>,
    best_value: f64,
    evals: u64,
    converged: bool,
}

fn run_simplex<F: Fn(&[f64]) -> Result<f64>>(
    objective: &F,
    space: &ParamSpace,
    start_internal: Vec<f64>,
    lo: &[f64],
    hi: &[f64],
) -> Result<StartOutcome> {
    let dim = space.dim();
    let mut evals: u64 = 0;
    let eval = |y: &[f64], evals: &mut u64| -> Result<f64> {
        *evals += 1;
        let v = objective(&space.from_internal(y))?;
        if v.is_nan() {
            return Err(ModelError::FitFailure("objective returned NaN".into()));
        }
        Ok(v)
    };

    // Initial simplex: the start plus a 10%-of-range step per dimension,
    // stepping inward when the start sits at the upper bound.
    let mut simplex: Vec<(Vec<f64>, f64)> = Vec::with_capacity(dim + 1);
    let f0 = eval(&start_internal, &mut evals)?;
    simplex.push((start_internal.clone(), f0));
    for d in 0..dim {
        let mut v = start_internal.clone();
        let step = 0.1 * (hi[d] - lo[d]);
        v[d] = if v[d] + step <= hi[d] { v[d] + step } else { v[d] - step };
        space.clamp_internal(&mut v, lo, hi);
        let fv = eval(&v, &mut evals)?;
        simplex.push((v, fv));
    }

    let mut converged = false;
    while evals < MAX_EVALS_PER_START {
        simplex.sort_by(|a, b| a.1.partial_cmp(&b.1).unwrap());
        let diameter = simplex
            .iter()
            .skip(1)
            .map(|(v, _)| {
                v.iter()
                    .zip(&simplex[0].0)
                    .map(|(a, b)| (a - b).abs())
                    .fold(0.0, f64::max)
            })
            .fold(0.0, f64::max);
        if diameter < DIAMETER_TOL {
            converged = true;
            break;
        }

        let worst = simplex[dim].clone();
        let second_worst_value = simplex[dim - 1].1;
        let best_value = simplex[0].1;
        let mut centroid = vec![0.0; dim];
        for (v, _) in simplex.iter().take(dim) {
            for d in 0..dim {
                centroid[d] += v[d] / dim as f64;
            }
        }
        let make = |coef: f64| -> Vec<f64> {
            let mut v: Vec<f64> = centroid
                .iter()
                .zip(&worst.0)
                .map(|(c, w)| c + coef * (c - w))
                .collect();
            space.clamp_internal(&mut v, lo, hi);
            v
        };

        let reflected = make(REFLECT);
        let f_reflected = eval(&reflected, &mut evals)?;
        if f_reflected < best_value {
            let expanded = make(EXPAND);
            let f_expanded = eval(&expanded, &mut evals)?;
            simplex[dim] = if f_expanded < f_reflected {
                (expanded, f_expanded)
            } else {
                (reflected, f_reflected)
            };
        } else if f_reflected < second_worst_value {
            simplex[dim] = (reflected, f_reflected);
        } else {
            // Contract toward the better of worst/reflected.
            let (anchor, f_anchor) = if f_reflected < worst.1 {
                (reflected.clone(), f_reflected)
            } else {
                (worst.0.clone(), worst.1)
            };
            let mut contracted: Vec<f64> = centroid
                .iter()
                .zip(&anchor)
                .map(|(c, a)| c + CONTRACT * (a - c))
                .collect();
            space.clamp_internal(&mut contracted, lo, hi);
            let f_contracted = eval(&contracted, &mut evals)?;
            if f_contracted < f_anchor {
                simplex[dim] = (contracted, f_contracted);
            } else {
                // Shrink everything toward the best vertex.
                let best = simplex[0].0.clone();
                for k in 1..=dim {
                    let mut v: Vec<f64> = simplex[k]
                        .0
                        .iter()
                        .zip(&best)
                        .map(|(x, b)| b + SHRINK * (x - b))
                        .collect();
                    space.clamp_internal(&mut v, lo, hi);
                    let fv = eval(&v, &mut evals)?;
                    simplex[k] = (v, fv);
                }
            }
        }
    }

    simplex.sort_by(|a, b| a.1.partial_cmp(&b.1).unwrap());
    Ok(StartOutcome {
        best_internal: simplex[0].0.clone(),
        best_value: simplex[0].1,
        evals,
        converged,
    })
}

/// Latin-hypercube start points in internal coordinates.
fn latin_hypercube(space: &ParamSpace, n: usize, seed: u64) -> Vec<Vec<f64>> {
    let dim = space.dim();
    let (lo, hi) = space.internal_bounds();
    let mut columns: Vec<Vec<usize>> = Vec::with_capacity(dim);
    for d in 0..dim {
        let mut order: Vec<usize> = (0..n).collect();
        let mut rng = substream(seed, d as u64);
        // Fisher-Yates with the stream's uniforms.
        for i in (1..n).rev() {
            let j = (rng.next_f64() * (i + 1) as f64) as usize;
            order.swap(i, j.min(i));
        }
        columns.push(order);
    }
    let mut jitter = substream(seed, dim as u64 + 1);
    (0..n)
        .map(|r| {
            (0..dim)
                .map(|d| {
                    let u = (columns[d][r] as f64 + jitter.next_f64()) / n as f64;
                    lo[d] + u * (hi[d] - lo[d])
                })
                .collect()
        })
        .collect()
}

/// Minimize an objective over a bounded space from `n_restarts` starts.
pub fn minimize<F>(
    objective: F,
    space: &ParamSpace,
    n_restarts: usize,
    seed: u64,
) -> Result<FitResult>
where
    F: Fn(&[f64]) -> Result<f64> + Sync,
{
    if n_restarts == 0 {
        return Err(ModelError::invalid("need at least one restart"));
    }
    let (lo, hi) = space.internal_bounds();
    let starts = latin_hypercube(space, n_restarts, seed);
    let outcomes: Vec<Result<StartOutcome>> = starts
        .into_par_iter()
        .map(|start| run_simplex(&objective, space, start, &lo, &hi))
        .collect();

    let mut best: Option<StartOutcome> = None;
    let mut total_evals = 0u64;
    let mut failures = Vec::new();
    for (i, outcome) in outcomes.into_iter().enumerate() {
        match outcome {
            Ok(o) => {
                total_evals += o.evals;
                let better = match &best {
                    None => true,
                    Some(b) => o.best_value < b.best_value,
                };
                if better {
                    best = Some(o);
                }
            }
            Err(e) => failures.push(format!("start {i}: {e}")),
        }
    }
    let best = best.ok_or_else(|| {
        ModelError::FitFailure(format!("all starts failed: {}", failures.join("; ")))
    })?;
    Ok(FitResult {
        best_params: space.from_internal(&best.best_internal),
        nll: best.best_value,
        n_evals: total_evals,
        converged: best.converged,
        seed,
        param_names: space.names.clone(),
        space: space.clone(),
    })
}
