//! Deterministic block runner: one substream per (spec, repetition) pair, so
//! output is identical whatever the thread count.

use crate::error::{ModelError, Result};
use crate::rng::{substream, RngStream};
use rayon::prelude::*;

use super::flash_beep::{simulate_count_switching, simulate_flash_beep};
use super::observer::ObserverModel;
use super::spatial::simulate_localization;
use super::temporal::{simulate_apparent_motion, simulate_heading, simulate_toj, simulate_twin_judgement};
use super::trial::{Response, Task, TrialRecord, TrialSpec};

/// Check observer/task compatibility without running anything.
pub fn check_compatible(observer: &ObserverModel, spec: &TrialSpec) -> Result<()> {
    let ok = match observer {
        ObserverModel::CausalInference(_) => {
            matches!(spec.task, Task::CountReport | Task::Localization)
        }
        ObserverModel::TemporalCapture(_) => matches!(
            (spec.task, &spec.correct),
            (Task::Toj, _) | (Task::Ternary, _) | (Task::MotionDirection, Response::MotionPerceived(_))
        ),
        ObserverModel::Twin(_) => spec.task == Task::SimultaneityJudgement,
        ObserverModel::DynamicDdm(_) => {
            matches!((spec.task, &spec.correct), (Task::MotionDirection, Response::Direction(_)))
        }
        ObserverModel::FocalSwitching(_) | ObserverModel::ModalitySwitching(_) => {
            spec.task == Task::CountReport
        }
    };
    if ok {
        Ok(())
    } else {
        Err(ModelError::IncompatibleObserver(format!(
            "{} observer cannot run a {} task",
            observer.kind(),
            spec.task.name()
        )))
    }
}

/// Run one trial with the given observer and stream.
pub fn simulate_one(
    spec: &TrialSpec,
    observer: &ObserverModel,
    rng: &mut RngStream,
) -> Result<TrialRecord> {
    check_compatible(observer, spec)?;
    match observer {
        ObserverModel::CausalInference(p) => match spec.task {
            Task::CountReport => simulate_flash_beep(spec, p, rng),
            _ => simulate_localization(spec, p, rng),
        },
        ObserverModel::TemporalCapture(p) => match spec.task {
            Task::MotionDirection => simulate_apparent_motion(spec, p, rng),
            _ => simulate_toj(spec, p, rng),
        },
        ObserverModel::Twin(p) => simulate_twin_judgement(spec, p, rng),
        ObserverModel::DynamicDdm(p) => simulate_heading(spec, p, rng),
        ObserverModel::FocalSwitching(p) => simulate_count_switching(spec, p, false, rng),
        ObserverModel::ModalitySwitching(p) => simulate_count_switching(spec, p, true, rng),
    }
}

/// Run `n_reps` repetitions of every spec. Record order is (spec, rep) in
/// row-major order; the substream index of record (s, r) is s * n_reps + r.
pub fn run_block(
    specs: &[TrialSpec],
    observer: &ObserverModel,
    n_reps: u64,
    master_seed: u64,
) -> Result<Vec<TrialRecord>> {
    observer.validate()?;
    for spec in specs {
        check_compatible(observer, spec)?;
    }
    let total = specs.len() as u64 * n_reps;
    (0..total)
        .into_par_iter()
        .map(|idx| {
            let spec = &specs[(idx / n_reps.max(1)) as usize];
            let mut rng = substream(master_seed, idx);
            simulate_one(spec, observer, &mut rng)
        })
        .collect()
}
