use crate::error::{ModelError, Result};
use crate::stimulus::{Modality, StimulusEvent};
use serde::{Deserialize, Serialize};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum Task {
    Toj,
    Ternary,
    CountReport,
    Localization,
    MotionDirection,
    SimultaneityJudgement,
}

impl Task {
    pub fn name(&self) -> &'static str {
        match self {
            Task::Toj => "toj",
            Task::Ternary => "ternary",
            Task::CountReport => "count_report",
            Task::Localization => "localization",
            Task::MotionDirection => "motion_direction",
            Task::SimultaneityJudgement => "simultaneity",
        }
    }

    pub fn parse(s: &str) -> Option<Task> {
        match s {
            "toj" => Some(Task::Toj),
            "ternary" => Some(Task::Ternary),
            "count_report" => Some(Task::CountReport),
            "localization" => Some(Task::Localization),
            "motion_direction" => Some(Task::MotionDirection),
            "simultaneity" => Some(Task::SimultaneityJudgement),
            _ => None,
        }
    }

    /// Whether a response lies in this task's answer space. MotionDirection
    /// accepts either a perceived-motion report (temporal-capture observers)
    /// or a heading direction (evidence-accumulation observers).
    pub fn accepts(&self, r: &Response) -> bool {
        matches!(
            (self, r),
            (Task::Toj, Response::First(_))
                | (Task::Ternary, Response::First(_))
                | (Task::Ternary, Response::Simultaneous)
                | (Task::CountReport, Response::Count(_))
                | (Task::Localization, Response::Location { .. })
                | (Task::MotionDirection, Response::MotionPerceived(_))
                | (Task::MotionDirection, Response::Direction(_))
                | (Task::SimultaneityJudgement, Response::Simultaneous)
                | (Task::SimultaneityJudgement, Response::Successive)
        )
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum Side {
    Left,
    Right,
}

impl Side {
    pub fn opposite(&self) -> Side {
        match self {
            Side::Left => Side::Right,
            Side::Right => Side::Left,
        }
    }

    /// Conventional azimuth for paradigm LEDs.
    pub fn default_azimuth_deg(&self) -> f64 {
        match self {
            Side::Left => -10.0,
            Side::Right => 10.0,
        }
    }

    pub fn name(&self) -> &'static str {
        match self {
            Side::Left => "left",
            Side::Right => "right",
        }
    }

    pub fn parse(s: &str) -> Option<Side> {
        match s {
            "left" => Some(Side::Left),
            "right" => Some(Side::Right),
            _ => None,
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub enum Response {
    Count(u32),
    First(Side),
    Simultaneous,
    Successive,
    Location { auditory_deg: f64, visual_deg: f64 },
    MotionPerceived(bool),
    Direction(Side),
}

/// One runnable trial: its stimuli, the task, and the veridical answer.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct TrialSpec {
    pub stimuli: Vec<StimulusEvent>,
    pub task: Task,
    pub correct: Response,
}

impl TrialSpec {
    pub fn new(stimuli: Vec<StimulusEvent>, task: Task, correct: Response) -> Result<Self> {
        if stimuli.is_empty() {
            return Err(ModelError::InvalidInput("trial needs at least one stimulus".into()));
        }
        if !task.accepts(&correct) {
            return Err(ModelError::InvalidInput(format!(
                "correct answer {:?} outside the {} answer space",
                correct,
                task.name()
            )));
        }
        Ok(TrialSpec { stimuli, task, correct })
    }

    /// Re-tag the auditory events with distinct feature tags (1, 2, ...) so
    /// unity-gated observers treat them as unrelated sources.
    pub fn with_distinct_tone_features(mut self) -> Self {
        let mut tag = 1;
        for e in &mut self.stimuli {
            if e.modality == Modality::Auditory {
                e.feature_tag = tag;
                tag += 1;
            }
        }
        self
    }

    pub fn events(&self, modality: Modality) -> impl Iterator<Item = &StimulusEvent> {
        self.stimuli.iter().filter(move |e| e.modality == modality)
    }

    /// Total pulse count in one modality.
    pub fn pulse_count(&self, modality: Modality) -> u32 {
        self.events(modality).map(|e| e.count).sum()
    }
}

/// One simulated (or observed) trial outcome, with its substream identity so
/// any record can be replayed exactly.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct TrialRecord {
    pub spec: TrialSpec,
    pub response: Response,
    pub rt_ms: Option<f64>,
    pub seed: (u64, u64),
}

impl TrialRecord {
    pub fn new(spec: TrialSpec, response: Response, rt_ms: Option<f64>, seed: (u64, u64)) -> Result<Self> {
        if !spec.task.accepts(&response) {
            return Err(ModelError::InvalidInput(format!(
                "response {:?} outside the {} answer space",
                response,
                spec.task.name()
            )));
        }
        Ok(TrialRecord { spec, response, rt_ms, seed })
    }

    pub fn is_correct(&self) -> bool {
        self.response == self.spec.correct
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn answer_space_enforced() {
        let stim = vec![StimulusEvent::new(Modality::Visual, 0.0).unwrap()];
        assert!(TrialSpec::new(stim.clone(), Task::Toj, Response::Count(1)).is_err());
        assert!(TrialSpec::new(stim.clone(), Task::Toj, Response::First(Side::Left)).is_ok());
        assert!(TrialSpec::new(vec![], Task::Toj, Response::First(Side::Left)).is_err());
        let spec = TrialSpec::new(stim, Task::CountReport, Response::Count(1)).unwrap();
        assert!(TrialRecord::new(spec, Response::Simultaneous, None, (0, 0)).is_err());
    }

    #[test]
    fn distinct_features_retag_only_tones() {
        let spec = TrialSpec::new(
            vec![
                StimulusEvent::new(Modality::Auditory, -75.0).unwrap(),
                StimulusEvent::new(Modality::Visual, 0.0).unwrap(),
                StimulusEvent::new(Modality::Auditory, 115.0).unwrap(),
            ],
            Task::Toj,
            Response::First(Side::Left),
        )
        .unwrap()
        .with_distinct_tone_features();
        let tags: Vec<u32> = spec.stimuli.iter().map(|e| e.feature_tag).collect();
        assert_eq!(tags, vec![1, 0, 2]);
    }
}
