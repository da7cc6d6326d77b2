//! Executable encodings of the audio-visual paradigms: trial construction,
//! model-driven simulated responses, and deterministic block runners.

mod block;
mod flash_beep;
mod observer;
mod spatial;
mod temporal;
mod trial;

pub use block::{check_compatible, run_block, simulate_one};
pub use flash_beep::{make_flash_beep_trial, simulate_count_switching, simulate_flash_beep};
pub use observer::{
    CausalInferenceObserverParams, DynamicDdmObserverParams, ObserverModel, SwitchingParams,
    TemporalCaptureParams,
};
pub use spatial::{make_ventriloquist_trial, simulate_localization};
pub use temporal::{
    effective_soa, make_apparent_motion_trial, make_heading_trial, make_simultaneity_trial,
    make_ternary_trial, make_toj_trial, simulate_apparent_motion, simulate_heading,
    simulate_toj, simulate_twin_judgement, ToneConfig,
};
pub use trial::{Response, Side, Task, TrialRecord, TrialSpec};
