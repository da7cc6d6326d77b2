//! Command-line front end for the multisensory-integration models: named
//! illusion reproductions, custom simulations, parameter sweeps, and
//! maximum-likelihood fits.
//!
//! Exit codes: 0 success, 2 configuration error, 3 data error, 4 numerical
//! failure. `PERCEPT_FUSION_THREADS` caps worker threads (0 or unset = auto);
//! a fixed seed gives byte-identical outputs at any thread count.

mod config;
mod output;
mod scenarios;

use std::collections::BTreeMap;
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand};
use percept_fusion::error::ModelError;
use percept_fusion::fit::{compare_models, fit_mle, response_probability, ObserverFamily};
use percept_fusion::io::{fmt_g9, records_from_csv, records_to_csv};
use percept_fusion::paradigms::{
    run_block, CausalInferenceObserverParams, SwitchingParams, TemporalCaptureParams, TrialRecord,
};

use config::{load_config, parse_set_args, RunConfig, SCHEMA_VERSION};
use output::{line_chart_svg, multi_line_chart_svg, summary_json, sweep_csv, write_text, Summary};
use scenarios::{find, registry, Scenario};

#[derive(Parser)]
#[command(name = "percept-fusion", version, about = "Multisensory integration model runner")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Args, Default)]
struct CommonArgs {
    /// Master seed for all randomness.
    #[arg(long)]
    seed: Option<u64>,
    /// Repetitions per trial specification.
    #[arg(long)]
    reps: Option<u64>,
    /// Output directory for result files.
    #[arg(long)]
    out_dir: Option<PathBuf>,
    /// JSON run configuration (schema_version 1); flags override its fields.
    #[arg(long)]
    config: Option<PathBuf>,
}

#[derive(Subcommand)]
enum Command {
    /// Run a catalogued illusion scenario with documented defaults.
    Illusion {
        /// Scenario name; see --list.
        name: Option<String>,
        /// List registered scenarios and exit.
        #[arg(long)]
        list: bool,
        #[command(flatten)]
        common: CommonArgs,
        /// Parameter overrides as key=value (repeatable).
        #[arg(long = "set", value_name = "KEY=VALUE")]
        set: Vec<String>,
        #[arg(long)]
        sigma_a: Option<f64>,
        #[arg(long)]
        sigma_v: Option<f64>,
        #[arg(long)]
        kappa: Option<f64>,
        #[arg(long)]
        w_t: Option<f64>,
        #[arg(long)]
        noise_sd: Option<f64>,
        #[arg(long)]
        p_common: Option<f64>,
    },
    /// Simulate custom trial batches from a config file.
    Simulate {
        #[command(flatten)]
        common: CommonArgs,
    },
    /// Sweep scenario parameters over a 1-D or 2-D grid.
    Sweep {
        /// Scenario to sweep.
        #[arg(long)]
        scenario: Option<String>,
        /// Axis as param:min:max:steps (repeatable, at most twice).
        #[arg(long = "axis", value_name = "PARAM:MIN:MAX:STEPS")]
        axes: Vec<String>,
        #[command(flatten)]
        common: CommonArgs,
        #[arg(long = "set", value_name = "KEY=VALUE")]
        set: Vec<String>,
    },
    /// Fit an observer family to a trial CSV by maximum likelihood.
    Fit {
        /// Trial records CSV (the trials.csv schema).
        #[arg(long)]
        data: Option<PathBuf>,
        /// Observer family: temporal_capture, causal_inference,
        /// focal_switching, or modality_switching.
        #[arg(long)]
        family: Option<String>,
        /// Number of Latin-hypercube restarts.
        #[arg(long)]
        restarts: Option<usize>,
        /// Also fit these families and rank everything by AIC (repeatable).
        #[arg(long = "compare", value_name = "FAMILY")]
        compare: Vec<String>,
        #[command(flatten)]
        common: CommonArgs,
    },
}

fn exit_code_for(err: &ModelError) -> u8 {
    match err {
        ModelError::InvalidParameter(_)
        | ModelError::InvalidInput(_)
        | ModelError::GridMismatch(_)
        | ModelError::IncompatibleObserver(_) => 2,
        ModelError::MalformedData { .. } => 3,
        ModelError::DegeneratePrior | ModelError::Timeout { .. } | ModelError::FitFailure(_) => 4,
    }
}

fn io_err(context: &str, e: std::io::Error) -> ModelError {
    ModelError::InvalidInput(format!("{context}: {e}"))
}

fn init_thread_pool() {
    if let Ok(raw) = std::env::var("PERCEPT_FUSION_THREADS") {
        if let Ok(n) = raw.trim().parse::<usize>() {
            if n > 0 {
                // Ignore failure: the pool can only be set once per process.
                let _ = rayon::ThreadPoolBuilder::new().num_threads(n).build_global();
            }
        }
    }
}

fn main() -> ExitCode {
    init_thread_pool();
    let cli = Cli::parse();
    match run(cli) {
        Ok(()) => ExitCode::SUCCESS,
        Err(err) => {
            eprintln!("error: {err}");
            ExitCode::from(exit_code_for(&err))
        }
    }
}

fn run(cli: Cli) -> Result<(), ModelError> {
    match cli.command {
        Command::Illusion {
            name,
            list,
            common,
            set,
            sigma_a,
            sigma_v,
            kappa,
            w_t,
            noise_sd,
            p_common,
        } => {
            if list {
                for s in registry() {
                    println!("{:36} {}", s.name, s.description);
                }
                return Ok(());
            }
            let config = load_optional_config(&common)?;
            let name = name
                .or_else(|| config.scenario.clone())
                .ok_or_else(|| ModelError::InvalidInput("no scenario given; try --list".into()))?;
            let scenario = find(&name).ok_or_else(|| {
                let names: Vec<&str> = registry().iter().map(|s| s.name).collect();
                ModelError::InvalidInput(format!(
                    "unknown scenario {name:?}; registered: {}",
                    names.join(", ")
                ))
            })?;
            let mut overrides = config.overrides.clone();
            for (key, value) in [
                ("sigma_a", sigma_a),
                ("sigma_v", sigma_v),
                ("kappa", kappa),
                ("w_t", w_t),
                ("noise_sd", noise_sd),
                ("p_common", p_common),
            ] {
                if let Some(v) = value {
                    overrides.insert(key.to_string(), v);
                }
            }
            overrides.extend(parse_set_args(&set)?);
            let seed = common.seed.or(config.seed).unwrap_or(1);
            let reps = common.reps.or(config.n_reps).unwrap_or(10_000);
            let out_dir = resolve_out_dir(&common, &config, &format!("out/{name}"));
            cmd_illusion(&scenario, &overrides, seed, reps, &out_dir)
        }
        Command::Simulate { common } => {
            let config_path = common
                .config
                .clone()
                .ok_or_else(|| ModelError::InvalidInput("simulate needs --config".into()))?;
            let config = load_config(&config_path)?;
            let seed = common.seed.or(config.seed).unwrap_or(1);
            let reps = common.reps.or(config.n_reps).unwrap_or(1_000);
            let out_dir = resolve_out_dir(&common, &config, "out/simulate");
            cmd_simulate(&config, seed, reps, &out_dir)
        }
        Command::Sweep { scenario, axes, common, set } => {
            let config = load_optional_config(&common)?;
            let name = scenario
                .or_else(|| config.scenario.clone())
                .ok_or_else(|| ModelError::InvalidInput("sweep needs --scenario".into()))?;
            let scenario = find(&name)
                .ok_or_else(|| ModelError::InvalidInput(format!("unknown scenario {name:?}")))?;
            let mut axis_list = config.sweep_axes.clone();
            if !axes.is_empty() {
                axis_list = axes.iter().map(|a| parse_axis(a)).collect::<Result<_, _>>()?;
            }
            let mut overrides = config.overrides.clone();
            overrides.extend(parse_set_args(&set)?);
            let seed = common.seed.or(config.seed).unwrap_or(1);
            let reps = common.reps.or(config.n_reps).unwrap_or(2_000);
            let out_dir = resolve_out_dir(&common, &config, &format!("out/sweep-{name}"));
            cmd_sweep(&scenario, &axis_list, &overrides, seed, reps, &out_dir)
        }
        Command::Fit { data, family, restarts, compare, common } => {
            let config = load_optional_config(&common)?;
            let data_path = data
                .or_else(|| config.data.clone().map(PathBuf::from))
                .ok_or_else(|| ModelError::InvalidInput("fit needs --data".into()))?;
            let family_name = family
                .or_else(|| config.family.clone())
                .unwrap_or_else(|| "temporal_capture".to_string());
            let restarts = restarts.or(config.n_restarts).unwrap_or(8);
            let seed = common.seed.or(config.seed).unwrap_or(1);
            let out_dir = resolve_out_dir(&common, &config, "out/fit");
            cmd_fit(&data_path, &family_name, &compare, restarts, seed, &out_dir)
        }
    }
}

fn load_optional_config(common: &CommonArgs) -> Result<RunConfig, ModelError> {
    match &common.config {
        Some(path) => load_config(path),
        None => Ok(RunConfig::default()),
    }
}

fn resolve_out_dir(common: &CommonArgs, config: &RunConfig, default: &str) -> PathBuf {
    common
        .out_dir
        .clone()
        .or_else(|| config.out_dir.clone().map(PathBuf::from))
        .unwrap_or_else(|| PathBuf::from(default))
}

fn parse_axis(raw: &str) -> Result<config::AxisConfig, ModelError> {
    let parts: Vec<&str> = raw.split(':').collect();
    if parts.len() != 4 {
        return Err(ModelError::InvalidInput(format!(
            "axis must be param:min:max:steps, got {raw:?}"
        )));
    }
    let bad = |what: &str| ModelError::InvalidInput(format!("axis {raw:?}: bad {what}"));
    Ok(config::AxisConfig {
        param: parts[0].replace('-', "_"),
        min: parts[1].parse().map_err(|_| bad("min"))?,
        max: parts[2].parse().map_err(|_| bad("max"))?,
        steps: parts[3].parse().map_err(|_| bad("steps"))?,
    })
}

fn cmd_illusion(
    scenario: &Scenario,
    overrides: &BTreeMap<String, f64>,
    seed: u64,
    reps: u64,
    out_dir: &Path,
) -> Result<(), ModelError> {
    let out = scenario.run(overrides, seed, reps)?;
    write_text(&out_dir.join("trials.csv"), &records_to_csv(&out.records))
        .map_err(|e| io_err("writing trials.csv", e))?;
    let summary = Summary {
        schema_version: SCHEMA_VERSION,
        command: "illusion".to_string(),
        scenario: scenario.name.to_string(),
        seed,
        n_reps: reps,
        params: out.params.clone(),
        metrics: out.metrics.clone(),
        primary_metric: scenario.primary_metric.to_string(),
        effect_direction: scenario.effect_direction.to_string(),
        model_prediction: scenario.prediction_only,
    };
    write_text(&out_dir.join("summary.json"), &summary_json(&summary))
        .map_err(|e| io_err("writing summary.json", e))?;

    if let Some(axis) = &scenario.default_sweep {
        let mut points = Vec::with_capacity(axis.steps);
        let mut rows = Vec::with_capacity(axis.steps);
        for i in 0..axis.steps {
            let value = axis.min + (axis.max - axis.min) * i as f64 / (axis.steps - 1) as f64;
            let mut ov = overrides.clone();
            ov.insert(axis.param.to_string(), value);
            let cell = scenario.run(&ov, seed, reps)?;
            points.push((value, cell.metrics[scenario.primary_metric]));
            rows.push((vec![value], cell.metrics));
        }
        write_text(
            &out_dir.join("sweep.csv"),
            &sweep_csv(scenario.name, &[axis.param.to_string()], &rows),
        )
        .map_err(|e| io_err("writing sweep.csv", e))?;
        let svg = line_chart_svg(
            &format!("{}: {} vs {}", scenario.name, scenario.primary_metric, axis.param),
            axis.param,
            scenario.primary_metric,
            &points,
        );
        write_text(&out_dir.join("sweep.svg"), &svg).map_err(|e| io_err("writing sweep.svg", e))?;
    }

    println!("scenario {} (seed {seed}, reps {reps})", scenario.name);
    for (k, v) in &out.metrics {
        println!("  {k} = {v:.4}");
    }
    println!("wrote {}", out_dir.display());
    Ok(())
}

fn cmd_simulate(config: &RunConfig, seed: u64, reps: u64, out_dir: &Path) -> Result<(), ModelError> {
    let observer = config
        .observer
        .clone()
        .ok_or_else(|| ModelError::InvalidInput("simulate config needs an observer".into()))?;
    if config.trials.is_empty() {
        return Err(ModelError::InvalidInput("simulate config needs at least one trial".into()));
    }
    let specs = config.trials.iter().map(|t| t.build()).collect::<Result<Vec<_>, _>>()?;
    let records = run_block(&specs, &observer, reps, seed)?;
    write_text(&out_dir.join("trials.csv"), &records_to_csv(&records))
        .map_err(|e| io_err("writing trials.csv", e))?;
    let mut metrics: BTreeMap<String, f64> = BTreeMap::new();
    let n = records.len().max(1) as f64;
    for rec in &records {
        let key = format!("rate[{}]", percept_fusion::io::encode_response(&rec.response));
        *metrics.entry(key).or_insert(0.0) += 1.0 / n;
    }
    metrics.insert(
        "correct_rate".to_string(),
        records.iter().filter(|r| r.is_correct()).count() as f64 / n,
    );
    let summary = Summary {
        schema_version: SCHEMA_VERSION,
        command: "simulate".to_string(),
        scenario: format!("custom ({} specs)", specs.len()),
        seed,
        n_reps: reps,
        params: BTreeMap::new(),
        metrics,
        primary_metric: "correct_rate".to_string(),
        effect_direction: String::new(),
        model_prediction: false,
    };
    write_text(&out_dir.join("summary.json"), &summary_json(&summary))
        .map_err(|e| io_err("writing summary.json", e))?;
    println!("simulated {} records; wrote {}", records.len(), out_dir.display());
    Ok(())
}

fn cmd_sweep(
    scenario: &Scenario,
    axes: &[config::AxisConfig],
    overrides: &BTreeMap<String, f64>,
    seed: u64,
    reps: u64,
    out_dir: &Path,
) -> Result<(), ModelError> {
    if axes.is_empty() || axes.len() > 2 {
        return Err(ModelError::InvalidInput(format!(
            "sweep supports 1 or 2 axes, got {}",
            axes.len()
        )));
    }
    for axis in axes {
        if axis.steps < 2 {
            return Err(ModelError::InvalidInput(format!(
                "axis {} needs at least 2 steps",
                axis.param
            )));
        }
        if !scenario.allowed.contains(&axis.param.as_str()) {
            return Err(ModelError::InvalidInput(format!(
                "scenario {} has no parameter {:?}; allowed: {}",
                scenario.name,
                axis.param,
                scenario.allowed.join(", ")
            )));
        }
    }
    let grid = |axis: &config::AxisConfig| -> Vec<f64> {
        (0..axis.steps)
            .map(|i| axis.min + (axis.max - axis.min) * i as f64 / (axis.steps - 1) as f64)
            .collect()
    };
    let first = grid(&axes[0]);
    let second: Vec<Option<f64>> = match axes.get(1) {
        Some(a) => grid(a).into_iter().map(Some).collect(),
        None => vec![None],
    };
    let mut rows = Vec::new();
    for &v2 in &second {
        for &v1 in &first {
            let mut ov = overrides.clone();
            ov.insert(axes[0].param.clone(), v1);
            let mut coords = vec![v1];
            if let (Some(a2), Some(val2)) = (axes.get(1), v2) {
                ov.insert(a2.param.clone(), val2);
                coords.push(val2);
            }
            let cell = scenario.run(&ov, seed, reps)?;
            rows.push((coords, cell.metrics));
        }
    }
    let axis_names: Vec<String> = axes.iter().map(|a| a.param.clone()).collect();
    write_text(&out_dir.join("sweep.csv"), &sweep_csv(scenario.name, &axis_names, &rows))
        .map_err(|e| io_err("writing sweep.csv", e))?;

    // Chart: primary metric against the first axis, one series per value of
    // the second axis.
    let series: Vec<(String, Vec<(f64, f64)>)> = second
        .iter()
        .enumerate()
        .map(|(si, v2)| {
            let label = match v2 {
                Some(v) => format!("{}={}", axes[1].param, fmt_g9(*v)),
                None => String::new(),
            };
            let pts = (0..first.len())
                .map(|i| {
                    let row = &rows[si * first.len() + i];
                    (row.0[0], row.1[scenario.primary_metric])
                })
                .collect();
            (label, pts)
        })
        .collect();
    let svg = multi_line_chart_svg(
        &format!("{}: {} vs {}", scenario.name, scenario.primary_metric, axes[0].param),
        &axes[0].param,
        scenario.primary_metric,
        &series,
    );
    write_text(&out_dir.join("sweep.svg"), &svg).map_err(|e| io_err("writing sweep.svg", e))?;
    println!("swept {} cells; wrote {}", rows.len(), out_dir.display());
    Ok(())
}

fn family_by_name(name: &str) -> Result<ObserverFamily, ModelError> {
    match name {
        "temporal_capture" => {
            Ok(ObserverFamily::TemporalCapture { template: TemporalCaptureParams::default() })
        }
        "causal_inference" => Ok(ObserverFamily::CausalInferenceCount {
            template: CausalInferenceObserverParams::default(),
        }),
        "focal_switching" => {
            Ok(ObserverFamily::FocalSwitchingCount { template: SwitchingParams::default() })
        }
        "modality_switching" => {
            Ok(ObserverFamily::ModalitySwitchingCount { template: SwitchingParams::default() })
        }
        other => Err(ModelError::InvalidInput(format!(
            "unknown family {other:?}; expected temporal_capture, causal_inference, focal_switching, or modality_switching"
        ))),
    }
}

#[derive(serde::Serialize)]
struct FitReport {
    schema_version: u32,
    family: String,
    n_data: usize,
    n_restarts: usize,
    result: percept_fusion::fit::FitResult,
    compared: Vec<ComparedFit>,
    aic_ranking: Vec<String>,
}

#[derive(serde::Serialize)]
struct ComparedFit {
    family: String,
    nll: f64,
    n_params: usize,
    aic: f64,
}

fn cmd_fit(
    data_path: &Path,
    family_name: &str,
    compare: &[String],
    restarts: usize,
    seed: u64,
    out_dir: &Path,
) -> Result<(), ModelError> {
    let family = family_by_name(family_name)?;
    let text = std::fs::read_to_string(data_path).map_err(|e| ModelError::MalformedData {
        line: 0,
        message: format!("cannot read {}: {e}", data_path.display()),
    })?;
    let records = records_from_csv(&text)?;
    let space = family.default_space();
    let fit = fit_mle(&family, &records, &space, restarts, seed)?;

    let mut compared = vec![ComparedFit {
        family: family_name.to_string(),
        nll: fit.nll,
        n_params: family.n_params(),
        aic: 2.0 * family.n_params() as f64 + 2.0 * fit.nll,
    }];
    let mut fits = vec![fit.clone()];
    let mut names = vec![family_name.to_string()];
    let mut n_params = vec![family.n_params()];
    for other_name in compare {
        let other = family_by_name(other_name)?;
        let other_fit = fit_mle(&other, &records, &other.default_space(), restarts, seed)?;
        compared.push(ComparedFit {
            family: other_name.clone(),
            nll: other_fit.nll,
            n_params: other.n_params(),
            aic: 2.0 * other.n_params() as f64 + 2.0 * other_fit.nll,
        });
        fits.push(other_fit);
        names.push(other_name.clone());
        n_params.push(other.n_params());
    }
    let ranking = compare_models(&fits, &n_params, records.len())?;
    let report = FitReport {
        schema_version: SCHEMA_VERSION,
        family: family_name.to_string(),
        n_data: records.len(),
        n_restarts: restarts,
        result: fit.clone(),
        compared,
        aic_ranking: ranking.order.iter().map(|&i| names[i].clone()).collect(),
    };
    let mut json = serde_json::to_string_pretty(&report).expect("fit report serializes");
    json.push('\n');
    write_text(&out_dir.join("fit.json"), &json).map_err(|e| io_err("writing fit.json", e))?;

    write_text(
        &out_dir.join("residuals.csv"),
        &residuals_csv(&family, &fit.best_params, &records)?,
    )
    .map_err(|e| io_err("writing residuals.csv", e))?;

    println!("fit {family_name} on {} trials: nll {:.4}", records.len(), fit.nll);
    for (name, value) in fit.param_names.iter().zip(&fit.best_params) {
        println!("  {name} = {value:.6}");
    }
    println!("wrote {}", out_dir.display());
    Ok(())
}

/// Observed response rates vs model probabilities, grouped by trial type.
fn residuals_csv(
    family: &ObserverFamily,
    params: &[f64],
    records: &[TrialRecord],
) -> Result<String, ModelError> {
    let observer = family.build(params)?;
    let mut groups: BTreeMap<String, (usize, BTreeMap<String, usize>)> = BTreeMap::new();
    let mut spec_for: BTreeMap<String, &TrialRecord> = BTreeMap::new();
    for rec in records {
        let stim: Vec<String> = rec
            .spec
            .stimuli
            .iter()
            .map(|e| format!("{}@{}", e.modality.short(), e.onset_ms))
            .collect();
        let key = format!("{}|{}", rec.spec.task.name(), stim.join(";"));
        let entry = groups.entry(key.clone()).or_insert_with(|| (0, BTreeMap::new()));
        entry.0 += 1;
        *entry.1.entry(percept_fusion::io::encode_response(&rec.response)).or_insert(0) += 1;
        spec_for.entry(key).or_insert(rec);
    }
    let mut out = String::from("trial_type,response,n,observed_rate,predicted_prob,residual\n");
    for (key, (total, responses)) in &groups {
        let rec = spec_for[key];
        for (resp_key, count) in responses {
            let response = percept_fusion::io::parse_response(resp_key, 0)?;
            let predicted = response_probability(&observer, &rec.spec, &response)?;
            let observed = *count as f64 / *total as f64;
            out.push_str(&format!(
                "{key},{resp_key},{count},{},{},{}\n",
                fmt_g9(observed),
                fmt_g9(predicted),
                fmt_g9(observed - predicted)
            ));
        }
    }
    Ok(out)
}
