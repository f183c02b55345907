//! End-to-end runs: both regimes, both evolution modes, correlation records
//! at the sampled steps, and parameter sweeps of the adiabaticity bound.

mod io;

use std::path::PathBuf;
use std::thread;

pub use io::{read_csv, write_csv, write_summary, write_sweep_csv, CSV_HEADER};

use crate::adiabatic::{
    evolve, make_schedule, EvolutionMode, Regime, Schedule, ScheduleConfig, Shape, DEFAULT_KAPPA,
};
use crate::correlations::{discord_scores, negativity_scores};
use crate::error::{Error, Result};
use crate::nmr_model::{pseudo_pure, PurityFactor, DEFAULT_ZETA, TEST_ZETA};
use crate::qla::fidelity;
use crate::spin_model::{all_minus, ground_state};

/// Points per schedule interval used for `ε_max`.
pub const EPSILON_GRID: usize = 50;

#[derive(Clone, Debug, PartialEq)]
pub struct ExperimentConfig {
    /// Final step index `M`.
    pub steps: usize,
    pub h_dt: f64,
    pub j_final_dt: f64,
    pub shape: Shape<f64>,
    /// Step counts at which records are taken; `None` selects
    /// [`default_samples`].
    pub sample_steps: Option<Vec<usize>>,
    /// Purity factor for the NMR-scale mixed states reported in the summary.
    pub zeta: f64,
    /// Purity factor for the `delta_D_mixed` column.
    pub zeta_test: f64,
    pub regimes: Vec<Regime>,
    pub modes: Vec<EvolutionMode>,
    pub output_dir: PathBuf,
}

impl Default for ExperimentConfig {
    fn default() -> Self {
        let base = ScheduleConfig::<f64>::standard(Regime::Frustrated);
        Self {
            steps: base.steps,
            h_dt: base.h_dt,
            j_final_dt: base.j_final_dt,
            shape: Shape::Sinh { kappa: DEFAULT_KAPPA },
            sample_steps: None,
            zeta: DEFAULT_ZETA,
            zeta_test: TEST_ZETA,
            regimes: Regime::ALL.to_vec(),
            modes: EvolutionMode::ALL.to_vec(),
            output_dir: PathBuf::from("results"),
        }
    }
}

/// Odd step counts `3, 5, …` up to `M + 1`, always ending at `M + 1`.
pub fn default_samples(steps: usize) -> Vec<usize> {
    let last = steps + 1;
    let mut out: Vec<usize> = (3..=last).step_by(2).collect();
    if out.last() != Some(&last) {
        out.push(last);
    }
    out
}

impl ExperimentConfig {
    pub fn samples(&self) -> Vec<usize> {
        self.sample_steps
            .clone()
            .unwrap_or_else(|| default_samples(self.steps))
    }

    pub fn schedule_config(&self, regime: Regime) -> ScheduleConfig<f64> {
        ScheduleConfig {
            steps: self.steps,
            h: 1.0,
            h_dt: self.h_dt,
            j_final_dt: self.j_final_dt,
            shape: self.shape,
            regime,
        }
    }

    pub fn validate(&self) -> Result<()> {
        let last = self.steps + 1;
        let samples = self.samples();
        if let Some(&bad) = samples.iter().find(|&&k| k == 0 || k > last) {
            return Err(Error::Config(format!("sample step {bad} outside 1..={last}")));
        }
        if samples.windows(2).any(|w| w[0] >= w[1]) {
            return Err(Error::Config("sample steps must be strictly ascending".into()));
        }
        PurityFactor::new(self.zeta)?;
        PurityFactor::new(self.zeta_test)?;
        if self.regimes.is_empty() || self.modes.is_empty() {
            return Err(Error::Config("at least one regime and one mode are required".into()));
        }
        for &regime in &self.regimes {
            make_schedule(&self.schedule_config(regime))?;
        }
        Ok(())
    }
}

/// Correlations of one sampled state. Column order matches [`CSV_HEADER`].
#[derive(Clone, Debug, PartialEq)]
pub struct CorrelationRecord {
    pub regime: Regime,
    pub mode: EvolutionMode,
    /// Number of step unitaries applied.
    pub step: usize,
    pub j_over_h: f64,
    pub n12: f64,
    pub n13: f64,
    pub n1_23: f64,
    pub delta_n2: f64,
    pub d12: f64,
    pub d13: f64,
    pub d1_23: f64,
    pub delta_d: f64,
    pub delta_d_mixed: f64,
    pub fidelity_vs_ground: f64,
    pub ground_prob: f64,
    pub epsilon: f64,
}

/// Per-pipeline figures reported in the summary.
#[derive(Clone, Debug, PartialEq)]
pub struct PipelineSummary {
    pub regime: Regime,
    pub mode: EvolutionMode,
    pub epsilon_max: f64,
    pub final_ground_prob: f64,
    pub min_ground_prob: f64,
    pub min_fidelity: f64,
    pub final_delta_n2: f64,
    pub final_delta_d: f64,
    pub final_delta_d_mixed: f64,
    /// `δ_D` of the final pseudo-pure state at the reporting purity.
    pub final_delta_d_nmr: f64,
    /// Largest `N_{1(23)}` over sampled pseudo-pure states at the reporting purity.
    pub max_negativity_nmr: f64,
}

#[derive(Clone, Debug, Default)]
pub struct RunReport {
    /// Sorted by regime, mode, step.
    pub records: Vec<CorrelationRecord>,
    pub summaries: Vec<PipelineSummary>,
    pub warnings: Vec<String>,
}

struct PipelineOutput {
    records: Vec<CorrelationRecord>,
    summary: PipelineSummary,
    warnings: Vec<String>,
}

fn run_pipeline(
    config: &ExperimentConfig,
    schedule: &Schedule<f64>,
    mode: EvolutionMode,
) -> Result<PipelineOutput> {
    let regime = schedule.regime();
    let zeta = PurityFactor::new(config.zeta)?;
    let zeta_test = PurityFactor::new(config.zeta_test)?;
    let trajectory = evolve(&all_minus(), schedule, mode)?;
    let mut warnings = Vec::new();
    let tag = format!("{regime}/{mode}");

    let epsilon_max = schedule.epsilon_max(EPSILON_GRID).unwrap_or_else(|e| {
        warnings.push(format!("{tag}: ε_max unavailable ({e})"));
        f64::NAN
    });

    let samples = config.samples();
    let mut records = Vec::with_capacity(samples.len());
    let mut max_negativity_nmr = 0.0f64;
    let mut final_delta_d_nmr = f64::NAN;
    for &step in &samples {
        let psi = trajectory
            .after_steps(step)
            .ok_or_else(|| Error::Config(format!("sample step {step} beyond trajectory")))?;
        let point = step - 1;
        let params = schedule.params_at(point)?;
        let ground = ground_state(&params)?;
        if ground.degenerate {
            warnings.push(format!(
                "{tag} step {step}: ground state degenerate (gap {:e})",
                ground.gap
            ));
        }
        let pure = psi.projector();
        let ground_prob = ground.state.overlap_sqr(psi);
        let fidelity_vs_ground = fidelity(&ground.state.projector(), &pure)?;
        let epsilon = schedule.epsilon_at_step(point).unwrap_or_else(|e| {
            warnings.push(format!("{tag} step {step}: ε unavailable ({e})"));
            f64::NAN
        });

        let neg = negativity_scores(&pure)?;
        let disc = discord_scores(&pure)?;
        let mixed = discord_scores(&pseudo_pure(psi, zeta_test))?;

        let nmr_state = pseudo_pure(psi, zeta);
        max_negativity_nmr = max_negativity_nmr.max(negativity_scores(&nmr_state)?.n1_23);
        if step == *samples.last().expect("non-empty") {
            final_delta_d_nmr = discord_scores(&nmr_state)?.delta;
        }

        records.push(CorrelationRecord {
            regime,
            mode,
            step,
            j_over_h: params.j() / params.h(),
            n12: neg.n12,
            n13: neg.n13,
            n1_23: neg.n1_23,
            delta_n2: neg.delta,
            d12: disc.d12,
            d13: disc.d13,
            d1_23: disc.d1_23,
            delta_d: disc.delta,
            delta_d_mixed: mixed.delta,
            fidelity_vs_ground,
            ground_prob,
            epsilon,
        });
    }

    let last = records.last();
    let fold_min = |f: fn(&CorrelationRecord) -> f64| records.iter().map(f).fold(f64::NAN, f64::min);
    let summary = PipelineSummary {
        regime,
        mode,
        epsilon_max,
        final_ground_prob: last.map_or(f64::NAN, |r| r.ground_prob),
        min_ground_prob: fold_min(|r| r.ground_prob),
        min_fidelity: fold_min(|r| r.fidelity_vs_ground),
        final_delta_n2: last.map_or(f64::NAN, |r| r.delta_n2),
        final_delta_d: last.map_or(f64::NAN, |r| r.delta_d),
        final_delta_d_mixed: last.map_or(f64::NAN, |r| r.delta_d_mixed),
        final_delta_d_nmr,
        max_negativity_nmr,
    };
    Ok(PipelineOutput {
        records,
        summary,
        warnings,
    })
}

/// Runs every configured regime × mode pipeline concurrently and merges the
/// results in (regime, mode, step) order.
pub fn run(config: &ExperimentConfig) -> Result<RunReport> {
    config.validate()?;
    let mut regimes = config.regimes.clone();
    regimes.sort();
    regimes.dedup();
    let mut modes = config.modes.clone();
    modes.sort();
    modes.dedup();

    let schedules = regimes
        .iter()
        .map(|&r| make_schedule(&config.schedule_config(r)))
        .collect::<Result<Vec<_>>>()?;
    let jobs: Vec<(&Schedule<f64>, EvolutionMode)> = schedules
        .iter()
        .flat_map(|s| modes.iter().map(move |&m| (s, m)))
        .collect();

    let outputs: Vec<Result<PipelineOutput>> = thread::scope(|scope| {
        let handles: Vec<_> = jobs
            .iter()
            .map(|&(schedule, mode)| scope.spawn(move || run_pipeline(config, schedule, mode)))
            .collect();
        handles
            .into_iter()
            .map(|h| h.join().expect("pipeline thread panicked"))
            .collect()
    });

    let mut report = RunReport::default();
    for out in outputs {
        let out = out?;
        report.records.extend(out.records);
        report.summaries.push(out.summary);
        report.warnings.extend(out.warnings);
    }
    report
        .records
        .sort_by(|a, b| (a.regime, a.mode, a.step).cmp(&(b.regime, b.mode, b.step)));
    Ok(report)
}

/// Parameter varied by [`sweep`].
#[derive(Clone, Debug, PartialEq)]
pub enum SweepAxis {
    Kappa(Vec<f64>),
    Steps(Vec<usize>),
}

#[derive(Clone, Debug, PartialEq)]
pub struct SweepRow {
    pub regime: Regime,
    pub kappa: Option<f64>,
    pub steps: usize,
    pub epsilon_max: f64,
    /// Final ground-state probability per evolution mode, in [`EvolutionMode::ALL`] order.
    pub final_ground_prob: [f64; 2],
}

/// `ε_max` and final ground-state probabilities across sinh sharpness or
/// step count, with every other parameter taken from `base`.
pub fn sweep(base: &ExperimentConfig, axis: &SweepAxis) -> Result<Vec<SweepRow>> {
    let configs: Vec<ExperimentConfig> = match axis {
        SweepAxis::Kappa(values) => values
            .iter()
            .map(|&kappa| ExperimentConfig {
                shape: Shape::Sinh { kappa },
                ..base.clone()
            })
            .collect(),
        SweepAxis::Steps(values) => values
            .iter()
            .map(|&steps| ExperimentConfig {
                steps,
                sample_steps: None,
                ..base.clone()
            })
            .collect(),
    };
    let mut rows = Vec::new();
    for cfg in &configs {
        for &regime in &base.regimes {
            let schedule = make_schedule(&cfg.schedule_config(regime))?;
            let final_params = schedule.params_at(schedule.steps())?;
            let mut probs = [f64::NAN; 2];
            for (slot, mode) in probs.iter_mut().zip(EvolutionMode::ALL) {
                let t = evolve(&all_minus(), &schedule, mode)?;
                *slot = ground_state(&final_params)?.state.overlap_sqr(t.final_state());
            }
            rows.push(SweepRow {
                regime,
                kappa: match cfg.shape {
                    Shape::Sinh { kappa } => Some(kappa),
                    Shape::Linear => None,
                },
                steps: cfg.steps,
                epsilon_max: schedule.epsilon_max(EPSILON_GRID)?,
                final_ground_prob: probs,
            });
        }
    }
    Ok(rows)
}
