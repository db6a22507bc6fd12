//! Declarative experiment configurations and the replication engine.
//!
//! A config names a model, a weight scheme, a nominal level, procedures to
//! compare and an optional single-parameter sweep. Replications are paired:
//! within one replication every procedure sees the identical batch. Results
//! are deterministic given the master seed, independent of thread count.

use rayon::prelude::*;
use serde::{Deserialize, Serialize};
use std::io::Write;

use crate::error::{Error, Result};
use crate::lfdr::{
    estimate_lfdr, oracle_lfdr, two_sided_pvalue, LfdrOptions, LfdrSource, LfdrVector,
};
use crate::metrics::{aggregate, replication_metrics, top_k_true_positives, AggregateMetrics, ReplicationMetrics};
use crate::model::{
    generate_batch, GaussianComponent, GroupSpec, HypothesisBatch, MixtureModel, WeightScheme,
};
use crate::procedures::{
    adaptive_z, bh_step_up, oracle_procedure, pfer_oracle, procedure1, procedure2, ranking_order,
    wpo_stepwise, DecisionSet, Procedure,
};
use crate::rng::derive_seed;

/// Which parameter a sweep varies.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(tag = "path", rename_all = "kebab-case")]
pub enum SweepParameter {
    /// One group's weight ratio c_k (requires a per-group-ratio scheme).
    GroupRatio { group: usize },
    /// Non-null mean of one group, or of all groups when `group` is absent.
    NonNullMean {
        #[serde(default, skip_serializing_if = "Option::is_none")]
        group: Option<usize>,
    },
    /// Non-null proportion of one group or of all groups.
    NonNullProportion {
        #[serde(default, skip_serializing_if = "Option::is_none")]
        group: Option<usize>,
    },
    /// The nominal level.
    Alpha,
    /// Number of hypotheses (single-group models only).
    Size,
}

impl SweepParameter {
    pub fn label(&self) -> String {
        match self {
            SweepParameter::GroupRatio { group } => format!("group-ratio[{group}]"),
            SweepParameter::NonNullMean { group: Some(g) } => format!("non-null-mean[{g}]"),
            SweepParameter::NonNullMean { group: None } => "non-null-mean".into(),
            SweepParameter::NonNullProportion { group: Some(g) } => {
                format!("non-null-proportion[{g}]")
            }
            SweepParameter::NonNullProportion { group: None } => "non-null-proportion".into(),
            SweepParameter::Alpha => "alpha".into(),
            SweepParameter::Size => "size".into(),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Sweep {
    pub parameter: SweepParameter,
    pub values: Vec<f64>,
}

/// A declarative experiment.
#[derive(Debug, Clone, Serialize, Deserialize)]
#[serde(rename_all = "camelCase")]
pub struct ExperimentConfig {
    pub name: String,
    pub model: MixtureModel,
    pub weights: WeightScheme,
    pub alpha: f64,
    pub procedures: Vec<Procedure>,
    pub reps: usize,
    pub master_seed: u64,
    pub lfdr_source: LfdrSource,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub sweep: Option<Sweep>,
    #[serde(default)]
    pub estimation: LfdrOptions,
    /// Ranking-power summary sizes (top-k true positives), when non-empty.
    #[serde(default, skip_serializing_if = "Vec::is_empty")]
    pub top_k: Vec<usize>,
}

impl ExperimentConfig {
    pub fn validate(&self) -> Result<()> {
        self.model.validate()?;
        self.weights.validate(self.model.groups.len())?;
        if !(0.0 < self.alpha && self.alpha < 1.0) {
            return Err(Error::Config("alpha must lie strictly inside (0,1)".into()));
        }
        if self.reps < 1 {
            return Err(Error::Config("reps must be >= 1".into()));
        }
        if self.procedures.is_empty() {
            return Err(Error::Config("at least one procedure is required".into()));
        }
        if matches!(self.weights, WeightScheme::CovariatePower { .. })
            && (self.lfdr_source == LfdrSource::Oracle
                || self.procedures.iter().any(|p| p.needs_oracle()))
        {
            return Err(Error::Config(
                "covariate-power weights drive per-hypothesis proportions; group-level \
                 oracle lfdr does not apply (use estimated lfdr)"
                    .into(),
            ));
        }
        if let Some(sweep) = &self.sweep {
            if sweep.values.is_empty() {
                return Err(Error::Config("sweep needs at least one value".into()));
            }
            // Fail fast if any sweep value is inapplicable.
            for &v in &sweep.values {
                self.at_sweep_value(Some(v))?;
            }
        }
        Ok(())
    }

    pub fn from_json(text: &str) -> Result<Self> {
        let config: ExperimentConfig =
            serde_json::from_str(text).map_err(|e| Error::Config(e.to_string()))?;
        config.validate()?;
        Ok(config)
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("config serializes")
    }

    /// The concrete (model, weights, alpha) at one sweep value.
    fn at_sweep_value(&self, value: Option<f64>) -> Result<(MixtureModel, WeightScheme, f64)> {
        let mut model = self.model.clone();
        let mut weights = self.weights.clone();
        let mut alpha = self.alpha;
        let (parameter, v) = match (&self.sweep, value) {
            (Some(s), Some(v)) => (&s.parameter, v),
            _ => return Ok((model, weights, alpha)),
        };
        match parameter {
            SweepParameter::GroupRatio { group } => match &mut weights {
                WeightScheme::PerGroupRatio { ratios, .. } => {
                    let slot = ratios
                        .get_mut(*group)
                        .ok_or(Error::UnknownGroup(*group))?;
                    *slot = v;
                }
                _ => {
                    return Err(Error::Config(
                        "group-ratio sweep requires a per-group-ratio weight scheme".into(),
                    ))
                }
            },
            SweepParameter::NonNullMean { group } => match group {
                Some(g) => {
                    model
                        .groups
                        .get_mut(*g)
                        .ok_or(Error::UnknownGroup(*g))?
                        .non_null
                        .mean = v;
                }
                None => {
                    for g in &mut model.groups {
                        g.non_null.mean = v;
                    }
                }
            },
            SweepParameter::NonNullProportion { group } => match group {
                Some(g) => {
                    model
                        .groups
                        .get_mut(*g)
                        .ok_or(Error::UnknownGroup(*g))?
                        .non_null_proportion = v;
                }
                None => {
                    for g in &mut model.groups {
                        g.non_null_proportion = v;
                    }
                }
            },
            SweepParameter::Alpha => alpha = v,
            SweepParameter::Size => {
                if model.groups.len() != 1 {
                    return Err(Error::Config(
                        "size sweeps are defined for single-group models".into(),
                    ));
                }
                if v < 1.0 || v.fract() != 0.0 {
                    return Err(Error::Config(format!("size must be a positive integer, got {v}")));
                }
                model.groups[0].size = v as usize;
            }
        }
        model.validate()?;
        weights.validate(model.groups.len())?;
        Ok((model, weights, alpha))
    }
}

/// Aggregated top-k true-positive counts for one procedure.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(rename_all = "camelCase")]
pub struct TopKAggregate {
    pub k: usize,
    pub mean_true_positives: f64,
    pub se: f64,
}

/// One (sweep value, procedure) cell of a summary.
#[derive(Debug, Clone, Serialize, Deserialize)]
#[serde(rename_all = "camelCase")]
pub struct SummaryRow {
    /// NaN-free: no-sweep configs carry `None`.
    pub sweep_value: Option<f64>,
    pub procedure: Procedure,
    pub metrics: AggregateMetrics,
    #[serde(default, skip_serializing_if = "Vec::is_empty")]
    pub top_k: Vec<TopKAggregate>,
}

/// Results of one experiment: one row per (sweep value, procedure).
#[derive(Debug, Clone, Serialize, Deserialize)]
#[serde(rename_all = "camelCase")]
pub struct ReplicationSummary {
    pub name: String,
    pub sweep_parameter: Option<String>,
    pub rows: Vec<SummaryRow>,
}

impl ReplicationSummary {
    pub fn row(&self, sweep_value: Option<f64>, procedure: Procedure) -> Option<&SummaryRow> {
        self.rows.iter().find(|r| {
            r.procedure == procedure
                && match (r.sweep_value, sweep_value) {
                    (Some(a), Some(b)) => a == b,
                    (None, None) => true,
                    _ => false,
                }
        })
    }
}

struct ReplicationOutcome {
    per_procedure: Vec<ReplicationMetrics>,
    top_k: Vec<Vec<usize>>,
}

#[allow(clippy::too_many_arguments)]
fn run_procedure(
    procedure: Procedure,
    lfdr: &LfdrVector,
    oracle: Option<&LfdrVector>,
    batch: &HypothesisBatch,
    model: &MixtureModel,
    alpha: f64,
    pvals: Option<&[f64]>,
    oracle_seed: u64,
) -> Result<DecisionSet> {
    match procedure {
        Procedure::Dd => procedure1(lfdr, batch, alpha),
        Procedure::DdProportional => procedure2(lfdr, batch, alpha),
        Procedure::Az => adaptive_z(lfdr, alpha),
        Procedure::Wpo => wpo_stepwise(lfdr, batch, alpha),
        Procedure::Bh97 => bh_step_up(pvals.expect("pvalues prepared"), &batch.a, alpha),
        Procedure::Bh95 => {
            bh_step_up(pvals.expect("pvalues prepared"), &vec![1.0; batch.len()], alpha)
        }
        Procedure::Oracle => {
            oracle_procedure(oracle.expect("oracle lfdr prepared"), batch, alpha, oracle_seed)
        }
        Procedure::PferOracle => pfer_oracle(model, batch, alpha),
    }
}

fn run_replication(
    config: &ExperimentConfig,
    model: &MixtureModel,
    weights: &WeightScheme,
    alpha: f64,
    sweep_index: u64,
    replication: u64,
) -> Result<ReplicationOutcome> {
    let batch_seed = derive_seed(config.master_seed, &[sweep_index, replication, 0]);
    let oracle_seed = derive_seed(config.master_seed, &[sweep_index, replication, 1]);
    let batch = generate_batch(model, weights, batch_seed)?;

    let needs_oracle = config.lfdr_source == LfdrSource::Oracle
        || config.procedures.iter().any(|p| p.needs_oracle());
    let oracle = if needs_oracle {
        Some(oracle_lfdr(model, &batch)?)
    } else {
        None
    };
    let lfdr = match config.lfdr_source {
        LfdrSource::Oracle => oracle.clone().expect("oracle lfdr prepared"),
        LfdrSource::Estimated => {
            let mut options = config.estimation.clone();
            if options.nulls.is_empty() {
                options.nulls = model.groups.iter().map(|g| g.null).collect();
            }
            estimate_lfdr(&batch, &options)?
        }
    };
    let pvals: Option<Vec<f64>> = if config.procedures.iter().any(|p| p.uses_pvalues()) {
        Some(
            batch
                .x
                .iter()
                .zip(&batch.group)
                .map(|(x, g)| {
                    let null = model.groups[*g].null;
                    two_sided_pvalue((x - null.mean) / null.sd)
                })
                .collect(),
        )
    } else {
        None
    };

    let mut per_procedure = Vec::with_capacity(config.procedures.len());
    let mut top_k = Vec::with_capacity(config.procedures.len());
    for &procedure in &config.procedures {
        let decisions = run_procedure(
            procedure,
            &lfdr,
            oracle.as_ref(),
            &batch,
            model,
            alpha,
            pvals.as_deref(),
            oracle_seed,
        )?;
        per_procedure.push(replication_metrics(&decisions, &batch)?);
        if config.top_k.is_empty() {
            top_k.push(Vec::new());
        } else {
            let order = ranking_order(procedure, &lfdr, &batch, alpha, pvals.as_deref())?;
            let counts = config
                .top_k
                .iter()
                .map(|&k| top_k_true_positives(&order, &batch, k))
                .collect::<Result<Vec<usize>>>()?;
            top_k.push(counts);
        }
    }
    Ok(ReplicationOutcome {
        per_procedure,
        top_k,
    })
}

/// Runs every replication of every sweep point and aggregates per
/// (sweep value, procedure). Replications run in parallel on the ambient
/// rayon pool; results are identical for any thread count.
pub fn run_experiment(config: &ExperimentConfig) -> Result<ReplicationSummary> {
    config.validate()?;
    let sweep_values: Vec<Option<f64>> = match &config.sweep {
        Some(s) => s.values.iter().map(|v| Some(*v)).collect(),
        None => vec![None],
    };

    let mut rows = Vec::new();
    for (sweep_index, sweep_value) in sweep_values.iter().enumerate() {
        let (model, weights, alpha) = config.at_sweep_value(*sweep_value)?;
        let outcomes: Vec<ReplicationOutcome> = (0..config.reps)
            .into_par_iter()
            .map(|r| {
                run_replication(config, &model, &weights, alpha, sweep_index as u64, r as u64)
                    .map_err(|e| Error::Replication {
                        replication: r,
                        sweep_value: sweep_value.unwrap_or(f64::NAN),
                        source: Box::new(e),
                    })
            })
            .collect::<Result<Vec<_>>>()?;

        for (pi, procedure) in config.procedures.iter().enumerate() {
            let metrics: Vec<ReplicationMetrics> =
                outcomes.iter().map(|o| o.per_procedure[pi]).collect();
            let agg = aggregate(&metrics)?;
            let top_k = config
                .top_k
                .iter()
                .enumerate()
                .map(|(ki, &k)| {
                    let counts: Vec<f64> =
                        outcomes.iter().map(|o| o.top_k[pi][ki] as f64).collect();
                    let n = counts.len() as f64;
                    let mean = counts.iter().sum::<f64>() / n;
                    let se = if counts.len() > 1 {
                        let ss: f64 = counts.iter().map(|c| (c - mean) * (c - mean)).sum();
                        (ss / (n - 1.0)).sqrt() / n.sqrt()
                    } else {
                        0.0
                    };
                    TopKAggregate {
                        k,
                        mean_true_positives: mean,
                        se,
                    }
                })
                .collect();
            rows.push(SummaryRow {
                sweep_value: *sweep_value,
                procedure: *procedure,
                metrics: agg,
                top_k,
            });
        }
    }

    Ok(ReplicationSummary {
        name: config.name.clone(),
        sweep_parameter: config.sweep.as_ref().map(|s| s.parameter.label()),
        rows,
    })
}

/// Writes the standard summary CSV:
/// sweep_param, sweep_value, procedure, wfdr_bh, wfdr_ratio, etp,
/// etp_unweighted, se_wfdr, se_etp, reps.
pub fn write_summary_csv<W: Write>(summary: &ReplicationSummary, writer: W) -> Result<()> {
    let mut w = csv::Writer::from_writer(writer);
    w.write_record([
        "sweep_param",
        "sweep_value",
        "procedure",
        "wfdr_bh",
        "wfdr_ratio",
        "etp",
        "etp_unweighted",
        "se_wfdr",
        "se_etp",
        "reps",
    ])?;
    let param = summary.sweep_parameter.clone().unwrap_or_else(|| "none".into());
    for row in &summary.rows {
        w.write_record([
            param.clone(),
            row.sweep_value.map(|v| v.to_string()).unwrap_or_default(),
            row.procedure.to_string(),
            row.metrics.wfdr_bh.to_string(),
            row.metrics.wfdr_ratio.to_string(),
            row.metrics.etp.to_string(),
            row.metrics.etp_unweighted.to_string(),
            row.metrics.se.wfdr_ratio.to_string(),
            row.metrics.se.etp.to_string(),
            row.metrics.reps.to_string(),
        ])?;
    }
    w.flush()?;
    Ok(())
}

/// Writes the top-k companion CSV (only meaningful when the config asked
/// for top-k summaries): sweep_param, sweep_value, procedure, k, etp_topk,
/// se, reps.
pub fn write_top_k_csv<W: Write>(summary: &ReplicationSummary, writer: W) -> Result<()> {
    let mut w = csv::Writer::from_writer(writer);
    w.write_record([
        "sweep_param",
        "sweep_value",
        "procedure",
        "k",
        "etp_topk",
        "se",
        "reps",
    ])?;
    let param = summary.sweep_parameter.clone().unwrap_or_else(|| "none".into());
    for row in &summary.rows {
        for t in &row.top_k {
            w.write_record([
                param.clone(),
                row.sweep_value.map(|v| v.to_string()).unwrap_or_default(),
                row.procedure.to_string(),
                t.k.to_string(),
                t.mean_true_positives.to_string(),
                t.se.to_string(),
                row.metrics.reps.to_string(),
            ])?;
        }
    }
    w.flush()?;
    Ok(())
}

const DEFAULT_MASTER_SEED: u64 = 1729;

fn standard_group(size: usize, p: f64, mu: f64) -> GroupSpec {
    GroupSpec {
        size,
        non_null_proportion: p,
        null: GaussianComponent::standard(),
        non_null: GaussianComponent { mean: mu, sd: 1.0 },
    }
}

/// The built-in experiment configurations reproducing the simulation
/// studies: group-wise weights (study1, study2), general weights
/// (study3-*, study4), the two error-rate definitions (e3-definitions),
/// covariate-informed power weights (e5-*), and the two-unit ranking
/// demonstration setting (appendixA-demo).
pub fn builtin_configs() -> Vec<ExperimentConfig> {
    let mut configs = Vec::new();
    let ln3 = 3.0f64.ln();
    let ln6 = 6.0f64.ln();

    // study1: two groups, proportional weights within groups, c2 swept.
    configs.push(ExperimentConfig {
        name: "study1".into(),
        model: MixtureModel {
            groups: vec![standard_group(3000, 0.2, 1.9), standard_group(1500, 0.2, 1.9)],
        },
        weights: WeightScheme::PerGroupRatio {
            a: 1.0,
            ratios: vec![3.0, 0.3],
        },
        alpha: 0.1,
        procedures: vec![Procedure::Bh95, Procedure::Az, Procedure::Wpo, Procedure::Dd],
        reps: 200,
        master_seed: DEFAULT_MASTER_SEED,
        lfdr_source: LfdrSource::Estimated,
        sweep: Some(Sweep {
            parameter: SweepParameter::GroupRatio { group: 1 },
            values: vec![0.1, 0.2, 0.3, 0.4, 0.5, 0.6, 0.7, 0.8],
        }),
        estimation: LfdrOptions::default(),
        top_k: vec![],
    });

    // study2: same two-group setting with fixed ratios, signal strength swept.
    configs.push(ExperimentConfig {
        name: "study2".into(),
        model: MixtureModel {
            groups: vec![standard_group(3000, 0.2, 1.9), standard_group(1500, 0.2, 1.9)],
        },
        weights: WeightScheme::PerGroupRatio {
            a: 1.0,
            ratios: vec![3.0, 0.3],
        },
        alpha: 0.1,
        procedures: vec![Procedure::Bh95, Procedure::Az, Procedure::Wpo, Procedure::Dd],
        reps: 200,
        master_seed: DEFAULT_MASTER_SEED,
        lfdr_source: LfdrSource::Estimated,
        sweep: Some(Sweep {
            parameter: SweepParameter::NonNullMean { group: None },
            values: vec![1.75, 1.8, 1.85, 1.9, 1.95, 2.0, 2.1, 2.2, 2.3, 2.4, 2.5],
        }),
        estimation: LfdrOptions::default(),
        top_k: vec![],
    });

    // study3: single group, log-normal b weights; three separate sweeps.
    let study3_base = ExperimentConfig {
        name: String::new(),
        model: MixtureModel {
            groups: vec![standard_group(3000, 0.2, 1.9)],
        },
        weights: WeightScheme::LogNormalB {
            a: vec![1.0],
            location: ln3,
            scale: 1.0,
        },
        alpha: 0.1,
        procedures: vec![Procedure::Az, Procedure::Wpo, Procedure::Dd],
        reps: 200,
        master_seed: DEFAULT_MASTER_SEED,
        lfdr_source: LfdrSource::Estimated,
        sweep: None,
        estimation: LfdrOptions::default(),
        top_k: vec![],
    };
    configs.push(ExperimentConfig {
        name: "study3-mu".into(),
        sweep: Some(Sweep {
            parameter: SweepParameter::NonNullMean { group: None },
            values: vec![1.75, 1.8, 1.85, 1.9, 1.95, 2.0, 2.1, 2.2, 2.3, 2.4, 2.5],
        }),
        ..study3_base.clone()
    });
    // The sparsity sweep stays at or above p = 0.1: the tail-based
    // proportion estimator is only reliable down to about that density at
    // this sample size.
    configs.push(ExperimentConfig {
        name: "study3-p".into(),
        sweep: Some(Sweep {
            parameter: SweepParameter::NonNullProportion { group: None },
            values: vec![0.1, 0.15, 0.2, 0.25, 0.3],
        }),
        ..study3_base.clone()
    });
    configs.push(ExperimentConfig {
        name: "study3-alpha".into(),
        sweep: Some(Sweep {
            parameter: SweepParameter::Alpha,
            values: vec![0.05, 0.075, 0.1, 0.125, 0.15],
        }),
        ..study3_base
    });

    // study4: unequal a-weights across groups; group-1 signal swept negative.
    configs.push(ExperimentConfig {
        name: "study4".into(),
        model: MixtureModel {
            groups: vec![standard_group(3000, 0.2, -3.0), standard_group(1500, 0.1, 2.0)],
        },
        weights: WeightScheme::LogNormalB {
            a: vec![1.0, 3.0],
            location: ln6,
            scale: 1.0,
        },
        alpha: 0.1,
        procedures: vec![Procedure::Az, Procedure::Wpo, Procedure::Dd],
        reps: 200,
        master_seed: DEFAULT_MASTER_SEED,
        lfdr_source: LfdrSource::Estimated,
        sweep: Some(Sweep {
            parameter: SweepParameter::NonNullMean { group: Some(0) },
            values: vec![-3.75, -3.5, -3.25, -3.0, -2.75, -2.5, -2.25, -2.0],
        }),
        estimation: LfdrOptions::default(),
        top_k: vec![],
    });

    // e3-definitions: log-normal a weights, unit b, number of tests swept.
    configs.push(ExperimentConfig {
        name: "e3-definitions".into(),
        model: MixtureModel {
            groups: vec![standard_group(500, 0.2, 1.9)],
        },
        weights: WeightScheme::LogNormalA {
            b: 1.0,
            location: ln3,
            scale: 1.0,
        },
        alpha: 0.1,
        procedures: vec![Procedure::Bh97, Procedure::Dd],
        reps: 200,
        master_seed: DEFAULT_MASTER_SEED,
        lfdr_source: LfdrSource::Estimated,
        sweep: Some(Sweep {
            parameter: SweepParameter::Size,
            values: vec![500.0, 1000.0, 2000.0, 3000.0, 4000.0, 5000.0],
        }),
        estimation: LfdrOptions::default(),
        top_k: vec![],
    });

    // e5: covariate-coupled weights, three informativeness settings.
    for (suffix, exponent) in [("informative", 0.5), ("moderate", 0.125), ("anti", -0.125)] {
        configs.push(ExperimentConfig {
            name: format!("e5-{suffix}"),
            model: MixtureModel {
                groups: vec![standard_group(3000, 0.2, 2.0)],
            },
            weights: WeightScheme::CovariatePower { exponent },
            alpha: 0.1,
            procedures: vec![Procedure::Bh97, Procedure::Az, Procedure::Dd],
            reps: 200,
            master_seed: DEFAULT_MASTER_SEED,
            lfdr_source: LfdrSource::Estimated,
            sweep: Some(Sweep {
                parameter: SweepParameter::NonNullMean { group: None },
                values: vec![1.75, 2.0, 2.25, 2.5],
            }),
            estimation: LfdrOptions::default(),
            top_k: vec![100, 200, 300],
        });
    }

    // appendixA-demo: the ranking demonstration setting with oracle lfdr.
    configs.push(ExperimentConfig {
        name: "appendixA-demo".into(),
        model: MixtureModel {
            groups: vec![standard_group(1000, 0.2, 2.0)],
        },
        weights: WeightScheme::LogNormalB {
            a: vec![1.0],
            location: ln3,
            scale: 1.0,
        },
        alpha: 0.1,
        procedures: vec![Procedure::Wpo, Procedure::Dd],
        reps: 200,
        master_seed: DEFAULT_MASTER_SEED,
        lfdr_source: LfdrSource::Oracle,
        sweep: None,
        estimation: LfdrOptions::default(),
        top_k: vec![],
    });

    configs
}

/// Looks up a built-in config by name.
pub fn builtin_config(name: &str) -> Result<ExperimentConfig> {
    builtin_configs()
        .into_iter()
        .find(|c| c.name == name)
        .ok_or_else(|| {
            let names: Vec<String> = builtin_configs().iter().map(|c| c.name.clone()).collect();
            Error::Config(format!(
                "unknown builtin '{name}'; available: {}",
                names.join(", ")
            ))
        })
}
