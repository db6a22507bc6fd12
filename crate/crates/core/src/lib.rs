//! Decision-weighted false discovery rate control for large-scale multiple
//! testing.
//!
//! The crate implements ranking and thresholding procedures that maximize a
//! weighted expected-true-positives criterion subject to a weighted FDR
//! constraint, together with comparator procedures, oracle and data-driven
//! local-fdr machinery, realized/averaged error metrics, and a replication
//! engine for Monte Carlo power studies.
//!
//! Quick tour:
//! - [`model`]: mixture models, weight schemes, seeded batch generation.
//! - [`lfdr`]: oracle local fdr and its data-driven estimate.
//! - [`ranking`]: the bounded R statistic, value-to-cost ratio and
//!   comparator statistics.
//! - [`procedures`]: the randomized oracle rule, step-wise data-driven
//!   rules, and step-up comparators.
//! - [`metrics`]: realized weighted FDP/ETP and Monte Carlo aggregates.
//! - [`sim`]: declarative experiments and the replication engine.

pub mod batch_io;
pub mod demo;
pub mod error;
pub mod lfdr;
pub mod metrics;
pub mod model;
pub mod procedures;
pub mod ranking;
pub mod rng;
pub mod sim;

pub use error::{Error, Result};
pub use lfdr::{estimate_lfdr, kde_fit, oracle_lfdr, LfdrOptions, LfdrSource, LfdrVector};
pub use metrics::{aggregate, replication_metrics, AggregateMetrics, ReplicationMetrics};
pub use model::{
    covariate_weights, generate_batch, GaussianComponent, GroupSpec, HypothesisBatch,
    MixtureModel, WeightScheme,
};
pub use procedures::{DecisionSet, Procedure};
pub use ranking::{rank_all, RankedHypotheses};
pub use sim::{builtin_config, builtin_configs, run_experiment, ExperimentConfig, ReplicationSummary};
