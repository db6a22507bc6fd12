//! Realized and aggregated error/power metrics: both weighted-FDR
//! definitions, weighted and unweighted true-positive counts, and top-k
//! ranking power.

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::model::HypothesisBatch;
use crate::procedures::DecisionSet;

/// Compensated (Kahan) summation so aggregate results do not depend on how
/// replications were batched together.
pub(crate) fn kahan_sum(values: impl IntoIterator<Item = f64>) -> f64 {
    let mut sum = 0.0;
    let mut carry = 0.0;
    for v in values {
        let y = v - carry;
        let t = sum + y;
        carry = (t - sum) - y;
        sum = t;
    }
    sum
}

/// Realized metrics of one replication.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(rename_all = "camelCase")]
pub struct ReplicationMetrics {
    /// Realized weighted false discovery proportion (0 when nothing is rejected).
    pub weighted_fdp: f64,
    /// sum a_i (1 - theta_i) delta_i
    pub weighted_false_mass: f64,
    /// sum a_i delta_i
    pub weighted_reject_mass: f64,
    /// sum b_i theta_i delta_i
    pub weighted_true_pos: f64,
    pub rejects: usize,
    pub true_positives: usize,
}

/// Computes all realized fields from decisions, truth and weights.
pub fn replication_metrics(
    decisions: &DecisionSet,
    batch: &HypothesisBatch,
) -> Result<ReplicationMetrics> {
    let theta = batch.theta()?;
    if decisions.reject.len() != batch.len() {
        return Err(Error::Config("decision vector length mismatch".into()));
    }
    let mut false_mass = 0.0;
    let mut reject_mass = 0.0;
    let mut true_pos = 0.0;
    let mut rejects = 0;
    let mut true_positives = 0;
    let units = decisions
        .reject
        .iter()
        .zip(theta)
        .zip(batch.a.iter().zip(&batch.b));
    for ((&rejected, &non_null), (&a, &b)) in units {
        if !rejected {
            continue;
        }
        rejects += 1;
        reject_mass += a;
        if non_null {
            true_positives += 1;
            true_pos += b;
        } else {
            false_mass += a;
        }
    }
    let weighted_fdp = if reject_mass > 0.0 {
        false_mass / reject_mass
    } else {
        0.0
    };
    Ok(ReplicationMetrics {
        weighted_fdp,
        weighted_false_mass: false_mass,
        weighted_reject_mass: reject_mass,
        weighted_true_pos: true_pos,
        rejects,
        true_positives,
    })
}

/// Standard errors of the aggregate estimates.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(rename_all = "camelCase")]
pub struct StandardErrors {
    pub wfdr_bh: f64,
    pub wfdr_ratio: f64,
    pub etp: f64,
    pub etp_unweighted: f64,
}

/// Monte Carlo aggregates over replications. Both weighted-FDR definitions
/// are always reported: the mean realized proportion and the
/// ratio-of-expectations version.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(rename_all = "camelCase")]
pub struct AggregateMetrics {
    pub wfdr_bh: f64,
    pub wfdr_ratio: f64,
    pub etp: f64,
    pub etp_unweighted: f64,
    pub reps: usize,
    pub se: StandardErrors,
}

fn mean_and_se(values: &[f64]) -> (f64, f64) {
    let n = values.len() as f64;
    let mean = kahan_sum(values.iter().copied()) / n;
    if values.len() < 2 {
        return (mean, 0.0);
    }
    let ss = kahan_sum(values.iter().map(|v| (v - mean) * (v - mean)));
    (mean, (ss / (n - 1.0)).sqrt() / n.sqrt())
}

/// Aggregates per-replication metrics. The ratio definition divides the mean
/// false mass by the mean rejected mass (zero when nothing was ever
/// rejected); its standard error comes from the delta method.
pub fn aggregate(replications: &[ReplicationMetrics]) -> Result<AggregateMetrics> {
    if replications.is_empty() {
        return Err(Error::EmptyInput);
    }
    let n = replications.len() as f64;
    let fdp: Vec<f64> = replications.iter().map(|r| r.weighted_fdp).collect();
    let tp: Vec<f64> = replications.iter().map(|r| r.weighted_true_pos).collect();
    let tp_count: Vec<f64> = replications.iter().map(|r| r.true_positives as f64).collect();
    let (wfdr_bh, se_bh) = mean_and_se(&fdp);
    let (etp, se_etp) = mean_and_se(&tp);
    let (etp_unweighted, se_etp_unweighted) = mean_and_se(&tp_count);

    let mean_false = kahan_sum(replications.iter().map(|r| r.weighted_false_mass)) / n;
    let mean_reject = kahan_sum(replications.iter().map(|r| r.weighted_reject_mass)) / n;
    let (wfdr_ratio, se_ratio) = if mean_reject > 0.0 {
        let ratio = mean_false / mean_reject;
        // Delta method: Var(num/den) via the residuals num_i - ratio * den_i.
        let resid: Vec<f64> = replications
            .iter()
            .map(|r| r.weighted_false_mass - ratio * r.weighted_reject_mass)
            .collect();
        let (_, se_resid) = mean_and_se(&resid);
        (ratio, se_resid / mean_reject)
    } else {
        (0.0, 0.0)
    };

    Ok(AggregateMetrics {
        wfdr_bh,
        wfdr_ratio,
        etp,
        etp_unweighted,
        reps: replications.len(),
        se: StandardErrors {
            wfdr_bh: se_bh,
            wfdr_ratio: se_ratio,
            etp: se_etp,
            etp_unweighted: se_etp_unweighted,
        },
    })
}

/// Number of true non-nulls among the first k hypotheses of a ranking.
pub fn top_k_true_positives(order: &[usize], batch: &HypothesisBatch, k: usize) -> Result<usize> {
    let theta = batch.theta()?;
    if k == 0 || k > order.len() {
        return Err(Error::Config(format!(
            "k must lie in 1..={}, got {k}",
            order.len()
        )));
    }
    Ok(order[..k].iter().filter(|&&i| theta[i]).count())
}
