//! Rejection procedures: the randomized oracle rule, the data-driven
//! step-wise procedures, the adaptive-z and WPO comparators, weighted and
//! unweighted step-up procedures, and the oracle expected-count rule.

use rand::Rng;
use serde::{Deserialize, Serialize};
use std::fmt;
use std::str::FromStr;

use crate::error::{Error, Result};
use crate::lfdr::{oracle_lfdr, LfdrVector};
use crate::model::{HypothesisBatch, MixtureModel};
use crate::ranking::{rank_all, sorted_order, wpo_stat};
use crate::rng::rng_from_seed;

/// Procedure selector used by the CLI and experiment configs.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum Procedure {
    /// Data-driven step-wise rule along the R ranking (general weights).
    Dd,
    /// Data-driven rule along the lfdr ranking (proportional weights).
    DdProportional,
    /// Adaptive z-value rule: unweighted running-mean lfdr threshold.
    Az,
    /// Step-wise rule along the weighted-posterior-odds ranking.
    Wpo,
    /// Weighted step-up on p-values.
    Bh97,
    /// Unweighted step-up on p-values.
    Bh95,
    /// Randomized oracle rule (requires oracle lfdr).
    Oracle,
    /// Oracle rule for the expected weighted count of false positives.
    PferOracle,
}

impl Procedure {
    pub const ALL: [Procedure; 8] = [
        Procedure::Dd,
        Procedure::DdProportional,
        Procedure::Az,
        Procedure::Wpo,
        Procedure::Bh97,
        Procedure::Bh95,
        Procedure::Oracle,
        Procedure::PferOracle,
    ];

    pub fn as_str(&self) -> &'static str {
        match self {
            Procedure::Dd => "dd",
            Procedure::DdProportional => "dd-proportional",
            Procedure::Az => "az",
            Procedure::Wpo => "wpo",
            Procedure::Bh97 => "bh97",
            Procedure::Bh95 => "bh95",
            Procedure::Oracle => "oracle",
            Procedure::PferOracle => "pfer-oracle",
        }
    }

    /// Whether the procedure needs oracle lfdr values (a known model).
    pub fn needs_oracle(&self) -> bool {
        matches!(self, Procedure::Oracle | Procedure::PferOracle)
    }

    /// Whether the procedure consumes p-values rather than lfdr values.
    pub fn uses_pvalues(&self) -> bool {
        matches!(self, Procedure::Bh97 | Procedure::Bh95)
    }
}

impl fmt::Display for Procedure {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

impl FromStr for Procedure {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        Procedure::ALL
            .iter()
            .copied()
            .find(|p| p.as_str() == s)
            .ok_or_else(|| Error::Config(format!("unknown procedure selector '{s}'")))
    }
}

/// The single randomized decision of the oracle rule.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct RandomizedDecision {
    /// Original index of the randomized hypothesis.
    pub index: usize,
    /// Rejection probability p*.
    pub accept_probability: f64,
    /// Realized outcome for this seed.
    pub realized: bool,
}

/// Where the step-wise search stopped.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ThresholdTrace {
    /// Number of deterministic rejections (prefix length in the ranking).
    pub k: usize,
    /// Threshold at the randomized decision point, if any.
    pub t_star: Option<f64>,
    /// Cumulative capacity (or cumulative budget) along the ranking.
    pub cumulative_capacity: Vec<f64>,
}

/// Binary decisions plus the trace that produced them.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct DecisionSet {
    pub reject: Vec<bool>,
    pub num_rejected: usize,
    pub randomized: Option<RandomizedDecision>,
    pub threshold_trace: ThresholdTrace,
}

impl DecisionSet {
    fn from_prefix(
        m: usize,
        order: &[usize],
        k: usize,
        t_star: Option<f64>,
        cumulative: Vec<f64>,
        randomized: Option<RandomizedDecision>,
    ) -> Self {
        let mut reject = vec![false; m];
        for &i in &order[..k] {
            reject[i] = true;
        }
        if let Some(r) = &randomized {
            if r.realized {
                reject[r.index] = true;
            }
        }
        let num_rejected = reject.iter().filter(|r| **r).count();
        DecisionSet {
            reject,
            num_rejected,
            randomized,
            threshold_trace: ThresholdTrace {
                k,
                t_star,
                cumulative_capacity: cumulative,
            },
        }
    }
}

/// Cumulative sums of `values` along `order` and the largest prefix length k
/// with a non-positive sum (k = 0 when every prefix is positive).
fn capacity_prefix(order: &[usize], values: &[f64]) -> (usize, Vec<f64>) {
    let mut cumulative = Vec::with_capacity(order.len());
    let mut sum = 0.0;
    let mut k = 0;
    for (pos, &i) in order.iter().enumerate() {
        sum += values[i];
        cumulative.push(sum);
        if sum <= 0.0 {
            k = pos + 1;
        }
    }
    (k, cumulative)
}

/// The randomized oracle rule. Ranks by ascending R, rejects the largest
/// prefix whose capacity C(j) = sum a_(i)(lfdr_(i) - alpha) stays <= 0, and
/// rejects the next-ranked hypothesis with probability
/// p* = -C(k)/(C(k+1) - C(k)) so the constraint is exhausted exactly.
pub fn oracle_procedure(
    lfdr: &LfdrVector,
    batch: &HypothesisBatch,
    alpha: f64,
    seed: u64,
) -> Result<DecisionSet> {
    let ranked = rank_all(lfdr, batch, alpha)?;
    let (k, cumulative) = capacity_prefix(&ranked.order, &ranked.n);
    let m = batch.len();
    if k >= m {
        // Capacity never exceeded: reject everything, no randomization.
        return Ok(DecisionSet::from_prefix(m, &ranked.order, m, None, cumulative, None));
    }
    let next = ranked.order[k];
    let c_k = if k == 0 { 0.0 } else { cumulative[k - 1] };
    let step = cumulative[k] - c_k; // = n[next] > 0 by maximality of k
    let p_star = (-c_k / step).clamp(0.0, 1.0);
    let t_star = batch.b[next] * (1.0 - lfdr.values[next])
        / (batch.a[next] * (lfdr.values[next] - alpha));
    let mut rng = rng_from_seed(seed);
    let realized = rng.random::<f64>() < p_star;
    let randomized = Some(RandomizedDecision {
        index: next,
        accept_probability: p_star,
        realized,
    });
    Ok(DecisionSet::from_prefix(
        m,
        &ranked.order,
        k,
        Some(t_star),
        cumulative,
        randomized,
    ))
}

/// Step-wise rule for general weights: rank ascending by R, reject the
/// largest prefix whose cumulative excess error stays <= 0. Never randomizes.
pub fn procedure1(lfdr: &LfdrVector, batch: &HypothesisBatch, alpha: f64) -> Result<DecisionSet> {
    let ranked = rank_all(lfdr, batch, alpha)?;
    let (k, cumulative) = capacity_prefix(&ranked.order, &ranked.n);
    Ok(DecisionSet::from_prefix(batch.len(), &ranked.order, k, None, cumulative, None))
}

fn check_alpha(alpha: f64) -> Result<()> {
    if !(0.0 < alpha && alpha < 1.0) {
        return Err(Error::Config(format!(
            "alpha must lie strictly inside (0,1), got {alpha}"
        )));
    }
    Ok(())
}

fn check_lengths(lfdr: &LfdrVector, m: usize) -> Result<()> {
    if lfdr.len() != m {
        return Err(Error::Config(format!(
            "{} lfdr values for {} hypotheses",
            lfdr.len(),
            m
        )));
    }
    Ok(())
}

/// Step-wise rule for proportional weights: rank ascending by lfdr, reject
/// the largest prefix whose a-weighted mean lfdr stays at or below alpha.
pub fn procedure2(lfdr: &LfdrVector, batch: &HypothesisBatch, alpha: f64) -> Result<DecisionSet> {
    check_alpha(alpha)?;
    check_lengths(lfdr, batch.len())?;
    let order = sorted_order(&lfdr.values);
    // (sum a lfdr)/(sum a) <= alpha is the same cut as sum a(lfdr - alpha) <= 0.
    let excess: Vec<f64> = (0..batch.len())
        .map(|i| batch.a[i] * (lfdr.values[i] - alpha))
        .collect();
    let (k, cumulative) = capacity_prefix(&order, &excess);
    Ok(DecisionSet::from_prefix(batch.len(), &order, k, None, cumulative, None))
}

/// Adaptive z-value rule: the proportional-weights rule with every a_i = 1,
/// i.e. an unweighted running-mean lfdr threshold.
pub fn adaptive_z(lfdr: &LfdrVector, alpha: f64) -> Result<DecisionSet> {
    check_alpha(alpha)?;
    let order = sorted_order(&lfdr.values);
    let excess: Vec<f64> = lfdr.values.iter().map(|l| l - alpha).collect();
    let (k, cumulative) = capacity_prefix(&order, &excess);
    Ok(DecisionSet::from_prefix(lfdr.len(), &order, k, None, cumulative, None))
}

/// Ordering for the WPO step-wise rule: every hypothesis with lfdr <= alpha
/// (which can only expand capacity) precedes the rest, ascending WPO within
/// each block, ties by index.
fn wpo_order(lfdr: &LfdrVector, batch: &HypothesisBatch, alpha: f64) -> Vec<usize> {
    let m = batch.len();
    let mut order: Vec<usize> = (0..m).collect();
    let key = |i: usize| {
        (
            lfdr.values[i] > alpha,
            wpo_stat(lfdr.values[i], batch.a[i], batch.b[i]),
        )
    };
    order.sort_by(|&i, &j| {
        let (si, wi) = key(i);
        let (sj, wj) = key(j);
        si.cmp(&sj)
            .then(wi.partial_cmp(&wj).expect("wpo keys must not be NaN"))
            .then(i.cmp(&j))
    });
    order
}

/// Step-wise comparator along the weighted-posterior-odds ranking, stopping
/// at the largest prefix whose cumulative excess error stays <= 0.
pub fn wpo_stepwise(lfdr: &LfdrVector, batch: &HypothesisBatch, alpha: f64) -> Result<DecisionSet> {
    check_alpha(alpha)?;
    check_lengths(lfdr, batch.len())?;
    let order = wpo_order(lfdr, batch, alpha);
    let excess: Vec<f64> = (0..batch.len())
        .map(|i| batch.a[i] * (lfdr.values[i] - alpha))
        .collect();
    let (k, cumulative) = capacity_prefix(&order, &excess);
    Ok(DecisionSet::from_prefix(batch.len(), &order, k, None, cumulative, None))
}

/// Weighted step-up: sort p-values ascending and reject the largest k with
/// p_(k) <= alpha (sum_{i<=k} a_(i)) / (sum_i a_i). With unit weights this
/// is exactly the classical step-up p_(k) <= alpha k / m.
pub fn bh_step_up(pvals: &[f64], a: &[f64], alpha: f64) -> Result<DecisionSet> {
    if pvals.is_empty() {
        return Err(Error::EmptyInput);
    }
    if pvals.len() != a.len() {
        return Err(Error::Config("p-values and weights differ in length".into()));
    }
    if pvals.iter().any(|p| !(0.0..=1.0).contains(p)) {
        return Err(Error::Config("p-values must lie in [0,1]".into()));
    }
    let total: f64 = a.iter().sum();
    let order = sorted_order(pvals);
    let mut cumulative = Vec::with_capacity(order.len());
    let mut cum_a = 0.0;
    let mut k = 0;
    for (pos, &i) in order.iter().enumerate() {
        cum_a += a[i];
        let threshold = alpha * cum_a / total;
        cumulative.push(pvals[i] - threshold);
        if pvals[i] <= threshold {
            k = pos + 1;
        }
    }
    Ok(DecisionSet::from_prefix(pvals.len(), &order, k, None, cumulative, None))
}

/// Oracle rule for the expected a-weighted count of false positives: ranks
/// by the weighted posterior odds and rejects the largest prefix whose
/// plug-in expected false-positive mass sum a_(i) lfdr_(i) stays within the
/// budget `alpha` (an expected count, not a rate).
pub fn pfer_oracle(model: &MixtureModel, batch: &HypothesisBatch, alpha: f64) -> Result<DecisionSet> {
    if alpha < 0.0 {
        return Err(Error::Config("budget must be non-negative".into()));
    }
    let lfdr = oracle_lfdr(model, batch)?;
    let m = batch.len();
    let stats: Vec<f64> = (0..m)
        .map(|i| wpo_stat(lfdr.values[i], batch.a[i], batch.b[i]))
        .collect();
    let order = sorted_order(&stats);
    let mut cumulative = Vec::with_capacity(m);
    let mut mass = 0.0;
    let mut k = 0;
    for (pos, &i) in order.iter().enumerate() {
        mass += batch.a[i] * lfdr.values[i];
        cumulative.push(mass);
        if mass <= alpha {
            k = pos + 1;
        }
    }
    Ok(DecisionSet::from_prefix(m, &order, k, None, cumulative, None))
}

/// The ranking a procedure walks, most significant first. Used for top-k
/// power summaries and the per-hypothesis rank column of batch analyses.
pub fn ranking_order(
    procedure: Procedure,
    lfdr: &LfdrVector,
    batch: &HypothesisBatch,
    alpha: f64,
    pvals: Option<&[f64]>,
) -> Result<Vec<usize>> {
    match procedure {
        Procedure::Dd | Procedure::Oracle => Ok(rank_all(lfdr, batch, alpha)?.order),
        Procedure::DdProportional | Procedure::Az => Ok(sorted_order(&lfdr.values)),
        Procedure::Wpo | Procedure::PferOracle => Ok(wpo_order(lfdr, batch, alpha)),
        Procedure::Bh97 | Procedure::Bh95 => {
            let pvals = pvals.ok_or_else(|| {
                Error::Config("step-up ranking needs p-values".into())
            })?;
            Ok(sorted_order(pvals))
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::lfdr::LfdrSource;
    use approx::assert_abs_diff_eq;

    fn unit_batch(m: usize) -> HypothesisBatch {
        HypothesisBatch::new(vec![0.0; m], vec![1.0; m], vec![1.0; m], vec![0; m], None).unwrap()
    }

    fn lfdr_of(values: Vec<f64>) -> LfdrVector {
        LfdrVector {
            values,
            source: LfdrSource::Oracle,
        }
    }

    #[test]
    fn oracle_hand_worked_example() {
        let lfdr = lfdr_of(vec![0.02, 0.2, 0.9]);
        let batch = unit_batch(3);
        let d = oracle_procedure(&lfdr, &batch, 0.1, 7).unwrap();
        let c = &d.threshold_trace.cumulative_capacity;
        assert_abs_diff_eq!(c[0], -0.08, epsilon = 1e-12);
        assert_abs_diff_eq!(c[1], 0.02, epsilon = 1e-12);
        assert_abs_diff_eq!(c[2], 0.82, epsilon = 1e-12);
        assert_eq!(d.threshold_trace.k, 1);
        let r = d.randomized.unwrap();
        assert_eq!(r.index, 1);
        assert_abs_diff_eq!(r.accept_probability, 0.8, epsilon = 1e-12);
        assert_abs_diff_eq!(d.threshold_trace.t_star.unwrap(), 8.0, epsilon = 1e-12);
        assert!(d.reject[0], "first-ranked hypothesis is rejected surely");
        // Over many seeds the randomized decision realizes with rate p*.
        let hits = (0..4000)
            .filter(|s| {
                oracle_procedure(&lfdr, &batch, 0.1, *s)
                    .unwrap()
                    .reject[1]
            })
            .count();
        let rate = hits as f64 / 4000.0;
        assert!((rate - 0.8).abs() < 0.02, "rate {rate}");
    }

    #[test]
    fn oracle_all_above_alpha_randomizes_first_with_zero_probability() {
        let lfdr = lfdr_of(vec![0.5, 0.7]);
        let batch = unit_batch(2);
        let d = oracle_procedure(&lfdr, &batch, 0.1, 3).unwrap();
        assert_eq!(d.threshold_trace.k, 0);
        let r = d.randomized.unwrap();
        assert_eq!(r.accept_probability, 0.0);
        assert!(!r.realized);
        assert_eq!(d.num_rejected, 0);
    }

    #[test]
    fn oracle_all_below_alpha_rejects_everything() {
        let lfdr = lfdr_of(vec![0.01, 0.05, 0.02]);
        let batch = unit_batch(3);
        let d = oracle_procedure(&lfdr, &batch, 0.1, 3).unwrap();
        assert_eq!(d.num_rejected, 3);
        assert!(d.randomized.is_none());
    }

    #[test]
    fn procedure1_prefix_cases() {
        let batch = unit_batch(3);
        let d = procedure1(&lfdr_of(vec![0.02, 0.2, 0.9]), &batch, 0.1).unwrap();
        assert_eq!(d.num_rejected, 1);
        assert!(d.randomized.is_none());
        let none = procedure1(&lfdr_of(vec![0.4, 0.3, 0.8]), &batch, 0.1).unwrap();
        assert_eq!(none.num_rejected, 0);
        let all = procedure1(&lfdr_of(vec![0.02, 0.1, 0.05]), &batch, 0.1).unwrap();
        assert_eq!(all.num_rejected, 3);
    }

    #[test]
    fn procedure2_weighted_running_mean() {
        let lfdr = lfdr_of(vec![0.02, 0.08, 0.3]);
        let unit = unit_batch(3);
        let d = procedure2(&lfdr, &unit, 0.1).unwrap();
        assert_eq!(d.num_rejected, 2, "means 0.02, 0.05, 0.1333");
        let heavy = HypothesisBatch::new(
            vec![0.0; 3],
            vec![1.0, 1.0, 8.0],
            vec![1.0; 3],
            vec![0; 3],
            None,
        )
        .unwrap();
        let d = procedure2(&lfdr, &heavy, 0.1).unwrap();
        assert_eq!(d.num_rejected, 2, "third weighted mean is 0.25");
        let first_high = procedure2(&lfdr_of(vec![0.2, 0.5, 0.9]), &unit, 0.1).unwrap();
        assert_eq!(first_high.num_rejected, 0);
    }

    #[test]
    fn adaptive_z_running_mean() {
        let d = adaptive_z(&lfdr_of(vec![0.05, 0.14]), 0.1).unwrap();
        assert_eq!(d.num_rejected, 2, "means 0.05, 0.095");
        let d = adaptive_z(&lfdr_of(vec![0.05, 0.16]), 0.1).unwrap();
        assert_eq!(d.num_rejected, 1, "second mean 0.105 exceeds 0.1");
        // Identical to procedure2 under unit a-weights.
        let lfdr = lfdr_of(vec![0.3, 0.02, 0.11, 0.07]);
        let batch = unit_batch(4);
        assert_eq!(
            adaptive_z(&lfdr, 0.1).unwrap().reject,
            procedure2(&lfdr, &batch, 0.1).unwrap().reject
        );
    }

    #[test]
    fn wpo_stepwise_cases() {
        // Proportional weights: same rejection set as procedure1.
        let lfdr = lfdr_of(vec![0.4, 0.03, 0.2, 0.09, 0.12]);
        let batch = HypothesisBatch::new(
            vec![0.0; 5],
            vec![2.0, 4.0, 1.0, 3.0, 5.0],
            vec![1.0, 2.0, 0.5, 1.5, 2.5],
            vec![0; 5],
            None,
        )
        .unwrap();
        let w = wpo_stepwise(&lfdr, &batch, 0.1).unwrap();
        let p1 = procedure1(&lfdr, &batch, 0.1).unwrap();
        assert_eq!(w.reject, p1.reject);
        // Everything above alpha with no capacity rejects nothing.
        let none = wpo_stepwise(&lfdr_of(vec![0.5, 0.9]), &unit_batch(2), 0.1).unwrap();
        assert_eq!(none.num_rejected, 0);
    }

    #[test]
    fn wpo_stepwise_collects_low_lfdr_capacity_first() {
        // A low-lfdr hypothesis with a tiny b ranks late in raw WPO order;
        // the procedure must still bank its capacity before spending.
        let lfdr = lfdr_of(vec![0.05, 0.3]);
        let batch = HypothesisBatch::new(
            vec![0.0; 2],
            vec![1.0, 1.0],
            vec![0.001, 100.0],
            vec![0; 2],
            None,
        )
        .unwrap();
        // Raw WPO: unit 1 (0.3/0.7/100 = 0.0043) before unit 0 (0.05/0.95/0.001 = 52.6).
        // Capacity-first ordering banks unit 0's -0.05, then spends on unit 1's +0.2.
        let d = wpo_stepwise(&lfdr, &batch, 0.1).unwrap();
        assert!(d.reject[0]);
        assert!(!d.reject[1]);
    }

    #[test]
    fn step_up_examples() {
        let d = bh_step_up(&[0.001, 0.02, 0.04, 0.3], &[1.0; 4], 0.1).unwrap();
        assert_eq!(d.num_rejected, 3);
        let none = bh_step_up(&[1.0; 5], &[1.0; 5], 0.1).unwrap();
        assert_eq!(none.num_rejected, 0);
        let single = bh_step_up(&[0.05], &[1.0], 0.1).unwrap();
        assert_eq!(single.num_rejected, 1);
    }

    #[test]
    fn step_up_weighted_thresholds() {
        // Weighted thresholds alpha * cumA/totalA: with a = (3,1) on sorted
        // p = (0.06, 0.5): threshold1 = 0.1*3/4 = 0.075 >= 0.06.
        let d = bh_step_up(&[0.5, 0.06], &[1.0, 3.0], 0.1).unwrap();
        assert_eq!(d.num_rejected, 1);
        assert!(d.reject[1]);
        // Same p-values, unit weights: threshold1 = 0.05 < 0.06, nothing rejected.
        let d = bh_step_up(&[0.5, 0.06], &[1.0, 1.0], 0.1).unwrap();
        assert_eq!(d.num_rejected, 0);
    }

    #[test]
    fn pfer_oracle_budget() {
        let model = MixtureModel::single(
            2,
            0.2,
            crate::model::GaussianComponent::standard(),
            crate::model::GaussianComponent::new(2.0, 1.0).unwrap(),
        )
        .unwrap();
        // x chosen so oracle lfdr ~ (0.1, 0.4): invert lfdr for p=0.2, mu=2:
        // lfdr(x) = 1/(1 + 0.25 exp(2x - 2)).
        let x_for = |l: f64| (((1.0 / l - 1.0) / 0.25).ln() + 2.0) / 2.0;
        let batch = HypothesisBatch::new(
            vec![x_for(0.1), x_for(0.4)],
            vec![1.0; 2],
            vec![1.0; 2],
            vec![0; 2],
            None,
        )
        .unwrap();
        let d = pfer_oracle(&model, &batch, 0.3).unwrap();
        assert_eq!(d.num_rejected, 1, "cumulative mass 0.1 then 0.5");
        assert!(d.reject[0]);
        let none = pfer_oracle(&model, &batch, 0.0).unwrap();
        assert_eq!(none.num_rejected, 0);
        let all = pfer_oracle(&model, &batch, 10.0).unwrap();
        assert_eq!(all.num_rejected, 2);
    }

    #[test]
    fn selector_round_trip() {
        for p in Procedure::ALL {
            assert_eq!(p, p.as_str().parse().unwrap());
        }
        assert!("banana".parse::<Procedure>().is_err());
        assert_eq!(
            serde_json::to_string(&Procedure::DdProportional).unwrap(),
            "\"dd-proportional\""
        );
    }

    #[test]
    fn rejected_set_is_prefix_of_own_ranking() {
        let lfdr = lfdr_of(vec![0.01, 0.42, 0.09, 0.33, 0.11, 0.02]);
        let batch = HypothesisBatch::new(
            vec![0.0; 6],
            vec![1.0, 2.0, 1.5, 0.5, 1.0, 3.0],
            vec![2.0, 1.0, 0.5, 4.0, 1.0, 1.0],
            vec![0; 6],
            None,
        )
        .unwrap();
        let alpha = 0.1;
        for (d, order) in [
            (
                procedure1(&lfdr, &batch, alpha).unwrap(),
                ranking_order(Procedure::Dd, &lfdr, &batch, alpha, None).unwrap(),
            ),
            (
                procedure2(&lfdr, &batch, alpha).unwrap(),
                ranking_order(Procedure::DdProportional, &lfdr, &batch, alpha, None).unwrap(),
            ),
            (
                wpo_stepwise(&lfdr, &batch, alpha).unwrap(),
                ranking_order(Procedure::Wpo, &lfdr, &batch, alpha, None).unwrap(),
            ),
        ] {
            let k = d.threshold_trace.k;
            let expected: Vec<bool> = {
                let mut v = vec![false; batch.len()];
                for &i in &order[..k] {
                    v[i] = true;
                }
                v
            };
            assert_eq!(d.reject, expected);
        }
    }
}
