//! Ranking statistics: the value-to-cost ratio, the bounded R statistic,
//! excess-error terms and the comparator statistics (WPO, WLR, LR).

use crate::error::{Error, Result};
use crate::lfdr::LfdrVector;
use crate::model::HypothesisBatch;

/// Value-to-cost ratio b(1-lfdr) / (a(lfdr-alpha)). Undefined at
/// lfdr == alpha, where the bounded R statistic must be used instead.
pub fn vcr(lfdr: f64, a: f64, b: f64, alpha: f64) -> Result<f64> {
    if lfdr == alpha {
        return Err(Error::VcrAtAlpha);
    }
    Ok(b * (1.0 - lfdr) / (a * (lfdr - alpha)))
}

/// Bounded ranking statistic a(lfdr-alpha) / [b(1-lfdr) + a|lfdr-alpha|].
/// Lies in [-1, 1]; zero iff lfdr == alpha; one iff lfdr == 1.
pub fn r_stat(lfdr: f64, a: f64, b: f64, alpha: f64) -> f64 {
    let excess = a * (lfdr - alpha);
    excess / (b * (1.0 - lfdr) + excess.abs())
}

/// Weighted posterior odds (a/b) lfdr / (1 - lfdr); ascending order is the
/// WPO ranking. Clamped lfdr of 1 maps to +infinity so it sorts last.
pub fn wpo_stat(lfdr: f64, a: f64, b: f64) -> f64 {
    if lfdr >= 1.0 {
        f64::INFINITY
    } else {
        (a / b) * lfdr / (1.0 - lfdr)
    }
}

/// Likelihood ratio f0(x)/f1(x).
pub fn lr_stat(f0x: f64, f1x: f64) -> Result<f64> {
    if f1x <= 0.0 {
        return Err(Error::ZeroNonNullDensity);
    }
    Ok(f0x / f1x)
}

/// Weighted likelihood ratio a f0(x) / (b f1(x)).
pub fn wlr_stat(f0x: f64, f1x: f64, a: f64, b: f64) -> Result<f64> {
    Ok((a / b) * lr_stat(f0x, f1x)?)
}

/// The full ranking of a batch: R and excess-error values in the original
/// hypothesis order plus the sorted order (ascending R, ties by index).
#[derive(Debug, Clone)]
pub struct RankedHypotheses {
    pub order: Vec<usize>,
    pub r: Vec<f64>,
    pub n: Vec<f64>,
    pub alpha: f64,
}

/// Sorts indices ascending by key, breaking ties by the original index.
pub(crate) fn sorted_order(keys: &[f64]) -> Vec<usize> {
    let mut order: Vec<usize> = (0..keys.len()).collect();
    order.sort_by(|&i, &j| {
        keys[i]
            .partial_cmp(&keys[j])
            .expect("ranking keys must not be NaN")
            .then(i.cmp(&j))
    });
    order
}

/// Computes R_i and N_i = a_i(lfdr_i - alpha) for every hypothesis and the
/// ascending-R order.
pub fn rank_all(lfdr: &LfdrVector, batch: &HypothesisBatch, alpha: f64) -> Result<RankedHypotheses> {
    if lfdr.len() != batch.len() {
        return Err(Error::Config(format!(
            "{} lfdr values for {} hypotheses",
            lfdr.len(),
            batch.len()
        )));
    }
    if !(0.0 < alpha && alpha < 1.0) {
        return Err(Error::Config(format!(
            "alpha must lie strictly inside (0,1), got {alpha}"
        )));
    }
    let m = batch.len();
    let mut r = Vec::with_capacity(m);
    let mut n = Vec::with_capacity(m);
    for i in 0..m {
        r.push(r_stat(lfdr.values[i], batch.a[i], batch.b[i], alpha));
        n.push(batch.a[i] * (lfdr.values[i] - alpha));
    }
    let order = sorted_order(&r);
    Ok(RankedHypotheses { order, r, n, alpha })
}
