//! Local false discovery rates: oracle values from a known mixture and
//! data-driven estimates (tail-based proportion estimator plus Gaussian
//! kernel density estimation), computed per group.

use serde::{Deserialize, Serialize};
use statrs::distribution::{ContinuousCDF, Normal as StatNormal};
use std::f64::consts::PI;

use crate::error::{Error, Result};
use crate::model::{GaussianComponent, HypothesisBatch, MixtureModel};

/// Standard normal CDF.
pub fn normal_cdf(x: f64) -> f64 {
    // statrs keeps ~1e-15 relative accuracy across the range we use.
    StatNormal::standard().cdf(x)
}

/// Upper-tail p-value of a z-score under N(0,1).
pub fn upper_tail_pvalue(z: f64) -> f64 {
    1.0 - normal_cdf(z)
}

/// Two-sided p-value of a z-score under N(0,1).
pub fn two_sided_pvalue(z: f64) -> f64 {
    2.0 * (1.0 - normal_cdf(z.abs()))
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum LfdrSource {
    Oracle,
    Estimated,
}

/// Per-hypothesis local fdr values, clamped to [0,1].
#[derive(Debug, Clone, PartialEq)]
pub struct LfdrVector {
    pub values: Vec<f64>,
    pub source: LfdrSource,
}

impl LfdrVector {
    pub fn len(&self) -> usize {
        self.values.len()
    }

    pub fn is_empty(&self) -> bool {
        self.values.is_empty()
    }
}

/// Gaussian-kernel density estimate with a fixed bandwidth.
#[derive(Debug, Clone)]
pub struct KernelDensity {
    points: Vec<f64>, // sorted ascending
    bandwidth: f64,
    sample_size: usize,
}

/// Kernel contributions beyond this many bandwidths are below 5e-15 of the
/// peak and are skipped.
const KERNEL_WINDOW: f64 = 8.0;

impl KernelDensity {
    /// Fits with an explicit bandwidth.
    pub fn with_bandwidth(z: &[f64], bandwidth: f64) -> Result<Self> {
        if z.len() < 2 {
            return Err(Error::Config(
                "kernel density estimation needs at least two observations".into(),
            ));
        }
        if !bandwidth.is_finite() || bandwidth <= 0.0 {
            return Err(Error::ZeroBandwidth);
        }
        let mut points = z.to_vec();
        points.sort_by(|a, b| a.partial_cmp(b).expect("finite observations"));
        Ok(Self {
            sample_size: points.len(),
            points,
            bandwidth,
        })
    }

    pub fn bandwidth(&self) -> f64 {
        self.bandwidth
    }

    pub fn sample_size(&self) -> usize {
        self.sample_size
    }

    /// Kernel sum (1/(m h)) sum_j phi((x - z_j)/h), evaluated over the
    /// window of points within `KERNEL_WINDOW` bandwidths of `x`.
    pub fn evaluate(&self, x: f64) -> f64 {
        let h = self.bandwidth;
        let lo = x - KERNEL_WINDOW * h;
        let hi = x + KERNEL_WINDOW * h;
        let start = self.points.partition_point(|&v| v < lo);
        let end = self.points.partition_point(|&v| v <= hi);
        let mut sum = 0.0;
        for &zj in &self.points[start..end] {
            let u = (x - zj) / h;
            sum += (-0.5 * u * u).exp();
        }
        sum / (self.sample_size as f64 * h * (2.0 * PI).sqrt())
    }
}

/// Type-7 (linear interpolation) quantile of sorted data.
fn quantile_sorted(sorted: &[f64], q: f64) -> f64 {
    let n = sorted.len();
    let h = (n as f64 - 1.0) * q;
    let lo = h.floor() as usize;
    let hi = (lo + 1).min(n - 1);
    sorted[lo] + (h - lo as f64) * (sorted[hi] - sorted[lo])
}

/// Fits a Gaussian kernel density with the Silverman bandwidth
/// h = 0.9 min(sd, IQR/1.34) m^(-1/5). A degenerate IQR falls back to the
/// standard deviation; fully constant data is an error.
pub fn kde_fit(z: &[f64]) -> Result<KernelDensity> {
    if z.len() < 2 {
        return Err(Error::Config(
            "kernel density estimation needs at least two observations".into(),
        ));
    }
    let m = z.len() as f64;
    let mean = z.iter().sum::<f64>() / m;
    let var = z.iter().map(|v| (v - mean) * (v - mean)).sum::<f64>() / (m - 1.0);
    let sd = var.sqrt();

    let mut sorted = z.to_vec();
    sorted.sort_by(|a, b| a.partial_cmp(b).expect("finite observations"));
    let iqr = quantile_sorted(&sorted, 0.75) - quantile_sorted(&sorted, 0.25);

    let spread = if iqr > 0.0 { sd.min(iqr / 1.34) } else { sd };
    let h = 0.9 * spread * m.powf(-0.2);
    if h.is_nan() || h <= 0.0 {
        return Err(Error::ZeroBandwidth);
    }
    KernelDensity::with_bandwidth(z, h)
}

/// Tail-based estimate of the non-null proportion. One-sided p-values
/// p_i = 1 - Phi(z_i) are formed under the N(0,1) null and
/// p_hat = 1 - #{p_i > lambda} / ((1 - lambda) m), clamped to [0,1].
pub fn estimate_proportion(z: &[f64], lambda: f64) -> Result<f64> {
    if z.is_empty() {
        return Err(Error::EmptyInput);
    }
    if !(0.0 < lambda && lambda < 1.0) {
        return Err(Error::Config(format!(
            "lambda must lie strictly inside (0,1), got {lambda}"
        )));
    }
    let m = z.len() as f64;
    let above = z
        .iter()
        .filter(|&&zi| upper_tail_pvalue(zi) > lambda)
        .count() as f64;
    Ok((1.0 - above / ((1.0 - lambda) * m)).clamp(0.0, 1.0))
}

fn clamp_unit(v: f64) -> f64 {
    if v.is_nan() {
        1.0
    } else {
        v.clamp(0.0, 1.0)
    }
}

/// Oracle local fdr: value_i = (1-p) f0(x_i) / [(1-p) f0(x_i) + p f1(x_i)]
/// with that hypothesis's group parameters.
pub fn oracle_lfdr(model: &MixtureModel, batch: &HypothesisBatch) -> Result<LfdrVector> {
    batch.validate()?;
    let mut values = Vec::with_capacity(batch.len());
    for (xi, gid) in batch.x.iter().zip(&batch.group) {
        let spec = model.group(*gid)?;
        let p = spec.non_null_proportion;
        let null_mass = (1.0 - p) * spec.null.density(*xi);
        let denom = null_mass + p * spec.non_null.density(*xi);
        values.push(if denom > 0.0 {
            clamp_unit(null_mass / denom)
        } else {
            1.0
        });
    }
    Ok(LfdrVector {
        values,
        source: LfdrSource::Oracle,
    })
}

/// Options for data-driven local fdr estimation.
#[derive(Debug, Clone, Serialize, Deserialize)]
#[serde(rename_all = "camelCase", default)]
pub struct LfdrOptions {
    /// Tail threshold of the proportion estimator.
    pub lambda: f64,
    /// Bandwidth override; Silverman's rule when absent.
    pub bandwidth: Option<f64>,
    /// Minimum per-group sample size.
    pub group_floor: usize,
    /// Known null component per group; a single entry applies to every
    /// group and an empty list means N(0,1) throughout.
    pub nulls: Vec<GaussianComponent>,
}

impl Default for LfdrOptions {
    fn default() -> Self {
        Self {
            lambda: 0.5,
            bandwidth: None,
            group_floor: 50,
            nulls: Vec::new(),
        }
    }
}

impl LfdrOptions {
    /// Null components taken from a model, keeping the other defaults.
    pub fn with_model_nulls(model: &MixtureModel) -> Self {
        Self {
            nulls: model.groups.iter().map(|g| g.null).collect(),
            ..Self::default()
        }
    }

    fn null_for(&self, group: usize) -> GaussianComponent {
        match self.nulls.len() {
            0 => GaussianComponent::standard(),
            1 => self.nulls[0],
            _ => self.nulls[group],
        }
    }
}

/// Data-driven local fdr, estimated independently per group:
/// p_hat via `estimate_proportion` on null-standardized z-values, the
/// mixture density via `kde_fit` on the raw values, the null density taken
/// as configured. value_i = clamp_[0,1]((1 - p_hat) f0(x_i) / f_hat(x_i)).
pub fn estimate_lfdr(batch: &HypothesisBatch, options: &LfdrOptions) -> Result<LfdrVector> {
    batch.validate()?;
    if options.nulls.len() > 1 {
        let max_group = batch.group.iter().max().copied().unwrap_or(0);
        if options.nulls.len() <= max_group {
            return Err(Error::Config(format!(
                "{} null components for groups up to id {max_group}",
                options.nulls.len()
            )));
        }
    }
    let mut values = vec![0.0; batch.len()];
    for (gid, idx) in batch.group_indices() {
        if idx.len() < options.group_floor {
            return Err(Error::GroupBelowFloor {
                group: gid,
                size: idx.len(),
                floor: options.group_floor,
            });
        }
        let null = options.null_for(gid);
        let z: Vec<f64> = idx.iter().map(|&i| batch.x[i]).collect();
        let standardized: Vec<f64> = z.iter().map(|v| (v - null.mean) / null.sd).collect();
        let p_hat = estimate_proportion(&standardized, options.lambda)?;
        let kde = match options.bandwidth {
            Some(h) => KernelDensity::with_bandwidth(&z, h)?,
            None => kde_fit(&z)?,
        };
        for &i in &idx {
            let f_hat = kde.evaluate(batch.x[i]);
            let raw = (1.0 - p_hat) * null.density(batch.x[i]) / f_hat;
            values[i] = clamp_unit(raw);
        }
    }
    Ok(LfdrVector {
        values,
        source: LfdrSource::Estimated,
    })
}
