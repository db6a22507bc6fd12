//! Mixture models, hypothesis batches with decision weights, and seeded
//! synthetic data generation.

use rand::Rng;
use rand_distr::{Distribution, LogNormal, Normal};
use serde::{Deserialize, Serialize};
use std::collections::BTreeMap;
use std::f64::consts::PI;

use crate::error::{Error, Result};
use crate::rng::rng_from_seed;

/// A Gaussian mixture component.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct GaussianComponent {
    pub mean: f64,
    pub sd: f64,
}

impl GaussianComponent {
    pub fn new(mean: f64, sd: f64) -> Result<Self> {
        let c = Self { mean, sd };
        c.validate()?;
        Ok(c)
    }

    /// Standard normal component.
    pub fn standard() -> Self {
        Self { mean: 0.0, sd: 1.0 }
    }

    pub fn validate(&self) -> Result<()> {
        if !self.sd.is_finite() || self.sd <= 0.0 || !self.mean.is_finite() {
            return Err(Error::Config(format!(
                "gaussian component requires finite mean and sd > 0, got mean={} sd={}",
                self.mean, self.sd
            )));
        }
        Ok(())
    }

    /// Density at `x`.
    pub fn density(&self, x: f64) -> f64 {
        let z = (x - self.mean) / self.sd;
        (-0.5 * z * z).exp() / (self.sd * (2.0 * PI).sqrt())
    }
}

/// One group of a multi-group two-component mixture.
#[derive(Debug, Clone, Serialize, Deserialize)]
#[serde(rename_all = "camelCase")]
pub struct GroupSpec {
    pub size: usize,
    pub non_null_proportion: f64,
    pub null: GaussianComponent,
    pub non_null: GaussianComponent,
}

impl GroupSpec {
    pub fn validate(&self) -> Result<()> {
        if self.size < 1 {
            return Err(Error::Config("group size must be >= 1".into()));
        }
        if !(0.0..=1.0).contains(&self.non_null_proportion) {
            return Err(Error::Config(format!(
                "non-null proportion must lie in [0,1], got {}",
                self.non_null_proportion
            )));
        }
        self.null.validate()?;
        self.non_null.validate()
    }

    /// Marginal density (1-p) f0(x) + p f1(x).
    pub fn mixture_density(&self, x: f64) -> f64 {
        let p = self.non_null_proportion;
        (1.0 - p) * self.null.density(x) + p * self.non_null.density(x)
    }
}

/// A multi-group two-component mixture; a single-group model is the K=1 case.
#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct MixtureModel {
    pub groups: Vec<GroupSpec>,
}

impl MixtureModel {
    pub fn new(groups: Vec<GroupSpec>) -> Result<Self> {
        let m = Self { groups };
        m.validate()?;
        Ok(m)
    }

    /// Single-group model.
    pub fn single(
        size: usize,
        non_null_proportion: f64,
        null: GaussianComponent,
        non_null: GaussianComponent,
    ) -> Result<Self> {
        Self::new(vec![GroupSpec {
            size,
            non_null_proportion,
            null,
            non_null,
        }])
    }

    pub fn validate(&self) -> Result<()> {
        if self.groups.is_empty() {
            return Err(Error::Config("model needs at least one group".into()));
        }
        for g in &self.groups {
            g.validate()?;
        }
        Ok(())
    }

    pub fn group(&self, id: usize) -> Result<&GroupSpec> {
        self.groups.get(id).ok_or(Error::UnknownGroup(id))
    }

    /// Marginal mixture density for one group.
    pub fn mixture_density(&self, group_id: usize, x: f64) -> Result<f64> {
        Ok(self.group(group_id)?.mixture_density(x))
    }

    pub fn total_size(&self) -> usize {
        self.groups.iter().map(|g| g.size).sum()
    }
}

/// How decision weights (a_i, b_i) are assigned. Weights are external by
/// construction: they are never derived from the observed values.
#[derive(Debug, Clone, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "kebab-case")]
pub enum WeightScheme {
    /// a_i = a and b_i = b for every hypothesis.
    Constant { a: f64, b: f64 },
    /// Per-group ratio c_k = a_i/b_i with a_i fixed at `a`, so b_i = a/c_k.
    PerGroupRatio { a: f64, ratios: Vec<f64> },
    /// b_i ~ LogNormal(location, scale); a_i constant per group
    /// (a single entry applies to all groups).
    LogNormalB {
        a: Vec<f64>,
        location: f64,
        scale: f64,
    },
    /// a_i ~ LogNormal(location, scale); b_i constant.
    LogNormalA { b: f64, location: f64, scale: f64 },
    /// Covariate-coupled weights: s_i ~ LogNormal(-1.5, 1),
    /// p_i = s_i/(1+s_i), b_i = (1+s_i)^exponent, a_i = 1. The covariate
    /// also drives the non-null indicator, overriding the group proportion.
    CovariatePower { exponent: f64 },
}

impl WeightScheme {
    pub fn unit() -> Self {
        WeightScheme::Constant { a: 1.0, b: 1.0 }
    }

    pub fn validate(&self, n_groups: usize) -> Result<()> {
        match self {
            WeightScheme::Constant { a, b } => {
                if *a <= 0.0 || *b <= 0.0 {
                    return Err(Error::Config("constant weights must be positive".into()));
                }
            }
            WeightScheme::PerGroupRatio { a, ratios } => {
                if *a <= 0.0 || ratios.iter().any(|c| *c <= 0.0) {
                    return Err(Error::Config("ratios and a must be positive".into()));
                }
                if ratios.len() != n_groups {
                    return Err(Error::Config(format!(
                        "{} ratio(s) for {} group(s)",
                        ratios.len(),
                        n_groups
                    )));
                }
            }
            WeightScheme::LogNormalB { a, scale, .. } => {
                if a.iter().any(|v| *v <= 0.0) || *scale <= 0.0 {
                    return Err(Error::Config("a weights and scale must be positive".into()));
                }
                if a.len() != 1 && a.len() != n_groups {
                    return Err(Error::Config(format!(
                        "{} a-weight(s) for {} group(s)",
                        a.len(),
                        n_groups
                    )));
                }
            }
            WeightScheme::LogNormalA { b, scale, .. } => {
                if *b <= 0.0 || *scale <= 0.0 {
                    return Err(Error::Config("b weight and scale must be positive".into()));
                }
            }
            WeightScheme::CovariatePower { exponent } => {
                if !exponent.is_finite() {
                    return Err(Error::Config("exponent must be finite".into()));
                }
            }
        }
        Ok(())
    }
}

/// Per-hypothesis observations, weights, group labels and (optionally) the
/// true states.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct HypothesisBatch {
    pub x: Vec<f64>,
    pub a: Vec<f64>,
    pub b: Vec<f64>,
    pub group: Vec<usize>,
    pub theta: Option<Vec<bool>>,
}

impl HypothesisBatch {
    pub fn new(
        x: Vec<f64>,
        a: Vec<f64>,
        b: Vec<f64>,
        group: Vec<usize>,
        theta: Option<Vec<bool>>,
    ) -> Result<Self> {
        let batch = Self {
            x,
            a,
            b,
            group,
            theta,
        };
        batch.validate()?;
        Ok(batch)
    }

    pub fn len(&self) -> usize {
        self.x.len()
    }

    pub fn is_empty(&self) -> bool {
        self.x.is_empty()
    }

    pub fn validate(&self) -> Result<()> {
        let m = self.x.len();
        if m == 0 {
            return Err(Error::EmptyInput);
        }
        if self.a.len() != m || self.b.len() != m || self.group.len() != m {
            return Err(Error::Config("batch columns have unequal lengths".into()));
        }
        if let Some(theta) = &self.theta {
            if theta.len() != m {
                return Err(Error::Config("theta length differs from x".into()));
            }
        }
        let nonpositive = |v: &f64| v.is_nan() || *v <= 0.0;
        if self.a.iter().any(nonpositive) || self.b.iter().any(nonpositive) {
            return Err(Error::Config("weights must be strictly positive".into()));
        }
        if self.x.iter().any(|v| !v.is_finite()) {
            return Err(Error::Config("observations must be finite".into()));
        }
        Ok(())
    }

    /// Indices per group id, in ascending group order.
    pub fn group_indices(&self) -> BTreeMap<usize, Vec<usize>> {
        let mut map: BTreeMap<usize, Vec<usize>> = BTreeMap::new();
        for (i, g) in self.group.iter().enumerate() {
            map.entry(*g).or_default().push(i);
        }
        map
    }

    pub fn theta(&self) -> Result<&[bool]> {
        self.theta.as_deref().ok_or(Error::MissingTruth)
    }
}

/// Draws covariates and covariate-powered weights:
/// s_i ~ LogNormal(location -1.5, scale 1), p_i = s_i/(s_i+1),
/// b_i = (1+s_i)^exponent. Deterministic given the seed.
pub fn covariate_weights(m: usize, exponent: f64, seed: u64) -> (Vec<f64>, Vec<f64>, Vec<f64>) {
    let mut rng = rng_from_seed(seed);
    let ln = LogNormal::new(-1.5, 1.0).expect("valid log-normal");
    let mut s = Vec::with_capacity(m);
    let mut p = Vec::with_capacity(m);
    let mut b = Vec::with_capacity(m);
    for _ in 0..m {
        let si: f64 = ln.sample(&mut rng);
        s.push(si);
        p.push(si / (si + 1.0));
        b.push((1.0 + si).powf(exponent));
    }
    (s, p, b)
}

/// Draws a batch from the model under the given weight scheme. Pure function
/// of `(model, scheme, seed)`; two calls with identical arguments produce
/// bit-identical batches.
pub fn generate_batch(
    model: &MixtureModel,
    scheme: &WeightScheme,
    seed: u64,
) -> Result<HypothesisBatch> {
    model.validate()?;
    scheme.validate(model.groups.len())?;
    let m = model.total_size();
    let mut rng = rng_from_seed(seed);

    let mut x = Vec::with_capacity(m);
    let mut group = Vec::with_capacity(m);
    let mut theta = Vec::with_capacity(m);
    let mut a = Vec::with_capacity(m);
    let mut b = Vec::with_capacity(m);

    if let WeightScheme::CovariatePower { exponent } = scheme {
        // The covariate drives both the weights and the non-null indicator.
        let ln = LogNormal::new(-1.5, 1.0).expect("valid log-normal");
        for (gid, spec) in model.groups.iter().enumerate() {
            let f0 = Normal::new(spec.null.mean, spec.null.sd).expect("valid null");
            let f1 = Normal::new(spec.non_null.mean, spec.non_null.sd).expect("valid non-null");
            for _ in 0..spec.size {
                let s: f64 = ln.sample(&mut rng);
                let p_i = s / (s + 1.0);
                let is_non_null = rng.random::<f64>() < p_i;
                let xi = if is_non_null {
                    f1.sample(&mut rng)
                } else {
                    f0.sample(&mut rng)
                };
                x.push(xi);
                group.push(gid);
                theta.push(is_non_null);
                a.push(1.0);
                b.push((1.0 + s).powf(*exponent));
            }
        }
        return HypothesisBatch::new(x, a, b, group, Some(theta));
    }

    for (gid, spec) in model.groups.iter().enumerate() {
        let p = spec.non_null_proportion;
        let f0 = Normal::new(spec.null.mean, spec.null.sd).expect("valid null");
        let f1 = Normal::new(spec.non_null.mean, spec.non_null.sd).expect("valid non-null");
        for _ in 0..spec.size {
            let is_non_null = rng.random::<f64>() < p;
            let xi = if is_non_null {
                f1.sample(&mut rng)
            } else {
                f0.sample(&mut rng)
            };
            x.push(xi);
            group.push(gid);
            theta.push(is_non_null);
        }
    }

    match scheme {
        WeightScheme::Constant { a: ca, b: cb } => {
            a.resize(m, *ca);
            b.resize(m, *cb);
        }
        WeightScheme::PerGroupRatio { a: ca, ratios } => {
            for &g in &group {
                a.push(*ca);
                b.push(*ca / ratios[g]);
            }
        }
        WeightScheme::LogNormalB {
            a: ga,
            location,
            scale,
        } => {
            let ln = LogNormal::new(*location, *scale).expect("valid log-normal");
            for &g in &group {
                a.push(if ga.len() == 1 { ga[0] } else { ga[g] });
                b.push(ln.sample(&mut rng));
            }
        }
        WeightScheme::LogNormalA {
            b: gb,
            location,
            scale,
        } => {
            let ln = LogNormal::new(*location, *scale).expect("valid log-normal");
            for _ in 0..m {
                a.push(ln.sample(&mut rng));
                b.push(*gb);
            }
        }
        WeightScheme::CovariatePower { .. } => unreachable!("handled above"),
    }

    HypothesisBatch::new(x, a, b, group, Some(theta))
}
