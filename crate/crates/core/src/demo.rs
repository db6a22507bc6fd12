//! Two-unit ranking demonstration: how the level-dependent value-to-cost
//! ranking reorders hypotheses that the weighted posterior odds rank the
//! same way at every level.

use serde::Serialize;

use crate::error::{Error, Result};
use crate::model::{GaussianComponent, MixtureModel};
use crate::ranking::{r_stat, vcr, wpo_stat};

/// One row of the demonstration table.
#[derive(Debug, Clone, Serialize)]
pub struct DemoUnit {
    pub label: char,
    pub x: f64,
    pub b: f64,
    pub lfdr: f64,
    pub wpo: f64,
    pub vcr: f64,
    pub r: f64,
    /// Position (1-based) in the ascending-R ranking at this level.
    pub rank: usize,
}

/// The demonstration setting: two observed units under a 0.8 N(0,1) +
/// 0.2 N(2,1) mixture with unit error weights and unequal power weights.
/// The local fdr values are fixed at the precision the example reports
/// them (three decimals); the level-dependent statistics are formed from
/// those reported values so the table reproduces itself exactly.
pub const DEMO_X: [f64; 2] = [2.73, 3.11];
pub const DEMO_B: [f64; 2] = [83.32, 11.95];
pub const DEMO_LFDR: [f64; 2] = [0.112, 0.055];

/// The mixture behind the demonstration units.
pub fn demo_model() -> MixtureModel {
    MixtureModel::single(
        2,
        0.2,
        GaussianComponent::standard(),
        GaussianComponent { mean: 2.0, sd: 1.0 },
    )
    .expect("static demo model is valid")
}

/// Builds the demonstration table at the given level.
pub fn ranking_demo(alpha: f64) -> Result<[DemoUnit; 2]> {
    if !(0.0 < alpha && alpha < 1.0) {
        return Err(Error::Config(format!(
            "alpha must lie strictly inside (0,1), got {alpha}"
        )));
    }
    let mut units = Vec::with_capacity(2);
    for (i, (&x, &b)) in DEMO_X.iter().zip(DEMO_B.iter()).enumerate() {
        let lfdr = DEMO_LFDR[i];
        units.push(DemoUnit {
            label: if i == 0 { 'A' } else { 'B' },
            x,
            b,
            lfdr,
            wpo: wpo_stat(lfdr, 1.0, b),
            vcr: vcr(lfdr, 1.0, b, alpha)?,
            r: r_stat(lfdr, 1.0, b, alpha),
            rank: 0,
        });
    }
    // Ascending R is the operative ranking.
    let first_is_a = units[0].r <= units[1].r;
    units[0].rank = if first_is_a { 1 } else { 2 };
    units[1].rank = if first_is_a { 2 } else { 1 };
    let mut iter = units.into_iter();
    Ok([iter.next().unwrap(), iter.next().unwrap()])
}
