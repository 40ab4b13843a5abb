use serde::{Deserialize, Serialize};

use super::pipeline::RqasResult;
use crate::error::{Error, Result};
use crate::variants::{published_tunnel_probability, Severity, VariantDataset};

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct LinearFit {
    pub slope: f64,
    pub intercept: f64,
    /// Pearson correlation of the fitted pairs.
    pub r: f64,
    pub n: usize,
}

impl LinearFit {
    pub fn r_squared(&self) -> f64 {
        self.r * self.r
    }

    pub fn predict(&self, x: f64) -> f64 {
        self.slope * x + self.intercept
    }
}

/// Ordinary least squares y = a·x + b, with centred sums.
pub fn linear_fit(x: &[f64], y: &[f64]) -> Result<LinearFit> {
    if x.len() != y.len() {
        return Err(Error::domain(
            "len(y)",
            y.len() as f64,
            format!("x has {} values", x.len()),
        ));
    }
    if x.len() < 2 {
        return Err(Error::InsufficientData(x.len()));
    }
    let n = x.len() as f64;
    let mx = x.iter().sum::<f64>() / n;
    let my = y.iter().sum::<f64>() / n;
    let (mut sxx, mut syy, mut sxy) = (0.0, 0.0, 0.0);
    for (a, b) in x.iter().zip(y) {
        let (dx, dy) = (a - mx, b - my);
        sxx += dx * dx;
        syy += dy * dy;
        sxy += dx * dy;
    }
    if sxx == 0.0 {
        return Err(Error::domain("var(x)", 0.0, "x values are all equal"));
    }
    let slope = sxy / sxx;
    let r = if syy == 0.0 {
        0.0
    } else {
        (sxy / (sxx.sqrt() * syy.sqrt())).clamp(-1.0, 1.0)
    };
    Ok(LinearFit {
        slope,
        intercept: my - slope * mx,
        r,
        n: x.len(),
    })
}

/// Pearson r; needs at least 3 pairs.
pub fn pearson(x: &[f64], y: &[f64]) -> Result<f64> {
    if x.len().min(y.len()) < 3 {
        return Err(Error::InsufficientData(x.len().min(y.len())));
    }
    let fit = linear_fit(x, y)?;
    if y.iter().all(|&v| v == y[0]) {
        return Err(Error::domain("var(y)", 0.0, "y values are all equal"));
    }
    Ok(fit.r)
}

/// Kendall τ-a over all pairs; tied pairs count as neither.
pub fn kendall_tau(x: &[f64], y: &[f64]) -> f64 {
    fn sign(d: f64) -> i64 {
        (d > 0.0) as i64 - (d < 0.0) as i64
    }
    let n = x.len().min(y.len());
    if n < 2 {
        return 1.0;
    }
    let mut s = 0;
    for i in 0..n {
        for j in i + 1..n {
            s += sign(x[j] - x[i]) * sign(y[j] - y[i]);
        }
    }
    2.0 * s as f64 / (n * (n - 1)) as f64
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ValidationPoint {
    pub variant: String,
    pub activity_pct: f64,
    pub log10_activity: f64,
    pub log10_rqas: f64,
}

/// Printed tunneling probability next to what the model gives for the same
/// inputs, both relative to the wild type.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Discrepancy {
    pub variant: String,
    pub printed_log10_p_tunnel: f64,
    pub computed_log10_p_tunnel: f64,
    /// log₁₀ P_tunnel(variant) − log₁₀ P_tunnel(WT).
    pub computed_log10_relative_tunnel: f64,
    /// Printed minus computed-relative, in decades.
    pub difference_decades: f64,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ValidationReport {
    pub n_points: usize,
    pub pearson_r: f64,
    pub r_squared: f64,
    /// Regression of log₁₀ RQAS on log₁₀ activity.
    pub slope: f64,
    pub intercept: f64,
    /// Ordering by RQAS equals ordering by activity.
    pub rank_concordant: bool,
    pub kendall_tau: f64,
    pub wt_included: bool,
    pub points: Vec<ValidationPoint>,
    /// Variants left out of the regression (no activity, or WT when excluded).
    pub excluded: Vec<String>,
    pub discrepancies: Vec<Discrepancy>,
}

/// Ids sorted by descending key, ties by id.
fn order_by(mut v: Vec<(String, f64)>) -> Vec<String> {
    v.sort_by(|a, b| b.1.total_cmp(&a.1).then_with(|| a.0.cmp(&b.0)));
    v.into_iter().map(|(id, _)| id).collect()
}

/// Correlates log₁₀ activity with log₁₀ RQAS over variants that have both.
pub fn validate(
    results: &[RqasResult],
    dataset: &VariantDataset,
    include_wt: bool,
) -> Result<ValidationReport> {
    let mut points = Vec::new();
    let mut excluded = Vec::new();
    for r in results {
        let activity = dataset
            .lookup(&r.variant)
            .ok()
            .and_then(|rec| rec.activity_pct);
        match activity {
            Some(a) if include_wt || r.variant != crate::variants::WT_ID => {
                points.push(ValidationPoint {
                    variant: r.variant.clone(),
                    activity_pct: a,
                    log10_activity: a.log10(),
                    log10_rqas: r.log10_rqas,
                })
            }
            _ => excluded.push(r.variant.clone()),
        }
    }
    if points.len() < 3 {
        return Err(Error::InsufficientData(points.len()));
    }
    let x: Vec<f64> = points.iter().map(|p| p.log10_activity).collect();
    let y: Vec<f64> = points.iter().map(|p| p.log10_rqas).collect();
    let r = pearson(&x, &y)?;
    let fit = linear_fit(&x, &y)?;
    let by_activity = order_by(
        points
            .iter()
            .map(|p| (p.variant.clone(), p.log10_activity))
            .collect(),
    );
    let by_rqas = order_by(
        points
            .iter()
            .map(|p| (p.variant.clone(), p.log10_rqas))
            .collect(),
    );

    let wt_tunnel = results
        .iter()
        .find(|r| r.variant == crate::variants::WT_ID)
        .map(|r| r.log10_p_tunnel);
    let discrepancies = match wt_tunnel {
        Some(wt) => results
            .iter()
            .filter_map(|r| {
                let printed = published_tunnel_probability(&r.variant)?.log10();
                let relative = r.log10_p_tunnel - wt;
                Some(Discrepancy {
                    variant: r.variant.clone(),
                    printed_log10_p_tunnel: printed,
                    computed_log10_p_tunnel: r.log10_p_tunnel,
                    computed_log10_relative_tunnel: relative,
                    difference_decades: printed - relative,
                })
            })
            .collect(),
        None => Vec::new(),
    };

    Ok(ValidationReport {
        n_points: points.len(),
        pearson_r: r,
        r_squared: r * r,
        slope: fit.slope,
        intercept: fit.intercept,
        rank_concordant: by_activity == by_rqas,
        kendall_tau: kendall_tau(&x, &y),
        wt_included: include_wt,
        points,
        excluded,
        discrepancies,
    })
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct RankedVariant {
    /// 1-based.
    pub rank: usize,
    pub variant: String,
    pub d_oo: f64,
    pub log10_rqas: f64,
    pub severity: Severity,
}

/// Severity table: descending RQAS, ties broken by id.
pub fn rank_variants(results: &[RqasResult]) -> Vec<RankedVariant> {
    let mut rows: Vec<&RqasResult> = results.iter().collect();
    rows.sort_by(|a, b| {
        b.log10_rqas
            .total_cmp(&a.log10_rqas)
            .then_with(|| a.variant.cmp(&b.variant))
    });
    rows.into_iter()
        .enumerate()
        .map(|(i, r)| RankedVariant {
            rank: i + 1,
            variant: r.variant.clone(),
            d_oo: r.d_oo,
            log10_rqas: r.log10_rqas,
            severity: r.severity_predicted,
        })
        .collect()
}

/// Least-squares slope of log₁₀ RQAS against d_OO, per Å.
pub fn cliff_fit(results: &[RqasResult]) -> Result<LinearFit> {
    let x: Vec<f64> = results.iter().map(|r| r.d_oo).collect();
    let y: Vec<f64> = results.iter().map(|r| r.log10_rqas).collect();
    linear_fit(&x, &y)
}
