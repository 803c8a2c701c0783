//! Fitting the capacity laws to measured benchmark throughput.
//!
//! Throughput is first normalized to relative capacity `X(p) / X(1)`. Amdahl
//! and USL are linear after the transform `y = p/C − 1`, so they are fitted by
//! least squares through the origin; the geometric law is not linearizable in
//! `φ` and is fitted by scalar minimization of the capacity-space SSE. All
//! reported SSE and R² values are in capacity space and use the final (possibly
//! clamped) parameters.

use std::collections::BTreeMap;

use serde::Serialize;

use crate::models::{asymptote, Asymptote, CapacityPoint, ScalingParams};
use crate::{Error, Result};

/// Measured throughput per processor count.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct BenchmarkSeries {
    pub points: Vec<(u32, f64)>,
    pub label: String,
    pub units: String,
}

impl BenchmarkSeries {
    pub fn new(points: Vec<(u32, f64)>) -> Result<Self> {
        Self::labeled(points, "", "")
    }

    pub fn labeled(points: Vec<(u32, f64)>, label: &str, units: &str) -> Result<Self> {
        if points.is_empty() {
            return Err(Error::InvalidSeries("no measurements".into()));
        }
        let mut seen = BTreeMap::new();
        for &(p, x) in &points {
            if p == 0 {
                return Err(Error::InvalidSeries("processor count 0".into()));
            }
            if !(x.is_finite() && x > 0.0) {
                return Err(Error::InvalidSeries(format!(
                    "throughput {x} at p={p} is not positive"
                )));
            }
            if seen.insert(p, x).is_some() {
                return Err(Error::InvalidSeries(format!(
                    "duplicate processor count p={p}"
                )));
            }
        }
        Ok(BenchmarkSeries {
            points,
            label: label.to_owned(),
            units: units.to_owned(),
        })
    }

    pub fn throughput_at(&self, p: u32) -> Option<f64> {
        self.points.iter().find(|(q, _)| *q == p).map(|&(_, x)| x)
    }
}

/// Converts throughput to capacity `X(p) / X(1)`.
///
/// `baseline` overrides the measured `X(1)`; without it the series must
/// contain `p = 1`.
pub fn normalize(series: &BenchmarkSeries, baseline: Option<f64>) -> Result<Vec<CapacityPoint>> {
    let x1 = resolve_baseline(series, baseline)?;
    series
        .points
        .iter()
        .map(|&(p, x)| {
            let c = if p == 1 && baseline.is_none() {
                1.0
            } else {
                x / x1
            };
            if !(c.is_finite() && c > 0.0) {
                return Err(Error::Numeric(format!(
                    "capacity {x}/{x1} at p={p} is not representable"
                )));
            }
            Ok(CapacityPoint { p, c })
        })
        .collect()
}

fn resolve_baseline(series: &BenchmarkSeries, baseline: Option<f64>) -> Result<f64> {
    match baseline {
        Some(x1) if x1.is_finite() && x1 > 0.0 => Ok(x1),
        Some(x1) => Err(Error::out_of_range("baseline", x1, "(0, inf)")),
        None => series.throughput_at(1).ok_or(Error::MissingBaseline),
    }
}

/// Which fitted parameter was pushed back into its valid range.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum Clamp {
    SigmaToZero,
    SigmaBelowOne,
    AlphaToZero,
    BetaToZero,
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct Residual {
    pub p: u32,
    pub measured: f64,
    pub fitted: f64,
}

#[derive(Debug, Clone, PartialEq)]
pub struct FitReport {
    pub params: ScalingParams,
    /// Sum of squared capacity residuals.
    pub sse: f64,
    pub r2: f64,
    pub residuals: Vec<Residual>,
    pub asymptote: Asymptote,
    /// Throughput used for normalization, when the fit started from a series.
    pub baseline_x1: Option<f64>,
    pub clamps: Vec<Clamp>,
    /// Capacity predicted at requested extrapolation points.
    pub predictions: Vec<CapacityPoint>,
}

impl FitReport {
    fn build(params: ScalingParams, data: &[CapacityPoint], clamps: Vec<Clamp>) -> Result<Self> {
        let residuals = data
            .iter()
            .map(|pt| {
                Ok(Residual {
                    p: pt.p,
                    measured: pt.c,
                    fitted: params.capacity(pt.p)?,
                })
            })
            .collect::<Result<Vec<_>>>()?;
        let sse: f64 = residuals
            .iter()
            .map(|r| (r.measured - r.fitted).powi(2))
            .sum();
        let mean = data.iter().map(|pt| pt.c).sum::<f64>() / data.len() as f64;
        let sst: f64 = data.iter().map(|pt| (pt.c - mean).powi(2)).sum();
        let r2 = if sst > 0.0 {
            1.0 - sse / sst
        } else if sse == 0.0 {
            1.0
        } else {
            0.0
        };
        if !(sse.is_finite() && r2.is_finite()) {
            return Err(Error::Numeric(format!(
                "non-finite goodness of fit for {}",
                params.name()
            )));
        }
        Ok(FitReport {
            params,
            sse,
            r2,
            residuals,
            asymptote: asymptote(&params),
            baseline_x1: None,
            clamps,
            predictions: Vec::new(),
        })
    }

    pub fn model(&self) -> &'static str {
        self.params.name()
    }

    pub fn clamped(&self) -> bool {
        !self.clamps.is_empty()
    }

    pub fn predict(&self, p: u32) -> Result<f64> {
        self.params.capacity(p)
    }

    pub(crate) fn with_predictions(mut self, points: &[u32]) -> Result<Self> {
        self.predictions = points
            .iter()
            .map(|&p| {
                Ok(CapacityPoint {
                    p,
                    c: self.predict(p)?,
                })
            })
            .collect::<Result<_>>()?;
        Ok(self)
    }
}

fn require_spread(data: &[CapacityPoint], distinct: usize) -> Result<()> {
    if data.iter().any(|pt| !(pt.c.is_finite() && pt.c > 0.0)) {
        return Err(Error::InvalidSeries("capacities must be positive".into()));
    }
    let mut ps: Vec<u32> = data.iter().map(|pt| pt.p).collect();
    ps.sort_unstable();
    ps.dedup();
    if data.len() < 2 || !ps.iter().any(|&p| p > 1) || ps.len() < distinct {
        return Err(Error::Underdetermined(format!(
            "{} points at {} distinct processor counts; need at least {} with some p > 1",
            data.len(),
            ps.len(),
            distinct.max(2)
        )));
    }
    Ok(())
}

/// `(p − 1, p/C − 1)`: Amdahl and USL are linear in these coordinates.
fn linearized(data: &[CapacityPoint]) -> impl Iterator<Item = (f64, f64)> + '_ {
    data.iter().map(|pt| {
        let p = f64::from(pt.p);
        (p - 1.0, p / pt.c - 1.0)
    })
}

fn slope_through_origin(data: &[CapacityPoint]) -> f64 {
    let (sxy, sxx) =
        linearized(data).fold((0.0, 0.0), |(sxy, sxx), (x, y)| (sxy + x * y, sxx + x * x));
    sxy / sxx
}

/// Amdahl fit: slope through the origin of `p/C − 1` against `p − 1`.
///
/// The estimate is clamped to `[0, 1)`, with the clamp recorded.
pub fn fit_amdahl(capacity: &[CapacityPoint]) -> Result<FitReport> {
    require_spread(capacity, 2)?;
    let raw = slope_through_origin(capacity);
    if !raw.is_finite() {
        return Err(Error::Numeric(format!("Amdahl slope {raw}")));
    }
    let mut clamps = Vec::new();
    let sigma = if raw < 0.0 {
        clamps.push(Clamp::SigmaToZero);
        0.0
    } else if raw >= 1.0 {
        clamps.push(Clamp::SigmaBelowOne);
        1.0 - f64::EPSILON
    } else {
        raw
    };
    FitReport::build(ScalingParams::Amdahl { sigma }, capacity, clamps)
}

const GOLDEN_TOLERANCE: f64 = 1e-10;
const GRID_STEPS: u32 = 1000;

fn geometric_sse(data: &[CapacityPoint], phi: f64) -> f64 {
    data.iter()
        .map(|pt| {
            let fitted = crate::models::geometric_unchecked(phi, pt.p);
            (pt.c - fitted).powi(2)
        })
        .sum()
}

/// Golden-section minimization of `f` on `[lo, hi]`.
fn golden_section(mut lo: f64, mut hi: f64, tol: f64, f: impl Fn(f64) -> f64) -> f64 {
    let inv_phi = (5f64.sqrt() - 1.0) / 2.0;
    let mut a = hi - inv_phi * (hi - lo);
    let mut b = lo + inv_phi * (hi - lo);
    let mut fa = f(a);
    let mut fb = f(b);
    while hi - lo > tol {
        if fa <= fb {
            hi = b;
            b = a;
            fb = fa;
            a = hi - inv_phi * (hi - lo);
            fa = f(a);
        } else {
            lo = a;
            a = b;
            fa = fb;
            b = lo + inv_phi * (hi - lo);
            fb = f(b);
        }
    }
    0.5 * (lo + hi)
}

/// Geometric fit: `φ ∈ (0, 1]` minimizing the capacity SSE, seeded on a grid
/// and refined by golden-section search to `1e-10`.
pub fn fit_geometric(capacity: &[CapacityPoint]) -> Result<FitReport> {
    require_spread(capacity, 2)?;
    let sse = |phi: f64| geometric_sse(capacity, phi);
    let step = 1.0 / f64::from(GRID_STEPS);
    let best = (1..=GRID_STEPS)
        .map(|i| f64::from(i) * step)
        .min_by(|a, b| sse(*a).total_cmp(&sse(*b)))
        .expect("non-empty grid");
    let lo = (best - step).max(f64::MIN_POSITIVE);
    let hi = (best + step).min(1.0);
    let refined = golden_section(lo, hi, GOLDEN_TOLERANCE, sse);
    let phi = [refined, best, hi]
        .into_iter()
        .min_by(|a, b| sse(*a).total_cmp(&sse(*b)))
        .expect("candidates");
    if !phi.is_finite() {
        return Err(Error::Numeric(format!(
            "geometric fit produced phi = {phi}"
        )));
    }
    FitReport::build(ScalingParams::Geometric { phi }, capacity, Vec::new())
}

/// USL fit: regression of `p/C − 1` on `p − 1` and `p(p − 1)` through the
/// origin, giving `α` and `αβ`.
///
/// A negative coherency term is clamped to `β = 0` and `α` is refitted as an
/// Amdahl slope; a negative contention term forces `α = β = 0`.
pub fn fit_usl(capacity: &[CapacityPoint]) -> Result<FitReport> {
    require_spread(capacity, 3)?;
    let (mut s11, mut s12, mut s22, mut s1y, mut s2y) = (0.0, 0.0, 0.0, 0.0, 0.0);
    for (x, y) in linearized(capacity) {
        let x2 = (x + 1.0) * x;
        s11 += x * x;
        s12 += x * x2;
        s22 += x2 * x2;
        s1y += x * y;
        s2y += x2 * y;
    }
    let det = s11 * s22 - s12 * s12;
    if !(det.abs() > f64::EPSILON * s11 * s22) {
        return Err(Error::Underdetermined(
            "USL regressors are collinear".into(),
        ));
    }
    let contention = (s1y * s22 - s2y * s12) / det;
    let coherency = (s11 * s2y - s12 * s1y) / det;

    let mut clamps = Vec::new();
    let (alpha, beta) = if coherency < 0.0 {
        clamps.push(Clamp::BetaToZero);
        let sigma = s1y / s11;
        if sigma < 0.0 {
            clamps.push(Clamp::AlphaToZero);
            (0.0, 0.0)
        } else {
            (sigma, 0.0)
        }
    } else if contention <= 0.0 {
        clamps.push(Clamp::AlphaToZero);
        clamps.push(Clamp::BetaToZero);
        (0.0, 0.0)
    } else {
        (contention, coherency / contention)
    };
    if !(alpha.is_finite() && beta.is_finite()) {
        return Err(Error::Numeric(format!(
            "USL fit produced alpha = {alpha}, beta = {beta}"
        )));
    }
    FitReport::build(ScalingParams::Usl { alpha, beta }, capacity, clamps)
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum ModelKind {
    Amdahl,
    Geometric,
    Usl,
}

impl ModelKind {
    pub const ALL: [ModelKind; 3] = [ModelKind::Amdahl, ModelKind::Geometric, ModelKind::Usl];

    pub fn name(&self) -> &'static str {
        match self {
            ModelKind::Amdahl => "amdahl",
            ModelKind::Geometric => "mpf",
            ModelKind::Usl => "usl",
        }
    }

    pub fn fit(&self, capacity: &[CapacityPoint]) -> Result<FitReport> {
        match self {
            ModelKind::Amdahl => fit_amdahl(capacity),
            ModelKind::Geometric => fit_geometric(capacity),
            ModelKind::Usl => fit_usl(capacity),
        }
    }
}

/// Normalizes `series` and fits one model, recording the baseline used.
pub fn fit_series(
    series: &BenchmarkSeries,
    kind: ModelKind,
    baseline: Option<f64>,
) -> Result<FitReport> {
    let capacity = normalize(series, baseline)?;
    let mut report = kind.fit(&capacity)?;
    report.baseline_x1 = Some(resolve_baseline(series, baseline)?);
    Ok(report)
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct Divergence {
    pub p: u32,
    pub amdahl: f64,
    pub geometric: f64,
    /// `amdahl / geometric`.
    pub ratio: f64,
}

#[derive(Debug, Clone, PartialEq)]
pub struct Comparison {
    /// Successful fits, best (lowest SSE) first.
    pub ranked: Vec<FitReport>,
    /// Models that could not be fitted, with the reason.
    pub skipped: Vec<(ModelKind, Error)>,
    /// Amdahl vs geometric predictions at each extrapolation point.
    pub divergence: Vec<Divergence>,
}

/// Fits every model, ranks by SSE, and predicts capacity at `extrapolate`.
///
/// SSEs equal to within `1e-12` (relative to the larger, or absolute near
/// zero) are ties, won by the model with fewer parameters. A model that fails
/// to fit is listed in `skipped` without aborting the others.
pub fn compare_models(
    series: &BenchmarkSeries,
    baseline: Option<f64>,
    extrapolate: &[u32],
) -> Result<Comparison> {
    let capacity = normalize(series, baseline)?;
    let x1 = resolve_baseline(series, baseline)?;
    let mut ranked = Vec::new();
    let mut skipped = Vec::new();
    for kind in ModelKind::ALL {
        match kind
            .fit(&capacity)
            .and_then(|r| r.with_predictions(extrapolate))
        {
            Ok(mut report) => {
                report.baseline_x1 = Some(x1);
                ranked.push(report);
            }
            Err(err) => skipped.push((kind, err)),
        }
    }
    ranked.sort_by(|a, b| {
        let scale = a.sse.abs().max(b.sse.abs()).max(1.0);
        if (a.sse - b.sse).abs() <= 1e-12 * scale {
            a.params.parameter_count().cmp(&b.params.parameter_count())
        } else {
            a.sse.total_cmp(&b.sse)
        }
    });

    let find = |name: &str| ranked.iter().find(|r| r.model() == name);
    let divergence = match (find("amdahl"), find("mpf")) {
        (Some(a), Some(g)) => a
            .predictions
            .iter()
            .zip(&g.predictions)
            .map(|(pa, pg)| Divergence {
                p: pa.p,
                amdahl: pa.c,
                geometric: pg.c,
                ratio: pa.c / pg.c,
            })
            .collect(),
        _ => Vec::new(),
    };
    Ok(Comparison {
        ranked,
        skipped,
        divergence,
    })
}
