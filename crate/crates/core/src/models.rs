//! Closed-form capacity laws, their series forms and asymptotes, and the two
//! ways of matching an Amdahl curve to a geometric one.
//!
//! Capacity is relative throughput, `C(p) = X(p) / X(1)`, so every law gives
//! `C(1) = 1`. Processor counts are `u32`; `p = 0` is outside the domain and is
//! rejected rather than mapped to `C(0) = 0`.

use serde::Serialize;

use crate::{Error, Result};

/// Upper bound of the integer search for the USL capacity peak.
pub const DEFAULT_PEAK_SEARCH_BOUND: u32 = 100_000;

/// Parameters of one of the three capacity laws.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
#[serde(untagged)]
pub enum ScalingParams {
    /// Amdahl's law with seriality `sigma`.
    Amdahl { sigma: f64 },
    /// Geometric (MPF) law with multiprocessing factor `phi`.
    Geometric { phi: f64 },
    /// Universal scalability law with contention `alpha` and coherency `beta`.
    Usl { alpha: f64, beta: f64 },
}

/// `(p, C(p))` pair.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct CapacityPoint {
    pub p: u32,
    pub c: f64,
}

impl CapacityPoint {
    pub fn new(p: u32, c: f64) -> Result<Self> {
        check_p(p)?;
        if !(c.is_finite() && c > 0.0) {
            return Err(Error::out_of_range("capacity", c, "(0, inf)"));
        }
        Ok(CapacityPoint { p, c })
    }
}

/// Integer processor count at which a retrograde USL curve peaks.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct UslPeak {
    pub p: u32,
    pub capacity: f64,
}

/// Limit of `C(p)` as `p → ∞`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub enum Asymptote {
    Finite(f64),
    Unbounded,
    /// Capacity falls back toward zero after peaking at `peak`.
    Retrograde {
        peak: UslPeak,
    },
}

impl Asymptote {
    /// The limiting capacity, `None` when unbounded. Retrograde curves tend to zero.
    pub fn limit(&self) -> Option<f64> {
        match *self {
            Asymptote::Finite(c) => Some(c),
            Asymptote::Unbounded => None,
            Asymptote::Retrograde { .. } => Some(0.0),
        }
    }
}

impl ScalingParams {
    pub fn amdahl(sigma: f64) -> Result<Self> {
        let params = ScalingParams::Amdahl { sigma };
        params.validate()?;
        Ok(params)
    }

    pub fn geometric(phi: f64) -> Result<Self> {
        let params = ScalingParams::Geometric { phi };
        params.validate()?;
        Ok(params)
    }

    pub fn usl(alpha: f64, beta: f64) -> Result<Self> {
        let params = ScalingParams::Usl { alpha, beta };
        params.validate()?;
        Ok(params)
    }

    /// Checks the evaluation domain: `σ, φ ∈ [0, 1]`, `α, β ≥ 0`.
    pub fn validate(&self) -> Result<()> {
        match *self {
            ScalingParams::Amdahl { sigma } => check_unit("sigma", sigma),
            ScalingParams::Geometric { phi } => check_unit("phi", phi),
            ScalingParams::Usl { alpha, beta } => {
                check_nonnegative("alpha", alpha)?;
                check_nonnegative("beta", beta)
            }
        }
    }

    /// Short model name as used on the command line.
    pub fn name(&self) -> &'static str {
        match self {
            ScalingParams::Amdahl { .. } => "amdahl",
            ScalingParams::Geometric { .. } => "mpf",
            ScalingParams::Usl { .. } => "usl",
        }
    }

    pub fn parameter_count(&self) -> usize {
        match self {
            ScalingParams::Usl { .. } => 2,
            _ => 1,
        }
    }

    pub fn sigma(&self) -> Option<f64> {
        match *self {
            ScalingParams::Amdahl { sigma } => Some(sigma),
            _ => None,
        }
    }

    pub fn phi(&self) -> Option<f64> {
        match *self {
            ScalingParams::Geometric { phi } => Some(phi),
            _ => None,
        }
    }

    pub fn capacity(&self, p: u32) -> Result<f64> {
        match *self {
            ScalingParams::Amdahl { sigma } => amdahl_capacity(sigma, p),
            ScalingParams::Geometric { phi } => geometric_capacity(phi, p),
            ScalingParams::Usl { alpha, beta } => usl_capacity(alpha, beta, p),
        }
    }

    pub fn asymptote(&self) -> Asymptote {
        asymptote(self)
    }
}

fn check_p(p: u32) -> Result<()> {
    if p == 0 {
        Err(Error::ZeroProcessors)
    } else {
        Ok(())
    }
}

fn check_unit(name: &'static str, value: f64) -> Result<()> {
    if (0.0..=1.0).contains(&value) {
        Ok(())
    } else {
        Err(Error::out_of_range(name, value, "[0, 1]"))
    }
}

fn check_open_unit(name: &'static str, value: f64) -> Result<()> {
    if value > 0.0 && value < 1.0 {
        Ok(())
    } else {
        Err(Error::out_of_range(name, value, "(0, 1)"))
    }
}

fn check_nonnegative(name: &'static str, value: f64) -> Result<()> {
    if value.is_finite() && value >= 0.0 {
        Ok(())
    } else {
        Err(Error::out_of_range(name, value, "[0, inf)"))
    }
}

/// Amdahl capacity `p / (1 + σ(p − 1))`.
pub fn amdahl_capacity(sigma: f64, p: u32) -> Result<f64> {
    check_p(p)?;
    check_unit("sigma", sigma)?;
    Ok(amdahl_unchecked(sigma, p))
}

pub(crate) fn amdahl_unchecked(sigma: f64, p: u32) -> f64 {
    let p = f64::from(p);
    p / (1.0 + sigma * (p - 1.0))
}

/// Amdahl scaleup built from the uniprocessor response time `r1`:
/// `p R₁ / (R₁ + (p − 1) σ R₁)`. The value does not depend on `r1`.
pub fn amdahl_scaleup(r1: f64, sigma: f64, p: u32) -> Result<f64> {
    check_p(p)?;
    check_unit("sigma", sigma)?;
    if !(r1.is_finite() && r1 > 0.0) {
        return Err(Error::out_of_range("r1", r1, "(0, inf)"));
    }
    let n = f64::from(p);
    let rp = r1 + (n - 1.0) * sigma * r1;
    Ok(n * r1 / rp)
}

/// Geometric capacity `(1 − φ^p) / (1 − φ)`, equal to `1 + φ + … + φ^(p−1)`.
///
/// `φ = 1` returns `p`. For `φ < 1` the numerator is evaluated as
/// `-expm1(p · ln φ)` with `ln φ = ln_1p(−(1 − φ))`, which keeps full relative
/// precision as `φ → 1`.
pub fn geometric_capacity(phi: f64, p: u32) -> Result<f64> {
    check_p(p)?;
    check_unit("phi", phi)?;
    Ok(geometric_unchecked(phi, p))
}

pub(crate) fn geometric_unchecked(phi: f64, p: u32) -> f64 {
    if phi == 1.0 || p == 1 {
        return f64::from(p);
    }
    let gap = 1.0 - phi;
    let log_phi = (-gap).ln_1p();
    -(f64::from(p) * log_phi).exp_m1() / gap
}

/// USL capacity `p / (1 + α[(p − 1) + β p (p − 1)])`.
pub fn usl_capacity(alpha: f64, beta: f64, p: u32) -> Result<f64> {
    check_p(p)?;
    check_nonnegative("alpha", alpha)?;
    check_nonnegative("beta", beta)?;
    Ok(usl_unchecked(alpha, beta, p))
}

pub(crate) fn usl_unchecked(alpha: f64, beta: f64, p: u32) -> f64 {
    let n = f64::from(p);
    n / (1.0 + alpha * ((n - 1.0) + beta * n * (n - 1.0)))
}

/// Integer maximizer of the USL curve over `p = 1..=bound`.
///
/// Ties keep the smallest `p`.
pub fn usl_peak(alpha: f64, beta: f64, bound: u32) -> Result<UslPeak> {
    check_p(bound)?;
    check_nonnegative("alpha", alpha)?;
    check_nonnegative("beta", beta)?;
    let mut best = UslPeak {
        p: 1,
        capacity: 1.0,
    };
    for p in 2..=bound {
        let c = usl_unchecked(alpha, beta, p);
        if c > best.capacity {
            best = UslPeak { p, capacity: c };
        }
    }
    Ok(best)
}

/// Limit of the capacity curve as `p → ∞`.
///
/// Amdahl tends to `1/σ`, geometric to `1/(1 − φ)`, and USL with `α, β > 0`
/// to zero after a finite peak located by [`usl_peak`]. Parameters are assumed
/// to be valid.
pub fn asymptote(params: &ScalingParams) -> Asymptote {
    match *params {
        ScalingParams::Amdahl { sigma } if sigma > 0.0 => Asymptote::Finite(1.0 / sigma),
        ScalingParams::Amdahl { .. } => Asymptote::Unbounded,
        ScalingParams::Geometric { phi } if phi < 1.0 => Asymptote::Finite(1.0 / (1.0 - phi)),
        ScalingParams::Geometric { .. } => Asymptote::Unbounded,
        ScalingParams::Usl { alpha: 0.0, .. } => Asymptote::Unbounded,
        ScalingParams::Usl { alpha, beta: 0.0 } => Asymptote::Finite(1.0 / alpha),
        ScalingParams::Usl { alpha, beta } => Asymptote::Retrograde {
            peak: usl_peak(alpha, beta, DEFAULT_PEAK_SEARCH_BOUND)
                .expect("validated USL parameters"),
        },
    }
}

/// Amdahl's law as the finite series `1 + A₁ + … + A_{p−1}` with every
/// `Aᵢ = (1 − σ) / (1 + σ(p − 1))`.
pub fn amdahl_series_terms(sigma: f64, p: u32) -> Result<Vec<f64>> {
    check_p(p)?;
    check_unit("sigma", sigma)?;
    let n = f64::from(p);
    let term = (1.0 - sigma) / (1.0 + sigma * (n - 1.0));
    let mut terms = vec![term; p as usize];
    terms[0] = 1.0;
    Ok(terms)
}

/// Geometric factor with the same asymptote as Amdahl's `sigma`: `φ = 1 − σ`.
pub fn match_asymptotic(sigma: f64) -> Result<f64> {
    check_open_unit("sigma", sigma)?;
    Ok(1.0 - sigma)
}

/// Geometric factor agreeing with Amdahl's `sigma` at `p = 1` and `p = 2`:
/// `1 + φ = 2 / (1 + σ)`, so `φ = (1 − σ) / (1 + σ)`.
///
/// Agreement at `p = 1` alone holds for every pair of parameters, so the match
/// is made at the first configuration where the curves can differ.
pub fn match_leading(sigma: f64) -> Result<f64> {
    check_unit("sigma", sigma)?;
    Ok((1.0 - sigma) / (1.0 + sigma))
}

/// Capacity at `p = 1..=p_max`.
pub fn capacity_table(params: &ScalingParams, p_max: u32) -> Result<Vec<CapacityPoint>> {
    check_p(p_max)?;
    params.validate()?;
    (1..=p_max)
        .map(|p| {
            Ok(CapacityPoint {
                p,
                c: params.capacity(p)?,
            })
        })
        .collect()
}

#[cfg(test)]
mod tests {
    use approx::assert_relative_eq;

    use super::*;

    #[test]
    fn amdahl_examples() {
        assert_eq!(amdahl_capacity(0.3, 1).unwrap(), 1.0);
        assert_relative_eq!(
            amdahl_capacity(0.1, 2).unwrap(),
            2.0 / 1.1,
            max_relative = 1e-15
        );
        let big = amdahl_capacity(0.02, 1_000_000).unwrap();
        assert_relative_eq!(big, 1e6 / (1.0 + 0.02 * 999_999.0), max_relative = 1e-15);
        assert!((big - 50.0).abs() / 50.0 < 1e-4);
        assert_eq!(amdahl_capacity(0.1, 0), Err(Error::ZeroProcessors));
        assert!(amdahl_capacity(1.5, 2).is_err());
    }

    #[test]
    fn scaleup_examples() {
        let c = amdahl_capacity(0.1, 2).unwrap();
        assert_relative_eq!(
            amdahl_scaleup(5.0, 0.1, 2).unwrap(),
            c,
            max_relative = 1e-15
        );
        assert_relative_eq!(
            amdahl_scaleup(0.001, 0.1, 2).unwrap(),
            c,
            max_relative = 1e-15
        );
        assert_eq!(amdahl_scaleup(7.3, 0.5, 1).unwrap(), 1.0);
        assert!(amdahl_scaleup(0.0, 0.1, 2).is_err());
        assert!(amdahl_scaleup(-1.0, 0.1, 2).is_err());
    }

    #[test]
    fn geometric_worked_example() {
        assert_relative_eq!(
            100.0 * geometric_capacity(0.8, 2).unwrap(),
            180.0,
            max_relative = 1e-14
        );
        assert_relative_eq!(
            100.0 * geometric_capacity(0.8, 3).unwrap(),
            244.0,
            max_relative = 1e-14
        );
        assert_eq!(geometric_capacity(1.0, 7).unwrap(), 7.0);
        assert_eq!(geometric_capacity(0.0, 9).unwrap(), 1.0);
        assert_eq!(geometric_capacity(0.5, 1).unwrap(), 1.0);
    }

    #[test]
    fn geometric_near_one_keeps_precision() {
        let phi: f64 = 1.0 - 1e-12;
        let direct: f64 = (0..1000).map(|k| phi.powi(k)).sum();
        assert_relative_eq!(
            geometric_capacity(phi, 1000).unwrap(),
            direct,
            max_relative = 1e-12
        );
    }

    #[test]
    fn usl_examples() {
        assert_eq!(
            usl_capacity(0.1, 0.0, 2).unwrap(),
            amdahl_capacity(0.1, 2).unwrap()
        );
        assert_eq!(usl_capacity(0.05, 0.01, 1).unwrap(), 1.0);

        // Brute-force peak over 1..=10^4: p* = 44, C = 10.7421875 (numpy).
        let grid: Vec<f64> = (1..=10_000)
            .map(|p| usl_capacity(0.05, 0.01, p).unwrap())
            .collect();
        let (argmax, _) =
            grid.iter().enumerate().fold(
                (0, f64::MIN),
                |acc, (i, &c)| if c > acc.1 { (i, c) } else { acc },
            );
        assert_eq!(argmax + 1, 44);
        let peak = usl_peak(0.05, 0.01, DEFAULT_PEAK_SEARCH_BOUND).unwrap();
        assert_eq!(peak.p, 44);
        assert_relative_eq!(peak.capacity, 10.7421875, max_relative = 1e-15);
        assert!(grid[44..].windows(2).all(|w| w[1] < w[0]));
    }

    #[test]
    fn asymptote_examples() {
        assert_eq!(
            ScalingParams::Amdahl { sigma: 0.02 }.asymptote(),
            Asymptote::Finite(50.0)
        );
        match (ScalingParams::Geometric { phi: 0.8 }).asymptote() {
            Asymptote::Finite(c) => assert_relative_eq!(c, 5.0, max_relative = 1e-15),
            other => panic!("unexpected {other:?}"),
        }
        assert_eq!(
            ScalingParams::Geometric { phi: 1.0 }.asymptote(),
            Asymptote::Unbounded
        );
        assert_eq!(
            ScalingParams::Amdahl { sigma: 0.0 }.asymptote(),
            Asymptote::Unbounded
        );
        assert_eq!(
            ScalingParams::Usl {
                alpha: 0.1,
                beta: 0.0
            }
            .asymptote(),
            Asymptote::Finite(10.0)
        );
        match (ScalingParams::Usl {
            alpha: 0.05,
            beta: 0.01,
        })
        .asymptote()
        {
            Asymptote::Retrograde { peak } => assert_eq!(peak.p, 44),
            other => panic!("unexpected {other:?}"),
        }
    }

    #[test]
    fn series_terms_examples() {
        let terms = amdahl_series_terms(0.1, 3).unwrap();
        assert_eq!(terms.len(), 3);
        assert_eq!(terms[0], 1.0);
        assert_relative_eq!(terms[1], 0.75, max_relative = 1e-15);
        assert_relative_eq!(terms[2], 0.75, max_relative = 1e-15);
        assert_relative_eq!(terms.iter().sum::<f64>(), 2.5, max_relative = 1e-15);

        assert_eq!(amdahl_series_terms(0.0, 4).unwrap(), vec![1.0; 4]);
        let half = amdahl_series_terms(0.5, 2).unwrap();
        assert_relative_eq!(half[1], 1.0 / 3.0, max_relative = 1e-15);
        assert_relative_eq!(half.iter().sum::<f64>(), 4.0 / 3.0, max_relative = 1e-15);
    }

    #[test]
    fn matching() {
        assert_relative_eq!(match_asymptotic(0.2).unwrap(), 0.8);
        assert_eq!(match_asymptotic(0.5).unwrap(), 0.5);
        assert_relative_eq!(match_asymptotic(0.02).unwrap(), 0.98);
        assert!(match_asymptotic(0.0).is_err());
        assert!(match_asymptotic(1.0).is_err());
        let a = ScalingParams::Amdahl { sigma: 0.2 }
            .asymptote()
            .limit()
            .unwrap();
        let g = ScalingParams::Geometric {
            phi: match_asymptotic(0.2).unwrap(),
        }
        .asymptote()
        .limit()
        .unwrap();
        assert_relative_eq!(a, 5.0);
        assert_relative_eq!(g, 5.0, max_relative = 1e-15);

        assert_eq!(match_leading(0.0).unwrap(), 1.0);
        assert_eq!(match_leading(1.0).unwrap(), 0.0);
        // p = 2 equality solved by hand: 1 + φ = 2 / 1.1.
        let phi = match_leading(0.1).unwrap();
        assert_relative_eq!(phi, 0.8181818181818181, max_relative = 1e-15);
        assert_relative_eq!(
            geometric_capacity(phi, 2).unwrap(),
            amdahl_capacity(0.1, 2).unwrap(),
            max_relative = 1e-15
        );
        assert!(match_leading(-0.1).is_err());
    }

    #[test]
    fn tables() {
        let table = capacity_table(&ScalingParams::Geometric { phi: 0.8 }, 3).unwrap();
        let cs: Vec<f64> = table.iter().map(|pt| pt.c).collect();
        assert_eq!(
            table.iter().map(|pt| pt.p).collect::<Vec<_>>(),
            vec![1, 2, 3]
        );
        assert_relative_eq!(cs[0], 1.0);
        assert_relative_eq!(cs[1], 1.8, max_relative = 1e-15);
        assert_relative_eq!(cs[2], 2.44, max_relative = 1e-15);

        let single = capacity_table(&ScalingParams::Amdahl { sigma: 0.4 }, 1).unwrap();
        assert_eq!(single, vec![CapacityPoint { p: 1, c: 1.0 }]);

        let usl = capacity_table(
            &ScalingParams::Usl {
                alpha: 0.05,
                beta: 0.01,
            },
            200,
        )
        .unwrap();
        assert!(usl[150].c < usl[100].c);
        assert!(capacity_table(&ScalingParams::Amdahl { sigma: 0.4 }, 0).is_err());
        assert!(capacity_table(&ScalingParams::Geometric { phi: 2.0 }, 3).is_err());
    }
}
