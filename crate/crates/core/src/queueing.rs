//! Queueing interpretations of the capacity laws.
//!
//! The bus-oriented model is a closed repairman network: `p` processors think
//! for a mean time `Z`, then queue at a single bus with mean service demand
//! `D`. When all requests arrive together the bus response is `pD` and the
//! relative throughput is Amdahl's law with `σ = D / (D + Z)`.
//!
//! The processor-oriented model is an M/G/1 queue whose server is a Coxian
//! chain of exponential stages. With equal rates and equal advance probability
//! `φ`, the mean service time is a finite geometric series and the total
//! utilization is `ρ C(φ, p)`.

use serde::Serialize;

use crate::models::geometric_unchecked;
use crate::{Error, Result};

/// Closed repairman network with a single queueing center.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct RepairmanConfig {
    /// Number of processors (requests in the network).
    pub p: u32,
    /// Mean bus service demand, seconds.
    pub d: f64,
    /// Mean think (execution) time, seconds.
    pub z: f64,
}

impl RepairmanConfig {
    pub fn new(p: u32, d: f64, z: f64) -> Result<Self> {
        let cfg = RepairmanConfig { p, d, z };
        cfg.validate()?;
        Ok(cfg)
    }

    pub fn validate(&self) -> Result<()> {
        if self.p == 0 {
            return Err(Error::ZeroProcessors);
        }
        if !(self.d.is_finite() && self.d > 0.0) {
            return Err(Error::out_of_range("D", self.d, "(0, inf)"));
        }
        if !(self.z.is_finite() && self.z >= 0.0) {
            return Err(Error::out_of_range("Z", self.z, "[0, inf)"));
        }
        Ok(())
    }

    /// Same network with a different population.
    pub fn with_population(&self, p: u32) -> Self {
        RepairmanConfig { p, ..*self }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct RepairmanSolution {
    /// System throughput, requests per second.
    pub x: f64,
    /// Residence time at the bus, seconds.
    pub r: f64,
    /// Mean number of requests at the bus.
    pub q: f64,
    /// Bus utilization.
    pub u_bus: f64,
    /// Fraction of time each processor spends executing.
    pub u_proc: f64,
}

/// Worst-case throughput when every processor issues its request at once:
/// `p / (pD + Z)`.
pub fn sync_throughput(cfg: &RepairmanConfig) -> f64 {
    let p = f64::from(cfg.p);
    p / (p * cfg.d + cfg.z)
}

/// Relative synchronous throughput `X_sync(p) / X_sync(1) = p (D + Z) / (pD + Z)`.
pub fn sync_capacity(cfg: &RepairmanConfig) -> f64 {
    let p = f64::from(cfg.p);
    p * (cfg.d + cfg.z) / (p * cfg.d + cfg.z)
}

/// Seriality implied by the network, `D / (D + Z)`.
pub fn sigma_from(cfg: &RepairmanConfig) -> f64 {
    cfg.d / (cfg.d + cfg.z)
}

/// Bus response under synchronous queueing, `pD`.
pub fn sync_response(cfg: &RepairmanConfig) -> f64 {
    f64::from(cfg.p) * cfg.d
}

/// Exact M/M/1//p solution by mean-value recursion over populations `1..=p`.
pub fn repairman_exact(cfg: &RepairmanConfig) -> Result<RepairmanSolution> {
    Ok(*repairman_exact_series(cfg)?.last().expect("p >= 1"))
}

/// Exact solutions for every population `1..=cfg.p`, from one recursion pass.
pub fn repairman_exact_series(cfg: &RepairmanConfig) -> Result<Vec<RepairmanSolution>> {
    cfg.validate()?;
    let mut q = 0.0;
    (1..=cfg.p)
        .map(|n| {
            let n = f64::from(n);
            let r = cfg.d * (1.0 + q);
            let x = n / (r + cfg.z);
            q = x * r;
            Ok(RepairmanSolution {
                x,
                r,
                q,
                u_bus: x * cfg.d,
                u_proc: x * cfg.z / n,
            })
        })
        .collect()
}

/// Coxian server: stage `i` is exponential with rate `mu[i]`; after it the
/// request advances with probability `advance[i]` or leaves with
/// `1 − advance[i]`. The last stage always exits.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct CoxianSpec {
    mu: Vec<f64>,
    advance: Vec<f64>,
}

impl CoxianSpec {
    pub fn new(mu: Vec<f64>, advance: Vec<f64>) -> Result<Self> {
        if mu.is_empty() {
            return Err(Error::InvalidCoxian(
                "at least one stage is required".into(),
            ));
        }
        if mu.len() != advance.len() {
            return Err(Error::InvalidCoxian(format!(
                "{} rates but {} advance probabilities",
                mu.len(),
                advance.len()
            )));
        }
        if let Some((i, m)) = mu
            .iter()
            .enumerate()
            .find(|(_, m)| !(m.is_finite() && **m > 0.0))
        {
            return Err(Error::InvalidCoxian(format!(
                "stage {} rate {m} is not positive",
                i + 1
            )));
        }
        if let Some((i, a)) = advance
            .iter()
            .enumerate()
            .find(|(_, a)| !(0.0..=1.0).contains(*a))
        {
            return Err(Error::InvalidCoxian(format!(
                "stage {} advance probability {a} is outside [0, 1]",
                i + 1
            )));
        }
        if *advance.last().unwrap() != 0.0 {
            return Err(Error::InvalidCoxian(
                "the last stage must have advance probability 0".into(),
            ));
        }
        Ok(CoxianSpec { mu, advance })
    }

    /// Equal rates `mu` and advance probability `phi` on every stage but the last.
    pub fn uniform(mu: f64, phi: f64, stages: u32) -> Result<Self> {
        if stages == 0 {
            return Err(Error::InvalidCoxian(
                "at least one stage is required".into(),
            ));
        }
        let n = stages as usize;
        let mut advance = vec![phi; n];
        advance[n - 1] = 0.0;
        CoxianSpec::new(vec![mu; n], advance)
    }

    /// Single exponential stage.
    pub fn exponential(mu: f64) -> Result<Self> {
        CoxianSpec::new(vec![mu], vec![0.0])
    }

    pub fn stages(&self) -> usize {
        self.mu.len()
    }

    pub fn rates(&self) -> &[f64] {
        &self.mu
    }

    pub fn advance(&self) -> &[f64] {
        &self.advance
    }

    /// Probability of leaving after stage `i` given that stage `i` was reached.
    pub fn exit(&self, i: usize) -> f64 {
        1.0 - self.advance[i]
    }

    /// `A₁ = 1`, `Aᵢ = a₁ ⋯ a_{i−1}`.
    pub fn reach_probabilities(&self) -> Vec<f64> {
        let mut reach = Vec::with_capacity(self.stages());
        let mut acc = 1.0;
        for a in &self.advance {
            reach.push(acc);
            acc *= a;
        }
        reach
    }

    /// Probability that service ends right after stage `i`. Sums to one.
    pub fn exit_probabilities(&self) -> Vec<f64> {
        let last = self.stages() - 1;
        self.reach_probabilities()
            .into_iter()
            .enumerate()
            .map(|(i, reach)| {
                if i == last {
                    reach
                } else {
                    reach * self.exit(i)
                }
            })
            .collect()
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct ServiceMoments {
    pub mean: f64,
    pub second: f64,
    pub variance: f64,
    pub scv: f64,
}

impl ServiceMoments {
    pub fn from_mean_second(mean: f64, second: f64) -> Self {
        let variance = second - mean * mean;
        ServiceMoments {
            mean,
            second,
            variance,
            scv: variance / (mean * mean),
        }
    }

    pub fn from_mean_scv(mean: f64, scv: f64) -> Self {
        let variance = scv * mean * mean;
        ServiceMoments {
            mean,
            second: variance + mean * mean,
            variance,
            scv,
        }
    }
}

/// First two moments of the Coxian service time.
///
/// A request leaving after stage `i` has spent a sum of independent
/// exponentials, so `E{S} = Σ Pᵢ Tᵢ` and `E{S²} = Σ Pᵢ (Vᵢ + Tᵢ²)` with
/// `Tᵢ = Σ_{j≤i} 1/μⱼ` and `Vᵢ = Σ_{j≤i} 1/μⱼ²`. The variance is summed as
/// `Σ Pᵢ Vᵢ + Σ Pᵢ (Tᵢ − E{S})²`, which has no cancellation.
pub fn coxian_moments(spec: &CoxianSpec) -> ServiceMoments {
    let exits = spec.exit_probabilities();
    let mut elapsed = Vec::with_capacity(exits.len());
    let mut within = 0.0;
    let (mut t, mut v) = (0.0, 0.0);
    for (&mu, &exit) in spec.mu.iter().zip(&exits) {
        t += 1.0 / mu;
        v += 1.0 / (mu * mu);
        elapsed.push(t);
        within += exit * v;
    }
    let mean: f64 = exits.iter().zip(&elapsed).map(|(p, t)| p * t).sum();
    let between: f64 = exits
        .iter()
        .zip(&elapsed)
        .map(|(p, t)| p * (t - mean).powi(2))
        .sum();
    let variance = within + between;
    ServiceMoments {
        mean,
        second: variance + mean * mean,
        variance,
        scv: variance / (mean * mean),
    }
}

/// Mean uniform-Coxian service time `(1/μ)(1 − φ^p)/(1 − φ)`.
pub fn uniform_coxian_mean(mu: f64, phi: f64, stages: u32) -> Result<f64> {
    check_uniform(mu, phi, stages)?;
    Ok(geometric_unchecked(phi, stages) / mu)
}

fn check_uniform(mu: f64, phi: f64, stages: u32) -> Result<()> {
    if !(mu.is_finite() && mu > 0.0) {
        return Err(Error::out_of_range("mu", mu, "(0, inf)"));
    }
    if !(0.0..=1.0).contains(&phi) {
        return Err(Error::out_of_range("phi", phi, "[0, 1]"));
    }
    if stages == 0 {
        return Err(Error::ZeroProcessors);
    }
    Ok(())
}

/// `1 − C²{S}` for the uniform Coxian, free of cancellation.
///
/// With `N` the number of stages visited, `E{S²} = E{N(N + 1)}/μ²`, and the
/// deficit reduces to `2 Σ_{k=p}^{2p−2} (2p − 1 − k) φ^k / S₀²` with
/// `S₀ = Σ_{k<p} φ^k`: a sum of positive terms. It stays resolvable after
/// `1 − C²` falls below `f64` spacing near 1.
pub fn uniform_coxian_scv_deficit(phi: f64, stages: u32) -> Result<f64> {
    check_uniform(1.0, phi, stages)?;
    let p = stages;
    let mut tail = 0.0;
    let mut weight = 1.0;
    for j in 0..p.saturating_sub(1) {
        tail += f64::from(p - 1 - j) * weight;
        weight *= phi;
    }
    let s0 = geometric_unchecked(phi, p);
    Ok(2.0 * phi.powi(p as i32) * tail / (s0 * s0))
}

/// Total utilization of a uniform Coxian server, with an overload flag.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct Utilization {
    pub value: f64,
    /// Set when `value >= 1`; the M/G/1 queue has no steady state.
    pub overloaded: bool,
}

/// `U = (λ/μ)(1 − φ^p)/(1 − φ)`, i.e. `ρ C(φ, p)` with `ρ = λ/μ`.
pub fn uniform_coxian_utilization(
    lambda: f64,
    mu: f64,
    phi: f64,
    stages: u32,
) -> Result<Utilization> {
    check_uniform(mu, phi, stages)?;
    if !(lambda.is_finite() && lambda >= 0.0) {
        return Err(Error::out_of_range("lambda", lambda, "[0, inf)"));
    }
    let value = lambda / mu * geometric_unchecked(phi, stages);
    Ok(Utilization {
        value,
        overloaded: value >= 1.0,
    })
}

/// Pollaczek-Khinchine mean response `E{S}[1 + ρ(1 + C²)/(2(1 − ρ))]`, where
/// `utilization` is the total server utilization `λ E{S}`.
pub fn pk_response(moments: &ServiceMoments, utilization: f64) -> Result<f64> {
    if utilization >= 1.0 {
        return Err(Error::Unstable(utilization));
    }
    if !(utilization >= 0.0) {
        return Err(Error::out_of_range("utilization", utilization, "[0, 1)"));
    }
    let rho = utilization;
    Ok(moments.mean * (1.0 + rho * (1.0 + moments.scv) / (2.0 * (1.0 - rho))))
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct ResponsePoint {
    pub stages: u32,
    pub mean: f64,
    pub scv: f64,
    pub response: f64,
}

fn check_curve(mu: f64, phi: f64, utilization: f64, p_max: u32) -> Result<()> {
    check_uniform(mu, phi, p_max)?;
    if !(utilization > 0.0 && utilization < 1.0) {
        return Err(Error::out_of_range("utilization", utilization, "(0, 1)"));
    }
    Ok(())
}

/// P-K response of the uniform Coxian server for `p = 1..=p_max` stages at a
/// fixed total utilization.
pub fn mpf_response_curve(
    mu: f64,
    phi: f64,
    utilization: f64,
    p_max: u32,
) -> Result<Vec<ResponsePoint>> {
    check_curve(mu, phi, utilization, p_max)?;
    (1..=p_max)
        .map(|stages| {
            let moments = coxian_moments(&CoxianSpec::uniform(mu, phi, stages)?);
            Ok(ResponsePoint {
                stages,
                mean: moments.mean,
                scv: moments.scv,
                response: pk_response(&moments, utilization)?,
            })
        })
        .collect()
}

/// `R(p + 1) − R(p)` for `p = 1..p_max`, evaluated without differencing.
///
/// With `k = ρ / (2(1 − ρ))` the response is `R = E + k E{S²}/E`. Adding a
/// stage moves probability `φ^p` from exiting at stage `p` to the new stage,
/// so `ΔE = φ^p/μ` and `ΔE{S²} = φ^p (2p + 2)/μ²`, and
/// `ΔR = ΔE + k (ΔE{S²} E − E{S²} ΔE) / (E (E + ΔE))`. The increments keep
/// full relative precision after `R(p)` itself has stopped changing in `f64`.
pub fn mpf_response_increments(
    mu: f64,
    phi: f64,
    utilization: f64,
    p_max: u32,
) -> Result<Vec<f64>> {
    check_curve(mu, phi, utilization, p_max)?;
    let k = utilization / (2.0 * (1.0 - utilization));
    (1..p_max)
        .map(|p| {
            let m = coxian_moments(&CoxianSpec::uniform(mu, phi, p)?);
            let n = f64::from(p);
            let weight = phi.powi(p as i32);
            let d_mean = weight / mu;
            let bracket = (2.0 * n + 2.0) * m.mean / mu - m.second;
            Ok(d_mean * (1.0 + k * bracket / (m.mean * (m.mean + d_mean))))
        })
        .collect()
}

#[cfg(test)]
mod tests {
    use approx::assert_relative_eq;

    use super::*;
    use crate::models::{amdahl_capacity, geometric_capacity};

    fn cfg(p: u32, d: f64, z: f64) -> RepairmanConfig {
        RepairmanConfig::new(p, d, z).unwrap()
    }

    #[test]
    fn sync_examples() {
        assert_relative_eq!(sync_throughput(&cfg(1, 1.0, 9.0)), 0.1);
        assert_relative_eq!(sync_throughput(&cfg(10, 1.0, 9.0)), 10.0 / 19.0);
        assert_relative_eq!(
            sync_throughput(&cfg(1_000_000, 1.0, 9.0)),
            1.0,
            max_relative = 1e-5
        );

        let c = sync_capacity(&cfg(10, 1.0, 9.0));
        assert_relative_eq!(c, 10.0 / 1.9, max_relative = 1e-15);
        assert_relative_eq!(c, amdahl_capacity(0.1, 10).unwrap(), max_relative = 1e-15);
        assert_relative_eq!(
            sync_capacity(&cfg(10, 1e-12, 1.0)),
            10.0,
            max_relative = 1e-10
        );
        for p in [1, 2, 17, 1024] {
            assert_eq!(sync_capacity(&cfg(p, 0.3, 0.0)), 1.0);
        }
    }

    #[test]
    fn sigma_examples() {
        assert_relative_eq!(sigma_from(&cfg(1, 1.0, 9.0)), 0.1);
        assert_eq!(sigma_from(&cfg(1, 1.0, 0.0)), 1.0);
        assert_relative_eq!(sigma_from(&cfg(1, 0.001, 10.0)), 1e-4, max_relative = 1e-3);
    }

    #[test]
    fn sync_response_examples() {
        assert_eq!(sync_response(&cfg(8, 0.5, 3.0)), 4.0);
        assert_eq!(sync_response(&cfg(1, 0.5, 3.0)), 0.5);
    }

    #[test]
    fn config_validation() {
        assert!(RepairmanConfig::new(0, 1.0, 1.0).is_err());
        assert!(RepairmanConfig::new(1, 0.0, 1.0).is_err());
        assert!(RepairmanConfig::new(1, 1.0, -1.0).is_err());
        assert!(RepairmanConfig::new(1, f64::NAN, 1.0).is_err());
    }

    #[test]
    fn mva_examples() {
        let one = repairman_exact(&cfg(1, 1.0, 1.0)).unwrap();
        assert_relative_eq!(one.x, 0.5);
        assert_relative_eq!(one.r, 1.0);
        // Hand-unrolled: n=1 gives Q=0.5; n=2 gives R=1.5, X=2/2.5.
        let two = repairman_exact(&cfg(2, 1.0, 1.0)).unwrap();
        assert_relative_eq!(two.x, 0.8, max_relative = 1e-15);
        assert_relative_eq!(two.r, 1.5, max_relative = 1e-15);
        assert_relative_eq!(two.q, 1.2, max_relative = 1e-15);
        assert_relative_eq!(two.u_bus, 0.8, max_relative = 1e-15);
        assert_relative_eq!(two.u_proc, 0.4, max_relative = 1e-15);

        let saturated = repairman_exact(&cfg(500, 1.0, 0.0)).unwrap();
        assert_relative_eq!(saturated.x, 1.0, max_relative = 1e-12);
    }

    #[test]
    fn mva_respects_bounds() {
        for &(d, z) in &[(1.0, 9.0), (0.01, 5.0), (2.0, 0.5), (1.0, 0.0)] {
            for p in 1..=200 {
                let c = cfg(p, d, z);
                let sol = repairman_exact(&c).unwrap();
                assert!(
                    sol.x >= sync_throughput(&c) * (1.0 - 1e-12),
                    "p={p} d={d} z={z}"
                );
                assert!(sol.x <= (1.0 / d).min(f64::from(p) / (d + z)) * (1.0 + 1e-12));
                assert_relative_eq!(sol.x * (sol.r + z), f64::from(p), max_relative = 1e-10);
                assert_relative_eq!(sol.q, sol.x * sol.r, max_relative = 1e-10);
            }
        }
    }

    #[test]
    fn coxian_spec_validation() {
        assert!(CoxianSpec::new(vec![], vec![]).is_err());
        assert!(CoxianSpec::new(vec![1.0, 2.0], vec![0.5]).is_err());
        assert!(CoxianSpec::new(vec![1.0, 0.0], vec![0.5, 0.0]).is_err());
        assert!(CoxianSpec::new(vec![1.0, 1.0], vec![1.5, 0.0]).is_err());
        assert!(CoxianSpec::new(vec![1.0, 1.0], vec![0.5, 0.5]).is_err());
        assert!(CoxianSpec::uniform(1.0, 0.5, 0).is_err());

        let spec = CoxianSpec::new(vec![1.0, 2.0, 3.0], vec![0.5, 0.4, 0.0]).unwrap();
        assert_eq!(spec.reach_probabilities(), vec![1.0, 0.5, 0.2]);
        let exits = spec.exit_probabilities();
        assert_relative_eq!(exits.iter().sum::<f64>(), 1.0, max_relative = 1e-15);
        assert_relative_eq!(exits[0], 0.5);
        assert_relative_eq!(exits[1], 0.3);
        assert_relative_eq!(exits[2], 0.2);
    }

    #[test]
    fn moments_examples() {
        let m = coxian_moments(&CoxianSpec::uniform(1.0, 0.5, 2).unwrap());
        assert_relative_eq!(m.mean, 1.5);
        // Values from the phase-type matrix route, k! α(−T)^{−k} 1 (numpy).
        assert_relative_eq!(m.second, 4.0);
        assert_relative_eq!(m.variance, 1.75);
        assert_relative_eq!(m.scv, 0.7777777777777778, max_relative = 1e-15);

        let erlang = coxian_moments(&CoxianSpec::uniform(1.0, 1.0, 4).unwrap());
        assert_eq!(erlang.mean, 4.0);
        assert_eq!(erlang.scv, 0.25);

        let mixed =
            coxian_moments(&CoxianSpec::new(vec![1.0, 2.0, 3.0], vec![0.5, 0.4, 0.0]).unwrap());
        assert_relative_eq!(mixed.mean, 1.3166666666666667, max_relative = 1e-14);
        assert_relative_eq!(mixed.second, 2.9944444444444445, max_relative = 1e-14);
    }

    #[test]
    fn uniform_mean_examples() {
        assert_relative_eq!(uniform_coxian_mean(2.0, 0.5, 3).unwrap(), 0.875);
        assert_eq!(uniform_coxian_mean(1.0, 1.0, 5).unwrap(), 5.0);
        assert_relative_eq!(
            uniform_coxian_mean(1.0, 0.8, 400).unwrap(),
            5.0,
            max_relative = 1e-12
        );
        for p in 1..=60 {
            let closed = uniform_coxian_mean(1.3, 0.7, p).unwrap();
            let summed = coxian_moments(&CoxianSpec::uniform(1.3, 0.7, p).unwrap()).mean;
            assert_relative_eq!(closed, summed, max_relative = 1e-13);
        }
    }

    #[test]
    fn utilization_examples() {
        for phi in [0.0, 0.3, 1.0] {
            let u = uniform_coxian_utilization(0.5, 1.0, phi, 1).unwrap();
            assert_eq!(u.value, 0.5);
            assert!(!u.overloaded);
        }
        let u = uniform_coxian_utilization(0.1, 1.0, 0.8, 3).unwrap();
        assert_relative_eq!(u.value, 0.244, max_relative = 1e-14);
        assert_eq!(u.value, 0.1 * geometric_capacity(0.8, 3).unwrap());

        let heavy = uniform_coxian_utilization(0.3, 1.0, 0.8, 500).unwrap();
        assert_relative_eq!(heavy.value, 1.5, max_relative = 1e-12);
        assert!(heavy.overloaded);
        assert!(heavy.value <= 0.3 / 0.2 + 1e-12);
    }

    #[test]
    fn pk_examples() {
        let exp = ServiceMoments::from_mean_scv(1.0, 1.0);
        assert_relative_eq!(pk_response(&exp, 0.5).unwrap(), 2.0);
        assert_eq!(pk_response(&exp, 0.0).unwrap(), 1.0);
        assert_eq!(pk_response(&exp, 1.0), Err(Error::Unstable(1.0)));
        assert!(pk_response(&exp, -0.1).is_err());

        // Phase-type matrix oracle (numpy): E=1.998046875, E{S²}=7.953125.
        let m = coxian_moments(&CoxianSpec::uniform(1.0, 0.5, 10).unwrap());
        assert_relative_eq!(
            pk_response(&m, 0.75).unwrap(),
            7.968721361803519,
            max_relative = 1e-13
        );
    }

    #[test]
    fn response_curve_shape() {
        let curve = mpf_response_curve(1.0, 0.5, 0.75, 100).unwrap();
        assert_eq!(curve.len(), 100);
        let single = pk_response(
            &coxian_moments(&CoxianSpec::exponential(1.0).unwrap()),
            0.75,
        )
        .unwrap();
        assert_eq!(curve[0].response, single);

        let inc = mpf_response_increments(1.0, 0.5, 0.75, 100).unwrap();
        assert_eq!(inc.len(), 99);
        assert!(inc.iter().all(|&d| d > 0.0));
        assert!(inc.windows(2).all(|w| w[1] < w[0]));
        for (i, w) in curve.windows(2).enumerate().take(30) {
            assert_relative_eq!(w[1].response - w[0].response, inc[i], max_relative = 1e-8);
        }
        let top = curve[99].response * (1.0 + 4.0 * f64::EPSILON);
        assert!(curve.iter().all(|pt| pt.response <= top));

        // Erlang chain: linear growth.
        let erlang = mpf_response_increments(1.0, 1.0, 0.75, 50).unwrap();
        assert!(erlang.iter().all(|&d| (d - erlang[0]).abs() < 1e-12));

        assert!(mpf_response_curve(1.0, 0.5, 1.0, 10).is_err());
        assert!(mpf_response_curve(1.0, 1.5, 0.5, 10).is_err());
    }

    #[test]
    fn scv_deficit_matches_moments() {
        for phi in [0.0, 0.1, 0.5, 0.8, 0.95, 1.0] {
            for p in [1, 2, 3, 7, 12] {
                let m = coxian_moments(&CoxianSpec::uniform(2.0, phi, p).unwrap());
                let deficit = uniform_coxian_scv_deficit(phi, p).unwrap();
                assert!((deficit - (1.0 - m.scv)).abs() < 1e-13, "phi={phi} p={p}");
            }
        }
        assert_relative_eq!(
            uniform_coxian_scv_deficit(1.0, 40).unwrap(),
            39.0 / 40.0,
            max_relative = 1e-15
        );
        // Far below the spacing of doubles near 1, still positive.
        let tiny = uniform_coxian_scv_deficit(0.15, 21).unwrap();
        assert!(tiny > 0.0 && tiny < 1e-15);
    }
}
