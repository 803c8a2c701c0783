//! Discrete-event cross-checks: the closed repairman network against mean
//! value analysis, and an M/G/1 queue with Coxian service against P-K.

use scalecap::queueing::{
    coxian_moments, pk_response, repairman_exact, sync_throughput, CoxianSpec, RepairmanConfig,
};
use scalecap::sim::{replicate, simulate_mg1_coxian, simulate_repairman, SimConfig};

fn main() -> scalecap::Result<()> {
    let seed = std::env::var("SCALECAP_SEED")
        .ok()
        .and_then(|s| s.parse().ok())
        .unwrap_or(7);
    let sim = SimConfig::with_seed(seed);

    let cfg = RepairmanConfig::new(8, 1.0, 4.0)?;
    let exact = repairman_exact(&cfg)?;
    let est = simulate_repairman(&cfg, &sim)?;
    println!(
        "repairman p=8: X = {:.4} +/- {:.4} (exact {:.4}, bound {:.4})",
        est.x.mean,
        est.x.half_width,
        exact.x,
        sync_throughput(&cfg)
    );

    let spec = CoxianSpec::uniform(1.0, 0.8, 10)?;
    let m = coxian_moments(&spec);
    let lambda = 0.75 / m.mean;
    let analytic = pk_response(&m, 0.75)?;
    for (i, run) in replicate(&sim, 4, |c| simulate_mg1_coxian(lambda, &spec, c))
        .into_iter()
        .enumerate()
    {
        let r = run?.r;
        let verdict = if r.contains(analytic) {
            "inside"
        } else {
            "outside"
        };
        println!(
            "mg1 rep {i}: R = {:.3} +/- {:.3} (P-K {analytic:.3}, {verdict})",
            r.mean, r.half_width
        );
    }
    Ok(())
}
