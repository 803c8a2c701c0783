//! The machine-repairman network behind Amdahl's law: the synchronous bound
//! against the exact mean-value solution.

use scalecap::models::amdahl_capacity;
use scalecap::queueing::{
    repairman_exact_series, sigma_from, sync_capacity, sync_throughput, RepairmanConfig,
};

fn main() -> scalecap::Result<()> {
    // 2 ms of bus time per 18 ms of local work.
    let cfg = RepairmanConfig::new(32, 0.002, 0.018)?;
    let sigma = sigma_from(&cfg);
    let exact = repairman_exact_series(&cfg)?;
    println!("sigma = D/(D+Z) = {sigma}");
    println!(
        "{:>4} {:>10} {:>10} {:>9} {:>9} {:>9}",
        "p", "X_exact", "X_sync", "C_exact", "C_sync", "amdahl"
    );
    for p in [1u32, 2, 4, 8, 16, 32] {
        let at = cfg.with_population(p);
        let sol = &exact[p as usize - 1];
        println!(
            "{p:>4} {:>10.3} {:>10.3} {:>9.4} {:>9.4} {:>9.4}",
            sol.x,
            sync_throughput(&at),
            sol.x / exact[0].x,
            sync_capacity(&at),
            amdahl_capacity(sigma, p)?
        );
    }
    Ok(())
}
