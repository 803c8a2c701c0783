//! Fit the geometric (MPF) law to three throughput measurements and
//! extrapolate.
//!
//! ```text
//! cargo run --example mpf_worked_example
//! ```

use scalecap::fit::{fit_geometric, normalize, BenchmarkSeries};
use scalecap::models::geometric_capacity;

fn main() -> scalecap::Result<()> {
    let tps = BenchmarkSeries::labeled(vec![(1, 100.0), (2, 180.0), (3, 244.0)], "tps", "TPS")?;
    let capacity = normalize(&tps, None)?;
    let report = fit_geometric(&capacity)?;
    let phi = report.params.phi().expect("geometric fit");
    println!("phi = {phi:.6}  sse = {:.3e}", report.sse);

    let x1 = tps.throughput_at(1).unwrap();
    for p in 1..=8 {
        let c = geometric_capacity(phi, p)?;
        println!("p = {p}  C = {c:.4}  X = {:.1} {}", x1 * c, tps.units);
    }
    if let Some(limit) = report.asymptote.limit() {
        println!("ceiling: {limit:.4} x single-processor throughput");
    }
    Ok(())
}
