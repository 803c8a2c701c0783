//! Response time of a single server whose service is a chain of geometric
//! Coxian stages, at fixed total utilization.

use scalecap::queueing::{mpf_response_curve, mpf_response_increments};

fn main() -> scalecap::Result<()> {
    let rho = 0.75;
    for phi in [0.5, 0.8, 0.98, 1.0] {
        let curve = mpf_response_curve(1.0, phi, rho, 50)?;
        let steps = mpf_response_increments(1.0, phi, rho, 50)?;
        println!("phi = {phi}");
        for pt in curve
            .iter()
            .filter(|pt| [1, 2, 5, 10, 20, 50].contains(&pt.stages))
        {
            println!(
                "  p = {:>2}  E{{S}} = {:>8.4}  scv = {:.4}  R = {:>9.4}",
                pt.stages, pt.mean, pt.scv, pt.response
            );
        }
        println!("  last increment R(50) - R(49) = {:.3e}", steps[48]);
    }
    Ok(())
}
