//! Amdahl against the geometric law under the two matching rules: a shared
//! ceiling, or agreement at p = 1 and p = 2.

use scalecap::models::{amdahl_capacity, geometric_capacity, match_asymptotic, match_leading};

fn main() -> scalecap::Result<()> {
    let sigma = 0.1;
    let rules = [
        ("asymptotic", match_asymptotic(sigma)?),
        ("leading", match_leading(sigma)?),
    ];

    for (rule, phi) in rules {
        println!("# {rule} matching: sigma = {sigma}, phi = {phi:.6}");
        println!("p,C_amdahl,C_mpf");
        for p in [1, 2, 4, 8, 16, 32, 64, 128] {
            println!(
                "{p},{:.4},{:.4}",
                amdahl_capacity(sigma, p)?,
                geometric_capacity(phi, p)?
            );
        }
        println!();
    }
    Ok(())
}
