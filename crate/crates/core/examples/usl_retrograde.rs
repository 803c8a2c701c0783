//! Coherency cost in the two-parameter law makes throughput peak and then
//! fall.

use scalecap::models::{usl_peak, Asymptote, ScalingParams, DEFAULT_PEAK_SEARCH_BOUND};

fn main() -> scalecap::Result<()> {
    let params = ScalingParams::usl(0.05, 0.01)?;
    let peak = usl_peak(0.05, 0.01, DEFAULT_PEAK_SEARCH_BOUND)?;
    println!("peak capacity {:.4} at p = {}", peak.capacity, peak.p);
    for p in [1, 8, 16, 32, peak.p, 64, 128, 512] {
        println!("C({p}) = {:.4}", params.capacity(p)?);
    }
    if let Asymptote::Retrograde { .. } = params.asymptote() {
        println!("capacity tends to 0 as p grows");
    }
    Ok(())
}
