//! Rank all three laws on a CSV benchmark file and compare their
//! extrapolations.
//!
//! ```text
//! cargo run --example compare_models -- crates/core/examples/data/tps.csv
//! ```

use std::path::PathBuf;

use scalecap::cli::read_series;
use scalecap::fit::compare_models;

fn main() {
    let path = std::env::args_os()
        .nth(1)
        .map(PathBuf::from)
        .unwrap_or_else(|| {
            PathBuf::from(concat!(
                env!("CARGO_MANIFEST_DIR"),
                "/examples/data/tps.csv"
            ))
        });
    let series = match read_series(&path, "throughput") {
        Ok(s) => s,
        Err(e) => {
            eprintln!("{e}");
            std::process::exit(e.exit_code().into());
        }
    };
    let cmp = compare_models(&series, None, &[8, 16, 64]).expect("fit");
    for (rank, fit) in cmp.ranked.iter().enumerate() {
        println!(
            "{}. {:<6} {:?}  sse = {:.3e}",
            rank + 1,
            fit.model(),
            fit.params,
            fit.sse
        );
    }
    for d in &cmp.divergence {
        println!(
            "p = {:>3}: amdahl {:.3} vs mpf {:.3} (x{:.3})",
            d.p, d.amdahl, d.geometric, d.ratio
        );
    }
}
