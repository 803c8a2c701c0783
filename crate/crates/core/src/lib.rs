//! Single- and two-parameter multiprocessor capacity laws and the queueing
//! models behind them.
//!
//! Three capacity laws are evaluated and fitted here:
//!
//! * Amdahl: `C(σ, p) = p / (1 + σ(p − 1))`
//! * geometric multiprocessing factor (MPF): `C(φ, p) = (1 − φ^p) / (1 − φ)`
//! * the universal scalability law (USL): `C(α, β, p) = p / (1 + α[(p − 1) + β p (p − 1)])`
//!
//! Amdahl's law is the synchronous (worst-case) bound of a closed repairman
//! network, and the MPF law is the total utilization of a uniform Coxian
//! server. The [`queueing`] module solves both interpretations analytically and
//! the [`sim`] module simulates them independently.
//!
//! ```
//! use scalecap::models::geometric_capacity;
//! use scalecap::fit::{fit_geometric, normalize, BenchmarkSeries};
//!
//! // 100 TPS on one processor, 180 on two, 244 on three.
//! let series = BenchmarkSeries::new(vec![(1, 100.0), (2, 180.0), (3, 244.0)]).unwrap();
//! let capacity = normalize(&series, None).unwrap();
//! let report = fit_geometric(&capacity).unwrap();
//! let phi = report.params.phi().unwrap();
//! assert!((phi - 0.8).abs() < 1e-6);
//! assert!((100.0 * geometric_capacity(phi, 3).unwrap() - 244.0).abs() < 1e-4);
//! ```

#![forbid(unsafe_code)]
// Range checks are written so that NaN fails them.
#![allow(clippy::neg_cmp_op_on_partial_ord)]
#![warn(rust_2018_idioms, missing_debug_implementations)]

pub mod cli;
mod error;
pub mod fit;
pub mod models;
pub mod queueing;
pub mod sim;

pub use error::{Error, Result};
pub use models::{Asymptote, CapacityPoint, ScalingParams};
