//! Discrete-event simulation of the two queueing interpretations, used as an
//! independent check on the analytic solvers in [`crate::queueing`].
//!
//! Every run is driven by one seeded [`ChaCha8Rng`] stream, so a given
//! [`SimConfig`] always reproduces the same estimates bit for bit. Confidence
//! intervals come from batch means with a Student-t quantile.

use std::cmp::Ordering;
use std::collections::{BinaryHeap, VecDeque};

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rand_distr::Exp1;
use serde::Serialize;
use statrs::distribution::{ContinuousCDF, StudentsT};

use crate::queueing::{coxian_moments, CoxianSpec, RepairmanConfig};
use crate::{Error, Result};

pub const DEFAULT_SEED: u64 = 1;
pub const DEFAULT_WARMUP: u64 = 10_000;
pub const DEFAULT_MEASURED: u64 = 200_000;
pub const DEFAULT_BATCHES: u64 = 20;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub struct SimConfig {
    pub seed: u64,
    /// Completions discarded before measurement starts.
    pub warmup_completions: u64,
    pub measured_completions: u64,
    /// Number of batches for the batch-means interval.
    pub batches: u64,
}

impl Default for SimConfig {
    fn default() -> Self {
        SimConfig {
            seed: DEFAULT_SEED,
            warmup_completions: DEFAULT_WARMUP,
            measured_completions: DEFAULT_MEASURED,
            batches: DEFAULT_BATCHES,
        }
    }
}

impl SimConfig {
    pub fn with_seed(seed: u64) -> Self {
        SimConfig {
            seed,
            ..Default::default()
        }
    }

    pub fn validate(&self) -> Result<()> {
        if self.batches < 2 {
            return Err(Error::InvalidSimConfig(format!(
                "{} batches, need at least 2",
                self.batches
            )));
        }
        if self.measured_completions < self.batches {
            return Err(Error::InvalidSimConfig(format!(
                "{} measured completions cannot fill {} batches",
                self.measured_completions, self.batches
            )));
        }
        Ok(())
    }

    fn rng(&self) -> ChaCha8Rng {
        ChaCha8Rng::seed_from_u64(self.seed)
    }
}

/// Point estimate with a 95% confidence half-width.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct SimEstimate {
    pub mean: f64,
    pub half_width: f64,
    pub samples: u64,
}

impl SimEstimate {
    pub fn contains(&self, value: f64) -> bool {
        (value - self.mean).abs() <= self.half_width
    }

    pub fn lower(&self) -> f64 {
        self.mean - self.half_width
    }

    pub fn upper(&self) -> f64 {
        self.mean + self.half_width
    }
}

fn batch_estimate(batch_means: &[f64], samples: u64) -> SimEstimate {
    let n = batch_means.len() as f64;
    let mean = batch_means.iter().sum::<f64>() / n;
    let var = batch_means.iter().map(|b| (b - mean).powi(2)).sum::<f64>() / (n - 1.0);
    let t = StudentsT::new(0.0, 1.0, n - 1.0)
        .expect("at least two batches")
        .inverse_cdf(0.975);
    SimEstimate {
        mean,
        half_width: t * (var / n).sqrt(),
        samples,
    }
}

/// Splits `measured` completions into `batches` contiguous batches whose sizes
/// differ by at most one.
#[derive(Debug)]
struct Batcher {
    measured: u64,
    batches: u64,
    seen: u64,
    current: usize,
}

impl Batcher {
    fn new(sim: &SimConfig) -> Self {
        Batcher {
            measured: sim.measured_completions,
            batches: sim.batches,
            seen: 0,
            current: 0,
        }
    }

    fn end_of(&self, batch: usize) -> u64 {
        (batch as u64 + 1) * self.measured / self.batches
    }

    /// Counts one observation; returns the batch it belongs to and whether it
    /// closes that batch.
    fn push(&mut self) -> (usize, bool) {
        let batch = self.current;
        self.seen += 1;
        let closes = self.seen == self.end_of(batch);
        if closes {
            self.current += 1;
        }
        (batch, closes)
    }

    fn done(&self) -> bool {
        self.seen >= self.measured
    }
}

#[derive(Debug)]
struct Scheduled<E> {
    time: f64,
    seq: u64,
    event: E,
}

impl<E> PartialEq for Scheduled<E> {
    fn eq(&self, other: &Self) -> bool {
        self.cmp(other) == Ordering::Equal
    }
}

impl<E> Eq for Scheduled<E> {}

impl<E> PartialOrd for Scheduled<E> {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl<E> Ord for Scheduled<E> {
    // Reversed: BinaryHeap pops the earliest time, then the earliest insertion.
    fn cmp(&self, other: &Self) -> Ordering {
        other
            .time
            .total_cmp(&self.time)
            .then_with(|| other.seq.cmp(&self.seq))
    }
}

/// Future event list. Events at equal times pop in insertion order.
#[derive(Debug)]
pub struct EventQueue<E> {
    heap: BinaryHeap<Scheduled<E>>,
    next_seq: u64,
    now: f64,
}

impl<E> Default for EventQueue<E> {
    fn default() -> Self {
        EventQueue {
            heap: BinaryHeap::new(),
            next_seq: 0,
            now: 0.0,
        }
    }
}

impl<E> EventQueue<E> {
    pub fn new() -> Self {
        Self::default()
    }

    pub fn now(&self) -> f64 {
        self.now
    }

    /// Schedules `event` after `delay` seconds from now.
    pub fn schedule(&mut self, delay: f64, event: E) {
        debug_assert!(delay >= 0.0);
        let seq = self.next_seq;
        self.next_seq += 1;
        self.heap.push(Scheduled {
            time: self.now + delay,
            seq,
            event,
        });
    }

    pub fn pop(&mut self) -> Option<(f64, E)> {
        let next = self.heap.pop()?;
        self.now = next.time;
        Some((next.time, next.event))
    }

    pub fn len(&self) -> usize {
        self.heap.len()
    }

    pub fn is_empty(&self) -> bool {
        self.heap.is_empty()
    }
}

fn exp_sample<R: Rng + ?Sized>(rng: &mut R, mean: f64) -> f64 {
    let unit: f64 = rng.sample(Exp1);
    unit * mean
}

/// Draws one Coxian service time: run stage 1, then keep advancing with the
/// stage's advance probability until the request exits.
pub fn sample_coxian_service<R: Rng + ?Sized>(spec: &CoxianSpec, rng: &mut R) -> f64 {
    let mut total = 0.0;
    for (&mu, &advance) in spec.rates().iter().zip(spec.advance()) {
        total += exp_sample(rng, 1.0 / mu);
        if advance == 0.0 || (advance < 1.0 && !rng.random_bool(advance)) {
            break;
        }
    }
    total
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct RepairmanEstimate {
    /// Throughput, completions per second.
    pub x: SimEstimate,
    /// Bus residence time (queueing plus service), seconds.
    pub r: SimEstimate,
}

#[derive(Debug, Clone, Copy)]
enum BusEvent {
    ThinkDone(usize),
    ServiceDone,
}

/// Simulates the closed repairman network: exponential think times with mean
/// `Z`, one FIFO bus with exponential service of mean `D`.
pub fn simulate_repairman(cfg: &RepairmanConfig, sim: &SimConfig) -> Result<RepairmanEstimate> {
    cfg.validate()?;
    sim.validate()?;
    let mut rng = sim.rng();
    let mut events = EventQueue::new();
    for id in 0..cfg.p as usize {
        let think = exp_sample(&mut rng, cfg.z);
        events.schedule(think, BusEvent::ThinkDone(id));
    }

    let mut waiting: VecDeque<(usize, f64)> = VecDeque::new();
    let mut in_service: Option<(usize, f64)> = None;
    let mut completions = 0u64;
    let mut batcher = Batcher::new(sim);
    let mut batch_start = 0.0;
    let mut batch_count = 0u64;
    let mut batch_response = 0.0;
    let mut x_means = Vec::with_capacity(sim.batches as usize);
    let mut r_means = Vec::with_capacity(sim.batches as usize);

    while let Some((now, event)) = events.pop() {
        match event {
            BusEvent::ThinkDone(id) => {
                if in_service.is_none() {
                    in_service = Some((id, now));
                    events.schedule(exp_sample(&mut rng, cfg.d), BusEvent::ServiceDone);
                } else {
                    waiting.push_back((id, now));
                }
            }
            BusEvent::ServiceDone => {
                let (id, arrived) = in_service.take().expect("service completes only when busy");
                events.schedule(exp_sample(&mut rng, cfg.z), BusEvent::ThinkDone(id));
                if let Some(next) = waiting.pop_front() {
                    in_service = Some(next);
                    events.schedule(exp_sample(&mut rng, cfg.d), BusEvent::ServiceDone);
                }

                completions += 1;
                if completions <= sim.warmup_completions {
                    batch_start = now;
                    continue;
                }
                batch_count += 1;
                batch_response += now - arrived;
                let (_, closes) = batcher.push();
                if closes {
                    x_means.push(batch_count as f64 / (now - batch_start));
                    r_means.push(batch_response / batch_count as f64);
                    batch_start = now;
                    batch_count = 0;
                    batch_response = 0.0;
                }
                if batcher.done() {
                    break;
                }
            }
        }
    }

    let samples = sim.measured_completions;
    Ok(RepairmanEstimate {
        x: batch_estimate(&x_means, samples),
        r: batch_estimate(&r_means, samples),
    })
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct Mg1Estimate {
    /// Mean response time (wait plus service), seconds.
    pub r: SimEstimate,
}

/// Simulates an M/G/1 FIFO queue with Poisson arrivals at rate `lambda` and
/// Coxian service, one request in the server at a time.
///
/// Waiting times follow the Lindley recursion `W' = max(0, W + S − A)`, which
/// is the exact event sequence of a single FIFO server started empty.
pub fn simulate_mg1_coxian(lambda: f64, spec: &CoxianSpec, sim: &SimConfig) -> Result<Mg1Estimate> {
    if !(lambda.is_finite() && lambda > 0.0) {
        return Err(Error::out_of_range("lambda", lambda, "(0, inf)"));
    }
    let load = lambda * coxian_moments(spec).mean;
    if load >= 1.0 {
        return Err(Error::Unstable(load));
    }
    sim.validate()?;

    let mut rng = sim.rng();
    let mean_gap = 1.0 / lambda;
    let mut wait = 0.0;
    let mut batcher = Batcher::new(sim);
    let mut batch_sum = 0.0;
    let mut batch_count = 0u64;
    let mut r_means = Vec::with_capacity(sim.batches as usize);

    for n in 0.. {
        let service = sample_coxian_service(spec, &mut rng);
        let response = wait + service;
        let gap = exp_sample(&mut rng, mean_gap);
        wait = (wait + service - gap).max(0.0);

        if n < sim.warmup_completions {
            continue;
        }
        batch_sum += response;
        batch_count += 1;
        let (_, closes) = batcher.push();
        if closes {
            r_means.push(batch_sum / batch_count as f64);
            batch_sum = 0.0;
            batch_count = 0;
        }
        if batcher.done() {
            break;
        }
    }

    Ok(Mg1Estimate {
        r: batch_estimate(&r_means, sim.measured_completions),
    })
}

/// Runs `reps` independent replications with seeds `seed, seed + 1, …` on
/// separate threads. Results are returned in seed order.
pub fn replicate<T, F>(sim: &SimConfig, reps: u64, run: F) -> Vec<T>
where
    T: Send,
    F: Fn(&SimConfig) -> T + Sync,
{
    let configs: Vec<SimConfig> = (0..reps)
        .map(|i| SimConfig {
            seed: sim.seed.wrapping_add(i),
            ..*sim
        })
        .collect();
    std::thread::scope(|scope| {
        let handles: Vec<_> = configs.iter().map(|c| scope.spawn(|| run(c))).collect();
        handles
            .into_iter()
            .map(|h| h.join().expect("replication thread panicked"))
            .collect()
    })
}
