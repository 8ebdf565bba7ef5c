//! Wall-clock comparison of the closed form against the exact-solve path
//! for the distinguished cycle.

use std::hint::black_box;
use std::time::Instant;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};

use crate::closedform::{canonical_intervals, closed_form_xbar};
use crate::cycles::{check_even, distinguished_cycle};
use crate::decomp::xbar_of_tope;
use crate::error::{Error, Result};
use crate::sign::Tope;

pub const DEFAULT_SEED: u64 = 0x5eed_c0de;

/// Largest `t` for which the solve path runs by default.
pub const DEFAULT_SOLVE_CAP: usize = 128;

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct BenchRow {
    pub t: usize,
    pub rho: usize,
    pub closed_ns_min: u128,
    pub closed_ns_mean: u128,
    pub solve_ns_min: Option<u128>,
    pub solve_ns_mean: Option<u128>,
}

impl BenchRow {
    /// Best-of-reps ratio solve / closed form.
    pub fn speedup(&self) -> Option<f64> {
        self.solve_ns_min
            .map(|s| s as f64 / self.closed_ns_min.max(1) as f64)
    }

    /// `t,rho,closed_ns,solve_ns,speedup` with best-of-reps timings; the solve
    /// columns are empty above the solve cap.
    pub fn csv(&self) -> String {
        format!(
            "{},{},{},{},{}",
            self.t,
            self.rho,
            self.closed_ns_min,
            self.solve_ns_min.map(|v| v.to_string()).unwrap_or_default(),
            self.speedup().map(|v| format!("{v:.1}")).unwrap_or_default()
        )
    }
}

pub const CSV_HEADER: &str = "t,rho,closed_ns,solve_ns,speedup";

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct BenchConfig {
    pub reps: usize,
    pub seed: u64,
    pub solve_cap: usize,
}

impl Default for BenchConfig {
    fn default() -> Self {
        BenchConfig {
            reps: 5,
            seed: DEFAULT_SEED,
            solve_cap: DEFAULT_SOLVE_CAP,
        }
    }
}

/// A uniformly random nonempty subset of `[1,t]`.
pub fn random_negative_part<R: Rng + ?Sized>(t: usize, rng: &mut R) -> Vec<usize> {
    loop {
        let a: Vec<usize> = (1..=t).filter(|_| rng.gen::<bool>()).collect();
        if !a.is_empty() {
            return a;
        }
    }
}

fn time_min_mean(reps: usize, mut f: impl FnMut()) -> (u128, u128) {
    let mut min = u128::MAX;
    let mut total = 0;
    for _ in 0..reps {
        let start = Instant::now();
        f();
        let ns = start.elapsed().as_nanos();
        min = min.min(ns);
        total += ns;
    }
    (min, total / reps as u128)
}

/// Times one random negative part per `t`. Both paths are checked to agree
/// whenever the solve path runs.
pub fn run_bench(ts: &[usize], config: &BenchConfig) -> Result<Vec<BenchRow>> {
    if config.reps == 0 {
        return Err(Error::domain("reps must be positive"));
    }
    let mut rng = ChaCha8Rng::seed_from_u64(config.seed);
    let mut rows = Vec::with_capacity(ts.len());
    for &t in ts {
        check_even(t)?;
        let a = random_negative_part(t, &mut rng);
        let rho = canonical_intervals(&a, t)?.rho();
        let (closed_ns_min, closed_ns_mean) = time_min_mean(config.reps, || {
            let set = canonical_intervals(black_box(&a), t).expect("nonempty");
            black_box(closed_form_xbar(&set).expect("even t"));
        });
        let (solve_ns_min, solve_ns_mean) = if t <= config.solve_cap {
            let r = distinguished_cycle(t)?;
            let tope = Tope::from_negative_part(&a, t)?;
            let solved = xbar_of_tope(&tope, &r)?;
            let closed = closed_form_xbar(&canonical_intervals(&a, t)?)?;
            if solved != closed {
                return Err(Error::OracleContradiction(format!(
                    "closed form {closed} differs from solve {solved} at t = {t}"
                )));
            }
            let (min, mean) = time_min_mean(config.reps, || {
                let tope = Tope::from_negative_part(black_box(&a), t).expect("in range");
                black_box(xbar_of_tope(&tope, &r).expect("even t"));
            });
            (Some(min), Some(mean))
        } else {
            (None, None)
        };
        rows.push(BenchRow {
            t,
            rho,
            closed_ns_min,
            closed_ns_mean,
            solve_ns_min,
            solve_ns_mean,
        });
    }
    Ok(rows)
}

/// Least-squares slope of `log(closed_ns)` against `log(t * rho)`.
pub fn closed_form_slope(rows: &[BenchRow]) -> Option<f64> {
    if rows.len() < 2 {
        return None;
    }
    let pts: Vec<(f64, f64)> = rows
        .iter()
        .map(|r| {
            (
                ((r.t * r.rho) as f64).ln(),
                (r.closed_ns_min.max(1) as f64).ln(),
            )
        })
        .collect();
    let n = pts.len() as f64;
    let mx = pts.iter().map(|p| p.0).sum::<f64>() / n;
    let my = pts.iter().map(|p| p.1).sum::<f64>() / n;
    let sxx: f64 = pts.iter().map(|p| (p.0 - mx).powi(2)).sum();
    let sxy: f64 = pts.iter().map(|p| (p.0 - mx) * (p.1 - my)).sum();
    (sxx > 0.0).then(|| sxy / sxx)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn small_bench_runs_and_agrees() {
        let rows = run_bench(&[4, 8, 16], &BenchConfig { reps: 2, ..Default::default() }).unwrap();
        assert_eq!(rows.len(), 3);
        assert!(rows.iter().all(|r| r.solve_ns_min.is_some()));
        assert_eq!(rows[0].csv().split(',').count(), 5);
    }

    #[test]
    fn solve_column_respects_cap() {
        let cfg = BenchConfig { reps: 1, solve_cap: 8, ..Default::default() };
        let rows = run_bench(&[8, 32], &cfg).unwrap();
        assert!(rows[0].solve_ns_min.is_some());
        assert!(rows[1].solve_ns_min.is_none());
        assert!(rows[1].csv().ends_with(",,"));
    }

    #[test]
    fn odd_t_rejected() {
        assert!(matches!(run_bench(&[5], &BenchConfig::default()), Err(Error::Singular(_))));
    }
}
