//! Seeded Monte Carlo harness for the decision procedures.
//!
//! Each trial draws two groups of `n` unit-variance normal observations
//! whose means differ by `mean_diff_over_sigma`, runs the pooled two-sample
//! t-test and tallies the decision of the configured procedure.
//!
//! Trial `i` draws from ChaCha8 stream `i` under the configured seed, so a
//! report depends only on the configuration and never on how trials are
//! spread across worker threads. Tallies are integer counts merged by
//! addition.

use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use rand_distr::{Distribution, StandardNormal};
use rayon::prelude::*;
use serde::{Deserialize, Serialize};
use std::collections::BTreeMap;

use crate::decisions::{Decision, DecisionRegions, Procedure};
use crate::distributions::NullDistribution;
use crate::error::{check_alpha, domain, Error, Result};
use crate::statistic::two_sample_t_raw;

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct SimulationConfig {
    pub n_per_group: u64,
    /// `(μ_A - μ_B)/σ`, the true standardized `θ - θ₀`.
    pub mean_diff_over_sigma: f64,
    pub alpha: f64,
    pub trials: u64,
    pub seed: u64,
    pub procedure: Procedure,
}

impl SimulationConfig {
    pub fn validate(&self) -> Result<()> {
        check_alpha(self.alpha)?;
        if self.n_per_group < 2 {
            return Err(domain(format!(
                "n_per_group must be at least 2, got {}",
                self.n_per_group
            )));
        }
        if self.trials < 1 {
            return Err(domain("trials must be at least 1"));
        }
        if !self.mean_diff_over_sigma.is_finite() {
            return Err(domain("mean_diff_over_sigma must be finite"));
        }
        let draws = self
            .n_per_group
            .checked_mul(2)
            .and_then(|per_trial| per_trial.checked_mul(self.trials));
        if draws.is_none() || usize::try_from(self.n_per_group).is_err() {
            return Err(domain(format!(
                "{} trials of 2 x {} observations overflow the draw counter",
                self.trials, self.n_per_group
            )));
        }
        Ok(())
    }

    fn null(&self) -> NullDistribution {
        NullDistribution::StudentT {
            df: (2 * self.n_per_group - 2) as f64,
        }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct SimulationReport {
    pub config: SimulationConfig,
    /// Raw tallies by decision index.
    pub counts: BTreeMap<u8, u64>,
    pub freq: BTreeMap<u8, f64>,
    pub mc_se: BTreeMap<u8, f64>,
    pub wrong_rejection_rate: f64,
    pub wrong_rejection_mc_se: f64,
    pub seed: u64,
}

impl SimulationReport {
    pub fn freq_of(&self, d: Decision) -> f64 {
        self.freq[&d.index()]
    }

    /// Frequency of any decision in `ds`, with its Monte Carlo standard error.
    pub fn freq_of_any(&self, ds: &[Decision]) -> (f64, f64) {
        let hits: u64 = ds.iter().map(|d| self.counts[&d.index()]).sum();
        proportion(hits, self.config.trials)
    }
}

/// `(p̂, √(p̂(1 - p̂)/trials))`.
pub fn proportion(hits: u64, trials: u64) -> (f64, f64) {
    let p = hits as f64 / trials as f64;
    (p, (p * (1.0 - p) / trials as f64).sqrt())
}

type Tally = [u64; 5];

fn run_trial(cfg: &SimulationConfig, regions: &DecisionRegions, base: &ChaCha8Rng, trial: u64, a: &mut Vec<f64>, b: &mut Vec<f64>) -> Result<Decision> {
    let mut rng = base.clone();
    rng.set_stream(trial);
    let n = cfg.n_per_group as usize;
    a.clear();
    b.clear();
    a.extend((0..n).map(|_| {
        let z: f64 = StandardNormal.sample(&mut rng);
        z + cfg.mean_diff_over_sigma
    }));
    b.extend((0..n).map(|_| -> f64 { StandardNormal.sample(&mut rng) }));
    let r = two_sample_t_raw(a, b, 0.0)?;
    Ok(cfg.procedure.decide(regions, r.t_stat))
}

fn tally(cfg: &SimulationConfig) -> Result<Tally> {
    let regions = DecisionRegions::new(cfg.null(), cfg.alpha)?;
    let base = ChaCha8Rng::seed_from_u64(cfg.seed);
    let n = cfg.n_per_group as usize;
    (0..cfg.trials)
        .into_par_iter()
        .try_fold(
            || ([0u64; 5], Vec::with_capacity(n), Vec::with_capacity(n)),
            |(mut counts, mut a, mut b), trial| {
                let d = run_trial(cfg, &regions, &base, trial, &mut a, &mut b)?;
                counts[usize::from(d.index()) - 1] += 1;
                Ok::<_, Error>((counts, a, b))
            },
        )
        .map(|acc| acc.map(|(counts, _, _)| counts))
        .try_reduce(
            || [0u64; 5],
            |mut x, y| {
                for (xi, yi) in x.iter_mut().zip(y) {
                    *xi += yi;
                }
                Ok(x)
            },
        )
}

fn build_report(cfg: &SimulationConfig, counts: Tally) -> SimulationReport {
    let mut report = SimulationReport {
        config: *cfg,
        counts: BTreeMap::new(),
        freq: BTreeMap::new(),
        mc_se: BTreeMap::new(),
        wrong_rejection_rate: 0.0,
        wrong_rejection_mc_se: 0.0,
        seed: cfg.seed,
    };
    let mut wrong = 0;
    for d in Decision::ALL {
        let c = counts[usize::from(d.index()) - 1];
        let (p, se) = proportion(c, cfg.trials);
        report.counts.insert(d.index(), c);
        report.freq.insert(d.index(), p);
        report.mc_se.insert(d.index(), se);
        if cfg.procedure.is_wrong_rejection(d, cfg.mean_diff_over_sigma) {
            wrong += c;
        }
    }
    let (rate, se) = proportion(wrong, cfg.trials);
    report.wrong_rejection_rate = rate;
    report.wrong_rejection_mc_se = se;
    report
}

/// Runs the simulation on rayon's global pool.
pub fn run_simulation(cfg: &SimulationConfig) -> Result<SimulationReport> {
    cfg.validate()?;
    Ok(build_report(cfg, tally(cfg)?))
}

/// Runs the simulation on a dedicated pool of `workers` threads.
pub fn run_simulation_with_workers(cfg: &SimulationConfig, workers: usize) -> Result<SimulationReport> {
    cfg.validate()?;
    if workers == 0 {
        return Err(domain("workers must be at least 1"));
    }
    let pool = rayon::ThreadPoolBuilder::new()
        .num_threads(workers)
        .build()
        .map_err(|e| domain(format!("cannot start {workers} workers: {e}")))?;
    let counts = pool.install(|| tally(cfg))?;
    Ok(build_report(cfg, counts))
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct GridPoint {
    pub effect: f64,
    pub wrong_rejection_rate: f64,
    pub mc_se: f64,
}

/// Wrong-rejection rate of `template` at each standardized effect.
pub fn wrong_rejection_grid(effects: &[f64], template: &SimulationConfig) -> Result<Vec<GridPoint>> {
    effects
        .iter()
        .map(|&effect| {
            let cfg = SimulationConfig {
                mean_diff_over_sigma: effect,
                ..*template
            };
            let r = run_simulation(&cfg)?;
            Ok(GridPoint {
                effect,
                wrong_rejection_rate: r.wrong_rejection_rate,
                mc_se: r.wrong_rejection_mc_se,
            })
        })
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;

    fn cfg() -> SimulationConfig {
        SimulationConfig {
            n_per_group: 10,
            mean_diff_over_sigma: 0.0,
            alpha: 0.05,
            trials: 500,
            seed: 7,
            procedure: Procedure::FiveDecision,
        }
    }

    #[test]
    fn invalid_configs() {
        assert!(run_simulation(&SimulationConfig { n_per_group: 1, ..cfg() }).is_err());
        assert!(run_simulation(&SimulationConfig { trials: 0, ..cfg() }).is_err());
        assert!(run_simulation(&SimulationConfig { alpha: 0.6, ..cfg() }).is_err());
        assert!(run_simulation(&SimulationConfig {
            mean_diff_over_sigma: f64::NAN,
            ..cfg()
        })
        .is_err());
        assert!(SimulationConfig {
            n_per_group: u64::MAX / 2,
            trials: 4,
            ..cfg()
        }
        .validate()
        .is_err());
        assert!(run_simulation_with_workers(&cfg(), 0).is_err());
    }

    #[test]
    fn single_trial() {
        let r = run_simulation(&SimulationConfig { trials: 1, ..cfg() }).unwrap();
        let ones = r.freq.values().filter(|&&f| f == 1.0).count();
        let zeros = r.freq.values().filter(|&&f| f == 0.0).count();
        assert_eq!((ones, zeros), (1, 4));
        assert!(r.mc_se.values().all(|&s| s == 0.0));
    }

    #[test]
    fn counts_add_up() {
        let r = run_simulation(&cfg()).unwrap();
        assert_eq!(r.counts.values().sum::<u64>(), 500);
        assert!((r.freq.values().sum::<f64>() - 1.0).abs() < 1e-12);
        assert_eq!(r.seed, 7);
    }

    #[test]
    fn restricted_outcomes() {
        let kaiser = run_simulation(&SimulationConfig {
            procedure: Procedure::Kaiser,
            mean_diff_over_sigma: 0.8,
            ..cfg()
        })
        .unwrap();
        assert_eq!(kaiser.counts[&2] + kaiser.counts[&4], 0);
        let jt = run_simulation(&SimulationConfig {
            procedure: Procedure::JonesTukey,
            mean_diff_over_sigma: 0.8,
            ..cfg()
        })
        .unwrap();
        assert_eq!(jt.counts[&1] + jt.counts[&5], 0);
    }
}
