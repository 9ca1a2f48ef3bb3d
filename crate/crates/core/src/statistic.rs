//! Realized test statistics and confidence intervals.
//!
//! The two-sample t-test uses the pooled variance
//! `s² = ((n_a - 1) s_a² + (n_b - 1) s_b²) / (n_a + n_b - 2)` with
//! `SE = s √(1/n_a + 1/n_b)`; for equal group sizes this is
//! `s² = (s_a² + s_b²) / 2` and `t = √(n/2) (x̄_a - x̄_b) / s`.

use serde::{Deserialize, Serialize};

use crate::distributions::{self, NullDistribution};
use crate::error::{check_probability, domain, Error, Result};

/// Sample size, mean and standard deviation of one group.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct GroupSummary {
    pub n: u64,
    pub mean: f64,
    pub sd: f64,
}

impl GroupSummary {
    pub fn new(n: u64, mean: f64, sd: f64) -> Result<Self> {
        let g = GroupSummary { n, mean, sd };
        g.validate()?;
        Ok(g)
    }

    pub fn validate(&self) -> Result<()> {
        if self.n < 2 {
            return Err(domain(format!("group size must be at least 2, got {}", self.n)));
        }
        if !self.mean.is_finite() {
            return Err(domain(format!("group mean must be finite, got {}", self.mean)));
        }
        if !(self.sd.is_finite() && self.sd > 0.0) {
            return Err(domain(format!(
                "group standard deviation must be positive, got {}",
                self.sd
            )));
        }
        Ok(())
    }

    /// Summary of raw observations, with the `n - 1` variance denominator.
    ///
    /// A constant sample yields `sd = 0`, which `validate` rejects; the
    /// two-sample test accepts it as long as the other group varies.
    pub fn from_samples(xs: &[f64]) -> Result<Self> {
        if xs.len() < 2 {
            return Err(domain(format!(
                "each group needs at least 2 observations, got {}",
                xs.len()
            )));
        }
        if let Some(bad) = xs.iter().find(|x| !x.is_finite()) {
            return Err(domain(format!("observations must be finite, got {bad}")));
        }
        let n = xs.len() as f64;
        let mean = xs.iter().sum::<f64>() / n;
        let ss: f64 = xs.iter().map(|x| (x - mean) * (x - mean)).sum();
        Ok(GroupSummary {
            n: xs.len() as u64,
            mean,
            sd: (ss / (n - 1.0)).sqrt(),
        })
    }
}

/// A realized statistic together with everything needed to decide.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct TestResult {
    pub t_stat: f64,
    pub null: NullDistribution,
    pub p_two_sided: f64,
    /// Point estimate θ̂.
    pub estimate: f64,
    /// Standard error of θ̂.
    pub se: f64,
    /// Reference value θ₀ the statistic was computed against.
    pub theta0: f64,
}

impl TestResult {
    /// Builds a result from `(θ̂, SE, θ₀)` and the null distribution.
    pub fn from_estimate(estimate: f64, se: f64, theta0: f64, null: NullDistribution) -> Result<Self> {
        null.validate()?;
        if !(se.is_finite() && se > 0.0) {
            return Err(domain(format!("standard error must be positive, got {se}")));
        }
        if !estimate.is_finite() || !theta0.is_finite() {
            return Err(domain("estimate and theta0 must be finite"));
        }
        let t_stat = (estimate - theta0) / se;
        let p_two_sided = (2.0 * distributions::sf(&null, t_stat.abs())?).min(1.0);
        Ok(TestResult {
            t_stat,
            null,
            p_two_sided,
            estimate,
            se,
            theta0,
        })
    }

    pub fn confidence_interval(&self, level: f64) -> Result<(f64, f64)> {
        confidence_interval(self, level)
    }

    /// Interval `θ̂ ± q·SE` with `q` the upper `tail` quantile; `tail = 0.5`
    /// collapses to the point estimate.
    pub(crate) fn interval_for_tail(&self, tail: f64) -> Result<(f64, f64)> {
        let q = distributions::upper_quantile(&self.null, tail)?;
        Ok((self.estimate - q * self.se, self.estimate + q * self.se))
    }
}

fn pooled(a: &GroupSummary, b: &GroupSummary, theta0: f64) -> Result<TestResult> {
    let total = a.n + b.n;
    if total <= 2 {
        return Err(Error::Degenerate(format!(
            "n_a + n_b - 2 must be positive, got {}",
            total as i64 - 2
        )));
    }
    let df = (total - 2) as f64;
    let (na, nb) = (a.n as f64, b.n as f64);
    let var = ((na - 1.0) * a.sd * a.sd + (nb - 1.0) * b.sd * b.sd) / df;
    if !(var > 0.0) {
        return Err(Error::Degenerate("both groups have zero variance".into()));
    }
    let se = var.sqrt() * (1.0 / na + 1.0 / nb).sqrt();
    TestResult::from_estimate(a.mean - b.mean, se, theta0, NullDistribution::StudentT { df })
}

/// Pooled-variance two-sample t-test of `θ = μ_a - μ_b` against `θ₀`.
pub fn two_sample_t(a: &GroupSummary, b: &GroupSummary, theta0: f64) -> Result<TestResult> {
    a.validate()?;
    b.validate()?;
    pooled(a, b, theta0)
}

/// Same test computed from raw observations.
pub fn two_sample_t_raw(xs_a: &[f64], xs_b: &[f64], theta0: f64) -> Result<TestResult> {
    let a = GroupSummary::from_samples(xs_a)?;
    let b = GroupSummary::from_samples(xs_b)?;
    pooled(&a, &b, theta0)
}

/// Wald statistic `(θ̂ - θ₀)/SE` with a standard normal null.
pub fn wald(estimate: f64, se: f64, theta0: f64) -> Result<TestResult> {
    TestResult::from_estimate(estimate, se, theta0, NullDistribution::StandardNormal)
}

/// Symmetric interval `θ̂ ± q·SE` with `q = F⁻¹((1 + level)/2)`.
pub fn confidence_interval(r: &TestResult, level: f64) -> Result<(f64, f64)> {
    check_probability("confidence level", level)?;
    r.interval_for_tail(0.5 * (1.0 - level))
}
