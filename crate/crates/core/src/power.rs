//! Asymptotic (Wald) power, sample sizes and the sample-size reduction
//! gained by targeting a strict rather than a non-strict inequality.
//!
//! With `z_p = Φ⁻¹(p)` and `effect = (θ - θ₀)/SE(θ̂)`:
//!
//! * `ψ₁ = Φ(z_{α/2} - effect)`, reject `H1` (decision 1)
//! * `ψ₂ = Φ(z_α - effect)`, reject `H2` (decisions 1 or 2)
//! * `ψ₄ = Φ(z_α + effect)`, reject `H4` (decisions 4 or 5)
//! * `ψ₅ = Φ(z_{α/2} + effect)`, reject `H5` (decision 5)
//!
//! and for `SE(θ̂) = τ/√n` the sample size reaching power `ψ` is
//! `n = (z_{1-α/2} + z_ψ)² τ² / δ²` for a non-strict inequality and
//! `n = (z_{1-α} + z_ψ)² τ² / δ²` for a strict one.

use serde::{Deserialize, Serialize};

use crate::decisions::Hypothesis;
use crate::distributions::{cdf, quantile, upper_quantile, NullDistribution};
use crate::error::{check_alpha, check_probability, domain, Error, Result};

const NORMAL: NullDistribution = NullDistribution::StandardNormal;

/// Significance levels of the default reduction table.
pub const TABLE_ALPHAS: [f64; 4] = [0.05, 0.01, 0.005, 0.001];
/// Target powers of the default reduction table.
pub const TABLE_POWERS: [f64; 5] = [0.5, 0.8, 0.9, 0.95, 0.99];

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct PowerSpec {
    pub alpha: f64,
    /// Standardized distance `(θ - θ₀)/SE(θ̂)`.
    pub effect: f64,
    /// Hypothesis whose rejection is sought; one of `H1`, `H2`, `H4`, `H5`.
    pub target: Hypothesis,
}

impl PowerSpec {
    /// A note when the effect lies on the side where the target is true,
    /// in which case the returned probability is a wrong-rejection rate.
    pub fn warning(&self) -> Option<String> {
        if self.target.holds(self.effect) {
            Some(format!(
                "{} holds for effect {}; the probability is that of a wrong rejection",
                self.target, self.effect
            ))
        } else {
            None
        }
    }
}

/// Minus the normal upper quantile, `z_tail` for `tail <= 0.5`.
fn z_lower(tail: f64) -> Result<f64> {
    Ok(-upper_quantile(&NORMAL, tail)?)
}

/// Probability that the targeted rejection occurs under a normal statistic.
pub fn power_wald(spec: &PowerSpec) -> Result<f64> {
    check_alpha(spec.alpha)?;
    if !spec.effect.is_finite() {
        return Err(domain(format!("effect must be finite, got {}", spec.effect)));
    }
    let z_half = z_lower(0.5 * spec.alpha)?;
    let z_full = z_lower(spec.alpha)?;
    let arg = match spec.target {
        Hypothesis::H1 => z_half - spec.effect,
        Hypothesis::H2 => z_full - spec.effect,
        Hypothesis::H4 => z_full + spec.effect,
        Hypothesis::H5 => z_half + spec.effect,
        Hypothesis::H3 => {
            return Err(domain("power is defined for H1, H2, H4 and H5 only"));
        }
    };
    cdf(&NORMAL, arg)
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct SampleSizeInputs {
    pub alpha: f64,
    /// Target power ψ.
    pub psi: f64,
    /// `|θ - θ₀|` in outcome units.
    pub delta: f64,
    /// Standard-error scale: `SE(θ̂) = τ/√n`.
    pub tau: f64,
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct SampleSizeResult {
    pub n_exact: f64,
    /// `ceil(n_exact)`.
    pub n: u64,
}

/// Sample size to reject a non-strict (`strict = false`: `H1`/`H5`) or a
/// strict (`strict = true`: `H2`/`H4`) inequality with power `ψ`.
pub fn sample_size(inputs: &SampleSizeInputs, strict: bool) -> Result<SampleSizeResult> {
    check_alpha(inputs.alpha)?;
    check_probability("power", inputs.psi)?;
    if !(inputs.tau.is_finite() && inputs.tau > 0.0) {
        return Err(domain(format!("tau must be positive, got {}", inputs.tau)));
    }
    if !inputs.delta.is_finite() {
        return Err(domain(format!("delta must be finite, got {}", inputs.delta)));
    }
    if inputs.delta == 0.0 {
        return Err(Error::Infeasible("no sample size detects delta = 0".into()));
    }
    let size = if strict { inputs.alpha } else { 0.5 * inputs.alpha };
    if inputs.psi <= size {
        return Err(Error::Infeasible(format!(
            "target power {} does not exceed the one-sided size {size}",
            inputs.psi
        )));
    }
    let z = upper_quantile(&NORMAL, size)? + quantile(&NORMAL, inputs.psi)?;
    let n_exact = z * z * inputs.tau * inputs.tau / (inputs.delta * inputs.delta);
    let ceiled = n_exact.ceil();
    if !(ceiled.is_finite() && ceiled < u64::MAX as f64) {
        return Err(Error::Infeasible(format!("sample size {n_exact} is not representable")));
    }
    Ok(SampleSizeResult {
        n_exact,
        n: ceiled as u64,
    })
}

/// Relative reduction
/// `((z_{1-α/2} + z_ψ)² - (z_{1-α} + z_ψ)²) / (z_{1-α/2} + z_ψ)²`.
pub fn reduction(alpha: f64, psi: f64) -> Result<f64> {
    check_alpha(alpha)?;
    check_probability("power", psi)?;
    if psi <= alpha {
        return Err(Error::Infeasible(format!(
            "target power {psi} does not exceed alpha {alpha}"
        )));
    }
    let z_psi = quantile(&NORMAL, psi)?;
    let large = upper_quantile(&NORMAL, 0.5 * alpha)? + z_psi;
    let strict = upper_quantile(&NORMAL, alpha)? + z_psi;
    Ok((large * large - strict * strict) / (large * large))
}

/// Rows indexed by `alphas`, columns by `psis`.
pub fn reduction_table(alphas: &[f64], psis: &[f64]) -> Result<Vec<Vec<f64>>> {
    alphas
        .iter()
        .map(|&a| psis.iter().map(|&p| reduction(a, p)).collect())
        .collect()
}

/// Half-up rounding of a fraction to whole percent.
pub fn whole_percent(fraction: f64) -> i64 {
    (fraction * 100.0 + 0.5).floor() as i64
}
