//! Null distributions of the test statistic: the standard normal (Wald
//! tests) and Student's t (t-tests).
//!
//! Every routine works from the upper tail `sf(t) = 1 - cdf(t)` for
//! `t >= 0` and reflects, so that `quantile(p) == -quantile(1 - p)` holds
//! bit-for-bit whenever `1 - p` is exact.

pub mod special;

use serde::{Deserialize, Serialize};
use std::f64::consts::{FRAC_1_SQRT_2, PI};
use std::fmt;

use crate::error::{check_probability, domain, Result};

/// Distribution of the test statistic when `θ = θ₀`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum NullDistribution {
    StandardNormal,
    StudentT { df: f64 },
}

impl NullDistribution {
    /// Student's t with `df` degrees of freedom; `df` may be fractional.
    pub fn student_t(df: f64) -> Result<Self> {
        let d = NullDistribution::StudentT { df };
        d.validate()?;
        Ok(d)
    }

    pub fn validate(&self) -> Result<()> {
        match *self {
            NullDistribution::StandardNormal => Ok(()),
            NullDistribution::StudentT { df } if df.is_finite() && df > 0.0 => Ok(()),
            NullDistribution::StudentT { df } => Err(domain(format!(
                "degrees of freedom must be positive and finite, got {df}"
            ))),
        }
    }

    /// Degrees of freedom, `None` for the normal.
    pub fn df(&self) -> Option<f64> {
        match *self {
            NullDistribution::StandardNormal => None,
            NullDistribution::StudentT { df } => Some(df),
        }
    }

    pub fn cdf(&self, t: f64) -> Result<f64> {
        cdf(self, t)
    }

    pub fn quantile(&self, p: f64) -> Result<f64> {
        quantile(self, p)
    }

    pub fn density(&self, t: f64) -> Result<f64> {
        density(self, t)
    }
}

impl fmt::Display for NullDistribution {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            NullDistribution::StandardNormal => write!(f, "N(0, 1)"),
            NullDistribution::StudentT { df } => write!(f, "t({df})"),
        }
    }
}

fn check_finite(t: f64) -> Result<()> {
    if t.is_finite() {
        Ok(())
    } else {
        Err(domain(format!("statistic must be finite, got {t}")))
    }
}

/// Upper tail `Pr{T > t}` for `t >= 0`. No validation.
fn upper_tail(d: &NullDistribution, t: f64) -> f64 {
    match *d {
        NullDistribution::StandardNormal => 0.5 * special::erfc(t * FRAC_1_SQRT_2),
        NullDistribution::StudentT { df } => {
            if t == 0.0 {
                return 0.5;
            }
            // x = df / (df + t²) and its complement, each formed without cancellation.
            let t2 = t * t;
            let (x, y) = if t2 < df {
                let s = t2 / df;
                (1.0 / (1.0 + s), s / (1.0 + s))
            } else {
                let r = df / t2;
                (r / (1.0 + r), 1.0 / (1.0 + r))
            };
            0.5 * special::reg_inc_beta(0.5 * df, 0.5, x, y)
        }
    }
}

fn pdf(d: &NullDistribution, t: f64) -> f64 {
    match *d {
        NullDistribution::StandardNormal => (-0.5 * t * t).exp() / (2.0 * PI).sqrt(),
        NullDistribution::StudentT { df } => (-special::ln_beta(0.5 * df, 0.5)
            - 0.5 * df.ln()
            - 0.5 * (df + 1.0) * (t * t / df).ln_1p())
        .exp(),
    }
}

/// `Pr{T <= t}` under the null.
pub fn cdf(d: &NullDistribution, t: f64) -> Result<f64> {
    d.validate()?;
    check_finite(t)?;
    Ok(if t >= 0.0 {
        1.0 - upper_tail(d, t)
    } else {
        upper_tail(d, -t)
    })
}

/// `Pr{T > t}` under the null, accurate in the upper tail.
pub fn sf(d: &NullDistribution, t: f64) -> Result<f64> {
    d.validate()?;
    check_finite(t)?;
    Ok(if t >= 0.0 {
        upper_tail(d, t)
    } else {
        1.0 - upper_tail(d, -t)
    })
}

pub fn density(d: &NullDistribution, t: f64) -> Result<f64> {
    d.validate()?;
    check_finite(t)?;
    Ok(pdf(d, t))
}

/// `F⁻¹(p)`: the value `q` with `cdf(q) = p`.
pub fn quantile(d: &NullDistribution, p: f64) -> Result<f64> {
    d.validate()?;
    check_probability("p", p)?;
    Ok(if p > 0.5 {
        solve_upper(d, 1.0 - p)
    } else if p < 0.5 {
        -solve_upper(d, p)
    } else {
        0.0
    })
}

/// The value `q >= 0` with `Pr{T > q} = tail`, for `0 < tail <= 0.5`.
///
/// This is `quantile(1 - tail)` without rounding `1 - tail`; decision
/// boundaries are built from it so that they are exactly symmetric.
pub fn upper_quantile(d: &NullDistribution, tail: f64) -> Result<f64> {
    d.validate()?;
    if !(tail > 0.0 && tail <= 0.5) {
        return Err(domain(format!("tail probability must lie in (0, 0.5], got {tail}")));
    }
    Ok(solve_upper(d, tail))
}

/// Hastings' rational approximation to the normal upper quantile (|error| < 4.5e-4).
fn normal_guess(u: f64) -> f64 {
    let t = (-2.0 * u.ln()).sqrt();
    t - (2.515_517 + 0.802_853 * t + 0.010_328 * t * t)
        / (1.0 + 1.432_788 * t + 0.189_269 * t * t + 0.001_308 * t * t * t)
}

fn initial_guess(d: &NullDistribution, u: f64) -> f64 {
    let z = normal_guess(u);
    match *d {
        NullDistribution::StandardNormal => z,
        NullDistribution::StudentT { df } => {
            // Cornish-Fisher expansion in 1/df
            let z2 = z * z;
            z + z * (z2 + 1.0) / (4.0 * df)
                + z * (5.0 * z2 * z2 + 16.0 * z2 + 3.0) / (96.0 * df * df)
        }
    }
}

/// Safeguarded Newton iteration on the upper tail, bracketed by bisection.
fn solve_upper(d: &NullDistribution, u: f64) -> f64 {
    if u == 0.5 {
        return 0.0;
    }
    let guess = initial_guess(d, u);
    let mut lo = 0.0_f64;
    let mut hi = (2.0 * guess).max(1.0);
    while upper_tail(d, hi) > u {
        lo = hi;
        hi *= 2.0;
        if !hi.is_finite() {
            return f64::MAX;
        }
    }
    let mut y = if guess > lo && guess < hi {
        guess
    } else {
        0.5 * (lo + hi)
    };
    for _ in 0..500 {
        let f = upper_tail(d, y) - u;
        if f == 0.0 {
            return y;
        }
        if f > 0.0 {
            lo = y;
        } else {
            hi = y;
        }
        let slope = pdf(d, y);
        let mut next = if slope > 0.0 { y + f / slope } else { f64::NAN };
        if !(next > lo && next < hi) {
            next = 0.5 * (lo + hi);
        }
        if (next - y).abs() <= 2.0 * f64::EPSILON * y.abs() || hi - lo <= 2.0 * f64::EPSILON * hi
        {
            return next;
        }
        y = next;
    }
    y
}
