//! Reference computations used as oracles by the integration tests.
//!
//! Nothing here calls into the crate's numerical routines: the densities
//! are written out from their definitions, the gamma function goes through
//! a shifted Stirling series, and probabilities come from adaptive
//! Simpson quadrature.

#![allow(dead_code)]

use std::f64::consts::PI;

use fivedec::NullDistribution;

/// `ln Γ(x)` by upward recurrence to `x >= 40` and a Stirling series.
pub fn ln_gamma(x: f64) -> f64 {
    let mut shift = 0.0;
    let mut z = x;
    while z < 40.0 {
        shift += z.ln();
        z += 1.0;
    }
    let r = 1.0 / z;
    let r2 = r * r;
    let series = r
        * (1.0 / 12.0
            - r2 * (1.0 / 360.0
                - r2 * (1.0 / 1260.0 - r2 * (1.0 / 1680.0 - r2 * (1.0 / 1188.0 - r2 * 691.0 / 360360.0)))));
    (z - 0.5) * z.ln() - z + 0.5 * (2.0 * PI).ln() + series - shift
}

pub fn normal_density(t: f64) -> f64 {
    (-t * t / 2.0).exp() / (2.0 * PI).sqrt()
}

pub fn t_density(df: f64, t: f64) -> f64 {
    let log_norm = ln_gamma((df + 1.0) / 2.0) - ln_gamma(df / 2.0) - 0.5 * (df * PI).ln();
    (log_norm - (df + 1.0) / 2.0 * (1.0 + t * t / df).ln()).exp()
}

pub fn density(d: &NullDistribution, t: f64) -> f64 {
    match *d {
        NullDistribution::StandardNormal => normal_density(t),
        NullDistribution::StudentT { df } => t_density(df, t),
    }
}

fn simpson_step<F: Fn(f64) -> f64>(
    f: &F,
    a: f64,
    b: f64,
    fa: f64,
    fm: f64,
    fb: f64,
    whole: f64,
    tol: f64,
    depth: u32,
) -> f64 {
    let m = 0.5 * (a + b);
    let lm = 0.5 * (a + m);
    let rm = 0.5 * (m + b);
    let flm = f(lm);
    let frm = f(rm);
    let left = (m - a) / 6.0 * (fa + 4.0 * flm + fm);
    let right = (b - m) / 6.0 * (fm + 4.0 * frm + fb);
    let delta = left + right - whole;
    if depth == 0 || delta.abs() <= 15.0 * tol {
        return left + right + delta / 15.0;
    }
    simpson_step(f, a, m, fa, flm, fm, left, 0.5 * tol, depth - 1)
        + simpson_step(f, m, b, fm, frm, fb, right, 0.5 * tol, depth - 1)
}

/// Adaptive Simpson quadrature of `f` over `[a, b]`.
pub fn integrate<F: Fn(f64) -> f64>(f: F, a: f64, b: f64, tol: f64) -> f64 {
    let fa = f(a);
    let fb = f(b);
    let m = 0.5 * (a + b);
    let fm = f(m);
    let whole = (b - a) / 6.0 * (fa + 4.0 * fm + fb);
    simpson_step(&f, a, b, fa, fm, fb, whole, tol, 50)
}

/// `Pr{T <= t}` as `1/2 ± ∫₀^|t| density`.
pub fn cdf(d: &NullDistribution, t: f64) -> f64 {
    let area = integrate(|x| density(d, x), 0.0, t.abs(), 1e-14);
    if t >= 0.0 {
        0.5 + area
    } else {
        0.5 - area
    }
}

/// Integral of `f` over the whole real line, through `x = u / (1 - u²)`.
pub fn integrate_line<F: Fn(f64) -> f64>(f: F, tol: f64) -> f64 {
    let g = |u: f64| {
        let w = 1.0 - u * u;
        if w <= 0.0 {
            return 0.0;
        }
        f(u / w) * (1.0 + u * u) / (w * w)
    };
    // split at 0 so the symmetric halves are resolved separately
    integrate(g, -1.0, 0.0, tol / 2.0) + integrate(g, 0.0, 1.0, tol / 2.0)
}

/// Pooled two-sample t statistic written out long-hand from raw data.
pub fn pooled_t_longhand(a: &[f64], b: &[f64]) -> (f64, f64) {
    let mean = |xs: &[f64]| xs.iter().sum::<f64>() / xs.len() as f64;
    let (ma, mb) = (mean(a), mean(b));
    let ssa: f64 = a.iter().map(|x| (x - ma).powi(2)).sum();
    let ssb: f64 = b.iter().map(|x| (x - mb).powi(2)).sum();
    let df = (a.len() + b.len() - 2) as f64;
    let s2 = (ssa + ssb) / df;
    let se = (s2 * (1.0 / a.len() as f64 + 1.0 / b.len() as f64)).sqrt();
    ((ma - mb) / se, df)
}

/// The same statistic from summary statistics.
pub fn pooled_t_summary(na: f64, ma: f64, sa: f64, nb: f64, mb: f64, sb: f64) -> f64 {
    let s2 = ((na - 1.0) * sa * sa + (nb - 1.0) * sb * sb) / (na + nb - 2.0);
    (ma - mb) / (s2 * (1.0 / na + 1.0 / nb)).sqrt()
}
