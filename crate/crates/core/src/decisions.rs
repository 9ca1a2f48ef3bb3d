//! Decision engines.
//!
//! The five-decision rule partitions the line of the test statistic with
//! the null quantiles `q_{α/2} <= q_α <= q_{1-α} <= q_{1-α/2}`:
//!
//! | decision | event                               | rejected      |
//! |----------|-------------------------------------|---------------|
//! | 1        | `t < q_{α/2}`                       | `H1: θ ≥ θ₀`  |
//! | 2        | `q_{α/2} <= t < q_α`                | `H2: θ > θ₀`  |
//! | 3        | `q_α <= t <= q_{1-α}`               | none          |
//! | 4        | `q_{1-α} < t <= q_{1-α/2}`          | `H4: θ < θ₀`  |
//! | 5        | `q_{1-α/2} < t`                     | `H5: θ ≤ θ₀`  |
//!
//! It is computed three ways (quantiles, three traditional tests, two
//! confidence intervals) which must agree exactly. Kaiser's directional
//! two-sided test and the Jones-Tukey procedure are coarsenings of the same
//! partition.

use serde::{Deserialize, Serialize};
use std::fmt;

use crate::distributions::{upper_quantile, NullDistribution};
use crate::error::{check_alpha, domain, Error, Result};
use crate::statistic::TestResult;

/// Hypotheses about `θ` relative to `θ₀`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub enum Hypothesis {
    /// `θ ≥ θ₀`
    H1,
    /// `θ > θ₀`
    H2,
    /// `θ = θ₀`, the working null.
    H3,
    /// `θ < θ₀`
    H4,
    /// `θ ≤ θ₀`
    H5,
}

impl Hypothesis {
    pub fn relation(self) -> &'static str {
        match self {
            Hypothesis::H1 => "≥",
            Hypothesis::H2 => ">",
            Hypothesis::H3 => "=",
            Hypothesis::H4 => "<",
            Hypothesis::H5 => "≤",
        }
    }

    /// The hypothesis implicitly accepted when this one is rejected.
    pub fn complement(self) -> Option<Hypothesis> {
        match self {
            Hypothesis::H1 => Some(Hypothesis::H4),
            Hypothesis::H2 => Some(Hypothesis::H5),
            Hypothesis::H3 => None,
            Hypothesis::H4 => Some(Hypothesis::H1),
            Hypothesis::H5 => Some(Hypothesis::H2),
        }
    }

    /// Whether the hypothesis holds when `θ - θ₀` has the given value.
    pub fn holds(self, theta_minus_theta0: f64) -> bool {
        let d = theta_minus_theta0;
        match self {
            Hypothesis::H1 => d >= 0.0,
            Hypothesis::H2 => d > 0.0,
            Hypothesis::H3 => d == 0.0,
            Hypothesis::H4 => d < 0.0,
            Hypothesis::H5 => d <= 0.0,
        }
    }

    /// `"H4: θ<0"` style label for a given reference value.
    pub fn describe(self, theta0: f64) -> String {
        format!("{self:?}: θ{}{theta0}", self.relation())
    }
}

impl fmt::Display for Hypothesis {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{self:?}: θ{}θ₀", self.relation())
    }
}

/// One of the five mutually exclusive outcomes.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(into = "u8", try_from = "u8")]
pub enum Decision {
    RejectH1 = 1,
    RejectH2 = 2,
    NoRejection = 3,
    RejectH4 = 4,
    RejectH5 = 5,
}

impl Decision {
    pub const ALL: [Decision; 5] = [
        Decision::RejectH1,
        Decision::RejectH2,
        Decision::NoRejection,
        Decision::RejectH4,
        Decision::RejectH5,
    ];

    pub fn index(self) -> u8 {
        self as u8
    }

    pub fn from_index(index: u8) -> Option<Decision> {
        Decision::ALL.get(usize::from(index).checked_sub(1)?).copied()
    }

    pub fn rejected(self) -> Option<Hypothesis> {
        match self {
            Decision::RejectH1 => Some(Hypothesis::H1),
            Decision::RejectH2 => Some(Hypothesis::H2),
            Decision::NoRejection => None,
            Decision::RejectH4 => Some(Hypothesis::H4),
            Decision::RejectH5 => Some(Hypothesis::H5),
        }
    }

    pub fn accepted_implicitly(self) -> Option<Hypothesis> {
        self.rejected().and_then(Hypothesis::complement)
    }

    /// The rejection as read when `θ = θ₀` is deemed impossible: `H2` and
    /// `H1` coincide, as do `H4` and `H5`, so the stronger reading is given.
    pub fn rejected_if_point_null_impossible(self) -> Option<Hypothesis> {
        match self.rejected()? {
            Hypothesis::H1 | Hypothesis::H2 => Some(Hypothesis::H1),
            Hypothesis::H4 | Hypothesis::H5 => Some(Hypothesis::H5),
            Hypothesis::H3 => None,
        }
    }

    /// `"reject H4: θ<0 ⇒ accept H1: θ≥0"`, or `"none rejected"`.
    pub fn statement(self, theta0: f64) -> String {
        match (self.rejected(), self.accepted_implicitly()) {
            (Some(r), Some(a)) => format!(
                "reject {} ⇒ accept {}",
                r.describe(theta0),
                a.describe(theta0)
            ),
            _ => "none rejected".to_string(),
        }
    }
}

impl From<Decision> for u8 {
    fn from(d: Decision) -> u8 {
        d.index()
    }
}

impl TryFrom<u8> for Decision {
    type Error = String;
    fn try_from(i: u8) -> Result<Self, String> {
        Decision::from_index(i).ok_or_else(|| format!("decision index must be 1..=5, got {i}"))
    }
}

impl fmt::Display for Decision {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "decision {}", self.index())
    }
}

/// The three procedures compared throughout the crate.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Procedure {
    FiveDecision,
    /// Directional two-sided test: two one-sided tests at `α/2`.
    Kaiser,
    /// Two one-sided tests at `α`, valid if `θ = θ₀` is impossible.
    JonesTukey,
}

impl Procedure {
    pub const ALL: [Procedure; 3] = [Procedure::FiveDecision, Procedure::Kaiser, Procedure::JonesTukey];

    /// Applies the procedure given precomputed regions.
    pub fn decide(self, regions: &DecisionRegions, t_stat: f64) -> Decision {
        let d = regions.classify(t_stat);
        match self {
            Procedure::FiveDecision => d,
            Procedure::Kaiser => kaiser_merge(d),
            Procedure::JonesTukey => jones_tukey_merge(d),
        }
    }

    /// Whether a decision is a wrong rejection when `θ - θ₀ = effect`.
    ///
    /// For Jones-Tukey the rejections are read as if `θ = θ₀` were
    /// impossible, so at `θ = θ₀` both of its rejections count as wrong.
    pub fn is_wrong_rejection(self, decision: Decision, effect: f64) -> bool {
        let rejected = match self {
            Procedure::JonesTukey => decision.rejected_if_point_null_impossible(),
            _ => decision.rejected(),
        };
        rejected.is_some_and(|h| h.holds(effect))
    }

    pub fn name(self) -> &'static str {
        match self {
            Procedure::FiveDecision => "five-decision",
            Procedure::Kaiser => "kaiser",
            Procedure::JonesTukey => "jones-tukey",
        }
    }
}

impl fmt::Display for Procedure {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl std::str::FromStr for Procedure {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        match s.to_ascii_lowercase().replace('_', "-").as_str() {
            "five-decision" | "five" | "fivedecision" => Ok(Procedure::FiveDecision),
            "kaiser" => Ok(Procedure::Kaiser),
            "jones-tukey" | "jonestukey" | "jt" => Ok(Procedure::JonesTukey),
            other => Err(domain(format!("unknown procedure {other:?}"))),
        }
    }
}

fn kaiser_merge(d: Decision) -> Decision {
    match d {
        Decision::RejectH2 | Decision::RejectH4 => Decision::NoRejection,
        d => d,
    }
}

fn jones_tukey_merge(d: Decision) -> Decision {
    match d {
        Decision::RejectH1 => Decision::RejectH2,
        Decision::RejectH5 => Decision::RejectH4,
        d => d,
    }
}

/// Boundaries `(q_{α/2}, q_α, q_{1-α}, q_{1-α/2})` of the five regions.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct DecisionRegions {
    pub alpha: f64,
    pub boundaries: [f64; 4],
    pub null: NullDistribution,
}

/// One labelled interval of the partition, for plotting.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct RegionInterval {
    pub decision: Decision,
    /// `-inf` for decision 1.
    pub lower: f64,
    /// `+inf` for decision 5.
    pub upper: f64,
    pub lower_closed: bool,
    pub upper_closed: bool,
}

impl DecisionRegions {
    pub fn new(null: NullDistribution, alpha: f64) -> Result<Self> {
        check_alpha(alpha)?;
        let outer = upper_quantile(&null, 0.5 * alpha)?;
        let inner = upper_quantile(&null, alpha)?;
        Ok(DecisionRegions {
            alpha,
            // 0.0 - x keeps the α = 0.5 midpoint at +0
            boundaries: [0.0 - outer, 0.0 - inner, inner, outer],
            null,
        })
    }

    /// Five-decision classification; boundary points follow the table's
    /// open/closed pattern exactly.
    pub fn classify(&self, t: f64) -> Decision {
        let [b1, b2, b3, b4] = self.boundaries;
        if t < b1 {
            Decision::RejectH1
        } else if t < b2 {
            Decision::RejectH2
        } else if t <= b3 {
            Decision::NoRejection
        } else if t <= b4 {
            Decision::RejectH4
        } else {
            Decision::RejectH5
        }
    }

    pub fn intervals(&self) -> [RegionInterval; 5] {
        let [b1, b2, b3, b4] = self.boundaries;
        let iv = |decision, lower, upper, lower_closed, upper_closed| RegionInterval {
            decision,
            lower,
            upper,
            lower_closed,
            upper_closed,
        };
        [
            iv(Decision::RejectH1, f64::NEG_INFINITY, b1, false, false),
            iv(Decision::RejectH2, b1, b2, true, false),
            iv(Decision::NoRejection, b2, b3, true, true),
            iv(Decision::RejectH4, b3, b4, false, true),
            iv(Decision::RejectH5, b4, f64::INFINITY, false, false),
        ]
    }
}

fn check_statistic(t: f64) -> Result<()> {
    if t.is_finite() {
        Ok(())
    } else {
        Err(domain(format!("statistic must be finite, got {t}")))
    }
}

pub fn decision_regions(null: NullDistribution, alpha: f64) -> Result<DecisionRegions> {
    DecisionRegions::new(null, alpha)
}

/// Five-decision rule from the null quantiles.
pub fn five_decision(t_stat: f64, null: NullDistribution, alpha: f64) -> Result<Decision> {
    check_statistic(t_stat)?;
    Ok(DecisionRegions::new(null, alpha)?.classify(t_stat))
}

/// Five-decision rule assembled from a one-sided test to the left (OSL),
/// one to the right (OSR) and a traditional two-sided test (TS), each at
/// level `α`.
pub fn five_decision_via_three_tests(t_stat: f64, null: NullDistribution, alpha: f64) -> Result<Decision> {
    check_statistic(t_stat)?;
    check_alpha(alpha)?;
    let one_sided = upper_quantile(&null, alpha)?;
    let two_sided = upper_quantile(&null, 0.5 * alpha)?;
    let osl_rejects_h1 = t_stat < -one_sided;
    let osr_rejects_h5 = t_stat > one_sided;
    let ts_rejects_h3 = t_stat < -two_sided || t_stat > two_sided;
    Ok(match (osl_rejects_h1, osr_rejects_h5, ts_rejects_h3) {
        (true, false, true) => Decision::RejectH1,
        (true, false, false) => Decision::RejectH2,
        (false, false, false) => Decision::NoRejection,
        (false, true, false) => Decision::RejectH4,
        (false, true, true) => Decision::RejectH5,
        pattern => unreachable!("test outcome pattern {pattern:?} is not a five-decision row"),
    })
}

/// Five-decision rule read off the `1-α` and `1-2α` confidence intervals:
/// `θ₀` right of the outer interval rejects `H1`, right of the inner but
/// inside the outer rejects `H2`, inside the inner rejects nothing, and
/// symmetrically on the left.
pub fn five_decision_via_ci(r: &TestResult, theta0: f64, alpha: f64) -> Result<Decision> {
    check_alpha(alpha)?;
    if !theta0.is_finite() {
        return Err(domain("theta0 must be finite"));
    }
    let (outer_lo, outer_hi) = r.interval_for_tail(0.5 * alpha)?;
    let (inner_lo, inner_hi) = r.interval_for_tail(alpha)?;
    Ok(if theta0 < outer_lo {
        Decision::RejectH5
    } else if theta0 < inner_lo {
        Decision::RejectH4
    } else if theta0 <= inner_hi {
        Decision::NoRejection
    } else if theta0 <= outer_hi {
        Decision::RejectH2
    } else {
        Decision::RejectH1
    })
}

/// Kaiser's directional two-sided test; outcomes in `{1, 3, 5}`.
pub fn kaiser_decision(t_stat: f64, null: NullDistribution, alpha: f64) -> Result<Decision> {
    check_statistic(t_stat)?;
    let regions = DecisionRegions::new(null, alpha)?;
    let [lo, _, _, hi] = regions.boundaries;
    Ok(if t_stat < lo {
        Decision::RejectH1
    } else if t_stat > hi {
        Decision::RejectH5
    } else {
        Decision::NoRejection
    })
}

/// Jones-Tukey three-decision procedure; outcomes in `{2, 3, 4}`. Under
/// its premise decision 4 also rejects `H5` and decision 2 also rejects `H1`.
pub fn jones_tukey_decision(t_stat: f64, null: NullDistribution, alpha: f64) -> Result<Decision> {
    check_statistic(t_stat)?;
    let regions = DecisionRegions::new(null, alpha)?;
    let [_, lo, hi, _] = regions.boundaries;
    Ok(if t_stat < lo {
        Decision::RejectH2
    } else if t_stat > hi {
        Decision::RejectH4
    } else {
        Decision::NoRejection
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    const Z: NullDistribution = NullDistribution::StandardNormal;

    #[test]
    fn index_bijection() {
        for (i, d) in Decision::ALL.iter().enumerate() {
            assert_eq!(d.index() as usize, i + 1);
            assert_eq!(Decision::from_index(d.index()), Some(*d));
        }
        assert_eq!(Decision::from_index(0), None);
        assert_eq!(Decision::from_index(6), None);
    }

    #[test]
    fn complements() {
        use Hypothesis::*;
        let pairs: Vec<_> = Decision::ALL
            .iter()
            .map(|d| (d.rejected(), d.accepted_implicitly()))
            .collect();
        assert_eq!(
            pairs,
            vec![
                (Some(H1), Some(H4)),
                (Some(H2), Some(H5)),
                (None, None),
                (Some(H4), Some(H1)),
                (Some(H5), Some(H2)),
            ]
        );
    }

    #[test]
    fn statement_text() {
        assert_eq!(Decision::RejectH4.statement(0.0), "reject H4: θ<0 ⇒ accept H1: θ≥0");
        assert_eq!(Decision::NoRejection.statement(0.0), "none rejected");
    }

    #[test]
    fn alpha_domain() {
        for a in [0.0, -0.1, 0.51, 1.0, f64::NAN] {
            assert!(five_decision(0.0, Z, a).is_err());
            assert!(kaiser_decision(0.0, Z, a).is_err());
            assert!(jones_tukey_decision(0.0, Z, a).is_err());
            assert!(decision_regions(Z, a).is_err());
        }
        assert!(five_decision(f64::NAN, Z, 0.05).is_err());
        assert!(five_decision(0.0, Z, 0.5).is_ok());
    }

    #[test]
    fn three_tests_examples() {
        assert_eq!(five_decision_via_three_tests(-2.5, Z, 0.05).unwrap(), Decision::RejectH1);
        assert_eq!(five_decision_via_three_tests(1.8, Z, 0.05).unwrap(), Decision::RejectH4);
        assert_eq!(five_decision(-2.5, Z, 0.05).unwrap(), Decision::RejectH1);
    }

    #[test]
    fn half_alpha_collapses_middle() {
        let r = decision_regions(Z, 0.5).unwrap();
        assert_eq!(r.boundaries[1], r.boundaries[2]);
        assert_eq!(r.classify(0.0), Decision::NoRejection);
        assert_eq!(r.classify(1e-300), Decision::RejectH4);
        assert_eq!(r.classify(-1e-300), Decision::RejectH2);
    }

    #[test]
    fn wrong_rejection_classification() {
        use Decision::*;
        let five = Procedure::FiveDecision;
        let wrong = |effect: f64| -> Vec<u8> {
            Decision::ALL
                .iter()
                .filter(|d| five.is_wrong_rejection(**d, effect))
                .map(|d| d.index())
                .collect()
        };
        assert_eq!(wrong(0.0), vec![1, 5]);
        assert_eq!(wrong(0.3), vec![1, 2]);
        assert_eq!(wrong(-0.3), vec![4, 5]);
        assert!(Procedure::JonesTukey.is_wrong_rejection(RejectH4, 0.0));
        assert!(!Procedure::JonesTukey.is_wrong_rejection(RejectH4, 0.1));
        assert!(!Procedure::Kaiser.is_wrong_rejection(NoRejection, 0.0));
    }

    #[test]
    fn procedure_names_parse() {
        for p in Procedure::ALL {
            assert_eq!(p.name().parse::<Procedure>().unwrap(), p);
        }
        assert!("bonferroni".parse::<Procedure>().is_err());
    }
}
