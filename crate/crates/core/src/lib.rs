//! Five-decision testing for a unidimensional parameter `θ` against a
//! reference value `θ₀`.
//!
//! Besides the usual "reject `θ = θ₀` or not", the five-decision rule
//! distinguishes the rejection of a strict inequality (`θ > θ₀`,
//! `θ < θ₀`) from that of a non-strict one (`θ ≥ θ₀`, `θ ≤ θ₀`), keeping
//! the probability of any wrong rejection at most `α`. Kaiser's
//! directional two-sided test and the Jones-Tukey procedure are provided
//! for comparison.
//!
//! ```
//! use fivedec::{decisions, statistic, GroupSummary, Decision};
//!
//! // Chick weights after 20 days, diet 3 versus diet 2.
//! let diet3 = GroupSummary::new(10, 258.9, 65.2)?;
//! let diet2 = GroupSummary::new(10, 205.6, 70.3)?;
//! let r = statistic::two_sample_t(&diet3, &diet2, 0.0)?;
//! assert!((r.t_stat - 1.76).abs() < 0.01);
//!
//! let d = decisions::five_decision(r.t_stat, r.null, 0.05)?;
//! assert_eq!(d, Decision::RejectH4);
//! assert_eq!(d.statement(0.0), "reject H4: θ<0 ⇒ accept H1: θ≥0");
//! # Ok::<(), fivedec::Error>(())
//! ```
//!
//! The guide in `book/` walks through the procedure; its code blocks run
//! as doc-tests of this crate.

pub mod decisions;
pub mod distributions;
mod error;
pub mod power;
pub mod simulation;
pub mod statistic;

pub use decisions::{Decision, DecisionRegions, Hypothesis, Procedure};
pub use distributions::NullDistribution;
pub use error::{Error, Result};
pub use power::{PowerSpec, SampleSizeInputs, SampleSizeResult};
pub use simulation::{SimulationConfig, SimulationReport};
pub use statistic::{GroupSummary, TestResult};

#[cfg(doctest)]
mod book {
    #[doc = include_str!("../../../book/src/introduction.md")]
    mod introduction {}
    #[doc = include_str!("../../../book/src/five-decisions.md")]
    mod five_decisions {}
    #[doc = include_str!("../../../book/src/formulations.md")]
    mod formulations {}
    #[doc = include_str!("../../../book/src/error-control.md")]
    mod error_control {}
    #[doc = include_str!("../../../book/src/power.md")]
    mod power {}
    #[doc = include_str!("../../../book/src/simulation.md")]
    mod simulation {}
    #[doc = include_str!("../../../book/src/numerics.md")]
    mod numerics {}
}
