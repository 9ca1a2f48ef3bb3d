use fivedec::decisions::{
    decision_regions, five_decision, five_decision_via_ci, five_decision_via_three_tests,
    jones_tukey_decision, kaiser_decision,
};
use fivedec::statistic::two_sample_t;
use fivedec::{Decision, GroupSummary, Hypothesis, NullDistribution, Procedure, TestResult};
use proptest::prelude::*;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use Decision::*;

const Z: NullDistribution = NullDistribution::StandardNormal;
const T18: NullDistribution = NullDistribution::StudentT { df: 18.0 };

fn chickweight() -> TestResult {
    let diet3 = GroupSummary::new(10, 258.9, 65.2).unwrap();
    let diet2 = GroupSummary::new(10, 205.6, 70.3).unwrap();
    two_sample_t(&diet3, &diet2, 0.0).unwrap()
}

fn grid() -> impl Iterator<Item = f64> {
    (0..=10_000).map(|i| -5.0 + i as f64 * 1e-3)
}

fn nulls() -> [NullDistribution; 4] {
    [
        Z,
        T18,
        NullDistribution::StudentT { df: 1.0 },
        NullDistribution::StudentT { df: 124.0 },
    ]
}

const ALPHAS: [f64; 6] = [0.001, 0.01, 0.05, 0.1, 0.25, 0.5];

#[test]
fn chickweight_across_levels() {
    let t = chickweight().t_stat;
    assert_eq!(five_decision(t, T18, 0.05).unwrap(), RejectH4);
    assert_eq!(five_decision(t, T18, 0.10).unwrap(), RejectH5);
    assert_eq!(five_decision(t, T18, 0.01).unwrap(), NoRejection);
    assert_eq!(kaiser_decision(t, T18, 0.05).unwrap(), NoRejection);
    let jt = jones_tukey_decision(t, T18, 0.05).unwrap();
    assert_eq!(jt, RejectH4);
    assert_eq!(jt.rejected_if_point_null_impossible(), Some(Hypothesis::H5));
}

#[test]
fn chickweight_via_intervals() {
    let r = chickweight();
    assert_eq!(five_decision_via_ci(&r, 0.0, 0.05).unwrap(), RejectH4);
    let centred = TestResult::from_estimate(3.0, 1.0, 3.0, T18).unwrap();
    assert_eq!(five_decision_via_ci(&centred, 3.0, 0.05).unwrap(), NoRejection);
}

#[test]
fn zero_statistic_rejects_nothing() {
    for null in nulls() {
        for alpha in ALPHAS {
            assert_eq!(five_decision(0.0, null, alpha).unwrap(), NoRejection);
            assert_eq!(kaiser_decision(0.0, null, alpha).unwrap(), NoRejection);
            assert_eq!(jones_tukey_decision(0.0, null, alpha).unwrap(), NoRejection);
        }
    }
}

#[test]
fn simple_examples() {
    assert_eq!(kaiser_decision(2.5, Z, 0.05).unwrap(), RejectH5);
    assert_eq!(five_decision_via_three_tests(-2.5, Z, 0.05).unwrap(), RejectH1);
    assert_eq!(five_decision_via_three_tests(1.8, Z, 0.05).unwrap(), RejectH4);
}

#[test]
fn region_boundaries() {
    let r = decision_regions(Z, 0.05).unwrap();
    let rounded = r.boundaries.map(|b| (b * 1000.0).round() / 1000.0);
    assert_eq!(rounded, [-1.96, -1.645, 1.645, 1.96]);
    let r = decision_regions(T18, 0.05).unwrap();
    let rounded = r.boundaries.map(|b| (b * 100.0).round() / 100.0);
    assert_eq!(rounded, [-2.10, -1.73, 1.73, 2.10]);
    for null in nulls() {
        let r = decision_regions(null, 0.5).unwrap();
        assert_eq!(r.boundaries[1], r.boundaries[2]);
        for alpha in [0.001, 0.05, 0.3, 0.499] {
            let b = decision_regions(null, alpha).unwrap().boundaries;
            assert!(b[0] < b[1] && b[1] < b[2] && b[2] < b[3], "{null} {alpha}");
        }
    }
}

#[test]
fn boundary_points_follow_open_closed_pattern() {
    for null in nulls() {
        for alpha in ALPHAS {
            let r = decision_regions(null, alpha).unwrap();
            let [b1, b2, b3, b4] = r.boundaries;
            let check = |t: f64, want: Decision| {
                assert_eq!(five_decision(t, null, alpha).unwrap(), want, "{null} α={alpha} t={t}");
                assert_eq!(five_decision_via_three_tests(t, null, alpha).unwrap(), want);
            };
            check(b1, RejectH2);
            check(b1.next_down(), RejectH1);
            check(b2.next_down(), RejectH2);
            check(b4, RejectH4);
            check(b4.next_up(), RejectH5);
            check(b3.next_up(), RejectH4);
            if b2 < b3 {
                check(b2, NoRejection);
                check(b3, NoRejection);
            } else {
                // α = 0.5: the no-rejection region is the single point {q_0.5}
                check(b2, NoRejection);
            }
        }
    }
}

#[test]
fn three_formulations_agree_on_grid() {
    for null in nulls() {
        for alpha in ALPHAS {
            for t in grid() {
                let a = five_decision(t, null, alpha).unwrap();
                let b = five_decision_via_three_tests(t, null, alpha).unwrap();
                assert_eq!(a, b, "{null} α={alpha} t={t}");
            }
        }
    }
}

#[test]
fn interval_formulation_agrees_on_random_results() {
    let mut rng = ChaCha8Rng::seed_from_u64(1_000);
    for _ in 0..1_000 {
        let null = if rng.random_bool(0.3) {
            Z
        } else {
            NullDistribution::StudentT {
                df: rng.random_range(1.0..200.0),
            }
        };
        let estimate = rng.random_range(-5.0..5.0);
        let se = rng.random_range(0.05..3.0);
        let theta0 = rng.random_range(-5.0..5.0);
        let alpha = rng.random_range(0.001..=0.5);
        let r = TestResult::from_estimate(estimate, se, theta0, null).unwrap();
        let via_q = five_decision(r.t_stat, null, alpha).unwrap();
        let via_tests = five_decision_via_three_tests(r.t_stat, null, alpha).unwrap();
        let via_ci = five_decision_via_ci(&r, theta0, alpha).unwrap();
        assert_eq!(via_q, via_tests);
        assert_eq!(via_q, via_ci, "{r:?} α={alpha}");
    }
}

#[test]
fn kaiser_and_jones_tukey_are_merges() {
    for null in nulls() {
        for alpha in ALPHAS {
            for t in grid() {
                let five = five_decision(t, null, alpha).unwrap();
                let kaiser = match five {
                    RejectH2 | NoRejection | RejectH4 => NoRejection,
                    d => d,
                };
                let jt = match five {
                    RejectH1 | RejectH2 => RejectH2,
                    RejectH4 | RejectH5 => RejectH4,
                    d => d,
                };
                assert_eq!(kaiser_decision(t, null, alpha).unwrap(), kaiser);
                assert_eq!(jones_tukey_decision(t, null, alpha).unwrap(), jt);
                let regions = decision_regions(null, alpha).unwrap();
                assert_eq!(Procedure::Kaiser.decide(&regions, t), kaiser);
                assert_eq!(Procedure::JonesTukey.decide(&regions, t), jt);
            }
        }
    }
}

#[test]
fn decision_index_monotone_in_statistic() {
    for null in nulls() {
        for alpha in ALPHAS {
            let mut last = 1;
            for t in grid() {
                let i = five_decision(t, null, alpha).unwrap().index();
                assert!(i >= last);
                last = i;
            }
            assert_eq!(five_decision(-5.0, null, 0.5).unwrap(), RejectH1);
        }
    }
}

#[test]
fn p_value_shortcut_at_five_percent() {
    for null in nulls() {
        for t in grid() {
            let r = TestResult::from_estimate(t, 1.0, 0.0, null).unwrap();
            let p = r.p_two_sided;
            let d = five_decision(t, null, 0.05).unwrap();
            // stay clear of the two cut points where p is computed, not compared
            if (p - 0.10).abs() < 1e-12 || (p - 0.05).abs() < 1e-12 {
                continue;
            }
            assert_eq!(
                matches!(d, RejectH4 | RejectH5),
                t > 0.0 && p < 0.10,
                "{null} t={t} p={p}"
            );
            assert_eq!(d == RejectH4, t > 0.0 && (0.05..0.10).contains(&p), "{null} t={t}");
        }
    }
}

proptest! {
    #[test]
    fn rejections_never_flip_sides(
        t in -6.0f64..6.0,
        a1 in 0.001f64..0.5,
        a2 in 0.001f64..0.5,
        df in 1.0f64..200.0,
    ) {
        let (lo, hi) = if a1 < a2 { (a1, a2) } else { (a2, a1) };
        let null = NullDistribution::StudentT { df };
        let strong = five_decision(t, null, lo).unwrap();
        let weak = five_decision(t, null, hi).unwrap();
        match strong {
            RejectH5 => prop_assert!(matches!(weak, RejectH4 | RejectH5)),
            RejectH1 => prop_assert!(matches!(weak, RejectH1 | RejectH2)),
            _ => {}
        }
    }

    #[test]
    fn reject_h1_implies_jones_tukey_h2(t in -6.0f64..6.0, alpha in 0.001f64..=0.5) {
        if five_decision(t, T18, alpha).unwrap() == RejectH1 {
            prop_assert_eq!(jones_tukey_decision(t, T18, alpha).unwrap(), RejectH2);
        }
        if five_decision(t, T18, alpha).unwrap() == RejectH5 {
            prop_assert_eq!(jones_tukey_decision(t, T18, alpha).unwrap(), RejectH4);
        }
    }

    #[test]
    fn every_statistic_gets_one_decision(t in -1e6f64..1e6, alpha in 0.0001f64..=0.5) {
        let d = five_decision(t, Z, alpha).unwrap();
        let hits = decision_regions(Z, alpha)
            .unwrap()
            .intervals()
            .iter()
            .filter(|iv| {
                let above = if iv.lower_closed { t >= iv.lower } else { t > iv.lower };
                let below = if iv.upper_closed { t <= iv.upper } else { t < iv.upper };
                above && below
            })
            .map(|iv| iv.decision)
            .collect::<Vec<_>>();
        prop_assert_eq!(hits, vec![d]);
    }
}
