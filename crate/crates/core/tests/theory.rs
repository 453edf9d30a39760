mod common;

use flgame_core::analysis::{
    consumer_surplus, consumer_surplus_gradient, max_valid_gamma, solve_d2_star, solve_gamma_hat,
    solve_gamma_star, subsidy_gap, subsidy_report, welfare_report,
};
use flgame_core::equilibrium::corner_outcome;
use flgame_core::model::{builtin_families, check_interior_condition};
use flgame_core::regime::{
    competition_bound, decide_regime, formation_condition, free_rider_check, free_riding_ratio,
};
use flgame_core::{EffectivenessSpec, Firm, MarketPrimitives, Regime};
use proptest::prelude::*;
use rand::Rng;

#[test]
fn profit_verdict_equals_ratio_verdict() {
    for s in common::valid_scenarios(101, 10_000, 0.99) {
        let d = decide_regime(&s).expect("consistent verdict");
        let e = s.endowment();
        let ratio = free_riding_ratio(s.effectiveness(), e.d1(), e.d2()).unwrap();
        let by_ratio = formation_condition(ratio, competition_bound(s.gamma()));
        assert_eq!(d.chosen == Regime::Fl, by_ratio, "{s:?}");
        assert!(d.ratio >= 1.0);
    }
}

#[test]
fn free_rider_always_gains() {
    for s in common::valid_scenarios(102, 10_000, 0.99) {
        assert!(free_rider_check(&s).unwrap().free_rider_gains, "{s:?}");
    }
}

#[test]
fn base_qualities_do_not_change_the_verdict() {
    let mut rng = common::rng(103);
    for s in common::valid_scenarios(104, 500, 0.9) {
        let verdict = decide_regime(&s).unwrap().chosen;
        for _ in 0..5 {
            let v2 = rng.gen_range(5.0..30.0);
            let v1 = v2 * rng.gen_range(1.0..1.5);
            let moved = s.with_market(MarketPrimitives::new(v1, v2, s.gamma()).unwrap());
            if check_interior_condition(&moved).passes() {
                assert_eq!(decide_regime(&moved).unwrap().chosen, verdict);
            }
        }
    }
}

#[test]
fn pooled_quality_dominates() {
    for s in common::valid_scenarios(105, 1000, 0.9) {
        let ml = s.corner_qualities(Regime::Ml);
        let fl = s.corner_qualities(Regime::Fl);
        assert!(fl[0] > ml[0] && fl[1] > ml[1]);
    }
}

#[test]
fn ratio_decreases_in_smaller_endowment() {
    for f in builtin_families() {
        let d1 = 100.0;
        let ratios: Vec<f64> = (1..100)
            .map(|k| free_riding_ratio(&f, d1, k as f64).unwrap())
            .collect();
        assert!(ratios.windows(2).all(|w| w[1] < w[0]), "{f:?}");
    }
}

#[test]
fn consumer_surplus_gradient_matches_finite_differences() {
    let mut rng = common::rng(106);
    for _ in 0..100 {
        let gamma: f64 = rng.gen_range(0.0..0.95);
        let v2 = rng.gen_range(5.0..40.0);
        let upper = ((2.0 - gamma * gamma) / gamma.max(1e-3)).min(3.0);
        let v1 = v2 * rng.gen_range(1.0..upper);
        let (g1, g2) = consumer_surplus_gradient(v1, v2, gamma).unwrap();
        let h = 1e-5;
        let fd1 = (consumer_surplus(v1 + h, v2, gamma).unwrap()
            - consumer_surplus(v1 - h, v2, gamma).unwrap())
            / (2.0 * h);
        let fd2 = (consumer_surplus(v1, v2 + h, gamma).unwrap()
            - consumer_surplus(v1, v2 - h, gamma).unwrap())
            / (2.0 * h);
        assert!((g1 - fd1).abs() <= 1e-6 * g1.abs());
        assert!((g2 - fd2).abs() <= 1e-6 * g2.abs());
        assert!(g1 > 0.0 && g2 > 0.0);
    }
}

#[test]
fn all_win_whenever_fl_forms() {
    for s in common::valid_scenarios(107, 5000, 0.9) {
        let w = welfare_report(&s).unwrap();
        let d = decide_regime(&s).unwrap();
        assert!(w.cs_fl > w.cs_ml);
        if d.chosen == Regime::Fl {
            assert!(w.all_win, "{s:?}");
        } else {
            assert!(!w.all_win);
        }
    }
}

#[test]
fn welfare_is_surplus_plus_profits() {
    for s in common::valid_scenarios(108, 200, 0.9) {
        let w = welfare_report(&s).unwrap();
        let ml = corner_outcome(&s, Regime::Ml).unwrap();
        let fl = corner_outcome(&s, Regime::Fl).unwrap();
        assert_eq!(
            w.sw_ml,
            w.cs_ml + ml.profit(Firm::One) + ml.profit(Firm::Two)
        );
        assert_eq!(
            w.sw_fl,
            w.cs_fl + fl.profit(Firm::One) + fl.profit(Firm::Two)
        );
    }
}

#[test]
fn joint_gain_decreases_between_thresholds() {
    for f in builtin_families() {
        for d1 in [100.0, 50.0, 30.0] {
            let s = common::baseline(f, 0.2, d1, 10.0);
            let gs = solve_gamma_star(&s).unwrap().value().unwrap();
            let gm = max_valid_gamma(&s).unwrap();
            assert!(subsidy_gap(&s, gs).unwrap() >= 0.0);
            let h = 1e-6;
            let mut sign_changes = 0;
            let mut prev = subsidy_gap(&s, gs).unwrap();
            for k in 1..=50 {
                let g = gs + (gm - gs) * k as f64 / 51.0;
                let slope =
                    (subsidy_gap(&s, g + h).unwrap() - subsidy_gap(&s, g - h).unwrap()) / (2.0 * h);
                assert!(slope < 0.0, "{f:?} d1={d1} g={g}");
                let cur = subsidy_gap(&s, g).unwrap();
                if (cur < 0.0) != (prev < 0.0) {
                    sign_changes += 1;
                }
                prev = cur;
            }
            assert!(sign_changes <= 1);
            if let Some(gh) = solve_gamma_hat(&s).unwrap().value() {
                assert!(gh > gs && gh < gm);
            }
        }
    }
}

#[test]
fn subsidy_feasibility_flips_at_gamma_hat() {
    let s = common::baseline(EffectivenessSpec::LogPlusOne, 0.2, 100.0, 10.0);
    let gh = solve_gamma_hat(&s).unwrap().value().unwrap();
    let below = subsidy_report(&s.with_gamma(gh - 1e-6).unwrap()).unwrap();
    let above = subsidy_report(&s.with_gamma(gh + 1e-6).unwrap()).unwrap();
    assert!(below.feasible && below.min_transfer > 0.0);
    assert!(!above.feasible);
}

#[test]
fn d2_star_separates_regimes() {
    let f = EffectivenessSpec::SquareRoot;
    let gamma = 0.4;
    let d2s = solve_d2_star(&f, 100.0, gamma).unwrap().value().unwrap();
    let below = common::baseline(f, gamma, 100.0, d2s * 0.95);
    let above = common::baseline(f, gamma, 100.0, d2s * 1.05);
    assert_eq!(decide_regime(&below).unwrap().chosen, Regime::Ml);
    assert_eq!(decide_regime(&above).unwrap().chosen, Regime::Fl);
}

proptest! {
    #[test]
    fn profit_rises_with_own_quality(
        v1 in 10.0..40.0f64,
        v2 in 10.0..40.0f64,
        g in 0.0..0.6f64,
        bump in 0.01..2.0f64,
    ) {
        let base = flgame_core::equilibrium::price_stage([v1, v2], g, Regime::Ml);
        prop_assume!(base.is_ok());
        let base = base.unwrap();
        let bumped = flgame_core::equilibrium::price_stage([v1 + bump, v2], g, Regime::Ml).unwrap();
        prop_assert!(bumped.firms[0].price > base.firms[0].price);
        prop_assert!(bumped.firms[0].profit > base.firms[0].profit);
    }
}
