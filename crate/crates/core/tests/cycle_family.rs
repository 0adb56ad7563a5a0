mod common;

use cyclegame::catalog::{build_gk, g2_example, g3_example, g6_example, unconstrained_orders};
use cyclegame::equilibrium::{
    find_nash_equilibria, is_subgame_perfect, subgame_perfect, subgame_perfect_all_extensions,
};
use cyclegame::preference::linear_extensions;
use cyclegame::strategy::{build_normal_form, build_normal_form_with, enumerate_strategies, NormalFormOptions};
use cyclegame::PreferenceProfile;

use common::{names, simple_cycles};

#[test]
fn g3_has_a_single_cycle() {
    let g = build_gk(3, 3, &[1, 2, 3], 1).unwrap();
    let cycles = simple_cycles(&g);
    assert_eq!(cycles.len(), 1);
    assert_eq!(names(&g, &cycles[0]), ["v1", "v2", "v3"]);
}

#[test]
fn gk_strategy_and_cell_counts() {
    let g = build_gk(2, 2, &[1, 2], 1).unwrap();
    assert_eq!(build_normal_form(&g).unwrap().len(), 4);
    let g = build_gk(6, 2, &[1, 2, 1, 2, 1, 2], 1).unwrap();
    assert_eq!(enumerate_strategies(&g, 1).unwrap().len(), 8);
    assert_eq!(enumerate_strategies(&g, 2).unwrap().len(), 8);
    assert_eq!(build_normal_form(&g).unwrap().shape(), vec![8, 8]);
    let g = build_gk(5, 5, &[1, 2, 3, 4, 5], 1).unwrap();
    for i in 1..=5 {
        assert_eq!(enumerate_strategies(&g, i).unwrap().len(), 2);
    }
}

#[test]
fn g2_equilibria_exist_per_start_but_not_jointly() {
    let e = g2_example();
    let profile = PreferenceProfile::from_preferences(2, &e.preferences).unwrap();
    for v in e.game.positions() {
        let nf = build_normal_form_with(&e.game, NormalFormOptions { start: Some(v), ..Default::default() }).unwrap();
        assert!(!find_nash_equilibria(&nf, &profile).unwrap().equilibria.is_empty(), "start {}", e.game.name(v));
    }
    assert!(subgame_perfect(&e.game, &profile, 1000).unwrap().is_empty());
}

#[test]
fn g3_has_no_subgame_perfect_equilibrium() {
    let e = g3_example();
    let profile = PreferenceProfile::from_preferences(3, &e.preferences).unwrap();
    assert!(subgame_perfect(&e.game, &profile, 1000).unwrap().is_empty());
}

#[test]
fn g6_has_none_for_any_extension() {
    let e = g6_example();
    let report = subgame_perfect_all_extensions(&e.game, &e.partials(), 1000, 1000).unwrap();
    assert_eq!(report.profile_count, 3);
    assert!(report.is_spne_free());

    // the same, profile by profile, through the direct per-situation check
    let o1 = e.preferences[0].as_total().unwrap();
    let nf = build_normal_form(&e.game).unwrap();
    for o2 in linear_extensions(&e.partials()[1]) {
        let profile = PreferenceProfile::new(2, vec![o1.clone(), o2]).unwrap();
        for i in 0..nf.len() {
            assert!(!is_subgame_perfect(&e.game, &profile, &nf.situation(&nf.coords(i))));
        }
    }
}

#[test]
fn subgame_perfect_agrees_with_direct_check() {
    for e in [g2_example(), g3_example()] {
        let n = e.game.num_players();
        let profile = PreferenceProfile::from_preferences(n, &e.preferences).unwrap();
        let found = subgame_perfect(&e.game, &profile, 1000).unwrap();
        let nf = build_normal_form(&e.game).unwrap();
        let direct: Vec<_> = (0..nf.len())
            .map(|i| nf.coords(i))
            .filter(|c| is_subgame_perfect(&e.game, &profile, &nf.situation(c)))
            .collect();
        assert_eq!(found, direct);
    }
}

#[test]
fn alternating_g4_with_cycle_worst_always_admits_one() {
    let g = build_gk(4, 2, &[1, 2, 1, 2], 1).unwrap();
    let partials = unconstrained_orders(&g, true).unwrap();
    let report = subgame_perfect_all_extensions(&g, &partials, 1000, 1_000_000).unwrap();
    assert_eq!(report.profile_count, 576);
    assert_eq!(report.profiles_with_spne, 576);
}

#[test]
fn alternating_g4_without_the_cycle_condition() {
    let g = build_gk(4, 2, &[1, 2, 1, 2], 1).unwrap();
    let partials = unconstrained_orders(&g, false).unwrap();
    let report = subgame_perfect_all_extensions(&g, &partials, 1000, 1_000_000).unwrap();
    assert_eq!(report.profile_count, 14400);
    assert_eq!(report.profile_count - report.profiles_with_spne, 776);
}
