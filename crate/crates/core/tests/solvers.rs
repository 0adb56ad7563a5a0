mod common;

use cyclegame::catalog::main_example_game;
use cyclegame::game::{GameBuilder, GameForm, Outcome, VertexId};
use cyclegame::random::{random_game, random_profile, random_wins, rng, RandomGameSpec};
use cyclegame::solvers::{backward_induction, zero_sum_attractor, WinAssignment};
use cyclegame::strategy::{enumerate_strategies, resolve_play, Situation};
use cyclegame::{PreferenceProfile, SolverError};

use common::{guarantees, minimax_winner};

fn winner_at(game: &GameForm, wins: &WinAssignment, v: VertexId) -> u8 {
    match game.terminal_outcome(v) {
        Some(o) => wins.winner(o),
        None => minimax_winner(game, wins, v),
    }
}

#[test]
fn two_position_cycle() {
    // x (1) -> y | a1 ; y (2) -> x | a2
    let g = GameBuilder::new(2)
        .position("x", 1)
        .position("y", 2)
        .terminal("a1")
        .terminal("a2")
        .edge("x", "y")
        .edge("x", "a1")
        .edge("y", "x")
        .edge("y", "a2")
        .initial("x")
        .build()
        .unwrap();
    let t = Outcome::Terminal;
    // player 1 wins a1 and c, player 2 wins a2: player 2 attacks and y reaches a2.
    let wins = WinAssignment::new(&g, &[(t(0), 1), (t(1), 2), (Outcome::Cycle, 1)]).unwrap();
    let sol = zero_sum_attractor(&g, &wins).unwrap();
    let x = g.vertex("x").unwrap();
    let y = g.vertex("y").unwrap();
    assert_eq!(sol.winner_from[x.0], 1);
    assert_eq!(sol.winner_from[y.0], 2);
    // player 1 must exit at x to avoid handing y the move
    assert_eq!(sol.strategy1.moves, vec![(x, g.vertex("a1").unwrap())]);

    // both terminals to player 2: y always exits to a2, so x cannot cycle either
    let wins = WinAssignment::new(&g, &[(t(0), 2), (t(1), 2), (Outcome::Cycle, 1)]).unwrap();
    let sol = zero_sum_attractor(&g, &wins).unwrap();
    assert_eq!(sol.winner_from[x.0], 2);
    assert_eq!(sol.winner_from[y.0], 2);
}

#[test]
fn main_example_as_coalitions_matches_minimax_everywhere() {
    let g = main_example_game().with_controllers(2, |p| if p % 2 == 1 { 1 } else { 2 }).unwrap();
    let t = Outcome::Terminal;
    let assignments = [
        vec![(t(0), 1), (t(1), 2), (t(2), 1), (t(3), 2), (t(4), 2), (Outcome::Cycle, 2)],
        vec![(t(0), 2), (t(1), 1), (t(2), 2), (t(3), 1), (t(4), 2), (Outcome::Cycle, 1)],
        vec![(t(0), 2), (t(1), 2), (t(2), 2), (t(3), 2), (t(4), 2), (Outcome::Cycle, 1)],
        vec![(t(0), 1), (t(1), 1), (t(2), 1), (t(3), 1), (t(4), 1), (Outcome::Cycle, 2)],
    ];
    for pairs in &assignments {
        let wins = WinAssignment::new(&g, pairs).unwrap();
        let sol = zero_sum_attractor(&g, &wins).unwrap();
        for v in g.vertex_ids() {
            let w = winner_at(&g, &wins, v);
            assert_eq!(sol.winner_from[v.0], w, "vertex {}", g.name(v));
            if !g.is_terminal(v) {
                assert!(guarantees(&g, &wins, sol.strategy(w as usize), v), "vertex {}", g.name(v));
            }
        }
        let mut all: Vec<_> = sol.v1_set.iter().chain(&sol.v2_set).copied().collect();
        all.sort();
        assert_eq!(all, g.vertex_ids().collect::<Vec<_>>());
    }
}

#[test]
fn attractor_rejects_more_than_two_players() {
    let g = main_example_game();
    let pairs: Vec<_> = g.outcomes().map(|o| (o, 1)).collect();
    let wins = WinAssignment::new(&g, &pairs).unwrap();
    assert_eq!(zero_sum_attractor(&g, &wins).unwrap_err(), SolverError::NotTwoPerson(4));
}

#[test]
fn incomplete_assignment_is_rejected() {
    let g = main_example_game();
    let err = WinAssignment::new(&g, &[(Outcome::Cycle, 1)]).unwrap_err();
    assert!(matches!(err, SolverError::IncompleteWinAssignment(_)));
}

#[test]
fn attractor_steps_are_linear() {
    // A long ladder with back edges: 100 000 vertices, about 3 edges each.
    let n = 100_000;
    let mut b = GameBuilder::new(2);
    for i in 0..n {
        b = b.position(&format!("p{i}"), 1 + i % 2);
    }
    b = b.terminal("a1").terminal("a2");
    for i in 0..n {
        let here = format!("p{i}");
        let next = if i + 1 < n { format!("p{}", i + 1) } else { "a1".to_string() };
        b = b.edge(&here, &next);
        if i % 7 == 3 {
            b = b.edge(&here, "a2");
        }
        if i >= 10 {
            b = b.edge(&here, &format!("p{}", i - 10));
        }
    }
    let g = b.initial("p0").build().unwrap();
    let t = Outcome::Terminal;
    let wins = WinAssignment::new(&g, &[(t(0), 1), (t(1), 2), (Outcome::Cycle, 2)]).unwrap();
    let sol = zero_sum_attractor(&g, &wins).unwrap();
    let bound = g.num_vertices() + g.edges().len();
    assert!(sol.steps <= bound, "{} steps for |V|+|E| = {bound}", sol.steps);
    assert_eq!(sol.v1_set.len() + sol.v2_set.len(), g.num_vertices());
}

/// Subgame perfection checked from first principles: from every position,
/// no player has a strictly better strategy against the others' fixed ones.
fn subgame_perfect_by_hand(g: &GameForm, profile: &PreferenceProfile, s: &Situation) -> bool {
    let axes: Vec<_> = (1..=g.num_players()).map(|i| enumerate_strategies(g, i).unwrap()).collect();
    g.positions().all(|start| {
        let base = resolve_play(g, s, start).outcome;
        (0..g.num_players()).all(|p| {
            let order = profile.order(p + 1);
            axes[p].iter().all(|alt| {
                let mut t = s.clone();
                t.strategies[p] = alt.clone();
                order.rank(resolve_play(g, &t, start).outcome) >= order.rank(base)
            })
        })
    })
}

#[test]
fn backward_induction_on_random_trees() {
    let mut r = rng(11);
    let spec =
        RandomGameSpec { max_vertices: 9, num_players: 3, max_terminals: 4, acyclic: true, ..Default::default() };
    for _ in 0..150 {
        let g = random_game(&mut r, &spec);
        let profile = random_profile(&mut r, &g);
        let bi = backward_induction(&g, &profile).unwrap();
        assert!(subgame_perfect_by_hand(&g, &profile, &bi.situation));
        for v in g.positions() {
            assert_eq!(bi.value(v), resolve_play(&g, &bi.situation, v).outcome);
        }
    }
}

#[test]
fn backward_induction_reports_the_cycle() {
    let g = main_example_game();
    let mut r = rng(0);
    let profile = random_profile(&mut r, &g);
    match backward_induction(&g, &profile).unwrap_err() {
        SolverError::Cyclic { witness } => {
            assert_eq!(witness.first(), witness.last());
            for w in witness.windows(2) {
                let (a, b) = (g.vertex(&w[0]).unwrap(), g.vertex(&w[1]).unwrap());
                assert!(g.successors(a).contains(&b));
            }
        }
        e => panic!("unexpected {e:?}"),
    }
}

#[test]
fn random_zero_sum_games_match_minimax() {
    let mut r = rng(5);
    let spec = RandomGameSpec { max_vertices: 7, ..Default::default() };
    for _ in 0..60 {
        let g = random_game(&mut r, &spec);
        let wins = random_wins(&mut r, &g);
        let sol = zero_sum_attractor(&g, &wins).unwrap();
        for v in g.positions() {
            let w = minimax_winner(&g, &wins, v);
            assert_eq!(sol.winner_from[v.0], w);
            assert!(guarantees(&g, &wins, sol.strategy(w as usize), v));
        }
    }
}
