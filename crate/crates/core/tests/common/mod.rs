#![allow(dead_code)]

use cyclegame::game::{GameForm, Outcome, VertexId};
use cyclegame::solvers::WinAssignment;
use cyclegame::strategy::{
    build_normal_form_with, enumerate_strategies, resolve_play, NormalFormOptions, Situation, Strategy,
};

/// Winner of the win/lose game from `start` by exhaustive minimax over the
/// normal form: player 1 wins iff some strategy of theirs beats every
/// strategy of player 2.
pub fn minimax_winner(game: &GameForm, wins: &WinAssignment, start: VertexId) -> u8 {
    let nf = build_normal_form_with(game, NormalFormOptions { start: Some(start), max_cells: 1 << 24 }).unwrap();
    let shape = nf.shape();
    let one_wins = (0..shape[0]).any(|a| (0..shape[1]).all(|b| wins.winner(nf.outcome(&[a, b])) == 1));
    if one_wins {
        1
    } else {
        2
    }
}

/// `true` iff `strategy` wins for its owner from `start` against every
/// strategy of the opponent.
pub fn guarantees(game: &GameForm, wins: &WinAssignment, strategy: &Strategy, start: VertexId) -> bool {
    let me = strategy.player;
    let other = 3 - me;
    enumerate_strategies(game, other).unwrap().into_iter().all(|opp| {
        let mut strategies = vec![strategy.clone(), opp];
        if me == 2 {
            strategies.swap(0, 1);
        }
        let s = Situation::new(game, strategies).unwrap();
        wins.winner(resolve_play(game, &s, start).outcome) as usize == me
    })
}

/// Printed labels of the main example: (1-based coords, outcome token,
/// improver digits).
pub fn printed_main_labels() -> Vec<([usize; 4], String, String)> {
    include_str!("../fixtures/printed_main_labels.txt")
        .lines()
        .filter(|l| !l.starts_with('#'))
        .map(|l| {
            let t: Vec<&str> = l.split_whitespace().collect();
            let c = [0, 1, 2, 3].map(|i| t[i].parse().unwrap());
            (c, t[4].to_string(), t[5].to_string())
        })
        .collect()
}

/// Every simple directed cycle, each reported once starting at its smallest vertex.
pub fn simple_cycles(game: &GameForm) -> Vec<Vec<VertexId>> {
    fn extend(game: &GameForm, root: VertexId, path: &mut Vec<VertexId>, out: &mut Vec<Vec<VertexId>>) {
        let last = *path.last().unwrap();
        for &w in game.successors(last) {
            if w == root {
                out.push(path.clone());
            } else if w > root && !path.contains(&w) {
                path.push(w);
                extend(game, root, path, out);
                path.pop();
            }
        }
    }
    let mut out = Vec::new();
    for v in game.vertex_ids() {
        extend(game, v, &mut vec![v], &mut out);
    }
    out
}

pub fn names(game: &GameForm, vs: &[VertexId]) -> Vec<String> {
    vs.iter().map(|&v| game.name(v).to_string()).collect()
}

pub fn outcome_token(game: &GameForm, o: Outcome) -> String {
    game.outcome_name(o).to_string()
}
