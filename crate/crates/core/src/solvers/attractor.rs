use std::collections::VecDeque;

use crate::error::SolverError;
use crate::game::{GameForm, Outcome, VertexId};
use crate::strategy::Strategy;

/// Which of the two players wins each outcome, cycle included.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct WinAssignment {
    num_terminals: usize,
    winners: Vec<u8>,
}

impl WinAssignment {
    /// `pairs` must name every outcome of `game`; later entries override
    /// earlier ones.
    pub fn new(game: &GameForm, pairs: &[(Outcome, u8)]) -> Result<Self, SolverError> {
        let p = game.num_terminals();
        let mut winners = vec![0u8; p + 1];
        for &(o, w) in pairs {
            winners[o.index(p)] = w;
        }
        if let Some(missing) = game.outcomes().find(|o| !matches!(winners[o.index(p)], 1 | 2)) {
            return Err(SolverError::IncompleteWinAssignment(game.outcome_name(missing).to_string()));
        }
        Ok(WinAssignment { num_terminals: p, winners })
    }

    pub fn winner(&self, o: Outcome) -> u8 {
        self.winners[o.index(self.num_terminals)]
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct AttractorSolution {
    /// Vertices from which player 1 wins, in declaration order.
    pub v1_set: Vec<VertexId>,
    /// Vertices from which player 2 wins, in declaration order.
    pub v2_set: Vec<VertexId>,
    pub strategy1: Strategy,
    pub strategy2: Strategy,
    /// Winner (1 or 2) from each vertex.
    pub winner_from: Vec<u8>,
    /// Elementary steps taken: queue pops plus predecessor-edge visits.
    pub steps: usize,
}

impl AttractorSolution {
    pub fn strategy(&self, player: usize) -> &Strategy {
        if player == 1 {
            &self.strategy1
        } else {
            &self.strategy2
        }
    }
}

/// Solves a two-person win/lose game. The player who loses on the cycle
/// must force the play into their own winning terminals; their winning
/// region is the attractor of those terminals, and the opponent wins
/// everywhere else by staying outside it (reaching their own terminal or
/// cycling forever).
///
/// The attracting player's strategy moves to the successor that pulled the
/// vertex into the attractor, so attractor insertion order strictly
/// decreases along every play it forces.
pub fn zero_sum_attractor(game: &GameForm, wins: &WinAssignment) -> Result<AttractorSolution, SolverError> {
    if game.num_players() != 2 {
        return Err(SolverError::NotTwoPerson(game.num_players()));
    }
    let n = game.num_vertices();
    let defender = wins.winner(Outcome::Cycle);
    let attacker = 3 - defender;
    let mut steps = 0usize;

    let mut preds: Vec<Vec<VertexId>> = vec![Vec::new(); n];
    for &(from, to) in game.edges() {
        preds[to.0].push(from);
    }
    let mut remaining: Vec<usize> = game.vertex_ids().map(|v| game.successors(v).len()).collect();
    let mut in_attr = vec![false; n];
    let mut pull: Vec<Option<VertexId>> = vec![None; n];
    let mut queue = VecDeque::new();
    for &t in game.terminals() {
        let o = game.terminal_outcome(t).unwrap();
        if wins.winner(o) == attacker {
            in_attr[t.0] = true;
            queue.push_back(t);
        }
    }
    while let Some(u) = queue.pop_front() {
        steps += 1;
        for &v in &preds[u.0] {
            steps += 1;
            if in_attr[v.0] {
                continue;
            }
            let controller = game.controller(v).expect("terminals have no out-edges");
            let joins = if controller == attacker as usize {
                true
            } else {
                remaining[v.0] -= 1;
                remaining[v.0] == 0
            };
            if joins {
                in_attr[v.0] = true;
                pull[v.0] = Some(u);
                queue.push_back(v);
            }
        }
    }

    let choose = |v: VertexId| -> VertexId {
        let succ = game.successors(v);
        let controller = game.controller(v).unwrap();
        if controller == attacker as usize {
            if in_attr[v.0] {
                pull[v.0].unwrap()
            } else {
                succ[0]
            }
        } else if in_attr[v.0] {
            succ[0]
        } else {
            *succ.iter().find(|w| !in_attr[w.0]).expect("defender outside the attractor can stay out")
        }
    };
    let strategy = |player: usize| Strategy {
        player,
        moves: game.positions_of(player).into_iter().map(|v| (v, choose(v))).collect(),
    };

    let winner_from: Vec<u8> = in_attr.iter().map(|&a| if a { attacker } else { defender }).collect();
    let (v1_set, v2_set): (Vec<VertexId>, Vec<VertexId>) = game.vertex_ids().partition(|v| winner_from[v.0] == 1);
    Ok(AttractorSolution { v1_set, v2_set, strategy1: strategy(1), strategy2: strategy(2), winner_from, steps })
}
