use crate::error::SolverError;
use crate::game::{GameForm, Outcome, VertexId};
use crate::preference::{Preference, PreferenceProfile};
use crate::strategy::{Situation, Strategy};

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct BackwardInduction {
    pub situation: Situation,
    /// Outcome reached from each vertex under `situation`.
    pub values: Vec<Outcome>,
}

impl BackwardInduction {
    pub fn value(&self, v: VertexId) -> Outcome {
        self.values[v.0]
    }
}

/// Kuhn-Gale backward induction on a digraph without dicycles. Vertices are
/// settled sinks-first; each controller picks the successor whose settled
/// outcome ranks best in their order, the earliest declared edge on ties.
pub fn backward_induction(game: &GameForm, profile: &PreferenceProfile) -> Result<BackwardInduction, SolverError> {
    if let Some(cycle) = game.find_dicycle() {
        let mut witness: Vec<String> = cycle.iter().map(|&v| game.name(v).to_string()).collect();
        witness.push(witness[0].clone());
        return Err(SolverError::Cyclic { witness });
    }
    if profile.num_players() != game.num_players() {
        return Err(SolverError::WrongArity { expected: game.num_players(), got: profile.num_players() });
    }

    let n = game.num_vertices();
    let order = postorder(game);
    let mut values: Vec<Option<Outcome>> = vec![None; n];
    let mut choice: Vec<Option<VertexId>> = vec![None; n];
    for v in order {
        if let Some(o) = game.terminal_outcome(v) {
            values[v.0] = Some(o);
            continue;
        }
        let pref = profile.order(game.controller(v).expect("non-terminal"));
        let mut best: Option<(VertexId, Outcome)> = None;
        for &w in game.successors(v) {
            let o = values[w.0].expect("successors settle first");
            if best.is_none_or(|(_, b)| pref.prefers(o, b)) {
                best = Some((w, o));
            }
        }
        let (w, o) = best.expect("positions have moves");
        choice[v.0] = Some(w);
        values[v.0] = Some(o);
    }

    let strategies = (1..=game.num_players())
        .map(|player| Strategy {
            player,
            moves: game.positions_of(player).into_iter().map(|v| (v, choice[v.0].unwrap())).collect(),
        })
        .collect();
    Ok(BackwardInduction {
        situation: Situation { strategies },
        values: values.into_iter().map(Option::unwrap).collect(),
    })
}

// DFS postorder: every vertex after all of its successors.
fn postorder(game: &GameForm) -> Vec<VertexId> {
    let n = game.num_vertices();
    let mut visited = vec![false; n];
    let mut out = Vec::with_capacity(n);
    for root in game.vertex_ids() {
        if visited[root.0] {
            continue;
        }
        visited[root.0] = true;
        let mut stack = vec![(root, 0usize)];
        while let Some(top) = stack.last_mut() {
            let (v, slot) = *top;
            if let Some(&w) = game.successors(v).get(slot) {
                top.1 += 1;
                if !visited[w.0] {
                    visited[w.0] = true;
                    stack.push((w, 0));
                }
            } else {
                out.push(v);
                stack.pop();
            }
        }
    }
    out
}
