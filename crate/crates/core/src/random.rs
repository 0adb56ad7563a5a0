//! Seeded random instances for property checks.

use rand::seq::SliceRandom;
use rand::Rng;
use rand_chacha::rand_core::SeedableRng;
use rand_chacha::ChaCha8Rng;

use crate::game::{GameForm, Outcome, Vertex, VertexId, VertexKind};
use crate::preference::{PartialPreference, PreferenceOrder, PreferenceProfile};
use crate::solvers::WinAssignment;

pub fn rng(seed: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed)
}

#[derive(Clone, Copy, Debug)]
pub struct RandomGameSpec {
    pub max_vertices: usize,
    pub num_players: usize,
    pub min_terminals: usize,
    pub max_terminals: usize,
    pub max_out_degree: usize,
    /// Only edges from earlier to later vertices.
    pub acyclic: bool,
}

impl Default for RandomGameSpec {
    fn default() -> Self {
        RandomGameSpec {
            max_vertices: 8,
            num_players: 2,
            min_terminals: 1,
            max_terminals: 3,
            max_out_degree: 3,
            acyclic: false,
        }
    }
}

/// A valid random game. Positions come first in declaration order, then
/// terminals; the initial position is the first position.
pub fn random_game<R: Rng>(rng: &mut R, spec: &RandomGameSpec) -> GameForm {
    assert!(spec.min_terminals >= 1 && spec.min_terminals <= spec.max_terminals);
    assert!(spec.max_vertices > spec.min_terminals);
    let terminals = rng.gen_range(spec.min_terminals..=spec.max_terminals.min(spec.max_vertices - 1));
    let positions = rng.gen_range(1..=spec.max_vertices - terminals);
    let total = positions + terminals;

    let mut vertices = Vec::with_capacity(total);
    for i in 0..positions {
        vertices.push(Vertex {
            name: format!("p{}", i + 1),
            kind: VertexKind::Position { player: rng.gen_range(1..=spec.num_players) },
        });
    }
    for j in 0..terminals {
        vertices.push(Vertex { name: format!("a{}", j + 1), kind: VertexKind::Terminal });
    }

    let mut edges = Vec::new();
    for v in 0..positions {
        let mut targets: Vec<usize> = if spec.acyclic { (v + 1..total).collect() } else { (0..total).collect() };
        targets.shuffle(rng);
        let degree = rng.gen_range(1..=spec.max_out_degree.min(targets.len()));
        for &w in &targets[..degree] {
            edges.push((VertexId(v), VertexId(w)));
        }
    }
    GameForm::new(spec.num_players, vertices, edges, VertexId(0)).expect("generated games are valid")
}

pub fn random_order<R: Rng>(rng: &mut R, player: usize, num_terminals: usize) -> PreferenceOrder {
    let mut ranking: Vec<Outcome> = (0..=num_terminals).map(|i| Outcome::from_index(i, num_terminals)).collect();
    ranking.shuffle(rng);
    PreferenceOrder::new(player, num_terminals, ranking).unwrap()
}

pub fn random_profile<R: Rng>(rng: &mut R, game: &GameForm) -> PreferenceProfile {
    let orders = (1..=game.num_players()).map(|i| random_order(rng, i, game.num_terminals())).collect();
    PreferenceProfile::new(game.num_players(), orders).unwrap()
}

/// Random suborder of a random total order: each comparable pair of the
/// hidden order is kept with probability `density`.
pub fn random_partial<R: Rng>(rng: &mut R, player: usize, num_terminals: usize, density: f64) -> PartialPreference {
    let hidden = random_order(rng, player, num_terminals);
    let r = hidden.ranking();
    let mut pairs = Vec::new();
    for i in 0..r.len() {
        for j in i + 1..r.len() {
            if rng.gen_bool(density) {
                pairs.push((r[i], r[j]));
            }
        }
    }
    PartialPreference::new(player, num_terminals, pairs).unwrap()
}

pub fn random_wins<R: Rng>(rng: &mut R, game: &GameForm) -> WinAssignment {
    let pairs: Vec<_> = game.outcomes().map(|o| (o, rng.gen_range(1..=2u8))).collect();
    WinAssignment::new(game, &pairs).unwrap()
}
