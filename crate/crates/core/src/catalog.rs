//! Built-in game instances.
//!
//! The main example is a four-player game on thirteen vertices with a single
//! dicycle and five terminals, whose normal form has no Nash equilibrium for
//! any preference profile agreeing with the attached partial orders. The
//! `G_k` family is a directed `k`-cycle `v1 -> v2 -> ... -> vk -> v1` with a
//! private exit `vj -> aj` at every vertex.

use crate::error::{GameError, PreferenceError};
use crate::game::{GameBuilder, GameForm, Outcome};
use crate::preference::{PartialPreference, PlayerPreference, PreferenceOrder};

/// A game together with one preference entry per player.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CatalogEntry {
    pub name: &'static str,
    pub game: GameForm,
    pub preferences: Vec<PlayerPreference>,
}

impl CatalogEntry {
    pub fn partials(&self) -> Vec<PartialPreference> {
        self.preferences.iter().map(PlayerPreference::to_partial).collect()
    }
}

pub const NAMES: [&str; 4] = ["main", "g2", "g3", "g6"];

pub fn by_name(name: &str) -> Option<CatalogEntry> {
    match name {
        "main" => Some(main_example()),
        "g2" => Some(g2_example()),
        "g3" => Some(g3_example()),
        "g6" => Some(g6_example()),
        _ => None,
    }
}

fn t(j: usize) -> Outcome {
    Outcome::Terminal(j - 1)
}

const C: Outcome = Outcome::Cycle;

fn partial(player: usize, p: usize, pairs: &[(Outcome, Outcome)]) -> PlayerPreference {
    PlayerPreference::Partial(PartialPreference::new(player, p, pairs.to_vec()).expect("catalog orders are acyclic"))
}

fn total(player: usize, p: usize, ranking: &[Outcome]) -> PlayerPreference {
    PlayerPreference::Total(PreferenceOrder::new(player, p, ranking.to_vec()).expect("catalog orders are permutations"))
}

/// Positions and edges are declared so that strategy enumeration yields the
/// conventional numbering: player 1 varies `u1` fastest, then `v1`; player 2
/// `u2`, `v2`, `w2`; player 3 `u3`, `v3`.
pub fn main_example_game() -> GameForm {
    let edges = [
        ("u1", "u2"),
        ("u1", "u3"),
        ("u2", "v1"),
        ("u2", "v3"),
        ("v1", "v2"),
        ("v1", "u4"),
        ("v1", "w2"),
        ("u3", "v3"),
        ("u3", "a1"),
        ("v3", "v2"),
        ("v3", "a2"),
        ("v2", "u4"),
        ("v2", "a3"),
        ("u4", "w2"),
        ("u4", "a4"),
        ("w2", "u3"),
        ("w2", "a5"),
    ];
    let mut b = GameBuilder::new(4)
        .position("u1", 1)
        .position("v1", 1)
        .position("u2", 2)
        .position("v2", 2)
        .position("w2", 2)
        .position("u3", 3)
        .position("v3", 3)
        .position("u4", 4);
    for j in 1..=5 {
        b = b.terminal(&format!("a{j}"));
    }
    for (f, to) in edges {
        b = b.edge(f, to);
    }
    b.initial("u1").build().expect("main example is valid")
}

/// Main example with its four partial orders:
///
/// - player 1: a2 > a4 > a3 > a1 > a5, the cycle unconstrained
/// - player 2: a1, c > a3 > a4, a5 > a2
/// - player 3: a5, c > a1 > a2 > a3, a4
/// - player 4: a1, a2, a3, a5 > a4 > c
pub fn main_example() -> CatalogEntry {
    let p = 5;
    let preferences = vec![
        partial(1, p, &[(t(2), t(4)), (t(4), t(3)), (t(3), t(1)), (t(1), t(5))]),
        partial(2, p, &[(t(1), t(3)), (C, t(3)), (t(3), t(4)), (t(3), t(5)), (t(4), t(2)), (t(5), t(2))]),
        partial(3, p, &[(t(5), t(1)), (C, t(1)), (t(1), t(2)), (t(2), t(3)), (t(2), t(4))]),
        partial(4, p, &[(t(1), t(4)), (t(2), t(4)), (t(3), t(4)), (t(5), t(4)), (t(4), C)]),
    ];
    CatalogEntry { name: "main", game: main_example_game(), preferences }
}

/// `G_k` with `v_j` controlled by `controllers[j - 1]` and initial `v_initial`.
/// Each `v_j` declares its cycle edge before its exit edge.
pub fn build_gk(k: usize, num_players: usize, controllers: &[usize], initial: usize) -> Result<GameForm, GameError> {
    if k < 2 {
        return Err(GameError::CycleTooShort(k));
    }
    if controllers.len() != k {
        return Err(GameError::BadArgument(format!("{} controllers given for k = {k}", controllers.len())));
    }
    if initial == 0 || initial > k {
        return Err(GameError::BadArgument(format!("initial v{initial} outside v1..v{k}")));
    }
    let mut b = GameBuilder::new(num_players);
    for (j, &player) in controllers.iter().enumerate() {
        b = b.position(&format!("v{}", j + 1), player);
    }
    for j in 1..=k {
        b = b.terminal(&format!("a{j}"));
    }
    for j in 1..=k {
        b = b.edge(&format!("v{j}"), &format!("v{}", j % k + 1)).edge(&format!("v{j}"), &format!("a{j}"));
    }
    b.initial(&format!("v{initial}")).build()
}

/// Two players on `G_2`; player 1 ranks the cycle first, player 2 last.
pub fn g2_example() -> CatalogEntry {
    let game = build_gk(2, 2, &[1, 2], 1).unwrap();
    let preferences = vec![total(1, 2, &[C, t(1), t(2)]), total(2, 2, &[t(1), t(2), C])];
    CatalogEntry { name: "g2", game, preferences }
}

/// Three players on `G_3`, the cycle worst for all.
pub fn g3_example() -> CatalogEntry {
    let game = build_gk(3, 3, &[1, 2, 3], 1).unwrap();
    let preferences = vec![
        total(1, 3, &[t(2), t(1), t(3), C]),
        total(2, 3, &[t(3), t(2), t(1), C]),
        total(3, 3, &[t(1), t(3), t(2), C]),
    ];
    CatalogEntry { name: "g3", game, preferences }
}

/// Two players alternating on `G_6`. Player 2's order is the partial order
/// generated by the chains a3 > a2 > a6 > a4 > a5 > c and a6 > a1 > c.
pub fn g6_example() -> CatalogEntry {
    let game = build_gk(6, 2, &[1, 2, 1, 2, 1, 2], 1).unwrap();
    let chain1 = [t(3), t(2), t(6), t(4), t(5), C];
    let chain2 = [t(6), t(1), C];
    let pairs: Vec<_> = chain1.windows(2).chain(chain2.windows(2)).map(|w| (w[0], w[1])).collect();
    let preferences = vec![total(1, 6, &[t(6), t(5), t(2), t(1), t(3), t(4), C]), partial(2, 6, &pairs)];
    CatalogEntry { name: "g6", game, preferences }
}

/// For every player, either no constraint or "every terminal beats the
/// cycle".
pub fn unconstrained_orders(game: &GameForm, cycle_worst: bool) -> Result<Vec<PartialPreference>, PreferenceError> {
    let p = game.num_terminals();
    (1..=game.num_players())
        .map(|i| {
            let pairs = if cycle_worst { (0..p).map(|j| (Outcome::Terminal(j), C)).collect() } else { vec![] };
            PartialPreference::new(i, p, pairs)
        })
        .collect()
}
