//! Pure stationary strategies, plays, and the normal form `g : S -> A`.

use rayon::prelude::*;

use crate::error::GameError;
use crate::game::{GameForm, Outcome, VertexId};

/// Default bound on the number of situations a normal form may have.
pub const DEFAULT_MAX_CELLS: u64 = 10_000_000;

/// A move choice for every position a player controls.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Strategy {
    pub player: usize,
    /// `(position, successor)` pairs in position declaration order.
    pub moves: Vec<(VertexId, VertexId)>,
}

impl Strategy {
    pub fn describe(&self, game: &GameForm) -> String {
        self.moves.iter().map(|&(v, w)| format!("({}, {})", game.name(v), game.name(w))).collect::<Vec<_>>().join(", ")
    }
}

/// One strategy per player, `strategies[i - 1]` belonging to player `i`.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Situation {
    pub strategies: Vec<Strategy>,
}

impl Situation {
    pub fn new(game: &GameForm, strategies: Vec<Strategy>) -> Result<Self, GameError> {
        if strategies.len() != game.num_players() {
            return Err(GameError::BadArgument(format!(
                "situation has {} strategies for {} players",
                strategies.len(),
                game.num_players()
            )));
        }
        for (i, s) in strategies.iter().enumerate() {
            if s.player != i + 1 {
                return Err(GameError::BadArgument(format!("strategy #{} belongs to player {}", i + 1, s.player)));
            }
            let owned = game.positions_of(s.player);
            let domain: Vec<_> = s.moves.iter().map(|m| m.0).collect();
            if domain != owned {
                return Err(GameError::BadArgument(format!("strategy of player {} has the wrong domain", s.player)));
            }
            if let Some(&(v, w)) = s.moves.iter().find(|(v, w)| !game.successors(*v).contains(w)) {
                return Err(GameError::BadArgument(format!("{} -> {} is not a move", game.name(v), game.name(w))));
            }
        }
        Ok(Situation { strategies })
    }

    /// The move chosen at every vertex, `None` at terminals.
    pub fn successor_map(&self, num_vertices: usize) -> Vec<Option<VertexId>> {
        let mut next = vec![None; num_vertices];
        for s in &self.strategies {
            for &(v, w) in &s.moves {
                next[v.0] = Some(w);
            }
        }
        next
    }
}

/// A play: either a path ending at a terminal, or a lasso whose last vertex
/// repeats the vertex at `cycle_start`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Play {
    pub path: Vec<VertexId>,
    pub outcome: Outcome,
    pub cycle_start: Option<usize>,
}

impl Play {
    /// Vertices of the dicycle, for a lasso play.
    pub fn cycle(&self) -> Option<&[VertexId]> {
        self.cycle_start.map(|k| &self.path[k..self.path.len() - 1])
    }
}

/// Strategies of `player`, in mixed-radix order: positions in declaration
/// order with the first position varying fastest, successors in edge
/// declaration order.
pub fn enumerate_strategies(game: &GameForm, player: usize) -> Result<Vec<Strategy>, GameError> {
    if player == 0 || player > game.num_players() {
        return Err(GameError::PlayerOutOfRange { player, num_players: game.num_players() });
    }
    let positions = game.positions_of(player);
    let radices: Vec<usize> = positions.iter().map(|&v| game.successors(v).len()).collect();
    let count: usize = radices.iter().product();
    let mut out = Vec::with_capacity(count);
    let mut digits = vec![0usize; positions.len()];
    for _ in 0..count {
        let moves = positions.iter().zip(&digits).map(|(&v, &d)| (v, game.successors(v)[d])).collect();
        out.push(Strategy { player, moves });
        for (d, &r) in digits.iter_mut().zip(&radices) {
            *d += 1;
            if *d < r {
                break;
            }
            *d = 0;
        }
    }
    Ok(out)
}

/// Follows `s` from `from` until a terminal or the first repeated vertex.
pub fn resolve_play(game: &GameForm, s: &Situation, from: VertexId) -> Play {
    let next = s.successor_map(game.num_vertices());
    let mut seen = vec![usize::MAX; game.num_vertices()];
    let mut path = vec![from];
    let mut v = from;
    loop {
        if let Some(o) = game.terminal_outcome(v) {
            return Play { path, outcome: o, cycle_start: None };
        }
        if seen[v.0] != usize::MAX {
            return Play { path, outcome: Outcome::Cycle, cycle_start: Some(seen[v.0]) };
        }
        seen[v.0] = path.len() - 1;
        v = next[v.0].expect("valid situation moves at every position");
        path.push(v);
    }
}

/// Outcome-only walk over a dense successor table. `stamp` must have one
/// slot per vertex; `epoch` must differ from every value already in it.
pub(crate) fn walk_outcome(game: &GameForm, next: &[usize], from: VertexId, stamp: &mut [u32], epoch: u32) -> Outcome {
    let mut v = from.0;
    loop {
        if let Some(o) = game.terminal_outcome(VertexId(v)) {
            return o;
        }
        if stamp[v] == epoch {
            return Outcome::Cycle;
        }
        stamp[v] = epoch;
        v = next[v];
    }
}

/// Number of situations, i.e. the product of out-degrees over positions.
pub fn situation_count(game: &GameForm) -> u128 {
    game.positions().map(|v| game.successors(v).len() as u128).product()
}

#[derive(Clone, Copy, Debug)]
pub struct NormalFormOptions {
    /// Start vertex; the game's initial position when `None`.
    pub start: Option<VertexId>,
    pub max_cells: u64,
}

impl Default for NormalFormOptions {
    fn default() -> Self {
        NormalFormOptions { start: None, max_cells: DEFAULT_MAX_CELLS }
    }
}

/// Dense table of outcomes over `S_1 x ... x S_n`, player 1's index varying
/// fastest in the flat layout.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct NormalForm {
    start: VertexId,
    axes: Vec<Vec<Strategy>>,
    strides: Vec<usize>,
    cells: Vec<Outcome>,
}

impl NormalForm {
    pub fn start(&self) -> VertexId {
        self.start
    }

    pub fn num_players(&self) -> usize {
        self.axes.len()
    }

    pub fn axes(&self) -> &[Vec<Strategy>] {
        &self.axes
    }

    /// Strategy counts per player.
    pub fn shape(&self) -> Vec<usize> {
        self.axes.iter().map(Vec::len).collect()
    }

    pub fn len(&self) -> usize {
        self.cells.len()
    }

    pub fn is_empty(&self) -> bool {
        self.cells.is_empty()
    }

    pub fn cells(&self) -> &[Outcome] {
        &self.cells
    }

    /// Stride of player `i` (1-based) in the flat layout.
    pub fn stride(&self, player: usize) -> usize {
        self.strides[player - 1]
    }

    /// Flat index of 0-based strategy indices, one per player.
    pub fn index(&self, coords: &[usize]) -> usize {
        coords.iter().zip(&self.strides).map(|(c, s)| c * s).sum()
    }

    pub fn coords(&self, mut index: usize) -> Vec<usize> {
        self.axes
            .iter()
            .map(|axis| {
                let c = index % axis.len();
                index /= axis.len();
                c
            })
            .collect()
    }

    pub fn outcome(&self, coords: &[usize]) -> Outcome {
        self.cells[self.index(coords)]
    }

    pub fn situation(&self, coords: &[usize]) -> Situation {
        Situation { strategies: coords.iter().zip(&self.axes).map(|(&c, axis)| axis[c].clone()).collect() }
    }
}

pub fn build_normal_form(game: &GameForm) -> Result<NormalForm, GameError> {
    build_normal_form_with(game, NormalFormOptions::default())
}

pub fn build_normal_form_with(game: &GameForm, opts: NormalFormOptions) -> Result<NormalForm, GameError> {
    let cells = situation_count(game);
    if cells > opts.max_cells as u128 {
        return Err(GameError::NormalFormTooLarge { cells, bound: opts.max_cells });
    }
    let start = opts.start.unwrap_or(game.initial());
    if start.0 >= game.num_vertices() {
        return Err(GameError::UnknownVertex(format!("#{}", start.0)));
    }
    let axes = (1..=game.num_players()).map(|i| enumerate_strategies(game, i)).collect::<Result<Vec<_>, _>>()?;
    let mut strides = Vec::with_capacity(axes.len());
    let mut acc = 1usize;
    for axis in &axes {
        strides.push(acc);
        acc *= axis.len();
    }
    let total = acc;
    let n = game.num_vertices();
    let cells: Vec<Outcome> = (0..total)
        .into_par_iter()
        .with_min_len(4096)
        .map_init(
            || (vec![usize::MAX; n], vec![0u32; n], 0u32),
            |(next, stamp, epoch), mut idx| {
                for axis in &axes {
                    let s = &axis[idx % axis.len()];
                    idx /= axis.len();
                    for &(v, w) in &s.moves {
                        next[v.0] = w.0;
                    }
                }
                *epoch = epoch.wrapping_add(1);
                if *epoch == 0 {
                    stamp.fill(0);
                    *epoch = 1;
                }
                walk_outcome(game, next, start, stamp, *epoch)
            },
        )
        .collect();
    Ok(NormalForm { start, axes, strides, cells })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::game::GameBuilder;

    fn two_cycle() -> GameForm {
        GameBuilder::new(2)
            .position("v1", 1)
            .position("v2", 2)
            .terminal("a1")
            .terminal("a2")
            .edge("v1", "v2")
            .edge("v1", "a1")
            .edge("v2", "v1")
            .edge("v2", "a2")
            .initial("v1")
            .build()
            .unwrap()
    }

    #[test]
    fn strategies_in_mixed_radix_order() {
        let g = two_cycle();
        let s1 = enumerate_strategies(&g, 1).unwrap();
        assert_eq!(s1.len(), 2);
        assert_eq!(g.name(s1[0].moves[0].1), "v2");
        assert_eq!(g.name(s1[1].moves[0].1), "a1");
        assert!(matches!(enumerate_strategies(&g, 3), Err(GameError::PlayerOutOfRange { .. })));
    }

    #[test]
    fn plays_and_lassos() {
        let g = two_cycle();
        let nf = build_normal_form(&g).unwrap();
        assert_eq!(nf.shape(), vec![2, 2]);
        assert_eq!(nf.outcome(&[0, 0]), Outcome::Cycle);
        assert_eq!(nf.outcome(&[1, 0]), Outcome::Terminal(0));
        assert_eq!(nf.outcome(&[0, 1]), Outcome::Terminal(1));

        let play = resolve_play(&g, &nf.situation(&[0, 0]), g.initial());
        let names: Vec<_> = play.path.iter().map(|&v| g.name(v)).collect();
        assert_eq!(names, ["v1", "v2", "v1"]);
        assert_eq!(play.cycle_start, Some(0));
        assert_eq!(play.cycle().unwrap().len(), 2);

        let play = resolve_play(&g, &nf.situation(&[1, 1]), g.vertex("v2").unwrap());
        assert_eq!(play.path.len(), 2);
        assert_eq!(play.outcome, Outcome::Terminal(1));
        assert_eq!(play.cycle_start, None);
    }

    #[test]
    fn coords_round_trip() {
        let g = two_cycle();
        let nf = build_normal_form(&g).unwrap();
        for i in 0..nf.len() {
            assert_eq!(nf.index(&nf.coords(i)), i);
        }
    }

    #[test]
    fn size_guard() {
        let g = two_cycle();
        let err = build_normal_form_with(&g, NormalFormOptions { start: None, max_cells: 3 }).unwrap_err();
        assert_eq!(err, GameError::NormalFormTooLarge { cells: 4, bound: 3 });
    }

    #[test]
    fn situation_checks_domain() {
        let g = two_cycle();
        let s1 = enumerate_strategies(&g, 1).unwrap();
        let s2 = enumerate_strategies(&g, 2).unwrap();
        assert!(Situation::new(&g, vec![s1[0].clone(), s2[0].clone()]).is_ok());
        assert!(Situation::new(&g, vec![s2[0].clone(), s1[0].clone()]).is_err());
        assert!(Situation::new(&g, vec![s1[0].clone()]).is_err());
    }
}
