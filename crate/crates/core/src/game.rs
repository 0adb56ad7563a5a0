//! Positional game forms: a digraph whose non-terminal vertices are split
//! among `n` players, a list of terminals, and an initial position.
//!
//! All dicycles share the single outcome [`Outcome::Cycle`], so a game with
//! `p` terminals has `p + 1` outcomes. Outcomes are indexed `0..p` for the
//! terminals in declaration order and `p` for the cycle.

use std::collections::{HashMap, HashSet};
use std::fmt;

use crate::error::GameError;

/// Reserved token naming the cycle outcome.
pub const CYCLE_TOKEN: &str = "c";

/// Index of a vertex in its game's declaration order.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct VertexId(pub usize);

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum VertexKind {
    /// Non-terminal position controlled by a player (1-based).
    Position {
        player: usize,
    },
    Terminal,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Vertex {
    pub name: String,
    pub kind: VertexKind,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Outcome {
    /// 0-based index into the game's terminal list.
    Terminal(usize),
    Cycle,
}

impl Outcome {
    /// Dense index in `0..=num_terminals`, the cycle being last.
    pub fn index(self, num_terminals: usize) -> usize {
        match self {
            Outcome::Terminal(j) => j,
            Outcome::Cycle => num_terminals,
        }
    }

    pub fn from_index(index: usize, num_terminals: usize) -> Outcome {
        if index == num_terminals {
            Outcome::Cycle
        } else {
            debug_assert!(index < num_terminals);
            Outcome::Terminal(index)
        }
    }
}

/// A single broken structural invariant.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Violation {
    NoPlayers,
    BadVertexName(String),
    DuplicateVertex(String),
    PlayerOutOfRange { vertex: String, player: usize },
    EdgeOutOfRange { from: usize, to: usize },
    DuplicateEdge { from: String, to: String },
    TerminalHasOutEdge { terminal: String, to: String },
    PositionWithoutMoves(String),
    InitialOutOfRange(usize),
    InitialIsTerminal(String),
}

impl fmt::Display for Violation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Violation::NoPlayers => write!(f, "game has no players"),
            Violation::BadVertexName(n) => write!(f, "invalid vertex name `{n}`"),
            Violation::DuplicateVertex(n) => write!(f, "duplicate vertex `{n}`"),
            Violation::PlayerOutOfRange { vertex, player } => {
                write!(f, "position {vertex} controlled by out-of-range player {player}")
            }
            Violation::EdgeOutOfRange { from, to } => {
                write!(f, "edge ({from}, {to}) refers to an undeclared vertex")
            }
            Violation::DuplicateEdge { from, to } => write!(f, "duplicate edge {from} -> {to}"),
            Violation::TerminalHasOutEdge { terminal, to } => {
                write!(f, "terminal has out-edge: {terminal} -> {to}")
            }
            Violation::PositionWithoutMoves(n) => write!(f, "position {n} has no moves"),
            Violation::InitialOutOfRange(i) => write!(f, "initial vertex #{i} does not exist"),
            Violation::InitialIsTerminal(n) => write!(f, "initial is terminal: {n}"),
        }
    }
}

#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct ValidationReport {
    pub violations: Vec<Violation>,
}

impl ValidationReport {
    pub fn is_valid(&self) -> bool {
        self.violations.is_empty()
    }
}

impl fmt::Display for ValidationReport {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.violations.is_empty() {
            return write!(f, "valid");
        }
        for (i, v) in self.violations.iter().enumerate() {
            if i > 0 {
                writeln!(f)?;
            }
            write!(f, "- {v}")?;
        }
        Ok(())
    }
}

pub fn is_valid_name(name: &str) -> bool {
    !name.is_empty() && name != CYCLE_TOKEN && !name.chars().any(|c| c.is_whitespace() || c == '>' || c == '#')
}

/// A chess-like positional game form `(G, D, v0)`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct GameForm {
    num_players: usize,
    vertices: Vec<Vertex>,
    edges: Vec<(VertexId, VertexId)>,
    initial: VertexId,
    successors: Vec<Vec<VertexId>>,
    terminals: Vec<VertexId>,
    terminal_index: Vec<Option<usize>>,
}

impl GameForm {
    /// Builds a game and rejects it if [`GameForm::validate`] finds violations.
    pub fn new(
        num_players: usize,
        vertices: Vec<Vertex>,
        edges: Vec<(VertexId, VertexId)>,
        initial: VertexId,
    ) -> Result<Self, GameError> {
        let game = Self::new_unchecked(num_players, vertices, edges, initial);
        let report = game.validate();
        if report.is_valid() {
            Ok(game)
        } else {
            Err(GameError::Invalid(report))
        }
    }

    /// Builds a game without checking invariants. Only [`GameForm::validate`]
    /// and the accessors are meaningful on an invalid game.
    pub fn new_unchecked(
        num_players: usize,
        vertices: Vec<Vertex>,
        edges: Vec<(VertexId, VertexId)>,
        initial: VertexId,
    ) -> Self {
        let n = vertices.len();
        let mut successors = vec![Vec::new(); n];
        for &(from, to) in &edges {
            if from.0 < n && to.0 < n {
                successors[from.0].push(to);
            }
        }
        let mut terminals = Vec::new();
        let mut terminal_index = vec![None; n];
        for (i, v) in vertices.iter().enumerate() {
            if v.kind == VertexKind::Terminal {
                terminal_index[i] = Some(terminals.len());
                terminals.push(VertexId(i));
            }
        }
        GameForm { num_players, vertices, edges, initial, successors, terminals, terminal_index }
    }

    pub fn validate(&self) -> ValidationReport {
        let mut violations = Vec::new();
        let n = self.vertices.len();
        if self.num_players == 0 {
            violations.push(Violation::NoPlayers);
        }
        let mut seen = HashSet::new();
        for v in &self.vertices {
            if !is_valid_name(&v.name) {
                violations.push(Violation::BadVertexName(v.name.clone()));
            }
            if !seen.insert(v.name.as_str()) {
                violations.push(Violation::DuplicateVertex(v.name.clone()));
            }
            if let VertexKind::Position { player } = v.kind {
                if player == 0 || player > self.num_players {
                    violations.push(Violation::PlayerOutOfRange { vertex: v.name.clone(), player });
                }
            }
        }
        let mut seen_edges = HashSet::new();
        for &(from, to) in &self.edges {
            if from.0 >= n || to.0 >= n {
                violations.push(Violation::EdgeOutOfRange { from: from.0, to: to.0 });
                continue;
            }
            if !seen_edges.insert((from, to)) {
                violations.push(Violation::DuplicateEdge {
                    from: self.name(from).to_string(),
                    to: self.name(to).to_string(),
                });
            }
            if self.is_terminal(from) {
                violations.push(Violation::TerminalHasOutEdge {
                    terminal: self.name(from).to_string(),
                    to: self.name(to).to_string(),
                });
            }
        }
        for (i, v) in self.vertices.iter().enumerate() {
            if matches!(v.kind, VertexKind::Position { .. }) && self.successors[i].is_empty() {
                violations.push(Violation::PositionWithoutMoves(v.name.clone()));
            }
        }
        if self.initial.0 >= n {
            violations.push(Violation::InitialOutOfRange(self.initial.0));
        } else if self.is_terminal(self.initial) {
            violations.push(Violation::InitialIsTerminal(self.name(self.initial).to_string()));
        }
        ValidationReport { violations }
    }

    pub fn num_players(&self) -> usize {
        self.num_players
    }

    pub fn num_vertices(&self) -> usize {
        self.vertices.len()
    }

    pub fn num_terminals(&self) -> usize {
        self.terminals.len()
    }

    /// Number of outcomes, terminals plus the cycle.
    pub fn num_outcomes(&self) -> usize {
        self.terminals.len() + 1
    }

    pub fn vertices(&self) -> &[Vertex] {
        &self.vertices
    }

    pub fn vertex_ids(&self) -> impl Iterator<Item = VertexId> {
        (0..self.vertices.len()).map(VertexId)
    }

    pub fn edges(&self) -> &[(VertexId, VertexId)] {
        &self.edges
    }

    pub fn initial(&self) -> VertexId {
        self.initial
    }

    pub fn terminals(&self) -> &[VertexId] {
        &self.terminals
    }

    pub fn name(&self, v: VertexId) -> &str {
        &self.vertices[v.0].name
    }

    pub fn vertex(&self, name: &str) -> Option<VertexId> {
        self.vertices.iter().position(|v| v.name == name).map(VertexId)
    }

    pub fn successors(&self, v: VertexId) -> &[VertexId] {
        &self.successors[v.0]
    }

    pub fn is_terminal(&self, v: VertexId) -> bool {
        self.terminal_index[v.0].is_some()
    }

    /// Terminal outcome for `v`, if `v` is a terminal.
    pub fn terminal_outcome(&self, v: VertexId) -> Option<Outcome> {
        self.terminal_index[v.0].map(Outcome::Terminal)
    }

    pub fn controller(&self, v: VertexId) -> Option<usize> {
        match self.vertices[v.0].kind {
            VertexKind::Position { player } => Some(player),
            VertexKind::Terminal => None,
        }
    }

    /// Non-terminal vertices in declaration order.
    pub fn positions(&self) -> impl Iterator<Item = VertexId> + '_ {
        self.vertex_ids().filter(|&v| !self.is_terminal(v))
    }

    /// Positions controlled by `player`, in declaration order.
    pub fn positions_of(&self, player: usize) -> Vec<VertexId> {
        self.positions().filter(|&v| self.controller(v) == Some(player)).collect()
    }

    pub fn outcome_name(&self, outcome: Outcome) -> &str {
        match outcome {
            Outcome::Terminal(j) => self.name(self.terminals[j]),
            Outcome::Cycle => CYCLE_TOKEN,
        }
    }

    pub fn outcome_by_name(&self, token: &str) -> Option<Outcome> {
        if token == CYCLE_TOKEN {
            return Some(Outcome::Cycle);
        }
        self.vertex(token).and_then(|v| self.terminal_outcome(v))
    }

    /// All outcomes, terminals first in declaration order, the cycle last.
    pub fn outcomes(&self) -> impl Iterator<Item = Outcome> {
        let p = self.terminals.len();
        (0..=p).map(move |i| Outcome::from_index(i, p))
    }

    /// Copy of this game with a different initial position.
    pub fn with_initial(&self, initial: VertexId) -> Result<GameForm, GameError> {
        GameForm::new(self.num_players, self.vertices.clone(), self.edges.clone(), initial)
    }

    /// Copy of this game with controllers reassigned by `remap(old_player)`.
    pub fn with_controllers(&self, num_players: usize, remap: impl Fn(usize) -> usize) -> Result<GameForm, GameError> {
        let vertices = self
            .vertices
            .iter()
            .map(|v| Vertex {
                name: v.name.clone(),
                kind: match v.kind {
                    VertexKind::Position { player } => VertexKind::Position { player: remap(player) },
                    VertexKind::Terminal => VertexKind::Terminal,
                },
            })
            .collect();
        GameForm::new(num_players, vertices, self.edges.clone(), self.initial)
    }

    /// Copy of this game with the edge `from -> to` removed.
    pub fn without_edge(&self, from: &str, to: &str) -> Result<GameForm, GameError> {
        let f = self.vertex(from).ok_or_else(|| GameError::UnknownVertex(from.to_string()))?;
        let t = self.vertex(to).ok_or_else(|| GameError::UnknownVertex(to.to_string()))?;
        let edges = self.edges.iter().copied().filter(|&e| e != (f, t)).collect();
        GameForm::new(self.num_players, self.vertices.clone(), edges, self.initial)
    }

    /// Some dicycle of the digraph, found as the first back edge of an
    /// iterative depth-first search over vertices in declaration order.
    pub fn find_dicycle(&self) -> Option<Vec<VertexId>> {
        #[derive(Clone, Copy, PartialEq)]
        enum Color {
            White,
            Grey,
            Black,
        }
        let n = self.vertices.len();
        let mut color = vec![Color::White; n];
        for root in 0..n {
            if color[root] != Color::White {
                continue;
            }
            // (vertex, next successor slot)
            let mut stack: Vec<(usize, usize)> = vec![(root, 0)];
            color[root] = Color::Grey;
            while let Some(top) = stack.last_mut() {
                let (v, slot) = *top;
                if let Some(&w) = self.successors[v].get(slot) {
                    top.1 += 1;
                    match color[w.0] {
                        Color::White => {
                            color[w.0] = Color::Grey;
                            stack.push((w.0, 0));
                        }
                        Color::Grey => {
                            let start = stack.iter().position(|&(u, _)| u == w.0).unwrap();
                            return Some(stack[start..].iter().map(|&(u, _)| VertexId(u)).collect());
                        }
                        Color::Black => {}
                    }
                } else {
                    color[v] = Color::Black;
                    stack.pop();
                }
            }
        }
        None
    }
}

/// Name-based construction helper.
#[derive(Clone, Debug, Default)]
pub struct GameBuilder {
    num_players: usize,
    vertices: Vec<Vertex>,
    index: HashMap<String, VertexId>,
    edges: Vec<(String, String)>,
    initial: Option<String>,
}

impl GameBuilder {
    pub fn new(num_players: usize) -> Self {
        GameBuilder { num_players, ..Default::default() }
    }

    fn add(&mut self, name: &str, kind: VertexKind) {
        let id = VertexId(self.vertices.len());
        self.index.entry(name.to_string()).or_insert(id);
        self.vertices.push(Vertex { name: name.to_string(), kind });
    }

    pub fn position(mut self, name: &str, player: usize) -> Self {
        self.add(name, VertexKind::Position { player });
        self
    }

    pub fn terminal(mut self, name: &str) -> Self {
        self.add(name, VertexKind::Terminal);
        self
    }

    pub fn edge(mut self, from: &str, to: &str) -> Self {
        self.edges.push((from.to_string(), to.to_string()));
        self
    }

    pub fn initial(mut self, name: &str) -> Self {
        self.initial = Some(name.to_string());
        self
    }

    pub fn build(self) -> Result<GameForm, GameError> {
        let lookup =
            |name: &str| self.index.get(name).copied().ok_or_else(|| GameError::UnknownVertex(name.to_string()));
        let edges =
            self.edges.iter().map(|(f, t)| Ok((lookup(f)?, lookup(t)?))).collect::<Result<Vec<_>, GameError>>()?;
        let initial = match &self.initial {
            Some(name) => lookup(name)?,
            None => return Err(GameError::BadArgument("no initial position".into())),
        };
        GameForm::new(self.num_players, self.vertices, edges, initial)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn tiny() -> GameBuilder {
        GameBuilder::new(1).position("u", 1).terminal("a1").terminal("a2").edge("u", "a1").edge("u", "a2")
    }

    #[test]
    fn tiny_game_is_valid() {
        let g = tiny().initial("u").build().unwrap();
        assert!(g.validate().is_valid());
        assert_eq!(g.num_outcomes(), 3);
        assert_eq!(g.outcome_by_name("a2"), Some(Outcome::Terminal(1)));
        assert_eq!(g.outcome_by_name("c"), Some(Outcome::Cycle));
        assert_eq!(g.outcome_by_name("u"), None);
        assert!(g.find_dicycle().is_none());
    }

    #[test]
    fn terminal_out_edge_is_reported() {
        let err = tiny().edge("a1", "u").initial("u").build().unwrap_err();
        let GameError::Invalid(report) = err else { panic!() };
        assert_eq!(report.violations.len(), 1);
        assert!(report.to_string().contains("terminal has out-edge"));
    }

    #[test]
    fn initial_terminal_is_reported() {
        let err = tiny().initial("a1").build().unwrap_err();
        let GameError::Invalid(report) = err else { panic!() };
        assert_eq!(report.violations, vec![Violation::InitialIsTerminal("a1".into())]);
        assert!(report.to_string().contains("initial is terminal"));
    }

    #[test]
    fn duplicate_edges_and_sinks() {
        let err = tiny().edge("u", "a1").position("w", 1).initial("u").build().unwrap_err();
        let GameError::Invalid(report) = err else { panic!() };
        assert!(report.violations.contains(&Violation::DuplicateEdge { from: "u".into(), to: "a1".into() }));
        assert!(report.violations.contains(&Violation::PositionWithoutMoves("w".into())));
    }

    #[test]
    fn bad_names_and_players() {
        let err = GameBuilder::new(1)
            .position("c", 1)
            .position("x y", 2)
            .terminal("a")
            .edge("c", "a")
            .edge("x y", "a")
            .initial("c")
            .build()
            .unwrap_err();
        let GameError::Invalid(report) = err else { panic!() };
        assert!(report.violations.contains(&Violation::BadVertexName("c".into())));
        assert!(report.violations.contains(&Violation::BadVertexName("x y".into())));
        assert!(report.violations.contains(&Violation::PlayerOutOfRange { vertex: "x y".into(), player: 2 }));
    }

    #[test]
    fn finds_cycle() {
        let g = GameBuilder::new(1)
            .position("x", 1)
            .position("y", 1)
            .terminal("a")
            .edge("x", "a")
            .edge("x", "y")
            .edge("y", "x")
            .initial("x")
            .build()
            .unwrap();
        let cyc = g.find_dicycle().unwrap();
        let names: Vec<_> = cyc.iter().map(|&v| g.name(v)).collect();
        assert_eq!(names, ["x", "y"]);
    }
}
