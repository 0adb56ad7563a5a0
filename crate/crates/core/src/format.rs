//! Line-oriented text formats for games, preferences and win assignments.
//!
//! Game files:
//!
//! ```text
//! players 2
//! position v1 player 1
//! terminal a1
//! edge v1 a1
//! init v1
//! ```
//!
//! Preference files hold `pref <i> total <o1> > <o2> > ...` or
//! `pref <i> partial <x>><y> ...` lines; win files hold `win <outcome> <1|2>`.
//! `#` starts a comment and blank lines are ignored everywhere.

use std::collections::HashMap;
use std::fmt::Write as _;

use crate::error::ParseError;
use crate::game::{is_valid_name, GameForm, Outcome, Vertex, VertexId, VertexKind};
use crate::preference::{PartialPreference, PlayerPreference, PreferenceOrder};
use crate::solvers::{AttractorSolution, WinAssignment};

/// Non-empty lines with comments stripped, as (1-based line number, tokens).
fn lines(text: &str) -> impl Iterator<Item = (usize, Vec<&str>)> {
    text.lines().enumerate().filter_map(|(i, line)| {
        let line = line.split('#').next().unwrap_or("");
        let tokens: Vec<&str> = line.split_whitespace().collect();
        (!tokens.is_empty()).then_some((i + 1, tokens))
    })
}

fn parse_index(line: usize, token: &str, what: &str) -> Result<usize, ParseError> {
    token.parse().map_err(|_| ParseError::syntax(line, format!("expected {what}, found `{token}`")))
}

fn arity(line: usize, tokens: &[&str], n: usize, usage: &str) -> Result<(), ParseError> {
    if tokens.len() != n {
        return Err(ParseError::syntax(line, format!("expected `{usage}`")));
    }
    Ok(())
}

/// Parses a game file without checking the structural invariants; see
/// [`GameForm::validate`].
pub fn parse_game_unchecked(text: &str) -> Result<GameForm, ParseError> {
    let mut players: Option<usize> = None;
    let mut vertices: Vec<Vertex> = Vec::new();
    let mut index: HashMap<String, VertexId> = HashMap::new();
    let mut edges: Vec<(usize, &str, &str)> = Vec::new();
    let mut init: Option<(usize, &str)> = None;

    for (line, tokens) in lines(text) {
        if players.is_none() && tokens[0] != "players" {
            return Err(ParseError::syntax(line, "missing players declaration"));
        }
        match tokens[0] {
            "players" => {
                arity(line, &tokens, 2, "players <n>")?;
                if players.is_some() {
                    return Err(ParseError::semantic(line, "duplicate players declaration"));
                }
                players = Some(parse_index(line, tokens[1], "a player count")?);
            }
            "position" | "terminal" => {
                let kind = if tokens[0] == "position" {
                    arity(line, &tokens, 4, "position <name> player <i>")?;
                    if tokens[2] != "player" {
                        return Err(ParseError::syntax(line, "expected `position <name> player <i>`"));
                    }
                    VertexKind::Position { player: parse_index(line, tokens[3], "a player index")? }
                } else {
                    arity(line, &tokens, 2, "terminal <name>")?;
                    VertexKind::Terminal
                };
                let name = tokens[1];
                if !is_valid_name(name) {
                    return Err(ParseError::semantic(line, format!("invalid vertex name `{name}`")));
                }
                if index.contains_key(name) {
                    return Err(ParseError::semantic(line, format!("duplicate declaration of `{name}`")));
                }
                index.insert(name.to_string(), VertexId(vertices.len()));
                vertices.push(Vertex { name: name.to_string(), kind });
            }
            "edge" => {
                arity(line, &tokens, 3, "edge <from> <to>")?;
                edges.push((line, tokens[1], tokens[2]));
            }
            "init" => {
                arity(line, &tokens, 2, "init <name>")?;
                if init.is_some() {
                    return Err(ParseError::semantic(line, "duplicate init"));
                }
                init = Some((line, tokens[1]));
            }
            other => return Err(ParseError::syntax(line, format!("unknown directive `{other}`"))),
        }
    }

    let num_players = players.ok_or_else(|| ParseError::syntax(1, "missing players declaration"))?;
    let resolve = |line: usize, name: &str| {
        index.get(name).copied().ok_or_else(|| ParseError::semantic(line, format!("unknown vertex `{name}`")))
    };
    let edges = edges
        .into_iter()
        .map(|(line, f, t)| Ok((resolve(line, f)?, resolve(line, t)?)))
        .collect::<Result<Vec<_>, ParseError>>()?;
    let (init_line, init_name) = init.ok_or_else(|| ParseError::Missing("missing init".into()))?;
    let initial = resolve(init_line, init_name)?;
    Ok(GameForm::new_unchecked(num_players, vertices, edges, initial))
}

/// Parses and validates a game file.
pub fn parse_game(text: &str) -> Result<GameForm, ParseError> {
    let game = parse_game_unchecked(text)?;
    let report = game.validate();
    if !report.is_valid() {
        return Err(ParseError::Invalid(report));
    }
    Ok(game)
}

/// Canonical text: players line, vertices in declaration order, edges in
/// declaration order, init line.
pub fn serialize_game(game: &GameForm) -> String {
    let mut out = String::new();
    writeln!(out, "players {}", game.num_players()).unwrap();
    for v in game.vertices() {
        match v.kind {
            VertexKind::Position { player } => writeln!(out, "position {} player {player}", v.name).unwrap(),
            VertexKind::Terminal => writeln!(out, "terminal {}", v.name).unwrap(),
        }
    }
    for &(f, t) in game.edges() {
        writeln!(out, "edge {} {}", game.name(f), game.name(t)).unwrap();
    }
    writeln!(out, "init {}", game.name(game.initial())).unwrap();
    out
}

fn outcome(game: &GameForm, line: usize, token: &str) -> Result<Outcome, ParseError> {
    game.outcome_by_name(token).ok_or_else(|| ParseError::semantic(line, format!("unknown outcome `{token}`")))
}

/// Parses a preference file; exactly one entry per player is required.
/// Returned entries are ordered by player.
pub fn parse_preferences(text: &str, game: &GameForm) -> Result<Vec<PlayerPreference>, ParseError> {
    let n = game.num_players();
    let p = game.num_terminals();
    let mut slots: Vec<Option<PlayerPreference>> = vec![None; n];
    for (line, tokens) in lines(text) {
        if tokens[0] != "pref" || tokens.len() < 3 {
            return Err(ParseError::syntax(line, "expected `pref <i> total|partial ...`"));
        }
        let player = parse_index(line, tokens[1], "a player index")?;
        if player == 0 || player > n {
            return Err(ParseError::semantic(line, format!("player {player} out of range 1..={n}")));
        }
        if slots[player - 1].is_some() {
            return Err(ParseError::semantic(line, format!("duplicate preference for player {player}")));
        }
        let entry = match tokens[2] {
            "total" => {
                let chain = tokens[3..].join(" ");
                let ranking = chain.split('>').map(|t| outcome(game, line, t.trim())).collect::<Result<Vec<_>, _>>()?;
                let order =
                    PreferenceOrder::new(player, p, ranking).map_err(|e| ParseError::semantic(line, e.to_string()))?;
                PlayerPreference::Total(order)
            }
            "partial" => {
                let mut relations = Vec::new();
                for pair in &tokens[3..] {
                    let (x, y) = pair
                        .split_once('>')
                        .ok_or_else(|| ParseError::syntax(line, format!("expected `<x>><y>`, found `{pair}`")))?;
                    relations.push((outcome(game, line, x)?, outcome(game, line, y)?));
                }
                let partial = PartialPreference::new(player, p, relations)
                    .map_err(|e| ParseError::semantic(line, e.to_string()))?;
                PlayerPreference::Partial(partial)
            }
            other => return Err(ParseError::syntax(line, format!("expected `total` or `partial`, found `{other}`"))),
        };
        slots[player - 1] = Some(entry);
    }
    slots
        .into_iter()
        .enumerate()
        .map(|(i, s)| s.ok_or_else(|| ParseError::Missing(format!("no preference given for player {}", i + 1))))
        .collect()
}

pub fn serialize_preferences(game: &GameForm, prefs: &[PlayerPreference]) -> String {
    let mut out = String::new();
    for (i, pref) in prefs.iter().enumerate() {
        match pref {
            PlayerPreference::Total(o) => {
                let chain: Vec<_> = o.ranking().iter().map(|&x| game.outcome_name(x)).collect();
                writeln!(out, "pref {} total {}", i + 1, chain.join(" > ")).unwrap();
            }
            PlayerPreference::Partial(p) => {
                write!(out, "pref {} partial", i + 1).unwrap();
                for &(x, y) in p.relations() {
                    write!(out, " {}>{}", game.outcome_name(x), game.outcome_name(y)).unwrap();
                }
                out.push('\n');
            }
        }
    }
    out
}

pub fn parse_win_assignment(text: &str, game: &GameForm) -> Result<WinAssignment, ParseError> {
    let mut pairs = Vec::new();
    for (line, tokens) in lines(text) {
        if tokens[0] != "win" {
            return Err(ParseError::syntax(line, "expected `win <outcome> <1|2>`"));
        }
        arity(line, &tokens, 3, "win <outcome> <1|2>")?;
        let o = outcome(game, line, tokens[1])?;
        let w = match tokens[2] {
            "1" => 1,
            "2" => 2,
            other => return Err(ParseError::semantic(line, format!("winner must be 1 or 2, found `{other}`"))),
        };
        pairs.push((o, w));
    }
    WinAssignment::new(game, &pairs).map_err(|e| ParseError::Missing(e.to_string()))
}

pub fn serialize_win_assignment(game: &GameForm, wins: &WinAssignment) -> String {
    game.outcomes().map(|o| format!("win {} {}\n", game.outcome_name(o), wins.winner(o))).collect()
}

/// Vertex sets and both strategies as `move <v> <w>` lines.
pub fn format_attractor_solution(game: &GameForm, sol: &AttractorSolution) -> String {
    let names = |set: &[VertexId]| set.iter().map(|&v| game.name(v)).collect::<Vec<_>>().join(" ");
    let mut out = String::new();
    writeln!(out, "v1_set {}", names(&sol.v1_set)).unwrap();
    writeln!(out, "v2_set {}", names(&sol.v2_set)).unwrap();
    for player in 1..=2 {
        writeln!(out, "strategy {player}").unwrap();
        for &(v, w) in &sol.strategy(player).moves {
            writeln!(out, "move {} {}", game.name(v), game.name(w)).unwrap();
        }
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;

    const GAME: &str = "\
# two-cycle
players 2
position v1 player 1
position v2 player 2   # trailing comment
terminal a1
terminal a2

edge v1 v2
edge v1 a1
edge v2 v1
edge v2 a2
init v1
";

    #[test]
    fn parses_and_round_trips() {
        let g = parse_game(GAME).unwrap();
        assert_eq!(g.num_vertices(), 4);
        assert_eq!(g.edges().len(), 4);
        let again = parse_game(&serialize_game(&g)).unwrap();
        assert_eq!(g, again);
    }

    #[test]
    fn empty_input() {
        let err = parse_game("").unwrap_err();
        assert!(err.to_string().contains("missing players declaration"), "{err}");
        let err = parse_game("# nothing\n\nterminal a\n").unwrap_err();
        assert!(err.to_string().contains("missing players declaration"), "{err}");
    }

    #[test]
    fn undeclared_edge_endpoint() {
        let err = parse_game("players 1\nposition u1 player 1\nterminal a\nedge u1 x9\ninit u1\n").unwrap_err();
        assert!(matches!(err, ParseError::Semantic { line: 4, .. }), "{err:?}");
        assert!(err.to_string().contains("x9"));
    }

    #[test]
    fn semantic_errors() {
        let dup = "players 1\nposition u player 1\nterminal u\n";
        assert!(matches!(parse_game(dup), Err(ParseError::Semantic { line: 3, .. })));
        let no_init = "players 1\nposition u player 1\nterminal a\nedge u a\n";
        assert!(parse_game(no_init).unwrap_err().to_string().contains("missing init"));
        let reserved = "players 1\nposition c player 1\n";
        assert!(matches!(parse_game(reserved), Err(ParseError::Semantic { line: 2, .. })));
        let bad = "players 1\nposition u playa 1\n";
        assert!(matches!(parse_game(bad), Err(ParseError::Syntax { line: 2, .. })));
    }

    #[test]
    fn structural_violations_surface_after_parsing() {
        let text = "players 1\nposition u player 1\nterminal a\nedge u a\nedge a u\ninit u\n";
        let g = parse_game_unchecked(text).unwrap();
        assert!(!g.validate().is_valid());
        assert!(matches!(parse_game(text), Err(ParseError::Invalid(_))));
    }

    #[test]
    fn preferences() {
        let g = parse_game(GAME).unwrap();
        let prefs = parse_preferences("pref 1 total c > a1 > a2\npref 2 partial a1>a2 a2>c\n", &g).unwrap();
        assert!(matches!(prefs[0], PlayerPreference::Total(_)));
        let PlayerPreference::Partial(p) = &prefs[1] else { panic!() };
        assert_eq!(p.count_extensions(), 1);
        let text = serialize_preferences(&g, &prefs);
        assert_eq!(parse_preferences(&text, &g).unwrap(), prefs);

        let cyclic = parse_preferences("pref 1 partial a1>a2 a2>a1\npref 2 partial\n", &g).unwrap_err();
        assert!(cyclic.to_string().contains("cyclic relation set"), "{cyclic}");
        assert!(parse_preferences("pref 3 partial\n", &g).unwrap_err().to_string().contains("out of range"));
        assert!(parse_preferences("pref 1 partial a1>zz\n", &g).unwrap_err().to_string().contains("unknown outcome"));
        assert!(parse_preferences("pref 1 partial\n", &g).unwrap_err().to_string().contains("player 2"));
        assert!(parse_preferences("pref 1 total a1 > a2\npref 2 partial\n", &g).is_err());
    }

    #[test]
    fn win_files() {
        let g = parse_game(GAME).unwrap();
        let w = parse_win_assignment("win a1 2\nwin a2 2\nwin c 1\n", &g).unwrap();
        assert_eq!(w.winner(Outcome::Cycle), 1);
        assert_eq!(parse_win_assignment(&serialize_win_assignment(&g, &w), &g).unwrap(), w);
        assert!(parse_win_assignment("win a1 2\n", &g).unwrap_err().to_string().contains("a2"));
        assert!(parse_win_assignment("win a1 3\n", &g).is_err());
    }
}
