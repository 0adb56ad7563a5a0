//! Python bindings: `import cyclegame`.

use pyo3::exceptions::{PyRuntimeError, PyValueError};
use pyo3::prelude::*;

use cyclegame::catalog;
use cyclegame::equilibrium::{
    find_nash_equilibria, improving_players, label_table, subgame_perfect, subgame_perfect_all_extensions,
    verify_ne_free_all_extensions, verify_ne_free_certificate, DEFAULT_MAX_PROFILES,
};
use cyclegame::export::{normal_form_csv, normal_form_markdown};
use cyclegame::format::{parse_game, parse_game_unchecked, parse_preferences, serialize_game, serialize_preferences};
use cyclegame::solvers::{backward_induction as solve_bi, zero_sum_attractor, WinAssignment};
use cyclegame::strategy::{
    build_normal_form_with, enumerate_strategies, resolve_play, NormalFormOptions, DEFAULT_MAX_CELLS,
};
use cyclegame::{
    linear_extensions, EquilibriumError, GameError, GameForm, PartialPreference, PlayerPreference, PreferenceProfile,
};

fn value_err(e: impl std::fmt::Display) -> PyErr {
    PyValueError::new_err(e.to_string())
}

fn game_err(e: GameError) -> PyErr {
    match e {
        GameError::NormalFormTooLarge { .. } => PyRuntimeError::new_err(e.to_string()),
        other => value_err(other),
    }
}

fn eq_err(e: EquilibriumError) -> PyErr {
    match e {
        EquilibriumError::Game(g) => game_err(g),
        EquilibriumError::TooManyProfiles { .. } => PyRuntimeError::new_err(e.to_string()),
        other => value_err(other),
    }
}

/// A chess-like game form.
#[pyclass(frozen, skip_from_py_object, module = "cyclegame")]
#[derive(Clone)]
struct Game {
    inner: GameForm,
}

/// One preference (total or partial order) per player.
#[pyclass(frozen, skip_from_py_object, module = "cyclegame")]
#[derive(Clone)]
struct Preferences {
    inner: Vec<PlayerPreference>,
}

impl Preferences {
    fn partials(&self) -> Vec<PartialPreference> {
        self.inner.iter().map(PlayerPreference::to_partial).collect()
    }

    fn profile(&self, n: usize) -> PyResult<PreferenceProfile> {
        PreferenceProfile::from_preferences(n, &self.inner).map_err(value_err)
    }
}

#[pymethods]
impl Preferences {
    #[staticmethod]
    fn parse(text: &str, game: &Game) -> PyResult<Self> {
        Ok(Preferences { inner: parse_preferences(text, &game.inner).map_err(value_err)? })
    }

    fn to_text(&self, game: &Game) -> String {
        serialize_preferences(&game.inner, &self.inner)
    }

    /// `True` iff every player's order is total.
    fn is_total(&self) -> bool {
        self.inner.iter().all(|p| p.as_total().is_some())
    }

    /// Number of linear extensions of each player's order.
    fn extension_counts(&self) -> Vec<u128> {
        self.partials().iter().map(PartialPreference::count_extensions).collect()
    }

    /// Linear extensions of `player`'s order, best outcome first.
    fn linear_extensions(&self, game: &Game, player: usize) -> PyResult<Vec<Vec<String>>> {
        let partials = self.partials();
        let p = partials.get(player.wrapping_sub(1)).ok_or_else(|| value_err(format!("no player {player}")))?;
        Ok(linear_extensions(p)
            .map(|o| o.ranking().iter().map(|&x| game.inner.outcome_name(x).to_string()).collect())
            .collect())
    }
}

#[pymethods]
impl Game {
    /// Parses and validates a game file.
    #[staticmethod]
    fn parse(text: &str) -> PyResult<Self> {
        Ok(Game { inner: parse_game(text).map_err(value_err)? })
    }

    fn to_text(&self) -> String {
        serialize_game(&self.inner)
    }

    #[getter]
    fn num_players(&self) -> usize {
        self.inner.num_players()
    }

    #[getter]
    fn vertices(&self) -> Vec<String> {
        self.inner.vertices().iter().map(|v| v.name.clone()).collect()
    }

    #[getter]
    fn terminals(&self) -> Vec<String> {
        self.inner.terminals().iter().map(|&v| self.inner.name(v).to_string()).collect()
    }

    #[getter]
    fn edges(&self) -> Vec<(String, String)> {
        let g = &self.inner;
        g.edges().iter().map(|&(a, b)| (g.name(a).to_string(), g.name(b).to_string())).collect()
    }

    #[getter]
    fn initial(&self) -> String {
        self.inner.name(self.inner.initial()).to_string()
    }

    /// Outcome tokens: terminals in declaration order, then `c`.
    #[getter]
    fn outcomes(&self) -> Vec<String> {
        self.inner.outcomes().map(|o| self.inner.outcome_name(o).to_string()).collect()
    }

    /// Some dicycle as vertex names (first vertex repeated at the end), or `None`.
    fn find_dicycle(&self) -> Option<Vec<String>> {
        self.inner.find_dicycle().map(|c| c.iter().map(|&v| self.inner.name(v).to_string()).collect())
    }

    /// Strategies of `player` in normal-form order, as `(v, w), ...` strings.
    fn strategies(&self, player: usize) -> PyResult<Vec<String>> {
        let s = enumerate_strategies(&self.inner, player).map_err(game_err)?;
        Ok(s.iter().map(|x| x.describe(&self.inner)).collect())
    }

    #[pyo3(signature = (start=None, max_cells=DEFAULT_MAX_CELLS))]
    fn normal_form(&self, start: Option<&str>, max_cells: u64) -> PyResult<NormalForm> {
        let start = match start {
            Some(name) => Some(self.inner.vertex(name).ok_or_else(|| value_err(format!("unknown vertex {name}")))?),
            None => None,
        };
        let nf = build_normal_form_with(&self.inner, NormalFormOptions { start, max_cells }).map_err(game_err)?;
        Ok(NormalForm { game: self.inner.clone(), inner: nf })
    }

    /// Play of the situation `coords` (0-based strategy indices) from
    /// `start`, as (vertex names, outcome token).
    #[pyo3(signature = (coords, start=None))]
    fn play(&self, coords: Vec<usize>, start: Option<&str>) -> PyResult<(Vec<String>, String)> {
        let nf = self.normal_form(None, DEFAULT_MAX_CELLS)?;
        let s = nf.situation(&coords)?;
        let from = match start {
            Some(name) => self.inner.vertex(name).ok_or_else(|| value_err(format!("unknown vertex {name}")))?,
            None => self.inner.initial(),
        };
        let play = resolve_play(&self.inner, &s, from);
        let path = play.path.iter().map(|&v| self.inner.name(v).to_string()).collect();
        Ok((path, self.inner.outcome_name(play.outcome).to_string()))
    }

    fn __repr__(&self) -> String {
        format!(
            "Game(players={}, vertices={}, terminals={}, initial={})",
            self.inner.num_players(),
            self.inner.num_vertices(),
            self.inner.num_terminals(),
            self.initial()
        )
    }
}

/// Outcome table over all situations.
#[pyclass(frozen, module = "cyclegame")]
struct NormalForm {
    game: GameForm,
    inner: cyclegame::NormalForm,
}

impl NormalForm {
    fn check(&self, coords: &[usize]) -> PyResult<()> {
        let shape = self.inner.shape();
        if coords.len() != shape.len() || coords.iter().zip(&shape).any(|(c, s)| c >= s) {
            return Err(value_err(format!("coordinates {coords:?} outside shape {shape:?}")));
        }
        Ok(())
    }

    fn situation(&self, coords: &[usize]) -> PyResult<cyclegame::Situation> {
        self.check(coords)?;
        Ok(self.inner.situation(coords))
    }
}

#[pymethods]
impl NormalForm {
    #[getter]
    fn shape(&self) -> Vec<usize> {
        self.inner.shape()
    }

    fn __len__(&self) -> usize {
        self.inner.len()
    }

    fn outcome(&self, coords: Vec<usize>) -> PyResult<String> {
        self.check(&coords)?;
        Ok(self.game.outcome_name(self.inner.outcome(&coords)).to_string())
    }

    /// Players (1-based) with a certified improvement at `coords`.
    fn improvers(&self, coords: Vec<usize>, prefs: &Preferences) -> PyResult<Vec<usize>> {
        self.check(&coords)?;
        let partials = prefs.partials();
        if partials.len() != self.inner.num_players() {
            return Err(value_err("one preference per player required"));
        }
        Ok(improving_players(&self.inner, &coords, &partials))
    }

    /// Nash equilibria under a total profile.
    fn nash_equilibria(&self, prefs: &Preferences) -> PyResult<Vec<Vec<usize>>> {
        let profile = prefs.profile(self.inner.num_players())?;
        Ok(find_nash_equilibria(&self.inner, &profile).map_err(eq_err)?.equilibria)
    }

    /// Situations without a certified improver; empty means NE-free for
    /// every agreeing profile.
    fn certificate(&self, prefs: &Preferences) -> PyResult<Vec<Vec<usize>>> {
        Ok(verify_ne_free_certificate(&self.inner, &prefs.partials()).map_err(eq_err)?.report.equilibria)
    }

    /// Exhaustive check over all extension profiles: returns (profiles,
    /// profiles with an equilibrium, equilibrium situations).
    #[pyo3(signature = (prefs, max_profiles=DEFAULT_MAX_PROFILES))]
    fn all_extensions(&self, prefs: &Preferences, max_profiles: u64) -> PyResult<(u128, u128, Vec<Vec<usize>>)> {
        let r = verify_ne_free_all_extensions(&self.inner, &prefs.partials(), max_profiles).map_err(eq_err)?;
        Ok((r.profile_count, r.profiles_with_equilibria, r.equilibria))
    }

    /// CSV rendering; improvers are filled in when `prefs` is given.
    #[pyo3(signature = (prefs=None))]
    fn to_csv(&self, prefs: Option<&Preferences>) -> String {
        let labels = prefs.map(|p| label_table(&self.inner, &p.partials()));
        normal_form_csv(&self.game, &self.inner, labels.as_deref())
    }

    #[pyo3(signature = (prefs=None))]
    fn to_markdown(&self, prefs: Option<&Preferences>) -> String {
        let labels = prefs.map(|p| label_table(&self.inner, &p.partials()));
        normal_form_markdown(&self.game, &self.inner, labels.as_deref())
    }
}

/// Built-in game and preferences by name (`main`, `g2`, `g3`, `g6`).
#[pyfunction]
fn catalog_entry(name: &str) -> PyResult<(Game, Preferences)> {
    let e = catalog::by_name(name)
        .ok_or_else(|| value_err(format!("unknown catalog entry `{name}` (known: {})", catalog::NAMES.join(", "))))?;
    Ok((Game { inner: e.game }, Preferences { inner: e.preferences }))
}

/// Structural violations of a game file, empty when valid.
#[pyfunction]
fn validate(text: &str) -> PyResult<Vec<String>> {
    let g = parse_game_unchecked(text).map_err(value_err)?;
    Ok(g.validate().violations.iter().map(ToString::to_string).collect())
}

/// Subgame perfect situations. Total preferences give the situations for
/// that profile; partial ones give (profiles, profiles with an SPNE,
/// union of situations) over all extensions.
#[pyfunction]
#[pyo3(signature = (game, prefs, max_profiles=DEFAULT_MAX_PROFILES))]
fn spne(game: &Game, prefs: &Preferences, max_profiles: u64) -> PyResult<(u128, u128, Vec<Vec<usize>>)> {
    let g = &game.inner;
    if prefs.is_total() {
        let found = subgame_perfect(g, &prefs.profile(g.num_players())?, DEFAULT_MAX_CELLS).map_err(eq_err)?;
        let with = u128::from(!found.is_empty());
        return Ok((1, with, found));
    }
    let r = subgame_perfect_all_extensions(g, &prefs.partials(), DEFAULT_MAX_CELLS, max_profiles).map_err(eq_err)?;
    Ok((r.profile_count, r.profiles_with_spne, r.situations))
}

/// Backward induction on an acyclic game: (moves as (from, to) names, outcome).
#[pyfunction]
fn backward_induction(game: &Game, prefs: &Preferences) -> PyResult<(Vec<(String, String)>, String)> {
    let g = &game.inner;
    let bi = solve_bi(g, &prefs.profile(g.num_players())?).map_err(value_err)?;
    let moves = bi
        .situation
        .strategies
        .iter()
        .flat_map(|s| s.moves.iter().map(|&(v, w)| (g.name(v).to_string(), g.name(w).to_string())))
        .collect();
    Ok((moves, g.outcome_name(bi.value(g.initial())).to_string()))
}

/// Two-person win/lose game. `wins` maps every outcome token to 1 or 2.
/// Returns (winner per vertex name, moves of player 1, moves of player 2).
#[pyfunction]
#[allow(clippy::type_complexity)]
fn solve_zero_sum(
    game: &Game,
    wins: std::collections::HashMap<String, u8>,
) -> PyResult<(Vec<(String, u8)>, Vec<(String, String)>, Vec<(String, String)>)> {
    let g = &game.inner;
    let mut pairs = Vec::new();
    for (token, w) in &wins {
        let o = g.outcome_by_name(token).ok_or_else(|| value_err(format!("unknown outcome {token}")))?;
        pairs.push((o, *w));
    }
    let wa = WinAssignment::new(g, &pairs).map_err(value_err)?;
    let sol = zero_sum_attractor(g, &wa).map_err(value_err)?;
    let name = |v: cyclegame::VertexId| g.name(v).to_string();
    let winners = g.vertex_ids().map(|v| (name(v), sol.winner_from[v.0])).collect();
    let moves = |p: usize| sol.strategy(p).moves.iter().map(|&(v, w)| (name(v), name(w))).collect();
    Ok((winners, moves(1), moves(2)))
}

#[pymodule]
#[pyo3(name = "cyclegame")]
fn cyclegame_module(m: &Bound<'_, PyModule>) -> PyResult<()> {
    m.add_class::<Game>()?;
    m.add_class::<Preferences>()?;
    m.add_class::<NormalForm>()?;
    m.add_function(wrap_pyfunction!(catalog_entry, m)?)?;
    m.add_function(wrap_pyfunction!(validate, m)?)?;
    m.add_function(wrap_pyfunction!(spne, m)?)?;
    m.add_function(wrap_pyfunction!(backward_induction, m)?)?;
    m.add_function(wrap_pyfunction!(solve_zero_sum, m)?)?;
    Ok(())
}
