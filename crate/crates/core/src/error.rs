use thiserror::Error;

use crate::game::ValidationReport;

#[derive(Debug, Error)]
pub enum ParseError {
    #[error("line {line}: {message}")]
    Syntax { line: usize, message: String },
    #[error("line {line}: {message}")]
    Semantic { line: usize, message: String },
    #[error("{0}")]
    Missing(String),
    #[error("invalid game:\n{0}")]
    Invalid(ValidationReport),
}

impl ParseError {
    pub(crate) fn syntax(line: usize, message: impl Into<String>) -> Self {
        ParseError::Syntax { line, message: message.into() }
    }

    pub(crate) fn semantic(line: usize, message: impl Into<String>) -> Self {
        ParseError::Semantic { line, message: message.into() }
    }
}

#[derive(Debug, Error, PartialEq, Eq)]
pub enum GameError {
    #[error("invalid game:\n{0}")]
    Invalid(ValidationReport),
    #[error("player {player} out of range 1..={num_players}")]
    PlayerOutOfRange { player: usize, num_players: usize },
    #[error("normal form too large: {cells} situations exceed the bound {bound}")]
    NormalFormTooLarge { cells: u128, bound: u64 },
    #[error("unknown vertex `{0}`")]
    UnknownVertex(String),
    #[error("k must be at least 2, got {0}")]
    CycleTooShort(usize),
    #[error("{0}")]
    BadArgument(String),
}

#[derive(Debug, Error, PartialEq, Eq)]
pub enum PreferenceError {
    #[error("unknown outcome `{0}`")]
    UnknownOutcome(String),
    #[error("player {player} out of range 1..={num_players}")]
    PlayerOutOfRange { player: usize, num_players: usize },
    #[error("cyclic relation set for player {0}")]
    Cyclic(usize),
    #[error("total order for player {player} is not a permutation of the {expected} outcomes")]
    NotPermutation { player: usize, expected: usize },
    #[error("duplicate preference for player {0}")]
    Duplicate(usize),
    #[error("no preference given for player {0}")]
    MissingPlayer(usize),
    #[error("preference for player {0} is not total")]
    NotTotal(usize),
}

#[derive(Debug, Error, PartialEq, Eq)]
pub enum EquilibriumError {
    #[error(transparent)]
    Game(#[from] GameError),
    #[error("{count} extension profiles exceed the bound {bound}")]
    TooManyProfiles { count: u128, bound: u64 },
    #[error("expected {expected} preferences, got {got}")]
    WrongArity { expected: usize, got: usize },
}

#[derive(Debug, Error, PartialEq, Eq)]
pub enum SolverError {
    #[error("game has a dicycle: {}", .witness.join(" -> "))]
    Cyclic { witness: Vec<String> },
    #[error("not a two-person game ({0} players)")]
    NotTwoPerson(usize),
    #[error("profile has {got} players, game has {expected}")]
    WrongArity { expected: usize, got: usize },
    #[error("incomplete win assignment: no winner for outcome `{0}`")]
    IncompleteWinAssignment(String),
    #[error(transparent)]
    Preference(#[from] PreferenceError),
}
