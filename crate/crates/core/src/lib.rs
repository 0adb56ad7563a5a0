//! Chess-like positional games on digraphs.
//!
//! A game is a digraph whose non-terminal positions are controlled by `n`
//! players; every play either ends at a terminal or cycles, and all cycles
//! form one shared outcome. Players choose pure stationary strategies. The
//! crate builds the normal form of such a game, finds Nash and subgame
//! perfect equilibria, certifies NE-freeness under partial preference orders,
//! and provides backward induction and the attractor solution of two-person
//! win/lose games.

pub mod catalog;
pub mod equilibrium;
pub mod error;
pub mod export;
pub mod format;
pub mod game;
pub mod preference;
pub mod random;
pub mod solvers;
pub mod strategy;

pub use error::{EquilibriumError, GameError, ParseError, PreferenceError, SolverError};
pub use game::{GameBuilder, GameForm, Outcome, ValidationReport, VertexId};
pub use preference::{
    linear_extensions, PartialPreference, PlayerPreference, Preference, PreferenceOrder, PreferenceProfile,
};
pub use strategy::{build_normal_form, enumerate_strategies, resolve_play, NormalForm, Play, Situation, Strategy};
