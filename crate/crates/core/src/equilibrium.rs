//! Nash and subgame perfect equilibria over a normal form.
//!
//! A player improves a situation when some unilateral change of their whole
//! strategy yields an outcome they strictly prefer. Under a partial order
//! "strictly prefer" means the pair is in the closure, so an improvement
//! found there is an improvement under every linear extension. A table in
//! which every situation has an improver therefore certifies that no
//! agreeing total profile has a Nash equilibrium.

use std::collections::BTreeSet;
use std::fmt;

use rayon::prelude::*;

use crate::error::EquilibriumError;
use crate::game::{GameForm, Outcome, VertexId};
use crate::preference::{linear_extensions, PartialPreference, Preference, PreferenceOrder, PreferenceProfile};
use crate::strategy::{
    build_normal_form_with, enumerate_strategies, resolve_play, NormalForm, NormalFormOptions, Situation,
};

/// Default bound on the number of extension profiles examined exhaustively.
pub const DEFAULT_MAX_PROFILES: u64 = 1_000_000;

/// Players (1-based, ascending) who can strictly improve the situation at
/// `coords` by changing their own strategy.
pub fn improving_players<P: Preference>(nf: &NormalForm, coords: &[usize], prefs: &[P]) -> Vec<usize> {
    let index = nf.index(coords);
    (1..=nf.num_players()).filter(|&i| player_improves(nf, index, i, &prefs[i - 1])).collect()
}

fn player_improves<P: Preference + ?Sized>(nf: &NormalForm, index: usize, player: usize, pref: &P) -> bool {
    let current = nf.cells()[index];
    let stride = nf.stride(player);
    let own = (index / stride) % nf.axes()[player - 1].len();
    let base = index - own * stride;
    (0..nf.axes()[player - 1].len()).any(|k| {
        let alt = nf.cells()[base + k * stride];
        alt != current && pref.prefers(alt, current)
    })
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ImprovementLabel {
    pub coords: Vec<usize>,
    pub outcome: Outcome,
    pub improvers: Vec<usize>,
}

impl ImprovementLabel {
    /// Improvers as concatenated digits, e.g. `"234"`; players above 9 are
    /// separated by `+`.
    pub fn improvers_string(&self) -> String {
        if self.improvers.iter().all(|&i| i < 10) {
            self.improvers.iter().map(|i| i.to_string()).collect()
        } else {
            self.improvers.iter().map(|i| i.to_string()).collect::<Vec<_>>().join("+")
        }
    }
}

/// Labels for every situation, in flat-index order.
pub fn label_table<P: Preference + Sync>(nf: &NormalForm, prefs: &[P]) -> Vec<ImprovementLabel> {
    (0..nf.len())
        .into_par_iter()
        .map(|index| {
            let coords = nf.coords(index);
            let improvers = (1..=nf.num_players()).filter(|&i| player_improves(nf, index, i, &prefs[i - 1])).collect();
            ImprovementLabel { coords, outcome: nf.cells()[index], improvers }
        })
        .collect()
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum NeMode {
    TotalOrder,
    PartialCertificate,
    AllExtensions,
}

impl fmt::Display for NeMode {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            NeMode::TotalOrder => "total-order",
            NeMode::PartialCertificate => "partial-certificate",
            NeMode::AllExtensions => "all-extensions",
        })
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct NeReport {
    pub mode: NeMode,
    /// Situations (strategy indices) that are equilibria. In certificate
    /// mode these are the uncertified situations; in all-extensions mode the
    /// union over profiles.
    pub equilibria: Vec<Vec<usize>>,
    /// Total profiles examined, or covered in certificate mode.
    pub profile_count: u128,
    /// Profiles under which at least one equilibrium exists.
    pub profiles_with_equilibria: u128,
}

impl NeReport {
    pub fn is_ne_free(&self) -> bool {
        self.equilibria.is_empty()
    }

    /// Machine-readable trailer line.
    pub fn trailer(&self) -> String {
        format!(
            "RESULT ne_free={} profiles={} equilibria={}",
            self.is_ne_free(),
            self.profile_count,
            self.equilibria.len()
        )
    }
}

fn check_arity(nf: &NormalForm, got: usize) -> Result<(), EquilibriumError> {
    if got != nf.num_players() {
        return Err(EquilibriumError::WrongArity { expected: nf.num_players(), got });
    }
    Ok(())
}

/// All pure Nash equilibria under a total profile.
pub fn find_nash_equilibria(nf: &NormalForm, profile: &PreferenceProfile) -> Result<NeReport, EquilibriumError> {
    check_arity(nf, profile.num_players())?;
    let orders = profile.orders();
    let equilibria: Vec<Vec<usize>> = (0..nf.len())
        .into_par_iter()
        .filter(|&index| (1..=nf.num_players()).all(|i| !player_improves(nf, index, i, &orders[i - 1])))
        .map(|index| nf.coords(index))
        .collect();
    let with = u128::from(!equilibria.is_empty());
    Ok(NeReport { mode: NeMode::TotalOrder, equilibria, profile_count: 1, profiles_with_equilibria: with })
}

#[derive(Clone, Debug)]
pub struct Certificate {
    pub labels: Vec<ImprovementLabel>,
    pub report: NeReport,
}

impl Certificate {
    pub fn certified(&self) -> bool {
        self.report.is_ne_free()
    }

    /// First situation without a certified improver, a potential equilibrium
    /// for some extension profile.
    pub fn first_uncertified(&self) -> Option<&[usize]> {
        self.report.equilibria.first().map(Vec::as_slice)
    }
}

/// Labels every situation against the partial orders; succeeds iff every
/// label is nonempty.
pub fn verify_ne_free_certificate(
    nf: &NormalForm,
    partials: &[PartialPreference],
) -> Result<Certificate, EquilibriumError> {
    check_arity(nf, partials.len())?;
    let labels = label_table(nf, partials);
    let equilibria = labels.iter().filter(|l| l.improvers.is_empty()).map(|l| l.coords.clone()).collect();
    let covered = partials.iter().map(PartialPreference::count_extensions).product();
    let report =
        NeReport { mode: NeMode::PartialCertificate, equilibria, profile_count: covered, profiles_with_equilibria: 0 };
    Ok(Certificate { labels, report })
}

/// Fixed-size bit set over situations.
#[derive(Clone)]
struct CellSet(Vec<u64>);

impl CellSet {
    fn new(len: usize) -> Self {
        CellSet(vec![0; len.div_ceil(64)])
    }

    fn insert(&mut self, i: usize) {
        self.0[i / 64] |= 1 << (i % 64);
    }

    fn union_with(&mut self, other: &CellSet) {
        for (a, b) in self.0.iter_mut().zip(&other.0) {
            *a |= b;
        }
    }
}

fn improver_set<P: Preference>(nf: &NormalForm, player: usize, pref: &P) -> CellSet {
    let mut set = CellSet::new(nf.len());
    for index in 0..nf.len() {
        if player_improves(nf, index, player, pref) {
            set.insert(index);
        }
    }
    set
}

fn extension_lists(
    partials: &[PartialPreference],
    max_profiles: u64,
) -> Result<(Vec<Vec<PreferenceOrder>>, u128), EquilibriumError> {
    let count: u128 = partials.iter().map(PartialPreference::count_extensions).product();
    if count > max_profiles as u128 {
        return Err(EquilibriumError::TooManyProfiles { count, bound: max_profiles });
    }
    Ok((partials.iter().map(|p| linear_extensions(p).collect()).collect(), count))
}

/// Runs over every profile of per-player choices, each player `i` contributing
/// one of `sets[i]`; a cell is an equilibrium of a profile when no chosen set
/// contains it. Returns (union of equilibria, profiles with equilibria).
fn sweep_profiles(sets: &[Vec<CellSet>], cells: usize, count: u128) -> (BTreeSet<usize>, u128) {
    let words = cells.div_ceil(64);
    let tail_mask = if cells.is_multiple_of(64) { u64::MAX } else { (1u64 << (cells % 64)) - 1 };
    let radices: Vec<usize> = sets.iter().map(Vec::len).collect();
    (0..count as usize)
        .into_par_iter()
        .map(|mut k| {
            let mut covered = vec![0u64; words];
            for (player_sets, &r) in sets.iter().zip(&radices) {
                let chosen = &player_sets[k % r].0;
                k /= r;
                for (c, s) in covered.iter_mut().zip(chosen) {
                    *c |= s;
                }
            }
            let mut found = BTreeSet::new();
            for (w, &c) in covered.iter().enumerate() {
                let mut free = !c;
                if w == words - 1 {
                    free &= tail_mask;
                }
                while free != 0 {
                    let bit = free.trailing_zeros() as usize;
                    found.insert(w * 64 + bit);
                    free &= free - 1;
                }
            }
            found
        })
        .fold(
            || (BTreeSet::new(), 0u128),
            |(mut all, n), found| {
                let hit = !found.is_empty();
                all.extend(found);
                (all, n + u128::from(hit))
            },
        )
        .reduce(
            || (BTreeSet::new(), 0u128),
            |(mut a, n), (b, m)| {
                a.extend(b);
                (a, n + m)
            },
        )
}

/// Runs the Nash equilibrium search for every combination of linear
/// extensions of the partial orders.
pub fn verify_ne_free_all_extensions(
    nf: &NormalForm,
    partials: &[PartialPreference],
    max_profiles: u64,
) -> Result<NeReport, EquilibriumError> {
    check_arity(nf, partials.len())?;
    let (extensions, count) = extension_lists(partials, max_profiles)?;
    let sets: Vec<Vec<CellSet>> = extensions
        .iter()
        .enumerate()
        .map(|(i, exts)| exts.iter().map(|e| improver_set(nf, i + 1, e)).collect())
        .collect();
    let (union, with) = sweep_profiles(&sets, nf.len(), count);
    Ok(NeReport {
        mode: NeMode::AllExtensions,
        equilibria: union.into_iter().map(|i| nf.coords(i)).collect(),
        profile_count: count,
        profiles_with_equilibria: with,
    })
}

/// Normal forms of `game` from every non-terminal start vertex. They share
/// the same strategy axes.
pub fn normal_forms_from_all_starts(game: &GameForm, max_cells: u64) -> Result<Vec<NormalForm>, EquilibriumError> {
    game.positions()
        .map(|v| Ok(build_normal_form_with(game, NormalFormOptions { start: Some(v), max_cells })?))
        .collect()
}

/// Set of situations where `player` improves from at least one start.
fn improver_set_any_start<P: Preference>(forms: &[NormalForm], player: usize, pref: &P) -> CellSet {
    let mut set = CellSet::new(forms[0].len());
    for nf in forms {
        set.union_with(&improver_set(nf, player, pref));
    }
    set
}

/// Situations that are Nash equilibria from every non-terminal start vertex.
pub fn subgame_perfect(
    game: &GameForm,
    profile: &PreferenceProfile,
    max_cells: u64,
) -> Result<Vec<Vec<usize>>, EquilibriumError> {
    let forms = normal_forms_from_all_starts(game, max_cells)?;
    check_arity(&forms[0], profile.num_players())?;
    let sets: Vec<Vec<CellSet>> =
        profile.orders().iter().enumerate().map(|(i, o)| vec![improver_set_any_start(&forms, i + 1, o)]).collect();
    let (found, _) = sweep_profiles(&sets, forms[0].len(), 1);
    Ok(found.into_iter().map(|i| forms[0].coords(i)).collect())
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SpneReport {
    pub profile_count: u128,
    pub profiles_with_spne: u128,
    /// Union over profiles of the subgame perfect situations.
    pub situations: Vec<Vec<usize>>,
}

impl SpneReport {
    pub fn is_spne_free(&self) -> bool {
        self.profiles_with_spne == 0
    }

    pub fn trailer(&self) -> String {
        format!(
            "RESULT spne_free={} profiles={} profiles_with_spne={} situations={}",
            self.is_spne_free(),
            self.profile_count,
            self.profiles_with_spne,
            self.situations.len()
        )
    }
}

/// Subgame perfect equilibria for every combination of linear extensions.
pub fn subgame_perfect_all_extensions(
    game: &GameForm,
    partials: &[PartialPreference],
    max_cells: u64,
    max_profiles: u64,
) -> Result<SpneReport, EquilibriumError> {
    let forms = normal_forms_from_all_starts(game, max_cells)?;
    check_arity(&forms[0], partials.len())?;
    let (extensions, count) = extension_lists(partials, max_profiles)?;
    let sets: Vec<Vec<CellSet>> = extensions
        .iter()
        .enumerate()
        .map(|(i, exts)| exts.iter().map(|e| improver_set_any_start(&forms, i + 1, e)).collect())
        .collect();
    let (union, with) = sweep_profiles(&sets, forms[0].len(), count);
    Ok(SpneReport {
        profile_count: count,
        profiles_with_spne: with,
        situations: union.into_iter().map(|i| forms[0].coords(i)).collect(),
    })
}

/// Direct check of one situation from `start`: resolves every unilateral
/// deviation by walking the play, without building a normal form.
pub fn is_nash_from(game: &GameForm, profile: &PreferenceProfile, s: &Situation, start: VertexId) -> bool {
    let base = resolve_play(game, s, start).outcome;
    (1..=game.num_players()).all(|i| {
        let order = profile.order(i);
        enumerate_strategies(game, i).expect("player in range").into_iter().all(|alt| {
            let mut dev = s.clone();
            dev.strategies[i - 1] = alt;
            !order.prefers(resolve_play(game, &dev, start).outcome, base)
        })
    })
}

/// `true` iff `s` is a Nash equilibrium from every non-terminal start.
pub fn is_subgame_perfect(game: &GameForm, profile: &PreferenceProfile, s: &Situation) -> bool {
    game.positions().all(|v| is_nash_from(game, profile, s, v))
}
