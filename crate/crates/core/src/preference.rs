//! Strict preferences over outcomes: total orders, partial orders given as
//! generating pairs, and enumeration of the total orders that agree with a
//! partial one.

use crate::error::PreferenceError;
use crate::game::Outcome;

/// Strict comparison of outcomes on behalf of one player.
pub trait Preference {
    fn player(&self) -> usize;

    /// `true` iff `better` is strictly preferred to `worse`. For a partial
    /// order this only holds when the pair is in the transitive closure.
    fn prefers(&self, better: Outcome, worse: Outcome) -> bool;
}

/// Strict total order over all `p + 1` outcomes, best first.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PreferenceOrder {
    player: usize,
    num_terminals: usize,
    ranking: Vec<Outcome>,
    // rank[outcome index] = position in `ranking`
    rank: Vec<usize>,
}

impl PreferenceOrder {
    pub fn new(player: usize, num_terminals: usize, ranking: Vec<Outcome>) -> Result<Self, PreferenceError> {
        let m = num_terminals + 1;
        let bad = || PreferenceError::NotPermutation { player, expected: m };
        if ranking.len() != m {
            return Err(bad());
        }
        let mut rank = vec![usize::MAX; m];
        for (pos, o) in ranking.iter().enumerate() {
            let i = o.index(num_terminals);
            if i >= m || rank[i] != usize::MAX {
                return Err(bad());
            }
            if let Outcome::Terminal(j) = o {
                if *j >= num_terminals {
                    return Err(bad());
                }
            }
            rank[i] = pos;
        }
        Ok(PreferenceOrder { player, num_terminals, ranking, rank })
    }

    fn from_indices(player: usize, num_terminals: usize, indices: &[usize]) -> Self {
        let ranking = indices.iter().map(|&i| Outcome::from_index(i, num_terminals)).collect();
        let mut rank = vec![0; indices.len()];
        for (pos, &i) in indices.iter().enumerate() {
            rank[i] = pos;
        }
        PreferenceOrder { player, num_terminals, ranking, rank }
    }

    pub fn ranking(&self) -> &[Outcome] {
        &self.ranking
    }

    pub fn num_terminals(&self) -> usize {
        self.num_terminals
    }

    /// Position of `o` in the ranking, 0 being best.
    pub fn rank(&self, o: Outcome) -> usize {
        self.rank[o.index(self.num_terminals)]
    }

    pub fn best(&self) -> Outcome {
        self.ranking[0]
    }

    /// The same order viewed as a partial order (its full chain).
    pub fn to_partial(&self) -> PartialPreference {
        let pairs = self.ranking.windows(2).map(|w| (w[0], w[1])).collect();
        PartialPreference::new(self.player, self.num_terminals, pairs).expect("a chain is acyclic")
    }

    /// `true` iff this order contains every pair of `partial`'s closure.
    pub fn extends(&self, partial: &PartialPreference) -> bool {
        partial.closure_pairs().all(|(x, y)| self.rank(x) < self.rank(y))
    }
}

impl Preference for PreferenceOrder {
    fn player(&self) -> usize {
        self.player
    }

    fn prefers(&self, better: Outcome, worse: Outcome) -> bool {
        self.rank(better) < self.rank(worse)
    }
}

/// Strict partial order given by generating pairs `(better, worse)`; the
/// transitive closure is computed on construction.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PartialPreference {
    player: usize,
    num_terminals: usize,
    relations: Vec<(Outcome, Outcome)>,
    closure: Vec<bool>,
}

impl PartialPreference {
    pub fn new(
        player: usize,
        num_terminals: usize,
        relations: Vec<(Outcome, Outcome)>,
    ) -> Result<Self, PreferenceError> {
        let m = num_terminals + 1;
        let mut closure = vec![false; m * m];
        for &(x, y) in &relations {
            let (i, j) = (x.index(num_terminals), y.index(num_terminals));
            if i >= m || j >= m {
                return Err(PreferenceError::UnknownOutcome(format!("{x:?}")));
            }
            closure[i * m + j] = true;
        }
        for k in 0..m {
            for i in 0..m {
                if closure[i * m + k] {
                    for j in 0..m {
                        if closure[k * m + j] {
                            closure[i * m + j] = true;
                        }
                    }
                }
            }
        }
        if (0..m).any(|i| closure[i * m + i]) {
            return Err(PreferenceError::Cyclic(player));
        }
        Ok(PartialPreference { player, num_terminals, relations, closure })
    }

    pub fn num_outcomes(&self) -> usize {
        self.num_terminals + 1
    }

    pub fn num_terminals(&self) -> usize {
        self.num_terminals
    }

    pub fn relations(&self) -> &[(Outcome, Outcome)] {
        &self.relations
    }

    pub fn closure_pairs(&self) -> impl Iterator<Item = (Outcome, Outcome)> + '_ {
        let m = self.num_outcomes();
        let p = self.num_terminals;
        (0..m * m)
            .filter(move |&k| self.closure[k])
            .map(move |k| (Outcome::from_index(k / m, p), Outcome::from_index(k % m, p)))
    }

    fn above(&self, i: usize, j: usize) -> bool {
        self.closure[i * self.num_outcomes() + j]
    }

    /// The unique extension, if the order is already total.
    pub fn as_total(&self) -> Option<PreferenceOrder> {
        let m = self.num_outcomes();
        let pairs = self.closure.iter().filter(|&&b| b).count();
        if pairs != m * (m - 1) / 2 {
            return None;
        }
        linear_extensions(self).next()
    }

    /// Number of linear extensions. Uses a subset dynamic program for up to
    /// 24 outcomes and plain enumeration beyond that.
    pub fn count_extensions(&self) -> u128 {
        let m = self.num_outcomes();
        if m > 24 {
            return linear_extensions(self).count() as u128;
        }
        // better_mask[j] = outcomes that must be placed before j
        let better_mask: Vec<u32> =
            (0..m).map(|j| (0..m).filter(|&i| self.above(i, j)).fold(0u32, |acc, i| acc | (1 << i))).collect();
        let full = (1usize << m) - 1;
        let mut ways = vec![0u128; full + 1];
        ways[0] = 1;
        for set in 0..=full {
            if ways[set] == 0 {
                continue;
            }
            for (j, &mask) in better_mask.iter().enumerate() {
                if set & (1 << j) == 0 && (mask as usize) & !set == 0 {
                    ways[set | (1 << j)] += ways[set];
                }
            }
        }
        ways[full]
    }
}

impl Preference for PartialPreference {
    fn player(&self) -> usize {
        self.player
    }

    fn prefers(&self, better: Outcome, worse: Outcome) -> bool {
        self.above(better.index(self.num_terminals), worse.index(self.num_terminals))
    }
}

/// Either kind of preference, as read from a preference file.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum PlayerPreference {
    Total(PreferenceOrder),
    Partial(PartialPreference),
}

impl PlayerPreference {
    pub fn to_partial(&self) -> PartialPreference {
        match self {
            PlayerPreference::Total(o) => o.to_partial(),
            PlayerPreference::Partial(p) => p.clone(),
        }
    }

    pub fn as_total(&self) -> Option<PreferenceOrder> {
        match self {
            PlayerPreference::Total(o) => Some(o.clone()),
            PlayerPreference::Partial(p) => p.as_total(),
        }
    }
}

impl Preference for PlayerPreference {
    fn player(&self) -> usize {
        match self {
            PlayerPreference::Total(o) => o.player(),
            PlayerPreference::Partial(p) => p.player(),
        }
    }

    fn prefers(&self, better: Outcome, worse: Outcome) -> bool {
        match self {
            PlayerPreference::Total(o) => o.prefers(better, worse),
            PlayerPreference::Partial(p) => p.prefers(better, worse),
        }
    }
}

/// One total order per player, indexed by `player - 1`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PreferenceProfile {
    orders: Vec<PreferenceOrder>,
}

impl PreferenceProfile {
    pub fn new(num_players: usize, orders: Vec<PreferenceOrder>) -> Result<Self, PreferenceError> {
        let mut slots: Vec<Option<PreferenceOrder>> = vec![None; num_players];
        for o in orders {
            let i = o.player();
            if i == 0 || i > num_players {
                return Err(PreferenceError::PlayerOutOfRange { player: i, num_players });
            }
            if slots[i - 1].is_some() {
                return Err(PreferenceError::Duplicate(i));
            }
            slots[i - 1] = Some(o);
        }
        let orders = slots
            .into_iter()
            .enumerate()
            .map(|(i, o)| o.ok_or(PreferenceError::MissingPlayer(i + 1)))
            .collect::<Result<_, _>>()?;
        Ok(PreferenceProfile { orders })
    }

    /// Profile from per-player preferences that must all be total.
    pub fn from_preferences(num_players: usize, prefs: &[PlayerPreference]) -> Result<Self, PreferenceError> {
        let orders = prefs
            .iter()
            .map(|p| p.as_total().ok_or(PreferenceError::NotTotal(p.player())))
            .collect::<Result<_, _>>()?;
        PreferenceProfile::new(num_players, orders)
    }

    pub fn orders(&self) -> &[PreferenceOrder] {
        &self.orders
    }

    pub fn order(&self, player: usize) -> &PreferenceOrder {
        &self.orders[player - 1]
    }

    pub fn num_players(&self) -> usize {
        self.orders.len()
    }
}

/// Every total order agreeing with `partial`, each once, in lexicographic
/// order of the rankings read as outcome-index sequences.
pub fn linear_extensions(partial: &PartialPreference) -> LinearExtensions<'_> {
    let m = partial.num_outcomes();
    let blockers = (0..m).map(|j| (0..m).filter(|&i| partial.above(i, j)).count()).collect();
    LinearExtensions {
        partial,
        prefix: Vec::with_capacity(m),
        placed: vec![false; m],
        blockers,
        started: false,
        done: false,
    }
}

pub struct LinearExtensions<'a> {
    partial: &'a PartialPreference,
    prefix: Vec<usize>,
    placed: Vec<bool>,
    // number of unplaced outcomes strictly above each outcome
    blockers: Vec<usize>,
    started: bool,
    done: bool,
}

impl LinearExtensions<'_> {
    fn m(&self) -> usize {
        self.placed.len()
    }

    fn place(&mut self, x: usize) {
        self.placed[x] = true;
        self.prefix.push(x);
        for y in 0..self.m() {
            if self.partial.above(x, y) {
                self.blockers[y] -= 1;
            }
        }
    }

    fn unplace(&mut self) -> Option<usize> {
        let x = self.prefix.pop()?;
        self.placed[x] = false;
        for y in 0..self.m() {
            if self.partial.above(x, y) {
                self.blockers[y] += 1;
            }
        }
        Some(x)
    }

    fn candidate_after(&self, after: Option<usize>) -> Option<usize> {
        let from = after.map_or(0, |x| x + 1);
        (from..self.m()).find(|&y| !self.placed[y] && self.blockers[y] == 0)
    }

    fn fill(&mut self) {
        while self.prefix.len() < self.m() {
            let x = self.candidate_after(None).expect("acyclic order always has a minimal element");
            self.place(x);
        }
    }

    fn emit(&self) -> PreferenceOrder {
        PreferenceOrder::from_indices(self.partial.player, self.partial.num_terminals, &self.prefix)
    }
}

impl Iterator for LinearExtensions<'_> {
    type Item = PreferenceOrder;

    fn next(&mut self) -> Option<PreferenceOrder> {
        if self.done {
            return None;
        }
        if !self.started {
            self.started = true;
            self.fill();
            return Some(self.emit());
        }
        loop {
            let Some(x) = self.unplace() else {
                self.done = true;
                return None;
            };
            if let Some(y) = self.candidate_after(Some(x)) {
                self.place(y);
                self.fill();
                return Some(self.emit());
            }
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    const T: fn(usize) -> Outcome = Outcome::Terminal;

    fn permutations(m: usize) -> Vec<Vec<usize>> {
        if m == 0 {
            return vec![vec![]];
        }
        let mut out = Vec::new();
        for p in permutations(m - 1) {
            for pos in 0..=p.len() {
                let mut q = p.clone();
                q.insert(pos, m - 1);
                out.push(q);
            }
        }
        out
    }

    // brute-force oracle: filter all permutations by pair containment
    fn brute_force(partial: &PartialPreference) -> Vec<Vec<usize>> {
        let p = partial.num_terminals();
        let mut out: Vec<Vec<usize>> = permutations(partial.num_outcomes())
            .into_iter()
            .filter(|perm| {
                let pos = |o: Outcome| perm.iter().position(|&i| i == o.index(p)).unwrap();
                partial.closure_pairs().all(|(x, y)| pos(x) < pos(y))
            })
            .collect();
        out.sort();
        out
    }

    fn indices(o: &PreferenceOrder) -> Vec<usize> {
        o.ranking().iter().map(|x| x.index(o.num_terminals())).collect()
    }

    #[test]
    fn empty_order_over_three_outcomes() {
        let p = PartialPreference::new(1, 2, vec![]).unwrap();
        assert_eq!(linear_extensions(&p).count(), 6);
        assert_eq!(p.count_extensions(), 6);
    }

    #[test]
    fn min_above_chain_has_24_extensions() {
        // a1, a2, a3, a5 above a4 above c
        let rel = vec![(T(0), T(3)), (T(1), T(3)), (T(2), T(3)), (T(4), T(3)), (T(3), Outcome::Cycle)];
        let p = PartialPreference::new(4, 5, rel).unwrap();
        let ours: Vec<_> = linear_extensions(&p).map(|o| indices(&o)).collect();
        assert_eq!(ours.len(), 24);
        assert_eq!(ours, brute_force(&p));
        assert_eq!(p.count_extensions(), 24);
    }

    #[test]
    fn full_chain_has_one_extension() {
        let chain = [T(1), T(3), T(2), T(0), T(4), Outcome::Cycle];
        let rel = chain.windows(2).map(|w| (w[0], w[1])).collect();
        let p = PartialPreference::new(1, 5, rel).unwrap();
        let all: Vec<_> = linear_extensions(&p).collect();
        assert_eq!(all.len(), 1);
        assert_eq!(all[0].ranking(), &chain);
        assert_eq!(p.as_total().unwrap(), all[0]);
    }

    #[test]
    fn cyclic_relations_rejected() {
        let err = PartialPreference::new(2, 2, vec![(T(0), T(1)), (T(1), T(0))]).unwrap_err();
        assert_eq!(err, PreferenceError::Cyclic(2));
    }

    #[test]
    fn total_order_requires_permutation() {
        assert!(PreferenceOrder::new(1, 1, vec![T(0), T(0)]).is_err());
        assert!(PreferenceOrder::new(1, 1, vec![T(0)]).is_err());
        let o = PreferenceOrder::new(1, 1, vec![Outcome::Cycle, T(0)]).unwrap();
        assert!(o.prefers(Outcome::Cycle, T(0)));
        assert!(!o.prefers(T(0), T(0)));
    }

    #[test]
    fn profile_checks_players() {
        let o = |i| PreferenceOrder::new(i, 0, vec![Outcome::Cycle]).unwrap();
        assert!(PreferenceProfile::new(2, vec![o(2), o(1)]).is_ok());
        assert_eq!(PreferenceProfile::new(2, vec![o(1)]).unwrap_err(), PreferenceError::MissingPlayer(2));
        assert_eq!(PreferenceProfile::new(2, vec![o(1), o(1)]).unwrap_err(), PreferenceError::Duplicate(1));
        assert!(matches!(PreferenceProfile::new(1, vec![o(3)]), Err(PreferenceError::PlayerOutOfRange { .. })));
    }

    mod props {
        use super::*;
        use proptest::prelude::*;

        fn random_partial() -> impl Strategy<Value = PartialPreference> {
            // random DAG: pairs (i, j) with i < j under a random relabeling
            (1usize..7)
                .prop_flat_map(|m| {
                    let pairs = proptest::collection::vec((0..m, 0..m), 0..10);
                    let perm = Just((0..m).collect::<Vec<usize>>()).prop_shuffle();
                    (Just(m), pairs, perm)
                })
                .prop_map(|(m, pairs, perm)| {
                    let p = m - 1;
                    let rel = pairs
                        .into_iter()
                        .filter(|(i, j)| i < j)
                        .map(|(i, j)| (Outcome::from_index(perm[i], p), Outcome::from_index(perm[j], p)))
                        .collect();
                    PartialPreference::new(1, p, rel).unwrap()
                })
        }

        proptest! {
            #[test]
            fn extensions_match_permutation_filter(p in random_partial()) {
                let ours: Vec<_> = linear_extensions(&p).map(|o| indices(&o)).collect();
                let oracle = brute_force(&p);
                prop_assert_eq!(&ours, &oracle);
                prop_assert_eq!(p.count_extensions(), oracle.len() as u128);
                for e in linear_extensions(&p) {
                    prop_assert!(e.extends(&p));
                }
            }
        }
    }
}
