//! Exact breadth-first search over independent sets, used as ground truth
//! for the solvers.

mod crosscheck;
mod enumerate;
mod generate;

use std::collections::{HashMap, VecDeque};

use thiserror::Error;

use crate::graph::{Graph, IndependentSet, Move, ReconfigSequence, Vertex};

pub use crosscheck::{
    crosscheck, crosscheck_exhaustive, crosscheck_random, Mismatch, Report, Verdict,
};
pub use enumerate::{caterpillars, independent_sets, proper_reps, tp_reps};
pub use generate::{gen_instance, GenClass, GenError};

/// Default cap on explored states.
pub const DEFAULT_BUDGET: usize = 10_000_000;

/// A set of vertices packed into bit words.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct StateKey(Box<[u64]>);

impl StateKey {
    pub fn new(n: usize, set: &IndependentSet) -> Self {
        let mut words = vec![0u64; n.div_ceil(64).max(1)];
        for v in set.vertices() {
            words[v.index() / 64] |= 1 << (v.index() % 64);
        }
        StateKey(words.into_boxed_slice())
    }

    fn has(&self, i: usize) -> bool {
        self.0[i / 64] >> (i % 64) & 1 == 1
    }

    fn flip(&mut self, i: usize) {
        self.0[i / 64] ^= 1 << (i % 64);
    }

    fn members(&self) -> impl Iterator<Item = usize> + '_ {
        self.0.iter().enumerate().flat_map(|(w, &bits)| {
            let mut b = bits;
            std::iter::from_fn(move || {
                if b == 0 {
                    return None;
                }
                let t = b.trailing_zeros() as usize;
                b &= b - 1;
                Some(w * 64 + t)
            })
        })
    }

    pub fn to_set(&self) -> IndependentSet {
        IndependentSet::from_sorted_unchecked(self.members().map(Vertex::from_index).collect())
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct OracleResult {
    pub reachable: bool,
    pub distance: Option<usize>,
    pub sequence: Option<ReconfigSequence>,
    pub states_explored: usize,
}

#[derive(Clone, Debug, Error, PartialEq, Eq)]
pub enum OracleError {
    #[error("blue has {0} tokens but red has {1}")]
    CardinalityMismatch(usize, usize),
    #[error("state budget of {0} exceeded")]
    CapExceeded(usize),
}

/// Single slides out of `key`, as `(from, to)` vertex indices.
fn slides<'a>(g: &'a Graph, key: &'a StateKey) -> impl Iterator<Item = (usize, usize)> + 'a {
    key.members().flat_map(move |u| {
        let from = Vertex::from_index(u);
        g.neighbors(from).iter().filter_map(move |&to| {
            let t = to.index();
            if key.has(t) {
                return None;
            }
            let blocked = g
                .neighbors(to)
                .iter()
                .any(|&w| w != from && key.has(w.index()));
            (!blocked).then_some((u, t))
        })
    })
}

/// All sets one slide away from `s`.
pub fn neighbors(g: &Graph, s: &IndependentSet) -> Vec<(Move, IndependentSet)> {
    let key = StateKey::new(g.n(), s);
    slides(g, &key)
        .map(|(u, t)| {
            let (from, to) = (Vertex::from_index(u), Vertex::from_index(t));
            (Move::new(from, to), s.slid(from, to))
        })
        .collect()
}

/// No token can slide.
pub fn is_stuck(g: &Graph, s: &IndependentSet) -> bool {
    let key = StateKey::new(g.n(), s);
    let stuck = slides(g, &key).next().is_none();
    stuck
}

/// Breadth-first exploration from one set.
pub struct Search {
    keys: Vec<StateKey>,
    parent: Vec<(u32, Move)>,
    dist: Vec<u32>,
    index: HashMap<StateKey, u32>,
}

impl Search {
    /// Explores until `stop` holds for a reached state, or everything
    /// reachable is seen.
    fn run(
        g: &Graph,
        start: &IndependentSet,
        budget: usize,
        stop: Option<&StateKey>,
    ) -> Result<Self, OracleError> {
        let first = StateKey::new(g.n(), start);
        let mut s = Search {
            keys: vec![first.clone()],
            parent: vec![(u32::MAX, Move::new(Vertex::new(1), Vertex::new(1)))],
            dist: vec![0],
            index: HashMap::from([(first.clone(), 0)]),
        };
        if stop == Some(&first) {
            return Ok(s);
        }
        let mut queue = VecDeque::from([0u32]);
        while let Some(i) = queue.pop_front() {
            let key = s.keys[i as usize].clone();
            let d = s.dist[i as usize];
            for (u, t) in slides(g, &key) {
                let mut next = key.clone();
                next.flip(u);
                next.flip(t);
                if s.index.contains_key(&next) {
                    continue;
                }
                if s.keys.len() >= budget {
                    return Err(OracleError::CapExceeded(budget));
                }
                let j = s.keys.len() as u32;
                s.index.insert(next.clone(), j);
                s.parent
                    .push((i, Move::new(Vertex::from_index(u), Vertex::from_index(t))));
                s.dist.push(d + 1);
                let hit = stop == Some(&next);
                s.keys.push(next);
                if hit {
                    return Ok(s);
                }
                queue.push_back(j);
            }
        }
        Ok(s)
    }

    /// Everything reachable from `start`.
    pub fn all(g: &Graph, start: &IndependentSet, budget: usize) -> Result<Self, OracleError> {
        Self::run(g, start, budget, None)
    }

    pub fn states(&self) -> usize {
        self.keys.len()
    }

    pub fn distance(&self, key: &StateKey) -> Option<usize> {
        self.index.get(key).map(|&i| self.dist[i as usize] as usize)
    }

    fn moves_to(&self, key: &StateKey) -> Option<Vec<Move>> {
        let mut i = *self.index.get(key)?;
        let mut moves = Vec::new();
        while self.parent[i as usize].0 != u32::MAX {
            let (p, m) = self.parent[i as usize];
            moves.push(m);
            i = p;
        }
        moves.reverse();
        Some(moves)
    }
}

/// Shortest reconfiguration from `blue` to `red`, or proof that none exists.
pub fn bfs(
    g: &Graph,
    blue: &IndependentSet,
    red: &IndependentSet,
    budget: usize,
) -> Result<OracleResult, OracleError> {
    if blue.k() != red.k() {
        return Err(OracleError::CardinalityMismatch(blue.k(), red.k()));
    }
    let target = StateKey::new(g.n(), red);
    let s = Search::run(g, blue, budget, Some(&target))?;
    let moves = s.moves_to(&target);
    Ok(OracleResult {
        reachable: moves.is_some(),
        distance: moves.as_ref().map(Vec::len),
        sequence: moves.map(|moves| ReconfigSequence {
            initial: blue.clone(),
            moves,
        }),
        states_explored: s.states(),
    })
}

/// Shortest distance when each token must end on a prescribed vertex:
/// token starting on `targets[i].0` must finish on `targets[i].1`.
#[cfg(test)]
pub(crate) fn labeled_distance(
    g: &Graph,
    targets: &[(Vertex, Vertex)],
    budget: usize,
) -> Option<usize> {
    let start: Vec<Vertex> = targets.iter().map(|t| t.0).collect();
    let goal: Vec<Vertex> = targets.iter().map(|t| t.1).collect();
    let mut seen: HashMap<Vec<Vertex>, usize> = HashMap::from([(start.clone(), 0)]);
    let mut queue = VecDeque::from([start]);
    while let Some(state) = queue.pop_front() {
        let d = seen[&state];
        if state == goal {
            return Some(d);
        }
        for (i, &u) in state.iter().enumerate() {
            for &v in g.neighbors(u) {
                let free = state
                    .iter()
                    .enumerate()
                    .all(|(j, &w)| j == i || (w != v && !g.adjacent(w, v)));
                if !free {
                    continue;
                }
                let mut next = state.clone();
                next[i] = v;
                if !seen.contains_key(&next) {
                    if seen.len() >= budget {
                        return None;
                    }
                    seen.insert(next.clone(), d + 1);
                    queue.push_back(next);
                }
            }
        }
    }
    None
}
