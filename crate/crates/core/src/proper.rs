//! Shortest reconfiguration on connected proper interval graphs.
//!
//! Tokens never overtake each other on a proper interval graph, so the i-th
//! blue vertex from the left is sent to the i-th red vertex. The work is in
//! ordering the tokens so that every slide keeps the set independent.

use std::cmp::Reverse;
use std::collections::BinaryHeap;

use crate::error::SolveError;
use crate::graph::{IndependentSet, Move, ReconfigSequence, Vertex};
use crate::interval::IntervalRepresentation;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Color {
    Blue,
    Red,
}

/// Direction a token travels along the canonical order.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Direction {
    Left,
    Right,
    Stay,
}

/// Blue and red vertices merged by canonical position, blue first on ties.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ColoredString {
    pub entries: Vec<(Vertex, Color)>,
}

/// Prefix counts of blue minus red entries; `h[0] = 0`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct HeightProfile {
    pub h: Vec<i64>,
}

/// A maximal stretch of the colored string between two zero heights.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Block {
    /// Entry indices `span.start..span.end`.
    pub span: std::ops::Range<usize>,
    pub starts_with: Color,
    /// 0-based token indices whose blue and red vertices lie in the span.
    pub tokens: std::ops::Range<usize>,
}

/// Canonical order plus the contiguous neighbour ranges it induces.
#[derive(Clone, Debug)]
pub struct ProperIndex {
    order: Vec<Vertex>,
    pos: Vec<usize>,
    lo: Vec<usize>,
    hi: Vec<usize>,
}

/// Vertices sorted by LEFT rank, keeping the input orientation.
pub fn canonical_order(rep: &IntervalRepresentation) -> Result<Vec<Vertex>, SolveError> {
    if !rep.is_proper() {
        return Err(SolveError::NotProper);
    }
    if !rep.is_connected() {
        return Err(SolveError::Disconnected);
    }
    Ok(rep.order_by_left())
}

impl ProperIndex {
    /// Requires a proper representation; connectivity is not checked here.
    pub fn new(rep: &IntervalRepresentation) -> Self {
        let order = rep.order_by_left();
        let n = order.len();
        let mut pos = vec![0; n];
        for (i, v) in order.iter().enumerate() {
            pos[v.index()] = i;
        }
        let mut lo = vec![0; n];
        let mut hi = vec![0; n];
        let (mut lefts, mut rights) = (0usize, 0usize);
        for e in rep.events() {
            let i = pos[e.vertex.index()];
            match e.side {
                crate::interval::Side::Left => {
                    // The intervals already closed are exactly order[..rights].
                    lo[i] = rights;
                    lefts += 1;
                }
                crate::interval::Side::Right => {
                    hi[i] = lefts - 1;
                    rights += 1;
                }
            }
        }
        ProperIndex { order, pos, lo, hi }
    }

    pub fn order(&self) -> &[Vertex] {
        &self.order
    }

    /// Position of `v` in the canonical order.
    pub fn position(&self, v: Vertex) -> usize {
        self.pos[v.index()]
    }

    /// Positions adjacent to position `i` (and `i` itself) form this range.
    pub fn neighbor_range(&self, i: usize) -> (usize, usize) {
        (self.lo[i], self.hi[i])
    }

    /// Shortest path as a vertex list including both ends. Each hop goes to
    /// the farthest neighbour in the direction of travel.
    pub fn token_path(&self, from: Vertex, to: Vertex) -> Vec<Vertex> {
        let (a, b) = (self.position(from), self.position(to));
        let mut path = vec![a];
        let mut cur = a;
        if a < b {
            while self.hi[cur] < b {
                assert!(self.hi[cur] > cur, "graph is disconnected");
                cur = self.hi[cur];
                path.push(cur);
            }
        } else {
            while self.lo[cur] > b {
                assert!(self.lo[cur] < cur, "graph is disconnected");
                cur = self.lo[cur];
                path.push(cur);
            }
        }
        if cur != b {
            path.push(b);
        }
        path.into_iter().map(|i| self.order[i]).collect()
    }

    /// Hop distance, without building the path.
    pub fn distance(&self, from: Vertex, to: Vertex) -> usize {
        self.token_path(from, to).len() - 1
    }

    pub fn build_string(
        &self,
        blue: &IndependentSet,
        red: &IndependentSet,
    ) -> Result<ColoredString, SolveError> {
        if blue.k() != red.k() {
            return Err(SolveError::CardinalityMismatch(blue.k(), red.k()));
        }
        let mut entries: Vec<(usize, Color, Vertex)> = blue
            .vertices()
            .iter()
            .map(|&v| (self.position(v), Color::Blue, v))
            .chain(
                red.vertices()
                    .iter()
                    .map(|&v| (self.position(v), Color::Red, v)),
            )
            .collect();
        entries.sort_unstable_by_key(|e| (e.0, e.1 == Color::Red));
        Ok(ColoredString {
            entries: entries.into_iter().map(|(_, c, v)| (v, c)).collect(),
        })
    }

    /// Blue and red vertices in canonical order, so token `i` goes from
    /// `blues[i]` to `reds[i]`.
    fn sorted_tokens(&self, set: &IndependentSet) -> Vec<Vertex> {
        let mut out = set.vertices().to_vec();
        out.sort_unstable_by_key(|&v| self.position(v));
        out
    }
}

pub fn compute_heights(s: &ColoredString) -> HeightProfile {
    let mut h = Vec::with_capacity(s.entries.len() + 1);
    h.push(0);
    let mut cur = 0;
    for &(_, c) in &s.entries {
        cur += if c == Color::Blue { 1 } else { -1 };
        h.push(cur);
    }
    HeightProfile { h }
}

pub fn partition_blocks(s: &ColoredString, h: &HeightProfile) -> Vec<Block> {
    let mut blocks = Vec::new();
    let mut start = 0;
    for i in 1..h.h.len() {
        if h.h[i] == 0 {
            blocks.push(Block {
                span: start..i,
                starts_with: s.entries[start].1,
                tokens: start / 2..i / 2,
            });
            start = i;
        }
    }
    blocks
}

/// Block processing order: the smallest ready block first, where a block
/// ending blue followed by one starting red must go first, and a block
/// ending red followed by one starting blue must go second.
pub fn block_order(blocks: &[Block], s: &ColoredString) -> Vec<usize> {
    let b = blocks.len();
    let mut indegree = vec![0usize; b];
    // succ[j] holds the block that must wait for j, if any, on each side.
    let mut succ: Vec<Vec<usize>> = vec![Vec::new(); b];
    for j in 0..b.saturating_sub(1) {
        let last = s.entries[blocks[j].span.end - 1].1;
        let first = s.entries[blocks[j + 1].span.start].1;
        match (last, first) {
            (Color::Blue, Color::Red) => {
                succ[j].push(j + 1);
                indegree[j + 1] += 1;
            }
            (Color::Red, Color::Blue) => {
                succ[j + 1].push(j);
                indegree[j] += 1;
            }
            _ => {}
        }
    }
    let mut ready: BinaryHeap<Reverse<usize>> =
        (0..b).filter(|&j| indegree[j] == 0).map(Reverse).collect();
    let mut out = Vec::with_capacity(b);
    while let Some(Reverse(j)) = ready.pop() {
        out.push(j);
        for &t in &succ[j] {
            indegree[t] -= 1;
            if indegree[t] == 0 {
                ready.push(Reverse(t));
            }
        }
    }
    debug_assert_eq!(out.len(), b);
    out
}

/// The order in which tokens slide, one entry per token. Linear in the input
/// size; paths are not materialized.
pub fn token_ordering(
    idx: &ProperIndex,
    blue: &IndependentSet,
    red: &IndependentSet,
) -> Result<Vec<(usize, Direction)>, SolveError> {
    let s = idx.build_string(blue, red)?;
    let h = compute_heights(&s);
    let blocks = partition_blocks(&s, &h);
    let blues = idx.sorted_tokens(blue);
    let reds = idx.sorted_tokens(red);
    let dir = |t: usize| match idx.position(blues[t]).cmp(&idx.position(reds[t])) {
        std::cmp::Ordering::Less => Direction::Right,
        std::cmp::Ordering::Greater => Direction::Left,
        std::cmp::Ordering::Equal => Direction::Stay,
    };
    let mut out = Vec::with_capacity(blue.k());
    for j in block_order(&blocks, &s) {
        let block = &blocks[j];
        match block.starts_with {
            Color::Blue => out.extend(block.tokens.clone().rev().map(|t| (t, dir(t)))),
            Color::Red => out.extend(block.tokens.clone().map(|t| (t, dir(t)))),
        }
    }
    Ok(out)
}

/// Shortest sequence from `blue` to `red` on a connected, twin-free proper
/// interval graph. Always succeeds on valid input.
pub fn solve_proper(
    rep: &IntervalRepresentation,
    blue: &IndependentSet,
    red: &IndependentSet,
) -> Result<ReconfigSequence, SolveError> {
    canonical_order(rep)?;
    let idx = ProperIndex::new(rep);
    let ordering = token_ordering(&idx, blue, red)?;
    let blues = idx.sorted_tokens(blue);
    let reds = idx.sorted_tokens(red);
    let mut seq = ReconfigSequence::empty(blue.clone());
    for (t, _) in ordering {
        let path = idx.token_path(blues[t], reds[t]);
        seq.moves
            .extend(path.windows(2).map(|w| Move::new(w[0], w[1])));
    }
    Ok(seq)
}

/// Sum of per-token distances under the left-to-right matching, which is the
/// optimum on proper interval graphs.
pub fn shortest_length(idx: &ProperIndex, blue: &IndependentSet, red: &IndependentSet) -> usize {
    idx.sorted_tokens(blue)
        .iter()
        .zip(idx.sorted_tokens(red))
        .map(|(&b, r)| idx.distance(b, r))
        .sum()
}
