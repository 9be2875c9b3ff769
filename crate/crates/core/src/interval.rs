//! Interval representations given as endpoint strings such as
//! `L1 L2 R1 L3 R2 R3`.
//!
//! The position of each endpoint in the string is its rank, so intervals are
//! closed integer ranges `[left(v), right(v)]` inside `1..=2n`.

use std::fmt;
use std::str::FromStr;

use thiserror::Error;

use crate::graph::{Graph, Vertex};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Side {
    Left,
    Right,
}

impl Side {
    fn letter(self) -> char {
        match self {
            Side::Left => 'L',
            Side::Right => 'R',
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub struct Event {
    pub vertex: Vertex,
    pub side: Side,
}

impl fmt::Display for Event {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}{}", self.side.letter(), self.vertex)
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum RepErrorKind {
    BadToken(String),
    Duplicate(Side, u32),
    Missing(Side, u32),
    RightBeforeLeft(u32),
    /// Id outside `1..=n`, where `n` is half the number of endpoints.
    NonContiguous(u32),
    OddLength,
    Empty,
}

/// A malformed endpoint string. `position` is the 1-based token index.
#[derive(Clone, Debug, Error, PartialEq, Eq)]
#[error("token {position}: {}", describe(.kind))]
pub struct RepError {
    pub position: usize,
    pub kind: RepErrorKind,
}

fn describe(kind: &RepErrorKind) -> String {
    let side = |s: &Side| match s {
        Side::Left => "LEFT",
        Side::Right => "RIGHT",
    };
    match kind {
        RepErrorKind::BadToken(t) => format!("expected L<id> or R<id>, found `{t}`"),
        RepErrorKind::Duplicate(s, id) => format!("duplicate {} endpoint for vertex {id}", side(s)),
        RepErrorKind::Missing(s, id) => format!("missing {} endpoint for vertex {id}", side(s)),
        RepErrorKind::RightBeforeLeft(id) => {
            format!("RIGHT endpoint of vertex {id} precedes its LEFT")
        }
        RepErrorKind::NonContiguous(id) => format!("vertex id {id} is outside 1..=n"),
        RepErrorKind::OddLength => "odd number of endpoints".to_string(),
        RepErrorKind::Empty => "empty representation".to_string(),
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Classification {
    Proper,
    TriviallyPerfect,
    Neither,
}

impl fmt::Display for Classification {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Classification::Proper => "PROPER",
            Classification::TriviallyPerfect => "TRIVIALLY_PERFECT",
            Classification::Neither => "NEITHER",
        })
    }
}

/// A validated endpoint string.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct IntervalRepresentation {
    events: Vec<Event>,
    left: Vec<u32>,
    right: Vec<u32>,
}

impl IntervalRepresentation {
    pub fn parse(text: &str) -> Result<Self, RepError> {
        let mut events = Vec::new();
        for (i, tok) in text.split_whitespace().enumerate() {
            let bad = || RepError {
                position: i + 1,
                kind: RepErrorKind::BadToken(tok.to_string()),
            };
            let side = match tok.as_bytes()[0] {
                b'L' => Side::Left,
                b'R' => Side::Right,
                _ => return Err(bad()),
            };
            let digits = &tok[1..];
            if digits.is_empty() || !digits.bytes().all(|b| b.is_ascii_digit()) {
                return Err(bad());
            }
            let id: u32 = digits.parse().map_err(|_| bad())?;
            if id == 0 {
                return Err(RepError {
                    position: i + 1,
                    kind: RepErrorKind::NonContiguous(0),
                });
            }
            events.push(Event {
                vertex: Vertex::new(id),
                side,
            });
        }
        Self::from_events(events)
    }

    /// Validates an event list.
    pub fn from_events(events: Vec<Event>) -> Result<Self, RepError> {
        if events.is_empty() {
            return Err(RepError {
                position: 1,
                kind: RepErrorKind::Empty,
            });
        }
        if events.len() % 2 == 1 {
            return Err(RepError {
                position: events.len(),
                kind: RepErrorKind::OddLength,
            });
        }
        let n = events.len() / 2;
        let mut left = vec![0u32; n];
        let mut right = vec![0u32; n];
        for (i, e) in events.iter().enumerate() {
            let position = i + 1;
            let err = |kind| Err(RepError { position, kind });
            let id = e.vertex.id();
            if e.vertex.index() >= n {
                return err(RepErrorKind::NonContiguous(id));
            }
            let idx = e.vertex.index();
            match e.side {
                Side::Left => {
                    if left[idx] != 0 {
                        return err(RepErrorKind::Duplicate(Side::Left, id));
                    }
                    left[idx] = position as u32;
                }
                Side::Right => {
                    if right[idx] != 0 {
                        return err(RepErrorKind::Duplicate(Side::Right, id));
                    }
                    if left[idx] == 0 {
                        return err(RepErrorKind::RightBeforeLeft(id));
                    }
                    right[idx] = position as u32;
                }
            }
        }
        // With an even length, in-range ids, no duplicates and no RIGHT
        // before its LEFT, every endpoint is present; this is a safety net.
        if let Some(idx) = right.iter().position(|&r| r == 0) {
            return Err(RepError {
                position: left[idx].max(1) as usize,
                kind: RepErrorKind::Missing(Side::Right, idx as u32 + 1),
            });
        }
        Ok(IntervalRepresentation {
            events,
            left,
            right,
        })
    }

    /// Builds a representation from closed intervals with pairwise distinct
    /// endpoints. Interval `i` becomes vertex `i + 1`.
    pub fn from_intervals(intervals: &[(u64, u64)]) -> Self {
        let mut ends: Vec<(u64, Event)> = Vec::with_capacity(intervals.len() * 2);
        for (i, &(a, b)) in intervals.iter().enumerate() {
            assert!(a < b, "interval must have positive length");
            let vertex = Vertex::from_index(i);
            ends.push((
                a,
                Event {
                    vertex,
                    side: Side::Left,
                },
            ));
            ends.push((
                b,
                Event {
                    vertex,
                    side: Side::Right,
                },
            ));
        }
        ends.sort_by_key(|e| e.0);
        debug_assert!(
            ends.windows(2).all(|w| w[0].0 < w[1].0),
            "endpoints must be distinct"
        );
        Self::from_events(ends.into_iter().map(|e| e.1).collect())
            .expect("intervals are well formed")
    }

    pub fn n(&self) -> usize {
        self.left.len()
    }

    pub fn events(&self) -> &[Event] {
        &self.events
    }

    /// Rank of the LEFT endpoint, in `1..=2n`.
    pub fn left(&self, v: Vertex) -> u32 {
        self.left[v.index()]
    }

    pub fn right(&self, v: Vertex) -> u32 {
        self.right[v.index()]
    }

    pub fn intersects(&self, u: Vertex, v: Vertex) -> bool {
        self.left(u) <= self.right(v) && self.left(v) <= self.right(u)
    }

    /// Whether the given vertices are pairwise disjoint intervals.
    pub fn is_independent(&self, set: &[Vertex]) -> bool {
        let mut spans: Vec<(u32, u32)> =
            set.iter().map(|&v| (self.left(v), self.right(v))).collect();
        spans.sort_unstable();
        spans.windows(2).all(|w| w[0].1 < w[1].0)
    }

    /// Vertices sorted by LEFT rank.
    pub fn order_by_left(&self) -> Vec<Vertex> {
        self.events
            .iter()
            .filter(|e| e.side == Side::Left)
            .map(|e| e.vertex)
            .collect()
    }

    pub fn order_by_right(&self) -> Vec<Vertex> {
        self.events
            .iter()
            .filter(|e| e.side == Side::Right)
            .map(|e| e.vertex)
            .collect()
    }

    pub fn intersection_graph(&self) -> Graph {
        let n = self.n();
        let mut adj: Vec<Vec<Vertex>> = vec![Vec::new(); n];
        // Active intervals in a dense list with back-pointers for O(1) removal.
        let mut active: Vec<Vertex> = Vec::new();
        let mut slot = vec![usize::MAX; n];
        for e in &self.events {
            let v = e.vertex;
            match e.side {
                Side::Left => {
                    for &u in &active {
                        adj[u.index()].push(v);
                        adj[v.index()].push(u);
                    }
                    slot[v.index()] = active.len();
                    active.push(v);
                }
                Side::Right => {
                    let at = slot[v.index()];
                    let last = *active.last().unwrap();
                    active.swap_remove(at);
                    if last != v {
                        slot[last.index()] = at;
                    }
                }
            }
        }
        for row in &mut adj {
            row.sort_unstable();
        }
        Graph::from_sorted_adjacency(adj)
    }

    /// LEFT order equals RIGHT order.
    pub fn is_proper(&self) -> bool {
        self.events
            .iter()
            .filter(|e| e.side == Side::Left)
            .zip(self.events.iter().filter(|e| e.side == Side::Right))
            .all(|(a, b)| a.vertex == b.vertex)
    }

    /// No two intervals partially overlap.
    pub fn is_trivially_perfect(&self) -> bool {
        let mut stack = Vec::new();
        for e in &self.events {
            match e.side {
                Side::Left => stack.push(e.vertex),
                Side::Right => {
                    if stack.pop() != Some(e.vertex) {
                        return false;
                    }
                }
            }
        }
        true
    }

    pub fn classify(&self) -> Classification {
        if self.is_proper() {
            Classification::Proper
        } else if self.is_trivially_perfect() {
            Classification::TriviallyPerfect
        } else {
            Classification::Neither
        }
    }

    /// Connected iff the number of open intervals only drops to zero at the
    /// very end of the string.
    pub fn is_connected(&self) -> bool {
        self.component_ends().len() == 1
    }

    /// Indices (exclusive) where the open-interval count returns to zero.
    fn component_ends(&self) -> Vec<usize> {
        let mut open = 0i64;
        let mut ends = Vec::new();
        for (i, e) in self.events.iter().enumerate() {
            open += if e.side == Side::Left { 1 } else { -1 };
            if open == 0 {
                ends.push(i + 1);
            }
        }
        ends
    }

    /// Splits into connected pieces, left to right. Each piece comes with the
    /// original ids of its vertices; piece vertex `i + 1` is `ids[i]`, and ids
    /// are sorted so relabeling preserves relative order.
    pub fn components(&self) -> Vec<(IntervalRepresentation, Vec<Vertex>)> {
        let mut out = Vec::new();
        let mut start = 0;
        let mut local = vec![0u32; self.n()];
        for end in self.component_ends() {
            let slice = &self.events[start..end];
            let mut ids: Vec<Vertex> = slice
                .iter()
                .filter(|e| e.side == Side::Left)
                .map(|e| e.vertex)
                .collect();
            ids.sort_unstable();
            for (i, v) in ids.iter().enumerate() {
                local[v.index()] = i as u32 + 1;
            }
            let events = slice
                .iter()
                .map(|e| Event {
                    vertex: Vertex::new(local[e.vertex.index()]),
                    side: e.side,
                })
                .collect();
            let rep =
                IntervalRepresentation::from_events(events).expect("a component is well formed");
            out.push((rep, ids));
            start = end;
        }
        out
    }
}

impl FromStr for IntervalRepresentation {
    type Err = RepError;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        Self::parse(s)
    }
}

impl fmt::Display for IntervalRepresentation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for (i, e) in self.events.iter().enumerate() {
            if i > 0 {
                f.write_str(" ")?;
            }
            write!(f, "{e}")?;
        }
        Ok(())
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn rep(s: &str) -> IntervalRepresentation {
        s.parse().unwrap()
    }

    fn v(i: u32) -> Vertex {
        Vertex::new(i)
    }

    fn edge_list(g: &Graph) -> Vec<(u32, u32)> {
        g.edges().map(|(a, b)| (a.id(), b.id())).collect()
    }

    #[test]
    fn parses_examples() {
        assert_eq!(
            edge_list(&rep("L1 L2 L3 R1 R2 R3").intersection_graph()),
            vec![(1, 2), (1, 3), (2, 3)]
        );
        assert_eq!(
            edge_list(&rep("L1 L2 R1 L3 R2 R3").intersection_graph()),
            vec![(1, 2), (2, 3)]
        );
        let single = rep("L1 R1");
        assert_eq!(single.n(), 1);
        assert_eq!((single.left(v(1)), single.right(v(1))), (1, 2));
    }

    #[test]
    fn parse_errors_carry_positions() {
        let err = |s: &str| IntervalRepresentation::parse(s).unwrap_err();
        assert_eq!(
            err("L1 L1 R1 R1"),
            RepError {
                position: 2,
                kind: RepErrorKind::Duplicate(Side::Left, 1)
            }
        );
        assert_eq!(err("R1 L1").kind, RepErrorKind::RightBeforeLeft(1));
        assert_eq!(err("L1 R3").kind, RepErrorKind::NonContiguous(3));
        assert_eq!(
            err("L1 L2 R1 R1").kind,
            RepErrorKind::Duplicate(Side::Right, 1)
        );
        assert_eq!(err("L1 x R1").position, 2);
        assert_eq!(err("L1 R1 L2").kind, RepErrorKind::OddLength);
        assert_eq!(err("").kind, RepErrorKind::Empty);
        assert_eq!(
            err("L1 L2 R2 L1"),
            RepError {
                position: 4,
                kind: RepErrorKind::Duplicate(Side::Left, 1)
            }
        );
    }

    #[test]
    fn disjoint_intervals_are_disconnected() {
        let r = rep("L1 R1 L2 R2");
        let g = r.intersection_graph();
        assert_eq!(g.m(), 0);
        assert!(!g.is_connected());
        assert!(!r.is_connected());
        let parts = r.components();
        assert_eq!(parts.len(), 2);
        assert_eq!(parts[1].1, vec![v(2)]);
        assert_eq!(parts[1].0.to_string(), "L1 R1");
    }

    #[test]
    fn classification() {
        assert_eq!(rep("L1 L2 L3 R1 R2 R3").classify(), Classification::Proper);
        assert_eq!(
            rep("L1 L2 R2 L3 R3 R1").classify(),
            Classification::TriviallyPerfect
        );
        assert_eq!(rep("L1 L2 R1 L3 R3 R2").classify(), Classification::Neither);
    }

    #[test]
    fn orders_and_independence() {
        let r = rep("L2 L1 R2 L3 R1 R3");
        assert_eq!(r.order_by_left(), vec![v(2), v(1), v(3)]);
        assert!(r.is_independent(&[v(2), v(3)]));
        assert!(!r.is_independent(&[v(1), v(3)]));
    }

    #[test]
    fn components_relabel_in_id_order() {
        let r = rep("L3 L1 R3 R1 L2 R2");
        let parts = r.components();
        assert_eq!(parts[0].1, vec![v(1), v(3)]);
        assert_eq!(parts[0].0.to_string(), "L2 L1 R2 R1");
    }

    #[test]
    fn from_intervals_orders_endpoints() {
        let r = IntervalRepresentation::from_intervals(&[(0, 10), (5, 20), (15, 30)]);
        assert_eq!(r.to_string(), "L1 L2 R1 L3 R2 R3");
    }
}
