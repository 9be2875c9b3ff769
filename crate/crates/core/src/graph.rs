//! Simple undirected graphs, independent sets, slides and reconfiguration
//! sequences.
//!
//! Vertex ids are 1-based everywhere: a graph on `n` vertices has vertices
//! `1..=n`.

use std::collections::VecDeque;
use std::fmt;

use thiserror::Error;

/// A vertex, identified by its 1-based id.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Vertex(u32);

impl Vertex {
    /// Creates a vertex from a 1-based id.
    ///
    /// Panics if `id` is zero.
    pub fn new(id: u32) -> Self {
        assert!(id > 0, "vertex ids are 1-based");
        Vertex(id)
    }

    /// Creates a vertex from a 0-based index.
    pub fn from_index(index: usize) -> Self {
        Vertex(index as u32 + 1)
    }

    pub fn id(self) -> u32 {
        self.0
    }

    /// 0-based position, for indexing per-vertex arrays.
    pub fn index(self) -> usize {
        (self.0 - 1) as usize
    }
}

impl fmt::Display for Vertex {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.0)
    }
}

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum GraphError {
    #[error("vertex {0} is out of range 1..={1}")]
    OutOfRange(u32, usize),
    #[error("self-loop on vertex {0}")]
    SelfLoop(Vertex),
    #[error("edge {{{0}, {1}}} listed twice")]
    DuplicateEdge(Vertex, Vertex),
}

/// An immutable simple undirected graph with sorted adjacency lists.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Graph {
    adj: Vec<Vec<Vertex>>,
    m: usize,
    connected: bool,
}

impl Graph {
    /// Builds a graph on vertices `1..=n` from an edge list.
    pub fn from_edges(n: usize, edges: &[(Vertex, Vertex)]) -> Result<Self, GraphError> {
        let mut adj = vec![Vec::new(); n];
        for &(u, v) in edges {
            for w in [u, v] {
                if w.index() >= n {
                    return Err(GraphError::OutOfRange(w.id(), n));
                }
            }
            if u == v {
                return Err(GraphError::SelfLoop(u));
            }
            adj[u.index()].push(v);
            adj[v.index()].push(u);
        }
        for (i, list) in adj.iter_mut().enumerate() {
            list.sort_unstable();
            if let Some(w) = list.windows(2).find(|w| w[0] == w[1]) {
                let u = Vertex::from_index(i);
                return Err(GraphError::DuplicateEdge(u.min(w[0]), u.max(w[0])));
            }
        }
        Ok(Self::from_sorted_adjacency(adj))
    }

    /// Builds a graph from adjacency lists that are already symmetric, sorted
    /// and free of loops and duplicates.
    pub(crate) fn from_sorted_adjacency(adj: Vec<Vec<Vertex>>) -> Self {
        let m = adj.iter().map(Vec::len).sum::<usize>() / 2;
        let mut g = Graph {
            adj,
            m,
            connected: false,
        };
        g.connected = g.n() <= 1 || g.bfs_distances(Vertex::new(1)).iter().all(Option::is_some);
        g
    }

    pub fn n(&self) -> usize {
        self.adj.len()
    }

    pub fn m(&self) -> usize {
        self.m
    }

    pub fn is_connected(&self) -> bool {
        self.connected
    }

    pub fn vertices(&self) -> impl Iterator<Item = Vertex> + '_ {
        (0..self.n()).map(Vertex::from_index)
    }

    pub fn contains(&self, v: Vertex) -> bool {
        v.index() < self.n()
    }

    pub fn neighbors(&self, v: Vertex) -> &[Vertex] {
        &self.adj[v.index()]
    }

    pub fn degree(&self, v: Vertex) -> usize {
        self.adj[v.index()].len()
    }

    pub fn adjacent(&self, u: Vertex, v: Vertex) -> bool {
        let (a, b) = if self.degree(u) <= self.degree(v) {
            (u, v)
        } else {
            (v, u)
        };
        self.adj[a.index()].binary_search(&b).is_ok()
    }

    /// Every edge once, as `(u, v)` with `u < v`, in lexicographic order.
    pub fn edges(&self) -> impl Iterator<Item = (Vertex, Vertex)> + '_ {
        self.vertices().flat_map(move |u| {
            self.neighbors(u)
                .iter()
                .copied()
                .filter(move |&v| u < v)
                .map(move |v| (u, v))
        })
    }

    /// Hop distances from `from`; `None` for unreachable vertices.
    pub fn bfs_distances(&self, from: Vertex) -> Vec<Option<usize>> {
        let mut dist = vec![None; self.n()];
        let mut queue = VecDeque::new();
        dist[from.index()] = Some(0);
        queue.push_back(from);
        while let Some(u) = queue.pop_front() {
            let d = dist[u.index()].unwrap();
            for &v in self.neighbors(u) {
                if dist[v.index()].is_none() {
                    dist[v.index()] = Some(d + 1);
                    queue.push_back(v);
                }
            }
        }
        dist
    }

    pub fn distance(&self, u: Vertex, v: Vertex) -> Option<usize> {
        self.bfs_distances(u)[v.index()]
    }

    /// Connected components, each sorted, ordered by their smallest vertex.
    pub fn components(&self) -> Vec<Vec<Vertex>> {
        let mut seen = vec![false; self.n()];
        let mut out = Vec::new();
        for s in self.vertices() {
            if seen[s.index()] {
                continue;
            }
            seen[s.index()] = true;
            let mut comp = vec![s];
            let mut head = 0;
            while head < comp.len() {
                let u = comp[head];
                head += 1;
                for &v in self.neighbors(u) {
                    if !seen[v.index()] {
                        seen[v.index()] = true;
                        comp.push(v);
                    }
                }
            }
            comp.sort_unstable();
            out.push(comp);
        }
        out
    }

    /// The subgraph induced by `keep` (sorted, distinct). Vertex `keep[i]`
    /// becomes vertex `i + 1` of the result.
    pub fn induced(&self, keep: &[Vertex]) -> Graph {
        let mut local = vec![0u32; self.n()];
        for (i, v) in keep.iter().enumerate() {
            local[v.index()] = i as u32 + 1;
        }
        let adj = keep
            .iter()
            .map(|&v| {
                let mut row: Vec<Vertex> = self
                    .neighbors(v)
                    .iter()
                    .filter_map(|w| match local[w.index()] {
                        0 => None,
                        id => Some(Vertex(id)),
                    })
                    .collect();
                row.sort_unstable();
                row
            })
            .collect();
        Graph::from_sorted_adjacency(adj)
    }
}

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum SetError {
    #[error("vertex {0} is not in the graph")]
    UnknownVertex(u32),
    #[error("vertex {0} listed twice")]
    Duplicate(Vertex),
    #[error("vertices {0} and {1} are adjacent")]
    NotIndependent(Vertex, Vertex),
}

/// A set of pairwise non-adjacent vertices, kept sorted.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct IndependentSet {
    vertices: Vec<Vertex>,
}

impl IndependentSet {
    pub fn new(g: &Graph, vertices: impl IntoIterator<Item = Vertex>) -> Result<Self, SetError> {
        let mut vertices: Vec<Vertex> = vertices.into_iter().collect();
        vertices.sort_unstable();
        for w in vertices.windows(2) {
            if w[0] == w[1] {
                return Err(SetError::Duplicate(w[0]));
            }
        }
        if let Some(v) = vertices.iter().find(|v| !g.contains(**v)) {
            return Err(SetError::UnknownVertex(v.id()));
        }
        let mut member = vec![false; g.n()];
        for v in &vertices {
            member[v.index()] = true;
        }
        for &v in &vertices {
            if let Some(&w) = g.neighbors(v).iter().find(|w| member[w.index()]) {
                return Err(SetError::NotIndependent(v.min(w), v.max(w)));
            }
        }
        Ok(IndependentSet { vertices })
    }

    /// Wraps a sorted list already known to be independent.
    pub(crate) fn from_sorted_unchecked(vertices: Vec<Vertex>) -> Self {
        debug_assert!(vertices.windows(2).all(|w| w[0] < w[1]));
        IndependentSet { vertices }
    }

    pub fn empty() -> Self {
        IndependentSet {
            vertices: Vec::new(),
        }
    }

    pub fn k(&self) -> usize {
        self.vertices.len()
    }

    pub fn is_empty(&self) -> bool {
        self.vertices.is_empty()
    }

    pub fn vertices(&self) -> &[Vertex] {
        &self.vertices
    }

    pub fn contains(&self, v: Vertex) -> bool {
        self.vertices.binary_search(&v).is_ok()
    }

    /// The set after sliding the token on `from` to `to`. No checks.
    pub(crate) fn slid(&self, from: Vertex, to: Vertex) -> Self {
        let mut vertices: Vec<Vertex> = self
            .vertices
            .iter()
            .copied()
            .filter(|&v| v != from)
            .collect();
        let at = vertices.partition_point(|&v| v < to);
        vertices.insert(at, to);
        IndependentSet { vertices }
    }
}

impl fmt::Display for IndependentSet {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{{")?;
        for (i, v) in self.vertices.iter().enumerate() {
            if i > 0 {
                write!(f, ", ")?;
            }
            write!(f, "{v}")?;
        }
        write!(f, "}}")
    }
}

/// One slide of a token along an edge.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub struct Move {
    pub from: Vertex,
    pub to: Vertex,
}

impl Move {
    pub fn new(from: Vertex, to: Vertex) -> Self {
        Move { from, to }
    }

    pub fn reversed(self) -> Self {
        Move {
            from: self.to,
            to: self.from,
        }
    }
}

impl fmt::Display for Move {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{} {}", self.from, self.to)
    }
}

/// An initial independent set followed by slides.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ReconfigSequence {
    pub initial: IndependentSet,
    pub moves: Vec<Move>,
}

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum ViolationKind {
    #[error("sequence does not start at the blue set")]
    InitialMismatch,
    #[error("{{{0}, {1}}} is not an edge")]
    NotAnEdge(Vertex, Vertex),
    #[error("no token on {0}")]
    Unoccupied(Vertex),
    #[error("{0} already holds a token")]
    Occupied(Vertex),
    #[error("{0} would be adjacent to the token on {1}")]
    Dependent(Vertex, Vertex),
    #[error("final set {0} differs from the red set")]
    FinalMismatch(IndependentSet),
}

/// The first failing step of a sequence. `step` is 1-based; step 0 refers to
/// the initial set and `moves.len() + 1` to the final comparison.
#[derive(Debug, Error, Clone, PartialEq, Eq)]
#[error("step {step}: {kind}")]
pub struct Violation {
    pub step: usize,
    pub kind: ViolationKind,
}

impl ReconfigSequence {
    pub fn empty(initial: IndependentSet) -> Self {
        ReconfigSequence {
            initial,
            moves: Vec::new(),
        }
    }

    /// Number of slides.
    pub fn len_moves(&self) -> usize {
        self.moves.len()
    }

    /// Number of independent sets in the sequence, i.e. moves + 1.
    pub fn length_in_sets(&self) -> usize {
        self.moves.len() + 1
    }

    /// Checks every slide and returns the final set.
    pub fn replay(&self, g: &Graph) -> Result<IndependentSet, Violation> {
        let mut occupied = vec![false; g.n()];
        for v in self.initial.vertices() {
            occupied[v.index()] = true;
        }
        for (i, mv) in self.moves.iter().enumerate() {
            let step = i + 1;
            let fail = |kind| Err(Violation { step, kind });
            if !g.contains(mv.from) || !g.contains(mv.to) || !g.adjacent(mv.from, mv.to) {
                return fail(ViolationKind::NotAnEdge(mv.from, mv.to));
            }
            if !occupied[mv.from.index()] {
                return fail(ViolationKind::Unoccupied(mv.from));
            }
            if occupied[mv.to.index()] {
                return fail(ViolationKind::Occupied(mv.to));
            }
            if let Some(&w) = g
                .neighbors(mv.to)
                .iter()
                .find(|&&w| w != mv.from && occupied[w.index()])
            {
                return fail(ViolationKind::Dependent(mv.to, w));
            }
            occupied[mv.from.index()] = false;
            occupied[mv.to.index()] = true;
        }
        let last = g.vertices().filter(|v| occupied[v.index()]).collect();
        Ok(IndependentSet::from_sorted_unchecked(last))
    }

    /// Final position of every token, following token identities through the
    /// slides. Entry `i` belongs to the token that started on
    /// `initial.vertices()[i]`.
    pub fn landings(&self) -> Vec<Vertex> {
        let mut pos: Vec<Vertex> = self.initial.vertices().to_vec();
        for mv in &self.moves {
            if let Some(p) = pos.iter_mut().find(|p| **p == mv.from) {
                *p = mv.to;
            }
        }
        pos
    }

    /// The same slides played backwards, starting from `last`.
    pub fn reversed(&self, last: IndependentSet) -> Self {
        ReconfigSequence {
            initial: last,
            moves: self.moves.iter().rev().map(|m| m.reversed()).collect(),
        }
    }

    pub fn append(&mut self, mut other: Vec<Move>) {
        self.moves.append(&mut other);
    }
}

/// Checks that `seq` starts at `blue`, slides legally and ends at `red`.
pub fn validate_sequence(
    g: &Graph,
    blue: &IndependentSet,
    red: &IndependentSet,
    seq: &ReconfigSequence,
) -> Result<(), Violation> {
    if &seq.initial != blue {
        return Err(Violation {
            step: 0,
            kind: ViolationKind::InitialMismatch,
        });
    }
    let last = seq.replay(g)?;
    if &last != red {
        return Err(Violation {
            step: seq.moves.len() + 1,
            kind: ViolationKind::FinalMismatch(last),
        });
    }
    Ok(())
}

/// Path graph `1 - 2 - ... - n`.
pub fn path_graph(n: usize) -> Graph {
    let edges: Vec<_> = (1..n as u32)
        .map(|i| (Vertex::new(i), Vertex::new(i + 1)))
        .collect();
    Graph::from_edges(n, &edges).expect("path edges are simple")
}
