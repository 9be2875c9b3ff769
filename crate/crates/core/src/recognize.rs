//! Caterpillar recognition and strong-twin detection.

use std::collections::HashMap;

use thiserror::Error;

use crate::graph::{Graph, Vertex};

/// A caterpillar split into its spine and the leaves hanging off each spine
/// vertex. `leaves[i]` belongs to `spine[i]` and is sorted.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CaterpillarStructure {
    pub spine: Vec<Vertex>,
    pub leaves: Vec<Vec<Vertex>>,
}

#[derive(Clone, Debug, Error, PartialEq, Eq)]
pub enum CaterpillarError {
    #[error("graph is disconnected")]
    Disconnected,
    #[error("graph has a cycle")]
    Cyclic,
    #[error("vertex {0} has three or more non-leaf neighbours")]
    NotCaterpillar(Vertex),
}

impl CaterpillarStructure {
    pub fn len(&self) -> usize {
        self.spine.len()
    }

    pub fn is_empty(&self) -> bool {
        self.spine.is_empty()
    }

    /// Spine index of every vertex (the owning spine vertex for leaves), and
    /// whether the vertex is a leaf.
    pub fn columns(&self, n: usize) -> (Vec<usize>, Vec<bool>) {
        let mut column = vec![usize::MAX; n];
        let mut is_leaf = vec![false; n];
        for (i, (&s, ls)) in self.spine.iter().zip(&self.leaves).enumerate() {
            column[s.index()] = i;
            for &l in ls {
                column[l.index()] = i;
                is_leaf[l.index()] = true;
            }
        }
        (column, is_leaf)
    }
}

/// Splits a caterpillar into spine and leaves.
///
/// The spine is the set of vertices of degree at least two, so on a bare path
/// the two end vertices become leaves of their neighbours. A single vertex is
/// a spine of length one; a single edge is its smaller endpoint with the
/// other as leaf. The spine runs from the end with the smaller id.
pub fn recognize_caterpillar(g: &Graph) -> Result<CaterpillarStructure, CaterpillarError> {
    if !g.is_connected() {
        return Err(CaterpillarError::Disconnected);
    }
    let n = g.n();
    if g.m() != n.saturating_sub(1) {
        return Err(CaterpillarError::Cyclic);
    }
    if n <= 2 {
        let spine = vec![Vertex::new(1)];
        let leaves = vec![if n == 2 {
            vec![Vertex::new(2)]
        } else {
            Vec::new()
        }];
        return Ok(CaterpillarStructure { spine, leaves });
    }
    let on_spine = |v: Vertex| g.degree(v) >= 2;
    let mut ends = Vec::new();
    for v in g.vertices().filter(|&v| on_spine(v)) {
        let k = g.neighbors(v).iter().filter(|&&w| on_spine(w)).count();
        if k > 2 {
            return Err(CaterpillarError::NotCaterpillar(v));
        }
        if k <= 1 {
            ends.push(v);
        }
    }
    // The non-leaf vertices of a tree span a subtree, which is a path when
    // no vertex has three spine neighbours.
    let first = *ends
        .iter()
        .min()
        .expect("a tree on 3+ vertices has a spine");
    let mut spine = vec![first];
    let mut prev: Option<Vertex> = None;
    let mut cur = first;
    loop {
        let next = g
            .neighbors(cur)
            .iter()
            .copied()
            .find(|&w| on_spine(w) && Some(w) != prev);
        match next {
            Some(w) => {
                prev = Some(cur);
                cur = w;
                spine.push(w);
            }
            None => break,
        }
    }
    let leaves = spine
        .iter()
        .map(|&s| {
            g.neighbors(s)
                .iter()
                .copied()
                .filter(|&w| !on_spine(w))
                .collect()
        })
        .collect();
    Ok(CaterpillarStructure { spine, leaves })
}

/// All pairs `(u, v)`, `u < v`, with equal closed neighbourhoods, sorted.
pub fn find_strong_twins(g: &Graph) -> Vec<(Vertex, Vertex)> {
    let mut groups: HashMap<Vec<Vertex>, Vec<Vertex>> = HashMap::new();
    for v in g.vertices() {
        let mut closed = g.neighbors(v).to_vec();
        let at = closed.partition_point(|&w| w < v);
        closed.insert(at, v);
        groups.entry(closed).or_default().push(v);
    }
    let mut pairs = Vec::new();
    for members in groups.values() {
        for (i, &u) in members.iter().enumerate() {
            for &w in &members[i + 1..] {
                pairs.push((u.min(w), u.max(w)));
            }
        }
    }
    pairs.sort_unstable();
    pairs
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::graph::path_graph;
    use crate::interval::IntervalRepresentation;

    fn v(i: u32) -> Vertex {
        Vertex::new(i)
    }

    fn graph(n: usize, edges: &[(u32, u32)]) -> Graph {
        let e: Vec<_> = edges.iter().map(|&(a, b)| (v(a), v(b))).collect();
        Graph::from_edges(n, &e).unwrap()
    }

    #[test]
    fn star_has_single_spine_vertex() {
        let c = recognize_caterpillar(&graph(4, &[(1, 2), (1, 3), (1, 4)])).unwrap();
        assert_eq!(c.spine, vec![v(1)]);
        assert_eq!(c.leaves, vec![vec![v(2), v(3), v(4)]]);
    }

    #[test]
    fn path_ends_become_leaves() {
        let c = recognize_caterpillar(&path_graph(5)).unwrap();
        assert_eq!(c.spine, vec![v(2), v(3), v(4)]);
        assert_eq!(c.leaves, vec![vec![v(1)], vec![], vec![v(5)]]);
    }

    #[test]
    fn spider_is_rejected() {
        let g = graph(7, &[(1, 2), (2, 3), (1, 4), (4, 5), (1, 6), (6, 7)]);
        assert_eq!(
            recognize_caterpillar(&g),
            Err(CaterpillarError::NotCaterpillar(v(1)))
        );
    }

    #[test]
    fn cycle_and_disconnected() {
        let g = graph(3, &[(1, 2), (2, 3), (1, 3)]);
        assert_eq!(recognize_caterpillar(&g), Err(CaterpillarError::Cyclic));
        let g = graph(3, &[(1, 2)]);
        assert_eq!(
            recognize_caterpillar(&g),
            Err(CaterpillarError::Disconnected)
        );
    }

    #[test]
    fn degenerate_sizes() {
        let c = recognize_caterpillar(&graph(1, &[])).unwrap();
        assert_eq!((c.spine, c.leaves), (vec![v(1)], vec![vec![]]));
        let c = recognize_caterpillar(&graph(2, &[(1, 2)])).unwrap();
        assert_eq!((c.spine, c.leaves), (vec![v(1)], vec![vec![v(2)]]));
    }

    #[test]
    fn spine_starts_at_smaller_end() {
        // spine 4 - 2 - 3, with leaves 1 on 4 and 5 on 3
        let g = graph(5, &[(4, 2), (2, 3), (1, 4), (3, 5)]);
        let c = recognize_caterpillar(&g).unwrap();
        assert_eq!(c.spine, vec![v(3), v(2), v(4)]);
    }

    #[test]
    fn twins() {
        let k3 = "L1 L2 L3 R1 R2 R3"
            .parse::<IntervalRepresentation>()
            .unwrap()
            .intersection_graph();
        assert_eq!(
            find_strong_twins(&k3),
            vec![(v(1), v(2)), (v(1), v(3)), (v(2), v(3))]
        );
        assert!(find_strong_twins(&path_graph(3)).is_empty());
        let k2 = "L1 L2 R1 R2"
            .parse::<IntervalRepresentation>()
            .unwrap()
            .intersection_graph();
        assert_eq!(find_strong_twins(&k2), vec![(v(1), v(2))]);
    }
}
