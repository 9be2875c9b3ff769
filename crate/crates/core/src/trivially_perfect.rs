//! Trivially perfect graphs: decision and shortest sequences through the
//! containment tree of the intervals.
//!
//! In a nested representation each interval's parent is the smallest interval
//! containing it. Two vertices are adjacent exactly when one is an ancestor of
//! the other, so any two vertices are at distance at most two.

use crate::error::SolveError;
use crate::graph::{IndependentSet, Move, ReconfigSequence, Vertex};
use crate::interval::{IntervalRepresentation, Side};
use crate::solver::{NoReason, NoWitness, Outcome};

pub type NodeId = usize;

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Node {
    pub vertices: Vec<Vertex>,
    pub parent: Option<NodeId>,
    pub children: Vec<NodeId>,
}

/// Containment forest. Nodes are numbered in preorder; `postorder` lists
/// them children-first.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct MpqTree {
    pub nodes: Vec<Node>,
    pub roots: Vec<NodeId>,
    node_of: Vec<NodeId>,
    postorder: Vec<NodeId>,
    depth: Vec<usize>,
    /// Preorder index of the last node in each subtree.
    last: Vec<NodeId>,
}

impl MpqTree {
    /// Stack parse of a nested representation. The result may be a forest.
    pub fn from_nested(rep: &IntervalRepresentation) -> Result<Self, SolveError> {
        if !rep.is_trivially_perfect() {
            return Err(SolveError::NotTriviallyPerfect);
        }
        let n = rep.n();
        let mut nodes: Vec<Node> = Vec::with_capacity(n);
        let mut roots = Vec::new();
        let mut node_of = vec![0; n];
        let mut postorder = Vec::with_capacity(n);
        let mut depth = Vec::with_capacity(n);
        let mut last = vec![0; n];
        let mut stack: Vec<NodeId> = Vec::new();
        for e in rep.events() {
            match e.side {
                Side::Left => {
                    let id = nodes.len();
                    let parent = stack.last().copied();
                    match parent {
                        Some(p) => nodes[p].children.push(id),
                        None => roots.push(id),
                    }
                    nodes.push(Node {
                        vertices: vec![e.vertex],
                        parent,
                        children: Vec::new(),
                    });
                    depth.push(stack.len());
                    node_of[e.vertex.index()] = id;
                    stack.push(id);
                }
                Side::Right => {
                    let id = stack.pop().expect("nested representation");
                    last[id] = nodes.len() - 1;
                    postorder.push(id);
                }
            }
        }
        Ok(MpqTree {
            nodes,
            roots,
            node_of,
            postorder,
            depth,
            last,
        })
    }

    pub fn node_of(&self, v: Vertex) -> NodeId {
        self.node_of[v.index()]
    }

    pub fn postorder(&self) -> &[NodeId] {
        &self.postorder
    }

    pub fn depth(&self, x: NodeId) -> usize {
        self.depth[x]
    }

    /// `a` is `b` or lies above it.
    pub fn is_ancestor(&self, a: NodeId, b: NodeId) -> bool {
        a <= b && b <= self.last[a]
    }

    /// Pairs of vertices in a node and its only child: these are exactly the
    /// strong twins of the graph.
    pub fn twins(&self) -> Vec<(Vertex, Vertex)> {
        let mut out = Vec::new();
        for node in &self.nodes {
            for (i, &u) in node.vertices.iter().enumerate() {
                for &w in &node.vertices[i + 1..] {
                    out.push((u.min(w), u.max(w)));
                }
            }
            if let [only] = node.children[..] {
                for &u in &node.vertices {
                    for &w in &self.nodes[only].vertices {
                        out.push((u.min(w), u.max(w)));
                    }
                }
            }
        }
        out.sort_unstable();
        out
    }

    pub fn lca(&self, u: Vertex, w: Vertex) -> NodeId {
        let (mut a, mut b) = (self.node_of(u), self.node_of(w));
        while self.depth[a] > self.depth[b] {
            a = self.nodes[a].parent.unwrap();
        }
        while self.depth[b] > self.depth[a] {
            b = self.nodes[b].parent.unwrap();
        }
        while a != b {
            a = self.nodes[a].parent.expect("vertices in different trees");
            b = self.nodes[b].parent.unwrap();
        }
        a
    }

    /// Vertices on the path from `lca(u, w)` up to the root, inclusive.
    pub fn lca_star(&self, u: Vertex, w: Vertex) -> Vec<Vertex> {
        let mut out = Vec::new();
        let mut cur = Some(self.lca(u, w));
        while let Some(x) = cur {
            out.extend(&self.nodes[x].vertices);
            cur = self.nodes[x].parent;
        }
        out
    }
}

/// Builds the tree for a connected, twin-free, nested representation.
pub fn build_mpq(rep: &IntervalRepresentation) -> Result<MpqTree, SolveError> {
    let tree = MpqTree::from_nested(rep)?;
    if tree.roots.len() > 1 {
        return Err(SolveError::Disconnected);
    }
    let twins = tree.twins();
    if !twins.is_empty() {
        return Err(SolveError::StrongTwins(twins));
    }
    Ok(tree)
}

/// One matched token: it travels from `blue` to `red` and both meet at
/// `node`, their lowest common ancestor.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct Pairing {
    pub blue: Vertex,
    pub red: Vertex,
    pub node: NodeId,
}

/// Matched pairs in the order they were formed, bottom-up.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct TargetAssignment {
    pub pairs: Vec<Pairing>,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
enum Tag {
    Blue(Vertex),
    Red(Vertex),
    Green,
}

/// Bottom-up sweep that pairs each blue token with the red token whose
/// lowest common ancestor is as low as possible, or finds where that fails.
pub fn merge_pass(
    tree: &MpqTree,
    blue: &IndependentSet,
    red: &IndependentSet,
) -> Result<TargetAssignment, NoWitness> {
    let n = tree.node_of.len();
    let mut color = vec![(false, false); n];
    for &v in blue.vertices() {
        color[v.index()].0 = true;
    }
    for &v in red.vertices() {
        color[v.index()].1 = true;
    }
    let mut up: Vec<Option<Tag>> = vec![None; tree.nodes.len()];
    let mut pairs = Vec::with_capacity(blue.k());
    let mut blues: Vec<Vertex> = Vec::new();
    let mut reds: Vec<Vertex> = Vec::new();
    for &x in tree.postorder() {
        blues.clear();
        reds.clear();
        let mut greens = 0usize;
        for &v in &tree.nodes[x].vertices {
            let (b, r) = color[v.index()];
            if b {
                blues.push(v);
            }
            if r {
                reds.push(v);
            }
        }
        for &c in &tree.nodes[x].children {
            match up[c] {
                Some(Tag::Blue(v)) => blues.push(v),
                Some(Tag::Red(v)) => reds.push(v),
                Some(Tag::Green) => greens += 1,
                None => {}
            }
        }
        let here = tree.nodes[x].vertices[0];
        up[x] = match (blues.len(), reds.len(), greens) {
            (0, 0, 0) => None,
            (1, 0, 0) => Some(Tag::Blue(blues[0])),
            (0, 1, 0) => Some(Tag::Red(reds[0])),
            (0, 0, _) => Some(Tag::Green),
            (b, r, _) if b >= 2 || r >= 2 => {
                let mut vertices = vec![here];
                vertices.extend(if b >= 2 { &blues } else { &reds });
                return Err(NoWitness::new(NoReason::SameColorCollision, vertices));
            }
            (1, 1, 0) => {
                pairs.push(Pairing {
                    blue: blues[0],
                    red: reds[0],
                    node: x,
                });
                Some(Tag::Green)
            }
            _ => {
                let mut vertices = vec![here];
                vertices.extend(&blues);
                vertices.extend(&reds);
                return Err(NoWitness::new(NoReason::MatchedCollision, vertices));
            }
        };
    }
    for &root in &tree.roots {
        if let Some(Tag::Blue(v) | Tag::Red(v)) = up[root] {
            return Err(NoWitness::new(NoReason::ComponentUnbalanced, vec![v]));
        }
    }
    Ok(TargetAssignment { pairs })
}

/// Moves for each pair in formation order: nothing if the token stays, one
/// slide if one end lies above the other, otherwise two slides through the
/// meeting node.
pub fn emit_sequence(
    tree: &MpqTree,
    g: &TargetAssignment,
    blue: &IndependentSet,
) -> ReconfigSequence {
    let mut seq = ReconfigSequence::empty(blue.clone());
    for p in &g.pairs {
        if p.blue == p.red {
            continue;
        }
        let (nb, nr) = (tree.node_of(p.blue), tree.node_of(p.red));
        if tree.is_ancestor(nb, nr) || tree.is_ancestor(nr, nb) {
            seq.moves.push(Move::new(p.blue, p.red));
        } else {
            let via = tree.nodes[p.node].vertices[0];
            seq.moves.push(Move::new(p.blue, via));
            seq.moves.push(Move::new(via, p.red));
        }
    }
    seq
}

/// Solves a connected, twin-free trivially perfect instance.
pub fn solve_tp(
    rep: &IntervalRepresentation,
    blue: &IndependentSet,
    red: &IndependentSet,
) -> Result<Outcome, SolveError> {
    if blue.k() != red.k() {
        return Err(SolveError::CardinalityMismatch(blue.k(), red.k()));
    }
    let tree = build_mpq(rep)?;
    Ok(match merge_pass(&tree, blue, red) {
        Ok(g) => Outcome::Yes(emit_sequence(&tree, &g, blue)),
        Err(w) => Outcome::No(w),
    })
}

/// Decision only; no sequence is built.
pub fn decide_tp(
    rep: &IntervalRepresentation,
    blue: &IndependentSet,
    red: &IndependentSet,
) -> Result<Option<NoWitness>, SolveError> {
    if blue.k() != red.k() {
        return Err(SolveError::CardinalityMismatch(blue.k(), red.k()));
    }
    let tree = build_mpq(rep)?;
    Ok(merge_pass(&tree, blue, red).err())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::graph::{validate_sequence, Graph};

    fn v(i: u32) -> Vertex {
        Vertex::new(i)
    }

    fn rep(s: &str) -> IntervalRepresentation {
        s.parse().unwrap()
    }

    fn set(g: &Graph, ids: &[u32]) -> IndependentSet {
        IndependentSet::new(g, ids.iter().map(|&i| v(i))).unwrap()
    }

    const STAR3: &str = "L1 L2 R2 L3 R3 L4 R4 R1";
    const STAR4: &str = "L1 L2 R2 L3 R3 L4 R4 L5 R5 R1";
    const DEEP: &str = "L1 L2 L3 R3 L4 R4 R2 L5 R5 R1";

    #[test]
    fn containment_tree() {
        let t = build_mpq(&rep("L1 L2 R2 L3 R3 R1")).unwrap();
        assert_eq!(t.roots, vec![0]);
        assert_eq!(t.nodes[0].children, vec![1, 2]);
        assert_eq!(build_mpq(&rep("L1 R1")).unwrap().nodes.len(), 1);
        let t = build_mpq(&rep(DEEP)).unwrap();
        let kids = |x: Vertex| -> Vec<Vertex> {
            t.nodes[t.node_of(x)]
                .children
                .iter()
                .map(|&c| t.nodes[c].vertices[0])
                .collect()
        };
        assert_eq!(kids(v(1)), vec![v(2), v(5)]);
        assert_eq!(kids(v(2)), vec![v(3), v(4)]);
    }

    #[test]
    fn tree_errors() {
        assert_eq!(
            build_mpq(&rep("L1 L2 R1 R2")),
            Err(SolveError::NotTriviallyPerfect)
        );
        assert_eq!(
            build_mpq(&rep("L1 R1 L2 R2")),
            Err(SolveError::Disconnected)
        );
        assert_eq!(
            build_mpq(&rep("L1 L2 R2 R1")),
            Err(SolveError::StrongTwins(vec![(v(1), v(2))]))
        );
    }

    #[test]
    fn lowest_common_ancestors() {
        let t = build_mpq(&rep("L1 L2 R2 L3 R3 R1")).unwrap();
        assert_eq!(t.lca(v(2), v(3)), t.node_of(v(1)));
        assert_eq!(t.lca(v(2), v(2)), t.node_of(v(2)));
        assert_eq!(t.lca_star(v(2), v(3)), vec![v(1)]);
        assert_eq!(t.lca_star(v(2), v(2)), vec![v(2), v(1)]);
        let t = build_mpq(&rep(DEEP)).unwrap();
        assert_eq!(t.lca(v(3), v(4)), t.node_of(v(2)));
        assert_eq!(t.lca_star(v(3), v(5)), vec![v(1)]);
    }

    #[test]
    fn star_cases() {
        let r = rep(STAR3);
        let g = r.intersection_graph();
        let t = build_mpq(&r).unwrap();
        let a = merge_pass(&t, &set(&g, &[2]), &set(&g, &[3])).unwrap();
        assert_eq!(
            a.pairs,
            vec![Pairing {
                blue: v(2),
                red: v(3),
                node: 0
            }]
        );
        let seq = emit_sequence(&t, &a, &set(&g, &[2]));
        assert_eq!(
            seq.moves,
            vec![Move::new(v(2), v(1)), Move::new(v(1), v(3))]
        );

        let w = merge_pass(&t, &set(&g, &[2, 3]), &set(&g, &[3, 4])).unwrap_err();
        assert_eq!(w.reason, NoReason::MatchedCollision);
        assert_eq!(w.vertices[0], v(1));

        let r = rep(STAR4);
        let g = r.intersection_graph();
        let t = build_mpq(&r).unwrap();
        let w = merge_pass(&t, &set(&g, &[2, 3]), &set(&g, &[4, 5])).unwrap_err();
        assert_eq!(w.reason, NoReason::SameColorCollision);
    }

    #[test]
    fn identity_and_empty() {
        let r = rep(STAR3);
        let g = r.intersection_graph();
        let b = set(&g, &[2]);
        match solve_tp(&r, &b, &b).unwrap() {
            Outcome::Yes(s) => assert!(s.moves.is_empty()),
            Outcome::No(w) => panic!("unexpected {w}"),
        }
        let e = IndependentSet::empty();
        assert!(matches!(solve_tp(&r, &e, &e).unwrap(), Outcome::Yes(s) if s.moves.is_empty()));
    }

    #[test]
    fn sibling_pairs_take_four_moves() {
        // 1 contains 2 and 5; 2 contains 3 and 4; 5 contains 6 and 7.
        let r = rep("L1 L2 L3 R3 L4 R4 R2 L5 L6 R6 L7 R7 R5 R1");
        let g = r.intersection_graph();
        let (b, rd) = (set(&g, &[3, 6]), set(&g, &[4, 7]));
        let Outcome::Yes(seq) = solve_tp(&r, &b, &rd).unwrap() else {
            panic!()
        };
        assert_eq!(seq.len_moves(), 4);
        assert_eq!(validate_sequence(&g, &b, &rd, &seq), Ok(()));
    }

    #[test]
    fn ancestor_pair_is_one_move() {
        let r = rep(DEEP);
        let g = r.intersection_graph();
        let (b, rd) = (set(&g, &[3]), set(&g, &[2]));
        let Outcome::Yes(seq) = solve_tp(&r, &b, &rd).unwrap() else {
            panic!()
        };
        assert_eq!(seq.moves, vec![Move::new(v(3), v(2))]);
    }

    fn incomparable(t: &MpqTree, a: NodeId, b: NodeId) -> bool {
        !t.is_ancestor(a, b) && !t.is_ancestor(b, a)
    }

    fn permutations(k: usize) -> Vec<Vec<usize>> {
        if k == 0 {
            return vec![Vec::new()];
        }
        let mut out = Vec::new();
        for p in permutations(k - 1) {
            for i in 0..=p.len() {
                let mut q = p.clone();
                q.insert(i, k - 1);
                out.push(q);
            }
        }
        out
    }

    // The pairing found by the merge has pairwise incomparable meeting nodes
    // and is realizable in exactly the emitted number of moves; any pairing
    // with two comparable meeting nodes cannot be realized at all.
    #[test]
    fn pairings_against_labeled_search() {
        use crate::oracle::{independent_sets, labeled_distance, tp_reps};
        let mut refuted = 0;
        for n in 3..=7 {
            for r in tp_reps(n) {
                let g = r.intersection_graph();
                let t = build_mpq(&r).unwrap();
                for k in 1..=3 {
                    let all = independent_sets(&g, k);
                    for b in &all {
                        for rd in &all {
                            if let Ok(a) = merge_pass(&t, b, rd) {
                                let p = &a.pairs;
                                for i in 0..p.len() {
                                    for j in i + 1..p.len() {
                                        assert!(
                                            incomparable(&t, p[i].node, p[j].node),
                                            "{r} {b} {rd}"
                                        );
                                    }
                                }
                                let moves = emit_sequence(&t, &a, b).len_moves();
                                let targets: Vec<_> = p.iter().map(|x| (x.blue, x.red)).collect();
                                assert_eq!(labeled_distance(&g, &targets, 100_000), Some(moves));
                            }
                            for perm in permutations(k) {
                                let targets: Vec<(Vertex, Vertex)> = (0..k)
                                    .map(|i| (b.vertices()[i], rd.vertices()[perm[i]]))
                                    .collect();
                                let nodes: Vec<NodeId> =
                                    targets.iter().map(|&(x, y)| t.lca(x, y)).collect();
                                let ok = (0..k).all(|i| {
                                    (i + 1..k).all(|j| incomparable(&t, nodes[i], nodes[j]))
                                });
                                if !ok {
                                    refuted += 1;
                                    assert_eq!(
                                        labeled_distance(&g, &targets, 100_000),
                                        None,
                                        "{r} {targets:?}"
                                    );
                                }
                            }
                        }
                    }
                }
            }
        }
        assert!(refuted > 0);
    }

    #[test]
    fn vertices_within_two_hops() {
        for n in 1..=8 {
            for r in crate::oracle::tp_reps(n) {
                let g = r.intersection_graph();
                for u in g.vertices() {
                    assert!(g.bfs_distances(u).iter().all(|d| d.is_some_and(|d| d <= 2)));
                }
            }
        }
    }
}
