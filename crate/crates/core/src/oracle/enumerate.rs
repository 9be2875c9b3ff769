//! Exhaustive families of small graphs and independent sets.

use std::collections::BTreeSet;

use crate::graph::{Graph, IndependentSet, Vertex};
use crate::interval::{Event, IntervalRepresentation, Side};

/// Every connected, twin-free proper representation on `n` vertices, with
/// vertex `i` as the i-th interval from the left.
pub fn proper_reps(n: usize) -> Vec<IntervalRepresentation> {
    let mut out = Vec::new();
    let mut word = Vec::with_capacity(2 * n);
    proper_words(n, 0, 0, &mut word, &mut out);
    out
}

fn proper_words(
    n: usize,
    lefts: usize,
    rights: usize,
    word: &mut Vec<Side>,
    out: &mut Vec<IntervalRepresentation>,
) {
    if rights == n {
        let events: Vec<Event> = {
            let (mut l, mut r) = (0u32, 0u32);
            word.iter()
                .map(|&side| {
                    let c = if side == Side::Left { &mut l } else { &mut r };
                    *c += 1;
                    Event {
                        vertex: Vertex::new(*c),
                        side,
                    }
                })
                .collect()
        };
        let rep = IntervalRepresentation::from_events(events).unwrap();
        if crate::solver::proper_twins(&rep).is_empty() {
            out.push(rep);
        }
        return;
    }
    if lefts < n {
        word.push(Side::Left);
        proper_words(n, lefts + 1, rights, word, out);
        word.pop();
    }
    // Closing the last open interval early would disconnect the graph.
    if rights < lefts && (rights + 1 < lefts || lefts == n) {
        word.push(Side::Right);
        proper_words(n, lefts, rights + 1, word, out);
        word.pop();
    }
}

/// Rooted unordered trees on `n` nodes where internal nodes have at least two
/// children, as canonical nested strings of parentheses.
fn full_trees(n: usize, memo: &mut Vec<Option<Vec<String>>>) -> Vec<String> {
    if let Some(Some(t)) = memo.get(n) {
        return t.clone();
    }
    let mut set = BTreeSet::new();
    if n == 1 {
        set.insert("()".to_string());
    } else {
        // Children as a multiset of subtrees with sizes summing to n - 1.
        let mut kids = Vec::new();
        child_multisets(n - 1, n - 1, &mut kids, memo, &mut set);
    }
    let v: Vec<String> = set.into_iter().collect();
    if memo.len() <= n {
        memo.resize(n + 1, None);
    }
    memo[n] = Some(v.clone());
    v
}

fn child_multisets(
    left: usize,
    max: usize,
    kids: &mut Vec<String>,
    memo: &mut Vec<Option<Vec<String>>>,
    out: &mut BTreeSet<String>,
) {
    if left == 0 {
        if kids.len() >= 2 {
            let mut sorted = kids.clone();
            sorted.sort();
            out.insert(format!("({})", sorted.concat()));
        }
        return;
    }
    for size in (1..=max.min(left)).rev() {
        for t in full_trees(size, memo) {
            // Keep children in non-increasing (size, string) order to avoid
            // repeats; the final sort canonicalizes anyway.
            if let Some(last) = kids.last() {
                if (last.len(), last.as_str()) < (t.len(), t.as_str()) {
                    continue;
                }
            }
            kids.push(t);
            child_multisets(left - size, size, kids, memo, out);
            kids.pop();
        }
    }
}

/// Every twin-free connected nested representation on `n` vertices, one per
/// isomorphism class of the containment tree.
pub fn tp_reps(n: usize) -> Vec<IntervalRepresentation> {
    let mut memo = Vec::new();
    full_trees(n, &mut memo)
        .into_iter()
        .map(|s| {
            let mut next = 0u32;
            let mut stack = Vec::new();
            let events = s
                .chars()
                .map(|c| {
                    if c == '(' {
                        next += 1;
                        stack.push(next);
                        Event {
                            vertex: Vertex::new(next),
                            side: Side::Left,
                        }
                    } else {
                        Event {
                            vertex: Vertex::new(stack.pop().unwrap()),
                            side: Side::Right,
                        }
                    }
                })
                .collect();
            IntervalRepresentation::from_events(events).unwrap()
        })
        .collect()
}

/// Every caterpillar on `n` vertices up to isomorphism, including the
/// single vertex and the single edge. Spine vertices come first.
pub fn caterpillars(n: usize) -> Vec<Graph> {
    let mut out = Vec::new();
    match n {
        0 => {}
        1 => out.push(Graph::from_edges(1, &[]).unwrap()),
        2 => out.push(Graph::from_edges(2, &[(Vertex::new(1), Vertex::new(2))]).unwrap()),
        _ => {
            for m in 1..=n - 2 {
                let mut counts = vec![0usize; m];
                leaf_counts(n - m, 0, &mut counts, &mut |c| {
                    let rev: Vec<usize> = c.iter().rev().copied().collect();
                    if c <= &rev[..] {
                        out.push(build(c));
                    }
                });
            }
        }
    }
    out
}

fn leaf_counts(left: usize, i: usize, counts: &mut Vec<usize>, emit: &mut impl FnMut(&[usize])) {
    let m = counts.len();
    if i == m {
        if left == 0 {
            emit(counts);
        }
        return;
    }
    let min = if i == 0 || i == m - 1 { 1 } else { 0 };
    for c in min..=left {
        counts[i] = c;
        leaf_counts(left - c, i + 1, counts, emit);
    }
    counts[i] = 0;
}

fn build(counts: &[usize]) -> Graph {
    let m = counts.len();
    let n = m + counts.iter().sum::<usize>();
    let mut edges = Vec::with_capacity(n - 1);
    for i in 1..m {
        edges.push((Vertex::from_index(i - 1), Vertex::from_index(i)));
    }
    let mut next = m;
    for (i, &c) in counts.iter().enumerate() {
        for _ in 0..c {
            edges.push((Vertex::from_index(i), Vertex::from_index(next)));
            next += 1;
        }
    }
    Graph::from_edges(n, &edges).unwrap()
}

/// All independent sets of size exactly `k`, in lexicographic order.
pub fn independent_sets(g: &Graph, k: usize) -> Vec<IndependentSet> {
    let mut out = Vec::new();
    let mut chosen = Vec::with_capacity(k);
    let mut blocked = vec![0u32; g.n()];
    extend(g, k, 0, &mut chosen, &mut blocked, &mut out);
    out
}

fn extend(
    g: &Graph,
    k: usize,
    from: usize,
    chosen: &mut Vec<Vertex>,
    blocked: &mut [u32],
    out: &mut Vec<IndependentSet>,
) {
    if chosen.len() == k {
        out.push(IndependentSet::from_sorted_unchecked(chosen.clone()));
        return;
    }
    for i in from..g.n() {
        if g.n() - i < k - chosen.len() {
            break;
        }
        if blocked[i] > 0 {
            continue;
        }
        let v = Vertex::from_index(i);
        chosen.push(v);
        for w in g.neighbors(v) {
            blocked[w.index()] += 1;
        }
        extend(g, k, i + 1, chosen, blocked, out);
        for w in g.neighbors(v) {
            blocked[w.index()] -= 1;
        }
        chosen.pop();
    }
}
