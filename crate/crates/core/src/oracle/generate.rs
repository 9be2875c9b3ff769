//! Seeded random instances.

use std::collections::BTreeMap;
use std::fmt;

use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use thiserror::Error;

use crate::graph::{Graph, Vertex};
use crate::instance::{Instance, Structure};
use crate::interval::{Event, IntervalRepresentation};
use crate::solver::proper_twins;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum GenClass {
    Proper,
    Tp,
    Caterpillar,
}

impl fmt::Display for GenClass {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            GenClass::Proper => "proper",
            GenClass::Tp => "tp",
            GenClass::Caterpillar => "caterpillar",
        })
    }
}

#[derive(Clone, Debug, Error, PartialEq, Eq)]
pub enum GenError {
    #[error("no {class} instance with n={n}, k={k} found")]
    Infeasible { class: GenClass, n: usize, k: usize },
}

const ATTEMPTS: usize = 200;

/// A random twin-free connected instance with `k` tokens per side.
/// Identical arguments give identical instances.
pub fn gen_instance(class: GenClass, n: usize, k: usize, seed: u64) -> Result<Instance, GenError> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let infeasible = GenError::Infeasible { class, n, k };
    if n == 0 || k > n {
        return Err(infeasible);
    }
    for _ in 0..ATTEMPTS {
        let structure = match class {
            GenClass::Proper => random_proper(n, &mut rng).map(Structure::Rep),
            GenClass::Tp => random_nested(n, &mut rng).map(Structure::Rep),
            GenClass::Caterpillar => random_caterpillar(n, &mut rng).map(Structure::Edges),
        };
        let Some(structure) = structure else {
            return Err(infeasible);
        };
        let blue = random_independent(&structure, k, &mut rng);
        let red = random_independent(&structure, k, &mut rng);
        if let (Some(blue), Some(red)) = (blue, red) {
            return Ok(Instance {
                structure,
                blue,
                red,
            });
        }
    }
    Err(infeasible)
}

fn relabel_events(events: &[Event], perm: &[u32]) -> IntervalRepresentation {
    let events = events
        .iter()
        .map(|e| Event {
            vertex: Vertex::new(perm[e.vertex.index()]),
            side: e.side,
        })
        .collect();
    IntervalRepresentation::from_events(events).expect("relabeling keeps validity")
}

fn permutation(n: usize, rng: &mut ChaCha8Rng) -> Vec<u32> {
    let mut p: Vec<u32> = (1..=n as u32).collect();
    p.shuffle(rng);
    p
}

/// Unit intervals with random gaps. Twins are removed and replaced by new
/// intervals on the right until none are left.
fn random_proper(n: usize, rng: &mut ChaCha8Rng) -> Option<IntervalRepresentation> {
    if n == 2 {
        return None;
    }
    // Lefts are even and the length is odd, so no two endpoints coincide;
    // gaps stay below the length, so the graph is connected.
    const HALF: u64 = 1000;
    const LEN: u64 = 2 * HALF + 1;
    for _ in 0..ATTEMPTS {
        let mut lefts: Vec<u64> = Vec::with_capacity(n);
        let fill = |lefts: &mut Vec<u64>, rng: &mut ChaCha8Rng| {
            while lefts.len() < n {
                let next = lefts.last().map_or(0, |&l| l + 2 * rng.gen_range(1..=HALF));
                lefts.push(next);
            }
        };
        fill(&mut lefts, rng);
        for _ in 0..4 * n + 10 {
            let rep = IntervalRepresentation::from_intervals(
                &lefts.iter().map(|&a| (a, a + LEN)).collect::<Vec<_>>(),
            );
            let twins = proper_twins(&rep);
            if twins.is_empty() {
                let perm = permutation(n, rng);
                return Some(relabel_events(rep.events(), &perm));
            }
            let mut drop: Vec<usize> = twins.iter().map(|p| p.1.index()).collect();
            drop.sort_unstable();
            drop.dedup();
            for &i in drop.iter().rev() {
                lefts.remove(i);
            }
            // Close gaps left by removals so the graph stays connected.
            for i in 1..lefts.len() {
                let cap = lefts[i - 1] + 2 * HALF;
                if lefts[i] > cap {
                    let shift = lefts[i] - cap;
                    for l in &mut lefts[i..] {
                        *l -= shift;
                    }
                }
            }
            fill(&mut lefts, rng);
        }
    }
    None
}

/// A random rooted tree whose internal nodes have at least two children,
/// written as nested intervals.
fn random_nested(n: usize, rng: &mut ChaCha8Rng) -> Option<IntervalRepresentation> {
    if n == 2 {
        return None;
    }
    let mut children: Vec<Vec<usize>> = vec![Vec::new()];
    while children.len() < n {
        let left = n - children.len();
        let x = rng.gen_range(0..children.len());
        let grow_leaf = children[x].is_empty();
        if grow_leaf && left >= 2 {
            for _ in 0..2 {
                let id = children.len();
                children.push(Vec::new());
                children[x].push(id);
            }
        } else if !grow_leaf {
            let id = children.len();
            children.push(Vec::new());
            children[x].push(id);
        }
    }
    for c in &mut children {
        c.shuffle(rng);
    }
    let perm = permutation(n, rng);
    let mut events = Vec::with_capacity(2 * n);
    let mut stack = vec![(0usize, false)];
    while let Some((x, closing)) = stack.pop() {
        let vertex = Vertex::new(perm[x]);
        if closing {
            events.push(Event {
                vertex,
                side: crate::interval::Side::Right,
            });
            continue;
        }
        events.push(Event {
            vertex,
            side: crate::interval::Side::Left,
        });
        stack.push((x, true));
        for &c in children[x].iter().rev() {
            stack.push((c, false));
        }
    }
    Some(IntervalRepresentation::from_events(events).expect("nested events are valid"))
}

/// A random caterpillar: spine length, then leaves with each spine end
/// getting at least one.
fn random_caterpillar(n: usize, rng: &mut ChaCha8Rng) -> Option<Graph> {
    if n == 1 {
        return Some(Graph::from_edges(1, &[]).unwrap());
    }
    if n == 2 {
        return None;
    }
    let m = rng.gen_range(1..=n - 2);
    let mut owner: Vec<usize> = Vec::with_capacity(n - m);
    owner.push(0);
    if m > 1 {
        owner.push(m - 1);
    }
    while owner.len() < n - m {
        owner.push(rng.gen_range(0..m));
    }
    let perm = permutation(n, rng);
    let id = |i: usize| Vertex::new(perm[i]);
    let mut edges = Vec::with_capacity(n - 1);
    for i in 1..m {
        edges.push((id(i - 1), id(i)));
    }
    for (j, &s) in owner.iter().enumerate() {
        edges.push((id(s), id(m + j)));
    }
    Some(Graph::from_edges(n, &edges).expect("caterpillar edges are simple"))
}

/// Random greedy independent set of size `k`, with restarts.
fn random_independent(s: &Structure, k: usize, rng: &mut ChaCha8Rng) -> Option<Vec<Vertex>> {
    let n = match s {
        Structure::Rep(r) => r.n(),
        Structure::Edges(g) => g.n(),
    };
    let mut order: Vec<Vertex> = (1..=n as u32).map(Vertex::new).collect();
    for _ in 0..ATTEMPTS {
        order.shuffle(rng);
        let mut chosen = Vec::with_capacity(k);
        match s {
            Structure::Rep(r) => {
                let mut by_left: BTreeMap<u32, Vertex> = BTreeMap::new();
                for &v in &order {
                    if chosen.len() == k {
                        break;
                    }
                    let (a, b) = (r.left(v), r.right(v));
                    let before = by_left
                        .range(..a)
                        .next_back()
                        .is_some_and(|(_, &u)| r.right(u) >= a);
                    let after = by_left.range(a..).next().is_some_and(|(&l, _)| l <= b);
                    if !before && !after {
                        by_left.insert(a, v);
                        chosen.push(v);
                    }
                }
            }
            Structure::Edges(g) => {
                let mut blocked = vec![false; n];
                for &v in &order {
                    if chosen.len() == k {
                        break;
                    }
                    if !blocked[v.index()] {
                        chosen.push(v);
                        blocked[v.index()] = true;
                        for w in g.neighbors(v) {
                            blocked[w.index()] = true;
                        }
                    }
                }
            }
        }
        if chosen.len() == k {
            chosen.sort_unstable();
            return Some(chosen);
        }
    }
    None
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::graph::IndependentSet;
    use crate::recognize::{find_strong_twins, recognize_caterpillar};

    #[test]
    fn deterministic() {
        for class in [GenClass::Proper, GenClass::Tp, GenClass::Caterpillar] {
            let a = gen_instance(class, 7, 2, 1).unwrap();
            let b = gen_instance(class, 7, 2, 1).unwrap();
            assert_eq!(a.to_string(), b.to_string());
        }
    }

    #[test]
    fn trivial_and_infeasible_sizes() {
        let i = gen_instance(GenClass::Proper, 1, 1, 9).unwrap();
        assert_eq!(i.to_string(), "n 1\nrep L1 R1\nblue 1\nred 1\n");
        assert!(gen_instance(GenClass::Tp, 2, 1, 0).is_err());
        assert!(gen_instance(GenClass::Caterpillar, 2, 1, 0).is_err());
        assert!(gen_instance(GenClass::Proper, 4, 4, 0).is_err());
    }

    #[test]
    fn generated_instances_are_valid() {
        for seed in 0..40 {
            for n in [3, 5, 9, 16] {
                for class in [GenClass::Proper, GenClass::Tp, GenClass::Caterpillar] {
                    let inst = gen_instance(class, n, 1 + n / 4, seed).unwrap();
                    let g = inst.graph();
                    assert!(g.is_connected());
                    assert!(find_strong_twins(&g).is_empty(), "{inst}");
                    IndependentSet::new(&g, inst.blue.iter().copied()).unwrap();
                    IndependentSet::new(&g, inst.red.iter().copied()).unwrap();
                    match (&inst.structure, class) {
                        (Structure::Rep(r), GenClass::Proper) => assert!(r.is_proper()),
                        (Structure::Rep(r), GenClass::Tp) => assert!(r.is_trivially_perfect()),
                        (Structure::Edges(g), GenClass::Caterpillar) => {
                            recognize_caterpillar(g).unwrap();
                        }
                        _ => panic!("wrong structure for {class}"),
                    }
                }
            }
        }
    }
}
