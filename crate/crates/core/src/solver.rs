//! Class dispatch and the yes/no outcome shared by all solvers.

use std::fmt;

use crate::caterpillar;
use crate::error::SolveError;
use crate::graph::{Graph, IndependentSet, Move, ReconfigSequence, SetError, Vertex};
use crate::instance::{Instance, Structure};
use crate::interval::{Classification, IntervalRepresentation};
use crate::proper;
use crate::recognize::{find_strong_twins, recognize_caterpillar};
use crate::trivially_perfect::{self as tp, MpqTree};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum NoReason {
    /// Tokens on two leaves of one spine vertex can never move.
    TwinLeavesBlocked,
    /// The two configurations have different locked paths.
    LockMismatch,
    /// A part of the graph tokens cannot leave holds unequal token counts.
    ComponentUnbalanced,
    /// Two tokens of one colour meet below any partner of the other colour.
    SameColorCollision,
    /// An already matched pair meets an unmatched token.
    MatchedCollision,
}

impl fmt::Display for NoReason {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            NoReason::TwinLeavesBlocked => "TWIN_LEAVES_BLOCKED",
            NoReason::LockMismatch => "LOCK_MISMATCH",
            NoReason::ComponentUnbalanced => "COMPONENT_UNBALANCED",
            NoReason::SameColorCollision => "SAME_COLOR_COLLISION",
            NoReason::MatchedCollision => "MATCHED_COLLISION",
        })
    }
}

/// Why an instance is a "no", with the vertices involved.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct NoWitness {
    pub reason: NoReason,
    pub vertices: Vec<Vertex>,
}

impl NoWitness {
    pub fn new(reason: NoReason, vertices: Vec<Vertex>) -> Self {
        NoWitness { reason, vertices }
    }

    fn remap(mut self, ids: &[Vertex]) -> Self {
        for v in &mut self.vertices {
            *v = ids[v.index()];
        }
        self
    }
}

impl fmt::Display for NoWitness {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "NO {}", self.reason)?;
        for v in &self.vertices {
            write!(f, " {v}")?;
        }
        Ok(())
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Outcome {
    Yes(ReconfigSequence),
    No(NoWitness),
}

impl Outcome {
    pub fn moves(&self) -> Option<usize> {
        match self {
            Outcome::Yes(s) => Some(s.len_moves()),
            Outcome::No(_) => None,
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Class {
    Proper,
    TriviallyPerfect,
    Caterpillar,
}

impl fmt::Display for Class {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Class::Proper => "proper",
            Class::TriviallyPerfect => "tp",
            Class::Caterpillar => "caterpillar",
        })
    }
}

/// Requested solver; `Auto` tries proper, then trivially perfect, then
/// caterpillar.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, Hash)]
pub enum ClassChoice {
    #[default]
    Auto,
    Only(Class),
}

fn is_forest_of_caterpillars(g: &Graph) -> bool {
    g.components()
        .iter()
        .all(|c| recognize_caterpillar(&g.induced(c)).is_ok())
}

/// The class a solver will be run as.
pub fn resolve_class(inst: &Instance, choice: ClassChoice) -> Result<Class, SolveError> {
    match (choice, &inst.structure) {
        (ClassChoice::Only(c), _) => Ok(c),
        (ClassChoice::Auto, Structure::Rep(r)) => match r.classify() {
            Classification::Proper => Ok(Class::Proper),
            Classification::TriviallyPerfect => Ok(Class::TriviallyPerfect),
            Classification::Neither if is_forest_of_caterpillars(&r.intersection_graph()) => {
                Ok(Class::Caterpillar)
            }
            Classification::Neither => Err(SolveError::UnsupportedClass),
        },
        (ClassChoice::Auto, Structure::Edges(g)) if is_forest_of_caterpillars(g) => {
            Ok(Class::Caterpillar)
        }
        (ClassChoice::Auto, Structure::Edges(_)) => Err(SolveError::UnsupportedClass),
    }
}

fn rep_set(
    rep: &IntervalRepresentation,
    vs: &[Vertex],
    color: &'static str,
) -> Result<IndependentSet, SolveError> {
    let bad = |source| SolveError::BadSet { color, source };
    let mut sorted = vs.to_vec();
    sorted.sort_unstable();
    if let Some(w) = sorted.windows(2).find(|w| w[0] == w[1]) {
        return Err(bad(SetError::Duplicate(w[0])));
    }
    if let Some(v) = sorted.iter().find(|v| v.index() >= rep.n()) {
        return Err(bad(SetError::UnknownVertex(v.id())));
    }
    let mut by_left = sorted.clone();
    by_left.sort_unstable_by_key(|&v| rep.left(v));
    if let Some(w) = by_left
        .windows(2)
        .find(|w| rep.right(w[0]) > rep.left(w[1]))
    {
        return Err(bad(SetError::NotIndependent(
            w[0].min(w[1]),
            w[0].max(w[1]),
        )));
    }
    Ok(IndependentSet::from_sorted_unchecked(sorted))
}

fn graph_set(g: &Graph, vs: &[Vertex], color: &'static str) -> Result<IndependentSet, SolveError> {
    IndependentSet::new(g, vs.iter().copied())
        .map_err(|source| SolveError::BadSet { color, source })
}

/// Twin pairs of a proper representation. Twins are consecutive in the
/// canonical order, with nothing between their LEFT endpoints and nothing
/// between their RIGHT endpoints.
pub fn proper_twins(rep: &IntervalRepresentation) -> Vec<(Vertex, Vertex)> {
    let order = rep.order_by_left();
    let mut pairs = Vec::new();
    let mut class: Vec<Vertex> = Vec::new();
    let mut flush = |class: &mut Vec<Vertex>| {
        for (i, &u) in class.iter().enumerate() {
            for &w in &class[i + 1..] {
                pairs.push((u.min(w), u.max(w)));
            }
        }
        class.clear();
    };
    for w in order.windows(2) {
        let (u, x) = (w[0], w[1]);
        if rep.left(x) == rep.left(u) + 1 && rep.right(x) == rep.right(u) + 1 {
            if class.is_empty() {
                class.push(u);
            }
            class.push(x);
        } else {
            flush(&mut class);
        }
    }
    flush(&mut class);
    pairs.sort_unstable();
    pairs
}

/// Checked input for one class.
struct Prepared {
    class: Class,
    rep: Option<IntervalRepresentation>,
    graph: Option<Graph>,
    blue: IndependentSet,
    red: IndependentSet,
}

fn prepare(inst: &Instance, choice: ClassChoice) -> Result<Prepared, SolveError> {
    let class = resolve_class(inst, choice)?;
    let (rep, graph, blue, red) = match (class, &inst.structure) {
        (Class::Proper | Class::TriviallyPerfect, Structure::Edges(_)) => {
            return Err(SolveError::NeedsRepresentation)
        }
        (Class::Proper | Class::TriviallyPerfect, Structure::Rep(r)) => {
            let blue = rep_set(r, &inst.blue, "blue")?;
            let red = rep_set(r, &inst.red, "red")?;
            (Some(r.clone()), None, blue, red)
        }
        (Class::Caterpillar, s) => {
            let g = match s {
                Structure::Rep(r) => r.intersection_graph(),
                Structure::Edges(g) => g.clone(),
            };
            let blue = graph_set(&g, &inst.blue, "blue")?;
            let red = graph_set(&g, &inst.red, "red")?;
            (None, Some(g), blue, red)
        }
    };
    match class {
        Class::Proper => {
            let r = rep.as_ref().unwrap();
            if !r.is_proper() {
                return Err(SolveError::NotProper);
            }
            let twins = proper_twins(r);
            if !twins.is_empty() {
                return Err(SolveError::StrongTwins(twins));
            }
        }
        Class::TriviallyPerfect => {
            let twins = MpqTree::from_nested(rep.as_ref().unwrap())?.twins();
            if !twins.is_empty() {
                return Err(SolveError::StrongTwins(twins));
            }
        }
        Class::Caterpillar => {
            let g = graph.as_ref().unwrap();
            let twins = find_strong_twins(g);
            if !twins.is_empty() {
                return Err(SolveError::StrongTwins(twins));
            }
        }
    }
    if blue.k() != red.k() {
        return Err(SolveError::CardinalityMismatch(blue.k(), red.k()));
    }
    Ok(Prepared {
        class,
        rep,
        graph,
        blue,
        red,
    })
}

fn restrict(set: &IndependentSet, ids: &[Vertex]) -> IndependentSet {
    let mut local = Vec::new();
    for (i, v) in ids.iter().enumerate() {
        if set.contains(*v) {
            local.push(Vertex::from_index(i));
        }
    }
    IndependentSet::from_sorted_unchecked(local)
}

/// Per-piece results paired with the piece's original vertex ids.
type Pieces<T> = Result<Vec<(T, Vec<Vertex>)>, NoWitness>;

/// Runs `each` on every connected piece of an interval representation.
fn per_component<T>(
    p: &Prepared,
    mut each: impl FnMut(
        &IntervalRepresentation,
        &IndependentSet,
        &IndependentSet,
    ) -> Result<Result<T, NoWitness>, SolveError>,
) -> Result<Pieces<T>, SolveError> {
    let rep = p.rep.as_ref().unwrap();
    let mut out = Vec::new();
    for (sub, ids) in rep.components() {
        let (b, r) = (restrict(&p.blue, &ids), restrict(&p.red, &ids));
        if b.k() != r.k() {
            let mut w: Vec<Vertex> = b
                .vertices()
                .iter()
                .chain(r.vertices())
                .map(|v| ids[v.index()])
                .collect();
            w.sort_unstable();
            w.dedup();
            return Ok(Err(NoWitness::new(NoReason::ComponentUnbalanced, w)));
        }
        match each(&sub, &b, &r)? {
            Ok(t) => out.push((t, ids)),
            Err(w) => return Ok(Err(w.remap(&ids))),
        }
    }
    Ok(Ok(out))
}

/// Solves with the chosen class, returning the class actually used.
pub fn solve(inst: &Instance, choice: ClassChoice) -> Result<(Class, Outcome), SolveError> {
    let p = prepare(inst, choice)?;
    let outcome = match p.class {
        Class::Caterpillar => {
            caterpillar::solve_caterpillar(p.graph.as_ref().unwrap(), &p.blue, &p.red)?
        }
        Class::Proper | Class::TriviallyPerfect => {
            let class = p.class;
            let parts = per_component(&p, |sub, b, r| match class {
                Class::Proper => Ok(Ok(proper::solve_proper(sub, b, r)?)),
                _ => Ok(match tp::solve_tp(sub, b, r)? {
                    Outcome::Yes(s) => Ok(s),
                    Outcome::No(w) => Err(w),
                }),
            })?;
            match parts {
                Err(w) => Outcome::No(w),
                Ok(parts) => {
                    let mut seq = ReconfigSequence::empty(p.blue.clone());
                    for (s, ids) in parts {
                        let map = |v: Vertex| ids[v.index()];
                        seq.moves
                            .extend(s.moves.iter().map(|m| Move::new(map(m.from), map(m.to))));
                    }
                    Outcome::Yes(seq)
                }
            }
        }
    };
    Ok((p.class, outcome))
}

/// Decision only. `None` means the red set is reachable.
pub fn decide(
    inst: &Instance,
    choice: ClassChoice,
) -> Result<(Class, Option<NoWitness>), SolveError> {
    let p = prepare(inst, choice)?;
    let witness = match p.class {
        Class::Caterpillar => caterpillar::decide(p.graph.as_ref().unwrap(), &p.blue, &p.red)?,
        Class::Proper => per_component(&p, |_, _, _| Ok(Ok(())))?.err(),
        Class::TriviallyPerfect => per_component(&p, |sub, b, r| {
            Ok(match tp::decide_tp(sub, b, r)? {
                None => Ok(()),
                Some(w) => Err(w),
            })
        })?
        .err(),
    };
    Ok((p.class, witness))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::graph::validate_sequence;

    fn inst(s: &str) -> Instance {
        s.parse().unwrap()
    }

    #[test]
    fn auto_dispatch() {
        let p = inst("n 3\nrep L1 L2 R1 L3 R2 R3\nblue 1\nred 3\n");
        assert_eq!(resolve_class(&p, ClassChoice::Auto), Ok(Class::Proper));
        let t = inst("n 3\nrep L1 L2 R2 L3 R3 R1\nblue 2\nred 3\n");
        assert_eq!(
            resolve_class(&t, ClassChoice::Auto),
            Ok(Class::TriviallyPerfect)
        );
        let c = inst("n 4\nedges 3\n1 2\n1 3\n1 4\nblue 2\nred 3\n");
        assert_eq!(resolve_class(&c, ClassChoice::Auto), Ok(Class::Caterpillar));
        let cycle = inst("n 3\nedges 3\n1 2\n2 3\n1 3\nblue 1\nred 1\n");
        assert_eq!(
            resolve_class(&cycle, ClassChoice::Auto),
            Err(SolveError::UnsupportedClass)
        );
    }

    #[test]
    fn twins_are_rejected() {
        let k3 = inst("n 3\nrep L1 L2 L3 R1 R2 R3\nblue 1\nred 2\n");
        let e = solve(&k3, ClassChoice::Auto).unwrap_err();
        assert!(matches!(e, SolveError::StrongTwins(ref p) if p.len() == 3));
        let k2 = inst("n 2\nedges 1\n1 2\nblue 1\nred 2\n");
        assert!(matches!(
            solve(&k2, ClassChoice::Auto),
            Err(SolveError::StrongTwins(_))
        ));
    }

    #[test]
    fn proper_twin_detection() {
        let r: IntervalRepresentation = "L1 L2 R1 L3 L4 R2 R3 R4".parse().unwrap();
        assert_eq!(proper_twins(&r), find_strong_twins(&r.intersection_graph()));
        assert_eq!(proper_twins(&r), vec![(Vertex::new(3), Vertex::new(4))]);
    }

    #[test]
    fn disconnected_rep_is_solved_per_component() {
        let i = inst("n 6\nrep L1 L2 R1 L3 R2 R3 L4 L5 R4 L6 R5 R6\nblue 1 6\nred 3 4\n");
        let (class, out) = solve(&i, ClassChoice::Auto).unwrap();
        assert_eq!(class, Class::Proper);
        let Outcome::Yes(seq) = out else { panic!() };
        assert_eq!(seq.len_moves(), 4);
        let g = i.graph();
        let b = IndependentSet::new(&g, i.blue.clone()).unwrap();
        let r = IndependentSet::new(&g, i.red.clone()).unwrap();
        assert_eq!(validate_sequence(&g, &b, &r, &seq), Ok(()));

        let bad = inst("n 6\nrep L1 L2 R1 L3 R2 R3 L4 L5 R4 L6 R5 R6\nblue 1\nred 4\n");
        let (_, out) = solve(&bad, ClassChoice::Auto).unwrap();
        assert_eq!(
            out,
            Outcome::No(NoWitness::new(
                NoReason::ComponentUnbalanced,
                vec![Vertex::new(1)]
            ))
        );
    }

    #[test]
    fn dependent_set_is_an_error() {
        let i = inst("n 3\nrep L1 L2 R1 L3 R2 R3\nblue 1 2\nred 1 3\n");
        assert!(matches!(
            solve(&i, ClassChoice::Auto),
            Err(SolveError::BadSet { color: "blue", .. })
        ));
    }

    #[test]
    fn witness_format() {
        let w = NoWitness::new(NoReason::LockMismatch, vec![Vertex::new(2), Vertex::new(5)]);
        assert_eq!(w.to_string(), "NO LOCK_MISMATCH 2 5");
    }

    #[test]
    fn decide_matches_solve() {
        let i = inst("n 4\nedges 3\n1 2\n1 3\n1 4\nblue 2 3\nred 3 4\n");
        let (_, w) = decide(&i, ClassChoice::Auto).unwrap();
        assert!(w.is_some());
        let (_, out) = solve(&i, ClassChoice::Auto).unwrap();
        assert!(matches!(out, Outcome::No(_)));
    }
}
