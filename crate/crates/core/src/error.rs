use thiserror::Error;

use crate::graph::{GraphError, SetError, Vertex};
use crate::interval::RepError;
use crate::recognize::CaterpillarError;

/// Input that a solver cannot accept. A "no" answer is not an error; see
/// [`crate::solver::Outcome`].
#[derive(Clone, Debug, Error, PartialEq, Eq)]
pub enum SolveError {
    #[error("strong twins present: {}", pairs(.0))]
    StrongTwins(Vec<(Vertex, Vertex)>),
    #[error("representation is not proper")]
    NotProper,
    #[error("representation is not trivially perfect")]
    NotTriviallyPerfect,
    #[error("not a caterpillar: {0}")]
    NotCaterpillar(#[from] CaterpillarError),
    #[error("graph is disconnected")]
    Disconnected,
    #[error("input matches none of proper interval, trivially perfect or caterpillar")]
    UnsupportedClass,
    #[error("this class needs an interval representation, not an edge list")]
    NeedsRepresentation,
    #[error("blue has {0} tokens but red has {1}")]
    CardinalityMismatch(usize, usize),
    #[error("{color} set: {source}")]
    BadSet {
        color: &'static str,
        #[source]
        source: SetError,
    },
    #[error(transparent)]
    Representation(#[from] RepError),
    #[error(transparent)]
    Graph(#[from] GraphError),
}

fn pairs(p: &[(Vertex, Vertex)]) -> String {
    p.iter()
        .map(|(a, b)| format!("{{{a},{b}}}"))
        .collect::<Vec<_>>()
        .join(" ")
}
