//! Shortest token sliding between independent sets on proper interval
//! graphs, trivially perfect graphs and caterpillars, with an exact
//! search oracle for testing.

pub mod caterpillar;
pub mod error;
pub mod graph;
pub mod instance;
pub mod interval;
pub mod oracle;
pub mod proper;
pub mod recognize;
pub mod solver;
pub mod trivially_perfect;

pub use error::SolveError;
pub use graph::{
    path_graph, validate_sequence, Graph, GraphError, IndependentSet, Move, ReconfigSequence,
    SetError, Vertex, Violation, ViolationKind,
};
pub use instance::{format_moves, parse_moves, Instance, ParseError, Structure};
pub use interval::{Classification, Event, IntervalRepresentation, RepError, RepErrorKind, Side};
pub use recognize::{
    find_strong_twins, recognize_caterpillar, CaterpillarError, CaterpillarStructure,
};
pub use solver::{decide, resolve_class, solve, Class, ClassChoice, NoReason, NoWitness, Outcome};
