use thiserror::Error;

use crate::complex::{HyperplaneId, Vertex};

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum Error {
    #[error("the basepoint (empty halfspace set) is not a vertex")]
    MissingBasepoint,
    #[error("hyperplane {0} is improper: its positive side is empty or contains every vertex")]
    ImproperHyperplane(HyperplaneId),
    #[error("vertex family is not median closed: median({x}, {y}, {z}) is missing")]
    NotMedianClosed { x: Vertex, y: Vertex, z: Vertex },
    #[error("vertex graph is disconnected")]
    Disconnected,
    #[error("duplicate vertex {0}")]
    DuplicateVertex(Vertex),
    #[error("hyperplane id {id} out of range for a complex with {count} hyperplanes")]
    IdOutOfRange { id: usize, count: usize },
    #[error("gate vertex of hyperplane {0} is not unique")]
    AmbiguousGate(HyperplaneId),
    #[error("{0} is not a vertex of the complex")]
    NotAVertex(Vertex),
    #[error("d-rank fixpoint stalled at level {level} for d = {d}")]
    NonTermination { d: usize, level: usize },
    #[error("consecutive path vertices {0} and {1} are not adjacent")]
    NotAPath(Vertex, Vertex),
    #[error("composition support grew after applying {index}")]
    SupportGrew { index: String },
    #[error("ordered composition did not terminate within {steps} steps")]
    CompositionRunaway { steps: usize },
    #[error("point is not intervalic: opposite pair ({0}, {1}) has both coordinates positive")]
    NotIntervalic(HyperplaneId, HyperplaneId),
    #[error("point does not lie in the embedded complex")]
    PointNotInComplex,
    #[error("coordinate {value} of hyperplane {id} lies outside [0, 1]")]
    CoordinateOutOfRange { id: HyperplaneId, value: String },
    #[error("invalid argument: {0}")]
    InvalidArgument(String),
    #[error("parse error on line {line}: {message}")]
    Parse { line: usize, message: String },
}

pub type Result<T, E = Error> = std::result::Result<T, E>;
