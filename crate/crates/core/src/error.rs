use thiserror::Error;

use crate::simplex::Simplex;

pub type Result<T, E = Error> = std::result::Result<T, E>;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("facet {0} repeats a vertex")]
    DuplicateVertexInFacet(String),
    #[error("facet {facet} is a face of {container}")]
    NonMaximalFacet { facet: Simplex, container: Simplex },
    #[error("unknown vertex {0}")]
    UnknownVertex(String),
    #[error("simplex {0} is not in the complex")]
    SimplexNotInComplex(Simplex),
    #[error("triangle {0} is not in the complex")]
    TriangleNotInComplex(Simplex),
    #[error("complex `{0}` has no coherent orientation")]
    NotOriented(String),
    #[error("target cochain is not a coboundary")]
    NotACoboundary,
    #[error("{0} is not a maximal simplex of the target")]
    NotMaximal(Simplex),
    #[error("tetrahedron {0} has a degenerate image")]
    DegenerateTetra(Simplex),
    #[error("tetrahedron {tetra} maps onto {image}, not onto {expected}")]
    TriangleMismatch { tetra: Simplex, image: Simplex, expected: Simplex },
    #[error("fiber segment in {0} has no matching continuation")]
    OpenChain(Simplex),
    #[error("fiber orientation disagrees across the face shared by {0} and {1}")]
    OrientationMismatch(Simplex, Simplex),
    #[error("certificate condition not met: {0}")]
    ConditionNotMet(String),
    #[error("partition of a fiber component is inconsistent: {0}")]
    PartitionInconsistent(String),
    #[error("lower bound violated: {0}")]
    TheoremViolation(String),
    #[error("source is not an integral homology 3-sphere: {0}")]
    NotHomologySphere(String),
    #[error("map is not simplicial: {0}")]
    NotSimplicial(String),
    #[error("invalid input: {0}")]
    InvalidInput(String),
    #[error("generated map failed validation: {0}")]
    ConstructionInvariantFailed(String),
}
