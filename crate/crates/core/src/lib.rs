//! Exact combinatorics of simplicial maps from closed oriented 3-manifolds
//! onto the boundary of the 3-simplex.

pub mod chains;
pub mod complex;
pub mod error;
pub mod fibers;
pub mod generators;
pub mod hopf;
pub mod io;
pub mod linalg;
pub mod manifold;
pub mod maps;
pub mod simplex;

pub use chains::{Chain, Cochain, HomologyGroup};
pub use complex::{Orientation, SimplicialComplex};
pub use error::{Error, Result};
pub use fibers::{FiberDiagram, Orientations};
pub use generators::{GeneratedMap, Provenance};
pub use hopf::{hopf_invariant, HopfResult};
pub use io::{parse_bundle, serialize_bundle, Bundle, ParseError, ReportDocument};
pub use manifold::{ManifoldReport, Verdict};
pub use maps::{PivotEdge, SimplicialMap};
pub use simplex::{OrientedSimplex, Simplex, VertexId};
