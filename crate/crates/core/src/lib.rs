//! Oriented clique complexes of simple graphs, their incidence matrices and
//! the edge-indexed Helmholtzian `H = B Bᵀ + Cᵀ C`.
//!
//! Everything discrete (incidence, `H`, ranks, kernels) is computed in exact
//! integer or rational arithmetic. Floating point is confined to spectra,
//! projections of real-valued flows and ranking.
//!
//! ```
//! use helm_core::{fixtures, hodge};
//!
//! let k4 = fixtures::k4();
//! let report = hodge::nullity_exact(&k4);
//! assert_eq!(report.eta_exact, 0);
//! assert_eq!(report.eta_predicted, -1);
//! assert!(!report.triangles_independent);
//! ```

pub mod cli;
pub mod complex;
pub mod error;
pub mod fixtures;
pub mod generate;
pub mod graph;
pub mod helmholtzian;
pub mod hodge;
pub mod incidence;
pub mod linalg;
pub mod matrix;
pub mod mmio;

pub use complex::{OrientedComplex, Triangle};
pub use error::{Error, Result};
pub use graph::{Edge, Graph, VertexId};
pub use helmholtzian::{assemble, verify_equivalence, HelmholtzianMatrix, Provenance};
pub use incidence::{build_b, build_c, EdgeFlow, TriangleCochain, VertexPotential};
pub use matrix::{IntMatrix, Layout};
