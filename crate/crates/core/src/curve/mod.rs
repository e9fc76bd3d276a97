//! Plane tropical curves as embedded weighted graphs, Newton subdivisions and
//! the duality between them.
//!
//! Genus is the first Betti number `|edges| - |vertices| + #components`, which
//! also covers disconnected curves such as unions of disjoint pieces.

pub mod decompose;
pub mod duality;
pub mod graph;
pub mod subdivision;

use thiserror::Error;

pub use decompose::decompose_transverse_union;
pub use duality::{
    check_orthogonality, corner_locus, degree_genus_report, is_smooth, tie_count, DegreeGenusReport, DualCell,
    DualEdge, DualityCertificate,
};
pub use graph::{canonical_sign, BalancingReport, Edge, Line, PlaneTropicalCurve, Ray};
pub use subdivision::{
    enumerate_smooth_types, enumerate_smooth_types_experimental, newton_subdivision, standard_triangle,
    unimodular_triangulations, LiftHeight, NewtonSubdivision, RegularityReport,
    SubdivisionEdge,
};

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum CurveError {
    #[error("malformed curve: {0}")]
    Malformed(String),
    #[error("malformed subdivision: {0}")]
    MalformedSubdivision(String),
    #[error("unsupported degree {0}")]
    UnsupportedDegree(u32),
    #[error("not transversely decomposable: {0}")]
    NotDecomposable(String),
}
