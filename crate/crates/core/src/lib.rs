//! Exact computations with plane tropical curves.
//!
//! Everything works over the rationals: tropical polynomials and their
//! corner loci, Newton subdivisions, intersections (transverse and stable),
//! the group law on a smooth cubic, and enumerative counts of rational curves
//! through points, checked against Kontsevich's recursion.

pub mod cubic;
pub mod curve;
pub mod enumeration;
pub mod exact;
pub mod fixtures;
pub mod intersection;
pub mod puiseux;
pub mod recursion;
pub mod tropical;
