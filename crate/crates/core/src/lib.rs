//! Exact combinatorics of ribbon graphs and Kontsevich cycles.
//!
//! The crate computes the coefficients expressing dual Kontsevich cycles as
//! polynomials in adjusted Miller-Morita-Mumford classes, by brute force over
//! associahedra, together with the graph complex, A∞ partition functions and
//! the structural checks these rest on.

pub mod ainfinity;
pub mod cocycle;
pub mod coefficients;
pub mod graph_complex;
pub mod linalg;
pub mod partition;
pub mod rational;
pub mod ribbon;
pub mod sign;
pub mod suites;
pub mod trees;
