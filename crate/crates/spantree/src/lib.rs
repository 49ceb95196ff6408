//! Exact spanning-tree enumeration over labeled simple graphs.
//!
//! The centerpiece is the vertex-degree spanning enumerator
//! `P_G(x_1, ..., x_n) = sum over spanning trees T of prod_v x_v^(deg_T(v) - 1)`,
//! a homogeneous polynomial of degree `n - 2`. For distance-hereditary graphs
//! this polynomial factors into linear forms, and the factorization can be
//! read off a pendant/twin construction certificate. The crate provides:
//!
//! - immutable labeled graphs with the surgery operations (pendant, twin
//!   duplication, cone, blow-up, two-graph composition) the factorization
//!   theory is stated through ([`graph`]);
//! - generators for the named graph families with known enumerators
//!   ([`families`]);
//! - distance-hereditary, cograph, and threshold recognition with replayable
//!   certificates ([`recognition`]);
//! - exact sparse polynomials and the factored enumerator representation
//!   ([`poly`], [`enumerator`]);
//! - exact integer/rational linear algebra: matrix-tree counting, the
//!   weighted-Laplacian evaluation oracle, the rank-one perturbation
//!   identity, and a brute-force deletion-contraction oracle ([`linalg`]);
//! - machine checks for both forms of the Ehrenborg conjecture and the
//!   blow-up identity relating them ([`ehrenborg`]).
//!
//! Everything is exact: arithmetic is arbitrary-precision integer/rational
//! throughout, and no floating point appears anywhere.

pub mod corpus;
pub mod ehrenborg;
pub mod enumerator;
pub mod error;
pub mod families;
pub mod graph;
pub mod linalg;
pub mod poly;
pub mod recognition;
pub mod selftest;

pub use error::Error;
pub use graph::{BipartitionCert, Graph, VertexId};

/// Crate-wide result alias.
pub type Result<T> = std::result::Result<T, Error>;
