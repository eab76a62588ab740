//! Distances between geometric graphs: the transport-based graph mover's
//! distance (GMD), the exact geometric graph distance (GGD) for small graphs,
//! and the supporting geometry, I/O and experiment harnesses.
//!
//! Everything numeric is generic over [`Scalar`] (`f32` or `f64`); the
//! `*64` and `*32` aliases below name the common instantiations.

pub mod error;
pub mod experiments;
pub mod geometry;
pub mod ggd;
pub mod gmd;
pub mod ground_cost;
pub mod io;
pub mod planarize;
pub mod scalar;
pub mod segment;
pub mod transport;

pub use error::{Error, Result};
pub use geometry::{hausdorff_vertices, validate_graph, AdjLengthVector, CostParams, GeometricGraph, Point, Violation};
pub use ggd::{enumerate_matchings, ggd_exact, matching_cost, matching_count, InexactMatching, EXACT_LIMIT};
pub use gmd::{gmd, gmd_bruteforce, gmd_instance, GmdResult, BRUTEFORCE_LIMIT};
pub use ground_cost::{deletion_cost, ground_cost_matrix, GroundCostMatrix};
pub use planarize::{planarize, DEFAULT_EPS};
pub use scalar::Scalar;
pub use transport::{check_flow, solve_transport, Flow, FlowViolation, TransportInstance};

pub type Point64 = Point<f64>;
pub type Point32 = Point<f32>;
pub type GeometricGraph64 = GeometricGraph<f64>;
pub type GeometricGraph32 = GeometricGraph<f32>;
pub type CostParams64 = CostParams<f64>;
pub type CostParams32 = CostParams<f32>;
pub type GroundCostMatrix64 = GroundCostMatrix<f64>;
pub type GroundCostMatrix32 = GroundCostMatrix<f32>;
pub type TransportInstance64 = TransportInstance<f64>;
pub type TransportInstance32 = TransportInstance<f32>;
pub type Flow64 = Flow<f64>;
pub type Flow32 = Flow<f32>;
pub type GmdResult64 = GmdResult<f64>;
pub type GmdResult32 = GmdResult<f32>;
