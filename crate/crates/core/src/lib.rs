//! Exact geometry and arithmetic of square-tiled translation surfaces.
//!
//! An [`Origami`] is a pair of permutations on unit squares. From it the crate
//! computes cylinder decompositions in every rational direction
//! ([`cylinders`]), the Veech group as a finite-index subgroup of the
//! modular group ([`veech`]), and evaluates the bounds on holomorphic
//! sections of the associated Veech families together with every inequality
//! they rest on ([`bounds`]).

pub mod bounds;
pub mod catalog;
pub mod cylinders;
pub mod origami;
pub mod perm;
pub mod report;
pub mod sl2;
pub mod veech;

/// Exact rationals used for moduli and bound arithmetic.
pub type Q = num_rational::Ratio<i64>;

pub use cylinders::{Cylinder, CylinderDecomposition, Direction};
pub use origami::{KernelElement, Origami, OrigamiError, Sign, SurfaceType, Vertex};
pub use perm::Permutation;
pub use sl2::Mat2;
pub use veech::{CosetTable, GroupSignature, OrigamiClass};
