//! Exact intersection-lattice computations on algebraic surfaces.
//!
//! Everything here works over the rationals: divisor classes are rational
//! coordinate vectors in a Néron–Severi basis, and the surface is modelled as
//! an intersection lattice together with an ample witness and the complete
//! list of its irreducible negative curves. On top of that model the crate
//! computes Zariski decompositions, Zariski chambers, piecewise-quadratic
//! volumes, destabilizing numbers along rays, and Weyl-group actions, and it
//! reproduces the non-polynomial threefold volume of the twisted ruled
//! threefold over an abelian surface (see [`cutkosky`]).

pub mod chambers;
pub mod cutkosky;
mod error;
pub mod lattice;
pub mod matrix;
pub mod quadratic;
pub mod raywalk;
pub mod scalar;
pub mod surface;
pub mod volume;
pub mod weyl;
pub mod zariski;

pub use chambers::{construct_nef_with_null, enumerate_chambers, face_of, ChamberEnumeration, Face};
pub use error::{Error, Result};
pub use lattice::{inverse_is_nonpositive, signature, solve_gram_system, DivisorClass, IntersectionLattice, Signature};
pub use matrix::Matrix;
pub use quadratic::QuadraticIrrational;
pub use raywalk::{destabilizing_numbers, is_stable, stable_base_locus, RayWalkResult, Segment};
pub use scalar::Rational;
pub use surface::{NegativeCurve, RootSystem, SurfaceModel};
pub use volume::{kunneth_volume, vol, volume_polynomial, QuadraticVolumePolynomial};
pub use weyl::{k3_reflection_volume, reflect, weyl_group_order, weyl_orbit};
pub use zariski::{
    chamber_closure_contains, chamber_of, is_big, neg_set, null_set, on_chamber_boundary, zariski_decompose,
    ChamberDescriptor, Support, ZariskiDecomposition,
};
