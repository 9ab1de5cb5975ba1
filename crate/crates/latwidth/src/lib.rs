//! Exact-arithmetic lattice geometry for rational polytopes.
//!
//! The library computes lattice widths and complete width-direction sets of
//! rational polytopes and polyhedra, entirely over arbitrary-precision
//! rational arithmetic, and ships instance-wise verifiers for the classical
//! lattice-point theorems that govern those direction sets: Minkowski's
//! `3^d` bound for centrally symmetric bodies whose only interior lattice
//! point is the origin, its equality case (the standard lattice cube), the
//! induced packing of `3K` by translates, and the `3^d - 1` bound on the
//! number of lattice width directions with the regular cross-polytope as
//! the unique equality case.
//!
//! No floating point is used anywhere in a computation whose result carries
//! a contract; every reported width, direction set, and verifier verdict is
//! exact.

pub mod cli;
pub mod corpus;
pub mod error;
pub mod io;
pub mod lattice;
pub mod linalg;
pub mod lp;
pub mod oracle;
pub mod polytope;
pub mod verify;
pub mod width;

pub(crate) mod ratmat;

pub use error::{Error, Result};
pub use linalg::{Int, IntMat, IntVec, Rat, RatVec};
pub use polytope::{Facet, HPolyhedron, Instance, SimplexWitness, VPolytope};
pub use width::{DirectionSpace, DualBodyReport, WidthCertificate};
