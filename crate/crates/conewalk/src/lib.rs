//! Exact-arithmetic machinery for hyperbolic lattices: reflections and
//! Weyl chamber walks, exceptional chambers, numerical Zariski
//! decomposition, bounded wall-class enumeration, and Dirichlet
//! fundamental domains.
//!
//! All arithmetic is over arbitrary-precision integers and rationals; no
//! floating point appears anywhere. Every value is immutable after
//! construction and every operation is a pure function, so everything here
//! is safe to share across threads.

pub mod cones;
pub mod corpus;
pub mod domains;
pub mod error;
pub mod fold;
pub mod hunt;
pub mod io;
pub mod lattice;
pub mod mat;
pub mod roots;
pub mod zariski;

pub use error::{Error, Result};
pub use lattice::{Lattice, Sublattice};
pub use mat::{Q, QMat, QVec, Z, ZMat, ZVec};
