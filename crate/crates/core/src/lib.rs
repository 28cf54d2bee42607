//! Combinatorial toolkit for finite simplicial complexes: balanced and neighborly
//! complexes, flag face vectors, exact homology, sphere/ball/manifold recognition,
//! ear decompositions, shellings, automorphism groups and isomorph-free
//! enumeration of small balanced spheres.

pub mod cache;
pub mod complex;
pub mod construct;
pub mod decomposition;
pub mod enumerate;
pub mod error;
pub mod homology;
pub mod io;
pub mod report;
pub mod suite;
pub mod symmetry;
pub mod verify;

pub use complex::{ColorSet, Coloring, Face, FaceVector, FlagVector, SimplicialComplex, VertexId};
pub use error::{Error, Result};
pub use homology::{homology, Coefficients, HomologyProfile};
