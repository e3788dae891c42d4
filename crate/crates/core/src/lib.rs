//! Exact computation of automorphism groups, canonical forms and
//! Z-isomorphism tests for rational cones and polyhedra.
//!
//! The central objects are pointed rational cones given by generators or by
//! inequalities.  Everything is reduced to symmetry problems on small weighted
//! graphs (bipartite "evaluation tables" or symmetric "Gram tables"), which
//! are solved exactly by partition refinement plus backtracking.  No floating
//! point is used anywhere; group orders, matrices and certificates are exact.

pub mod cone;
pub mod engines;
pub mod error;
pub mod graph;
pub mod hilbert;
pub mod io;
pub mod linalg;
pub mod models;
pub mod normal_form;
pub mod perm;
pub mod report;

pub use cone::{Cone, ConeInput, Polyhedron};
pub use error::{Error, Result};
pub use linalg::{Int, IntMat, Rat, RatMat};
pub use perm::{Permutation, PermutationGroup};
