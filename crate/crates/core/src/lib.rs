//! Lattice cohomology of negative definite plumbed 3-manifolds and the
//! Pin(2)-equivariant Heegaard Floer data it determines.

pub mod analysis;
pub mod cubical;
pub mod error;
pub mod exact;
pub mod gf2;
pub mod lattice;
pub mod pin2;
pub mod plumbing;
pub mod profile;
pub mod quadratic;
pub mod report;
pub mod spinc;
pub mod symmetry;
pub mod union_find;

pub use error::{Error, Result};
pub use lattice::{graded_root, GradedModule, GradedRoot, RootOptions, WeightedLattice};
pub use plumbing::{build_intersection_form, IntersectionForm, PlumbingGraph, SeifertData, Vertex};
pub use profile::Profile;
pub use spinc::{CharVector, SpinCOrbit};
