//! The Weyl group of G2, its lattices and their Galois cohomology.

pub mod cohomology;
pub mod group;
pub mod lattice;

pub use cohomology::{h1, verify_h1_vanishing};
pub use group::{build_w0, Perm, Subgroup, W0Element, WeylElement};
pub use lattice::{lattice_catalog, verify_exact, GaloisLattice, LatticeCatalog, LatticeMap};
