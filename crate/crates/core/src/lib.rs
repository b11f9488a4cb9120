//! Combinatorics of p-regular partitions on the abacus: p-edges and the
//! Mullineux map, the `H_ε` bead moves, completely and almost completely
//! splittable partitions, the Ext¹ bound recursion, branching sums, and a
//! decomposition-matrix oracle for checking branching statements.

pub mod abacus;
pub mod branching;
pub mod decomp;
pub mod error;
pub mod ext_bounds;
pub mod families;
pub mod hooks;
pub mod mullineux;
pub mod partition;
pub mod suites;

pub use abacus::{node_classification, window, Abacus, BeadStatus, NodeSets, SpaceStatus};
pub use branching::{Basis, Conjecture, Direction, GrothendieckSum, Provenance, SimpleBranch};
pub use decomp::{DecompMatrix, MatrixSet, Statement};
pub use error::{Error, Result};
pub use mullineux::{mullineux, mullineux_symbol, partition_from_symbol, symbol_conjugate, MullineuxSymbol};
pub use partition::{epsilon_n, partitions_of, Node, Partition, Residue, ResidueContent};
