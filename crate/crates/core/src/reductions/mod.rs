//! Constructions behind the hardness result and the discrepancy bound.
//!
//! * [`expansion`] turns a weighted game with a restricted facility set into
//!   a standard game with the same equilibria.
//! * [`three_partition`] compiles a 3-Partition instance into a game that has
//!   an equilibrium exactly when the instance is solvable.
//! * [`gadget`] holds the 9-vertex two-player game without equilibria used by
//!   that compiler, together with its search and verification.
//! * [`family`] builds instances with two equilibria of very different cost.

pub mod expansion;
pub mod family;
pub mod gadget;
pub mod three_partition;

pub use expansion::{expand_generalized, Expansion};
pub use family::{discrepancy_family, FamilyInstance};
pub use gadget::{gadget_search, verify_gadget, Certificate, Gadget, GadgetSearch, GadgetVerdict};
pub use three_partition::{
    build_3partition_game, reduction_roundtrip, three_partition_oracle, ConstantChecks,
    ReductionConstants, ReductionGame, RoundtripReport, ThreePartitionInstance,
};
