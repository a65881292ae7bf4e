//! Finite groups given by Cayley tables or permutations, their conjugacy
//! classes of prime-power elements, and representation rings with their
//! augmentation-ideal towers.

mod classes;
mod finite;
mod repring;

pub use classes::{ConPClass, ConjugacyClass};
pub use finite::{FiniteGroup, GroupSpec, DEFAULT_ORDER_CAP};
pub use repring::{augmentation_tower, completion_rank, AugmentedRing, CompletionRank, CyclicRepRing, RepRingTable};

pub(crate) use classes::is_power_of;
