//! The group algebra, its center, and the component decomposition ζ(ℚG) ≅ ⊕ ℚ(χ).

pub mod central;
pub mod group_ring;

pub use central::{CentralElement, MaxOrderMode, MembershipWitness, MinusCentralElement};
pub use group_ring::GroupRingElement;
