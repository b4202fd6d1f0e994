//! Finite groups, subgroup lattices and monomial character theory.

pub mod characters;
pub mod group;
pub mod product;

pub use characters::{CharacterTable, LinearChar, MonomialCertificate};
pub use group::{bit, members, size, FiniteGroup, GroupSpec, Subset};
pub use product::{detect_direct_product, subgroup_h_r, DirectProduct};
