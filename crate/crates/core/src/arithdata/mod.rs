//! Extension fixtures with explicit local data, the sets S and T, and twisted roots of unity.

pub mod annihilator;
pub mod fixture;
pub mod generators;
pub mod places;

pub use annihilator::{
    mu_tate_annihilators, twisted_order, twisted_roots_from_artin, TateAnnihilator,
};
pub use fixture::{
    ArtinMap, CyclicAction, Fixture, FixtureJson, Place, PlaceSets, Source, SourceData, SourceValue,
};
pub use generators::{delta_t, generate_a_s, GeneratorSet, DEFAULT_BOUND};
pub use places::{
    check_admissible, check_hyp, factor_scalar, linear_local_factor, local_factor,
    local_factor_element, local_factor_rep, translate_place, twisted_torsion_killed, FactorKind,
    SetVerdict,
};

use sha2::{Digest, Sha256};

impl Fixture {
    /// sha256 of the compact JSON re-serialization of the parsed fixture.
    pub fn digest(&self) -> String {
        let text = serde_json::to_string(&self.raw).expect("fixture serializes");
        Sha256::digest(text.as_bytes())
            .iter()
            .map(|b| format!("{b:02x}"))
            .collect()
    }
}
