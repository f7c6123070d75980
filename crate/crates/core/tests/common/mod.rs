#![allow(dead_code)]

use std::sync::OnceLock;

use cube2_core::cube::{CanonicalState, STATE_COUNT};
use cube2_core::tables::TableSet;
use rand::Rng;

pub fn tables() -> &'static TableSet {
    static TABLES: OnceLock<TableSet> = OnceLock::new();
    TABLES.get_or_init(TableSet::build)
}

pub fn random_canonical<R: Rng>(rng: &mut R) -> CanonicalState {
    CanonicalState::unrank(rng.gen_range(0..STATE_COUNT as u32)).unwrap()
}
