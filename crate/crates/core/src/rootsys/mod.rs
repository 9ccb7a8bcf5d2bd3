//! Root systems of semisimple Lie algebras with exact rational arithmetic.

mod datum;
mod types;
mod weyl;

pub use datum::{build_root_datum, positive_roots_from_cartan, RootDatum, WeightVec, Q};
pub use types::{parse_coords, Family, SemisimpleType, SimpleType, MAX_RANK};
pub use weyl::{
    apply_word, dominant, dominant_representative, dominant_representative_vec, is_regular, is_regular_vec, orbit_size,
    reflect, stabilizer_order, weyl_orbit, ORBIT_CAP,
};
