//! Exact arithmetic in cyclotomic rings `Z[zeta_N]`.
//!
//! Elements are stored in a canonical Z-basis (see [`CyclotomicInteger`]),
//! so equality is structural. All values are immutable; every operation is
//! a pure function and the types are `Send + Sync`.

mod galois;
mod integer;
mod root;

pub use galois::{
    conductor, conductor_by_oracle, conductor_index, conductor_of_set, cyclotomic_field,
    field_contains, field_equal, field_of_set, fixed_field, quadratic_field,
    subfield_membership_oracle, FieldHandle,
};
pub use integer::CyclotomicInteger;
pub use root::RootOfUnity;
