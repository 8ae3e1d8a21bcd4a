//! Exact cyclotomic arithmetic and conductor certification for the
//! character values of `GL_2(q)`, `SL_2(q)` and the Suzuki groups.
//!
//! The crate is organised bottom-up:
//!
//! * [`cyclonum`]: the ring `Z[zeta_N]`, Galois action, conductors and
//!   fields generated by finite sets.
//! * [`vansum`]: shortest representations as sums of roots of unity and
//!   minimal vanishing sums.
//! * [`ffield`]: finite fields and quadratic Gauss sums.
//! * [`chartab`]: character families and their reduced value sets.
//! * [`verify`]: single-value conductor checks, field generation and the
//!   case classifications that predict a conductor-attaining value.
//! * [`expr`]: the small expression language used by the CLI and reports.

pub mod arith;
pub mod chartab;
pub mod cyclonum;
pub mod error;
pub mod expr;
pub mod ffield;
pub mod props;
pub mod vansum;
pub mod verify;

pub use chartab::{CharacterId, Family, GroupKind, ReducedValueSet, ValueEntry, Witness};
pub use cyclonum::{CyclotomicInteger, FieldHandle, RootOfUnity};
pub use error::{Error, Result};
pub use vansum::{MinRepResult, VanishingClass};
pub use verify::{CaseLabel, SubsetSize, VerificationReport};
