//! Exact character tables and the dual action of an endomorphism.
//!
//! Tables are computed from the class algebra: common eigenvectors of the
//! class matrices are found over a prime field `F_p` with `p ≡ 1 (mod e)`,
//! where `e` is the group exponent, and lifted to exact cyclotomic values
//! through the eigenvalue multiplicities of each class representative.
//! Every table is checked against both orthogonality relations in exact
//! arithmetic before it is returned.

mod classes;
pub mod cyclotomic;
mod dual;
pub(crate) mod modp;
mod table;

pub use classes::ConjugacyData;
pub use cyclotomic::{Cyclotomic, CyclotomicField};
pub use dual::{burnside_check, dual_action, fixed_points_count, BurnsideReport, DualAction, DualImage};
pub use table::{is_integer_value, CharacterTable};

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum CharTableError {
    /// The modular computation did not lift to a consistent table. This
    /// cannot happen for a valid group and indicates a defect.
    #[error("character table lift failed: {0}")]
    LiftFailure(String),
    #[error("group order exceeds the character table cap of {limit}")]
    OrderLimitExceeded { limit: usize },
}
