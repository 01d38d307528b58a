//! The integral Chow ring of the complete flag variety of an `n`-space and
//! its partial flag subrings.

mod auto;
mod chern;
mod ring;
mod subring;

pub use auto::SignedPermutation;
pub use chern::{flag_type, ChernKind};
pub use ring::{FlagClass, FlagRing};
pub use subring::{subring_graded_basis, FlagSubring, InvariantPiece};
