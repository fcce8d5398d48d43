//! Structure-preserving circuit transformations.

mod compose;
mod monotone;
mod simplify;

pub use compose::{compose, Composed};
pub use monotone::{monotonize, negate_doubled, negate_root, LiteralMap, LiteralPair, Monotonized, TopGate};
pub use simplify::simplify;
