//! DL-Lite reasoning: TBox closure, conflicts, consistency and query entailment.

mod closure;
mod pattern;
mod query;
mod saturation;

pub use closure::{close_tbox, ClosedTBox};
pub use pattern::{conflicts, is_consistent, orderings, Pattern, PatternAtom};
pub use query::{default_depth, entails_bcq, Bcq, Chase, ConjunctiveQuery, QueryAtom, Term};
pub use saturation::Saturator;
