//! Inconsistency-tolerant querying over prioritized knowledge bases.
//!
//! Facts are grouped into minimal conflicts, optimal repairs are enumerated and checked,
//! and the same knowledge base can be read as an argumentation framework with collective
//! attacks or compiled into a normal logic program.

pub mod argumentation;
pub mod conflict;
pub mod dllite;
pub mod error;
pub mod io;
pub mod kb;
pub mod limits;
pub mod oracle;
pub mod lp;
pub mod repairs;
pub mod semantics;

pub use conflict::ConflictHypergraph;
pub use error::{Error, Result};
pub use kb::{FactId, FactSet, KnowledgeBase, ValidatedKb};
pub use limits::Limits;
pub use repairs::{Repair, RepairKind};

#[cfg(doctest)]
mod book {
    #[doc = include_str!("../../../README.md")]
    mod readme {}
    #[doc = include_str!("../../../book/src/introduction.md")]
    mod introduction {}
    #[doc = include_str!("../../../book/src/knowledge-bases.md")]
    mod knowledge_bases {}
    #[doc = include_str!("../../../book/src/repairs.md")]
    mod repairs {}
    #[doc = include_str!("../../../book/src/semantics.md")]
    mod semantics {}
    #[doc = include_str!("../../../book/src/argumentation.md")]
    mod argumentation {}
    #[doc = include_str!("../../../book/src/logic-programs.md")]
    mod logic_programs {}
    #[doc = include_str!("../../../book/src/oracles.md")]
    mod oracles {}
    #[doc = include_str!("../../../book/src/cli.md")]
    mod cli {}
}
