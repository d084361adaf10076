//! Brute-force reference implementations, random instance generators and reduction gadgets.
//!
//! Nothing here calls the main-path algorithms it is meant to check.

mod brute;
mod gadget;
mod random;
mod verify;

pub use brute::{brute_conflicts, brute_extensions, brute_optimal, brute_repairs, ORACLE_MAX_ARGUMENTS, ORACLE_MAX_FACTS};
pub use gadget::{cnf_satisfiable, gadget_kb_from_cnf, Cnf};
pub use random::{
    hypergraph_to_ontology, random_kb, random_preorder, random_setaf, random_strongly_symmetric, random_symmetric_paf,
    random_transitive_preference, KbParams, PriorityStyle,
};
pub use verify::{corpus, verify, VerifyReport};
