//! Desk-scale guards for the exponential procedures.

use crate::error::{Error, Result};

/// Environment variable that overrides the default size guards.
pub const MAX_SIZE_ENV: &str = "ORBITS_MAX_SIZE";

/// Size limits enforced before exhaustive enumeration.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct Limits {
    /// Largest ABox for which repairs are enumerated.
    pub max_facts: usize,
    /// Largest framework for which extensions are enumerated.
    pub max_arguments: usize,
    /// Largest number of ground atoms the grounder may produce.
    pub max_ground_atoms: usize,
}

impl Limits {
    pub const DEFAULT_MAX_FACTS: usize = 24;
    pub const DEFAULT_MAX_ARGUMENTS: usize = 22;
    pub const DEFAULT_MAX_GROUND_ATOMS: usize = 4_000_000;

    /// Limits that never trigger.
    pub fn unbounded() -> Self {
        Limits { max_facts: usize::MAX, max_arguments: usize::MAX, max_ground_atoms: usize::MAX }
    }

    /// Built-in limits, ignoring the environment.
    pub fn builtin() -> Self {
        Limits {
            max_facts: Self::DEFAULT_MAX_FACTS,
            max_arguments: Self::DEFAULT_MAX_ARGUMENTS,
            max_ground_atoms: Self::DEFAULT_MAX_GROUND_ATOMS,
        }
    }

    pub(crate) fn check_facts(&self, size: usize) -> Result<()> {
        if size > self.max_facts {
            return Err(Error::TooLarge { what: "ABox", size, limit: self.max_facts });
        }
        Ok(())
    }

    pub(crate) fn check_arguments(&self, size: usize) -> Result<()> {
        if size > self.max_arguments {
            return Err(Error::TooLarge { what: "framework", size, limit: self.max_arguments });
        }
        Ok(())
    }
}

impl Default for Limits {
    /// Built-in limits, with `ORBITS_MAX_SIZE` replacing both size guards when set.
    fn default() -> Self {
        let mut limits = Limits::builtin();
        if let Some(n) = std::env::var(MAX_SIZE_ENV).ok().and_then(|v| v.trim().parse().ok()) {
            limits.max_facts = n;
            limits.max_arguments = n;
        }
        limits
    }
}
