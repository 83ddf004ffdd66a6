use crate::{Error, Result};

/// Size limits for everything that is enumerated exhaustively.
///
/// Every limit is checked up front where the cost is predictable, and
/// counted during the search where it is not. Exceeding one yields
/// [`Error::GuardExceeded`]; nothing is ever silently truncated.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct Guards {
    /// Largest ring or module whose tables are materialized.
    pub max_table_order: usize,
    /// Largest ring or module whose ideals, submodules or automorphisms are
    /// enumerated in full, and the largest table ring validated on input.
    pub max_enum_order: usize,
    /// Largest field order.
    pub max_field_order: usize,
    /// Largest materialized code.
    pub max_code_size: usize,
    /// Largest ambient space `A^n` enumerated by the verifiers.
    pub max_power_order: usize,
    /// Node budget for backtracking searches.
    pub max_search_nodes: u64,
}

impl Default for Guards {
    fn default() -> Self {
        Guards {
            max_table_order: 4096,
            max_enum_order: 64,
            max_field_order: 1024,
            max_code_size: 4096,
            max_power_order: 512,
            max_search_nodes: 50_000_000,
        }
    }
}

impl Guards {
    pub(crate) fn check_table(&self, what: &'static str, order: u128) -> Result<()> {
        check(what, order, self.max_table_order as u128)
    }

    pub(crate) fn check_enum(&self, what: &'static str, order: usize) -> Result<()> {
        check(what, order as u128, self.max_enum_order as u128)
    }
}

pub(crate) fn check(what: &'static str, needed: u128, limit: u128) -> Result<()> {
    if needed > limit {
        Err(Error::guard(what, needed, limit))
    } else {
        Ok(())
    }
}

/// Counts search nodes against [`Guards::max_search_nodes`].
#[derive(Debug)]
pub(crate) struct Budget {
    used: u64,
    limit: u64,
    what: &'static str,
}

impl Budget {
    pub(crate) fn new(guards: &Guards, what: &'static str) -> Self {
        Budget {
            used: 0,
            limit: guards.max_search_nodes,
            what,
        }
    }

    pub(crate) fn tick(&mut self) -> Result<()> {
        self.used += 1;
        if self.used > self.limit {
            Err(Error::guard(self.what, self.used as u128, self.limit as u128))
        } else {
            Ok(())
        }
    }
}
