//! Scale guards for the exponential routines.

use crate::error::{CoarseError, Result};

/// Environment variable that overrides every guard at once.
pub const MAX_N_ENV: &str = "COARSEKIT_MAX_N";

/// Vertex-count ceilings for the exponential searches. Exceeding one is a
/// hard error, never a silent truncation.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct Limits {
    /// Exact treewidth (2^n dynamic programme).
    pub treewidth: usize,
    /// Indicator separation number (2^n weightings times separator subsets).
    pub separation: usize,
    /// Indicator sweep for `(k, r)`-balanced separators.
    pub admits: usize,
}

impl Default for Limits {
    fn default() -> Self {
        Limits {
            treewidth: 20,
            separation: 12,
            admits: 16,
        }
    }
}

/// Ceilings imposed by the bitmask representations, whatever the overrides.
pub(crate) const TREEWIDTH_HARD_MAX: usize = 28;
pub(crate) const SWEEP_HARD_MAX: usize = 40;

impl Limits {
    pub fn uniform(n: usize) -> Self {
        Limits {
            treewidth: n,
            separation: n,
            admits: n,
        }
    }

    /// Defaults, or a uniform limit from `COARSEKIT_MAX_N` when set.
    pub fn from_env() -> Result<Self> {
        match std::env::var(MAX_N_ENV) {
            Ok(v) => v
                .trim()
                .parse()
                .map(Limits::uniform)
                .map_err(|_| CoarseError::InvalidInput(format!("{MAX_N_ENV}={v:?} is not a vertex count"))),
            Err(_) => Ok(Limits::default()),
        }
    }
}

pub(crate) fn guard(operation: &'static str, size: usize, limit: usize) -> Result<()> {
    if size > limit {
        Err(CoarseError::ScaleGuard { operation, size, limit })
    } else {
        Ok(())
    }
}
