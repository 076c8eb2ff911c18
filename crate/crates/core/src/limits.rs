use serde::{Deserialize, Serialize};

use crate::{Error, Result};

/// Ceilings that keep exhaustive searches bounded.
///
/// Every enumeration in the crate checks its size parameters against one of
/// these before doing any work, so a typo in a scenario file fails fast
/// instead of running for hours.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(default, deny_unknown_fields)]
pub struct Limits {
    /// Largest group rank accepted by the verifiers and the CLI.
    pub max_rank: u32,
    /// Largest rank for which all sections are listed (there are `2^(2^(k-1))`).
    pub max_section_rank: u32,
    /// Largest total dimension of a product of elliptic curves.
    pub max_dimension: u32,
    /// Largest exponent bound accepted by the generalised-triple verifier.
    pub max_exponent_bound: u32,
    /// Degree used by relation searches when none is given.
    pub default_relation_degree: u32,
    /// Largest degree accepted by relation searches.
    pub max_relation_degree: u32,
}

impl Default for Limits {
    fn default() -> Self {
        Limits {
            max_rank: 6,
            max_section_rank: 5,
            max_dimension: 16,
            max_exponent_bound: 64,
            default_relation_degree: 8,
            max_relation_degree: 12,
        }
    }
}

impl Limits {
    pub(crate) fn check(what: &'static str, value: u64, ceiling: u64) -> Result<()> {
        if value > ceiling {
            Err(Error::LimitExceeded {
                what,
                value,
                ceiling,
            })
        } else {
            Ok(())
        }
    }
}
