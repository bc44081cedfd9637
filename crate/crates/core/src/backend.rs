//! Uniform entry point over the computation routes.

use std::fmt;
use std::str::FromStr;

use crate::error::{Error, Result};
use crate::model::{ComponentChain, StateDistribution, SystemSpec};
use crate::oracle::{brute_force_distribution, monte_carlo, McEstimate};
use crate::pgf::{general_distribution, increasing_distribution};
use crate::subset::subset_distribution;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Method {
    /// Bivariate generating function; valid for every system.
    Pgf,
    /// Univariate generating functions; needs `k1 <= k2`.
    PgfUni,
    Subset,
    Brute,
    MonteCarlo { samples: u64, seed: u64 },
}

impl Method {
    pub const DEFAULT_SAMPLES: u64 = 1_000_000;
    pub const DEFAULT_SEED: u64 = 0x5eed;

    pub fn name(&self) -> &'static str {
        match self {
            Method::Pgf => "pgf",
            Method::PgfUni => "pgf-uni",
            Method::Subset => "subset",
            Method::Brute => "brute",
            Method::MonteCarlo { .. } => "mc",
        }
    }
}

impl fmt::Display for Method {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for Method {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        Ok(match s {
            "pgf" => Method::Pgf,
            "pgf-uni" => Method::PgfUni,
            "subset" => Method::Subset,
            "brute" => Method::Brute,
            "mc" => Method::MonteCarlo {
                samples: Method::DEFAULT_SAMPLES,
                seed: Method::DEFAULT_SEED,
            },
            other => return Err(Error::UnknownMethod(other.to_string())),
        })
    }
}

/// Result of one route; Monte Carlo keeps its standard errors.
#[derive(Debug, Clone, PartialEq)]
pub enum Outcome {
    Exact(StateDistribution),
    Estimate(McEstimate),
}

impl Outcome {
    pub fn distribution(&self) -> StateDistribution {
        match self {
            Outcome::Exact(d) => *d,
            Outcome::Estimate(e) => e.distribution(),
        }
    }
}

pub fn compute(chain: &ComponentChain, spec: &SystemSpec, method: Method) -> Result<Outcome> {
    let exact = match method {
        Method::Pgf => general_distribution(chain, spec)?,
        Method::PgfUni => increasing_distribution(chain, spec)?,
        Method::Subset => subset_distribution(chain, spec)?,
        Method::Brute => brute_force_distribution(chain, spec)?,
        Method::MonteCarlo { samples, seed } => {
            return Ok(Outcome::Estimate(monte_carlo(chain, spec, samples, seed)?))
        }
    };
    Ok(Outcome::Exact(exact))
}
