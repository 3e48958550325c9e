//! Valid-subset selection shared by weight sheets and ballots.

use std::fmt;
use std::str::FromStr;

use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// Anything submitted by a single consultant.
pub trait Submission {
    fn consultant_id(&self) -> &str;
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum SelectionMode {
    All,
    RandomK,
}

/// Which of the submitted sheets or ballots count as valid feedback.
///
/// `RandomK` draws `k` submissions without replacement from a ChaCha8 stream
/// seeded with `seed`, so the same inputs and seed always give the same subset.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct ValidSubsetPolicy {
    pub mode: SelectionMode,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub k: Option<usize>,
    #[serde(default)]
    pub seed: u64,
}

impl Default for ValidSubsetPolicy {
    fn default() -> Self {
        Self::all()
    }
}

impl ValidSubsetPolicy {
    pub fn all() -> Self {
        Self {
            mode: SelectionMode::All,
            k: None,
            seed: 0,
        }
    }

    pub fn random_k(k: usize, seed: u64) -> Self {
        Self {
            mode: SelectionMode::RandomK,
            k: Some(k),
            seed,
        }
    }

    pub fn with_seed(mut self, seed: u64) -> Self {
        self.seed = seed;
        self
    }

    /// Indices (ascending) of the submissions this policy keeps out of `available`.
    pub fn select_indices(&self, available: usize) -> Result<Vec<usize>> {
        match self.mode {
            SelectionMode::All => Ok((0..available).collect()),
            SelectionMode::RandomK => {
                let k = self.k.unwrap_or(0);
                if k == 0 || k > available {
                    return Err(Error::NotEnoughSubmissions {
                        requested: k,
                        available,
                    });
                }
                let mut rng = ChaCha8Rng::seed_from_u64(self.seed);
                let mut picked = rand::seq::index::sample(&mut rng, available, k).into_vec();
                picked.sort_unstable();
                Ok(picked)
            }
        }
    }
}

impl fmt::Display for ValidSubsetPolicy {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self.mode {
            SelectionMode::All => f.write_str("all"),
            SelectionMode::RandomK => write!(f, "random:{}", self.k.unwrap_or(0)),
        }
    }
}

/// Parses `all` or `random:K`. The seed is set separately.
impl FromStr for ValidSubsetPolicy {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        let s = s.trim();
        if s.eq_ignore_ascii_case("all") {
            return Ok(Self::all());
        }
        let k = s
            .strip_prefix("random:")
            .or_else(|| s.strip_prefix("random-k:"))
            .ok_or_else(|| format!("expected `all` or `random:K`, got `{s}`"))?;
        let k: usize = k
            .parse()
            .map_err(|_| format!("`{k}` is not a positive integer"))?;
        if k == 0 {
            return Err("k must be positive".into());
        }
        Ok(Self::random_k(k, 0))
    }
}

/// Applies `policy` to `submissions`. The output keeps input order.
pub fn select_valid<T: Clone>(submissions: &[T], policy: &ValidSubsetPolicy) -> Result<Vec<T>> {
    Ok(policy
        .select_indices(submissions.len())?
        .into_iter()
        .map(|i| submissions[i].clone())
        .collect())
}
