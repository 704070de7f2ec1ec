use std::fmt;
use std::str::FromStr;

use crate::error::{Error, Result};
use crate::norms::HJ_DEFAULT_LIMIT;
use crate::numbers::{factor_odd_squarefree, FactoredModulus};
use crate::sequences::{
    completion_all_ones, completion_constant, completion_jacobi_product, completion_two_prime_for,
    Rotation, TernarySequence, MAX_ENUMERATION_PSI,
};

/// Which completions a sweep evaluates.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum CompletionSpec {
    /// `+1` on every free index (`J + 1` for prime `n`).
    PlusOne,
    /// `-1` on every free index (`J - 1` for prime `n`).
    MinusOne,
    AllOnes,
    JacobiProduct,
    TwoPrime,
    Random {
        seed: u64,
        count: usize,
    },
    Exhaustive,
}

impl CompletionSpec {
    pub fn label(&self) -> &'static str {
        match self {
            CompletionSpec::PlusOne => "plus_one",
            CompletionSpec::MinusOne => "minus_one",
            CompletionSpec::AllOnes => "all_ones",
            CompletionSpec::JacobiProduct => "jacobi_product",
            CompletionSpec::TwoPrime => "two_prime",
            CompletionSpec::Random { .. } => "random",
            CompletionSpec::Exhaustive => "exhaustive",
        }
    }

    /// The single completion this spec names, if it names exactly one.
    pub fn build(&self, m: &FactoredModulus) -> Result<Option<TernarySequence>> {
        Ok(match self {
            CompletionSpec::PlusOne => Some(completion_constant(m, 1)),
            CompletionSpec::MinusOne => Some(completion_constant(m, -1)),
            CompletionSpec::AllOnes => Some(completion_all_ones(m)),
            CompletionSpec::JacobiProduct => Some(completion_jacobi_product(m)),
            CompletionSpec::TwoPrime => Some(completion_two_prime_for(m)?),
            CompletionSpec::Random { .. } | CompletionSpec::Exhaustive => None,
        })
    }
}

impl fmt::Display for CompletionSpec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            CompletionSpec::Random { seed, count } => write!(f, "random:{seed}:{count}"),
            other => f.write_str(other.label()),
        }
    }
}

impl FromStr for CompletionSpec {
    type Err = Error;

    /// Named completions, plus `random:SEED:COUNT`. A bare `random` uses
    /// seed 0 and a single sample.
    fn from_str(s: &str) -> Result<Self> {
        let s = s.trim();
        Ok(match s {
            "plus_one" => CompletionSpec::PlusOne,
            "minus_one" => CompletionSpec::MinusOne,
            "all_ones" => CompletionSpec::AllOnes,
            "jacobi_product" => CompletionSpec::JacobiProduct,
            "two_prime" => CompletionSpec::TwoPrime,
            "exhaustive" => CompletionSpec::Exhaustive,
            "random" => CompletionSpec::Random { seed: 0, count: 1 },
            _ => {
                let parts: Vec<&str> = s.split(':').collect();
                match parts.as_slice() {
                    ["random", seed, count] => CompletionSpec::Random {
                        seed: seed
                            .parse()
                            .map_err(|e| Error::Parse(format!("bad seed in `{s}`: {e}")))?,
                        count: count
                            .parse()
                            .map_err(|e| Error::Parse(format!("bad count in `{s}`: {e}")))?,
                    },
                    _ => return Err(Error::Parse(format!("unknown completion `{s}`"))),
                }
            }
        })
    }
}

/// The rotation grid `{k/64 : k = -31..=32}`, covering `(-1/2, 1/2]`.
pub fn default_rotation_grid() -> Vec<Rotation> {
    (-31..=32)
        .map(|k| Rotation::new(k, 64).expect("nonzero denominator"))
        .collect()
}

/// Parameters of a sweep over `(n, r)` cells.
#[derive(Debug, Clone)]
pub struct SweepConfig {
    pub moduli: Vec<FactoredModulus>,
    pub rotations: Vec<Rotation>,
    pub completions: Vec<CompletionSpec>,
    /// Master seed for sampled completions when no `random:SEED:COUNT` is given.
    pub master_seed: u64,
    /// Sample count for sampled modes when no `random:SEED:COUNT` is given.
    pub samples: usize,
    /// Worker threads; 0 means one per core.
    pub workers: usize,
    /// Emit one row per distinct `L4` value in exhaustive runs.
    pub histogram: bool,
    /// Relative tolerance between the exact and DFT `L4` paths.
    pub dft_tolerance: f64,
    /// Length guard for the decomposition cross-check.
    pub hj_limit: usize,
}

impl SweepConfig {
    pub fn new(moduli: Vec<FactoredModulus>, rotations: Vec<Rotation>) -> Self {
        SweepConfig {
            moduli,
            rotations,
            completions: Vec::new(),
            master_seed: 0,
            samples: 50,
            workers: 0,
            histogram: false,
            dft_tolerance: 1e-9,
            hj_limit: HJ_DEFAULT_LIMIT,
        }
    }

    pub fn from_n_list(n_list: &[u64], rotations: Vec<Rotation>) -> Result<Self> {
        let moduli = n_list
            .iter()
            .map(|&n| factor_odd_squarefree(n))
            .collect::<Result<Vec<_>>>()?;
        Ok(Self::new(moduli, rotations))
    }

    pub fn with_completions(mut self, completions: Vec<CompletionSpec>) -> Self {
        self.completions = completions;
        self
    }

    pub fn has(&self, label: &str) -> bool {
        self.completions.iter().any(|c| c.label() == label)
    }

    /// The random-sampling parameters: an explicit `random:SEED:COUNT`
    /// wins over the master seed and sample count.
    pub fn random_params(&self) -> (u64, usize) {
        self.completions
            .iter()
            .find_map(|c| match *c {
                CompletionSpec::Random { seed, count } => Some((seed, count)),
                _ => None,
            })
            .unwrap_or((self.master_seed, self.samples))
    }

    pub fn validate(&self) -> Result<()> {
        if self.moduli.is_empty() {
            return Err(Error::Config("empty n list".into()));
        }
        if self.rotations.is_empty() {
            return Err(Error::Config("empty rotation grid".into()));
        }
        for m in &self.moduli {
            if self.has("exhaustive") && m.psi() > MAX_ENUMERATION_PSI {
                return Err(Error::Config(format!(
                    "exhaustive completions need psi(n) <= {MAX_ENUMERATION_PSI}, n = {} has psi = {}",
                    m.n(),
                    m.psi()
                )));
            }
            if self.has("two_prime") && m.omega() != 2 {
                return Err(Error::Config(format!(
                    "two_prime completion needs omega(n) = 2, n = {m}"
                )));
            }
        }
        Ok(())
    }
}
