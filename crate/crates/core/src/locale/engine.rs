//! Engine selection: exact bitset frames or lazy budgeted entailment.

use super::{Frame, Join, Lazy, Site};
use crate::bitset::GenSet;
use crate::error::{Error, Result};
use crate::order::DEFAULT_MAX_GENERATORS;
use crate::report::Verdict;
use serde::{Deserialize, Serialize};
use std::str::FromStr;
use std::sync::Arc;

pub const DEFAULT_BUDGET: u64 = 1_000_000;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum EngineChoice {
    Full,
    Lazy,
    Auto,
}

impl FromStr for EngineChoice {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        match s {
            "full" => Ok(EngineChoice::Full),
            "lazy" => Ok(EngineChoice::Lazy),
            "auto" => Ok(EngineChoice::Auto),
            other => Err(Error::input("--engine", format!("unknown engine `{other}`"))),
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct EngineConfig {
    pub choice: EngineChoice,
    /// Node expansions allowed per lazy query.
    pub budget: u64,
    /// Largest generator count the full engine materializes.
    pub max_generators: usize,
}

impl Default for EngineConfig {
    fn default() -> Self {
        EngineConfig { choice: EngineChoice::Auto, budget: DEFAULT_BUDGET, max_generators: DEFAULT_MAX_GENERATORS }
    }
}

impl EngineConfig {
    pub fn full() -> Self {
        EngineConfig { choice: EngineChoice::Full, ..Default::default() }
    }

    pub fn lazy() -> Self {
        EngineConfig { choice: EngineChoice::Lazy, ..Default::default() }
    }
}

/// Answers entailment queries on one site.
#[derive(Clone, Debug)]
pub enum Prover {
    Full(Arc<Frame>),
    Lazy(Lazy),
}

impl Prover {
    pub fn new(site: &Site, cfg: &EngineConfig) -> Result<Self> {
        let k = site.generator_count();
        match cfg.choice {
            EngineChoice::Full => Ok(Prover::Full(Arc::new(Frame::new(site, cfg.max_generators)?))),
            EngineChoice::Lazy => Ok(Prover::Lazy(Lazy::new(site, cfg.budget))),
            EngineChoice::Auto if k <= cfg.max_generators => {
                Ok(Prover::Full(Arc::new(Frame::new(site, cfg.max_generators)?)))
            }
            EngineChoice::Auto => Ok(Prover::Lazy(Lazy::new(site, cfg.budget))),
        }
    }

    pub fn site(&self) -> &Site {
        match self {
            Prover::Full(f) => f.site(),
            Prover::Lazy(l) => l.site(),
        }
    }

    pub fn describe(&self) -> String {
        match self {
            Prover::Full(f) => format!("full ({} lattice elements)", f.lattice().len()),
            Prover::Lazy(l) => format!("lazy (budget {} expansions per query)", l.budget()),
        }
    }

    pub fn is_full(&self) -> bool {
        matches!(self, Prover::Full(_))
    }

    pub fn entails(&self, term: &GenSet, family: &[GenSet]) -> Verdict {
        match self {
            Prover::Full(f) => f.entails(term, family).into(),
            Prover::Lazy(l) => l.entails(term, family),
        }
    }

    /// `Pass` when the meet is zero in the frame.
    pub fn is_zero(&self, term: &GenSet) -> Verdict {
        self.entails(term, &[])
    }

    pub fn leq(&self, a: &Join, b: &Join) -> Verdict {
        let mut v = Verdict::Pass;
        for t in &a.terms {
            v = v.and(self.entails(t, &b.terms));
            if v == Verdict::Fail {
                break;
            }
        }
        v
    }

    pub fn equal(&self, a: &Join, b: &Join) -> Verdict {
        let v = self.leq(a, b);
        if v == Verdict::Fail {
            return v;
        }
        v.and(self.leq(b, a))
    }
}
