//! Pluggable split criteria.
//!
//! Each induction variant implements [`SplitStrategy`] and is looked up
//! by name in a [`StrategyRegistry`], so the method is chosen at
//! runtime (for example from a CLI flag) without the tree builder
//! knowing which criteria exist.

use serde::{Deserialize, Serialize};

use crate::crisp_id3::CrispId3;
use crate::error::{Error, Result};
use crate::fuzzy_id3::{CertaintyKind, FuzzyId3, PrototypeScope};
use crate::tree::NodeSet;

/// A split criterion: given a node's training instances and the not yet
/// used features, pick the feature to branch on.
pub trait SplitStrategy: Send + Sync {
    /// Registry name of this strategy.
    fn name(&self) -> &'static str;

    /// Chooses one of `candidates` for the node. Both the node set and
    /// the candidate list must be non-empty.
    fn select_attribute(&self, node: &NodeSet<'_>, candidates: &[usize]) -> Selection;
}

/// Outcome of one attribute selection, including the per-candidate
/// scores for diagnostics.
#[derive(Debug, Clone, PartialEq)]
pub struct Selection {
    pub feature: usize,
    pub scores: Vec<CandidateScore>,
    /// Class prototypes consulted by the criterion, if it uses any.
    pub prototypes: Option<Vec<PrototypeReport>>,
}

/// Score assigned to one candidate feature. Lower-is-better or
/// higher-is-better depends on the strategy; `feature` in `Selection`
/// is authoritative.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct CandidateScore {
    pub feature: usize,
    pub score: f64,
}

/// A class-average membership vector as reported in diagnostics.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct PrototypeReport {
    pub class: usize,
    pub average: Vec<f64>,
}

/// Knobs shared by strategy constructors.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub struct StrategyOptions {
    pub prototype_scope: PrototypeScope,
    pub certainty: CertaintyKind,
}

/// Builds a boxed strategy from shared options.
pub type StrategyFactory = fn(&StrategyOptions) -> Box<dyn SplitStrategy>;

/// Name-keyed collection of strategy factories.
pub struct StrategyRegistry {
    entries: Vec<(&'static str, StrategyFactory)>,
}

impl StrategyRegistry {
    /// A registry with no strategies.
    pub fn empty() -> Self {
        Self {
            entries: Vec::new(),
        }
    }

    /// A registry holding the two built-in criteria, `id3` and `fuzzy`.
    pub fn with_builtins() -> Self {
        let mut r = Self::empty();
        r.register("id3", |_| Box::new(CrispId3));
        r.register("fuzzy", |opts| {
            Box::new(FuzzyId3::new(opts.prototype_scope, opts.certainty))
        });
        r
    }

    /// Adds a factory, replacing any existing entry of the same name.
    pub fn register(&mut self, name: &'static str, factory: StrategyFactory) {
        if let Some(entry) = self.entries.iter_mut().find(|(n, _)| *n == name) {
            entry.1 = factory;
        } else {
            self.entries.push((name, factory));
        }
    }

    /// Instantiates the named strategy.
    pub fn create(&self, name: &str, options: &StrategyOptions) -> Result<Box<dyn SplitStrategy>> {
        self.entries
            .iter()
            .find(|(n, _)| *n == name)
            .map(|(_, factory)| factory(options))
            .ok_or_else(|| Error::UnknownMethod {
                name: name.to_string(),
                known: self.names().join(", "),
            })
    }

    /// Registered names, in registration order.
    pub fn names(&self) -> Vec<&'static str> {
        self.entries.iter().map(|(n, _)| *n).collect()
    }
}

impl Default for StrategyRegistry {
    fn default() -> Self {
        Self::with_builtins()
    }
}
