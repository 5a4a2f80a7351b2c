//! Classical ID3: Shannon entropy, information gain, and the crisp
//! split criterion.
//!
//! Continuous features are discretized by taking, per feature, the
//! linguistic term of maximum membership over the same partitions the
//! fuzzy criterion uses. Sharing the partitions keeps the two methods
//! identical except for how candidate splits are scored.

use crate::dataset::{Dataset, Instance, NUM_FEATURES};
use crate::error::{Error, Result};
use crate::fuzzifier::{FuzzyPartition, FuzzyVector};
use crate::strategy::{CandidateScore, Selection, SplitStrategy};
use crate::tree::{self, DecisionTree, NodeSet};

/// Per-class instance counts of a node.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ClassDistribution {
    counts: Vec<usize>,
}

impl ClassDistribution {
    /// An all-zero distribution over `num_classes` classes.
    pub fn new(num_classes: usize) -> Self {
        Self {
            counts: vec![0; num_classes],
        }
    }

    pub fn from_counts(counts: Vec<usize>) -> Self {
        Self { counts }
    }

    /// Counts one instance of the given class.
    pub fn record(&mut self, class: usize) {
        self.counts[class] += 1;
    }

    pub fn counts(&self) -> &[usize] {
        &self.counts
    }

    pub fn total(&self) -> usize {
        self.counts.iter().sum()
    }
}

/// Shannon entropy in bits: `H = -sum p_i log2 p_i` with `p_i` the
/// class frequencies and `0 log2 0` taken as 0.
pub fn shannon_entropy(dist: &ClassDistribution) -> Result<f64> {
    let total = dist.total();
    if total == 0 {
        return Err(Error::EmptyDistribution);
    }
    let mut h = 0.0;
    for &c in dist.counts() {
        if c > 0 {
            let p = c as f64 / total as f64;
            h -= p * p.log2();
        }
    }
    Ok(h)
}

/// Expected entropy reduction of a split: `H(parent)` minus the
/// size-weighted entropies of the non-empty children.
pub fn information_gain(parent: &ClassDistribution, children: &[ClassDistribution]) -> Result<f64> {
    let parent_total = parent.total();
    let child_total: usize = children.iter().map(ClassDistribution::total).sum();
    if child_total != parent_total {
        return Err(Error::SplitCountMismatch {
            parent: parent_total,
            children: child_total,
        });
    }
    let h_parent = shannon_entropy(parent)?;
    let mut residual = 0.0;
    for child in children {
        let n = child.total();
        if n > 0 {
            residual += (n as f64 / parent_total as f64) * shannon_entropy(child)?;
        }
    }
    Ok(h_parent - residual)
}

/// Collapses a membership vector to one crisp term per feature by
/// argmax over each block, ties toward the lower term index.
pub fn crispify(v: &FuzzyVector) -> [usize; NUM_FEATURES] {
    let mut out = [0usize; NUM_FEATURES];
    let mut blocks = 0;
    for (f, block) in v.blocks().enumerate() {
        let mut best = 0;
        for (j, &d) in block.iter().enumerate() {
            if d > block[best] {
                best = j;
            }
        }
        out[f] = best;
        blocks += 1;
    }
    assert_eq!(blocks, NUM_FEATURES, "expected one block per feature");
    out
}

/// The ID3 criterion: split on the candidate of maximum information
/// gain, ties toward the lower feature index.
#[derive(Debug, Clone, Copy, Default)]
pub struct CrispId3;

impl SplitStrategy for CrispId3 {
    fn name(&self) -> &'static str {
        "id3"
    }

    fn select_attribute(&self, node: &NodeSet<'_>, candidates: &[usize]) -> Selection {
        assert!(!node.is_empty(), "cannot split an empty node");
        assert!(!candidates.is_empty(), "no candidate features");

        let mut parent = ClassDistribution::new(node.num_classes());
        for m in node.members() {
            parent.record(m.class());
        }

        let mut scores = Vec::with_capacity(candidates.len());
        let mut best_feature = candidates[0];
        let mut best_gain = f64::NEG_INFINITY;
        for &a in candidates {
            let mut children =
                vec![ClassDistribution::new(node.num_classes()); node.terms_per_feature()];
            for m in node.members() {
                children[m.terms()[a]].record(m.class());
            }
            let gain = information_gain(&parent, &children)
                .expect("bucketed children always sum to the parent");
            scores.push(CandidateScore {
                feature: a,
                score: gain,
            });
            if gain > best_gain {
                best_feature = a;
                best_gain = gain;
            }
        }
        Selection {
            feature: best_feature,
            scores,
            prototypes: None,
        }
    }
}

/// Builds a classical ID3 tree.
pub fn build_id3(train: &Dataset, partitions: &[FuzzyPartition]) -> Result<DecisionTree> {
    tree::build_tree(train, partitions, &CrispId3)
}

/// Classifies an instance with a built tree.
pub fn predict(tree: &DecisionTree, inst: &Instance, partitions: &[FuzzyPartition]) -> usize {
    tree.predict(inst, partitions)
}
