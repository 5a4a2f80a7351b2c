//! The fuzzy split criterion: distance-to-prototype certainty replaces
//! entropy inside the same induction loop.
//!
//! Each class at a node has a prototype, the mean membership vector of
//! its instances. An instance's distance `Z` to its class prototype
//! maps to a certainty `exp(-Z)` in (0,1]; a subset's uncertainty is
//! one minus its mean certainty. Splits are scored like ID3, with
//! branch uncertainties replacing branch entropies and the best score
//! being the minimum.

use serde::{Deserialize, Serialize};

use crate::dataset::{Dataset, Instance};
use crate::error::{Error, Result};
use crate::fuzzifier::{average_vector, FuzzyPartition, FuzzyVector};
use crate::strategy::{CandidateScore, PrototypeReport, Selection, SplitStrategy};
use crate::tree::{self, DecisionTree, NodeSet};

/// Which instances prototypes are averaged over during construction.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum PrototypeScope {
    /// Recompute from the branch subset being scored (reference
    /// behavior).
    #[default]
    PerNode,
    /// Compute once from the whole training set and reuse everywhere.
    Global,
}

/// The map from a distance to a certainty in (0,1].
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum CertaintyKind {
    /// `exp(-z)`, the reference mapping.
    #[default]
    NegExp,
    /// `1 / (1 + z)`, kept for ablation runs.
    Reciprocal,
}

impl CertaintyKind {
    pub fn apply(self, z: f64) -> f64 {
        match self {
            Self::NegExp => (-z).exp(),
            Self::Reciprocal => 1.0 / (1.0 + z),
        }
    }
}

/// A certainty value, guaranteed to be the image of a valid distance.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct CertaintyScore(f64);

impl CertaintyScore {
    pub fn value(self) -> f64 {
        self.0
    }
}

/// A class's mean membership vector over some instance set.
#[derive(Debug, Clone, PartialEq)]
pub struct ClassPrototype {
    pub class: usize,
    pub average: FuzzyVector,
}

/// Euclidean distance between two membership vectors.
pub fn distance(f: &FuzzyVector, avg: &FuzzyVector) -> Result<f64> {
    if f.dim() != avg.dim() {
        return Err(Error::DimensionMismatch {
            left: f.dim(),
            right: avg.dim(),
        });
    }
    let sum: f64 = f
        .degrees()
        .iter()
        .zip(avg.degrees())
        .map(|(a, b)| {
            let d = a - b;
            d * d
        })
        .sum();
    Ok(sum.sqrt())
}

/// Certainty of a distance: `exp(-z)`, strictly decreasing, 1 at 0.
pub fn certainty(z: f64) -> Result<CertaintyScore> {
    if !z.is_finite() || z < 0.0 {
        return Err(Error::BadDistance(z));
    }
    Ok(CertaintyScore((-z).exp()))
}

/// Per-class prototypes of a subset given as (class, vector) pairs,
/// sorted by class index. Only classes present in the subset get one.
pub fn class_prototypes(subset: &[(usize, &FuzzyVector)]) -> Result<Vec<ClassPrototype>> {
    if subset.is_empty() {
        return Err(Error::NoValues);
    }
    let mut classes: Vec<usize> = subset.iter().map(|(c, _)| *c).collect();
    classes.sort_unstable();
    classes.dedup();
    classes
        .into_iter()
        .map(|class| {
            let vectors: Vec<FuzzyVector> = subset
                .iter()
                .filter(|(c, _)| *c == class)
                .map(|(_, v)| (*v).clone())
                .collect();
            Ok(ClassPrototype {
                class,
                average: average_vector(&vectors)?,
            })
        })
        .collect()
}

/// Uncertainty of a subset: one minus the mean certainty of its
/// instances, each measured against its own class prototype. An empty
/// subset has uncertainty 0 by convention.
pub fn subset_uncertainty(
    subset: &[(usize, &FuzzyVector)],
    prototypes: &[ClassPrototype],
) -> Result<f64> {
    subset_uncertainty_with(subset, prototypes, CertaintyKind::NegExp)
}

/// [`subset_uncertainty`] with a configurable certainty mapping.
pub fn subset_uncertainty_with(
    subset: &[(usize, &FuzzyVector)],
    prototypes: &[ClassPrototype],
    kind: CertaintyKind,
) -> Result<f64> {
    if subset.is_empty() {
        return Ok(0.0);
    }
    let mut sum = 0.0;
    for (class, v) in subset {
        let proto = prototypes
            .iter()
            .find(|p| p.class == *class)
            .ok_or(Error::MissingPrototype(*class))?;
        let z = distance(v, &proto.average)?;
        sum += kind.apply(z);
    }
    Ok(1.0 - sum / subset.len() as f64)
}

/// The fuzzy criterion: split on the candidate minimizing the
/// size-weighted branch uncertainty, ties toward the lower index.
#[derive(Debug, Clone, Copy, Default)]
pub struct FuzzyId3 {
    scope: PrototypeScope,
    certainty: CertaintyKind,
}

impl FuzzyId3 {
    pub fn new(scope: PrototypeScope, certainty: CertaintyKind) -> Self {
        Self { scope, certainty }
    }

    pub fn scope(&self) -> PrototypeScope {
        self.scope
    }

    fn report(prototypes: &[ClassPrototype]) -> Vec<PrototypeReport> {
        prototypes
            .iter()
            .map(|p| PrototypeReport {
                class: p.class,
                average: p.average.degrees().to_vec(),
            })
            .collect()
    }
}

impl SplitStrategy for FuzzyId3 {
    fn name(&self) -> &'static str {
        "fuzzy"
    }

    fn select_attribute(&self, node: &NodeSet<'_>, candidates: &[usize]) -> Selection {
        assert!(!node.is_empty(), "cannot split an empty node");
        assert!(!candidates.is_empty(), "no candidate features");

        let global = match self.scope {
            PrototypeScope::Global => {
                let all: Vec<(usize, &FuzzyVector)> =
                    node.root().iter().map(|m| (m.class(), m.fuzzy())).collect();
                Some(class_prototypes(&all).expect("training set is non-empty"))
            }
            PrototypeScope::PerNode => None,
        };

        let n = node.len() as f64;
        let mut scores = Vec::with_capacity(candidates.len());
        let mut best_feature = candidates[0];
        let mut best_score = f64::INFINITY;
        for &a in candidates {
            let mut score = 0.0;
            for term in 0..node.terms_per_feature() {
                let branch: Vec<(usize, &FuzzyVector)> = node
                    .members()
                    .iter()
                    .filter(|m| m.terms()[a] == term)
                    .map(|m| (m.class(), m.fuzzy()))
                    .collect();
                let u = if branch.is_empty() {
                    0.0
                } else {
                    match &global {
                        Some(g) => subset_uncertainty_with(&branch, g, self.certainty),
                        None => {
                            let protos = class_prototypes(&branch).expect("branch is non-empty");
                            subset_uncertainty_with(&branch, &protos, self.certainty)
                        }
                    }
                    .expect("prototypes cover every class present")
                };
                score += (branch.len() as f64 / n) * u;
            }
            scores.push(CandidateScore { feature: a, score });
            if score < best_score {
                best_feature = a;
                best_score = score;
            }
        }

        let prototypes = match &global {
            Some(g) => Self::report(g),
            None => {
                let members: Vec<(usize, &FuzzyVector)> = node
                    .members()
                    .iter()
                    .map(|m| (m.class(), m.fuzzy()))
                    .collect();
                Self::report(&class_prototypes(&members).expect("node is non-empty"))
            }
        };
        Selection {
            feature: best_feature,
            scores,
            prototypes: Some(prototypes),
        }
    }
}

/// Attribute choice of the reference configuration (per-node
/// prototypes, `exp(-z)` certainty).
pub fn select_attribute_fuzzy(node: &NodeSet<'_>, candidates: &[usize]) -> usize {
    FuzzyId3::default()
        .select_attribute(node, candidates)
        .feature
}

/// Builds a fuzzy tree in the reference configuration.
pub fn build_fuzzy_tree(train: &Dataset, partitions: &[FuzzyPartition]) -> Result<DecisionTree> {
    tree::build_tree(train, partitions, &FuzzyId3::default())
}

/// Classifies an instance with a built tree.
pub fn predict_fuzzy(tree: &DecisionTree, inst: &Instance, partitions: &[FuzzyPartition]) -> usize {
    tree.predict(inst, partitions)
}
