//! Tree structure, generic construction, and prediction.
//!
//! The builder owns everything strategy-independent: preparing
//! instances (fuzzify, then argmax to a crisp term per feature),
//! stopping rules, majority voting, branching, and recursion. The
//! choice of split feature is delegated to a [`SplitStrategy`], so the
//! crisp and fuzzy variants share one recursion and differ only in how
//! they score candidate features.

use serde::{Deserialize, Serialize};
use serde_json::{json, Value};

use crate::crisp_id3::crispify;
use crate::dataset::{Dataset, Instance, NUM_FEATURES};
use crate::error::{Error, Result};
use crate::fuzzifier::{fuzzify, FuzzyPartition, FuzzyVector};
use crate::strategy::{CandidateScore, PrototypeReport, SplitStrategy};

/// A decision tree over linguistic terms.
///
/// Every `Node` splits on a feature not used above it and has exactly
/// one child per linguistic term, so depth never exceeds the feature
/// count.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum DecisionTree {
    Leaf {
        class: usize,
        /// Training instances that reached this leaf; 0 marks a leaf
        /// synthesized for an empty branch.
        support: usize,
    },
    Node {
        feature: usize,
        /// Indexed by linguistic term.
        children: Vec<DecisionTree>,
    },
}

impl DecisionTree {
    /// Classifies an instance by argmax membership routing.
    pub fn predict(&self, inst: &Instance, partitions: &[FuzzyPartition]) -> usize {
        self.route(&crispify(&fuzzify(inst, partitions)))
    }

    /// Descends by each node's feature term until a leaf.
    pub fn route(&self, terms: &[usize; NUM_FEATURES]) -> usize {
        match self {
            Self::Leaf { class, .. } => *class,
            Self::Node { feature, children } => children[terms[*feature]].route(terms),
        }
    }

    /// Number of edges on the longest root-to-leaf path.
    pub fn depth(&self) -> usize {
        match self {
            Self::Leaf { .. } => 0,
            Self::Node { children, .. } => 1 + children.iter().map(Self::depth).max().unwrap_or(0),
        }
    }

    /// Serializes to nested JSON: leaves as `{class, support}`, nodes
    /// as `{feature, children}` with children indexed by term.
    pub fn to_json(&self, class_names: &[String]) -> Value {
        match self {
            Self::Leaf { class, support } => json!({
                "class": class_names[*class],
                "support": support,
            }),
            Self::Node { feature, children } => json!({
                "feature": feature,
                "children": children
                    .iter()
                    .map(|c| c.to_json(class_names))
                    .collect::<Vec<_>>(),
            }),
        }
    }
}

/// An instance preprocessed for tree construction: its class, its crisp
/// term per feature, and its full membership vector.
#[derive(Debug, Clone, PartialEq)]
pub struct TrainedInstance {
    class: usize,
    terms: [usize; NUM_FEATURES],
    fuzzy: FuzzyVector,
}

impl TrainedInstance {
    pub fn prepare(inst: &Instance, partitions: &[FuzzyPartition]) -> Self {
        let fuzzy = fuzzify(inst, partitions);
        let terms = crispify(&fuzzy);
        Self {
            class: inst.class,
            terms,
            fuzzy,
        }
    }

    pub fn class(&self) -> usize {
        self.class
    }

    pub fn terms(&self) -> &[usize; NUM_FEATURES] {
        &self.terms
    }

    pub fn fuzzy(&self) -> &FuzzyVector {
        &self.fuzzy
    }
}

/// The strategy-facing view of one tree node: the instances to split,
/// plus the full training set for criteria that score against global
/// statistics.
pub struct NodeSet<'a> {
    terms_per_feature: usize,
    num_classes: usize,
    members: &'a [&'a TrainedInstance],
    root: &'a [TrainedInstance],
}

impl<'a> NodeSet<'a> {
    pub(crate) fn new(
        terms_per_feature: usize,
        num_classes: usize,
        members: &'a [&'a TrainedInstance],
        root: &'a [TrainedInstance],
    ) -> Self {
        Self {
            terms_per_feature,
            num_classes,
            members,
            root,
        }
    }

    pub fn terms_per_feature(&self) -> usize {
        self.terms_per_feature
    }

    pub fn num_classes(&self) -> usize {
        self.num_classes
    }

    /// Instances at this node.
    pub fn members(&self) -> &[&'a TrainedInstance] {
        self.members
    }

    /// The whole training set the tree is being built from.
    pub fn root(&self) -> &'a [TrainedInstance] {
        self.root
    }

    pub fn len(&self) -> usize {
        self.members.len()
    }

    pub fn is_empty(&self) -> bool {
        self.members.is_empty()
    }
}

/// One branch taken on the way to a node, for diagnostics.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct BranchStep {
    pub feature: usize,
    pub term: usize,
}

/// What the strategy saw and decided at one internal node.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct NodeDiagnostics {
    pub path: Vec<BranchStep>,
    pub size: usize,
    pub chosen_feature: usize,
    pub scores: Vec<CandidateScore>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub prototypes: Option<Vec<PrototypeReport>>,
}

/// Builds a tree on the full training set with the given criterion.
///
/// Stopping rules: a pure node becomes a leaf of its class; a node with
/// no unused features becomes a majority leaf; an empty branch becomes
/// a leaf of the parent's majority class with support 0. Majority ties
/// resolve to the lowest class index.
pub fn build_tree(
    train: &Dataset,
    partitions: &[FuzzyPartition],
    strategy: &dyn SplitStrategy,
) -> Result<DecisionTree> {
    let (tree, _) = build(train, partitions, strategy, false)?;
    Ok(tree)
}

/// Like [`build_tree`], also returning per-node diagnostics in
/// construction order (parent before children, children by term).
pub fn build_tree_traced(
    train: &Dataset,
    partitions: &[FuzzyPartition],
    strategy: &dyn SplitStrategy,
) -> Result<(DecisionTree, Vec<NodeDiagnostics>)> {
    build(train, partitions, strategy, true)
}

struct GrowContext<'a> {
    strategy: &'a dyn SplitStrategy,
    root: &'a [TrainedInstance],
    terms_per_feature: usize,
    num_classes: usize,
}

fn build(
    train: &Dataset,
    partitions: &[FuzzyPartition],
    strategy: &dyn SplitStrategy,
    traced: bool,
) -> Result<(DecisionTree, Vec<NodeDiagnostics>)> {
    if train.is_empty() {
        return Err(Error::EmptyTrainingSet);
    }
    assert_eq!(
        partitions.len(),
        NUM_FEATURES,
        "need one partition per feature"
    );

    let prepared: Vec<TrainedInstance> = train
        .instances()
        .iter()
        .map(|i| TrainedInstance::prepare(i, partitions))
        .collect();
    let ctx = GrowContext {
        strategy,
        root: &prepared,
        terms_per_feature: partitions[0].terms(),
        num_classes: train.class_names().len(),
    };
    let members: Vec<&TrainedInstance> = prepared.iter().collect();
    let candidates: Vec<usize> = (0..NUM_FEATURES).collect();
    let root_majority = majority_class(&members, ctx.num_classes);
    let mut trace = traced.then(Vec::new);
    let tree = grow(&ctx, members, &candidates, root_majority, &[], &mut trace);
    Ok((tree, trace.unwrap_or_default()))
}

fn grow(
    ctx: &GrowContext<'_>,
    members: Vec<&TrainedInstance>,
    candidates: &[usize],
    parent_majority: usize,
    path: &[BranchStep],
    trace: &mut Option<Vec<NodeDiagnostics>>,
) -> DecisionTree {
    if members.is_empty() {
        return DecisionTree::Leaf {
            class: parent_majority,
            support: 0,
        };
    }
    if members.iter().all(|m| m.class() == members[0].class()) {
        return DecisionTree::Leaf {
            class: members[0].class(),
            support: members.len(),
        };
    }
    let majority = majority_class(&members, ctx.num_classes);
    if candidates.is_empty() {
        return DecisionTree::Leaf {
            class: majority,
            support: members.len(),
        };
    }

    let node = NodeSet::new(ctx.terms_per_feature, ctx.num_classes, &members, ctx.root);
    let selection = ctx.strategy.select_attribute(&node, candidates);
    let feature = selection.feature;
    debug_assert!(
        candidates.contains(&feature),
        "strategy chose a non-candidate"
    );
    if let Some(t) = trace.as_mut() {
        t.push(NodeDiagnostics {
            path: path.to_vec(),
            size: members.len(),
            chosen_feature: feature,
            scores: selection.scores,
            prototypes: selection.prototypes,
        });
    }

    let mut buckets: Vec<Vec<&TrainedInstance>> = vec![Vec::new(); ctx.terms_per_feature];
    for m in members {
        buckets[m.terms()[feature]].push(m);
    }
    let remaining: Vec<usize> = candidates
        .iter()
        .copied()
        .filter(|&c| c != feature)
        .collect();
    let children = buckets
        .into_iter()
        .enumerate()
        .map(|(term, bucket)| {
            let mut child_path = path.to_vec();
            child_path.push(BranchStep { feature, term });
            grow(ctx, bucket, &remaining, majority, &child_path, trace)
        })
        .collect();
    DecisionTree::Node { feature, children }
}

/// Most frequent class among members; ties go to the lowest index.
fn majority_class(members: &[&TrainedInstance], num_classes: usize) -> usize {
    let mut counts = vec![0usize; num_classes];
    for m in members {
        counts[m.class()] += 1;
    }
    let mut best = 0;
    for (class, &n) in counts.iter().enumerate() {
        if n > counts[best] {
            best = class;
        }
    }
    best
}

#[cfg(test)]
mod tests {
    use crate::fuzzifier::build_partition;
    use crate::strategy::Selection;

    use super::*;

    /// Strategy stub: always split on the lowest-index candidate.
    struct FirstCandidate;

    impl SplitStrategy for FirstCandidate {
        fn name(&self) -> &'static str {
            "first"
        }

        fn select_attribute(&self, _node: &NodeSet<'_>, candidates: &[usize]) -> Selection {
            Selection {
                feature: candidates[0],
                scores: Vec::new(),
                prototypes: None,
            }
        }
    }

    fn partitions() -> Vec<FuzzyPartition> {
        (0..NUM_FEATURES)
            .map(|f| build_partition(&[0.0, 10.0], f, 2).unwrap())
            .collect()
    }

    fn dataset(rows: &[([f64; NUM_FEATURES], usize)]) -> Dataset {
        Dataset::new(
            rows.iter()
                .map(|&(features, class)| Instance { features, class })
                .collect(),
            vec!["a".into(), "b".into()],
        )
        .unwrap()
    }

    fn check_shape(tree: &DecisionTree, terms: usize, used: &mut Vec<usize>) {
        match tree {
            DecisionTree::Leaf { .. } => {}
            DecisionTree::Node { feature, children } => {
                assert!(
                    !used.contains(feature),
                    "feature {feature} repeats on a path"
                );
                assert_eq!(children.len(), terms);
                used.push(*feature);
                for c in children {
                    check_shape(c, terms, used);
                }
                used.pop();
            }
        }
    }

    #[test]
    fn empty_training_set_is_rejected() {
        let data = Dataset::new(Vec::new(), vec!["a".into()]).unwrap();
        let err = build_tree(&data, &partitions(), &FirstCandidate).unwrap_err();
        assert!(matches!(err, Error::EmptyTrainingSet));
    }

    #[test]
    fn pure_set_yields_a_single_leaf() {
        let data = dataset(&[
            ([1.0, 2.0, 3.0, 4.0], 0),
            ([2.0, 3.0, 4.0, 5.0], 0),
            ([0.5, 1.0, 9.0, 2.0], 0),
        ]);
        let tree = build_tree(&data, &partitions(), &FirstCandidate).unwrap();
        assert_eq!(
            tree,
            DecisionTree::Leaf {
                class: 0,
                support: 3
            }
        );
        assert_eq!(tree.depth(), 0);
    }

    #[test]
    fn nodes_have_one_child_per_term_and_no_repeated_features() {
        // Class 1 only reachable by term combinations deep in the tree,
        // forcing several splits under the first-candidate stub.
        let data = dataset(&[
            ([1.0, 1.0, 1.0, 1.0], 0),
            ([1.0, 1.0, 9.0, 9.0], 0),
            ([1.0, 9.0, 1.0, 9.0], 0),
            ([1.0, 9.0, 9.0, 1.0], 1),
            ([9.0, 1.0, 1.0, 1.0], 1),
        ]);
        let tree = build_tree(&data, &partitions(), &FirstCandidate).unwrap();
        check_shape(&tree, 2, &mut Vec::new());
        assert!(tree.depth() <= NUM_FEATURES);
    }

    #[test]
    fn empty_branch_becomes_parent_majority_leaf() {
        // Every instance sits at term 0 of feature 0, so the stub's
        // split on feature 0 leaves branch 1 empty. Majority is class 0
        // (2 of 3).
        let data = dataset(&[
            ([1.0, 1.0, 1.0, 1.0], 0),
            ([1.0, 9.0, 1.0, 1.0], 0),
            ([1.0, 9.0, 9.0, 1.0], 1),
        ]);
        let tree = build_tree(&data, &partitions(), &FirstCandidate).unwrap();
        match &tree {
            DecisionTree::Node {
                feature: 0,
                children,
            } => {
                assert_eq!(
                    children[1],
                    DecisionTree::Leaf {
                        class: 0,
                        support: 0
                    }
                );
            }
            other => panic!("expected a root split on feature 0, got {other:?}"),
        }
    }

    #[test]
    fn majority_ties_resolve_to_the_lower_class() {
        // 2 vs 2 at the node once features are exhausted.
        let data = dataset(&[
            ([1.0, 1.0, 1.0, 1.0], 1),
            ([1.0, 1.0, 1.0, 1.0], 1),
            ([1.0, 1.0, 1.0, 1.0], 0),
            ([1.0, 1.0, 1.0, 1.0], 0),
        ]);
        // Identical term vectors: every split routes all four together
        // until candidates run out, then the tie goes to class 0.
        let tree = build_tree(&data, &partitions(), &FirstCandidate).unwrap();
        let leaf_class = tree.route(&[0, 0, 0, 0]);
        assert_eq!(leaf_class, 0);
    }

    #[test]
    fn route_descends_by_term() {
        let tree = DecisionTree::Node {
            feature: 2,
            children: vec![
                DecisionTree::Leaf {
                    class: 0,
                    support: 5,
                },
                DecisionTree::Node {
                    feature: 0,
                    children: vec![
                        DecisionTree::Leaf {
                            class: 1,
                            support: 2,
                        },
                        DecisionTree::Leaf {
                            class: 0,
                            support: 1,
                        },
                    ],
                },
            ],
        };
        assert_eq!(tree.route(&[0, 0, 0, 0]), 0);
        assert_eq!(tree.route(&[0, 0, 1, 0]), 1);
        assert_eq!(tree.route(&[1, 0, 1, 0]), 0);
        assert_eq!(tree.depth(), 2);
    }

    #[test]
    fn predict_is_total_even_out_of_range() {
        let data = dataset(&[([1.0, 1.0, 1.0, 1.0], 0), ([9.0, 9.0, 9.0, 9.0], 1)]);
        let ps = partitions();
        let tree = build_tree(&data, &ps, &FirstCandidate).unwrap();
        // Far outside the [0,10] fitting range: shoulders clamp.
        let far = Instance {
            features: [500.0, 500.0, 500.0, 500.0],
            class: 0,
        };
        assert_eq!(tree.predict(&far, &ps), 1);
        let low = Instance {
            features: [0.0, 0.0, 0.0, 0.0],
            class: 0,
        };
        assert_eq!(tree.predict(&low, &ps), 0);
    }

    #[test]
    fn json_serialization_nests_children_by_term() {
        let tree = DecisionTree::Node {
            feature: 1,
            children: vec![
                DecisionTree::Leaf {
                    class: 0,
                    support: 3,
                },
                DecisionTree::Leaf {
                    class: 1,
                    support: 4,
                },
            ],
        };
        let names = vec!["a".to_string(), "b".to_string()];
        let json = tree.to_json(&names);
        assert_eq!(json["feature"], 1);
        assert_eq!(json["children"][0]["class"], "a");
        assert_eq!(json["children"][0]["support"], 3);
        assert_eq!(json["children"][1]["class"], "b");
    }

    #[test]
    fn traced_build_logs_each_internal_node() {
        let data = dataset(&[
            ([1.0, 1.0, 1.0, 1.0], 0),
            ([1.0, 9.0, 1.0, 1.0], 0),
            ([1.0, 9.0, 9.0, 1.0], 1),
        ]);
        let (tree, diags) = build_tree_traced(&data, &partitions(), &FirstCandidate).unwrap();
        assert!(matches!(tree, DecisionTree::Node { .. }));
        assert!(!diags.is_empty());
        assert_eq!(diags[0].path, Vec::new());
        assert_eq!(diags[0].size, 3);
        assert_eq!(diags[0].chosen_feature, 0);
        // Deeper nodes carry their branch path.
        for d in &diags[1..] {
            assert!(!d.path.is_empty());
        }
    }
}
