//! Crisp and fuzzy ID3 decision trees over shared triangular fuzzy
//! partitions, plus the pairwise five-fold Iris evaluation protocol
//! that compares them.
//!
//! Both methods discretize the four continuous features through the
//! same per-feature triangular partitions and grow the same kind of
//! tree; they differ only in the split criterion. Classical ID3 picks
//! the feature of maximum information gain. The fuzzy variant scores a
//! branch by how far its members' membership vectors sit from their
//! class averages, mapping each distance `Z` to a certainty `exp(-Z)`
//! and minimizing the size-weighted mean uncertainty. Criteria are
//! registered by name in a [`StrategyRegistry`], so callers select the
//! method at runtime.
//!
//! ```
//! use fuzzid3::{build_id3, fit_partitions, Dataset, Instance};
//!
//! # fn main() -> fuzzid3::Result<()> {
//! let data = Dataset::new(
//!     vec![
//!         Instance { features: [1.0, 3.1, 1.2, 0.4], class: 0 },
//!         Instance { features: [1.1, 2.9, 1.4, 0.3], class: 0 },
//!         Instance { features: [4.0, 2.5, 5.8, 2.0], class: 1 },
//!         Instance { features: [4.2, 2.4, 6.1, 1.9], class: 1 },
//!     ],
//!     vec!["short".into(), "long".into()],
//! )?;
//! let partitions = fit_partitions(&data, 2)?;
//! let tree = build_id3(&data, &partitions)?;
//! assert_eq!(tree.predict(&data.instances()[0], &partitions), 0);
//! # Ok(())
//! # }
//! ```

pub mod crisp_id3;
pub mod dataset;
pub mod error;
pub mod evaluation;
pub mod fuzzifier;
pub mod fuzzy_id3;
pub mod report;
pub mod strategy;
pub mod tree;

pub use crisp_id3::{
    build_id3, crispify, information_gain, predict, shannon_entropy, ClassDistribution, CrispId3,
};
pub use dataset::{load_iris, Dataset, FoldSplit, Instance, NUM_FEATURES, NUM_FOLDS};
pub use error::{Error, Result};
pub use evaluation::{
    accuracy, compare_methods, confusion_pairwise, run_experiment, ConfusionRecord,
    ExperimentConfig, ExperimentResult, FoldDiagnostics, MethodComparison,
};
pub use fuzzifier::{
    average_vector, build_partition, fit_partitions, fuzzify, FuzzyPartition, FuzzyVector,
};
pub use fuzzy_id3::{
    build_fuzzy_tree, certainty, class_prototypes, distance, predict_fuzzy, select_attribute_fuzzy,
    subset_uncertainty, CertaintyKind, CertaintyScore, ClassPrototype, FuzzyId3, PrototypeScope,
};
pub use report::{PairDeltas, PartitionReport, ReportConfig, RunReport};
pub use strategy::{
    CandidateScore, PrototypeReport, Selection, SplitStrategy, StrategyFactory, StrategyOptions,
    StrategyRegistry,
};
pub use tree::{
    build_tree, build_tree_traced, BranchStep, DecisionTree, NodeDiagnostics, NodeSet,
    TrainedInstance,
};
