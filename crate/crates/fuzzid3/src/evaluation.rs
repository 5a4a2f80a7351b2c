//! Pairwise five-fold cross-validation and method comparison.
//!
//! For each fold: fit partitions on the training split, build the
//! selected method's tree, predict the held-out instances, and record
//! the pairwise confusion counts. Comparison runs both methods over one
//! shared set of splits so per-fold accuracy deltas are meaningful.

use serde::{Deserialize, Serialize};

use crate::dataset::{Dataset, FoldSplit};
use crate::error::{Error, Result};
use crate::fuzzifier::fit_partitions;
use crate::report::PartitionReport;
use crate::strategy::{SplitStrategy, StrategyOptions, StrategyRegistry};
use crate::tree::{build_tree, build_tree_traced, NodeDiagnostics};

/// Pairwise confusion counts of one fold: `a` = predicted first class
/// and truly first, `b` = predicted first but truly second, `c` =
/// predicted second but truly first, `d` = predicted second and truly
/// second.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct ConfusionRecord {
    #[serde(rename = "fold")]
    pub fold_index: usize,
    pub a: usize,
    pub b: usize,
    pub c: usize,
    pub d: usize,
}

impl ConfusionRecord {
    pub fn total(&self) -> usize {
        self.a + self.b + self.c + self.d
    }
}

/// Tallies predictions against truth for a two-class problem.
pub fn confusion_pairwise(
    predicted: &[usize],
    truth: &[usize],
    class_pair: (usize, usize),
    fold_index: usize,
) -> Result<ConfusionRecord> {
    if predicted.len() != truth.len() {
        return Err(Error::LengthMismatch {
            predicted: predicted.len(),
            truth: truth.len(),
        });
    }
    let (first, second) = class_pair;
    let mut record = ConfusionRecord {
        fold_index,
        a: 0,
        b: 0,
        c: 0,
        d: 0,
    };
    for (&p, &t) in predicted.iter().zip(truth) {
        for label in [p, t] {
            if label != first && label != second {
                return Err(Error::ForeignLabel(label));
            }
        }
        match (p == first, t == first) {
            (true, true) => record.a += 1,
            (true, false) => record.b += 1,
            (false, true) => record.c += 1,
            (false, false) => record.d += 1,
        }
    }
    Ok(record)
}

/// Fraction of correct predictions, `(a + d) / total`.
pub fn accuracy(r: &ConfusionRecord) -> Result<f64> {
    let total = r.total();
    if total == 0 {
        return Err(Error::EmptyRecord);
    }
    Ok((r.a + r.d) as f64 / total as f64)
}

/// Protocol knobs; the defaults are the reference configuration
/// (2 terms per feature, folds of 10 per class).
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct ExperimentConfig {
    pub terms_per_feature: usize,
    pub fold_size: usize,
    pub options: StrategyOptions,
    /// Collect per-node diagnostics for each fold.
    pub trace: bool,
}

impl Default for ExperimentConfig {
    fn default() -> Self {
        Self {
            terms_per_feature: 2,
            fold_size: 10,
            options: StrategyOptions::default(),
            trace: false,
        }
    }
}

/// Per-fold construction details, emitted when tracing.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct FoldDiagnostics {
    pub fold: usize,
    pub partitions: Vec<PartitionReport>,
    pub nodes: Vec<NodeDiagnostics>,
}

/// One method's five-fold outcome on one class pair.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ExperimentResult {
    pub method: String,
    pub pair: [String; 2],
    pub records: Vec<ConfusionRecord>,
    pub mean_accuracy: f64,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub diagnostics: Option<Vec<FoldDiagnostics>>,
}

/// Both methods on the same folds, with per-fold accuracy deltas.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct MethodComparison {
    pub id3: ExperimentResult,
    pub fuzzy: ExperimentResult,
    /// Fuzzy accuracy minus ID3 accuracy, by fold.
    pub deltas: Vec<f64>,
}

/// Runs one method through the pairwise five-fold protocol.
///
/// The run is a pure function of its inputs: repeated calls give
/// bit-identical results.
pub fn run_experiment(
    registry: &StrategyRegistry,
    data: &Dataset,
    method: &str,
    class_pair: (&str, &str),
    config: &ExperimentConfig,
) -> Result<ExperimentResult> {
    let pairwise = data.pairwise_subset(class_pair.0, class_pair.1)?;
    let splits = pairwise.five_fold_splits(config.fold_size)?;
    let strategy = registry.create(method, &config.options)?;
    run_on_splits(strategy.as_ref(), &pairwise, &splits, config)
}

/// Runs both built-in methods on one shared set of splits.
pub fn compare_methods(
    registry: &StrategyRegistry,
    data: &Dataset,
    class_pair: (&str, &str),
    config: &ExperimentConfig,
) -> Result<MethodComparison> {
    let pairwise = data.pairwise_subset(class_pair.0, class_pair.1)?;
    let splits = pairwise.five_fold_splits(config.fold_size)?;
    let id3 = run_on_splits(
        registry.create("id3", &config.options)?.as_ref(),
        &pairwise,
        &splits,
        config,
    )?;
    let fuzzy = run_on_splits(
        registry.create("fuzzy", &config.options)?.as_ref(),
        &pairwise,
        &splits,
        config,
    )?;
    let deltas = id3
        .records
        .iter()
        .zip(&fuzzy.records)
        .map(|(i, f)| Ok(accuracy(f)? - accuracy(i)?))
        .collect::<Result<Vec<f64>>>()?;
    Ok(MethodComparison { id3, fuzzy, deltas })
}

fn run_on_splits(
    strategy: &dyn SplitStrategy,
    pairwise: &Dataset,
    splits: &[FoldSplit],
    config: &ExperimentConfig,
) -> Result<ExperimentResult> {
    let mut records = Vec::with_capacity(splits.len());
    let mut diagnostics = config.trace.then(Vec::new);
    let mut acc_sum = 0.0;
    for split in splits {
        let partitions = fit_partitions(&split.train, config.terms_per_feature)?;
        let (tree, nodes) = if config.trace {
            build_tree_traced(&split.train, &partitions, strategy)?
        } else {
            (build_tree(&split.train, &partitions, strategy)?, Vec::new())
        };
        let predicted: Vec<usize> = split
            .test
            .instances()
            .iter()
            .map(|i| tree.predict(i, &partitions))
            .collect();
        let truth: Vec<usize> = split.test.instances().iter().map(|i| i.class).collect();
        let record = confusion_pairwise(&predicted, &truth, (0, 1), split.fold_index)?;
        acc_sum += accuracy(&record)?;
        records.push(record);
        if let Some(d) = diagnostics.as_mut() {
            d.push(FoldDiagnostics {
                fold: split.fold_index,
                partitions: partitions.iter().map(PartitionReport::from).collect(),
                nodes,
            });
        }
    }
    let mean_accuracy = acc_sum / records.len() as f64;
    Ok(ExperimentResult {
        method: strategy.name().to_string(),
        pair: [
            pairwise.class_names()[0].clone(),
            pairwise.class_names()[1].clone(),
        ],
        records,
        mean_accuracy,
        diagnostics,
    })
}
