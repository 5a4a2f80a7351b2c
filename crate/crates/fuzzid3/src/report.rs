//! Machine-readable run reports.
//!
//! A [`RunReport`] is the single JSON document a run emits: the
//! configuration it ran under, the fitted partitions, and one
//! [`ExperimentResult`] per method and class pair, with optional
//! per-pair deltas for comparison runs. The schema round-trips through
//! serde, so consumers can recompute every aggregate from the records.

use serde::{Deserialize, Serialize};

use crate::evaluation::ExperimentResult;
use crate::fuzzifier::FuzzyPartition;
use crate::fuzzy_id3::PrototypeScope;

/// Everything one invocation produced.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct RunReport {
    pub config: ReportConfig,
    /// Partitions fitted on the full dataset the run addressed, for
    /// auditability; per-fold partitions appear in diagnostics.
    pub partitions: Vec<PartitionReport>,
    pub results: Vec<ExperimentResult>,
    /// Per-fold fuzzy-minus-ID3 accuracy deltas, one entry per pair;
    /// present only for comparison runs.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub deltas: Option<Vec<PairDeltas>>,
    /// Set on comparison runs: both methods were evaluated on one
    /// shared set of splits.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub folds_shared: Option<bool>,
}

/// The resolved run configuration echoed into the report.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ReportConfig {
    pub data_path: String,
    pub method: String,
    pub class_pair: String,
    pub k: usize,
    pub fold_size: usize,
    pub format: String,
    pub verbose: bool,
    pub prototype_scope: PrototypeScope,
}

/// A fitted partition in serializable form.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct PartitionReport {
    pub feature_index: usize,
    pub centers: Vec<f64>,
}

impl From<&FuzzyPartition> for PartitionReport {
    fn from(p: &FuzzyPartition) -> Self {
        Self {
            feature_index: p.feature_index(),
            centers: p.centers().to_vec(),
        }
    }
}

/// Per-fold accuracy deltas of one class pair.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct PairDeltas {
    pub pair: [String; 2],
    pub per_fold: Vec<f64>,
}

#[cfg(test)]
mod tests {
    use crate::evaluation::ConfusionRecord;
    use crate::fuzzifier::build_partition;

    use super::*;

    fn sample_report() -> RunReport {
        RunReport {
            config: ReportConfig {
                data_path: "data/iris.csv".into(),
                method: "both".into(),
                class_pair: "1,2".into(),
                k: 2,
                fold_size: 10,
                format: "json".into(),
                verbose: false,
                prototype_scope: PrototypeScope::PerNode,
            },
            partitions: vec![PartitionReport {
                feature_index: 0,
                centers: vec![4.3, 7.0],
            }],
            results: vec![ExperimentResult {
                method: "id3".into(),
                pair: ["Iris-setosa".into(), "Iris-versicolor".into()],
                records: vec![ConfusionRecord {
                    fold_index: 0,
                    a: 9,
                    b: 0,
                    c: 1,
                    d: 10,
                }],
                mean_accuracy: 0.95,
                diagnostics: None,
            }],
            deltas: Some(vec![PairDeltas {
                pair: ["Iris-setosa".into(), "Iris-versicolor".into()],
                per_fold: vec![0.05, 0.0, -0.05, 0.0, 0.0],
            }]),
            folds_shared: Some(true),
        }
    }

    #[test]
    fn report_round_trips_through_json() {
        let report = sample_report();
        let text = serde_json::to_string_pretty(&report).unwrap();
        let back: RunReport = serde_json::from_str(&text).unwrap();
        assert_eq!(back, report);
    }

    #[test]
    fn report_uses_the_documented_field_names() {
        let value = serde_json::to_value(sample_report()).unwrap();
        assert_eq!(value["config"]["k"], 2);
        assert_eq!(value["config"]["prototype_scope"], "per-node");
        assert_eq!(value["partitions"][0]["feature_index"], 0);
        let record = &value["results"][0]["records"][0];
        assert_eq!(record["fold"], 0);
        assert_eq!(record["a"], 9);
        assert_eq!(record["d"], 10);
        assert_eq!(value["results"][0]["mean_accuracy"], 0.95);
        // Absent options stay out of the document.
        assert!(value["results"][0].get("diagnostics").is_none());
    }

    #[test]
    fn partition_report_mirrors_the_partition() {
        let p = build_partition(&[1.0, 5.0], 3, 2).unwrap();
        let report = PartitionReport::from(&p);
        assert_eq!(report.feature_index, 3);
        assert_eq!(report.centers, vec![1.0, 5.0]);
    }
}
