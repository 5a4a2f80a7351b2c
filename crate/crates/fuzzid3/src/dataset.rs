//! Iris CSV ingestion and the pairwise five-fold splitting protocol.
//!
//! The expected file format is the classic Fisher distribution: four
//! comma-separated decimal features (sepal length, sepal width, petal
//! length, petal width; all in cm) followed by a species label. A header
//! row is auto-detected by a non-numeric first field. Fold assignment is
//! positional within each class, so the same file always produces the
//! same splits.

use std::fs;
use std::path::Path;

use crate::error::{Error, Result};

/// Number of features per instance.
pub const NUM_FEATURES: usize = 4;

/// Number of cross-validation folds.
pub const NUM_FOLDS: usize = 5;

/// One labeled flower: four measurements and a class index into the
/// owning [`Dataset`]'s `class_names`.
#[derive(Debug, Clone, PartialEq)]
pub struct Instance {
    pub features: [f64; NUM_FEATURES],
    pub class: usize,
}

/// An ordered collection of instances plus the declared label set.
///
/// Instance order is preserved from the source file; fold indexing
/// depends on it.
#[derive(Debug, Clone, PartialEq)]
pub struct Dataset {
    instances: Vec<Instance>,
    class_names: Vec<String>,
}

/// One train/test split of a pairwise dataset.
#[derive(Debug, Clone, PartialEq)]
pub struct FoldSplit {
    pub fold_index: usize,
    pub train: Dataset,
    pub test: Dataset,
}

impl Dataset {
    /// Builds a dataset, validating that class names are distinct and
    /// non-empty and that every instance is well-formed (finite,
    /// non-negative features; class index within the declared set).
    pub fn new(instances: Vec<Instance>, class_names: Vec<String>) -> Result<Self> {
        for (i, name) in class_names.iter().enumerate() {
            if name.is_empty() {
                return Err(Error::InvalidClassNames("empty class name".into()));
            }
            if class_names[..i].contains(name) {
                return Err(Error::InvalidClassNames(format!("duplicate name `{name}`")));
            }
        }
        for (position, inst) in instances.iter().enumerate() {
            for (f, &v) in inst.features.iter().enumerate() {
                if !v.is_finite() || v < 0.0 {
                    return Err(Error::InvalidInstance {
                        position,
                        message: format!(
                            "feature {} must be finite and non-negative, got {v}",
                            f + 1
                        ),
                    });
                }
            }
            if inst.class >= class_names.len() {
                return Err(Error::InvalidInstance {
                    position,
                    message: format!(
                        "class index {} out of range for {} declared classes",
                        inst.class,
                        class_names.len()
                    ),
                });
            }
        }
        Ok(Self {
            instances,
            class_names,
        })
    }

    pub fn instances(&self) -> &[Instance] {
        &self.instances
    }

    pub fn class_names(&self) -> &[String] {
        &self.class_names
    }

    pub fn len(&self) -> usize {
        self.instances.len()
    }

    pub fn is_empty(&self) -> bool {
        self.instances.is_empty()
    }

    /// Index of a class name, if declared.
    pub fn class_index(&self, name: &str) -> Option<usize> {
        self.class_names.iter().position(|n| n == name)
    }

    /// Number of instances carrying the given class index.
    pub fn class_count(&self, class: usize) -> usize {
        self.instances.iter().filter(|i| i.class == class).count()
    }

    /// Restricts the dataset to two classes, preserving instance order.
    ///
    /// The result's class names are `[class_a, class_b]` and instances
    /// are relabeled 0/1 accordingly.
    pub fn pairwise_subset(&self, class_a: &str, class_b: &str) -> Result<Dataset> {
        let a = self
            .class_index(class_a)
            .ok_or_else(|| Error::UnknownClass(class_a.to_string()))?;
        let b = self
            .class_index(class_b)
            .ok_or_else(|| Error::UnknownClass(class_b.to_string()))?;
        if a == b {
            return Err(Error::DuplicateClassPair(class_a.to_string()));
        }
        let instances = self
            .instances
            .iter()
            .filter_map(|inst| {
                let class = if inst.class == a {
                    0
                } else if inst.class == b {
                    1
                } else {
                    return None;
                };
                Some(Instance {
                    features: inst.features,
                    class,
                })
            })
            .collect();
        Ok(Dataset {
            instances,
            class_names: vec![class_a.to_string(), class_b.to_string()],
        })
    }

    /// Produces the five deterministic train/test splits of a pairwise
    /// dataset: fold `j`'s test set takes, per class, the instances at
    /// within-class positions `[j*fold_size, (j+1)*fold_size)`.
    ///
    /// Requires exactly two classes with exactly `5 * fold_size`
    /// instances each.
    pub fn five_fold_splits(&self, fold_size: usize) -> Result<Vec<FoldSplit>> {
        if self.class_names.len() != 2 {
            return Err(Error::NotPairwise(self.class_names.len()));
        }
        if fold_size == 0 {
            return Err(Error::BadFoldSize);
        }
        let expected = NUM_FOLDS * fold_size;
        for (class, name) in self.class_names.iter().enumerate() {
            let found = self.class_count(class);
            if found != expected {
                return Err(Error::UnbalancedClass {
                    class: name.clone(),
                    expected,
                    found,
                });
            }
        }

        // Within-class position of each instance, in file order.
        let mut seen = [0usize; 2];
        let positions: Vec<usize> = self
            .instances
            .iter()
            .map(|inst| {
                let p = seen[inst.class];
                seen[inst.class] += 1;
                p
            })
            .collect();

        let splits = (0..NUM_FOLDS)
            .map(|fold_index| {
                let lo = fold_index * fold_size;
                let hi = lo + fold_size;
                let mut train = Vec::with_capacity(self.len() - 2 * fold_size);
                let mut test = Vec::with_capacity(2 * fold_size);
                for (inst, &pos) in self.instances.iter().zip(&positions) {
                    if pos >= lo && pos < hi {
                        test.push(inst.clone());
                    } else {
                        train.push(inst.clone());
                    }
                }
                FoldSplit {
                    fold_index,
                    train: Dataset {
                        instances: train,
                        class_names: self.class_names.clone(),
                    },
                    test: Dataset {
                        instances: test,
                        class_names: self.class_names.clone(),
                    },
                }
            })
            .collect();
        Ok(splits)
    }
}

/// Loads an Iris-format CSV file.
///
/// Instance order is preserved and class names are collected in order of
/// first appearance. Accepts LF or CRLF line endings, trims surrounding
/// whitespace per field and skips blank lines. Errors name the offending
/// 1-based line number.
pub fn load_iris<P: AsRef<Path>>(path: P) -> Result<Dataset> {
    let path = path.as_ref();
    let text = fs::read_to_string(path).map_err(|source| Error::Io {
        path: path.to_path_buf(),
        source,
    })?;

    let mut instances = Vec::new();
    let mut class_names: Vec<String> = Vec::new();
    let mut first_row = true;
    for (idx, raw) in text.lines().enumerate() {
        let line = idx + 1;
        let row = raw.trim();
        if row.is_empty() {
            continue;
        }
        let fields: Vec<&str> = row.split(',').map(str::trim).collect();
        if first_row {
            first_row = false;
            // Header row: non-numeric first field.
            if fields[0].parse::<f64>().is_err() {
                continue;
            }
        }
        if fields.len() != NUM_FEATURES + 1 {
            return Err(Error::BadRow {
                path: path.to_path_buf(),
                line,
                message: format!("expected 5 fields, found {}", fields.len()),
            });
        }
        let mut features = [0.0; NUM_FEATURES];
        for (i, value) in fields[..NUM_FEATURES].iter().enumerate() {
            let v: f64 = value.parse().map_err(|_| Error::BadRow {
                path: path.to_path_buf(),
                line,
                message: format!("feature {} is not a number: `{value}`", i + 1),
            })?;
            if !v.is_finite() || v < 0.0 {
                return Err(Error::BadRow {
                    path: path.to_path_buf(),
                    line,
                    message: format!("feature {} must be finite and non-negative, got {v}", i + 1),
                });
            }
            features[i] = v;
        }
        let label = fields[NUM_FEATURES];
        if label.is_empty() {
            return Err(Error::BadRow {
                path: path.to_path_buf(),
                line,
                message: "empty class label".into(),
            });
        }
        let class = match class_names.iter().position(|n| n == label) {
            Some(c) => c,
            None => {
                class_names.push(label.to_string());
                class_names.len() - 1
            }
        };
        instances.push(Instance { features, class });
    }

    if instances.is_empty() {
        return Err(Error::NoRows {
            path: path.to_path_buf(),
        });
    }
    Dataset::new(instances, class_names)
}
