//! Triangular fuzzy partitions and membership vectors.
//!
//! Each feature's observed training range is split into `k` linguistic
//! terms by evenly spaced centers. Membership in term `j` peaks at
//! `centers[j]` and falls linearly to zero at the adjacent centers; the
//! two end terms are shouldered, so values outside the training range
//! clamp to the nearest extreme term and the degrees always form a
//! partition of unity.

use crate::dataset::{Dataset, Instance, NUM_FEATURES};
use crate::error::{Error, Result};

/// Spacing used to widen a constant feature into a valid partition.
const DEGENERATE_STEP: f64 = 1e-6;

/// Per-feature triangular membership functions over `k` linguistic
/// terms. Centers are strictly increasing.
#[derive(Debug, Clone, PartialEq)]
pub struct FuzzyPartition {
    feature_index: usize,
    centers: Vec<f64>,
}

/// The concatenated membership degrees of one instance: four
/// consecutive blocks of `terms_per_feature` degrees, one block per
/// feature, within-block order matching the partition's centers.
#[derive(Debug, Clone, PartialEq)]
pub struct FuzzyVector {
    degrees: Vec<f64>,
    terms_per_feature: usize,
}

/// Fits a partition to observed values: `terms` evenly spaced centers
/// from the minimum to the maximum. A constant feature is widened to
/// centers `min + j * 1e-6` instead of being rejected.
pub fn build_partition(
    values: &[f64],
    feature_index: usize,
    terms: usize,
) -> Result<FuzzyPartition> {
    if terms < 2 {
        return Err(Error::BadTermCount(terms));
    }
    if values.is_empty() {
        return Err(Error::NoValues);
    }
    let lo = values.iter().cloned().fold(f64::INFINITY, f64::min);
    let hi = values.iter().cloned().fold(f64::NEG_INFINITY, f64::max);
    assert!(lo.is_finite() && hi.is_finite(), "values must be finite");

    let centers = if hi == lo {
        (0..terms)
            .map(|j| lo + j as f64 * DEGENERATE_STEP)
            .collect()
    } else {
        (0..terms)
            .map(|j| {
                if j == 0 {
                    lo
                } else if j == terms - 1 {
                    hi
                } else {
                    lo + (hi - lo) * (j as f64 / (terms - 1) as f64)
                }
            })
            .collect()
    };
    Ok(FuzzyPartition {
        feature_index,
        centers,
    })
}

/// Fits one partition per feature from a training dataset.
pub fn fit_partitions(data: &Dataset, terms: usize) -> Result<Vec<FuzzyPartition>> {
    if data.is_empty() {
        return Err(Error::EmptyTrainingSet);
    }
    (0..NUM_FEATURES)
        .map(|f| {
            let values: Vec<f64> = data.instances().iter().map(|i| i.features[f]).collect();
            build_partition(&values, f, terms)
        })
        .collect()
}

impl FuzzyPartition {
    pub fn feature_index(&self) -> usize {
        self.feature_index
    }

    pub fn centers(&self) -> &[f64] {
        &self.centers
    }

    /// Number of linguistic terms.
    pub fn terms(&self) -> usize {
        self.centers.len()
    }

    /// Membership degrees of a finite value in each term.
    ///
    /// Values at or beyond the extreme centers are fully in the extreme
    /// term; between adjacent centers the two surrounding terms share
    /// the degree linearly. The result always sums to 1.
    pub fn membership(&self, x: f64) -> Vec<f64> {
        assert!(x.is_finite(), "membership requires a finite value");
        let k = self.terms();
        let mut out = vec![0.0; k];
        if x <= self.centers[0] {
            out[0] = 1.0;
        } else if x >= self.centers[k - 1] {
            out[k - 1] = 1.0;
        } else {
            let j = (0..k - 1).find(|&j| x < self.centers[j + 1]).unwrap();
            let t = (x - self.centers[j]) / (self.centers[j + 1] - self.centers[j]);
            out[j] = 1.0 - t;
            out[j + 1] = t;
        }
        out
    }
}

impl FuzzyVector {
    /// Wraps raw degrees. Panics if the layout is inconsistent or any
    /// degree falls outside the unit interval.
    pub fn new(degrees: Vec<f64>, terms_per_feature: usize) -> Self {
        assert!(!degrees.is_empty(), "fuzzy vector must not be empty");
        assert!(
            terms_per_feature >= 2 && degrees.len().is_multiple_of(terms_per_feature),
            "degree count {} does not divide into blocks of {terms_per_feature}",
            degrees.len()
        );
        assert!(
            degrees
                .iter()
                .all(|d| d.is_finite() && (0.0..=1.0).contains(d)),
            "membership degrees must lie in [0,1]"
        );
        Self {
            degrees,
            terms_per_feature,
        }
    }

    pub fn dim(&self) -> usize {
        self.degrees.len()
    }

    pub fn terms_per_feature(&self) -> usize {
        self.terms_per_feature
    }

    pub fn degrees(&self) -> &[f64] {
        &self.degrees
    }

    /// The degrees of one feature's block.
    pub fn block(&self, feature: usize) -> &[f64] {
        let k = self.terms_per_feature;
        &self.degrees[feature * k..(feature + 1) * k]
    }

    /// Iterates over the per-feature blocks in feature order.
    pub fn blocks(&self) -> impl Iterator<Item = &[f64]> {
        self.degrees.chunks(self.terms_per_feature)
    }
}

/// Maps an instance to its membership vector: the concatenation of each
/// feature's degrees in feature order.
///
/// With `k` terms per feature the result has dimension `4 * k`.
pub fn fuzzify(inst: &Instance, partitions: &[FuzzyPartition]) -> FuzzyVector {
    assert_eq!(
        partitions.len(),
        NUM_FEATURES,
        "need one partition per feature"
    );
    let terms = partitions[0].terms();
    let mut degrees = Vec::with_capacity(NUM_FEATURES * terms);
    for (f, p) in partitions.iter().enumerate() {
        assert_eq!(p.feature_index(), f, "partitions must be in feature order");
        assert_eq!(p.terms(), terms, "partitions must share a term count");
        degrees.extend(p.membership(inst.features[f]));
    }
    FuzzyVector::new(degrees, terms)
}

/// Componentwise arithmetic mean of fuzzy vectors.
pub fn average_vector(vectors: &[FuzzyVector]) -> Result<FuzzyVector> {
    let first = vectors.first().ok_or(Error::NoValues)?;
    let dim = first.dim();
    let mut sums = vec![0.0; dim];
    for v in vectors {
        if v.dim() != dim {
            return Err(Error::DimensionMismatch {
                left: dim,
                right: v.dim(),
            });
        }
        for (s, d) in sums.iter_mut().zip(v.degrees()) {
            *s += d;
        }
    }
    let n = vectors.len() as f64;
    let degrees = sums.into_iter().map(|s| (s / n).clamp(0.0, 1.0)).collect();
    Ok(FuzzyVector::new(degrees, first.terms_per_feature()))
}
