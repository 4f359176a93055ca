//! Two-sample energy distance between point sets, with the candidate-only
//! surrogate that the support-point optimizer minimizes.
//!
//! For a candidate set `X` of size `m` and a data sample `Y` of size `n`,
//! the full squared energy distance is
//!
//! ```text
//! (2/(m*n)) * sum_{i,k} ||x_i - y_k||     (attraction)
//! - (1/m^2) * sum_{i,j} ||x_i - x_j||     (repulsion)
//! - (1/n^2) * sum_{k,l} ||y_k - y_l||     (constant)
//! ```
//!
//! The constant term does not depend on the candidate set, so the
//! optimization surrogate drops it: `surrogate = attraction - repulsion`.
//! Both estimators use V-statistics (zero diagonals included) and a fixed
//! row-major summation order, so repeated evaluations are bit-stable and
//! `surrogate` equals `attraction - repulsion` of the full estimator
//! exactly, term by term.

use ndarray::{Array2, ArrayView1, ArrayView2};

use crate::error::{Error, Result};

/// An ordered collection of points in a shared feature space (`m` rows of
/// dimension `d`). Entries must be finite and `m >= 1`.
#[derive(Debug, Clone)]
pub struct PointSet {
    points: Array2<f64>,
}

impl PointSet {
    pub fn new(points: Array2<f64>) -> Result<PointSet> {
        if points.nrows() == 0 {
            return Err(Error::invalid_data("point set must contain at least one point"));
        }
        if let Some(v) = points.iter().find(|v| !v.is_finite()) {
            return Err(Error::invalid_data(format!(
                "non-finite coordinate {v} in point set"
            )));
        }
        Ok(PointSet { points })
    }

    pub fn len(&self) -> usize {
        self.points.nrows()
    }

    pub fn is_empty(&self) -> bool {
        self.points.nrows() == 0
    }

    pub fn dim(&self) -> usize {
        self.points.ncols()
    }

    pub fn points(&self) -> ArrayView2<'_, f64> {
        self.points.view()
    }

    pub fn point(&self, i: usize) -> ArrayView1<'_, f64> {
        self.points.row(i)
    }

    pub fn into_inner(self) -> Array2<f64> {
        self.points
    }
}

/// Energy-distance value with its three components reported separately.
///
/// `value = attraction - repulsion - constant`; nonnegative up to numerical
/// noise when candidate and data dimensions agree.
#[derive(Debug, Clone, Copy, PartialEq, serde::Serialize)]
pub struct EnergyValue {
    pub value: f64,
    pub attraction: f64,
    pub repulsion: f64,
    pub constant: f64,
}

pub fn euclidean(a: ArrayView1<'_, f64>, b: ArrayView1<'_, f64>) -> f64 {
    let mut acc = 0.0;
    for (x, y) in a.iter().zip(b.iter()) {
        let diff = x - y;
        acc += diff * diff;
    }
    acc.sqrt()
}

/// Row-major double sum of pairwise distances between two sets.
/// Inner accumulation runs per candidate row; row sums are then added in
/// order, which fixes the floating-point result for given inputs.
fn cross_distance_sum(a: ArrayView2<'_, f64>, b: ArrayView2<'_, f64>) -> f64 {
    let mut total = 0.0;
    for i in 0..a.nrows() {
        let ai = a.row(i);
        let mut row_sum = 0.0;
        for k in 0..b.nrows() {
            row_sum += euclidean(ai, b.row(k));
        }
        total += row_sum;
    }
    total
}

fn check_dims(candidate: &PointSet, data: &PointSet) -> Result<()> {
    if candidate.dim() != data.dim() {
        return Err(Error::DimensionMismatch {
            left: candidate.dim(),
            right: data.dim(),
        });
    }
    Ok(())
}

/// Full two-sample energy-distance estimator between `candidate` and `data`.
pub fn energy_distance_full(candidate: &PointSet, data: &PointSet) -> Result<EnergyValue> {
    check_dims(candidate, data)?;
    let m = candidate.len() as f64;
    let n = data.len() as f64;
    let attraction = 2.0 / (m * n) * cross_distance_sum(candidate.points(), data.points());
    let repulsion = cross_distance_sum(candidate.points(), candidate.points()) / (m * m);
    let constant = cross_distance_sum(data.points(), data.points()) / (n * n);
    Ok(EnergyValue {
        value: attraction - repulsion - constant,
        attraction,
        repulsion,
        constant,
    })
}

/// Optimization surrogate: the full estimator without the data-only
/// constant term. Shares the exact summation order with
/// [`energy_distance_full`], so it equals `attraction - repulsion` of the
/// full value bitwise.
pub fn energy_surrogate(candidate: &PointSet, data: &PointSet) -> Result<f64> {
    check_dims(candidate, data)?;
    let m = candidate.len() as f64;
    let n = data.len() as f64;
    let attraction = 2.0 / (m * n) * cross_distance_sum(candidate.points(), data.points());
    let repulsion = cross_distance_sum(candidate.points(), candidate.points()) / (m * m);
    Ok(attraction - repulsion)
}
