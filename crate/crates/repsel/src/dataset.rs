//! Labeled tabular data: CSV ingestion, validation, feature
//! standardization, and class-wise partitioning.
//!
//! All selection and distance computations downstream run in standardized
//! (z-scored) feature space; a [`Standardizer`] fitted on the full dataset
//! carries the transform. Row identities survive every split: a sub-dataset
//! keeps the original `row_ids` of its parent.

use std::collections::BTreeMap;
use std::fmt::Write as _;
use std::path::Path;

use ndarray::{Array1, Array2, ArrayView1, ArrayView2};

use crate::error::{Error, Result};

/// Constant columns are assigned unit spread when the sample standard
/// deviation falls below this floor (relative to the column mean).
const ZERO_VARIANCE_FLOOR: f64 = 1e-12;

/// A labeled tabular dataset: `N` rows of `d` numeric features plus one
/// class label per row.
///
/// Immutable after construction. `row_ids` are stable identifiers assigned
/// at load time (`0..N-1` in file order); sub-datasets produced by
/// [`Dataset::split_by_class`] or [`Dataset::partition_rows`] keep the
/// original ids so selections always report positions in the source file.
#[derive(Debug, Clone)]
pub struct Dataset {
    features: Array2<f64>,
    labels: Vec<String>,
    column_names: Vec<String>,
    row_ids: Vec<usize>,
}

impl Dataset {
    /// Build a dataset from parts, checking shape alignment, finiteness,
    /// and row-id uniqueness.
    pub fn new(
        features: Array2<f64>,
        labels: Vec<String>,
        column_names: Vec<String>,
        row_ids: Vec<usize>,
    ) -> Result<Self> {
        let n = features.nrows();
        let d = features.ncols();
        if d == 0 {
            return Err(Error::invalid_data("dataset has no feature columns"));
        }
        if labels.len() != n || row_ids.len() != n {
            return Err(Error::invalid_data(format!(
                "misaligned dataset parts: {} feature rows, {} labels, {} row ids",
                n,
                labels.len(),
                row_ids.len()
            )));
        }
        if column_names.len() != d {
            return Err(Error::invalid_data(format!(
                "expected {} column names, got {}",
                d,
                column_names.len()
            )));
        }
        if let Some(v) = features.iter().find(|v| !v.is_finite()) {
            return Err(Error::invalid_data(format!(
                "non-finite feature value {v} in dataset"
            )));
        }
        let mut seen = std::collections::HashSet::with_capacity(n);
        for &id in &row_ids {
            if !seen.insert(id) {
                return Err(Error::invalid_data(format!("duplicate row id {id}")));
            }
        }
        Ok(Dataset {
            features,
            labels,
            column_names,
            row_ids,
        })
    }

    /// Load a dataset from a CSV file with a mandatory header row.
    ///
    /// `label_column` names the class column; every other column must hold
    /// finite numbers ('.' decimal separator). Rows keep file order and get
    /// `row_ids` `0..N-1`.
    pub fn load_csv(path: impl AsRef<Path>, label_column: &str) -> Result<Dataset> {
        let path = path.as_ref();
        let mut reader = csv::ReaderBuilder::new()
            .has_headers(true)
            .trim(csv::Trim::All)
            .from_path(path)
            .map_err(|e| match e.into_kind() {
                csv::ErrorKind::Io(source) => Error::Read {
                    path: path.to_path_buf(),
                    source,
                },
                other => Error::invalid_data(format!("{}: {other:?}", path.display())),
            })?;

        let headers: Vec<String> = reader
            .headers()
            .map_err(|e| Error::invalid_data(format!("{}: {e}", path.display())))?
            .iter()
            .map(str::to_string)
            .collect();
        if headers.is_empty() {
            return Err(Error::invalid_data(format!(
                "{}: empty header row",
                path.display()
            )));
        }
        let mut header_set = std::collections::HashSet::new();
        for h in &headers {
            if !header_set.insert(h) {
                return Err(Error::invalid_data(format!(
                    "{}: duplicate column `{h}` in header",
                    path.display()
                )));
            }
        }
        let label_idx = headers
            .iter()
            .position(|h| h == label_column)
            .ok_or_else(|| {
                Error::invalid_data(format!(
                    "{}: label column `{label_column}` not found in header",
                    path.display()
                ))
            })?;
        let column_names: Vec<String> = headers
            .iter()
            .enumerate()
            .filter(|&(i, _)| i != label_idx)
            .map(|(_, h)| h.clone())
            .collect();
        if column_names.is_empty() {
            return Err(Error::invalid_data(format!(
                "{}: no feature columns besides label `{label_column}`",
                path.display()
            )));
        }

        let d = column_names.len();
        let mut values: Vec<f64> = Vec::new();
        let mut labels: Vec<String> = Vec::new();
        for record in reader.records() {
            let record =
                record.map_err(|e| Error::invalid_data(format!("{}: {e}", path.display())))?;
            let line = record.position().map_or(0, |p| p.line());
            if record.len() != headers.len() {
                return Err(Error::invalid_data(format!(
                    "{}: row {line} has {} fields, expected {}",
                    path.display(),
                    record.len(),
                    headers.len()
                )));
            }
            for (i, field) in record.iter().enumerate() {
                if i == label_idx {
                    labels.push(field.to_string());
                    continue;
                }
                let parsed = field.parse::<f64>().ok().filter(|v| v.is_finite());
                match parsed {
                    Some(v) => values.push(v),
                    None => {
                        return Err(Error::BadCell {
                            row: line,
                            column: headers[i].clone(),
                            value: field.to_string(),
                        })
                    }
                }
            }
        }

        let n = labels.len();
        if n < 2 {
            return Err(Error::invalid_data(format!(
                "{}: need at least 2 data rows, found {n}",
                path.display()
            )));
        }
        let features = Array2::from_shape_vec((n, d), values)
            .map_err(|e| Error::Internal(format!("shape error: {e}")))?;
        Dataset::new(features, labels, column_names, (0..n).collect())
    }

    pub fn n_rows(&self) -> usize {
        self.features.nrows()
    }

    pub fn n_features(&self) -> usize {
        self.features.ncols()
    }

    pub fn features(&self) -> ArrayView2<'_, f64> {
        self.features.view()
    }

    pub fn row(&self, index: usize) -> ArrayView1<'_, f64> {
        self.features.row(index)
    }

    pub fn labels(&self) -> &[String] {
        &self.labels
    }

    pub fn column_names(&self) -> &[String] {
        &self.column_names
    }

    pub fn row_ids(&self) -> &[usize] {
        &self.row_ids
    }

    /// Class label -> row count, ordered by label.
    pub fn class_counts(&self) -> BTreeMap<String, usize> {
        let mut counts = BTreeMap::new();
        for label in &self.labels {
            *counts.entry(label.clone()).or_insert(0) += 1;
        }
        counts
    }

    /// Partition rows by class label. Each sub-dataset keeps the original
    /// `row_ids`; sizes sum to `N`.
    pub fn split_by_class(&self) -> BTreeMap<String, Dataset> {
        let mut groups: BTreeMap<String, Vec<usize>> = BTreeMap::new();
        for (pos, label) in self.labels.iter().enumerate() {
            groups.entry(label.clone()).or_default().push(pos);
        }
        groups
            .into_iter()
            .map(|(label, positions)| (label, self.subset(&positions)))
            .collect()
    }

    /// Sub-dataset from row positions (not row ids), keeping original ids.
    pub fn subset(&self, positions: &[usize]) -> Dataset {
        let d = self.n_features();
        let mut features = Array2::zeros((positions.len(), d));
        let mut labels = Vec::with_capacity(positions.len());
        let mut row_ids = Vec::with_capacity(positions.len());
        for (out, &pos) in positions.iter().enumerate() {
            features.row_mut(out).assign(&self.features.row(pos));
            labels.push(self.labels[pos].clone());
            row_ids.push(self.row_ids[pos]);
        }
        Dataset {
            features,
            labels,
            column_names: self.column_names.clone(),
            row_ids,
        }
    }

    /// Split into (selected, remainder) by original row ids.
    ///
    /// Rejects ids that do not exist in this dataset and duplicate ids.
    pub fn partition_rows(&self, ids: &[usize]) -> Result<(Dataset, Dataset)> {
        let id_to_pos: BTreeMap<usize, usize> = self
            .row_ids
            .iter()
            .enumerate()
            .map(|(pos, &id)| (id, pos))
            .collect();
        let mut chosen = vec![false; self.n_rows()];
        let mut selected_positions = Vec::with_capacity(ids.len());
        for &id in ids {
            let &pos = id_to_pos
                .get(&id)
                .ok_or_else(|| Error::invalid_data(format!("unknown row id {id}")))?;
            if chosen[pos] {
                return Err(Error::invalid_data(format!("duplicate row id {id}")));
            }
            chosen[pos] = true;
            selected_positions.push(pos);
        }
        let remainder_positions: Vec<usize> =
            (0..self.n_rows()).filter(|&p| !chosen[p]).collect();
        Ok((
            self.subset(&selected_positions),
            self.subset(&remainder_positions),
        ))
    }

    /// Serialize to CSV with features first and the label column last,
    /// LF line endings, round-trip float formatting.
    pub fn to_csv_string(&self, label_column: &str) -> String {
        let mut out = String::new();
        for name in &self.column_names {
            out.push_str(name);
            out.push(',');
        }
        out.push_str(label_column);
        out.push('\n');
        for (pos, label) in self.labels.iter().enumerate() {
            for v in self.features.row(pos) {
                let _ = write!(out, "{v},");
            }
            out.push_str(label);
            out.push('\n');
        }
        out
    }
}

/// Column-wise z-score transform fitted on a dataset.
///
/// Means and standard deviations use the sample convention (divisor `N-1`).
/// Constant columns get unit standard deviation so they contribute nothing
/// to distances instead of dividing by zero.
#[derive(Debug, Clone)]
pub struct Standardizer {
    means: Array1<f64>,
    stddevs: Array1<f64>,
}

impl Standardizer {
    pub fn fit(data: &Dataset) -> Result<Standardizer> {
        let n = data.n_rows();
        if n < 2 {
            return Err(Error::invalid_data(
                "standardizer needs at least 2 rows to estimate spread",
            ));
        }
        let d = data.n_features();
        let mut means = Array1::zeros(d);
        let mut stddevs = Array1::zeros(d);
        for j in 0..d {
            let column = data.features.column(j);
            let mean = column.iter().sum::<f64>() / n as f64;
            let ss = column.iter().map(|v| (v - mean) * (v - mean)).sum::<f64>();
            let std = (ss / (n - 1) as f64).sqrt();
            means[j] = mean;
            stddevs[j] = if std <= ZERO_VARIANCE_FLOOR * (1.0 + mean.abs()) {
                1.0
            } else {
                std
            };
        }
        Ok(Standardizer { means, stddevs })
    }

    pub fn means(&self) -> ArrayView1<'_, f64> {
        self.means.view()
    }

    pub fn stddevs(&self) -> ArrayView1<'_, f64> {
        self.stddevs.view()
    }

    /// Map features into standardized space: `(x - mean) / stddev` per column.
    pub fn transform(&self, features: ArrayView2<'_, f64>) -> Result<Array2<f64>> {
        self.check_dim(features.ncols())?;
        let mut out = features.to_owned();
        for mut row in out.rows_mut() {
            for (j, v) in row.iter_mut().enumerate() {
                *v = (*v - self.means[j]) / self.stddevs[j];
            }
        }
        Ok(out)
    }

    /// Invert [`Standardizer::transform`].
    pub fn inverse(&self, standardized: ArrayView2<'_, f64>) -> Result<Array2<f64>> {
        self.check_dim(standardized.ncols())?;
        let mut out = standardized.to_owned();
        for mut row in out.rows_mut() {
            for (j, v) in row.iter_mut().enumerate() {
                *v = *v * self.stddevs[j] + self.means[j];
            }
        }
        Ok(out)
    }

    fn check_dim(&self, ncols: usize) -> Result<()> {
        if ncols != self.means.len() {
            return Err(Error::DimensionMismatch {
                left: self.means.len(),
                right: ncols,
            });
        }
        Ok(())
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;
    use std::io::Write;

    fn csv_file(content: &str) -> tempfile::NamedTempFile {
        let mut f = tempfile::NamedTempFile::new().unwrap();
        f.write_all(content.as_bytes()).unwrap();
        f
    }

    fn toy(labels: &[&str], rows: &[[f64; 2]]) -> Dataset {
        let mut features = Array2::zeros((rows.len(), 2));
        for (i, r) in rows.iter().enumerate() {
            features[[i, 0]] = r[0];
            features[[i, 1]] = r[1];
        }
        Dataset::new(
            features,
            labels.iter().map(|s| s.to_string()).collect(),
            vec!["a".into(), "b".into()],
            (0..rows.len()).collect(),
        )
        .unwrap()
    }

    #[test]
    fn loads_three_row_file() {
        let f = csv_file("a,b,y\n1,2,0\n3,4,1\n5,6,0\n");
        let data = Dataset::load_csv(f.path(), "y").unwrap();
        assert_eq!(data.n_rows(), 3);
        assert_eq!(data.n_features(), 2);
        assert_eq!(data.column_names(), ["a", "b"]);
        assert_eq!(data.labels(), ["0", "1", "0"]);
        assert_eq!(data.row_ids(), [0, 1, 2]);
        assert_eq!(data.features()[[1, 0]], 3.0);
    }

    #[test]
    fn single_class_file_loads() {
        let f = csv_file("a,b,y\n1,2,0\n3,4,0\n");
        let data = Dataset::load_csv(f.path(), "y").unwrap();
        assert_eq!(data.class_counts().len(), 1);
    }

    #[test]
    fn nan_cell_reports_row_and_column() {
        let f = csv_file("a,b,y\n1,2,0\n1,NaN,1\n3,4,0\n");
        let err = Dataset::load_csv(f.path(), "y").unwrap_err();
        match err {
            Error::BadCell { row, column, value } => {
                assert_eq!(row, 3); // header is line 1
                assert_eq!(column, "b");
                assert_eq!(value, "NaN");
            }
            other => panic!("expected BadCell, got {other:?}"),
        }
    }

    #[test]
    fn missing_file_is_read_error() {
        let err = Dataset::load_csv("/nonexistent/input.csv", "y").unwrap_err();
        assert!(matches!(err, Error::Read { .. }));
    }

    #[test]
    fn missing_label_column_rejected() {
        let f = csv_file("a,b,y\n1,2,0\n3,4,1\n");
        let err = Dataset::load_csv(f.path(), "label").unwrap_err();
        assert!(err.to_string().contains("label"));
    }

    #[test]
    fn duplicate_header_rejected() {
        let f = csv_file("a,a,y\n1,2,0\n3,4,1\n");
        let err = Dataset::load_csv(f.path(), "y").unwrap_err();
        assert!(err.to_string().contains("duplicate column"));
    }

    #[test]
    fn fewer_than_two_rows_rejected() {
        let f = csv_file("a,b,y\n1,2,0\n");
        let err = Dataset::load_csv(f.path(), "y").unwrap_err();
        assert!(err.to_string().contains("at least 2"));
    }

    #[test]
    fn label_only_file_rejected() {
        let f = csv_file("y\n0\n1\n");
        let err = Dataset::load_csv(f.path(), "y").unwrap_err();
        assert!(err.to_string().contains("no feature columns"));
    }

    #[test]
    fn standardizer_two_point_column() {
        let data = toy(&["0", "1"], &[[0.0, 5.0], [2.0, 5.0]]);
        let s = Standardizer::fit(&data).unwrap();
        assert_eq!(s.means()[0], 1.0);
        assert!((s.stddevs()[0] - 2.0_f64.sqrt()).abs() < 1e-15);
        // constant column gets stddev 1
        assert_eq!(s.means()[1], 5.0);
        assert_eq!(s.stddevs()[1], 1.0);
    }

    #[test]
    fn standardizer_symmetric_column() {
        let data = toy(&["0", "1", "0"], &[[-10.0, 0.0], [0.0, 0.0], [10.0, 0.0]]);
        let s = Standardizer::fit(&data).unwrap();
        assert_eq!(s.means()[0], 0.0);
        assert_eq!(s.stddevs()[0], 10.0);
    }

    #[test]
    fn split_by_class_partitions_row_ids() {
        let data = toy(
            &["x", "y", "x", "y", "x"],
            &[[0.0, 0.0], [1.0, 1.0], [2.0, 2.0], [3.0, 3.0], [4.0, 4.0]],
        );
        let parts = data.split_by_class();
        assert_eq!(parts.len(), 2);
        assert_eq!(parts["x"].row_ids(), [0, 2, 4]);
        assert_eq!(parts["y"].row_ids(), [1, 3]);
        let total: usize = parts.values().map(Dataset::n_rows).sum();
        assert_eq!(total, data.n_rows());
    }

    #[test]
    fn split_single_class_is_identity() {
        let data = toy(&["q", "q"], &[[0.0, 0.0], [1.0, 1.0]]);
        let parts = data.split_by_class();
        assert_eq!(parts.len(), 1);
        assert_eq!(parts["q"].n_rows(), 2);
    }

    #[test]
    fn partition_rows_rejects_unknown_and_duplicate_ids() {
        let data = toy(&["0", "1"], &[[0.0, 0.0], [1.0, 1.0]]);
        assert!(data.partition_rows(&[5]).is_err());
        assert!(data.partition_rows(&[0, 0]).is_err());
        let (sel, rest) = data.partition_rows(&[1]).unwrap();
        assert_eq!(sel.row_ids(), [1]);
        assert_eq!(rest.row_ids(), [0]);
    }

    #[test]
    fn csv_round_trip_preserves_values() {
        let data = toy(&["0", "1"], &[[0.1, -2.5e-3], [1.0 / 3.0, 7.25]]);
        let f = csv_file(&data.to_csv_string("y"));
        let back = Dataset::load_csv(f.path(), "y").unwrap();
        assert_eq!(back.features(), data.features());
        assert_eq!(back.labels(), data.labels());
    }

    proptest! {
        #[test]
        fn standardize_round_trip(rows in proptest::collection::vec(
            proptest::array::uniform3(-1e6_f64..1e6), 2..40,
        )) {
            let n = rows.len();
            let mut features = Array2::zeros((n, 3));
            for (i, r) in rows.iter().enumerate() {
                for j in 0..3 {
                    features[[i, j]] = r[j];
                }
            }
            let data = Dataset::new(
                features.clone(),
                vec!["0".to_string(); n],
                vec!["a".into(), "b".into(), "c".into()],
                (0..n).collect(),
            ).unwrap();
            let s = Standardizer::fit(&data).unwrap();
            let z = s.transform(data.features()).unwrap();
            let back = s.inverse(z.view()).unwrap();
            for (orig, rec) in features.iter().zip(back.iter()) {
                let tol = 1e-12 * orig.abs().max(1.0);
                prop_assert!((orig - rec).abs() <= tol,
                    "round trip {orig} -> {rec}");
            }
        }

        #[test]
        fn standardized_columns_are_centered_unit(rows in proptest::collection::vec(
            proptest::array::uniform2(-1e3_f64..1e3), 3..60,
        )) {
            let n = rows.len();
            let mut features = Array2::zeros((n, 2));
            for (i, r) in rows.iter().enumerate() {
                features[[i, 0]] = r[0];
                features[[i, 1]] = r[1];
            }
            let data = Dataset::new(
                features,
                vec!["0".to_string(); n],
                vec!["a".into(), "b".into()],
                (0..n).collect(),
            ).unwrap();
            let s = Standardizer::fit(&data).unwrap();
            let z = s.transform(data.features()).unwrap();
            for j in 0..2 {
                if s.stddevs()[j] == 1.0 && data.features().column(j).iter()
                    .all(|v| *v == data.features()[[0, j]]) {
                    continue; // constant column: centered only
                }
                let col = z.column(j);
                let mean = col.iter().sum::<f64>() / n as f64;
                let var = col.iter().map(|v| (v - mean) * (v - mean)).sum::<f64>()
                    / (n - 1) as f64;
                prop_assert!(mean.abs() < 1e-10);
                prop_assert!((var.sqrt() - 1.0).abs() < 1e-10);
            }
        }
    }
}
