//! Evaluation protocol for a selected validation subset: a naive ridge
//! logistic classifier, leave-one-out metric estimation, holdout metrics,
//! random-baseline confidence intervals, ratio sweeps, and synthetic data
//! generators for exercising the pipeline.
//!
//! Metrics are the two classification staples: the error rate (misclassified
//! over evaluated) and the sensitivity (true positives over actual
//! positives). The positive class is the lexicographically larger of the two
//! labels, so `"1" > "0"`, `"pos" > "neg"`, `"positive" > "negative"` all
//! land where one expects.

use ndarray::{Array1, Array2, ArrayView1};
use rand::seq::SliceRandom;
use rand::{Rng, RngCore, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;

use crate::dataset::Dataset;
use crate::error::{Error, Result};
use crate::sp_optimizer::OptimizerConfig;
use crate::spnn::{select_random, select_spnn, SelectionSize};

pub const DEFAULT_RIDGE_LAMBDA: f64 = 1e-3;
pub const DEFAULT_REPLICATES: usize = 200;
pub const MIN_REPLICATES: usize = 20;

const NEWTON_MAX_ITERS: usize = 200;
const NEWTON_GRAD_TOL: f64 = 1e-8;

/// Binary logistic classifier with an L2 penalty on the coefficients
/// (intercept unpenalized).
#[derive(Debug, Clone)]
pub struct LogisticModel {
    pub coefficients: Array1<f64>,
    pub intercept: f64,
    pub ridge_lambda: f64,
    /// Decision threshold; probabilities strictly above it classify as
    /// positive, a probability exactly at the threshold as negative.
    pub threshold: f64,
    /// Label treated as the positive class.
    pub positive_label: String,
}

impl LogisticModel {
    pub fn predict_proba(&self, x: ArrayView1<'_, f64>) -> f64 {
        let score = self.intercept + self.coefficients.dot(&x);
        sigmoid(score)
    }

    pub fn predict_positive(&self, x: ArrayView1<'_, f64>) -> bool {
        self.predict_proba(x) > self.threshold
    }
}

fn sigmoid(s: f64) -> f64 {
    if s >= 0.0 {
        1.0 / (1.0 + (-s).exp())
    } else {
        let e = s.exp();
        e / (1.0 + e)
    }
}

/// ln(1 + exp(s)) without overflow.
fn softplus(s: f64) -> f64 {
    if s > 0.0 {
        s + (-s).exp().ln_1p()
    } else {
        s.exp().ln_1p()
    }
}

/// The two class labels of a binary dataset, ordered (negative, positive).
pub fn binary_labels(data: &Dataset) -> Result<(String, String)> {
    let counts = data.class_counts();
    if counts.len() != 2 {
        return Err(Error::invalid_data(format!(
            "binary classification needs exactly 2 classes, found {}",
            counts.len()
        )));
    }
    let mut it = counts.keys();
    let negative = it.next().expect("two classes").clone();
    let positive = it.next().expect("two classes").clone();
    Ok((negative, positive))
}

fn penalized_nll(rows: &[&[f64]], y: &[f64], coefficients: &[f64], intercept: f64, lambda: f64) -> f64 {
    let mut nll = 0.0;
    for (xi, &yi) in rows.iter().zip(y) {
        let s = intercept + dot(coefficients, xi);
        nll += softplus(s) - yi * s;
    }
    nll + 0.5 * lambda * dot(coefficients, coefficients)
}

fn dot(a: &[f64], b: &[f64]) -> f64 {
    a.iter().zip(b).map(|(x, y)| x * y).sum()
}

/// Solve `A x = b` for symmetric positive-definite `A` via Cholesky.
/// `A` is a flat row-major `n x n` buffer; only its lower triangle is read.
/// Fails only on a non-positive pivot.
fn cholesky_solve(a: &mut [f64], mut b: Vec<f64>, n: usize) -> Option<Vec<f64>> {
    for j in 0..n {
        let mut diag = a[j * n + j];
        for k in 0..j {
            diag -= a[j * n + k] * a[j * n + k];
        }
        if diag <= 0.0 || !diag.is_finite() {
            return None;
        }
        let diag = diag.sqrt();
        a[j * n + j] = diag;
        for i in (j + 1)..n {
            let mut v = a[i * n + j];
            for k in 0..j {
                v -= a[i * n + k] * a[j * n + k];
            }
            a[i * n + j] = v / diag;
        }
    }
    // forward: L z = b
    for i in 0..n {
        let mut v = b[i];
        for k in 0..i {
            v -= a[i * n + k] * b[k];
        }
        b[i] = v / a[i * n + i];
    }
    // backward: L^T x = z
    for i in (0..n).rev() {
        let mut v = b[i];
        for k in (i + 1)..n {
            v -= a[k * n + i] * b[k];
        }
        b[i] = v / a[i * n + i];
    }
    Some(b)
}

/// Fit the ridge-penalized logistic model by damped Newton iteration.
///
/// Deterministic for fixed input: no randomness, fixed summation order.
/// Stops when the gradient infinity-norm drops below 1e-8 or after 200
/// iterations, whichever comes first.
pub fn fit_logistic(train: &Dataset, ridge_lambda: f64) -> Result<LogisticModel> {
    if ridge_lambda < 0.0 {
        return Err(Error::invalid_argument("ridge_lambda must be nonnegative"));
    }
    let (_, positive) = binary_labels(train)?;
    let y: Vec<f64> = train
        .labels()
        .iter()
        .map(|l| if *l == positive { 1.0 } else { 0.0 })
        .collect();
    let d = train.n_features();
    let flat = train
        .features()
        .to_slice()
        .map(<[f64]>::to_vec)
        .unwrap_or_else(|| train.features().iter().copied().collect());
    let rows: Vec<&[f64]> = flat.chunks_exact(d).collect();

    let p1 = d + 1; // parameter order: (intercept, coefficients...)
    let mut coefficients = vec![0.0_f64; d];
    let mut intercept = 0.0_f64;
    let mut nll = penalized_nll(&rows, &y, &coefficients, intercept, ridge_lambda);
    let mut grad = vec![0.0_f64; p1];
    let mut hess = vec![0.0_f64; p1 * p1];

    for _ in 0..NEWTON_MAX_ITERS {
        grad.fill(0.0);
        hess.fill(0.0);
        for (xi, &yi) in rows.iter().zip(&y) {
            let p = sigmoid(intercept + dot(&coefficients, xi));
            let r = p - yi;
            let q = p * (1.0 - p);
            grad[0] += r;
            hess[0] += q;
            for (g, &x) in grad[1..].iter_mut().zip(*xi) {
                *g += r * x;
            }
            for a in 0..d {
                let qa = q * xi[a];
                let row = &mut hess[(a + 1) * p1..(a + 1) * p1 + a + 2];
                row[0] += qa;
                for (h, &x) in row[1..].iter_mut().zip(&xi[..=a]) {
                    *h += qa * x;
                }
            }
        }
        for a in 0..d {
            grad[a + 1] += ridge_lambda * coefficients[a];
            hess[(a + 1) * p1 + a + 1] += ridge_lambda;
        }

        let grad_norm = grad.iter().fold(0.0_f64, |m, g| m.max(g.abs()));
        if grad_norm < NEWTON_GRAD_TOL {
            break;
        }

        // jitter ladder in case curvature collapses under separation
        let mut step = None;
        let mut jitter = 0.0;
        for _ in 0..6 {
            let mut h = hess.clone();
            if jitter > 0.0 {
                for a in 0..p1 {
                    h[a * p1 + a] += jitter;
                }
            }
            if let Some(s) = cholesky_solve(&mut h, grad.clone(), p1) {
                step = Some(s);
                break;
            }
            jitter = if jitter == 0.0 { 1e-12 } else { jitter * 1e3 };
        }
        let Some(step) = step else {
            return Err(Error::Internal(
                "logistic fit: Hessian factorization failed".into(),
            ));
        };

        // backtracking keeps the iteration monotone
        let mut t = 1.0;
        let mut accepted = false;
        for _ in 0..40 {
            let cand_intercept = intercept - t * step[0];
            let cand_coefficients: Vec<f64> = coefficients
                .iter()
                .zip(&step[1..])
                .map(|(c, s)| c - t * s)
                .collect();
            let cand_nll = penalized_nll(&rows, &y, &cand_coefficients, cand_intercept, ridge_lambda);
            if cand_nll <= nll {
                intercept = cand_intercept;
                coefficients = cand_coefficients;
                nll = cand_nll;
                accepted = true;
                break;
            }
            t *= 0.5;
        }
        if !accepted {
            break; // no descent direction left at this precision
        }
    }

    Ok(LogisticModel {
        coefficients: Array1::from_vec(coefficients),
        intercept,
        ridge_lambda,
        threshold: 0.5,
        positive_label: positive,
    })
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, serde::Serialize)]
pub enum MetricsSource {
    #[serde(rename = "loo-full")]
    LooFull,
    #[serde(rename = "loo-train")]
    LooTrain,
    #[serde(rename = "validation")]
    Validation,
    #[serde(rename = "baseline")]
    Baseline,
}

impl std::fmt::Display for MetricsSource {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        let s = match self {
            MetricsSource::LooFull => "loo-full",
            MetricsSource::LooTrain => "loo-train",
            MetricsSource::Validation => "validation",
            MetricsSource::Baseline => "baseline",
        };
        write!(f, "{s}")
    }
}

/// Classification quality numbers from one evaluation.
///
/// `error_rate` is `(fp + fn) / n_evaluated`; `sensitivity` is
/// `tp / (tp + fn)`, reported as `None` (never 0 or 1) when the evaluated
/// rows contain no positives.
#[derive(Debug, Clone, serde::Serialize)]
pub struct MetricsReport {
    #[serde(rename = "eps")]
    pub error_rate: f64,
    #[serde(rename = "tau")]
    pub sensitivity: Option<f64>,
    pub n_evaluated: usize,
    #[serde(rename = "tp")]
    pub true_positives: usize,
    #[serde(rename = "fn")]
    pub false_negatives: usize,
    #[serde(rename = "fp")]
    pub false_positives: usize,
    #[serde(rename = "tn")]
    pub true_negatives: usize,
    pub source: MetricsSource,
}

impl MetricsReport {
    /// Aggregate confusion counts into rates.
    pub fn from_counts(
        true_positives: usize,
        false_negatives: usize,
        false_positives: usize,
        true_negatives: usize,
        source: MetricsSource,
    ) -> MetricsReport {
        let n_evaluated = true_positives + false_negatives + false_positives + true_negatives;
        let error_rate = (false_positives + false_negatives) as f64 / n_evaluated as f64;
        let actual_positives = true_positives + false_negatives;
        let sensitivity = if actual_positives > 0 {
            Some(true_positives as f64 / actual_positives as f64)
        } else {
            None
        };
        MetricsReport {
            error_rate,
            sensitivity,
            n_evaluated,
            true_positives,
            false_negatives,
            false_positives,
            true_negatives,
            source,
        }
    }

    pub fn with_source(mut self, source: MetricsSource) -> MetricsReport {
        self.source = source;
        self
    }
}

fn tally(outcomes: &[(bool, bool)], source: MetricsSource) -> MetricsReport {
    let mut tp = 0;
    let mut fn_ = 0;
    let mut fp = 0;
    let mut tn = 0;
    for &(actual, predicted) in outcomes {
        match (actual, predicted) {
            (true, true) => tp += 1,
            (true, false) => fn_ += 1,
            (false, true) => fp += 1,
            (false, false) => tn += 1,
        }
    }
    MetricsReport::from_counts(tp, fn_, fp, tn, source)
}

/// Leave-one-out estimation: each row is predicted by a model fitted on
/// the other `N-1` rows. Requires every class to keep at least one row in
/// each fold, so classes need 2+ rows up front.
pub fn loo_metrics(data: &Dataset, ridge_lambda: f64) -> Result<MetricsReport> {
    if data.n_rows() < 3 {
        return Err(Error::invalid_data(
            "leave-one-out needs at least 3 rows",
        ));
    }
    let (_, positive) = binary_labels(data)?;
    for (label, count) in data.class_counts() {
        if count < 2 {
            return Err(Error::invalid_data(format!(
                "class `{label}` has {count} row(s); leave-one-out folds would lose it"
            )));
        }
    }
    let n = data.n_rows();
    let outcomes: Vec<(bool, bool)> = (0..n)
        .into_par_iter()
        .map(|held_out| {
            let train_positions: Vec<usize> = (0..n).filter(|&p| p != held_out).collect();
            let train = data.subset(&train_positions);
            let model = fit_logistic(&train, ridge_lambda)?;
            let actual = data.labels()[held_out] == positive;
            let predicted = model.predict_positive(data.row(held_out));
            Ok((actual, predicted))
        })
        .collect::<Result<_>>()?;
    Ok(tally(&outcomes, MetricsSource::LooFull))
}

/// Fit on `train`, score `validation`.
pub fn holdout_metrics(
    train: &Dataset,
    validation: &Dataset,
    ridge_lambda: f64,
) -> Result<MetricsReport> {
    if validation.n_rows() == 0 {
        return Err(Error::invalid_data("validation set is empty"));
    }
    let model = fit_logistic(train, ridge_lambda)?;
    let outcomes: Vec<(bool, bool)> = (0..validation.n_rows())
        .map(|i| {
            let actual = validation.labels()[i] == model.positive_label;
            (actual, model.predict_positive(validation.row(i)))
        })
        .collect();
    Ok(tally(&outcomes, MetricsSource::Validation))
}

/// Empirical 95% confidence interval over baseline replicates.
#[derive(Debug, Clone, serde::Serialize)]
pub struct BaselineCi {
    pub metric: String,
    pub lower: f64,
    pub upper: f64,
    pub replicates: usize,
    pub point_estimates: Vec<f64>,
}

impl BaselineCi {
    fn from_estimates(metric: &str, estimates: Vec<f64>) -> Result<BaselineCi> {
        if estimates.is_empty() {
            return Err(Error::invalid_data(format!(
                "metric `{metric}` was undefined in every replicate"
            )));
        }
        let mut sorted = estimates.clone();
        sorted.sort_by(f64::total_cmp);
        Ok(BaselineCi {
            metric: metric.to_string(),
            lower: quantile(&sorted, 0.025),
            upper: quantile(&sorted, 0.975),
            replicates: estimates.len(),
            point_estimates: estimates,
        })
    }

    pub fn half_width(&self) -> f64 {
        (self.upper - self.lower) / 2.0
    }
}

/// Linear-interpolation quantile on sorted data (the common "type 7" rule:
/// index `h = (n-1)p`, interpolate between the flanking order statistics).
pub fn quantile(sorted: &[f64], p: f64) -> f64 {
    let n = sorted.len();
    if n == 1 {
        return sorted[0];
    }
    let h = (n - 1) as f64 * p;
    let lo = h.floor() as usize;
    let hi = (lo + 1).min(n - 1);
    let frac = h - lo as f64;
    sorted[lo] + frac * (sorted[hi] - sorted[lo])
}

/// The four random-baseline confidence intervals at one ratio:
/// each replicate draws a stratified random split, then measures both the
/// holdout metrics on the validation part and the leave-one-out metrics on
/// the learning part.
#[derive(Debug, Clone)]
pub struct BaselineCis {
    pub eps_validation: BaselineCi,
    pub tau_validation: BaselineCi,
    pub eps_loo_train: BaselineCi,
    pub tau_loo_train: BaselineCi,
}

pub fn baseline_ci(
    data: &Dataset,
    size: SelectionSize,
    replicates: usize,
    seed: u64,
    ridge_lambda: f64,
) -> Result<BaselineCis> {
    if replicates < MIN_REPLICATES {
        return Err(Error::invalid_argument(format!(
            "need at least {MIN_REPLICATES} replicates, got {replicates}"
        )));
    }
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let replicate_seeds: Vec<u64> = (0..replicates).map(|_| rng.next_u64()).collect();

    let per_replicate: Vec<(f64, Option<f64>, f64, Option<f64>)> = replicate_seeds
        .par_iter()
        .map(|&rep_seed| {
            let selection = select_random(data, size, rep_seed)?;
            let (validation, train) = data.partition_rows(&selection.validation_ids)?;
            let holdout = holdout_metrics(&train, &validation, ridge_lambda)?
                .with_source(MetricsSource::Baseline);
            let loo = loo_metrics(&train, ridge_lambda)?.with_source(MetricsSource::Baseline);
            Ok((
                holdout.error_rate,
                holdout.sensitivity,
                loo.error_rate,
                loo.sensitivity,
            ))
        })
        .collect::<Result<_>>()?;

    let eps_val: Vec<f64> = per_replicate.iter().map(|r| r.0).collect();
    let tau_val: Vec<f64> = per_replicate.iter().filter_map(|r| r.1).collect();
    let eps_loo: Vec<f64> = per_replicate.iter().map(|r| r.2).collect();
    let tau_loo: Vec<f64> = per_replicate.iter().filter_map(|r| r.3).collect();
    Ok(BaselineCis {
        eps_validation: BaselineCi::from_estimates("eps-validation", eps_val)?,
        tau_validation: BaselineCi::from_estimates("tau-validation", tau_val)?,
        eps_loo_train: BaselineCi::from_estimates("eps-loo-train", eps_loo)?,
        tau_loo_train: BaselineCi::from_estimates("tau-loo-train", tau_loo)?,
    })
}

/// One row of the ratio-sweep comparison table.
#[derive(Debug, Clone)]
pub struct SweepRow {
    pub ratio: f64,
    pub nv: usize,
    pub eps_ref: f64,
    pub tau_ref: Option<f64>,
    pub eps_spnn_val: f64,
    pub tau_spnn_val: Option<f64>,
    pub eps_spnn_lootrain: f64,
    pub tau_spnn_lootrain: Option<f64>,
    pub eps_rand_lo: f64,
    pub eps_rand_hi: f64,
    pub tau_rand_lo: f64,
    pub tau_rand_hi: f64,
    pub eps_randloo_lo: f64,
    pub eps_randloo_hi: f64,
    pub tau_randloo_lo: f64,
    pub tau_randloo_hi: f64,
}

pub const SWEEP_CSV_HEADER: &str = "ratio,nv,eps_ref,tau_ref,eps_spnn_val,tau_spnn_val,\
eps_spnn_lootrain,tau_spnn_lootrain,eps_rand_lo,eps_rand_hi,tau_rand_lo,tau_rand_hi,\
eps_randloo_lo,eps_randloo_hi,tau_randloo_lo,tau_randloo_hi";

fn opt_cell(v: Option<f64>) -> String {
    v.map(|x| x.to_string()).unwrap_or_default()
}

/// Render sweep rows as the comparison-table CSV (LF endings, empty cell
/// for an undefined sensitivity).
pub fn sweep_csv(rows: &[SweepRow]) -> String {
    let mut out = String::from(SWEEP_CSV_HEADER);
    out.push('\n');
    for r in rows {
        out.push_str(&format!(
            "{},{},{},{},{},{},{},{},{},{},{},{},{},{},{},{}\n",
            r.ratio,
            r.nv,
            r.eps_ref,
            opt_cell(r.tau_ref),
            r.eps_spnn_val,
            opt_cell(r.tau_spnn_val),
            r.eps_spnn_lootrain,
            opt_cell(r.tau_spnn_lootrain),
            r.eps_rand_lo,
            r.eps_rand_hi,
            r.tau_rand_lo,
            r.tau_rand_hi,
            r.eps_randloo_lo,
            r.eps_randloo_hi,
            r.tau_randloo_lo,
            r.tau_randloo_hi,
        ));
    }
    out
}

/// Sweep validation ratios and compare the optimized selection against the
/// full-data reference and the random baseline.
///
/// Per ratio: the reference leave-one-out metrics on the full data (ratio
/// independent, computed once), the holdout metrics of the optimized
/// selection, the leave-one-out metrics on its learning remainder, and the
/// four random-baseline intervals. Selection and baseline seeds derive from
/// `config.seed` in ratio order, so the whole sweep replays exactly.
pub fn ratio_sweep(
    data: &Dataset,
    ratios: &[f64],
    config: &OptimizerConfig,
    replicates: usize,
    ridge_lambda: f64,
) -> Result<Vec<SweepRow>> {
    if ratios.is_empty() {
        return Err(Error::invalid_argument("ratio list is empty"));
    }
    let reference = loo_metrics(data, ridge_lambda)?;
    let mut rng = ChaCha8Rng::seed_from_u64(config.seed);
    let mut rows = Vec::with_capacity(ratios.len());
    for &ratio in ratios {
        let spnn_seed = rng.next_u64();
        let baseline_seed = rng.next_u64();
        let size = SelectionSize::Ratio(ratio);

        let selection = select_spnn(
            data,
            size,
            &OptimizerConfig {
                seed: spnn_seed,
                ..config.clone()
            },
        )?;
        let (validation, train) = data.partition_rows(&selection.validation_ids)?;
        let spnn_val = holdout_metrics(&train, &validation, ridge_lambda)?;
        let spnn_loo = loo_metrics(&train, ridge_lambda)?.with_source(MetricsSource::LooTrain);
        let cis = baseline_ci(data, size, replicates, baseline_seed, ridge_lambda)?;

        rows.push(SweepRow {
            ratio,
            nv: selection.validation_ids.len(),
            eps_ref: reference.error_rate,
            tau_ref: reference.sensitivity,
            eps_spnn_val: spnn_val.error_rate,
            tau_spnn_val: spnn_val.sensitivity,
            eps_spnn_lootrain: spnn_loo.error_rate,
            tau_spnn_lootrain: spnn_loo.sensitivity,
            eps_rand_lo: cis.eps_validation.lower,
            eps_rand_hi: cis.eps_validation.upper,
            tau_rand_lo: cis.tau_validation.lower,
            tau_rand_hi: cis.tau_validation.upper,
            eps_randloo_lo: cis.eps_loo_train.lower,
            eps_randloo_hi: cis.eps_loo_train.upper,
            tau_randloo_lo: cis.tau_loo_train.lower,
            tau_randloo_hi: cis.tau_loo_train.upper,
        });
    }
    Ok(rows)
}

/// Indicator-boundary label for the 2-D toy generator.
pub fn toy_label(x1: f64, x2: f64) -> bool {
    x1 * x1 - x1 * x2 - x1 - 3.0 > 0.0
}

/// 2-D toy dataset: both features uniform on [-10, 10], label 1 inside the
/// region `x1^2 - x1*x2 - x1 - 3 > 0`. Columns `x1`, `x2`; labels "0"/"1".
pub fn generate_toy(n: usize, seed: u64) -> Result<Dataset> {
    if n < 2 {
        return Err(Error::invalid_argument(format!(
            "toy dataset needs n >= 2, got {n}"
        )));
    }
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut features = Array2::zeros((n, 2));
    let mut labels = Vec::with_capacity(n);
    for i in 0..n {
        let x1 = rng.gen_range(-10.0..10.0);
        let x2 = rng.gen_range(-10.0..10.0);
        features[[i, 0]] = x1;
        features[[i, 1]] = x2;
        labels.push(if toy_label(x1, x2) { "1" } else { "0" }.to_string());
    }
    Dataset::new(
        features,
        labels,
        vec!["x1".into(), "x2".into()],
        (0..n).collect(),
    )
}

/// Synthetic stand-in for a small industrial classification table:
/// `n_positive` rows of class "pos" and the rest "neg", Gaussian features
/// with the class means pulled apart along the first three coordinates by
/// `separation` (total Euclidean gap). Overlap keeps the problem genuinely
/// noisy, so leave-one-out error rates stay away from zero.
pub fn generate_overlapping_classes(
    n: usize,
    d: usize,
    n_positive: usize,
    separation: f64,
    seed: u64,
) -> Result<Dataset> {
    if n < 2 || d == 0 || n_positive == 0 || n_positive >= n {
        return Err(Error::invalid_argument(
            "need n >= 2, d >= 1, and 0 < n_positive < n",
        ));
    }
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut labels: Vec<String> = (0..n)
        .map(|i| if i < n_positive { "pos" } else { "neg" }.to_string())
        .collect();
    labels.shuffle(&mut rng);

    let informative = d.min(3);
    let shift = separation / 2.0 / (informative as f64).sqrt();
    let normal = rand_distr::StandardNormal;
    let mut features = Array2::zeros((n, d));
    for i in 0..n {
        let sign = if labels[i] == "pos" { 1.0 } else { -1.0 };
        for j in 0..d {
            let noise: f64 = rng.sample(normal);
            features[[i, j]] = noise + if j < informative { sign * shift } else { 0.0 };
        }
    }
    let column_names = (1..=d).map(|j| format!("v{j}")).collect();
    Dataset::new(features, labels, column_names, (0..n).collect())
}
