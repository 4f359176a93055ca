//! Support-point optimization: minimize the energy surrogate over a set of
//! free points with a majorize-minimize (convex-concave) iteration.
//!
//! The surrogate is a difference of convex functions in the stacked points:
//! the attraction term is convex, the repulsion term concave. Each sweep
//! majorizes the attraction quadratically and linearizes the repulsion at
//! the current iterate; the majorizer separates per point and minimizes in
//! closed form ([`mm_update_point`]). All points update simultaneously from
//! the previous iterate, which keeps the run deterministic and preserves
//! the monotone-descent guarantee of the majorizer.
//!
//! With one free point and no repulsion the update degenerates to a
//! Weiszfeld step toward the geometric median of the batch.

use ndarray::{Array1, Array2};
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

use crate::energy::{energy_surrogate, euclidean, PointSet};
use crate::error::{Error, Result};

/// Rows per resampled batch above which the automatic policy caps the
/// batch instead of using the full sample.
pub const AUTO_BATCH_CAP: usize = 10_000;

/// Batch policy for one optimizer run.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum BatchSize {
    /// Full sample when `n <= AUTO_BATCH_CAP`, otherwise `AUTO_BATCH_CAP` rows.
    Auto,
    /// Always the full sample.
    Full,
    /// A fixed number of rows (must be `<= n` and `>= 1`).
    Size(usize),
}

#[derive(Debug, Clone)]
pub struct OptimizerConfig {
    /// Number of free points to optimize.
    pub n_points: usize,
    pub max_iters: usize,
    /// Convergence threshold on the max per-point infinity-norm move,
    /// in standardized space.
    pub tol: f64,
    pub batch_size: BatchSize,
    /// `None` resolves to `true` exactly when the resolved batch is smaller
    /// than the sample.
    pub resample: Option<bool>,
    pub seed: u64,
    /// Floor applied to every pairwise distance in the update, so
    /// coincident points stay finite.
    pub distance_floor: f64,
}

impl OptimizerConfig {
    pub fn new(n_points: usize) -> OptimizerConfig {
        OptimizerConfig {
            n_points,
            max_iters: 500,
            tol: 1e-6,
            batch_size: BatchSize::Auto,
            resample: None,
            seed: 0,
            distance_floor: 1e-10,
        }
    }

    pub fn with_seed(mut self, seed: u64) -> OptimizerConfig {
        self.seed = seed;
        self
    }

    fn validate(&self, n: usize) -> Result<(usize, bool)> {
        if self.n_points == 0 {
            return Err(Error::invalid_argument("n_points must be at least 1"));
        }
        if self.n_points > n {
            return Err(Error::invalid_argument(format!(
                "n_points {} exceeds data size {n}",
                self.n_points
            )));
        }
        if self.max_iters == 0 {
            return Err(Error::invalid_argument("max_iters must be at least 1"));
        }
        if !self.tol.is_finite() || self.tol <= 0.0 {
            return Err(Error::invalid_argument("tol must be positive"));
        }
        if !self.distance_floor.is_finite() || self.distance_floor <= 0.0 {
            return Err(Error::invalid_argument("distance_floor must be positive"));
        }
        let batch = match self.batch_size {
            BatchSize::Auto => n.min(AUTO_BATCH_CAP),
            BatchSize::Full => n,
            BatchSize::Size(0) => {
                return Err(Error::invalid_argument("batch_size must be at least 1"))
            }
            BatchSize::Size(b) if b > n => {
                return Err(Error::invalid_argument(format!(
                    "batch_size {b} exceeds data size {n}"
                )))
            }
            BatchSize::Size(b) => b,
        };
        let resample = self.resample.unwrap_or(batch < n);
        Ok((batch, resample))
    }
}

/// Diagnostics from one optimizer run.
///
/// `surrogate_history` holds full-sample surrogate evaluations: every
/// iteration when the batch is the full sample, otherwise every 10th
/// iteration (the initial and final states are always recorded).
#[derive(Debug, Clone)]
pub struct OptimizerTrace {
    pub iterations: usize,
    pub surrogate_history: Vec<f64>,
    pub converged: bool,
    pub final_max_move: f64,
}

/// Draw `n_points` distinct rows uniformly without replacement, seeded by
/// `config.seed`. Two calls with the same config and data agree exactly.
pub fn init_points(data: &PointSet, config: &OptimizerConfig) -> Result<PointSet> {
    config.validate(data.len())?;
    let mut rng = ChaCha8Rng::seed_from_u64(config.seed);
    let idx = rand::seq::index::sample(&mut rng, data.len(), config.n_points);
    Ok(gather(data, idx.iter()))
}

fn gather(data: &PointSet, rows: impl IntoIterator<Item = usize>) -> PointSet {
    let rows: Vec<usize> = rows.into_iter().collect();
    let mut out = Array2::zeros((rows.len(), data.dim()));
    for (i, &r) in rows.iter().enumerate() {
        out.row_mut(i).assign(&data.point(r));
    }
    PointSet::new(out).expect("gather preserves finiteness")
}

/// Closed-form majorize-minimize update of point `i`.
///
/// With batch `y_1..y_B`, current points `x_1..x_m`, and distance floor `d`,
/// the regular case is
///
/// ```text
/// x_i <- [ (B/m) * sum_{j!=i} (x_i - x_j)/max(||x_i - x_j||, d)
///          + sum_k y_k / max(||x_i - y_k||, d) ]
///        / sum_k 1 / max(||x_i - y_k||, d)
/// ```
///
/// Batch points within the floor of `x_i` (always the case right after
/// initialization, which copies dataset rows) are excluded from the floored
/// quotients: their floored weight `1/d` would dwarf every other term and
/// freeze the iterate in place. Instead their norms stay exact in the
/// majorizer, which turns the minimization into a proximal shrinkage of the
/// regular-term solution toward the current position. The point stays put
/// only when the pull of the remaining terms is weaker than the coincident
/// mass, the vertex-optimality condition of the geometric median. Monotone
/// descent of the surrogate is preserved exactly.
pub fn mm_update_point(
    i: usize,
    current: &PointSet,
    batch: &PointSet,
    config: &OptimizerConfig,
) -> Result<Array1<f64>> {
    if batch.is_empty() {
        return Err(Error::invalid_argument("batch must not be empty"));
    }
    if current.dim() != batch.dim() {
        return Err(Error::DimensionMismatch {
            left: current.dim(),
            right: batch.dim(),
        });
    }
    if i >= current.len() {
        return Err(Error::invalid_argument(format!(
            "point index {i} out of range for {} points",
            current.len()
        )));
    }
    let floor = config.distance_floor;
    let xi = current.point(i);
    let d = current.dim();
    let m = current.len() as f64;
    let b = batch.len() as f64;

    let mut pull = Array1::<f64>::zeros(d);
    // repulsion: push away from the other current points
    for j in 0..current.len() {
        if j == i {
            continue;
        }
        let xj = current.point(j);
        let dist = euclidean(xi, xj).max(floor);
        let w = b / m / dist;
        for k in 0..d {
            pull[k] += w * (xi[k] - xj[k]);
        }
    }
    // attraction: pull toward the batch, Weiszfeld-weighted
    let mut weight_sum = 0.0;
    let mut coincident = 0.0_f64;
    for r in 0..batch.len() {
        let y = batch.point(r);
        let dist = euclidean(xi, y);
        if dist <= floor {
            coincident += 1.0;
            continue;
        }
        let w = 1.0 / dist;
        weight_sum += w;
        for k in 0..d {
            pull[k] += w * y[k];
        }
    }

    if coincident == 0.0 {
        return Ok(pull / weight_sum);
    }
    if weight_sum == 0.0 {
        // entire batch sits on x_i; nowhere better to go
        return Ok(xi.to_owned());
    }
    // proximal step: minimize (W/2)||x - z||^2 + c*||x - x_i|| with
    // z the regular-term solution and c the coincident mass
    let z = pull / weight_sum;
    let mut gap = 0.0;
    for k in 0..d {
        let diff = z[k] - xi[k];
        gap += diff * diff;
    }
    let gap = gap.sqrt();
    if weight_sum * gap <= coincident {
        return Ok(xi.to_owned());
    }
    let shrink = 1.0 - coincident / (weight_sum * gap);
    let mut out = Array1::<f64>::zeros(d);
    for k in 0..d {
        out[k] = xi[k] + shrink * (z[k] - xi[k]);
    }
    Ok(out)
}

/// Run the majorize-minimize iteration to convergence or `max_iters`.
///
/// Updates are simultaneous: every point's new position is computed from
/// the previous iterate before any is applied. When resampling is active a
/// fresh uniform-without-replacement batch is drawn each iteration from the
/// config-seeded generator, after the initial-points draw.
pub fn optimize(data: &PointSet, config: &OptimizerConfig) -> Result<(PointSet, OptimizerTrace)> {
    let n = data.len();
    let (batch_size, resample) = config.validate(n)?;

    let mut rng = ChaCha8Rng::seed_from_u64(config.seed);
    let init_idx = rand::seq::index::sample(&mut rng, n, config.n_points);
    let mut current = gather(data, init_idx.iter());

    let full_batch = batch_size == n;
    // without resampling, a sub-sample batch is drawn once and reused
    let fixed_batch = if !full_batch && !resample {
        Some(gather(
            data,
            rand::seq::index::sample(&mut rng, n, batch_size).iter(),
        ))
    } else {
        None
    };

    let mut history = vec![energy_surrogate(&current, data)?];
    let mut last_recorded = 0usize;
    let mut iterations = 0usize;
    let mut converged = false;
    let mut final_max_move = f64::INFINITY;

    for iter in 1..=config.max_iters {
        let batch_storage;
        let batch: &PointSet = if full_batch {
            data
        } else if resample {
            batch_storage = gather(
                data,
                rand::seq::index::sample(&mut rng, n, batch_size).iter(),
            );
            &batch_storage
        } else {
            fixed_batch.as_ref().expect("fixed batch drawn above")
        };

        let mut next = Array2::zeros((current.len(), current.dim()));
        for i in 0..current.len() {
            let updated = mm_update_point(i, &current, batch, config)?;
            next.row_mut(i).assign(&updated);
        }

        let mut max_move = 0.0_f64;
        for i in 0..current.len() {
            for k in 0..current.dim() {
                max_move = max_move.max((next[[i, k]] - current.point(i)[k]).abs());
            }
        }
        current = PointSet::new(next)?;
        iterations = iter;
        final_max_move = max_move;

        if full_batch || iter % 10 == 0 {
            history.push(energy_surrogate(&current, data)?);
            last_recorded = iter;
        }
        if max_move < config.tol {
            converged = true;
            break;
        }
    }
    if last_recorded != iterations {
        history.push(energy_surrogate(&current, data)?);
    }

    Ok((
        current,
        OptimizerTrace {
            iterations,
            surrogate_history: history,
            converged,
            final_max_move,
        },
    ))
}

#[cfg(test)]
mod tests {
    use super::*;
    use ndarray::arr2;
    use rand::Rng;

    fn one_d(values: &[f64]) -> PointSet {
        PointSet::new(Array2::from_shape_vec((values.len(), 1), values.to_vec()).unwrap())
            .unwrap()
    }

    fn two_clusters(per_cluster: usize, spread: f64) -> PointSet {
        let mut vals = Vec::with_capacity(2 * per_cluster);
        for i in 0..per_cluster {
            vals.push(spread * i as f64 / per_cluster as f64);
        }
        for i in 0..per_cluster {
            vals.push(10.0 + spread * i as f64 / per_cluster as f64);
        }
        one_d(&vals)
    }

    #[test]
    fn init_draws_all_rows_when_exhaustive() {
        let data = one_d(&[3.0, 1.0, 2.0]);
        let cfg = OptimizerConfig::new(3).with_seed(5);
        let init = init_points(&data, &cfg).unwrap();
        let mut got: Vec<f64> = init.points().column(0).to_vec();
        got.sort_by(f64::total_cmp);
        assert_eq!(got, vec![1.0, 2.0, 3.0]);
    }

    #[test]
    fn init_single_point_is_a_dataset_row() {
        let data = one_d(&[3.0, 1.0, 2.0]);
        let cfg = OptimizerConfig::new(1).with_seed(11);
        let init = init_points(&data, &cfg).unwrap();
        assert!(data.points().column(0).iter().any(|v| *v == init.points()[[0, 0]]));
    }

    #[test]
    fn init_is_deterministic_under_seed() {
        let data = one_d(&[0.0, 1.0, 2.0, 3.0, 4.0]);
        let cfg = OptimizerConfig::new(3).with_seed(7);
        let a = init_points(&data, &cfg).unwrap();
        let b = init_points(&data, &cfg).unwrap();
        assert_eq!(a.points(), b.points());
    }

    #[test]
    fn init_rejects_oversized_draw() {
        let data = one_d(&[0.0, 1.0]);
        let cfg = OptimizerConfig::new(3);
        assert!(init_points(&data, &cfg).is_err());
    }

    #[test]
    fn single_point_update_returns_single_batch_point() {
        let current = one_d(&[5.0]);
        let batch = one_d(&[-2.0]);
        let cfg = OptimizerConfig::new(1);
        let updated = mm_update_point(0, &current, &batch, &cfg).unwrap();
        assert_eq!(updated[0], -2.0);
    }

    #[test]
    fn weiszfeld_fixed_point_of_symmetric_batch() {
        // x = 0.5 between batch points -1 and +1:
        // (-1/1.5 + 1/0.5) / (1/1.5 + 1/0.5) = 0.5
        let current = one_d(&[0.5]);
        let batch = one_d(&[-1.0, 1.0]);
        let cfg = OptimizerConfig::new(1);
        let updated = mm_update_point(0, &current, &batch, &cfg).unwrap();
        assert!((updated[0] - 0.5).abs() < 1e-15);
    }

    #[test]
    fn coincident_point_stays_finite() {
        let current = PointSet::new(arr2(&[[0.0, 0.0], [1.0, 1.0]])).unwrap();
        let batch = PointSet::new(arr2(&[[0.0, 0.0], [2.0, 2.0]])).unwrap();
        let cfg = OptimizerConfig::new(2);
        let updated = mm_update_point(0, &current, &batch, &cfg).unwrap();
        assert!(updated.iter().all(|v| v.is_finite()));
    }

    #[test]
    fn empty_batch_rejected() {
        let current = one_d(&[0.0]);
        let cfg = OptimizerConfig::new(1);
        let empty = PointSet::new(Array2::zeros((0, 1)));
        assert!(empty.is_err()); // cannot even construct; guard stays for the contract
        let batch = one_d(&[1.0]);
        assert!(mm_update_point(3, &current, &batch, &cfg).is_err());
    }

    #[test]
    fn two_cluster_points_land_near_cluster_medians() {
        let data = two_clusters(50, 0.4);
        let cfg = OptimizerConfig::new(2).with_seed(3);
        let (points, trace) = optimize(&data, &cfg).unwrap();
        assert!(trace.converged);
        let mut got: Vec<f64> = points.points().column(0).to_vec();
        got.sort_by(f64::total_cmp);
        assert!((got[0] - 0.2).abs() < 0.5, "low cluster point at {}", got[0]);
        assert!((got[1] - 10.2).abs() < 0.5, "high cluster point at {}", got[1]);
    }

    #[test]
    fn full_batch_run_descends_from_init() {
        let data = two_clusters(20, 1.0);
        let cfg = OptimizerConfig::new(40).with_seed(9); // n_points = data size
        let (_, trace) = optimize(&data, &cfg).unwrap();
        let first = trace.surrogate_history.first().unwrap();
        let last = trace.surrogate_history.last().unwrap();
        assert!(last <= first);
    }

    #[test]
    fn full_batch_history_is_nonincreasing() {
        let mut rng = ChaCha8Rng::seed_from_u64(123);
        for _ in 0..5 {
            let n = rng.gen_range(10..60);
            let d = rng.gen_range(1..4);
            let mut pts = Array2::zeros((n, d));
            for v in pts.iter_mut() {
                *v = rng.gen_range(-5.0..5.0);
            }
            let data = PointSet::new(pts).unwrap();
            let cfg = OptimizerConfig {
                max_iters: 80,
                ..OptimizerConfig::new((n / 3).max(1)).with_seed(rng.gen())
            };
            let (_, trace) = optimize(&data, &cfg).unwrap();
            for w in trace.surrogate_history.windows(2) {
                assert!(
                    w[1] <= w[0] + 1e-8,
                    "surrogate increased: {} -> {}",
                    w[0],
                    w[1]
                );
            }
        }
    }

    #[test]
    fn fixed_batch_without_resampling_runs_deterministically() {
        let data = two_clusters(40, 1.0);
        let cfg = OptimizerConfig {
            batch_size: BatchSize::Size(25),
            resample: Some(false),
            max_iters: 60,
            ..OptimizerConfig::new(3).with_seed(6)
        };
        let (a, ta) = optimize(&data, &cfg).unwrap();
        let (b, _) = optimize(&data, &cfg).unwrap();
        assert_eq!(a.points(), b.points());
        assert!(ta.iterations >= 1);
        assert!(a.points().iter().all(|v| v.is_finite()));
    }

    #[test]
    fn fixed_seed_resampling_is_bit_identical() {
        let data = two_clusters(30, 1.0);
        let cfg = OptimizerConfig {
            batch_size: BatchSize::Size(20),
            resample: Some(true),
            max_iters: 60,
            ..OptimizerConfig::new(4).with_seed(21)
        };
        let (a, ta) = optimize(&data, &cfg).unwrap();
        let (b, tb) = optimize(&data, &cfg).unwrap();
        assert_eq!(a.points(), b.points());
        assert_eq!(ta.surrogate_history, tb.surrogate_history);
    }

    #[test]
    fn translation_equivariance() {
        let data = two_clusters(25, 0.8);
        let cfg = OptimizerConfig::new(3).with_seed(17);
        let (base, _) = optimize(&data, &cfg).unwrap();

        let shifted =
            PointSet::new(data.points().to_owned() + 100.0).unwrap();
        let (moved, _) = optimize(&shifted, &cfg).unwrap();
        for (a, b) in base.points().iter().zip(moved.points().iter()) {
            assert!((a + 100.0 - b).abs() < 1e-8, "{a} vs {b}");
        }
    }

    #[test]
    fn data_permutation_leaves_output_set_unchanged() {
        let data = two_clusters(12, 1.0);
        let n = data.len();
        let cfg = OptimizerConfig::new(n).with_seed(2);
        let (a, _) = optimize(&data, &cfg).unwrap();

        let perm: Vec<usize> = (0..n).rev().collect();
        let mut permuted = Array2::zeros((n, 1));
        for (i, &p) in perm.iter().enumerate() {
            permuted.row_mut(i).assign(&data.point(p));
        }
        let (b, _) = optimize(&PointSet::new(permuted).unwrap(), &cfg).unwrap();

        let mut av: Vec<f64> = a.points().column(0).to_vec();
        let mut bv: Vec<f64> = b.points().column(0).to_vec();
        av.sort_by(f64::total_cmp);
        bv.sort_by(f64::total_cmp);
        for (x, y) in av.iter().zip(&bv) {
            assert!((x - y).abs() < 1e-9, "{x} vs {y}");
        }
    }

    #[test]
    fn output_beats_random_subsets_on_gaussian_data() {
        // 2-D Gaussian cloud, N=200, N_v=20: the optimized points should
        // have lower surrogate than at least 99 of 100 random subsets,
        // in at least 8 of 10 seeds.
        let mut rng = ChaCha8Rng::seed_from_u64(77);
        let mut pts = Array2::zeros((200, 2));
        for v in pts.iter_mut() {
            *v = rng.sample::<f64, _>(rand_distr::StandardNormal);
        }
        let data = PointSet::new(pts).unwrap();

        let mut passes = 0;
        for seed in 0..10u64 {
            let cfg = OptimizerConfig::new(20).with_seed(seed);
            let (points, _) = optimize(&data, &cfg).unwrap();
            let ours = energy_surrogate(&points, &data).unwrap();

            let mut sub_rng = ChaCha8Rng::seed_from_u64(1000 + seed);
            let beaten = (0..100)
                .filter(|_| {
                    let idx = rand::seq::index::sample(&mut sub_rng, 200, 20);
                    let subset_pts = {
                        let mut m = Array2::zeros((20, 2));
                        for (i, r) in idx.iter().enumerate() {
                            m.row_mut(i).assign(&data.point(r));
                        }
                        PointSet::new(m).unwrap()
                    };
                    ours <= energy_surrogate(&subset_pts, &data).unwrap()
                })
                .count();
            if beaten >= 99 {
                passes += 1;
            }
        }
        assert!(passes >= 8, "only {passes}/10 seeds dominated random subsets");
    }
}
