//! Compact a 2-D cloud into a handful of support points and watch the
//! surrogate descend.
//!
//! ```text
//! cargo run --release --example support_points
//! ```

use ndarray::Array2;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use repsel::energy::{energy_surrogate, PointSet};
use repsel::sp_optimizer::{optimize, OptimizerConfig};

fn main() {
    // two loose blobs, 150 points
    let mut rng = ChaCha8Rng::seed_from_u64(7);
    let mut pts = Array2::zeros((150, 2));
    for i in 0..150 {
        let center = if i % 2 == 0 { -2.0 } else { 2.0 };
        pts[[i, 0]] = center + rng.gen_range(-1.0..1.0);
        pts[[i, 1]] = rng.gen_range(-1.5..1.5);
    }
    let data = PointSet::new(pts).unwrap();

    let config = OptimizerConfig::new(8).with_seed(1);
    let (points, trace) = optimize(&data, &config).unwrap();

    println!(
        "{} iterations, converged: {}, final max move {:.2e}",
        trace.iterations, trace.converged, trace.final_max_move
    );
    let h = &trace.surrogate_history;
    println!(
        "surrogate: {:.6} (init) -> {:.6} -> ... -> {:.6} (final)",
        h[0],
        h[1.min(h.len() - 1)],
        h[h.len() - 1]
    );

    println!("support points:");
    for row in points.points().rows() {
        println!("  ({:+.3}, {:+.3})", row[0], row[1]);
    }

    // sanity: the optimized set beats a few random subsets of the same size
    let mut beaten = 0;
    let ours = energy_surrogate(&points, &data).unwrap();
    for _ in 0..20 {
        let idx = rand::seq::index::sample(&mut rng, data.len(), 8);
        let mut m = Array2::zeros((8, 2));
        for (i, r) in idx.iter().enumerate() {
            m.row_mut(i).assign(&data.point(r));
        }
        if ours <= energy_surrogate(&PointSet::new(m).unwrap(), &data).unwrap() {
            beaten += 1;
        }
    }
    println!("beats {beaten}/20 random 8-point subsets (surrogate {ours:.6})");
}
