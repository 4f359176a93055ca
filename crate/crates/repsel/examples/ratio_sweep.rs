//! Sweep validation ratios and print the comparison table: optimized
//! selection vs the full-data reference vs random-baseline intervals.
//!
//! ```text
//! cargo run --release --example ratio_sweep
//! ```

use repsel::eval::{generate_overlapping_classes, ratio_sweep, sweep_csv};
use repsel::sp_optimizer::OptimizerConfig;

fn main() {
    let data = generate_overlapping_classes(90, 25, 44, 2.5, 17).unwrap();
    let ratios = [0.1, 0.2, 0.35, 0.5];
    // 20 replicates keeps this example quick; the CLI defaults to 200
    let rows = ratio_sweep(&data, &ratios, &OptimizerConfig::new(1).with_seed(2), 20, 1e-3)
        .unwrap();

    println!(
        "{:>6} {:>4} {:>8} {:>10} {:>22} {:>22}",
        "ratio", "nv", "eps_ref", "eps_subset", "eps random 95% CI", "tau random 95% CI"
    );
    for r in &rows {
        println!(
            "{:>6} {:>4} {:>8.3} {:>10.3} {:>11.3} .. {:>6.3} {:>12.3} .. {:>6.3}",
            r.ratio,
            r.nv,
            r.eps_ref,
            r.eps_spnn_val,
            r.eps_rand_lo,
            r.eps_rand_hi,
            r.tau_rand_lo,
            r.tau_rand_hi,
        );
    }

    println!("\nfull CSV (what `repsel compare` writes):");
    print!("{}", sweep_csv(&rows));
}
