//! Pick a validation subset from the 2-D toy dataset and compare its
//! per-class energy distance against a plain random draw.
//!
//! ```text
//! cargo run --release --example select_validation
//! ```

use repsel::eval::generate_toy;
use repsel::sp_optimizer::OptimizerConfig;
use repsel::spnn::{select_random, select_spnn, SelectionSize};

fn main() {
    let data = generate_toy(100, 42).unwrap();
    println!("toy dataset: {:?}", data.class_counts());

    let config = OptimizerConfig::new(1).with_seed(3);
    let optimized = select_spnn(&data, SelectionSize::Ratio(0.2), &config).unwrap();
    let random = select_random(&data, SelectionSize::Ratio(0.2), 3).unwrap();

    println!(
        "allocation for 20 rows: {:?}",
        optimized.per_class_allocation
    );
    println!("selected ids ({}): {:?}", optimized.method, optimized.validation_ids);

    println!("per-class energy distance to the class sample (lower is better):");
    for (label, energy) in &optimized.per_class_energy {
        let rand_energy = random.per_class_energy[label].value;
        println!(
            "  class {label}: optimized {:.4} vs random {:.4}",
            energy.value, rand_energy
        );
    }

    // the JSON report is what `repsel select` writes to --report
    println!(
        "report:\n{}",
        serde_json::to_string_pretty(&optimized.report_json()).unwrap()
    );
}
