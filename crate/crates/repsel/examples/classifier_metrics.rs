//! Score a selected split with the naive logistic classifier: holdout
//! metrics on the validation rows and leave-one-out on the rest.
//!
//! ```text
//! cargo run --release --example classifier_metrics
//! ```

use repsel::eval::{fit_logistic, holdout_metrics, loo_metrics, generate_overlapping_classes};
use repsel::sp_optimizer::OptimizerConfig;
use repsel::spnn::{select_spnn, SelectionSize};

fn main() {
    // 90 rows, 25 features, overlapping classes: hard enough that the
    // linear model makes real mistakes
    let data = generate_overlapping_classes(90, 25, 44, 2.5, 17).unwrap();

    let reference = loo_metrics(&data, 1e-3).unwrap();
    println!(
        "reference (leave-one-out on all {} rows): eps {:.3}, tau {:.3}",
        data.n_rows(),
        reference.error_rate,
        reference.sensitivity.unwrap()
    );

    let selection = select_spnn(
        &data,
        SelectionSize::Ratio(0.2),
        &OptimizerConfig::new(1).with_seed(5),
    )
    .unwrap();
    let (validation, train) = data.partition_rows(&selection.validation_ids).unwrap();

    let holdout = holdout_metrics(&train, &validation, 1e-3).unwrap();
    println!(
        "holdout on the {}-row selected subset: eps {:.3}, tau {:?}, confusion \
         tp={} fn={} fp={} tn={}",
        validation.n_rows(),
        holdout.error_rate,
        holdout.sensitivity,
        holdout.true_positives,
        holdout.false_negatives,
        holdout.false_positives,
        holdout.true_negatives,
    );

    let loo_train = loo_metrics(&train, 1e-3).unwrap();
    println!(
        "leave-one-out on the {}-row learning remainder: eps {:.3}, tau {:.3}",
        train.n_rows(),
        loo_train.error_rate,
        loo_train.sensitivity.unwrap()
    );

    let model = fit_logistic(&train, 1e-3).unwrap();
    println!(
        "fitted model: positive class `{}`, intercept {:+.3}, |coefficients| in \
         [{:.3}, {:.3}]",
        model.positive_label,
        model.intercept,
        model
            .coefficients
            .iter()
            .fold(f64::INFINITY, |m, c| m.min(c.abs())),
        model
            .coefficients
            .iter()
            .fold(0.0_f64, |m, c| m.max(c.abs())),
    );
}
