//! Energy distance between two point sets, term by term.
//!
//! ```text
//! cargo run --release --example energy_distance
//! ```

use ndarray::array;
use repsel::energy::{energy_distance_full, energy_surrogate, PointSet};

fn main() {
    // a candidate that matches the data exactly has distance zero
    let data = PointSet::new(array![[0.0], [2.0]]).unwrap();
    let exact = energy_distance_full(&data, &data).unwrap();
    println!("candidate == data:");
    println!(
        "  attraction {:.4}  repulsion {:.4}  constant {:.4}  value {:.4}",
        exact.attraction, exact.repulsion, exact.constant, exact.value
    );

    // a shifted candidate pays for the mismatch
    let shifted = PointSet::new(array![[1.0], [3.0]]).unwrap();
    let off = energy_distance_full(&shifted, &data).unwrap();
    println!("candidate shifted by +1:");
    println!(
        "  attraction {:.4}  repulsion {:.4}  constant {:.4}  value {:.4}",
        off.attraction, off.repulsion, off.constant, off.value
    );

    // the optimizer's surrogate drops the candidate-independent constant
    let surrogate = energy_surrogate(&shifted, &data).unwrap();
    println!("surrogate(shifted) = {surrogate:.4} = value + constant");
    assert_eq!(surrogate, off.attraction - off.repulsion);

    // symmetry of the full estimator
    let ab = energy_distance_full(&shifted, &data).unwrap().value;
    let ba = energy_distance_full(&data, &shifted).unwrap().value;
    println!("symmetry: d(A,B) = {ab:.12}, d(B,A) = {ba:.12}");
}
