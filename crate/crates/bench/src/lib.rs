//! Shared fixtures for the criterion benchmarks.

use num_complex::Complex64;
use odometer_core::{PeriodicWeights, RadixSchedule};

/// The three-radix schedule the benchmarks run on.
pub fn schedule() -> RadixSchedule {
    RadixSchedule::repeat_last(vec![2, 3, 2]).expect("radices are valid")
}

/// A period-3 unimodular weight sequence.
pub fn weights() -> PeriodicWeights {
    let third = 2.0 * std::f64::consts::PI / 3.0;
    let w: Vec<Complex64> = (0..3)
        .map(|j| Complex64::from_polar(1.0, third * j as f64))
        .collect();
    PeriodicWeights::new(w).expect("weights are nonempty")
}
