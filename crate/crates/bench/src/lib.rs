//! Shared fixtures for the criterion benches.

use hohlov_core::{Complex64, HohlovParams, TruncatedSeries};

/// Unit-constant series with slowly decaying complex coefficients.
pub fn unit_series(order: usize) -> TruncatedSeries {
    let coeffs = (0..=order)
        .map(|k| if k == 0 { Complex64::new(1.0, 0.0) } else { Complex64::from_polar(0.5 / k as f64, 0.7 * k as f64) })
        .collect();
    TruncatedSeries::new(coeffs).expect("nonempty")
}

pub fn normalized_series(order: usize) -> TruncatedSeries {
    unit_series(order - 1).shift_up()
}

pub fn triple() -> HohlovParams {
    HohlovParams::new(1.5, 1.2, 1.0).expect("valid triple")
}
