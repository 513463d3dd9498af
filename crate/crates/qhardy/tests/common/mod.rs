//! Shared generators for the integration suites.
#![allow(dead_code)]

use qhardy::quat::{Quaternion, UnitImaginary};
use qhardy::series::QSeries;
use rand::Rng;

pub fn random_quat(rng: &mut impl Rng) -> Quaternion {
    Quaternion::new(
        rng.random_range(-1.0..1.0),
        rng.random_range(-1.0..1.0),
        rng.random_range(-1.0..1.0),
        rng.random_range(-1.0..1.0),
    )
}

pub fn random_series(rng: &mut impl Rng, degree: usize) -> QSeries {
    QSeries::new((0..=degree).map(|_| random_quat(rng)).collect())
}

/// Random series whose constant coefficient has norm at least `floor`.
pub fn random_series_nonzero_origin(rng: &mut impl Rng, degree: usize, floor: f64) -> QSeries {
    loop {
        let f = random_series(rng, degree);
        if f.coeff(0).norm() >= floor {
            return f;
        }
    }
}

pub fn random_unit_imaginary(rng: &mut impl Rng) -> UnitImaginary {
    loop {
        let candidate = UnitImaginary::new(
            rng.random_range(-1.0..1.0),
            rng.random_range(-1.0..1.0),
            rng.random_range(-1.0..1.0),
        );
        if let Some(u) = candidate {
            return u;
        }
    }
}
