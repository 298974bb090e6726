#![allow(dead_code)]

use astar::weight::DEFAULT_EPS_PD;
use astar::{Complex64, ComplexMatrix, Weight};
use proptest::prelude::*;

pub fn dist(a: &ComplexMatrix, b: &ComplexMatrix) -> f64 {
    (a - b).frobenius_norm()
}

fn entries(n: usize) -> impl Strategy<Value = Vec<(f64, f64)>> {
    prop::collection::vec((-1.0..1.0f64, -1.0..1.0f64), n * n)
}

pub fn matrix_of(n: usize) -> impl Strategy<Value = ComplexMatrix> {
    entries(n).prop_map(move |e| {
        let data = e.into_iter().map(|(re, im)| Complex64::new(re, im)).collect();
        ComplexMatrix::new(n, data).unwrap()
    })
}

/// `b b* + I/2`, so the condition number stays moderate.
pub fn weight_of(n: usize) -> impl Strategy<Value = Weight> {
    matrix_of(n).prop_map(move |b| {
        let a = (&(&b * &b.adjoint()) + &ComplexMatrix::identity(n).scale_real(0.5)).hermitian_part();
        Weight::validate(&a, DEFAULT_EPS_PD).unwrap()
    })
}

pub fn weighted(max_n: usize) -> impl Strategy<Value = (Weight, ComplexMatrix)> {
    (2..=max_n).prop_flat_map(|n| (weight_of(n), matrix_of(n)))
}

pub fn weighted_pair(max_n: usize) -> impl Strategy<Value = (Weight, ComplexMatrix, ComplexMatrix)> {
    (2..=max_n).prop_flat_map(|n| (weight_of(n), matrix_of(n), matrix_of(n)))
}

pub fn unit_vector(n: usize) -> impl Strategy<Value = Vec<Complex64>> {
    prop::collection::vec((-1.0..1.0f64, -1.0..1.0f64), n)
        .prop_filter("nonzero", |v| v.iter().map(|(a, b)| a * a + b * b).sum::<f64>() > 1e-3)
        .prop_map(|v| {
            let mut u: Vec<Complex64> = v.into_iter().map(|(a, b)| Complex64::new(a, b)).collect();
            astar::linalg::normalize(&mut u);
            u
        })
}

pub fn nonzero_complex() -> impl Strategy<Value = Complex64> {
    (0.2..3.0f64, 0.0..std::f64::consts::TAU).prop_map(|(r, t)| Complex64::from_polar(r, t))
}

pub fn nonzero_real() -> impl Strategy<Value = f64> {
    (0.2..3.0f64, any::<bool>()).prop_map(|(r, neg)| if neg { -r } else { r })
}
