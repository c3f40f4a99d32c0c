use criterion::{criterion_group, criterion_main, Criterion};
use num_complex::Complex64;
use odometer_bench::{schedule, weights};
use odometer_core::{
    diagonal_unitary, quotient_compatibility, regularity_check, shift, spectral_component,
    support_transport, theta, weighted_shift, DigitWord, ToleranceConfig, TruncatedOperator,
};
use std::hint::black_box;

const DIM: usize = 64;

fn build_shift(c: &mut Criterion) {
    let w = weights();
    c.bench_function("weighted_shift_n64", |b| {
        b.iter(|| weighted_shift(black_box(&w), DIM))
    });
}

fn band_projection(c: &mut Criterion) {
    let x = weighted_shift(&weights(), DIM);
    c.bench_function("spectral_component_n64", |b| {
        b.iter(|| spectral_component(black_box(&x), 1).unwrap())
    });
}

fn covariance_residual(c: &mut Criterion) {
    let tol = ToleranceConfig::new(1e-12);
    let z = Complex64::from_polar(1.0, 0.73);
    let s = weighted_shift(&weights(), DIM);
    c.bench_function("circle_covariance_n64", |b| {
        b.iter(|| {
            let u = diagonal_unitary(z, DIM, &tol).unwrap();
            (&(&(&u * &s) * &u.adjoint()) - &s.scale(z)).max_norm()
        })
    });
}

fn conjugation(c: &mut Criterion) {
    let x = weighted_shift(&weights(), DIM);
    c.bench_function("theta_n64", |b| b.iter(|| theta(black_box(&x))));
}

fn regularity(c: &mut Criterion) {
    let tol = ToleranceConfig::new(1e-12);
    let a_diag: Vec<Complex64> = (0..DIM)
        .map(|n| Complex64::new(1.0 + (n % 3) as f64, (n % 5) as f64))
        .collect();
    let b_diag: Vec<Complex64> = (0..DIM)
        .map(|n| Complex64::new((n % 7) as f64, 1.0))
        .collect();
    let a = TruncatedOperator::diagonal_from(&a_diag);
    let b_op = TruncatedOperator::diagonal_from(&b_diag);
    let x = weighted_shift(&weights(), DIM);
    let y = shift(DIM);
    c.bench_function("regularity_residuals_n64", |bench| {
        bench.iter(|| {
            regularity_check(black_box(&a), &b_op, &x, &y, &tol)
                .unwrap()
                .max()
        })
    });
}

fn transport(c: &mut Criterion) {
    let schedule = schedule();
    let tol = ToleranceConfig::new(1e-12);
    let beta = DigitWord::from_value(4, 3, &schedule).unwrap();
    c.bench_function("support_transport_k3_n64", |b| {
        b.iter(|| support_transport(black_box(&beta), DIM, &tol).unwrap())
    });
}

fn quotient_check(c: &mut Criterion) {
    let schedule = schedule();
    let tol = ToleranceConfig::new(1e-12);
    let beta = DigitWord::from_value(4, 3, &schedule).unwrap();
    c.bench_function("quotient_compatibility_k3_n64", |b| {
        b.iter(|| quotient_compatibility(black_box(&beta), DIM, &tol).unwrap())
    });
}

criterion_group!(
    operators,
    build_shift,
    band_projection,
    covariance_residual,
    conjugation,
    regularity,
    transport,
    quotient_check
);
criterion_main!(operators);
