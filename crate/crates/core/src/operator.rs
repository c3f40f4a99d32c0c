//! Finite N x N truncations of the operator model: weighted shifts, the
//! circle action and its spectral bands, diagonal projections, the pair
//! (theta, lambda) built from the unweighted shift, and the support-transport
//! computation that exhibits the shift conjugation as the odometer.
//!
//! Truncation convention: the shift kills the last basis vector
//! (S e_{N-1} = 0), i.e. matrices are corner compressions. Identities that
//! truncation can disturb are checked on the leading (N-1) x (N-1) block.

use crate::error::{Error, Result};
use crate::radix::DigitWord;
use nalgebra::DMatrix;
use num_complex::Complex64;
use std::collections::BTreeSet;
use std::fmt::Write as _;
use std::ops::{Add, Mul, Sub};

/// Equality tolerance for matrix checks, as a max-entry norm bound.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct ToleranceConfig {
    pub eps: f64,
}

impl Default for ToleranceConfig {
    fn default() -> Self {
        Self { eps: 1e-12 }
    }
}

impl ToleranceConfig {
    pub fn new(eps: f64) -> Self {
        Self { eps }
    }
}

/// A periodic weight sequence a_1, a_2, ... with a_n = a_{((n-1) mod p) + 1}.
#[derive(Clone, Debug, PartialEq)]
pub struct PeriodicWeights {
    weights: Vec<Complex64>,
}

impl PeriodicWeights {
    pub fn new(weights: Vec<Complex64>) -> Result<Self> {
        if weights.is_empty() {
            return Err(Error::EmptyWeights);
        }
        Ok(Self { weights })
    }

    pub fn ones() -> Self {
        Self {
            weights: vec![Complex64::new(1.0, 0.0)],
        }
    }

    pub fn period(&self) -> usize {
        self.weights.len()
    }

    /// The weight a_n, indexed from 1.
    pub fn weight(&self, n: usize) -> Complex64 {
        self.weights[(n - 1) % self.weights.len()]
    }
}

/// A dense N x N complex matrix: the compression of an operator on one-sided
/// sequence space to its first N coordinates. Entries are expected finite.
#[derive(Clone, Debug, PartialEq)]
pub struct TruncatedOperator {
    mat: DMatrix<Complex64>,
}

impl TruncatedOperator {
    pub fn zeros(dim: usize) -> Self {
        Self {
            mat: DMatrix::zeros(dim, dim),
        }
    }

    pub fn identity(dim: usize) -> Self {
        Self {
            mat: DMatrix::identity(dim, dim),
        }
    }

    pub fn from_fn<F: FnMut(usize, usize) -> Complex64>(dim: usize, f: F) -> Self {
        Self {
            mat: DMatrix::from_fn(dim, dim, f),
        }
    }

    /// A diagonal matrix from its diagonal entries.
    pub fn diagonal_from(entries: &[Complex64]) -> Self {
        Self::from_fn(entries.len(), |m, n| {
            if m == n {
                entries[m]
            } else {
                Complex64::new(0.0, 0.0)
            }
        })
    }

    pub fn dim(&self) -> usize {
        self.mat.nrows()
    }

    pub fn entry(&self, row: usize, col: usize) -> Complex64 {
        self.mat[(row, col)]
    }

    pub fn adjoint(&self) -> Self {
        Self {
            mat: self.mat.adjoint(),
        }
    }

    pub fn scale(&self, z: Complex64) -> Self {
        Self {
            mat: &self.mat * z,
        }
    }

    /// Checked product; the arithmetic operators panic on mismatched
    /// dimensions instead.
    pub fn compose(&self, rhs: &Self) -> Result<Self> {
        if self.dim() != rhs.dim() {
            return Err(Error::DimensionMismatch {
                left: self.dim(),
                right: rhs.dim(),
            });
        }
        Ok(self * rhs)
    }

    /// Largest entry modulus.
    pub fn max_norm(&self) -> f64 {
        self.mat.iter().map(|v| v.norm()).fold(0.0, f64::max)
    }

    /// Largest entry modulus over the leading `block` x `block` corner.
    pub fn max_norm_leading(&self, block: usize) -> f64 {
        let block = block.min(self.dim());
        let mut worst = 0.0f64;
        for row in 0..block {
            for col in 0..block {
                worst = worst.max(self.mat[(row, col)].norm());
            }
        }
        worst
    }

    /// Largest modulus among entries off the diagonal band m - n = d.
    pub fn off_band_max(&self, d: i64) -> f64 {
        let mut worst = 0.0f64;
        for row in 0..self.dim() {
            for col in 0..self.dim() {
                if row as i64 - col as i64 != d {
                    worst = worst.max(self.mat[(row, col)].norm());
                }
            }
        }
        worst
    }

    pub fn is_diagonal(&self, eps: f64) -> bool {
        self.off_band_max(0) <= eps
    }

    pub fn diagonal(&self) -> Vec<Complex64> {
        (0..self.dim()).map(|j| self.mat[(j, j)]).collect()
    }

    /// Indices j with the diagonal entry within eps of 1, for matrices that
    /// are 0/1 diagonals.
    pub fn diagonal_support(&self, eps: f64) -> BTreeSet<usize> {
        (0..self.dim())
            .filter(|&j| (self.mat[(j, j)] - Complex64::new(1.0, 0.0)).norm() <= eps)
            .collect()
    }

    /// Plain-text grid of entries, one matrix row per line.
    pub fn grid(&self) -> String {
        let mut out = String::new();
        for row in 0..self.dim() {
            for col in 0..self.dim() {
                if col > 0 {
                    out.push_str("  ");
                }
                let v = self.mat[(row, col)];
                let _ = write!(out, "{:+.3}{:+.3}i", v.re, v.im);
            }
            out.push('\n');
        }
        out
    }
}

impl Mul for &TruncatedOperator {
    type Output = TruncatedOperator;

    fn mul(self, rhs: &TruncatedOperator) -> TruncatedOperator {
        assert_eq!(self.dim(), rhs.dim(), "operator dimensions must match");
        TruncatedOperator {
            mat: &self.mat * &rhs.mat,
        }
    }
}

impl Add for &TruncatedOperator {
    type Output = TruncatedOperator;

    fn add(self, rhs: &TruncatedOperator) -> TruncatedOperator {
        assert_eq!(self.dim(), rhs.dim(), "operator dimensions must match");
        TruncatedOperator {
            mat: &self.mat + &rhs.mat,
        }
    }
}

impl Sub for &TruncatedOperator {
    type Output = TruncatedOperator;

    fn sub(self, rhs: &TruncatedOperator) -> TruncatedOperator {
        assert_eq!(self.dim(), rhs.dim(), "operator dimensions must match");
        TruncatedOperator {
            mat: &self.mat - &rhs.mat,
        }
    }
}

/// The truncated weighted shift: entry (n+1, n) = a_{n+1}; the last column
/// is zero by the truncation convention.
pub fn weighted_shift(w: &PeriodicWeights, dim: usize) -> TruncatedOperator {
    TruncatedOperator::from_fn(dim, |row, col| {
        if row == col + 1 {
            w.weight(row)
        } else {
            Complex64::new(0.0, 0.0)
        }
    })
}

/// The unweighted truncated shift S.
pub fn shift(dim: usize) -> TruncatedOperator {
    weighted_shift(&PeriodicWeights::ones(), dim)
}

/// diag(1, z, z^2, ..., z^{N-1}) for z on the unit circle.
pub fn diagonal_unitary(
    z: Complex64,
    dim: usize,
    tol: &ToleranceConfig,
) -> Result<TruncatedOperator> {
    let modulus = z.norm();
    if (modulus - 1.0).abs() > tol.eps {
        return Err(Error::NotUnimodular { modulus });
    }
    let pow = powers(z, dim);
    Ok(TruncatedOperator::diagonal_from(&pow))
}

fn powers(z: Complex64, count: usize) -> Vec<Complex64> {
    let mut pow = Vec::with_capacity(count);
    pow.push(Complex64::new(1.0, 0.0));
    for j in 1..count {
        let next = pow[j - 1] * z;
        pow.push(next);
    }
    pow
}

/// Conjugation by the diagonal unitary of z: entry (m, n) picks up z^{m-n}.
/// z is taken to lie on the unit circle, so the inverse power is the complex
/// conjugate.
pub fn circle_conjugate(z: Complex64, x: &TruncatedOperator) -> TruncatedOperator {
    let pow = powers(z, x.dim());
    TruncatedOperator::from_fn(x.dim(), |row, col| {
        let factor = if row >= col {
            pow[row - col]
        } else {
            pow[col - row].conj()
        };
        x.entry(row, col) * factor
    })
}

/// The degree-d spectral component of x under the circle action: the average
/// of z^{-d} (U_z x U_z^{-1}) over the default 2N-1 roots of unity. Entries
/// of the conjugate are monomials of degree m-n in z with |m-n| <= N-1, so
/// the average extracts exactly the band m - n = d.
pub fn spectral_component(x: &TruncatedOperator, d: i64) -> Result<TruncatedOperator> {
    spectral_component_with_samples(x, d, 2 * x.dim() - 1)
}

/// Same projection with a caller-chosen number of roots of unity; must be at
/// least 2N-1 so no alias band survives.
pub fn spectral_component_with_samples(
    x: &TruncatedOperator,
    d: i64,
    samples: usize,
) -> Result<TruncatedOperator> {
    let dim = x.dim();
    if d.unsigned_abs() as usize >= dim {
        return Err(Error::DegreeOutOfRange { degree: d, dim });
    }
    let needed = 2 * dim - 1;
    if samples < needed {
        return Err(Error::TooFewSamples { samples, needed });
    }
    let mut acc = DMatrix::<Complex64>::zeros(dim, dim);
    for t in 0..samples {
        let angle = 2.0 * std::f64::consts::PI * t as f64 / samples as f64;
        let z = Complex64::cis(angle);
        let rotated = circle_conjugate(z, x);
        let phase = Complex64::cis(-(d as f64) * angle);
        acc += rotated.mat * phase;
    }
    Ok(TruncatedOperator {
        mat: acc.unscale(samples as f64),
    })
}

/// The cylinder projection e_beta truncated to N: diagonal 1 at every n
/// congruent to value(beta) mod n_k.
pub fn e_beta_diag(beta: &DigitWord, dim: usize) -> Result<TruncatedOperator> {
    let size = beta.level_size()?;
    let residue = beta.value()?;
    Ok(TruncatedOperator::from_fn(dim, |row, col| {
        if row == col && row as u64 % size == residue {
            Complex64::new(1.0, 0.0)
        } else {
            Complex64::new(0.0, 0.0)
        }
    }))
}

/// The projection f_k = diag(1, ..., 1, 0, ...) whose last 1 sits at
/// position k-1.
pub fn f_k_diag(k: usize, dim: usize) -> TruncatedOperator {
    TruncatedOperator::from_fn(dim, |row, col| {
        if row == col && row < k {
            Complex64::new(1.0, 0.0)
        } else {
            Complex64::new(0.0, 0.0)
        }
    })
}

/// The rank-one projection onto coordinate n.
pub fn delta_diag(n: usize, dim: usize) -> Result<TruncatedOperator> {
    if n >= dim {
        return Err(Error::IndexOutOfRange { index: n, dim });
    }
    Ok(TruncatedOperator::from_fn(dim, |row, col| {
        if row == col && row == n {
            Complex64::new(1.0, 0.0)
        } else {
            Complex64::new(0.0, 0.0)
        }
    }))
}

/// theta(a) = S a S*: shifts a diagonal forward one slot and vacates
/// coordinate 0.
pub fn theta(a: &TruncatedOperator) -> TruncatedOperator {
    let s = shift(a.dim());
    &(&s * a) * &s.adjoint()
}

/// lambda(x*) = S x*, the isometric half of the (theta, lambda) pair.
pub fn lambda_map(xstar: &TruncatedOperator) -> TruncatedOperator {
    &shift(xstar.dim()) * xstar
}

/// Residuals of the four module identities tying theta and lambda to the
/// band-one operators, measured on the leading (N-1) block where truncation
/// cannot disturb them.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct RegularityResiduals {
    /// lambda(x* b) = lambda(x*) b.
    pub right_module: f64,
    /// lambda(a x*) = theta(a) lambda(x*).
    pub twisted_left_module: f64,
    /// lambda(x*)* lambda(y*) = x y*.
    pub isometry_pairing: f64,
    /// lambda(x*) lambda(y*)* = theta(x* y).
    pub range_transport: f64,
}

impl RegularityResiduals {
    pub fn max(&self) -> f64 {
        self.right_module
            .max(self.twisted_left_module)
            .max(self.isometry_pairing)
            .max(self.range_transport)
    }

    pub fn as_array(&self) -> [f64; 4] {
        [
            self.right_module,
            self.twisted_left_module,
            self.isometry_pairing,
            self.range_transport,
        ]
    }
}

/// Verifies the preconditions (a, b diagonal; x, y supported on the first
/// subdiagonal band) and returns the four identity residuals on the leading
/// (N-1) x (N-1) block.
pub fn regularity_check(
    a: &TruncatedOperator,
    b: &TruncatedOperator,
    x: &TruncatedOperator,
    y: &TruncatedOperator,
    tol: &ToleranceConfig,
) -> Result<RegularityResiduals> {
    let dim = a.dim();
    for other in [b, x, y] {
        if other.dim() != dim {
            return Err(Error::DimensionMismatch {
                left: dim,
                right: other.dim(),
            });
        }
    }
    if !a.is_diagonal(tol.eps) {
        return Err(Error::NotDiagonal { name: "a" });
    }
    if !b.is_diagonal(tol.eps) {
        return Err(Error::NotDiagonal { name: "b" });
    }
    if x.off_band_max(1) > tol.eps {
        return Err(Error::NotBandOne { name: "x" });
    }
    if y.off_band_max(1) > tol.eps {
        return Err(Error::NotBandOne { name: "y" });
    }

    let block = dim.saturating_sub(1);
    let s = shift(dim);
    let xstar = x.adjoint();
    let ystar = y.adjoint();
    let lam_x = &s * &xstar;
    let lam_y = &s * &ystar;

    let right_module = {
        let lhs = &s * &(&xstar * b);
        let rhs = &lam_x * b;
        (&lhs - &rhs).max_norm_leading(block)
    };
    let twisted_left_module = {
        let lhs = &s * &(a * &xstar);
        let rhs = &theta(a) * &lam_x;
        (&lhs - &rhs).max_norm_leading(block)
    };
    let isometry_pairing = {
        let lhs = &lam_x.adjoint() * &lam_y;
        let rhs = x * &ystar;
        (&lhs - &rhs).max_norm_leading(block)
    };
    let range_transport = {
        let lhs = &lam_x * &lam_y.adjoint();
        let rhs = theta(&(&xstar * y));
        (&lhs - &rhs).max_norm_leading(block)
    };

    Ok(RegularityResiduals {
        right_module,
        twisted_left_module,
        isometry_pairing,
        range_transport,
    })
}

/// Computes S (1 - f_k) e_{gamma|k} S* and returns its diagonal support.
/// The product must come out as a 0/1 diagonal; anything else is reported as
/// an internal consistency error.
pub fn support_transport(
    gamma_k: &DigitWord,
    dim: usize,
    tol: &ToleranceConfig,
) -> Result<BTreeSet<usize>> {
    let k = gamma_k.len();
    let e = e_beta_diag(gamma_k, dim)?;
    let cut = &TruncatedOperator::identity(dim) - &f_k_diag(k, dim);
    let s = shift(dim);
    let transported = &(&s * &(&cut * &e)) * &s.adjoint();

    let mut support = BTreeSet::new();
    for row in 0..dim {
        for col in 0..dim {
            let v = transported.entry(row, col);
            if row != col {
                if v.norm() > tol.eps {
                    return Err(Error::Internal(
                        "support transport produced an off-diagonal entry",
                    ));
                }
                continue;
            }
            if v.norm() <= tol.eps {
                continue;
            }
            if (v - Complex64::new(1.0, 0.0)).norm() <= tol.eps {
                support.insert(row);
            } else {
                return Err(Error::Internal(
                    "support transport produced a non-idempotent diagonal entry",
                ));
            }
        }
    }
    Ok(support)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::radix::RadixSchedule;

    fn c(re: f64, im: f64) -> Complex64 {
        Complex64::new(re, im)
    }

    fn sched(spec: &str) -> RadixSchedule {
        spec.parse().unwrap()
    }

    fn word(digits: &[u32], s: &RadixSchedule) -> DigitWord {
        DigitWord::new(digits.to_vec(), s).unwrap()
    }

    fn tol() -> ToleranceConfig {
        ToleranceConfig::default()
    }

    #[test]
    fn unweighted_shift_has_subdiagonal_ones() {
        let s = shift(3);
        assert_eq!(s.entry(1, 0), c(1.0, 0.0));
        assert_eq!(s.entry(2, 1), c(1.0, 0.0));
        assert_eq!(s.entry(0, 0), c(0.0, 0.0));
        assert_eq!(s.entry(2, 0), c(0.0, 0.0));
    }

    #[test]
    fn periodic_weights_wrap_on_the_subdiagonal() {
        let w = PeriodicWeights::new(vec![c(2.0, 0.0), c(0.0, 3.0)]).unwrap();
        let m = weighted_shift(&w, 4);
        assert_eq!(m.entry(1, 0), c(2.0, 0.0));
        assert_eq!(m.entry(2, 1), c(0.0, 3.0));
        assert_eq!(m.entry(3, 2), c(2.0, 0.0));
        // Truncation: the last column is zero.
        for row in 0..4 {
            assert_eq!(m.entry(row, 3), c(0.0, 0.0));
        }
        assert_eq!(PeriodicWeights::new(vec![]), Err(Error::EmptyWeights));
    }

    #[test]
    fn diagonal_unitary_powers_of_i() {
        let u = diagonal_unitary(c(0.0, 1.0), 4, &tol()).unwrap();
        assert_eq!(u.diagonal(), vec![c(1.0, 0.0), c(0.0, 1.0), c(-1.0, 0.0), c(0.0, -1.0)]);
        let id = diagonal_unitary(c(1.0, 0.0), 3, &tol()).unwrap();
        assert_eq!((&id - &TruncatedOperator::identity(3)).max_norm(), 0.0);
        assert!(matches!(
            diagonal_unitary(c(2.0, 0.0), 3, &tol()),
            Err(Error::NotUnimodular { .. })
        ));
    }

    #[test]
    fn diagonal_unitary_is_unitary() {
        let z = Complex64::cis(0.9);
        let u = diagonal_unitary(z, 8, &tol()).unwrap();
        let residual = (&(&u * &u.adjoint()) - &TruncatedOperator::identity(8)).max_norm();
        assert!(residual <= 1e-15, "residual {residual}");
    }

    #[test]
    fn circle_conjugation_scales_the_shift_exactly() {
        let w = PeriodicWeights::new(vec![c(0.3, -1.2), c(2.0, 0.5), c(-0.7, 0.1)]).unwrap();
        let sa = weighted_shift(&w, 16);
        for angle in [0.0, 0.7, 2.1, 4.9] {
            let z = Complex64::cis(angle);
            let residual = (&circle_conjugate(z, &sa) - &sa.scale(z)).max_norm();
            assert_eq!(residual, 0.0, "angle {angle}");
        }
    }

    #[test]
    fn circle_conjugation_matches_explicit_unitary_conjugation() {
        let z = Complex64::cis(1.3);
        let x = TruncatedOperator::from_fn(6, |m, n| c((m * 7 + n) as f64 * 0.1, n as f64 - 0.4));
        let u = diagonal_unitary(z, 6, &tol()).unwrap();
        let explicit = &(&u * &x) * &u.adjoint();
        let residual = (&circle_conjugate(z, &x) - &explicit).max_norm();
        assert!(residual <= 1e-13, "residual {residual}");
    }

    #[test]
    fn circle_conjugation_fixes_diagonals_and_composes() {
        let d = TruncatedOperator::diagonal_from(&[c(1.0, 2.0), c(-3.0, 0.5), c(0.0, 0.0)]);
        let z = Complex64::cis(2.2);
        assert_eq!((&circle_conjugate(z, &d) - &d).max_norm(), 0.0);

        let x = TruncatedOperator::from_fn(5, |m, n| c(m as f64, n as f64 * 0.3));
        let wz = Complex64::cis(0.4);
        let composed = circle_conjugate(z, &circle_conjugate(wz, &x));
        let direct = circle_conjugate(z * wz, &x);
        let residual = (&composed - &direct).max_norm();
        assert!(residual <= 1e-13, "residual {residual}");
    }

    #[test]
    fn spectral_component_keeps_the_shift_in_band_one() {
        let w = PeriodicWeights::new(vec![c(1.5, 0.2), c(-0.3, 0.8)]).unwrap();
        let sa = weighted_shift(&w, 12);
        let band1 = spectral_component(&sa, 1).unwrap();
        assert!((&band1 - &sa).max_norm() <= 1e-13);
        let band0 = spectral_component(&sa, 0).unwrap();
        assert!(band0.max_norm() <= 1e-13);
    }

    #[test]
    fn spectral_component_zero_extracts_the_diagonal() {
        let x = TruncatedOperator::from_fn(9, |m, n| c((m as f64).sin() + n as f64, 0.25 * m as f64));
        let diagonal_part = TruncatedOperator::diagonal_from(&x.diagonal());
        let residual = (&spectral_component(&x, 0).unwrap() - &diagonal_part).max_norm();
        assert!(residual <= 1e-13, "residual {residual}");
    }

    #[test]
    fn spectral_component_validates_inputs() {
        let x = TruncatedOperator::identity(4);
        assert!(matches!(
            spectral_component(&x, 4),
            Err(Error::DegreeOutOfRange { .. })
        ));
        assert!(matches!(
            spectral_component_with_samples(&x, 1, 6),
            Err(Error::TooFewSamples {
                samples: 6,
                needed: 7
            })
        ));
        assert!(spectral_component_with_samples(&x, 1, 9).is_ok());
    }

    #[test]
    fn diagonal_projections_match_their_definitions() {
        let s = sched("2,3");
        let e1 = e_beta_diag(&word(&[1], &s), 6).unwrap();
        assert_eq!(e1.diagonal_support(0.0), BTreeSet::from([1, 3, 5]));

        let f2 = f_k_diag(2, 5);
        assert_eq!(
            f2.diagonal(),
            vec![c(1.0, 0.0), c(1.0, 0.0), c(0.0, 0.0), c(0.0, 0.0), c(0.0, 0.0)]
        );
        assert_eq!(f_k_diag(0, 3).max_norm(), 0.0);

        let d3 = delta_diag(3, 6).unwrap();
        assert_eq!(d3.diagonal_support(0.0), BTreeSet::from([3]));
        assert!(matches!(
            delta_diag(6, 6),
            Err(Error::IndexOutOfRange { index: 6, dim: 6 })
        ));
    }

    #[test]
    fn theta_shifts_diagonals_forward() {
        let n = 6;
        for i in 0..n - 1 {
            let lhs = theta(&delta_diag(i, n).unwrap());
            let rhs = delta_diag(i + 1, n).unwrap();
            assert_eq!((&lhs - &rhs).max_norm(), 0.0, "i = {i}");
        }
        let lhs = theta(&TruncatedOperator::identity(n));
        let rhs = &TruncatedOperator::identity(n) - &delta_diag(0, n).unwrap();
        assert_eq!((&lhs - &rhs).max_norm(), 0.0);
    }

    #[test]
    fn theta_always_vacates_coordinate_zero() {
        let a = TruncatedOperator::from_fn(5, |m, n| c(m as f64 + 0.1, n as f64 - 2.0));
        assert_eq!(theta(&a).entry(0, 0), c(0.0, 0.0));
        for col in 0..5 {
            assert_eq!(theta(&a).entry(0, col), c(0.0, 0.0));
        }
    }

    #[test]
    fn lambda_of_shift_adjoint_is_the_range_projection() {
        let n = 6;
        let s = shift(n);
        let lhs = lambda_map(&s.adjoint());
        let rhs = &TruncatedOperator::identity(n) - &delta_diag(0, n).unwrap();
        assert_eq!((&lhs - &rhs).max_norm(), 0.0);
    }

    #[test]
    fn regularity_residuals_vanish_for_the_plain_shift() {
        let n = 8;
        let s = shift(n);
        let id = TruncatedOperator::identity(n);
        let res = regularity_check(&id, &id, &s, &s, &tol()).unwrap();
        assert_eq!(res.as_array(), [0.0, 0.0, 0.0, 0.0]);
    }

    #[test]
    fn regularity_rejects_bad_inputs() {
        let n = 5;
        let s = shift(n);
        let id = TruncatedOperator::identity(n);
        assert!(matches!(
            regularity_check(&s, &id, &s, &s, &tol()),
            Err(Error::NotDiagonal { name: "a" })
        ));
        assert!(matches!(
            regularity_check(&id, &id, &id, &s, &tol()),
            Err(Error::NotBandOne { name: "x" })
        ));
        let small = TruncatedOperator::identity(4);
        assert!(matches!(
            regularity_check(&id, &small, &s, &s, &tol()),
            Err(Error::DimensionMismatch { .. })
        ));
    }

    #[test]
    fn band_products_add_degrees() {
        let w1 = PeriodicWeights::new(vec![c(1.1, 0.0), c(0.4, -0.2)]).unwrap();
        let w2 = PeriodicWeights::new(vec![c(-0.9, 0.7)]).unwrap();
        let product = &weighted_shift(&w1, 10) * &weighted_shift(&w2, 10);
        assert_eq!(product.off_band_max(2), 0.0);
        let mixed = &weighted_shift(&w1, 10) * &weighted_shift(&w2, 10).adjoint();
        assert_eq!(mixed.off_band_max(0), 0.0);
    }

    #[test]
    fn support_transport_steps_residue_classes() {
        let s2 = sched("2");
        let got = support_transport(&word(&[1], &s2), 8, &tol()).unwrap();
        assert_eq!(got, BTreeSet::from([2, 4, 6]));

        let s23 = sched("2,3");
        let got = support_transport(&word(&[1, 2], &s23), 14, &tol()).unwrap();
        assert_eq!(got, BTreeSet::from([6, 12]));

        let empty = DigitWord::empty(&s2);
        let got = support_transport(&empty, 4, &tol()).unwrap();
        assert_eq!(got, BTreeSet::from([1, 2, 3]));
    }

    #[test]
    fn grid_renders_rows() {
        let m = TruncatedOperator::identity(2);
        let grid = m.grid();
        assert_eq!(grid.lines().count(), 2);
        assert!(grid.starts_with("+1.000+0.000i"));
    }
}
