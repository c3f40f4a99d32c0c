//! Functions on the level-k cylinders (n_k-periodic sequences), the rotation
//! they inherit from the odometer, and the check that the shift conjugation
//! descends to that rotation once finitely supported corrections are ignored.

use crate::error::{Error, Result};
use crate::odometer::prefix_increment;
use crate::operator::{e_beta_diag, theta, ToleranceConfig};
use crate::radix::{DigitWord, RadixSchedule};
use num_complex::Complex64;
use serde::ser::{Serialize, SerializeMap, Serializer};

/// A complex function on the n_k cylinders of level k, stored by residue:
/// values[m] is the value on the cylinder of the words with value m.
#[derive(Clone, Debug, PartialEq)]
pub struct LevelFunction {
    schedule: RadixSchedule,
    level: usize,
    values: Vec<Complex64>,
}

impl LevelFunction {
    pub fn new(schedule: &RadixSchedule, level: usize, values: Vec<Complex64>) -> Result<Self> {
        let expected = schedule.level_size(level)?;
        if values.len() as u64 != expected {
            return Err(Error::LevelSizeMismatch {
                level,
                expected,
                found: values.len(),
            });
        }
        Ok(Self {
            schedule: schedule.clone(),
            level,
            values,
        })
    }

    pub fn constant(schedule: &RadixSchedule, level: usize, value: Complex64) -> Result<Self> {
        let size = schedule.level_size(level)?;
        Self::new(schedule, level, vec![value; size as usize])
    }

    /// The indicator of the cylinder over `beta`.
    pub fn indicator(beta: &DigitWord) -> Result<Self> {
        let size = beta.level_size()?;
        let residue = beta.value()? as usize;
        let mut values = vec![Complex64::new(0.0, 0.0); size as usize];
        values[residue] = Complex64::new(1.0, 0.0);
        Self::new(beta.schedule(), beta.len(), values)
    }

    pub fn level(&self) -> usize {
        self.level
    }

    pub fn values(&self) -> &[Complex64] {
        &self.values
    }

    pub fn schedule(&self) -> &RadixSchedule {
        &self.schedule
    }

    /// Reinterprets the function at a finer level: values'[m] =
    /// values[m mod n_k]. An algebra embedding.
    pub fn refine(&self, to_level: usize) -> Result<Self> {
        if to_level < self.level {
            return Err(Error::RefineDownward {
                from: self.level,
                to: to_level,
            });
        }
        let coarse = self.values.len();
        let fine = self.schedule.level_size(to_level)? as usize;
        let values = (0..fine).map(|m| self.values[m % coarse]).collect();
        Self::new(&self.schedule, to_level, values)
    }

    /// The rotation dual to the odometer: values'[m] = values[(m-1) mod n_k],
    /// so the indicator of residue m moves to residue m+1.
    pub fn induced_automorphism(&self) -> Self {
        let n = self.values.len();
        let values = (0..n).map(|m| self.values[(m + n - 1) % n]).collect();
        Self {
            schedule: self.schedule.clone(),
            level: self.level,
            values,
        }
    }

    pub fn pointwise_mul(&self, rhs: &Self) -> Result<Self> {
        if self.level != rhs.level || self.values.len() != rhs.values.len() {
            return Err(Error::LevelSizeMismatch {
                level: rhs.level,
                expected: self.values.len() as u64,
                found: rhs.values.len(),
            });
        }
        let values = self
            .values
            .iter()
            .zip(&rhs.values)
            .map(|(u, v)| u * v)
            .collect();
        Self::new(&self.schedule, self.level, values)
    }

    pub fn conjugate(&self) -> Self {
        Self {
            schedule: self.schedule.clone(),
            level: self.level,
            values: self.values.iter().map(Complex64::conj).collect(),
        }
    }

    pub fn sup_norm(&self) -> f64 {
        self.values.iter().map(|v| v.norm()).fold(0.0, f64::max)
    }
}

/// Serializes as {"level": k, "values": [[re, im], ...]}.
impl Serialize for LevelFunction {
    fn serialize<S: Serializer>(&self, serializer: S) -> std::result::Result<S::Ok, S::Error> {
        let pairs: Vec<[f64; 2]> = self.values.iter().map(|v| [v.re, v.im]).collect();
        let mut map = serializer.serialize_map(Some(2))?;
        map.serialize_entry("level", &self.level)?;
        map.serialize_entry("values", &pairs)?;
        map.end()
    }
}

/// True iff theta(e_beta) - e_{beta+1}, computed at truncation `dim`, is
/// supported inside coordinate 0 alone: the conjugation and the rotation
/// agree modulo finitely supported sequences.
pub fn quotient_compatibility(beta: &DigitWord, dim: usize, tol: &ToleranceConfig) -> Result<bool> {
    let stepped = prefix_increment(beta)?;
    let diff = &theta(&e_beta_diag(beta, dim)?) - &e_beta_diag(&stepped, dim)?;
    for row in 0..dim {
        for col in 0..dim {
            if row == 0 && col == 0 {
                continue;
            }
            if diff.entry(row, col).norm() > tol.eps {
                return Ok(false);
            }
        }
    }
    Ok(true)
}
