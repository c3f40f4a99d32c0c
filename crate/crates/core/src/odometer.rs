//! The odometer: add one with carry to the right on the digit space K, plus
//! its partial variant, the extended successor map on X = N or K, orbits, and
//! the exact uniform measure of cylinders.

use crate::error::{Error, Result};
use crate::radix::{CantorPoint, DigitWord, RadixSchedule, Tail, XPoint};
use num_rational::Ratio;
use std::fmt;

/// Adds one in the first coordinate and propagates the carry rightward.
/// Total on K: the all-max point wraps to all zeros (the carry runs through
/// the entire tail).
pub fn odometer_total(p: &CantorPoint) -> CantorPoint {
    let schedule = p.schedule().clone();
    let mut digits = p.prefix().digits().to_vec();
    for j in 0..digits.len() {
        if digits[j] + 1 < schedule.radix(j) {
            digits[j] += 1;
            let word = DigitWord::new(digits, &schedule).expect("digits stay in range");
            return CantorPoint::new(word, p.tail());
        }
        digits[j] = 0;
    }
    // The carry ran off the prefix. A canonical Max-tail prefix never ends in
    // a maxed digit, so this happens for tail Max only at the all-max point.
    match p.tail() {
        Tail::Max => CantorPoint::zeros(&schedule),
        Tail::Zeros => {
            let len = digits.len();
            digits.push(1);
            debug_assert!(schedule.radix(len) >= 2);
            let word = DigitWord::new(digits, &schedule).expect("digits stay in range");
            CantorPoint::new(word, Tail::Zeros)
        }
    }
}

/// The odometer with the all-max point removed from its domain: the variant
/// whose carry always terminates in finitely many steps.
pub fn odometer_partial(p: &CantorPoint) -> Result<CantorPoint> {
    if p.is_all_max() {
        return Err(Error::OdometerDomain);
    }
    Ok(odometer_total(p))
}

/// Subtracts one with borrow; exact inverse of [`odometer_total`]. The
/// all-zeros point wraps to all max.
pub fn odometer_inverse(p: &CantorPoint) -> CantorPoint {
    let schedule = p.schedule().clone();
    let mut digits = p.prefix().digits().to_vec();
    for j in 0..digits.len() {
        if digits[j] > 0 {
            digits[j] -= 1;
            let word = DigitWord::new(digits, &schedule).expect("digits stay in range");
            return CantorPoint::new(word, p.tail());
        }
        digits[j] = schedule.radix(j) - 1;
    }
    // The borrow ran off the prefix. A canonical Zeros-tail prefix never ends
    // in 0, so this happens for tail Zeros only at the all-zeros point.
    match p.tail() {
        Tail::Zeros => CantorPoint::all_max(&schedule),
        Tail::Max => {
            let len = digits.len();
            digits.push(schedule.radix(len) - 2);
            let word = DigitWord::new(digits, &schedule).expect("digits stay in range");
            CantorPoint::new(word, Tail::Max)
        }
    }
}

/// One step of the successor dynamics on X: n -> n+1 on the naturals, the
/// odometer on K. The image never contains Nat(0).
pub fn step_x(x: &XPoint) -> Result<XPoint> {
    match x {
        XPoint::Nat(n) => {
            let next = n.checked_add(1).ok_or(Error::Overflow {
                context: "natural successor",
            })?;
            Ok(XPoint::Nat(next))
        }
        XPoint::Cantor(p) => Ok(XPoint::Cantor(odometer_total(p))),
    }
}

/// The level-k shadow of the odometer on digit words: the digits of
/// (value(beta) + 1) mod n_k. A cyclic permutation of K_k of order n_k.
pub fn prefix_increment(beta: &DigitWord) -> Result<DigitWord> {
    let size = beta.level_size()?;
    let value = beta.value()?;
    DigitWord::from_value((value + 1) % size, beta.len(), beta.schedule())
}

/// A stored forward orbit: points[0] is the start and points[i+1] is the
/// successor of points[i].
#[derive(Clone, Debug, PartialEq)]
pub struct OrbitRecord {
    points: Vec<XPoint>,
}

impl OrbitRecord {
    pub fn start(&self) -> &XPoint {
        &self.points[0]
    }

    pub fn steps(&self) -> usize {
        self.points.len() - 1
    }

    pub fn points(&self) -> &[XPoint] {
        &self.points
    }
}

/// One point per line: naturals in decimal, Cantor points as "d0,...|Z" or
/// "d0,...|M".
impl fmt::Display for OrbitRecord {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for point in &self.points {
            writeln!(f, "{point}")?;
        }
        Ok(())
    }
}

/// Records `steps` iterates of the successor map after the start point.
pub fn orbit(start: &XPoint, steps: usize) -> Result<OrbitRecord> {
    orbit_impl(start, steps, false)
}

/// Same record but stepping with the partial odometer, which fails at the
/// all-max point.
pub fn orbit_partial(start: &XPoint, steps: usize) -> Result<OrbitRecord> {
    orbit_impl(start, steps, true)
}

fn orbit_impl(start: &XPoint, steps: usize, partial: bool) -> Result<OrbitRecord> {
    let mut points = Vec::with_capacity(steps + 1);
    points.push(start.clone());
    for _ in 0..steps {
        let next = match points.last().expect("orbit is never empty") {
            XPoint::Cantor(p) if partial => XPoint::Cantor(odometer_partial(p)?),
            current => step_x(current)?,
        };
        points.push(next);
    }
    Ok(OrbitRecord { points })
}

/// The uniform product measure of the level-k cylinder over `beta`: exactly
/// 1/n_k as a rational.
pub fn cylinder_measure(beta: &DigitWord) -> Result<Ratio<u64>> {
    Ok(Ratio::new(1, beta.level_size()?))
}

/// Which level-k cylinder a point sits in, as a residue in 0..n_k: the value
/// of its first k digits (n mod n_k for a natural).
pub fn cylinder_index(x: &XPoint, k: usize, schedule: &RadixSchedule) -> Result<u64> {
    match x {
        XPoint::Nat(n) => Ok(n % schedule.level_size(k)?),
        XPoint::Cantor(p) => p.truncate(k).value(),
    }
}
