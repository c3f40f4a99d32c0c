//! Exact arithmetic in a varying-base positional system.
//!
//! A schedule of radices q_0, q_1, ... (each at least 2) determines level
//! sizes n_0 = 1, n_{k+1} = n_k * q_k. Every natural below n_k has a unique
//! expansion n = sum beta_j * n_j with 0 <= beta_j < q_j, digits stored least
//! significant first.

use crate::error::{Error, Result};
use std::fmt;
use std::str::FromStr;

/// How the finite radix list extends to an infinite schedule.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Extension {
    /// q_j = q_{m-1} for j >= m.
    RepeatLast,
    /// q_j = q_{j mod m}.
    Cycle,
}

/// An infinite radix sequence given by a finite list and an extension rule.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct RadixSchedule {
    radices: Vec<u32>,
    extension: Extension,
}

impl RadixSchedule {
    pub fn new(radices: Vec<u32>, extension: Extension) -> Result<Self> {
        if radices.is_empty() {
            return Err(Error::EmptySchedule);
        }
        for (position, &radix) in radices.iter().enumerate() {
            if radix < 2 {
                return Err(Error::RadixTooSmall { position, radix });
            }
        }
        Ok(Self { radices, extension })
    }

    pub fn repeat_last(radices: Vec<u32>) -> Result<Self> {
        Self::new(radices, Extension::RepeatLast)
    }

    pub fn cycle(radices: Vec<u32>) -> Result<Self> {
        Self::new(radices, Extension::Cycle)
    }

    /// The radix q_j at any position, following the extension rule.
    pub fn radix(&self, j: usize) -> u32 {
        let m = self.radices.len();
        if j < m {
            self.radices[j]
        } else {
            match self.extension {
                Extension::RepeatLast => self.radices[m - 1],
                Extension::Cycle => self.radices[j % m],
            }
        }
    }

    /// The level size n_k = q_0 * ... * q_{k-1}, with n_0 = 1.
    pub fn level_size(&self, k: usize) -> Result<u64> {
        let mut n: u64 = 1;
        for j in 0..k {
            n = n
                .checked_mul(u64::from(self.radix(j)))
                .ok_or(Error::Overflow {
                    context: "level size",
                })?;
        }
        Ok(n)
    }

    pub fn extension(&self) -> Extension {
        self.extension
    }

    pub fn explicit_radices(&self) -> &[u32] {
        &self.radices
    }
}

impl fmt::Display for RadixSchedule {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for (j, q) in self.radices.iter().enumerate() {
            if j > 0 {
                write!(f, ",")?;
            }
            write!(f, "{q}")?;
        }
        if self.extension == Extension::Cycle {
            write!(f, "*")?;
        }
        Ok(())
    }
}

/// Parses "q0,q1,...,qm" (repeat-last) or "q0,q1,...,qm*" (cycle).
impl FromStr for RadixSchedule {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let (body, extension) = match s.strip_suffix('*') {
            Some(body) => (body, Extension::Cycle),
            None => (s, Extension::RepeatLast),
        };
        let radices = body
            .split(',')
            .map(|part| {
                part.trim()
                    .parse::<u32>()
                    .map_err(|e| Error::Parse(format!("bad radix {part:?}: {e}")))
            })
            .collect::<Result<Vec<_>>>()?;
        Self::new(radices, extension)
    }
}

/// A finite digit word beta_0..beta_{k-1}, least significant digit first,
/// with 0 <= beta_j < q_j.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct DigitWord {
    digits: Vec<u32>,
    schedule: RadixSchedule,
}

impl DigitWord {
    pub fn new(digits: Vec<u32>, schedule: &RadixSchedule) -> Result<Self> {
        for (position, &digit) in digits.iter().enumerate() {
            let radix = schedule.radix(position);
            if digit >= radix {
                return Err(Error::DigitOutOfRange {
                    position,
                    digit,
                    radix,
                });
            }
        }
        Ok(Self {
            digits,
            schedule: schedule.clone(),
        })
    }

    pub fn empty(schedule: &RadixSchedule) -> Self {
        Self {
            digits: Vec::new(),
            schedule: schedule.clone(),
        }
    }

    /// The unique word of length `len` whose value is `value`; requires
    /// value < n_len.
    pub fn from_value(value: u64, len: usize, schedule: &RadixSchedule) -> Result<Self> {
        let size = schedule.level_size(len)?;
        if value >= size {
            return Err(Error::ValueOutOfRange {
                value,
                level: len,
                size,
            });
        }
        let mut digits = Vec::with_capacity(len);
        let mut rest = value;
        for j in 0..len {
            let q = u64::from(schedule.radix(j));
            digits.push((rest % q) as u32);
            rest /= q;
        }
        Ok(Self {
            digits,
            schedule: schedule.clone(),
        })
    }

    /// value(beta) = sum of beta_j * n_j; always below n_k.
    pub fn value(&self) -> Result<u64> {
        let mut total: u64 = 0;
        let mut place: u64 = 1;
        for (j, &digit) in self.digits.iter().enumerate() {
            let term = place
                .checked_mul(u64::from(digit))
                .ok_or(Error::Overflow {
                    context: "digit word value",
                })?;
            total = total.checked_add(term).ok_or(Error::Overflow {
                context: "digit word value",
            })?;
            place = place
                .checked_mul(u64::from(self.schedule.radix(j)))
                .ok_or(Error::Overflow {
                    context: "digit word value",
                })?;
        }
        Ok(total)
    }

    pub fn len(&self) -> usize {
        self.digits.len()
    }

    pub fn is_empty(&self) -> bool {
        self.digits.is_empty()
    }

    pub fn digits(&self) -> &[u32] {
        &self.digits
    }

    pub fn digit(&self, j: usize) -> u32 {
        self.digits[j]
    }

    pub fn schedule(&self) -> &RadixSchedule {
        &self.schedule
    }

    /// The level size n_k for this word's length.
    pub fn level_size(&self) -> Result<u64> {
        self.schedule.level_size(self.digits.len())
    }

    pub fn is_all_max(&self) -> bool {
        self.digits
            .iter()
            .enumerate()
            .all(|(j, &d)| d == self.schedule.radix(j) - 1)
    }

    pub fn is_all_zero(&self) -> bool {
        self.digits.iter().all(|&d| d == 0)
    }
}

impl fmt::Display for DigitWord {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for (j, d) in self.digits.iter().enumerate() {
            if j > 0 {
                write!(f, ",")?;
            }
            write!(f, "{d}")?;
        }
        Ok(())
    }
}

/// The constant pattern a Cantor point follows past its stored prefix.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Tail {
    /// Digit j is 0 beyond the prefix.
    Zeros,
    /// Digit j is q_j - 1 beyond the prefix.
    Max,
}

impl Tail {
    fn digit(self, schedule: &RadixSchedule, j: usize) -> u32 {
        match self {
            Tail::Zeros => 0,
            Tail::Max => schedule.radix(j) - 1,
        }
    }
}

/// A point of the product space K = prod_j {0..q_j-1}: a finite digit prefix
/// followed by an all-zeros or all-max tail.
///
/// Canonical form: the prefix never ends with the digit the tail would supply
/// at that position, so equal points have equal representations and derived
/// equality is semantic equality. This class of points is closed under the
/// odometer and its inverse.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct CantorPoint {
    prefix: DigitWord,
    tail: Tail,
}

impl CantorPoint {
    /// Builds a point and reduces it to canonical form.
    pub fn new(prefix: DigitWord, tail: Tail) -> Self {
        let schedule = prefix.schedule.clone();
        let mut digits = prefix.digits;
        while let Some(&last) = digits.last() {
            if last == tail.digit(&schedule, digits.len() - 1) {
                digits.pop();
            } else {
                break;
            }
        }
        Self {
            prefix: DigitWord { digits, schedule },
            tail,
        }
    }

    /// The point (0, 0, ...).
    pub fn zeros(schedule: &RadixSchedule) -> Self {
        Self {
            prefix: DigitWord::empty(schedule),
            tail: Tail::Zeros,
        }
    }

    /// The point (q_0 - 1, q_1 - 1, ...).
    pub fn all_max(schedule: &RadixSchedule) -> Self {
        Self {
            prefix: DigitWord::empty(schedule),
            tail: Tail::Max,
        }
    }

    /// The finite-support point whose first digits are `word` and whose tail
    /// is zeros.
    pub fn from_word(word: DigitWord) -> Self {
        Self::new(word, Tail::Zeros)
    }

    pub fn digit(&self, j: usize) -> u32 {
        if j < self.prefix.len() {
            self.prefix.digit(j)
        } else {
            self.tail.digit(&self.prefix.schedule, j)
        }
    }

    /// The truncation (gamma_0, ..., gamma_{k-1}), expanding the tail as
    /// needed.
    pub fn truncate(&self, k: usize) -> DigitWord {
        let digits = (0..k).map(|j| self.digit(j)).collect();
        DigitWord {
            digits,
            schedule: self.prefix.schedule.clone(),
        }
    }

    pub fn prefix(&self) -> &DigitWord {
        &self.prefix
    }

    pub fn tail(&self) -> Tail {
        self.tail
    }

    pub fn schedule(&self) -> &RadixSchedule {
        &self.prefix.schedule
    }

    pub fn is_all_max(&self) -> bool {
        self.prefix.is_empty() && self.tail == Tail::Max
    }

    pub fn is_zeros(&self) -> bool {
        self.prefix.is_empty() && self.tail == Tail::Zeros
    }
}

impl fmt::Display for CantorPoint {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let tag = match self.tail {
            Tail::Zeros => "Z",
            Tail::Max => "M",
        };
        write!(f, "{}|{}", self.prefix, tag)
    }
}

/// A point of the compactification X = N or K.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub enum XPoint {
    Nat(u64),
    Cantor(CantorPoint),
}

impl fmt::Display for XPoint {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            XPoint::Nat(n) => write!(f, "{n}"),
            XPoint::Cantor(p) => write!(f, "{p}"),
        }
    }
}

/// Parses a point spec: "zeros", "max", "nat:<n>", or "d0,d1,...|Z" /
/// "d0,d1,...|M" (digit prefix, Z = zero tail, M = max tail).
pub fn parse_point(spec: &str, schedule: &RadixSchedule) -> Result<XPoint> {
    match spec {
        "zeros" => return Ok(XPoint::Cantor(CantorPoint::zeros(schedule))),
        "max" => return Ok(XPoint::Cantor(CantorPoint::all_max(schedule))),
        _ => {}
    }
    if let Some(n) = spec.strip_prefix("nat:") {
        let n = n
            .parse::<u64>()
            .map_err(|e| Error::Parse(format!("bad natural {n:?}: {e}")))?;
        return Ok(XPoint::Nat(n));
    }
    let Some((digits_part, tail_part)) = spec.rsplit_once('|') else {
        return Err(Error::Parse(format!(
            "bad point spec {spec:?}: expected zeros, max, nat:<n>, or d0,d1,...|Z/M"
        )));
    };
    let tail = match tail_part {
        "Z" => Tail::Zeros,
        "M" => Tail::Max,
        other => {
            return Err(Error::Parse(format!(
                "bad tail tag {other:?}: expected Z or M"
            )))
        }
    };
    let digits = if digits_part.is_empty() {
        Vec::new()
    } else {
        digits_part
            .split(',')
            .map(|part| {
                part.trim()
                    .parse::<u32>()
                    .map_err(|e| Error::Parse(format!("bad digit {part:?}: {e}")))
            })
            .collect::<Result<Vec<_>>>()?
    };
    let word = DigitWord::new(digits, schedule)?;
    Ok(XPoint::Cantor(CantorPoint::new(word, tail)))
}
