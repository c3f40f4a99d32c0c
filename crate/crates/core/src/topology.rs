//! The topology of X = N or K: basic idempotents of the diagonal algebra,
//! their supports, the neighborhoods V_k gluing naturals to Cantor points,
//! and convergence of sequences of naturals.

use crate::error::Result;
use crate::radix::{CantorPoint, DigitWord, XPoint};
use serde::ser::{Serialize, SerializeMap, Serializer};
use std::collections::BTreeSet;

/// A basic idempotent of the diagonal algebra: either the indicator of a
/// finite set of naturals, or a cylinder indicator e_beta corrected on
/// finitely many naturals.
///
/// Canonical form (maintained by the constructors): `add` is disjoint from
/// the residue class of `beta` and `remove` is contained in it, so equal
/// functions have equal representations.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum BasicIdempotent {
    FiniteSet(BTreeSet<u64>),
    ModifiedCylinder {
        beta: DigitWord,
        add: BTreeSet<u64>,
        remove: BTreeSet<u64>,
    },
}

impl BasicIdempotent {
    pub fn finite<I: IntoIterator<Item = u64>>(set: I) -> Self {
        BasicIdempotent::FiniteSet(set.into_iter().collect())
    }

    /// The cylinder indicator e_beta: 1 on naturals congruent to value(beta)
    /// mod n_k, and on Cantor points whose initial segment is beta.
    pub fn e_beta(beta: DigitWord) -> Result<Self> {
        Self::modified_cylinder(beta, [], [])
    }

    /// A cylinder indicator with finite corrections, canonicalized so that
    /// the stored sets modify the residue class genuinely.
    pub fn modified_cylinder<A, R>(beta: DigitWord, add: A, remove: R) -> Result<Self>
    where
        A: IntoIterator<Item = u64>,
        R: IntoIterator<Item = u64>,
    {
        let size = beta.level_size()?;
        let residue = beta.value()?;
        let in_class = |n: u64| n % size == residue;
        let add: BTreeSet<u64> = add.into_iter().collect();
        let remove: BTreeSet<u64> = remove.into_iter().collect();
        // Intended support: (class minus remove) union add.
        let canonical_remove = remove
            .iter()
            .copied()
            .filter(|&n| in_class(n) && !add.contains(&n))
            .collect();
        let canonical_add = add.into_iter().filter(|&n| !in_class(n)).collect();
        Ok(BasicIdempotent::ModifiedCylinder {
            beta,
            add: canonical_add,
            remove: canonical_remove,
        })
    }

    /// Indicator value at a natural.
    pub fn contains_nat(&self, n: u64) -> bool {
        match self {
            BasicIdempotent::FiniteSet(set) => set.contains(&n),
            BasicIdempotent::ModifiedCylinder { beta, add, remove } => {
                let size = beta
                    .level_size()
                    .expect("level size was computable at construction");
                let residue = beta.value().expect("value was computable at construction");
                (n % size == residue && !remove.contains(&n)) || add.contains(&n)
            }
        }
    }

    /// Indicator value at a Cantor point; finite sets of naturals vanish
    /// on K.
    pub fn contains_cantor(&self, p: &CantorPoint) -> bool {
        match self {
            BasicIdempotent::FiniteSet(_) => false,
            BasicIdempotent::ModifiedCylinder { beta, .. } => p.truncate(beta.len()) == *beta,
        }
    }

    pub fn contains(&self, x: &XPoint) -> bool {
        match x {
            XPoint::Nat(n) => self.contains_nat(*n),
            XPoint::Cantor(p) => self.contains_cantor(p),
        }
    }
}

/// Pointwise product of two basic idempotents; always lands back in one of
/// the two canonical forms. Residue classes over one schedule are nested or
/// disjoint, so two cylinders meet in a cylinder or in a finite set.
pub fn multiply(p: &BasicIdempotent, q: &BasicIdempotent) -> Result<BasicIdempotent> {
    use BasicIdempotent::*;
    match (p, q) {
        (FiniteSet(a), FiniteSet(b)) => Ok(BasicIdempotent::finite(a.intersection(b).copied())),
        (FiniteSet(a), ModifiedCylinder { .. }) => Ok(BasicIdempotent::finite(
            a.iter().copied().filter(|&n| q.contains_nat(n)),
        )),
        (ModifiedCylinder { .. }, FiniteSet(b)) => Ok(BasicIdempotent::finite(
            b.iter().copied().filter(|&n| p.contains_nat(n)),
        )),
        (
            ModifiedCylinder {
                beta: beta_p,
                add: add_p,
                remove: remove_p,
            },
            ModifiedCylinder {
                beta: beta_q,
                add: add_q,
                remove: remove_q,
            },
        ) => {
            // Orient so that `coarse` has the shorter word (larger class).
            let (coarse, fine, coarse_side, fine_side) = if beta_p.len() <= beta_q.len() {
                ((beta_p, add_p, remove_p), (beta_q, add_q, remove_q), p, q)
            } else {
                ((beta_q, add_q, remove_q), (beta_p, add_p, remove_p), q, p)
            };
            let nested = fine.0.digits()[..coarse.0.len()] == *coarse.0.digits();
            if nested {
                let remove = fine
                    .2
                    .iter()
                    .chain(coarse.2.iter())
                    .copied()
                    .collect::<BTreeSet<u64>>();
                let add = fine
                    .1
                    .iter()
                    .copied()
                    .filter(|&n| coarse_side.contains_nat(n))
                    .collect::<BTreeSet<u64>>();
                BasicIdempotent::modified_cylinder(fine.0.clone(), add, remove)
            } else {
                // Disjoint classes: only the finite corrections can survive.
                let support = coarse
                    .1
                    .iter()
                    .copied()
                    .filter(|&n| fine_side.contains_nat(n))
                    .chain(fine.1.iter().copied().filter(|&n| coarse_side.contains_nat(n)))
                    .collect::<BTreeSet<u64>>();
                Ok(BasicIdempotent::FiniteSet(support))
            }
        }
    }
}

/// The support of an idempotent inside X: the natural part enumerated below
/// `bound`, the Cantor part symbolic (the cylinder word, if any).
pub fn support_in_x(p: &BasicIdempotent, bound: u64) -> (BTreeSet<u64>, Option<DigitWord>) {
    let naturals = (0..bound).filter(|&n| p.contains_nat(n)).collect();
    let cylinder = match p {
        BasicIdempotent::FiniteSet(_) => None,
        BasicIdempotent::ModifiedCylinder { beta, .. } => Some(beta.clone()),
    };
    (naturals, cylinder)
}

/// The basic neighborhood V_k(gamma): Cantor points sharing the first k
/// digits with gamma, together with the naturals n >= k whose first k digits
/// match. The n >= k requirement is what keeps any fixed natural out of all
/// small neighborhoods while letting arbitrarily large ones in.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Neighborhood {
    center_word: DigitWord,
    level: usize,
    level_size: u64,
    residue: u64,
}

/// Builds V_k around a Cantor point.
pub fn v_k_neighborhood(gamma: &CantorPoint, k: usize) -> Result<Neighborhood> {
    let center_word = gamma.truncate(k);
    let level_size = center_word.level_size()?;
    let residue = center_word.value()?;
    Ok(Neighborhood {
        center_word,
        level: k,
        level_size,
        residue,
    })
}

impl Neighborhood {
    pub fn level(&self) -> usize {
        self.level
    }

    /// The shared digit prefix of every member.
    pub fn center_word(&self) -> &DigitWord {
        &self.center_word
    }

    pub fn contains(&self, x: &XPoint) -> bool {
        match x {
            XPoint::Nat(n) => *n >= self.level as u64 && n % self.level_size == self.residue,
            XPoint::Cantor(p) => p.truncate(self.level) == self.center_word,
        }
    }
}

/// Whether a finite sequence of naturals (standing in for a sequence tail)
/// converges to `gamma` at every resolution up to `k_max`: for each k there
/// must be an index past which all entries lie in V_k(gamma). For a finite
/// list that witness is a nonempty suffix.
pub fn converges_to(seq: &[u64], gamma: &CantorPoint, k_max: usize) -> Result<bool> {
    for k in 0..=k_max {
        let v = v_k_neighborhood(gamma, k)?;
        let suffix_inside = seq
            .iter()
            .rev()
            .take_while(|&&n| v.contains(&XPoint::Nat(n)))
            .count();
        if suffix_inside == 0 {
            return Ok(false);
        }
    }
    Ok(true)
}

/// Serializes as {"type":"finite","set":[...]} or
/// {"type":"cylinder","beta":[...],"add":[...],"remove":[...]}.
impl Serialize for BasicIdempotent {
    fn serialize<S: Serializer>(&self, serializer: S) -> std::result::Result<S::Ok, S::Error> {
        match self {
            BasicIdempotent::FiniteSet(set) => {
                let mut map = serializer.serialize_map(Some(2))?;
                map.serialize_entry("type", "finite")?;
                map.serialize_entry("set", &set.iter().collect::<Vec<_>>())?;
                map.end()
            }
            BasicIdempotent::ModifiedCylinder { beta, add, remove } => {
                let mut map = serializer.serialize_map(Some(4))?;
                map.serialize_entry("type", "cylinder")?;
                map.serialize_entry("beta", beta.digits())?;
                map.serialize_entry("add", &add.iter().collect::<Vec<_>>())?;
                map.serialize_entry("remove", &remove.iter().collect::<Vec<_>>())?;
                map.end()
            }
        }
    }
}
