use core::fmt;
use core::str::FromStr;

use crate::error::ParseError;
use crate::series::{ApproxLevel, Extent, Family, FamilyKind, SeriesMonoid, Summed, Verdict};

/// An element of `N ∪ {inf}`.
///
/// Finite values are `u64`; arithmetic that leaves that range panics rather
/// than silently saturating to `Inf`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum ExtNat {
    Fin(u64),
    Inf,
}

impl ExtNat {
    pub const ZERO: ExtNat = ExtNat::Fin(0);
    pub const ONE: ExtNat = ExtNat::Fin(1);

    pub fn is_zero(self) -> bool {
        self == ExtNat::ZERO
    }

    pub fn add(self, other: ExtNat) -> ExtNat {
        match (self, other) {
            (ExtNat::Fin(a), ExtNat::Fin(b)) => {
                ExtNat::Fin(a.checked_add(b).expect("ExtNat addition overflowed u64"))
            }
            _ => ExtNat::Inf,
        }
    }

    /// Multiplication with `0 * inf = 0`.
    pub fn mul(self, other: ExtNat) -> ExtNat {
        match (self, other) {
            (ExtNat::Fin(0), _) | (_, ExtNat::Fin(0)) => ExtNat::ZERO,
            (ExtNat::Fin(a), ExtNat::Fin(b)) => {
                ExtNat::Fin(a.checked_mul(b).expect("ExtNat product overflowed u64"))
            }
            _ => ExtNat::Inf,
        }
    }

    /// The `u` with `other + u = self`, if any.
    pub fn checked_sub(self, other: ExtNat) -> Option<ExtNat> {
        match (self, other) {
            (ExtNat::Fin(a), ExtNat::Fin(b)) => a.checked_sub(b).map(ExtNat::Fin),
            (ExtNat::Inf, _) => Some(ExtNat::Inf),
            (ExtNat::Fin(_), ExtNat::Inf) => None,
        }
    }

    pub fn finite(self) -> Option<u64> {
        match self {
            ExtNat::Fin(n) => Some(n),
            ExtNat::Inf => None,
        }
    }
}

impl From<u64> for ExtNat {
    fn from(n: u64) -> Self {
        ExtNat::Fin(n)
    }
}

impl fmt::Display for ExtNat {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            ExtNat::Fin(n) => write!(f, "{n}"),
            ExtNat::Inf => f.write_str("inf"),
        }
    }
}

impl FromStr for ExtNat {
    type Err = ParseError;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        match s.trim() {
            "inf" | "∞" => Ok(ExtNat::Inf),
            t => t.parse().map(ExtNat::Fin).map_err(|_| ParseError::new("extended natural", t)),
        }
    }
}

/// `N ∪ {inf}` with the sum that is finite exactly on finite supports
/// without an `inf` entry.
#[derive(Clone, Copy, Debug, Default)]
pub struct ExtNats;

/// Sum of a family in `N ∪ {inf}`.
pub fn extnat_sum(fam: &Family<ExtNat>, budget: usize) -> Summed<ExtNat> {
    let total = |it: &mut dyn Iterator<Item = ExtNat>| it.fold(ExtNat::ZERO, ExtNat::add);
    match fam.kind() {
        FamilyKind::Finite(entries) => Summed::exact(total(&mut entries.iter().map(|(_, v)| *v))),
        FamilyKind::Constant(_) => Summed::exact(ExtNat::Inf),
        FamilyKind::Lazy { gen, extent } => match extent {
            Extent::Bounded(n) => Summed::exact(total(&mut (0..*n).map(|i| gen(i)))),
            // infinitely many entries >= 1
            Extent::Infinite | Extent::Unbounded => Summed::exact(ExtNat::Inf),
            Extent::Unknown => {
                let mut acc = ExtNat::ZERO;
                for i in 0..budget {
                    acc = acc.add(gen(i));
                    if acc == ExtNat::Inf {
                        return Summed::exact(acc);
                    }
                }
                Summed::partial(acc)
            }
        },
    }
}

impl SeriesMonoid for ExtNats {
    type Elem = ExtNat;

    fn name(&self) -> &str {
        "extnat"
    }

    fn zero(&self) -> ExtNat {
        ExtNat::ZERO
    }

    fn is_zero(&self, a: &ExtNat) -> bool {
        a.is_zero()
    }

    fn sum_within(&self, fam: &Family<ExtNat>, budget: usize) -> Summed<ExtNat> {
        extnat_sum(fam, budget)
    }

    fn eq_at(&self, a: &ExtNat, b: &ExtNat, _level: ApproxLevel) -> Verdict {
        Verdict::from_bool(a == b)
    }

    fn decide_eq(&self, a: &ExtNat, b: &ExtNat) -> Option<bool> {
        Some(a == b)
    }

    fn subtract(&self, b: &ExtNat, a: &ExtNat) -> Option<Option<ExtNat>> {
        Some(b.checked_sub(*a))
    }
}
