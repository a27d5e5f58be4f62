//! The series-monoid interface, countable families, derived operations and
//! the law-checking harness shared by every instance.

mod family;
pub mod harness;
pub mod laws;

use alloc::vec::Vec;

pub use family::{Element, Extent, Family, FamilyError, FamilyKind, Generator, Subset};

/// Entries scanned before a sum over a family of unknown extent gives up.
pub const DEFAULT_BUDGET: usize = 4096;

/// How many dyadic fraction bits (equivalently, stream stages) a
/// semi-decidable comparison inspects.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct ApproxLevel(pub u32);

impl ApproxLevel {
    pub const fn bits(self) -> u32 {
        self.0
    }
}

/// Tri-state equality.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Verdict {
    Equal,
    Unequal,
    /// Not settled at this approximation level.
    Unknown,
}

impl Verdict {
    pub fn from_bool(b: bool) -> Self {
        if b {
            Verdict::Equal
        } else {
            Verdict::Unequal
        }
    }
}

/// A sum together with whether it was computed completely.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Summed<E> {
    pub value: E,
    /// `false` when a lazy family ran out of budget; `value` is then only a
    /// partial sum.
    pub complete: bool,
}

impl<E> Summed<E> {
    pub fn exact(value: E) -> Self {
        Summed { value, complete: true }
    }

    pub fn partial(value: E) -> Self {
        Summed { value, complete: false }
    }
}

/// A set with a zero and a countable sum `A^N -> A`.
pub trait SeriesMonoid {
    type Elem: Element;

    fn name(&self) -> &str;

    fn zero(&self) -> Self::Elem;

    fn is_zero(&self, a: &Self::Elem) -> bool;

    /// Sum of `fam`, scanning at most `budget` entries of a family whose
    /// extent is unknown.
    fn sum_within(&self, fam: &Family<Self::Elem>, budget: usize) -> Summed<Self::Elem>;

    fn sum(&self, fam: &Family<Self::Elem>) -> Self::Elem {
        self.sum_within(fam, DEFAULT_BUDGET).value
    }

    fn eq_at(&self, a: &Self::Elem, b: &Self::Elem, level: ApproxLevel) -> Verdict;

    /// Exact equality, where decidable.
    fn decide_eq(&self, _a: &Self::Elem, _b: &Self::Elem) -> Option<bool> {
        None
    }

    /// Subtraction oracle: `Some(Some(u))` with `a + u = b`, `Some(None)` when
    /// no such `u` exists, `None` when the instance cannot decide.
    fn subtract(&self, _b: &Self::Elem, _a: &Self::Elem) -> Option<Option<Self::Elem>> {
        None
    }

    /// An enumeration of the carrier for witness search. Returning `None`
    /// asserts that every element has already been listed.
    fn enumerate(&self, _index: usize) -> Option<Self::Elem> {
        None
    }

    /// Whether the instance claims to be idempotent (a countable-sup lattice).
    fn is_idempotent(&self) -> bool {
        false
    }

    /// The finite-support family `values[0], values[1], ..., 0, ...`.
    fn family(&self, values: Vec<Self::Elem>) -> Family<Self::Elem> {
        Family::from_values(self.zero(), values, |a| self.is_zero(a))
    }

    fn single(&self, n: usize, a: Self::Elem) -> Family<Self::Elem> {
        Family::single(self.zero(), n, a, |x| self.is_zero(x))
    }

    fn constant(&self, a: Self::Elem) -> Family<Self::Elem> {
        Family::constant(self.zero(), a, |x| self.is_zero(x))
    }
}

/// Sum over the subset `subset`, the family being extended by zero off it.
pub fn sum_over_subset<M: SeriesMonoid + ?Sized>(
    inst: &M,
    fam: &Family<M::Elem>,
    subset: &Subset,
) -> M::Elem {
    inst.sum(&fam.restrict(subset, |a| inst.is_zero(a)))
}

/// `a + b`, defined as the sum over `{1, 2}` of `(_, a, b, _, ...)`.
pub fn binary_add<M: SeriesMonoid + ?Sized>(inst: &M, a: &M::Elem, b: &M::Elem) -> M::Elem {
    let fam = inst.family(alloc::vec![inst.zero(), a.clone(), b.clone()]);
    sum_over_subset(inst, &fam, &Subset::of(&[1, 2]))
}

/// `n * a = a + ... + a`.
pub fn multiple<M: SeriesMonoid + ?Sized>(inst: &M, n: usize, a: &M::Elem) -> M::Elem {
    inst.sum(&inst.family(alloc::vec![a.clone(); n]))
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum LeqWitness<E> {
    /// `a + u = b`.
    Found(E),
    /// Exact subtraction shows no `u` exists.
    Disproved,
    /// No witness among the enumerated candidates; inconclusive.
    BudgetExhausted,
}

/// Searches for `u` with `a + u = b` (the derived preorder `a <= b`).
pub fn leq_witness<M: SeriesMonoid + ?Sized>(
    inst: &M,
    a: &M::Elem,
    b: &M::Elem,
    search_budget: usize,
    level: ApproxLevel,
) -> LeqWitness<M::Elem> {
    if let Some(answer) = inst.subtract(b, a) {
        return match answer {
            Some(u) => LeqWitness::Found(u),
            None => LeqWitness::Disproved,
        };
    }
    for i in 0..search_budget {
        // a terminating enumeration lists the whole carrier
        let Some(u) = inst.enumerate(i) else { return LeqWitness::Disproved };
        if inst.eq_at(&binary_add(inst, a, &u), b, level) == Verdict::Equal {
            return LeqWitness::Found(u);
        }
    }
    LeqWitness::BudgetExhausted
}
