use alloc::string::String;
use alloc::vec::Vec;

use super::extnat::ExtNat;
use crate::series::{ApproxLevel, Extent, Family, FamilyKind, SeriesMonoid, Summed, Verdict};

/// A finite lattice on `0..size`, given by its order relation. Element `0`
/// is the bottom.
#[derive(Clone, Debug)]
pub struct FiniteLattice {
    name: String,
    leq: Vec<Vec<bool>>,
    top: usize,
}

impl FiniteLattice {
    /// Builds a lattice from `leq[a][b] <=> a <= b`. Returns `None` unless
    /// the relation is a partial order with bottom `0` and all binary joins.
    pub fn from_order(name: &str, leq: Vec<Vec<bool>>) -> Option<Self> {
        let n = leq.len();
        if n == 0 || leq.iter().any(|row| row.len() != n) {
            return None;
        }
        let le = |a: usize, b: usize| leq[a][b];
        let partial_order = (0..n).all(|a| le(a, a))
            && (0..n).all(|a| (0..n).all(|b| a == b || !(le(a, b) && le(b, a))))
            && (0..n).all(|a| (0..n).all(|b| (0..n).all(|c| !(le(a, b) && le(b, c)) || le(a, c))));
        if !partial_order || !(0..n).all(|a| le(0, a)) {
            return None;
        }
        let top = (0..n).find(|&t| (0..n).all(|a| le(a, t)))?;
        let lattice = FiniteLattice { name: name.into(), leq, top };
        for a in 0..n {
            for b in 0..n {
                lattice.try_join(a, b)?;
            }
        }
        Some(lattice)
    }

    /// `{bottom < top}`.
    pub fn boolean() -> Self {
        FiniteLattice::chain("bool", 2)
    }

    /// `0 < 1 < ... < n-1`.
    pub fn chain(name: &str, n: usize) -> Self {
        let leq = (0..n).map(|a| (0..n).map(|b| a <= b).collect()).collect();
        FiniteLattice::from_order(name, leq).expect("a chain is a lattice")
    }

    /// Subsets of a `bits`-element set, encoded as bitmasks.
    pub fn powerset(name: &str, bits: u32) -> Self {
        let n = 1usize << bits;
        let leq = (0..n).map(|a| (0..n).map(|b| a & !b == 0).collect()).collect();
        FiniteLattice::from_order(name, leq).expect("a powerset is a lattice")
    }

    pub fn size(&self) -> usize {
        self.leq.len()
    }

    pub fn top(&self) -> usize {
        self.top
    }

    pub fn leq(&self, a: usize, b: usize) -> bool {
        self.leq[a][b]
    }

    fn try_join(&self, a: usize, b: usize) -> Option<usize> {
        let n = self.size();
        let uppers: Vec<usize> = (0..n).filter(|&c| self.leq(a, c) && self.leq(b, c)).collect();
        uppers.iter().copied().find(|&c| uppers.iter().all(|&d| self.leq(c, d)))
    }

    pub fn join(&self, a: usize, b: usize) -> usize {
        self.try_join(a, b).expect("validated lattice has all joins")
    }
}

/// Supremum of a family in a finite lattice. A lazy scan stops at the top.
pub fn sup_lattice_sum(lattice: &FiniteLattice, fam: &Family<usize>, budget: usize) -> Summed<usize> {
    let join_all = |it: &mut dyn Iterator<Item = usize>| it.fold(0, |acc, x| lattice.join(acc, x));
    match fam.kind() {
        FamilyKind::Finite(entries) => Summed::exact(join_all(&mut entries.iter().map(|(_, v)| *v))),
        FamilyKind::Constant(v) => Summed::exact(*v),
        FamilyKind::Lazy { gen, extent } => match extent {
            Extent::Bounded(n) => Summed::exact(join_all(&mut (0..*n).map(|i| gen(i)))),
            Extent::Unbounded => Summed::exact(lattice.top()),
            Extent::Infinite | Extent::Unknown => {
                let mut acc = 0;
                for i in 0..budget {
                    acc = lattice.join(acc, gen(i));
                    if acc == lattice.top() {
                        return Summed::exact(acc);
                    }
                }
                Summed::partial(acc)
            }
        },
    }
}

impl SeriesMonoid for FiniteLattice {
    type Elem = usize;

    fn name(&self) -> &str {
        &self.name
    }

    fn zero(&self) -> usize {
        0
    }

    fn is_zero(&self, a: &usize) -> bool {
        *a == 0
    }

    fn sum_within(&self, fam: &Family<usize>, budget: usize) -> Summed<usize> {
        sup_lattice_sum(self, fam, budget)
    }

    fn eq_at(&self, a: &usize, b: &usize, _level: ApproxLevel) -> Verdict {
        Verdict::from_bool(a == b)
    }

    fn decide_eq(&self, a: &usize, b: &usize) -> Option<bool> {
        Some(a == b)
    }

    fn enumerate(&self, index: usize) -> Option<usize> {
        (index < self.size()).then_some(index)
    }

    fn is_idempotent(&self) -> bool {
        true
    }
}

/// `N ∪ {inf}` with countable supremum as its sum.
#[derive(Clone, Copy, Debug, Default)]
pub struct ExtNatMax;

impl SeriesMonoid for ExtNatMax {
    type Elem = ExtNat;

    fn name(&self) -> &str {
        "extnat-max"
    }

    fn zero(&self) -> ExtNat {
        ExtNat::ZERO
    }

    fn is_zero(&self, a: &ExtNat) -> bool {
        a.is_zero()
    }

    fn sum_within(&self, fam: &Family<ExtNat>, budget: usize) -> Summed<ExtNat> {
        let max_all = |it: &mut dyn Iterator<Item = ExtNat>| it.fold(ExtNat::ZERO, Ord::max);
        match fam.kind() {
            FamilyKind::Finite(entries) => Summed::exact(max_all(&mut entries.iter().map(|(_, v)| *v))),
            FamilyKind::Constant(v) => Summed::exact(*v),
            FamilyKind::Lazy { gen, extent } => match extent {
                Extent::Bounded(n) => Summed::exact(max_all(&mut (0..*n).map(|i| gen(i)))),
                Extent::Unbounded => Summed::exact(ExtNat::Inf),
                Extent::Infinite | Extent::Unknown => {
                    let mut acc = ExtNat::ZERO;
                    for i in 0..budget {
                        acc = acc.max(gen(i));
                        if acc == ExtNat::Inf {
                            return Summed::exact(acc);
                        }
                    }
                    Summed::partial(acc)
                }
            },
        }
    }

    fn eq_at(&self, a: &ExtNat, b: &ExtNat, _level: ApproxLevel) -> Verdict {
        Verdict::from_bool(a == b)
    }

    fn decide_eq(&self, a: &ExtNat, b: &ExtNat) -> Option<bool> {
        Some(a == b)
    }

    fn subtract(&self, b: &ExtNat, a: &ExtNat) -> Option<Option<ExtNat>> {
        // max(a, u) = b has the solution u = b exactly when a <= b
        Some((a <= b).then_some(*b))
    }

    fn is_idempotent(&self) -> bool {
        true
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use alloc::vec;

    #[test]
    fn boolean_and_chain_sums() {
        let b = FiniteLattice::boolean();
        assert_eq!(b.sum(&b.family(vec![0, 1, 0])), 1);
        let c = FiniteLattice::chain("chain3", 3);
        let f = Family::from_entries(0, [(0, 1), (5, 2)], |x: &usize| *x == 0).unwrap();
        assert_eq!(c.sum(&f), 2);
        assert_eq!(c.sum(&c.family(vec![1, 1, 0])), 1);
    }

    #[test]
    fn lazy_scan_stops_at_top() {
        let c = FiniteLattice::chain("chain3", 3);
        let f = Family::lazy(0, |i| if i >= 7 { 2 } else { 1 }, Extent::Unknown);
        assert_eq!(c.sum_within(&f, 100), Summed::exact(2));
        let never = Family::lazy(0, |_| 1, Extent::Unknown);
        assert_eq!(c.sum_within(&never, 100), Summed::partial(1));
    }

    #[test]
    fn extnat_max_sums() {
        let up = Family::lazy(ExtNat::ZERO, |i| ExtNat::Fin(i as u64), Extent::Unknown);
        assert!(!ExtNatMax.sum_within(&up, 50).complete);
        let declared = Family::lazy(ExtNat::ZERO, |i| ExtNat::Fin(i as u64), Extent::Unbounded);
        assert_eq!(ExtNatMax.sum_within(&declared, 50), Summed::exact(ExtNat::Inf));
    }

    #[test]
    fn non_lattices_rejected() {
        // two incomparable maximal elements above bottom: no top
        let leq = vec![vec![true, true, true], vec![false, true, false], vec![false, false, true]];
        assert!(FiniteLattice::from_order("v", leq).is_none());
        let p = FiniteLattice::powerset("p2", 2);
        assert_eq!(p.join(1, 2), 3);
        assert_eq!(p.top(), 3);
    }
}
