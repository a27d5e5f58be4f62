//! Concrete series monoids: the extended naturals, exact dyadics, `[0, inf]`
//! as lower reals, sup-lattices, biproducts and free series monoids.

mod biproduct;
mod dyadic;
mod extnat;
mod free;
mod lower;
mod suplattice;

pub use biproduct::{Biproduct, ElemMap};
pub use dyadic::{Dyadic, DyadicExt};
pub use extnat::{extnat_sum, ExtNat, ExtNats};
pub use free::{ev1_bijection_check, extend_one, free_extend, FreeError, FreeSeriesElem, FreeSeriesMonoid};
pub use lower::{
    geometric_family, geometric_pow2_tail, lower_real_sum, lower_real_sum_certified, BoundFn, LowerReal,
    LowerReals, Modulus, TailCertificate,
};
pub use suplattice::{sup_lattice_sum, ExtNatMax, FiniteLattice};

pub(crate) use dyadic::is_power_of_two;

use crate::series::{ApproxLevel, Extent, Family, FamilyKind, SeriesMonoid, Summed, Verdict};

/// The exact dyadic sub-carrier of `[0, inf]`. Sums of lazy families that
/// are not boundedly supported are partial unless they hit `inf`.
#[derive(Clone, Copy, Debug, Default)]
pub struct Dyadics;

impl SeriesMonoid for Dyadics {
    type Elem = DyadicExt;

    fn name(&self) -> &str {
        "dyadic"
    }

    fn zero(&self) -> DyadicExt {
        DyadicExt::zero()
    }

    fn is_zero(&self, a: &DyadicExt) -> bool {
        a.is_zero()
    }

    fn sum_within(&self, fam: &Family<DyadicExt>, budget: usize) -> Summed<DyadicExt> {
        let total = |it: &mut dyn Iterator<Item = DyadicExt>| it.fold(DyadicExt::zero(), |a, b| a.add(&b));
        match fam.kind() {
            FamilyKind::Finite(entries) => Summed::exact(total(&mut entries.iter().map(|(_, v)| v.clone()))),
            // a non-zero dyadic repeated forever diverges
            FamilyKind::Constant(_) => Summed::exact(DyadicExt::Inf),
            FamilyKind::Lazy { gen, extent } => match extent {
                Extent::Bounded(n) => Summed::exact(total(&mut (0..*n).map(|i| gen(i)))),
                Extent::Unbounded => Summed::exact(DyadicExt::Inf),
                Extent::Infinite | Extent::Unknown => {
                    let mut acc = DyadicExt::zero();
                    for i in 0..budget {
                        acc = acc.add(&gen(i));
                        if acc.is_inf() {
                            return Summed::exact(acc);
                        }
                    }
                    Summed::partial(acc)
                }
            },
        }
    }

    fn eq_at(&self, a: &DyadicExt, b: &DyadicExt, _level: ApproxLevel) -> Verdict {
        Verdict::from_bool(a == b)
    }

    fn decide_eq(&self, a: &DyadicExt, b: &DyadicExt) -> Option<bool> {
        Some(a == b)
    }

    fn subtract(&self, b: &DyadicExt, a: &DyadicExt) -> Option<Option<DyadicExt>> {
        Some(b.checked_sub(a))
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::series::{leq_witness, LeqWitness};

    #[test]
    fn dyadic_witness() {
        let a: DyadicExt = "1/2".parse().unwrap();
        let b: DyadicExt = "3/4".parse().unwrap();
        assert_eq!(
            leq_witness(&Dyadics, &a, &b, 0, ApproxLevel(0)),
            LeqWitness::Found("1/4".parse().unwrap())
        );
    }

    #[test]
    fn dyadic_lazy_sums() {
        let halves = Family::lazy(DyadicExt::zero(), |i| DyadicExt::new(1u32, i as u32 + 1), Extent::Infinite);
        assert!(!Dyadics.sum_within(&halves, 30).complete);
        assert_eq!(Dyadics.sum(&Dyadics.constant("1/2".parse().unwrap())), DyadicExt::Inf);
    }
}
