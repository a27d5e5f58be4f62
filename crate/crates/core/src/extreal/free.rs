//! Free series monoids: `N ∪ {inf}` on one generator, and countably
//! supported `N ∪ {inf}`-valued functions on an arbitrary generator set.

use alloc::collections::BTreeMap;
use alloc::format;
use alloc::vec::Vec;
use core::fmt;

use thiserror::Error;

use super::extnat::ExtNat;
use crate::series::laws::CheckOutcome;
use crate::series::{binary_add, multiple, ApproxLevel, Family, FamilyKind, SeriesMonoid, Summed, Verdict};

pub trait Generator: Ord + Clone + fmt::Debug + Send + Sync + 'static {}

impl<T: Ord + Clone + fmt::Debug + Send + Sync + 'static> Generator for T {}

/// A countably supported map from generators to `N ∪ {inf}`; stored
/// coefficients are non-zero.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct FreeSeriesElem<X: Ord> {
    coeffs: BTreeMap<X, ExtNat>,
}

impl<X: Generator> FreeSeriesElem<X> {
    pub fn zero() -> Self {
        FreeSeriesElem { coeffs: BTreeMap::new() }
    }

    pub fn generator(x: X) -> Self {
        FreeSeriesElem::from_coeffs([(x, ExtNat::ONE)])
    }

    pub fn from_coeffs(coeffs: impl IntoIterator<Item = (X, ExtNat)>) -> Self {
        let mut out = FreeSeriesElem::zero();
        for (x, c) in coeffs {
            out.add_coeff(x, c);
        }
        out
    }

    fn add_coeff(&mut self, x: X, c: ExtNat) {
        if c.is_zero() {
            return;
        }
        let slot = self.coeffs.entry(x).or_insert(ExtNat::ZERO);
        *slot = slot.add(c);
    }

    pub fn coeff(&self, x: &X) -> ExtNat {
        self.coeffs.get(x).copied().unwrap_or(ExtNat::ZERO)
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    pub fn iter(&self) -> impl Iterator<Item = (&X, &ExtNat)> {
        self.coeffs.iter()
    }

    pub fn add(&self, other: &Self) -> Self {
        let mut out = self.clone();
        for (x, c) in &other.coeffs {
            out.add_coeff(x.clone(), *c);
        }
        out
    }
}

/// The free series monoid on generators of type `X`.
#[derive(Debug)]
pub struct FreeSeriesMonoid<X> {
    _gen: core::marker::PhantomData<fn() -> X>,
}

impl<X> Default for FreeSeriesMonoid<X> {
    fn default() -> Self {
        FreeSeriesMonoid { _gen: core::marker::PhantomData }
    }
}

impl<X> Clone for FreeSeriesMonoid<X> {
    fn clone(&self) -> Self {
        FreeSeriesMonoid::default()
    }
}

impl<X: Generator> SeriesMonoid for FreeSeriesMonoid<X> {
    type Elem = FreeSeriesElem<X>;

    fn name(&self) -> &str {
        "free"
    }

    fn zero(&self) -> FreeSeriesElem<X> {
        FreeSeriesElem::zero()
    }

    fn is_zero(&self, a: &FreeSeriesElem<X>) -> bool {
        a.is_zero()
    }

    fn sum_within(&self, fam: &Family<FreeSeriesElem<X>>, budget: usize) -> Summed<FreeSeriesElem<X>> {
        let add_all = |it: &mut dyn Iterator<Item = FreeSeriesElem<X>>| {
            it.fold(FreeSeriesElem::zero(), |acc, v| acc.add(&v))
        };
        match fam.kind() {
            FamilyKind::Finite(entries) => Summed::exact(add_all(&mut entries.iter().map(|(_, v)| v.clone()))),
            FamilyKind::Constant(v) => {
                Summed::exact(FreeSeriesElem::from_coeffs(v.iter().map(|(x, _)| (x.clone(), ExtNat::Inf))))
            }
            FamilyKind::Lazy { .. } => match fam.support_bound() {
                Some(n) => Summed::exact(add_all(&mut fam.prefix(n).into_iter())),
                // the generators carrying infinitely many terms cannot be found by scanning
                None => Summed::partial(add_all(&mut fam.prefix(budget).into_iter())),
            },
        }
    }

    fn eq_at(&self, a: &FreeSeriesElem<X>, b: &FreeSeriesElem<X>, _level: ApproxLevel) -> Verdict {
        Verdict::from_bool(a == b)
    }

    fn decide_eq(&self, a: &FreeSeriesElem<X>, b: &FreeSeriesElem<X>) -> Option<bool> {
        Some(a == b)
    }

    fn subtract(&self, b: &FreeSeriesElem<X>, a: &FreeSeriesElem<X>) -> Option<Option<FreeSeriesElem<X>>> {
        let mut u = FreeSeriesElem::zero();
        for (x, c) in &a.coeffs {
            if b.coeff(x).checked_sub(*c).is_none() {
                return Some(None);
            }
        }
        for (x, c) in &b.coeffs {
            match c.checked_sub(a.coeff(x)) {
                Some(d) => u.add_coeff(x.clone(), d),
                None => return Some(None),
            }
        }
        Some(Some(u))
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Error)]
pub enum FreeError {
    #[error("generator {0} has no assigned image")]
    Unassigned(alloc::string::String),
}

/// `f_a(n) = n·a`, `f_a(inf) = a + a + ...`: the morphism out of
/// `N ∪ {inf}` sending `1` to `a`.
pub fn extend_one<T: SeriesMonoid>(target: &T, a: &T::Elem, n: ExtNat) -> T::Elem {
    match n {
        ExtNat::Inf => target.sum(&target.constant(a.clone())),
        ExtNat::Fin(n) if n <= 64 => multiple(target, n as usize, a),
        ExtNat::Fin(n) => {
            // double-and-add
            let mut acc = target.zero();
            let mut power = a.clone();
            let mut rest = n;
            while rest > 0 {
                if rest & 1 == 1 {
                    acc = binary_add(target, &acc, &power);
                }
                power = binary_add(target, &power, &power);
                rest >>= 1;
            }
            acc
        }
    }
}

/// The unique series-monoid morphism `Free(X) -> target` extending
/// `assignment` on generators.
pub fn free_extend<'a, X: Generator, T: SeriesMonoid>(
    target: &'a T,
    assignment: impl Fn(&X) -> Option<T::Elem> + 'a,
) -> impl Fn(&FreeSeriesElem<X>) -> Result<T::Elem, FreeError> + 'a {
    move |x| {
        let mut parts = Vec::new();
        for (g, c) in x.iter() {
            let a = assignment(g).ok_or_else(|| FreeError::Unassigned(format!("{g:?}")))?;
            parts.push(extend_one(target, &a, *c));
        }
        Ok(target.sum(&target.family(parts)))
    }
}

/// Checks that `a ↦ f_a` inverts evaluation at `1`: `f_a(1) = a` for each
/// sample `a`, and `f_{f(1)} = f` for each morphism given as a table of
/// values on `N ∪ {inf}` (which must contain the entry at `1`).
pub fn ev1_bijection_check<T: SeriesMonoid>(
    target: &T,
    samples: &[T::Elem],
    tables: &[Vec<(ExtNat, T::Elem)>],
    level: ApproxLevel,
) -> CheckOutcome {
    let mut outcome = CheckOutcome::Pass;
    for a in samples {
        let v = target.eq_at(&extend_one(target, a, ExtNat::ONE), a, level);
        outcome = outcome.and(CheckOutcome::from_verdict(v, || format!("f_a(1) != a for a = {a:?}")));
    }
    for table in tables {
        let Some((_, at_one)) = table.iter().find(|(n, _)| *n == ExtNat::ONE) else {
            outcome = outcome.and(CheckOutcome::Invalid("table lacks the value at 1".into()));
            continue;
        };
        for (n, fx) in table {
            let v = target.eq_at(&extend_one(target, at_one, *n), fx, level);
            outcome = outcome.and(CheckOutcome::from_verdict(v, || format!("f_(f(1))({n}) != f({n})")));
        }
    }
    outcome
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::extreal::{ExtNats, FiniteLattice, LowerReal, LowerReals};
    use crate::DyadicExt;
    use alloc::vec;

    const L: ApproxLevel = ApproxLevel(32);

    #[test]
    fn one_generator_extension() {
        let f = free_extend(&ExtNats, |_: &()| Some(ExtNat::Fin(2)));
        assert_eq!(f(&FreeSeriesElem::from_coeffs([((), ExtNat::Fin(3))])).unwrap(), ExtNat::Fin(6));
        assert_eq!(f(&FreeSeriesElem::from_coeffs([((), ExtNat::Inf)])).unwrap(), ExtNat::Inf);
        assert_eq!(f(&FreeSeriesElem::zero()).unwrap(), ExtNat::ZERO);
        assert_eq!(extend_one(&ExtNats, &ExtNat::Fin(3), ExtNat::Fin(1000)), ExtNat::Fin(3000));
    }

    #[test]
    fn unassigned_generator_is_an_error() {
        let f = free_extend(&ExtNats, |g: &u8| (*g == 0).then_some(ExtNat::ONE));
        let x = FreeSeriesElem::from_coeffs([(0u8, ExtNat::ONE), (1u8, ExtNat::ONE)]);
        assert!(matches!(f(&x), Err(FreeError::Unassigned(_))));
    }

    #[test]
    fn free_sums_are_pointwise() {
        let m = FreeSeriesMonoid::<char>::default();
        let fam = m.family(vec![
            FreeSeriesElem::from_coeffs([('a', 1.into()), ('b', 2.into())]),
            FreeSeriesElem::from_coeffs([('b', ExtNat::Inf)]),
        ]);
        let s = m.sum(&fam);
        assert_eq!(s.coeff(&'a'), ExtNat::ONE);
        assert_eq!(s.coeff(&'b'), ExtNat::Inf);
        assert_eq!(m.sum(&m.constant(FreeSeriesElem::generator('c'))).coeff(&'c'), ExtNat::Inf);
    }

    #[test]
    fn evaluation_at_one_is_bijective() {
        let table: Vec<(ExtNat, ExtNat)> =
            vec![(ExtNat::ZERO, ExtNat::ZERO), (ExtNat::ONE, 5.into()), (4.into(), 20.into()), (ExtNat::Inf, ExtNat::Inf)];
        assert_eq!(ev1_bijection_check(&ExtNats, &[5.into()], &[table], L), CheckOutcome::Pass);

        let half = LowerReal::exact("1/2".parse().unwrap());
        assert_eq!(ev1_bijection_check(&LowerReals, core::slice::from_ref(&half), &[], L), CheckOutcome::Pass);
        let at_inf = extend_one(&LowerReals, &half, ExtNat::Inf);
        assert_eq!(at_inf.exact_value(), Some(&DyadicExt::Inf));

        let b = FiniteLattice::boolean();
        assert_eq!(extend_one(&b, &1, ExtNat::Fin(3)), 1);
        assert_eq!(extend_one(&b, &1, ExtNat::Inf), 1);
    }
}
