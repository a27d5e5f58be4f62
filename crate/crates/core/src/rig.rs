//! Rigs inside series monoids: the subset-product sum `P`, geometric
//! inverses, the logarithm monoid and general associativity along
//! order-preserving maps.

use alloc::format;
use alloc::string::String;
use alloc::vec;
use alloc::vec::Vec;

use num_bigint::BigUint;
use num_traits::Zero;
use rand::{Rng, RngCore};
use thiserror::Error;

use crate::extreal::{extnat_sum, Dyadic, DyadicExt, Dyadics, ExtNat, ExtNats, LowerReal, LowerReals};
use crate::series::harness::Sample;
use crate::series::laws::CheckOutcome;
use crate::series::{
    binary_add, ApproxLevel, Element, Family, FamilyKind, SeriesMonoid, Summed, Verdict, DEFAULT_BUDGET,
};

#[derive(Clone, Debug, PartialEq, Eq, Error)]
pub enum RigError {
    #[error("geometric inverse of 0 does not exist")]
    GeometricZero,
    #[error("geometric inverse needs 0 < a <= 1, got {0}")]
    GeometricOutOfRange(String),
    #[error("{0} is not of the form 1 + u")]
    NoOnePlus(String),
    #[error("rig has no unit")]
    NoUnit,
    #[error("only the last fibre of an order-preserving map may be infinite")]
    InfiniteFibreNotLast,
}

/// A series monoid with an associative multiplication that distributes
/// over its sums.
pub trait Rig: SeriesMonoid {
    fn mul(&self, a: &Self::Elem, b: &Self::Elem) -> Self::Elem;

    fn one(&self) -> Option<Self::Elem>;

    fn is_commutative(&self) -> bool {
        true
    }

    /// `P` of a family that is not finitely supported, as the limit of
    /// the `P` of its prefixes. The default only covers the first `budget`
    /// entries and reports the result as partial.
    fn p_limit(&self, fam: &Family<Self::Elem>, budget: usize) -> Summed<Self::Elem> {
        Summed::partial(p_finite(self, &fam.prefix(budget)))
    }
}

/// `P(x :: rest) = x + P(rest) + x·P(rest)`, `P([]) = 0`. Products keep
/// index order.
pub fn p_finite<R: Rig + ?Sized>(rig: &R, values: &[R::Elem]) -> R::Elem {
    values.iter().rev().fold(rig.zero(), |acc, x| {
        let xp = rig.mul(x, &acc);
        binary_add(rig, &binary_add(rig, x, &acc), &xp)
    })
}

/// Sum over the non-empty finite subsets `S` of the products `prod_{m in S} a_m`.
pub fn p_sum<R: Rig + ?Sized>(rig: &R, fam: &Family<R::Elem>, budget: usize) -> Summed<R::Elem> {
    match fam.kind() {
        FamilyKind::Finite(entries) => {
            let values: Vec<R::Elem> = entries.iter().map(|(_, v)| v.clone()).collect();
            Summed::exact(p_finite(rig, &values))
        }
        _ => match fam.support_bound() {
            Some(n) => Summed::exact(p_finite(rig, &fam.prefix(n))),
            None => rig.p_limit(fam, budget),
        },
    }
}

impl Rig for ExtNats {
    fn mul(&self, a: &ExtNat, b: &ExtNat) -> ExtNat {
        a.mul(*b)
    }

    fn one(&self) -> Option<ExtNat> {
        Some(ExtNat::ONE)
    }

    /// `P` is infinite exactly when the plain sum is.
    fn p_limit(&self, fam: &Family<ExtNat>, budget: usize) -> Summed<ExtNat> {
        let s = extnat_sum(fam, budget);
        if s.complete && s.value == ExtNat::Inf {
            return Summed::exact(ExtNat::Inf);
        }
        Summed::partial(p_finite(self, &fam.prefix(budget)))
    }
}

impl Rig for Dyadics {
    fn mul(&self, a: &DyadicExt, b: &DyadicExt) -> DyadicExt {
        a.mul(b)
    }

    fn one(&self) -> Option<DyadicExt> {
        Some(DyadicExt::one())
    }

    fn p_limit(&self, fam: &Family<DyadicExt>, budget: usize) -> Summed<DyadicExt> {
        let s = self.sum_within(fam, budget);
        if s.complete && s.value.is_inf() {
            return Summed::exact(DyadicExt::Inf);
        }
        Summed::partial(p_finite(self, &fam.prefix(budget)))
    }
}

impl Rig for LowerReals {
    fn mul(&self, a: &LowerReal, b: &LowerReal) -> LowerReal {
        a.mul(b)
    }

    fn one(&self) -> Option<LowerReal> {
        Some(LowerReal::exact(DyadicExt::one()))
    }

    /// Stage `k` is `P` of the stage-`k` bounds of the first `k + 1` entries.
    fn p_limit(&self, fam: &Family<LowerReal>, _budget: usize) -> Summed<LowerReal> {
        let f = fam.clone();
        Summed::exact(LowerReal::from_bounds(move |k| {
            let bounds: Vec<DyadicExt> = (0..=k as usize).map(|i| f.at(i).bound(k)).collect();
            p_finite(&Dyadics, &bounds)
        }))
    }
}

/// `2 × 2` matrices over `N ∪ {inf}`, row-major: a non-commutative rig.
#[derive(Clone, Copy, Debug, Default)]
pub struct ExtNatMatrices;

pub type Mat2 = [ExtNat; 4];

impl SeriesMonoid for ExtNatMatrices {
    type Elem = Mat2;

    fn name(&self) -> &str {
        "extnat-mat2"
    }

    fn zero(&self) -> Mat2 {
        [ExtNat::ZERO; 4]
    }

    fn is_zero(&self, a: &Mat2) -> bool {
        a.iter().all(|x| x.is_zero())
    }

    fn sum_within(&self, fam: &Family<Mat2>, budget: usize) -> Summed<Mat2> {
        let mut complete = true;
        let mut out = [ExtNat::ZERO; 4];
        for (k, slot) in out.iter_mut().enumerate() {
            let column = fam.map(ExtNat::ZERO, move |m: &Mat2| m[k], |x| x.is_zero());
            let s = extnat_sum(&column, budget);
            complete &= s.complete;
            *slot = s.value;
        }
        Summed { value: out, complete }
    }

    fn eq_at(&self, a: &Mat2, b: &Mat2, _level: ApproxLevel) -> Verdict {
        Verdict::from_bool(a == b)
    }

    fn decide_eq(&self, a: &Mat2, b: &Mat2) -> Option<bool> {
        Some(a == b)
    }
}

impl Rig for ExtNatMatrices {
    fn mul(&self, a: &Mat2, b: &Mat2) -> Mat2 {
        let e = |i: usize, j: usize| a[2 * i].mul(b[j]).add(a[2 * i + 1].mul(b[2 + j]));
        [e(0, 0), e(0, 1), e(1, 0), e(1, 1)]
    }

    fn one(&self) -> Option<Mat2> {
        Some([ExtNat::ONE, ExtNat::ZERO, ExtNat::ZERO, ExtNat::ONE])
    }

    fn is_commutative(&self) -> bool {
        false
    }
}

/// A rig viewed as a series monoid through `P`.
#[derive(Clone, Debug)]
pub struct PMonoid<R> {
    rig: R,
    name: String,
}

impl<R: Rig> PMonoid<R> {
    pub fn new(rig: R) -> Self {
        let name = format!("P@{}", rig.name());
        PMonoid { rig, name }
    }

    pub fn rig(&self) -> &R {
        &self.rig
    }
}

impl<R: Rig> SeriesMonoid for PMonoid<R> {
    type Elem = R::Elem;

    fn name(&self) -> &str {
        &self.name
    }

    fn zero(&self) -> R::Elem {
        self.rig.zero()
    }

    fn is_zero(&self, a: &R::Elem) -> bool {
        self.rig.is_zero(a)
    }

    fn sum_within(&self, fam: &Family<R::Elem>, budget: usize) -> Summed<R::Elem> {
        p_sum(&self.rig, fam, budget)
    }

    fn eq_at(&self, a: &R::Elem, b: &R::Elem, level: ApproxLevel) -> Verdict {
        self.rig.eq_at(a, b, level)
    }

    fn decide_eq(&self, a: &R::Elem, b: &R::Elem) -> Option<bool> {
        self.rig.decide_eq(a, b)
    }
}

// Small entries keep products of a whole 6 × 6 matrix inside u64.
impl Sample for PMonoid<ExtNats> {
    fn sample(&self, rng: &mut dyn RngCore) -> ExtNat {
        if rng.gen_ratio(1, 20) {
            ExtNat::Inf
        } else {
            ExtNat::Fin(rng.gen_range(0..=2))
        }
    }
}

impl Sample for PMonoid<Dyadics> {
    fn sample(&self, rng: &mut dyn RngCore) -> DyadicExt {
        DyadicExt::new(rng.gen_range(0..8u32), rng.gen_range(0..=3))
    }
}

/// `v = sum_n u^n` for `u = 1 - a`, so that `a·v = 1`.
///
/// Stage `k` sums the first `N(k)` powers, each rounded down to `P(k)`
/// fraction bits; both grow with `k`, so the stages increase. For
/// `a = m / 2^e`, `u^n <= 2^-(a n)`, and `N(k) = ceil((k + 1 + e) / a)`
/// leaves a tail of at most `2^-(k+1)`; rounding costs at most `2^-(k+2)`.
pub fn geometric_inverse(a: &DyadicExt) -> Result<LowerReal, RigError> {
    let d = match a {
        DyadicExt::Inf => return Err(RigError::GeometricOutOfRange("inf".into())),
        DyadicExt::Fin(d) if d.is_zero() => return Err(RigError::GeometricZero),
        DyadicExt::Fin(d) => d.clone(),
    };
    let u = Dyadic::one().checked_sub(&d).ok_or_else(|| RigError::GeometricOutOfRange(format!("{d}")))?;
    if u.is_zero() {
        return Ok(LowerReal::exact(DyadicExt::one()));
    }
    let (m, e) = (d.mantissa().clone(), d.exponent());
    let terms = move |k: u32| -> BigUint { ((BigUint::from(k + 1 + e) << e as usize) + &m - 1u32) / &m };
    let bound = move |k: u32| {
        let n = terms(k);
        let prec = k + 2 + n.bits() as u32;
        let mut power = Dyadic::one();
        let mut total = Dyadic::zero();
        let mut i = BigUint::zero();
        while i < n {
            total = total.add(&power);
            power = power.mul(&u).floor_bits(prec);
            i += 1u32;
            if power.is_zero() {
                break;
            }
        }
        DyadicExt::Fin(total)
    };
    Ok(LowerReal::from_bounds(bound).with_modulus(|k| k))
}

/// `ℓa`: an element of the rig read multiplicatively.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct LogElem<E> {
    base: E,
}

impl<E: Element> LogElem<E> {
    pub fn of(base: E) -> Self {
        LogElem { base }
    }

    pub fn base(&self) -> &E {
        &self.base
    }
}

/// `ℓa + ℓb = ℓ(ab)`.
pub fn log_add<R: Rig + ?Sized>(rig: &R, x: &LogElem<R::Elem>, y: &LogElem<R::Elem>) -> LogElem<R::Elem> {
    LogElem::of(rig.mul(&x.base, &y.base))
}

/// The unit `ℓ1`.
pub fn log_zero<R: Rig + ?Sized>(rig: &R) -> Result<LogElem<R::Elem>, RigError> {
    rig.one().map(LogElem::of).ok_or(RigError::NoUnit)
}

/// The absorbing `ℓ0 = -inf`.
pub fn log_neg_inf<R: Rig + ?Sized>(rig: &R) -> LogElem<R::Elem> {
    LogElem::of(rig.zero())
}

pub fn log_eq<R: Rig + ?Sized>(rig: &R, x: &LogElem<R::Elem>, y: &LogElem<R::Elem>, level: ApproxLevel) -> Verdict {
    rig.eq_at(&x.base, &y.base, level)
}

/// The `u` with `base = 1 + u`, if the rig can find it.
pub fn one_plus<R: Rig + ?Sized>(rig: &R, x: &LogElem<R::Elem>) -> Result<R::Elem, RigError> {
    let one = rig.one().ok_or(RigError::NoUnit)?;
    match rig.subtract(&x.base, &one) {
        Some(Some(u)) => Ok(u),
        _ => Err(RigError::NoOnePlus(format!("{:?}", x.base))),
    }
}

/// `sum_n ℓ(1 + u_n) = ℓ(1 + P(u))`.
pub fn log_series_sum_u<R: Rig + ?Sized>(rig: &R, us: &Family<R::Elem>) -> Result<LogElem<R::Elem>, RigError> {
    let one = rig.one().ok_or(RigError::NoUnit)?;
    let p = p_sum(rig, us, DEFAULT_BUDGET).value;
    Ok(LogElem::of(binary_add(rig, &one, &p)))
}

/// [`log_series_sum_u`] for terms given as logarithms; each must decompose
/// as `1 + u`.
pub fn log_series_sum<R: Rig + ?Sized>(rig: &R, terms: &[LogElem<R::Elem>]) -> Result<LogElem<R::Elem>, RigError> {
    let us = terms.iter().map(|t| one_plus(rig, t)).collect::<Result<Vec<_>, _>>()?;
    log_series_sum_u(rig, &rig.family(us))
}

/// An order-preserving `ξ: ω → ω` by the sizes of its fibres
/// `ξ^-1(0), ξ^-1(1), ...`. Past the listed fibres `ξ` continues with
/// singletons, unless the last listed fibre is infinite.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct OrderPreservingMap {
    fibers: Vec<usize>,
    final_infinite: bool,
}

impl OrderPreservingMap {
    /// `None` marks an infinite fibre, allowed only in last place.
    pub fn new(fibers: &[Option<usize>]) -> Result<Self, RigError> {
        let mut sizes = Vec::with_capacity(fibers.len());
        for (i, f) in fibers.iter().enumerate() {
            match f {
                Some(n) => sizes.push(*n),
                None if i + 1 == fibers.len() => {
                    return Ok(OrderPreservingMap { fibers: sizes, final_infinite: true });
                }
                None => return Err(RigError::InfiniteFibreNotLast),
            }
        }
        Ok(OrderPreservingMap { fibers: sizes, final_infinite: false })
    }

    pub fn identity() -> Self {
        OrderPreservingMap { fibers: Vec::new(), final_infinite: false }
    }

    /// `ξ(m)`.
    pub fn apply(&self, m: usize) -> usize {
        let mut start = 0;
        for (n, size) in self.fibers.iter().enumerate() {
            if m < start + size {
                return n;
            }
            start += size;
        }
        if self.final_infinite {
            self.fibers.len()
        } else {
            self.fibers.len() + (m - start)
        }
    }
}

/// `⊗_n ⊗_{m in ξ^-1(n)} a_m = ⊗_n a_n` for the sum of a series monoid
/// (including `P` on a rig), on a finite-support family.
pub fn omega_assoc_check<M: SeriesMonoid + ?Sized>(
    inst: &M,
    fam: &Family<M::Elem>,
    xi: &OrderPreservingMap,
    level: ApproxLevel,
) -> CheckOutcome {
    let FamilyKind::Finite(entries) = fam.kind() else {
        return CheckOutcome::Invalid("general associativity is checked on finite supports".into());
    };
    let outer_len = entries.last().map_or(0, |(i, _)| xi.apply(*i) + 1).max(xi.fibers.len() + 1);
    let mut fibres: Vec<Vec<M::Elem>> = vec![Vec::new(); outer_len];
    let mut cursor = 0;
    let mut firsts: Vec<usize> = Vec::with_capacity(outer_len);
    for n in 0..outer_len {
        firsts.push(cursor);
        cursor += xi.fibers.get(n).copied().unwrap_or(1);
    }
    for (i, v) in entries {
        let n = xi.apply(*i);
        let offset = i - firsts[n];
        let fibre = &mut fibres[n];
        if fibre.len() <= offset {
            fibre.resize(offset + 1, inst.zero());
        }
        fibre[offset] = v.clone();
    }
    let inner: Vec<Summed<M::Elem>> =
        fibres.into_iter().map(|f| inst.sum_within(&inst.family(f), DEFAULT_BUDGET)).collect();
    if inner.iter().any(|s| !s.complete) {
        return CheckOutcome::Inconclusive("partial inner product".into());
    }
    let lhs = inst.sum_within(&inst.family(inner.into_iter().map(|s| s.value).collect()), DEFAULT_BUDGET);
    let rhs = inst.sum_within(fam, DEFAULT_BUDGET);
    if !(lhs.complete && rhs.complete) {
        return CheckOutcome::Inconclusive("partial outer product".into());
    }
    CheckOutcome::from_verdict(inst.eq_at(&lhs.value, &rhs.value, level), || {
        format!("grouped {:?} vs ungrouped {:?} under {xi:?}", lhs.value, rhs.value)
    })
}

/// A random order-preserving map with up to five fibres of size at most
/// three, the last one infinite a quarter of the time.
pub fn sample_order_preserving(rng: &mut dyn RngCore) -> OrderPreservingMap {
    let mut fibers: Vec<Option<usize>> = (0..rng.gen_range(0..=5)).map(|_| Some(rng.gen_range(0..=3))).collect();
    if !fibers.is_empty() && rng.gen_ratio(1, 4) {
        *fibers.last_mut().expect("non-empty") = None;
    }
    OrderPreservingMap::new(&fibers).expect("only the last fibre is infinite")
}
