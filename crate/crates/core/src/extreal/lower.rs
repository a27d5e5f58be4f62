//! Lower-semicomputable elements of `[0, inf]`.
//!
//! A [`LowerReal`] is a monotone stream of exact dyadic lower bounds; the
//! value it denotes is the supremum of the stream. Divergence shows up as
//! unbounded growth, or as an `inf` bound at some stage. A *modulus*, when
//! present, certifies two-sided accuracy: `bound(modulus(k))` is within
//! `2^-k` of the value.

use alloc::format;
use alloc::string::String;
use alloc::sync::Arc;
use alloc::vec::Vec;
use core::fmt;

use num_bigint::BigUint;

use super::dyadic::{Dyadic, DyadicExt};
use crate::series::{ApproxLevel, Extent, Family, FamilyKind, SeriesMonoid, Summed, Verdict};

pub type BoundFn = Arc<dyn Fn(u32) -> DyadicExt + Send + Sync>;
pub type Modulus = Arc<dyn Fn(u32) -> u32 + Send + Sync>;
/// `tail(k) = N` such that the entries past index `N` sum to at most `2^-k`.
pub type TailCertificate = Arc<dyn Fn(u32) -> usize + Send + Sync>;

#[derive(Clone)]
pub struct LowerReal {
    bound: BoundFn,
    modulus: Option<Modulus>,
    exact: Option<DyadicExt>,
}

fn ceil_log2(n: usize) -> u32 {
    usize::BITS - n.saturating_sub(1).leading_zeros()
}

fn abs_diff(a: &Dyadic, b: &Dyadic) -> Dyadic {
    a.checked_sub(b).or_else(|| b.checked_sub(a)).unwrap_or_else(Dyadic::zero)
}

impl LowerReal {
    pub fn exact(value: DyadicExt) -> Self {
        let v = value.clone();
        LowerReal {
            bound: Arc::new(move |_| v.clone()),
            modulus: Some(Arc::new(|k| k)),
            exact: Some(value),
        }
    }

    pub fn zero() -> Self {
        LowerReal::exact(DyadicExt::zero())
    }

    pub fn infinity() -> Self {
        LowerReal::exact(DyadicExt::Inf)
    }

    /// A stream of lower bounds. The caller guarantees monotonicity.
    pub fn from_bounds(bound: impl Fn(u32) -> DyadicExt + Send + Sync + 'static) -> Self {
        LowerReal { bound: Arc::new(bound), modulus: None, exact: None }
    }

    pub fn with_modulus(mut self, modulus: impl Fn(u32) -> u32 + Send + Sync + 'static) -> Self {
        self.modulus = Some(Arc::new(modulus));
        self
    }

    /// `p/q` approximated from below by `floor(p 2^k / q) / 2^k`.
    pub fn rational(p: u64, q: u64) -> Self {
        assert!(q > 0, "zero denominator");
        if (q & (q - 1)) == 0 {
            return LowerReal::exact(DyadicExt::new(p, q.trailing_zeros()));
        }
        let (p, q) = (BigUint::from(p), BigUint::from(q));
        LowerReal::from_bounds(move |k| DyadicExt::new((&p << k as usize) / &q, k)).with_modulus(|k| k)
    }

    pub fn bound(&self, stage: u32) -> DyadicExt {
        if let Some(v) = &self.exact {
            return v.clone();
        }
        (self.bound)(stage)
    }

    pub fn exact_value(&self) -> Option<&DyadicExt> {
        self.exact.as_ref()
    }

    pub fn has_modulus(&self) -> bool {
        self.modulus.is_some()
    }

    /// Stage at which the bound is certified within `2^-k`.
    pub fn stage_for(&self, k: u32) -> Option<u32> {
        self.modulus.as_ref().map(|m| m(k))
    }

    /// `bound(level.bits)`: never above the value.
    pub fn approx(&self, level: ApproxLevel) -> DyadicExt {
        self.bound(level.bits())
    }

    /// A bound within `2^-bits` of the value, when a modulus exists.
    pub fn certified(&self, level: ApproxLevel) -> Option<DyadicExt> {
        self.stage_for(level.bits()).map(|s| self.bound(s))
    }

    pub fn is_exact_zero(&self) -> bool {
        self.exact.as_ref().is_some_and(DyadicExt::is_zero)
    }

    /// Multiplication by `2^-n`.
    pub fn scale_pow2_neg(&self, n: u32) -> Self {
        if let Some(v) = &self.exact {
            return LowerReal::exact(v.shr(n));
        }
        let b = self.bound.clone();
        LowerReal {
            bound: Arc::new(move |k| b(k).shr(n)),
            modulus: self.modulus.clone(),
            exact: None,
        }
    }

    pub fn halve(&self) -> Self {
        self.scale_pow2_neg(1)
    }

    /// Stagewise product with `0 * inf = 0` at every stage.
    pub fn mul(&self, other: &Self) -> Self {
        if let (Some(a), Some(b)) = (&self.exact, &other.exact) {
            return LowerReal::exact(a.mul(b));
        }
        if self.is_exact_zero() || other.is_exact_zero() {
            return LowerReal::zero();
        }
        let (x, y) = (self.clone(), other.clone());
        let mut out = LowerReal::from_bounds(move |k| x.bound(k).mul(&y.bound(k)));
        if let (Some(sx), Some(sy)) = (self.stage_for(0), other.stage_for(0)) {
            // upper estimates of both factors fix how many extra bits are needed
            if let (DyadicExt::Fin(bx), DyadicExt::Fin(by)) = (self.bound(sx), other.bound(sy)) {
                let span = bx.add(&by).add(&Dyadic::from_u64(3));
                let extra = span.int_bits() + 1;
                let (mx, my) = (self.modulus.clone(), other.modulus.clone());
                if let (Some(mx), Some(my)) = (mx, my) {
                    out.modulus = Some(Arc::new(move |k| mx(k + extra).max(my(k + extra))));
                }
            }
        }
        out
    }

    pub fn add(&self, other: &Self) -> Self {
        lower_real_sum(&Family::from_values(
            LowerReal::zero(),
            alloc::vec![self.clone(), other.clone()],
            LowerReal::is_exact_zero,
        ))
    }

    /// Tri-state comparison to `level.bits()` fraction bits.
    pub fn eq_at(&self, other: &Self, level: ApproxLevel) -> Verdict {
        if let (Some(a), Some(b)) = (&self.exact, &other.exact) {
            return Verdict::from_bool(a == b);
        }
        let k = level.bits();
        if let (Some(sx), Some(sy)) = (self.stage_for(k + 1), other.stage_for(k + 1)) {
            return match (self.bound(sx), other.bound(sy)) {
                (DyadicExt::Inf, DyadicExt::Inf) => Verdict::Equal,
                (DyadicExt::Inf, _) | (_, DyadicExt::Inf) => Verdict::Unequal,
                (DyadicExt::Fin(a), DyadicExt::Fin(b)) => {
                    Verdict::from_bool(abs_diff(&a, &b) <= Dyadic::pow2_neg(k + 1))
                }
            };
        }
        let tol = Dyadic::pow2_neg(k);
        for s in inspection_stages(k) {
            match (self.bound(s), other.bound(s)) {
                (DyadicExt::Inf, DyadicExt::Inf) => return Verdict::Equal,
                (DyadicExt::Fin(a), DyadicExt::Fin(b)) if abs_diff(&a, &b) <= tol => {
                    return Verdict::Equal
                }
                _ => {}
            }
        }
        // a lower bound above a certified upper bound separates the values
        let separated = |lo: &LowerReal, hi: &LowerReal| {
            hi.certified(level).is_some_and(|h| match (lo.bound(2 * k + 16), h) {
                (DyadicExt::Inf, DyadicExt::Fin(_)) => true,
                (DyadicExt::Fin(l), DyadicExt::Fin(h)) => l > h.add(&tol),
                _ => false,
            })
        };
        if separated(self, other) || separated(other, self) {
            Verdict::Unequal
        } else {
            Verdict::Unknown
        }
    }

    /// `d` when exact, `= d ± 2^-k` with a modulus, `≥ d (k bits)` otherwise.
    pub fn render(&self, level: ApproxLevel) -> String {
        let k = level.bits();
        if let Some(v) = &self.exact {
            return format!("{v}");
        }
        match self.certified(level) {
            Some(d) => format!("= {d} ± 2^-{k}"),
            None => format!("≥ {} ({k} bits)", self.approx(level)),
        }
    }
}

/// Stages looked at by an uncertified comparison at `k` bits.
fn inspection_stages(k: u32) -> impl Iterator<Item = u32> {
    let last = 2 * k + 16;
    core::iter::once(k)
        .chain((3..).map(move |j| k + (1u32 << j)).take_while(move |&s| s < last))
        .chain(core::iter::once(last))
}

impl fmt::Debug for LowerReal {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match &self.exact {
            Some(v) => write!(f, "LowerReal({v})"),
            None => write!(f, "LowerReal({})", self.render(ApproxLevel(16))),
        }
    }
}

impl From<DyadicExt> for LowerReal {
    fn from(v: DyadicExt) -> Self {
        LowerReal::exact(v)
    }
}

fn sum_bounds(terms: &[LowerReal], k: u32) -> DyadicExt {
    terms.iter().fold(DyadicExt::zero(), |acc, t| acc.add(&t.bound(k)))
}

fn finite_sum(terms: Vec<LowerReal>) -> LowerReal {
    if terms.iter().all(|t| t.exact.is_some()) {
        return LowerReal::exact(sum_bounds(&terms, 0));
    }
    let moduli: Option<Vec<Modulus>> = terms.iter().map(|t| t.modulus.clone()).collect();
    let extra = ceil_log2(terms.len());
    let terms = Arc::new(terms);
    let t = terms.clone();
    let mut out = LowerReal::from_bounds(move |k| sum_bounds(&t, k));
    if let Some(moduli) = moduli {
        out.modulus = Some(Arc::new(move |k| moduli.iter().map(|m| m(k + extra)).max().unwrap_or(0)));
    }
    out
}

/// Countable sum in `[0, inf]`.
///
/// Finite supports sum every entry at every stage. Otherwise the diagonal
/// schedule `bound(k) = sum_{i <= k} fam_i.bound(k)` is used.
pub fn lower_real_sum(fam: &Family<LowerReal>) -> LowerReal {
    match fam.kind() {
        FamilyKind::Finite(entries) => finite_sum(entries.iter().map(|(_, v)| v.clone()).collect()),
        FamilyKind::Lazy { extent: Extent::Bounded(n), .. } => finite_sum(fam.prefix(*n)),
        FamilyKind::Lazy { extent: Extent::Unbounded, .. } => LowerReal::infinity(),
        FamilyKind::Constant(a) if a.exact.as_ref().is_some_and(|v| !v.is_zero()) => LowerReal::infinity(),
        FamilyKind::Constant(a) => {
            let a = a.clone();
            LowerReal::from_bounds(move |k| match a.bound(k) {
                DyadicExt::Fin(d) => DyadicExt::Fin(d.mul_u64(u64::from(k) + 1)),
                inf => inf,
            })
        }
        FamilyKind::Lazy { .. } => {
            let f = fam.clone();
            LowerReal::from_bounds(move |k| (0..=k as usize).fold(DyadicExt::zero(), |acc, i| acc.add(&f.at(i).bound(k))))
        }
    }
}

/// [`lower_real_sum`] with a modulus derived from the entries' moduli and
/// a tail certificate.
pub fn lower_real_sum_certified(fam: &Family<LowerReal>, tail: TailCertificate) -> LowerReal {
    let mut out = lower_real_sum(fam);
    if out.exact.is_some() || out.modulus.is_some() {
        return out;
    }
    let f = fam.clone();
    out.modulus = Some(Arc::new(move |k| {
        let n = tail(k + 1);
        let extra = ceil_log2(n + 1);
        (0..=n)
            .map(|i| f.at(i).stage_for(k + 1 + extra).unwrap_or(u32::MAX))
            .max()
            .unwrap_or(0)
            .max(n as u32)
    }));
    out
}

/// `(r, r^2, r^3, ...)` as exact entries.
pub fn geometric_family(r: Dyadic) -> Family<LowerReal> {
    let zero = r.is_zero();
    Family::lazy(
        LowerReal::zero(),
        move |i| {
            let mut p = Dyadic::one();
            for _ in 0..=i {
                p = p.mul(&r);
            }
            LowerReal::exact(DyadicExt::Fin(p))
        },
        if zero { Extent::Bounded(0) } else { Extent::Infinite },
    )
}

/// Tail certificate for [`geometric_family`] with ratio `2^-j`, `j >= 1`.
pub fn geometric_pow2_tail(j: u32) -> TailCertificate {
    // sum_{i > N} 2^{-j(i+1)} <= 2^{-j(N+2)+1} <= 2^{-k} once j(N+2) >= k+1
    Arc::new(move |k| ((k + 1).div_ceil(j.max(1)) as usize).saturating_sub(1))
}

/// `[0, inf]` realized by lower reals.
#[derive(Clone, Copy, Debug, Default)]
pub struct LowerReals;

impl SeriesMonoid for LowerReals {
    type Elem = LowerReal;

    fn name(&self) -> &str {
        "extreal"
    }

    fn zero(&self) -> LowerReal {
        LowerReal::zero()
    }

    fn is_zero(&self, a: &LowerReal) -> bool {
        a.is_exact_zero()
    }

    fn sum_within(&self, fam: &Family<LowerReal>, _budget: usize) -> Summed<LowerReal> {
        Summed::exact(lower_real_sum(fam))
    }

    fn eq_at(&self, a: &LowerReal, b: &LowerReal, level: ApproxLevel) -> Verdict {
        a.eq_at(b, level)
    }

    fn decide_eq(&self, a: &LowerReal, b: &LowerReal) -> Option<bool> {
        match (&a.exact, &b.exact) {
            (Some(x), Some(y)) => Some(x == y),
            _ => None,
        }
    }

    fn subtract(&self, b: &LowerReal, a: &LowerReal) -> Option<Option<LowerReal>> {
        match (&b.exact, &a.exact) {
            (Some(x), Some(y)) => Some(x.checked_sub(y).map(LowerReal::exact)),
            _ => None,
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use alloc::string::ToString;

    fn dy(s: &str) -> DyadicExt {
        s.parse().unwrap()
    }

    #[test]
    fn geometric_halves_bound_formula() {
        let s = lower_real_sum(&geometric_family(Dyadic::pow2_neg(1)));
        for k in 0..20 {
            // 1 - 2^{-k-1}
            let expect = Dyadic::one().checked_sub(&Dyadic::pow2_neg(k + 1)).unwrap();
            assert_eq!(s.bound(k), DyadicExt::Fin(expect));
        }
        assert_eq!(s.approx(ApproxLevel(10)), dy("2047/2048"));
    }

    #[test]
    fn zeros_and_ones() {
        let zeros = Family::lazy(LowerReal::zero(), |_| LowerReal::zero(), Extent::Unknown);
        assert_eq!(lower_real_sum(&zeros).bound(12), DyadicExt::zero());
        let ones = Family::lazy(LowerReal::zero(), |_| LowerReal::exact(DyadicExt::one()), Extent::Unknown);
        let s = lower_real_sum(&ones);
        assert_eq!(s.bound(5), DyadicExt::from_u64(6));
        assert_eq!(s.bound(50), DyadicExt::from_u64(51));
    }

    #[test]
    fn exact_embedding_and_infinity() {
        let x = LowerReal::exact(dy("3/8"));
        assert_eq!(x.approx(ApproxLevel(10)), dy("3/8"));
        assert_eq!(LowerReal::infinity().approx(ApproxLevel(3)), DyadicExt::Inf);
        assert_eq!(x.render(ApproxLevel(10)), "3/8");
    }

    #[test]
    fn rendering() {
        let s = lower_real_sum(&geometric_family(Dyadic::pow2_neg(1)));
        assert_eq!(s.render(ApproxLevel(40)), "≥ 1 - 2^-41 (40 bits)");
        let c = lower_real_sum_certified(&geometric_family(Dyadic::pow2_neg(1)), geometric_pow2_tail(1));
        assert!(c.render(ApproxLevel(8)).starts_with("= "));
        assert_eq!(LowerReal::rational(1, 3).bound(4).to_string(), "5/16");
    }

    #[test]
    fn certified_geometric_sum_is_within_modulus() {
        let c = lower_real_sum_certified(&geometric_family(Dyadic::pow2_neg(2)), geometric_pow2_tail(2));
        // sum of 4^{-n-1} is 1/3
        for k in [4u32, 10, 30] {
            let b = c.certified(ApproxLevel(k)).unwrap();
            let third = LowerReal::rational(1, 3);
            let lo = third.bound(k + 2);
            assert!(b <= third.bound(k + 60).add(&DyadicExt::Fin(Dyadic::pow2_neg(k + 60))));
            assert!(b.add(&DyadicExt::Fin(Dyadic::pow2_neg(k))) >= lo);
        }
    }

    #[test]
    fn comparisons() {
        let l = ApproxLevel(32);
        let third = LowerReal::rational(1, 3);
        assert_eq!(third.eq_at(&third.clone(), l), Verdict::Equal);
        assert_eq!(third.eq_at(&LowerReal::rational(1, 2), l), Verdict::Unequal);
        let one = lower_real_sum(&geometric_family(Dyadic::pow2_neg(1)));
        assert_eq!(one.eq_at(&LowerReal::exact(DyadicExt::one()), l), Verdict::Equal);
        // an uncertified stream cannot be told apart from a nearby value
        let ones = Family::lazy(LowerReal::zero(), |_| LowerReal::exact(DyadicExt::one()), Extent::Unknown);
        assert_eq!(lower_real_sum(&ones).eq_at(&LowerReal::exact(dy("5")), l), Verdict::Unequal);
    }

    #[test]
    fn multiplication() {
        let l = ApproxLevel(40);
        let one = lower_real_sum(&geometric_family(Dyadic::pow2_neg(1)));
        let two = one.mul(&LowerReal::exact(dy("2")));
        assert_eq!(two.eq_at(&LowerReal::exact(dy("2")), l), Verdict::Equal);
        assert!(LowerReal::zero().mul(&LowerReal::infinity()).is_exact_zero());
        let prod = LowerReal::rational(1, 3).mul(&LowerReal::rational(3, 1));
        assert_eq!(prod.eq_at(&LowerReal::exact(DyadicExt::one()), l), Verdict::Equal);
        assert!(prod.has_modulus());
    }

    #[test]
    fn ceil_log2_values() {
        assert_eq!(ceil_log2(1), 0);
        assert_eq!(ceil_log2(2), 1);
        assert_eq!(ceil_log2(3), 2);
        assert_eq!(ceil_log2(8), 3);
    }
}
