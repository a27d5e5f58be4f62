//! Zeno morphisms and magnitude modules.
//!
//! A Zeno morphism `h` on a series monoid satisfies `sum_n h^(n+1)(a) = a`.
//! On `[0, inf]` it is halving, on a sup-lattice the identity, and on
//! `N ∪ {inf}` there is none. A [`MagnitudeModule`] pairs an instance with a
//! verified Zeno morphism and supports the action of binary expansions.

mod expansion;
mod formal;

pub use expansion::{binary_expand, BinaryExpansion, Positions};
pub use formal::{formal_normalize, formal_value, FormalMagnitude};

use alloc::format;
use alloc::string::String;
use alloc::sync::Arc;
use alloc::vec;
use alloc::vec::Vec;
use core::fmt;

use rand::{Rng, RngCore};
use thiserror::Error;

use crate::extreal::{extend_one, DyadicExt, ExtNat, ExtNats, FiniteLattice, LowerReal, LowerReals};
use crate::series::harness::{run_cases, sample_dyadic, sample_extnat, HarnessConfig, Report};
use crate::series::laws::{check_morphism, CheckOutcome};
use crate::series::{binary_add, ApproxLevel, Element, Extent, Family, SeriesMonoid, Summed, DEFAULT_BUDGET};

#[derive(Clone, Debug, PartialEq, Eq, Error)]
pub enum MagnitudeError {
    #[error("inf has no binary expansion")]
    Infinite,
    #[error("integer part does not fit in 64 bits")]
    IntegerTooLarge,
    #[error("not a Zeno morphism: {0}")]
    NotZeno(String),
}

type ApplyFn<E> = Arc<dyn Fn(&E) -> E + Send + Sync>;
type IterateFn<E> = Arc<dyn Fn(u32, &E) -> E + Send + Sync>;

/// An endomorphism of a series monoid, with an optional shortcut for its
/// iterates.
#[derive(Clone)]
pub struct Endo<E> {
    name: String,
    apply: ApplyFn<E>,
    iterate: Option<IterateFn<E>>,
}

impl<E: Element> Endo<E> {
    pub fn new(name: &str, apply: impl Fn(&E) -> E + Send + Sync + 'static) -> Self {
        Endo { name: name.into(), apply: Arc::new(apply), iterate: None }
    }

    /// Supplies `f^n` directly; it must agree with `n` applications.
    pub fn with_iterate(mut self, iterate: impl Fn(u32, &E) -> E + Send + Sync + 'static) -> Self {
        self.iterate = Some(Arc::new(iterate));
        self
    }

    pub fn identity() -> Self {
        Endo::new("id", E::clone).with_iterate(|_, a| a.clone())
    }

    pub fn zero_map(zero: E) -> Self {
        let z = zero.clone();
        Endo::new("zero", move |_| zero.clone()).with_iterate(move |n, a| if n == 0 { a.clone() } else { z.clone() })
    }

    pub fn name(&self) -> &str {
        &self.name
    }

    pub fn apply(&self, a: &E) -> E {
        (self.apply)(a)
    }

    /// `f^n(a)`.
    pub fn iterate(&self, n: u32, a: &E) -> E {
        match &self.iterate {
            Some(it) => it(n, a),
            None => (0..n).fold(a.clone(), |x, _| self.apply(&x)),
        }
    }

    /// `f(0) = 0` and `f` commutes with sums on `samples`.
    pub fn check_morphism<M>(&self, inst: &M, samples: &[Family<E>], level: ApproxLevel) -> CheckOutcome
    where
        M: SeriesMonoid<Elem = E> + Clone + Send + Sync + 'static,
    {
        let f = self.apply.clone();
        check_morphism(inst, inst, move |x: &E| f(x), samples, level)
    }
}

impl<E> fmt::Debug for Endo<E> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Endo({})", self.name)
    }
}

/// `h(m / 2^e) = m / 2^(e+1)`, `h(inf) = inf`.
pub fn halve(x: &DyadicExt) -> DyadicExt {
    x.shr(1)
}

/// Halving on lower reals: every bound is halved.
pub fn halve_lower(x: &LowerReal) -> LowerReal {
    x.halve()
}

pub fn halving() -> Endo<DyadicExt> {
    Endo::new("halve", halve).with_iterate(|n, x| x.shr(n))
}

pub fn halving_lower() -> Endo<LowerReal> {
    Endo::new("halve", halve_lower).with_iterate(|n, x| x.scale_pow2_neg(n))
}

/// The endomorphism of `N ∪ {inf}` with `h(1) = c`, namely `n ↦ n·c`.
/// These are all the endomorphisms there are.
pub fn extnat_endo(c: ExtNat) -> Endo<ExtNat> {
    Endo::new(&format!("times {c}"), move |n: &ExtNat| n.mul(c))
}

/// Iterates scanned for a zero or a fixed point before `tilde` falls back to
/// a lazy sum.
const TILDE_SCAN: usize = 64;

/// `sum_n f^(n+1)(a)`.
///
/// Exact when the iterates reach zero or a fixed point within the scan;
/// otherwise the instance's sum of the lazy family of iterates.
pub fn tilde<M: SeriesMonoid + ?Sized>(inst: &M, f: &Endo<M::Elem>, a: &M::Elem) -> Summed<M::Elem> {
    let mut terms = Vec::new();
    let mut prev = a.clone();
    for _ in 0..TILDE_SCAN {
        let next = f.apply(&prev);
        if inst.is_zero(&next) {
            return inst.sum_within(&inst.family(terms), DEFAULT_BUDGET);
        }
        if inst.decide_eq(&next, &prev) == Some(true) {
            // every later iterate repeats `next`
            let head = inst.sum_within(&inst.family(terms), DEFAULT_BUDGET);
            let tail = inst.sum_within(&inst.constant(next), DEFAULT_BUDGET);
            return Summed { value: binary_add(inst, &head.value, &tail.value), complete: head.complete && tail.complete };
        }
        terms.push(next.clone());
        prev = next;
    }
    let (f, a) = (f.clone(), a.clone());
    let fam = Family::lazy(inst.zero(), move |i| f.iterate(i as u32 + 1, &a), Extent::Unknown);
    inst.sum_within(&fam, DEFAULT_BUDGET)
}

/// `f(a) + f(tilde(f, a)) = tilde(f, a)`.
pub fn check_tilde_equation<M: SeriesMonoid + ?Sized>(
    inst: &M,
    f: &Endo<M::Elem>,
    a: &M::Elem,
    level: ApproxLevel,
) -> CheckOutcome {
    let t = tilde(inst, f, a);
    if !t.complete {
        return CheckOutcome::Inconclusive(format!("sum of iterates of {} is partial", f.name()));
    }
    let lhs = binary_add(inst, &f.apply(a), &f.apply(&t.value));
    CheckOutcome::from_verdict(inst.eq_at(&lhs, &t.value, level), || {
        format!("f(a) + f(tilde a) != tilde a for a = {a:?}")
    })
}

/// Checks `h(a) + h(a) = a` and then `tilde(h, a) = a` on every sample.
/// When the first fails the second is not attempted for that sample.
pub fn zeno_verify<M: SeriesMonoid + ?Sized>(
    inst: &M,
    h: &Endo<M::Elem>,
    samples: &[M::Elem],
    level: ApproxLevel,
) -> CheckOutcome {
    let mut out = CheckOutcome::Pass;
    for a in samples {
        let ha = h.apply(a);
        let half = CheckOutcome::from_verdict(inst.eq_at(&binary_add(inst, &ha, &ha), a, level), || {
            format!("h(a) + h(a) != a at a = {a:?}")
        });
        if !half.is_pass() {
            out = out.and(half);
            continue;
        }
        let t = tilde(inst, h, a);
        out = out.and(if t.complete {
            CheckOutcome::from_verdict(inst.eq_at(&t.value, a, level), || format!("tilde h(a) != a at a = {a:?}"))
        } else {
            CheckOutcome::Inconclusive(format!("sum of iterates at a = {a:?} is partial"))
        });
    }
    out
}

/// A series monoid together with a Zeno morphism that passed verification.
#[derive(Clone, Debug)]
pub struct MagnitudeModule<M: SeriesMonoid> {
    inst: M,
    h: Endo<M::Elem>,
}

impl<M: SeriesMonoid> MagnitudeModule<M> {
    /// Accepts `h` only if [`zeno_verify`] passes on `samples`.
    pub fn new(inst: M, h: Endo<M::Elem>, samples: &[M::Elem], level: ApproxLevel) -> Result<Self, MagnitudeError> {
        match zeno_verify(&inst, &h, samples, level) {
            CheckOutcome::Pass => Ok(MagnitudeModule { inst, h }),
            CheckOutcome::Fail(m) | CheckOutcome::Inconclusive(m) | CheckOutcome::Invalid(m) => {
                Err(MagnitudeError::NotZeno(m))
            }
        }
    }

    pub fn instance(&self) -> &M {
        &self.inst
    }

    pub fn zeno(&self) -> &Endo<M::Elem> {
        &self.h
    }
}

impl MagnitudeModule<LowerReals> {
    /// `[0, inf]` with halving.
    pub fn extreal() -> Self {
        let samples: Vec<LowerReal> = ["0", "1", "3/4", "5", "inf"]
            .iter()
            .map(|s| LowerReal::exact(s.parse().expect("literal")))
            .collect();
        MagnitudeModule::new(LowerReals, halving_lower(), &samples, ApproxLevel(40))
            .expect("halving is Zeno on [0, inf]")
    }
}

impl MagnitudeModule<FiniteLattice> {
    /// A finite lattice with the identity, checked on every element.
    pub fn lattice(lattice: FiniteLattice) -> Self {
        let samples: Vec<usize> = (0..lattice.size()).collect();
        MagnitudeModule::new(lattice, Endo::identity(), &samples, ApproxLevel(0))
            .expect("the identity is Zeno on a sup-lattice")
    }
}

/// `alpha · a = int·a + sum_n h^(m_n)(a)` for `alpha` with integer part
/// `int` and one-bits at positions `m_1 < m_2 < ...`.
pub fn scalar_action<M>(module: &MagnitudeModule<M>, alpha: &BinaryExpansion, a: &M::Elem) -> M::Elem
where
    M: SeriesMonoid,
{
    let inst = &module.inst;
    let whole = extend_one(inst, a, ExtNat::Fin(alpha.integer_part()));
    let h = module.h.clone();
    let fam = match alpha.positions() {
        Positions::Terminating(ps) => {
            let mut values = vec![whole];
            values.extend(ps.iter().map(|&m| h.iterate(m, a)));
            inst.family(values)
        }
        Positions::OnesFrom { .. } => {
            let (alpha, a) = (alpha.clone(), a.clone());
            Family::lazy(
                inst.zero(),
                move |i| match i {
                    0 => whole.clone(),
                    _ => h.iterate(alpha.position(i - 1).expect("nonterminating"), &a),
                },
                Extent::Unknown,
            )
        }
    };
    inst.sum(&fam)
}

/// [`scalar_action`] by a dyadic scalar; `inf · a` is `a + a + ...`.
pub fn scalar_action_dyadic<M: SeriesMonoid>(
    module: &MagnitudeModule<M>,
    alpha: &DyadicExt,
    a: &M::Elem,
) -> Result<M::Elem, MagnitudeError> {
    match alpha {
        DyadicExt::Inf => Ok(extend_one(&module.inst, a, ExtNat::Inf)),
        DyadicExt::Fin(_) => Ok(scalar_action(module, &binary_expand(alpha, false)?, a)),
    }
}

/// Multiplication on exact elements of `[0, inf]`, with `0 · inf = 0`.
pub fn extreal_mul(alpha: &DyadicExt, beta: &DyadicExt) -> DyadicExt {
    alpha.mul(beta)
}

/// Stagewise multiplication of lower reals.
pub fn extreal_mul_lower(alpha: &LowerReal, beta: &LowerReal) -> LowerReal {
    alpha.mul(beta)
}

/// Zeno suite for halving on `[0, inf]`: random dyadics `m / 2^e` with
/// `m < 2^16`, `e <= 16`.
pub fn zeno_suite_extreal(config: HarnessConfig) -> Report {
    let h = halving_lower();
    run_cases("extreal", "zeno", config, |rng, _| {
        let a = LowerReal::exact(DyadicExt::Fin(sample_dyadic(rng, 16, 16)));
        zeno_verify(&LowerReals, &h, &[a], config.level)
    })
}

/// Zeno suite for the identity on a finite lattice.
pub fn zeno_suite_lattice(lattice: &FiniteLattice, config: HarnessConfig) -> Report {
    let h = Endo::identity();
    run_cases(lattice.name(), "zeno", config, |rng, _| {
        let a = rng.gen_range(0..lattice.size());
        zeno_verify(lattice, &h, &[a], config.level)
    })
}

/// Every candidate `h(n) = n·c` on `N ∪ {inf}` checked at `a = 1`. All
/// cases are expected to fail.
pub fn zeno_suite_extnat(config: HarnessConfig) -> Report {
    let mut report = run_cases("extnat", "zeno", config, |rng: &mut dyn RngCore, _| {
        let c = sample_extnat(rng);
        zeno_verify(&ExtNats, &extnat_endo(c), &[ExtNat::ONE], config.level)
    });
    if report.fail == config.cases {
        report.expected_negative =
            Some("N ∪ {inf} has no Zeno morphism: h(1) + h(1) = 2·h(1) is never 1".into());
    }
    report
}
