//! Codes for the free magnitude module on one generator: finite
//! combinations of generators `χ_n`, read as `χ_n ↦ 2^-n`, modulo the
//! relation `χ_n ∼ χ_(n+1) + χ_(n+2) + ...`.

use alloc::collections::BTreeMap;
use alloc::string::String;
use alloc::vec::Vec;
use core::fmt;
use core::str::FromStr;

use crate::error::ParseError;
use crate::extreal::{Dyadic, DyadicExt, ExtNat};

/// `sum_n c_n χ_n`, plus optionally the infinite tail `χ_t + χ_(t+1) + ...`.
#[derive(Clone, Debug, Default, PartialEq, Eq, Hash)]
pub struct FormalMagnitude {
    coeffs: BTreeMap<u32, ExtNat>,
    ones_tail: Option<u32>,
}

impl FormalMagnitude {
    pub fn zero() -> Self {
        FormalMagnitude::default()
    }

    /// `χ_n`.
    pub fn chi(n: u32) -> Self {
        FormalMagnitude::from_coeffs([(n, ExtNat::ONE)])
    }

    pub fn from_coeffs(coeffs: impl IntoIterator<Item = (u32, ExtNat)>) -> Self {
        let mut out = FormalMagnitude::zero();
        for (n, c) in coeffs {
            out.add_coeff(n, c);
        }
        out
    }

    /// `χ_t + χ_(t+1) + ...`.
    pub fn tail(t: u32) -> Self {
        FormalMagnitude { coeffs: BTreeMap::new(), ones_tail: Some(t) }
    }

    /// The `∞`-marked code `{χ_0: ∞}`.
    pub fn infinite() -> Self {
        FormalMagnitude::from_coeffs([(0, ExtNat::Inf)])
    }

    fn add_coeff(&mut self, n: u32, c: ExtNat) {
        if c.is_zero() {
            return;
        }
        let slot = self.coeffs.entry(n).or_insert(ExtNat::ZERO);
        *slot = slot.add(c);
    }

    pub fn coeff(&self, n: u32) -> ExtNat {
        self.coeffs.get(&n).copied().unwrap_or(ExtNat::ZERO)
    }

    pub fn coeffs(&self) -> impl Iterator<Item = (u32, ExtNat)> + '_ {
        self.coeffs.iter().map(|(n, c)| (*n, *c))
    }

    pub fn ones_tail(&self) -> Option<u32> {
        self.ones_tail
    }

    pub fn is_infinite(&self) -> bool {
        self.coeffs.values().any(|c| *c == ExtNat::Inf)
    }

    /// Sum of codes. Two tails combine through the relation before adding.
    pub fn add(&self, other: &Self) -> Self {
        let mut out = self.clone();
        for (n, c) in other.coeffs() {
            out.add_coeff(n, c);
        }
        match (out.ones_tail, other.ones_tail) {
            (_, None) => {}
            (None, t) => out.ones_tail = t,
            (Some(_), Some(t)) => out.absorb_tail(t),
        }
        out
    }

    /// The Zeno morphism on codes, `χ_n ↦ χ_(n+1)`.
    pub fn halve(&self) -> Self {
        FormalMagnitude {
            coeffs: self.coeffs.iter().map(|(n, c)| (n + 1, *c)).collect(),
            ones_tail: self.ones_tail.map(|t| t + 1),
        }
    }

    /// Rewrites `χ_t + χ_(t+1) + ...` as `χ_(t-1)`, or as `2 χ_0` when `t = 0`.
    fn absorb_tail(&mut self, t: u32) {
        match t {
            0 => self.add_coeff(0, ExtNat::Fin(2)),
            _ => self.add_coeff(t - 1, ExtNat::ONE),
        }
    }

    pub fn is_normal(&self) -> bool {
        *self == formal_normalize(self)
    }
}

/// The value in `[0, inf]` under `χ_n ↦ 2^-n`.
pub fn formal_value(x: &FormalMagnitude) -> DyadicExt {
    let mut total = DyadicExt::zero();
    for (n, c) in x.coeffs() {
        let term = match c {
            ExtNat::Inf => DyadicExt::Inf,
            ExtNat::Fin(c) => DyadicExt::Fin(Dyadic::new(c, n)),
        };
        total = total.add(&term);
    }
    if let Some(t) = x.ones_tail {
        // 2^-t + 2^-(t+1) + ... = 2^(1-t)
        total = total.add(&DyadicExt::Fin(Dyadic::from_u64(2).shr(t)));
    }
    total
}

/// The canonical representative of the congruence class of `x`.
///
/// Any `∞` coefficient gives the `∞`-marked code. Otherwise the tail is
/// rewritten to a single generator and carries move upward
/// (`2 χ_(n+1) ∼ χ_n`) until every position past `χ_0` holds 0 or 1.
pub fn formal_normalize(x: &FormalMagnitude) -> FormalMagnitude {
    if x.is_infinite() {
        return FormalMagnitude::infinite();
    }
    let mut work = FormalMagnitude { coeffs: x.coeffs.clone(), ones_tail: None };
    if let Some(t) = x.ones_tail {
        work.absorb_tail(t);
    }
    let mut counts: BTreeMap<u32, u64> =
        work.coeffs().map(|(n, c)| (n, c.finite().expect("finite after the check above"))).collect();
    let top = counts.keys().next_back().copied().unwrap_or(0);
    for n in (1..=top).rev() {
        let c = counts.get(&n).copied().unwrap_or(0);
        if c >= 2 {
            let up = counts.entry(n - 1).or_insert(0);
            *up = up.checked_add(c / 2).expect("coefficient overflow");
            counts.insert(n, c % 2);
        }
    }
    FormalMagnitude::from_coeffs(counts.into_iter().map(|(n, c)| (n, ExtNat::Fin(c))))
}

impl fmt::Display for FormalMagnitude {
    /// `{0:1, 3:1}`, with a trailing `tail:t` when present.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut parts: Vec<String> = self.coeffs().map(|(n, c)| alloc::format!("{n}:{c}")).collect();
        if let Some(t) = self.ones_tail {
            parts.push(alloc::format!("tail:{t}"));
        }
        write!(f, "{{{}}}", parts.join(", "))
    }
}

impl FromStr for FormalMagnitude {
    type Err = ParseError;

    /// Parses the [`Display`](fmt::Display) form. Repeated positions add.
    fn from_str(s: &str) -> Result<Self, ParseError> {
        let inner = s
            .trim()
            .strip_prefix('{')
            .and_then(|r| r.strip_suffix('}'))
            .ok_or_else(|| ParseError::new("a code in braces", s))?;
        let mut out = FormalMagnitude::zero();
        for item in inner.split(',').map(str::trim).filter(|i| !i.is_empty()) {
            let (key, val) = item.split_once(':').ok_or_else(|| ParseError::new("position:coefficient", item))?;
            let (key, val) = (key.trim(), val.trim());
            if key == "tail" {
                let t = val.parse().map_err(|_| ParseError::new("a tail position", val))?;
                if out.ones_tail.replace(t).is_some() {
                    return Err(ParseError::new("at most one tail", item));
                }
                continue;
            }
            let n = key.parse().map_err(|_| ParseError::new("a position", key))?;
            out.add_coeff(n, val.parse()?);
        }
        Ok(out)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use alloc::string::ToString;
    use proptest::prelude::*;

    fn code(s: &str) -> FormalMagnitude {
        s.parse().unwrap()
    }

    #[test]
    fn examples() {
        assert_eq!(formal_normalize(&code("{1:2}")), code("{0:1}"));
        assert_eq!(formal_normalize(&code("{0:inf}")), FormalMagnitude::infinite());
        assert_eq!(formal_normalize(&code("{1:1, 2:1, 3:3}")), code("{0:1, 3:1}"));
        assert_eq!(formal_value(&code("{0:1}")), DyadicExt::one());
        assert_eq!(formal_value(&code("{2:3}")), "3/4".parse().unwrap());
        assert_eq!(formal_value(&code("{}")), DyadicExt::zero());
    }

    #[test]
    fn tail_relation() {
        assert_eq!(formal_normalize(&FormalMagnitude::tail(1)), FormalMagnitude::chi(0));
        assert_eq!(formal_normalize(&FormalMagnitude::tail(4)), FormalMagnitude::chi(3));
        // χ_0 + χ_1 + ... = 2 χ_0
        assert_eq!(formal_normalize(&FormalMagnitude::tail(0)), code("{0:2}"));
        assert_eq!(formal_value(&FormalMagnitude::tail(2)), "1/2".parse().unwrap());
        let two_tails = FormalMagnitude::tail(1).add(&FormalMagnitude::tail(1));
        assert_eq!(formal_normalize(&two_tails), code("{0:2}"));
    }

    #[test]
    fn display_round_trip() {
        for s in ["{}", "{0:1, 3:1}", "{2:inf}", "{1:5, tail:4}"] {
            assert_eq!(code(s).to_string(), s);
        }
        assert!("{1}".parse::<FormalMagnitude>().is_err());
        assert!("{tail:1, tail:2}".parse::<FormalMagnitude>().is_err());
        assert!("1:2".parse::<FormalMagnitude>().is_err());
    }

    #[test]
    fn zeno_shift() {
        let x = code("{0:3, 2:1}");
        let h = x.halve();
        assert_eq!(formal_normalize(&h.add(&h)), formal_normalize(&x));
    }

    fn arb_code() -> impl Strategy<Value = FormalMagnitude> {
        (
            proptest::collection::btree_map(0u32..8, 0u64..=8, 0..=8),
            proptest::option::weighted(0.2, 0u32..8),
        )
            .prop_map(|(m, t)| {
                let mut x = FormalMagnitude::from_coeffs(m.into_iter().map(|(n, c)| (n, ExtNat::Fin(c))));
                x.ones_tail = t;
                x
            })
    }

    proptest! {
        #[test]
        fn normalization_preserves_value(x in arb_code()) {
            let n = formal_normalize(&x);
            prop_assert_eq!(formal_value(&n), formal_value(&x));
            prop_assert!(n.is_normal());
            prop_assert!(n.coeffs().all(|(p, c)| p == 0 || c == ExtNat::ONE));
        }

        #[test]
        fn normal_forms_decide_congruence(x in arb_code(), y in arb_code()) {
            prop_assert_eq!(
                formal_normalize(&x) == formal_normalize(&y),
                formal_value(&x) == formal_value(&y)
            );
        }
    }
}
