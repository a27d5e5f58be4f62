//! The paradoxical positive reals `{0} + X + S`.
//!
//! `S` holds the positive reals with a terminating binary expansion and `X`
//! those written with a nonterminating one, so a dyadic such as `2` occurs
//! twice: as `10.000…` in `S` and as `1.111…` in `X`. Sums inside `S` stay
//! in `S`; anything involving `X` lands in `X`, an `S` summand being moved
//! over by `k`, which rewrites `…10000…` as `…01111…`.
//!
//! `X` is restricted to rationals, whose expansions are eventually
//! periodic, so all arithmetic is exact.

use alloc::collections::BTreeMap;
use alloc::format;
use alloc::string::{String, ToString};
use core::fmt;
use core::str::FromStr;

use num_bigint::BigUint;
use num_rational::Ratio;
use num_traits::{One, Zero};
use rand::{Rng, RngCore};
use thiserror::Error;

use crate::error::ParseError;
use crate::extreal::{is_power_of_two, Dyadic};

pub type Rational = Ratio<BigUint>;

#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub enum ZPElem {
    Zero,
    /// A positive dyadic, terminating form.
    S(Dyadic),
    /// A positive rational, nonterminating form.
    X(Rational),
}

#[derive(Clone, Debug, PartialEq, Eq, Error)]
pub enum ZpError {
    #[error("k is defined on terminating elements only, got {0}")]
    NotTerminating(String),
    #[error("value must be positive")]
    NotPositive,
}

fn dyadic_to_rational(d: &Dyadic) -> Rational {
    let (m, den) = d.to_ratio_parts();
    Ratio::new(m, den)
}

impl ZPElem {
    pub fn s(d: Dyadic) -> Result<Self, ZpError> {
        if d.is_zero() {
            Err(ZpError::NotPositive)
        } else {
            Ok(ZPElem::S(d))
        }
    }

    pub fn x(r: Rational) -> Result<Self, ZpError> {
        if r.is_zero() {
            Err(ZpError::NotPositive)
        } else {
            Ok(ZPElem::X(r))
        }
    }

    /// The underlying real, forgetting the variant.
    pub fn value(&self) -> Rational {
        match self {
            ZPElem::Zero => Rational::zero(),
            ZPElem::S(d) => dyadic_to_rational(d),
            ZPElem::X(r) => r.clone(),
        }
    }

    pub fn is_zero(&self) -> bool {
        matches!(self, ZPElem::Zero)
    }
}

/// `k: S -> X`, same value, nonterminating form.
pub fn zp_k(s: &ZPElem) -> Result<ZPElem, ZpError> {
    match s {
        ZPElem::S(d) => Ok(ZPElem::X(dyadic_to_rational(d))),
        other => Err(ZpError::NotTerminating(other.to_string())),
    }
}

pub fn zp_add(a: &ZPElem, b: &ZPElem) -> ZPElem {
    match (a, b) {
        (ZPElem::Zero, x) | (x, ZPElem::Zero) => x.clone(),
        (ZPElem::S(x), ZPElem::S(y)) => ZPElem::S(x.add(y)),
        _ => ZPElem::X(a.value() + b.value()),
    }
}

/// A `u` with `a + u = b`, if there is one.
///
/// A terminating `b` is reached only from terminating `a` (or zero) by a
/// terminating `u`; a nonterminating `b` from any `a` strictly below it by
/// a nonterminating `u`, or from `b` itself.
pub fn zp_leq_witness(a: &ZPElem, b: &ZPElem) -> Option<ZPElem> {
    match (a, b) {
        (ZPElem::Zero, _) => Some(b.clone()),
        (_, ZPElem::Zero) => None,
        (ZPElem::S(x), ZPElem::S(y)) if x == y => Some(ZPElem::Zero),
        (ZPElem::S(x), ZPElem::S(y)) => y.checked_sub(x).map(ZPElem::S),
        (ZPElem::X(_), ZPElem::S(_)) => None,
        (ZPElem::X(x), ZPElem::X(y)) if x == y => Some(ZPElem::Zero),
        (_, ZPElem::X(y)) => {
            let va = a.value();
            (va < *y).then(|| ZPElem::X(y - va))
        }
    }
}

pub fn zp_leq(a: &ZPElem, b: &ZPElem) -> bool {
    zp_leq_witness(a, b).is_some()
}

/// Binary digits of the integer part.
fn int_digits(n: &BigUint) -> String {
    n.to_str_radix(2)
}

/// Pre-period and period of the nonterminating expansion of the fraction
/// `num / den`, `0 < num < den` or `num = 0` with a dyadic `den`.
fn nonterminating_fraction(num: &BigUint, den: &BigUint) -> (String, String) {
    if is_power_of_two(den) {
        // terminating digits with the last one replaced by 0(1)
        let width = den.trailing_zeros().unwrap_or(0) as usize;
        let mut digits = format!("{:0>width$}", num.to_str_radix(2), width = width);
        if num.is_zero() {
            digits.clear();
        } else {
            digits.pop();
            digits.push('0');
        }
        return (digits, "1".into());
    }
    let mut seen: BTreeMap<BigUint, usize> = BTreeMap::new();
    let mut digits = String::new();
    let mut rem = num.clone();
    loop {
        if let Some(&start) = seen.get(&rem) {
            return (digits[..start].into(), digits[start..].into());
        }
        seen.insert(rem.clone(), digits.len());
        rem <<= 1usize;
        if rem >= *den {
            digits.push('1');
            rem -= den;
        } else {
            digits.push('0');
        }
    }
}

impl fmt::Display for ZPElem {
    /// `0`, `t:<int>.<bits>` and `r:<int>.<pre>(<period>)`, digits in base 2.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            ZPElem::Zero => f.write_str("0"),
            ZPElem::S(d) => {
                write!(f, "t:{}", int_digits(&d.floor()))?;
                let frac = d.fract();
                if !frac.is_zero() {
                    let (m, den) = frac.to_ratio_parts();
                    let width = den.trailing_zeros().unwrap_or(0) as usize;
                    write!(f, ".{:0>width$}", m.to_str_radix(2), width = width)?;
                }
                Ok(())
            }
            ZPElem::X(r) => {
                let (num, den) = (r.numer(), r.denom());
                let mut int = num / den;
                let mut rem = num % den;
                if rem.is_zero() {
                    // n = (n-1).111…
                    int -= 1u32;
                    rem = den.clone();
                }
                let (pre, period) = if rem == *den {
                    (String::new(), String::from("1"))
                } else {
                    nonterminating_fraction(&rem, den)
                };
                write!(f, "r:{}.{}({})", int_digits(&int), pre, period)
            }
        }
    }
}

fn parse_bits(s: &str, what: &'static str) -> Result<BigUint, ParseError> {
    if s.is_empty() {
        return Ok(BigUint::zero());
    }
    if !s.bytes().all(|b| b == b'0' || b == b'1') {
        return Err(ParseError::new(what, s));
    }
    BigUint::parse_bytes(s.as_bytes(), 2).ok_or_else(|| ParseError::new(what, s))
}

impl FromStr for ZPElem {
    type Err = ParseError;

    fn from_str(s: &str) -> Result<Self, ParseError> {
        let s = s.trim();
        if s == "0" {
            return Ok(ZPElem::Zero);
        }
        if let Some(body) = s.strip_prefix("t:") {
            let (int, frac) = body.split_once('.').unwrap_or((body, ""));
            if int.is_empty() {
                return Err(ParseError::new("binary integer part", body));
            }
            let mant = (parse_bits(int, "binary integer part")? << frac.len()) + parse_bits(frac, "binary fraction")?;
            let d = Dyadic::new(mant, frac.len() as u32);
            return ZPElem::s(d).map_err(|_| ParseError::new("a positive terminating value", s));
        }
        if let Some(body) = s.strip_prefix("r:") {
            let (int, rest) = body.split_once('.').ok_or_else(|| ParseError::new("int.pre(period)", body))?;
            let (pre, period) = rest
                .strip_suffix(')')
                .and_then(|r| r.split_once('('))
                .ok_or_else(|| ParseError::new("a parenthesized period", rest))?;
            if int.is_empty() || !period.contains('1') {
                // a period of zeros has finitely many ones: not in X
                return Err(ParseError::new("a nonterminating expansion", s));
            }
            let int = parse_bits(int, "binary integer part")?;
            let pre_v = parse_bits(pre, "binary pre-period")?;
            let per_v = parse_bits(period, "binary period")?;
            let scale = BigUint::one() << pre.len();
            let cycle = (BigUint::one() << period.len()) - 1u32;
            let r = Rational::from_integer(int)
                + Ratio::new(pre_v, scale.clone())
                + Ratio::new(per_v, scale * cycle);
            return Ok(ZPElem::X(r));
        }
        Err(ParseError::new("0, t:<bits> or r:<bits>.<bits>(<bits>)", s))
    }
}

/// Zero, a terminating `m / 2^e` (`m < 2^8`, `e <= 8`) or a nonterminating
/// `p / q` (`p, q < 64`), in roughly equal proportion after zero.
pub fn sample_zp(rng: &mut dyn RngCore) -> ZPElem {
    match rng.gen_range(0..9) {
        0 => ZPElem::Zero,
        1..=4 => ZPElem::S(Dyadic::new(rng.gen_range(1..256u32), rng.gen_range(0..=8))),
        _ => ZPElem::X(Ratio::new(BigUint::from(rng.gen_range(1..64u32)), BigUint::from(rng.gen_range(1..64u32)))),
    }
}
