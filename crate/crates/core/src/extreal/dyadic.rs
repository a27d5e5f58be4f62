//! Exact dyadic rationals `m/2^e` extended by a point at infinity.

use alloc::string::{String, ToString};
use alloc::vec::Vec;
use core::cmp::Ordering;
use core::fmt;
use core::str::FromStr;

use num_bigint::BigUint;
use num_traits::{One, ToPrimitive, Zero};

use crate::error::ParseError;

/// A finite non-negative dyadic rational `mant / 2^exp`.
///
/// Always canonical: either `mant` is odd, or `mant == 0` and `exp == 0`.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Dyadic {
    mant: BigUint,
    exp: u32,
}

impl Dyadic {
    pub fn new(mant: impl Into<BigUint>, exp: u32) -> Self {
        let mut mant = mant.into();
        if mant.is_zero() {
            return Self::zero();
        }
        let tz = mant.trailing_zeros().unwrap_or(0).min(u64::from(exp)) as u32;
        mant >>= tz;
        Dyadic { mant, exp: exp - tz }
    }

    pub fn zero() -> Self {
        Dyadic { mant: BigUint::zero(), exp: 0 }
    }

    pub fn one() -> Self {
        Dyadic { mant: BigUint::one(), exp: 0 }
    }

    pub fn from_u64(n: u64) -> Self {
        Dyadic::new(BigUint::from(n), 0)
    }

    /// `2^-k`.
    pub fn pow2_neg(k: u32) -> Self {
        Dyadic { mant: BigUint::one(), exp: k }
    }

    pub fn mantissa(&self) -> &BigUint {
        &self.mant
    }

    pub fn exponent(&self) -> u32 {
        self.exp
    }

    pub fn is_zero(&self) -> bool {
        self.mant.is_zero()
    }

    fn aligned(&self, other: &Self) -> (BigUint, BigUint, u32) {
        let e = self.exp.max(other.exp);
        (
            &self.mant << (e - self.exp) as usize,
            &other.mant << (e - other.exp) as usize,
            e,
        )
    }

    pub fn add(&self, other: &Self) -> Self {
        let (a, b, e) = self.aligned(other);
        Dyadic::new(a + b, e)
    }

    /// `self - other`, or `None` when the difference would be negative.
    pub fn checked_sub(&self, other: &Self) -> Option<Self> {
        let (a, b, e) = self.aligned(other);
        if a < b {
            None
        } else {
            Some(Dyadic::new(a - b, e))
        }
    }

    pub fn mul(&self, other: &Self) -> Self {
        Dyadic::new(&self.mant * &other.mant, self.exp + other.exp)
    }

    pub fn mul_u64(&self, n: u64) -> Self {
        Dyadic::new(&self.mant * BigUint::from(n), self.exp)
    }

    /// Multiplication by `2^-k`.
    pub fn shr(&self, k: u32) -> Self {
        if self.is_zero() {
            return Self::zero();
        }
        Dyadic { mant: self.mant.clone(), exp: self.exp + k }
    }

    /// Multiplication by `2^k`.
    pub fn shl(&self, k: u32) -> Self {
        let drop = k.min(self.exp);
        Dyadic::new(&self.mant << (k - drop) as usize, self.exp - drop)
    }

    /// Largest dyadic with at most `bits` fraction bits that is `<= self`.
    pub fn floor_bits(&self, bits: u32) -> Self {
        if self.exp <= bits {
            return self.clone();
        }
        Dyadic::new(&self.mant >> (self.exp - bits) as usize, bits)
    }

    /// Smallest dyadic with at most `bits` fraction bits that is `>= self`.
    pub fn ceil_bits(&self, bits: u32) -> Self {
        if self.exp <= bits {
            return self.clone();
        }
        let shift = (self.exp - bits) as usize;
        let q = &self.mant >> shift;
        let exact = (&q << shift) == self.mant;
        Dyadic::new(if exact { q } else { q + 1u32 }, bits)
    }

    pub fn floor(&self) -> BigUint {
        &self.mant >> self.exp as usize
    }

    /// The fractional part `self - floor(self)`.
    pub fn fract(&self) -> Self {
        let int = self.floor() << self.exp as usize;
        Dyadic::new(&self.mant - int, self.exp)
    }

    /// Positions `p >= 1` of the one-bits in the fractional part, ascending.
    pub fn fraction_bits(&self) -> Vec<u32> {
        let f = self.fract();
        (1..=f.exp)
            .filter(|&p| f.mant.bit(u64::from(f.exp - p)))
            .collect()
    }

    /// Length in bits of the integer part, used for magnitude estimates.
    pub fn int_bits(&self) -> u32 {
        self.floor().bits() as u32
    }

    pub fn to_u64(&self) -> Option<u64> {
        if self.exp == 0 {
            self.mant.to_u64()
        } else {
            None
        }
    }

    /// `(m, 2^e)` as big integers, for conversion to rationals.
    pub fn to_ratio_parts(&self) -> (BigUint, BigUint) {
        (self.mant.clone(), BigUint::one() << self.exp as usize)
    }

    fn render_candidates(&self) -> Vec<String> {
        let mut out = Vec::new();
        if self.exp == 0 {
            out.push(self.mant.to_string());
            return out;
        }
        if self.exp <= 20 {
            out.push(alloc::format!("{}/{}", self.mant, 1u64 << self.exp));
        }
        out.push(alloc::format!("{}/2^{}", self.mant, self.exp));
        // q - 2^-e, when mant + 1 is a multiple of 2^e
        let next = &self.mant + 1u32;
        let q = &next >> self.exp as usize;
        if (&q << self.exp as usize) == next {
            out.push(alloc::format!("{} - 2^-{}", q, self.exp));
        }
        out
    }
}

impl Ord for Dyadic {
    fn cmp(&self, other: &Self) -> Ordering {
        let (a, b, _) = self.aligned(other);
        a.cmp(&b)
    }
}

impl PartialOrd for Dyadic {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl fmt::Display for Dyadic {
    /// Shortest of `m/D`, `m/2^e` and `q - 2^-e`.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let best = self
            .render_candidates()
            .into_iter()
            .min_by_key(|s| s.len())
            .unwrap_or_default();
        f.write_str(&best)
    }
}

/// An element of the exact sub-carrier of `[0, inf]`.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub enum DyadicExt {
    Fin(Dyadic),
    Inf,
}

impl DyadicExt {
    pub fn zero() -> Self {
        DyadicExt::Fin(Dyadic::zero())
    }

    pub fn one() -> Self {
        DyadicExt::Fin(Dyadic::one())
    }

    pub fn new(mant: impl Into<BigUint>, exp: u32) -> Self {
        DyadicExt::Fin(Dyadic::new(mant, exp))
    }

    pub fn from_u64(n: u64) -> Self {
        DyadicExt::Fin(Dyadic::from_u64(n))
    }

    pub fn is_zero(&self) -> bool {
        matches!(self, DyadicExt::Fin(d) if d.is_zero())
    }

    pub fn is_inf(&self) -> bool {
        matches!(self, DyadicExt::Inf)
    }

    pub fn finite(&self) -> Option<&Dyadic> {
        match self {
            DyadicExt::Fin(d) => Some(d),
            DyadicExt::Inf => None,
        }
    }

    pub fn add(&self, other: &Self) -> Self {
        match (self, other) {
            (DyadicExt::Fin(a), DyadicExt::Fin(b)) => DyadicExt::Fin(a.add(b)),
            _ => DyadicExt::Inf,
        }
    }

    /// Multiplication with `0 * inf = 0`.
    pub fn mul(&self, other: &Self) -> Self {
        if self.is_zero() || other.is_zero() {
            return DyadicExt::zero();
        }
        match (self, other) {
            (DyadicExt::Fin(a), DyadicExt::Fin(b)) => DyadicExt::Fin(a.mul(b)),
            _ => DyadicExt::Inf,
        }
    }

    /// The `u` with `other + u = self`, if any.
    pub fn checked_sub(&self, other: &Self) -> Option<Self> {
        match (self, other) {
            (DyadicExt::Fin(a), DyadicExt::Fin(b)) => a.checked_sub(b).map(DyadicExt::Fin),
            (DyadicExt::Inf, _) => Some(DyadicExt::Inf),
            (DyadicExt::Fin(_), DyadicExt::Inf) => None,
        }
    }

    pub fn shr(&self, k: u32) -> Self {
        match self {
            DyadicExt::Fin(d) => DyadicExt::Fin(d.shr(k)),
            DyadicExt::Inf => DyadicExt::Inf,
        }
    }

    pub fn floor_bits(&self, bits: u32) -> Self {
        match self {
            DyadicExt::Fin(d) => DyadicExt::Fin(d.floor_bits(bits)),
            DyadicExt::Inf => DyadicExt::Inf,
        }
    }
}

impl Ord for DyadicExt {
    fn cmp(&self, other: &Self) -> Ordering {
        match (self, other) {
            (DyadicExt::Fin(a), DyadicExt::Fin(b)) => a.cmp(b),
            (DyadicExt::Fin(_), DyadicExt::Inf) => Ordering::Less,
            (DyadicExt::Inf, DyadicExt::Fin(_)) => Ordering::Greater,
            (DyadicExt::Inf, DyadicExt::Inf) => Ordering::Equal,
        }
    }
}

impl PartialOrd for DyadicExt {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl From<Dyadic> for DyadicExt {
    fn from(d: Dyadic) -> Self {
        DyadicExt::Fin(d)
    }
}

impl fmt::Display for DyadicExt {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            DyadicExt::Fin(d) => d.fmt(f),
            DyadicExt::Inf => f.write_str("inf"),
        }
    }
}

fn parse_uint(s: &str, what: &'static str) -> Result<BigUint, ParseError> {
    if s.is_empty() || !s.bytes().all(|b| b.is_ascii_digit()) {
        return Err(ParseError::new(what, s));
    }
    BigUint::parse_bytes(s.as_bytes(), 10).ok_or_else(|| ParseError::new(what, s))
}

impl FromStr for DyadicExt {
    type Err = ParseError;

    /// Accepts `inf`, `m`, `m/2^e` and `m/d` with `d` a power of two.
    fn from_str(s: &str) -> Result<Self, Self::Err> {
        let s = s.trim();
        if s == "inf" || s == "∞" {
            return Ok(DyadicExt::Inf);
        }
        let Some((num, den)) = s.split_once('/') else {
            return Ok(DyadicExt::Fin(Dyadic::new(parse_uint(s, "dyadic")?, 0)));
        };
        let mant = parse_uint(num.trim(), "dyadic numerator")?;
        let den = den.trim();
        let exp = if let Some(e) = den.strip_prefix("2^") {
            e.parse::<u32>().map_err(|_| ParseError::new("dyadic exponent", den))?
        } else {
            let d = parse_uint(den, "dyadic denominator")?;
            if d.is_zero() || !(&d & (&d - 1u32)).is_zero() {
                return Err(ParseError::new("power-of-two denominator", den));
            }
            d.trailing_zeros().unwrap_or(0) as u32
        };
        Ok(DyadicExt::Fin(Dyadic::new(mant, exp)))
    }
}

/// `gcd`-free check that a positive integer is a power of two.
pub(crate) fn is_power_of_two(n: &BigUint) -> bool {
    !n.is_zero() && (n & (n - 1u32)).is_zero()
}

#[cfg(test)]
mod tests {
    use super::*;

    fn d(s: &str) -> DyadicExt {
        s.parse().unwrap()
    }

    #[test]
    fn canonical_form() {
        let x = Dyadic::new(12u32, 4);
        assert_eq!(x.mantissa(), &BigUint::from(3u32));
        assert_eq!(x.exponent(), 2);
        assert_eq!(Dyadic::new(0u32, 9), Dyadic::zero());
        assert_eq!(Dyadic::new(8u32, 1), Dyadic::from_u64(4));
    }

    #[test]
    fn parse_and_print() {
        assert_eq!(d("3/2^2"), d("3/4"));
        assert_eq!(d("inf"), DyadicExt::Inf);
        assert_eq!(d("6/8").to_string(), "3/4");
        assert_eq!(d("5").to_string(), "5");
        let near_one = DyadicExt::one().checked_sub(&DyadicExt::Fin(Dyadic::pow2_neg(41)));
        assert_eq!(near_one.unwrap().to_string(), "1 - 2^-41");
        assert!("3/6".parse::<DyadicExt>().is_err());
        assert!("x".parse::<DyadicExt>().is_err());
    }

    #[test]
    fn arithmetic() {
        assert_eq!(d("1/2").mul(&d("3/4")), d("3/8"));
        assert_eq!(d("0").mul(&d("inf")), d("0"));
        assert_eq!(d("inf").mul(&d("0")), d("0"));
        assert_eq!(d("1/2").add(&d("1/4")), d("3/4"));
        assert_eq!(d("3/4").checked_sub(&d("1/2")), Some(d("1/4")));
        assert_eq!(d("1/2").checked_sub(&d("3/4")), None);
        assert_eq!(d("3/4").shr(1), d("3/8"));
        assert!(d("1/2") < d("3/4"));
        assert!(d("1000") < d("inf"));
    }

    #[test]
    fn rounding_and_bits() {
        let x = Dyadic::new(13u32, 4); // 0.1101
        assert_eq!(x.floor_bits(2), Dyadic::new(3u32, 2));
        assert_eq!(x.ceil_bits(2), Dyadic::new(1u32, 0));
        assert_eq!(x.fraction_bits(), alloc::vec![1, 2, 4]);
        assert_eq!(Dyadic::new(21u32, 2).fraction_bits(), alloc::vec![2]);
        assert_eq!(Dyadic::new(21u32, 2).floor(), BigUint::from(5u32));
        assert!(is_power_of_two(&BigUint::from(64u32)));
    }
}
