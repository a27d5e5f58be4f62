use alloc::format;
use alloc::string::String;
use alloc::vec::Vec;
use core::fmt;

use num_traits::ToPrimitive;

use super::MagnitudeError;
use crate::extreal::{lower_real_sum_certified, Dyadic, DyadicExt, LowerReal};
use crate::series::{Extent, Family};

/// Where the one-bits of the fractional part sit.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Positions {
    /// Finitely many one-bits, strictly increasing.
    Terminating(Vec<u32>),
    /// The bits in `prefix`, then every position from `start` on.
    OnesFrom { prefix: Vec<u32>, start: u32 },
}

/// `integer_part + sum_n 2^-m_n`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct BinaryExpansion {
    integer: u64,
    positions: Positions,
}

impl BinaryExpansion {
    /// Fails unless `positions` are strictly increasing and positive, and
    /// `start` lies beyond the prefix.
    pub fn new(integer: u64, positions: Positions) -> Option<Self> {
        let (prefix, start) = match &positions {
            Positions::Terminating(ps) => (ps, None),
            Positions::OnesFrom { prefix, start } => (prefix, Some(*start)),
        };
        let increasing = prefix.first().is_none_or(|&p| p >= 1) && prefix.windows(2).all(|w| w[0] < w[1]);
        let tail_ok = start.is_none_or(|s| s >= 1 && prefix.last().is_none_or(|&p| p < s));
        (increasing && tail_ok).then_some(BinaryExpansion { integer, positions })
    }

    /// The terminating expansion whose fraction bits are `bits[0], bits[1],
    /// ...` at positions `1, 2, ...`: the truncation of a longer expansion
    /// given as a table.
    pub fn from_bit_table(integer: u64, bits: &[bool]) -> Self {
        let ps = bits.iter().enumerate().filter(|(_, b)| **b).map(|(i, _)| i as u32 + 1).collect();
        BinaryExpansion { integer, positions: Positions::Terminating(ps) }
    }

    pub fn integer_part(&self) -> u64 {
        self.integer
    }

    pub fn positions(&self) -> &Positions {
        &self.positions
    }

    pub fn is_terminating(&self) -> bool {
        matches!(self.positions, Positions::Terminating(_))
    }

    /// The `i`-th one-bit position, counting from zero.
    pub fn position(&self, i: usize) -> Option<u32> {
        match &self.positions {
            Positions::Terminating(ps) => ps.get(i).copied(),
            Positions::OnesFrom { prefix, start } => {
                Some(prefix.get(i).copied().unwrap_or_else(|| start + (i - prefix.len()) as u32))
            }
        }
    }

    /// The value in closed form.
    pub fn value(&self) -> Dyadic {
        let int = Dyadic::from_u64(self.integer);
        let bits = |ps: &[u32]| ps.iter().fold(Dyadic::zero(), |acc, &p| acc.add(&Dyadic::pow2_neg(p)));
        match &self.positions {
            Positions::Terminating(ps) => int.add(&bits(ps)),
            // 2^-s + 2^-(s+1) + ... = 2^-(s-1)
            Positions::OnesFrom { prefix, start } => int.add(&bits(prefix)).add(&Dyadic::pow2_neg(start - 1)),
        }
    }

    /// The value as the sum of the series of its terms, with a modulus.
    pub fn series_value(&self) -> LowerReal {
        if self.is_terminating() {
            return LowerReal::exact(DyadicExt::Fin(self.value()));
        }
        let this = self.clone();
        let fam = Family::lazy(
            LowerReal::zero(),
            move |i| {
                let term = match i {
                    0 => Dyadic::from_u64(this.integer),
                    _ => Dyadic::pow2_neg(this.position(i - 1).expect("nonterminating")),
                };
                LowerReal::exact(DyadicExt::Fin(term))
            },
            Extent::Infinite,
        );
        // past the first N entries at most 2^-(N-1) remains, and N >= k+1
        lower_real_sum_certified(&fam, alloc::sync::Arc::new(|k| k as usize + 1))
    }

    fn digits(&self) -> (String, Vec<String>) {
        match &self.positions {
            Positions::Terminating(ps) => {
                let last = ps.last().copied().unwrap_or(0);
                let digits = (1..=last).map(|p| if ps.contains(&p) { '1' } else { '0' }).collect();
                (digits, ps.iter().map(|p| format!("{p}")).collect())
            }
            Positions::OnesFrom { prefix, start } => {
                let mut digits: String =
                    (1..*start).map(|p| if prefix.contains(&p) { '1' } else { '0' }).collect();
                digits.push_str("111…");
                let mut pos: Vec<String> = prefix.iter().map(|p| format!("{p}")).collect();
                pos.extend((0..3).map(|j| format!("{}", start + j)));
                pos.push("…".into());
                (digits, pos)
            }
        }
    }
}

impl fmt::Display for BinaryExpansion {
    /// `3 + 0.001001 pos:[3,6]`, or `0 + 0.111… pos:[1,2,3,…]`.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let (digits, pos) = self.digits();
        let digits = if digits.is_empty() { String::from("0") } else { digits };
        write!(f, "{} + 0.{} pos:[{}]", self.integer, digits, pos.join(","))
    }
}

/// The binary expansion of a finite dyadic. With `nonterminating`, a
/// non-zero value is written with an infinite tail of ones in place of its
/// last one-bit (`1.000… = 0.111…`); zero has only the terminating form.
pub fn binary_expand(x: &DyadicExt, nonterminating: bool) -> Result<BinaryExpansion, MagnitudeError> {
    let d = x.finite().ok_or(MagnitudeError::Infinite)?;
    let integer = d.floor().to_u64().ok_or(MagnitudeError::IntegerTooLarge)?;
    let mut bits = d.fraction_bits();
    if !nonterminating || d.is_zero() {
        return Ok(BinaryExpansion { integer, positions: Positions::Terminating(bits) });
    }
    let (integer, start) = match bits.pop() {
        Some(last) => (integer, last + 1),
        None => (integer - 1, 1),
    };
    Ok(BinaryExpansion { integer, positions: Positions::OnesFrom { prefix: bits, start } })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::series::ApproxLevel;
    use crate::Verdict;
    use alloc::string::ToString;
    use alloc::vec;

    fn dy(s: &str) -> DyadicExt {
        s.parse().unwrap()
    }

    #[test]
    fn terminating_examples() {
        let e = binary_expand(&dy("5/8"), false).unwrap();
        assert_eq!(e.integer_part(), 0);
        assert_eq!(e.positions(), &Positions::Terminating(vec![1, 3]));
        assert_eq!(e.to_string(), "0 + 0.101 pos:[1,3]");
        assert_eq!(binary_expand(&dy("0"), true).unwrap().to_string(), "0 + 0.0 pos:[]");
    }

    #[test]
    fn nonterminating_one() {
        let e = binary_expand(&dy("1"), true).unwrap();
        assert_eq!(e.integer_part(), 0);
        assert_eq!((0..4).map(|i| e.position(i).unwrap()).collect::<Vec<_>>(), vec![1, 2, 3, 4]);
        assert_eq!(e.value(), Dyadic::one());
        assert_eq!(e.to_string(), "0 + 0.111… pos:[1,2,3,…]");
        let s = e.series_value();
        assert_eq!(s.eq_at(&LowerReal::exact(dy("1")), ApproxLevel(48)), Verdict::Equal);
        assert!(s.render(ApproxLevel(48)).starts_with("= "));
    }

    #[test]
    fn nonterminating_keeps_value() {
        for s in ["5/8", "3", "13/4", "1/1024"] {
            let e = binary_expand(&dy(s), true).unwrap();
            assert!(!e.is_terminating());
            assert_eq!(DyadicExt::Fin(e.value()), dy(s));
        }
        assert_eq!(binary_expand(&dy("5/8"), true).unwrap().to_string(), "0 + 0.100111… pos:[1,4,5,6,…]");
    }

    #[test]
    fn infinity_has_no_expansion() {
        assert_eq!(binary_expand(&DyadicExt::Inf, false), Err(MagnitudeError::Infinite));
    }

    #[test]
    fn pi_table_demo() {
        // pi - 3 = 0.001001000011111101101010100010...
        let table: Vec<bool> = "001001000011111101101010100010".chars().map(|c| c == '1').collect();
        let e = BinaryExpansion::from_bit_table(3, &table);
        assert!(e.to_string().starts_with("3 + 0.00100100001111110110101010001 pos:[3,6,11,"));
        let v = e.value();
        assert_eq!(v.floor(), num_bigint::BigUint::from(3u32));
        assert_eq!(v.fraction_bits()[..3], [3, 6, 11]);
    }

    #[test]
    fn validation() {
        assert!(BinaryExpansion::new(0, Positions::Terminating(vec![2, 1])).is_none());
        assert!(BinaryExpansion::new(0, Positions::Terminating(vec![0])).is_none());
        assert!(BinaryExpansion::new(0, Positions::OnesFrom { prefix: vec![3], start: 3 }).is_none());
        assert!(BinaryExpansion::new(1, Positions::OnesFrom { prefix: vec![1], start: 3 }).is_some());
    }
}
