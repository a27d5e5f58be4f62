//! Countably-infinitary algebra with executable laws.
//!
//! A *series monoid* is a set with a zero and a sum over every `N`-indexed
//! family, subject to a diagonal law and a double-sum interchange law. This
//! crate provides the abstract interface ([`series`]), concrete instances on
//! the extended naturals and on `[0, inf]` ([`extreal`]), Zeno halving and the
//! free magnitude module ([`magnitude`]), the subset-product sum on rigs
//! ([`rig`]), the paradoxical positive reals ([`paradoxical`]) and the
//! trace-composed categories of integer sets ([`intsets`]).
//!
//! The crate is `no_std` and needs only `alloc`.
#![no_std]

extern crate alloc;

pub mod error;
pub mod extreal;
pub mod intsets;
pub mod magnitude;
pub mod paradoxical;
pub mod rig;
pub mod series;

pub use error::ParseError;
pub use extreal::{Dyadic, DyadicExt, ExtNat, LowerReal};
pub use series::{ApproxLevel, Extent, Family, SeriesMonoid, Summed, Verdict};
