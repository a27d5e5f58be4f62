//! Integer sets: pairs `(X, U)` of finite sets, read as `|X| - |U|`.
//!
//! A morphism `(X, U) -> (Y, V)` is an injection (or, in the bijective
//! variant, a bijection) `X + V -> Y + U`, and morphisms compose by
//! feeding the middle block back through a trace. Finite sets are sizes,
//! elements are indices, and every disjoint union lists its first block
//! before the second.

use alloc::format;
use alloc::string::String;
use alloc::vec::Vec;
use core::fmt;

use rand::seq::SliceRandom;
use rand::{Rng, RngCore};
use thiserror::Error;

#[derive(Clone, Debug, PartialEq, Eq, Error)]
pub enum IntSetError {
    #[error("invalid injection: {0}")]
    InvalidInjection(String),
    #[error("map does not fit the objects: {0}")]
    SizeMismatch(String),
    #[error("bijective mode needs a bijection")]
    NotBijective,
    #[error("cannot compose: codomain {cod} differs from domain {dom}")]
    ObjectMismatch { cod: IntObject, dom: IntObject },
    #[error("trace orbit of {0} stayed in the feedback block")]
    TraceDiverged(usize),
}

/// An injective function `0..dom_size -> 0..cod_size`.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Injection {
    cod_size: usize,
    table: Vec<usize>,
}

impl Injection {
    pub fn new(cod_size: usize, table: Vec<usize>) -> Result<Self, IntSetError> {
        let mut seen = alloc::vec![false; cod_size];
        for (i, &j) in table.iter().enumerate() {
            if j >= cod_size {
                return Err(IntSetError::InvalidInjection(format!("{i} maps to {j}, outside 0..{cod_size}")));
            }
            if core::mem::replace(&mut seen[j], true) {
                return Err(IntSetError::InvalidInjection(format!("{j} is hit twice")));
            }
        }
        Ok(Injection { cod_size, table })
    }

    pub fn identity(n: usize) -> Self {
        Injection { cod_size: n, table: (0..n).collect() }
    }

    pub fn dom_size(&self) -> usize {
        self.table.len()
    }

    pub fn cod_size(&self) -> usize {
        self.cod_size
    }

    pub fn table(&self) -> &[usize] {
        &self.table
    }

    pub fn apply(&self, i: usize) -> usize {
        self.table[i]
    }

    pub fn is_bijective(&self) -> bool {
        self.dom_size() == self.cod_size
    }

    /// `g ∘ self`.
    pub fn then(&self, g: &Injection) -> Result<Injection, IntSetError> {
        if g.dom_size() != self.cod_size {
            return Err(IntSetError::SizeMismatch(format!(
                "codomain size {} against domain size {}",
                self.cod_size,
                g.dom_size()
            )));
        }
        Ok(Injection { cod_size: g.cod_size, table: self.table.iter().map(|&j| g.apply(j)).collect() })
    }

    /// Every injection `0..dom -> 0..cod`, in lexicographic table order.
    pub fn all(dom: usize, cod: usize) -> Vec<Injection> {
        fn extend(prefix: &mut Vec<usize>, used: &mut [bool], dom: usize, out: &mut Vec<Injection>) {
            if prefix.len() == dom {
                out.push(Injection { cod_size: used.len(), table: prefix.clone() });
                return;
            }
            for j in 0..used.len() {
                if !used[j] {
                    used[j] = true;
                    prefix.push(j);
                    extend(prefix, used, dom, out);
                    prefix.pop();
                    used[j] = false;
                }
            }
        }
        let mut out = Vec::new();
        if dom <= cod {
            extend(&mut Vec::new(), &mut alloc::vec![false; cod], dom, &mut out);
        }
        out
    }

    /// A uniformly random injection, `None` when `dom > cod`.
    pub fn random(rng: &mut dyn RngCore, dom: usize, cod: usize) -> Option<Injection> {
        if dom > cod {
            return None;
        }
        let mut pool: Vec<usize> = (0..cod).collect();
        pool.shuffle(rng);
        pool.truncate(dom);
        Some(Injection { cod_size: cod, table: pool })
    }
}

/// Feedback through the last `u` elements of both sides: `X + U -> Y + U`
/// becomes `X -> Y`, each `x` following its orbit until it leaves `U`.
pub fn trace_injection(f: &Injection, u: usize) -> Result<Injection, IntSetError> {
    if f.dom_size() < u || f.cod_size() < u {
        return Err(IntSetError::SizeMismatch(format!("feedback block {u} larger than the map")));
    }
    let (nx, ny) = (f.dom_size() - u, f.cod_size() - u);
    let mut table = Vec::with_capacity(nx);
    for x in 0..nx {
        let mut cur = f.apply(x);
        let mut steps = 1;
        while cur >= ny {
            // injectivity keeps the orbit from revisiting U, so it exits
            // within |U| + 1 steps
            if steps > u {
                return Err(IntSetError::TraceDiverged(x));
            }
            cur = f.apply(nx + (cur - ny));
            steps += 1;
        }
        table.push(cur);
    }
    Injection::new(ny, table)
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct IntObject {
    pub pos: usize,
    pub neg: usize,
}

impl IntObject {
    pub const UNIT: IntObject = IntObject { pos: 0, neg: 0 };

    pub fn new(pos: usize, neg: usize) -> Self {
        IntObject { pos, neg }
    }

    /// `|X| - |U|`.
    pub fn cardinality(&self) -> i64 {
        self.pos as i64 - self.neg as i64
    }

    pub fn dual(&self) -> Self {
        IntObject { pos: self.neg, neg: self.pos }
    }

    pub fn tensor(&self, other: &Self) -> Self {
        IntObject { pos: self.pos + other.pos, neg: self.neg + other.neg }
    }
}

impl fmt::Display for IntObject {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({},{})", self.pos, self.neg)
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Mode {
    /// Bijections.
    FB,
    /// Injections.
    FI,
}

impl Mode {
    pub fn name(self) -> &'static str {
        match self {
            Mode::FB => "FB",
            Mode::FI => "FI",
        }
    }

    fn meet(self, other: Mode) -> Mode {
        if self == Mode::FB && other == Mode::FB {
            Mode::FB
        } else {
            Mode::FI
        }
    }
}

impl core::str::FromStr for Mode {
    type Err = crate::ParseError;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        match s {
            "FB" => Ok(Mode::FB),
            "FI" => Ok(Mode::FI),
            _ => Err(crate::ParseError::new("FB or FI", s)),
        }
    }
}

/// `(X, U) -> (Y, V)` carried by `X + V -> Y + U`.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct IntMorphism {
    dom: IntObject,
    cod: IntObject,
    map: Injection,
    mode: Mode,
}

impl IntMorphism {
    pub fn new(dom: IntObject, cod: IntObject, map: Injection, mode: Mode) -> Result<Self, IntSetError> {
        if map.dom_size() != dom.pos + cod.neg || map.cod_size() != cod.pos + dom.neg {
            return Err(IntSetError::SizeMismatch(format!(
                "{dom} -> {cod} needs {} -> {}, got {} -> {}",
                dom.pos + cod.neg,
                cod.pos + dom.neg,
                map.dom_size(),
                map.cod_size()
            )));
        }
        if mode == Mode::FB && !map.is_bijective() {
            return Err(IntSetError::NotBijective);
        }
        Ok(IntMorphism { dom, cod, map, mode })
    }

    pub fn dom(&self) -> IntObject {
        self.dom
    }

    pub fn cod(&self) -> IntObject {
        self.cod
    }

    pub fn map(&self) -> &Injection {
        &self.map
    }

    pub fn mode(&self) -> Mode {
        self.mode
    }

    /// A uniformly random morphism, `None` if there is none between the two
    /// objects in the given mode.
    pub fn random(rng: &mut dyn RngCore, dom: IntObject, cod: IntObject, mode: Mode) -> Option<IntMorphism> {
        let (n, m) = (dom.pos + cod.neg, cod.pos + dom.neg);
        if mode == Mode::FB && n != m {
            return None;
        }
        Injection::random(rng, n, m).map(|map| IntMorphism { dom, cod, map, mode })
    }
}

impl fmt::Display for IntMorphism {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{} -> {} {:?} {}", self.dom, self.cod, self.map.table, self.mode.name())
    }
}

pub fn int_identity(obj: IntObject, mode: Mode) -> IntMorphism {
    IntMorphism { dom: obj, cod: obj, map: Injection::identity(obj.pos + obj.neg), mode }
}

/// `g # f : X + W + V -> Z + U + V` for `f: (X,U) -> (Y,V)` and
/// `g: (Y,V) -> (Z,W)`.
pub fn sharp(g: &IntMorphism, f: &IntMorphism) -> Result<Injection, IntSetError> {
    if f.cod != g.dom {
        return Err(IntSetError::ObjectMismatch { cod: f.cod, dom: g.dom });
    }
    let (x, u) = (f.dom.pos, f.dom.neg);
    let (y, v) = (f.cod.pos, f.cod.neg);
    let (z, w) = (g.cod.pos, g.cod.neg);
    // g's outputs: Z stays put, V moves past U
    let place_g = |j: usize| if j < z { j } else { z + u + (j - z) };
    let through_f = |p: usize| {
        let q = f.map.apply(p);
        if q < y {
            place_g(g.map.apply(q))
        } else {
            z + (q - y)
        }
    };
    let mut table = Vec::with_capacity(x + w + v);
    table.extend((0..x).map(through_f));
    table.extend((0..w).map(|i| place_g(g.map.apply(y + i))));
    table.extend((x..x + v).map(through_f));
    Injection::new(z + u + v, table)
}

/// `g ∘ f = Tr^V(g # f)`.
pub fn int_compose(g: &IntMorphism, f: &IntMorphism) -> Result<IntMorphism, IntSetError> {
    let map = trace_injection(&sharp(g, f)?, f.cod.neg)?;
    IntMorphism::new(f.dom, g.cod, map, f.mode.meet(g.mode))
}

/// `f ⊗ g`, the maps placed side by side with their blocks interleaved:
/// `(X+Y) + (U'+V')  ->  (X'+Y') + (U+V)`.
pub fn int_tensor(f: &IntMorphism, g: &IntMorphism) -> IntMorphism {
    let dom = f.dom.tensor(&g.dom);
    let cod = f.cod.tensor(&g.cod);
    let (x, y) = (f.dom.pos, g.dom.pos);
    let (x2, y2, u) = (f.cod.pos, g.cod.pos, f.dom.neg);
    let (u2, v2) = (f.cod.neg, g.cod.neg);
    let place_f = |j: usize| if j < x2 { j } else { x2 + y2 + (j - x2) };
    let place_g = |j: usize| if j < y2 { x2 + j } else { x2 + y2 + u + (j - y2) };
    let mut table = Vec::with_capacity(x + y + u2 + v2);
    table.extend((0..x).map(|i| place_f(f.map.apply(i))));
    table.extend((0..y).map(|i| place_g(g.map.apply(i))));
    table.extend((0..u2).map(|i| place_f(f.map.apply(x + i))));
    table.extend((0..v2).map(|i| place_g(g.map.apply(y + i))));
    let map = Injection { cod_size: cod.pos + dom.neg, table };
    IntMorphism { dom, cod, map, mode: f.mode.meet(g.mode) }
}

/// The swap `U + X -> X + U`.
fn swap(obj: IntObject) -> Injection {
    let (x, u) = (obj.pos, obj.neg);
    let table = (0..u).map(|j| x + j).chain(0..x).collect();
    Injection { cod_size: x + u, table }
}

/// `η: I -> A ⊗ A*`.
pub fn int_unit(obj: IntObject) -> IntMorphism {
    IntMorphism { dom: IntObject::UNIT, cod: obj.tensor(&obj.dual()), map: swap(obj), mode: Mode::FB }
}

/// `ε: A* ⊗ A -> I`.
pub fn int_counit(obj: IntObject) -> IntMorphism {
    IntMorphism { dom: obj.dual().tensor(&obj), cod: IntObject::UNIT, map: swap(obj), mode: Mode::FB }
}

/// `(1_A ⊗ ε) ∘ (η ⊗ 1_A)` and `(ε ⊗ 1_A*) ∘ (1_A* ⊗ η)`; both should be
/// identities.
pub fn snakes(obj: IntObject) -> Result<(IntMorphism, IntMorphism), IntSetError> {
    let id = int_identity(obj, Mode::FB);
    let id_dual = int_identity(obj.dual(), Mode::FB);
    let first = int_compose(&int_tensor(&id, &int_counit(obj)), &int_tensor(&int_unit(obj), &id))?;
    let second = int_compose(&int_tensor(&int_counit(obj), &id_dual), &int_tensor(&id_dual, &int_unit(obj)))?;
    Ok((first, second))
}

/// The inclusion of finite sets: `f: X -> Y` as `(X, ∅) -> (Y, ∅)`.
pub fn embed_fb(f: &Injection) -> IntMorphism {
    let mode = if f.is_bijective() { Mode::FB } else { Mode::FI };
    IntMorphism {
        dom: IntObject::new(f.dom_size(), 0),
        cod: IntObject::new(f.cod_size(), 0),
        map: f.clone(),
        mode,
    }
}

/// An object with both sides at most `max`.
pub fn sample_object(rng: &mut dyn RngCore, max: usize) -> IntObject {
    IntObject::new(rng.gen_range(0..=max), rng.gen_range(0..=max))
}

/// Three composable morphisms `A -> B -> C -> D`, all sizes at most `max`.
pub fn sample_triple(rng: &mut dyn RngCore, max: usize, mode: Mode) -> [IntMorphism; 3] {
    let mut objs = [sample_object(rng, max); 4];
    let mut maps = Vec::with_capacity(3);
    for i in 0..3 {
        loop {
            let next = sample_object(rng, max);
            if let Some(m) = IntMorphism::random(rng, objs[i], next, mode) {
                objs[i + 1] = next;
                maps.push(m);
                break;
            }
        }
    }
    maps.try_into().expect("three maps")
}

#[cfg(test)]
mod tests {
    use super::*;
    use alloc::vec;

    fn inj(cod: usize, t: &[usize]) -> Injection {
        Injection::new(cod, t.to_vec()).unwrap()
    }

    #[test]
    fn feedback_orbit() {
        // X = {x}, U = {u0, u1}, Y = {y}: x -> u0 -> u1 -> y
        let f = inj(3, &[1, 2, 0]);
        assert_eq!(trace_injection(&f, 2).unwrap().table(), &[0]);
        assert_eq!(trace_injection(&f, 0).unwrap(), f);
    }

    #[test]
    fn trace_of_identity() {
        let t = trace_injection(&Injection::identity(5), 2).unwrap();
        assert_eq!(t, Injection::identity(3));
    }

    #[test]
    fn injection_validation() {
        assert!(Injection::new(2, vec![0, 0]).is_err());
        assert!(Injection::new(2, vec![2]).is_err());
        assert!(Injection::new(3, vec![2, 0]).is_ok());
        assert_eq!(Injection::all(2, 3).len(), 6);
        assert_eq!(Injection::all(3, 2).len(), 0);
    }

    #[test]
    fn compose_reduces_without_negatives() {
        let f = embed_fb(&inj(3, &[2, 0]));
        let g = embed_fb(&inj(4, &[1, 3, 0]));
        let gf = int_compose(&g, &f).unwrap();
        assert_eq!(gf, embed_fb(&inj(2, &[0, 1]).then(&inj(3, &[2, 0])).unwrap().then(&inj(4, &[1, 3, 0])).unwrap()));
        assert_eq!(gf.map().table(), &[0, 1]);
        assert_eq!(gf.mode(), Mode::FI);
    }

    #[test]
    fn mismatched_objects() {
        let f = int_identity(IntObject::new(1, 0), Mode::FB);
        let g = int_identity(IntObject::new(2, 0), Mode::FB);
        assert!(matches!(int_compose(&g, &f), Err(IntSetError::ObjectMismatch { .. })));
        let bad = IntMorphism::new(IntObject::new(1, 0), IntObject::new(2, 0), inj(2, &[0]), Mode::FB);
        assert_eq!(bad, Err(IntSetError::NotBijective));
    }

    #[test]
    fn identity_example() {
        assert_eq!(int_identity(IntObject::new(2, 1), Mode::FB).map().table(), &[0, 1, 2]);
        assert_eq!(IntObject::new(3, 5).cardinality(), -2);
        assert_eq!(IntObject::new(3, 1).dual(), IntObject::new(1, 3));
        assert_eq!(IntObject::new(2, 1).tensor(&IntObject::new(1, 3)), IntObject::new(3, 4));
    }

    #[test]
    fn snakes_small() {
        for obj in [IntObject::new(1, 0), IntObject::new(2, 3), IntObject::new(0, 2)] {
            let (a, b) = snakes(obj).unwrap();
            assert_eq!(a, int_identity(obj, Mode::FB));
            assert_eq!(b, int_identity(obj.dual(), Mode::FB));
        }
    }

    #[test]
    fn category_laws_sampled() {
        for case in 0..200u64 {
            let mut rng = crate::series::harness::case_rng(3, case);
            for mode in [Mode::FB, Mode::FI] {
                let [f, g, h] = sample_triple(&mut rng, 3, mode);
                let left = int_compose(&h, &int_compose(&g, &f).unwrap()).unwrap();
                let right = int_compose(&int_compose(&h, &g).unwrap(), &f).unwrap();
                assert_eq!(left, right);
                assert_eq!(int_compose(&f, &int_identity(f.dom(), mode)).unwrap(), f);
                assert_eq!(int_compose(&int_identity(f.cod(), mode), &f).unwrap(), f);
            }
        }
    }

    #[test]
    fn tensor_is_strict() {
        let mut rng = crate::series::harness::case_rng(5, 0);
        for _ in 0..100 {
            let [f, g, h] = [(); 3].map(|_| {
                let (a, b) = (sample_object(&mut rng, 2), sample_object(&mut rng, 2));
                IntMorphism::random(&mut rng, a, b, Mode::FI).unwrap_or_else(|| int_identity(a, Mode::FI))
            });
            assert_eq!(int_tensor(&int_tensor(&f, &g), &h), int_tensor(&f, &int_tensor(&g, &h)));
            assert_eq!(int_tensor(&f, &int_identity(IntObject::UNIT, Mode::FB)), f);
            assert!(IntMorphism::new(f.dom(), f.cod(), f.map().clone(), f.mode()).is_ok());
            let fg = int_tensor(&f, &g);
            assert!(IntMorphism::new(fg.dom(), fg.cod(), fg.map().clone(), fg.mode()).is_ok());
        }
    }

    #[test]
    fn tensor_interchange() {
        let mut rng = crate::series::harness::case_rng(6, 0);
        for _ in 0..100 {
            let [f1, g1, _] = sample_triple(&mut rng, 2, Mode::FI);
            let [f2, g2, _] = sample_triple(&mut rng, 2, Mode::FI);
            let lhs = int_compose(&int_tensor(&g1, &g2), &int_tensor(&f1, &f2)).unwrap();
            let rhs = int_tensor(&int_compose(&g1, &f1).unwrap(), &int_compose(&g2, &f2).unwrap());
            assert_eq!(lhs, rhs);
        }
    }
}
