use alloc::sync::Arc;
use alloc::vec::Vec;
use core::fmt;

use thiserror::Error;

/// Values that can live in a countable family.
pub trait Element: Clone + fmt::Debug + Send + Sync + 'static {}

impl<T: Clone + fmt::Debug + Send + Sync + 'static> Element for T {}

pub type Generator<E> = Arc<dyn Fn(usize) -> E + Send + Sync>;

/// What is known about where a lazy family is non-zero.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Extent {
    /// Every index `>= n` holds zero.
    Bounded(usize),
    /// Infinitely many entries are non-zero.
    Infinite,
    /// The entries eventually exceed every element short of the top of the
    /// instance's order, so any sum or supremum is the top.
    Unbounded,
    Unknown,
}

#[derive(Clone, Debug, PartialEq, Eq, Error)]
pub enum FamilyError {
    #[error("index {0} appears twice in a finite-support family")]
    DuplicateIndex(usize),
}

/// The shape of a [`Family`].
#[derive(Clone)]
pub enum FamilyKind<E> {
    /// Strictly increasing indices with non-zero values; zero elsewhere.
    Finite(Vec<(usize, E)>),
    Lazy { gen: Generator<E>, extent: Extent },
    /// The same non-zero value at every index.
    Constant(E),
}

/// An `N`-indexed family of elements, i.e. a point of `A^N`.
#[derive(Clone)]
pub struct Family<E> {
    zero: E,
    kind: FamilyKind<E>,
}

impl<E: Element> Family<E> {
    pub fn zeros(zero: E) -> Self {
        Family { zero, kind: FamilyKind::Finite(Vec::new()) }
    }

    /// The family `values[0], values[1], ..., 0, 0, ...`.
    pub fn from_values(zero: E, values: Vec<E>, is_zero: impl Fn(&E) -> bool) -> Self {
        let entries = values
            .into_iter()
            .enumerate()
            .filter(|(_, v)| !is_zero(v))
            .collect();
        Family { zero, kind: FamilyKind::Finite(entries) }
    }

    pub fn from_entries(
        zero: E,
        entries: impl IntoIterator<Item = (usize, E)>,
        is_zero: impl Fn(&E) -> bool,
    ) -> Result<Self, FamilyError> {
        let mut entries: Vec<(usize, E)> = entries.into_iter().collect();
        entries.sort_by_key(|(i, _)| *i);
        if let Some(w) = entries.windows(2).find(|w| w[0].0 == w[1].0) {
            return Err(FamilyError::DuplicateIndex(w[0].0));
        }
        entries.retain(|(_, v)| !is_zero(v));
        Ok(Family { zero, kind: FamilyKind::Finite(entries) })
    }

    pub fn lazy(zero: E, gen: impl Fn(usize) -> E + Send + Sync + 'static, extent: Extent) -> Self {
        Family { zero, kind: FamilyKind::Lazy { gen: Arc::new(gen), extent } }
    }

    /// The constant family `(v, v, v, ...)`.
    pub fn constant(zero: E, value: E, is_zero: impl Fn(&E) -> bool) -> Self {
        if is_zero(&value) {
            Family::zeros(zero)
        } else {
            Family { zero, kind: FamilyKind::Constant(value) }
        }
    }

    /// `delta_n(a)`: `a` at index `n`, zero elsewhere.
    pub fn single(zero: E, n: usize, a: E, is_zero: impl Fn(&E) -> bool) -> Self {
        let entries = if is_zero(&a) { Vec::new() } else { alloc::vec![(n, a)] };
        Family { zero, kind: FamilyKind::Finite(entries) }
    }

    pub fn kind(&self) -> &FamilyKind<E> {
        &self.kind
    }

    pub fn zero(&self) -> &E {
        &self.zero
    }

    pub fn at(&self, i: usize) -> E {
        match &self.kind {
            FamilyKind::Finite(entries) => entries
                .binary_search_by_key(&i, |(j, _)| *j)
                .map(|k| entries[k].1.clone())
                .unwrap_or_else(|_| self.zero.clone()),
            FamilyKind::Lazy { gen, extent } => match extent {
                Extent::Bounded(n) if i >= *n => self.zero.clone(),
                _ => gen(i),
            },
            FamilyKind::Constant(v) => v.clone(),
        }
    }

    pub fn extent(&self) -> Extent {
        match &self.kind {
            FamilyKind::Finite(entries) => Extent::Bounded(entries.last().map_or(0, |(i, _)| i + 1)),
            FamilyKind::Lazy { extent, .. } => *extent,
            FamilyKind::Constant(_) => Extent::Infinite,
        }
    }

    /// `Some(n)` when every index `>= n` is known to hold zero.
    pub fn support_bound(&self) -> Option<usize> {
        match self.extent() {
            Extent::Bounded(n) => Some(n),
            _ => None,
        }
    }

    pub fn is_finite(&self) -> bool {
        matches!(self.kind, FamilyKind::Finite(_))
    }

    /// Entries `0..n` in order, zeros included.
    pub fn prefix(&self, n: usize) -> Vec<E> {
        (0..n).map(|i| self.at(i)).collect()
    }

    /// Converts a boundedly supported lazy family into its finite form.
    pub fn materialize(&self, is_zero: impl Fn(&E) -> bool) -> Option<Self> {
        match &self.kind {
            FamilyKind::Finite(_) => Some(self.clone()),
            FamilyKind::Lazy { extent: Extent::Bounded(n), .. } => {
                Some(Family::from_values(self.zero.clone(), self.prefix(*n), is_zero))
            }
            _ => None,
        }
    }

    /// Apply `f` entrywise. `target_zero` and `is_zero` describe the target.
    pub fn map<F: Element>(
        &self,
        target_zero: F,
        f: impl Fn(&E) -> F + Send + Sync + 'static,
        is_zero: impl Fn(&F) -> bool,
    ) -> Family<F> {
        let tail = f(&self.zero);
        let tail_is_zero = is_zero(&tail);
        match &self.kind {
            FamilyKind::Finite(entries) if tail_is_zero => Family {
                zero: target_zero,
                kind: FamilyKind::Finite(
                    entries
                        .iter()
                        .map(|(i, v)| (*i, f(v)))
                        .filter(|(_, v)| !is_zero(v))
                        .collect(),
                ),
            },
            FamilyKind::Constant(v) => Family::constant(target_zero, f(v), is_zero),
            _ => {
                let extent = match self.extent() {
                    Extent::Bounded(n) if tail_is_zero => Extent::Bounded(n),
                    // f(0) != 0 repeats forever past the support
                    _ if !tail_is_zero => Extent::Infinite,
                    _ => Extent::Unknown,
                };
                let src = self.clone();
                Family::lazy(target_zero, move |i| f(&src.at(i)), extent)
            }
        }
    }

    /// The family extended by zero off `subset`.
    pub fn restrict(&self, subset: &Subset, is_zero: impl Fn(&E) -> bool) -> Self {
        if let Some(bound) = subset.bound() {
            let values = (0..bound)
                .map(|i| if subset.contains(i) { self.at(i) } else { self.zero.clone() })
                .collect();
            return Family::from_values(self.zero.clone(), values, is_zero);
        }
        match &self.kind {
            FamilyKind::Finite(entries) => Family {
                zero: self.zero.clone(),
                kind: FamilyKind::Finite(
                    entries.iter().filter(|(i, _)| subset.contains(*i)).cloned().collect(),
                ),
            },
            _ => {
                let extent = match self.extent() {
                    Extent::Bounded(n) => Extent::Bounded(n),
                    // a non-zero constant on an infinite subset stays infinite
                    _ if matches!(self.kind, FamilyKind::Constant(_)) => Extent::Infinite,
                    _ => Extent::Unknown,
                };
                let src = self.clone();
                let member = subset.clone();
                let zero = self.zero.clone();
                Family::lazy(
                    self.zero.clone(),
                    move |i| if member.contains(i) { src.at(i) } else { zero.clone() },
                    extent,
                )
            }
        }
    }
}

impl<E: fmt::Debug> fmt::Debug for Family<E> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match &self.kind {
            FamilyKind::Finite(entries) => f.debug_tuple("Finite").field(entries).finish(),
            FamilyKind::Lazy { extent, .. } => f.debug_struct("Lazy").field("extent", extent).finish_non_exhaustive(),
            FamilyKind::Constant(v) => f.debug_tuple("Constant").field(v).finish(),
        }
    }
}

/// A decidable subset of `N`.
#[derive(Clone)]
pub struct Subset {
    member: Arc<dyn Fn(usize) -> bool + Send + Sync>,
    /// All members are `< bound`; `None` for an infinite subset.
    bound: Option<usize>,
}

impl Subset {
    pub fn of(indices: &[usize]) -> Self {
        let mut sorted = indices.to_vec();
        sorted.sort_unstable();
        sorted.dedup();
        let bound = sorted.last().map_or(0, |m| m + 1);
        Subset {
            member: Arc::new(move |i| sorted.binary_search(&i).is_ok()),
            bound: Some(bound),
        }
    }

    pub fn empty() -> Self {
        Subset::of(&[])
    }

    /// An infinite subset given by its membership predicate.
    pub fn infinite(member: impl Fn(usize) -> bool + Send + Sync + 'static) -> Self {
        Subset { member: Arc::new(member), bound: None }
    }

    pub fn evens() -> Self {
        Subset::infinite(|i| i % 2 == 0)
    }

    pub fn contains(&self, i: usize) -> bool {
        self.bound.is_none_or(|b| i < b) && (self.member)(i)
    }

    pub fn bound(&self) -> Option<usize> {
        self.bound
    }
}
