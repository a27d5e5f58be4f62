use alloc::format;
use alloc::string::String;
use alloc::vec::Vec;

use crate::series::{ApproxLevel, Family, SeriesMonoid, Summed, Verdict};

/// A map on elements, from factor `M` into `T`.
pub type ElemMap<'a, M, T> = &'a dyn Fn(&<M as SeriesMonoid>::Elem) -> <T as SeriesMonoid>::Elem;

/// The biproduct of finitely many factors, the remaining factors of the
/// countable product being the trivial series monoid `{0}`.
#[derive(Clone, Debug)]
pub struct Biproduct<M> {
    name: String,
    factors: Vec<M>,
}

impl<M: SeriesMonoid + Clone + Send + Sync + 'static> Biproduct<M> {
    pub fn new(factors: Vec<M>) -> Self {
        let names: Vec<&str> = factors.iter().map(|f| f.name()).collect();
        let name = format!("({})", names.join("×"));
        Biproduct { name, factors }
    }

    pub fn factors(&self) -> &[M] {
        &self.factors
    }

    /// `in_k`: `a` in slot `k`, zero elsewhere.
    pub fn inject(&self, k: usize, a: M::Elem) -> Vec<M::Elem> {
        self.factors
            .iter()
            .enumerate()
            .map(|(h, f)| if h == k { a.clone() } else { f.zero() })
            .collect()
    }

    /// `pr_k`.
    pub fn project(&self, k: usize, x: &[M::Elem]) -> M::Elem {
        x[k].clone()
    }

    /// `sum_k in_k(pr_k(x))`.
    pub fn reassemble(&self, x: &[M::Elem]) -> Vec<M::Elem> {
        let parts: Vec<Vec<M::Elem>> =
            (0..self.factors.len()).map(|k| self.inject(k, self.project(k, x))).collect();
        self.sum(&self.family(parts))
    }

    /// The copairing `[f_k]`: the unique morphism with `[f_k] ∘ in_k = f_k`,
    /// namely `x ↦ sum_k f_k(pr_k x)`.
    pub fn copair<T: SeriesMonoid>(&self, target: &T, maps: &[ElemMap<'_, M, T>], x: &[M::Elem]) -> T::Elem {
        let images = maps.iter().zip(x).map(|(f, xk)| f(xk)).collect();
        target.sum(&target.family(images))
    }
}

impl<M: SeriesMonoid> SeriesMonoid for Biproduct<M>
where
    M: Clone + Send + Sync + 'static,
{
    type Elem = Vec<M::Elem>;

    fn name(&self) -> &str {
        &self.name
    }

    fn zero(&self) -> Vec<M::Elem> {
        self.factors.iter().map(M::zero).collect()
    }

    fn is_zero(&self, a: &Vec<M::Elem>) -> bool {
        self.factors.iter().zip(a).all(|(f, x)| f.is_zero(x))
    }

    fn sum_within(&self, fam: &Family<Vec<M::Elem>>, budget: usize) -> Summed<Vec<M::Elem>> {
        let mut complete = true;
        let value = self
            .factors
            .iter()
            .enumerate()
            .map(|(k, f)| {
                let g = f.clone();
                let column = fam.map(f.zero(), move |x: &Vec<M::Elem>| x[k].clone(), move |x| g.is_zero(x));
                let s = f.sum_within(&column, budget);
                complete &= s.complete;
                s.value
            })
            .collect();
        Summed { value, complete }
    }

    fn eq_at(&self, a: &Vec<M::Elem>, b: &Vec<M::Elem>, level: ApproxLevel) -> Verdict {
        let verdicts: Vec<Verdict> =
            self.factors.iter().zip(a.iter().zip(b)).map(|(f, (x, y))| f.eq_at(x, y, level)).collect();
        if verdicts.contains(&Verdict::Unequal) {
            Verdict::Unequal
        } else if verdicts.iter().all(|v| *v == Verdict::Equal) {
            Verdict::Equal
        } else {
            Verdict::Unknown
        }
    }

    fn decide_eq(&self, a: &Vec<M::Elem>, b: &Vec<M::Elem>) -> Option<bool> {
        let mut all = true;
        for (f, (x, y)) in self.factors.iter().zip(a.iter().zip(b)) {
            all &= f.decide_eq(x, y)?;
        }
        Some(all)
    }

    fn subtract(&self, b: &Vec<M::Elem>, a: &Vec<M::Elem>) -> Option<Option<Vec<M::Elem>>> {
        let mut out = Vec::with_capacity(a.len());
        for (f, (y, x)) in self.factors.iter().zip(b.iter().zip(a)) {
            match f.subtract(y, x)? {
                Some(u) => out.push(u),
                None => return Some(None),
            }
        }
        Some(Some(out))
    }
}
