//! Executable versions of the series-monoid axioms and their consequences.
//!
//! Every check returns a [`CheckOutcome`]. An `Unknown` verdict from
//! [`SeriesMonoid::eq_at`] or a partial sum makes the check inconclusive; it
//! never counts as a pass.

use alloc::collections::BTreeMap;
use alloc::format;
use alloc::string::String;
use alloc::vec::Vec;

use super::{binary_add, leq_witness, ApproxLevel, Family, FamilyKind, LeqWitness, SeriesMonoid, Summed, Verdict};

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum CheckOutcome {
    Pass,
    Fail(String),
    /// Equality could not be settled at the requested level.
    Inconclusive(String),
    /// The test case violated a precondition of the law.
    Invalid(String),
}

impl CheckOutcome {
    pub fn from_verdict(v: Verdict, msg: impl FnOnce() -> String) -> Self {
        match v {
            Verdict::Equal => CheckOutcome::Pass,
            Verdict::Unequal => CheckOutcome::Fail(msg()),
            Verdict::Unknown => CheckOutcome::Inconclusive(msg()),
        }
    }

    fn rank(&self) -> u8 {
        match self {
            CheckOutcome::Pass => 0,
            CheckOutcome::Inconclusive(_) => 1,
            CheckOutcome::Invalid(_) => 2,
            CheckOutcome::Fail(_) => 3,
        }
    }

    /// The more severe of two outcomes; the earlier one on ties.
    pub fn and(self, other: CheckOutcome) -> CheckOutcome {
        if other.rank() > self.rank() {
            other
        } else {
            self
        }
    }

    pub fn is_pass(&self) -> bool {
        *self == CheckOutcome::Pass
    }
}

fn compare<M: SeriesMonoid + ?Sized>(
    inst: &M,
    lhs: &Summed<M::Elem>,
    rhs: &Summed<M::Elem>,
    level: ApproxLevel,
    what: &str,
) -> CheckOutcome {
    if !(lhs.complete && rhs.complete) {
        return CheckOutcome::Inconclusive(format!("{what}: partial sum"));
    }
    CheckOutcome::from_verdict(inst.eq_at(&lhs.value, &rhs.value, level), || {
        format!("{what}: {:?} vs {:?}", lhs.value, rhs.value)
    })
}

fn summed<M: SeriesMonoid + ?Sized>(inst: &M, fam: &Family<M::Elem>) -> Summed<M::Elem> {
    inst.sum_within(fam, super::DEFAULT_BUDGET)
}

/// The zero condition at column `n`: the sum of `delta_n(a)` is `a`, and
/// summing the columns of the matrix holding `a` only at `(n, n)` gives `a`
/// at `n` and zero in every other inspected column.
pub fn check_zero_diagonal<M: SeriesMonoid + ?Sized>(
    inst: &M,
    a: &M::Elem,
    n: usize,
    level: ApproxLevel,
) -> CheckOutcome {
    let column = inst.single(n, a.clone());
    let mut out = compare(inst, &summed(inst, &column), &Summed::exact(a.clone()), level, "sum of delta_n(a)");
    for j in 0..=n + 2 {
        let col = if j == n { inst.single(n, a.clone()) } else { inst.family(Vec::new()) };
        let expect = if j == n { a.clone() } else { inst.zero() };
        out = out.and(compare(inst, &summed(inst, &col), &Summed::exact(expect), level, "off-diagonal column"));
    }
    out
}

/// Row sums of a matrix given as a family of rows.
fn row_sums<M: SeriesMonoid + ?Sized>(inst: &M, rows: &Family<Family<M::Elem>>) -> Option<Family<M::Elem>> {
    match rows.kind() {
        FamilyKind::Finite(entries) => {
            let mut sums = Vec::with_capacity(entries.len());
            for (i, row) in entries {
                let s = summed(inst, row);
                if !s.complete {
                    return None;
                }
                sums.push((*i, s.value));
            }
            Family::from_entries(inst.zero(), sums, |x| inst.is_zero(x)).ok()
        }
        _ => None,
    }
}

/// The transpose of a finite matrix.
fn transpose<M: SeriesMonoid + ?Sized>(inst: &M, rows: &Family<Family<M::Elem>>) -> Option<Family<Family<M::Elem>>> {
    let FamilyKind::Finite(entries) = rows.kind() else { return None };
    let mut cols: BTreeMap<usize, Vec<(usize, M::Elem)>> = BTreeMap::new();
    for (m, row) in entries {
        let FamilyKind::Finite(cells) = row.kind() else { return None };
        for (n, v) in cells {
            cols.entry(*n).or_default().push((*m, v.clone()));
        }
    }
    let zero_row = Family::zeros(inst.zero());
    let cols = cols
        .into_iter()
        .map(|(n, cells)| Family::from_entries(inst.zero(), cells, |x| inst.is_zero(x)).map(|c| (n, c)))
        .collect::<Result<Vec<_>, _>>()
        .ok()?;
    Family::from_entries(zero_row, cols, |f: &Family<M::Elem>| f.is_finite() && f.support_bound() == Some(0)).ok()
}

/// `sum_m sum_n a_mn = sum_n sum_m a_mn` on a finite matrix.
pub fn check_sum_swap<M: SeriesMonoid + ?Sized>(
    inst: &M,
    matrix: &Family<Family<M::Elem>>,
    level: ApproxLevel,
) -> CheckOutcome {
    let (Some(rows), Some(cols)) = (row_sums(inst, matrix), transpose(inst, matrix).and_then(|t| row_sums(inst, &t)))
    else {
        return CheckOutcome::Invalid("sum-swap needs a finite matrix with complete row sums".into());
    };
    compare(inst, &summed(inst, &rows), &summed(inst, &cols), level, "row-major vs column-major")
}

/// An injection `N -> N` given by a table on `0..table.len()` and a rule
/// for the remaining arguments.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Reindex {
    pub table: Vec<usize>,
    pub rest: OffTable,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum OffTable {
    /// `xi(n) = n + shift` for `n >= table.len()`.
    Shift(usize),
    /// Only the tabulated arguments are in the domain.
    Undefined,
}

impl Reindex {
    pub fn identity() -> Self {
        Reindex { table: Vec::new(), rest: OffTable::Shift(0) }
    }

    pub fn from_table(table: Vec<usize>) -> Self {
        Reindex { table, rest: OffTable::Undefined }
    }

    pub fn apply(&self, n: usize) -> Option<usize> {
        match self.table.get(n) {
            Some(v) => Some(*v),
            None => match self.rest {
                OffTable::Shift(s) => Some(n + s),
                OffTable::Undefined => None,
            },
        }
    }

    /// `xi^{-1}(i)`, if `i` is in the image.
    pub fn preimage(&self, i: usize) -> Option<usize> {
        if let Some(n) = self.table.iter().position(|&v| v == i) {
            return Some(n);
        }
        match self.rest {
            OffTable::Shift(s) if i >= self.table.len() + s => Some(i - s),
            _ => None,
        }
    }

    pub fn is_injective(&self) -> bool {
        let mut seen = self.table.clone();
        seen.sort_unstable();
        let distinct = seen.windows(2).all(|w| w[0] != w[1]);
        let clear_of_tail = match self.rest {
            OffTable::Shift(s) => self.table.iter().all(|&v| v < self.table.len() + s),
            OffTable::Undefined => true,
        };
        distinct && clear_of_tail
    }
}

/// `sum_n a_{xi(n)} = sum_n a_n` for an injective `xi` whose image covers the
/// support of the (finite-support) family.
pub fn check_injective_reindex<M: SeriesMonoid + ?Sized>(
    inst: &M,
    fam: &Family<M::Elem>,
    xi: &Reindex,
    level: ApproxLevel,
) -> CheckOutcome {
    if !xi.is_injective() {
        return CheckOutcome::Invalid("reindexing map is not injective".into());
    }
    let FamilyKind::Finite(entries) = fam.kind() else {
        return CheckOutcome::Invalid("reindexing check needs a finite-support family".into());
    };
    let mut moved = Vec::with_capacity(entries.len());
    for (i, v) in entries {
        match xi.preimage(*i) {
            Some(n) => moved.push((n, v.clone())),
            None => return CheckOutcome::Invalid(format!("family is non-zero at {i}, outside the image")),
        }
    }
    let Ok(reindexed) = Family::from_entries(inst.zero(), moved, |x| inst.is_zero(x)) else {
        return CheckOutcome::Invalid("reindexing collapsed two indices".into());
    };
    compare(inst, &summed(inst, &reindexed), &summed(inst, fam), level, "reindexed sum")
}

/// Cantor pairing `N × N -> N`.
pub fn cantor_pair(m: usize, n: usize) -> usize {
    (m + n) * (m + n + 1) / 2 + n
}

/// Inverse of [`cantor_pair`].
pub fn cantor_unpair(z: usize) -> (usize, usize) {
    let mut w = 0;
    while (w + 1) * (w + 2) / 2 <= z {
        w += 1;
    }
    let n = z - w * (w + 1) / 2;
    (w - n, n)
}

/// `sum_k a_{xi(k)}` equals the double sum, for `xi` the inverse of the
/// Cantor pairing and `a` a finite matrix given by its non-zero cells.
pub fn check_pair_reindex<M: SeriesMonoid + ?Sized>(
    inst: &M,
    cells: &[(usize, usize, M::Elem)],
    level: ApproxLevel,
) -> CheckOutcome {
    let mut rows: BTreeMap<usize, Vec<(usize, M::Elem)>> = BTreeMap::new();
    for (m, n, v) in cells {
        rows.entry(*m).or_default().push((*n, v.clone()));
    }
    let rows = rows
        .into_iter()
        .map(|(m, r)| Family::from_entries(inst.zero(), r, |x| inst.is_zero(x)).map(|f| (m, f)))
        .collect::<Result<Vec<_>, _>>();
    let flat = Family::from_entries(
        inst.zero(),
        cells.iter().map(|(m, n, v)| (cantor_pair(*m, *n), v.clone())),
        |x| inst.is_zero(x),
    );
    let (Ok(rows), Ok(flat)) = (rows, flat) else {
        return CheckOutcome::Invalid("matrix lists a cell twice".into());
    };
    let matrix = match Family::from_entries(Family::zeros(inst.zero()), rows, |_| false) {
        Ok(m) => m,
        Err(_) => return CheckOutcome::Invalid("matrix lists a row twice".into()),
    };
    let Some(row_major) = row_sums(inst, &matrix) else {
        return CheckOutcome::Inconclusive("partial row sum".into());
    };
    compare(inst, &summed(inst, &flat), &summed(inst, &row_major), level, "paired sum vs double sum")
}

/// `f(0) = 0` and `f(sum a) = sum f(a)` on each sample family.
pub fn check_morphism<S, T, F>(
    src: &S,
    dst: &T,
    f: F,
    samples: &[Family<S::Elem>],
    level: ApproxLevel,
) -> CheckOutcome
where
    S: SeriesMonoid + ?Sized,
    T: SeriesMonoid + Clone + Send + Sync + 'static,
    F: Fn(&S::Elem) -> T::Elem + Clone + Send + Sync + 'static,
{
    let mut out = CheckOutcome::from_verdict(dst.eq_at(&f(&src.zero()), &dst.zero(), level), || {
        "f(0) != 0".into()
    });
    if !out.is_pass() {
        return out;
    }
    for fam in samples {
        let lhs = summed(src, fam);
        if !lhs.complete {
            out = out.and(CheckOutcome::Inconclusive("partial source sum".into()));
            continue;
        }
        let d = dst.clone();
        let mapped = fam.map(dst.zero(), f.clone(), move |x| d.is_zero(x));
        out = out.and(compare(dst, &Summed::exact(f(&lhs.value)), &summed(dst, &mapped), level, "f(sum) vs sum(f)"));
    }
    out
}

/// Idempotence of the instance: a family whose non-zero entries all equal
/// `c` sums to `c`, and the derived preorder is antisymmetric on `(a, b)`.
pub fn check_idempotent_sup<M: SeriesMonoid + ?Sized>(
    inst: &M,
    c: &M::Elem,
    pattern: &[bool],
    a: &M::Elem,
    b: &M::Elem,
    level: ApproxLevel,
) -> CheckOutcome {
    let values = pattern.iter().map(|&on| if on { c.clone() } else { inst.zero() }).collect();
    let fam = inst.family(values);
    let expect = if pattern.contains(&true) { c.clone() } else { inst.zero() };
    let mut out = compare(inst, &summed(inst, &fam), &Summed::exact(expect), level, "constant-or-zero family");
    let ab = leq_witness(inst, a, b, 64, level);
    let ba = leq_witness(inst, b, a, 64, level);
    if let (LeqWitness::Found(_), LeqWitness::Found(_)) = (ab, ba) {
        out = out.and(CheckOutcome::from_verdict(inst.eq_at(a, b, level), || {
            format!("a <= b and b <= a but a != b: {a:?}, {b:?}")
        }));
    }
    out
}

/// Associativity, commutativity and unit of the derived binary addition.
pub fn check_binary_laws<M: SeriesMonoid + ?Sized>(
    inst: &M,
    a: &M::Elem,
    b: &M::Elem,
    c: &M::Elem,
    level: ApproxLevel,
) -> CheckOutcome {
    let add = |x: &M::Elem, y: &M::Elem| binary_add(inst, x, y);
    let eq = |x: &M::Elem, y: &M::Elem, what: &str| {
        CheckOutcome::from_verdict(inst.eq_at(x, y, level), || format!("{what} fails on {a:?}, {b:?}, {c:?}"))
    };
    eq(&add(&add(a, b), c), &add(a, &add(b, c)), "associativity")
        .and(eq(&add(a, b), &add(b, a), "commutativity"))
        .and(eq(&add(a, &inst.zero()), a, "right unit"))
        .and(eq(&add(&inst.zero(), a), a, "left unit"))
}

/// Two structures on one carrier with a shared zero, the second a morphism
/// for the first, must agree. The morphism condition is tested on the
/// diagonal matrix of `b`; if it fails the case is invalid.
pub fn check_eckmann_hilton<M, N>(first: &M, second: &N, b: &Family<M::Elem>, level: ApproxLevel) -> CheckOutcome
where
    M: SeriesMonoid + ?Sized,
    N: SeriesMonoid<Elem = M::Elem> + ?Sized,
{
    let FamilyKind::Finite(entries) = b.kind() else {
        return CheckOutcome::Invalid("Eckmann-Hilton check needs a finite-support family".into());
    };
    if !first.is_zero(&second.zero()) {
        return CheckOutcome::Invalid("structures do not share a zero".into());
    }
    // second applied to the first's sums of the rows of diag(b), and vice versa
    let rows_first: Vec<M::Elem> = entries.iter().map(|(m, v)| first.sum(&first.single(*m, v.clone()))).collect();
    let rows_second: Vec<M::Elem> = entries.iter().map(|(m, v)| second.sum(&second.single(*m, v.clone()))).collect();
    let place = |vals: Vec<M::Elem>| -> Family<M::Elem> {
        Family::from_entries(first.zero(), entries.iter().map(|(m, _)| *m).zip(vals), |x| first.is_zero(x))
            .expect("indices are distinct")
    };
    let lhs = second.sum_within(&place(rows_first), super::DEFAULT_BUDGET);
    let rhs = first.sum_within(&place(rows_second), super::DEFAULT_BUDGET);
    let morphism = compare(first, &lhs, &rhs, level, "morphism condition");
    if !morphism.is_pass() {
        return match morphism {
            CheckOutcome::Fail(msg) => CheckOutcome::Invalid(msg),
            other => other,
        };
    }
    let s1 = first.sum_within(b, super::DEFAULT_BUDGET);
    let s2 = second.sum_within(b, super::DEFAULT_BUDGET);
    compare(first, &s1, &s2, level, "the two sums")
}
