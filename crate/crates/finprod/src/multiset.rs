//! Finite multisets — the free commutative monoid — and their evaluation
//! in an arbitrary commutative monoid.
//!
//! A multiset over `I` is a finitely supported count function `I → ℕ`.
//! Under pointwise addition the empty multiset is the identity, each `δ_i`
//! counts one copy of `i`, and every multiset is a sum of deltas. An
//! assignment `a : I → M` into a commutative monoid therefore extends to a
//! unique homomorphism `Φ_a` with `Φ_a(δ_i) = a(i)`; [`eval_multiset`]
//! computes it as `Π_i a(i)^{m(i)}`.

use core::fmt::Debug;
use core::marker::PhantomData;
use core::ops::Add;

use alloc::collections::BTreeMap;
use alloc::vec::Vec;

use num_bigint::BigUint;
use num_traits::Zero;

use crate::fold::{fprod, FiniteIndexSet, FnFamily, FoldError, IndexedFamily};
use crate::monoid::Monoid;

/// A finite multiset: finitely many elements of `I`, each with an
/// arbitrary-precision count. Zero counts are never stored, so derived
/// equality is equality of count functions.
#[derive(Debug, Clone, PartialEq, Eq, Default)]
pub struct Multiset<I: Ord> {
    counts: BTreeMap<I, BigUint>,
}

impl<I: Ord + Clone> Multiset<I> {
    /// The empty multiset, neutral for multiset sum.
    pub fn empty() -> Self {
        Self { counts: BTreeMap::new() }
    }

    /// The singleton multiset `δ_element` with one copy of `element`.
    pub fn delta(element: I) -> Self {
        let mut counts = BTreeMap::new();
        counts.insert(element, BigUint::from(1u8));
        Self { counts }
    }

    /// Builds a multiset from `(element, count)` pairs. Zero counts are
    /// dropped; repeated elements accumulate.
    pub fn from_counts<C, T>(pairs: T) -> Self
    where
        C: Into<BigUint>,
        T: IntoIterator<Item = (I, C)>,
    {
        let mut out = Self::empty();
        for (element, count) in pairs {
            out.add_copies(element, count.into());
        }
        out
    }

    /// The count of `element`, zero when absent.
    pub fn count(&self, element: &I) -> BigUint {
        self.counts.get(element).cloned().unwrap_or_else(BigUint::zero)
    }

    /// Adds one copy of `element`.
    pub fn insert(&mut self, element: I) {
        self.add_copies(element, BigUint::from(1u8));
    }

    /// Adds `count` copies of `element`; adding zero copies is a no-op.
    pub fn add_copies(&mut self, element: I, count: BigUint) {
        if count.is_zero() {
            return;
        }
        *self.counts.entry(element).or_insert_with(BigUint::zero) += count;
    }

    /// The elements present with nonzero count, with their counts, in
    /// ascending element order.
    pub fn iter(&self) -> impl Iterator<Item = (&I, &BigUint)> {
        self.counts.iter()
    }

    /// The support as a finite index set.
    pub fn support(&self) -> FiniteIndexSet<I> {
        self.counts.keys().cloned().collect()
    }

    /// Number of distinct elements (not total copies).
    pub fn support_len(&self) -> usize {
        self.counts.len()
    }

    /// Total number of copies across all elements.
    pub fn total_count(&self) -> BigUint {
        self.counts.values().fold(BigUint::zero(), |acc, c| acc + c)
    }

    pub fn is_empty(&self) -> bool {
        self.counts.is_empty()
    }

    /// The deltas this multiset is a sum of, one per copy, in ascending
    /// element order. Intended for small multisets; the length is the total
    /// count, which must fit in `usize`.
    pub fn delta_decomposition(&self) -> Vec<Self> {
        let mut deltas = Vec::new();
        for (element, count) in &self.counts {
            let copies = usize::try_from(count.clone()).expect("count exceeds usize");
            for _ in 0..copies {
                deltas.push(Self::delta(element.clone()));
            }
        }
        deltas
    }
}

impl<I: Ord + Clone> Add for Multiset<I> {
    type Output = Self;

    fn add(mut self, other: Self) -> Self {
        for (element, count) in other.counts {
            self.add_copies(element, count);
        }
        self
    }
}

impl<I: Ord + Clone> Add<&Multiset<I>> for Multiset<I> {
    type Output = Self;

    fn add(mut self, other: &Self) -> Self {
        for (element, count) in &other.counts {
            self.add_copies(element.clone(), count.clone());
        }
        self
    }
}

impl<I: Ord + Clone> FromIterator<I> for Multiset<I> {
    fn from_iter<T: IntoIterator<Item = I>>(elements: T) -> Self {
        let mut out = Self::empty();
        for element in elements {
            out.insert(element);
        }
        out
    }
}

/// Multisets over `I` under multiset sum: the free commutative monoid.
pub struct MultisetMonoid<I>(PhantomData<I>);

impl<I> MultisetMonoid<I> {
    pub fn new() -> Self {
        Self(PhantomData)
    }
}

impl<I> Default for MultisetMonoid<I> {
    fn default() -> Self {
        Self::new()
    }
}

impl<I: Ord + Clone + Debug> Monoid for MultisetMonoid<I> {
    type Elem = Multiset<I>;

    fn op(&self, a: &Multiset<I>, b: &Multiset<I>) -> Multiset<I> {
        a.clone() + b
    }

    fn identity(&self) -> Multiset<I> {
        Multiset::empty()
    }

    fn is_commutative(&self) -> bool {
        true
    }
}

/// `base` multiplied by itself `exp` times, one step per copy: the direct
/// reading of monoid exponentiation, linear in `exp`. `exp = 0` yields the
/// identity. Serves as the oracle for [`mpower_binary`].
pub fn mpower<M: Monoid>(monoid: &M, base: &M::Elem, exp: &BigUint) -> M::Elem {
    let mut acc = monoid.identity();
    let mut remaining = exp.clone();
    while !remaining.is_zero() {
        acc = monoid.op(&acc, base);
        remaining -= 1u8;
    }
    acc
}

/// Monoid exponentiation by squaring, logarithmic in `exp`. Agrees with
/// [`mpower`] everywhere (associativity is the only law used).
pub fn mpower_binary<M: Monoid>(monoid: &M, base: &M::Elem, exp: &BigUint) -> M::Elem {
    let mut acc = monoid.identity();
    for pos in (0..exp.bits()).rev() {
        acc = monoid.op(&acc, &acc);
        if exp.bit(pos) {
            acc = monoid.op(&acc, base);
        }
    }
    acc
}

/// Evaluates a multiset in a commutative monoid under the assignment
/// `family`: `Φ_a(m) = Π_{i ∈ supp m} a(i)^{m(i)}`, the unique homomorphism
/// from multisets to the monoid with `Φ_a(δ_i) = a(i)`. The empty multiset
/// evaluates to the identity.
pub fn eval_multiset<I, M, F>(
    family: &F,
    multiset: &Multiset<I>,
    monoid: &M,
) -> Result<M::Elem, FoldError<I>>
where
    I: Ord + Clone + Debug,
    M: Monoid,
    F: IndexedFamily<I, Elem = M::Elem>,
{
    let powered = FnFamily(|i: &I| {
        family
            .get(i)
            .map(|base| mpower_binary(monoid, &base, &multiset.count(i)))
    });
    fprod(&powered, &multiset.support(), monoid)
}
