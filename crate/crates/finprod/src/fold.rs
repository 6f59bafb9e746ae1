//! Products and sums of indexed families over finite index sets.
//!
//! An ordered fold along an explicit [`Enumeration`] is defined for any
//! monoid. The set-indexed product [`fprod`] exists only for commutative
//! instances — there it is independent of the enumeration, equal to the
//! identity on the empty set, and uniquely determined by the insertion rule
//! `FProd(P ∪ {x}) = FProd(P) · a(x)`. [`fprod_recursive_oracle`] evaluates
//! that recursion directly and serves as a differential-testing oracle for
//! [`fprod`].

use core::fmt::Debug;

use alloc::collections::{BTreeMap, BTreeSet};
use alloc::vec::Vec;

use num_traits::Zero;
use thiserror::Error;

use crate::monoid::{AddMonoid, Monoid, MonoidHom};

/// A finite set of indices. Iteration order is ascending under `Ord`, which
/// is the internal enumeration order used by every set-indexed fold.
pub type FiniteIndexSet<I> = BTreeSet<I>;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum FoldError<I: Debug> {
    /// A family lookup was attempted outside the family's universe.
    #[error("index {0:?} is outside the family universe")]
    IndexOutsideFamily(I),
    /// A set-indexed product was requested for a monoid whose commutativity
    /// flag is off; the result would depend on the enumeration.
    #[error("set-indexed products require a commutative monoid")]
    CommutativityRequired,
    /// An enumeration listed the same index twice.
    #[error("index {0:?} appears more than once in the enumeration")]
    RepeatedIndex(I),
    /// The two routes of a homomorphism pushforward disagreed, i.e. the map
    /// is not a homomorphism on the elements it touched.
    #[error("homomorphism does not commute with the product over this set")]
    HomMismatch,
}

/// An indexed family `a : I → A`, total on its own universe of indices and
/// exposed here as a partial lookup: `get` returns `None` outside the
/// universe, which the folds surface as [`FoldError::IndexOutsideFamily`].
pub trait IndexedFamily<I> {
    type Elem;

    fn get(&self, index: &I) -> Option<Self::Elem>;
}

impl<I, T: IndexedFamily<I> + ?Sized> IndexedFamily<I> for &T {
    type Elem = T::Elem;

    fn get(&self, index: &I) -> Option<Self::Elem> {
        (**self).get(index)
    }
}

impl<I: Ord, A: Clone> IndexedFamily<I> for BTreeMap<I, A> {
    type Elem = A;

    fn get(&self, index: &I) -> Option<A> {
        BTreeMap::get(self, index).cloned()
    }
}

/// A family backed by a lookup closure, e.g.
/// `FnFamily(|i: &i64| Some(i + 1))`.
pub struct FnFamily<F>(pub F);

impl<I, A, F> IndexedFamily<I> for FnFamily<F>
where
    F: Fn(&I) -> Option<A>,
{
    type Elem = A;

    fn get(&self, index: &I) -> Option<A> {
        (self.0)(index)
    }
}

/// An enumeration of a finite index set: a duplicate-free sequence of
/// indices. Ordered folds consume it left to right; as a set it determines
/// which [`FiniteIndexSet`] it enumerates.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Enumeration<I>(Vec<I>);

impl<I: Ord + Clone + Debug> Enumeration<I> {
    /// Rejects sequences that repeat an index.
    pub fn new(order: Vec<I>) -> Result<Self, FoldError<I>> {
        let mut seen = BTreeSet::new();
        for index in &order {
            if !seen.insert(index.clone()) {
                return Err(FoldError::RepeatedIndex(index.clone()));
            }
        }
        Ok(Self(order))
    }

    /// The ascending enumeration of `set`.
    pub fn ascending(set: &FiniteIndexSet<I>) -> Self {
        Self(set.iter().cloned().collect())
    }

    /// True iff this sequence is a bijective ordering of `set`.
    pub fn enumerates(&self, set: &FiniteIndexSet<I>) -> bool {
        self.0.len() == set.len() && self.0.iter().all(|i| set.contains(i))
    }

    pub fn as_slice(&self) -> &[I] {
        &self.0
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn into_inner(self) -> Vec<I> {
        self.0
    }
}

/// Folds the factors of `family` along `order`, left to right:
/// `a(e₁) · a(e₂) · ⋯ · a(eₙ)`, the identity when `order` is empty.
///
/// Defined for any monoid; for non-commutative instances the result
/// genuinely depends on `order`.
pub fn mfold_enumerated<I, M, F>(
    family: &F,
    order: &Enumeration<I>,
    monoid: &M,
) -> Result<M::Elem, FoldError<I>>
where
    I: Ord + Clone + Debug,
    M: Monoid,
    F: IndexedFamily<I, Elem = M::Elem>,
{
    let mut acc = monoid.identity();
    for index in order.as_slice() {
        let factor = family
            .get(index)
            .ok_or_else(|| FoldError::IndexOutsideFamily(index.clone()))?;
        acc = monoid.op(&acc, &factor);
    }
    Ok(acc)
}

/// The product of `family` over the finite set `set` in a commutative
/// monoid. Internally folds in ascending index order, but the value does
/// not depend on that choice; the empty set yields the identity.
///
/// Non-commutative instances are rejected with
/// [`FoldError::CommutativityRequired`] — ordered products go through
/// [`mfold_enumerated`] instead.
pub fn fprod<I, M, F>(
    family: &F,
    set: &FiniteIndexSet<I>,
    monoid: &M,
) -> Result<M::Elem, FoldError<I>>
where
    I: Ord + Clone + Debug,
    M: Monoid,
    F: IndexedFamily<I, Elem = M::Elem>,
{
    if !monoid.is_commutative() {
        return Err(FoldError::CommutativityRequired);
    }
    mfold_enumerated(family, &Enumeration::ascending(set), monoid)
}

/// Evaluates the recursion that uniquely characterizes the set-indexed
/// product — empty set to identity, then `f(Q ∪ {x}) = f(Q) · a(x)` —
/// removing the greatest index at each step. Must agree with [`fprod`] on
/// every input; the test suites use it as a differential oracle.
pub fn fprod_recursive_oracle<I, M, F>(
    family: &F,
    set: &FiniteIndexSet<I>,
    monoid: &M,
) -> Result<M::Elem, FoldError<I>>
where
    I: Ord + Clone + Debug,
    M: Monoid,
    F: IndexedFamily<I, Elem = M::Elem>,
{
    fprod_recursive_oracle_with(family, set, monoid, |remaining| {
        remaining.last().cloned().expect("nonempty by construction")
    })
}

/// [`fprod_recursive_oracle`] with a caller-chosen removal order: `choose`
/// picks which element of the (nonempty) remainder to strip next. The
/// result is the same for every choice path.
///
/// `choose` must return a member of its argument; the recursion panics
/// otherwise.
pub fn fprod_recursive_oracle_with<I, M, F, C>(
    family: &F,
    set: &FiniteIndexSet<I>,
    monoid: &M,
    mut choose: C,
) -> Result<M::Elem, FoldError<I>>
where
    I: Ord + Clone + Debug,
    M: Monoid,
    F: IndexedFamily<I, Elem = M::Elem>,
    C: FnMut(&FiniteIndexSet<I>) -> I,
{
    if !monoid.is_commutative() {
        return Err(FoldError::CommutativityRequired);
    }
    recurse(family, &mut set.clone(), monoid, &mut choose)
}

fn recurse<I, M, F, C>(
    family: &F,
    remaining: &mut FiniteIndexSet<I>,
    monoid: &M,
    choose: &mut C,
) -> Result<M::Elem, FoldError<I>>
where
    I: Ord + Clone + Debug,
    M: Monoid,
    F: IndexedFamily<I, Elem = M::Elem>,
    C: FnMut(&FiniteIndexSet<I>) -> I,
{
    if remaining.is_empty() {
        return Ok(monoid.identity());
    }
    let stripped = choose(remaining);
    assert!(
        remaining.remove(&stripped),
        "removal choice must come from the remaining set"
    );
    let rest = recurse(family, remaining, monoid, choose)?;
    let factor = family
        .get(&stripped)
        .ok_or_else(|| FoldError::IndexOutsideFamily(stripped.clone()))?;
    Ok(monoid.op(&rest, &factor))
}

/// The sum of `family` over `set`: [`fprod`] instantiated at the additive
/// monoid `(T, +, 0)`. The empty set yields zero.
pub fn fsum<I, T, F>(family: &F, set: &FiniteIndexSet<I>) -> Result<T, FoldError<I>>
where
    I: Ord + Clone + Debug,
    T: Zero + Clone + PartialEq + Debug,
    F: IndexedFamily<I, Elem = T>,
{
    fprod(family, set, &AddMonoid::new())
}

/// Pushes a product through a homomorphism: returns `FProd(h ∘ a, set)` in
/// the target, after checking it against `h(FProd(a, set))`. A mismatch —
/// possible only when `h` fails the homomorphism laws on the touched
/// elements — reports [`FoldError::HomMismatch`].
pub fn hom_pushforward<I, S, T, F, Fam>(
    hom: &MonoidHom<S, T, F>,
    family: &Fam,
    set: &FiniteIndexSet<I>,
) -> Result<T::Elem, FoldError<I>>
where
    I: Ord + Clone + Debug,
    S: Monoid,
    T: Monoid,
    F: Fn(&S::Elem) -> T::Elem,
    Fam: IndexedFamily<I, Elem = S::Elem>,
{
    let pushed = FnFamily(|i: &I| family.get(i).map(|x| hom.apply(&x)));
    let in_target = fprod(&pushed, set, &hom.target)?;
    let through_hom = hom.apply(&fprod(family, set, &hom.source)?);
    if !hom.target.elem_eq(&in_target, &through_hom) {
        return Err(FoldError::HomMismatch);
    }
    Ok(in_target)
}
