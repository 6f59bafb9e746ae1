//! Words over an alphabet, their evaluation homomorphisms, and the subset
//! expansion of `Π (1 + b(i))` in a commutative semiring.
//!
//! Words form the free monoid: concatenation is associative with the empty
//! word as identity, and nothing commutes except by accident. Any assignment
//! of letters to monoid elements extends uniquely to a homomorphism on
//! words, computed by [`eval_word`] as a left fold.

use core::fmt::Debug;
use core::marker::PhantomData;

use alloc::vec::Vec;

use num_traits::{One, Zero};
use thiserror::Error;

use crate::fold::{fprod, FiniteIndexSet, FnFamily, FoldError, IndexedFamily};
use crate::monoid::{LawViolation, Monoid};

/// A finite word: a sequence of letters, possibly empty.
pub type Word<A> = Vec<A>;

/// Concatenation `u · v`.
pub fn word_concat<A: Clone>(u: &[A], v: &[A]) -> Word<A> {
    let mut out = Vec::with_capacity(u.len() + v.len());
    out.extend_from_slice(u);
    out.extend_from_slice(v);
    out
}

/// The free monoid on alphabet `A`: words under concatenation, with the
/// empty word as identity. Deliberately flagged non-commutative, so
/// set-indexed products over it are refused.
pub struct WordMonoid<A>(PhantomData<A>);

impl<A> WordMonoid<A> {
    pub fn new() -> Self {
        Self(PhantomData)
    }
}

impl<A> Default for WordMonoid<A> {
    fn default() -> Self {
        Self::new()
    }
}

impl<A: Clone + PartialEq + Debug> Monoid for WordMonoid<A> {
    type Elem = Word<A>;

    fn op(&self, a: &Word<A>, b: &Word<A>) -> Word<A> {
        word_concat(a, b)
    }

    fn identity(&self) -> Word<A> {
        Vec::new()
    }

    fn is_commutative(&self) -> bool {
        false
    }
}

/// Evaluates a word in `monoid` under the letter assignment `assign`: the
/// unique homomorphism from words to `monoid` extending `assign`. The empty
/// word evaluates to the identity.
pub fn eval_word<A, M, L>(word: &[A], monoid: &M, assign: L) -> M::Elem
where
    M: Monoid,
    L: Fn(&A) -> M::Elem,
{
    let mut acc = monoid.identity();
    for letter in word {
        acc = monoid.op(&acc, &assign(letter));
    }
    acc
}

/// A commutative semiring, passed around as a runtime instance in the same
/// style as [`Monoid`]. Both operations are expected commutative; addition
/// has neutral element `zero`, multiplication has `one`, multiplication
/// distributes over addition, and `zero` annihilates. [`check_semiring_laws`]
/// probes all of this on samples.
pub trait Semiring {
    type Elem: Clone + PartialEq + Debug;

    fn zero(&self) -> Self::Elem;
    fn one(&self) -> Self::Elem;
    fn add(&self, a: &Self::Elem, b: &Self::Elem) -> Self::Elem;
    fn mul(&self, a: &Self::Elem, b: &Self::Elem) -> Self::Elem;

    /// Equality as the semiring sees it; override for approximate carriers.
    fn elem_eq(&self, a: &Self::Elem, b: &Self::Elem) -> bool {
        a == b
    }
}

/// The additive monoid `(S, +, 0)` of a semiring.
pub struct AdditiveView<'a, S>(pub &'a S);

impl<S: Semiring> Monoid for AdditiveView<'_, S> {
    type Elem = S::Elem;

    fn op(&self, a: &S::Elem, b: &S::Elem) -> S::Elem {
        self.0.add(a, b)
    }

    fn identity(&self) -> S::Elem {
        self.0.zero()
    }

    fn is_commutative(&self) -> bool {
        true
    }

    fn elem_eq(&self, a: &S::Elem, b: &S::Elem) -> bool {
        self.0.elem_eq(a, b)
    }
}

/// The multiplicative monoid `(S, ·, 1)` of a semiring.
pub struct MultiplicativeView<'a, S>(pub &'a S);

impl<S: Semiring> Monoid for MultiplicativeView<'_, S> {
    type Elem = S::Elem;

    fn op(&self, a: &S::Elem, b: &S::Elem) -> S::Elem {
        self.0.mul(a, b)
    }

    fn identity(&self) -> S::Elem {
        self.0.one()
    }

    fn is_commutative(&self) -> bool {
        true
    }

    fn elem_eq(&self, a: &S::Elem, b: &S::Elem) -> bool {
        self.0.elem_eq(a, b)
    }
}

/// The semiring structure any numeric type carries through its `Zero`/`One`
/// instances: `NumSemiring::<i64>`, `NumSemiring::<BigRational>`, etc.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct NumSemiring<T>(PhantomData<T>);

impl<T> NumSemiring<T> {
    pub fn new() -> Self {
        Self(PhantomData)
    }
}

impl<T> Default for NumSemiring<T> {
    fn default() -> Self {
        Self::new()
    }
}

impl<T> Semiring for NumSemiring<T>
where
    T: Zero + One + Clone + PartialEq + Debug,
{
    type Elem = T;

    fn zero(&self) -> T {
        T::zero()
    }

    fn one(&self) -> T {
        T::one()
    }

    fn add(&self, a: &T, b: &T) -> T {
        a.clone() + b.clone()
    }

    fn mul(&self, a: &T, b: &T) -> T {
        a.clone() * b.clone()
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum SemiringViolation<E: Debug> {
    #[error("additive structure: {0}")]
    Additive(LawViolation<E>),
    #[error("multiplicative structure: {0}")]
    Multiplicative(LawViolation<E>),
    #[error("{a:?} * ({b:?} + {c:?}) != {a:?} * {b:?} + {a:?} * {c:?}")]
    NotDistributive { a: E, b: E, c: E },
    #[error("0 * {a:?} != 0")]
    ZeroNotAnnihilating { a: E },
}

/// Checks the commutative-semiring laws on every pair and triple drawn from
/// `samples`: both monoid structures (including commutativity), left
/// distributivity, and annihilation by zero. Right-handed variants follow
/// from commutativity and are not rechecked.
pub fn check_semiring_laws<S: Semiring>(
    semiring: &S,
    samples: &[S::Elem],
) -> Result<(), SemiringViolation<S::Elem>> {
    crate::monoid::check_laws(&AdditiveView(semiring), samples)
        .map_err(SemiringViolation::Additive)?;
    crate::monoid::check_laws(&MultiplicativeView(semiring), samples)
        .map_err(SemiringViolation::Multiplicative)?;
    for a in samples {
        let product = semiring.mul(&semiring.zero(), a);
        if !semiring.elem_eq(&product, &semiring.zero()) {
            return Err(SemiringViolation::ZeroNotAnnihilating { a: a.clone() });
        }
        for b in samples {
            for c in samples {
                let folded = semiring.mul(a, &semiring.add(b, c));
                let spread = semiring.add(&semiring.mul(a, b), &semiring.mul(a, c));
                if !semiring.elem_eq(&folded, &spread) {
                    return Err(SemiringViolation::NotDistributive {
                        a: a.clone(),
                        b: b.clone(),
                        c: c.clone(),
                    });
                }
            }
        }
    }
    Ok(())
}

/// Default ceiling on the index-set size accepted by [`poly_expand`]: the
/// expansion walks all `2^|P|` subsets, so the set size is capped rather
/// than the running time.
pub const DEFAULT_EXPAND_BOUND: usize = 20;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum ExpandError<I: Debug> {
    /// The subset walk would visit `2^len` subsets; refuse past the bound.
    #[error("expansion over {len} indices exceeds the bound of {bound}")]
    SetTooLarge { len: usize, bound: usize },
    #[error(transparent)]
    Fold(#[from] FoldError<I>),
}

/// The fully expanded form of `Π_{i∈P} (1 + b(i))`: the sum over all
/// subsets `Q ⊆ P` of `Π_{i∈Q} b(i)`, with the empty subset contributing
/// `1`. Equal to [`product_one_plus`] in every commutative semiring.
///
/// Sets larger than [`DEFAULT_EXPAND_BOUND`] are refused; use
/// [`poly_expand_with_bound`] to choose a different ceiling.
pub fn poly_expand<I, S, F>(
    family: &F,
    set: &FiniteIndexSet<I>,
    semiring: &S,
) -> Result<S::Elem, ExpandError<I>>
where
    I: Ord + Clone + Debug,
    S: Semiring,
    F: IndexedFamily<I, Elem = S::Elem>,
{
    poly_expand_with_bound(family, set, semiring, DEFAULT_EXPAND_BOUND)
}

/// [`poly_expand`] with an explicit ceiling on `|P|`.
pub fn poly_expand_with_bound<I, S, F>(
    family: &F,
    set: &FiniteIndexSet<I>,
    semiring: &S,
    bound: usize,
) -> Result<S::Elem, ExpandError<I>>
where
    I: Ord + Clone + Debug,
    S: Semiring,
    F: IndexedFamily<I, Elem = S::Elem>,
{
    let indices: Vec<&I> = set.iter().collect();
    let n = indices.len();
    if n > bound {
        return Err(ExpandError::SetTooLarge { len: n, bound });
    }
    let mut factors = Vec::with_capacity(n);
    for index in &indices {
        let value = family
            .get(index)
            .ok_or_else(|| FoldError::IndexOutsideFamily((*index).clone()))?;
        factors.push(value);
    }
    // Subset products share structure: each nonempty mask extends the mask
    // with its lowest bit cleared by a single factor.
    let mut subset_products = Vec::with_capacity(1usize << n);
    subset_products.push(semiring.one());
    for mask in 1..(1usize << n) {
        let low = mask.trailing_zeros() as usize;
        let rest = &subset_products[mask & (mask - 1)];
        subset_products.push(semiring.mul(rest, &factors[low]));
    }
    let mut total = semiring.zero();
    for term in &subset_products {
        total = semiring.add(&total, term);
    }
    Ok(total)
}

/// The left-hand side of the expansion identity, computed directly:
/// `Π_{i∈P} (1 + b(i))` as a set-indexed product in the multiplicative
/// monoid of `semiring`.
pub fn product_one_plus<I, S, F>(
    family: &F,
    set: &FiniteIndexSet<I>,
    semiring: &S,
) -> Result<S::Elem, FoldError<I>>
where
    I: Ord + Clone + Debug,
    S: Semiring,
    F: IndexedFamily<I, Elem = S::Elem>,
{
    let shifted = FnFamily(|i: &I| family.get(i).map(|b| semiring.add(&semiring.one(), &b)));
    fprod(&shifted, set, &MultiplicativeView(semiring))
}
