//! Finite products and sums over finite index sets.
//!
//! The crate is built around one idea: in a commutative monoid, the product
//! of an indexed family over a finite *set* is well defined — it does not
//! depend on the order in which the set is enumerated — and it is the unique
//! function of the set satisfying two clauses: the empty set maps to the
//! identity, and inserting a fresh index multiplies by that index's factor.
//! The value of the empty product is therefore forced to be the identity
//! element, not chosen by convention.
//!
//! Everything else is that idea at work in nearby structures:
//!
//! - [`monoid`] — the [`Monoid`](monoid::Monoid) abstraction, law checking,
//!   homomorphisms, and the stock carriers used throughout (integers,
//!   rationals, floats with tolerance, 2×2 matrices, sorted strings).
//! - [`fold`] — [`fprod`](fold::fprod) / [`fsum`](fold::fsum) over finite
//!   index sets, ordered folds along explicit enumerations, the recursive
//!   evaluation oracle, and homomorphism pushforward.
//! - [`words`] — the free monoid of words, word evaluation, and the semiring
//!   subset-expansion identity `Π(1+b) = Σ_{S⊆P} Π_{x∈S} b(x)`.
//! - [`multiset`] — finite-support multisets as the free commutative monoid,
//!   with the evaluation homomorphism `m ↦ Π a(i)^m(i)`.
//! - [`trace`] — Mazurkiewicz traces: independence alphabets, the adjacent
//!   swap congruence, equivalence decision, normal forms, and evaluation.
//! - [`heap`] — products over labeled posets via linear extensions, with the
//!   incomparable-commutation hypothesis and maximal-removal recursion.
//! - [`applications`] — diagonal determinants (including the 0×0 case), the
//!   Kaplan–Meier product-limit estimator in exact rational arithmetic, and
//!   partial products of series.
//!
//! The crate is `no_std` (it allocates, so `alloc` is required). All values
//! are immutable and all operations are pure functions of their inputs.

#![no_std]

#[cfg_attr(test, macro_use)]
extern crate alloc;

#[cfg(test)]
extern crate std;

pub mod applications;
pub mod fold;
pub mod heap;
pub mod monoid;
pub mod multiset;
pub mod trace;
pub mod words;

pub use fold::{
    fprod, fprod_recursive_oracle, fprod_recursive_oracle_with, fsum, hom_pushforward,
    mfold_enumerated, Enumeration, FiniteIndexSet, FnFamily, FoldError, IndexedFamily,
};
pub use monoid::{check_laws, AddMonoid, Monoid, MonoidHom, MulMonoid};
