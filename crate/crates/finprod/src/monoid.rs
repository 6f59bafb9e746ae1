//! The monoid abstraction, law checking, homomorphisms, and the carrier
//! instances shipped with the crate.

use core::fmt::Debug;
use core::marker::PhantomData;

use alloc::string::String;

use num_traits::{One, Zero};
use thiserror::Error;

/// A monoid instance: a carrier type together with an associative binary
/// operation, the identity element, and a declared commutativity flag.
///
/// Instances are values, passed by reference into every fold in this crate,
/// so a monoid may carry runtime data (see [`ModMul`]). The algebraic laws
/// cannot be expressed in the interface; [`check_laws`] spot-checks them on
/// finite samples and the test suites run it against every shipped carrier.
pub trait Monoid {
    type Elem: Clone + PartialEq + Debug;

    fn op(&self, a: &Self::Elem, b: &Self::Elem) -> Self::Elem;

    fn identity(&self) -> Self::Elem;

    /// Declared commutativity. Set-indexed products refuse instances that
    /// report `false`, since their value would depend on enumeration order.
    fn is_commutative(&self) -> bool;

    /// Element equality as the laws see it. Exact carriers compare with
    /// `==`; approximate carriers ([`F64Add`], [`F64Mul`]) override this
    /// with a relative tolerance because float arithmetic is not
    /// associative at the ULP level.
    fn elem_eq(&self, a: &Self::Elem, b: &Self::Elem) -> bool {
        a == b
    }
}

impl<M: Monoid + ?Sized> Monoid for &M {
    type Elem = M::Elem;

    fn op(&self, a: &Self::Elem, b: &Self::Elem) -> Self::Elem {
        (**self).op(a, b)
    }

    fn identity(&self) -> Self::Elem {
        (**self).identity()
    }

    fn is_commutative(&self) -> bool {
        (**self).is_commutative()
    }

    fn elem_eq(&self, a: &Self::Elem, b: &Self::Elem) -> bool {
        (**self).elem_eq(a, b)
    }
}

/// A monoid law that failed on concrete sample elements.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum LawViolation<E: Debug> {
    #[error("op is not associative on {a:?}, {b:?}, {c:?}")]
    NotAssociative { a: E, b: E, c: E },
    #[error("identity is not neutral on {elem:?}")]
    IdentityNotNeutral { elem: E },
    #[error("op is declared commutative but differs on {a:?}, {b:?}")]
    NotCommutative { a: E, b: E },
}

/// Spot-checks the monoid laws on a finite sample: identity neutrality for
/// every element, associativity on every triple, and commutativity on every
/// pair when the instance declares it.
pub fn check_laws<M: Monoid>(
    monoid: &M,
    samples: &[M::Elem],
) -> Result<(), LawViolation<M::Elem>> {
    let id = monoid.identity();
    for a in samples {
        let left = monoid.op(&id, a);
        let right = monoid.op(a, &id);
        if !monoid.elem_eq(&left, a) || !monoid.elem_eq(&right, a) {
            return Err(LawViolation::IdentityNotNeutral { elem: a.clone() });
        }
    }
    for a in samples {
        for b in samples {
            for c in samples {
                let assoc_l = monoid.op(&monoid.op(a, b), c);
                let assoc_r = monoid.op(a, &monoid.op(b, c));
                if !monoid.elem_eq(&assoc_l, &assoc_r) {
                    return Err(LawViolation::NotAssociative {
                        a: a.clone(),
                        b: b.clone(),
                        c: c.clone(),
                    });
                }
            }
        }
    }
    if monoid.is_commutative() {
        for a in samples {
            for b in samples {
                if !monoid.elem_eq(&monoid.op(a, b), &monoid.op(b, a)) {
                    return Err(LawViolation::NotCommutative {
                        a: a.clone(),
                        b: b.clone(),
                    });
                }
            }
        }
    }
    Ok(())
}

/// A homomorphism law that failed on concrete source elements.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum HomViolation<E: Debug> {
    #[error("map does not send the source identity to the target identity")]
    IdentityNotPreserved,
    #[error("map(op(a, b)) differs from op(map(a), map(b)) on {a:?}, {b:?}")]
    OpNotPreserved { a: E, b: E },
}

/// A map between monoid carriers bundled with its source and target
/// instances.
///
/// The homomorphism laws — identity to identity, products to products —
/// are the caller's obligation; [`MonoidHom::check`] spot-checks them on a
/// sample, and [`crate::fold::hom_pushforward`] verifies them on the fly
/// for every product it pushes through.
pub struct MonoidHom<S, T, F> {
    pub source: S,
    pub target: T,
    map: F,
}

impl<S, T, F> MonoidHom<S, T, F>
where
    S: Monoid,
    T: Monoid,
    F: Fn(&S::Elem) -> T::Elem,
{
    pub fn new(source: S, target: T, map: F) -> Self {
        Self {
            source,
            target,
            map,
        }
    }

    pub fn apply(&self, x: &S::Elem) -> T::Elem {
        (self.map)(x)
    }

    /// Spot-checks identity preservation and op preservation on every pair
    /// of sample elements.
    pub fn check(&self, samples: &[S::Elem]) -> Result<(), HomViolation<S::Elem>> {
        let mapped_id = self.apply(&self.source.identity());
        if !self.target.elem_eq(&mapped_id, &self.target.identity()) {
            return Err(HomViolation::IdentityNotPreserved);
        }
        for a in samples {
            for b in samples {
                let of_product = self.apply(&self.source.op(a, b));
                let of_images = self.target.op(&self.apply(a), &self.apply(b));
                if !self.target.elem_eq(&of_product, &of_images) {
                    return Err(HomViolation::OpNotPreserved {
                        a: a.clone(),
                        b: b.clone(),
                    });
                }
            }
        }
        Ok(())
    }
}

/// Addition on a numeric carrier: `(T, +, 0)`, declared commutative.
#[derive(Debug, Default, Clone, Copy)]
pub struct AddMonoid<T>(PhantomData<T>);

impl<T> AddMonoid<T> {
    pub fn new() -> Self {
        Self(PhantomData)
    }
}

impl<T> Monoid for AddMonoid<T>
where
    T: Zero + Clone + PartialEq + Debug,
{
    type Elem = T;

    fn op(&self, a: &T, b: &T) -> T {
        a.clone() + b.clone()
    }

    fn identity(&self) -> T {
        T::zero()
    }

    fn is_commutative(&self) -> bool {
        true
    }
}

/// Multiplication on a numeric carrier: `(T, ·, 1)`, declared commutative.
/// Intended for scalar types; matrix-like carriers get their own instances.
#[derive(Debug, Default, Clone, Copy)]
pub struct MulMonoid<T>(PhantomData<T>);

impl<T> MulMonoid<T> {
    pub fn new() -> Self {
        Self(PhantomData)
    }
}

impl<T> Monoid for MulMonoid<T>
where
    T: One + Clone + PartialEq + Debug,
{
    type Elem = T;

    fn op(&self, a: &T, b: &T) -> T {
        a.clone() * b.clone()
    }

    fn identity(&self) -> T {
        T::one()
    }

    fn is_commutative(&self) -> bool {
        true
    }
}

/// Relative tolerance used by the approximate float carriers.
pub const F64_RELATIVE_TOLERANCE: f64 = 1e-12;

fn approx_eq(a: f64, b: f64) -> bool {
    if a == b {
        return true;
    }
    let scale = a.abs().max(b.abs());
    (a - b).abs() <= F64_RELATIVE_TOLERANCE * scale
}

/// `(f64, +, 0)`, flagged approximate: comparisons use a relative tolerance
/// of [`F64_RELATIVE_TOLERANCE`] instead of bit equality.
#[derive(Debug, Default, Clone, Copy)]
pub struct F64Add;

impl Monoid for F64Add {
    type Elem = f64;

    fn op(&self, a: &f64, b: &f64) -> f64 {
        a + b
    }

    fn identity(&self) -> f64 {
        0.0
    }

    fn is_commutative(&self) -> bool {
        true
    }

    fn elem_eq(&self, a: &f64, b: &f64) -> bool {
        approx_eq(*a, *b)
    }
}

/// `(f64, ·, 1)`, flagged approximate like [`F64Add`].
#[derive(Debug, Default, Clone, Copy)]
pub struct F64Mul;

impl Monoid for F64Mul {
    type Elem = f64;

    fn op(&self, a: &f64, b: &f64) -> f64 {
        a * b
    }

    fn identity(&self) -> f64 {
        1.0
    }

    fn is_commutative(&self) -> bool {
        true
    }

    fn elem_eq(&self, a: &f64, b: &f64) -> bool {
        approx_eq(*a, *b)
    }
}

/// Multiplication of residues modulo `n`. The image of integer reduction
/// homs in the tests.
#[derive(Debug, Clone, Copy)]
pub struct ModMul {
    modulus: i64,
}

impl ModMul {
    /// `modulus` must be positive.
    pub fn new(modulus: i64) -> Self {
        assert!(modulus > 0, "modulus must be positive");
        Self { modulus }
    }

    pub fn modulus(&self) -> i64 {
        self.modulus
    }

    pub fn reduce(&self, x: i64) -> i64 {
        x.rem_euclid(self.modulus)
    }
}

impl Monoid for ModMul {
    type Elem = i64;

    fn op(&self, a: &i64, b: &i64) -> i64 {
        (a * b).rem_euclid(self.modulus)
    }

    fn identity(&self) -> i64 {
        1 % self.modulus
    }

    fn is_commutative(&self) -> bool {
        true
    }
}

/// Strings under order-insensitive merge: the characters of both inputs in
/// sorted order. Commutative, with the empty string as identity.
#[derive(Debug, Default, Clone, Copy)]
pub struct SortedMerge;

impl Monoid for SortedMerge {
    type Elem = String;

    fn op(&self, a: &String, b: &String) -> String {
        let mut chars: alloc::vec::Vec<char> = a.chars().chain(b.chars()).collect();
        chars.sort_unstable();
        chars.into_iter().collect()
    }

    fn identity(&self) -> String {
        String::new()
    }

    fn is_commutative(&self) -> bool {
        true
    }
}

/// A 2×2 integer matrix, the stock non-commutative carrier.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct Mat2(pub [[i64; 2]; 2]);

impl Mat2 {
    pub const IDENTITY: Mat2 = Mat2([[1, 0], [0, 1]]);

    pub fn mul(&self, other: &Mat2) -> Mat2 {
        let a = &self.0;
        let b = &other.0;
        let mut out = [[0i64; 2]; 2];
        for (i, row) in out.iter_mut().enumerate() {
            for (j, cell) in row.iter_mut().enumerate() {
                *cell = a[i][0] * b[0][j] + a[i][1] * b[1][j];
            }
        }
        Mat2(out)
    }
}

/// 2×2 matrix multiplication; not commutative, so set-indexed products
/// reject it while ordered folds accept it.
#[derive(Debug, Default, Clone, Copy)]
pub struct Mat2Mul;

impl Monoid for Mat2Mul {
    type Elem = Mat2;

    fn op(&self, a: &Mat2, b: &Mat2) -> Mat2 {
        a.mul(b)
    }

    fn identity(&self) -> Mat2 {
        Mat2::IDENTITY
    }

    fn is_commutative(&self) -> bool {
        false
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use alloc::string::ToString;
    use alloc::vec::Vec;
    use num_bigint::BigInt;
    use num_rational::BigRational;

    fn rat(n: i64, d: i64) -> BigRational {
        BigRational::new(BigInt::from(n), BigInt::from(d))
    }

    #[test]
    fn laws_hold_on_shipped_carriers() {
        check_laws(&AddMonoid::<i64>::new(), &[-3, 0, 1, 7, 12]).unwrap();
        check_laws(&MulMonoid::<i64>::new(), &[-2, 0, 1, 3, 5]).unwrap();
        check_laws(
            &MulMonoid::<BigRational>::new(),
            &[rat(1, 2), rat(-3, 4), rat(0, 1), rat(5, 1)],
        )
        .unwrap();
        check_laws(&ModMul::new(5), &[0, 1, 2, 3, 4]).unwrap();
        // the carrier is sorted strings; unsorted samples are outside it
        let words: Vec<String> = ["", "aab", "xz", "m"].iter().map(|s| s.to_string()).collect();
        check_laws(&SortedMerge, &words).unwrap();
    }

    #[test]
    fn float_carriers_pass_laws_within_tolerance() {
        check_laws(&F64Add, &[0.1, -2.5, 3.75, 1e-3]).unwrap();
        check_laws(&F64Mul, &[0.1, -2.5, 3.75, 1e-3]).unwrap();
    }

    #[test]
    fn sorted_merge_merges_and_sorts() {
        let m = SortedMerge;
        assert_eq!(m.op(&"ca".to_string(), &"b".to_string()), "abc");
        assert_eq!(m.op(&m.identity(), &"zx".to_string()), "xz");
    }

    #[test]
    fn matrix_product_depends_on_order() {
        let x = Mat2([[1, 1], [0, 1]]);
        let y = Mat2([[1, 0], [1, 1]]);
        assert_eq!(x.mul(&y), Mat2([[2, 1], [1, 1]]));
        assert_eq!(y.mul(&x), Mat2([[1, 1], [1, 2]]));
        assert_ne!(x.mul(&y), y.mul(&x));
        // associativity and identity still hold
        check_laws(&Mat2Mul, &[x, y, Mat2::IDENTITY]).unwrap();
    }

    #[test]
    fn commutativity_violation_is_reported() {
        // declare a commutative wrapper around matrix multiplication
        struct BogusCommutative;
        impl Monoid for BogusCommutative {
            type Elem = Mat2;
            fn op(&self, a: &Mat2, b: &Mat2) -> Mat2 {
                a.mul(b)
            }
            fn identity(&self) -> Mat2 {
                Mat2::IDENTITY
            }
            fn is_commutative(&self) -> bool {
                true
            }
        }
        let x = Mat2([[1, 1], [0, 1]]);
        let y = Mat2([[1, 0], [1, 1]]);
        let err = check_laws(&BogusCommutative, &[x, y]).unwrap_err();
        assert!(matches!(err, LawViolation::NotCommutative { .. }));
    }

    #[test]
    fn hom_check_accepts_reduction_and_rejects_shift() {
        let reduce = MonoidHom::new(MulMonoid::<i64>::new(), ModMul::new(5), |x: &i64| {
            x.rem_euclid(5)
        });
        reduce.check(&[0, 1, 2, 3, 4, 7, 12]).unwrap();

        let shift = MonoidHom::new(AddMonoid::<i64>::new(), AddMonoid::<i64>::new(), |x: &i64| {
            x + 1
        });
        assert_eq!(
            shift.check(&[0, 1]).unwrap_err(),
            HomViolation::IdentityNotPreserved
        );
    }

    #[test]
    fn exp_hom_passes_within_tolerance() {
        let exp = MonoidHom::new(F64Add, F64Mul, |x: &f64| x.exp());
        exp.check(&[0.0, 1.0, -0.5, 2.5]).unwrap();
    }
}
