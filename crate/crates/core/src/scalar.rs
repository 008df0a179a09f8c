//! Scalar abstraction shared by the polynomial and matrix code.
//!
//! Finite fields carry runtime data (characteristic, defining polynomial), so
//! arithmetic goes through a field *context* value rather than through
//! operator traits on the element type. Types that already implement the
//! `num-traits` algebra (rationals, big integers modulo nothing) are adapted
//! with [`Exact`].

use std::fmt::Debug;
use std::hash::Hash;
use std::marker::PhantomData;

use num_bigint::BigUint;
use num_traits::{FromPrimitive, Num};
use rand::Rng;

use crate::arith::Natural;

/// A commutative field with exact arithmetic.
pub trait Field: Clone + Debug + PartialEq {
    type Elem: Clone + Debug + PartialEq + Eq + Hash;

    fn zero(&self) -> Self::Elem;
    fn one(&self) -> Self::Elem;
    fn add(&self, a: &Self::Elem, b: &Self::Elem) -> Self::Elem;
    fn sub(&self, a: &Self::Elem, b: &Self::Elem) -> Self::Elem;
    fn neg(&self, a: &Self::Elem) -> Self::Elem;
    fn mul(&self, a: &Self::Elem, b: &Self::Elem) -> Self::Elem;
    /// `None` for zero.
    fn inv(&self, a: &Self::Elem) -> Option<Self::Elem>;
    /// Image of an integer under the canonical ring map `Z -> F`.
    fn from_i64(&self, v: i64) -> Self::Elem;

    fn is_zero(&self, a: &Self::Elem) -> bool {
        *a == self.zero()
    }

    fn is_one(&self, a: &Self::Elem) -> bool {
        *a == self.one()
    }

    fn div(&self, a: &Self::Elem, b: &Self::Elem) -> Option<Self::Elem> {
        self.inv(b).map(|bi| self.mul(a, &bi))
    }

    fn pow(&self, a: &Self::Elem, e: &BigUint) -> Self::Elem {
        let mut acc = self.one();
        for i in (0..e.bits()).rev() {
            acc = self.mul(&acc, &acc);
            if e.bit(i) {
                acc = self.mul(&acc, a);
            }
        }
        acc
    }

    fn pow_u64(&self, a: &Self::Elem, e: u64) -> Self::Elem {
        self.pow(a, &BigUint::from(e))
    }
}

/// A field with finitely many elements, enumerable by index.
pub trait FiniteField: Field {
    fn characteristic(&self) -> u64;
    /// Number of elements.
    fn size(&self) -> u64;
    /// Bijection `0..size -> F`; index 0 is zero and index 1 is one.
    fn element(&self, index: u64) -> Self::Elem;
    fn index_of(&self, a: &Self::Elem) -> u64;

    fn size_natural(&self) -> Natural {
        Natural::from(self.size())
    }

    fn random<R: Rng + ?Sized>(&self, rng: &mut R) -> Self::Elem {
        self.element(rng.gen_range(0..self.size()))
    }

    fn elements(&self) -> Box<dyn Iterator<Item = Self::Elem> + '_> {
        Box::new((0..self.size()).map(move |i| self.element(i)))
    }
}

/// Adapter turning any exact `num-traits` number type into a [`Field`].
///
/// Only meaningful for types whose division is exact (e.g. `BigRational`).
#[derive(Debug)]
pub struct Exact<T>(PhantomData<T>);

impl<T> Exact<T> {
    pub fn new() -> Self {
        Exact(PhantomData)
    }
}

impl<T> Default for Exact<T> {
    fn default() -> Self {
        Self::new()
    }
}

impl<T> Clone for Exact<T> {
    fn clone(&self) -> Self {
        Self::new()
    }
}

impl<T> PartialEq for Exact<T> {
    fn eq(&self, _: &Self) -> bool {
        true
    }
}

impl<T> Field for Exact<T>
where
    T: Num + FromPrimitive + Clone + Debug + Eq + Hash,
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
    fn sub(&self, a: &T, b: &T) -> T {
        a.clone() - b.clone()
    }
    fn neg(&self, a: &T) -> T {
        T::zero() - a.clone()
    }
    fn mul(&self, a: &T, b: &T) -> T {
        a.clone() * b.clone()
    }
    fn inv(&self, a: &T) -> Option<T> {
        if a.is_zero() {
            None
        } else {
            Some(T::one() / a.clone())
        }
    }
    fn from_i64(&self, v: i64) -> T {
        T::from_i64(v).expect("integer is representable")
    }
    fn is_zero(&self, a: &T) -> bool {
        a.is_zero()
    }
}
