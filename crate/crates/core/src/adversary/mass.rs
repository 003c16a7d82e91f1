//! Probability masses as integers over a common denominator.

use num_bigint::{BigInt, BigUint, Sign};
use num_traits::{ToPrimitive, Zero};

use crate::rational::Rational;

pub(crate) trait MassInt: Clone + Ord + std::fmt::Debug + Send + Sync {
    fn zero() -> Self;
    fn is_zero(&self) -> bool;
    fn add_assign(&mut self, other: &Self);
    fn sub_assign(&mut self, other: &Self);
    fn from_big(b: &BigUint) -> Option<Self>;
    fn to_big(&self) -> BigUint;
}

impl MassInt for u128 {
    fn zero() -> Self {
        0
    }
    fn is_zero(&self) -> bool {
        *self == 0
    }
    fn add_assign(&mut self, other: &Self) {
        *self += *other;
    }
    fn sub_assign(&mut self, other: &Self) {
        *self -= *other;
    }
    fn from_big(b: &BigUint) -> Option<Self> {
        b.to_u128()
    }
    fn to_big(&self) -> BigUint {
        BigUint::from(*self)
    }
}

impl MassInt for BigUint {
    fn zero() -> Self {
        Zero::zero()
    }
    fn is_zero(&self) -> bool {
        Zero::is_zero(self)
    }
    fn add_assign(&mut self, other: &Self) {
        *self += other;
    }
    fn sub_assign(&mut self, other: &Self) {
        *self -= other;
    }
    fn from_big(b: &BigUint) -> Option<Self> {
        Some(b.clone())
    }
    fn to_big(&self) -> BigUint {
        self.clone()
    }
}

/// Masses fit in `u128` with headroom when the common denominator does.
pub(crate) fn fits_u128(scale: &BigUint) -> bool {
    scale.bits() <= 126
}

pub(crate) fn to_mass<M: MassInt>(prob: &Rational, scale: &BigUint) -> M {
    let n = prob
        .scaled_to_integer(scale)
        .expect("scale is a multiple of every denominator");
    M::from_big(n.magnitude()).expect("mass fits the chosen integer width")
}

pub(crate) fn to_rational<M: MassInt>(m: &M, scale: &BigUint) -> Rational {
    Rational::new(
        BigInt::from_biguint(Sign::Plus, m.to_big()),
        BigInt::from_biguint(Sign::Plus, scale.clone()),
    )
}
