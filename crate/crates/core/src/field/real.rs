use num_bigint::BigUint;
use rand::{Rng, RngCore};

use super::Field;

/// Floating-point reals. Not exact; decoders over this field use tolerance.
#[derive(Clone, Copy, Debug, Default, PartialEq)]
pub struct RealField;

/// Range of uniformly drawn random reals.
pub const REAL_RANDOM_RANGE: f64 = 10.0;

impl Field for RealField {
    type Elem = f64;

    fn zero(&self) -> f64 {
        0.0
    }
    fn one(&self) -> f64 {
        1.0
    }
    fn from_u64(&self, v: u64) -> f64 {
        v as f64
    }
    fn add(&self, a: &f64, b: &f64) -> f64 {
        a + b
    }
    fn sub(&self, a: &f64, b: &f64) -> f64 {
        a - b
    }
    fn mul(&self, a: &f64, b: &f64) -> f64 {
        a * b
    }
    fn neg(&self, a: &f64) -> f64 {
        -a
    }
    fn inv(&self, a: &f64) -> Option<f64> {
        (*a != 0.0).then(|| 1.0 / a)
    }
    fn random(&self, mut rng: &mut dyn RngCore) -> f64 {
        (&mut rng).gen_range(-REAL_RANDOM_RANGE..=REAL_RANDOM_RANGE)
    }
    fn size(&self) -> Option<BigUint> {
        None
    }
}
