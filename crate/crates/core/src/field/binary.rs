use num_bigint::BigUint;
use rand::RngCore;

use super::{Field, FieldError};

/// GF(2^s) for `1 <= s <= 32`, elements as bit-packed polynomials.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct Gf2m {
    degree: u32,
    poly: u64,
}

fn poly_degree(p: u64) -> i32 {
    63 - p.leading_zeros() as i32
}

fn poly_mod(mut a: u64, m: u64) -> u64 {
    let dm = poly_degree(m);
    while a != 0 && poly_degree(a) >= dm {
        a ^= m << (poly_degree(a) - dm);
    }
    a
}

/// Irreducible iff no factor of degree `1..=degree/2`.
fn is_irreducible(poly: u64, degree: u32) -> bool {
    if poly_degree(poly) != degree as i32 || poly & 1 == 0 && degree > 1 {
        return false;
    }
    (1..=degree / 2).all(|d| {
        (1u64 << d..1u64 << (d + 1)).all(|factor| poly_mod(poly, factor) != 0)
    })
}

impl Gf2m {
    /// Uses the numerically smallest irreducible polynomial of the degree.
    pub fn new(degree: u32) -> Result<Self, FieldError> {
        if !(1..=32).contains(&degree) {
            return Err(FieldError::BinaryDegree(degree));
        }
        let poly = (1u64 << degree..1u64 << (degree + 1))
            .find(|&p| is_irreducible(p, degree))
            .expect("irreducible polynomials exist in every degree");
        Ok(Self { degree, poly })
    }

    pub fn with_poly(degree: u32, poly: u64) -> Result<Self, FieldError> {
        if !(1..=32).contains(&degree) {
            return Err(FieldError::BinaryDegree(degree));
        }
        if !is_irreducible(poly, degree) {
            return Err(FieldError::Reducible(poly, degree));
        }
        Ok(Self { degree, poly })
    }

    /// Smallest field with at least `points` nonzero elements.
    pub fn for_points(points: usize) -> Result<Self, FieldError> {
        let mut s = 1;
        while (1u64 << s) < points as u64 + 1 {
            s += 1;
        }
        Self::new(s)
    }

    pub fn degree(&self) -> u32 {
        self.degree
    }

    pub fn poly(&self) -> u64 {
        self.poly
    }

    fn pow(&self, mut base: u64, mut exp: u64) -> u64 {
        let mut acc = 1;
        while exp > 0 {
            if exp & 1 == 1 {
                acc = self.mul(&acc, &base);
            }
            base = self.mul(&base, &base);
            exp >>= 1;
        }
        acc
    }
}

impl Field for Gf2m {
    type Elem = u64;

    fn zero(&self) -> u64 {
        0
    }
    fn one(&self) -> u64 {
        1
    }
    fn from_u64(&self, v: u64) -> u64 {
        poly_mod(v, self.poly)
    }
    fn add(&self, a: &u64, b: &u64) -> u64 {
        a ^ b
    }
    fn sub(&self, a: &u64, b: &u64) -> u64 {
        a ^ b
    }
    fn neg(&self, a: &u64) -> u64 {
        *a
    }
    fn mul(&self, a: &u64, b: &u64) -> u64 {
        let (mut a, mut b) = (*a, *b);
        let mut acc = 0u64;
        let top = 1u64 << self.degree;
        while b != 0 {
            if b & 1 == 1 {
                acc ^= a;
            }
            b >>= 1;
            a <<= 1;
            if a & top != 0 {
                a ^= self.poly;
            }
        }
        acc
    }
    fn inv(&self, a: &u64) -> Option<u64> {
        (*a != 0).then(|| self.pow(*a, (1u64 << self.degree) - 2))
    }
    fn random(&self, rng: &mut dyn RngCore) -> u64 {
        rng.next_u64() & ((1u64 << self.degree) - 1)
    }
    fn size(&self) -> Option<BigUint> {
        Some(BigUint::from(1u64) << self.degree as usize)
    }
}
