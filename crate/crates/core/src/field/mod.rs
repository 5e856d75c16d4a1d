//! Exact arithmetic substrate.
//!
//! Every scheme runs over a [`Field`]. Threshold schemes embed their integer
//! payloads into a prime field large enough that the signed lift recovers
//! them exactly; the Boolean LCC baseline runs over GF(2^s) so that XOR is
//! field addition. [`RealField`] is only used by the logarithm scheme.

mod binary;
mod prime;
mod real;

use std::fmt;

use num_bigint::{BigInt, BigUint};
use rand::RngCore;
use serde::{Deserialize, Serialize};
use thiserror::Error;

pub use binary::Gf2m;
pub use prime::{is_probable_prime, next_prime, BigPrime, SmallPrime, MILLER_RABIN_ROUNDS};
pub use real::RealField;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum FieldError {
    #[error("modulus {0} is not prime")]
    NotPrime(String),
    #[error("modulus {0} too large for the word-sized backend")]
    TooLarge(String),
    #[error("binary extension degree {0} unsupported (1..=32)")]
    BinaryDegree(u32),
    #[error("reduction polynomial {0:#x} is not irreducible of degree {1}")]
    Reducible(u64, u32),
    #[error("duplicate abscissa at point {0}")]
    DuplicateAbscissa(usize),
    #[error("field has {size} elements, need at least {needed} distinct points")]
    TooSmall { size: String, needed: usize },
}

/// Field arithmetic over an element type that does not carry its modulus.
pub trait Field: Clone + fmt::Debug + Send + Sync {
    type Elem: Clone + PartialEq + fmt::Debug + Send + Sync;

    fn zero(&self) -> Self::Elem;
    fn one(&self) -> Self::Elem;
    fn from_u64(&self, v: u64) -> Self::Elem;
    fn add(&self, a: &Self::Elem, b: &Self::Elem) -> Self::Elem;
    fn sub(&self, a: &Self::Elem, b: &Self::Elem) -> Self::Elem;
    fn mul(&self, a: &Self::Elem, b: &Self::Elem) -> Self::Elem;
    fn neg(&self, a: &Self::Elem) -> Self::Elem;
    /// `None` for zero.
    fn inv(&self, a: &Self::Elem) -> Option<Self::Elem>;
    fn random(&self, rng: &mut dyn RngCore) -> Self::Elem;

    fn is_zero(&self, a: &Self::Elem) -> bool {
        *a == self.zero()
    }

    fn from_i64(&self, v: i64) -> Self::Elem {
        let mag = self.from_u64(v.unsigned_abs());
        if v < 0 {
            self.neg(&mag)
        } else {
            mag
        }
    }

    fn div(&self, a: &Self::Elem, b: &Self::Elem) -> Option<Self::Elem> {
        self.inv(b).map(|ib| self.mul(a, &ib))
    }

    /// The `i`-th canonical evaluation point (`i >= 1`), distinct for
    /// distinct `i` as long as `i` is below the field size.
    fn point(&self, i: u64) -> Self::Elem {
        self.from_u64(i)
    }

    /// Number of elements, or `None` when infinite.
    fn size(&self) -> Option<BigUint>;
}

/// Prime fields: integer embedding and signed lifting.
pub trait PrimeField: Field {
    fn modulus(&self) -> BigUint;
    fn from_bigint(&self, v: &BigInt) -> Self::Elem;
    /// Representative `z` in `(-p/2, p/2]` with `z = a mod p`.
    fn lift_signed(&self, a: &Self::Elem) -> BigInt;

    fn from_biguint(&self, v: &BigUint) -> Self::Elem {
        self.from_bigint(&BigInt::from(v.clone()))
    }
}

/// Serializable description of a field.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "kebab-case", deny_unknown_fields)]
pub enum FieldSpec {
    /// Modulus as a decimal string (arbitrary precision).
    Prime { modulus: String },
    /// GF(2^degree) reduced by `poly` (bit `degree` set).
    BinaryExtension { degree: u32, poly: u64 },
}

impl FieldSpec {
    pub fn prime(p: &BigUint) -> Self {
        FieldSpec::Prime {
            modulus: p.to_string(),
        }
    }

    pub fn prime_modulus(&self) -> Option<BigUint> {
        match self {
            FieldSpec::Prime { modulus } => modulus.parse().ok(),
            FieldSpec::BinaryExtension { .. } => None,
        }
    }

    /// Checks primality / irreducibility.
    pub fn validate(&self) -> Result<(), FieldError> {
        match self {
            FieldSpec::Prime { modulus } => {
                let p: BigUint = modulus
                    .parse()
                    .map_err(|_| FieldError::NotPrime(modulus.clone()))?;
                if is_probable_prime(&p, MILLER_RABIN_ROUNDS) {
                    Ok(())
                } else {
                    Err(FieldError::NotPrime(modulus.clone()))
                }
            }
            FieldSpec::BinaryExtension { degree, poly } => {
                Gf2m::with_poly(*degree, *poly).map(|_| ())
            }
        }
    }
}

/// Smallest prime `p > 2 * bound + 1`, so that every integer of magnitude at
/// most `bound` survives the round trip through `F_p` and the signed lift.
pub fn modulus_for_bound(bound: &BigUint) -> FieldSpec {
    let floor = bound * 2u32 + 1u32;
    FieldSpec::prime(&next_prime(&floor))
}

/// Concrete prime-field backend chosen by modulus size.
#[derive(Clone, Debug)]
pub enum PrimeBackend {
    Small(SmallPrime),
    Big(BigPrime),
}

impl PrimeBackend {
    pub fn from_modulus(p: &BigUint) -> Result<Self, FieldError> {
        match SmallPrime::from_biguint(p) {
            Ok(f) => Ok(PrimeBackend::Small(f)),
            Err(FieldError::TooLarge(_)) => BigPrime::new(p.clone()).map(PrimeBackend::Big),
            Err(e) => Err(e),
        }
    }

    pub fn for_bound(bound: &BigUint) -> Self {
        let p = modulus_for_bound(bound)
            .prime_modulus()
            .expect("prime spec");
        Self::from_modulus(&p).expect("next_prime returns a prime")
    }

    pub fn modulus(&self) -> BigUint {
        match self {
            PrimeBackend::Small(f) => f.modulus(),
            PrimeBackend::Big(f) => f.modulus(),
        }
    }
}
