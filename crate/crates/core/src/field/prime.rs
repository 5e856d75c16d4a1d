use num_bigint::{BigInt, BigUint, RandBigInt, Sign};
use num_integer::Integer;
use num_traits::{One, ToPrimitive, Zero};
use rand::{RngCore, SeedableRng};
use rand_chacha::ChaCha8Rng;

use super::{Field, FieldError, PrimeField};

pub const MILLER_RABIN_ROUNDS: usize = 64;

const SMALL_PRIMES: [u32; 54] = [
    2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37, 41, 43, 47, 53, 59, 61, 67, 71, 73, 79, 83, 89,
    97, 101, 103, 107, 109, 113, 127, 131, 137, 139, 149, 151, 157, 163, 167, 173, 179, 181, 191,
    193, 197, 199, 211, 223, 227, 229, 233, 239, 241, 251,
];

/// Miller–Rabin with `rounds` pseudo-random bases (seeded from `n`, so the
/// answer is reproducible).
pub fn is_probable_prime(n: &BigUint, rounds: usize) -> bool {
    if *n < BigUint::from(2u8) {
        return false;
    }
    for &p in &SMALL_PRIMES {
        let p = BigUint::from(p);
        if *n == p {
            return true;
        }
        if (n % &p).is_zero() {
            return false;
        }
    }
    let one = BigUint::one();
    let n_minus_1 = n - &one;
    let s = n_minus_1.trailing_zeros().unwrap_or(0);
    let d = &n_minus_1 >> s;
    let witness = |a: &BigUint| -> bool {
        let mut x = a.modpow(&d, n);
        if x == one || x == n_minus_1 {
            return false;
        }
        for _ in 1..s {
            x = x.modpow(&BigUint::from(2u8), n);
            if x == n_minus_1 {
                return false;
            }
        }
        true
    };
    if witness(&BigUint::from(2u8)) {
        return false;
    }
    let seed = n.iter_u64_digits().fold(0x9e37_79b9_7f4a_7c15u64, |acc, d| {
        acc.rotate_left(17) ^ d.wrapping_mul(0xbf58_476d_1ce4_e5b9)
    });
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let low = BigUint::from(2u8);
    let high = &n_minus_1 - &one;
    if high <= low {
        return true;
    }
    (1..rounds).all(|_| !witness(&rng.gen_biguint_range(&low, &high)))
}

/// Smallest prime strictly greater than `n`.
pub fn next_prime(n: &BigUint) -> BigUint {
    let mut c = n + 1u8;
    if c <= BigUint::from(2u8) {
        return BigUint::from(2u8);
    }
    if c.is_even() {
        c += 1u8;
    }
    while !is_probable_prime(&c, MILLER_RABIN_ROUNDS) {
        c += 2u8;
    }
    c
}

/// Prime field with a modulus below 2^63; elements are canonical `u64`.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct SmallPrime {
    p: u64,
}

impl SmallPrime {
    pub fn new(p: u64) -> Result<Self, FieldError> {
        if p >= 1 << 63 {
            return Err(FieldError::TooLarge(p.to_string()));
        }
        if !is_probable_prime(&BigUint::from(p), MILLER_RABIN_ROUNDS) {
            return Err(FieldError::NotPrime(p.to_string()));
        }
        Ok(Self { p })
    }

    pub fn from_biguint(p: &BigUint) -> Result<Self, FieldError> {
        match p.to_u64() {
            Some(v) if v < 1 << 63 => Self::new(v),
            _ => Err(FieldError::TooLarge(p.to_string())),
        }
    }

    pub fn p(&self) -> u64 {
        self.p
    }

    fn pow(&self, mut base: u64, mut exp: u64) -> u64 {
        let mut acc = 1 % self.p;
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

impl Field for SmallPrime {
    type Elem = u64;

    fn zero(&self) -> u64 {
        0
    }
    fn one(&self) -> u64 {
        1
    }
    fn from_u64(&self, v: u64) -> u64 {
        v % self.p
    }
    fn add(&self, a: &u64, b: &u64) -> u64 {
        let s = a + b;
        if s >= self.p {
            s - self.p
        } else {
            s
        }
    }
    fn sub(&self, a: &u64, b: &u64) -> u64 {
        if a >= b {
            a - b
        } else {
            a + self.p - b
        }
    }
    fn mul(&self, a: &u64, b: &u64) -> u64 {
        ((*a as u128 * *b as u128) % self.p as u128) as u64
    }
    fn neg(&self, a: &u64) -> u64 {
        if *a == 0 {
            0
        } else {
            self.p - a
        }
    }
    fn inv(&self, a: &u64) -> Option<u64> {
        (*a != 0).then(|| self.pow(*a, self.p - 2))
    }
    fn random(&self, rng: &mut dyn RngCore) -> u64 {
        // Rejection sampling on the smallest covering power of two.
        let mask = u64::MAX >> self.p.leading_zeros();
        loop {
            let v = rng.next_u64() & mask;
            if v < self.p {
                return v;
            }
        }
    }
    fn size(&self) -> Option<BigUint> {
        Some(BigUint::from(self.p))
    }
}

impl PrimeField for SmallPrime {
    fn modulus(&self) -> BigUint {
        BigUint::from(self.p)
    }
    fn from_bigint(&self, v: &BigInt) -> u64 {
        v.mod_floor(&BigInt::from(self.p)).to_u64().unwrap()
    }
    fn lift_signed(&self, a: &u64) -> BigInt {
        if *a > self.p / 2 {
            BigInt::from(*a) - BigInt::from(self.p)
        } else {
            BigInt::from(*a)
        }
    }
}

/// Arbitrary-precision prime field.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct BigPrime {
    p: BigUint,
    p_minus_2: BigUint,
    half: BigUint,
}

impl BigPrime {
    pub fn new(p: BigUint) -> Result<Self, FieldError> {
        if !is_probable_prime(&p, MILLER_RABIN_ROUNDS) {
            return Err(FieldError::NotPrime(p.to_string()));
        }
        Ok(Self {
            p_minus_2: &p - 2u8,
            half: &p >> 1usize,
            p,
        })
    }
}

impl Field for BigPrime {
    type Elem = BigUint;

    fn zero(&self) -> BigUint {
        BigUint::zero()
    }
    fn one(&self) -> BigUint {
        BigUint::one()
    }
    fn from_u64(&self, v: u64) -> BigUint {
        BigUint::from(v) % &self.p
    }
    fn add(&self, a: &BigUint, b: &BigUint) -> BigUint {
        let s = a + b;
        if s >= self.p {
            s - &self.p
        } else {
            s
        }
    }
    fn sub(&self, a: &BigUint, b: &BigUint) -> BigUint {
        if a >= b {
            a - b
        } else {
            a + &self.p - b
        }
    }
    fn mul(&self, a: &BigUint, b: &BigUint) -> BigUint {
        (a * b) % &self.p
    }
    fn neg(&self, a: &BigUint) -> BigUint {
        if a.is_zero() {
            BigUint::zero()
        } else {
            &self.p - a
        }
    }
    fn inv(&self, a: &BigUint) -> Option<BigUint> {
        (!a.is_zero()).then(|| a.modpow(&self.p_minus_2, &self.p))
    }
    fn random(&self, mut rng: &mut dyn RngCore) -> BigUint {
        (&mut rng).gen_biguint_below(&self.p)
    }
    fn is_zero(&self, a: &BigUint) -> bool {
        a.is_zero()
    }
    fn size(&self) -> Option<BigUint> {
        Some(self.p.clone())
    }
}

impl PrimeField for BigPrime {
    fn modulus(&self) -> BigUint {
        self.p.clone()
    }
    fn from_bigint(&self, v: &BigInt) -> BigUint {
        let r = v.mod_floor(&BigInt::from_biguint(Sign::Plus, self.p.clone()));
        r.to_biguint().expect("mod_floor is non-negative")
    }
    fn lift_signed(&self, a: &BigUint) -> BigInt {
        if *a > self.half {
            BigInt::from(a.clone()) - BigInt::from(self.p.clone())
        } else {
            BigInt::from(a.clone())
        }
    }
}
