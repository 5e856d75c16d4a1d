//! Univariate polynomials over a [`Field`], lowest degree first.

use crate::field::{Field, FieldError};

#[derive(Clone, Debug, PartialEq)]
pub struct Poly<E> {
    coeffs: Vec<E>,
}

impl<E: Clone + PartialEq> Poly<E> {
    pub fn zero() -> Self {
        Self { coeffs: Vec::new() }
    }

    /// Trailing zeros are stripped.
    pub fn from_coeffs<F: Field<Elem = E>>(field: &F, mut coeffs: Vec<E>) -> Self {
        while coeffs.last().is_some_and(|c| field.is_zero(c)) {
            coeffs.pop();
        }
        Self { coeffs }
    }

    pub fn constant<F: Field<Elem = E>>(field: &F, c: E) -> Self {
        Self::from_coeffs(field, vec![c])
    }

    pub fn coeffs(&self) -> &[E] {
        &self.coeffs
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    /// `None` for the zero polynomial.
    pub fn degree(&self) -> Option<usize> {
        self.coeffs.len().checked_sub(1)
    }

    pub fn eval<F: Field<Elem = E>>(&self, field: &F, x: &E) -> E {
        self.coeffs
            .iter()
            .rev()
            .fold(field.zero(), |acc, c| field.add(&field.mul(&acc, x), c))
    }

    pub fn eval_batch<F: Field<Elem = E>>(&self, field: &F, xs: &[E]) -> Vec<E> {
        xs.iter().map(|x| self.eval(field, x)).collect()
    }

    pub fn add<F: Field<Elem = E>>(&self, field: &F, other: &Self) -> Self {
        let n = self.coeffs.len().max(other.coeffs.len());
        let zero = field.zero();
        let coeffs = (0..n)
            .map(|i| {
                field.add(
                    self.coeffs.get(i).unwrap_or(&zero),
                    other.coeffs.get(i).unwrap_or(&zero),
                )
            })
            .collect();
        Self::from_coeffs(field, coeffs)
    }

    pub fn scale<F: Field<Elem = E>>(&self, field: &F, c: &E) -> Self {
        Self::from_coeffs(field, self.coeffs.iter().map(|a| field.mul(a, c)).collect())
    }

    pub fn mul<F: Field<Elem = E>>(&self, field: &F, other: &Self) -> Self {
        if self.is_zero() || other.is_zero() {
            return Self::zero();
        }
        let mut out = vec![field.zero(); self.coeffs.len() + other.coeffs.len() - 1];
        for (i, a) in self.coeffs.iter().enumerate() {
            for (j, b) in other.coeffs.iter().enumerate() {
                out[i + j] = field.add(&out[i + j], &field.mul(a, b));
            }
        }
        Self::from_coeffs(field, out)
    }

    /// Long division; panics on a zero divisor.
    pub fn div_rem<F: Field<Elem = E>>(&self, field: &F, divisor: &Self) -> (Self, Self) {
        let dd = divisor.degree().expect("division by zero polynomial");
        let lead_inv = field
            .inv(&divisor.coeffs[dd])
            .expect("leading coefficient is nonzero");
        let mut rem = self.coeffs.clone();
        if rem.len() <= dd {
            return (Self::zero(), self.clone());
        }
        let mut quot = vec![field.zero(); rem.len() - dd];
        for i in (0..quot.len()).rev() {
            let c = field.mul(&rem[i + dd], &lead_inv);
            if !field.is_zero(&c) {
                for (j, d) in divisor.coeffs.iter().enumerate() {
                    rem[i + j] = field.sub(&rem[i + j], &field.mul(&c, d));
                }
            }
            quot[i] = c;
        }
        rem.truncate(dd);
        (Self::from_coeffs(field, quot), Self::from_coeffs(field, rem))
    }

    /// `prod (x - r)` over the given roots.
    pub fn from_roots<F: Field<Elem = E>>(field: &F, roots: &[E]) -> Self {
        roots.iter().fold(Self::constant(field, field.one()), |acc, r| {
            acc.mul(field, &Self::from_coeffs(field, vec![field.neg(r), field.one()]))
        })
    }
}

/// Unique polynomial of degree `< points.len()` through the points
/// (Newton divided differences).
pub fn lagrange_interpolate<F: Field>(
    field: &F,
    points: &[(F::Elem, F::Elem)],
) -> Result<Poly<F::Elem>, FieldError> {
    let n = points.len();
    let xs: Vec<_> = points.iter().map(|(x, _)| x.clone()).collect();
    let mut dd: Vec<_> = points.iter().map(|(_, y)| y.clone()).collect();
    for level in 1..n {
        for i in (level..n).rev() {
            let denom = field.sub(&xs[i], &xs[i - level]);
            let inv = field
                .inv(&denom)
                .ok_or(FieldError::DuplicateAbscissa(i))?;
            dd[i] = field.mul(&field.sub(&dd[i], &dd[i - 1]), &inv);
        }
    }
    // Horner over the Newton basis.
    let mut coeffs: Vec<F::Elem> = Vec::with_capacity(n);
    for i in (0..n).rev() {
        // coeffs := coeffs * (x - xs[i]) + dd[i]
        let mut next = vec![field.zero(); coeffs.len() + 1];
        for (j, c) in coeffs.iter().enumerate() {
            next[j + 1] = field.add(&next[j + 1], c);
            next[j] = field.sub(&next[j], &field.mul(c, &xs[i]));
        }
        next[0] = field.add(&next[0], &dd[i]);
        coeffs = next;
    }
    Ok(Poly::from_coeffs(field, coeffs))
}

/// Evaluates the interpolant through `points` at each of `targets` without
/// forming coefficients.
pub fn interpolate_at<F: Field>(
    field: &F,
    points: &[(F::Elem, F::Elem)],
    targets: &[F::Elem],
) -> Result<Vec<F::Elem>, FieldError> {
    Ok(lagrange_interpolate(field, points)?.eval_batch(field, targets))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::field::{BigPrime, Gf2m, SmallPrime};
    use num_bigint::BigUint;
    use proptest::prelude::*;

    #[test]
    fn interpolate_examples() {
        let f7 = SmallPrime::new(7).unwrap();
        let f11 = SmallPrime::new(11).unwrap();
        assert_eq!(lagrange_interpolate(&f7, &[(0, 3)]).unwrap().coeffs(), &[3]);
        assert_eq!(
            lagrange_interpolate(&f7, &[(0, 1), (1, 2)]).unwrap().coeffs(),
            &[1, 1]
        );
        assert_eq!(
            lagrange_interpolate(&f11, &[(0, 0), (1, 1), (2, 4)])
                .unwrap()
                .coeffs(),
            &[0, 0, 1]
        );
        assert_eq!(
            lagrange_interpolate(&f7, &[(1, 1), (1, 2)]),
            Err(FieldError::DuplicateAbscissa(1))
        );
    }

    #[test]
    fn eval_batch_examples() {
        let f11 = SmallPrime::new(11).unwrap();
        let f7 = SmallPrime::new(7).unwrap();
        let sq = Poly::from_coeffs(&f11, vec![0, 0, 1]);
        assert_eq!(sq.eval_batch(&f11, &[0, 1, 2]), vec![0, 1, 4]);
        assert_eq!(Poly::zero().eval_batch(&f11, &[3, 5]), vec![0, 0]);
        assert_eq!(Poly::from_coeffs(&f7, vec![1, 1]).eval_batch(&f7, &[3]), vec![4]);
    }

    #[test]
    fn division() {
        let f = SmallPrime::new(13).unwrap();
        let a = Poly::from_roots(&f, &[1, 2, 3]);
        let b = Poly::from_roots(&f, &[2]);
        let (q, r) = a.div_rem(&f, &b);
        assert!(r.is_zero());
        assert_eq!(q, Poly::from_roots(&f, &[1, 3]));
        let (q, r) = b.div_rem(&f, &a);
        assert!(q.is_zero());
        assert_eq!(r, b);
    }

    #[test]
    fn binary_field_interpolation() {
        let f = Gf2m::new(4).unwrap();
        let p = Poly::from_coeffs(&f, vec![3, 7, 1]);
        let pts: Vec<_> = (1..=3).map(|x| (x, p.eval(&f, &x))).collect();
        assert_eq!(lagrange_interpolate(&f, &pts).unwrap(), p);
    }

    proptest! {
        #[test]
        fn interpolate_inverts_evaluate(
            coeffs in proptest::collection::vec(0u64..1_000_003, 1..12),
            offset in 0u64..1000,
        ) {
            let f = SmallPrime::new(1_000_003).unwrap();
            let p = Poly::from_coeffs(&f, coeffs.clone());
            let pts: Vec<_> = (0..coeffs.len() as u64)
                .map(|i| (offset + i, p.eval(&f, &(offset + i))))
                .collect();
            prop_assert_eq!(lagrange_interpolate(&f, &pts).unwrap(), p);
        }

        #[test]
        fn interpolate_inverts_evaluate_big(coeffs in proptest::collection::vec(any::<u64>(), 1..6)) {
            let f = BigPrime::new(crate::field::next_prime(&(BigUint::from(1u8) << 130usize))).unwrap();
            let p = Poly::from_coeffs(&f, coeffs.iter().map(|&c| BigUint::from(c)).collect());
            let pts: Vec<_> = (1..=coeffs.len() as u64)
                .map(|i| (f.from_u64(i), p.eval(&f, &f.from_u64(i))))
                .collect();
            prop_assert_eq!(lagrange_interpolate(&f, &pts).unwrap(), p);
        }
    }
}
