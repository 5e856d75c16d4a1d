use std::fmt;

use crate::boolfn::{index_to_bits, Monomial};
use crate::field::Field;

/// `sgn(L(X) + B)` with `L(X) = sum Z[j] X[j]`, `Z[j]` in {-1, 0, 1}.
///
/// The bias is a half-integer and is stored doubled, so `2L(X) + bias2` is
/// an odd integer: `1` where the function fires and `<= -1` elsewhere.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct LinearThresholdFunction {
    coeffs: Vec<i8>,
    bias2: i64,
}

impl LinearThresholdFunction {
    /// Fires exactly when every variable of the monomial is set.
    pub fn for_monomial(mono: Monomial, m: usize) -> Self {
        let coeffs = (1..=m).map(|j| mono.contains(j) as i8).collect();
        Self {
            coeffs,
            bias2: 1 - 2 * mono.degree() as i64,
        }
    }

    /// Fires exactly at the input `y`.
    pub fn for_clause(y: &[bool]) -> Self {
        let ones = y.iter().filter(|&&b| b).count() as i64;
        Self {
            coeffs: y.iter().map(|&b| if b { 1 } else { -1 }).collect(),
            bias2: 1 - 2 * ones,
        }
    }

    pub fn for_clause_index(index: usize, m: usize) -> Self {
        Self::for_clause(&index_to_bits(index, m))
    }

    pub fn vars(&self) -> usize {
        self.coeffs.len()
    }

    pub fn coefficients(&self) -> &[i8] {
        &self.coeffs
    }

    pub fn bias2(&self) -> i64 {
        self.bias2
    }

    pub fn is_constant(&self) -> bool {
        self.coeffs.iter().all(|&c| c == 0)
    }

    /// `2 L(X)` at an input index.
    pub fn linear2_at(&self, index: usize) -> i64 {
        self.coeffs
            .iter()
            .enumerate()
            .filter(|(j, _)| index >> j & 1 == 1)
            .map(|(_, &c)| 2 * c as i64)
            .sum()
    }

    /// `2 (L(X) + B)` at an input index.
    pub fn value2_at(&self, index: usize) -> i64 {
        self.linear2_at(index) + self.bias2
    }

    pub fn fires_at(&self, index: usize) -> bool {
        self.value2_at(index) > 0
    }

    /// Fires when the doubled value `2L + bias2` is positive.
    pub fn fires_on_linear2(&self, linear2: i64) -> bool {
        linear2 + self.bias2 > 0
    }

    /// `2 L(x)` over an arbitrary field point (worker payload).
    pub fn linear2_in<F: Field>(&self, field: &F, x: &[F::Elem]) -> F::Elem {
        let sum = self
            .coeffs
            .iter()
            .zip(x)
            .fold(field.zero(), |acc, (&c, xj)| match c {
                1 => field.add(&acc, xj),
                -1 => field.sub(&acc, xj),
                _ => acc,
            });
        field.add(&sum, &sum)
    }

    /// `2 L(x) + bias2` over an arbitrary field point.
    pub fn value2_in<F: Field>(&self, field: &F, x: &[F::Elem]) -> F::Elem {
        field.add(&self.linear2_in(field, x), &field.from_i64(self.bias2))
    }
}

impl fmt::Display for LinearThresholdFunction {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "sgn(")?;
        let mut first = true;
        for (j, &c) in self.coeffs.iter().enumerate() {
            if c == 0 {
                continue;
            }
            match (first, c > 0) {
                (true, true) => write!(f, "X[{}]", j + 1)?,
                (true, false) => write!(f, "-X[{}]", j + 1)?,
                (false, true) => write!(f, " + X[{}]", j + 1)?,
                (false, false) => write!(f, " - X[{}]", j + 1)?,
            }
            first = false;
        }
        let (sign, mag) = (self.bias2.signum(), self.bias2.abs());
        let bias = if mag % 2 == 0 {
            format!("{}", mag / 2)
        } else {
            format!("{mag}/2")
        };
        match (first, sign < 0) {
            (true, true) => write!(f, "-{bias}")?,
            (true, false) => write!(f, "{bias}")?,
            (false, true) => write!(f, " - {bias}")?,
            (false, false) => write!(f, " + {bias}")?,
        }
        write!(f, ")")
    }
}

impl fmt::Debug for LinearThresholdFunction {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::field::SmallPrime;

    #[test]
    fn and3_monomial() {
        let ltf = LinearThresholdFunction::for_monomial(Monomial::from_vars(&[1, 2, 3]), 3);
        assert_eq!(ltf.to_string(), "sgn(X[1] + X[2] + X[3] - 5/2)");
        assert_eq!(ltf.bias2(), -5);
        for i in 0..8 {
            assert_eq!(ltf.fires_at(i), i == 7);
        }
    }

    #[test]
    fn empty_monomial_always_fires() {
        let ltf = LinearThresholdFunction::for_monomial(Monomial(0), 4);
        assert!(ltf.is_constant());
        assert_eq!(ltf.bias2(), 1);
        assert_eq!(ltf.to_string(), "sgn(1/2)");
        assert!((0..16).all(|i| ltf.value2_at(i) == 1));
    }

    #[test]
    fn single_variable_monomial() {
        let ltf = LinearThresholdFunction::for_monomial(Monomial::from_vars(&[2]), 4);
        assert_eq!(ltf.coefficients(), &[0, 1, 0, 0]);
        assert_eq!(ltf.bias2(), -1);
    }

    #[test]
    fn clause_examples() {
        let m = 5;
        let ones = LinearThresholdFunction::for_clause(&[true; 5]);
        assert_eq!(ones.coefficients(), &[1; 5]);
        assert_eq!(ones.bias2(), 1 - 2 * m as i64);
        let zeros = LinearThresholdFunction::for_clause(&[false; 5]);
        assert_eq!(zeros.coefficients(), &[-1; 5]);
        assert_eq!(zeros.bias2(), 1);

        let y = LinearThresholdFunction::for_clause(&[true, false]);
        assert_eq!(y.coefficients(), &[1, -1]);
        assert_eq!(y.bias2(), -1);
        // Exhaustive over the 4 inputs; Y = (1,0) is index 1.
        let vals: Vec<_> = (0..4).map(|i| y.value2_at(i)).collect();
        assert_eq!(vals, vec![-1, 1, -3, -1]);
    }

    #[test]
    fn gap_property_exhaustive() {
        for m in 1..=6 {
            for s in 0..1u32 << m {
                let ltf = LinearThresholdFunction::for_monomial(Monomial(s), m);
                for i in 0..1usize << m {
                    let v = ltf.value2_at(i);
                    if Monomial(s).eval_index(i) {
                        assert_eq!(v, 1);
                    } else {
                        assert!(v <= -1);
                    }
                }
            }
            for y in 0..1usize << m {
                let ltf = LinearThresholdFunction::for_clause_index(y, m);
                for i in 0..1usize << m {
                    let v = ltf.value2_at(i);
                    if i == y {
                        assert_eq!(v, 1);
                    } else {
                        assert!(v <= -1);
                    }
                }
            }
        }
    }

    #[test]
    fn field_evaluation_matches_integer() {
        let f = SmallPrime::new(101).unwrap();
        let ltf = LinearThresholdFunction::for_clause(&[true, false, true]);
        for i in 0..8 {
            let x: Vec<u64> = index_to_bits(i, 3).iter().map(|&b| b as u64).collect();
            assert_eq!(ltf.value2_in(&f, &x), f.from_i64(ltf.value2_at(i)));
        }
    }
}
