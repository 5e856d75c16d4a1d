use num_bigint::{BigInt, BigUint};
use num_traits::{One, Zero};

use super::DecisionList;
use crate::field::PrimeField;

/// `2P(X) = sum_i A_i C_i(X) (2 L_i(X) + bias2_i)` with
/// `A_i = (4m + 4)^(len - i)`.
#[derive(Clone, Debug, PartialEq)]
pub struct PolynomialThresholdFunction {
    list: DecisionList,
    weights: Vec<BigUint>,
}

pub fn build_ptf(list: DecisionList) -> PolynomialThresholdFunction {
    let ratio = BigUint::from(4 * list.vars() as u64 + 4);
    let len = list.len();
    let mut weights = vec![BigUint::one(); len];
    for i in (0..len.saturating_sub(1)).rev() {
        weights[i] = &weights[i + 1] * &ratio;
    }
    PolynomialThresholdFunction { list, weights }
}

impl PolynomialThresholdFunction {
    pub fn vars(&self) -> usize {
        self.list.vars()
    }

    pub fn list(&self) -> &DecisionList {
        &self.list
    }

    pub fn weights(&self) -> &[BigUint] {
        &self.weights
    }

    /// Total degree of `P` as a polynomial in the inputs.
    pub fn degree(&self) -> usize {
        self.list
            .entries()
            .iter()
            .map(|e| e.monomial.len() + usize::from(!e.ltf.is_constant()))
            .max()
            .unwrap_or(0)
    }

    /// `sum A_i (2m + 1)`, an upper bound on `|2P(X)|` over Boolean inputs.
    pub fn magnitude_bound(&self) -> BigUint {
        let term = BigUint::from(2 * self.vars() as u64 + 1);
        self.weights.iter().map(|a| a * &term).sum()
    }

    /// `2P(X)` at a Boolean input index, exactly.
    pub fn value2_at(&self, index: usize) -> BigInt {
        self.list
            .entries()
            .iter()
            .zip(&self.weights)
            .filter(|(e, _)| e.monomial_holds_at(index))
            .map(|(e, a)| BigInt::from(a.clone()) * e.ltf.value2_at(index))
            .fold(BigInt::zero(), |acc, t| acc + t)
    }

    pub fn fires_at(&self, index: usize) -> bool {
        self.value2_at(index) > BigInt::zero()
    }

    /// Checks `A_i > sum_{j > i} A_j (2m + 1)` for every entry.
    pub fn dominance_holds(&self) -> bool {
        let term = BigUint::from(2 * self.vars() as u64 + 1);
        let mut tail = BigUint::zero();
        for a in self.weights.iter().rev() {
            if *a <= tail {
                return false;
            }
            tail += a * &term;
        }
        true
    }

    pub fn evaluator<F: PrimeField>(&self, field: &F) -> PtfEvaluator<F> {
        PtfEvaluator {
            field: field.clone(),
            weights: self
                .weights
                .iter()
                .map(|a| field.from_bigint(&BigInt::from(a.clone())))
                .collect(),
            ptf: self.clone(),
        }
    }
}

/// Evaluates `2P` at arbitrary field points, literals `~X[j]` as `1 - X[j]`.
#[derive(Clone, Debug)]
pub struct PtfEvaluator<F: PrimeField> {
    field: F,
    weights: Vec<F::Elem>,
    ptf: PolynomialThresholdFunction,
}

impl<F: PrimeField> PtfEvaluator<F> {
    pub fn ptf(&self) -> &PolynomialThresholdFunction {
        &self.ptf
    }

    pub fn value2(&self, x: &[F::Elem]) -> F::Elem {
        let f = &self.field;
        self.ptf
            .list
            .entries()
            .iter()
            .zip(&self.weights)
            .fold(f.zero(), |acc, (e, a)| {
                let mono = e
                    .monomial
                    .iter()
                    .fold(a.clone(), |p, l| f.mul(&p, &l.eval_in(f, x)));
                f.add(&acc, &f.mul(&mono, &e.ltf.value2_in(f, x)))
            })
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::boolfn::{floor_log2, index_to_bits, BooleanFunction};
    use crate::field::{BigPrime, Field, SmallPrime};
    use crate::threshold::ptf_for_function;

    #[test]
    fn single_clause_is_linear() {
        let and3 = BooleanFunction::from_support(3, &[7]).unwrap();
        let ptf = ptf_for_function(&and3).unwrap();
        assert_eq!(ptf.degree(), 1);
        assert_eq!(ptf.weights(), &[BigUint::one()]);
        let e = &ptf.list().entries()[0];
        assert!(e.monomial.is_empty());
        assert_eq!(e.ltf.to_string(), "sgn(X[1] + X[2] + X[3] - 5/2)");
        for i in 0..8 {
            assert_eq!(ptf.value2_at(i), BigInt::from(e.ltf.value2_at(i)));
        }
    }

    #[test]
    fn two_point_support_m4() {
        let f = BooleanFunction::from_support(4, &[0, 15]).unwrap();
        let ptf = ptf_for_function(&f).unwrap();
        assert!(ptf.degree() <= 2);
        assert_eq!(ptf.weights(), &[BigUint::from(20u32), BigUint::one()]);
        for i in 0..16 {
            assert_eq!(ptf.fires_at(i), f.value_at(i), "input {i}");
        }
        assert!(ptf.dominance_holds());
    }

    #[test]
    fn weights_are_geometric() {
        let f = BooleanFunction::from_support(3, &[0, 3, 5, 6]).unwrap();
        let ptf = ptf_for_function(&f).unwrap();
        let w: Vec<u64> = ptf.weights().iter().map(|a| a.try_into().unwrap()).collect();
        assert_eq!(w, vec![16 * 16 * 16, 16 * 16, 16, 1]);
    }

    #[test]
    fn exhaustive_small_functions() {
        for m in 1..=3 {
            for bits in 1u32..1 << (1 << m) {
                let f = BooleanFunction::from_fn(m, |i| bits >> i & 1 == 1).unwrap();
                let ptf = ptf_for_function(&f).unwrap();
                let w = f.weight();
                assert!(ptf.degree() <= floor_log2(w) + 1);
                assert!(ptf.list().max_monomial_len() <= floor_log2(w));
                assert!(ptf.dominance_holds());
                for i in 0..1 << m {
                    assert_eq!(ptf.fires_at(i), f.value_at(i));
                }
            }
        }
    }

    #[test]
    fn field_evaluation_matches_integers() {
        let f = BooleanFunction::from_support(4, &[1, 2, 4, 8, 15]).unwrap();
        let ptf = ptf_for_function(&f).unwrap();
        let small = SmallPrime::new(1_000_003).unwrap();
        let big = BigPrime::new((BigUint::one() << 127u32) - 1u32).unwrap();
        let ev_small = ptf.evaluator(&small);
        let ev_big = ptf.evaluator(&big);
        for i in 0..16 {
            let bits = index_to_bits(i, 4);
            let xs: Vec<u64> = bits.iter().map(|&b| b as u64).collect();
            let xb: Vec<_> = bits.iter().map(|&b| big.from_u64(b as u64)).collect();
            assert_eq!(small.lift_signed(&ev_small.value2(&xs)), ptf.value2_at(i));
            assert_eq!(big.lift_signed(&ev_big.value2(&xb)), ptf.value2_at(i));
        }
    }
}
