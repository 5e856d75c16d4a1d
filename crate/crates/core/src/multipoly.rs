//! Multivariate polynomials with exact rational coefficients, plus the two
//! input transforms used by the general-polynomial schemes: monomial
//! augmentation and entrywise logarithms.

use std::collections::{BTreeMap, HashMap};
use std::fmt;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};
use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::field::PrimeField;

#[derive(Debug, Error, Clone, PartialEq)]
pub enum PolyError {
    #[error("term {term} has {got} exponents, polynomial has {vars} variables")]
    Arity { term: usize, vars: usize, got: usize },
    #[error("cannot parse coefficient {0:?}")]
    Coefficient(String),
    #[error("coefficient denominator {0} is not invertible in the field")]
    Denominator(String),
    #[error("augmentation degree q must be at least 1")]
    ZeroQ,
    #[error("expected {expected} input values, got {got}")]
    InputLength { expected: usize, got: usize },
    #[error("log-magnitude sum {0:.1} would overflow exp()")]
    Overflow(f64),
}

pub type Exponents = Vec<u32>;

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Term {
    pub coeff: BigRational,
    pub exps: Exponents,
}

impl Term {
    pub fn degree(&self) -> u32 {
        self.exps.iter().sum()
    }
}

/// Sum of `coeff * prod x_j^e_j`. Terms are merged, non-zero and sorted by
/// exponent vector.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct MultivariatePolynomial {
    vars: usize,
    terms: Vec<Term>,
}

impl MultivariatePolynomial {
    pub fn new(vars: usize, terms: Vec<Term>) -> Result<Self, PolyError> {
        let mut merged: BTreeMap<Exponents, BigRational> = BTreeMap::new();
        for (i, t) in terms.into_iter().enumerate() {
            if t.exps.len() != vars {
                return Err(PolyError::Arity {
                    term: i,
                    vars,
                    got: t.exps.len(),
                });
            }
            *merged.entry(t.exps).or_insert_with(BigRational::zero) += t.coeff;
        }
        let terms = merged
            .into_iter()
            .filter(|(_, c)| !c.is_zero())
            .map(|(exps, coeff)| Term { coeff, exps })
            .collect();
        Ok(Self { vars, terms })
    }

    /// Integer-coefficient shorthand.
    pub fn from_int_terms(vars: usize, terms: &[(i64, &[u32])]) -> Result<Self, PolyError> {
        Self::new(
            vars,
            terms
                .iter()
                .map(|(c, e)| Term {
                    coeff: BigRational::from_integer(BigInt::from(*c)),
                    exps: e.to_vec(),
                })
                .collect(),
        )
    }

    pub fn vars(&self) -> usize {
        self.vars
    }

    pub fn terms(&self) -> &[Term] {
        &self.terms
    }

    /// `r(f)`, the number of terms.
    pub fn term_count(&self) -> usize {
        self.terms.len()
    }

    pub fn degree(&self) -> usize {
        self.terms.iter().map(Term::degree).max().unwrap_or(0) as usize
    }

    /// Exponent vectors of the non-constant terms.
    pub fn nonconstant_monomials(&self) -> Vec<&Exponents> {
        self.terms
            .iter()
            .filter(|t| t.degree() > 0)
            .map(|t| &t.exps)
            .collect()
    }

    pub fn constant(&self) -> BigRational {
        self.terms
            .iter()
            .find(|t| t.degree() == 0)
            .map_or_else(BigRational::zero, |t| t.coeff.clone())
    }

    pub fn eval_rational(&self, x: &[BigRational]) -> BigRational {
        self.terms
            .iter()
            .map(|t| {
                t.exps
                    .iter()
                    .zip(x)
                    .fold(t.coeff.clone(), |acc, (&e, xj)| acc * pow_rational(xj, e))
            })
            .fold(BigRational::zero(), |a, b| a + b)
    }

    pub fn eval_f64(&self, x: &[f64]) -> f64 {
        self.terms
            .iter()
            .map(|t| {
                let c = t.coeff.to_f64().unwrap_or(f64::NAN);
                t.exps
                    .iter()
                    .zip(x)
                    .fold(c, |acc, (&e, xj)| acc * xj.powi(e as i32))
            })
            .sum()
    }

    /// Coefficients mapped into `F_p`.
    pub fn field_coefficients<F: PrimeField>(&self, field: &F) -> Result<Vec<F::Elem>, PolyError> {
        self.terms
            .iter()
            .map(|t| {
                let num = field.from_bigint(t.coeff.numer());
                let den = field.from_bigint(t.coeff.denom());
                field
                    .div(&num, &den)
                    .ok_or_else(|| PolyError::Denominator(t.coeff.denom().to_string()))
            })
            .collect()
    }

    /// Evaluates with coefficients from [`Self::field_coefficients`].
    pub fn eval_field<F: PrimeField>(&self, field: &F, coeffs: &[F::Elem], x: &[F::Elem]) -> F::Elem {
        self.terms.iter().zip(coeffs).fold(field.zero(), |acc, (t, c)| {
            let mono = t.exps.iter().zip(x).fold(c.clone(), |m, (&e, xj)| {
                (0..e).fold(m, |m, _| field.mul(&m, xj))
            });
            field.add(&acc, &mono)
        })
    }

    pub fn to_spec(&self) -> PolynomialSpec {
        PolynomialSpec {
            vars: self.vars,
            terms: self
                .terms
                .iter()
                .map(|t| TermSpec {
                    coeff: CoeffSpec::Text(t.coeff.to_string()),
                    exponents: t.exps.clone(),
                })
                .collect(),
        }
    }
}

fn pow_rational(x: &BigRational, e: u32) -> BigRational {
    (0..e).fold(BigRational::one(), |acc, _| acc * x)
}

impl fmt::Display for MultivariatePolynomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return write!(f, "0");
        }
        for (i, t) in self.terms.iter().enumerate() {
            let neg = t.coeff.is_negative();
            match (i, neg) {
                (0, true) => write!(f, "-")?,
                (0, false) => {}
                (_, true) => write!(f, " - ")?,
                (_, false) => write!(f, " + ")?,
            }
            let c = t.coeff.abs();
            let vars: Vec<String> = t
                .exps
                .iter()
                .enumerate()
                .filter(|(_, &e)| e > 0)
                .map(|(j, &e)| match e {
                    1 => format!("x{}", j + 1),
                    _ => format!("x{}^{e}", j + 1),
                })
                .collect();
            if vars.is_empty() || !c.is_one() {
                write!(f, "{c}")?;
            }
            write!(f, "{}", vars.join("*"))?;
        }
        Ok(())
    }
}

/// JSON form: `{"vars": 3, "terms": [{"coeff": "5/2", "exponents": [1,0,2]}]}`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct PolynomialSpec {
    pub vars: usize,
    pub terms: Vec<TermSpec>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct TermSpec {
    pub coeff: CoeffSpec,
    pub exponents: Vec<u32>,
}

/// Integer or `"p/q"` string.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(untagged)]
pub enum CoeffSpec {
    Int(i64),
    Text(String),
}

impl CoeffSpec {
    pub fn parse(&self) -> Result<BigRational, PolyError> {
        match self {
            CoeffSpec::Int(v) => Ok(BigRational::from_integer(BigInt::from(*v))),
            CoeffSpec::Text(s) => {
                let s = s.trim();
                let bad = || PolyError::Coefficient(s.to_string());
                let (num, den) = match s.split_once('/') {
                    Some((n, d)) => (n.trim(), d.trim()),
                    None => (s, "1"),
                };
                let num: BigInt = num.parse().map_err(|_| bad())?;
                let den: BigInt = den.parse().map_err(|_| bad())?;
                if den.is_zero() {
                    return Err(bad());
                }
                Ok(BigRational::new(num, den))
            }
        }
    }
}

impl PolynomialSpec {
    pub fn build(&self) -> Result<MultivariatePolynomial, PolyError> {
        let terms = self
            .terms
            .iter()
            .map(|t| {
                Ok(Term {
                    coeff: t.coeff.parse()?,
                    exps: t.exponents.clone(),
                })
            })
            .collect::<Result<Vec<_>, PolyError>>()?;
        MultivariatePolynomial::new(self.vars, terms)
    }
}

/// Slot layout of augmented inputs: the `m` original variables, then every
/// monomial of total degree `2..=q`, ordered by degree, then by number of
/// distinct variables, then lexicographically.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Augmentation {
    vars: usize,
    q: usize,
    slots: Vec<Exponents>,
    index: HashMap<Exponents, usize>,
}

impl Augmentation {
    pub fn new(vars: usize, q: usize) -> Result<Self, PolyError> {
        if q == 0 {
            return Err(PolyError::ZeroQ);
        }
        let unit = |j: usize| {
            let mut e = vec![0u32; vars];
            e[j] = 1;
            e
        };
        let mut slots: Vec<Exponents> = (0..vars).map(unit).collect();
        for deg in 2..=q {
            let mut layer: Vec<Vec<usize>> = Vec::new();
            multisets(vars, deg, 0, &mut Vec::new(), &mut layer);
            layer.sort_by_key(|ms| {
                let mut distinct = ms.clone();
                distinct.dedup();
                (distinct.len(), ms.clone())
            });
            for ms in layer {
                let mut e = vec![0u32; vars];
                for v in ms {
                    e[v] += 1;
                }
                slots.push(e);
            }
        }
        let index = slots.iter().enumerate().map(|(i, e)| (e.clone(), i)).collect();
        Ok(Self {
            vars,
            q,
            slots,
            index,
        })
    }

    pub fn vars(&self) -> usize {
        self.vars
    }

    pub fn q(&self) -> usize {
        self.q
    }

    /// Total augmented length.
    pub fn len(&self) -> usize {
        self.slots.len()
    }

    pub fn is_empty(&self) -> bool {
        self.slots.is_empty()
    }

    pub fn slots(&self) -> &[Exponents] {
        &self.slots
    }

    pub fn slot_of(&self, exps: &[u32]) -> Option<usize> {
        self.index.get(exps).copied()
    }

    pub fn augment<F: PrimeField>(&self, field: &F, x: &[F::Elem]) -> AugmentedInput<F::Elem> {
        let values = self
            .slots
            .iter()
            .map(|e| {
                e.iter().zip(x).fold(field.one(), |acc, (&k, xj)| {
                    (0..k).fold(acc, |a, _| field.mul(&a, xj))
                })
            })
            .collect();
        AugmentedInput {
            vars: self.vars,
            values,
        }
    }

    pub fn augment_rational(&self, x: &[BigRational]) -> Vec<BigRational> {
        self.slots
            .iter()
            .map(|e| {
                e.iter()
                    .zip(x)
                    .fold(BigRational::one(), |acc, (&k, xj)| acc * pow_rational(xj, k))
            })
            .collect()
    }

    /// Rewrites `f` over the augmented variables. Each term's sorted variable
    /// multiset is cut into consecutive chunks of `q`; a short trailing chunk
    /// covers the remainder.
    pub fn rewrite(&self, f: &MultivariatePolynomial) -> Result<MultivariatePolynomial, PolyError> {
        if f.vars() != self.vars {
            return Err(PolyError::InputLength {
                expected: self.vars,
                got: f.vars(),
            });
        }
        let terms = f
            .terms()
            .iter()
            .map(|t| {
                let flat: Vec<usize> = t
                    .exps
                    .iter()
                    .enumerate()
                    .flat_map(|(j, &e)| std::iter::repeat_n(j, e as usize))
                    .collect();
                let mut exps = vec![0u32; self.len()];
                for chunk in flat.chunks(self.q) {
                    let mut e = vec![0u32; self.vars];
                    for &v in chunk {
                        e[v] += 1;
                    }
                    exps[self.index[&e]] += 1;
                }
                Term {
                    coeff: t.coeff.clone(),
                    exps,
                }
            })
            .collect();
        MultivariatePolynomial::new(self.len(), terms)
    }
}

/// Lexicographic multisets of size `deg` over `0..vars`.
fn multisets(vars: usize, deg: usize, start: usize, cur: &mut Vec<usize>, out: &mut Vec<Vec<usize>>) {
    if cur.len() == deg {
        out.push(cur.clone());
        return;
    }
    for v in start..vars {
        cur.push(v);
        multisets(vars, deg, v, cur, out);
        cur.pop();
    }
}

/// `deg h = u + [r > 0]` for `deg f = q u + r`.
pub fn augmented_degree(deg_f: usize, q: usize) -> usize {
    deg_f.div_ceil(q)
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct AugmentedInput<E> {
    vars: usize,
    values: Vec<E>,
}

impl<E> AugmentedInput<E> {
    pub fn original(&self) -> &[E] {
        &self.values[..self.vars]
    }

    pub fn appended(&self) -> &[E] {
        &self.values[self.vars..]
    }

    pub fn values(&self) -> &[E] {
        &self.values
    }

    pub fn into_values(self) -> Vec<E> {
        self.values
    }
}

/// `log |x_j|` per entry; zeros are logged as `log 1 = 0` and masked.
#[derive(Clone, Debug, PartialEq)]
pub struct LogarithmicInput {
    pub logs: Vec<f64>,
    pub negative: Vec<bool>,
    pub zero: Vec<bool>,
}

impl LogarithmicInput {
    pub fn from_values(x: &[f64]) -> Self {
        Self {
            logs: x
                .iter()
                .map(|&v| if v == 0.0 { 0.0 } else { v.abs().ln() })
                .collect(),
            negative: x.iter().map(|&v| v < 0.0).collect(),
            zero: x.iter().map(|&v| v == 0.0).collect(),
        }
    }

    /// Sign and zero-ness of `prod x_j^e_j`: `None` when the product is 0.
    pub fn monomial_sign(&self, exps: &[u32]) -> Option<f64> {
        let mut neg = false;
        for (j, &e) in exps.iter().enumerate() {
            if e == 0 {
                continue;
            }
            if self.zero[j] {
                return None;
            }
            neg ^= self.negative[j] && e % 2 == 1;
        }
        Some(if neg { -1.0 } else { 1.0 })
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::field::{Field, SmallPrime};
    use proptest::prelude::*;

    fn worked_example() -> MultivariatePolynomial {
        MultivariatePolynomial::from_int_terms(3, &[(1, &[5, 3, 0]), (1, &[0, 1, 3]), (2, &[0, 0, 0])])
            .unwrap()
    }

    #[test]
    fn merge_and_drop_zero() {
        let p = MultivariatePolynomial::from_int_terms(2, &[(2, &[1, 0]), (-2, &[1, 0]), (3, &[0, 1])])
            .unwrap();
        assert_eq!(p.term_count(), 1);
        assert_eq!(p.degree(), 1);
        assert!(matches!(
            MultivariatePolynomial::from_int_terms(2, &[(1, &[1])]),
            Err(PolyError::Arity { .. })
        ));
    }

    #[test]
    fn display() {
        assert_eq!(worked_example().to_string(), "2 + x2*x3^3 + x1^5*x2^3");
    }

    #[test]
    fn augmentation_layout_q2() {
        let aug = Augmentation::new(3, 2).unwrap();
        assert_eq!(aug.len(), 9);
        let y: Vec<&[u32]> = aug.slots()[3..].iter().map(|e| e.as_slice()).collect();
        assert_eq!(
            y,
            vec![
                &[2, 0, 0][..],
                &[0, 2, 0],
                &[0, 0, 2],
                &[1, 1, 0],
                &[1, 0, 1],
                &[0, 1, 1]
            ]
        );
    }

    #[test]
    fn worked_example_rewrite() {
        let f = worked_example();
        let aug = Augmentation::new(3, 2).unwrap();
        let h = aug.rewrite(&f).unwrap();
        assert_eq!(h.degree(), 4);
        assert_eq!(augmented_degree(f.degree(), 2), 4);
        // y_i is augmented slot 3 + (i - 1).
        let y = |i: usize| 3 + i - 1;
        let mut a = vec![0u32; 9];
        a[y(1)] = 2;
        a[y(2)] = 1;
        a[y(4)] = 1;
        let mut b = vec![0u32; 9];
        b[y(3)] = 1;
        b[y(6)] = 1;
        let want = MultivariatePolynomial::from_int_terms(9, &[(1, &a), (1, &b), (2, &[0; 9])]).unwrap();
        assert_eq!(h, want);
    }

    #[test]
    fn large_q_collapses_to_linear() {
        let f = worked_example();
        let aug = Augmentation::new(3, 8).unwrap();
        assert_eq!(aug.rewrite(&f).unwrap().degree(), 1);
        assert_eq!(augmented_degree(8, 8), 1);
        assert_eq!(augmented_degree(8, 9), 1);
        assert_eq!(augmented_degree(8, 3), 3);
        assert_eq!(augmented_degree(0, 2), 0);
    }

    #[test]
    fn coefficient_parsing() {
        let r = |s: &str| CoeffSpec::Text(s.into()).parse();
        assert_eq!(r("5/2").unwrap(), BigRational::new(5.into(), 2.into()));
        assert_eq!(r(" -3 ").unwrap(), BigRational::from_integer((-3).into()));
        assert!(r("1/0").is_err());
        assert!(r("x").is_err());
        let spec: PolynomialSpec =
            serde_json::from_str(r#"{"vars":2,"terms":[{"coeff":"1/3","exponents":[1,1]},{"coeff":4,"exponents":[0,0]}]}"#)
                .unwrap();
        let p = spec.build().unwrap();
        assert_eq!(p.term_count(), 2);
        assert_eq!(p.to_spec().build().unwrap(), p);
        assert!(serde_json::from_str::<PolynomialSpec>(r#"{"vars":1,"terms":[],"x":1}"#).is_err());
    }

    #[test]
    fn field_evaluation_with_rational_coefficients() {
        let f = SmallPrime::new(101).unwrap();
        let p = PolynomialSpec {
            vars: 1,
            terms: vec![TermSpec {
                coeff: CoeffSpec::Text("1/2".into()),
                exponents: vec![2],
            }],
        }
        .build()
        .unwrap();
        let c = p.field_coefficients(&f).unwrap();
        // (1/2) * 4 = 2
        assert_eq!(p.eval_field(&f, &c, &[2]), 2);
        let bad = SmallPrime::new(2).unwrap();
        assert!(p.field_coefficients(&bad).is_err());
    }

    #[test]
    fn log_input_signs() {
        let li = LogarithmicInput::from_values(&[-2.0, 0.0, 0.5]);
        assert!((li.logs[0].exp() - 2.0).abs() < 1e-12);
        assert_eq!(li.logs[1], 0.0);
        assert_eq!(li.monomial_sign(&[1, 0, 1]), Some(-1.0));
        assert_eq!(li.monomial_sign(&[2, 0, 1]), Some(1.0));
        assert_eq!(li.monomial_sign(&[1, 1, 0]), None);
    }

    fn rational() -> impl Strategy<Value = BigRational> {
        (-50i64..50, 1i64..20).prop_map(|(n, d)| BigRational::new(n.into(), d.into()))
    }

    proptest! {
        #[test]
        fn rewrite_round_trip(
            terms in proptest::collection::vec((rational(), proptest::collection::vec(0u32..4, 3)), 1..6),
            q in 1usize..4,
            x in proptest::collection::vec(rational(), 3),
        ) {
            let f = MultivariatePolynomial::new(
                3,
                terms.into_iter().map(|(coeff, exps)| Term { coeff, exps }).collect(),
            ).unwrap();
            let aug = Augmentation::new(3, q).unwrap();
            let h = aug.rewrite(&f).unwrap();
            prop_assert_eq!(h.degree(), augmented_degree(f.degree(), q));
            prop_assert_eq!(h.eval_rational(&aug.augment_rational(&x)), f.eval_rational(&x));
        }

        #[test]
        fn augmented_slots_are_products(x in proptest::collection::vec(0u64..1000, 4)) {
            let f = SmallPrime::new(1_000_003).unwrap();
            let aug = Augmentation::new(4, 3).unwrap();
            let a = aug.augment(&f, &x);
            prop_assert_eq!(a.original(), x.as_slice());
            for (slot, e) in aug.slots().iter().enumerate() {
                let want = e.iter().zip(&x).fold(1u64, |acc, (&k, &v)| {
                    (0..k).fold(acc, |a, _| f.mul(&a, &v))
                });
                prop_assert_eq!(a.values()[slot], want);
            }
        }
    }
}
