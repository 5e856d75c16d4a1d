//! Baseline: Lagrange coded computing applied directly to the ANF, viewed
//! as a polynomial over GF(2^s) so that XOR is field addition.

use rand::{Rng, RngCore};

use super::{
    check_inputs, plant, stream_of, CodedScheme, Responses, SchemeError, SchemeKind, Threshold,
    ThresholdParams,
};
use crate::boolfn::{anf_from_truth_table, bits_to_index, AnfForm, BooleanFunction};
use crate::codes::LagrangeCode;
use crate::field::{Field, FieldSpec, Gf2m};

#[derive(Clone, Debug)]
pub struct LccDirectScheme {
    function: BooleanFunction,
    anf: AnfForm,
    code: LagrangeCode<Gf2m>,
}

impl LccDirectScheme {
    /// Smallest GF(2^s) with `2^s >= N + K + 1` unless overridden.
    pub fn new(f: &BooleanFunction, n: usize, k: usize, field: Option<&FieldSpec>) -> Result<Self, SchemeError> {
        if k == 0 || n < k {
            return Err(SchemeError::Dimensions { n, k });
        }
        let field = match field {
            None => Gf2m::for_points(n + k)?,
            Some(FieldSpec::BinaryExtension { degree, poly }) => Gf2m::with_poly(*degree, *poly)?,
            Some(FieldSpec::Prime { .. }) => {
                return Err(SchemeError::FieldKind {
                    scheme: SchemeKind::LccDirect,
                })
            }
        };
        Ok(Self {
            function: f.clone(),
            anf: anf_from_truth_table(f),
            code: LagrangeCode::lcc(field, n, k)?,
        })
    }

    pub fn degree(&self) -> usize {
        self.anf.degree()
    }

    pub fn anf(&self) -> &AnfForm {
        &self.anf
    }
}

impl CodedScheme for LccDirectScheme {
    type F = Gf2m;
    type Input = Vec<bool>;
    type Output = bool;
    type State = ();

    fn kind(&self) -> SchemeKind {
        SchemeKind::LccDirect
    }
    fn n(&self) -> usize {
        self.code.n()
    }
    fn k(&self) -> usize {
        self.code.k()
    }
    fn field(&self) -> &Gf2m {
        self.code.field()
    }
    fn threshold(&self) -> Threshold {
        let params = ThresholdParams {
            degree: Some(self.degree()),
            ..ThresholdParams::new(self.n(), self.k())
        };
        super::security_threshold(SchemeKind::LccDirect, &params).expect("dimensions checked")
    }
    fn streams(&self) -> usize {
        1
    }

    fn encode(&self, inputs: &[Vec<bool>]) -> Result<(Vec<Vec<u64>>, ()), SchemeError> {
        check_inputs(inputs.len(), self.k())?;
        let data: Vec<Vec<u64>> = inputs
            .iter()
            .map(|x| x.iter().map(|&b| b as u64).collect())
            .collect();
        Ok((self.code.encode_vectors(&data)?, ()))
    }

    fn compute(&self, share: &[u64]) -> Vec<u64> {
        let field = self.field();
        let value = self.anf.monomials().iter().fold(field.zero(), |acc, mono| {
            let term = mono
                .vars()
                .iter()
                .fold(field.one(), |p, &j| field.mul(&p, &share[j - 1]));
            field.add(&acc, &term)
        });
        vec![value]
    }

    fn decode(&self, received: &Responses<u64>, _: &()) -> Result<Vec<bool>, SchemeError> {
        let values = self
            .code
            .lcc_decode(&stream_of(received, 0), self.degree())
            .map_err(|source| SchemeError::Decode { stream: 0, source })?;
        Ok(values.iter().map(|&v| v != 0).collect())
    }

    fn evaluate_direct(&self, input: &Vec<bool>) -> bool {
        self.function.value_at(bits_to_index(input))
    }

    fn random_input(&self, mut rng: &mut dyn RngCore) -> Vec<bool> {
        (0..self.function.vars()).map(|_| (&mut rng).gen()).collect()
    }

    fn forge(&self, _: &[Vec<bool>], payloads: &mut [Vec<u64>], bad: &[usize]) -> bool {
        let degree = (self.k() - 1) * self.degree();
        plant(&self.code, payloads, bad, 0, degree, &1)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::boolfn::index_to_bits;

    #[test]
    fn and3_n10_k2_three_errors() {
        let f = BooleanFunction::from_support(3, &[7]).unwrap();
        let s = LccDirectScheme::new(&f, 10, 2, None).unwrap();
        assert_eq!(s.degree(), 3);
        assert_eq!(s.threshold().beta, 3);
        assert_eq!(s.field().degree(), 4);
        for a in 0..8 {
            for b in 0..8 {
                let inputs = vec![index_to_bits(a, 3), index_to_bits(b, 3)];
                let (shares, ()) = s.encode(&inputs).unwrap();
                let mut r: Vec<_> = shares.iter().map(|sh| Some(s.compute(sh))).collect();
                for w in [0, 4, 9] {
                    r[w] = Some(vec![(a * 3 + b + w) as u64 % 16]);
                }
                assert_eq!(s.decode(&r, &()).unwrap(), vec![a == 7, b == 7]);
            }
        }
    }

    #[test]
    fn linear_function_matches_mds_threshold() {
        let xor = BooleanFunction::from_anf(3, &[vec![1], vec![3]]).unwrap();
        let s = LccDirectScheme::new(&xor, 12, 4, None).unwrap();
        assert_eq!(s.threshold().beta, (12 - 4) / 2);
    }

    #[test]
    fn infeasible_flagged() {
        let f = BooleanFunction::from_support(3, &[7]).unwrap();
        let s = LccDirectScheme::new(&f, 6, 3, None).unwrap();
        assert!(!s.threshold().feasible);
    }

    #[test]
    fn prime_override_rejected() {
        let f = BooleanFunction::from_support(2, &[3]).unwrap();
        let spec = FieldSpec::Prime { modulus: "101".into() };
        assert!(matches!(
            LccDirectScheme::new(&f, 5, 2, Some(&spec)),
            Err(SchemeError::FieldKind { .. })
        ));
    }
}
