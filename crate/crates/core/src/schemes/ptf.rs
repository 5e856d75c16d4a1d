//! Coded PTF and coded D-partitioned PTF: Lagrange-encoded bits, one
//! `2P(X)` payload per support group, OR of the decoded signs.

use num_bigint::{BigInt, BigUint};
use num_traits::Zero;
use rand::{Rng, RngCore};

use super::{
    check_inputs, plant, stream_of, CodedScheme, Responses, SchemeError, SchemeKind, Threshold,
    ThresholdParams,
};
use crate::boolfn::{bits_to_index, dnf_from_truth_table, BooleanFunction};
use crate::codes::LagrangeCode;
use crate::field::PrimeField;
use crate::threshold::{partition_dnf, ptf_for_support, PolynomialThresholdFunction, PtfEvaluator};

/// PTFs for each group of a partitioned support; `D = 1` is plain coded PTF.
pub fn build_groups(f: &BooleanFunction, d: usize) -> Result<Vec<PolynomialThresholdFunction>, SchemeError> {
    let supp = dnf_from_truth_table(f);
    if supp.is_empty() {
        return Err(SchemeError::ZeroWeight);
    }
    partition_dnf(&supp, d)?
        .iter()
        .map(|g| ptf_for_support(g).map_err(SchemeError::from))
        .collect()
}

/// Field must hold every `|2P(X)|` for its signed lift.
pub fn magnitude_bound(groups: &[PolynomialThresholdFunction]) -> BigUint {
    groups
        .iter()
        .map(PolynomialThresholdFunction::magnitude_bound)
        .max()
        .unwrap_or_else(BigUint::zero)
}

#[derive(Clone, Debug)]
pub struct PtfScheme<F: PrimeField> {
    kind: SchemeKind,
    function: BooleanFunction,
    code: LagrangeCode<F>,
    groups: Vec<PtfEvaluator<F>>,
}

impl<F: PrimeField> PtfScheme<F> {
    pub fn new(
        kind: SchemeKind,
        f: &BooleanFunction,
        groups: &[PolynomialThresholdFunction],
        field: F,
        n: usize,
        k: usize,
    ) -> Result<Self, SchemeError> {
        Ok(Self {
            kind,
            function: f.clone(),
            groups: groups.iter().map(|g| g.evaluator(&field)).collect(),
            code: LagrangeCode::lcc(field, n, k)?,
        })
    }

    pub fn function(&self) -> &BooleanFunction {
        &self.function
    }

    pub fn partitions(&self) -> usize {
        self.groups.len()
    }

    /// Constructed degree of each group's PTF.
    pub fn degrees(&self) -> Vec<usize> {
        self.groups.iter().map(|g| g.ptf().degree()).collect()
    }

    pub fn ptfs(&self) -> impl Iterator<Item = &PolynomialThresholdFunction> {
        self.groups.iter().map(PtfEvaluator::ptf)
    }
}

impl<F: PrimeField> CodedScheme for PtfScheme<F> {
    type F = F;
    type Input = Vec<bool>;
    type Output = bool;
    type State = ();

    fn kind(&self) -> SchemeKind {
        self.kind
    }
    fn n(&self) -> usize {
        self.code.n()
    }
    fn k(&self) -> usize {
        self.code.k()
    }
    fn field(&self) -> &F {
        self.code.field()
    }
    fn threshold(&self) -> Threshold {
        let params = ThresholdParams {
            weight: Some(self.function.weight()),
            d: Some(self.groups.len()),
            ..ThresholdParams::new(self.n(), self.k())
        };
        super::security_threshold(self.kind, &params).expect("validated at construction")
    }
    fn streams(&self) -> usize {
        self.groups.len()
    }

    fn encode(&self, inputs: &[Vec<bool>]) -> Result<(Vec<Vec<F::Elem>>, ()), SchemeError> {
        check_inputs(inputs.len(), self.k())?;
        let field = self.field();
        let data: Vec<Vec<F::Elem>> = inputs
            .iter()
            .map(|x| x.iter().map(|&b| field.from_u64(b as u64)).collect())
            .collect();
        Ok((self.code.encode_vectors(&data)?, ()))
    }

    fn compute(&self, share: &[F::Elem]) -> Vec<F::Elem> {
        self.groups.iter().map(|g| g.value2(share)).collect()
    }

    fn decode(&self, received: &Responses<F::Elem>, _: &()) -> Result<Vec<bool>, SchemeError> {
        let field = self.field();
        let mut out = vec![false; self.k()];
        for (s, g) in self.groups.iter().enumerate() {
            let values = self
                .code
                .lcc_decode(&stream_of(received, s), g.ptf().degree())
                .map_err(|source| SchemeError::Decode { stream: s, source })?;
            for (o, v) in out.iter_mut().zip(&values) {
                *o |= field.lift_signed(v) > BigInt::zero();
            }
        }
        Ok(out)
    }

    fn evaluate_direct(&self, input: &Vec<bool>) -> bool {
        self.function.value_at(bits_to_index(input))
    }

    fn random_input(&self, mut rng: &mut dyn RngCore) -> Vec<bool> {
        (0..self.function.vars()).map(|_| (&mut rng).gen()).collect()
    }

    fn forge(&self, inputs: &[Vec<bool>], payloads: &mut [Vec<F::Elem>], bad: &[usize]) -> bool {
        let x = bits_to_index(&inputs[0]);
        // Groups have disjoint supports, so at most one fires.
        let s = self.groups.iter().position(|g| g.ptf().fires_at(x)).unwrap_or(0);
        let ptf = self.groups[s].ptf();
        let v = ptf.value2_at(x);
        let delta = if v > BigInt::zero() { -v } else { BigInt::from(1) - v };
        let delta = self.field().from_bigint(&delta);
        let degree = (self.k() - 1) * ptf.degree();
        plant(&self.code, payloads, bad, s, degree, &delta)
    }
}
