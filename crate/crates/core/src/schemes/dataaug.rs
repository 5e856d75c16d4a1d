//! Coded data augmentation: append all monomials of degree `2..=q` to each
//! input so that `f` becomes a lower-degree `h` over the augmented vector,
//! then run Lagrange coded computing on `h`.

use rand::RngCore;

use super::{
    check_inputs, plant, stream_of, CodedScheme, Responses, SchemeError, SchemeKind, Threshold,
    ThresholdParams,
};
use crate::codes::LagrangeCode;
use crate::field::PrimeField;
use crate::multipoly::{Augmentation, MultivariatePolynomial, PolyError};

#[derive(Clone, Debug)]
pub struct DataAugScheme<F: PrimeField> {
    f: MultivariatePolynomial,
    f_coeffs: Vec<F::Elem>,
    aug: Augmentation,
    h: MultivariatePolynomial,
    h_coeffs: Vec<F::Elem>,
    code: LagrangeCode<F>,
}

impl<F: PrimeField> DataAugScheme<F> {
    pub fn new(f: &MultivariatePolynomial, q: usize, field: F, n: usize, k: usize) -> Result<Self, SchemeError> {
        if k == 0 || n < k {
            return Err(SchemeError::Dimensions { n, k });
        }
        let aug = Augmentation::new(f.vars(), q).map_err(|e| match e {
            PolyError::ZeroQ => SchemeError::ZeroQ,
            e => e.into(),
        })?;
        let h = aug.rewrite(f)?;
        Ok(Self {
            f_coeffs: f.field_coefficients(&field)?,
            h_coeffs: h.field_coefficients(&field)?,
            f: f.clone(),
            aug,
            h,
            code: LagrangeCode::lcc(field, n, k)?,
        })
    }

    pub fn augmentation(&self) -> &Augmentation {
        &self.aug
    }

    /// The rewritten polynomial over augmented variables.
    pub fn rewritten(&self) -> &MultivariatePolynomial {
        &self.h
    }

    pub fn degree(&self) -> usize {
        self.h.degree()
    }
}

impl<F: PrimeField> CodedScheme for DataAugScheme<F> {
    type F = F;
    type Input = Vec<F::Elem>;
    type Output = F::Elem;
    type State = ();

    fn kind(&self) -> SchemeKind {
        SchemeKind::DataAug
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
            degree: Some(self.f.degree()),
            q: Some(self.aug.q()),
            ..ThresholdParams::new(self.n(), self.k())
        };
        super::security_threshold(SchemeKind::DataAug, &params).expect("validated at construction")
    }
    fn streams(&self) -> usize {
        1
    }

    fn encode(&self, inputs: &[Vec<F::Elem>]) -> Result<(Vec<Vec<F::Elem>>, ()), SchemeError> {
        check_inputs(inputs.len(), self.k())?;
        let field = self.field();
        let data = inputs
            .iter()
            .map(|x| {
                if x.len() != self.f.vars() {
                    return Err(PolyError::InputLength {
                        expected: self.f.vars(),
                        got: x.len(),
                    });
                }
                Ok(self.aug.augment(field, x).into_values())
            })
            .collect::<Result<Vec<_>, _>>()?;
        Ok((self.code.encode_vectors(&data)?, ()))
    }

    fn compute(&self, share: &[F::Elem]) -> Vec<F::Elem> {
        vec![self.h.eval_field(self.field(), &self.h_coeffs, share)]
    }

    fn decode(&self, received: &Responses<F::Elem>, _: &()) -> Result<Vec<F::Elem>, SchemeError> {
        self.code
            .lcc_decode(&stream_of(received, 0), self.degree())
            .map_err(|source| SchemeError::Decode { stream: 0, source })
    }

    fn evaluate_direct(&self, input: &Vec<F::Elem>) -> F::Elem {
        self.f.eval_field(self.field(), &self.f_coeffs, input)
    }

    fn random_input(&self, rng: &mut dyn RngCore) -> Vec<F::Elem> {
        (0..self.f.vars()).map(|_| self.field().random(rng)).collect()
    }

    fn forge(&self, _: &[Vec<F::Elem>], payloads: &mut [Vec<F::Elem>], bad: &[usize]) -> bool {
        let degree = (self.k() - 1) * self.degree();
        plant(&self.code, payloads, bad, 0, degree, &self.field().one())
    }
}
