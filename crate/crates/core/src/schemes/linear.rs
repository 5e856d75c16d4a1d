//! Coded ANF and coded DNF: MDS-encoded bits, one LTF payload per monomial
//! or clause, sign after decoding, XOR or OR at the master.

use num_bigint::BigUint;
use rand::{Rng, RngCore};

use super::{
    check_inputs, lift_i64, plant, prime_backend, stream_of, CodedScheme, Responses, SchemeError,
    SchemeKind, Threshold, ThresholdParams,
};
use crate::boolfn::{anf_from_truth_table, bits_to_index, dnf_from_truth_table, BooleanFunction};
use crate::codes::LagrangeCode;
use crate::field::{Field, FieldSpec, PrimeBackend, PrimeField, SmallPrime};
use crate::threshold::LinearThresholdFunction;

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
enum Combine {
    /// XOR of monomial bits, plus the constant monomial if present.
    Xor { constant: bool },
    Or,
}

#[derive(Clone, Debug)]
pub struct LinearScheme {
    kind: SchemeKind,
    function: BooleanFunction,
    code: LagrangeCode<SmallPrime>,
    ltfs: Vec<LinearThresholdFunction>,
    combine: Combine,
}

impl LinearScheme {
    /// One stream per non-constant ANF monomial.
    pub fn anf(f: &BooleanFunction, n: usize, k: usize, field: Option<&FieldSpec>) -> Result<Self, SchemeError> {
        let m = f.vars();
        let anf = anf_from_truth_table(f);
        let ltfs = anf
            .monomials()
            .iter()
            .filter(|mono| mono.degree() > 0)
            .map(|&mono| LinearThresholdFunction::for_monomial(mono, m))
            .collect();
        let constant = anf.monomials().iter().any(|mono| mono.degree() == 0);
        Self::build(SchemeKind::Anf, f, n, k, field, ltfs, Combine::Xor { constant })
    }

    /// One stream per support vector.
    pub fn dnf(f: &BooleanFunction, n: usize, k: usize, field: Option<&FieldSpec>) -> Result<Self, SchemeError> {
        let m = f.vars();
        let ltfs = dnf_from_truth_table(f)
            .indices()
            .iter()
            .map(|&y| LinearThresholdFunction::for_clause_index(y, m))
            .collect();
        Self::build(SchemeKind::Dnf, f, n, k, field, ltfs, Combine::Or)
    }

    fn build(
        kind: SchemeKind,
        f: &BooleanFunction,
        n: usize,
        k: usize,
        field: Option<&FieldSpec>,
        ltfs: Vec<LinearThresholdFunction>,
        combine: Combine,
    ) -> Result<Self, SchemeError> {
        if k == 0 || n < k {
            return Err(SchemeError::Dimensions { n, k });
        }
        // |2L| <= 2m for both monomial and clause LTFs.
        let bound = BigUint::from(2 * f.vars() as u64 + 1);
        let field = match prime_backend(&bound, n, field, kind)? {
            PrimeBackend::Small(f) => f,
            PrimeBackend::Big(_) => return Err(SchemeError::FieldBackend { scheme: kind }),
        };
        Ok(Self {
            kind,
            function: f.clone(),
            code: LagrangeCode::mds(field, n, k)?,
            ltfs,
            combine,
        })
    }

    pub fn function(&self) -> &BooleanFunction {
        &self.function
    }

    pub fn ltfs(&self) -> &[LinearThresholdFunction] {
        &self.ltfs
    }

    pub fn code(&self) -> &LagrangeCode<SmallPrime> {
        &self.code
    }

    fn combine(&self, bits: impl Iterator<Item = bool>) -> bool {
        match self.combine {
            Combine::Xor { constant } => bits.fold(constant, |a, b| a ^ b),
            Combine::Or => bits.fold(false, |a, b| a | b),
        }
    }
}

impl CodedScheme for LinearScheme {
    type F = SmallPrime;
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
    fn field(&self) -> &SmallPrime {
        self.code.field()
    }
    fn threshold(&self) -> Threshold {
        super::security_threshold(self.kind, &ThresholdParams::new(self.n(), self.k()))
            .expect("dimensions checked at construction")
    }
    fn streams(&self) -> usize {
        self.ltfs.len()
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
        self.ltfs.iter().map(|l| l.linear2_in(field, share)).collect()
    }

    fn decode(&self, received: &Responses<u64>, _: &()) -> Result<Vec<bool>, SchemeError> {
        let field = self.field();
        let mut fired = vec![Vec::with_capacity(self.ltfs.len()); self.k()];
        for (s, ltf) in self.ltfs.iter().enumerate() {
            let values = self
                .code
                .rs_decode(&stream_of(received, s), self.k() - 1)
                .map_err(|source| SchemeError::Decode { stream: s, source })?;
            for (k, v) in values.iter().enumerate() {
                fired[k].push(ltf.fires_on_linear2(lift_i64(&field.lift_signed(v))));
            }
        }
        Ok(fired.into_iter().map(|bits| self.combine(bits.into_iter())).collect())
    }

    fn evaluate_direct(&self, input: &Vec<bool>) -> bool {
        self.function.value_at(bits_to_index(input))
    }

    fn random_input(&self, mut rng: &mut dyn RngCore) -> Vec<bool> {
        (0..self.function.vars()).map(|_| (&mut rng).gen()).collect()
    }

    fn forge(&self, inputs: &[Vec<bool>], payloads: &mut [Vec<u64>], bad: &[usize]) -> bool {
        if self.ltfs.is_empty() {
            return false;
        }
        let x = bits_to_index(&inputs[0]);
        // XOR: flipping any monomial flips f. OR: flip the firing clause, or
        // make the first one fire.
        let s = match self.combine {
            Combine::Xor { .. } => 0,
            Combine::Or => self.ltfs.iter().position(|l| l.fires_at(x)).unwrap_or(0),
        };
        let v = self.ltfs[s].value2_at(x);
        let delta = if v > 0 { -2 } else { 1 - v };
        let delta = self.field().from_i64(delta);
        plant(&self.code, payloads, bad, s, self.k() - 1, &delta)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::boolfn::index_to_bits;
    use rand::SeedableRng;
    use rand_chacha::ChaCha8Rng;

    fn and3() -> BooleanFunction {
        BooleanFunction::from_support(3, &[7]).unwrap()
    }

    fn honest(s: &LinearScheme, inputs: &[Vec<bool>]) -> Vec<Option<Vec<u64>>> {
        let (shares, ()) = s.encode(inputs).unwrap();
        shares.iter().map(|sh| Some(s.compute(sh))).collect()
    }

    #[test]
    fn and3_single_sample_one_error() {
        let s = LinearScheme::anf(&and3(), 3, 1, None).unwrap();
        assert_eq!(s.threshold().beta, 1);
        for x in 0..8 {
            let input = vec![index_to_bits(x, 3)];
            for bad in 0..3 {
                let mut r = honest(&s, &input);
                r[bad] = Some(vec![5]);
                assert_eq!(s.decode(&r, &()).unwrap(), vec![x == 7]);
            }
        }
    }

    #[test]
    fn anf_random_corruptions_n6_k2() {
        let f = BooleanFunction::from_anf(4, &[vec![1, 2], vec![3], vec![]]).unwrap();
        let s = LinearScheme::anf(&f, 6, 2, None).unwrap();
        assert_eq!(s.streams(), 2);
        let mut rng = ChaCha8Rng::seed_from_u64(7);
        for _ in 0..500 {
            let inputs: Vec<_> = (0..2).map(|_| s.random_input(&mut rng)).collect();
            let mut r = honest(&s, &inputs);
            let bad = rand::seq::index::sample(&mut rng, 6, 2);
            for w in bad.iter() {
                r[w] = Some((0..2).map(|_| s.field().random(&mut rng)).collect());
            }
            let want: Vec<bool> = inputs.iter().map(|x| s.evaluate_direct(x)).collect();
            assert_eq!(s.decode(&r, &()).unwrap(), want);
        }
    }

    #[test]
    fn two_point_support_n8_k2_three_errors() {
        let f = BooleanFunction::from_support(4, &[0, 15]).unwrap();
        let s = LinearScheme::dnf(&f, 8, 2, None).unwrap();
        assert_eq!(s.threshold().beta, 3);
        for a in 0..16 {
            for b in [0usize, 15, 6] {
                let inputs = vec![index_to_bits(a, 4), index_to_bits(b, 4)];
                let mut r = honest(&s, &inputs);
                for w in [1, 4, 7] {
                    r[w] = Some(vec![3, 9]);
                }
                let got = s.decode(&r, &()).unwrap();
                assert_eq!(got, vec![f.value_at(a), f.value_at(b)]);
            }
        }
    }

    #[test]
    fn constant_zero_dnf_has_no_streams() {
        let zero = BooleanFunction::from_support(3, &[]).unwrap();
        let s = LinearScheme::dnf(&zero, 5, 2, None).unwrap();
        assert_eq!(s.streams(), 0);
        assert_eq!(s.decode(&vec![None; 5], &()).unwrap(), vec![false, false]);
        let one = BooleanFunction::from_fn(2, |_| true).unwrap();
        let s = LinearScheme::anf(&one, 5, 2, None).unwrap();
        assert_eq!(s.streams(), 0);
        assert_eq!(s.decode(&vec![None; 5], &()).unwrap(), vec![true, true]);
    }

    #[test]
    fn forged_codeword_flips_output_beyond_threshold() {
        let f = BooleanFunction::from_support(4, &[0, 15]).unwrap();
        for s in [
            LinearScheme::dnf(&f, 10, 4, None).unwrap(),
            LinearScheme::anf(&f, 10, 4, None).unwrap(),
        ] {
            let beta = s.threshold().beta;
            let inputs: Vec<_> = [0usize, 3, 15, 9].iter().map(|&i| index_to_bits(i, 4)).collect();
            let (shares, ()) = s.encode(&inputs).unwrap();
            let mut payloads: Vec<_> = shares.iter().map(|sh| s.compute(sh)).collect();
            let bad: Vec<usize> = (0..=beta).collect();
            assert!(s.forge(&inputs, &mut payloads, &bad));
            let r: Vec<_> = payloads.into_iter().map(Some).collect();
            let got = s.decode(&r, &()).unwrap();
            assert_ne!(got[0], f.value_at(0), "{:?}", s.kind());
        }
    }

    #[test]
    fn field_override_checked() {
        let f = and3();
        let small = FieldSpec::Prime { modulus: "7".into() };
        assert!(matches!(
            LinearScheme::anf(&f, 5, 2, Some(&small)),
            Err(SchemeError::FieldTooSmall { .. })
        ));
        let big = FieldSpec::Prime { modulus: "101".into() };
        assert_eq!(LinearScheme::anf(&f, 5, 2, Some(&big)).unwrap().field().p(), 101);
        let composite = FieldSpec::Prime { modulus: "100".into() };
        assert!(LinearScheme::anf(&f, 5, 2, Some(&composite)).is_err());
    }
}
