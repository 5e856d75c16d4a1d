//! Coded data logarithm: every monomial becomes a linear form in
//! `W = log|X|`, so an MDS code over the reals suffices. The master keeps
//! sign and zero masks to restore each monomial after exponentiation.

use num_rational::BigRational;
use num_traits::{One, ToPrimitive};
use rand::{Rng, RngCore};

use super::{
    check_inputs, plant, stream_of, CodedScheme, Responses, SchemeError, SchemeKind, Threshold,
    ThresholdParams,
};
use crate::codes::{LagrangeCode, DEFAULT_REAL_TOLERANCE};
use crate::field::RealField;
use crate::multipoly::{Exponents, LogarithmicInput, MultivariatePolynomial, PolyError, Term};

/// Largest `sum e_j |W_j|` accepted; `exp` overflows past ~709.
pub const DATALOG_EXP_LIMIT: f64 = 700.0;
/// Relative output tolerance.
pub const DATALOG_TOLERANCE: f64 = 1e-6;

/// One output polynomial per coordinate; monomials shared between outputs
/// travel in a single stream.
#[derive(Clone, Debug)]
pub struct DataLogScheme {
    outputs: Vec<MultivariatePolynomial>,
    code: LagrangeCode<RealField>,
    streams: Vec<Exponents>,
    /// `(stream, coefficient)` per output.
    combos: Vec<Vec<(usize, f64)>>,
    constants: Vec<f64>,
}

fn to_f64(c: &BigRational) -> f64 {
    c.to_f64().unwrap_or(f64::NAN)
}

impl DataLogScheme {
    pub fn new(outputs: &[MultivariatePolynomial], n: usize, k: usize) -> Result<Self, SchemeError> {
        if k == 0 || n < k {
            return Err(SchemeError::Dimensions { n, k });
        }
        let vars = outputs.first().map_or(0, MultivariatePolynomial::vars);
        if let Some(bad) = outputs.iter().find(|p| p.vars() != vars) {
            return Err(PolyError::InputLength {
                expected: vars,
                got: bad.vars(),
            }
            .into());
        }
        let mut streams: Vec<Exponents> = Vec::new();
        let mut combos = Vec::with_capacity(outputs.len());
        for p in outputs {
            let mut combo = Vec::new();
            for t in p.terms().iter().filter(|t| t.degree() > 0) {
                let s = match streams.iter().position(|e| *e == t.exps) {
                    Some(s) => s,
                    None => {
                        streams.push(t.exps.clone());
                        streams.len() - 1
                    }
                };
                combo.push((s, to_f64(&t.coeff)));
            }
            combos.push(combo);
        }
        Ok(Self {
            constants: outputs.iter().map(|p| to_f64(&p.constant())).collect(),
            outputs: outputs.to_vec(),
            code: LagrangeCode::mds(RealField, n, k)?,
            streams,
            combos,
        })
    }

    pub fn outputs(&self) -> &[MultivariatePolynomial] {
        &self.outputs
    }

    pub fn vars(&self) -> usize {
        self.outputs.first().map_or(0, MultivariatePolynomial::vars)
    }

    /// Distinct non-constant monomials, one payload stream each.
    pub fn monomials(&self) -> &[Exponents] {
        &self.streams
    }

    /// Sum of term magnitudes of output `o`, the scale for the relative
    /// tolerance.
    fn magnitude(&self, o: usize, x: &[f64]) -> f64 {
        self.constants[o].abs()
            + self.combos[o]
                .iter()
                .map(|&(s, c)| {
                    self.streams[s]
                        .iter()
                        .zip(x)
                        .fold(c.abs(), |acc, (&k, v)| acc * v.abs().powi(k as i32))
                })
                .sum::<f64>()
    }
}

impl CodedScheme for DataLogScheme {
    type F = RealField;
    type Input = Vec<f64>;
    type Output = Vec<f64>;
    type State = Vec<LogarithmicInput>;

    fn kind(&self) -> SchemeKind {
        SchemeKind::DataLog
    }
    fn n(&self) -> usize {
        self.code.n()
    }
    fn k(&self) -> usize {
        self.code.k()
    }
    fn field(&self) -> &RealField {
        self.code.field()
    }
    fn threshold(&self) -> Threshold {
        super::security_threshold(SchemeKind::DataLog, &ThresholdParams::new(self.n(), self.k()))
            .expect("dimensions checked")
    }
    fn streams(&self) -> usize {
        self.streams.len()
    }

    fn encode(&self, inputs: &[Vec<f64>]) -> Result<(Vec<Vec<f64>>, Vec<LogarithmicInput>), SchemeError> {
        check_inputs(inputs.len(), self.k())?;
        let logs: Vec<LogarithmicInput> = inputs
            .iter()
            .map(|x| {
                if x.len() != self.vars() {
                    return Err(PolyError::InputLength {
                        expected: self.vars(),
                        got: x.len(),
                    });
                }
                Ok(LogarithmicInput::from_values(x))
            })
            .collect::<Result<_, _>>()?;
        for li in &logs {
            for e in &self.streams {
                let sum: f64 = e.iter().zip(&li.logs).map(|(&k, w)| k as f64 * w.abs()).sum();
                if !(sum <= DATALOG_EXP_LIMIT) {
                    return Err(PolyError::Overflow(sum).into());
                }
            }
        }
        let data: Vec<Vec<f64>> = logs.iter().map(|li| li.logs.clone()).collect();
        Ok((self.code.encode_vectors(&data)?, logs))
    }

    fn compute(&self, share: &[f64]) -> Vec<f64> {
        self.streams
            .iter()
            .map(|e| e.iter().zip(share).map(|(&k, w)| k as f64 * w).sum())
            .collect()
    }

    fn decode(&self, received: &Responses<f64>, logs: &Vec<LogarithmicInput>) -> Result<Vec<Vec<f64>>, SchemeError> {
        let beta = self.threshold().beta;
        // monos[k][s]: signed value of monomial s on sample k.
        let mut monos = vec![vec![0.0; self.streams.len()]; self.k()];
        for (s, e) in self.streams.iter().enumerate() {
            let values = self
                .code
                .consensus_decode(&stream_of(received, s), self.k() - 1, beta, DEFAULT_REAL_TOLERANCE)
                .map_err(|source| SchemeError::Consensus { stream: s, source })?;
            for ((m, v), li) in monos.iter_mut().zip(&values).zip(logs) {
                m[s] = li.monomial_sign(e).map_or(0.0, |sign| sign * v.exp());
            }
        }
        Ok(monos
            .iter()
            .map(|m| {
                self.combos
                    .iter()
                    .zip(&self.constants)
                    .map(|(combo, c0)| c0 + combo.iter().map(|&(s, c)| c * m[s]).sum::<f64>())
                    .collect()
            })
            .collect())
    }

    fn evaluate_direct(&self, input: &Vec<f64>) -> Vec<f64> {
        self.outputs.iter().map(|p| p.eval_f64(input)).collect()
    }

    /// Entries with magnitude in `[0.5, 2]` and random sign.
    fn random_input(&self, mut rng: &mut dyn RngCore) -> Vec<f64> {
        (0..self.vars())
            .map(|_| {
                let mag: f64 = (&mut rng).gen_range(0.5..=2.0);
                if (&mut rng).gen() {
                    -mag
                } else {
                    mag
                }
            })
            .collect()
    }

    fn outputs_match(&self, input: &Vec<f64>, got: &Vec<f64>, want: &Vec<f64>) -> bool {
        got.len() == want.len()
            && got.iter().zip(want).enumerate().all(|(o, (g, w))| {
                let scale = self.magnitude(o, input).max(w.abs()).max(f64::MIN_POSITIVE);
                (g - w).abs() <= DATALOG_TOLERANCE * scale
            })
    }

    fn forge(&self, _: &[Vec<f64>], payloads: &mut [Vec<f64>], bad: &[usize]) -> bool {
        !self.streams.is_empty() && plant(&self.code, payloads, bad, 0, self.k() - 1, &1.0)
    }
}

/// Entries of `X^2` for a `d x d` matrix `X` in row-major variables.
pub fn matrix_square(d: usize) -> Vec<MultivariatePolynomial> {
    let vars = d * d;
    let mut out = Vec::with_capacity(vars);
    for i in 0..d {
        for j in 0..d {
            let terms: Vec<Term> = (0..d)
                .map(|l| {
                    let mut exps = vec![0u32; vars];
                    exps[i * d + l] += 1;
                    exps[l * d + j] += 1;
                    Term {
                        coeff: BigRational::one(),
                        exps,
                    }
                })
                .collect();
            out.push(MultivariatePolynomial::new(vars, terms).expect("consistent arity"));
        }
    }
    out
}
