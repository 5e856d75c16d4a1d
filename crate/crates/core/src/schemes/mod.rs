//! Coded computation pipelines: encode at the master, compute at each
//! worker, decode at the master in the presence of Byzantine workers.

mod config;
mod dataaug;
mod datalog;
mod lcc;
mod linear;
mod ptf;

use std::fmt;

use num_bigint::{BigInt, BigUint};
use num_traits::{Signed, ToPrimitive};
use rand::RngCore;
use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::boolfn::{floor_log2, BoolFnError};
use crate::codes::{CodeError, ConsensusError, DecodeError, LagrangeCode, Received};
use crate::field::{next_prime, Field, FieldError, FieldSpec, PrimeBackend};
use crate::multipoly::{augmented_degree, PolyError};
use crate::threshold::ThresholdError;

pub use config::{AnyScheme, FunctionSpec, SchemeConfig, SchemeSummary, SchemeVisitor, DATA_AUG_DEFAULT_MODULUS};
pub use dataaug::DataAugScheme;
pub use datalog::{matrix_square, DataLogScheme, DATALOG_EXP_LIMIT, DATALOG_TOLERANCE};
pub use lcc::LccDirectScheme;
pub use linear::LinearScheme;
pub use ptf::PtfScheme;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum SchemeKind {
    LccDirect,
    Anf,
    Dnf,
    Ptf,
    DPtf,
    DataLog,
    DataAug,
}

impl SchemeKind {
    pub const ALL: [SchemeKind; 7] = [
        SchemeKind::LccDirect,
        SchemeKind::Anf,
        SchemeKind::Dnf,
        SchemeKind::Ptf,
        SchemeKind::DPtf,
        SchemeKind::DataLog,
        SchemeKind::DataAug,
    ];

    pub fn name(self) -> &'static str {
        match self {
            SchemeKind::LccDirect => "lcc-direct",
            SchemeKind::Anf => "anf",
            SchemeKind::Dnf => "dnf",
            SchemeKind::Ptf => "ptf",
            SchemeKind::DPtf => "d-ptf",
            SchemeKind::DataLog => "data-log",
            SchemeKind::DataAug => "data-aug",
        }
    }

    /// Boolean-function schemes take a truth table or ANF; the rest take a
    /// multivariate polynomial.
    pub fn is_boolean(self) -> bool {
        !matches!(self, SchemeKind::DataLog | SchemeKind::DataAug)
    }
}

impl fmt::Display for SchemeKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl std::str::FromStr for SchemeKind {
    type Err = SchemeError;

    fn from_str(s: &str) -> Result<Self, SchemeError> {
        SchemeKind::ALL
            .into_iter()
            .find(|k| k.name() == s)
            .ok_or_else(|| SchemeError::UnknownScheme(s.to_string()))
    }
}

#[derive(Debug, Error)]
pub enum SchemeError {
    #[error("unknown scheme {0:?}")]
    UnknownScheme(String),
    #[error("need 1 <= K <= N, got N={n}, K={k}")]
    Dimensions { n: usize, k: usize },
    #[error("{scheme} needs parameter {param}")]
    MissingParameter {
        scheme: SchemeKind,
        param: &'static str,
    },
    #[error("{scheme} does not take parameter {param}")]
    UnexpectedParameter {
        scheme: SchemeKind,
        param: &'static str,
    },
    #[error("weight w(f) must be positive")]
    ZeroWeight,
    #[error("partition count D={d} outside 1..={w}")]
    PartitionCount { d: usize, w: usize },
    #[error("augmentation degree q must be at least 1")]
    ZeroQ,
    #[error("{scheme} cannot take {given}")]
    FunctionKind { scheme: SchemeKind, given: &'static str },
    #[error("field override {modulus} too small: need more than {needed}")]
    FieldTooSmall { modulus: String, needed: String },
    #[error("{scheme} needs a prime field small enough for machine words")]
    FieldBackend { scheme: SchemeKind },
    #[error("{scheme} does not accept this field override")]
    FieldKind { scheme: SchemeKind },
    #[error("expected {expected} inputs, got {got}")]
    InputCount { expected: usize, got: usize },
    #[error("stream {stream}: {source}")]
    Decode {
        stream: usize,
        #[source]
        source: DecodeError,
    },
    #[error("stream {stream}: {source}")]
    Consensus {
        stream: usize,
        #[source]
        source: ConsensusError,
    },
    #[error(transparent)]
    Code(#[from] CodeError),
    #[error(transparent)]
    Field(#[from] FieldError),
    #[error(transparent)]
    BoolFn(#[from] BoolFnError),
    #[error(transparent)]
    Poly(#[from] PolyError),
    #[error(transparent)]
    Threshold(#[from] ThresholdError),
}

/// Closed-form security threshold. `feasible` is false when the formula's
/// numerator is negative; `beta` is then clamped to 0.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Threshold {
    pub beta: usize,
    pub feasible: bool,
}

impl Threshold {
    /// `floor((N - (K - 1) * degree - 1) / 2)`.
    pub fn from_degree(n: usize, k: usize, degree: usize) -> Self {
        let interior = n as i128 - ((k as i128 - 1) * degree as i128) - 1;
        if interior < 0 {
            Threshold {
                beta: 0,
                feasible: false,
            }
        } else {
            Threshold {
                beta: (interior / 2) as usize,
                feasible: true,
            }
        }
    }
}

/// Whatever the formula for a scheme consumes; unused fields are ignored.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, Serialize, Deserialize)]
pub struct ThresholdParams {
    pub n: usize,
    pub k: usize,
    /// `w(f)`, for PTF and D-PTF.
    pub weight: Option<usize>,
    /// Total degree of `f`, for LCC-direct and data augmentation.
    pub degree: Option<usize>,
    /// Partition count `D`.
    pub d: Option<usize>,
    /// Augmentation degree `q`.
    pub q: Option<usize>,
}

impl ThresholdParams {
    pub fn new(n: usize, k: usize) -> Self {
        Self {
            n,
            k,
            ..Self::default()
        }
    }
}

/// Worker polynomial degree that enters the formula for each scheme.
pub fn effective_degree(kind: SchemeKind, p: &ThresholdParams) -> Result<usize, SchemeError> {
    let need = |v: Option<usize>, param| v.ok_or(SchemeError::MissingParameter { scheme: kind, param });
    Ok(match kind {
        SchemeKind::Anf | SchemeKind::Dnf | SchemeKind::DataLog => 1,
        SchemeKind::LccDirect => need(p.degree, "degree")?,
        SchemeKind::Ptf => {
            let w = need(p.weight, "weight")?;
            if w == 0 {
                return Err(SchemeError::ZeroWeight);
            }
            floor_log2(w) + 1
        }
        SchemeKind::DPtf => {
            let w = need(p.weight, "weight")?;
            let d = need(p.d, "d")?;
            if w == 0 {
                return Err(SchemeError::ZeroWeight);
            }
            if d == 0 || d > w {
                return Err(SchemeError::PartitionCount { d, w });
            }
            // Largest group has ceil(w/D) clauses.
            floor_log2(w.div_ceil(d)) + 1
        }
        SchemeKind::DataAug => {
            let q = need(p.q, "q")?;
            if q == 0 {
                return Err(SchemeError::ZeroQ);
            }
            augmented_degree(need(p.degree, "degree")?, q)
        }
    })
}

pub fn security_threshold(kind: SchemeKind, p: &ThresholdParams) -> Result<Threshold, SchemeError> {
    if p.k == 0 || p.n < p.k {
        return Err(SchemeError::Dimensions { n: p.n, k: p.k });
    }
    Ok(Threshold::from_degree(p.n, p.k, effective_degree(kind, p)?))
}

/// No scheme tolerates more than `floor((N - K) / 2)` adversaries.
pub fn outer_bound(n: usize, k: usize) -> usize {
    n.saturating_sub(k) / 2
}

/// Payload vectors as they arrive at the master; `None` is an erasure.
pub type Responses<E> = [Option<Vec<E>>];

/// One coded scheme instance with its function and code fixed.
pub trait CodedScheme: Send + Sync {
    type F: Field;
    type Input: Clone + fmt::Debug + Send + Sync;
    type Output: Clone + fmt::Debug + PartialEq + Send + Sync;
    /// Side information the master keeps between encode and decode.
    type State: Send + Sync;

    fn kind(&self) -> SchemeKind;
    fn n(&self) -> usize;
    fn k(&self) -> usize;
    fn field(&self) -> &Self::F;
    fn threshold(&self) -> Threshold;
    /// Field elements per worker payload.
    fn streams(&self) -> usize;

    fn encode(
        &self,
        inputs: &[Self::Input],
    ) -> Result<(Vec<Vec<<Self::F as Field>::Elem>>, Self::State), SchemeError>;

    /// Worker computation on one share. Pure.
    fn compute(&self, share: &[<Self::F as Field>::Elem]) -> Vec<<Self::F as Field>::Elem>;

    fn decode(
        &self,
        received: &Responses<<Self::F as Field>::Elem>,
        state: &Self::State,
    ) -> Result<Vec<Self::Output>, SchemeError>;

    /// Oracle: the target function evaluated directly.
    fn evaluate_direct(&self, input: &Self::Input) -> Self::Output;

    fn random_input(&self, rng: &mut dyn RngCore) -> Self::Input;

    fn outputs_match(&self, _input: &Self::Input, got: &Self::Output, want: &Self::Output) -> bool {
        got == want
    }

    /// Worst-case adversary with full knowledge: rewrites the payloads of
    /// `bad` workers so that one stream decodes to a different valid
    /// codeword that flips the first sample's output. Returns false when
    /// there are not enough honest workers to plant it.
    fn forge(
        &self,
        inputs: &[Self::Input],
        payloads: &mut [Vec<<Self::F as Field>::Elem>],
        bad: &[usize],
    ) -> bool;
}

/// Slot `stream` of every response.
pub(crate) fn stream_of<E: Clone>(received: &Responses<E>, stream: usize) -> Received<E> {
    Received::new(
        received
            .iter()
            .map(|r| r.as_ref().map(|p| p[stream].clone()))
            .collect(),
    )
}

pub(crate) fn check_inputs(got: usize, expected: usize) -> Result<(), SchemeError> {
    if got == expected {
        Ok(())
    } else {
        Err(SchemeError::InputCount { expected, got })
    }
}

/// Adds a planted shift to stream `stream` of the `bad` payloads, moving
/// the decoded value at the first data point by `delta`.
pub(crate) fn plant<F: Field>(
    code: &LagrangeCode<F>,
    payloads: &mut [Vec<F::Elem>],
    bad: &[usize],
    stream: usize,
    degree: usize,
    delta: &F::Elem,
) -> bool {
    let field = code.field();
    match code.plant_shift(degree, &code.data_points()[0], delta, bad) {
        Some(shift) => {
            for (&w, s) in bad.iter().zip(&shift) {
                payloads[w][stream] = field.add(&payloads[w][stream], s);
            }
            true
        }
        None => false,
    }
}

pub(crate) fn lift_i64(v: &BigInt) -> i64 {
    v.to_i64()
        .unwrap_or(if v.is_negative() { i64::MIN } else { i64::MAX })
}

/// Prime backend for payload magnitudes up to `bound` on a code that needs
/// `points` distinct nonzero points, honoring an override if given.
pub(crate) fn prime_backend(
    bound: &BigUint,
    points: usize,
    over: Option<&FieldSpec>,
    scheme: SchemeKind,
) -> Result<PrimeBackend, SchemeError> {
    let need_lift = bound * 2u32 + 1u32;
    let need_points = BigUint::from(points);
    match over {
        None => {
            let floor = need_lift.max(need_points);
            Ok(PrimeBackend::from_modulus(&next_prime(&floor))?)
        }
        Some(spec @ FieldSpec::Prime { .. }) => {
            spec.validate()?;
            let p = spec.prime_modulus().expect("validated");
            let needed = (&need_lift).max(&need_points);
            if p <= *needed {
                return Err(SchemeError::FieldTooSmall {
                    modulus: p.to_string(),
                    needed: needed.to_string(),
                });
            }
            Ok(PrimeBackend::from_modulus(&p)?)
        }
        Some(FieldSpec::BinaryExtension { .. }) => Err(SchemeError::FieldKind { scheme }),
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn p(n: usize, k: usize) -> ThresholdParams {
        ThresholdParams::new(n, k)
    }

    #[test]
    fn examples() {
        let beta = |kind, params| security_threshold(kind, &params).unwrap().beta;
        assert_eq!(beta(SchemeKind::Anf, p(100, 10)), 45);
        assert_eq!(
            beta(SchemeKind::LccDirect, ThresholdParams { degree: Some(7), ..p(100, 10) }),
            18
        );
        assert_eq!(
            beta(SchemeKind::Ptf, ThresholdParams { weight: Some(2), ..p(100, 10) }),
            40
        );
        assert_eq!(
            beta(SchemeKind::DataAug, ThresholdParams { degree: Some(8), q: Some(2), ..p(40, 3) }),
            15
        );
        assert_eq!(
            beta(SchemeKind::LccDirect, ThresholdParams { degree: Some(8), ..p(40, 3) }),
            11
        );
        assert_eq!(outer_bound(100, 10), 45);
        assert_eq!(outer_bound(6, 6), 0);
    }

    #[test]
    fn dptf_endpoints() {
        let t = |d| {
            security_threshold(
                SchemeKind::DPtf,
                &ThresholdParams { weight: Some(8), d: Some(d), ..p(40, 4) },
            )
            .unwrap()
            .beta
        };
        let dnf = security_threshold(SchemeKind::Dnf, &p(40, 4)).unwrap().beta;
        let ptf = security_threshold(SchemeKind::Ptf, &ThresholdParams { weight: Some(8), ..p(40, 4) })
            .unwrap()
            .beta;
        assert_eq!(t(8), dnf);
        assert_eq!(t(1), ptf);
    }

    #[test]
    fn dptf_uneven_groups_use_largest() {
        // w=3, D=2: groups of 2 and 1 clauses; a 2-clause PTF can need degree 2.
        let params = ThresholdParams { weight: Some(3), d: Some(2), ..p(10, 3) };
        assert_eq!(effective_degree(SchemeKind::DPtf, &params).unwrap(), 2);
    }

    #[test]
    fn infeasible_clamps() {
        let t = security_threshold(SchemeKind::LccDirect, &ThresholdParams { degree: Some(7), ..p(10, 4) })
            .unwrap();
        assert_eq!(t, Threshold { beta: 0, feasible: false });
        let edge = security_threshold(SchemeKind::LccDirect, &ThresholdParams { degree: Some(3), ..p(7, 3) })
            .unwrap();
        assert_eq!(edge, Threshold { beta: 0, feasible: true });
    }

    #[test]
    fn parameter_errors() {
        assert!(matches!(
            security_threshold(SchemeKind::Ptf, &ThresholdParams { weight: Some(0), ..p(10, 2) }),
            Err(SchemeError::ZeroWeight)
        ));
        assert!(matches!(
            security_threshold(SchemeKind::DPtf, &ThresholdParams { weight: Some(2), d: Some(3), ..p(10, 2) }),
            Err(SchemeError::PartitionCount { d: 3, w: 2 })
        ));
        assert!(matches!(
            security_threshold(SchemeKind::Anf, &p(3, 4)),
            Err(SchemeError::Dimensions { .. })
        ));
        assert!(matches!(
            security_threshold(SchemeKind::LccDirect, &p(10, 2)),
            Err(SchemeError::MissingParameter { .. })
        ));
    }

    #[test]
    fn kind_names_round_trip() {
        for k in SchemeKind::ALL {
            assert_eq!(k.name().parse::<SchemeKind>().unwrap(), k);
            assert_eq!(serde_json::to_string(&k).unwrap(), format!("\"{}\"", k.name()));
        }
    }
}
