//! JSON scheme descriptions and a type-erased scheme handle.

use num_bigint::BigUint;
use serde::{Deserialize, Serialize};

use super::ptf::{build_groups, magnitude_bound};
use super::{
    outer_bound, prime_backend, CodedScheme, DataAugScheme, DataLogScheme, LccDirectScheme,
    LinearScheme, PtfScheme, SchemeError, SchemeKind, Threshold,
};
use crate::boolfn::BooleanFunction;
use crate::field::{BigPrime, FieldSpec, PrimeBackend, PrimeField, SmallPrime};
use crate::multipoly::{MultivariatePolynomial, PolynomialSpec, TermSpec};

/// Default data-augmentation field: the Mersenne prime `2^61 - 1`.
pub const DATA_AUG_DEFAULT_MODULUS: u64 = (1 << 61) - 1;

/// Where the target function comes from.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "kebab-case", deny_unknown_fields)]
pub enum FunctionSpec {
    /// Bit `i` of the hex integer is `f(i)`.
    TruthTable { m: usize, hex: String },
    /// XOR of AND-monomials over 1-based variable indices; `[]` is the constant 1.
    Anf { m: usize, monomials: Vec<Vec<usize>> },
    /// Input indices where `f = 1`.
    Support { m: usize, indices: Vec<usize> },
    Polynomial { vars: usize, terms: Vec<TermSpec> },
    /// Vector-valued polynomial map (data logarithm).
    PolynomialMap { outputs: Vec<PolynomialSpec> },
}

impl FunctionSpec {
    pub fn describe(&self) -> &'static str {
        match self {
            FunctionSpec::TruthTable { .. } => "a truth table",
            FunctionSpec::Anf { .. } => "an ANF",
            FunctionSpec::Support { .. } => "a support list",
            FunctionSpec::Polynomial { .. } => "a polynomial",
            FunctionSpec::PolynomialMap { .. } => "a polynomial map",
        }
    }

    pub fn boolean(&self) -> Option<Result<BooleanFunction, SchemeError>> {
        let f = match self {
            FunctionSpec::TruthTable { m, hex } => BooleanFunction::from_hex(*m, hex),
            FunctionSpec::Anf { m, monomials } => BooleanFunction::from_anf(*m, monomials),
            FunctionSpec::Support { m, indices } => BooleanFunction::from_support(*m, indices),
            _ => return None,
        };
        Some(f.map_err(SchemeError::from))
    }

    pub fn polynomials(&self) -> Option<Result<Vec<MultivariatePolynomial>, SchemeError>> {
        let specs = match self {
            FunctionSpec::Polynomial { vars, terms } => vec![PolynomialSpec {
                vars: *vars,
                terms: terms.clone(),
            }],
            FunctionSpec::PolynomialMap { outputs } => outputs.clone(),
            _ => return None,
        };
        Some(
            specs
                .iter()
                .map(|s| s.build().map_err(SchemeError::from))
                .collect(),
        )
    }

    pub fn from_function(f: &BooleanFunction) -> Self {
        FunctionSpec::TruthTable {
            m: f.vars(),
            hex: f.to_hex(),
        }
    }

    pub fn from_polynomial(p: &MultivariatePolynomial) -> Self {
        let spec = p.to_spec();
        FunctionSpec::Polynomial {
            vars: spec.vars,
            terms: spec.terms,
        }
    }
}

/// One scheme instance as read from a config file.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct SchemeConfig {
    pub scheme: SchemeKind,
    pub n: usize,
    pub k: usize,
    /// Partition count for `d-ptf`.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub d: Option<usize>,
    /// Augmentation degree for `data-aug`.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub q: Option<usize>,
    pub function: FunctionSpec,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub field: Option<FieldSpec>,
}

impl SchemeConfig {
    pub fn new(scheme: SchemeKind, n: usize, k: usize, function: FunctionSpec) -> Self {
        Self {
            scheme,
            n,
            k,
            d: None,
            q: None,
            function,
            field: None,
        }
    }

    pub fn build(&self) -> Result<AnyScheme, SchemeError> {
        AnyScheme::build(self)
    }
}

/// A scheme of any kind, for callers that pick the kind at runtime.
#[derive(Clone, Debug)]
pub enum AnyScheme {
    Linear(LinearScheme),
    PtfSmall(PtfScheme<SmallPrime>),
    PtfBig(PtfScheme<BigPrime>),
    LccDirect(LccDirectScheme),
    DataLog(DataLogScheme),
    DataAug(DataAugScheme<SmallPrime>),
}

/// Generic callback over the concrete scheme inside an [`AnyScheme`].
pub trait SchemeVisitor {
    type Out;
    fn visit<S: CodedScheme>(self, scheme: &S) -> Self::Out;
}

/// Static facts about a built scheme.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct SchemeSummary {
    pub scheme: SchemeKind,
    pub n: usize,
    pub k: usize,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub d: Option<usize>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub q: Option<usize>,
    pub field: String,
    pub streams: usize,
    /// Degree of each stream's worker polynomial in the inputs.
    pub worker_degrees: Vec<usize>,
    pub threshold: Threshold,
    pub outer_bound: usize,
}

impl AnyScheme {
    pub fn build(cfg: &SchemeConfig) -> Result<Self, SchemeError> {
        let (n, k, kind) = (cfg.n, cfg.k, cfg.scheme);
        if k == 0 || n < k {
            return Err(SchemeError::Dimensions { n, k });
        }
        let wrong = || SchemeError::FunctionKind {
            scheme: kind,
            given: cfg.function.describe(),
        };
        let field = cfg.field.as_ref();
        if kind.is_boolean() {
            let f = cfg.function.boolean().ok_or_else(wrong)??;
            return match kind {
                SchemeKind::Anf => Ok(AnyScheme::Linear(LinearScheme::anf(&f, n, k, field)?)),
                SchemeKind::Dnf => Ok(AnyScheme::Linear(LinearScheme::dnf(&f, n, k, field)?)),
                SchemeKind::LccDirect => Ok(AnyScheme::LccDirect(LccDirectScheme::new(&f, n, k, field)?)),
                SchemeKind::Ptf | SchemeKind::DPtf => {
                    let d = match (kind, cfg.d) {
                        (SchemeKind::Ptf, None | Some(1)) => 1,
                        (SchemeKind::Ptf, Some(_)) => {
                            return Err(SchemeError::UnexpectedParameter { scheme: kind, param: "d" })
                        }
                        (_, Some(d)) => d,
                        (_, None) => {
                            return Err(SchemeError::MissingParameter { scheme: kind, param: "d" })
                        }
                    };
                    let groups = build_groups(&f, d)?;
                    match prime_backend(&magnitude_bound(&groups), n + k, field, kind)? {
                        PrimeBackend::Small(p) => Ok(AnyScheme::PtfSmall(PtfScheme::new(kind, &f, &groups, p, n, k)?)),
                        PrimeBackend::Big(p) => Ok(AnyScheme::PtfBig(PtfScheme::new(kind, &f, &groups, p, n, k)?)),
                    }
                }
                _ => unreachable!("boolean kinds"),
            };
        }
        let polys = cfg.function.polynomials().ok_or_else(wrong)??;
        match kind {
            SchemeKind::DataLog => {
                if field.is_some() {
                    return Err(SchemeError::FieldKind { scheme: kind });
                }
                Ok(AnyScheme::DataLog(DataLogScheme::new(&polys, n, k)?))
            }
            SchemeKind::DataAug => {
                let [f] = polys.as_slice() else {
                    return Err(wrong());
                };
                let q = cfg.q.ok_or(SchemeError::MissingParameter { scheme: kind, param: "q" })?;
                let p = match field {
                    None => SmallPrime::new(DATA_AUG_DEFAULT_MODULUS)?,
                    Some(spec) => match prime_backend(&BigUint::from(0u32), n + k, Some(spec), kind)? {
                        PrimeBackend::Small(p) => p,
                        PrimeBackend::Big(_) => return Err(SchemeError::FieldBackend { scheme: kind }),
                    },
                };
                Ok(AnyScheme::DataAug(DataAugScheme::new(f, q, p, n, k)?))
            }
            _ => unreachable!("polynomial kinds"),
        }
    }

    pub fn visit<V: SchemeVisitor>(&self, v: V) -> V::Out {
        match self {
            AnyScheme::Linear(s) => v.visit(s),
            AnyScheme::PtfSmall(s) => v.visit(s),
            AnyScheme::PtfBig(s) => v.visit(s),
            AnyScheme::LccDirect(s) => v.visit(s),
            AnyScheme::DataLog(s) => v.visit(s),
            AnyScheme::DataAug(s) => v.visit(s),
        }
    }

    pub fn kind(&self) -> SchemeKind {
        struct Kind;
        impl SchemeVisitor for Kind {
            type Out = SchemeKind;
            fn visit<S: CodedScheme>(self, s: &S) -> SchemeKind {
                s.kind()
            }
        }
        self.visit(Kind)
    }

    pub fn threshold(&self) -> Threshold {
        struct T;
        impl SchemeVisitor for T {
            type Out = Threshold;
            fn visit<S: CodedScheme>(self, s: &S) -> Threshold {
                s.threshold()
            }
        }
        self.visit(T)
    }

    pub fn summary(&self) -> SchemeSummary {
        let (n, k, streams) = {
            struct Dims;
            impl SchemeVisitor for Dims {
                type Out = (usize, usize, usize);
                fn visit<S: CodedScheme>(self, s: &S) -> Self::Out {
                    (s.n(), s.k(), s.streams())
                }
            }
            self.visit(Dims)
        };
        let prime = |p: BigUint| format!("F_{p}");
        let (d, q, field, worker_degrees) = match self {
            AnyScheme::Linear(s) => (None, None, prime(s.field().modulus()), vec![1; streams]),
            AnyScheme::PtfSmall(s) => (Some(s.partitions()), None, prime(s.field().modulus()), s.degrees()),
            AnyScheme::PtfBig(s) => (Some(s.partitions()), None, prime(s.field().modulus()), s.degrees()),
            AnyScheme::LccDirect(s) => (
                None,
                None,
                format!("GF(2^{})", s.field().degree()),
                vec![s.degree()],
            ),
            AnyScheme::DataLog(_) => (None, None, "reals".to_string(), vec![1; streams]),
            AnyScheme::DataAug(s) => (
                None,
                Some(s.augmentation().q()),
                prime(s.field().modulus()),
                vec![s.degree()],
            ),
        };
        SchemeSummary {
            scheme: self.kind(),
            n,
            k,
            d: d.filter(|_| self.kind() == SchemeKind::DPtf),
            q,
            field,
            streams,
            worker_degrees,
            threshold: self.threshold(),
            outer_bound: outer_bound(n, k),
        }
    }
}
