//! Master/worker trials with Byzantine workers, and threshold sweeps.
//!
//! Every trial owns a seed derived from the master seed and its `(b, t)`
//! coordinates, so parallel and serial runs give identical reports.

mod compare;
mod sbox;

use std::fmt;
use std::str::FromStr;

use rand::seq::index::sample;
use rand::{RngCore, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;
use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::field::Field;
use crate::schemes::{outer_bound, AnyScheme, CodedScheme, SchemeKind, SchemeSummary, SchemeVisitor};

pub use compare::{comparison_table, ComparisonRow, COMPLEXITY_NOTE};
pub use sbox::{aes_sbox, aes_sbox_bits, sbox_casestudy, SboxBitRow, SboxReport, SBOX_EXPECTED_DEGREE};

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum SimError {
    #[error("unknown adversary strategy {0:?}")]
    UnknownStrategy(String),
    #[error("{b} adversaries exceed {n} workers")]
    TooManyAdversaries { b: usize, n: usize },
    #[error("trial count must be positive")]
    NoTrials,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum Strategy {
    /// Uniform field elements (uniform in `[-10, 10]` over the reals).
    RandomReplace,
    /// Adds 1 to every payload element.
    AdditiveOffset,
    /// Knows the code and all shares; plants a second valid codeword.
    CodewordTargeted,
    /// Sends nothing.
    Erase,
}

impl Strategy {
    pub const ALL: [Strategy; 4] = [
        Strategy::RandomReplace,
        Strategy::AdditiveOffset,
        Strategy::CodewordTargeted,
        Strategy::Erase,
    ];

    pub fn name(self) -> &'static str {
        match self {
            Strategy::RandomReplace => "random-replace",
            Strategy::AdditiveOffset => "additive-offset",
            Strategy::CodewordTargeted => "codeword-targeted",
            Strategy::Erase => "erase",
        }
    }
}

impl fmt::Display for Strategy {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for Strategy {
    type Err = SimError;

    fn from_str(s: &str) -> Result<Self, SimError> {
        Strategy::ALL
            .into_iter()
            .find(|k| k.name() == s)
            .ok_or_else(|| SimError::UnknownStrategy(s.to_string()))
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct AdversaryModel {
    pub count: usize,
    pub strategy: Strategy,
    /// Seeds inputs, adversary positions and adversarial values.
    pub seed: u64,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum FailureKind {
    WrongValue,
    DecodeFailure,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct TrialOutcome {
    /// Every decoded output matched direct evaluation.
    pub success: bool,
    pub failure: Option<FailureKind>,
    /// Indices of the adversarial workers, ascending.
    pub adversaries: Vec<usize>,
    /// For the targeted strategy: whether a second codeword was planted
    /// (otherwise it fell back to random replacement).
    pub planted: bool,
}

/// Runs one trial with inputs drawn from the adversary's seed.
pub fn run_trial<S: CodedScheme>(scheme: &S, adversary: &AdversaryModel) -> Result<TrialOutcome, SimError> {
    let mut rng = ChaCha8Rng::seed_from_u64(adversary.seed);
    let inputs: Vec<S::Input> = (0..scheme.k()).map(|_| scheme.random_input(&mut rng)).collect();
    run_trial_on(scheme, &inputs, adversary, &mut rng)
}

/// Encode, compute, corrupt, decode, compare against the oracle.
pub fn run_trial_on<S: CodedScheme>(
    scheme: &S,
    inputs: &[S::Input],
    adversary: &AdversaryModel,
    rng: &mut dyn RngCore,
) -> Result<TrialOutcome, SimError> {
    let n = scheme.n();
    if adversary.count > n {
        return Err(SimError::TooManyAdversaries { b: adversary.count, n });
    }
    let mut bad = sample(rng, n, adversary.count).into_vec();
    bad.sort_unstable();
    let fail = |failure, planted| TrialOutcome {
        success: false,
        failure: Some(failure),
        adversaries: bad.clone(),
        planted,
    };
    let (shares, state) = match scheme.encode(inputs) {
        Ok(v) => v,
        Err(_) => return Ok(fail(FailureKind::DecodeFailure, false)),
    };
    let mut payloads: Vec<Vec<_>> = shares.iter().map(|s| scheme.compute(s)).collect();
    let field = scheme.field();
    let mut planted = false;
    let mut erased = false;
    match adversary.strategy {
        Strategy::RandomReplace => randomize(field, &mut payloads, &bad, rng),
        Strategy::AdditiveOffset => {
            for &w in &bad {
                for v in payloads[w].iter_mut() {
                    *v = field.add(v, &field.one());
                }
            }
        }
        Strategy::CodewordTargeted => {
            planted = !bad.is_empty() && scheme.forge(inputs, &mut payloads, &bad);
            if !planted {
                randomize(field, &mut payloads, &bad, rng);
            }
        }
        Strategy::Erase => erased = true,
    }
    let received: Vec<Option<Vec<_>>> = payloads
        .into_iter()
        .enumerate()
        .map(|(i, p)| (!(erased && bad.binary_search(&i).is_ok())).then_some(p))
        .collect();
    let decoded = match scheme.decode(&received, &state) {
        Ok(d) => d,
        Err(_) => return Ok(fail(FailureKind::DecodeFailure, planted)),
    };
    let correct = inputs
        .iter()
        .zip(&decoded)
        .all(|(x, got)| scheme.outputs_match(x, got, &scheme.evaluate_direct(x)));
    Ok(if correct {
        TrialOutcome {
            success: true,
            failure: None,
            adversaries: bad,
            planted,
        }
    } else {
        fail(FailureKind::WrongValue, planted)
    })
}

fn randomize<F: Field>(field: &F, payloads: &mut [Vec<F::Elem>], bad: &[usize], rng: &mut dyn RngCore) {
    for &w in bad {
        for v in payloads[w].iter_mut() {
            *v = field.random(rng);
        }
    }
}

/// Child seed for trial `t` at adversary count `b`: stream `(b, t)` of a
/// ChaCha generator keyed by the master seed.
pub fn trial_seed(master: u64, b: usize, t: usize) -> u64 {
    let mut rng = ChaCha8Rng::seed_from_u64(master);
    rng.set_stream(((b as u64) << 32) | t as u64);
    rng.next_u64()
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct SweepOptions {
    pub trials: usize,
    /// Adversary counts to try; `None` means `0..=min(N, outer bound + 1)`.
    pub b_values: Option<Vec<usize>>,
    pub strategy: Strategy,
    pub seed: u64,
}

impl SweepOptions {
    pub fn new(trials: usize, seed: u64) -> Self {
        Self {
            trials,
            b_values: None,
            strategy: Strategy::RandomReplace,
            seed,
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct SweepRow {
    pub b: usize,
    pub trials: usize,
    pub successes: usize,
    pub wrong_values: usize,
    pub decode_failures: usize,
}

impl SweepRow {
    pub fn all_success(&self) -> bool {
        self.successes == self.trials
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ExperimentReport {
    pub config: SchemeSummary,
    pub strategy: Strategy,
    pub trials: usize,
    pub seed: u64,
    pub rows: Vec<SweepRow>,
    /// Largest `b` such that every tried count up to it succeeded in all
    /// trials; `None` if even the smallest count failed.
    pub empirical_threshold: Option<usize>,
    pub beta_theory: usize,
    pub feasible: bool,
    pub outer_bound: usize,
}

impl ExperimentReport {
    pub fn row(&self, b: usize) -> Option<&SweepRow> {
        self.rows.iter().find(|r| r.b == b)
    }

    /// Flat CSV, one line per adversary count.
    pub fn to_csv(&self) -> Result<String, csv::Error> {
        let mut w = csv::Writer::from_writer(Vec::new());
        w.write_record(CSV_HEADER)?;
        let opt = |v: Option<usize>| v.map(|x| x.to_string()).unwrap_or_default();
        for r in &self.rows {
            w.write_record([
                self.config.scheme.name().to_string(),
                self.config.n.to_string(),
                self.config.k.to_string(),
                opt(self.config.d),
                opt(self.config.q),
                r.b.to_string(),
                r.trials.to_string(),
                r.successes.to_string(),
                self.beta_theory.to_string(),
                self.outer_bound.to_string(),
            ])?;
        }
        let bytes = w.into_inner().map_err(|e| e.into_error())?;
        Ok(String::from_utf8(bytes).expect("csv writes utf-8"))
    }
}

pub const CSV_HEADER: [&str; 10] = [
    "scheme",
    "N",
    "K",
    "D",
    "q",
    "b",
    "trials",
    "successes",
    "beta_theory",
    "outer_bound",
];

/// Runs `opts.trials` seeded trials at each adversary count in parallel.
pub fn sweep_threshold<S: CodedScheme>(
    scheme: &S,
    summary: SchemeSummary,
    opts: &SweepOptions,
) -> Result<ExperimentReport, SimError> {
    if opts.trials == 0 {
        return Err(SimError::NoTrials);
    }
    let n = scheme.n();
    let bound = outer_bound(n, scheme.k());
    let mut b_values = opts
        .b_values
        .clone()
        .unwrap_or_else(|| (0..=n.min(bound + 1)).collect());
    b_values.sort_unstable();
    b_values.dedup();
    if let Some(&b) = b_values.iter().find(|&&b| b > n) {
        return Err(SimError::TooManyAdversaries { b, n });
    }
    let jobs: Vec<(usize, usize)> = b_values
        .iter()
        .flat_map(|&b| (0..opts.trials).map(move |t| (b, t)))
        .collect();
    let outcomes: Vec<(usize, TrialOutcome)> = jobs
        .par_iter()
        .map(|&(b, t)| {
            let adv = AdversaryModel {
                count: b,
                strategy: opts.strategy,
                seed: trial_seed(opts.seed, b, t),
            };
            run_trial(scheme, &adv).map(|o| (b, o))
        })
        .collect::<Result<_, _>>()?;
    let rows: Vec<SweepRow> = b_values
        .iter()
        .map(|&b| {
            let mine = outcomes.iter().filter(|(bb, _)| *bb == b).map(|(_, o)| o);
            let mut row = SweepRow {
                b,
                trials: 0,
                successes: 0,
                wrong_values: 0,
                decode_failures: 0,
            };
            for o in mine {
                row.trials += 1;
                match o.failure {
                    None => row.successes += 1,
                    Some(FailureKind::WrongValue) => row.wrong_values += 1,
                    Some(FailureKind::DecodeFailure) => row.decode_failures += 1,
                }
            }
            row
        })
        .collect();
    let empirical_threshold = rows
        .iter()
        .take_while(|r| r.all_success())
        .last()
        .map(|r| r.b);
    let theory = scheme.threshold();
    Ok(ExperimentReport {
        config: summary,
        strategy: opts.strategy,
        trials: opts.trials,
        seed: opts.seed,
        rows,
        empirical_threshold,
        beta_theory: theory.beta,
        feasible: theory.feasible,
        outer_bound: bound,
    })
}

impl AnyScheme {
    pub fn run_trial(&self, adversary: &AdversaryModel) -> Result<TrialOutcome, SimError> {
        struct V<'a>(&'a AdversaryModel);
        impl SchemeVisitor for V<'_> {
            type Out = Result<TrialOutcome, SimError>;
            fn visit<S: CodedScheme>(self, s: &S) -> Self::Out {
                run_trial(s, self.0)
            }
        }
        self.visit(V(adversary))
    }

    pub fn sweep(&self, opts: &SweepOptions) -> Result<ExperimentReport, SimError> {
        struct V<'a>(&'a SweepOptions, SchemeSummary);
        impl SchemeVisitor for V<'_> {
            type Out = Result<ExperimentReport, SimError>;
            fn visit<S: CodedScheme>(self, s: &S) -> Self::Out {
                sweep_threshold(s, self.1, self.0)
            }
        }
        self.visit(V(opts, self.summary()))
    }
}

/// Kinds whose achieved threshold meets the outer bound.
pub fn achieves_outer_bound(kind: SchemeKind) -> bool {
    matches!(kind, SchemeKind::Anf | SchemeKind::Dnf | SchemeKind::DataLog)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::boolfn::BooleanFunction;
    use crate::schemes::{FunctionSpec, LinearScheme, SchemeConfig};

    fn and3() -> BooleanFunction {
        BooleanFunction::from_support(3, &[7]).unwrap()
    }

    #[test]
    fn zero_adversaries_always_succeed() {
        let s = LinearScheme::dnf(&and3(), 5, 2, None).unwrap();
        for seed in 0..50 {
            for strategy in Strategy::ALL {
                let o = run_trial(&s, &AdversaryModel { count: 0, strategy, seed }).unwrap();
                assert!(o.success);
            }
        }
    }

    #[test]
    fn anf_and3_n6_k2_b2() {
        let s = LinearScheme::anf(&and3(), 6, 2, None).unwrap();
        for seed in 0..500 {
            for strategy in [Strategy::RandomReplace, Strategy::AdditiveOffset] {
                let o = run_trial(&s, &AdversaryModel { count: 2, strategy, seed }).unwrap();
                assert!(o.success, "seed {seed} {strategy}");
                assert_eq!(o.adversaries.len(), 2);
            }
        }
    }

    #[test]
    fn erasures_within_budget() {
        // 2b + e <= N - K: four erasures at N=8, K=4.
        let s = LinearScheme::dnf(&and3(), 8, 4, None).unwrap();
        for seed in 0..100 {
            let o = run_trial(&s, &AdversaryModel { count: 4, strategy: Strategy::Erase, seed }).unwrap();
            assert!(o.success);
        }
    }

    #[test]
    fn targeted_beyond_threshold_gives_wrong_values() {
        let f = BooleanFunction::from_support(4, &[0, 15]).unwrap();
        let s = LinearScheme::dnf(&f, 10, 4, None).unwrap();
        let wrong = (0..100)
            .map(|seed| {
                run_trial(&s, &AdversaryModel { count: 4, strategy: Strategy::CodewordTargeted, seed }).unwrap()
            })
            .filter(|o| o.failure == Some(FailureKind::WrongValue))
            .count();
        assert!(wrong > 0);
    }

    #[test]
    fn too_many_adversaries() {
        let s = LinearScheme::dnf(&and3(), 4, 2, None).unwrap();
        let adv = AdversaryModel { count: 5, strategy: Strategy::Erase, seed: 0 };
        assert_eq!(run_trial(&s, &adv), Err(SimError::TooManyAdversaries { b: 5, n: 4 }));
    }

    #[test]
    fn dnf_sweep_finds_threshold() {
        let f = BooleanFunction::from_support(4, &[1, 2, 12]).unwrap();
        let s = SchemeConfig::new(SchemeKind::Dnf, 10, 4, FunctionSpec::from_function(&f))
            .build()
            .unwrap();
        let r = s.sweep(&SweepOptions::new(60, 9)).unwrap();
        assert_eq!(r.beta_theory, 3);
        assert_eq!(r.empirical_threshold, Some(3));
        assert_eq!(r.rows.len(), 5);
    }

    #[test]
    fn lcc_sweep_finds_threshold() {
        let s = SchemeConfig::new(SchemeKind::LccDirect, 10, 2, FunctionSpec::from_function(&and3()))
            .build()
            .unwrap();
        let r = s.sweep(&SweepOptions::new(60, 1)).unwrap();
        assert_eq!(r.beta_theory, 3);
        assert_eq!(r.empirical_threshold, Some(3));
    }

    #[test]
    fn infeasible_sweep_flagged() {
        let s = SchemeConfig::new(SchemeKind::LccDirect, 6, 3, FunctionSpec::from_function(&and3()))
            .build()
            .unwrap();
        let r = s.sweep(&SweepOptions::new(5, 1)).unwrap();
        assert!(!r.feasible);
        assert_eq!(r.beta_theory, 0);
        assert_eq!(r.empirical_threshold, None);
    }

    #[test]
    fn sweep_is_deterministic_and_csv_shaped() {
        let s = SchemeConfig::new(SchemeKind::Anf, 10, 4, FunctionSpec::from_function(&and3()))
            .build()
            .unwrap();
        let opts = SweepOptions::new(20, 77);
        let a = s.sweep(&opts).unwrap();
        let b = s.sweep(&opts).unwrap();
        assert_eq!(a, b);
        let csv = a.to_csv().unwrap();
        assert_eq!(csv, b.to_csv().unwrap());
        let mut lines = csv.lines();
        assert_eq!(lines.next().unwrap(), "scheme,N,K,D,q,b,trials,successes,beta_theory,outer_bound");
        assert_eq!(lines.next().unwrap(), "anf,10,4,,,0,20,20,3,3");
    }

    #[test]
    fn trial_seeds_differ() {
        let mut seen = std::collections::HashSet::new();
        for b in 0..4 {
            for t in 0..50 {
                assert!(seen.insert(trial_seed(5, b, t)));
            }
        }
        assert_eq!(trial_seed(5, 1, 2), trial_seed(5, 1, 2));
    }
}
