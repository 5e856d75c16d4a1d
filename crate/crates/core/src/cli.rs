//! Command-line front end. Flags override the JSON config; `BOOLECODE_SEED`
//! overrides the config seed.

use std::ffi::OsString;
use std::fmt::Write as _;
use std::path::{Path, PathBuf};

use clap::{Parser, ValueEnum};
use serde::{Deserialize, Serialize};
use serde_json::json;
use thiserror::Error;

use crate::boolfn::{stats, BooleanFunction};
use crate::field::FieldSpec;
use crate::multipoly::{augmented_degree, PolynomialSpec};
use crate::schemes::{matrix_square, FunctionSpec, SchemeConfig, SchemeError, SchemeKind};
use crate::simulator::{
    aes_sbox, comparison_table, sbox_casestudy, AdversaryModel, ExperimentReport, SimError, Strategy,
    SweepOptions, COMPLEXITY_NOTE,
};

pub const EXIT_OK: i32 = 0;
pub const EXIT_ERROR: i32 = 1;
/// A run or sweep saw a failure at some `b` within the theoretical threshold.
pub const EXIT_VIOLATION: i32 = 3;

const DEFAULT_SEED: u64 = 1;
const DEFAULT_TRIALS: usize = 200;

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum Command {
    /// Function statistics
    Analyze,
    /// One seeded trial
    Run,
    /// Success rate per adversary count
    Sweep,
    /// Closed-form thresholds for every scheme
    Compare,
    /// 8-bit S-box case study
    Sbox,
}

#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, ValueEnum, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum Format {
    #[default]
    Json,
    Csv,
    Text,
}

/// Everything a command may read; every field is optional so the file and
/// the flags can be merged.
#[derive(Clone, Debug, Default, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct RunConfig {
    #[serde(default)]
    pub command: Option<Command>,
    #[serde(default)]
    pub scheme: Option<SchemeKind>,
    #[serde(default)]
    pub n: Option<usize>,
    #[serde(default)]
    pub k: Option<usize>,
    #[serde(default)]
    pub d: Option<usize>,
    #[serde(default)]
    pub q: Option<usize>,
    #[serde(default)]
    pub function: Option<FunctionSpec>,
    #[serde(default)]
    pub field: Option<FieldSpec>,
    #[serde(default)]
    pub trials: Option<usize>,
    #[serde(default)]
    pub seed: Option<u64>,
    /// Adversary count for `run`.
    #[serde(default)]
    pub b: Option<usize>,
    /// Adversary counts for `sweep`.
    #[serde(default)]
    pub b_values: Option<Vec<usize>>,
    #[serde(default)]
    pub strategy: Option<Strategy>,
    /// Partition counts listed by `compare`.
    #[serde(default)]
    pub ds: Option<Vec<usize>>,
    /// 256-entry table as 512 hex digits, for `sbox`.
    #[serde(default)]
    pub sbox: Option<String>,
    #[serde(default)]
    pub out: Option<PathBuf>,
    #[serde(default)]
    pub format: Option<Format>,
}

impl RunConfig {
    pub fn from_json(text: &str) -> Result<Self, serde_json::Error> {
        serde_json::from_str(text)
    }

    /// Fields set in `over` win.
    fn overlay(self, over: RunConfig) -> RunConfig {
        RunConfig {
            command: over.command.or(self.command),
            scheme: over.scheme.or(self.scheme),
            n: over.n.or(self.n),
            k: over.k.or(self.k),
            d: over.d.or(self.d),
            q: over.q.or(self.q),
            function: over.function.or(self.function),
            field: over.field.or(self.field),
            trials: over.trials.or(self.trials),
            seed: over.seed.or(self.seed),
            b: over.b.or(self.b),
            b_values: over.b_values.or(self.b_values),
            strategy: over.strategy.or(self.strategy),
            ds: over.ds.or(self.ds),
            sbox: over.sbox.or(self.sbox),
            out: over.out.or(self.out),
            format: over.format.or(self.format),
        }
    }
}

#[derive(Debug, Error)]
pub enum CliError {
    #[error("{path}: {source}")]
    Config {
        path: String,
        source: serde_json::Error,
    },
    #[error("{flag}: {source}")]
    Flag {
        flag: &'static str,
        source: serde_json::Error,
    },
    #[error("{0}: {1}")]
    Io(String, std::io::Error),
    #[error("missing {0}")]
    Missing(&'static str),
    #[error("give exactly one function source, got {0}")]
    FunctionSources(String),
    #[error("{0}")]
    Usage(String),
    #[error(transparent)]
    Scheme(#[from] SchemeError),
    #[error(transparent)]
    Sim(#[from] SimError),
    #[error(transparent)]
    Json(#[from] serde_json::Error),
    #[error(transparent)]
    Csv(#[from] csv::Error),
}

#[derive(Debug, Parser)]
#[command(name = "boolecode", version, about = "Byzantine-robust coded computation experiments")]
pub struct Cli {
    /// Command; may instead come from the config file
    #[arg(value_enum)]
    pub command: Option<Command>,
    /// JSON config; flags override its fields
    #[arg(long)]
    pub config: Option<PathBuf>,
    #[arg(long)]
    pub scheme: Option<SchemeKind>,
    /// Number of workers
    #[arg(long)]
    pub n: Option<usize>,
    /// Number of input samples
    #[arg(long)]
    pub k: Option<usize>,
    /// Partition count for d-ptf
    #[arg(long)]
    pub d: Option<usize>,
    /// Augmentation degree for data-aug
    #[arg(long)]
    pub q: Option<usize>,
    #[arg(long)]
    pub trials: Option<usize>,
    #[arg(long, env = "BOOLECODE_SEED")]
    pub seed: Option<u64>,
    /// Adversary count for run
    #[arg(long)]
    pub b: Option<usize>,
    /// Adversary counts for sweep, comma separated
    #[arg(long, value_delimiter = ',')]
    pub b_values: Option<Vec<usize>>,
    #[arg(long)]
    pub strategy: Option<Strategy>,
    /// Partition counts for compare, comma separated
    #[arg(long, value_delimiter = ',')]
    pub ds: Option<Vec<usize>>,
    /// Number of variables for --hex, --anf, --support
    #[arg(long)]
    pub m: Option<usize>,
    /// Truth table, bit i = f(i)
    #[arg(long)]
    pub hex: Option<String>,
    /// ANF monomials as JSON, e.g. [[1,2],[3]]
    #[arg(long)]
    pub anf: Option<String>,
    /// Support indices as JSON, e.g. [0,7]
    #[arg(long)]
    pub support: Option<String>,
    /// Polynomial as JSON {"vars":..,"terms":[{"coeff":..,"exponents":[..]}]}
    #[arg(long)]
    pub poly: Option<String>,
    /// Entries of X^2 for a d x d matrix X
    #[arg(long)]
    pub matrix_square: Option<usize>,
    /// Custom S-box as 512 hex digits
    #[arg(long)]
    pub sbox: Option<String>,
    #[arg(long)]
    pub out: Option<PathBuf>,
    #[arg(long, value_enum)]
    pub format: Option<Format>,
}

impl Cli {
    fn function(&self) -> Result<Option<FunctionSpec>, CliError> {
        let mut given = Vec::new();
        for (flag, set) in [
            ("--hex", self.hex.is_some()),
            ("--anf", self.anf.is_some()),
            ("--support", self.support.is_some()),
            ("--poly", self.poly.is_some()),
            ("--matrix-square", self.matrix_square.is_some()),
        ] {
            if set {
                given.push(flag);
            }
        }
        if given.len() > 1 {
            return Err(CliError::FunctionSources(given.join(", ")));
        }
        let m = || self.m.ok_or(CliError::Missing("--m"));
        Ok(Some(if let Some(hex) = &self.hex {
            FunctionSpec::TruthTable { m: m()?, hex: hex.clone() }
        } else if let Some(text) = &self.anf {
            FunctionSpec::Anf {
                m: m()?,
                monomials: parse("--anf", text)?,
            }
        } else if let Some(text) = &self.support {
            FunctionSpec::Support {
                m: m()?,
                indices: parse("--support", text)?,
            }
        } else if let Some(text) = &self.poly {
            let p: PolynomialSpec = parse("--poly", text)?;
            FunctionSpec::Polynomial {
                vars: p.vars,
                terms: p.terms,
            }
        } else if let Some(d) = self.matrix_square {
            FunctionSpec::PolynomialMap {
                outputs: matrix_square(d).iter().map(|p| p.to_spec()).collect(),
            }
        } else {
            return Ok(None);
        }))
    }

    fn overrides(&self) -> Result<RunConfig, CliError> {
        Ok(RunConfig {
            command: self.command,
            scheme: self.scheme,
            n: self.n,
            k: self.k,
            d: self.d,
            q: self.q,
            function: self.function()?,
            field: None,
            trials: self.trials,
            seed: self.seed,
            b: self.b,
            b_values: self.b_values.clone(),
            strategy: self.strategy,
            ds: self.ds.clone(),
            sbox: self.sbox.clone(),
            out: self.out.clone(),
            format: self.format,
        })
    }
}

fn parse<T: serde::de::DeserializeOwned>(flag: &'static str, text: &str) -> Result<T, CliError> {
    serde_json::from_str(text).map_err(|source| CliError::Flag { flag, source })
}

fn read_config(path: &Path) -> Result<RunConfig, CliError> {
    let text = std::fs::read_to_string(path).map_err(|e| CliError::Io(path.display().to_string(), e))?;
    RunConfig::from_json(&text).map_err(|source| CliError::Config {
        path: path.display().to_string(),
        source,
    })
}

/// Merged config plus the command outcome.
pub struct Output {
    pub text: String,
    pub violation: bool,
}

/// Parses arguments, runs the command, writes output; returns the exit code.
pub fn main_with<I, T>(args: I) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(c) => c,
        Err(e) => {
            let _ = e.print();
            return e.exit_code();
        }
    };
    match resolve(&cli).and_then(|cfg| execute(&cfg).map(|out| (cfg, out))) {
        Ok((cfg, out)) => {
            if let Err(e) = emit(&cfg, &out.text) {
                eprintln!("error: {e}");
                return EXIT_ERROR;
            }
            if out.violation {
                eprintln!("error: failures at or below the theoretical threshold");
                EXIT_VIOLATION
            } else {
                EXIT_OK
            }
        }
        Err(e) => {
            eprintln!("error: {e}");
            EXIT_ERROR
        }
    }
}

pub fn resolve(cli: &Cli) -> Result<RunConfig, CliError> {
    let base = match &cli.config {
        Some(p) => read_config(p)?,
        None => RunConfig::default(),
    };
    Ok(base.overlay(cli.overrides()?))
}

fn emit(cfg: &RunConfig, text: &str) -> Result<(), CliError> {
    match &cfg.out {
        Some(p) => std::fs::write(p, text).map_err(|e| CliError::Io(p.display().to_string(), e)),
        None => {
            print!("{text}");
            Ok(())
        }
    }
}

pub fn execute(cfg: &RunConfig) -> Result<Output, CliError> {
    let command = cfg.command.ok_or(CliError::Missing("command"))?;
    let format = cfg.format.unwrap_or_default();
    let text = |text: String| Output { text, violation: false };
    match command {
        Command::Analyze => analyze(cfg, format).map(text),
        Command::Compare => compare(cfg, format).map(text),
        Command::Sbox => sbox(cfg, format).map(text),
        Command::Run => run(cfg, format),
        Command::Sweep => sweep(cfg, format),
    }
}

fn function(cfg: &RunConfig) -> Result<&FunctionSpec, CliError> {
    cfg.function.as_ref().ok_or(CliError::Missing("function"))
}

fn boolean(cfg: &RunConfig) -> Result<BooleanFunction, CliError> {
    let spec = function(cfg)?;
    match spec.boolean() {
        Some(f) => Ok(f?),
        None => Err(CliError::Usage(format!("expected a Boolean function, got {}", spec.describe()))),
    }
}

fn json_line(v: &impl Serialize) -> Result<String, CliError> {
    Ok(serde_json::to_string_pretty(v)? + "\n")
}

fn csv_text(header: &[&str], rows: Vec<Vec<String>>) -> Result<String, CliError> {
    let mut w = csv::Writer::from_writer(Vec::new());
    w.write_record(header)?;
    for r in rows {
        w.write_record(r)?;
    }
    let bytes = w.into_inner().map_err(|e| CliError::Io("csv".into(), e.into_error()))?;
    Ok(String::from_utf8(bytes).expect("csv writes utf-8"))
}

fn analyze(cfg: &RunConfig, format: Format) -> Result<String, CliError> {
    let spec = function(cfg)?;
    if let Some(f) = spec.boolean() {
        let st = stats(&f?);
        let ptf = st.ptf_degree_bound.map(|v| v.to_string()).unwrap_or_default();
        return match format {
            Format::Json => json_line(&st),
            Format::Csv => csv_text(
                &["m", "sparsity", "weight", "degree", "ptf_degree_bound"],
                vec![vec![
                    st.m.to_string(),
                    st.sparsity.to_string(),
                    st.weight.to_string(),
                    st.degree.to_string(),
                    ptf,
                ]],
            ),
            Format::Text => Ok(format!(
                "m = {}\nr(f) = {}\nw(f) = {}\ndeg f = {}\nfloor(log2 w) + 1 = {}\n",
                st.m,
                st.sparsity,
                st.weight,
                st.degree,
                if ptf.is_empty() { "-".into() } else { ptf }
            )),
        };
    }
    let polys = spec.polynomials().expect("non-Boolean specs are polynomials")?;
    let rows: Vec<_> = polys
        .iter()
        .enumerate()
        .map(|(i, p)| {
            (
                i,
                p.vars(),
                p.term_count(),
                p.degree(),
                cfg.q.filter(|&q| q > 0).map(|q| augmented_degree(p.degree(), q)),
            )
        })
        .collect();
    match format {
        Format::Json => json_line(
            &rows
                .iter()
                .map(|&(output, vars, terms, degree, aug)| {
                    json!({"output": output, "vars": vars, "terms": terms, "degree": degree, "augmented_degree": aug})
                })
                .collect::<Vec<_>>(),
        ),
        Format::Csv => csv_text(
            &["output", "vars", "terms", "degree", "augmented_degree"],
            rows.iter()
                .map(|&(o, v, t, d, a)| {
                    vec![
                        o.to_string(),
                        v.to_string(),
                        t.to_string(),
                        d.to_string(),
                        a.map(|x| x.to_string()).unwrap_or_default(),
                    ]
                })
                .collect(),
        ),
        Format::Text => Ok(rows.iter().fold(String::new(), |mut s, &(o, v, t, d, a)| {
            let _ = write!(s, "output {o}: vars = {v}, terms = {t}, degree = {d}");
            if let Some(a) = a {
                let _ = write!(s, ", augmented degree = {a}");
            }
            s.push('\n');
            s
        })),
    }
}

fn nk(cfg: &RunConfig) -> Result<(usize, usize), CliError> {
    Ok((cfg.n.ok_or(CliError::Missing("n"))?, cfg.k.ok_or(CliError::Missing("k"))?))
}

fn compare(cfg: &RunConfig, format: Format) -> Result<String, CliError> {
    let f = boolean(cfg)?;
    let (n, k) = nk(cfg)?;
    let w = f.weight();
    let ds = cfg.ds.clone().unwrap_or_else(|| {
        let mut ds: Vec<usize> = std::iter::successors(Some(1usize), |d| d.checked_mul(2))
            .take_while(|&d| d < w)
            .collect();
        if w > 0 {
            ds.push(w);
        }
        ds
    });
    let rows = comparison_table(&f, n, k, &ds)?;
    match format {
        Format::Json => json_line(&json!({"n": n, "k": k, "complexity_note": COMPLEXITY_NOTE, "rows": rows})),
        Format::Csv => csv_text(
            &["scheme", "beta", "feasible", "degree", "complexity (documented, not measured)"],
            rows.iter()
                .map(|r| {
                    vec![
                        r.scheme.clone(),
                        r.threshold.beta.to_string(),
                        r.threshold.feasible.to_string(),
                        r.degree.map(|d| d.to_string()).unwrap_or_default(),
                        r.complexity.clone(),
                    ]
                })
                .collect(),
        ),
        Format::Text => {
            let mut s = format!(
                "{:<16} {:>6} {:>8}  complexity ({COMPLEXITY_NOTE})\n",
                "scheme", "beta", "feasible"
            );
            for r in &rows {
                let _ = writeln!(
                    s,
                    "{:<16} {:>6} {:>8}  {}",
                    r.scheme, r.threshold.beta, r.threshold.feasible, r.complexity
                );
            }
            Ok(s)
        }
    }
}

fn parse_sbox(hex: &str) -> Result<[u8; 256], CliError> {
    let bytes = hex::decode(hex.trim()).map_err(|e| CliError::Usage(format!("--sbox: {e}")))?;
    bytes
        .try_into()
        .map_err(|b: Vec<u8>| CliError::Usage(format!("--sbox: expected 256 bytes, got {}", b.len())))
}

fn sbox(cfg: &RunConfig, format: Format) -> Result<String, CliError> {
    let table = match &cfg.sbox {
        Some(h) => parse_sbox(h)?,
        None => aes_sbox(),
    };
    let bits: Vec<BooleanFunction> = (0..8)
        .map(|j| BooleanFunction::from_fn(8, |x| table[x] >> j & 1 == 1).expect("8 variables"))
        .collect();
    let (n, k) = (cfg.n.unwrap_or(100), cfg.k.unwrap_or(10));
    let r = sbox_casestudy(&bits, n, k)?;
    for b in &r.degree_mismatches {
        eprintln!("warning: output bit {b} has degree {}, not 7", r.bits[*b].degree);
    }
    match format {
        Format::Json => json_line(&r),
        Format::Csv => csv_text(
            &["bit", "degree", "weight", "sparsity", "lcc", "anf", "dnf", "ptf"],
            r.bits
                .iter()
                .map(|b| {
                    [b.bit, b.degree, b.weight, b.sparsity, b.lcc.beta, b.anf.beta, b.dnf.beta, b.ptf.beta]
                        .iter()
                        .map(usize::to_string)
                        .collect()
                })
                .collect(),
        ),
        Format::Text => {
            let mut s = format!("N = {n}, K = {k}\n");
            let _ = writeln!(s, "LCC {}  ANF {}  DNF {}  PTF {}  bound {}", r.lcc, r.anf, r.dnf, r.ptf, r.outer_bound);
            match r.improvement {
                Some(i) => {
                    let _ = writeln!(s, "improvement over LCC: {:.0}%", i * 100.0);
                }
                None => s.push_str("improvement over LCC: undefined (LCC threshold is 0)\n"),
            }
            Ok(s)
        }
    }
}

fn scheme_config(cfg: &RunConfig) -> Result<SchemeConfig, CliError> {
    let (n, k) = nk(cfg)?;
    Ok(SchemeConfig {
        scheme: cfg.scheme.ok_or(CliError::Missing("scheme"))?,
        n,
        k,
        d: cfg.d,
        q: cfg.q,
        function: function(cfg)?.clone(),
        field: cfg.field.clone(),
    })
}

fn run(cfg: &RunConfig, format: Format) -> Result<Output, CliError> {
    let scheme = scheme_config(cfg)?.build()?;
    let adversary = AdversaryModel {
        count: cfg.b.unwrap_or(0),
        strategy: cfg.strategy.unwrap_or(Strategy::RandomReplace),
        seed: cfg.seed.unwrap_or(DEFAULT_SEED),
    };
    let outcome = scheme.run_trial(&adversary)?;
    let th = scheme.threshold();
    let violation = !outcome.success && th.feasible && adversary.count <= th.beta;
    let text = match format {
        Format::Json => json_line(&json!({
            "config": scheme.summary(),
            "adversary": adversary,
            "outcome": outcome,
        }))?,
        Format::Csv => csv_text(
            &["scheme", "N", "K", "b", "strategy", "seed", "success", "failure", "adversaries"],
            vec![vec![
                scheme.kind().to_string(),
                cfg.n.unwrap_or_default().to_string(),
                cfg.k.unwrap_or_default().to_string(),
                adversary.count.to_string(),
                adversary.strategy.to_string(),
                adversary.seed.to_string(),
                outcome.success.to_string(),
                outcome.failure.map(|f| format!("{f:?}")).unwrap_or_default(),
                outcome.adversaries.iter().map(usize::to_string).collect::<Vec<_>>().join(" "),
            ]],
        )?,
        Format::Text => format!(
            "{} b={} {}: {}\n",
            scheme.kind(),
            adversary.count,
            adversary.strategy,
            match outcome.failure {
                None => "success".to_string(),
                Some(f) => format!("{f:?}"),
            }
        ),
    };
    Ok(Output { text, violation })
}

/// True when some `b <= beta` row has a failure.
pub fn sweep_violation(r: &ExperimentReport) -> bool {
    r.feasible && r.rows.iter().any(|row| row.b <= r.beta_theory && !row.all_success())
}

fn sweep(cfg: &RunConfig, format: Format) -> Result<Output, CliError> {
    let scheme = scheme_config(cfg)?.build()?;
    let opts = SweepOptions {
        trials: cfg.trials.unwrap_or(DEFAULT_TRIALS),
        b_values: cfg.b_values.clone(),
        strategy: cfg.strategy.unwrap_or(Strategy::RandomReplace),
        seed: cfg.seed.unwrap_or(DEFAULT_SEED),
    };
    let r = scheme.sweep(&opts)?;
    let text = match format {
        Format::Json => json_line(&r)?,
        Format::Csv => r.to_csv()?,
        Format::Text => {
            let mut s = format!(
                "{} N={} K={}: beta = {}, empirical = {}, bound = {}\n",
                r.config.scheme,
                r.config.n,
                r.config.k,
                r.beta_theory,
                r.empirical_threshold.map_or("none".into(), |b| b.to_string()),
                r.outer_bound
            );
            for row in &r.rows {
                let _ = writeln!(s, "b={:<3} {}/{}", row.b, row.successes, row.trials);
            }
            s
        }
    };
    Ok(Output {
        violation: sweep_violation(&r),
        text,
    })
}
