//! Truth-table backed Boolean functions and their ANF / DNF views.
//!
//! Inputs are indexed by reading the bit vector as an integer: variable
//! `X[j]` (1-based) is bit `j - 1` of the index.

use std::collections::BTreeSet;
use std::fmt;

use serde::{Deserialize, Serialize};
use thiserror::Error;

/// Largest supported variable count.
pub const MAX_VARS: usize = 20;

#[derive(Debug, Error, PartialEq, Eq)]
pub enum BoolFnError {
    #[error("variable count {0} outside 1..={MAX_VARS}")]
    VarCount(usize),
    #[error("truth table has {got} entries, expected {expected}")]
    TableLength { expected: usize, got: usize },
    #[error("input has {got} bits, function takes {expected}")]
    InputLength { expected: usize, got: usize },
    #[error("bad hex truth table: {0}")]
    Hex(String),
    #[error("monomial {monomial:?} references variable outside 1..={m}")]
    VariableIndex { monomial: Vec<usize>, m: usize },
}

/// A Boolean function `f: {0,1}^m -> {0,1}` stored as its truth table.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct BooleanFunction {
    m: usize,
    table: Vec<bool>,
}

impl fmt::Debug for BooleanFunction {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "BooleanFunction(m={}, 0x{})", self.m, self.to_hex())
    }
}

fn check_vars(m: usize) -> Result<(), BoolFnError> {
    if (1..=MAX_VARS).contains(&m) {
        Ok(())
    } else {
        Err(BoolFnError::VarCount(m))
    }
}

impl BooleanFunction {
    pub fn from_table(m: usize, table: Vec<bool>) -> Result<Self, BoolFnError> {
        check_vars(m)?;
        if table.len() != 1 << m {
            return Err(BoolFnError::TableLength {
                expected: 1 << m,
                got: table.len(),
            });
        }
        Ok(Self { m, table })
    }

    pub fn from_fn(m: usize, f: impl Fn(usize) -> bool) -> Result<Self, BoolFnError> {
        check_vars(m)?;
        Ok(Self {
            m,
            table: (0..1usize << m).map(f).collect(),
        })
    }

    /// Function that is 1 exactly on the given input indices.
    pub fn from_support(m: usize, support: &[usize]) -> Result<Self, BoolFnError> {
        check_vars(m)?;
        let mut table = vec![false; 1 << m];
        for &i in support {
            if i >= table.len() {
                return Err(BoolFnError::TableLength {
                    expected: table.len(),
                    got: i + 1,
                });
            }
            table[i] = true;
        }
        Ok(Self { m, table })
    }

    /// Parses a hex truth table: the string is a big-endian integer whose bit
    /// `i` is `f(i)`. Shorter strings are zero-extended.
    pub fn from_hex(m: usize, hex: &str) -> Result<Self, BoolFnError> {
        check_vars(m)?;
        let digits = hex.trim().trim_start_matches("0x").trim_start_matches("0X");
        let size = 1usize << m;
        let max_digits = size.div_ceil(4);
        if digits.is_empty() {
            return Err(BoolFnError::Hex("empty string".into()));
        }
        let significant = digits.trim_start_matches('0');
        if significant.len() > max_digits {
            return Err(BoolFnError::Hex(format!(
                "{} hex digits exceed the {} of a {m}-variable table",
                significant.len(),
                max_digits
            )));
        }
        let mut table = vec![false; size];
        for (pos, ch) in digits.chars().rev().enumerate() {
            let nibble = ch
                .to_digit(16)
                .ok_or_else(|| BoolFnError::Hex(format!("invalid digit {ch:?}")))?;
            for bit in 0..4 {
                if nibble >> bit & 1 == 1 {
                    let idx = pos * 4 + bit;
                    if idx >= size {
                        return Err(BoolFnError::Hex(format!(
                            "bit {idx} set beyond table size {size}"
                        )));
                    }
                    table[idx] = true;
                }
            }
        }
        Ok(Self { m, table })
    }

    pub fn to_hex(&self) -> String {
        let nibbles = self.table.len().div_ceil(4);
        (0..nibbles)
            .rev()
            .map(|n| {
                let v = (0..4)
                    .filter(|b| self.table.get(n * 4 + b).copied().unwrap_or(false))
                    .fold(0u32, |acc, b| acc | 1 << b);
                char::from_digit(v, 16).unwrap()
            })
            .collect()
    }

    /// Builds the function whose ANF is the XOR of the given monomials
    /// (1-based variable indices).
    pub fn from_anf(m: usize, monomials: &[Vec<usize>]) -> Result<Self, BoolFnError> {
        let anf = AnfForm::new(m, monomials)?;
        Ok(anf.to_function())
    }

    pub fn vars(&self) -> usize {
        self.m
    }

    pub fn table(&self) -> &[bool] {
        &self.table
    }

    pub fn value_at(&self, index: usize) -> bool {
        self.table[index]
    }

    pub fn evaluate(&self, x: &[bool]) -> Result<bool, BoolFnError> {
        if x.len() != self.m {
            return Err(BoolFnError::InputLength {
                expected: self.m,
                got: x.len(),
            });
        }
        Ok(self.table[bits_to_index(x)])
    }

    /// w(f): number of inputs mapped to 1.
    pub fn weight(&self) -> usize {
        self.table.iter().filter(|&&b| b).count()
    }
}

pub fn bits_to_index(x: &[bool]) -> usize {
    x.iter()
        .enumerate()
        .filter(|(_, &b)| b)
        .fold(0, |acc, (j, _)| acc | 1 << j)
}

pub fn index_to_bits(index: usize, m: usize) -> Vec<bool> {
    (0..m).map(|j| index >> j & 1 == 1).collect()
}

/// A set of variables, stored as a bitmask (bit `j-1` for `X[j]`).
#[derive(Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Default)]
pub struct Monomial(pub u32);

impl Monomial {
    pub fn from_vars(vars: &[usize]) -> Self {
        Monomial(vars.iter().fold(0, |acc, &v| acc | 1 << (v - 1)))
    }

    /// 1-based variable indices, ascending.
    pub fn vars(&self) -> Vec<usize> {
        (0..32).filter(|j| self.0 >> j & 1 == 1).map(|j| j + 1).collect()
    }

    pub fn degree(&self) -> usize {
        self.0.count_ones() as usize
    }

    pub fn contains(&self, var: usize) -> bool {
        self.0 >> (var - 1) & 1 == 1
    }

    pub fn eval_index(&self, index: usize) -> bool {
        (index as u32) & self.0 == self.0
    }
}

impl fmt::Debug for Monomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{:?}", self.vars())
    }
}

/// Algebraic normal form: `f = XOR over S of prod_{j in S} X[j]`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct AnfForm {
    m: usize,
    monomials: Vec<Monomial>,
}

impl AnfForm {
    /// Duplicate monomials cancel (`x ^ x = 0`).
    pub fn new(m: usize, monomials: &[Vec<usize>]) -> Result<Self, BoolFnError> {
        check_vars(m)?;
        let mut set = BTreeSet::new();
        for mono in monomials {
            if mono.iter().any(|&v| v == 0 || v > m) {
                return Err(BoolFnError::VariableIndex {
                    monomial: mono.clone(),
                    m,
                });
            }
            let mono = Monomial::from_vars(mono);
            if !set.insert(mono) {
                set.remove(&mono);
            }
        }
        Ok(Self {
            m,
            monomials: set.into_iter().collect(),
        })
    }

    pub fn vars(&self) -> usize {
        self.m
    }

    pub fn monomials(&self) -> &[Monomial] {
        &self.monomials
    }

    /// r(f)
    pub fn sparsity(&self) -> usize {
        self.monomials.len()
    }

    pub fn degree(&self) -> usize {
        self.monomials.iter().map(Monomial::degree).max().unwrap_or(0)
    }

    pub fn eval_index(&self, index: usize) -> bool {
        self.monomials
            .iter()
            .fold(false, |acc, mono| acc ^ mono.eval_index(index))
    }

    pub fn to_function(&self) -> BooleanFunction {
        BooleanFunction {
            m: self.m,
            table: (0..1usize << self.m).map(|i| self.eval_index(i)).collect(),
        }
    }
}

/// Möbius transform over GF(2).
pub fn anf_from_truth_table(f: &BooleanFunction) -> AnfForm {
    let mut coeffs = f.table.clone();
    for j in 0..f.m {
        let bit = 1usize << j;
        for i in 0..coeffs.len() {
            if i & bit != 0 {
                coeffs[i] ^= coeffs[i ^ bit];
            }
        }
    }
    let monomials = coeffs
        .iter()
        .enumerate()
        .filter(|(_, &c)| c)
        .map(|(i, _)| Monomial(i as u32))
        .collect();
    AnfForm { m: f.m, monomials }
}

/// Canonical full DNF: one m-literal clause per support vector.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct DnfSupport {
    m: usize,
    support: Vec<usize>,
}

impl DnfSupport {
    /// Support given as input indices; kept in the given order.
    pub fn from_indices(m: usize, support: Vec<usize>) -> Self {
        Self { m, support }
    }

    pub fn vars(&self) -> usize {
        self.m
    }

    /// Support vectors as input indices.
    pub fn indices(&self) -> &[usize] {
        &self.support
    }

    pub fn vectors(&self) -> impl Iterator<Item = Vec<bool>> + '_ {
        self.support.iter().map(|&i| index_to_bits(i, self.m))
    }

    /// w(f)
    pub fn weight(&self) -> usize {
        self.support.len()
    }

    pub fn is_empty(&self) -> bool {
        self.support.is_empty()
    }

    pub fn contains_index(&self, index: usize) -> bool {
        self.support.contains(&index)
    }
}

pub fn dnf_from_truth_table(f: &BooleanFunction) -> DnfSupport {
    DnfSupport {
        m: f.m,
        support: (0..f.table.len()).filter(|&i| f.table[i]).collect(),
    }
}

/// Summary statistics reported by `analyze`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct FunctionStats {
    pub m: usize,
    pub sparsity: usize,
    pub weight: usize,
    pub degree: usize,
    /// `floor(log2 w) + 1`, absent for the constant-0 function.
    pub ptf_degree_bound: Option<usize>,
}

pub fn stats(f: &BooleanFunction) -> FunctionStats {
    let anf = anf_from_truth_table(f);
    let w = f.weight();
    FunctionStats {
        m: f.m,
        sparsity: anf.sparsity(),
        weight: w,
        degree: anf.degree(),
        ptf_degree_bound: (w > 0).then(|| floor_log2(w) + 1),
    }
}

pub fn floor_log2(x: usize) -> usize {
    assert!(x > 0, "log2 of zero");
    (usize::BITS - 1 - x.leading_zeros()) as usize
}
