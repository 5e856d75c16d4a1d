//! Error-correcting decoding over the reals by exhaustive subset consensus.

use thiserror::Error;

use super::{LagrangeCode, Received};
use crate::field::RealField;
use crate::poly::{lagrange_interpolate, Poly};

/// Subset enumeration is exponential; larger codes are refused.
pub const MAX_CONSENSUS_WORKERS: usize = 24;
pub const DEFAULT_REAL_TOLERANCE: f64 = 1e-6;

#[derive(Debug, Error, Clone, PartialEq)]
pub enum ConsensusError {
    #[error("consensus decoding supports at most {MAX_CONSENSUS_WORKERS} workers, got {0}")]
    TooManyWorkers(usize),
    #[error("received word has {got} slots, code length is {expected}")]
    Length { expected: usize, got: usize },
    #[error("no degree-{degree} interpolant agrees with {needed} of the slots")]
    NoFit { degree: usize, needed: usize },
    #[error("{0} inconsistent interpolants each fit enough slots")]
    Ambiguous(usize),
}

fn agrees(a: f64, b: f64, tol: f64) -> bool {
    (a - b).abs() <= tol * a.abs().max(b.abs()).max(1.0)
}

struct Candidate {
    poly: Poly<f64>,
    support: Vec<bool>,
}

impl LagrangeCode<RealField> {
    /// Finds the degree-`degree` interpolant that agrees (relative tolerance
    /// `tol`) with all but at most `b_max` of the non-erased slots, and
    /// returns its values at the data points.
    pub fn consensus_decode(
        &self,
        received: &Received<f64>,
        degree: usize,
        b_max: usize,
        tol: f64,
    ) -> Result<Vec<f64>, ConsensusError> {
        let n = self.n();
        if n > MAX_CONSENSUS_WORKERS {
            return Err(ConsensusError::TooManyWorkers(n));
        }
        if received.len() != n {
            return Err(ConsensusError::Length {
                expected: n,
                got: received.len(),
            });
        }
        let live: Vec<(usize, f64)> = received
            .slots()
            .iter()
            .enumerate()
            .filter_map(|(i, s)| s.map(|v| (i, v)))
            .collect();
        let needed = live.len().saturating_sub(b_max);
        let no_fit = ConsensusError::NoFit { degree, needed };
        if live.len() < degree + 1 || needed < degree + 1 {
            return Err(no_fit);
        }
        let xs = self.eval_points();
        let mut candidates: Vec<Candidate> = Vec::new();
        for subset in Combinations::new(live.len(), degree + 1) {
            if candidates
                .iter()
                .any(|c| subset.iter().all(|&s| c.support[live[s].0]))
            {
                continue;
            }
            let pts: Vec<_> = subset
                .iter()
                .map(|&s| (xs[live[s].0], live[s].1))
                .collect();
            let poly = lagrange_interpolate(&RealField, &pts).expect("distinct points");
            let mut support = vec![false; n];
            let mut count = 0;
            for &(i, y) in &live {
                if agrees(poly.eval(&RealField, &xs[i]), y, tol) {
                    support[i] = true;
                    count += 1;
                }
            }
            if count >= needed {
                let values = poly.eval_batch(&RealField, xs);
                let duplicate = candidates.iter().any(|c| {
                    c.poly
                        .eval_batch(&RealField, xs)
                        .iter()
                        .zip(&values)
                        .all(|(a, b)| agrees(*a, *b, tol))
                });
                if !duplicate {
                    candidates.push(Candidate { poly, support });
                }
            }
        }
        match candidates.len() {
            0 => Err(no_fit),
            1 => Ok(candidates[0]
                .poly
                .eval_batch(&RealField, self.data_points())),
            c => Err(ConsensusError::Ambiguous(c)),
        }
    }
}

/// Lexicographic k-subsets of `0..n`.
struct Combinations {
    n: usize,
    idx: Vec<usize>,
    done: bool,
}

impl Combinations {
    fn new(n: usize, k: usize) -> Self {
        Self {
            n,
            idx: (0..k).collect(),
            done: k > n,
        }
    }
}

impl Iterator for Combinations {
    type Item = Vec<usize>;

    fn next(&mut self) -> Option<Vec<usize>> {
        if self.done {
            return None;
        }
        let out = self.idx.clone();
        let k = self.idx.len();
        let mut i = k;
        loop {
            if i == 0 {
                self.done = true;
                break;
            }
            i -= 1;
            if self.idx[i] < self.n - k + i {
                self.idx[i] += 1;
                for j in i + 1..k {
                    self.idx[j] = self.idx[j - 1] + 1;
                }
                break;
            }
        }
        Some(out)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn code(n: usize, k: usize) -> LagrangeCode<RealField> {
        LagrangeCode::mds(RealField, n, k).unwrap()
    }

    #[test]
    fn combinations_count() {
        assert_eq!(Combinations::new(5, 2).count(), 10);
        assert_eq!(Combinations::new(4, 4).count(), 1);
        assert_eq!(Combinations::new(3, 4).count(), 0);
        assert_eq!(Combinations::new(3, 0).count(), 1);
    }

    #[test]
    fn exact_codeword() {
        let c = code(5, 2);
        let data = [0.3, -1.7];
        let cw = c.encode(&data).unwrap();
        let got = c
            .consensus_decode(&Received::complete(cw), 1, 0, DEFAULT_REAL_TOLERANCE)
            .unwrap();
        for (g, d) in got.iter().zip(&data) {
            assert!((g - d).abs() < 1e-9);
        }
    }

    #[test]
    fn one_corruption_at_n5_k2() {
        let c = code(5, 2);
        let data = [1.25, -0.5];
        for bad in 0..5 {
            let mut cw = c.encode(&data).unwrap();
            cw[bad] += 3.0;
            let got = c
                .consensus_decode(&Received::complete(cw), 1, 1, DEFAULT_REAL_TOLERANCE)
                .unwrap();
            for (g, d) in got.iter().zip(&data) {
                assert!((g - d).abs() < 1e-9);
            }
        }
    }

    #[test]
    fn two_corruptions_at_n4_k2_fail() {
        let c = code(4, 2);
        let mut cw = c.encode(&[1.0, 2.0]).unwrap();
        cw[0] = 7.0;
        cw[3] = -4.0;
        let r = c.consensus_decode(&Received::complete(cw), 1, 2, DEFAULT_REAL_TOLERANCE);
        assert!(matches!(
            r,
            Err(ConsensusError::Ambiguous(_)) | Err(ConsensusError::NoFit { .. })
        ));
    }

    #[test]
    fn refuses_large_codes() {
        let c = code(25, 2);
        let r = c.consensus_decode(&Received::complete(vec![0.0; 25]), 1, 0, 1e-6);
        assert_eq!(r, Err(ConsensusError::TooManyWorkers(25)));
    }
}
