//! Polynomial evaluation codes.
//!
//! Both the systematic MDS code used by the linear threshold schemes and the
//! Lagrange code used by the polynomial schemes are instances of
//! [`LagrangeCode`]: data is placed on `K` data points, encoded shares are
//! evaluations of the interpolant on `N` worker points, and decoding is
//! Reed–Solomon decoding of whatever polynomial the workers applied.

mod consensus;
mod rs;

use thiserror::Error;

use crate::field::{Field, FieldError};
use crate::poly::{lagrange_interpolate, Poly};

pub use consensus::{ConsensusError, MAX_CONSENSUS_WORKERS, DEFAULT_REAL_TOLERANCE};
pub use rs::{decode_polynomial, solve_linear, DecodeError};

/// Per-worker slots as seen by the master; `None` marks an erasure.
#[derive(Clone, Debug, PartialEq)]
pub struct Received<E> {
    slots: Vec<Option<E>>,
}

impl<E> Received<E> {
    pub fn new(slots: Vec<Option<E>>) -> Self {
        Self { slots }
    }

    pub fn complete(values: Vec<E>) -> Self {
        Self {
            slots: values.into_iter().map(Some).collect(),
        }
    }

    pub fn slots(&self) -> &[Option<E>] {
        &self.slots
    }

    pub fn len(&self) -> usize {
        self.slots.len()
    }

    pub fn is_empty(&self) -> bool {
        self.slots.is_empty()
    }

    pub fn erased(&self) -> usize {
        self.slots.iter().filter(|s| s.is_none()).count()
    }
}

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum CodeError {
    #[error("need N >= K >= 1, got N={n}, K={k}")]
    Dimensions { n: usize, k: usize },
    #[error(transparent)]
    Field(#[from] FieldError),
    #[error("data has {got} blocks, code dimension is {expected}")]
    DataLength { expected: usize, got: usize },
    #[error("data vectors have mismatched lengths")]
    Ragged,
}

/// Evaluation code with data points `omega_1..omega_K` and worker points
/// `alpha_1..alpha_N`.
#[derive(Clone, Debug)]
pub struct LagrangeCode<F: Field> {
    field: F,
    data_points: Vec<F::Elem>,
    eval_points: Vec<F::Elem>,
    /// `generator[n][k]` = `ell_k(alpha_n)`, the Lagrange basis at worker `n`.
    generator: Vec<Vec<F::Elem>>,
}

impl<F: Field> LagrangeCode<F> {
    /// Systematic `(N, K)` MDS code: `alpha = 1..=N`, `omega_k = alpha_k`.
    pub fn mds(field: F, n: usize, k: usize) -> Result<Self, CodeError> {
        check_dims(n, k)?;
        check_size(&field, n)?;
        let alphas: Vec<_> = (1..=n as u64).map(|i| field.point(i)).collect();
        let omegas = alphas[..k].to_vec();
        Self::with_points(field, omegas, alphas)
    }

    /// LCC: `beta = 1..=K` for data, `alpha = K+1..=K+N` for workers.
    pub fn lcc(field: F, n: usize, k: usize) -> Result<Self, CodeError> {
        check_dims(n, k)?;
        check_size(&field, n + k)?;
        let betas = (1..=k as u64).map(|i| field.point(i)).collect();
        let alphas = (k as u64 + 1..=(n + k) as u64)
            .map(|i| field.point(i))
            .collect();
        Self::with_points(field, betas, alphas)
    }

    /// Data points may coincide with worker points (systematic codes), but
    /// each list must be internally distinct.
    pub fn with_points(
        field: F,
        data_points: Vec<F::Elem>,
        eval_points: Vec<F::Elem>,
    ) -> Result<Self, CodeError> {
        check_dims(eval_points.len(), data_points.len())?;
        for pts in [&data_points, &eval_points] {
            for i in 0..pts.len() {
                if pts[..i].contains(&pts[i]) {
                    return Err(FieldError::DuplicateAbscissa(i).into());
                }
            }
        }
        let generator = eval_points
            .iter()
            .map(|a| lagrange_basis_at(&field, &data_points, a))
            .collect();
        Ok(Self {
            field,
            data_points,
            eval_points,
            generator,
        })
    }

    pub fn field(&self) -> &F {
        &self.field
    }

    pub fn n(&self) -> usize {
        self.eval_points.len()
    }

    pub fn k(&self) -> usize {
        self.data_points.len()
    }

    pub fn data_points(&self) -> &[F::Elem] {
        &self.data_points
    }

    pub fn eval_points(&self) -> &[F::Elem] {
        &self.eval_points
    }

    /// Encodes one scalar per data block into `N` shares.
    pub fn encode(&self, data: &[F::Elem]) -> Result<Vec<F::Elem>, CodeError> {
        if data.len() != self.k() {
            return Err(CodeError::DataLength {
                expected: self.k(),
                got: data.len(),
            });
        }
        Ok(self
            .generator
            .iter()
            .map(|row| {
                row.iter().zip(data).fold(self.field.zero(), |acc, (g, d)| {
                    self.field.add(&acc, &self.field.mul(g, d))
                })
            })
            .collect())
    }

    /// Coordinate-wise encoding of `K` equal-length vectors into `N` vectors.
    pub fn encode_vectors(&self, data: &[Vec<F::Elem>]) -> Result<Vec<Vec<F::Elem>>, CodeError> {
        if data.len() != self.k() {
            return Err(CodeError::DataLength {
                expected: self.k(),
                got: data.len(),
            });
        }
        let len = data[0].len();
        if data.iter().any(|v| v.len() != len) {
            return Err(CodeError::Ragged);
        }
        Ok(self
            .generator
            .iter()
            .map(|row| {
                (0..len)
                    .map(|j| {
                        row.iter().zip(data).fold(self.field.zero(), |acc, (g, d)| {
                            self.field.add(&acc, &self.field.mul(g, &d[j]))
                        })
                    })
                    .collect()
            })
            .collect())
    }

    /// Recovers the degree-`payload_degree` polynomial behind the received
    /// word, correcting errors and erasures with `2b + e <= N - d - 1`.
    pub fn decode_poly(
        &self,
        received: &Received<F::Elem>,
        payload_degree: usize,
    ) -> Result<Poly<F::Elem>, DecodeError> {
        if received.len() != self.n() {
            return Err(DecodeError::Length {
                expected: self.n(),
                got: received.len(),
            });
        }
        decode_polynomial(&self.field, &self.eval_points, received.slots(), payload_degree)
    }

    /// Reed–Solomon decoding; returns the payload polynomial at the data
    /// points.
    pub fn rs_decode(
        &self,
        received: &Received<F::Elem>,
        payload_degree: usize,
    ) -> Result<Vec<F::Elem>, DecodeError> {
        let p = self.decode_poly(received, payload_degree)?;
        Ok(p.eval_batch(&self.field, &self.data_points))
    }

    /// LCC decoding for a worker function of total degree `f_degree`.
    pub fn lcc_decode(
        &self,
        received: &Received<F::Elem>,
        f_degree: usize,
    ) -> Result<Vec<F::Elem>, DecodeError> {
        self.rs_decode(received, (self.k() - 1) * f_degree)
    }

    /// Adversary helper: per-slot shifts for the `corrupt` workers that turn
    /// an honest degree-`degree` codeword into a different valid codeword
    /// whose value at `target` moves by `delta`.
    ///
    /// The shift polynomial vanishes on `degree` honest worker points, so
    /// the planted codeword disagrees with the received word on only
    /// `N - |corrupt| - degree` honest slots. Returns `None` when there are
    /// not enough honest slots to pin it down.
    pub fn plant_shift(
        &self,
        degree: usize,
        target: &F::Elem,
        delta: &F::Elem,
        corrupt: &[usize],
    ) -> Option<Vec<F::Elem>> {
        let roots: Vec<_> = (0..self.n())
            .filter(|i| !corrupt.contains(i) && self.eval_points[*i] != *target)
            .take(degree)
            .map(|i| self.eval_points[i].clone())
            .collect();
        if roots.len() < degree {
            return None;
        }
        let base = Poly::from_roots(&self.field, &roots);
        let scale = self.field.div(delta, &base.eval(&self.field, target))?;
        let shift = base.scale(&self.field, &scale);
        Some(
            corrupt
                .iter()
                .map(|&i| shift.eval(&self.field, &self.eval_points[i]))
                .collect(),
        )
    }

    /// Interpolant through the data, for tests and diagnostics.
    pub fn data_poly(&self, data: &[F::Elem]) -> Result<Poly<F::Elem>, CodeError> {
        let pts: Vec<_> = self
            .data_points
            .iter()
            .cloned()
            .zip(data.iter().cloned())
            .collect();
        Ok(lagrange_interpolate(&self.field, &pts)?)
    }
}

fn check_dims(n: usize, k: usize) -> Result<(), CodeError> {
    if k == 0 || n < k {
        Err(CodeError::Dimensions { n, k })
    } else {
        Ok(())
    }
}

fn check_size<F: Field>(field: &F, points: usize) -> Result<(), CodeError> {
    match field.size() {
        Some(size) if size <= num_bigint::BigUint::from(points) => Err(FieldError::TooSmall {
            size: size.to_string(),
            needed: points,
        }
        .into()),
        _ => Ok(()),
    }
}

fn lagrange_basis_at<F: Field>(field: &F, nodes: &[F::Elem], x: &F::Elem) -> Vec<F::Elem> {
    (0..nodes.len())
        .map(|k| {
            let (num, den) = nodes.iter().enumerate().filter(|(j, _)| *j != k).fold(
                (field.one(), field.one()),
                |(num, den), (_, xj)| {
                    (
                        field.mul(&num, &field.sub(x, xj)),
                        field.mul(&den, &field.sub(&nodes[k], xj)),
                    )
                },
            );
            field.div(&num, &den).expect("nodes are distinct")
        })
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::field::{Gf2m, SmallPrime};
    use rand::seq::SliceRandom;
    use rand::SeedableRng;
    use rand_chacha::ChaCha8Rng;

    fn f7() -> SmallPrime {
        SmallPrime::new(7).unwrap()
    }

    #[test]
    fn mds_encode_examples() {
        let code = LagrangeCode::with_points(f7(), vec![0, 1], vec![0, 1, 2, 3]).unwrap();
        assert_eq!(code.encode(&[1, 2]).unwrap(), vec![1, 2, 3, 4]);
        assert_eq!(code.encode(&[0, 0]).unwrap(), vec![0; 4]);
        let rep = LagrangeCode::mds(f7(), 5, 1).unwrap();
        assert_eq!(rep.encode(&[4]).unwrap(), vec![4; 5]);
        assert!(rep.encode(&[1, 2]).is_err());
    }

    #[test]
    fn rs_decode_examples() {
        let rep = LagrangeCode::mds(f7(), 3, 1).unwrap();
        assert_eq!(rep.rs_decode(&Received::complete(vec![5, 5, 2]), 0).unwrap(), vec![5]);

        let code = LagrangeCode::with_points(f7(), vec![0, 1], vec![0, 1, 2, 3]).unwrap();
        let r = Received::complete(vec![1, 2, 3, 0]);
        assert_eq!(code.rs_decode(&r, 1).unwrap(), vec![1, 2]);

        // Two errors exceed floor((4-2)/2) = 1; anything but the truth is allowed.
        let r = Received::complete(vec![1, 2, 0, 0]);
        if let Ok(v) = code.rs_decode(&r, 1) {
            assert_ne!(v, vec![1, 2]);
        }
    }

    #[test]
    fn lcc_encode_examples() {
        let f = SmallPrime::new(101).unwrap();
        let code = LagrangeCode::lcc(f, 4, 1).unwrap();
        let shares = code.encode_vectors(&[vec![3, 4, 5]]).unwrap();
        assert!(shares.iter().all(|s| s == &vec![3, 4, 5]));

        // beta = (0, 1): X~ = X1 + alpha (X2 - X1).
        let code = LagrangeCode::with_points(f, vec![0, 1], vec![2, 3, 4, 5]).unwrap();
        let (x1, x2) = (vec![1u64, 0, 7], vec![0u64, 1, 9]);
        let shares = code.encode_vectors(&[x1.clone(), x2.clone()]).unwrap();
        for (a, share) in [2u64, 3, 4, 5].iter().zip(&shares) {
            let want: Vec<_> = x1
                .iter()
                .zip(&x2)
                .map(|(p, q)| f.add(p, &f.mul(a, &f.sub(q, p))))
                .collect();
            assert_eq!(share, &want);
        }
        let same = code.encode_vectors(&[x1.clone(), x1.clone()]).unwrap();
        assert!(same.iter().all(|s| s == &x1));
        assert_eq!(
            code.encode_vectors(&[vec![1], vec![1, 2]]),
            Err(CodeError::Ragged)
        );
    }

    #[test]
    fn lcc_quadratic_corrects_two_errors() {
        // N=8, K=2, f(x)=x^2: d = 2, radius floor((8-2-1)/2) = 2.
        let f = SmallPrime::new(101).unwrap();
        let code = LagrangeCode::lcc(f, 8, 2).unwrap();
        let mut rng = ChaCha8Rng::seed_from_u64(3);
        for _ in 0..200 {
            let data = [f.random(&mut rng), f.random(&mut rng)];
            let shares = code.encode(&data).unwrap();
            let mut payload: Vec<_> = shares.iter().map(|s| f.mul(s, s)).collect();
            let mut idx: Vec<usize> = (0..8).collect();
            idx.shuffle(&mut rng);
            for &i in &idx[..2] {
                payload[i] = f.add(&payload[i], &(1 + f.random(&mut rng) % 100));
            }
            let got = code.lcc_decode(&Received::complete(payload), 2).unwrap();
            assert_eq!(got, vec![f.mul(&data[0], &data[0]), f.mul(&data[1], &data[1])]);
        }
    }

    #[test]
    fn mds_any_k_coordinates_determine_data() {
        let f = SmallPrime::new(1_000_003).unwrap();
        let mut rng = ChaCha8Rng::seed_from_u64(11);
        for (n, k) in [(6, 2), (10, 4), (16, 8)] {
            let code = LagrangeCode::mds(f, n, k).unwrap();
            for _ in 0..50 {
                let data: Vec<_> = (0..k).map(|_| f.random(&mut rng)).collect();
                let cw = code.encode(&data).unwrap();
                assert_eq!(&cw[..k], data.as_slice(), "systematic");
                let mut idx: Vec<usize> = (0..n).collect();
                idx.shuffle(&mut rng);
                let slots = (0..n)
                    .map(|i| idx[..k].contains(&i).then(|| cw[i]))
                    .collect();
                let got = code.rs_decode(&Received::new(slots), k - 1).unwrap();
                assert_eq!(got, data);
            }
        }
    }

    #[test]
    fn correction_radius_is_met() {
        let f = SmallPrime::new(1_000_003).unwrap();
        let mut rng = ChaCha8Rng::seed_from_u64(12);
        for (n, k) in [(6, 2), (10, 4), (16, 8)] {
            let code = LagrangeCode::mds(f, n, k).unwrap();
            for _ in 0..1000 {
                let data: Vec<_> = (0..k).map(|_| f.random(&mut rng)).collect();
                let cw = code.encode(&data).unwrap();
                let erasures = rand::Rng::gen_range(&mut rng, 0..=n - k);
                let errors = (n - k - erasures) / 2;
                let mut idx: Vec<usize> = (0..n).collect();
                idx.shuffle(&mut rng);
                let mut slots: Vec<_> = cw.iter().copied().map(Some).collect();
                for &i in &idx[..erasures] {
                    slots[i] = None;
                }
                for &i in &idx[erasures..erasures + errors] {
                    slots[i] = Some(f.add(&cw[i], &(1 + f.random(&mut rng) % 1000)));
                }
                assert_eq!(code.rs_decode(&Received::new(slots), k - 1).unwrap(), data);
            }
        }
    }

    #[test]
    fn planted_codeword_beyond_radius_fools_decoder() {
        let f = SmallPrime::new(1_000_003).unwrap();
        let mut rng = ChaCha8Rng::seed_from_u64(13);
        for (n, k) in [(6, 2), (10, 4), (16, 8)] {
            let code = LagrangeCode::mds(f, n, k).unwrap();
            let b = (n - k) / 2 + 1;
            let data: Vec<_> = (0..k).map(|_| f.random(&mut rng)).collect();
            let cw = code.encode(&data).unwrap();
            let mut idx: Vec<usize> = (1..n).collect();
            idx.shuffle(&mut rng);
            let corrupt = &idx[..b];
            let shift = code.plant_shift(k - 1, &code.data_points()[0], &5, corrupt).unwrap();
            let mut word = cw.clone();
            for (&i, s) in corrupt.iter().zip(&shift) {
                word[i] = f.add(&word[i], s);
            }
            match code.rs_decode(&Received::complete(word), k - 1) {
                Ok(got) => {
                    if (n - k) % 2 == 0 {
                        assert_eq!(got[0], f.add(&data[0], &5));
                    }
                    assert_ne!(got, data);
                }
                Err(_) => assert_eq!((n - k) % 2, 1),
            }
        }
    }

    #[test]
    fn binary_lcc_round_trip() {
        let f = Gf2m::for_points(12).unwrap();
        let code = LagrangeCode::lcc(f, 10, 2).unwrap();
        let shares = code.encode(&[1, 0]).unwrap();
        // worker computes x^3 in GF(2^s)
        let payload: Vec<_> = shares.iter().map(|s| f.mul(s, &f.mul(s, s))).collect();
        assert_eq!(code.lcc_decode(&Received::complete(payload), 3).unwrap(), vec![1, 0]);
    }

    #[test]
    fn dimension_checks() {
        assert!(LagrangeCode::mds(f7(), 2, 3).is_err());
        assert!(LagrangeCode::mds(f7(), 2, 0).is_err());
        // F_7 has no room for 8 distinct points.
        assert!(LagrangeCode::lcc(f7(), 6, 2).is_err());
        assert!(LagrangeCode::with_points(f7(), vec![1], vec![1, 1]).is_err());
    }
}
