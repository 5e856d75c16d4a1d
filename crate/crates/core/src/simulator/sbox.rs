//! AES S-box case study: thresholds for the eight output bits.

use serde::{Deserialize, Serialize};

use crate::boolfn::{stats, BooleanFunction};
use crate::field::{Field, Gf2m};
use crate::schemes::{outer_bound, security_threshold, SchemeError, SchemeKind, Threshold, ThresholdParams};

/// Every output bit of the S-box has algebraic degree 7.
pub const SBOX_EXPECTED_DEGREE: usize = 7;

/// Multiplicative inverse in GF(2^8) mod `x^8+x^4+x^3+x+1`, then the affine map.
pub fn aes_sbox() -> [u8; 256] {
    let f = Gf2m::with_poly(8, 0x11b).expect("AES polynomial is irreducible");
    let mut table = [0u8; 256];
    for (x, out) in table.iter_mut().enumerate() {
        let b = f.inv(&(x as u64)).unwrap_or(0) as u8;
        *out = b ^ b.rotate_left(1) ^ b.rotate_left(2) ^ b.rotate_left(3) ^ b.rotate_left(4) ^ 0x63;
    }
    table
}

/// Output bit `j` as an 8-variable function; input bit `i` is `X[i+1]`.
pub fn aes_sbox_bits() -> Vec<BooleanFunction> {
    let table = aes_sbox();
    (0..8)
        .map(|j| BooleanFunction::from_fn(8, |x| table[x] >> j & 1 == 1).expect("8 variables"))
        .collect()
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct SboxBitRow {
    pub bit: usize,
    pub degree: usize,
    pub weight: usize,
    pub sparsity: usize,
    pub lcc: Threshold,
    pub anf: Threshold,
    pub dnf: Threshold,
    pub ptf: Threshold,
    /// `(D, threshold)` for powers of two up to the weight.
    pub dptf: Vec<(usize, Threshold)>,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct SboxReport {
    pub n: usize,
    pub k: usize,
    pub bits: Vec<SboxBitRow>,
    /// Minimum over bits: all eight outputs must be protected.
    pub lcc: usize,
    pub anf: usize,
    pub dnf: usize,
    pub ptf: usize,
    pub outer_bound: usize,
    /// `(best Boolean - LCC) / LCC`, `None` when LCC gives 0.
    pub improvement: Option<f64>,
    /// Bits whose degree differs from 7.
    pub degree_mismatches: Vec<usize>,
}

pub fn sbox_casestudy(bits: &[BooleanFunction], n: usize, k: usize) -> Result<SboxReport, SchemeError> {
    let mut rows = Vec::with_capacity(bits.len());
    for (bit, f) in bits.iter().enumerate() {
        let st = stats(f);
        let base = ThresholdParams::new(n, k);
        let th = |kind, p: ThresholdParams| security_threshold(kind, &p);
        let with_w = ThresholdParams {
            weight: Some(st.weight),
            ..base
        };
        let mut dptf = Vec::new();
        let mut d = 1;
        while d <= st.weight {
            dptf.push((d, th(SchemeKind::DPtf, ThresholdParams { d: Some(d), ..with_w })?));
            d *= 2;
        }
        rows.push(SboxBitRow {
            bit,
            degree: st.degree,
            weight: st.weight,
            sparsity: st.sparsity,
            lcc: th(
                SchemeKind::LccDirect,
                ThresholdParams {
                    degree: Some(st.degree),
                    ..base
                },
            )?,
            anf: th(SchemeKind::Anf, base)?,
            dnf: th(SchemeKind::Dnf, base)?,
            ptf: th(SchemeKind::Ptf, with_w)?,
            dptf,
        });
    }
    let min = |get: fn(&SboxBitRow) -> usize| rows.iter().map(get).min().unwrap_or(0);
    let lcc = min(|r| r.lcc.beta);
    let anf = min(|r| r.anf.beta);
    let dnf = min(|r| r.dnf.beta);
    let ptf = min(|r| r.ptf.beta);
    let best = anf.max(dnf);
    Ok(SboxReport {
        n,
        k,
        degree_mismatches: rows
            .iter()
            .filter(|r| r.degree != SBOX_EXPECTED_DEGREE)
            .map(|r| r.bit)
            .collect(),
        bits: rows,
        lcc,
        anf,
        dnf,
        ptf,
        outer_bound: outer_bound(n, k),
        improvement: (lcc > 0).then(|| (best as f64 - lcc as f64) / lcc as f64),
    })
}
